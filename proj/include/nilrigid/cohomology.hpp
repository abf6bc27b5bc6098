#pragma once

// Differentials d1, d2, dJ, dN_k, dSN_k at a point mu of Lambda^2 g* (x) g,
// the dimensions of H^2 and H^2_{k-nil}, and the exactness test for the
// linearized complex of a parametric family.
//
// Coordinates. A 2-cochain sigma has coordinate pair_index(i,j)*n + m for
// sigma(e_i, e_j)_m, i < j. An endomorphism alpha has coordinate i*n + k for
// alpha(e_i)_k. Rows of dN_k / dSN_k are indexed tuple*n + m where tuple runs
// over (x_1..x_{k+1}) in lexicographic order.

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nilrigid/errors.hpp"
#include "nilrigid/linalg.hpp"
#include "nilrigid/structure.hpp"
#include "nilrigid/table.hpp"

namespace nilrigid {

namespace detail {

/// Nonzero constants c(i,j,m) for all ordered i != j, grouped by i.
template <class F>
struct BracketIndex {
  struct Entry {
    std::size_t j, m;
    F c;
  };
  std::vector<std::vector<Entry>> by_first;

  explicit BracketIndex(const StructureConstants<F>& mu) : by_first(mu.dim()) {
    const std::size_t n = mu.dim();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        for (std::size_t m = 0; m < n; ++m) {
          F c = mu.coeff(i, j, m);
          if (!is_zero(c)) by_first[i].push_back({j, m, std::move(c)});
        }
      }
    }
  }
};

/// A value of a bracket word at fixed arguments together with its derivative
/// in mu: deriv[m] is the linear form sigma -> (d word)(sigma)_m.
template <class F>
struct WordValue {
  Vector<F> value;
  std::vector<SparseRow<F>> deriv;

  bool value_zero() const {
    return std::all_of(value.begin(), value.end(), [](const F& v) { return is_zero(v); });
  }
  bool deriv_zero() const {
    return std::all_of(deriv.begin(), deriv.end(), [](const SparseRow<F>& r) { return r.empty(); });
  }
  bool dead() const { return value_zero() && deriv_zero(); }
};

template <class F>
class WordEngine {
 public:
  explicit WordEngine(const StructureConstants<F>& mu)
      : n_(mu.dim()), index_(mu), acc_(mu.dim(), SparseAccumulator<F>(mu.cochain_dim())) {}

  std::size_t dim() const { return n_; }

  WordValue<F> leaf(std::size_t x) const {
    WordValue<F> w;
    w.value = basis_vector<F>(n_, x);
    w.deriv.assign(n_, {});
    return w;
  }

  /// mu(L, R) and d(mu(L, R)) = sigma(vL, vR) + mu(dL, vR) + mu(vL, dR).
  WordValue<F> combine(const WordValue<F>& l, const WordValue<F>& r) {
    WordValue<F> out;
    out.value.assign(n_, F(0));
    out.deriv.assign(n_, {});
    if (l.dead() || r.dead()) return out;

    // value
    for (std::size_t i = 0; i < n_; ++i) {
      if (is_zero(l.value[i])) continue;
      for (const auto& e : index_.by_first[i]) {
        if (!is_zero(r.value[e.j])) out.value[e.m] += l.value[i] * r.value[e.j] * e.c;
      }
    }
    // sigma(vL, vR)
    for (std::size_t a = 0; a < n_; ++a) {
      if (is_zero(l.value[a])) continue;
      for (std::size_t b = 0; b < n_; ++b) {
        if (a == b || is_zero(r.value[b])) continue;
        F w = l.value[a] * r.value[b];
        std::size_t p = a < b ? pair_index(a, b, n_) : pair_index(b, a, n_);
        if (a > b) w = -w;
        for (std::size_t m = 0; m < n_; ++m) acc_[m].add(p * n_ + m, w);
      }
    }
    // mu(dL, vR)
    for (std::size_t i = 0; i < n_; ++i) {
      if (l.deriv[i].empty()) continue;
      for (const auto& e : index_.by_first[i]) {
        if (!is_zero(r.value[e.j])) acc_[e.m].add_scaled(l.deriv[i], F(r.value[e.j] * e.c));
      }
    }
    // mu(vL, dR)
    for (std::size_t i = 0; i < n_; ++i) {
      if (is_zero(l.value[i])) continue;
      for (const auto& e : index_.by_first[i]) {
        if (!r.deriv[e.j].empty()) acc_[e.m].add_scaled(r.deriv[e.j], F(l.value[i] * e.c));
      }
    }
    for (std::size_t m = 0; m < n_; ++m) out.deriv[m] = acc_[m].take();
    return out;
  }

  /// Left-nested words N_level at all tuples of length level+1.
  std::vector<WordValue<F>> nested_table(std::size_t level) {
    std::vector<WordValue<F>> table;
    for (std::size_t x = 0; x < n_; ++x) table.push_back(leaf(x));
    for (std::size_t step = 1; step <= level; ++step) {
      std::vector<WordValue<F>> next;
      next.reserve(table.size() * n_);
      for (const auto& t : table) {
        for (std::size_t x = 0; x < n_; ++x) next.push_back(combine(t, leaf_cache(x)));
      }
      table = std::move(next);
    }
    return table;
  }

  const WordValue<F>& leaf_cache(std::size_t x) {
    if (leaves_.empty()) {
      for (std::size_t y = 0; y < n_; ++y) leaves_.push_back(leaf(y));
    }
    return leaves_[x];
  }

 private:
  std::size_t n_;
  BracketIndex<F> index_;
  std::vector<SparseAccumulator<F>> acc_;
  std::vector<WordValue<F>> leaves_;
};

}  // namespace detail

/// Receives (row index, row, value of the word at that row).
template <class F>
using RowSink = std::function<void(std::size_t, SparseRow<F>, const F&)>;

/// Streams the rows of dN_k|_mu (k >= 1) without storing the matrix.
template <class F>
void for_each_dNk_row(const StructureConstants<F>& mu, std::size_t k, const RowSink<F>& sink) {
  if (k < 1) throw std::invalid_argument("dN_k needs k >= 1");
  const std::size_t n = mu.dim();
  detail::WordEngine<F> engine(mu);
  std::vector<detail::WordValue<F>> prefix = engine.nested_table(k - 1);
  for (std::size_t t = 0; t < prefix.size(); ++t) {
    if (prefix[t].dead()) continue;
    for (std::size_t x = 0; x < n; ++x) {
      detail::WordValue<F> w = engine.combine(prefix[t], engine.leaf_cache(x));
      const std::size_t base = (t * n + x) * n;
      for (std::size_t m = 0; m < n; ++m) {
        if (!w.deriv[m].empty() || !is_zero(w.value[m])) sink(base + m, std::move(w.deriv[m]), w.value[m]);
      }
    }
  }
}

/// Streams the rows of dSN_k|_mu (k >= 2).
template <class F>
void for_each_dSNk_row(const StructureConstants<F>& mu, std::size_t k, const RowSink<F>& sink) {
  if (k < 2) throw std::invalid_argument("dSN_k needs k >= 2");
  const std::size_t n = mu.dim();
  detail::WordEngine<F> engine(mu);
  std::vector<detail::WordValue<F>> head = engine.nested_table(1);
  std::vector<detail::WordValue<F>> tail = engine.nested_table(k - 2);
  for (std::size_t h = 0; h < head.size(); ++h) {
    if (head[h].dead()) continue;
    for (std::size_t t = 0; t < tail.size(); ++t) {
      if (tail[t].dead()) continue;
      detail::WordValue<F> w = engine.combine(head[h], tail[t]);
      const std::size_t base = (h * tail.size() + t) * n;
      for (std::size_t m = 0; m < n; ++m) {
        if (!w.deriv[m].empty() || !is_zero(w.value[m])) sink(base + m, std::move(w.deriv[m]), w.value[m]);
      }
    }
  }
}

inline std::size_t triple_count(std::size_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

/// Rows of dJ|_mu, one per (x<y<z, m), row = triple*n + m.
template <class F>
void for_each_dJ_row(const StructureConstants<F>& mu, const RowSink<F>& sink) {
  const std::size_t n = mu.dim();
  detail::WordEngine<F> engine(mu);
  std::vector<detail::WordValue<F>> pairs = engine.nested_table(1);
  std::size_t triple = 0;
  SparseAccumulator<F> acc(mu.cochain_dim());
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      for (std::size_t z = y + 1; z < n; ++z, ++triple) {
        detail::WordValue<F> a = engine.combine(pairs[x * n + y], engine.leaf_cache(z));
        detail::WordValue<F> b = engine.combine(pairs[y * n + z], engine.leaf_cache(x));
        detail::WordValue<F> c = engine.combine(pairs[z * n + x], engine.leaf_cache(y));
        for (std::size_t m = 0; m < n; ++m) {
          acc.add_row(a.deriv[m]);
          acc.add_row(b.deriv[m]);
          acc.add_row(c.deriv[m]);
          F value = a.value[m] + b.value[m] + c.value[m];
          SparseRow<F> row = acc.take();
          if (!row.empty() || !is_zero(value)) sink(triple * n + m, std::move(row), value);
        }
      }
    }
  }
}

/// d1: alpha -> mu(x, alpha y) + mu(alpha x, y) - alpha(mu(x, y)); n^2 columns.
template <class F>
ExactMatrix<F> d1_matrix(const StructureConstants<F>& mu) {
  const std::size_t n = mu.dim();
  ExactMatrix<F> out(mu.cochain_dim(), n * n);
  SparseAccumulator<F> acc(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const std::size_t p = pair_index(x, y, n);
      for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t k = 0; k < n; ++k) {
          if (k != x) {
            F c = mu.coeff(x, k, m);
            if (!is_zero(c)) acc.add(y * n + k, c);
          }
          if (k != y) {
            F c = mu.coeff(k, y, m);
            if (!is_zero(c)) acc.add(x * n + k, c);
          }
          const F& c = mu.upper(x, y, k);
          if (!is_zero(c)) acc.add(k * n + m, F(-c));
        }
        out.set_row(p * n + m, acc.take());
      }
    }
  }
  return out;
}

/// Adjoint Chevalley-Eilenberg differential on 2-cochains:
/// (d2 s)(x,y,z) = [x,s(y,z)] - [y,s(x,z)] + [z,s(x,y)]
///               - s([x,y],z) + s([x,z],y) - s([y,z],x).
template <class F>
ExactMatrix<F> d2_matrix(const StructureConstants<F>& mu) {
  const std::size_t n = mu.dim();
  ExactMatrix<F> out(triple_count(n) * n, mu.cochain_dim());
  SparseAccumulator<F> acc(mu.cochain_dim());
  // Coefficient of s(e_a, e_b)_k, with antisymmetry.
  auto add_s = [&](std::size_t a, std::size_t b, std::size_t k, const F& w) {
    if (a == b || is_zero(w)) return;
    if (a < b) {
      acc.add(pair_index(a, b, n) * n + k, w);
    } else {
      acc.add(pair_index(b, a, n) * n + k, F(-w));
    }
  };
  std::size_t triple = 0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      for (std::size_t z = y + 1; z < n; ++z, ++triple) {
        for (std::size_t m = 0; m < n; ++m) {
          for (std::size_t k = 0; k < n; ++k) {
            // [x, s(y,z)]_m = sum_k s(y,z)_k c(x,k,m)
            add_s(y, z, k, mu.coeff(x, k, m));
            add_s(x, z, k, F(-mu.coeff(y, k, m)));
            add_s(x, y, k, mu.coeff(z, k, m));
            // s([x,y], z)_m = sum_k c(x,y,k) s(e_k, z)_m
            add_s(k, z, m, F(-mu.coeff(x, y, k)));
            add_s(k, y, m, mu.coeff(x, z, k));
            add_s(k, x, m, F(-mu.coeff(y, z, k)));
          }
          out.set_row(triple * n + m, acc.take());
        }
      }
    }
  }
  return out;
}

template <class F>
ExactMatrix<F> dJ_matrix(const StructureConstants<F>& mu) {
  ExactMatrix<F> out(triple_count(mu.dim()) * mu.dim(), mu.cochain_dim());
  for_each_dJ_row<F>(mu, [&](std::size_t r, SparseRow<F> row, const F&) { out.set_row(r, std::move(row)); });
  return out;
}

template <class F>
ExactMatrix<F> dNk_matrix(const StructureConstants<F>& mu, std::size_t k) {
  std::size_t rows = mu.dim();
  for (std::size_t a = 0; a <= k; ++a) rows *= mu.dim();
  ExactMatrix<F> out(rows, mu.cochain_dim());
  for_each_dNk_row<F>(mu, k, [&](std::size_t r, SparseRow<F> row, const F&) { out.set_row(r, std::move(row)); });
  return out;
}

template <class F>
ExactMatrix<F> dSNk_matrix(const StructureConstants<F>& mu, std::size_t k) {
  std::size_t rows = mu.dim();
  for (std::size_t a = 0; a <= k; ++a) rows *= mu.dim();
  ExactMatrix<F> out(rows, mu.cochain_dim());
  for_each_dSNk_row<F>(mu, k, [&](std::size_t r, SparseRow<F> row, const F&) { out.set_row(r, std::move(row)); });
  return out;
}

/// Which equations cut out the variety: J alone, J and N_k, or J and SN_k.
struct Constraint {
  enum class Kind { J, JNk, JSNk };
  Kind kind = Kind::J;
  std::size_t k = 0;

  static Constraint jacobi() { return {Kind::J, 0}; }
  static Constraint nilpotent(std::size_t k) { return {Kind::JNk, k}; }
  static Constraint solvable_type(std::size_t k) { return {Kind::JSNk, k}; }
  std::string str() const;
};

/// Row space of dG = [d2; dN_k or dSN_k] at mu, accumulated by streaming.
/// Throws NotInVariety if mu violates the constraint.
template <class F>
struct ConstraintRowSpace {
  std::size_t cochain_dim = 0;
  std::size_t rank = 0;
  std::uint64_t rows_streamed = 0;
  std::uint64_t total_rows = 0;
  Echelon<F> basis;

  std::size_t kernel_dim() const { return cochain_dim - rank; }
  bool annihilates(std::span<const F> v) const {
    return std::all_of(basis.pivot_rows.begin(), basis.pivot_rows.end(),
                       [&](const SparseRow<F>& r) { return is_zero(dot<F>(r, v)); });
  }
};

template <class F>
ConstraintRowSpace<F> constraint_row_space(const StructureConstants<F>& mu, const Constraint& constraint) {
  const std::size_t n = mu.dim();
  ConstraintRowSpace<F> out;
  out.cochain_dim = mu.cochain_dim();
  StreamingEliminator<F> elim(mu.cochain_dim());
  auto violation = [&](const char* what) {
    throw NotInVariety("structure " + (mu.name().empty() ? std::string("<unnamed>") : mu.name()) + " has " +
                       what + " != 0");
  };
  RowSink<F> feed_j = [&](std::size_t, SparseRow<F> row, const F& value) {
    if (!is_zero(value)) violation("J");
    ++out.rows_streamed;
    elim.insert(std::move(row));
  };
  for_each_dJ_row<F>(mu, feed_j);
  out.total_rows = triple_count(n) * n;
  if (constraint.kind != Constraint::Kind::J) {
    const bool solv = constraint.kind == Constraint::Kind::JSNk;
    const char* what = solv ? "SN_k" : "N_k";
    RowSink<F> feed = [&](std::size_t, SparseRow<F> row, const F& value) {
      if (!is_zero(value)) violation(what);
      ++out.rows_streamed;
      elim.insert(std::move(row));
    };
    if (solv) {
      for_each_dSNk_row<F>(mu, constraint.k, feed);
    } else {
      for_each_dNk_row<F>(mu, constraint.k, feed);
    }
    std::size_t rows = n;
    for (std::size_t a = 0; a <= constraint.k; ++a) rows *= n;
    out.total_rows += rows;
  }
  out.rank = elim.rank();
  out.basis = elim.basis();
  return out;
}

struct CohomologyReport {
  std::string algebra;
  std::size_t n = 0;
  std::size_t k = 0;  // 0 for ordinary H^2
  std::size_t z = 0;  // dim Ker d2 (cap Ker dN_k)
  std::size_t b = 0;  // dim Im d1
  std::size_t h = 0;  // z - b
  bool rigid_certificate = false;
  std::size_t orbit_dim = 0;
};

template <class F>
std::size_t derivation_dim(const StructureConstants<F>& mu) {
  return mu.dim() * mu.dim() - rank(d1_matrix(mu)).rank;
}

template <class F>
std::size_t orbit_dim(const StructureConstants<F>& mu) {
  return mu.dim() * mu.dim() - derivation_dim(mu);
}

namespace detail {

template <class F>
CohomologyReport finish_report(const StructureConstants<F>& mu, std::size_t k, std::size_t z) {
  CohomologyReport r;
  r.algebra = mu.name();
  r.n = mu.dim();
  r.k = k;
  r.z = z;
  r.b = rank(d1_matrix(mu)).rank;
  if (r.b > r.z) throw Error("internal: Im d1 is not contained in the cocycle space");
  r.h = r.z - r.b;
  r.rigid_certificate = r.h == 0;
  r.orbit_dim = r.b;
  return r;
}

}  // namespace detail

/// dim H^2(g, g). Throws NotLieAlgebra.
template <class F>
CohomologyReport h2_dim(const StructureConstants<F>& mu) {
  detail::require_lie(mu);
  const std::size_t z = mu.cochain_dim() - rank(d2_matrix(mu)).rank;
  return detail::finish_report(mu, 0, z);
}

/// dim H^2_{k-nil}(g, g). Throws NotInVariety unless J(mu) = 0 and N_k(mu) = 0.
template <class F>
CohomologyReport h2_knil(const StructureConstants<F>& mu, std::size_t k) {
  if (k < 1) throw std::invalid_argument("h2_knil needs k >= 1");
  if (!is_lie(mu)) throw NotInVariety("structure " + mu.name() + " does not satisfy the Jacobi identity");
  ConstraintRowSpace<F> rs = constraint_row_space(mu, Constraint::nilpotent(k));
  return detail::finish_report(mu, k, rs.kernel_dim());
}

struct ExactnessReport {
  std::string algebra;
  std::string constraint;
  std::vector<std::string> free_params;
  std::vector<std::pair<std::string, std::string>> point;
  std::size_t source_dim = 0;   // free params + n^2
  std::size_t middle_dim = 0;   // cochain dimension
  std::uint64_t target_dim = 0; // rows of dG
  std::size_t rank_dF = 0;
  std::size_t kernel_dim_dG = 0;
  bool contained = false;       // Im dF in Ker dG, checked columnwise
  bool exact = false;
  double seconds = 0;
};

/// dF = [d/dp mu for p in free, d1] against a precomputed row space of dG.
template <class F>
ExactnessReport exactness_against(const ParametricTable& family, const ParameterAssignment& point,
                                  const std::vector<std::string>& free, const StructureConstants<F>& mu,
                                  const ConstraintRowSpace<F>& dg) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = mu.dim();
  ExactMatrix<F> d1 = d1_matrix(mu);
  std::vector<Vector<F>> columns;
  for (const auto& p : free) {
    StructureConstants<F> partial = family.partial<F>(p, point);
    columns.emplace_back(partial.coordinates().begin(), partial.coordinates().end());
  }
  for (std::size_t c = 0; c < n * n; ++c) columns.push_back(d1.column(c));
  ExactMatrix<F> df = ExactMatrix<F>::from_columns(columns, mu.cochain_dim());

  ExactnessReport r;
  r.algebra = mu.name();
  r.free_params = free;
  for (const auto& [s, v] : point) r.point.emplace_back(s, v.str());
  r.source_dim = columns.size();
  r.middle_dim = mu.cochain_dim();
  r.rank_dF = rank(df).rank;
  r.kernel_dim_dG = dg.kernel_dim();
  r.contained = std::all_of(columns.begin(), columns.end(),
                            [&](const Vector<F>& col) { return dg.annihilates(std::span<const F>(col)); });
  r.exact = r.contained && r.rank_dF == r.kernel_dim_dG;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Exactness of  R^{|free|} x gl(g) --dF--> Lambda^2 g* (x) g --dG--> target
/// at the given point. Throws MissingParameter, NotInVariety.
template <class F>
ExactnessReport augmented_exactness(const ParametricTable& family, const ParameterAssignment& point,
                                    const std::vector<std::string>& free, const Constraint& constraint,
                                    std::string name = {}) {
  for (const auto& p : free) family.symbol_index(p);
  const auto start = std::chrono::steady_clock::now();
  StructureConstants<F> mu = family.eval<F>(point, std::move(name));
  ConstraintRowSpace<F> dg = constraint_row_space(mu, constraint);
  ExactnessReport r = exactness_against(family, point, free, mu, dg);
  r.constraint = constraint.str();
  r.target_dim = dg.total_rows;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Same as augmented_exactness for several choices of free parameters,
/// sharing the dG computation.
template <class F>
std::vector<ExactnessReport> augmented_exactness_sets(const ParametricTable& family, const ParameterAssignment& point,
                                                 const std::vector<std::vector<std::string>>& free_sets,
                                                 const Constraint& constraint, std::string name = {}) {
  for (const auto& free : free_sets) {
    for (const auto& p : free) family.symbol_index(p);
  }
  StructureConstants<F> mu = family.eval<F>(point, std::move(name));
  const auto start = std::chrono::steady_clock::now();
  ConstraintRowSpace<F> dg = constraint_row_space(mu, constraint);
  const double shared = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::vector<ExactnessReport> out;
  for (const auto& free : free_sets) {
    ExactnessReport r = exactness_against(family, point, free, mu, dg);
    r.constraint = constraint.str();
    r.target_dim = dg.total_rows;
    r.seconds += shared;
    out.push_back(std::move(r));
  }
  return out;
}

Json to_json(const CohomologyReport& r);
Json to_json(const ExactnessReport& r);

}  // namespace nilrigid
