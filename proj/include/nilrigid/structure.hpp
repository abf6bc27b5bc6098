#pragma once

// Structure constants of brackets on an n-dimensional space, the nonlinear
// operators J, N_k and SN_k, central/derived series, and the standard
// constructions (direct sum, extension by a derivation, Heisenberg algebras).
//
// Indices are 0-based here; the table and JSON formats are 1-based.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nilrigid/linalg.hpp"
#include "nilrigid/scalar.hpp"

namespace nilrigid {

inline std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

/// Position of the unordered pair {i, j}, i < j, in lexicographic order.
inline std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

/// Antisymmetric bilinear map on F^n, stored as c[i][j][k] for i < j. Any
/// element of Lambda^2 g* (x) g; the Jacobi identity is not assumed.
template <class F>
class StructureConstants {
 public:
  using value_type = F;

  StructureConstants() = default;
  explicit StructureConstants(std::size_t dim, std::string name = {})
      : n_(dim), name_(std::move(name)), c_(pair_count(dim) * dim, F(0)) {}

  std::size_t dim() const { return n_; }
  std::size_t cochain_dim() const { return c_.size(); }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Coefficient of e_k in [e_i, e_j].
  F coeff(std::size_t i, std::size_t j, std::size_t k) const {
    if (i == j) return F(0);
    if (i < j) return c_[pair_index(i, j, n_) * n_ + k];
    return F(-c_[pair_index(j, i, n_) * n_ + k]);
  }
  /// Reference access for i < j.
  const F& upper(std::size_t i, std::size_t j, std::size_t k) const { return c_[pair_index(i, j, n_) * n_ + k]; }

  void set(std::size_t i, std::size_t j, std::size_t k, const F& v) {
    check(i, j, k);
    if (i < j) {
      c_[pair_index(i, j, n_) * n_ + k] = v;
    } else {
      c_[pair_index(j, i, n_) * n_ + k] = -v;
    }
  }
  void add(std::size_t i, std::size_t j, std::size_t k, const F& v) {
    check(i, j, k);
    if (i < j) {
      c_[pair_index(i, j, n_) * n_ + k] += v;
    } else {
      c_[pair_index(j, i, n_) * n_ + k] -= v;
    }
  }

  /// Flat coordinates: index pair_index(i,j)*n + k.
  std::span<const F> coordinates() const { return c_; }
  static StructureConstants from_coordinates(std::size_t dim, std::span<const F> coords, std::string name = {}) {
    StructureConstants s(dim, std::move(name));
    if (coords.size() != s.c_.size()) throw DimensionMismatch("cochain coordinate vector has wrong length");
    s.c_.assign(coords.begin(), coords.end());
    return s;
  }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const F& v) { return nilrigid::is_zero(v); });
  }

  StructureConstants& operator+=(const StructureConstants& o) {
    if (o.n_ != n_) throw DimensionMismatch("adding structures of different dimension");
    for (std::size_t q = 0; q < c_.size(); ++q) c_[q] += o.c_[q];
    return *this;
  }
  StructureConstants scaled(const F& s) const {
    StructureConstants out = *this;
    for (auto& v : out.c_) v *= s;
    return out;
  }

  /// Same constants, name ignored.
  friend bool operator==(const StructureConstants& a, const StructureConstants& b) {
    return a.n_ == b.n_ && a.c_ == b.c_;
  }

 private:
  void check(std::size_t i, std::size_t j, std::size_t k) const {
    if (i >= n_ || j >= n_ || k >= n_) throw DimensionMismatch("basis index out of range");
    if (i == j) throw std::invalid_argument("bracket of a basis vector with itself is zero by antisymmetry");
  }

  std::size_t n_ = 0;
  std::string name_;
  std::vector<F> c_;
};

template <class F>
using TwoCochain = StructureConstants<F>;

StructureConstants<Gaussian> promote(const StructureConstants<Rational>& mu);
/// Explicit Q(i) -> Q coercion; throws FieldError on a non-real constant.
StructureConstants<Rational> to_rational(const StructureConstants<Gaussian>& mu);

/// Values of a multilinear map g^{x arity} -> g on all basis tuples, tuples in
/// lexicographic order.
template <class F>
class Tensor {
 public:
  Tensor(std::size_t dim, std::size_t arity) : n_(dim), arity_(arity) {
    std::size_t tuples = 1;
    for (std::size_t a = 0; a < arity; ++a) tuples *= dim;
    data_.assign(tuples * dim, F(0));
  }

  std::size_t dim() const { return n_; }
  std::size_t arity() const { return arity_; }
  std::size_t tuples() const { return data_.size() / n_; }

  std::size_t tuple_index(std::span<const std::size_t> args) const {
    if (args.size() != arity_) throw DimensionMismatch("wrong number of tensor arguments");
    std::size_t t = 0;
    for (std::size_t a : args) {
      if (a >= n_) throw DimensionMismatch("tensor argument out of range");
      t = t * n_ + a;
    }
    return t;
  }

  std::span<const F> at(std::size_t tuple) const { return {data_.data() + tuple * n_, n_}; }
  std::span<F> at(std::size_t tuple) { return {data_.data() + tuple * n_, n_}; }
  Vector<F> value(std::span<const std::size_t> args) const {
    auto v = at(tuple_index(args));
    return {v.begin(), v.end()};
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const F& v) { return nilrigid::is_zero(v); });
  }
  std::size_t nonzero_tuples() const {
    std::size_t count = 0;
    for (std::size_t t = 0; t < tuples(); ++t) {
      auto v = at(t);
      if (std::any_of(v.begin(), v.end(), [](const F& x) { return !nilrigid::is_zero(x); })) ++count;
    }
    return count;
  }

 private:
  std::size_t n_;
  std::size_t arity_;
  std::vector<F> data_;
};

template <class F>
Vector<F> basis_vector(std::size_t n, std::size_t i) {
  Vector<F> v(n, F(0));
  v.at(i) = 1;
  return v;
}

/// mu(x, y).
template <class F>
Vector<F> bracket(const StructureConstants<F>& mu, std::span<const F> x, std::span<const F> y) {
  const std::size_t n = mu.dim();
  if (x.size() != n || y.size() != n) throw DimensionMismatch("bracket: vector length differs from dimension");
  Vector<F> out(n, F(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      F w = x[i] * y[j] - x[j] * y[i];
      if (is_zero(w)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        const F& c = mu.upper(i, j, k);
        if (!is_zero(c)) out[k] += w * c;
      }
    }
  }
  return out;
}

/// mu(x, e_j) for a fixed basis vector e_j.
template <class F>
Vector<F> bracket_with_basis(const StructureConstants<F>& mu, std::span<const F> x, std::size_t j) {
  const std::size_t n = mu.dim();
  Vector<F> out(n, F(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(x[i]) || i == j) continue;
    for (std::size_t k = 0; k < n; ++k) {
      F c = mu.coeff(i, j, k);
      if (!is_zero(c)) out[k] += x[i] * c;
    }
  }
  return out;
}

/// J(mu)(x,y,z) = mu(mu(x,y),z) + mu(mu(y,z),x) + mu(mu(z,x),y) on all basis triples.
template <class F>
Tensor<F> jacobi(const StructureConstants<F>& mu) {
  const std::size_t n = mu.dim();
  Tensor<F> out(n, 3);
  std::vector<Vector<F>> pair(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vector<F> v(n, F(0));
      for (std::size_t k = 0; k < n; ++k) v[k] = mu.coeff(i, j, k);
      pair[i * n + j] = std::move(v);
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        Vector<F> a = bracket_with_basis(mu, std::span<const F>(pair[x * n + y]), z);
        Vector<F> b = bracket_with_basis(mu, std::span<const F>(pair[y * n + z]), x);
        Vector<F> c = bracket_with_basis(mu, std::span<const F>(pair[z * n + x]), y);
        auto slot = out.at((x * n + y) * n + z);
        for (std::size_t k = 0; k < n; ++k) slot[k] = a[k] + b[k] + c[k];
      }
    }
  }
  return out;
}

/// Checks J(mu) = 0 on triples i < j < k only.
template <class F>
bool is_lie(const StructureConstants<F>& mu) {
  const std::size_t n = mu.dim();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      for (std::size_t z = y + 1; z < n; ++z) {
        Vector<F> xy(n), yz(n), zx(n);
        for (std::size_t k = 0; k < n; ++k) {
          xy[k] = mu.coeff(x, y, k);
          yz[k] = mu.coeff(y, z, k);
          zx[k] = mu.coeff(z, x, k);
        }
        Vector<F> a = bracket_with_basis(mu, std::span<const F>(xy), z);
        Vector<F> b = bracket_with_basis(mu, std::span<const F>(yz), x);
        Vector<F> c = bracket_with_basis(mu, std::span<const F>(zx), y);
        for (std::size_t k = 0; k < n; ++k) {
          if (!is_zero(F(a[k] + b[k] + c[k]))) return false;
        }
      }
    }
  }
  return true;
}

/// N_k(mu)(x_1..x_{k+1}) = mu(N_{k-1}(mu)(x_1..x_k), x_{k+1}), N_0 = identity.
template <class F>
Tensor<F> n_k(const StructureConstants<F>& mu, std::size_t k) {
  const std::size_t n = mu.dim();
  Tensor<F> level(n, 1);
  for (std::size_t x = 0; x < n; ++x) level.at(x)[x] = 1;
  for (std::size_t step = 1; step <= k; ++step) {
    Tensor<F> next(n, step + 1);
    for (std::size_t t = 0; t < level.tuples(); ++t) {
      auto prev = level.at(t);
      if (std::all_of(prev.begin(), prev.end(), [](const F& v) { return is_zero(v); })) continue;
      for (std::size_t x = 0; x < n; ++x) {
        Vector<F> v = bracket_with_basis(mu, std::span<const F>(prev), x);
        auto slot = next.at(t * n + x);
        std::move(v.begin(), v.end(), slot.begin());
      }
    }
    level = std::move(next);
  }
  return level;
}

/// SN_k(mu)(x_1..x_{k+1}) = mu(mu(x_1,x_2), N_{k-2}(mu)(x_3..x_{k+1})).
/// Defined for k >= 2 (SN_2 coincides with N_2 since N_0 is the identity).
template <class F>
Tensor<F> sn_k(const StructureConstants<F>& mu, std::size_t k) {
  if (k < 2) throw std::invalid_argument("SN_k needs k >= 2");
  const std::size_t n = mu.dim();
  Tensor<F> inner = n_k(mu, k - 2);
  Tensor<F> out(n, k + 1);
  const std::size_t inner_tuples = inner.tuples();
  for (std::size_t x1 = 0; x1 < n; ++x1) {
    for (std::size_t x2 = 0; x2 < n; ++x2) {
      Vector<F> head(n);
      bool head_zero = true;
      for (std::size_t m = 0; m < n; ++m) {
        head[m] = mu.coeff(x1, x2, m);
        head_zero = head_zero && is_zero(head[m]);
      }
      if (head_zero) continue;
      for (std::size_t t = 0; t < inner_tuples; ++t) {
        auto tail = inner.at(t);
        if (std::all_of(tail.begin(), tail.end(), [](const F& v) { return is_zero(v); })) continue;
        Vector<F> v = bracket(mu, std::span<const F>(head), std::span<const F>(tail));
        auto slot = out.at((x1 * n + x2) * inner_tuples + t);
        std::move(v.begin(), v.end(), slot.begin());
      }
    }
  }
  return out;
}

/// N_k(mu) at one argument tuple (length k+1).
template <class F>
Vector<F> n_k_at(const StructureConstants<F>& mu, std::span<const std::size_t> args) {
  if (args.empty()) throw std::invalid_argument("N_k needs at least one argument");
  Vector<F> v = basis_vector<F>(mu.dim(), args[0]);
  for (std::size_t a = 1; a < args.size(); ++a) v = bracket_with_basis(mu, std::span<const F>(v), args[a]);
  return v;
}

/// SN_k(mu) at one argument tuple (length k+1 >= 3).
template <class F>
Vector<F> sn_k_at(const StructureConstants<F>& mu, std::span<const std::size_t> args) {
  if (args.size() < 3) throw std::invalid_argument("SN_k needs at least three arguments");
  Vector<F> head = n_k_at(mu, args.subspan(0, 2));
  Vector<F> tail = n_k_at(mu, args.subspan(2));
  return bracket(mu, std::span<const F>(head), std::span<const F>(tail));
}

/// Linear subspace of F^n with a canonical (RREF) basis.
template <class F>
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

  static Subspace span(std::size_t ambient, const std::vector<Vector<F>>& vectors) {
    std::vector<SparseRow<F>> rows;
    for (const auto& v : vectors) {
      if (v.size() != ambient) throw DimensionMismatch("spanning vector has wrong length");
      rows.push_back(sparsify<F>(v));
    }
    Subspace s(ambient);
    Echelon<F> e = echelon<F>(std::move(rows), true);
    for (auto& r : e.pivot_rows) s.basis_.push_back(densify(r, ambient));
    return s;
  }
  static Subspace whole(std::size_t ambient) {
    std::vector<Vector<F>> vs;
    for (std::size_t i = 0; i < ambient; ++i) vs.push_back(basis_vector<F>(ambient, i));
    return span(ambient, vs);
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vector<F>>& basis() const { return basis_; }

  bool contains(std::span<const F> v) const {
    std::vector<Vector<F>> vs = basis_;
    vs.emplace_back(v.begin(), v.end());
    return span(ambient_, vs).dim() == dim();
  }
  bool contains(const Subspace& other) const {
    std::vector<Vector<F>> vs = basis_;
    vs.insert(vs.end(), other.basis_.begin(), other.basis_.end());
    return span(ambient_, vs).dim() == dim();
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_;
  std::vector<Vector<F>> basis_;
};

/// span{ mu(a, b) : a in A, b in B }.
template <class F>
Subspace<F> bracket_space(const StructureConstants<F>& mu, const Subspace<F>& a, const Subspace<F>& b) {
  std::vector<Vector<F>> vs;
  for (const auto& x : a.basis()) {
    for (const auto& y : b.basis()) vs.push_back(bracket(mu, std::span<const F>(x), std::span<const F>(y)));
  }
  return Subspace<F>::span(mu.dim(), vs);
}

namespace detail {

template <class F>
void require_lie(const StructureConstants<F>& mu) {
  if (!is_lie(mu)) {
    throw NotLieAlgebra("structure " + (mu.name().empty() ? std::string("<unnamed>") : mu.name()) +
                        " does not satisfy the Jacobi identity");
  }
}

}  // namespace detail

/// g^0 = g, g^i = [g^{i-1}, g]; stops at zero or when the series stabilizes.
template <class F>
std::vector<Subspace<F>> lower_central_series(const StructureConstants<F>& mu) {
  detail::require_lie(mu);
  const Subspace<F> whole = Subspace<F>::whole(mu.dim());
  std::vector<Subspace<F>> series{whole};
  while (series.back().dim() > 0) {
    Subspace<F> next = bracket_space(mu, series.back(), whole);
    if (next.dim() == series.back().dim()) break;
    series.push_back(std::move(next));
  }
  return series;
}

/// g^(0) = g, g^(i) = [g^(i-1), g^(i-1)].
template <class F>
std::vector<Subspace<F>> derived_series(const StructureConstants<F>& mu) {
  detail::require_lie(mu);
  std::vector<Subspace<F>> series{Subspace<F>::whole(mu.dim())};
  while (series.back().dim() > 0) {
    Subspace<F> next = bracket_space(mu, series.back(), series.back());
    if (next.dim() == series.back().dim()) break;
    series.push_back(std::move(next));
  }
  return series;
}

/// Smallest k with g^k = 0, or nullopt for a non-nilpotent algebra.
template <class F>
std::optional<std::size_t> nil_index(const StructureConstants<F>& mu) {
  auto s = lower_central_series(mu);
  if (s.back().dim() != 0) return std::nullopt;
  return s.size() - 1;
}

/// Smallest i with g^(i) = 0, or nullopt for a non-solvable algebra.
template <class F>
std::optional<std::size_t> solvable_length(const StructureConstants<F>& mu) {
  auto s = derived_series(mu);
  if (s.back().dim() != 0) return std::nullopt;
  return s.size() - 1;
}

/// Center {x : mu(x, y) = 0 for all y}.
template <class F>
Subspace<F> center(const StructureConstants<F>& mu) {
  const std::size_t n = mu.dim();
  ExactMatrix<F> ad(n * n, n);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t k = 0; k < n; ++k) ad.set(y * n + k, x, mu.coeff(x, y, k));
    }
  }
  return Subspace<F>::span(n, kernel_basis(ad));
}

/// Constants of mu in the basis f_i = P e_i (columns of P are the new basis
/// vectors written in the old basis). This is F(g)(x,y) = g mu(g^-1 x, g^-1 y)
/// with g = P^-1. Throws SingularMatrix.
template <class F>
StructureConstants<F> change_basis(const StructureConstants<F>& mu, const ExactMatrix<F>& p) {
  const std::size_t n = mu.dim();
  if (p.rows() != n || p.cols() != n) throw DimensionMismatch("change of basis matrix has wrong shape");
  const ExactMatrix<F> p_inv = inverse(p);
  std::vector<Vector<F>> cols(n);
  for (std::size_t i = 0; i < n; ++i) cols[i] = p.column(i);
  StructureConstants<F> out(n, mu.name());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector<F> b = bracket(mu, std::span<const F>(cols[i]), std::span<const F>(cols[j]));
      Vector<F> coords = p_inv.apply(std::span<const F>(b));
      for (std::size_t k = 0; k < n; ++k) out.set(i, j, k, coords[k]);
    }
  }
  return out;
}

/// Block sum: first factor on indices 0..n1-1, second after it.
template <class F>
StructureConstants<F> direct_sum(const StructureConstants<F>& a, const StructureConstants<F>& b) {
  const std::size_t n1 = a.dim();
  StructureConstants<F> out(n1 + b.dim());
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = i + 1; j < n1; ++j) {
      for (std::size_t k = 0; k < n1; ++k) out.set(i, j, k, a.upper(i, j, k));
    }
  }
  for (std::size_t i = 0; i < b.dim(); ++i) {
    for (std::size_t j = i + 1; j < b.dim(); ++j) {
      for (std::size_t k = 0; k < b.dim(); ++k) out.set(n1 + i, n1 + j, n1 + k, b.upper(i, j, k));
    }
  }
  if (!a.name().empty() && !b.name().empty()) out.set_name(a.name() + "+" + b.name());
  return out;
}

template <class F>
StructureConstants<F> abelian(std::size_t n) {
  return StructureConstants<F>(n, "R^" + std::to_string(n));
}

/// D[x,y] = [Dx,y] + [x,Dy] on all basis pairs (D e_j = column j of D).
template <class F>
bool is_derivation(const StructureConstants<F>& mu, const ExactMatrix<F>& d) {
  const std::size_t n = mu.dim();
  if (d.rows() != n || d.cols() != n) throw DimensionMismatch("derivation matrix has wrong shape");
  std::vector<Vector<F>> dcols(n);
  for (std::size_t i = 0; i < n; ++i) dcols[i] = d.column(i);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector<F> xy(n);
      for (std::size_t k = 0; k < n; ++k) xy[k] = mu.upper(i, j, k);
      Vector<F> lhs = d.apply(std::span<const F>(xy));
      Vector<F> r1 = bracket_with_basis(mu, std::span<const F>(dcols[i]), j);
      Vector<F> ei = basis_vector<F>(n, i);
      Vector<F> r2 = bracket(mu, std::span<const F>(ei), std::span<const F>(dcols[j]));
      for (std::size_t k = 0; k < n; ++k) {
        if (lhs[k] != r1[k] + r2[k]) return false;
      }
    }
  }
  return true;
}

/// F D |x g: new generator at index 0 with [e_0, x] = D x; the original basis
/// is shifted by one. Throws NotADerivation.
template <class F>
StructureConstants<F> semidirect_by_derivation(const StructureConstants<F>& mu, const ExactMatrix<F>& d) {
  if (!is_derivation(mu, d)) throw NotADerivation("matrix is not a derivation of the given bracket");
  const std::size_t n = mu.dim();
  StructureConstants<F> out(n + 1);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) out.set(0, j + 1, k + 1, d.at(k, j));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) out.set(i + 1, j + 1, k + 1, mu.upper(i, j, k));
    }
  }
  return out;
}

/// h_m with basis x_1..x_m, y_1..y_m, z and [x_i, y_i] = z.
template <class F>
StructureConstants<F> heisenberg(std::size_t m) {
  if (m == 0) throw std::invalid_argument("Heisenberg algebra needs m >= 1");
  StructureConstants<F> h(2 * m + 1, "h_" + std::to_string(m));
  for (std::size_t i = 0; i < m; ++i) h.set(i, m + i, 2 * m, F(1));
  return h;
}

/// The shift derivation D x_i = x_{i+1}, D y_i = -y_{i-1} of h_m.
template <class F>
ExactMatrix<F> heisenberg_shift(std::size_t m) {
  ExactMatrix<F> d(2 * m + 1, 2 * m + 1);
  for (std::size_t i = 0; i + 1 < m; ++i) d.set(i + 1, i, F(1));
  for (std::size_t i = 1; i < m; ++i) d.set(m + i - 1, m + i, F(-1));
  return d;
}

}  // namespace nilrigid
