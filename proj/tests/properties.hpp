#pragma once

// Invariants checked over every catalog member. Shared by the unit tests and
// the acceptance binary, so both see the same definitions.

#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "nilrigid/catalog.hpp"
#include "nilrigid/cohomology.hpp"
#include "nilrigid/linalg.hpp"
#include "nilrigid/structure.hpp"

namespace nilrigid::props {

struct Outcome {
  bool ok = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;

  void fail(std::string what) {
    ok = false;
    failures.push_back(std::move(what));
  }
  std::string summary() const {
    std::ostringstream os;
    os << checked << " checked";
    if (!failures.empty()) os << ", first failure: " << failures.front();
    return os.str();
  }
};

/// Every record, families at their sample points (at most `per_family`).
inline std::vector<AnyStructure> catalog_members(const Catalog& catalog, std::size_t per_family = 2) {
  std::vector<AnyStructure> out;
  for (const AlgebraRecord* r : catalog.records()) {
    if (!r->is_family()) {
      out.push_back(catalog.eval_any(r->name));
      continue;
    }
    std::size_t used = 0;
    for (const auto& at : r->samples) {
      if (used++ == per_family) break;
      AnyStructure s = catalog.eval_any(r->name, at);
      std::visit([&](auto& mu) { mu.set_name(r->name + "@" + format_assignment(at)); }, s);
      out.push_back(std::move(s));
    }
  }
  return out;
}

inline std::string label(const AnyStructure& s) {
  return std::visit([](const auto& mu) { return mu.name(); }, s);
}

// ------------------------------------------------------------ rank oracle

/// Textbook dense elimination, first nonzero pivot, no sparsity.
template <class F>
std::size_t naive_rank(std::vector<Vector<F>> a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size(), cols = a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(a[p][c])) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t q = 0; q < rows; ++q) {
      if (q == r || is_zero(a[q][c])) continue;
      const F f = a[q][c] / a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[q][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

/// `count` random matrices up to 8x8 with small rational entries, about half
/// of them built as products to force rank deficiency.
inline Outcome rank_oracle(std::size_t count = 100, unsigned seed = 20240531) {
  Outcome o;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> size(1, 8), num(-4, 4), den(1, 3), coin(0, 2);
  auto random_dense = [&](std::size_t r, std::size_t c) {
    std::vector<Vector<Rational>> m(r, Vector<Rational>(c));
    for (auto& row : m) {
      for (auto& x : row) x = coin(rng) == 0 ? Rational(0) : Rational(num(rng), den(rng));
    }
    for (auto& row : m) {
      for (auto& x : row) x.canonicalize();
    }
    return m;
  };
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t r = size(rng), c = size(rng);
    std::vector<Vector<Rational>> dense;
    if (t % 2 == 1) {
      const std::size_t inner = static_cast<std::size_t>(size(rng)) % std::max<std::size_t>(1, std::min(r, c));
      const auto a = ExactMatrix<Rational>::from_dense(random_dense(r, inner + 1));
      const auto b = ExactMatrix<Rational>::from_dense(random_dense(inner + 1, c));
      dense = (a * b).to_dense();
    } else {
      dense = random_dense(r, c);
    }
    const auto m = ExactMatrix<Rational>::from_dense(dense);
    const std::size_t expected = naive_rank(dense);
    const std::size_t got = rank(m).rank;
    const std::size_t got_t = rank(m.transpose()).rank;
    const std::size_t kernel = kernel_basis(m).size();
    ++o.checked;
    if (got != expected || got_t != expected || kernel + expected != c) {
      o.fail("matrix " + std::to_string(t) + " (" + std::to_string(r) + "x" + std::to_string(c) + "): oracle " +
             std::to_string(expected) + ", rank " + std::to_string(got) + ", rank of transpose " +
             std::to_string(got_t) + ", kernel " + std::to_string(kernel));
    }
  }
  return o;
}

// ---------------------------------------------------------- complex checks

template <class F>
bool d2_after_d1_zero(const StructureConstants<F>& mu) {
  return (d2_matrix(mu) * d1_matrix(mu)).is_zero_matrix();
}

template <class F>
bool dJ_is_minus_d2(const StructureConstants<F>& mu) {
  const ExactMatrix<F> dj = dJ_matrix(mu);
  const ExactMatrix<F> d2 = d2_matrix(mu);
  if (dj.rows() != d2.rows() || dj.cols() != d2.cols()) return false;
  for (std::size_t r = 0; r < dj.rows(); ++r) {
    if (add_scaled<F>(dj.row(r), F(1), d2.row(r)).size() != 0) return false;
  }
  return true;
}

/// Im d1 inside Ker dN_k for k the nilpotency index (skipped when not nilpotent).
template <class F>
std::optional<bool> d1_in_ker_dNk(const StructureConstants<F>& mu) {
  const auto k = nil_index(mu);
  if (!k || *k == 0) return std::nullopt;
  return (dNk_matrix(mu, std::max<std::size_t>(*k, 1)) * d1_matrix(mu)).is_zero_matrix();
}

/// Derived series inside the lower central series: g^(i) in g^{2^i} (g^1 = g).
template <class F>
bool derived_in_central(const StructureConstants<F>& mu) {
  const auto lcs = lower_central_series(mu);
  const auto der = derived_series(mu);
  for (std::size_t i = 0; i < der.size(); ++i) {
    const std::size_t idx = (std::size_t{1} << std::min<std::size_t>(i, 20)) - 1;
    const auto& target = lcs[std::min(idx, lcs.size() - 1)];
    if (!target.contains(der[i])) return false;
  }
  return true;
}

inline Outcome complex_identities(const Catalog& catalog) {
  Outcome o;
  for (const AnyStructure& s : catalog_members(catalog)) {
    const std::string name = label(s);
    std::visit(
        [&](const auto& mu) {
          ++o.checked;
          if (!d2_after_d1_zero(mu)) o.fail(name + ": d2 d1 != 0");
          if (!dJ_is_minus_d2(mu)) o.fail(name + ": dJ != -d2");
          const auto nk = d1_in_ker_dNk(mu);
          if (nk && !*nk) o.fail(name + ": Im d1 not in Ker dN_k");
          if (!derived_in_central(mu)) o.fail(name + ": derived series not inside lower central series");
        },
        s);
  }
  return o;
}

// ------------------------------------------------- first-order expansions

/// Flattened tensor values of N_k or SN_k at mu.
template <class F>
Vector<F> word_values(const StructureConstants<F>& mu, std::size_t k, bool solvable) {
  const Tensor<F> t = solvable ? sn_k(mu, k) : n_k(mu, k);
  Vector<F> out;
  out.reserve(t.tuples() * t.dim());
  for (std::size_t q = 0; q < t.tuples(); ++q) {
    auto v = t.at(q);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

/// P(h) = W(mu + h nu) is a polynomial of degree k in h. Its values at
/// h = 0..k determine it; the linear coefficient must equal dW|_mu(nu) and
/// the interpolant must agree with W at each probe h.
template <class F>
bool expansion_identity(const StructureConstants<F>& mu, const StructureConstants<F>& nu, std::size_t k,
                        bool solvable, const std::vector<F>& probes) {
  const std::size_t deg = k;
  std::vector<Vector<F>> samples;
  for (std::size_t h = 0; h <= deg; ++h) {
    StructureConstants<F> p = mu;
    p += nu.scaled(F(static_cast<long>(h)));
    samples.push_back(word_values(p, k, solvable));
  }
  const std::size_t len = samples.front().size();
  // Newton forward differences at 0: P(h) = sum_j C(h,j) D^j.
  std::vector<Vector<F>> diff{samples.front()};
  std::vector<Vector<F>> cur = samples;
  for (std::size_t j = 1; j <= deg; ++j) {
    for (std::size_t q = 0; q + 1 < cur.size(); ++q) {
      for (std::size_t e = 0; e < len; ++e) cur[q][e] = cur[q + 1][e] - cur[q][e];
    }
    cur.pop_back();
    diff.push_back(cur.front());
  }
  // d/dh C(h,j) at 0 = (-1)^{j+1} / j.
  Vector<F> linear(len, F(0));
  for (std::size_t j = 1; j <= deg; ++j) {
    const F w = F((j % 2 == 1) ? 1 : -1) / F(static_cast<long>(j));
    for (std::size_t e = 0; e < len; ++e) linear[e] += w * diff[j][e];
  }
  const ExactMatrix<F> dw = solvable ? dSNk_matrix(mu, k) : dNk_matrix(mu, k);
  const Vector<F> expected = dw.apply(nu.coordinates());
  if (expected != linear) return false;
  for (const F& h : probes) {
    StructureConstants<F> p = mu;
    p += nu.scaled(h);
    const Vector<F> direct = word_values(p, k, solvable);
    Vector<F> interp(len, F(0));
    F binom(1);
    for (std::size_t j = 0; j <= deg; ++j) {
      if (j > 0) binom = binom * (h - F(static_cast<long>(j - 1))) / F(static_cast<long>(j));
      for (std::size_t e = 0; e < len; ++e) interp[e] += binom * diff[j][e];
    }
    if (interp != direct) return false;
  }
  return true;
}

/// Random sparse 2-cochain with small integer entries.
template <class F>
StructureConstants<F> random_cochain(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<int> v(-2, 2), coin(0, 3);
  StructureConstants<F> nu(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (coin(rng) == 0) nu.set(i, j, k, F(v(rng)));
      }
    }
  }
  return nu;
}

/// N_k for k up to 4 and SN_k for k in {3, 4}, on members of dimension <= 6,
/// three probe values of h each.
inline Outcome expansion_identities(const Catalog& catalog, unsigned seed = 7) {
  Outcome o;
  std::mt19937 rng(seed);
  for (const AnyStructure& s : catalog_members(catalog, 1)) {
    const std::string name = label(s);
    std::visit(
        [&](const auto& mu) {
          using F = typename std::decay_t<decltype(mu)>::value_type;
          if (mu.dim() > 6) return;
          const auto nu = random_cochain<F>(mu.dim(), rng);
          const std::vector<F> probes{F(Rational(1, 2)), F(-3), F(Rational(-2, 7))};
          for (std::size_t k = 1; k <= 4; ++k) {
            ++o.checked;
            if (!expansion_identity(mu, nu, k, false, probes)) o.fail(name + ": N_" + std::to_string(k));
          }
          for (std::size_t k = 3; k <= 4; ++k) {
            ++o.checked;
            if (!expansion_identity(mu, nu, k, true, probes)) o.fail(name + ": SN_" + std::to_string(k));
          }
        },
        s);
  }
  return o;
}

}  // namespace nilrigid::props
