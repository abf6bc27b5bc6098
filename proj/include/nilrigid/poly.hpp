#pragma once

// Polynomials over Q in the variables t_{i,j,k} (1 <= i < j < k <= n) that
// parametrize strictly upper-triangular brackets mu(e_i, e_j) = sum_{k>j}
// t_{i,j,k} e_k, the generators of the ideals I_{n,k}, bounded-degree ideal
// membership, and a small Buchberger for non-membership certificates.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nilrigid/errors.hpp"
#include "nilrigid/scalar.hpp"

namespace nilrigid {

/// t_{i,j,k}, 1-based. Codes sort lexicographically on (i,j,k).
struct Var {
  std::uint32_t code = 0;

  Var() = default;
  Var(unsigned i, unsigned j, unsigned k) : code((i << 16) | (j << 8) | k) {}
  unsigned i() const { return code >> 16; }
  unsigned j() const { return (code >> 8) & 0xFF; }
  unsigned k() const { return code & 0xFF; }
  std::string str() const;
  friend auto operator<=>(const Var&, const Var&) = default;
};

/// Sorted by variable, positive exponents.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(Var v, unsigned e = 1) {
    if (e > 0) factors_.emplace_back(v, e);
  }

  unsigned degree() const;
  unsigned exponent(Var v) const;
  const std::vector<std::pair<Var, unsigned>>& factors() const { return factors_; }
  bool divides(const Monomial& other) const;
  Monomial operator/(const Monomial& d) const;  // requires d | *this
  Monomial lcm(const Monomial& o) const;
  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  std::string str() const;

 private:
  std::vector<std::pair<Var, unsigned>> factors_;
};

class MultiPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  MultiPoly() = default;
  MultiPoly(const Rational& c);  // NOLINT: constants convert implicitly
  explicit MultiPoly(Var v);
  MultiPoly(const Monomial& m, const Rational& c);

  static MultiPoly parse(std::string_view text);  // "t_{1,2,3}*t_{3,4,5} - 2*t_{1,2,4}"

  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  int degree() const;  // -1 for zero
  bool is_homogeneous() const;
  std::vector<Var> variables() const;
  Rational coefficient(const Monomial& m) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  MultiPoly operator-() const;
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly scaled(const Rational& s) const;
  MultiPoly times(const Monomial& m, const Rational& c) const;
  MultiPoly pow(unsigned e) const;
  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

  /// Divides by the coefficient of the lexicographically first monomial.
  MultiPoly monic() const;
  /// Paper notation with canonical term order.
  std::string str() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

/// Image of f under t -> value for the assigned variables.
MultiPoly substitute(const MultiPoly& f, const std::map<Var, Rational>& assignment);

/// Each listed variable set to zero.
std::map<Var, Rational> zero_assignment(const std::vector<Var>& vars);

// ------------------------------------------------------------ generators

enum class GeneratorKind { J, N, SN };
std::string kind_name(GeneratorKind k);

struct TaggedGenerator {
  MultiPoly poly;
  GeneratorKind source;
  std::vector<unsigned> arguments;  // 1-based basis indices
  unsigned coordinate;              // 1-based
};

/// Coordinates of J, N_k or SN_k on the generic upper-triangular bracket,
/// zero polynomials and scalar multiples of earlier ones removed; order by
/// argument tuple then coordinate.
std::vector<TaggedGenerator> tagged_generators(unsigned n, unsigned k, GeneratorKind kind);
std::vector<MultiPoly> generators(unsigned n, unsigned k, GeneratorKind kind);

/// Generators of I_{n,k}: J together with N_k.
struct IdealPresentation {
  unsigned n = 0;
  unsigned k = 0;
  std::vector<TaggedGenerator> generators;

  static IdealPresentation nilpotent(unsigned n, unsigned k);
  std::vector<MultiPoly> polys() const;
};

/// Same set up to nonzero scalar multiples of each element.
bool same_up_to_scalars(const std::vector<MultiPoly>& a, const std::vector<MultiPoly>& b);

// ------------------------------------------------------------ membership

struct MembershipCertificate {
  MultiPoly target;
  std::vector<MultiPoly> multipliers;  // one per generator
  unsigned degree_bound = 0;

  /// sum multipliers[j] * gens[j] == target, recomputed exactly.
  bool verify(const std::vector<MultiPoly>& gens) const;
};

/// Searches multipliers with deg(m_j g_j) <= D. Every generator must be
/// homogeneous in degree and in torus weight (true for I_{n,k}); then each
/// bihomogeneous component of f is solved separately and the search is
/// complete for the bound. nullopt is not a non-membership proof.
std::optional<MembershipCertificate> member_bounded(const MultiPoly& f, const std::vector<MultiPoly>& gens,
                                                    unsigned degree_bound);

// ------------------------------------------------------------ Groebner

enum class MonomialOrder { DegRevLex, Lex };

/// Variables with smaller code are larger: t_{1,2,3} > t_{1,2,4} > ...
bool monomial_less(const Monomial& a, const Monomial& b, MonomialOrder order);

struct GroebnerCaps {
  std::size_t max_basis = 200;
  std::size_t max_pairs = 20000;
  unsigned max_degree = 24;
  std::size_t max_terms = 5000;
};

/// Reduced Groebner basis. Throws ResourceLimit past the caps.
std::vector<MultiPoly> groebner_small(const std::vector<MultiPoly>& gens, MonomialOrder order = MonomialOrder::DegRevLex,
                                      const GroebnerCaps& caps = {});
MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& basis,
                      MonomialOrder order = MonomialOrder::DegRevLex);
Monomial leading_monomial(const MultiPoly& f, MonomialOrder order);

struct NonMembershipCertificate {
  bool proven = false;
  MultiPoly restricted_target;
  std::vector<MultiPoly> restricted_generators;  // nonzero images
  std::vector<MultiPoly> basis;
  MultiPoly remainder;
};

/// Substitutes, then shows the image of f has nonzero normal form modulo the
/// image ideal. proven == false is inconclusive.
NonMembershipCertificate non_membership(const MultiPoly& f, const std::vector<MultiPoly>& gens,
                                        const std::map<Var, Rational>& assignment,
                                        MonomialOrder order = MonomialOrder::DegRevLex, const GroebnerCaps& caps = {});

}  // namespace nilrigid
