#pragma once

// Structure-table text ("ab = c, ac = d, be = rtf+(1-t)g") and the JSON
// interchange format.
//
// Table syntax: entries separated by ',', ';' or newlines. Each entry is
// `xy = expr` or `[x,y] = expr` with x, y basis letters (a -> e_1, b -> e_2,
// ...). The right-hand side is a linear combination of basis letters whose
// coefficients are polynomials in the declared parameter symbols and the
// imaginary unit `i` (when `i` is not itself a basis letter). Multiplication
// may be implicit; `^` takes a nonnegative integer exponent; `/` divides by a
// nonzero constant. Unlisted pairs bracket to zero.

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "nilrigid/scalar.hpp"
#include "nilrigid/structure.hpp"

namespace nilrigid {

using ParameterAssignment = std::map<std::string, Scalar>;

/// Polynomial in a fixed list of parameter symbols with Q(i) coefficients.
class ParamPoly {
 public:
  using Exponents = std::vector<unsigned>;

  explicit ParamPoly(std::size_t nsym = 0) : nsym_(nsym) {}
  static ParamPoly constant(std::size_t nsym, const Gaussian& c);
  static ParamPoly symbol(std::size_t nsym, std::size_t index);

  std::size_t symbol_count() const { return nsym_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Gaussian constant_term() const;
  bool has_imaginary() const;
  unsigned degree_in(std::size_t index) const;
  const std::map<Exponents, Gaussian>& terms() const { return terms_; }

  Gaussian evaluate(std::span<const Gaussian> values) const;
  ParamPoly derivative(std::size_t index) const;

  ParamPoly& operator+=(const ParamPoly& o);
  ParamPoly& operator-=(const ParamPoly& o);
  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
  ParamPoly scaled(const Gaussian& s) const;
  ParamPoly pow(unsigned e) const;
  friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const Exponents& e, const Gaussian& c);

  std::size_t nsym_;
  std::map<Exponents, Gaussian> terms_;
};

/// A structure table whose constants are polynomials in named parameters.
class ParametricTable {
 public:
  ParametricTable() = default;
  ParametricTable(std::size_t dim, std::vector<std::string> symbols);

  std::size_t dim() const { return n_; }
  const std::vector<std::string>& symbols() const { return symbols_; }
  /// Qi when some coefficient involves the imaginary unit.
  Field field() const;

  const ParamPoly& coefficient(std::size_t i, std::size_t j, std::size_t k) const {
    return coeffs_[pair_index(i, j, n_) * n_ + k];
  }
  void add(std::size_t i, std::size_t j, std::size_t k, const ParamPoly& p);
  std::size_t symbol_index(std::string_view s) const;  // throws MissingParameter
  unsigned degree_in(std::string_view symbol) const;

  /// Values for every symbol, in symbol order. Throws MissingParameter.
  std::vector<Gaussian> resolve(const ParameterAssignment& at) const;

  template <class F>
  StructureConstants<F> eval(const ParameterAssignment& at, std::string name = {}) const;
  /// Exact partial derivative in `symbol`, evaluated at the point.
  template <class F>
  StructureConstants<F> partial(std::string_view symbol, const ParameterAssignment& at) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::string> symbols_;
  std::vector<ParamPoly> coeffs_;  // pair_index*n + k, i < j
};

struct TableText {
  std::string text;
  ParameterAssignment params;
};

/// Parses a table whose coefficients may mention `symbols`.
ParametricTable parse_parametric_table(std::string_view text, std::size_t n,
                                       const std::vector<std::string>& symbols = {});

/// Parses and evaluates at the assignment in `src`. Throws ParseError
/// (unknown letter, letter index > n, unresolved parameter, syntax).
template <class F>
StructureConstants<F> parse_table(const TableText& src, std::size_t n, std::string name = {});

/// Coefficient vector of a single linear expression such as "2t(tb-d)".
std::vector<ParamPoly> parse_vector_expression(std::string_view text, std::size_t n,
                                               const std::vector<std::string>& symbols);
/// A scalar expression (no basis letters), e.g. "1+t^3/2".
ParamPoly parse_scalar_expression(std::string_view text, const std::vector<std::string>& symbols);

/// Right-hand side of [e_i, e_j] in table notation ("c - 2f", or "0").
template <class F>
std::string bracket_rhs(const StructureConstants<F>& mu, std::size_t i, std::size_t j);

/// Renders constants back to table text ("ab = c, ac = -f").
template <class F>
std::string to_table_text(const StructureConstants<F>& mu);

// JSON: {"name","dim","field":"Q"|"Qi","brackets":[{"i","j","terms":[{"k","c"}]}]}
// 1-based indices; scalars as strings. Pack files may add "params": [...] and
// then "c" may be a polynomial expression in those parameters.

using Json = nlohmann::ordered_json;
using AnyStructure = std::variant<StructureConstants<Rational>, StructureConstants<Gaussian>>;

template <class F>
Json to_json(const StructureConstants<F>& mu);
AnyStructure structure_from_json(const Json& j);
ParametricTable parametric_from_json(const Json& j);
std::string dump_json(const Json& j);  // deterministic text, trailing newline

extern template StructureConstants<Rational> ParametricTable::eval<Rational>(const ParameterAssignment&,
                                                                             std::string) const;
extern template StructureConstants<Gaussian> ParametricTable::eval<Gaussian>(const ParameterAssignment&,
                                                                             std::string) const;

}  // namespace nilrigid
