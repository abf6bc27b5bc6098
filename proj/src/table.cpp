#include "nilrigid/table.hpp"

#include <cctype>
#include <limits>
#include <sstream>

namespace nilrigid {

// ---------------------------------------------------------------- ParamPoly

ParamPoly ParamPoly::constant(std::size_t nsym, const Gaussian& c) {
  ParamPoly p(nsym);
  p.add_term(Exponents(nsym, 0), c);
  return p;
}

ParamPoly ParamPoly::symbol(std::size_t nsym, std::size_t index) {
  ParamPoly p(nsym);
  Exponents e(nsym, 0);
  e.at(index) = 1;
  p.add_term(e, Gaussian(1));
  return p;
}

void ParamPoly::add_term(const Exponents& e, const Gaussian& c) {
  if (nilrigid::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (nilrigid::is_zero(it->second)) terms_.erase(it);
  }
}

bool ParamPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                                            [](unsigned e) { return e == 0; }));
}

Gaussian ParamPoly::constant_term() const {
  auto it = terms_.find(Exponents(nsym_, 0));
  return it == terms_.end() ? Gaussian(0) : it->second;
}

bool ParamPoly::has_imaginary() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return !t.second.is_real(); });
}

unsigned ParamPoly::degree_in(std::size_t index) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.at(index));
  return d;
}

Gaussian ParamPoly::evaluate(std::span<const Gaussian> values) const {
  if (values.size() != nsym_) throw DimensionMismatch("parameter vector has wrong length");
  Gaussian acc(0);
  for (const auto& [e, c] : terms_) {
    Gaussian term = c;
    for (std::size_t s = 0; s < nsym_; ++s) {
      for (unsigned p = 0; p < e[s]; ++p) term *= values[s];
    }
    acc += term;
  }
  return acc;
}

ParamPoly ParamPoly::derivative(std::size_t index) const {
  ParamPoly out(nsym_);
  for (const auto& [e, c] : terms_) {
    if (e.at(index) == 0) continue;
    Exponents d = e;
    d[index] -= 1;
    out.add_term(d, c * Gaussian(static_cast<long>(e[index])));
  }
  return out;
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
  ParamPoly out(a.nsym_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      ParamPoly::Exponents e = ea;
      for (std::size_t s = 0; s < e.size(); ++s) e[s] += eb[s];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

ParamPoly ParamPoly::scaled(const Gaussian& s) const {
  ParamPoly out(nsym_);
  for (const auto& [e, c] : terms_) out.add_term(e, c * s);
  return out;
}

ParamPoly ParamPoly::pow(unsigned e) const {
  ParamPoly out = constant(nsym_, Gaussian(1));
  for (unsigned k = 0; k < e; ++k) out = out * *this;
  return out;
}

// ---------------------------------------------------------- ParametricTable

ParametricTable::ParametricTable(std::size_t dim, std::vector<std::string> symbols)
    : n_(dim), symbols_(std::move(symbols)), coeffs_(pair_count(dim) * dim, ParamPoly(symbols_.size())) {}

Field ParametricTable::field() const {
  return std::any_of(coeffs_.begin(), coeffs_.end(), [](const ParamPoly& p) { return p.has_imaginary(); })
             ? Field::Qi
             : Field::Q;
}

void ParametricTable::add(std::size_t i, std::size_t j, std::size_t k, const ParamPoly& p) {
  if (i == j) throw std::invalid_argument("bracket of a basis vector with itself");
  if (i < j) {
    coeffs_[pair_index(i, j, n_) * n_ + k] += p;
  } else {
    coeffs_[pair_index(j, i, n_) * n_ + k] -= p;
  }
}

std::size_t ParametricTable::symbol_index(std::string_view s) const {
  for (std::size_t k = 0; k < symbols_.size(); ++k) {
    if (symbols_[k] == s) return k;
  }
  throw MissingParameter("table has no parameter '" + std::string(s) + "'");
}

unsigned ParametricTable::degree_in(std::string_view symbol) const {
  const std::size_t idx = symbol_index(symbol);
  unsigned d = 0;
  for (const auto& p : coeffs_) d = std::max(d, p.degree_in(idx));
  return d;
}

std::vector<Gaussian> ParametricTable::resolve(const ParameterAssignment& at) const {
  std::vector<Gaussian> values;
  for (const auto& s : symbols_) {
    auto it = at.find(s);
    if (it == at.end()) throw MissingParameter("no value given for parameter '" + s + "'");
    values.push_back(it->second.gaussian());
  }
  return values;
}

namespace {

template <class F>
F narrow(const Gaussian& z) {
  if constexpr (std::is_same_v<F, Rational>) {
    return to_rational(z);
  } else {
    return z;
  }
}

}  // namespace

template <class F>
StructureConstants<F> ParametricTable::eval(const ParameterAssignment& at, std::string name) const {
  const std::vector<Gaussian> values = resolve(at);
  StructureConstants<F> out(n_, std::move(name));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      for (std::size_t k = 0; k < n_; ++k) {
        const ParamPoly& p = coefficient(i, j, k);
        if (!p.is_zero()) out.set(i, j, k, narrow<F>(p.evaluate(values)));
      }
    }
  }
  return out;
}

template <class F>
StructureConstants<F> ParametricTable::partial(std::string_view symbol, const ParameterAssignment& at) const {
  const std::size_t idx = symbol_index(symbol);
  const std::vector<Gaussian> values = resolve(at);
  StructureConstants<F> out(n_, "d/d" + std::string(symbol));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      for (std::size_t k = 0; k < n_; ++k) {
        const ParamPoly& p = coefficient(i, j, k);
        if (p.is_zero()) continue;
        ParamPoly d = p.derivative(idx);
        if (!d.is_zero()) out.set(i, j, k, narrow<F>(d.evaluate(values)));
      }
    }
  }
  return out;
}

template StructureConstants<Rational> ParametricTable::eval<Rational>(const ParameterAssignment&, std::string) const;
template StructureConstants<Gaussian> ParametricTable::eval<Gaussian>(const ParameterAssignment&, std::string) const;
template StructureConstants<Rational> ParametricTable::partial<Rational>(std::string_view,
                                                                         const ParameterAssignment&) const;
template StructureConstants<Gaussian> ParametricTable::partial<Gaussian>(std::string_view,
                                                                         const ParameterAssignment&) const;

// ------------------------------------------------------------------- parser

namespace {

constexpr std::size_t kScalarSlot = std::numeric_limits<std::size_t>::max();

/// Linear combination of basis letters plus a scalar part.
struct LinComb {
  std::map<std::size_t, ParamPoly> parts;  // basis index or kScalarSlot

  bool has_basis() const {
    return std::any_of(parts.begin(), parts.end(), [](const auto& p) { return p.first != kScalarSlot; });
  }
  ParamPoly scalar(std::size_t nsym) const {
    auto it = parts.find(kScalarSlot);
    return it == parts.end() ? ParamPoly(nsym) : it->second;
  }
  void add(std::size_t slot, const ParamPoly& p) {
    auto [it, inserted] = parts.try_emplace(slot, p);
    if (!inserted) it->second += p;
    if (it->second.is_zero()) parts.erase(it);
  }
};

class Parser {
 public:
  Parser(std::string_view text, std::size_t n, const std::vector<std::string>& symbols)
      : text_(text), n_(n), symbols_(symbols) {}

  ParametricTable table() {
    ParametricTable out(n_, symbols_);
    std::vector<char> seen(pair_count(n_), 0);
    skip_separators();
    while (!at_end()) {
      const std::size_t line = line_, column = column_;
      auto [i, j] = lhs();
      expect('=');
      LinComb rhs = expression();
      if (!rhs.scalar(nsym()).is_zero()) {
        throw ParseError(ParseError::Kind::Syntax, "right-hand side must be a combination of basis letters", line,
                         column);
      }
      const std::size_t p = pair_index(std::min(i, j), std::max(i, j), n_);
      if (seen[p]) throw ParseError(ParseError::Kind::Syntax, "bracket listed twice", line, column);
      seen[p] = 1;
      for (const auto& [k, poly] : rhs.parts) out.add(i, j, k, poly);
      skip_spaces();
      if (!at_end() && !is_separator(peek())) error(ParseError::Kind::Syntax, "expected ',' between entries");
      skip_separators();
    }
    return out;
  }

  LinComb single_expression() {
    skip_spaces();
    LinComb v = expression();
    skip_spaces();
    if (!at_end()) error(ParseError::Kind::Syntax, "unexpected trailing input");
    return v;
  }

  std::size_t nsym() const { return symbols_.size(); }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void advance(std::size_t count = 1) {
    for (std::size_t k = 0; k < count && !at_end(); ++k) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
        ++column_;
      }
      ++pos_;
    }
  }

  static bool is_separator(char c) { return c == ',' || c == ';' || c == '\n'; }

  void skip_spaces() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) advance();
  }
  void skip_separators() {
    while (!at_end() && (std::isspace(static_cast<unsigned char>(peek())) || peek() == ',' || peek() == ';')) {
      advance();
    }
  }

  [[noreturn]] void error(ParseError::Kind kind, const std::string& what) const {
    throw ParseError(kind, what, line_, column_);
  }

  void expect(char c) {
    skip_spaces();
    if (peek() != c) error(ParseError::Kind::Syntax, std::string("expected '") + c + "'");
    advance();
  }

  /// One UTF-8 code point.
  std::string read_symbol() {
    const auto lead = static_cast<unsigned char>(peek());
    std::size_t len = 1;
    if (lead >= 0xF0) {
      len = 4;
    } else if (lead >= 0xE0) {
      len = 3;
    } else if (lead >= 0xC0) {
      len = 2;
    }
    std::string s(text_.substr(pos_, len));
    advance(len);
    return s;
  }

  static bool starts_symbol(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || (static_cast<unsigned char>(c) & 0x80);
  }

  std::size_t basis_letter(const std::string& s) const {
    if (s.size() == 1 && s[0] >= 'a' && s[0] <= 'z') {
      const std::size_t idx = static_cast<std::size_t>(s[0] - 'a');
      if (idx < n_) return idx;
      error(ParseError::Kind::LetterOutOfRange,
            "letter '" + s + "' is beyond the dimension " + std::to_string(n_));
    }
    error(ParseError::Kind::UnknownLetter, "'" + s + "' is not a basis letter");
  }

  std::pair<std::size_t, std::size_t> lhs() {
    skip_spaces();
    std::size_t i = 0, j = 0;
    if (peek() == '[') {
      advance();
      skip_spaces();
      if (!starts_symbol(peek())) error(ParseError::Kind::UnknownLetter, "expected a basis letter");
      i = basis_letter(read_symbol());
      expect(',');
      skip_spaces();
      if (!starts_symbol(peek())) error(ParseError::Kind::UnknownLetter, "expected a basis letter");
      j = basis_letter(read_symbol());
      expect(']');
    } else {
      if (!starts_symbol(peek())) error(ParseError::Kind::UnknownLetter, "expected a basis letter");
      i = basis_letter(read_symbol());
      skip_spaces();
      if (!starts_symbol(peek())) error(ParseError::Kind::UnknownLetter, "expected a second basis letter");
      j = basis_letter(read_symbol());
    }
    if (i == j) error(ParseError::Kind::Syntax, "bracket of a letter with itself");
    return {i, j};
  }

  LinComb expression() {
    skip_spaces();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      advance();
    }
    LinComb acc = term();
    if (negate) acc = scale(acc, ParamPoly::constant(nsym(), Gaussian(-1)));
    for (;;) {
      skip_spaces();
      if (peek() != '+' && peek() != '-') break;
      const bool minus = peek() == '-';
      advance();
      LinComb t = term();
      for (const auto& [k, p] : t.parts) acc.add(k, minus ? ParamPoly(nsym()) - p : p);
    }
    return acc;
  }

  LinComb scale(const LinComb& v, const ParamPoly& s) const {
    LinComb out;
    for (const auto& [k, p] : v.parts) out.add(k, p * s);
    return out;
  }

  LinComb multiply(const LinComb& a, const LinComb& b) const {
    if (a.has_basis() && b.has_basis()) error(ParseError::Kind::Nonlinear, "product of two basis letters");
    if (a.has_basis()) return scale(a, b.scalar(nsym()));
    return scale(b, a.scalar(nsym()));
  }

  bool starts_factor() const {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || starts_symbol(c);
  }

  LinComb term() {
    LinComb acc = power();
    for (;;) {
      skip_spaces();
      if (peek() == '*') {
        advance();
        acc = multiply(acc, power());
      } else if (peek() == '/') {
        advance();
        LinComb d = power();
        const ParamPoly s = d.scalar(nsym());
        if (d.has_basis() || !s.is_constant() || s.is_zero()) {
          error(ParseError::Kind::Syntax, "can only divide by a nonzero constant");
        }
        const Gaussian inv = Gaussian(1) / s.constant_term();
        acc = scale(acc, ParamPoly::constant(nsym(), inv));
      } else if (starts_factor()) {
        acc = multiply(acc, power());
      } else {
        break;
      }
    }
    return acc;
  }

  LinComb power() {
    LinComb base = primary();
    skip_spaces();
    if (peek() != '^') return base;
    advance();
    skip_spaces();
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      digits += peek();
      advance();
    }
    if (digits.empty()) error(ParseError::Kind::Syntax, "expected an integer exponent");
    if (base.has_basis()) error(ParseError::Kind::Nonlinear, "power of a basis letter");
    LinComb out;
    out.add(kScalarSlot, base.scalar(nsym()).pow(static_cast<unsigned>(std::stoul(digits))));
    return out;
  }

  LinComb primary() {
    skip_spaces();
    LinComb out;
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        digits += peek();
        advance();
      }
      out.add(kScalarSlot, ParamPoly::constant(nsym(), Gaussian(Rational(Integer(digits)))));
      return out;
    }
    if (c == '(') {
      advance();
      out = expression();
      expect(')');
      return out;
    }
    if (starts_symbol(c)) {
      const std::string s = read_symbol();
      for (std::size_t k = 0; k < symbols_.size(); ++k) {
        if (symbols_[k] == s) {
          out.add(kScalarSlot, ParamPoly::symbol(nsym(), k));
          return out;
        }
      }
      if (s.size() == 1 && s[0] >= 'a' && s[0] <= 'z') {
        const std::size_t idx = static_cast<std::size_t>(s[0] - 'a');
        if (idx < n_) {
          out.add(idx, ParamPoly::constant(nsym(), Gaussian(1)));
          return out;
        }
        if (s == "i") {
          out.add(kScalarSlot, ParamPoly::constant(nsym(), Gaussian::unit()));
          return out;
        }
        error(ParseError::Kind::LetterOutOfRange, "letter '" + s + "' is beyond the dimension " +
                                                       std::to_string(n_) + " and is not an assigned parameter");
      }
      error(ParseError::Kind::UnresolvedParameter, "unresolved parameter symbol '" + s + "'");
    }
    if (at_end()) error(ParseError::Kind::Syntax, "unexpected end of input");
    error(ParseError::Kind::UnknownLetter, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t n_;
  const std::vector<std::string>& symbols_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

void check_symbols(const std::vector<std::string>& symbols, std::size_t n) {
  for (const auto& s : symbols) {
    if (s.size() == 1 && s[0] >= 'a' && static_cast<std::size_t>(s[0] - 'a') < n) {
      throw ParseError(ParseError::Kind::Syntax, "parameter '" + s + "' collides with a basis letter");
    }
  }
}

}  // namespace

ParametricTable parse_parametric_table(std::string_view text, std::size_t n,
                                       const std::vector<std::string>& symbols) {
  if (n == 0) throw std::invalid_argument("dimension must be positive");
  check_symbols(symbols, n);
  return Parser(text, n, symbols).table();
}

template <class F>
StructureConstants<F> parse_table(const TableText& src, std::size_t n, std::string name) {
  std::vector<std::string> symbols;
  for (const auto& [s, v] : src.params) symbols.push_back(s);
  return parse_parametric_table(src.text, n, symbols).eval<F>(src.params, std::move(name));
}

template StructureConstants<Rational> parse_table<Rational>(const TableText&, std::size_t, std::string);
template StructureConstants<Gaussian> parse_table<Gaussian>(const TableText&, std::size_t, std::string);

std::vector<ParamPoly> parse_vector_expression(std::string_view text, std::size_t n,
                                               const std::vector<std::string>& symbols) {
  check_symbols(symbols, n);
  Parser parser(text, n, symbols);
  LinComb v = parser.single_expression();
  if (!v.scalar(symbols.size()).is_zero()) {
    throw ParseError(ParseError::Kind::Syntax, "vector expression has a scalar part: '" + std::string(text) + "'");
  }
  std::vector<ParamPoly> coords(n, ParamPoly(symbols.size()));
  for (const auto& [k, p] : v.parts) coords[k] = p;
  return coords;
}

ParamPoly parse_scalar_expression(std::string_view text, const std::vector<std::string>& symbols) {
  Parser parser(text, 0, symbols);
  LinComb v = parser.single_expression();
  return v.scalar(symbols.size());
}

// ------------------------------------------------------------------ output

namespace {

std::string letter(std::size_t k) { return std::string(1, static_cast<char>('a' + k)); }

template <class F>
std::string coefficient_prefix(const F& c, bool first) {
  std::string s = to_string(c);
  const bool compound = std::is_same_v<F, Gaussian> && !Gaussian(c).is_real() && sgn(Gaussian(c).real()) != 0;
  if (compound) return (first ? "" : "+") + std::string("(") + s + ")";
  if (s == "1") return first ? "" : "+";
  if (s == "-1") return "-";
  if (s == "i") return first ? "i*" : "+i*";
  if (s == "-i") return "-i*";
  if (s[0] != '-' && !first) s = "+" + s;
  return s + "*";
}

}  // namespace

template <class F>
std::string bracket_rhs(const StructureConstants<F>& mu, std::size_t i, std::size_t j) {
  std::string rhs;
  for (std::size_t k = 0; k < mu.dim(); ++k) {
    const F c = mu.coeff(i, j, k);
    if (is_zero(c)) continue;
    rhs += coefficient_prefix(c, rhs.empty()) + letter(k);
  }
  return rhs.empty() ? "0" : rhs;
}

template std::string bracket_rhs<Rational>(const StructureConstants<Rational>&, std::size_t, std::size_t);
template std::string bracket_rhs<Gaussian>(const StructureConstants<Gaussian>&, std::size_t, std::size_t);

template <class F>
std::string to_table_text(const StructureConstants<F>& mu) {
  if (mu.dim() > 26) throw std::invalid_argument("table text needs at most 26 basis letters");
  std::ostringstream os;
  bool first_entry = true;
  const std::size_t n = mu.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::string rhs = bracket_rhs(mu, i, j);
      if (rhs == "0") continue;
      if (!first_entry) os << ", ";
      first_entry = false;
      os << letter(i) << letter(j) << " = " << rhs;
    }
  }
  return os.str();
}

template std::string to_table_text<Rational>(const StructureConstants<Rational>&);
template std::string to_table_text<Gaussian>(const StructureConstants<Gaussian>&);

// -------------------------------------------------------------------- JSON

template <class F>
Json to_json(const StructureConstants<F>& mu) {
  Json j;
  j["name"] = mu.name();
  j["dim"] = mu.dim();
  j["field"] = field_name(FieldOf<F>::value);
  Json brackets = Json::array();
  const std::size_t n = mu.dim();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      Json terms = Json::array();
      for (std::size_t k = 0; k < n; ++k) {
        const F& c = mu.upper(a, b, k);
        if (is_zero(c)) continue;
        Json t;
        t["k"] = k + 1;
        t["c"] = to_string(c);
        terms.push_back(std::move(t));
      }
      if (terms.empty()) continue;
      Json entry;
      entry["i"] = a + 1;
      entry["j"] = b + 1;
      entry["terms"] = std::move(terms);
      brackets.push_back(std::move(entry));
    }
  }
  j["brackets"] = std::move(brackets);
  return j;
}

template Json to_json<Rational>(const StructureConstants<Rational>&);
template Json to_json<Gaussian>(const StructureConstants<Gaussian>&);

namespace {

std::size_t index_field(const Json& obj, const char* key, std::size_t n) {
  if (!obj.contains(key) || !obj[key].is_number_unsigned()) {
    throw ParseError(ParseError::Kind::Schema, std::string("missing or non-integer '") + key + "'");
  }
  const auto v = obj[key].get<std::size_t>();
  if (v < 1 || v > n) {
    throw ParseError(ParseError::Kind::LetterOutOfRange, std::string("index '") + key + "' = " + std::to_string(v) +
                                                             " outside 1.." + std::to_string(n));
  }
  return v - 1;
}

void require_keys(const Json& j) {
  if (!j.is_object()) throw ParseError(ParseError::Kind::Schema, "structure JSON must be an object");
  for (const char* key : {"dim", "field", "brackets"}) {
    if (!j.contains(key)) throw ParseError(ParseError::Kind::Schema, std::string("missing key '") + key + "'");
  }
}

}  // namespace

ParametricTable parametric_from_json(const Json& j) {
  require_keys(j);
  const auto n = j["dim"].get<std::size_t>();
  std::vector<std::string> symbols;
  if (j.contains("params")) symbols = j["params"].get<std::vector<std::string>>();
  ParametricTable out(n, symbols);
  for (const auto& entry : j["brackets"]) {
    const std::size_t a = index_field(entry, "i", n);
    const std::size_t b = index_field(entry, "j", n);
    if (a == b) throw ParseError(ParseError::Kind::Schema, "bracket entry with i == j");
    for (const auto& term : entry.at("terms")) {
      const std::size_t k = index_field(term, "k", n);
      const auto c = term.at("c").get<std::string>();
      ParamPoly p = symbols.empty() ? ParamPoly::constant(0, parse_gaussian(c)) : parse_scalar_expression(c, symbols);
      out.add(a, b, k, p);
    }
  }
  return out;
}

AnyStructure structure_from_json(const Json& j) {
  require_keys(j);
  const Field field = parse_field_name(j["field"].get<std::string>());
  const auto n = j["dim"].get<std::size_t>();
  const std::string name = j.contains("name") ? j["name"].get<std::string>() : std::string();
  if (j.contains("params") && !j["params"].empty()) {
    throw ParseError(ParseError::Kind::Schema, "parametric record needs parameter values");
  }
  auto fill = [&](auto& mu) {
    using F = std::decay_t<decltype(mu.coeff(0, 0, 0))>;
    for (const auto& entry : j["brackets"]) {
      const std::size_t a = index_field(entry, "i", n);
      const std::size_t b = index_field(entry, "j", n);
      if (a == b) throw ParseError(ParseError::Kind::Schema, "bracket entry with i == j");
      for (const auto& term : entry.at("terms")) {
        const std::size_t k = index_field(term, "k", n);
        const auto c = term.at("c").get<std::string>();
        if constexpr (std::is_same_v<F, Rational>) {
          mu.add(a, b, k, parse_rational(c));
        } else {
          mu.add(a, b, k, parse_gaussian(c));
        }
      }
    }
  };
  if (field == Field::Q) {
    StructureConstants<Rational> mu(n, name);
    fill(mu);
    return mu;
  }
  StructureConstants<Gaussian> mu(n, name);
  fill(mu);
  return mu;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace nilrigid
