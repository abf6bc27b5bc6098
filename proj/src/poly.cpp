#include "nilrigid/poly.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <sstream>

#include "nilrigid/linalg.hpp"

namespace nilrigid {

// ----------------------------------------------------------------- Monomial

std::string Var::str() const {
  return "t_{" + std::to_string(i()) + "," + std::to_string(j()) + "," + std::to_string(k()) + "}";
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

unsigned Monomial::exponent(Var v) const {
  for (const auto& [w, e] : factors_) {
    if (w == v) return e;
  }
  return 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  auto ia = a.factors_.begin();
  auto ib = b.factors_.begin();
  while (ia != a.factors_.end() || ib != b.factors_.end()) {
    if (ib == b.factors_.end() || (ia != a.factors_.end() && ia->first < ib->first)) {
      out.factors_.push_back(*ia++);
    } else if (ia == a.factors_.end() || ib->first < ia->first) {
      out.factors_.push_back(*ib++);
    } else {
      out.factors_.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  auto it = other.factors_.begin();
  for (const auto& [v, e] : factors_) {
    while (it != other.factors_.end() && it->first < v) ++it;
    if (it == other.factors_.end() || it->first != v || it->second < e) return false;
  }
  return true;
}

Monomial Monomial::operator/(const Monomial& d) const {
  Monomial out;
  for (const auto& [v, e] : factors_) {
    const unsigned de = d.exponent(v);
    if (de > e) throw std::invalid_argument("monomial division with remainder");
    if (e > de) out.factors_.emplace_back(v, e - de);
  }
  return out;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial out;
  auto ia = factors_.begin();
  auto ib = o.factors_.begin();
  while (ia != factors_.end() || ib != o.factors_.end()) {
    if (ib == o.factors_.end() || (ia != factors_.end() && ia->first < ib->first)) {
      out.factors_.push_back(*ia++);
    } else if (ia == factors_.end() || ib->first < ia->first) {
      out.factors_.push_back(*ib++);
    } else {
      out.factors_.emplace_back(ia->first, std::max(ia->second, ib->second));
      ++ia;
      ++ib;
    }
  }
  return out;
}

std::string Monomial::str() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [v, e] : factors_) {
    if (!s.empty()) s += "*";
    s += v.str();
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

// ---------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(const Rational& c) { add_term(Monomial(), c); }
MultiPoly::MultiPoly(Var v) { add_term(Monomial(v), Rational(1)); }
MultiPoly::MultiPoly(const Monomial& m, const Rational& c) { add_term(m, c); }

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.degree()));
  return d;
}

bool MultiPoly::is_homogeneous() const {
  const int d = degree();
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return static_cast<int>(t.first.degree()) == d; });
}

std::vector<Var> MultiPoly::variables() const {
  std::set<Var> vs;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m.factors()) vs.insert(v);
  }
  return {vs.begin(), vs.end()};
}

Rational MultiPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, Rational(-c));
  return *this;
}

MultiPoly MultiPoly::operator-() const { return scaled(Rational(-1)); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, Rational(ca * cb));
  }
  return out;
}

MultiPoly MultiPoly::scaled(const Rational& s) const {
  MultiPoly out;
  if (sgn(s) == 0) return out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, Rational(c * s));
  return out;
}

MultiPoly MultiPoly::times(const Monomial& m, const Rational& c) const {
  MultiPoly out;
  if (sgn(c) == 0) return out;
  for (const auto& [mm, cc] : terms_) out.terms_.emplace(mm * m, Rational(cc * c));
  return out;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly out(Rational(1));
  for (unsigned k = 0; k < e; ++k) out = out * *this;
  return out;
}

MultiPoly MultiPoly::monic() const {
  if (terms_.empty()) return *this;
  return scaled(Rational(1) / terms_.begin()->second);
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = a == 1;
    if (m.degree() == 0) {
      os << a.get_str();
    } else if (unit) {
      os << m.str();
    } else {
      os << a.get_str() << "*" << m.str();
    }
  }
  return os.str();
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  MultiPoly parse() {
    MultiPoly p = expression();
    skip();
    if (pos_ < s_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(ParseError::Kind::Syntax, "polynomial: " + what, 1, pos_ + 1);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  MultiPoly expression() {
    MultiPoly acc;
    bool negate = false;
    if (peek() == '+' || peek() == '-') negate = s_[pos_++] == '-';
    acc = term();
    if (negate) acc = -acc;
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      MultiPoly t = term();
      if (c == '+') {
        acc += t;
      } else {
        acc -= t;
      }
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = power();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * power();
      } else if (c == '/') {
        ++pos_;
        MultiPoly d = power();
        if (d.degree() != 0) fail("division by a non-constant");
        acc = acc.scaled(Rational(1) / d.terms().begin()->second);
      } else if (c == 't' || c == '(' || std::isdigit(static_cast<unsigned char>(c))) {
        acc = acc * power();
      } else {
        break;
      }
    }
    return acc;
  }

  MultiPoly power() {
    MultiPoly base = primary();
    if (peek() == '^') {
      ++pos_;
      skip();
      const unsigned e = number();
      base = base.pow(e);
    }
    return base;
  }

  unsigned number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
  }

  MultiPoly primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      MultiPoly p = expression();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return MultiPoly(Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    if (c == 't') {
      ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '_') ++pos_;
      std::array<unsigned, 3> idx{};
      if (pos_ < s_.size() && s_[pos_] == '{') {
        ++pos_;
        for (int q = 0; q < 3; ++q) {
          idx[q] = number();
          skip();
          if (q < 2) {
            if (pos_ >= s_.size() || s_[pos_] != ',') fail("expected ',' in variable index");
            ++pos_;
          }
        }
        if (pos_ >= s_.size() || s_[pos_] != '}') fail("expected '}'");
        ++pos_;
      } else {
        for (int q = 0; q < 3; ++q) {
          if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected index digit");
          idx[q] = static_cast<unsigned>(s_[pos_++] - '0');
        }
      }
      if (!(idx[0] >= 1 && idx[0] < idx[1] && idx[1] < idx[2] && idx[2] < 256)) {
        fail("variable indices must satisfy 1 <= i < j < k");
      }
      return MultiPoly(Var(idx[0], idx[1], idx[2]));
    }
    fail(c == '\0' ? "unexpected end of input" : std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly MultiPoly::parse(std::string_view text) { return PolyParser(text).parse(); }

MultiPoly substitute(const MultiPoly& f, const std::map<Var, Rational>& assignment) {
  if (assignment.empty()) return f;
  MultiPoly out;
  for (const auto& [m, c] : f.terms()) {
    Rational coeff = c;
    Monomial rest;
    for (const auto& [v, e] : m.factors()) {
      auto it = assignment.find(v);
      if (it == assignment.end()) {
        rest = rest * Monomial(v, e);
      } else {
        for (unsigned p = 0; p < e; ++p) coeff *= it->second;
      }
    }
    out += MultiPoly(rest, coeff);
  }
  return out;
}

std::map<Var, Rational> zero_assignment(const std::vector<Var>& vars) {
  std::map<Var, Rational> out;
  for (const auto& v : vars) out[v] = 0;
  return out;
}

// --------------------------------------------------------------- generators

std::string kind_name(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::J:
      return "J";
    case GeneratorKind::N:
      return "N";
    case GeneratorKind::SN:
      return "SN";
  }
  return "?";
}

namespace {

using PolyVec = std::vector<MultiPoly>;

class GenericBracket {
 public:
  explicit GenericBracket(unsigned n) : n_(n) {}

  PolyVec basis(unsigned x) const {
    PolyVec v(n_);
    v[x] = MultiPoly(Rational(1));
    return v;
  }

  static bool zero(const PolyVec& v) {
    return std::all_of(v.begin(), v.end(), [](const MultiPoly& p) { return p.is_zero(); });
  }

  PolyVec bracket(const PolyVec& u, const PolyVec& v) const {
    PolyVec out(n_);
    for (unsigned a = 0; a < n_; ++a) {
      if (u[a].is_zero()) continue;
      for (unsigned b = 0; b < n_; ++b) {
        if (a == b || v[b].is_zero()) continue;
        const MultiPoly w = u[a] * v[b];
        const unsigned lo = std::min(a, b), hi = std::max(a, b);
        for (unsigned k = hi + 1; k < n_; ++k) {
          MultiPoly term = w * MultiPoly(Var(lo + 1, hi + 1, k + 1));
          if (a < b) {
            out[k] += term;
          } else {
            out[k] -= term;
          }
        }
      }
    }
    return out;
  }

  /// Left-nested words on all tuples of length level+1.
  std::vector<PolyVec> nested(unsigned level) const {
    std::vector<PolyVec> table;
    for (unsigned x = 0; x < n_; ++x) table.push_back(basis(x));
    for (unsigned step = 1; step <= level; ++step) {
      std::vector<PolyVec> next;
      next.reserve(table.size() * n_);
      for (const auto& t : table) {
        for (unsigned x = 0; x < n_; ++x) next.push_back(zero(t) ? PolyVec(n_) : bracket(t, basis(x)));
      }
      table = std::move(next);
    }
    return table;
  }

 private:
  unsigned n_;
};

std::vector<unsigned> decode_tuple(std::size_t index, unsigned n, unsigned length) {
  std::vector<unsigned> args(length);
  for (unsigned p = length; p-- > 0;) {
    args[p] = static_cast<unsigned>(index % n) + 1;
    index /= n;
  }
  return args;
}

}  // namespace

std::vector<TaggedGenerator> tagged_generators(unsigned n, unsigned k, GeneratorKind kind) {
  if (n < 2) throw std::invalid_argument("generators need n >= 2");
  if (n > 255) throw std::invalid_argument("generators need n <= 255");
  if (kind == GeneratorKind::SN && k < 3) throw std::invalid_argument("SN generators need k >= 3");
  if (kind == GeneratorKind::N && k < 1) throw std::invalid_argument("N generators need k >= 1");
  GenericBracket mu(n);
  std::vector<TaggedGenerator> out;
  std::set<MultiPoly::Terms> seen;
  auto offer = [&](const PolyVec& value, std::vector<unsigned> args) {
    for (unsigned m = 0; m < n; ++m) {
      if (value[m].is_zero()) continue;
      MultiPoly key = value[m].monic();
      if (!seen.insert(key.terms()).second) continue;
      out.push_back({value[m], kind, args, m + 1});
    }
  };

  if (kind == GeneratorKind::J) {
    for (unsigned x = 0; x < n; ++x) {
      for (unsigned y = x + 1; y < n; ++y) {
        for (unsigned z = y + 1; z < n; ++z) {
          const PolyVec xy = mu.bracket(mu.basis(x), mu.basis(y));
          const PolyVec yz = mu.bracket(mu.basis(y), mu.basis(z));
          const PolyVec zx = mu.bracket(mu.basis(z), mu.basis(x));
          PolyVec j = mu.bracket(xy, mu.basis(z));
          const PolyVec b = mu.bracket(yz, mu.basis(x));
          const PolyVec c = mu.bracket(zx, mu.basis(y));
          for (unsigned m = 0; m < n; ++m) j[m] += b[m] + c[m];
          offer(j, {x + 1, y + 1, z + 1});
        }
      }
    }
  } else if (kind == GeneratorKind::N) {
    const std::vector<PolyVec> words = mu.nested(k);
    for (std::size_t t = 0; t < words.size(); ++t) offer(words[t], decode_tuple(t, n, k + 1));
  } else {
    const std::vector<PolyVec> head = mu.nested(1);
    const std::vector<PolyVec> tail = mu.nested(k - 2);
    for (std::size_t h = 0; h < head.size(); ++h) {
      if (GenericBracket::zero(head[h])) continue;
      for (std::size_t t = 0; t < tail.size(); ++t) {
        if (GenericBracket::zero(tail[t])) continue;
        offer(mu.bracket(head[h], tail[t]), decode_tuple(h * tail.size() + t, n, k + 1));
      }
    }
  }
  return out;
}

std::vector<MultiPoly> generators(unsigned n, unsigned k, GeneratorKind kind) {
  std::vector<MultiPoly> out;
  for (auto& g : tagged_generators(n, k, kind)) out.push_back(std::move(g.poly));
  return out;
}

IdealPresentation IdealPresentation::nilpotent(unsigned n, unsigned k) {
  IdealPresentation p;
  p.n = n;
  p.k = k;
  p.generators = tagged_generators(n, k, GeneratorKind::J);
  std::set<MultiPoly::Terms> seen;
  for (const auto& g : p.generators) seen.insert(g.poly.monic().terms());
  for (auto& g : tagged_generators(n, k, GeneratorKind::N)) {
    if (seen.insert(g.poly.monic().terms()).second) p.generators.push_back(std::move(g));
  }
  return p;
}

std::vector<MultiPoly> IdealPresentation::polys() const {
  std::vector<MultiPoly> out;
  for (const auto& g : generators) out.push_back(g.poly);
  return out;
}

bool same_up_to_scalars(const std::vector<MultiPoly>& a, const std::vector<MultiPoly>& b) {
  std::set<MultiPoly::Terms> sa, sb;
  for (const auto& p : a) sa.insert(p.monic().terms());
  for (const auto& p : b) sb.insert(p.monic().terms());
  return sa == sb;
}

// --------------------------------------------------------------- membership

bool MembershipCertificate::verify(const std::vector<MultiPoly>& gens) const {
  if (multipliers.size() != gens.size()) return false;
  MultiPoly sum;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (multipliers[j].degree() + gens[j].degree() > static_cast<int>(degree_bound) && !multipliers[j].is_zero()) {
      return false;
    }
    sum += multipliers[j] * gens[j];
  }
  return sum == target;
}

namespace {

using Weight = std::vector<int>;

constexpr std::size_t kWeightSlots = 256;

Weight weight_of(const Monomial& m) {
  Weight w(kWeightSlots, 0);
  for (const auto& [v, e] : m.factors()) {
    w[v.i()] += static_cast<int>(e);
    w[v.j()] += static_cast<int>(e);
    w[v.k()] -= static_cast<int>(e);
  }
  return w;
}

struct Grade {
  unsigned degree;
  Weight weight;
  friend auto operator<=>(const Grade&, const Grade&) = default;
};

std::optional<Grade> grade_of(const MultiPoly& p) {
  if (p.is_zero()) return std::nullopt;
  const Monomial& first = p.terms().begin()->first;
  Grade g{first.degree(), weight_of(first)};
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() != g.degree || weight_of(m) != g.weight) return std::nullopt;
  }
  return g;
}

void all_monomials(const std::vector<Var>& vars, std::size_t start, unsigned degree, Monomial current,
                   std::vector<Monomial>& out) {
  if (degree == 0) {
    out.push_back(current);
    return;
  }
  for (std::size_t v = start; v < vars.size(); ++v) {
    all_monomials(vars, v, degree - 1, current * Monomial(vars[v]), out);
  }
}

/// Solves sum_j sum_{m in basis_j} x_{j,m} m g_j = f for one component.
std::optional<std::vector<MultiPoly>> solve_component(const MultiPoly& f, const std::vector<MultiPoly>& gens,
                                                      const std::vector<std::vector<Monomial>>& candidates) {
  std::map<Monomial, std::size_t> row_of;
  auto row = [&](const Monomial& m) {
    auto [it, inserted] = row_of.try_emplace(m, row_of.size());
    return it->second;
  };
  for (const auto& [m, c] : f.terms()) row(m);
  struct Unknown {
    std::size_t gen;
    Monomial mult;
  };
  std::vector<Unknown> unknowns;
  std::vector<SparseRow<Rational>> columns;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    for (const auto& m : candidates[j]) {
      SparseRow<Rational> col;
      for (const auto& [gm, gc] : gens[j].terms()) col.emplace_back(row(gm * m), gc);
      std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      unknowns.push_back({j, m});
      columns.push_back(std::move(col));
    }
  }
  ExactMatrix<Rational> a(row_of.size(), unknowns.size());
  std::vector<SparseRow<Rational>> rows(row_of.size());
  for (std::size_t u = 0; u < columns.size(); ++u) {
    for (const auto& [r, v] : columns[u]) rows[r].emplace_back(u, v);
  }
  for (std::size_t r = 0; r < rows.size(); ++r) a.set_row(r, std::move(rows[r]));
  Vector<Rational> rhs(row_of.size(), Rational(0));
  for (const auto& [m, c] : f.terms()) rhs[row_of.at(m)] = c;
  std::optional<Vector<Rational>> x = solve(a, std::span<const Rational>(rhs));
  if (!x) return std::nullopt;
  std::vector<MultiPoly> mult(gens.size());
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    if (sgn((*x)[u]) != 0) mult[unknowns[u].gen] += MultiPoly(unknowns[u].mult, (*x)[u]);
  }
  return mult;
}

}  // namespace

std::optional<MembershipCertificate> member_bounded(const MultiPoly& f, const std::vector<MultiPoly>& gens,
                                                    unsigned degree_bound) {
  MembershipCertificate cert;
  cert.target = f;
  cert.degree_bound = degree_bound;
  cert.multipliers.assign(gens.size(), MultiPoly());
  if (f.is_zero()) return cert;
  if (f.degree() > static_cast<int>(degree_bound)) {
    throw std::invalid_argument("degree bound below the degree of the target polynomial");
  }

  std::set<Var> var_set;
  for (const auto& v : f.variables()) var_set.insert(v);
  for (const auto& g : gens) {
    for (const auto& v : g.variables()) var_set.insert(v);
  }
  const std::vector<Var> vars(var_set.begin(), var_set.end());

  std::vector<std::optional<Grade>> gen_grades;
  bool graded = true;
  for (const auto& g : gens) {
    gen_grades.push_back(grade_of(g));
    if (!g.is_zero() && !gen_grades.back()) graded = false;
  }

  std::map<unsigned, std::vector<Monomial>> monomials_of_degree;
  auto monomials = [&](unsigned d) -> const std::vector<Monomial>& {
    auto it = monomials_of_degree.find(d);
    if (it == monomials_of_degree.end()) {
      std::vector<Monomial> ms;
      all_monomials(vars, 0, d, Monomial(), ms);
      it = monomials_of_degree.emplace(d, std::move(ms)).first;
    }
    return it->second;
  };

  if (graded) {
    std::map<Grade, MultiPoly> components;
    for (const auto& [m, c] : f.terms()) components[Grade{m.degree(), weight_of(m)}] += MultiPoly(m, c);
    for (const auto& [grade, part] : components) {
      std::vector<std::vector<Monomial>> candidates(gens.size());
      for (std::size_t j = 0; j < gens.size(); ++j) {
        if (!gen_grades[j] || gen_grades[j]->degree > grade.degree) continue;
        Weight need = grade.weight;
        for (std::size_t s = 0; s < need.size(); ++s) need[s] -= gen_grades[j]->weight[s];
        for (const auto& m : monomials(grade.degree - gen_grades[j]->degree)) {
          if (weight_of(m) == need) candidates[j].push_back(m);
        }
      }
      auto mult = solve_component(part, gens, candidates);
      if (!mult) return std::nullopt;
      for (std::size_t j = 0; j < gens.size(); ++j) cert.multipliers[j] += (*mult)[j];
    }
  } else {
    std::vector<std::vector<Monomial>> candidates(gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const int dg = gens[j].degree();
      if (dg < 0 || dg > static_cast<int>(degree_bound)) continue;
      for (unsigned d = 0; d + static_cast<unsigned>(dg) <= degree_bound; ++d) {
        const auto& ms = monomials(d);
        candidates[j].insert(candidates[j].end(), ms.begin(), ms.end());
      }
    }
    auto mult = solve_component(f, gens, candidates);
    if (!mult) return std::nullopt;
    cert.multipliers = std::move(*mult);
  }
  if (!cert.verify(gens)) throw Error("internal: membership certificate failed verification");
  return cert;
}

// ----------------------------------------------------------------- Groebner

bool monomial_less(const Monomial& a, const Monomial& b, MonomialOrder order) {
  if (order == MonomialOrder::DegRevLex) {
    const unsigned da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    // Smallest variable first (largest code): larger exponent there means smaller.
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    auto ia = fa.rbegin();
    auto ib = fb.rbegin();
    while (ia != fa.rend() && ib != fb.rend()) {
      if (ia->first != ib->first) {
        // The monomial containing the smaller variable (larger code) is smaller.
        return ia->first > ib->first;
      }
      if (ia->second != ib->second) return ia->second > ib->second;
      ++ia;
      ++ib;
    }
    return false;  // equal degree and equal tails means equal
  }
  // Lex: compare exponents of the largest variable (smallest code) first.
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  auto ia = fa.begin();
  auto ib = fb.begin();
  while (ia != fa.end() && ib != fb.end()) {
    if (ia->first != ib->first) return ia->first > ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
    ++ia;
    ++ib;
  }
  return ia == fa.end() && ib != fb.end();
}

Monomial leading_monomial(const MultiPoly& f, MonomialOrder order) {
  if (f.is_zero()) throw std::invalid_argument("zero polynomial has no leading monomial");
  auto it = f.terms().begin();
  const Monomial* best = &it->first;
  for (++it; it != f.terms().end(); ++it) {
    if (monomial_less(*best, it->first, order)) best = &it->first;
  }
  return *best;
}

namespace {

struct Lead {
  Monomial m;
  Rational c;
};

Lead lead(const MultiPoly& f, MonomialOrder order) {
  Monomial m = leading_monomial(f, order);
  return {m, f.coefficient(m)};
}

MultiPoly make_monic(const MultiPoly& f, MonomialOrder order) {
  if (f.is_zero()) return f;
  return f.scaled(Rational(1) / lead(f, order).c);
}

MultiPoly reduce(MultiPoly p, const std::vector<MultiPoly>& basis, const std::vector<Lead>& leads,
                 MonomialOrder order, std::size_t max_terms) {
  MultiPoly remainder;
  while (!p.is_zero()) {
    Lead lp = lead(p, order);
    bool divided = false;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (!leads[b].m.divides(lp.m)) continue;
      p -= basis[b].times(lp.m / leads[b].m, Rational(lp.c / leads[b].c));
      divided = true;
      break;
    }
    if (!divided) {
      remainder += MultiPoly(lp.m, lp.c);
      p -= MultiPoly(lp.m, lp.c);
    }
    if (max_terms > 0 && p.size() + remainder.size() > max_terms) {
      throw ResourceLimit("Groebner reduction exceeded the term cap");
    }
  }
  return remainder;
}

}  // namespace

std::vector<MultiPoly> groebner_small(const std::vector<MultiPoly>& gens, MonomialOrder order,
                                      const GroebnerCaps& caps) {
  std::vector<MultiPoly> basis;
  std::vector<Lead> leads;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    MultiPoly h = make_monic(g, order);
    basis.push_back(h);
    leads.push_back(lead(h, order));
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = a + 1; b < basis.size(); ++b) pairs.emplace_back(a, b);
  }
  std::size_t processed = 0;
  while (!pairs.empty()) {
    // Normal strategy: smallest lcm first.
    auto pick = std::min_element(pairs.begin(), pairs.end(), [&](const auto& x, const auto& y) {
      return monomial_less(leads[x.first].m.lcm(leads[x.second].m), leads[y.first].m.lcm(leads[y.second].m), order);
    });
    auto [a, b] = *pick;
    pairs.erase(pick);
    if (++processed > caps.max_pairs) throw ResourceLimit("Groebner basis exceeded the pair cap");
    const Monomial l = leads[a].m.lcm(leads[b].m);
    if (l == leads[a].m * leads[b].m) continue;  // coprime leading monomials
    if (l.degree() > caps.max_degree) throw ResourceLimit("Groebner basis exceeded the degree cap");
    MultiPoly s = basis[a].times(l / leads[a].m, Rational(1) / leads[a].c) -
                  basis[b].times(l / leads[b].m, Rational(1) / leads[b].c);
    MultiPoly r = reduce(std::move(s), basis, leads, order, caps.max_terms);
    if (r.is_zero()) continue;
    r = make_monic(r, order);
    if (basis.size() >= caps.max_basis) throw ResourceLimit("Groebner basis exceeded the size cap");
    basis.push_back(r);
    leads.push_back(lead(r, order));
    for (std::size_t c = 0; c + 1 < basis.size(); ++c) pairs.emplace_back(c, basis.size() - 1);
  }

  // Minimal, then reduced.
  std::vector<bool> keep(basis.size(), true);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b < basis.size() && keep[a]; ++b) {
      if (a == b || !keep[b]) continue;
      if (leads[b].m.divides(leads[a].m) && (leads[a].m != leads[b].m || b < a)) keep[a] = false;
    }
  }
  std::vector<MultiPoly> minimal;
  std::vector<Lead> minimal_leads;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    if (keep[a]) {
      minimal.push_back(basis[a]);
      minimal_leads.push_back(leads[a]);
    }
  }
  std::vector<MultiPoly> reduced;
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    std::vector<MultiPoly> others;
    std::vector<Lead> other_leads;
    for (std::size_t b = 0; b < minimal.size(); ++b) {
      if (b == a) continue;
      others.push_back(minimal[b]);
      other_leads.push_back(minimal_leads[b]);
    }
    MultiPoly tail = minimal[a] - MultiPoly(minimal_leads[a].m, minimal_leads[a].c);
    MultiPoly r = MultiPoly(minimal_leads[a].m, minimal_leads[a].c) +
                  reduce(std::move(tail), others, other_leads, order, caps.max_terms);
    reduced.push_back(make_monic(r, order));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const MultiPoly& x, const MultiPoly& y) {
    return monomial_less(leading_monomial(x, order), leading_monomial(y, order), order);
  });
  return reduced;
}

MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& basis, MonomialOrder order) {
  std::vector<Lead> leads;
  std::vector<MultiPoly> nonzero;
  for (const auto& b : basis) {
    if (b.is_zero()) continue;
    nonzero.push_back(b);
    leads.push_back(lead(b, order));
  }
  return reduce(f, nonzero, leads, order, 0);
}

NonMembershipCertificate non_membership(const MultiPoly& f, const std::vector<MultiPoly>& gens,
                                        const std::map<Var, Rational>& assignment, MonomialOrder order,
                                        const GroebnerCaps& caps) {
  NonMembershipCertificate cert;
  cert.restricted_target = substitute(f, assignment);
  std::set<MultiPoly::Terms> seen;
  for (const auto& g : gens) {
    MultiPoly r = substitute(g, assignment);
    if (r.is_zero()) continue;
    if (seen.insert(r.monic().terms()).second) cert.restricted_generators.push_back(std::move(r));
  }
  cert.basis = groebner_small(cert.restricted_generators, order, caps);
  cert.remainder = normal_form(cert.restricted_target, cert.basis, order);
  cert.proven = !cert.remainder.is_zero();
  return cert;
}

}  // namespace nilrigid
