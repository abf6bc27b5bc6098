#include "nilrigid/scalar.hpp"

#include <cctype>
#include <ostream>
#include <type_traits>

namespace nilrigid {

const char* field_name(Field f) { return f == Field::Q ? "Q" : "Qi"; }

Field parse_field_name(std::string_view s) {
  if (s == "Q") return Field::Q;
  if (s == "Qi") return Field::Qi;
  throw ParseError(ParseError::Kind::Schema, "unknown field tag '" + std::string(s) + "'");
}

Gaussian& Gaussian::operator+=(const Gaussian& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Gaussian& Gaussian::operator-=(const Gaussian& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Gaussian& Gaussian::operator/=(const Gaussian& o) {
  if (is_zero(o)) throw std::domain_error("division by zero in Q(i)");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational n = o.norm();
  Gaussian num = *this * o.conj();
  re_ = num.re_ / n;
  im_ = num.im_ / n;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Gaussian& z) { return os << to_string(z); }

std::size_t bit_size(const Rational& x) {
  return mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2);
}

std::size_t bit_size(const Gaussian& z) { return bit_size(z.real()) + bit_size(z.imag()); }

namespace {

std::size_t hash_mpz(const mpz_t z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z)) * 0x9e3779b97f4a7c15ULL;
  const std::size_t limbs = mpz_size(z);
  for (std::size_t i = 0; i < limbs; ++i) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(z, i)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace

std::size_t hash_value(const Rational& x) {
  std::size_t h = hash_mpz(x.get_num_mpz_t());
  return h ^ (hash_mpz(x.get_den_mpz_t()) * 31 + 0x632be59bd9b4e019ULL);
}

std::size_t hash_value(const Gaussian& z) {
  return hash_value(z.real()) * 1000003ULL ^ hash_value(z.imag());
}

std::string to_string(const Rational& x) { return x.get_str(); }

std::string to_string(const Gaussian& z) {
  if (z.is_real()) return z.real().get_str();
  std::string im;
  if (z.imag() == 1) {
    im = "i";
  } else if (z.imag() == -1) {
    im = "-i";
  } else {
    im = z.imag().get_str() + " i";
  }
  if (sgn(z.real()) == 0) return im;
  if (im[0] == '-') return z.real().get_str() + im;
  return z.real().get_str() + "+" + im;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto bad = [&] {
    return ParseError(ParseError::Kind::Syntax, "malformed rational '" + std::string(text) + "'");
  };
  const auto slash = s.find('/');
  std::string_view num = trim(s.substr(0, slash));
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1));
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') throw bad();
  std::string num_s(num);
  if (num_s[0] == '+') num_s.erase(0, 1);
  Rational r;
  r.get_num() = Integer(num_s);
  r.get_den() = Integer(std::string(den));
  if (sgn(r.get_den()) == 0) throw bad();
  r.canonicalize();
  return r;
}

Gaussian parse_gaussian(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw ParseError(ParseError::Kind::Syntax, "empty scalar");
  if (s.back() != 'i') return Gaussian(parse_rational(s));
  // Imaginary part is the trailing term; find where it starts (a sign that is
  // not the leading character and not inside the rational literal).
  std::string_view body = trim(s.substr(0, s.size() - 1));
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  std::string_view re_part = split == std::string_view::npos ? std::string_view() : body.substr(0, split);
  std::string_view im_part = split == std::string_view::npos ? body : body.substr(split);
  im_part = trim(im_part);
  if (!im_part.empty() && im_part.back() == '*') im_part = trim(im_part.substr(0, im_part.size() - 1));
  Rational im;
  if (im_part.empty() || im_part == "+") {
    im = 1;
  } else if (im_part == "-") {
    im = -1;
  } else {
    im = parse_rational(im_part);
  }
  Rational re = re_part.empty() ? Rational(0) : parse_rational(re_part);
  return {re, im};
}

Rational to_rational(const Gaussian& z) {
  if (!z.is_real()) throw FieldError("cannot coerce non-real " + to_string(z) + " to Q");
  return z.real();
}

const Rational& Scalar::rational() const {
  if (const auto* r = std::get_if<Rational>(&v_)) return *r;
  throw FieldError("scalar " + str() + " lives in Q(i); coerce explicitly");
}

Gaussian Scalar::gaussian() const {
  if (const auto* r = std::get_if<Rational>(&v_)) return Gaussian(*r);
  return std::get<Gaussian>(v_);
}

Scalar Scalar::coerce_rational() const {
  if (field() == Field::Q) return *this;
  return Scalar(to_rational(std::get<Gaussian>(v_)));
}

bool Scalar::is_zero() const {
  return std::visit([](const auto& x) { return nilrigid::is_zero(x); }, v_);
}

std::string Scalar::str() const {
  return std::visit([](const auto& x) { return to_string(x); }, v_);
}

Scalar Scalar::parse(std::string_view s) {
  Gaussian z = parse_gaussian(s);
  std::string_view t = trim(s);
  if (!t.empty() && t.back() == 'i') return Scalar(z);
  return Scalar(z.real());
}

namespace {

template <class Op>
Scalar combine(const Scalar& a, const Scalar& b, Op op) {
  if (a.field() == Field::Q && b.field() == Field::Q) return Scalar(Rational(op(a.rational(), b.rational())));
  return Scalar(Gaussian(op(a.gaussian(), b.gaussian())));
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return std::decay_t<decltype(x)>(x + y); });
}
Scalar operator-(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return std::decay_t<decltype(x)>(x - y); });
}
Scalar operator*(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return std::decay_t<decltype(x)>(x * y); });
}
Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  return combine(a, b, [](const auto& x, const auto& y) { return std::decay_t<decltype(x)>(x / y); });
}
Scalar operator-(const Scalar& a) { return Scalar(0) - a; }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field() != b.field()) return false;
  if (a.field() == Field::Q) return a.rational() == b.rational();
  return a.gaussian() == b.gaussian();
}

}  // namespace nilrigid
