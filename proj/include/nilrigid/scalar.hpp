#pragma once

// Exact scalar fields: the rationals Q (GMP mpq_class) and the Gaussian
// rationals Q(i). Everything in the library is templated on one of these two
// field types; the runtime-tagged Scalar below is only used at the edges
// (parsers, JSON, parameter assignments).

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include "nilrigid/errors.hpp"

namespace nilrigid {

using Integer = mpz_class;
using Rational = mpq_class;

enum class Field { Q, Qi };

const char* field_name(Field f);  // "Q" / "Qi"
Field parse_field_name(std::string_view s);

/// a + b i with a, b rational. Both parts are canonical mpq values, so the
/// representation is canonical as well.
class Gaussian {
 public:
  Gaussian() = default;
  Gaussian(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational re) : re_(std::move(re)) {}  // NOLINT
  Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Gaussian unit() { return {Rational(0), Rational(1)}; }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }
  bool is_real() const { return sgn(im_) == 0; }
  Gaussian conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  Gaussian& operator+=(const Gaussian& o);
  Gaussian& operator-=(const Gaussian& o);
  Gaussian& operator*=(const Gaussian& o);
  Gaussian& operator/=(const Gaussian& o);

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend Gaussian operator-(const Gaussian& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

 private:
  Rational re_{0};
  Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const Gaussian& z);

// Field-generic helpers. Templates across the library only use these plus
// the arithmetic operators, so a third field type would only need overloads.

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Gaussian& z) { return sgn(z.real()) == 0 && sgn(z.imag()) == 0; }

/// Rough coefficient size used for pivot selection.
std::size_t bit_size(const Rational& x);
std::size_t bit_size(const Gaussian& z);

std::size_t hash_value(const Rational& x);
std::size_t hash_value(const Gaussian& z);

std::string to_string(const Rational& x);
std::string to_string(const Gaussian& z);

/// Parses "p", "p/q", "-p/q" into canonical form. Throws ParseError.
Rational parse_rational(std::string_view s);
/// Parses "p/q", "p/q+r/s i", "r/s i", "i", "-i", "1-i", ... Throws ParseError.
Gaussian parse_gaussian(std::string_view s);

template <class F>
struct FieldOf;
template <>
struct FieldOf<Rational> {
  static constexpr Field value = Field::Q;
};
template <>
struct FieldOf<Gaussian> {
  static constexpr Field value = Field::Qi;
};

template <class F>
F from_rational(const Rational& x) {
  return F(x);
}

inline Gaussian promote(const Rational& x) { return Gaussian(x); }
/// Explicit coercion Q(i) -> Q; throws FieldError when the imaginary part is nonzero.
Rational to_rational(const Gaussian& z);

/// Runtime-tagged scalar. Mixed arithmetic promotes to Q(i); the result never
/// demotes implicitly.
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(long v) : v_(Rational(v)) {}  // NOLINT
  Scalar(Rational v) : v_(std::move(v)) {}  // NOLINT
  Scalar(Gaussian v) : v_(std::move(v)) {}  // NOLINT

  Field field() const { return std::holds_alternative<Rational>(v_) ? Field::Q : Field::Qi; }
  const Rational& rational() const;  // throws FieldError on Qi
  Gaussian gaussian() const;         // promotes
  Scalar coerce_rational() const;    // Qi -> Q when imaginary part is zero

  bool is_zero() const;
  std::string str() const;
  static Scalar parse(std::string_view s);

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  template <class F>
  F as() const {
    if constexpr (std::is_same_v<F, Rational>) {
      return rational();
    } else {
      return gaussian();
    }
  }

 private:
  std::variant<Rational, Gaussian> v_;
};

}  // namespace nilrigid

template <>
struct std::hash<nilrigid::Gaussian> {
  std::size_t operator()(const nilrigid::Gaussian& z) const { return nilrigid::hash_value(z); }
};
