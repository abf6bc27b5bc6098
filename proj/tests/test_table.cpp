#include <doctest.h>

#include "nilrigid/table.hpp"

using namespace nilrigid;

namespace {

ParseError::Kind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("no ParseError");
  return ParseError::Kind::Syntax;
}

}  // namespace

TEST_CASE("table syntax variants agree") {
  const auto a = parse_table<Rational>({"ab = c, ac = d", {}}, 4);
  const auto b = parse_table<Rational>({"[a,b] = c; [a,c] = d", {}}, 4);
  const auto c = parse_table<Rational>({"ab=c\nac=d\n", {}}, 4);
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a.coeff(0, 1, 2) == Rational(1));
  CHECK(a.coeff(2, 0, 3) == Rational(-1));
}

TEST_CASE("coefficients with parameters, powers and fractions") {
  const ParameterAssignment at{{"t", Scalar(Rational(1, 2))}, {"r", Scalar(3)}};
  const auto mu = parse_table<Rational>({"ab = 2t(tc-d), ac = (1-t)^2 d + r/3 e", at}, 5);
  CHECK(mu.coeff(0, 1, 2) == Rational(1, 2));
  CHECK(mu.coeff(0, 1, 3) == Rational(-1));
  CHECK(mu.coeff(0, 2, 3) == Rational(1, 4));
  CHECK(mu.coeff(0, 2, 4) == Rational(1));
}

TEST_CASE("imaginary unit gives a Q(i) table") {
  const auto t = parse_parametric_table("ab = ic + d", 4);
  CHECK(t.field() == Field::Qi);
  const auto mu = t.eval<Gaussian>({});
  CHECK(mu.coeff(0, 1, 2) == Gaussian::unit());
  CHECK_THROWS(t.eval<Rational>({}));
}

TEST_CASE("parse errors carry a kind") {
  CHECK(kind_of([] { parse_table<Rational>({"ab = z", {}}, 3); }) == ParseError::Kind::LetterOutOfRange);
  CHECK(kind_of([] { parse_table<Rational>({"ab = c +", {}}, 3); }) == ParseError::Kind::Syntax);
  CHECK(kind_of([] { parse_table<Rational>({"ab = c + %", {}}, 3); }) == ParseError::Kind::UnknownLetter);
  CHECK(kind_of([] { parse_table<Rational>({"ab = sc", {}}, 3); }) == ParseError::Kind::LetterOutOfRange);
  CHECK(kind_of([] { parse_parametric_table("ab = cd", 4); }) == ParseError::Kind::Nonlinear);
  CHECK(kind_of([] { parse_table<Rational>({"ab = tc", {}}, 3); }) != ParseError::Kind::Schema);
  CHECK(kind_of([] { parse_table<Rational>({"ab = c/0", {}}, 3); }) == ParseError::Kind::Syntax);
  CHECK_THROWS_AS(parse_table<Rational>({"ab c", {}}, 3), ParseError);
}

TEST_CASE("unresolved parameter") {
  const auto t = parse_parametric_table("ab = tc", 3, {"t"});
  CHECK_THROWS_AS(t.eval<Rational>({}), MissingParameter);
  CHECK(t.eval<Rational>({{"t", Scalar(2)}}).coeff(0, 1, 2) == Rational(2));
}

TEST_CASE("exact partial derivatives") {
  const auto t = parse_parametric_table("ab = t^3 c + rt d, bc = (1+r)d", 4, {"r", "t"});
  const ParameterAssignment at{{"r", Scalar(2)}, {"t", Scalar(Rational(1, 3))}};
  const auto dt = t.partial<Rational>("t", at);
  CHECK(dt.coeff(0, 1, 2) == Rational(1, 3));  // 3 t^2
  CHECK(dt.coeff(0, 1, 3) == Rational(2));
  CHECK(dt.coeff(1, 2, 3) == Rational(0));
  const auto dr = t.partial<Rational>("r", at);
  CHECK(dr.coeff(0, 1, 3) == Rational(1, 3));
  CHECK(dr.coeff(1, 2, 3) == Rational(1));
  CHECK(t.degree_in("t") == 3);
  CHECK_THROWS_AS(t.partial<Rational>("s", at), MissingParameter);
}

TEST_CASE("table text and JSON round trips") {
  const auto mu = parse_table<Rational>({"ab = c - 2/3 e, ac = d, be = -f", {}}, 6, "sample");
  CHECK(to_table_text(mu) == "ab = c-2/3*e, ac = d, be = -f");
  CHECK(parse_table<Rational>({to_table_text(mu), {}}, 6) == mu);
  const Json j = to_json(mu);
  CHECK(j["field"] == "Q");
  const AnyStructure back = structure_from_json(Json::parse(dump_json(j)));
  REQUIRE(std::holds_alternative<StructureConstants<Rational>>(back));
  CHECK(std::get<StructureConstants<Rational>>(back) == mu);
  CHECK(std::get<StructureConstants<Rational>>(back).name() == "sample");

  const auto z = parse_parametric_table("ab = (1+i)c", 3).eval<Gaussian>({});
  const AnyStructure zb = structure_from_json(to_json(z));
  REQUIRE(std::holds_alternative<StructureConstants<Gaussian>>(zb));
  CHECK(std::get<StructureConstants<Gaussian>>(zb) == z);
}

TEST_CASE("malformed JSON structures are schema errors") {
  CHECK_THROWS_AS(structure_from_json(Json::parse(R"({"dim": 3})")), ParseError);
  CHECK_THROWS_AS(structure_from_json(Json::parse(R"({"dim": 3, "brackets": [{"i": 1, "j": 4, "terms": []}]})")),
                  ParseError);
}

TEST_CASE("JSON output is deterministic") {
  const auto mu = parse_table<Rational>({"ab = c, ac = d", {}}, 4, "f4");
  CHECK(dump_json(to_json(mu)) == dump_json(to_json(mu)));
  CHECK(dump_json(to_json(mu)).back() == '\n');
}
