#include <doctest.h>

#include "nilrigid/linalg.hpp"
#include "properties.hpp"

using namespace nilrigid;

namespace {

ExactMatrix<Rational> dense(std::vector<std::vector<int>> v) {
  std::vector<Vector<Rational>> d;
  for (auto& row : v) {
    Vector<Rational> r;
    for (int x : row) r.emplace_back(x);
    d.push_back(std::move(r));
  }
  return ExactMatrix<Rational>::from_dense(d);
}

}  // namespace

TEST_CASE("scalar parsing and printing") {
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(to_string(Rational(-3, 2)) == "-3/2");
  const Gaussian z = parse_gaussian("1/2-3i");
  CHECK(z.real() == Rational(1, 2));
  CHECK(z.imag() == Rational(-3));
  CHECK(z * z.conj() == Gaussian(z.norm()));
  CHECK(Scalar::parse("2").field() == Field::Q);
  CHECK(Scalar::parse("i").field() == Field::Qi);
  CHECK((Scalar::parse("i") * Scalar::parse("i")).coerce_rational() == Scalar(-1));
  CHECK_THROWS_AS(Scalar::parse("2+i").rational(), FieldError);
  CHECK_THROWS_AS(to_rational(Gaussian::unit()), FieldError);
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("rank, kernel and solve on small matrices") {
  const auto m = dense({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(m).rank == 2);
  const auto ker = kernel_basis(m);
  REQUIRE(ker.size() == 1);
  CHECK(m.apply(ker[0]) == Vector<Rational>(3, Rational(0)));
  const Vector<Rational> b{Rational(4), Rational(8), Rational(2)};
  const auto x = solve(m, std::span<const Rational>(b));
  REQUIRE(x);
  CHECK(m.apply(*x) == b);
  const Vector<Rational> bad{Rational(1), Rational(0), Rational(0)};
  CHECK_FALSE(solve(m, std::span<const Rational>(bad)));
  CHECK(rank(ExactMatrix<Rational>(0, 5)).rank == 0);
  CHECK(rank(ExactMatrix<Rational>(4, 0)).rank == 0);
}

TEST_CASE("inverse") {
  const auto m = dense({{2, 1}, {1, 1}});
  CHECK(m * inverse(m) == ExactMatrix<Rational>::identity(2));
  CHECK_THROWS_AS(inverse(dense({{1, 2}, {2, 4}})), SingularMatrix);
}

TEST_CASE("Gaussian rank sees the field") {
  // rows (1, i) and (i, -1) are dependent over Q(i)
  ExactMatrix<Gaussian> m(2, 2);
  m.set(0, 0, Gaussian(1));
  m.set(0, 1, Gaussian::unit());
  m.set(1, 0, Gaussian::unit());
  m.set(1, 1, Gaussian(-1));
  CHECK(rank(m).rank == 1);
}

TEST_CASE("streaming elimination agrees with batch rank") {
  const auto m = dense({{0, 1, 1, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {0, 0, 0, 3}, {2, 2, 0, 0}});
  StreamingEliminator<Rational> s(4);
  for (std::size_t r = 0; r < m.rows(); ++r) s.insert(m.row(r));
  CHECK(s.rank() == rank(m).rank);
  CHECK(s.rank() == 3);
}

TEST_CASE("rank oracle on 100 random matrices") {
  const props::Outcome o = props::rank_oracle(100);
  INFO(o.summary());
  CHECK(o.ok);
  CHECK(o.checked == 100);
  CHECK(props::naive_rank(dense({{1, 2}, {2, 4}}).to_dense()) == 1);
}
