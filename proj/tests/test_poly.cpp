#include <doctest.h>

#include <random>

#include "nilrigid/poly.hpp"
#include "nilrigid/poly_lists.hpp"
#include "nilrigid/structure.hpp"

using namespace nilrigid;

namespace {

MultiPoly P(const char* s) { return MultiPoly::parse(s); }

Rational value_at(const MultiPoly& f, const std::map<Var, Rational>& pt) {
  return substitute(f, pt).coefficient(Monomial());
}

/// Generic upper-triangular point and the matching bracket.
std::pair<std::map<Var, Rational>, StructureConstants<Rational>> random_point(unsigned n, std::mt19937& rng) {
  std::uniform_int_distribution<int> v(-3, 3);
  std::map<Var, Rational> pt;
  StructureConstants<Rational> mu(n);
  for (unsigned i = 1; i <= n; ++i) {
    for (unsigned j = i + 1; j <= n; ++j) {
      for (unsigned k = j + 1; k <= n; ++k) {
        const Rational x(v(rng));
        pt[Var(i, j, k)] = x;
        mu.set(i - 1, j - 1, k - 1, x);
      }
    }
  }
  return {pt, mu};
}

}  // namespace

TEST_CASE("polynomial parsing, printing and arithmetic") {
  const MultiPoly f = P("t_{1,2,3}*t_{1,3,4} - 2*t_{1,2,4}");
  CHECK(f.degree() == 2);
  CHECK_FALSE(f.is_homogeneous());
  CHECK(MultiPoly::parse(f.str()) == f);
  CHECK(P("t123 t134") == P("t_{1,2,3}*t_{1,3,4}"));
  CHECK((f - f).is_zero());
  CHECK((f * f).degree() == 4);
  CHECK(f.pow(2) == f * f);
  CHECK(P("t123 + t124").pow(2) == P("t123^2 + 2 t123 t124 + t124^2"));
  CHECK_THROWS_AS(MultiPoly::parse("t_{3,2,1}"), ParseError);
  CHECK_THROWS_AS(MultiPoly::parse("t_{1,2,3} +"), ParseError);
  CHECK(substitute(f, zero_assignment({Var(1, 2, 4)})) == P("t123 t134"));
}

TEST_CASE("generators agree with the bracket words") {
  std::mt19937 rng(11);
  for (auto [n, k, kind] : {std::tuple{5u, 4u, GeneratorKind::J}, std::tuple{5u, 4u, GeneratorKind::N},
                           std::tuple{6u, 4u, GeneratorKind::N}, std::tuple{6u, 3u, GeneratorKind::SN}}) {
    const auto gens = tagged_generators(n, k, kind);
    for (int trial = 0; trial < 3; ++trial) {
      auto [pt, mu] = random_point(n, rng);
      for (const auto& g : gens) {
        std::vector<std::size_t> args;
        for (unsigned a : g.arguments) args.push_back(a - 1);
        Rational word;
        if (kind == GeneratorKind::N) {
          word = n_k_at(mu, std::span<const std::size_t>(args))[g.coordinate - 1];
        } else if (kind == GeneratorKind::SN) {
          word = sn_k_at(mu, std::span<const std::size_t>(args))[g.coordinate - 1];
        } else {
          const Tensor<Rational> jt = jacobi(mu);
          word = jt.value(std::span<const std::size_t>(args))[g.coordinate - 1];
        }
        const Rational got = value_at(g.poly, pt);
        CAPTURE(g.poly.str());
        CHECK((got == word || got == -word));
      }
    }
  }
}

TEST_CASE("printed generator lists") {
  CHECK(same_up_to_scalars(generators(5, 4, GeneratorKind::J), lists::p_5_4()));
  CHECK(generators(5, 4, GeneratorKind::N).empty());
  CHECK(same_up_to_scalars(generators(5, 3, GeneratorKind::SN), lists::q_5_3()));
  CHECK(same_up_to_scalars(generators(6, 4, GeneratorKind::J), lists::i64_degree2()));
  CHECK(same_up_to_scalars(generators(6, 4, GeneratorKind::N), lists::i64_degree4()));
  CHECK(same_up_to_scalars(generators(6, 3, GeneratorKind::SN), lists::q_6_3()));
  CHECK_FALSE(same_up_to_scalars(lists::p_5_4(), lists::q_5_3()));
  CHECK(same_up_to_scalars({P("t123"), P("2 t124")}, {P("-t124"), P("3 t123")}));
}

TEST_CASE("bounded membership certificates") {
  const auto gens = IdealPresentation::nilpotent(6, 4).polys();
  const auto q = lists::q_6_3();
  const auto cert = member_bounded(q[0], gens, 4);
  REQUIRE(cert);
  CHECK(cert->verify(gens));
  // tampering with a multiplier breaks the certificate
  auto bad = *cert;
  for (auto& m : bad.multipliers) {
    if (!m.is_zero()) {
      m += MultiPoly(Var(1, 2, 3));
      break;
    }
  }
  CHECK_FALSE(bad.verify(gens));
  CHECK_FALSE(member_bounded(q[13], gens, 4));
  const auto sq = member_bounded(q[13].pow(2), gens, 6);
  REQUIRE(sq);
  CHECK(sq->verify(gens));
}

TEST_CASE("Groebner basis and normal forms") {
  const std::vector<MultiPoly> gens{P("t123^2 - t124"), P("t123 t124 - t134")};
  for (auto order : {MonomialOrder::DegRevLex, MonomialOrder::Lex}) {
    const auto gb = groebner_small(gens, order);
    for (const auto& g : gens) CHECK(normal_form(g, gb, order).is_zero());
    const MultiPoly f = P("t123^3 + t134 t145"), g = P("t124 t145 - 3 t123");
    const Rational a(2, 3), b(-5);
    CHECK(normal_form(f.scaled(a) + g.scaled(b), gb, order) ==
          normal_form(f, gb, order).scaled(a) + normal_form(g, gb, order).scaled(b));
    CHECK(normal_form(gens[0] * f + gens[1] * g, gb, order).is_zero());
  }
  GroebnerCaps tiny;
  tiny.max_basis = 1;
  CHECK_THROWS_AS(groebner_small(gens, MonomialOrder::DegRevLex, tiny), ResourceLimit);
}

TEST_CASE("non-membership of Q13 and Q14") {
  const auto gens = IdealPresentation::nilpotent(6, 4).polys();
  const auto q = lists::q_6_3();
  const auto c14 = non_membership(q[13], gens, lists::restriction());
  CHECK(c14.proven);
  CHECK(same_up_to_scalars(c14.restricted_generators, lists::restricted_i64()));
  const auto c13 = non_membership(q[12], gens, lists::restriction(true));
  CHECK(c13.proven);
  CHECK_FALSE(c13.remainder.is_zero());
  // a member is never certified as a non-member
  CHECK_FALSE(non_membership(q[0], gens, lists::restriction()).proven);
}
