#include <doctest.h>

#include "nilrigid/catalog.hpp"
#include "nilrigid/cohomology.hpp"
#include "properties.hpp"

using namespace nilrigid;

namespace {

StructureConstants<Rational> table(const std::string& text, std::size_t n) {
  return parse_table<Rational>({text, {}}, n);
}

/// z, b from dense naive ranks of d2 (stacked with dN_k) and d1.
template <class F>
std::pair<std::size_t, std::size_t> dense_oracle(const StructureConstants<F>& mu, std::size_t k) {
  auto rows = d2_matrix(mu).to_dense();
  if (k > 0) {
    auto nk = dNk_matrix(mu, k).to_dense();
    rows.insert(rows.end(), nk.begin(), nk.end());
  }
  const std::size_t z = mu.cochain_dim() - props::naive_rank(rows);
  const std::size_t b = props::naive_rank(d1_matrix(mu).to_dense());
  return {z, b};
}

}  // namespace

TEST_CASE("small known cohomology") {
  // H^2(h3, h3) = 5, Der(h3) = 6
  const auto h3 = table("ab = c", 3);
  const auto r = h2_dim(h3);
  CHECK(r.h == 5);
  CHECK(derivation_dim(h3) == 6);
  CHECK(r.orbit_dim == 3);
  // abelian: every cochain is a cocycle, d1 = 0
  const auto a = h2_dim(abelian<Rational>(3));
  CHECK(a.z == 9);
  CHECK(a.b == 0);
  CHECK(orbit_dim(abelian<Rational>(4)) == 0);
}

TEST_CASE("streamed cohomology matches a dense oracle") {
  const Catalog c = Catalog::builtin();
  for (const char* name : {"f3+R2", "g5,1", "g5,2", "f4+R", "g5,3", "g5,4", "f5", "g5,6", "12346_E"}) {
    const auto mu = c.eval<Rational>(name);
    const std::size_t k = *nil_index(mu);
    const auto r = h2_knil(mu, k);
    const auto [z, b] = dense_oracle(mu, k);
    CAPTURE(name);
    CHECK(r.z == z);
    CHECK(r.b == b);
    CHECK(r.h == z - b);
    CHECK(r.rigid_certificate == (r.h == 0));
  }
}

TEST_CASE("complex identities on every catalog member") {
  for (const AnyStructure& s : props::catalog_members(Catalog::builtin())) {
    CAPTURE(props::label(s));
    std::visit(
        [](const auto& mu) {
          CHECK(props::d2_after_d1_zero(mu));
          CHECK(props::dJ_is_minus_d2(mu));
          const auto nk = props::d1_in_ker_dNk(mu);
          if (nk) CHECK(*nk);
        },
        s);
  }
}

TEST_CASE("the dN_k check has teeth below the nilpotency index") {
  const auto f5 = Catalog::builtin().eval<Rational>("f5");
  CHECK_FALSE((dNk_matrix(f5, 3) * d1_matrix(f5)).is_zero_matrix());
}

TEST_CASE("first-order expansion identities") {
  const props::Outcome o = props::expansion_identities(Catalog::builtin());
  INFO(o.summary());
  CHECK(o.ok);
  CHECK(o.checked > 50);
  std::mt19937 rng(3);
  const auto mu = table("ab = c, ac = d", 4);
  const auto nu = props::random_cochain<Rational>(4, rng);
  const std::vector<Rational> probes{Rational(1, 2), Rational(-3), Rational(5)};
  CHECK(props::expansion_identity(mu, nu, 2, false, probes));
  CHECK(props::expansion_identity(mu, nu, 3, true, probes));
}

TEST_CASE("constraint row space rejects points off the variety") {
  const auto f4 = table("ab = c, ac = d", 4);
  CHECK_THROWS_AS(constraint_row_space(f4, Constraint::nilpotent(2)), NotInVariety);
  CHECK_NOTHROW(constraint_row_space(f4, Constraint::nilpotent(3)));
  CHECK_THROWS_AS(constraint_row_space(table("ab = c, bc = a, ca = c", 3), Constraint::jacobi()), NotInVariety);
  const auto rs = constraint_row_space(f4, Constraint::nilpotent(3));
  CHECK(rs.kernel_dim() == h2_knil(f4, 3).z);
}

TEST_CASE("augmented exactness on a one-parameter family") {
  // t ab = c is one orbit for t != 0: the tangent is in Im d1 and the sequence is exact
  const auto fam = parse_parametric_table("ab = tc", 3, {"t"});
  const auto r = augmented_exactness<Rational>(fam, {{"t", Scalar(2)}}, {"t"}, Constraint::jacobi(), "h3(t)");
  CHECK(r.contained);
  CHECK(r.rank_dF == r.kernel_dim_dG - h2_dim(table("ab = c", 3)).h);
  CHECK_FALSE(r.exact);
  CHECK(r.source_dim == 10);
  CHECK(r.middle_dim == 9);
}

TEST_CASE("g5 surface exactness at one point") {
  const Catalog c = Catalog::builtin();
  const auto fam = c.parametric("g5(r,t)");
  const ParameterAssignment at{{"r", Scalar(1)}, {"t", Scalar(1)}};
  const auto reports =
      augmented_exactness_sets<Rational>(fam, at, {{"r", "t"}, {"t"}}, Constraint::solvable_type(5), "g5");
  REQUIRE(reports.size() == 2);
  for (const auto& r : reports) {
    CHECK(r.exact);
    CHECK(r.rank_dF == 41);
    CHECK(r.middle_dim == 147);
    CHECK(r.target_dim == 823788);
  }
  CHECK(reports[0].source_dim == 51);
  CHECK(reports[1].source_dim == 50);
  const Json j = to_json(reports[0]);
  CHECK(j["exact"] == true);
}
