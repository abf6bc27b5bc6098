#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include "nilrigid/catalog.hpp"
#include "nilrigid/cohomology.hpp"
#include "nilrigid/reproduce.hpp"
#include "properties.hpp"

using namespace nilrigid;

namespace {

const std::filesystem::path kData = NILRIGID_TEST_DATA;

}  // namespace

TEST_CASE("name normalization") {
  CHECK(normalize_name("g_{5,3}") == normalize_name("g5,3"));
  CHECK(normalize_name("g₅,₃") == normalize_name("g5,3"));
  CHECK(normalize_name("f_3⊕ℝ²") == normalize_name("f3+R2"));
  CHECK(normalize_name("g_{147E_1}(t)") == normalize_name("g147E1"));
  CHECK(normalize_name("G137B") == normalize_name("g137b"));
  const Catalog c = Catalog::builtin();
  CHECK(c.has("g_{5,3}"));
  CHECK(c.get("g6,14").name == c.get("12346_E").name);
  CHECK(c.get("GR").name == c.get("g247K-GR").name);
}

TEST_CASE("unknown and pack-only names") {
  const Catalog c = Catalog::builtin();
  CHECK_THROWS_AS(c.get("no-such-algebra"), UnknownAlgebra);
  for (const auto& name : Catalog::pack_only_names()) {
    CAPTURE(name);
    CHECK_THROWS_AS(c.get(name), ExternalDataRequired);
  }
}

TEST_CASE("every member is a Lie algebra with the recorded step") {
  const Catalog c = Catalog::builtin();
  for (const AlgebraRecord* r : c.records()) {
    CAPTURE(r->name);
    if (r->is_family()) CHECK(!r->samples.empty());
    std::vector<ParameterAssignment> points = r->is_family() ? r->samples : std::vector<ParameterAssignment>{{}};
    for (const auto& at : points) {
      CAPTURE(format_assignment(at));
      std::visit(
          [&](const auto& mu) {
            CHECK(mu.dim() == r->dim);
            CHECK(is_lie(mu));
            if (r->step) CHECK(nil_index(mu) == r->step);
          },
          c.eval_any(r->name, at));
    }
  }
}

TEST_CASE("parameter assignments") {
  const auto a = parse_assignment("r=1, t=-1/2");
  CHECK(a.at("t") == Scalar(Rational(-1, 2)));
  const auto b = parse_assignment("1,1/2", {"r", "t"});
  CHECK(b.at("t") == Scalar(Rational(1, 2)));
  CHECK(format_assignment(b) == "r=1,t=1/2");
  CHECK_THROWS(parse_assignment("1,2,3", {"r"}));
  CHECK_THROWS(parse_assignment("t=", {"t"}));
}

TEST_CASE("nu1 and nu2 are independent 3-nil classes on g5,3") {
  const auto mu = Catalog::builtin().eval<Rational>("g5,3");
  const auto d2 = d2_matrix(mu), dn = dNk_matrix(mu, 3), d1 = d1_matrix(mu);
  for (const auto& nu : {nu1(), nu2()}) {
    CHECK(d2.apply(nu.coordinates()) == Vector<Rational>(d2.rows(), Rational(0)));
    CHECK(dn.apply(nu.coordinates()) == Vector<Rational>(dn.rows(), Rational(0)));
    auto p = mu;
    p += nu;
    CHECK(is_lie(p));
    CHECK_FALSE(nil_index(p));
    CHECK(solvable_length(p));
  }
  std::vector<Vector<Rational>> cols;
  for (std::size_t c = 0; c < d1.cols(); ++c) cols.push_back(d1.column(c));
  const std::size_t b = rank(ExactMatrix<Rational>::from_columns(cols, mu.cochain_dim())).rank;
  for (const auto& nu : {nu1(), nu2()}) cols.emplace_back(nu.coordinates().begin(), nu.coordinates().end());
  CHECK(rank(ExactMatrix<Rational>::from_columns(cols, mu.cochain_dim())).rank == b + 2);
}

TEST_CASE("witnesses verify at their samples") {
  const Catalog c = Catalog::builtin();
  REQUIRE(witnesses().size() >= 5);
  for (const auto& w : witnesses()) {
    CAPTURE(w.name);
    REQUIRE_FALSE(w.samples.empty());
    for (const auto& at : w.samples) {
      const WitnessReport r = verify_witness(c, w, at);
      CAPTURE(r.point);
      CHECK(r.ok);
      CHECK(r.diffs.empty());
    }
  }
  const auto& w = witness("247H-to-247K-curve");
  for (const auto& [sym, v] : w.excluded) {
    ParameterAssignment at{{sym, Scalar(v)}};
    CHECK_FALSE(w.valid_at(at));
    CHECK_THROWS(verify_witness(c, w, at));
  }
}

TEST_CASE("a wrong table is reported with its differing brackets") {
  const Catalog c = Catalog::builtin();
  const auto a = c.eval<Rational>("g5,3");
  const auto b = c.eval<Rational>("g5,4");
  CHECK_FALSE(table_diff(a, b).empty());
  CHECK(table_diff(a, a).empty());
  const DegenerationReport bad = verify_degeneration(c, "g147E1(t)", {{"t", Scalar(1)}}, "g137D");
  CHECK_FALSE(bad.ok);
  const DegenerationReport good = verify_degeneration(c, "g147E1(t)", {{"t", Scalar(1)}}, "g147D");
  CHECK(good.ok);
}

TEST_CASE("data pack loading") {
  const Catalog c = Catalog::with_pack(kData / "pack");
  REQUIRE(c.pack());
  CHECK(c.pack()->name == "test fixture");
  CHECK(c.pack()->records == 3);
  CHECK(c.pack()->checksum.size() == 16);
  CHECK(Catalog::with_pack(kData / "pack").pack()->checksum == c.pack()->checksum);
  CHECK(c.get("fixture_{h5}").source == Source::DataPack);
  CHECK(h2_knil(c.eval<Rational>("fixture-h5"), 2).n == 5);
  CHECK(c.eval<Rational>("fixture-f4") == parse_table<Rational>({"ab = c, ac = d", {}}, 4));
  const auto fam = c.eval<Rational>("fixture-fam(t)", {{"t", Scalar(2)}});
  CHECK(is_lie(fam));
  CHECK(nil_index(fam) == std::optional<std::size_t>(3));
  CHECK(c.get("fixture-fam").samples.size() == 2);
  CHECK(c.has("g5,3"));
  CHECK_THROWS_AS(Catalog::with_pack(kData / "bad_pack"), Error);
  CHECK_THROWS(Catalog::with_pack(kData / "missing"));
}

TEST_CASE("property suites include pack records") {
  const Catalog c = Catalog::with_pack(kData / "pack");
  const props::Outcome o = props::complex_identities(c);
  INFO(o.summary());
  CHECK(o.ok);
  CHECK(o.checked == props::complex_identities(Catalog::builtin()).checked + 4);
}
