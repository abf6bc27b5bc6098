#include <doctest.h>

#include "nilrigid/catalog.hpp"
#include "nilrigid/cohomology.hpp"
#include "nilrigid/structure.hpp"
#include "nilrigid/table.hpp"
#include "properties.hpp"

using namespace nilrigid;

namespace {

StructureConstants<Rational> table(const std::string& text, std::size_t n, const std::string& name = {}) {
  return parse_table<Rational>({text, {}}, n, name);
}

}  // namespace

TEST_CASE("brackets are antisymmetric and set/coeff agree") {
  StructureConstants<Rational> mu(3);
  mu.set(0, 1, 2, Rational(1));
  CHECK(mu.coeff(1, 0, 2) == Rational(-1));
  mu.set(2, 0, 1, Rational(5));
  CHECK(mu.coeff(0, 2, 1) == Rational(-5));
  CHECK(mu.coeff(1, 1, 0) == Rational(0));
  CHECK_THROWS_AS(mu.set(0, 3, 1, Rational(1)), DimensionMismatch);
  CHECK_THROWS(mu.set(1, 1, 0, Rational(1)));
}

TEST_CASE("Jacobi detects a non-Lie bracket") {
  CHECK(is_lie(table("ab = c", 3)));
  // the cyclic sum at (a,b,c) is a
  const auto bad = table("ab = c, bc = a, ca = c", 3);
  CHECK_FALSE(is_lie(bad));
  CHECK_FALSE(jacobi(bad).is_zero());
  CHECK_THROWS_AS(nil_index(bad), NotLieAlgebra);
}

TEST_CASE("nilpotency index and solvable length") {
  CHECK(nil_index(abelian<Rational>(4)) == std::optional<std::size_t>(1));
  CHECK(nil_index(table("ab = c", 3)) == std::optional<std::size_t>(2));
  CHECK(nil_index(table("ab = c, ac = d, ad = e", 5)) == std::optional<std::size_t>(4));
  // ax = x is solvable but not nilpotent
  const auto aff = table("ab = b", 2);
  CHECK_FALSE(nil_index(aff));
  CHECK(solvable_length(aff) == std::optional<std::size_t>(2));
  // sl2 is neither
  const auto sl2 = table("ab = 2b, ac = -2c, bc = a", 3);
  CHECK_FALSE(solvable_length(sl2));
  CHECK(center(sl2).dim() == 0);
  CHECK(center(table("ab = c", 3)).dim() == 1);
}

TEST_CASE("N_k and SN_k words") {
  const auto f4 = table("ab = c, ac = d", 4);
  const std::vector<std::size_t> abc{0, 1, 0};
  CHECK(n_k_at(f4, std::span<const std::size_t>(abc)) == Vector<Rational>{0, 0, 0, -1});
  CHECK_FALSE(n_k(f4, 2).is_zero());
  CHECK(n_k(f4, 3).is_zero());
  // tensor and pointwise evaluation agree
  const Tensor<Rational> t = n_k(f4, 2);
  for (std::size_t q = 0; q < 64; ++q) {
    const std::vector<std::size_t> args{q / 16, (q / 4) % 4, q % 4};
    CHECK(t.value(std::span<const std::size_t>(args)) == n_k_at(f4, std::span<const std::size_t>(args)));
  }
  const Tensor<Rational> s = sn_k(f4, 3);
  const std::vector<std::size_t> args{0, 1, 0, 1};
  CHECK(s.value(std::span<const std::size_t>(args)) == sn_k_at(f4, std::span<const std::size_t>(args)));
  CHECK(props::word_values(f4, 2, true) == props::word_values(f4, 2, false));
  CHECK_THROWS(sn_k(f4, 1));
}

TEST_CASE("Heisenberg extensions") {
  for (std::size_t m : {2, 3}) {
    const auto h = heisenberg<Rational>(m);
    CHECK(h.dim() == 2 * m + 1);
    CHECK(nil_index(h) == std::optional<std::size_t>(2));
    const auto d = heisenberg_shift<Rational>(m);
    CHECK(is_derivation(h, d));
    const auto ext = semidirect_by_derivation(h, d);
    CHECK(ext.dim() == 2 * m + 2);
    CHECK(is_lie(ext));
    CHECK(nil_index(ext) == std::optional<std::size_t>(m + 1));
    CHECK_FALSE(sn_k(ext, m).is_zero());
  }
  const auto h = heisenberg<Rational>(2);
  CHECK_THROWS_AS(semidirect_by_derivation(h, ExactMatrix<Rational>::identity(5)), NotADerivation);
}

TEST_CASE("change of basis preserves invariants") {
  const Catalog c = Catalog::builtin();
  ExactMatrix<Rational> p(5, 5);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i; j < 5; ++j) p.set(i, j, Rational(static_cast<long>(1 + i + 2 * j)));
  }
  p.set(4, 0, Rational(1));
  for (const char* name : {"g5,1", "g5,3", "f5", "g5,6"}) {
    const auto mu = c.eval<Rational>(name);
    const auto nu = change_basis(mu, p);
    CAPTURE(name);
    CHECK(is_lie(nu));
    CHECK(nil_index(nu) == nil_index(mu));
    CHECK(derivation_dim(nu) == derivation_dim(mu));
    const std::size_t k = *nil_index(mu);
    const auto a = h2_knil(mu, k), b = h2_knil(nu, k);
    CHECK(a.z == b.z);
    CHECK(a.b == b.b);
    CHECK(change_basis(nu, inverse(p)) == mu);
  }
}

TEST_CASE("derived series inside lower central series") {
  for (const AnyStructure& s : props::catalog_members(Catalog::builtin())) {
    CAPTURE(props::label(s));
    std::visit([](const auto& mu) { CHECK(props::derived_in_central(mu)); }, s);
  }
}

TEST_CASE("direct sum") {
  const auto h = table("ab = c", 3);
  const auto s = direct_sum(h, abelian<Rational>(2));
  CHECK(s.dim() == 5);
  CHECK(to_table_text(s) == "ab = c");
  CHECK(center(s).dim() == 3);
}
