#include <doctest.h>

#include "nilrigid/reproduce.hpp"

using namespace nilrigid;

TEST_CASE("suites without the pack skip table-dependent items") {
  const Catalog c = Catalog::builtin();
  const ReproductionReport r = reproduce(c, "dim6");
  CHECK(r.passed() == 1);
  CHECK(r.skipped() == 6);
  CHECK(r.failed() == 0);
  CHECK(r.pass());
  CHECK(r.exit_code() == 0);
  for (const auto& it : r.items) {
    if (it.skipped) CHECK_FALSE(it.skip_reason.empty());
  }
}

TEST_CASE("every builtin suite passes") {
  const Catalog c = Catalog::builtin();
  for (const auto& suite : suite_names()) {
    if (suite == "curves") continue;  // covered by the acceptance binary
    CAPTURE(suite);
    const ReproductionReport r = reproduce(c, suite);
    CHECK(r.failed() == 0);
    CHECK(r.passed() > 0);
  }
  CHECK_THROWS_AS(reproduce(c, "dim9"), std::invalid_argument);
}

TEST_CASE("JSON without timing is byte-stable") {
  const Catalog c = Catalog::builtin();
  const std::string a = dump_json(to_json(reproduce(c, "dim5"), false));
  const std::string b = dump_json(to_json(reproduce(c, "dim5"), false));
  CHECK(a == b);
  CHECK(a.find("seconds") == std::string::npos);
  CHECK(dump_json(to_json(reproduce(c, "dim5"), true)).find("seconds") != std::string::npos);
  const Json j = Json::parse(a);
  CHECK(j["items"].size() == 8);
}
