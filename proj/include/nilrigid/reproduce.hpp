#pragma once

// Named suites that recompute published values and compare them exactly.

#include <string>
#include <string_view>
#include <vector>

#include "nilrigid/catalog.hpp"
#include "nilrigid/table.hpp"

namespace nilrigid {

struct ReproductionItem {
  std::string id;        // "dim5/g5,3", "member/Q5", ...
  std::string expected;
  std::string citation;  // where the expected value is printed, in words
  std::string computed;
  bool match = false;
  bool skipped = false;
  std::string skip_reason;
  bool resource_limited = false;
  double seconds = 0;
};

struct ReproductionReport {
  std::string suite;
  std::vector<ReproductionItem> items;
  std::optional<PackInfo> pack;

  std::size_t passed() const;
  std::size_t failed() const;
  std::size_t skipped() const;
  /// Every non-skipped item matches.
  bool pass() const { return failed() == 0; }
  bool resource_limited() const;
  /// 0 pass, 1 mismatch, 3 resource cap.
  int exit_code() const;
};

/// dim5, dim6, n73, curves, ideals, counterexamples (in "all" order).
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite. "all" concatenates
/// the others in suite_names() order.
ReproductionReport reproduce(const Catalog& catalog, std::string_view suite);

/// `timing` false drops the per-item seconds, leaving byte-stable output.
Json to_json(const ReproductionReport& r, bool timing = true);
std::string to_text(const ReproductionReport& r);

}  // namespace nilrigid
