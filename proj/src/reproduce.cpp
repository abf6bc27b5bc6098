#include "nilrigid/reproduce.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "nilrigid/cohomology.hpp"
#include "nilrigid/poly.hpp"
#include "nilrigid/poly_lists.hpp"

namespace nilrigid {

std::size_t ReproductionReport::passed() const {
  return static_cast<std::size_t>(std::count_if(items.begin(), items.end(),
                                                [](const ReproductionItem& i) { return !i.skipped && i.match; }));
}

std::size_t ReproductionReport::failed() const {
  return static_cast<std::size_t>(std::count_if(items.begin(), items.end(),
                                                [](const ReproductionItem& i) { return !i.skipped && !i.match; }));
}

std::size_t ReproductionReport::skipped() const {
  return static_cast<std::size_t>(
      std::count_if(items.begin(), items.end(), [](const ReproductionItem& i) { return i.skipped; }));
}

bool ReproductionReport::resource_limited() const {
  return std::any_of(items.begin(), items.end(), [](const ReproductionItem& i) { return i.resource_limited; });
}

int ReproductionReport::exit_code() const {
  if (pass()) return 0;
  return resource_limited() ? 3 : 1;
}

namespace {

using Q = Rational;

struct Outcome {
  std::string computed;
  bool match = false;
};

/// Runs one item; exceptions become failed items with the message.
void run(ReproductionReport& report, std::string id, std::string expected, std::string citation,
         const std::function<Outcome()>& compute) {
  ReproductionItem item;
  item.id = std::move(id);
  item.expected = std::move(expected);
  item.citation = std::move(citation);
  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome o = compute();
    item.computed = std::move(o.computed);
    item.match = o.match;
  } catch (const ResourceLimit& e) {
    item.computed = std::string("resource cap: ") + e.what();
    item.resource_limited = true;
  } catch (const std::exception& e) {
    item.computed = std::string("error: ") + e.what();
  }
  item.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.items.push_back(std::move(item));
}

void skip(ReproductionReport& report, std::string id, std::string expected, std::string citation,
          std::string reason) {
  ReproductionItem item;
  item.id = std::move(id);
  item.expected = std::move(expected);
  item.citation = std::move(citation);
  item.skipped = true;
  item.skip_reason = std::move(reason);
  report.items.push_back(std::move(item));
}

std::string triple(std::size_t z, std::size_t b, std::size_t h) {
  return "(z,b,h)=(" + std::to_string(z) + "," + std::to_string(b) + "," + std::to_string(h) + ")";
}

std::string triple(const CohomologyReport& r) { return triple(r.z, r.b, r.h); }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

const char* kPackMissing = "data pack not installed (set NILRIGID_DATA_PACK)";

ParameterAssignment at(std::initializer_list<std::pair<const char*, const char*>> values) {
  ParameterAssignment a;
  for (const auto& [s, v] : values) a[s] = Scalar::parse(v);
  return a;
}

/// h2_knil of a named record at a point; k defaults to the record's step.
CohomologyReport knil(const Catalog& catalog, std::string_view name, std::size_t k, const ParameterAssignment& p = {}) {
  return h2_knil(catalog.eval<Q>(name, p), k);
}

/// The partial derivative of the family in `symbol` lies in Ker d2 n Ker dN_k
/// and is independent of Im d1.
bool tangent_is_new_class(const Catalog& catalog, std::string_view family, const std::string& symbol,
                          const ParameterAssignment& p, std::size_t k) {
  const ParametricTable table = catalog.parametric(family);
  const StructureConstants<Q> mu = table.eval<Q>(p);
  const ConstraintRowSpace<Q> rs = constraint_row_space(mu, Constraint::nilpotent(k));
  const StructureConstants<Q> tangent = table.partial<Q>(symbol, p);
  if (!rs.annihilates(tangent.coordinates())) return false;
  const ExactMatrix<Q> d1 = d1_matrix(mu);
  std::vector<Vector<Q>> columns;
  for (std::size_t c = 0; c < d1.cols(); ++c) columns.push_back(d1.column(c));
  const std::size_t b = rank(d1).rank;
  columns.emplace_back(tangent.coordinates().begin(), tangent.coordinates().end());
  return rank(ExactMatrix<Q>::from_columns(columns, mu.cochain_dim())).rank == b + 1;
}

// ------------------------------------------------------------------- dim5

void suite_dim5(const Catalog& catalog, ReproductionReport& report) {
  struct Row {
    const char* name;
    std::size_t k, z, b, h;
  };
  const Row rows[] = {{"f3+R2", 2, 20, 9, 11}, {"g5,1", 2, 10, 10, 0}, {"g5,2", 2, 12, 12, 0},
                      {"f4+R", 3, 18, 14, 4},  {"g5,3", 3, 17, 15, 2}, {"g5,4", 3, 15, 15, 0},
                      {"f5", 4, 17, 16, 1},    {"g5,6", 4, 17, 17, 0}};
  for (const Row& row : rows) {
    const std::string expected = triple(row.z, row.b, row.h);
    run(report, std::string("dim5/") + row.name, expected,
        "table of 5-dimensional non-abelian nilpotent algebras, k=" + std::to_string(row.k) + ": " +
            std::to_string(row.h) + "=" + std::to_string(row.z) + "-" + std::to_string(row.b),
        [&] {
          const std::string got = triple(knil(catalog, row.name, row.k));
          return Outcome{got, got == expected};
        });
  }
}

// ------------------------------------------------------------------- dim6

void suite_dim6(const Catalog& catalog, ReproductionReport& report) {
  run(report, "dim6/12346_E", triple(28, 28, 0), "table of rigid 6-dimensional algebras, k=5: 0=28-28", [&] {
    const std::string got = triple(knil(catalog, "12346_E", 5));
    return Outcome{got, got == triple(28, 28, 0)};
  });
  struct Row {
    const char* name;
    const char* alias;
    std::size_t k, z, b, h;
  };
  const Row rows[] = {{"36", "g6,26", 2, 18, 18, 0},   {"13+13", "g6,22", 2, 20, 20, 0},
                      {"246_E", "g6,24", 3, 26, 24, 2}, {"136_A", "g6,19", 3, 25, 25, 0},
                      {"1246", "g6,13", 4, 27, 26, 1},  {"1346_C", "g6,21", 4, 26, 26, 0}};
  for (const Row& row : rows) {
    const std::string expected = triple(row.z, row.b, row.h);
    const std::string citation = "table of rigid 6-dimensional algebras, " + std::string(row.name) + " = " +
                                 row.alias + ", k=" + std::to_string(row.k);
    const std::string id = std::string("dim6/") + row.name;
    const char* key = catalog.has(row.name) ? row.name : row.alias;
    if (!catalog.has(key)) {
      skip(report, id, expected, citation, kPackMissing);
      continue;
    }
    const AlgebraRecord& rec = catalog.get(key);
    if (rec.is_family() && rec.samples.empty()) {
      skip(report, id, expected, citation, "pack record has parameters but no samples");
      continue;
    }
    run(report, id, expected, citation, [&] {
      std::vector<ParameterAssignment> points = rec.is_family() ? rec.samples : std::vector<ParameterAssignment>{{}};
      std::string got;
      bool ok = true;
      for (const auto& p : points) {
        const std::string g = triple(knil(catalog, key, row.k, p));
        ok = ok && g == expected;
        if (!got.empty()) got += "; ";
        got += rec.is_family() ? format_assignment(p) + ": " + g : g;
      }
      return Outcome{got, ok};
    });
  }
}

// -------------------------------------------------------------------- n73

void suite_n73(const Catalog& catalog, ReproductionReport& report) {
  struct Rigid {
    const char* name;
    std::size_t orbit;
  };
  for (const Rigid& r : {Rigid{"g137B", 36}, Rigid{"g137B1", 36}, Rigid{"g247H", 38}}) {
    const std::string expected = "h=0, orbit dim " + std::to_string(r.orbit);
    run(report, std::string("n73-rigid/") + r.name, expected,
        "rigid points of N_{7,3}: h_{3-nil}=0 with orbit dimensions 36, 36, 38, 38", [&] {
          const CohomologyReport c = knil(catalog, r.name, 3);
          const std::string got = "h=" + std::to_string(c.h) + ", orbit dim " + std::to_string(c.orbit_dim);
          return Outcome{got, got == expected};
        });
  }
  if (catalog.has("g247H1")) {
    run(report, "n73-rigid/g247H1", "h=0, orbit dim 38",
        "rigid points of N_{7,3}: h_{3-nil}=0 with orbit dimensions 36, 36, 38, 38", [&] {
          const CohomologyReport c = knil(catalog, "g247H1", 3);
          const std::string got = "h=" + std::to_string(c.h) + ", orbit dim " + std::to_string(c.orbit_dim);
          return Outcome{got, got == "h=0, orbit dim 38"};
        });
  } else {
    skip(report, "n73-rigid/g247H1", "h=0, orbit dim 38",
         "rigid points of N_{7,3}: h_{3-nil}=0 with orbit dimensions 36, 36, 38, 38", kPackMissing);
  }

  for (const char* name : {"g247K", "g147D", "g137A", "g137A1", "g137D"}) {
    run(report, std::string("n73-h1/") + name, "h=1", "algebras of N_{7,3} with dim H^2_{3-nil} = 1", [&] {
      const CohomologyReport c = knil(catalog, name, 3);
      return Outcome{"h=" + std::to_string(c.h) + " " + triple(c), c.h == 1};
    });
  }

  for (const char* t : {"3/2", "2", "5"}) {
    const ParameterAssignment p = at({{"t", t}});
    run(report, std::string("n73-curve/g147E1(t=") + t + ")", "h=1, class spanned by d/dt mu",
        "curve g147E1(t): dim H^2_{3-nil} = 1, the class of the tangent vector", [&] {
          const CohomologyReport c = knil(catalog, "g147E1(t)", 3, p);
          const bool tangent = tangent_is_new_class(catalog, "g147E1(t)", "t", p, 3);
          return Outcome{"h=" + std::to_string(c.h) + ", tangent class new: " + yes_no(tangent), c.h == 1 && tangent};
        });
  }
  if (catalog.has("g147E")) {
    run(report, "n73-curve/g147E(t=2)", "h=3", "g147E(2) has dim H^2_{3-nil} = 3", [&] {
      const CohomologyReport c = knil(catalog, "g147E", 3, at({{"t", "2"}}));
      return Outcome{"h=" + std::to_string(c.h), c.h == 3};
    });
  } else {
    skip(report, "n73-curve/g147E(t=2)", "h=3", "g147E(2) has dim H^2_{3-nil} = 3", kPackMissing);
  }

  for (const IsomorphismWitness& w : witnesses()) {
    const std::string citation = w.derived ? "rescaling constructed here: " + w.note : w.note;
    run(report, "witness/" + w.name, "rebased table equals " + w.target, citation, [&] {
      std::string got;
      bool ok = true;
      for (const auto& p : w.samples) {
        const WitnessReport wr = verify_witness(catalog, w, p);
        ok = ok && wr.ok;
        if (!got.empty()) got += "; ";
        got += (wr.point.empty() ? std::string("-") : wr.point) + (wr.ok ? " ok" : " differs: " + wr.diffs.front());
      }
      return Outcome{got, ok};
    });
  }

  struct Degeneration {
    const char* family;
    const char* limit;
    const char* target;
    const char* citation;
  };
  const Degeneration degenerations[] = {
      {"curve-137D(t)", "0", "g137D", "g(0) is g137D (same structure table)"},
      {"g147E1(t)", "1", "g147D", "g147E1(t) -> g147D as t -> 1"},
      {"curve-247G(t)", "0", "g247G", "g247G is g(0) of the curve through g247H"},
      {"curve-247K(t)", "0", "g247K", "g247K = g(0) is a limit of the g247H orbit"},
      {"curve-137A(t)", "0", "g137A", "rescaling constructed here"},
      {"curve-137A1(t)", "0", "g137A1", "rescaling constructed here"},
  };
  for (const Degeneration& d : degenerations) {
    run(report, std::string("degeneration/") + d.family + "->" + d.target, "true", d.citation, [&] {
      const DegenerationReport r = verify_degeneration(catalog, d.family, at({{"t", d.limit}}), d.target);
      return Outcome{std::string(r.ok ? "true" : "false") + " (" + r.method + ")", r.ok};
    });
  }
}

// ----------------------------------------------------------------- curves

void suite_curves(const Catalog& catalog, ReproductionReport& report) {
  const std::vector<std::pair<const char*, const char*>> points = {{"1", "1"}, {"2", "3"}, {"-1", "2"}};
  for (const char* family : {"g5(r,t)", "g6(r,t)"}) {
    const ParametricTable table = catalog.parametric(family);
    const std::string short_name = std::string(family).substr(0, 2);
    const std::string citation = short_name == "g5" ? "exact for all (r0,t0) with r0*t0 != -1"
                                                    : "exact for all (r0,t0) with t0 != 0";
    for (const auto& [r0, t0] : points) {
      const ParameterAssignment p = at({{"r", r0}, {"t", t0}});
      std::vector<ExactnessReport> reports;
      std::string failure;
      bool limited = false;
      const auto start = std::chrono::steady_clock::now();
      try {
        reports = augmented_exactness_sets<Q>(table, p, {{"r", "t"}, {"t"}}, Constraint::solvable_type(5), family);
      } catch (const ResourceLimit& e) {
        failure = std::string("resource cap: ") + e.what();
        limited = true;
      } catch (const std::exception& e) {
        failure = std::string("error: ") + e.what();
      }
      const double shared = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const char* labels[] = {"free {r,t}", "free {t}"};
      for (std::size_t s = 0; s < 2; ++s) {
        ReproductionItem item;
        item.id = "exact/" + short_name + "(" + r0 + "," + t0 + ")/" + (s == 0 ? "rt" : "t");
        item.expected = std::string("exact, J+SN5, ") + labels[s];
        item.citation = s == 0 ? citation : std::string("still exact with r fixed");
        item.seconds = s == 0 ? shared : 0;
        if (reports.size() == 2) {
          const ExactnessReport& e = reports[s];
          item.match = e.exact;
          item.computed = std::string(e.exact ? "exact" : "not exact") + ", rank dF " + std::to_string(e.rank_dF) +
                          ", dim Ker dG " + std::to_string(e.kernel_dim_dG) + ", dims " +
                          std::to_string(e.source_dim) + "x" + std::to_string(e.middle_dim) + "x" +
                          std::to_string(e.target_dim);
        } else {
          item.computed = failure;
          item.resource_limited = limited;
        }
        report.items.push_back(std::move(item));
      }
    }
    run(report, "exact/" + short_name + "(1,0)", "not exact (excluded point)",
        short_name == "g5" ? "excluded locus r0*t0 = -1" : "excluded locus t0 = 0", [&] {
          const ParameterAssignment p = short_name == "g5" ? at({{"r", "1"}, {"t", "-1"}}) : at({{"r", "1"}, {"t", "0"}});
          const ExactnessReport e = augmented_exactness<Q>(table, p, {"r", "t"}, Constraint::solvable_type(5), family);
          return Outcome{std::string(e.exact ? "exact" : "not exact") + ", rank dF " + std::to_string(e.rank_dF) +
                             ", dim Ker dG " + std::to_string(e.kernel_dim_dG),
                         !e.exact};
        });
    for (const char* t0 : {"1", "2", "1/2"}) {
      run(report, "h2/" + short_name + "(0," + t0 + ")", "dim H^2 = 9",
          "generic points of either curve have dim H^2 = 9", [&] {
            const CohomologyReport c = h2_dim(catalog.eval<Q>(family, at({{"r", "0"}, {"t", t0}})));
            return Outcome{"dim H^2 = " + std::to_string(c.h) + " " + triple(c), c.h == 9};
          });
    }
  }

  run(report, "curves/g5(0,t)=g1(t)", "same table at t in {1,2,1/2,-3}", "g1(t) is obtained by setting (r,t)=(0,t)",
      [&] {
        bool ok = true;
        for (const char* t : {"1", "2", "1/2", "-3"}) {
          ok = ok && table_diff(catalog.eval<Q>("g5(r,t)", at({{"r", "0"}, {"t", t}})),
                                catalog.eval<Q>("g1(λ)", at({{"λ", t}})))
                         .empty();
        }
        return Outcome{ok ? "same table" : "tables differ", ok};
      });
  run(report, "curves/g6(0,t)=gI(t)", "same table at t in {1,2,1/2,-3}", "gI(t) is obtained by setting (r,t)=(0,t)",
      [&] {
        bool ok = true;
        for (const char* t : {"1", "2", "1/2", "-3"}) {
          ok = ok && table_diff(catalog.eval<Q>("g6(r,t)", at({{"r", "0"}, {"t", t}})),
                                catalog.eval<Q>("gI(α)", at({{"α", t}})))
                         .empty();
        }
        return Outcome{ok ? "same table" : "tables differ", ok};
      });
  for (const auto& [family, step] : {std::pair{"g5(r,t)", 5}, std::pair{"g6(r,t)", 6}}) {
    const std::string short_name = std::string(family).substr(0, 2);
    run(report, "curves/" + short_name + " nilpotent iff r=0",
        std::to_string(step) + "-step at r=0; solvable, not nilpotent at r!=0", "nilpotent if and only if r=0", [&] {
          std::string got;
          bool ok = true;
          for (const char* t : {"1", "2", "1/2", "-3"}) {
            const auto nil = nil_index(catalog.eval<Q>(family, at({{"r", "0"}, {"t", t}})));
            ok = ok && nil == static_cast<std::size_t>(step);
            got += "r=0,t=" + std::string(t) + ": " + (nil ? std::to_string(*nil) + "-step" : "not nilpotent") + "; ";
          }
          for (const auto& [r, t] : {std::pair{"1", "1"}, std::pair{"2", "3"}, std::pair{"-1", "2"}}) {
            const StructureConstants<Q> mu = catalog.eval<Q>(family, at({{"r", r}, {"t", t}}));
            const bool solvable = solvable_length(mu).has_value();
            const bool nilpotent = nil_index(mu).has_value();
            ok = ok && solvable && !nilpotent;
            got += "r=" + std::string(r) + ",t=" + t + ": " + (nilpotent ? "nilpotent" : "not nilpotent") +
                   (solvable ? ", solvable; " : ", not solvable; ");
          }
          got.resize(got.size() - 2);
          return Outcome{got, ok};
        });
  }
}

// ----------------------------------------------------------------- ideals

std::string poly_list(const std::vector<MultiPoly>& polys) {
  std::string s;
  for (const auto& p : polys) {
    if (!s.empty()) s += "; ";
    s += p.str();
  }
  return s;
}

void suite_ideals(ReproductionReport& report) {
  const auto same = [](const std::vector<MultiPoly>& got, const std::vector<MultiPoly>& expected) {
    return Outcome{std::to_string(got.size()) + " polynomials" + (got.size() <= 2 ? ": " + poly_list(got) : ""),
                   same_up_to_scalars(got, expected)};
  };
  run(report, "gens/(5,4,J)", "{P1, P2}: " + poly_list(lists::p_5_4()), "generators of I_{5,4}",
      [&] { return same(generators(5, 4, GeneratorKind::J), lists::p_5_4()); });
  run(report, "gens/(5,4,N)", "empty", "N_4 = 0 is trivial for n = 5", [&] {
    const auto g = generators(5, 4, GeneratorKind::N);
    return Outcome{std::to_string(g.size()) + " polynomials", g.empty()};
  });
  run(report, "gens/(5,3,SN)", "{Q1, Q2}: " + poly_list(lists::q_5_3()), "SN_3 = 0 for n = 5",
      [&] { return same(generators(5, 3, GeneratorKind::SN), lists::q_5_3()); });
  run(report, "gens/(6,4,J)", std::to_string(lists::i64_degree2().size()) + " printed degree-2 polynomials",
      "degree-2 generators of I_{6,4}", [&] { return same(generators(6, 4, GeneratorKind::J), lists::i64_degree2()); });
  run(report, "gens/(6,4,N)", std::to_string(lists::i64_degree4().size()) + " printed degree-4 monomials",
      "degree-4 generators of I_{6,4}", [&] { return same(generators(6, 4, GeneratorKind::N), lists::i64_degree4()); });
  run(report, "gens/(6,3,SN)", "{Q1..Q14}", "SN_3 = 0 for n = 6",
      [&] { return same(generators(6, 3, GeneratorKind::SN), lists::q_6_3()); });

  run(report, "member/Q1 in I_{5,4}", "member, D=3", "P1 divides Q1 and Q2", [&] {
    const auto gens = IdealPresentation::nilpotent(5, 4).polys();
    const auto cert = member_bounded(lists::q_5_3()[0], gens, 3);
    const bool ok = cert && cert->verify(gens);
    return Outcome{ok ? "member, certificate verified" : "no certificate", ok};
  });

  const std::vector<MultiPoly> i64 = IdealPresentation::nilpotent(6, 4).polys();
  const std::vector<MultiPoly> q = lists::q_6_3();
  for (std::size_t i = 0; i < 12; ++i) {
    const std::string name = "Q" + std::to_string(i + 1);
    run(report, "member/" + name, "member of I_{6,4}, D=4", "Q_i in I_{6,4} for i = 1..12", [&] {
      const auto cert = member_bounded(q[i], i64, 4);
      const bool ok = cert && cert->verify(i64);
      return Outcome{ok ? "member, certificate verified" : "no certificate at D=4", ok};
    });
  }
  for (std::size_t i : {12u, 13u}) {
    const std::string name = "Q" + std::to_string(i + 1);
    run(report, "member/" + name + "^2", "member of I_{6,4}, D=6", "Q13^2, Q14^2 in I_{6,4}", [&] {
      const auto cert = member_bounded(q[i].pow(2), i64, 6);
      const bool ok = cert && cert->verify(i64);
      return Outcome{ok ? "member, certificate verified" : "no certificate at D=6", ok};
    });
  }

  run(report, "restricted/I_{6,4}", poly_list(lists::restricted_i64()),
      "image of I_{6,4} under the zero assignment", [&] {
        const auto sub = lists::restriction(false);
        std::vector<MultiPoly> images;
        for (const auto& g : i64) {
          MultiPoly s = substitute(g, sub);
          if (!s.is_zero()) images.push_back(std::move(s));
        }
        // Both ideals are compared through their reduced Groebner bases.
        const auto a = groebner_small(images);
        const auto b = groebner_small(lists::restricted_i64());
        return Outcome{poly_list(a), a == b};
      });
  run(report, "restricted/Q14", "t_{1,2,3}*t_{2,3,4}*t_{3,4,6}", "Q14 under the zero assignment", [&] {
    const MultiPoly s = substitute(q[13], lists::restriction(false));
    return Outcome{s.str(), s == MultiPoly::parse("t123*t234*t346")};
  });
  for (const auto& [index, variant] : {std::pair{13u, false}, std::pair{12u, true}}) {
    const std::string name = "Q" + std::to_string(index + 1);
    run(report, "nonmember/" + name, "not in I_{6,4}",
        variant ? "Q13 not in I_{6,4} (t_{2,3,4} = 0 variant, taken as the e1 <-> e2 mirror)"
                : "Q14 not in I_{6,4}; I_{6,4} is not radical",
        [&] {
          const NonMembershipCertificate c = non_membership(q[index], i64, lists::restriction(variant));
          return Outcome{c.proven ? "not a member: remainder " + c.remainder.str() : "inconclusive", c.proven};
        });
  }
  run(report, "nonmember/Q13 literal variant", "inconclusive: restricted Q13 lies in the restricted ideal",
      "derived here: zeroing t_{2,3,4} in place of t_{1,3,4} alone does not separate Q13", [&] {
        std::map<Var, Rational> sub = lists::restriction(false);
        sub.erase(Var(1, 3, 4));
        sub[Var(2, 3, 4)] = Rational(0);
        std::vector<MultiPoly> images;
        for (const auto& g : i64) {
          MultiPoly s = substitute(g, sub);
          if (!s.is_zero()) images.push_back(std::move(s));
        }
        const MultiPoly target = substitute(q[12], sub);
        const auto cert = member_bounded(target, images, 4);
        const bool member = cert && cert->verify(images);
        return Outcome{member ? "restricted Q13 is a member, certificate verified" : "no certificate", member};
      });
}

// -------------------------------------------------------- counterexamples

void suite_counterexamples(const Catalog& catalog, ReproductionReport& report) {
  const StructureConstants<Q> e = catalog.eval<Q>("12346_E");
  run(report, "12346_E/step", "5-step", "12346_E lies in N_{6,5}", [&] {
    const auto nil = nil_index(e);
    return Outcome{nil ? std::to_string(*nil) + "-step" : "not nilpotent", nil == 5u};
  });
  run(report, "12346_E/SN4(a,b,a,b,a)", "f", "[[a,b],[[a,b],a]] = f != 0", [&] {
    const std::vector<std::size_t> args = {0, 1, 0, 1, 0};
    const Vector<Q> v = sn_k_at(e, std::span<const std::size_t>(args));
    Vector<Q> f(6);
    f[5] = 1;
    std::string got;
    for (std::size_t k = 0; k < 6; ++k) {
      if (is_zero(v[k])) continue;
      if (!got.empty()) got += " + ";
      got += (v[k] == 1 ? std::string() : v[k].get_str() + "*") + static_cast<char>('a' + k);
    }
    return Outcome{got.empty() ? "0" : got, v == f};
  });
  run(report, "12346_E/N6=0", "N_6 = 0, SN_4 != 0", "12346_E is not in SN_{6,4}", [&] {
    const bool n6 = n_k(e, 6).is_zero();
    const bool sn4 = !sn_k(e, 4).is_zero();
    return Outcome{std::string("N_6 ") + (n6 ? "= 0" : "!= 0") + ", SN_4 " + (sn4 ? "!= 0" : "= 0"), n6 && sn4};
  });
  for (std::size_t m : {2u, 3u}) {
    const std::string expected = "dim " + std::to_string(2 * m + 2) + ", " + std::to_string(m + 1) + "-step, SN_" +
                                 std::to_string(m) + " != 0";
    run(report, "heisenberg/m=" + std::to_string(m), expected, "RD |x h_m is (m+1)-step but not in SN_{2m+2,m}", [&] {
      const StructureConstants<Q> g = semidirect_by_derivation(heisenberg<Q>(m), heisenberg_shift<Q>(m));
      const auto nil = nil_index(g);
      const bool sn = !sn_k(g, m).is_zero();
      const std::string got = "dim " + std::to_string(g.dim()) + ", " +
                              (nil ? std::to_string(*nil) + "-step" : std::string("not nilpotent")) + ", SN_" +
                              std::to_string(m) + (sn ? " != 0" : " = 0");
      return Outcome{got, got == expected};
    });
  }

  const StructureConstants<Q> mu = catalog.eval<Q>("g5,3");
  const StructureConstants<Q> nus[] = {nu1(), nu2()};
  run(report, "nu/cocycles", "nu1, nu2 in Ker d2 n Ker dN3", "H^2_{3-nil}(g5,3) = span{nu1, nu2}", [&] {
    const ConstraintRowSpace<Q> rs = constraint_row_space(mu, Constraint::nilpotent(3));
    const bool ok = rs.annihilates(nus[0].coordinates()) && rs.annihilates(nus[1].coordinates());
    return Outcome{ok ? "both annihilated" : "not cocycles", ok};
  });
  run(report, "nu/independent", "independent modulo Im d1", "H^2_{3-nil}(g5,3) = span{nu1, nu2}", [&] {
    const ExactMatrix<Q> d1 = d1_matrix(mu);
    std::vector<Vector<Q>> cols;
    for (std::size_t c = 0; c < d1.cols(); ++c) cols.push_back(d1.column(c));
    const std::size_t b = rank(d1).rank;
    for (const auto& nu : nus) cols.emplace_back(nu.coordinates().begin(), nu.coordinates().end());
    const std::size_t r = rank(ExactMatrix<Q>::from_columns(cols, mu.cochain_dim())).rank;
    return Outcome{"rank [d1 | nu1 nu2] - rank d1 = " + std::to_string(r - b), r == b + 2};
  });
  for (std::size_t i = 0; i < 2; ++i) {
    const std::string label = "nu" + std::to_string(i + 1);
    run(report, "nu/mu+t*" + label, "Lie for all t; solvable, not nilpotent at t=1",
        "mu + t*nu is a solvable deformation of g5,3", [&] {
          bool lie = true;
          for (int t : {1, 2, 3}) {
            StructureConstants<Q> d = mu;
            d += nus[i].scaled(Q(t));
            lie = lie && is_lie(d);
          }
          StructureConstants<Q> d1 = mu;
          d1 += nus[i];
          const bool solvable = solvable_length(d1).has_value();
          const bool nilpotent = nil_index(d1).has_value();
          return Outcome{std::string("Jacobi at t=1,2,3: ") + yes_no(lie) + ", solvable: " + yes_no(solvable) +
                             ", nilpotent: " + yes_no(nilpotent),
                         lie && solvable && !nilpotent};
        });
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"dim5", "dim6", "n73", "curves", "ideals", "counterexamples"};
  return names;
}

ReproductionReport reproduce(const Catalog& catalog, std::string_view suite) {
  ReproductionReport report;
  report.suite = std::string(suite);
  report.pack = catalog.pack();
  const auto run_one = [&](std::string_view s) {
    if (s == "dim5") {
      suite_dim5(catalog, report);
    } else if (s == "dim6") {
      suite_dim6(catalog, report);
    } else if (s == "n73") {
      suite_n73(catalog, report);
    } else if (s == "curves") {
      suite_curves(catalog, report);
    } else if (s == "ideals") {
      suite_ideals(report);
    } else if (s == "counterexamples") {
      suite_counterexamples(catalog, report);
    } else {
      throw std::invalid_argument("unknown suite '" + std::string(s) + "'");
    }
  };
  if (suite == "all") {
    for (const auto& s : suite_names()) run_one(s);
  } else {
    run_one(suite);
  }
  return report;
}

Json to_json(const ReproductionReport& r, bool timing) {
  Json j;
  j["suite"] = r.suite;
  j["pass"] = r.pass();
  j["passed"] = r.passed();
  j["failed"] = r.failed();
  j["skipped"] = r.skipped();
  if (r.pack) {
    j["data_pack"] = {{"name", r.pack->name}, {"citation", r.pack->citation}, {"checksum", r.pack->checksum}};
  } else {
    j["data_pack"] = nullptr;
  }
  Json items = Json::array();
  for (const auto& i : r.items) {
    Json x;
    x["id"] = i.id;
    x["expected"] = i.expected;
    x["citation"] = i.citation;
    if (i.skipped) {
      x["skipped"] = true;
      x["reason"] = i.skip_reason;
    } else {
      x["computed"] = i.computed;
      x["match"] = i.match;
      if (i.resource_limited) x["resource_limited"] = true;
      if (timing) x["seconds"] = i.seconds;
    }
    items.push_back(std::move(x));
  }
  j["items"] = std::move(items);
  return j;
}

std::string to_text(const ReproductionReport& r) {
  std::ostringstream os;
  os << "suite " << r.suite;
  if (r.pack) os << " (data pack " << r.pack->name << ", checksum " << r.pack->checksum << ")";
  os << "\n";
  for (const auto& i : r.items) {
    const char* tag = i.skipped ? "SKIP" : (i.match ? "PASS" : "FAIL");
    os << tag << "  " << i.id << "\n";
    os << "      expected: " << i.expected << "  [" << i.citation << "]\n";
    if (i.skipped) {
      os << "      skipped: " << i.skip_reason << "\n";
    } else {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", i.seconds);
      os << "      computed: " << i.computed << "  (" << buf << " s)\n";
    }
  }
  os << r.passed() << " passed, " << r.failed() << " failed, " << r.skipped() << " skipped\n";
  return os.str();
}

}  // namespace nilrigid
