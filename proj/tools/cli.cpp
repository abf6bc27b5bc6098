#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nilrigid/catalog.hpp"
#include "nilrigid/cohomology.hpp"
#include "nilrigid/poly.hpp"
#include "nilrigid/reproduce.hpp"

namespace nilrigid::cli {

namespace {

struct Options {
  std::string pack;
  bool json = false;
  // info / cohomology / exactness
  std::string target;
  std::string params;
  std::size_t dim = 0;
  std::size_t k = 0;
  bool ordinary = false;
  std::string at;
  std::string free = "r,t";
  std::string constraint = "sn5";
  // ideal
  unsigned n = 0;
  unsigned ideal_k = 0;
  std::string kind = "all";
  std::string poly;
  unsigned degree = 0;
  std::string zero;
  std::string order = "drevlex";
  // reproduce
  std::string suite = "all";
  bool no_timing = false;
};

struct UsageError : Error {
  using Error::Error;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

Catalog load_catalog(const Options& o) {
  if (!o.pack.empty()) return Catalog::with_pack(o.pack);
  return Catalog::from_environment();
}

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Largest basis letter in table text, skipping parameter names and the
/// imaginary unit.
std::size_t infer_dim(const std::string& text, const std::vector<std::string>& symbols) {
  std::size_t dim = 0;
  for (std::size_t p = 0; p < text.size(); ++p) {
    const char c = text[p];
    if (c < 'a' || c > 'z' || c == 'i') continue;
    bool symbol = false;
    for (const auto& s : symbols) {
      if (text.compare(p, s.size(), s) == 0) {
        p += s.size() - 1;
        symbol = true;
        break;
      }
    }
    if (!symbol) dim = std::max<std::size_t>(dim, static_cast<std::size_t>(c - 'a') + 1);
  }
  return dim;
}

/// A catalog name, a JSON file, or a table-text file, evaluated at --params.
AnyStructure resolve_structure(const Catalog& catalog, const Options& o) {
  const std::filesystem::path path(o.target);
  if (!std::filesystem::is_regular_file(path)) {
    const AlgebraRecord& rec = catalog.get(o.target);
    return catalog.eval_any(o.target, parse_assignment(o.params, rec.params));
  }
  const std::string text = read_text(path);
  const std::string label = path.stem().string();
  if (path.extension() == ".json") {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(ParseError::Kind::Schema, path.string() + ": " + e.what());
    }
    if (j.contains("params")) {
      const ParametricTable t = parametric_from_json(j);
      const ParameterAssignment at = parse_assignment(o.params, t.symbols());
      const std::string name = j.value("name", label);
      if (t.field() == Field::Qi) return t.eval<Gaussian>(at, name);
      for (const auto& [s, v] : at) {
        if (v.field() == Field::Qi) return t.eval<Gaussian>(at, name);
      }
      return t.eval<Rational>(at, name);
    }
    return structure_from_json(j);
  }
  const ParameterAssignment at = parse_assignment(o.params);
  std::vector<std::string> symbols;
  for (const auto& [s, v] : at) symbols.push_back(s);
  const std::size_t dim = o.dim ? o.dim : infer_dim(text, symbols);
  if (dim == 0) throw UsageError("cannot infer the dimension of " + path.string() + "; pass --dim");
  const ParametricTable t = parse_parametric_table(text, dim, symbols);
  bool complex = t.field() == Field::Qi;
  for (const auto& [s, v] : at) complex = complex || v.field() == Field::Qi;
  if (complex) return t.eval<Gaussian>(at, label);
  return t.eval<Rational>(at, label);
}

void print_json(std::ostream& out, const Json& j) { out << dump_json(j); }

// ------------------------------------------------------------------- info

template <class F>
int info(const StructureConstants<F>& mu, const Options& o, std::ostream& out) {
  const auto nil = nil_index(mu);
  const auto solv = solvable_length(mu);
  const bool lie = is_lie(mu);
  const std::size_t der = derivation_dim(mu);
  const std::size_t orbit = mu.dim() * mu.dim() - der;
  if (o.json) {
    Json j;
    j["algebra"] = mu.name();
    j["dim"] = mu.dim();
    j["field"] = field_name(std::is_same_v<F, Rational> ? Field::Q : Field::Qi);
    j["lie"] = lie;
    j["nil_index"] = nil ? Json(*nil) : Json(nullptr);
    j["solvable_length"] = solv ? Json(*solv) : Json(nullptr);
    j["derivation_dim"] = der;
    j["orbit_dim"] = orbit;
    j["table"] = to_table_text(mu);
    print_json(out, j);
    return kPass;
  }
  out << (mu.name().empty() ? std::string("(unnamed)") : mu.name()) << ": " << mu.dim() << "-dim, ";
  if (!lie) {
    out << "not a Lie algebra (Jacobi fails)";
  } else if (nil && *nil <= 1) {
    out << "abelian";
  } else if (nil) {
    out << *nil << "-step nilpotent";
  } else if (solv) {
    out << "solvable of length " << *solv << ", not nilpotent";
  } else {
    out << "not solvable";
  }
  out << ", orbit dim " << orbit << "\n";
  out << "  field " << field_name(std::is_same_v<F, Rational> ? Field::Q : Field::Qi) << ", derivation dim " << der;
  if (solv) out << ", solvable length " << *solv;
  out << "\n  " << to_table_text(mu) << "\n";
  return kPass;
}

// ------------------------------------------------------------- cohomology

template <class F>
int cohomology(const StructureConstants<F>& mu, std::size_t k, const Options& o, std::ostream& out) {
  const CohomologyReport r = o.ordinary ? h2_dim(mu) : h2_knil(mu, k);
  if (o.json) {
    print_json(out, to_json(r));
    return kPass;
  }
  out << r.algebra << (o.ordinary ? ": H^2" : ": H^2_{" + std::to_string(k) + "-nil}") << "  z=" << r.z
      << " b=" << r.b << " h=" << r.h << " orbit dim " << r.orbit_dim << "\n";
  if (r.h == 0) {
    out << (o.ordinary ? std::string("RIGID") : "RIGID in N_{" + std::to_string(r.n) + "," + std::to_string(k) + "}")
        << "\n";
  }
  return kPass;
}

// -------------------------------------------------------------- exactness

Constraint parse_constraint(const std::string& s) {
  std::string c;
  for (char ch : s) c += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (c == "j") return Constraint::jacobi();
  const auto number = [&](std::size_t from) -> std::size_t {
    if (from >= c.size()) throw UsageError("constraint '" + s + "' needs k, e.g. sn5 or n3");
    try {
      return std::stoul(c.substr(from));
    } catch (const std::exception&) {
      throw UsageError("bad constraint '" + s + "'");
    }
  };
  if (c.rfind("sn", 0) == 0) return Constraint::solvable_type(number(2));
  if (c.rfind("n", 0) == 0) return Constraint::nilpotent(number(1));
  throw UsageError("constraint must be j, nK or snK, got '" + s + "'");
}

int exactness(const Catalog& catalog, const Options& o, std::ostream& out) {
  const AlgebraRecord& rec = catalog.get(o.target);
  if (!rec.is_family()) throw UsageError(o.target + " is not a parametric family");
  const ParametricTable table = catalog.parametric(o.target);
  const ParameterAssignment at = parse_assignment(o.at, rec.params);
  const std::vector<std::string> free = split_list(o.free);
  const Constraint constraint = parse_constraint(o.constraint);
  bool complex = rec.field == Field::Qi;
  for (const auto& [s, v] : at) complex = complex || v.field() == Field::Qi;
  const ExactnessReport r = complex ? augmented_exactness<Gaussian>(table, at, free, constraint, rec.name)
                                    : augmented_exactness<Rational>(table, at, free, constraint, rec.name);
  if (o.json) {
    print_json(out, to_json(r));
  } else {
    out << r.algebra << " at " << format_assignment(at) << ", free {" << o.free << "}, constraint " << r.constraint
        << "\n  dims " << r.source_dim << " -> " << r.middle_dim << " -> " << r.target_dim << ", rank dF "
        << r.rank_dF << ", dim Ker dG " << r.kernel_dim_dG << ", Im dF in Ker dG: " << (r.contained ? "yes" : "no")
        << "\n  " << (r.exact ? "EXACT" : "NOT EXACT") << "\n";
  }
  return r.exact ? kPass : kMismatch;
}

// ------------------------------------------------------------------ ideal

std::vector<GeneratorKind> kinds_of(const std::string& s) {
  if (s == "all") return {GeneratorKind::J, GeneratorKind::N};
  if (s == "J" || s == "j") return {GeneratorKind::J};
  if (s == "N" || s == "n") return {GeneratorKind::N};
  if (s == "SN" || s == "sn") return {GeneratorKind::SN};
  throw UsageError("--kind must be J, N, SN or all");
}

MonomialOrder order_of(const std::string& s) {
  if (s == "drevlex") return MonomialOrder::DegRevLex;
  if (s == "lex") return MonomialOrder::Lex;
  throw UsageError("--order must be drevlex or lex");
}

void require_nk(const Options& o) {
  if (o.n < 2) throw UsageError("--n must be at least 2");
  if (o.ideal_k < 1) throw UsageError("--k must be at least 1");
}

int ideal_gens(const Options& o, std::ostream& out) {
  require_nk(o);
  Json list = Json::array();
  for (GeneratorKind kind : kinds_of(o.kind)) {
    if (kind == GeneratorKind::SN && o.ideal_k < 2) throw UsageError("SN needs --k >= 2");
    for (const TaggedGenerator& g : tagged_generators(o.n, o.ideal_k, kind)) {
      if (o.json) {
        list.push_back({{"source", kind_name(g.source)}, {"poly", g.poly.str()}, {"degree", g.poly.degree()}});
      } else {
        out << kind_name(g.source) << "  " << g.poly.str() << "\n";
      }
    }
  }
  if (o.json) print_json(out, Json{{"n", o.n}, {"k", o.ideal_k}, {"generators", list}});
  return kPass;
}

int ideal_member(const Options& o, std::ostream& out) {
  require_nk(o);
  const MultiPoly f = MultiPoly::parse(o.poly);
  const IdealPresentation ideal = IdealPresentation::nilpotent(o.n, o.ideal_k);
  const std::vector<MultiPoly> gens = ideal.polys();
  const unsigned d = o.degree ? o.degree : static_cast<unsigned>(std::max(f.degree(), 0));
  if (static_cast<int>(d) < f.degree()) throw UsageError("--degree must be at least deg f");
  const auto cert = member_bounded(f, gens, d);
  const bool ok = cert && cert->verify(gens);
  if (o.json) {
    Json j{{"n", o.n}, {"k", o.ideal_k}, {"target", f.str()}, {"degree_bound", d}, {"member", ok}};
    if (ok) {
      Json m = Json::array();
      for (std::size_t g = 0; g < gens.size(); ++g) {
        if (!cert->multipliers[g].is_zero()) m.push_back({{"generator", gens[g].str()}, {"multiplier", cert->multipliers[g].str()}});
      }
      j["certificate"] = m;
    }
    print_json(out, j);
  } else if (ok) {
    out << "MEMBER of I_{" << o.n << "," << o.ideal_k << "} (degree bound " << d << ", certificate verified)\n";
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (!cert->multipliers[g].is_zero()) out << "  (" << cert->multipliers[g].str() << ") * (" << gens[g].str() << ")\n";
    }
  } else {
    out << "no certificate at degree bound " << d << " (not a proof of non-membership)\n";
  }
  return ok ? kPass : kMismatch;
}

std::map<Var, Rational> parse_zero_set(const std::string& s) {
  std::vector<Var> vars;
  for (const auto& item : split_list(s)) {
    const MultiPoly p = MultiPoly::parse(item);
    const auto v = p.variables();
    if (v.size() != 1 || p.degree() != 1 || p.size() != 1) throw UsageError("--zero entries must be variables, got '" + item + "'");
    vars.push_back(v.front());
  }
  return zero_assignment(vars);
}

int ideal_nonmember(const Options& o, std::ostream& out) {
  require_nk(o);
  const MultiPoly f = MultiPoly::parse(o.poly);
  const std::vector<MultiPoly> gens = IdealPresentation::nilpotent(o.n, o.ideal_k).polys();
  const NonMembershipCertificate c = non_membership(f, gens, parse_zero_set(o.zero), order_of(o.order));
  if (o.json) {
    Json basis = Json::array();
    for (const auto& b : c.basis) basis.push_back(b.str());
    Json restricted = Json::array();
    for (const auto& g : c.restricted_generators) restricted.push_back(g.str());
    print_json(out, Json{{"n", o.n},
                         {"k", o.ideal_k},
                         {"target", f.str()},
                         {"proven", c.proven},
                         {"restricted_target", c.restricted_target.str()},
                         {"restricted_generators", restricted},
                         {"groebner_basis", basis},
                         {"remainder", c.remainder.str()}});
  } else {
    out << "restricted target: " << c.restricted_target.str() << "\n";
    out << "restricted generators:\n";
    for (const auto& g : c.restricted_generators) out << "  " << g.str() << "\n";
    out << "Groebner basis:\n";
    for (const auto& b : c.basis) out << "  " << b.str() << "\n";
    out << "remainder: " << c.remainder.str() << "\n";
    out << (c.proven ? "NOT A MEMBER of I_{" + std::to_string(o.n) + "," + std::to_string(o.ideal_k) + "}"
                     : std::string("inconclusive"))
        << "\n";
  }
  return c.proven ? kPass : kMismatch;
}

// ---------------------------------------------------------------- catalog

int list_catalog(const Catalog& catalog, const Options& o, std::ostream& out) {
  Json list = Json::array();
  for (const AlgebraRecord* r : catalog.records()) {
    if (o.json) {
      Json j{{"name", r->name}, {"aliases", r->aliases}, {"dim", r->dim}, {"field", field_name(r->field)},
             {"params", r->params}, {"source", r->source == Source::Builtin ? "builtin" : "data-pack"},
             {"table", r->table}};
      if (r->step) j["step"] = *r->step;
      list.push_back(std::move(j));
    } else {
      out << r->name;
      if (!r->aliases.empty()) {
        out << " (";
        for (std::size_t a = 0; a < r->aliases.size(); ++a) out << (a ? ", " : "") << r->aliases[a];
        out << ")";
      }
      out << "  dim " << r->dim;
      if (r->step) out << ", " << *r->step << "-step";
      if (r->source == Source::DataPack) out << ", data pack";
      out << "\n    " << r->table << "\n";
    }
  }
  if (o.json) print_json(out, list);
  return kPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact deformation cohomology of nilpotent Lie algebras", "nilrigid"};
  app.require_subcommand(1);
  app.add_option("--pack", o.pack, "data pack directory (overrides NILRIGID_DATA_PACK)");

  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "machine-readable output"); };

  CLI::App* list = app.add_subcommand("list", "list catalog records");
  add_json(list);

  CLI::App* info_cmd = app.add_subcommand("info", "dimension, nilpotency, derivations, orbit dimension");
  info_cmd->add_option("algebra", o.target, "catalog name, .json file or table-text file")->required();
  info_cmd->add_option("--params", o.params, "parameter values, e.g. r=1,t=1/2");
  info_cmd->add_option("--dim", o.dim, "dimension of a table-text file (default: largest letter)");
  add_json(info_cmd);

  CLI::App* coh = app.add_subcommand("cohomology", "dim H^2_{k-nil} (or ordinary H^2)");
  coh->add_option("algebra", o.target, "catalog name, .json file or table-text file")->required();
  coh->add_option("--k", o.k, "nilpotency class k (default: the record's step)");
  coh->add_option("--params", o.params, "parameter values, e.g. t=2");
  coh->add_option("--dim", o.dim, "dimension of a table-text file");
  coh->add_flag("--ordinary", o.ordinary, "ordinary H^2 instead of H^2_{k-nil}");
  add_json(coh);

  CLI::App* ex = app.add_subcommand("exactness", "augmented exactness of a family at a point");
  ex->add_option("family", o.target, "parametric catalog record")->required();
  ex->add_option("--at", o.at, "point, e.g. r=1,t=1")->required();
  ex->add_option("--free", o.free, "free parameters, e.g. r,t or t")->capture_default_str();
  ex->add_option("--constraint", o.constraint, "j, nK or snK")->capture_default_str();
  add_json(ex);

  CLI::App* ideal = app.add_subcommand("ideal", "generators and membership for I_{n,k} = (J, N_k)");
  ideal->require_subcommand(1);
  auto add_nk = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "dimension")->required();
    sub->add_option("--k", o.ideal_k, "step")->required();
    add_json(sub);
  };
  CLI::App* gens = ideal->add_subcommand("gens", "generator list");
  add_nk(gens);
  gens->add_option("--kind", o.kind, "J, N, SN or all (J and N_k)")->capture_default_str();
  CLI::App* member = ideal->add_subcommand("member", "bounded-degree membership certificate");
  add_nk(member);
  member->add_option("--poly", o.poly, "polynomial, e.g. \"t_{1,2,3}*t_{1,3,4}*t_{3,4,5}\"")->required();
  member->add_option("--degree", o.degree, "degree bound D (default deg f)");
  CLI::App* nonmember = ideal->add_subcommand("nonmember", "non-membership by substitution and Groebner basis");
  add_nk(nonmember);
  nonmember->add_option("--poly", o.poly, "polynomial")->required();
  nonmember->add_option("--zero", o.zero, "variables set to zero, e.g. t124,t134")->required();
  nonmember->add_option("--order", o.order, "drevlex or lex")->capture_default_str();

  CLI::App* rep = app.add_subcommand("reproduce", "recompute published values");
  rep->add_option("suite", o.suite, "dim5, dim6, n73, curves, ideals, counterexamples or all")->capture_default_str();
  rep->add_flag("--no-timing", o.no_timing, "omit per-item seconds from JSON");
  add_json(rep);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  try {
    if (list->parsed()) return list_catalog(load_catalog(o), o, out);
    if (info_cmd->parsed()) {
      const AnyStructure s = resolve_structure(load_catalog(o), o);
      return std::visit([&](const auto& mu) { return info(mu, o, out); }, s);
    }
    if (coh->parsed()) {
      const Catalog catalog = load_catalog(o);
      std::size_t k = o.k;
      if (k == 0 && !o.ordinary) {
        if (catalog.has(o.target) && catalog.get(o.target).step) {
          k = *catalog.get(o.target).step;
        } else {
          throw UsageError("--k is required for " + o.target);
        }
      }
      const AnyStructure s = resolve_structure(catalog, o);
      return std::visit([&](const auto& mu) { return cohomology(mu, k, o, out); }, s);
    }
    if (ex->parsed()) return exactness(load_catalog(o), o, out);
    if (gens->parsed()) return ideal_gens(o, out);
    if (member->parsed()) return ideal_member(o, out);
    if (nonmember->parsed()) return ideal_nonmember(o, out);
    if (rep->parsed()) {
      const Catalog catalog = load_catalog(o);
      if (o.suite != "all" &&
          std::find(suite_names().begin(), suite_names().end(), o.suite) == suite_names().end()) {
        throw UsageError("unknown suite '" + o.suite + "'");
      }
      const ReproductionReport r = reproduce(catalog, o.suite);
      if (o.json) {
        print_json(out, to_json(r, !o.no_timing));
      } else {
        out << to_text(r);
      }
      return r.exit_code();
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnknownAlgebra& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ExternalDataRequired& e) {
    err << "external data required: " << e.what() << "\n";
    return kUsage;
  } catch (const MissingParameter& e) {
    err << "missing parameter: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceLimit& e) {
    err << "resource cap: " << e.what() << "\n";
    return kResource;
  } catch (const NotInVariety& e) {
    err << "error: " << e.what() << "\n";
    return kMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace nilrigid::cli
