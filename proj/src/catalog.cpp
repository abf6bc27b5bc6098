#include "nilrigid/catalog.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace nilrigid {

namespace {

ParameterAssignment point(std::initializer_list<std::pair<const char*, const char*>> values) {
  ParameterAssignment at;
  for (const auto& [s, v] : values) at[s] = Scalar::parse(v);
  return at;
}

std::vector<ParameterAssignment> surface_samples() {
  return {point({{"r", "1"}, {"t", "1"}}), point({{"r", "2"}, {"t", "3"}}), point({{"r", "-1"}, {"t", "2"}}),
          point({{"r", "1/2"}, {"t", "1/3"}})};
}

std::vector<ParameterAssignment> curve_samples(const char* symbol) {
  return {point({{symbol, "1"}}), point({{symbol, "2"}}), point({{symbol, "1/2"}}), point({{symbol, "-3"}})};
}

AlgebraRecord algebra(std::string name, std::vector<std::string> aliases, std::size_t dim, std::string table,
                      std::optional<std::size_t> step, std::string note = {}) {
  AlgebraRecord r;
  r.name = std::move(name);
  r.aliases = std::move(aliases);
  r.dim = dim;
  r.table = std::move(table);
  r.step = step;
  r.note = std::move(note);
  return r;
}

AlgebraRecord family(std::string name, std::vector<std::string> aliases, std::size_t dim, std::string table,
                     std::vector<std::string> params, std::vector<ParameterAssignment> samples,
                     std::optional<std::size_t> step, std::string note = {}) {
  AlgebraRecord r = algebra(std::move(name), std::move(aliases), dim, std::move(table), step, std::move(note));
  r.params = std::move(params);
  r.samples = std::move(samples);
  return r;
}

std::uint64_t fnv1a(std::uint64_t h, const std::string& bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

// ------------------------------------------------------------------- names

std::string normalize_name(std::string_view name) {
  std::string s(name);
  // Trailing parameter list: "g_5(r,t)" -> "g_5".
  if (!s.empty() && s.back() == ')') {
    const auto open = s.rfind('(');
    if (open != std::string::npos && open > 0) s.erase(open);
  }
  static const std::vector<std::pair<std::string, std::string>> replacements = {
      {"₀", "0"}, {"₁", "1"}, {"₂", "2"}, {"₃", "3"}, {"₄", "4"}, {"₅", "5"}, {"₆", "6"},
      {"₇", "7"}, {"₈", "8"}, {"₉", "9"}, {"²", "2"}, {"⊕", "+"}, {"ℝ", "r"}, {"𝔤", "g"}};
  for (const auto& [from, to] : replacements) {
    for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos)) {
      s.replace(pos, from.size(), to);
      pos += to.size();
    }
  }
  std::string out;
  for (char c : s) {
    if (c == '_' || c == '{' || c == '}' || c == ' ' || c == ',' || c == '^' || c == '\\') continue;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

ParameterAssignment parse_assignment(std::string_view text, const std::vector<std::string>& symbols) {
  ParameterAssignment at;
  std::size_t position = 0;
  std::string item;
  std::stringstream ss{std::string(text)};
  while (std::getline(ss, item, ',')) {
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq != std::string::npos) {
      at[trim(item.substr(0, eq))] = Scalar::parse(trim(item.substr(eq + 1)));
    } else {
      if (position >= symbols.size()) {
        throw ParseError(ParseError::Kind::Syntax, "more parameter values than parameters: '" + std::string(text) + "'");
      }
      at[symbols[position]] = Scalar::parse(item);
    }
    ++position;
  }
  return at;
}

std::string format_assignment(const ParameterAssignment& at) {
  std::string s;
  for (const auto& [k, v] : at) {
    if (!s.empty()) s += ",";
    s += k + "=" + v.str();
  }
  return s;
}

// ----------------------------------------------------------------- catalog

const std::vector<std::string>& Catalog::pack_only_names() {
  static const std::vector<std::string> names = {
      "36",     "g6,26", "13+13", "g6,22", "246_E", "g6,24",  "136_A",      "g6,19",
      "1246",   "g6,13", "1346_C", "g6,21", "g247H1", "g_{247H_1}", "g147E", "g_{147E}(t)"};
  return names;
}

Catalog Catalog::builtin() {
  Catalog c;
  // Five-dimensional non-abelian nilpotent algebras.
  c.add(algebra("f3+R2", {"f_3+R^2", "f_3⊕ℝ²", "f3⊕R2"}, 5, "ab=c", 2));
  c.add(algebra("g5,1", {"g_{5,1}"}, 5, "ab=e, cd=e", 2));
  c.add(algebra("g5,2", {"g_{5,2}"}, 5, "ab=d, ac=e", 2));
  c.add(algebra("f4+R", {"f_4+R", "f_4⊕ℝ", "f4⊕R"}, 5, "ab=c, ac=d", 3));
  c.add(algebra("g5,3", {"g_{5,3}"}, 5, "ab=d, ad=e, bc=e", 3));
  c.add(algebra("g5,4", {"g_{5,4}"}, 5, "ab=c, ac=d, bc=e", 3));
  c.add(algebra("f5", {"f_5"}, 5, "ab=c, ac=d, ad=e", 4));
  c.add(algebra("g5,6", {"g_{5,6}"}, 5, "ab=c, ac=d, ad=e, bc=e", 4));

  c.add(algebra("12346_E", {"g6,14", "g_{6,14}"}, 6, "ab=c, ac=d, ad=e, bc=e, be=f, cd=-f", 5));

  // Seven-dimensional surfaces of solvable algebras and the nilpotent curves on r = 0.
  c.add(family("g5(r,t)", {"g_5(r,t)"}, 7,
               "ab=(1+tr)c, ac=d, ad=f+tg, ae=g, af=-rf+g, bc=e, bd=g, be=rd+f, ce=g", {"r", "t"},
               surface_samples(), std::nullopt, "nilpotent exactly when r = 0"));
  c.add(family("g6(r,t)", {"g_6(r,t)"}, 7,
               "ab=c, ac=d, ad=e, ae=f, af=g, ag=rg, bc=e, bd=f, be=rtf+(1-t)g, bf=rg, bg=r^2g, cd=-rtf+tg",
               {"r", "t"}, surface_samples(), std::nullopt, "nilpotent exactly when r = 0"));
  c.add(family("g1(λ)", {"g_1(λ)", "12457_N"}, 7, "ab=c, ac=d, ad=f+λg, ae=g, af=g, bc=e, bd=g, be=f, ce=g",
               {"λ"}, curve_samples("λ"), 5, "g5(0,λ)"));
  c.add(family("gI(α)", {"g_I(α)"}, 7, "ab=c, ac=d, ad=e, ae=f, af=g, bc=e, bd=f, be=(1-α)g, cd=αg", {"α"},
               curve_samples("α"), 6, "g6(0,α)"));

  // Three-step nilpotent algebras of dimension seven.
  c.add(algebra("g137A", {"g_{137A}"}, 7, "ab=e, ae=g, cd=f, cf=g", 3));
  c.add(algebra("g137B", {"g_{137B}"}, 7, "ab=e, ae=g, cd=f, cf=g, bd=g", 3));
  c.add(algebra("g137A1", {"g_{137A_1}"}, 7, "ac=e, ad=f, ae=g, bc=-f, bd=e, bf=g", 3));
  c.add(algebra("g137B1", {"g_{137B_1}"}, 7, "ac=e, ad=f, ae=g, bc=-f, bd=e, bf=g, cd=g", 3));
  c.add(algebra("g247H", {"g_{247H}"}, 7, "ab=d, ac=e, ad=f, bd=f, be=g, cd=g, ce=f", 3));
  c.add(algebra("g247K", {"g_{247K}"}, 7, "ab=d, ac=e, ad=f, be=g, cd=g, ce=f", 3));
  c.add(algebra("g147D", {"g_{147D}"}, 7, "ab=d, ac=-f, ae=g, af=g, bc=e, bf=g, cd=-2g", 3));
  c.add(family("g147E1(t)", {"g_{147E_1}(t)"}, 7, "ab=d, ac=-f, af=-tg, bc=e, be=tg, bf=2g, cd=-2g", {"t"},
               {point({{"t", "3/2"}}), point({{"t", "2"}}), point({{"t", "5"}}), point({{"t", "3"}})}, 3,
               "pairwise non-isomorphic for t > 1"));
  c.add(algebra("g137D", {"g_{137D}"}, 7, "ab=e, ad=f, af=g, bc=f, bd=g, ce=-g", 3,
                "table of curve-137D at t = 0"));
  c.add(algebra("g247G", {"g_{247G}"}, 7, "ab=d, ac=e, ad=f, ae=f, bd=f, be=g, cd=g, ce=f", 3,
                "table of curve-247G at t = 0"));
  c.add(algebra("g247K-GR", {"GR"}, 7, "ab=c, ac=d, ae=f, af=g, bc=d, be=f, ce=g, ef=d", 3,
                "presentation of g247K claimed rigid elsewhere"));

  c.add(family("curve-137D(t)", {}, 7, "ab=e, ad=f, af=g, bc=f, bd=g, cd=-t^2e, ce=-g", {"t"},
               curve_samples("t"), 3, "isomorphic to g137B for t != 0"));
  c.add(family("curve-247G(t)", {}, 7,
               "ab=d, ac=e, ad=(1+t^3/2)f+(t^3/2)g, ae=(1-t^3/2)f-(t^3/2)g, bd=f, be=g, cd=g, ce=f", {"t"},
               curve_samples("t"), 3, "isomorphic to g247H for t != 0"));
  c.add(family("curve-247K(t)", {}, 7, "ab=d, ac=e, ad=f, bc=t^2e, be=g, cd=g, ce=f", {"t"}, curve_samples("t"), 3,
               "isomorphic to g247H over Q(i) for t != 0"));
  c.add(family("curve-137A(t)", {}, 7, "ab=e, ae=g, cd=f, cf=g, bd=t^2g", {"t"}, curve_samples("t"), 3,
               "isomorphic to g137B for t != 0"));
  c.add(family("curve-137A1(t)", {}, 7, "ac=e, ad=f, ae=g, bc=-f, bd=e, bf=g, cd=tg", {"t"}, curve_samples("t"), 3,
               "isomorphic to g137B1 for t != 0"));
  return c;
}

Catalog Catalog::with_pack(const std::filesystem::path& root) {
  Catalog c = builtin();
  c.pack_ = load_pack(c, root);
  return c;
}

Catalog Catalog::from_environment() {
  if (const char* dir = std::getenv("NILRIGID_DATA_PACK"); dir != nullptr && *dir != '\0') return with_pack(dir);
  return builtin();
}

void Catalog::add(AlgebraRecord record) {
  ParametricTable t = parse_parametric_table(record.table, record.dim, record.params);
  record.field = t.field();
  const std::size_t slot = records_.size();
  std::vector<std::string> keys{normalize_name(record.name)};
  for (const auto& a : record.aliases) keys.push_back(normalize_name(a));
  for (const auto& k : keys) {
    auto it = index_.find(k);
    if (it != index_.end() && it->second != slot && records_[it->second].source == Source::Builtin && record.source == Source::DataPack) {
      throw Error("data pack record '" + record.name + "' shadows built-in name '" + k + "'");
    }
    index_[k] = slot;
  }
  records_.push_back(std::move(record));
}

bool Catalog::has(std::string_view name) const { return index_.contains(normalize_name(name)); }

const AlgebraRecord& Catalog::get(std::string_view name) const {
  const std::string key = normalize_name(name);
  auto it = index_.find(key);
  if (it != index_.end()) return records_[it->second];
  for (const auto& p : pack_only_names()) {
    if (normalize_name(p) == key) {
      throw ExternalDataRequired("'" + std::string(name) +
                                 "' has no table built in; install a data pack and set NILRIGID_DATA_PACK");
    }
  }
  throw UnknownAlgebra("unknown algebra '" + std::string(name) + "'");
}

std::vector<const AlgebraRecord*> Catalog::records() const {
  std::vector<const AlgebraRecord*> out;
  for (const auto& r : records_) out.push_back(&r);
  return out;
}

ParametricTable Catalog::parametric(std::string_view name) const {
  const AlgebraRecord& r = get(name);
  return parse_parametric_table(r.table, r.dim, r.params);
}

template <class F>
StructureConstants<F> Catalog::eval(std::string_view name, const ParameterAssignment& at) const {
  const AlgebraRecord& r = get(name);
  std::string label = r.name;
  if (r.is_family()) {
    label = label.substr(0, label.find('(')) + "(" + format_assignment(at) + ")";
  }
  return parametric(name).eval<F>(at, label);
}

template StructureConstants<Rational> Catalog::eval<Rational>(std::string_view, const ParameterAssignment&) const;
template StructureConstants<Gaussian> Catalog::eval<Gaussian>(std::string_view, const ParameterAssignment&) const;

AnyStructure Catalog::eval_any(std::string_view name, const ParameterAssignment& at) const {
  const AlgebraRecord& r = get(name);
  bool complex = r.field == Field::Qi;
  for (const auto& p : r.params) {
    auto it = at.find(p);
    if (it != at.end() && it->second.field() == Field::Qi) complex = true;
  }
  if (complex) return eval<Gaussian>(name, at);
  return eval<Rational>(name, at);
}

// -------------------------------------------------------------------- pack

namespace {

std::string letter(std::size_t k) { return std::string(1, static_cast<char>('a' + k)); }

/// Bracket JSON to table text, each coefficient parenthesized.
std::string json_brackets_to_text(const Json& brackets, std::size_t n) {
  std::string text;
  for (const auto& entry : brackets) {
    const auto i = entry.at("i").get<std::size_t>();
    const auto j = entry.at("j").get<std::size_t>();
    if (i < 1 || j < 1 || i > n || j > n) throw ParseError(ParseError::Kind::LetterOutOfRange, "bracket index out of range");
    std::string rhs;
    for (const auto& term : entry.at("terms")) {
      const auto k = term.at("k").get<std::size_t>();
      if (k < 1 || k > n) throw ParseError(ParseError::Kind::LetterOutOfRange, "bracket index out of range");
      if (!rhs.empty()) rhs += " + ";
      rhs += "(" + term.at("c").get<std::string>() + ")" + letter(k - 1);
    }
    if (rhs.empty()) continue;
    if (!text.empty()) text += ", ";
    text += letter(i - 1) + letter(j - 1) + " = " + rhs;
  }
  return text;
}

AlgebraRecord record_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("name") || !j.contains("dim")) {
    throw ParseError(ParseError::Kind::Schema, "pack record needs 'name' and 'dim'");
  }
  AlgebraRecord r;
  r.name = j["name"].get<std::string>();
  r.dim = j["dim"].get<std::size_t>();
  if (r.dim == 0 || r.dim > 26) throw ParseError(ParseError::Kind::Schema, "pack record dimension out of range");
  if (j.contains("aliases")) r.aliases = j["aliases"].get<std::vector<std::string>>();
  if (j.contains("params")) r.params = j["params"].get<std::vector<std::string>>();
  if (j.contains("step")) r.step = j["step"].get<std::size_t>();
  if (j.contains("note")) r.note = j["note"].get<std::string>();
  if (j.contains("table")) {
    r.table = j["table"].get<std::string>();
  } else if (j.contains("brackets")) {
    r.table = json_brackets_to_text(j["brackets"], r.dim);
  } else {
    throw ParseError(ParseError::Kind::Schema, "pack record '" + r.name + "' has neither 'table' nor 'brackets'");
  }
  if (j.contains("samples")) {
    for (const auto& s : j["samples"]) {
      ParameterAssignment at;
      for (const auto& [k, v] : s.items()) at[k] = Scalar::parse(v.get<std::string>());
      r.samples.push_back(std::move(at));
    }
  }
  r.source = Source::DataPack;
  return r;
}

}  // namespace

PackInfo load_pack(Catalog& catalog, const std::filesystem::path& root) {
  const auto manifest_path = root / "manifest.json";
  const std::string manifest_text = read_file(manifest_path);
  Json manifest;
  try {
    manifest = Json::parse(manifest_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(ParseError::Kind::Schema, "manifest.json: " + std::string(e.what()));
  }
  PackInfo info;
  info.root = root;
  info.name = manifest.value("name", std::string("unnamed pack"));
  info.citation = manifest.value("citation", std::string());
  if (!manifest.contains("files") || !manifest["files"].is_array()) {
    throw ParseError(ParseError::Kind::Schema, "manifest.json needs a 'files' array");
  }
  std::uint64_t h = fnv1a(0xcbf29ce484222325ULL, manifest_text);
  for (const auto& f : manifest["files"]) {
    const auto file = root / f.get<std::string>();
    const std::string text = read_file(file);
    h = fnv1a(h, text);
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(ParseError::Kind::Schema, file.filename().string() + ": " + e.what());
    }
    const Json list = j.contains("records") ? j["records"] : Json::array({j});
    for (const auto& rec : list) {
      catalog.add(record_from_json(rec));
      ++info.records;
    }
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  info.checksum = os.str();
  return info;
}

// ---------------------------------------------------------------- cocycles

StructureConstants<Rational> nu1() {
  StructureConstants<Rational> s(5, "nu1");
  s.set(1, 2, 2, Rational(1));  // (b,c) -> c
  return s;
}

StructureConstants<Rational> nu2() {
  StructureConstants<Rational> s(5, "nu2");
  s.set(0, 1, 1, Rational(1));   // (a,b) -> b
  s.set(0, 2, 2, Rational(-1));  // (a,c) -> -c
  s.set(0, 3, 3, Rational(-1));  // (a,d) -> -d
  return s;
}

// --------------------------------------------------------------- witnesses

bool IsomorphismWitness::valid_at(const ParameterAssignment& at) const {
  for (const auto& p : params) {
    if (!at.contains(p)) return false;
  }
  for (const auto& [s, v] : excluded) {
    auto it = at.find(s);
    if (it != at.end() && it->second == Scalar(v)) return false;
  }
  return true;
}

const std::vector<IsomorphismWitness>& witnesses() {
  static const std::vector<IsomorphismWitness> list = [] {
    std::vector<IsomorphismWitness> w;
    const std::vector<ParameterAssignment> t_samples = {point({{"t", "1"}}), point({{"t", "2"}}),
                                                        point({{"t", "1/2"}}), point({{"t", "-3"}})};
    {
      IsomorphismWitness x;
      x.name = "137B-curve";
      x.source = "curve-137D(t)";
      x.basis = {"ta+c", "2t(tb-d)", "-ta+c", "-2t(tb+d)", "4t^2(te-f)", "4t^2(te+f)", "-8t^3g"};
      x.target = "g137B";
      x.params = {"t"};
      x.excluded = {{"t", Rational(0)}};
      x.samples = t_samples;
      x.limit_target = "g137D";
      x.limit = point({{"t", "0"}});
      x.note = "g137B -> g137D: the curve is g137B for t != 0 and g137D at t = 0";
      w.push_back(std::move(x));
    }
    {
      IsomorphismWitness x;
      x.name = "147E1-to-147D";
      x.source = "g147E1(t)";
      x.source_fixed = point({{"t", "1"}});
      x.basis = {"-a", "a+b", "c", "-d", "e-f", "-f", "-g"};
      x.target = "g147D";
      x.samples = {ParameterAssignment{}};
      x.note = "g147E1(t) -> g147D as t -> 1";
      w.push_back(std::move(x));
    }
    {
      IsomorphismWitness x;
      x.name = "247H-to-247G-curve";
      x.source = "g247H";
      x.basis = {"2t^2a+(1/2-t^2)b+(1/2)c",     "(1/2)(1+t)b+(1/2)(1-t)c",     "(1/2)(1-t)b+(1/2)(1+t)c",
                 "t^2(1+t)d+t^2(1-t)e",         "t^2(1-t)d+t^2(1+t)e",         "t^2(1+t^2)f+t^2(1-t^2)g",
                 "t^2(1-t^2)f+t^2(1+t^2)g"};
      x.target = "curve-247G(t)";
      x.params = {"t"};
      x.excluded = {{"t", Rational(0)}};
      x.samples = t_samples;
      x.limit_target = "g247G";
      x.limit = point({{"t", "0"}});
      x.note = "g247H -> g247G";
      w.push_back(std::move(x));
    }
    {
      IsomorphismWitness x;
      x.name = "GR-to-247K";
      x.source = "g247K-GR";
      x.basis = {"b", "-a+b", "e", "c", "f", "d", "-g"};
      x.target = "g247K";
      x.samples = {ParameterAssignment{}};
      x.note = "the algebra claimed rigid elsewhere is g247K";
      w.push_back(std::move(x));
    }
    {
      IsomorphismWitness x;
      x.name = "247H-to-247K-curve";
      x.source = "g247H";
      x.basis = {"-ia", "-it^2(a-b)", "tc", "t^2d", "-ite", "-it^2f", "t^3g"};
      x.target = "curve-247K(t)";
      x.params = {"t"};
      x.excluded = {{"t", Rational(0)}};
      x.samples = t_samples;
      x.limit_target = "g247K";
      x.limit = point({{"t", "0"}});
      x.note = "g247H -> g247K over Q(i); g247K is not rigid";
      w.push_back(std::move(x));
    }
    {
      IsomorphismWitness x;
      x.name = "137B-to-137A-curve";
      x.source = "g137B";
      x.basis = {"a", "t^2b", "c", "t^2d", "t^2e", "t^2f", "t^2g"};
      x.target = "curve-137A(t)";
      x.params = {"t"};
      x.excluded = {{"t", Rational(0)}};
      x.samples = t_samples;
      x.limit_target = "g137A";
      x.limit = point({{"t", "0"}});
      x.derived = true;
      x.note = "g137B -> g137A by rescaling";
      w.push_back(std::move(x));
    }
    {
      IsomorphismWitness x;
      x.name = "137B1-to-137A1-curve";
      x.source = "g137B1";
      x.basis = {"a", "b", "tc", "td", "te", "tf", "tg"};
      x.target = "curve-137A1(t)";
      x.params = {"t"};
      x.excluded = {{"t", Rational(0)}};
      x.samples = t_samples;
      x.limit_target = "g137A1";
      x.limit = point({{"t", "0"}});
      x.derived = true;
      x.note = "g137B1 -> g137A1 by rescaling";
      w.push_back(std::move(x));
    }
    return w;
  }();
  return list;
}

const IsomorphismWitness& witness(std::string_view name) {
  for (const auto& w : witnesses()) {
    if (w.name == name) return w;
  }
  throw UnknownAlgebra("unknown witness '" + std::string(name) + "'");
}

template <class F>
std::vector<std::string> table_diff(const StructureConstants<F>& got, const StructureConstants<F>& expected) {
  if (got.dim() != expected.dim()) return {"dimensions differ"};
  std::vector<std::string> diffs;
  const std::size_t n = got.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool same = true;
      for (std::size_t k = 0; k < n && same; ++k) same = got.upper(i, j, k) == expected.upper(i, j, k);
      if (same) continue;
      std::string pair = n <= 26 ? letter(i) + letter(j) : std::to_string(i + 1) + "," + std::to_string(j + 1);
      diffs.push_back("[" + pair + "]: got " + bracket_rhs(got, i, j) + ", expected " + bracket_rhs(expected, i, j));
    }
  }
  return diffs;
}

template std::vector<std::string> table_diff<Rational>(const StructureConstants<Rational>&,
                                                       const StructureConstants<Rational>&);
template std::vector<std::string> table_diff<Gaussian>(const StructureConstants<Gaussian>&,
                                                       const StructureConstants<Gaussian>&);

WitnessReport verify_witness(const Catalog& catalog, const IsomorphismWitness& w, const ParameterAssignment& at) {
  if (!w.valid_at(at)) {
    throw std::invalid_argument("witness " + w.name + " is not valid at " + format_assignment(at));
  }
  ParameterAssignment source_at = at;
  for (const auto& [k, v] : w.source_fixed) source_at[k] = v;
  const StructureConstants<Gaussian> source = catalog.eval<Gaussian>(w.source, source_at);
  const std::size_t n = source.dim();
  if (w.basis.size() != n) throw DimensionMismatch("witness basis has wrong length");

  std::vector<Gaussian> values;
  for (const auto& p : w.params) values.push_back(at.at(p).gaussian());
  std::vector<Vector<Gaussian>> columns;
  for (const auto& expr : w.basis) {
    Vector<Gaussian> col;
    for (const auto& coord : parse_vector_expression(expr, n, w.params)) col.push_back(coord.evaluate(values));
    columns.push_back(std::move(col));
  }
  const auto p = ExactMatrix<Gaussian>::from_columns(columns, n);
  const StructureConstants<Gaussian> rebased = change_basis(source, p);
  const StructureConstants<Gaussian> target = catalog.eval<Gaussian>(w.target, at);

  WitnessReport r;
  r.witness = w.name;
  r.point = format_assignment(at);
  r.diffs = table_diff(rebased, target);
  r.ok = r.diffs.empty();
  return r;
}

DegenerationReport verify_degeneration(const Catalog& catalog, std::string_view family,
                                       const ParameterAssignment& limit, std::string_view target) {
  DegenerationReport r;
  const StructureConstants<Gaussian> at_limit = catalog.eval<Gaussian>(family, limit);
  const StructureConstants<Gaussian> goal = catalog.eval<Gaussian>(target);
  r.diffs = table_diff(at_limit, goal);
  if (r.diffs.empty()) {
    r.ok = true;
    r.method = "same table";
    return r;
  }
  for (const auto& w : witnesses()) {
    if (normalize_name(w.source) != normalize_name(family) || normalize_name(w.target) != normalize_name(target)) {
      continue;
    }
    bool consistent = true;
    for (const auto& [k, v] : w.source_fixed) {
      auto it = limit.find(k);
      if (it != limit.end() && !(it->second == v)) consistent = false;
    }
    if (!consistent) continue;
    ParameterAssignment at;
    for (const auto& p : w.params) {
      if (limit.contains(p)) at[p] = limit.at(p);
    }
    if (!w.valid_at(at)) continue;
    WitnessReport wr = verify_witness(catalog, w, at);
    r.ok = wr.ok;
    r.method = "witness " + w.name;
    r.diffs = wr.diffs;
    return r;
  }
  r.method = "no witness";
  return r;
}

}  // namespace nilrigid
