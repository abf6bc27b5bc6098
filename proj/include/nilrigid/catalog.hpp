#pragma once

// Registry of named structure tables, parametric families, change-of-basis
// witnesses between them, and an optional data pack of further tables.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nilrigid/errors.hpp"
#include "nilrigid/structure.hpp"
#include "nilrigid/table.hpp"

namespace nilrigid {

enum class Source { Builtin, DataPack };

struct AlgebraRecord {
  std::string name;
  std::vector<std::string> aliases;
  std::size_t dim = 0;
  Field field = Field::Q;
  std::string table;
  std::vector<std::string> params;
  Source source = Source::Builtin;
  std::string note;
  std::optional<std::size_t> step;              // nilpotency step when known
  std::vector<ParameterAssignment> samples;     // default points for families

  bool is_family() const { return !params.empty(); }
};

/// Lowercases and drops decoration so "g_{5,3}", "g5,3" and "g₅,₃" agree.
std::string normalize_name(std::string_view name);

/// Parses "r=1,t=1/2" or "1,1/2" (positional, in `symbols` order).
ParameterAssignment parse_assignment(std::string_view text, const std::vector<std::string>& symbols = {});
std::string format_assignment(const ParameterAssignment& at);

struct PackInfo {
  std::filesystem::path root;
  std::string name;
  std::string citation;
  std::string checksum;  // FNV-1a 64 over the listed files, hex
  std::size_t records = 0;
};

class Catalog {
 public:
  /// Tables written out in full in the source literature.
  static Catalog builtin();
  /// builtin() plus the pack at `root` (directory with manifest.json).
  static Catalog with_pack(const std::filesystem::path& root);
  /// with_pack($NILRIGID_DATA_PACK) when the variable is set, else builtin().
  static Catalog from_environment();

  bool has(std::string_view name) const;
  /// Throws UnknownAlgebra, or ExternalDataRequired for pack-only names.
  const AlgebraRecord& get(std::string_view name) const;
  std::vector<const AlgebraRecord*> records() const;
  const std::optional<PackInfo>& pack() const { return pack_; }

  ParametricTable parametric(std::string_view name) const;
  template <class F>
  StructureConstants<F> eval(std::string_view name, const ParameterAssignment& at = {}) const;
  /// Field chosen from the table and the parameter values.
  AnyStructure eval_any(std::string_view name, const ParameterAssignment& at = {}) const;

  void add(AlgebraRecord record);

  /// Names whose tables are cited but not written out; served by a pack.
  static const std::vector<std::string>& pack_only_names();

 private:
  std::vector<AlgebraRecord> records_;
  std::map<std::string, std::size_t> index_;
  std::optional<PackInfo> pack_;
};

/// Loads a pack directory into `catalog`. Throws ParseError / Error.
PackInfo load_pack(Catalog& catalog, const std::filesystem::path& root);

// ---------------------------------------------------------------- cocycles

/// The two cocycles on g_{5,3} spanning its 3-nil cohomology.
StructureConstants<Rational> nu1();
StructureConstants<Rational> nu2();

// --------------------------------------------------------------- witnesses

/// source (at source_fixed + point) rewritten in `basis` equals target at the
/// same point. Basis entries are vector expressions in `params`.
struct IsomorphismWitness {
  std::string name;
  std::string source;
  ParameterAssignment source_fixed;
  std::vector<std::string> basis;
  std::string target;
  std::vector<std::string> params;
  std::vector<std::pair<std::string, Rational>> excluded;  // invalid values
  std::vector<ParameterAssignment> samples;
  /// Target record reached at `limit` (e.g. t = 0), if any.
  std::optional<std::string> limit_target;
  ParameterAssignment limit;
  bool derived = false;  // constructed here rather than quoted
  std::string note;

  bool valid_at(const ParameterAssignment& at) const;
};

const std::vector<IsomorphismWitness>& witnesses();
const IsomorphismWitness& witness(std::string_view name);

struct WitnessReport {
  std::string witness;
  std::string point;
  bool ok = false;
  std::vector<std::string> diffs;  // "[a,b]: got ..., expected ..."
};

/// Throws SingularMatrix, std::invalid_argument outside the validity set.
WitnessReport verify_witness(const Catalog& catalog, const IsomorphismWitness& w, const ParameterAssignment& at);

/// Lists differing brackets of two tables of the same dimension.
template <class F>
std::vector<std::string> table_diff(const StructureConstants<F>& got, const StructureConstants<F>& expected);

struct DegenerationReport {
  bool ok = false;
  std::string method;  // "same table" or the witness used
  std::vector<std::string> diffs;
};

/// family at `limit` equals target literally, or is carried onto it by a
/// witness whose source is the family.
DegenerationReport verify_degeneration(const Catalog& catalog, std::string_view family,
                                       const ParameterAssignment& limit, std::string_view target);

}  // namespace nilrigid
