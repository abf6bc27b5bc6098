#include "nilrigid/cohomology.hpp"

namespace nilrigid {

std::string Constraint::str() const {
  switch (kind) {
    case Kind::J:
      return "J";
    case Kind::JNk:
      return "J+N" + std::to_string(k);
    case Kind::JSNk:
      return "J+SN" + std::to_string(k);
  }
  return "?";
}

Json to_json(const CohomologyReport& r) {
  Json j;
  j["algebra"] = r.algebra;
  j["k"] = r.k;
  j["z"] = r.z;
  j["b"] = r.b;
  j["h"] = r.h;
  j["rigid_certificate"] = r.rigid_certificate;
  j["orbit_dim"] = r.orbit_dim;
  return j;
}

Json to_json(const ExactnessReport& r) {
  Json j;
  j["algebra"] = r.algebra;
  j["constraint"] = r.constraint;
  j["free_params"] = r.free_params;
  Json point = Json::object();
  for (const auto& [s, v] : r.point) point[s] = v;
  j["point"] = point;
  j["dims"] = {r.source_dim, r.middle_dim, r.target_dim};
  j["rank_dF"] = r.rank_dF;
  j["kernel_dim_dG"] = r.kernel_dim_dG;
  j["contained"] = r.contained;
  j["exact"] = r.exact;
  return j;
}

}  // namespace nilrigid
