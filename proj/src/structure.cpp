#include "nilrigid/structure.hpp"

namespace nilrigid {

StructureConstants<Gaussian> promote(const StructureConstants<Rational>& mu) {
  std::vector<Gaussian> coords;
  coords.reserve(mu.cochain_dim());
  for (const auto& c : mu.coordinates()) coords.emplace_back(c);
  return StructureConstants<Gaussian>::from_coordinates(mu.dim(), coords, mu.name());
}

StructureConstants<Rational> to_rational(const StructureConstants<Gaussian>& mu) {
  std::vector<Rational> coords;
  coords.reserve(mu.cochain_dim());
  for (const auto& c : mu.coordinates()) coords.push_back(to_rational(c));
  return StructureConstants<Rational>::from_coordinates(mu.dim(), coords, mu.name());
}

}  // namespace nilrigid
