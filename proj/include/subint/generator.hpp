#pragma once

#include <string>
#include <vector>

#include "subint/json_io.hpp"
#include "subint/rng.hpp"

namespace subint {

enum class Profile {
  BoxDomains,
  IndicatorHeavy,
  AffineOnly,
  Kinked,
  RestrictedSubspace,
};

Profile profile_from_name(const std::string& name);
std::string profile_name(Profile p);

// Deterministic-from-seed instance document (instance plus a queries
// array) with d <= 4, <= 6 atoms, <= 5 pieces, coefficients in [-4, 4]
// with denominators <= 8.
Json generate_instance_document(std::uint64_t seed, Profile profile);

// The assembled instance alone (the in-memory side of the generator,
// shared by the property and acceptance suites).
IntegralInstance generate_instance(SplitMix& rng, Profile profile,
                                   int max_dim = 4, int max_atoms = 6);

// A point of the domain suited to subdifferential queries: the anchor the
// generator built the instance around, occasionally moved to a domain
// vertex to exercise boundary normal sets.
QVec pick_query_point(SplitMix& rng, const IntegralInstance& inst);

}  // namespace subint
