#pragma once

#include <vector>

#include "ctt/errors.hpp"
#include "ctt/permgroup.hpp"

namespace ctt::permgroup {

// Orbit partition of items {0..n-1} under bijections given as index maps.
// Deterministic: orbits are discovered from the least unvisited index and
// listed in that order; each orbit's representative is its least index.
struct OrbitPartition {
    std::vector<int> orbit_of;          // item -> orbit index
    std::vector<std::vector<int>> orbits;  // each sorted ascending
    std::vector<int> representatives;   // least item of each orbit
};

OrbitPartition orbit_partition(int item_count,
                               const std::vector<std::vector<int>>& actions);

// Conjugation action of the generators of `acting` on a list of subgroups of
// a common ambient group. Subgroups are identified by their element sets; a
// conjugate falling outside the list is a structural error.
OrbitPartition conjugation_orbits(const PermutationGroup& acting,
                                  const std::vector<SubgroupHandle>& items);

}  // namespace ctt::permgroup
