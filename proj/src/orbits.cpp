#include "ctt/orbits.hpp"

#include <algorithm>
#include <map>

#include "ctt/errors.hpp"

namespace ctt::permgroup {

OrbitPartition orbit_partition(int item_count,
                               const std::vector<std::vector<int>>& actions) {
    for (const auto& a : actions)
        if (static_cast<int>(a.size()) != item_count)
            throw structural_error("action length does not match item count");

    OrbitPartition out;
    out.orbit_of.assign(static_cast<size_t>(item_count), -1);
    for (int start = 0; start < item_count; ++start) {
        if (out.orbit_of[static_cast<size_t>(start)] >= 0) continue;
        int idx = static_cast<int>(out.orbits.size());
        std::vector<int> orbit{start};
        out.orbit_of[static_cast<size_t>(start)] = idx;
        for (size_t qi = 0; qi < orbit.size(); ++qi) {
            int x = orbit[qi];
            for (const auto& a : actions) {
                int y = a[static_cast<size_t>(x)];
                if (y < 0 || y >= item_count)
                    throw structural_error("action image out of range");
                if (out.orbit_of[static_cast<size_t>(y)] < 0) {
                    out.orbit_of[static_cast<size_t>(y)] = idx;
                    orbit.push_back(y);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        out.representatives.push_back(orbit.front());
        out.orbits.push_back(std::move(orbit));
    }
    return out;
}

OrbitPartition conjugation_orbits(const PermutationGroup& acting,
                                  const std::vector<SubgroupHandle>& items) {
    // Identify each subgroup by its sorted element list so conjugates can be
    // matched back to list positions.
    std::map<std::vector<Permutation>, int> position;
    std::vector<std::vector<Permutation>> element_sets;
    for (size_t i = 0; i < items.size(); ++i) {
        const auto& els = items[i].group.elements();
        if (!position.emplace(els, static_cast<int>(i)).second)
            throw structural_error("duplicate subgroup in orbit computation");
        element_sets.push_back(els);
    }

    std::vector<std::vector<int>> actions;
    for (const auto& g : acting.generators()) {
        std::vector<int> act(items.size());
        for (size_t i = 0; i < items.size(); ++i) {
            std::vector<Permutation> conj;
            conj.reserve(element_sets[i].size());
            for (const auto& x : element_sets[i])
                conj.push_back(x.conjugated_by(g));
            std::sort(conj.begin(), conj.end());
            auto it = position.find(conj);
            if (it == position.end())
                throw structural_error(
                    "conjugation leaves the given subgroup list");
            act[i] = it->second;
        }
        actions.push_back(std::move(act));
    }
    return orbit_partition(static_cast<int>(items.size()), actions);
}

}  // namespace ctt::permgroup
