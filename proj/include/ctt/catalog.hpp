#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ctt/bigint.hpp"

namespace ctt::catalog {

struct SimpleGroupEntry {
    BigInt order;
    std::string name;
    // Sorted centralizer-order multiset, stored only for names whose order
    // is shared with a non-isomorphic simple group, to tell the two apart.
    std::vector<BigInt> centralizer_profile;
};

// All finite simple groups of order <= 10^7, one entry per isomorphism
// class (so e.g. the order-60 entry is listed once, as A5), sorted by
// order then name.
const std::vector<SimpleGroupEntry>& simple_groups();

// Entries of exactly this order; empty when none (certifying the order is
// not that of a simple group, since the catalog bound is 10^7).
std::vector<SimpleGroupEntry> simple_groups_of_order(const BigInt& order);

// Upper bound the catalog is complete to.
const BigInt& catalog_bound();

}  // namespace ctt::catalog
