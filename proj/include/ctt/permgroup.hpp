#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ctt/bigint.hpp"
#include "ctt/permutation.hpp"

namespace ctt::permgroup {

// One level of a stabilizer chain: the orbit of the base point under the
// level's generators, plus a transversal element per orbit point.
struct ChainLevel {
    int base_point = -1;
    std::vector<int> orbit;                       // discovery order
    std::vector<Permutation> generators;          // generators of this level
    std::unordered_map<int, Permutation> transversal;  // point -> u with base^u = point
};

class StabilizerChain {
public:
    StabilizerChain() = default;
    StabilizerChain(int degree, const std::vector<Permutation>& gens);

    BigInt order() const;
    bool contains(const Permutation& p) const;
    const std::vector<ChainLevel>& levels() const { return levels_; }
    int degree() const { return degree_; }

    // Strips p through the chain; returns the residue (identity iff member).
    Permutation sift(const Permutation& p) const;

private:
    void extend(const Permutation& g, size_t level);
    void rebuild_orbit(size_t level);

    int degree_ = 0;
    std::vector<ChainLevel> levels_;
};

// Immutable permutation group. Generators are canonicalized on construction
// (identity dropped, duplicates removed, sorted), so everything derived from
// a group is independent of the order in which generators were supplied.
class PermutationGroup {
public:
    PermutationGroup() = default;
    PermutationGroup(int degree, std::vector<Permutation> generators);

    int degree() const;
    const std::vector<Permutation>& generators() const;
    const BigInt& order() const;
    bool contains(const Permutation& p) const;
    bool is_trivial() const { return order() == 1; }
    const StabilizerChain& chain() const;

    // All elements, sorted. Throws capacity_error above the bound.
    const std::vector<Permutation>& elements(
        const BigInt& bound = BigInt(1000000)) const;

    bool operator==(const PermutationGroup& o) const;  // same element set

private:
    struct Core;
    std::shared_ptr<const Core> core_;
};

// A subgroup presented inside an ambient group.
struct SubgroupHandle {
    PermutationGroup parent;
    PermutationGroup group;

    const BigInt& order() const { return group.order(); }
};

// Validates that every generator lies in parent.
SubgroupHandle make_subgroup(const PermutationGroup& parent,
                             std::vector<Permutation> generators);

bool is_normal(const PermutationGroup& g, const PermutationGroup& n);

struct ClassOptions {
    BigInt max_order = BigInt(1000000);
    std::uint64_t seed = 0;  // used only by the random search path
};

// Conjugacy classes in canonical order: sorted by (element order, class size,
// lexicographically least member). Class 0 is always the identity class.
class ConjugacyClassSet {
public:
    std::vector<Permutation> representatives;  // least member of each class
    std::vector<BigInt> sizes;
    std::vector<std::int64_t> element_orders;
    std::map<std::int64_t, std::vector<int>> power_maps;  // prime -> class map

    size_t count() const { return representatives.size(); }
    int identity_class() const { return 0; }
    std::int64_t exponent() const;

    // Index of the class containing x; requires classifier data.
    int class_of(const Permutation& x) const;
    bool has_classifier() const { return static_cast<bool>(members_); }
    const std::vector<Permutation>& class_members(int i) const;

private:
    friend ConjugacyClassSet conjugacy_classes(const PermutationGroup&,
                                               const ClassOptions&);
    std::shared_ptr<
        const std::unordered_map<Permutation, int, PermutationHash>>
        lookup_;
    std::shared_ptr<const std::vector<std::vector<Permutation>>> members_;
};

ConjugacyClassSet conjugacy_classes(const PermutationGroup& g,
                                    const ClassOptions& opt = {});

// Class map of x -> x^k for any k >= 0. Composes stored prime maps when
// possible and falls back to direct classification.
std::vector<int> power_map(const ConjugacyClassSet& c, std::int64_t k);

BigInt centralizer_order(const PermutationGroup& g, const ConjugacyClassSet& c,
                         int class_index);

// a[k] = #{(x, y) : x in class i, y in class j, x*y = z} for a fixed z in
// class k.
std::vector<std::int64_t> structure_constants(const PermutationGroup& g,
                                              const ConjugacyClassSet& c,
                                              int i, int j);

// Coset action of g on the right cosets of a normal subgroup.
struct QuotientMap {
    PermutationGroup quotient;
    std::vector<Permutation> coset_reps;  // index -> canonical representative

    // Group element mapping onto a given quotient element.
    Permutation lift(const Permutation& q) const;
    // Image of a group element in the coset action.
    Permutation project(const Permutation& g) const;

    PermutationGroup parent;
    PermutationGroup kernel;

private:
    friend QuotientMap quotient_map(const PermutationGroup&,
                                    const PermutationGroup&,
                                    const BigInt& max_index);
    std::shared_ptr<const std::unordered_map<Permutation, int, PermutationHash>>
        coset_index_;
    int coset_index_of(const Permutation& g) const;
};

QuotientMap quotient_map(const PermutationGroup& g, const PermutationGroup& n,
                         const BigInt& max_index = BigInt(10000));

PermutationGroup quotient(const PermutationGroup& g, const SubgroupHandle& n,
                          const BigInt& max_index = BigInt(10000));

// All cyclic subgroups (trivial one included), deterministically ordered by
// (order, generator). Requires |g| within bound.
std::vector<SubgroupHandle> cyclic_subgroups(
    const PermutationGroup& g, const BigInt& bound = BigInt(10000));

}  // namespace ctt::permgroup
