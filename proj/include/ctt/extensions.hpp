#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctt/bigint.hpp"
#include "ctt/chartab.hpp"
#include "ctt/permgroup.hpp"
#include "ctt/verify.hpp"

namespace ctt::extensions {

// ------------------------------------------------------- group utilities ---

// Derived subgroup of g: the normal closure of the generator commutators.
permgroup::PermutationGroup derived_subgroup(const permgroup::PermutationGroup& g);

// Invariant factors d_1 | d_2 | ... | d_k (ascending, product = |g|) of an
// abelian group. Throws precondition_error when g is not abelian, and
// capacity_error when |g| exceeds the bound.
std::vector<BigInt> abelian_invariants(const permgroup::PermutationGroup& g,
                                       const BigInt& bound = BigInt(10000));

// Invariant factors of g / g'. Empty for perfect groups.
std::vector<BigInt> abelianization_invariants(
    const permgroup::PermutationGroup& g, const BigInt& bound = BigInt(10000));

// Short structural name for a small group: "1" for the trivial group,
// "C6" / "C2xC4" (invariant factors) for abelian groups, the catalogued
// simple-group name (e.g. "A5") when the group is simple and recognized,
// and "[order]" as the fallback for anything else.
std::string structure_name(const permgroup::PermutationGroup& g);

// ---------------------------------------------------- bicyclic extensions ---

// One subquotient U/K of G with K <= M <= N <= U <= G, U/N and M/K cyclic.
struct SubquotientDescriptor {
    permgroup::SubgroupHandle U;
    permgroup::SubgroupHandle K;
    std::string label;       // "[M:K].(N/M name).[U:N]" with trivial parts omitted
    BigInt quotient_order;   // |U/K|
};

// All subquotients U/K sandwiching N/M by cyclic layers: N <= U <= G with
// U/N cyclic, and K <= M with M/K cyclic and K normal in U. Requires M and
// N normal in G with M <= N, [G:N] <= 10^4 and |M| <= 10^3 (capacity_error
// otherwise, precondition_error when the normal sandwich fails). Returns
// one representative per orbit of the simultaneous G-conjugation action on
// the pairs (U, K), choosing the canonically least member of each orbit,
// and re-checks every defining condition on each representative before
// returning (computation_error on an internal violation). The degenerate
// instance M = 1, N = G yields the single descriptor U = G, K = 1.
std::vector<SubquotientDescriptor> enumerate_bicyclic_subquotients(
    const permgroup::PermutationGroup& g, const permgroup::SubgroupHandle& m,
    const permgroup::SubgroupHandle& n);

// The subquotient U/K itself, as a permutation group on the cosets of K.
permgroup::PermutationGroup subquotient_group(const SubquotientDescriptor& d);

// Partition of descriptor indices into isomorphism classes of the U/K.
struct IsomorphismPartition {
    // Cells sorted by least member; each cell ascending.
    std::vector<std::vector<int>> cells;
    // Pairs whose isomorphism the search declined to decide within budget
    // (same invariants, exhaustive search too large). Kept in separate cells.
    std::vector<std::pair<int, int>> undecided;

    std::string str() const;  // one line per cell, plus undecided pairs
};

// Groups descriptors by isomorphism of their quotients U/K: first by
// order, abelianization invariants and recomputed class profile, then by
// exhaustive generator-image search. Quotient orders must be <= 10^4
// (capacity_error); pairs beyond the search budget are reported as
// undecided rather than guessed.
IsomorphismPartition dedup_isomorphic(
    const std::vector<SubquotientDescriptor>& descriptors);

// --------------------------------------------------- verification pipeline ---

// Four-step recomputation check of a stored character table:
//   (1) classes of the faithful permutation representation,
//   (2) character table by Dixon-Schneider,
//   (3) derived structural data (order, class profile, derived subgroup,
//       centre, composition shape) compared against the reference table,
//   (4) permutation equivalence with power maps against the reference.
// Step (4) runs only when (1)-(3) succeeded. Disagreements are recorded in
// the report, never thrown; only capacity overruns escape as errors.
struct PipelineReport {
    std::string group_name;  // reference table's name
    BigInt group_order = 1;
    int class_count = 0;
    bool step1_ok = false;
    bool step2_ok = false;
    bool step3_ok = false;
    bool step4_run = false;
    bool step4_ok = false;
    std::string discrepancy;  // first mismatch, empty when agreeing
    chartab::CompositionShapeReport shape;  // of the recomputed table
    std::optional<verify::EquivalenceWitness> witness;

    bool agrees() const {
        return step1_ok && step2_ok && step3_ok && step4_run && step4_ok;
    }
    std::string str() const;  // "key: value" lines, deterministic
};

PipelineReport pipeline_verify(const permgroup::PermutationGroup& g,
                               const chartab::CharacterTable& reference,
                               const chartab::ComputeOptions& opt = {});

}  // namespace ctt::extensions
