#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctt/chartab.hpp"
#include "ctt/permgroup.hpp"

namespace ctt::verify {

// One internal-consistency check of a character table.
struct CheckResult {
    std::string name;
    bool passed = true;
    std::string witness;  // first failure, or a note (e.g. a skipped bound)
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    bool all_passed() const;
    const CheckResult* find(const std::string& name) const;
    std::string str() const;  // one "name: pass|FAIL ..." line per check
};

// Runs, in order: shape, degree_sum, degree_divisibility, row_orthogonality,
// column_orthogonality, power_map_coherence, galois_stability. All tests are
// exact; failures are report content, never exceptions. If the shape check
// fails the remaining checks are not run (they presuppose a square table).
// Tables produced by compute_character_table always pass everything.
VerificationReport check_table(const chartab::CharacterTable& t);

// A permutation equivalence between two tables: row i of A is row
// row_perm[i] of B and class k of A is class col_perm[k] of B.
struct EquivalenceWitness {
    std::vector<int> row_perm;
    std::vector<int> col_perm;
};

// Complete search for a permutation equivalence from a to b. With
// use_power_maps the witness must transport class sizes, element orders,
// the group order and every stored power map (key sets must agree);
// without it only the value matrices are compared. The returned witness
// has the lexicographically least column permutation, and for it the
// least row permutation, so the result is deterministic.
std::optional<EquivalenceWitness> tables_equivalent(
    const chartab::CharacterTable& a, const chartab::CharacterTable& b,
    bool use_power_maps = true);

enum class MutationKind {
    sign_flip,         // negate one value
    value_change,      // replace one value
    extension_swap,    // swap two rows on a set of columns
    class_split_merge, // split one class in two, or merge two classes
    power_map_change,  // redirect one power-map image
    irrationality_twist  // multiply a row by a root of unity on some columns
};

// Which table entries a mutation touches. Fields are read per kind:
//   sign_flip:           row, column
//   value_change:        row, column, value
//   extension_swap:      row, row2, columns (empty = all non-identity)
//   class_split_merge:   column (split) or column + column2 (merge into column)
//   power_map_change:    prime, column, column2 (new image of column)
//   irrationality_twist: row, root_order, root_exponent,
//                        columns (empty = all non-identity)
struct MutationSpec {
    MutationKind kind = MutationKind::sign_flip;
    int row = -1;
    int row2 = -1;
    int column = -1;
    int column2 = -1;
    std::vector<int> columns;
    std::int64_t prime = 2;
    std::int64_t root_order = 0;
    std::int64_t root_exponent = 1;
    cyclo::Cyclo value;
};

// Returns a mutated copy of t. Out-of-range targets, a merge of a class
// with itself, a split of an odd-size class, or a power-map change for an
// unstored prime raise precondition_error. A sign flip of a zero value
// returns the table unchanged.
chartab::CharacterTable inject_mutation(const chartab::CharacterTable& t,
                                        const MutationSpec& m);

// How hard a defective table is to detect, given the group it claims to
// describe:
//   1 — check_table already fails (internally inconsistent);
//   2 — internally consistent, but class count / sizes / element orders
//       (or basic shape) disagree with the recomputed table;
//   3 — consistent and metadata-compatible, but not permutation equivalent
//       to the recomputed table (power maps included);
//   0 — permutation equivalent to the recomputed table: not a defect.
int classify_detection(const permgroup::PermutationGroup& original_group,
                       const chartab::CharacterTable& mutant,
                       const chartab::ComputeOptions& opt = {});

}  // namespace ctt::verify
