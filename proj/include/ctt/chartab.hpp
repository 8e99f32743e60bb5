#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ctt/bigint.hpp"
#include "ctt/cyclo.hpp"
#include "ctt/permgroup.hpp"

namespace ctt::chartab {

// Ordinary character table: rows are irreducible characters, columns are
// conjugacy classes. Computed tables keep columns in the canonical class
// order and rows sorted by (degree, then value tuple under the canonical
// cyclotomic ordering). Parsed tables carry whatever the file stored;
// structural soundness is the verify module's job.
struct CharacterTable {
    std::string group_name;
    BigInt order = 1;
    std::vector<BigInt> class_sizes;
    std::vector<std::int64_t> element_orders;
    std::map<std::int64_t, std::vector<int>> power_maps;  // prime -> class map
    std::vector<std::vector<cyclo::Cyclo>> values;
    int identity_class = 0;

    int class_count() const { return static_cast<int>(class_sizes.size()); }
    int row_count() const { return static_cast<int>(values.size()); }
    const cyclo::Cyclo& value(int row, int col) const {
        return values[static_cast<size_t>(row)][static_cast<size_t>(col)];
    }
    std::int64_t exponent() const;  // lcm of the element orders
    // Degree of a row = its value on the identity class; throws
    // precondition_error when that value is not a positive integer.
    BigInt degree(int row) const;
    std::vector<BigInt> centralizer_orders() const;  // order / size per class

    bool operator==(const CharacterTable& o) const = default;
};

struct ComputeOptions {
    BigInt max_order = BigInt(1000000);
    int max_classes = 512;
    int threads = 1;
    std::uint64_t seed = 0;  // conjugacy class search only; never the output
};

// Character table by the Dixon-Schneider method: splits the common
// eigenspaces of the class matrices over a prime field F_p with p = 1 mod
// exponent and p > 2*sqrt(|G|), recovers degrees from the eigenvectors,
// lifts values through discrete Fourier sums over the e-th roots of unity
// in F_p, and certifies the result against both orthogonality relations
// before returning it.
CharacterTable compute_character_table(const permgroup::PermutationGroup& g,
                                       const ComputeOptions& opt = {});

// Same, reusing an already-computed class set (must be the canonical one
// for g, i.e. produced by conjugacy_classes with classifier data).
CharacterTable compute_character_table(
    const permgroup::PermutationGroup& g,
    const permgroup::ConjugacyClassSet& classes, const ComputeOptions& opt = {});

// Class map k -> class of g_k^2. Uses the stored prime-2 power map when
// present; for tables of odd exponent it is derived by matching columns
// under the Galois automorphism x -> x^2. Throws precondition_error when
// neither path applies.
std::vector<int> squaring_map(const CharacterTable& t);

// Frobenius-Schur indicator of one row: (1/|G|) sum over classes of
// size_k * chi(square of g_k); must land in {-1, 0, +1}.
int fs_indicator(const CharacterTable& t, int row);
std::vector<int> fs_indicators(const CharacterTable& t);

// Columns where the row's value equals its degree.
std::vector<int> kernel_classes(const CharacterTable& t, int row);

struct DerivedSubgroupData {
    BigInt order = 1;             // sum of the class sizes below
    std::vector<int> classes;     // classes of the derived subgroup
    int linear_character_count = 0;
};
// Intersection of the kernels of all degree-1 rows.
DerivedSubgroupData derived_subgroup_data(const CharacterTable& t);

// Columns of central classes. Computed by both criteria — class size 1,
// and |chi(g)|^2 = chi(1)^2 for every row — which must agree
// (inconsistency_error otherwise).
std::vector<int> centre_classes(const CharacterTable& t);

// What the table reveals about the composition factors of its group.
struct CompositionShapeReport {
    bool abelian = false;
    bool perfect = false;
    std::vector<BigInt> derived_series_orders;  // |G|, |G'| (stationary if perfect)
    std::vector<std::string> factors;       // determined factors, e.g. C2, A5
    std::vector<std::string> undetermined;  // parts the table does not decide
    std::vector<std::string> notes;         // candidates, order coincidences
    bool ambiguous = false;

    std::string str() const;  // one line per field, deterministic
};
CompositionShapeReport identify_composition_shape(const CharacterTable& t);

}  // namespace ctt::chartab
