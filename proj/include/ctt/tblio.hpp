#pragma once

#include <string>
#include <vector>

#include "ctt/chartab.hpp"
#include "ctt/permutation.hpp"

namespace ctt::tblio {

// Parses a character-table document (grammar in docs/FORMAT.md). Every
// dimensional invariant is enforced here: counts match NCLASSES, the value
// block is square, exactly one class has element order 1, degrees are
// positive integers, power maps are keyed by primes and point at valid
// classes, and the class sizes sum to the order. Failures raise
// parse_error with a 1-based line and column.
chartab::CharacterTable parse_table(const std::string& text);

// Canonical document for a table: fixed field order, "\n" line ends,
// power maps in ascending prime order, values rendered in E(n) syntax.
// Byte-identical output for equal tables.
std::string serialize_table(const chartab::CharacterTable& t);

// A permutation group presented by generators in cycle notation.
// Points are 1-based in files and 0-based in memory.
struct GroupDocument {
    std::string name;
    int degree = 0;
    std::vector<permgroup::Permutation> generators;

    bool operator==(const GroupDocument& o) const = default;
};

GroupDocument parse_group(const std::string& text);
std::string serialize_group(const GroupDocument& g);

// Single cyclotomic value in E(n) syntax, e.g. "2*E(7)^3-3*E(7)^5".
// Exposed for tests and the mutation CLI's --param values.
cyclo::Cyclo parse_value(const std::string& token);

}  // namespace ctt::tblio
