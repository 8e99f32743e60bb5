#pragma once

#include <string>
#include <vector>

#include "ctt/chartab.hpp"
#include "ctt/permgroup.hpp"

namespace oracle {

// Character table of a small group computed by elementary brute force:
// element list by raw closure, conjugacy classes by conjugating every
// element with every element, class matrices from counted structure
// constants, common eigenvectors by scanning every eigenvalue of one
// central combination over F_p, degrees and values lifted by discrete
// Fourier sums, and the finished table certified against both exact
// orthogonality relations before it is returned.  Shares no computation
// with the library beyond permutation composition and cyclotomic
// arithmetic on the final values.
struct OracleResult {
    ctt::chartab::CharacterTable table;
    std::vector<int> squares;  // class of rep^2, one entry per class
};

// Throws std::runtime_error when the order exceeds `max_order` or any
// internal consistency check fails.
OracleResult brute_force_table(int degree,
                               const std::vector<ctt::permgroup::Permutation>& generators,
                               const std::string& name, std::int64_t max_order = 200);

}  // namespace oracle
