#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ctt/errors.hpp"

namespace ctt::permgroup {

// Permutation of {0, ..., degree-1}, stored as an image vector.
//
// Products compose left to right: (a * b)(x) = b(a(x)), so x^(ab) = (x^a)^b.
class Permutation {
public:
    explicit Permutation(int degree = 0);
    explicit Permutation(std::vector<int> images);

    // cycles hold 0-based points; points absent from every cycle are fixed.
    static Permutation from_cycles(int degree,
                                   const std::vector<std::vector<int>>& cycles);

    int degree() const { return static_cast<int>(img_.size()); }
    int operator[](int x) const { return img_[static_cast<size_t>(x)]; }
    const std::vector<int>& images() const { return img_; }

    bool is_identity() const;

    Permutation operator*(const Permutation& rhs) const;
    Permutation inverse() const;
    Permutation power(std::int64_t k) const;
    // g.inverse() * (*this) * g
    Permutation conjugated_by(const Permutation& g) const;

    std::int64_t order() const;
    std::vector<std::vector<int>> cycles() const;  // nontrivial cycles, sorted

    bool operator==(const Permutation& o) const { return img_ == o.img_; }
    bool operator!=(const Permutation& o) const { return img_ != o.img_; }
    bool operator<(const Permutation& o) const { return img_ < o.img_; }
    bool operator<=(const Permutation& o) const { return img_ <= o.img_; }
    bool operator>(const Permutation& o) const { return img_ > o.img_; }
    bool operator>=(const Permutation& o) const { return img_ >= o.img_; }

    size_t hash() const;

private:
    std::vector<int> img_;
};

struct PermutationHash {
    size_t operator()(const Permutation& p) const { return p.hash(); }
};

}  // namespace ctt::permgroup
