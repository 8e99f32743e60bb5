#include "ctt/permutation.hpp"

#include <algorithm>
#include <numeric>

namespace ctt::permgroup {

Permutation::Permutation(int degree) : img_(static_cast<size_t>(degree)) {
    if (degree < 0) throw structural_error("negative degree");
    std::iota(img_.begin(), img_.end(), 0);
}

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size(), 0);
    for (int v : img_) {
        if (v < 0 || static_cast<size_t>(v) >= img_.size() || seen[v])
            throw structural_error("image vector is not a bijection");
        seen[v] = 1;
    }
}

Permutation Permutation::from_cycles(
    int degree, const std::vector<std::vector<int>>& cycles) {
    Permutation p(degree);
    std::vector<char> used(static_cast<size_t>(degree), 0);
    for (const auto& cyc : cycles) {
        for (size_t i = 0; i < cyc.size(); ++i) {
            int a = cyc[i];
            int b = cyc[(i + 1) % cyc.size()];
            if (a < 0 || a >= degree)
                throw structural_error("cycle point out of range");
            if (used[a]) throw structural_error("point repeated in cycles");
            used[a] = 1;
            p.img_[static_cast<size_t>(a)] = b;
        }
    }
    // re-validate: overlapping cycles could break bijectivity
    return Permutation(std::move(p.img_));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < degree(); ++i)
        if (img_[static_cast<size_t>(i)] != i) return false;
    return true;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
    if (degree() != rhs.degree())
        throw structural_error("degree mismatch in product");
    Permutation r(degree());
    for (int i = 0; i < degree(); ++i)
        r.img_[static_cast<size_t>(i)] = rhs.img_[static_cast<size_t>(
            img_[static_cast<size_t>(i)])];
    return r;
}

Permutation Permutation::inverse() const {
    Permutation r(degree());
    for (int i = 0; i < degree(); ++i)
        r.img_[static_cast<size_t>(img_[static_cast<size_t>(i)])] = i;
    return r;
}

Permutation Permutation::power(std::int64_t k) const {
    std::int64_t n = order();
    k %= n;
    if (k < 0) k += n;
    Permutation acc(degree());
    Permutation base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

Permutation Permutation::conjugated_by(const Permutation& g) const {
    return g.inverse() * (*this) * g;
}

std::int64_t Permutation::order() const {
    std::int64_t ord = 1;
    for (const auto& cyc : cycles())
        ord = std::lcm(ord, static_cast<std::int64_t>(cyc.size()));
    return ord;
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(img_.size(), 0);
    for (int i = 0; i < degree(); ++i) {
        if (seen[i] || img_[static_cast<size_t>(i)] == i) continue;
        std::vector<int> cyc;
        int x = i;
        while (!seen[x]) {
            seen[x] = 1;
            cyc.push_back(x);
            x = img_[static_cast<size_t>(x)];
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

size_t Permutation::hash() const {
    size_t h = 1469598103934665603ull;
    for (int v : img_) {
        h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace ctt::permgroup
