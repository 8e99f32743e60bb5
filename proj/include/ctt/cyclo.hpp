#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "ctt/bigint.hpp"

namespace ctt::cyclo {

// Element of a cyclotomic field with exact rational coefficients.
//
// The value is stored against the integral basis of Q(zeta_n) whose members
// are the roots of unity E(n)^j for the exponent set J(n) built per prime
// power q = p^nu dividing n:
//   - odd p:  j's q-part is k*p^(nu-1) + s with k in [1, p-1] and
//             |s| <= (p^(nu-1) - 1) / 2,
//   - p = 2:  j's q-part lies in [0, 2^(nu-1) - 1],
// combined across primes by j = sum over p of (n/q_p') * j_p mod n.
// The stored conductor is always minimal and never 2 mod 4, zero
// coefficients are erased, so equal values have identical representations.
class Cyclo {
public:
    Cyclo() = default;  // zero
    Cyclo(int v) : Cyclo(BigRat(v)) {}
    Cyclo(std::int64_t v) : Cyclo(BigRat(v)) {}
    Cyclo(const BigInt& v) : Cyclo(BigRat(v)) {}
    explicit Cyclo(const BigRat& v);

    // E(n)^k, reduced to its minimal conductor.
    static Cyclo root_of_unity(std::int64_t n, std::int64_t k = 1);

    std::int64_t conductor() const { return conductor_; }
    const std::map<std::int64_t, BigRat>& coefficients() const {
        return coeffs_;
    }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_rational() const { return conductor_ == 1; }
    bool is_integer() const;
    BigRat rational_value() const;  // throws unless rational
    BigInt integer_value() const;   // throws unless integer

    Cyclo operator-() const;
    Cyclo operator+(const Cyclo& o) const;
    Cyclo operator-(const Cyclo& o) const;
    Cyclo operator*(const Cyclo& o) const;
    Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
    Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

    // Multiplicative inverse via the product of Galois conjugates.
    Cyclo inverse() const;  // throws on zero
    Cyclo operator/(const Cyclo& o) const { return *this * o.inverse(); }

    bool operator==(const Cyclo& o) const {
        return conductor_ == o.conductor_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const Cyclo& o) const { return !(*this == o); }

    // Field automorphism E(n) -> E(n)^k; requires gcd(k, conductor) = 1.
    Cyclo galois(std::int64_t k) const;
    Cyclo conjugate() const;  // complex conjugation, k = -1
    bool is_real() const;

    // Rendering in E(n) syntax, e.g. "1/2*E(8)-E(8)^3" or "-2/3".
    std::string str() const;

private:
    std::int64_t conductor_ = 1;
    std::map<std::int64_t, BigRat> coeffs_;  // basis exponent -> coefficient
};

// Total order used for canonical sorting: by conductor first, then at the
// smallest basis exponent where the coefficients differ, the larger
// coefficient sorts first. Returns -1, 0 or +1.
int compare(const Cyclo& a, const Cyclo& b);

inline bool cyclo_less(const Cyclo& a, const Cyclo& b) {
    return compare(a, b) < 0;
}

}  // namespace ctt::cyclo
