#include "ctt/catalog.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>

#include "ctt/errors.hpp"

namespace ctt::catalog {

namespace {

const BigInt kBound(10000000);

// Base p when q = p^k is a prime power, otherwise 0.
std::int64_t prime_power_base(std::int64_t q) {
    if (q < 2) return 0;
    for (std::int64_t p = 2; p * p <= q; ++p) {
        if (q % p != 0) continue;
        std::int64_t m = q;
        while (m % p == 0) m /= p;
        return m == 1 ? p : 0;
    }
    return q;  // q itself prime
}

BigInt pow_big(std::int64_t base, int exp) {
    BigInt r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

BigInt gcd_small(BigInt a, std::int64_t b) { return gcd(a, BigInt(b)); }

// |PSL(n,q)| = q^(n(n-1)/2) * prod_{k=2}^{n} (q^k - 1) / gcd(n, q-1)
BigInt linear_order(int n, std::int64_t q) {
    BigInt r = pow_big(q, n * (n - 1) / 2);
    for (int k = 2; k <= n; ++k) r *= pow_big(q, k) - 1;
    return r / gcd_small(BigInt(q - 1), n);
}

// |PSU(n,q)| = q^(n(n-1)/2) * prod_{k=2}^{n} (q^k - (-1)^k) / gcd(n, q+1)
BigInt unitary_order(int n, std::int64_t q) {
    BigInt r = pow_big(q, n * (n - 1) / 2);
    for (int k = 2; k <= n; ++k)
        r *= pow_big(q, k) - (k % 2 == 0 ? 1 : -1);
    return r / gcd_small(BigInt(q + 1), n);
}

// |PSp(2m,q)| = q^(m^2) * prod_{k=1}^{m} (q^(2k) - 1) / gcd(2, q-1)
BigInt symplectic_order(int m, std::int64_t q) {
    BigInt r = pow_big(q, m * m);
    for (int k = 1; k <= m; ++k) r *= pow_big(q, 2 * k) - 1;
    return r / gcd_small(BigInt(q - 1), 2);
}

// |Sz(q)| = q^2 (q^2 + 1)(q - 1), q an odd power of 2
BigInt suzuki_order(std::int64_t q) {
    return pow_big(q, 2) * (pow_big(q, 2) + 1) * (q - 1);
}

// |G2(q)| = q^6 (q^6 - 1)(q^2 - 1)
BigInt g2_order(std::int64_t q) {
    return pow_big(q, 6) * (pow_big(q, 6) - 1) * (pow_big(q, 2) - 1);
}

std::vector<SimpleGroupEntry> build() {
    std::vector<SimpleGroupEntry> out;
    auto add = [&out](BigInt order, std::string name) {
        if (order <= kBound)
            out.push_back({std::move(order), std::move(name), {}});
    };

    // Alternating groups A_n, n >= 5.
    {
        BigInt fact = 24;  // 4!
        for (int n = 5; ; ++n) {
            fact *= n;
            BigInt order = fact / 2;
            if (order > kBound) break;
            add(order, "A" + std::to_string(n));
        }
    }

    // Classical families over prime-power fields q. Skip lists remove the
    // classical isomorphisms with groups listed elsewhere:
    //   L2(4) = L2(5) = A5,  L2(9) = A6,  L3(2) = L2(7),
    //   L4(2) = A8,  S4(3) = U4(2).
    for (std::int64_t q = 4; q <= 271; ++q) {
        if (prime_power_base(q) == 0) continue;
        if (q == 4 || q == 5 || q == 9) continue;
        BigInt order = linear_order(2, q);
        if (order > kBound) continue;
        add(order, "L2(" + std::to_string(q) + ")");
    }
    for (std::int64_t q = 3; q <= 8; ++q) {
        if (prime_power_base(q) == 0) continue;
        add(linear_order(3, q), "L3(" + std::to_string(q) + ")");
    }
    add(linear_order(4, 3), "L4(3)");
    add(linear_order(5, 2), "L5(2)");
    for (std::int64_t q = 3; q <= 9; ++q) {
        if (prime_power_base(q) == 0) continue;
        add(unitary_order(3, q), "U3(" + std::to_string(q) + ")");
    }
    add(unitary_order(4, 2), "U4(2)");
    add(unitary_order(4, 3), "U4(3)");
    for (std::int64_t q = 4; q <= 5; ++q)
        add(symplectic_order(2, q), "S4(" + std::to_string(q) + ")");
    add(symplectic_order(3, 2), "S6(2)");
    add(suzuki_order(8), "Sz(8)");
    add(g2_order(3), "G2(3)");

    // Sporadic groups of order <= 10^7.
    add(BigInt(7920), "M11");
    add(BigInt(95040), "M12");
    add(BigInt(175560), "J1");
    add(BigInt(443520), "M22");
    add(BigInt(604800), "J2");

    // The one order shared by two non-isomorphic entries is 20160 (A8 and
    // L3(4)); their sorted centralizer-order multisets tell them apart.
    for (auto& e : out) {
        if (e.order != 20160) continue;
        if (e.name == "A8")
            e.centralizer_profile = {BigInt(6),   BigInt(7),   BigInt(7),
                                     BigInt(8),   BigInt(12),  BigInt(15),
                                     BigInt(15),  BigInt(15),  BigInt(16),
                                     BigInt(18),  BigInt(96),  BigInt(180),
                                     BigInt(192), BigInt(20160)};
        else if (e.name == "L3(4)")
            e.centralizer_profile = {BigInt(5),  BigInt(5),  BigInt(7),
                                     BigInt(7),  BigInt(9),  BigInt(16),
                                     BigInt(16), BigInt(16), BigInt(64),
                                     BigInt(20160)};
    }

    std::sort(out.begin(), out.end(),
              [](const SimpleGroupEntry& a, const SimpleGroupEntry& b) {
                  if (a.order != b.order) return a.order < b.order;
                  return a.name < b.name;
              });
    std::set<std::string> names;
    for (const auto& e : out)
        if (!names.insert(e.name).second)
            throw error("duplicate simple-group catalog name: " + e.name);
    return out;
}

}  // namespace

const std::vector<SimpleGroupEntry>& simple_groups() {
    static const std::vector<SimpleGroupEntry> table = build();
    return table;
}

std::vector<SimpleGroupEntry> simple_groups_of_order(const BigInt& order) {
    std::vector<SimpleGroupEntry> hits;
    for (const auto& e : simple_groups())
        if (e.order == order) hits.push_back(e);
    return hits;
}

const BigInt& catalog_bound() { return kBound; }

}  // namespace ctt::catalog
