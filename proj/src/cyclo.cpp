#include "ctt/cyclo.hpp"

#include <numeric>
#include <sstream>
#include <vector>

#include "ctt/errors.hpp"

namespace ctt::cyclo {

namespace {

constexpr std::int64_t kConductorCap = 10000000;

struct PrimePower {
    std::int64_t p;
    int nu;
    std::int64_t q;  // p^nu
};

std::vector<PrimePower> factorize(std::int64_t n) {
    std::vector<PrimePower> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        PrimePower pp{p, 0, 1};
        while (n % p == 0) {
            n /= p;
            pp.nu += 1;
            pp.q *= p;
        }
        out.push_back(pp);
    }
    if (n > 1) out.push_back({n, 1, n});
    return out;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t t = 0, new_t = 1, r = m, new_r = ((a % m) + m) % m;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw computation_error("modular inverse of a non-unit");
    return ((t % m) + m) % m;
}

using CoeffMap = std::map<std::int64_t, BigRat>;

void accumulate(CoeffMap& acc, std::int64_t expo, const BigRat& c) {
    auto it = acc.find(expo);
    if (it == acc.end()) {
        if (c != 0) acc.emplace(expo, c);
        return;
    }
    it->second += c;
    if (it->second == 0) acc.erase(it);
}

// Adds c * E(n)^e to acc, rewriting the root into the basis of conductor n.
// Requires n >= 1 and n != 2 mod 4.
void add_root(CoeffMap& acc, std::int64_t n, std::int64_t e, const BigRat& c) {
    if (c == 0) return;
    e %= n;
    if (e < 0) e += n;
    if (n == 1) {
        accumulate(acc, 0, c);
        return;
    }

    const auto primes = factorize(n);
    // per prime: list of (q-part exponent, sign) whose signed sum gives
    // E(q)^(e's q-part)
    std::vector<std::vector<std::pair<std::int64_t, int>>> lists;
    for (const auto& pp : primes) {
        std::int64_t cof = (n / pp.q) % pp.q;
        std::int64_t ep = (e % pp.q) * mod_inverse(cof, pp.q) % pp.q;
        std::vector<std::pair<std::int64_t, int>> terms;
        if (pp.p == 2) {
            if (pp.nu < 2)
                throw computation_error("conductor 2 mod 4 in root rewrite");
            std::int64_t half = pp.q / 2;
            if (ep < half)
                terms.emplace_back(ep, +1);
            else
                terms.emplace_back(ep - half, -1);
        } else {
            std::int64_t step = pp.q / pp.p;  // p^(nu-1)
            std::int64_t s = ep % step;
            if (s > (step - 1) / 2) s -= step;
            std::int64_t k = ((ep - s) / step) % pp.p;
            if (k < 0) k += pp.p;
            if (k != 0) {
                terms.emplace_back(ep, +1);
            } else {
                for (std::int64_t t = 1; t < pp.p; ++t) {
                    std::int64_t j = t * step + s;
                    j %= pp.q;
                    if (j < 0) j += pp.q;
                    terms.emplace_back(j, -1);
                }
            }
        }
        lists.push_back(std::move(terms));
    }

    // cartesian product over the per-prime term lists
    std::vector<size_t> pick(lists.size(), 0);
    while (true) {
        std::int64_t expo = 0;
        int sign = 1;
        for (size_t i = 0; i < lists.size(); ++i) {
            const auto& [jp, sg] = lists[i][pick[i]];
            expo = (expo + (n / primes[i].q) % n * jp) % n;
            sign *= sg;
        }
        accumulate(acc, expo, sign > 0 ? c : -c);
        size_t i = 0;
        for (; i < lists.size(); ++i) {
            if (++pick[i] < lists[i].size()) break;
            pick[i] = 0;
        }
        if (i == lists.size()) break;
    }
}

// Rewrites (n, coeffs) over the minimal conductor dividing n.
void reduce_conductor(std::int64_t& n, CoeffMap& coeffs) {
    if (coeffs.empty()) {
        n = 1;
        return;
    }
    bool changed = true;
    while (changed && n > 1) {
        changed = false;
        for (const auto& pp : factorize(n)) {
            if (pp.p == 2 ? pp.nu >= 3 : pp.nu >= 2) {
                // one factor of p can go iff every exponent is divisible by p
                bool ok = true;
                for (const auto& [j, c] : coeffs)
                    if (j % pp.p != 0) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                CoeffMap smaller;
                for (const auto& [j, c] : coeffs)
                    add_root(smaller, n / pp.p, j / pp.p, c);
                coeffs = std::move(smaller);
                n /= pp.p;
            } else if (pp.p == 2) {
                // nu = 2: the factor 4 goes as a whole (a conductor of
                // 2 mod 4 is never stored), possible iff 4 divides every
                // exponent
                bool ok = true;
                for (const auto& [j, c] : coeffs)
                    if (j % 4 != 0) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                CoeffMap smaller;
                for (const auto& [j, c] : coeffs)
                    add_root(smaller, n / 4, j / 4, c);
                coeffs = std::move(smaller);
                n /= 4;
            } else {
                // odd p with nu = 1: p drops iff for every residue class of
                // exponents mod n/p all p-1 basis companions carry one equal
                // coefficient; each group then contracts to -coefficient at
                // the exponent j * p^-1 taken mod n/p
                std::int64_t m = n / pp.p;
                std::map<std::int64_t, std::vector<const BigRat*>> groups;
                for (const auto& [j, c] : coeffs)
                    groups[j % m].push_back(&c);
                bool ok = true;
                for (const auto& [rest, cs] : groups) {
                    if (static_cast<std::int64_t>(cs.size()) != pp.p - 1) {
                        ok = false;
                        break;
                    }
                    for (const auto* c : cs)
                        if (*c != *cs.front()) {
                            ok = false;
                            break;
                        }
                    if (!ok) break;
                }
                if (!ok) continue;
                std::int64_t pinv = m == 1 ? 0 : mod_inverse(pp.p % m, m);
                CoeffMap smaller;
                for (const auto& [rest, cs] : groups)
                    add_root(smaller, m, rest * pinv % m, -*cs.front());
                coeffs = std::move(smaller);
                n = m;
            }
            changed = true;
            break;  // factorization of n is stale; restart the prime loop
        }
        if (coeffs.empty()) {
            n = 1;
            return;
        }
    }
}

}  // namespace

Cyclo::Cyclo(const BigRat& v) {
    if (v != 0) coeffs_.emplace(0, v);
}

Cyclo Cyclo::root_of_unity(std::int64_t n, std::int64_t k) {
    if (n < 1) throw precondition_error("root of unity needs a positive order");
    if (n > kConductorCap)
        throw capacity_error("conductor " + std::to_string(n) +
                             " above supported bound");
    k %= n;
    if (k < 0) k += n;
    // primitive form
    std::int64_t g = std::gcd(k, n);
    if (k == 0) g = n;
    n /= g;
    k /= g;
    // a primitive root of order 2m with m odd is -1 times one of order m
    bool negate = false;
    if (n % 4 == 2) {
        std::int64_t m = n / 2;
        // k is odd here (even k would share a factor 2 with n)
        negate = true;
        k = k * ((m + 1) / 2) % m;
        n = m;
    }
    Cyclo out;
    out.conductor_ = n;
    add_root(out.coeffs_, n, k, negate ? BigRat(-1) : BigRat(1));
    reduce_conductor(out.conductor_, out.coeffs_);
    return out;
}

bool Cyclo::is_integer() const {
    if (conductor_ != 1) return false;
    if (coeffs_.empty()) return true;
    return boost::multiprecision::denominator(coeffs_.begin()->second) == 1;
}

BigRat Cyclo::rational_value() const {
    if (conductor_ != 1)
        throw precondition_error("value with conductor " +
                                 std::to_string(conductor_) +
                                 " is not rational");
    return coeffs_.empty() ? BigRat(0) : coeffs_.begin()->second;
}

BigInt Cyclo::integer_value() const {
    BigRat v = rational_value();
    if (boost::multiprecision::denominator(v) != 1)
        throw precondition_error("value " + ctt::to_string(v) +
                                 " is not an integer");
    return boost::multiprecision::numerator(v);
}

Cyclo Cyclo::operator-() const {
    Cyclo out = *this;
    for (auto& [j, c] : out.coeffs_) c = -c;
    return out;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
    std::int64_t n = std::lcm(conductor_, o.conductor_);
    if (n > kConductorCap)
        throw capacity_error("conductor " + std::to_string(n) +
                             " above supported bound");
    Cyclo out;
    out.conductor_ = n;
    for (const auto& [j, c] : coeffs_)
        add_root(out.coeffs_, n, j * (n / conductor_), c);
    for (const auto& [j, c] : o.coeffs_)
        add_root(out.coeffs_, n, j * (n / o.conductor_), c);
    reduce_conductor(out.conductor_, out.coeffs_);
    return out;
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + (-o); }

Cyclo Cyclo::operator*(const Cyclo& o) const {
    if (is_zero() || o.is_zero()) return Cyclo();
    std::int64_t n = std::lcm(conductor_, o.conductor_);
    if (n > kConductorCap)
        throw capacity_error("conductor " + std::to_string(n) +
                             " above supported bound");
    std::int64_t sa = n / conductor_, sb = n / o.conductor_;
    Cyclo out;
    out.conductor_ = n;
    for (const auto& [ja, ca] : coeffs_)
        for (const auto& [jb, cb] : o.coeffs_)
            add_root(out.coeffs_, n, ja * sa + jb * sb, ca * cb);
    reduce_conductor(out.conductor_, out.coeffs_);
    return out;
}

Cyclo Cyclo::inverse() const {
    if (is_zero()) throw precondition_error("division by zero");
    if (conductor_ == 1) {
        Cyclo out;
        out.coeffs_.emplace(0, BigRat(1) / coeffs_.begin()->second);
        return out;
    }
    Cyclo prod(BigRat(1));
    for (std::int64_t k = 2; k <= conductor_; ++k)
        if (std::gcd(k, conductor_) == 1) prod *= galois(k);
    Cyclo norm = *this * prod;
    if (!norm.is_rational())
        throw computation_error("conjugate product is not rational");
    return prod * Cyclo(BigRat(1) / norm.rational_value());
}

Cyclo Cyclo::galois(std::int64_t k) const {
    k %= conductor_;
    if (k < 0) k += conductor_;
    if (std::gcd(k, conductor_) != 1)
        throw precondition_error(
            "automorphism exponent shares a factor with the conductor");
    Cyclo out;
    out.conductor_ = conductor_;
    for (const auto& [j, c] : coeffs_)
        add_root(out.coeffs_, conductor_, j * k % conductor_, c);
    reduce_conductor(out.conductor_, out.coeffs_);
    return out;
}

Cyclo Cyclo::conjugate() const { return galois(conductor_ - 1); }

bool Cyclo::is_real() const { return *this == conjugate(); }

std::string Cyclo::str() const {
    if (is_rational()) return ctt::to_string(rational_value());
    std::ostringstream os;
    bool first = true;
    for (const auto& [j, c] : coeffs_) {
        bool neg = c < 0;
        BigRat mag = neg ? BigRat(-c) : c;
        if (first) {
            if (neg) os << '-';
            first = false;
        } else {
            os << (neg ? '-' : '+');
        }
        if (j == 0) {
            os << ctt::to_string(mag);
            continue;
        }
        if (mag != 1) os << ctt::to_string(mag) << '*';
        os << "E(" << conductor_ << ')';
        if (j != 1) os << '^' << j;
    }
    return os.str();
}

int compare(const Cyclo& a, const Cyclo& b) {
    if (a.conductor() != b.conductor())
        return a.conductor() < b.conductor() ? -1 : 1;
    auto ia = a.coefficients().begin(), ea = a.coefficients().end();
    auto ib = b.coefficients().begin(), eb = b.coefficients().end();
    static const BigRat zero(0);
    while (ia != ea || ib != eb) {
        std::int64_t ja = ia != ea ? ia->first : -1;
        std::int64_t jb = ib != eb ? ib->first : -1;
        const BigRat* ca;
        const BigRat* cb;
        std::int64_t j;
        if (ia == ea)
            j = jb;
        else if (ib == eb)
            j = ja;
        else
            j = std::min(ja, jb);
        if (ia != ea && ja == j) {
            ca = &ia->second;
            ++ia;
        } else {
            ca = &zero;
        }
        if (ib != eb && jb == j) {
            cb = &ib->second;
            ++ib;
        } else {
            cb = &zero;
        }
        if (*ca != *cb) return *ca > *cb ? -1 : 1;
    }
    return 0;
}

}  // namespace ctt::cyclo
