#include "ctt/verify.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include "ctt/errors.hpp"

namespace ctt::verify {

namespace {

using chartab::CharacterTable;
using cyclo::Cyclo;

constexpr std::int64_t kGaloisExponentBound = 100000;

bool is_prime_i64(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Lexicographic order on value vectors, via the canonical Cyclo order.
struct VecLess {
    bool operator()(const std::vector<Cyclo>& a,
                    const std::vector<Cyclo>& b) const {
        const size_t n = std::min(a.size(), b.size());
        for (size_t i = 0; i < n; ++i) {
            const int c = cyclo::compare(a[i], b[i]);
            if (c != 0) return c < 0;
        }
        return a.size() < b.size();
    }
};

Cyclo cyclo_pow(Cyclo base, std::int64_t e) {
    Cyclo out(1);
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

// ---------------------------------------------------------------- shape ----

// Empty string iff t is dimensionally a character table: square value
// block, positive sizes/orders, exactly one identity class (agreeing with
// t.identity_class), positive integer degrees, sizes summing to the order,
// and power maps that are prime-keyed, full-length and in-range.
std::string shape_witness(const CharacterTable& t) {
    const size_t r = t.class_sizes.size();
    if (r == 0) return "table has no classes";
    if (t.element_orders.size() != r)
        return "element-order list has " +
               std::to_string(t.element_orders.size()) + " entries, expected " +
               std::to_string(r);
    if (t.values.size() != r)
        return "value block has " + std::to_string(t.values.size()) +
               " rows, expected " + std::to_string(r);
    for (size_t i = 0; i < r; ++i)
        if (t.values[i].size() != r)
            return "value row " + std::to_string(i) + " has " +
                   std::to_string(t.values[i].size()) + " entries, expected " +
                   std::to_string(r);
    if (t.order < 1) return "group order is not positive";
    BigInt size_sum = 0;
    for (size_t k = 0; k < r; ++k) {
        if (t.class_sizes[k] < 1)
            return "class " + std::to_string(k) + " has non-positive size";
        size_sum += t.class_sizes[k];
    }
    if (size_sum != t.order)
        return "class sizes sum to " + to_string(size_sum) + ", order is " +
               to_string(t.order);
    int identity = -1;
    for (size_t k = 0; k < r; ++k) {
        if (t.element_orders[k] < 1)
            return "class " + std::to_string(k) +
                   " has non-positive element order";
        if (t.element_orders[k] == 1) {
            if (identity >= 0)
                return "classes " + std::to_string(identity) + " and " +
                       std::to_string(k) + " both have element order 1";
            identity = static_cast<int>(k);
        }
    }
    if (identity < 0) return "no class has element order 1";
    if (t.identity_class != identity)
        return "identity_class is " + std::to_string(t.identity_class) +
               ", but the order-1 class is " + std::to_string(identity);
    for (size_t i = 0; i < r; ++i) {
        const Cyclo& d = t.values[i][static_cast<size_t>(identity)];
        if (!d.is_integer() || d.integer_value() < 1)
            return "row " + std::to_string(i) +
                   " has a non-positive-integer degree " + d.str();
    }
    for (const auto& [p, pm] : t.power_maps) {
        if (!is_prime_i64(p))
            return "power-map key " + std::to_string(p) + " is not prime";
        if (pm.size() != r)
            return "power map for " + std::to_string(p) + " has " +
                   std::to_string(pm.size()) + " entries, expected " +
                   std::to_string(r);
        for (size_t k = 0; k < r; ++k)
            if (pm[k] < 0 || static_cast<size_t>(pm[k]) >= r)
                return "power map for " + std::to_string(p) + " sends class " +
                       std::to_string(k) + " out of range";
    }
    return "";
}

// ----------------------------------------------- Galois generator setup ----

std::int64_t mod_pow_i64(std::int64_t a, std::int64_t e, std::int64_t m) {
    std::int64_t out = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1) out = out * a % m;
        a = a * a % m;
        e >>= 1;
    }
    return out;
}

std::vector<std::pair<std::int64_t, int>> factorize_i64(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            int a = 0;
            while (n % p == 0) {
                n /= p;
                ++a;
            }
            out.emplace_back(p, a);
        }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::int64_t primitive_root_mod_prime_power(std::int64_t q, int a) {
    std::vector<std::int64_t> prime_factors;
    for (const auto& [f, e] : factorize_i64(q - 1)) prime_factors.push_back(f);
    std::int64_t g = 2;
    for (;; ++g) {
        bool ok = true;
        for (std::int64_t f : prime_factors)
            if (mod_pow_i64(g, (q - 1) / f, q) == 1) {
                ok = false;
                break;
            }
        if (ok) break;
    }
    if (a == 1) return g;
    // g or g+q is a primitive root modulo every power of q.
    if (mod_pow_i64(g, q - 1, q * q) == 1) g += q;
    return g;
}

// x with x = r1 (mod m1), x = r2 (mod m2), for coprime m1, m2.
std::int64_t crt_pair(std::int64_t r1, std::int64_t m1, std::int64_t r2,
                      std::int64_t m2) {
    // Inverse of m1 modulo m2 by extended Euclid.
    std::int64_t a = m1 % m2, b = m2, x0 = 1, x1 = 0;
    while (b != 0) {
        const std::int64_t k = a / b;
        a -= k * b;
        std::swap(a, b);
        x0 -= k * x1;
        std::swap(x0, x1);
    }
    std::int64_t inv = ((x0 % m2) + m2) % m2;
    const std::int64_t diff = (((r2 - r1) % m2) + m2) % m2;
    return r1 + m1 * (diff * inv % m2);
}

// Generators of the unit group (Z/e)^*, each lifted to 1..e-1.
std::vector<std::int64_t> unit_group_generators(std::int64_t e) {
    std::vector<std::int64_t> gens;
    if (e <= 2) return gens;
    for (const auto& [q, a] : factorize_i64(e)) {
        std::int64_t m = 1;
        for (int i = 0; i < a; ++i) m *= q;
        const std::int64_t rest = e / m;
        const auto lift = [&](std::int64_t g) {
            return rest == 1 ? g : crt_pair(g, m, 1, rest);
        };
        if (q == 2) {
            if (a == 1) continue;
            if (a == 2) {
                gens.push_back(lift(3));
            } else {
                gens.push_back(lift(5));
                gens.push_back(lift(m - 1));
            }
        } else {
            gens.push_back(lift(primitive_root_mod_prime_power(q, a)));
        }
    }
    std::sort(gens.begin(), gens.end());
    return gens;
}

// ------------------------------------------------------------ the checks ---

CheckResult check_degree_sum(const CharacterTable& t) {
    CheckResult res{"degree_sum", true, ""};
    BigInt sum = 0;
    for (size_t i = 0; i < t.values.size(); ++i) {
        const BigInt d = t.degree(static_cast<int>(i));
        sum += d * d;
    }
    if (sum != t.order) {
        res.passed = false;
        res.witness = "degrees square-sum to " + to_string(sum) +
                      ", order is " + to_string(t.order);
    }
    return res;
}

CheckResult check_degree_divisibility(const CharacterTable& t) {
    CheckResult res{"degree_divisibility", true, ""};
    for (size_t i = 0; i < t.values.size(); ++i) {
        const BigInt d = t.degree(static_cast<int>(i));
        if (t.order % d != 0) {
            res.passed = false;
            res.witness = "degree " + to_string(d) + " of row " +
                          std::to_string(i) + " does not divide " +
                          to_string(t.order);
            return res;
        }
    }
    return res;
}

CheckResult check_row_orthogonality(const CharacterTable& t) {
    CheckResult res{"row_orthogonality", true, ""};
    const size_t r = t.values.size();
    std::vector<std::vector<Cyclo>> conj(r);
    for (size_t j = 0; j < r; ++j) {
        conj[j].reserve(r);
        for (const Cyclo& v : t.values[j]) conj[j].push_back(v.conjugate());
    }
    for (size_t i = 0; i < r; ++i)
        for (size_t j = i; j < r; ++j) {
            Cyclo sum;
            for (size_t k = 0; k < r; ++k)
                sum += Cyclo(t.class_sizes[k]) * t.values[i][k] * conj[j][k];
            const Cyclo expected = i == j ? Cyclo(t.order) : Cyclo();
            if (sum != expected) {
                res.passed = false;
                res.witness = "rows " + std::to_string(i) + "," +
                              std::to_string(j) + ": weighted inner product " +
                              sum.str() + ", expected " + expected.str();
                return res;
            }
        }
    return res;
}

CheckResult check_column_orthogonality(const CharacterTable& t) {
    CheckResult res{"column_orthogonality", true, ""};
    const size_t r = t.values.size();
    for (size_t k = 0; k < r; ++k)
        for (size_t l = k; l < r; ++l) {
            Cyclo sum;
            for (size_t i = 0; i < r; ++i)
                sum += t.values[i][k] * t.values[i][l].conjugate();
            const Cyclo expected =
                k == l ? Cyclo(BigRat(t.order, t.class_sizes[k])) : Cyclo();
            if (sum != expected) {
                res.passed = false;
                res.witness = "columns " + std::to_string(k) + "," +
                              std::to_string(l) + ": inner product " +
                              sum.str() + ", expected " + expected.str();
                return res;
            }
        }
    return res;
}

CheckResult check_power_map_coherence(const CharacterTable& t) {
    CheckResult res{"power_map_coherence", true, ""};
    const size_t r = t.values.size();
    const int z = t.identity_class;
    std::vector<int> linear_rows;
    for (size_t i = 0; i < r; ++i)
        if (t.values[i][static_cast<size_t>(z)] == Cyclo(1))
            linear_rows.push_back(static_cast<int>(i));
    for (const auto& [p, pm] : t.power_maps) {
        if (pm[static_cast<size_t>(z)] != z) {
            res.passed = false;
            res.witness = "power map for " + std::to_string(p) +
                          " moves the identity class";
            return res;
        }
        for (size_t k = 0; k < r; ++k) {
            const std::int64_t o = t.element_orders[k];
            const std::int64_t expected_order = o / std::gcd(o, p);
            const size_t img = static_cast<size_t>(pm[k]);
            if (t.element_orders[img] != expected_order) {
                res.passed = false;
                res.witness = "power map for " + std::to_string(p) +
                              " sends class " + std::to_string(k) +
                              " (order " + std::to_string(o) + ") to class " +
                              std::to_string(img) + " (order " +
                              std::to_string(t.element_orders[img]) +
                              "), expected order " +
                              std::to_string(expected_order);
                return res;
            }
            if (t.class_sizes[k] % t.class_sizes[img] != 0) {
                res.passed = false;
                res.witness = "power map for " + std::to_string(p) +
                              " sends class " + std::to_string(k) + " (size " +
                              to_string(t.class_sizes[k]) +
                              ") to class of size " +
                              to_string(t.class_sizes[img]) +
                              ", which does not divide it";
                return res;
            }
            for (int i : linear_rows) {
                if (t.values[static_cast<size_t>(i)][img] !=
                    cyclo_pow(t.values[static_cast<size_t>(i)][k], p)) {
                    res.passed = false;
                    res.witness = "linear row " + std::to_string(i) +
                                  ": value at class " + std::to_string(img) +
                                  " is not the " + std::to_string(p) +
                                  "-th power of the value at class " +
                                  std::to_string(k);
                    return res;
                }
            }
        }
    }
    return res;
}

CheckResult check_galois_stability(const CharacterTable& t) {
    CheckResult res{"galois_stability", true, ""};
    const size_t r = t.values.size();
    BigInt e_big = 1;
    for (std::int64_t o : t.element_orders) e_big = lcm(e_big, BigInt(o));
    if (e_big > kGaloisExponentBound) {
        res.witness = "skipped: exponent " + to_string(e_big) + " exceeds " +
                      std::to_string(kGaloisExponentBound);
        return res;
    }
    const std::int64_t e = to_int64(e_big, "exponent");

    // Character values live in the field of e-th roots of unity; a value
    // whose conductor does not divide e is itself a defect, and would make
    // the twists below ill-defined.
    for (size_t i = 0; i < r; ++i)
        for (size_t k = 0; k < r; ++k)
            if (e % t.values[i][k].conductor() != 0) {
                res.passed = false;
                res.witness = "value " + t.values[i][k].str() + " at row " +
                              std::to_string(i) + ", class " +
                              std::to_string(k) + " has conductor " +
                              std::to_string(t.values[i][k].conductor()) +
                              ", which does not divide the exponent " +
                              std::to_string(e);
                return res;
            }

    for (const std::int64_t u : unit_group_generators(e)) {
        // Row closure: the Galois twist of every row must again be a row,
        // with multiplicity.
        std::map<std::vector<Cyclo>, int, VecLess> row_count;
        for (const auto& row : t.values) ++row_count[row];
        for (size_t i = 0; i < r; ++i) {
            std::vector<Cyclo> image;
            image.reserve(r);
            for (const Cyclo& v : t.values[i]) image.push_back(v.galois(u));
            const auto it = row_count.find(image);
            if (it == row_count.end() || it->second == 0) {
                res.passed = false;
                res.witness = "twist by " + std::to_string(u) + " of row " +
                              std::to_string(i) + " is not a row of the table";
                return res;
            }
            --it->second;
        }
        // Column closure: the twist of every column must be a column with
        // the same class size and element order, with multiplicity.
        using ColKey = std::tuple<BigInt, std::int64_t, std::vector<Cyclo>>;
        const auto col_less = [](const ColKey& a, const ColKey& b) {
            if (std::get<0>(a) != std::get<0>(b))
                return std::get<0>(a) < std::get<0>(b);
            if (std::get<1>(a) != std::get<1>(b))
                return std::get<1>(a) < std::get<1>(b);
            return VecLess()(std::get<2>(a), std::get<2>(b));
        };
        std::map<ColKey, int, decltype(col_less)> col_count(col_less);
        for (size_t k = 0; k < r; ++k) {
            std::vector<Cyclo> col;
            col.reserve(r);
            for (size_t i = 0; i < r; ++i) col.push_back(t.values[i][k]);
            ++col_count[{t.class_sizes[k], t.element_orders[k], col}];
        }
        for (size_t k = 0; k < r; ++k) {
            std::vector<Cyclo> image;
            image.reserve(r);
            for (size_t i = 0; i < r; ++i)
                image.push_back(t.values[i][k].galois(u));
            const ColKey key{t.class_sizes[k], t.element_orders[k],
                             std::move(image)};
            const auto it = col_count.find(key);
            if (it == col_count.end() || it->second == 0) {
                res.passed = false;
                res.witness = "twist by " + std::to_string(u) + " of column " +
                              std::to_string(k) +
                              " is not a column of the table with matching "
                              "size and order";
                return res;
            }
            --it->second;
        }
    }
    return res;
}

// ------------------------------------------------------- equivalence -------

struct ColumnData {
    std::vector<std::vector<Cyclo>> columns;        // [k][i]
    std::vector<std::vector<Cyclo>> sorted_columns; // [k], sorted values
};

ColumnData column_data(const CharacterTable& t) {
    ColumnData d;
    const size_t rows = t.values.size();
    const size_t cols = rows == 0 ? 0 : t.values[0].size();
    d.columns.assign(cols, {});
    for (size_t k = 0; k < cols; ++k) {
        d.columns[k].reserve(rows);
        for (size_t i = 0; i < rows; ++i) d.columns[k].push_back(t.values[i][k]);
        auto sorted = d.columns[k];
        std::sort(sorted.begin(), sorted.end(), cyclo::cyclo_less);
        d.sorted_columns.push_back(std::move(sorted));
    }
    return d;
}

bool rectangular(const CharacterTable& t, size_t cols) {
    for (const auto& row : t.values)
        if (row.size() != cols) return false;
    return true;
}

}  // namespace

// ----------------------------------------------------------- public API ----

bool VerificationReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

const CheckResult* VerificationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::string VerificationReport::str() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << c.name << ": " << (c.passed ? "pass" : "FAIL");
        if (!c.witness.empty()) os << " (" << c.witness << ")";
        os << "\n";
    }
    return os.str();
}

VerificationReport check_table(const chartab::CharacterTable& t) {
    VerificationReport report;
    CheckResult shape{"shape", true, shape_witness(t)};
    shape.passed = shape.witness.empty();
    report.checks.push_back(shape);
    if (!shape.passed) return report;  // the rest presupposes a square table

    report.checks.push_back(check_degree_sum(t));
    report.checks.push_back(check_degree_divisibility(t));
    report.checks.push_back(check_row_orthogonality(t));
    report.checks.push_back(check_column_orthogonality(t));
    report.checks.push_back(check_power_map_coherence(t));
    report.checks.push_back(check_galois_stability(t));
    return report;
}

std::optional<EquivalenceWitness> tables_equivalent(
    const chartab::CharacterTable& a, const chartab::CharacterTable& b,
    bool use_power_maps) {
    const size_t rows = a.values.size();
    if (b.values.size() != rows) return std::nullopt;
    const size_t cols = rows == 0 ? 0 : a.values[0].size();
    if (!rectangular(a, cols) || !rectangular(b, cols)) return std::nullopt;
    if (use_power_maps) {
        if (a.order != b.order) return std::nullopt;
        if (a.class_sizes.size() != cols || b.class_sizes.size() != cols)
            return std::nullopt;
        if (a.element_orders.size() != cols || b.element_orders.size() != cols)
            return std::nullopt;
        std::vector<std::int64_t> pa, pb;
        for (const auto& [p, pm] : a.power_maps) {
            if (pm.size() != cols) return std::nullopt;
            pa.push_back(p);
        }
        for (const auto& [p, pm] : b.power_maps) {
            if (pm.size() != cols) return std::nullopt;
            pb.push_back(p);
        }
        if (pa != pb) return std::nullopt;
    }
    if (rows == 0 || cols == 0)
        return EquivalenceWitness{};  // empty tables are vacuously equivalent

    const ColumnData da = column_data(a);
    const ColumnData db = column_data(b);

    // Initial colors: (size, order, sorted value multiset) — values only
    // when power maps are ignored.
    using Sig = std::tuple<BigInt, std::int64_t, std::vector<Cyclo>>;
    const auto sig_less = [](const Sig& x, const Sig& y) {
        if (std::get<0>(x) != std::get<0>(y))
            return std::get<0>(x) < std::get<0>(y);
        if (std::get<1>(x) != std::get<1>(y))
            return std::get<1>(x) < std::get<1>(y);
        return VecLess()(std::get<2>(x), std::get<2>(y));
    };
    std::map<Sig, int, decltype(sig_less)> sig_ids(sig_less);
    std::vector<int> color_a(cols), color_b(cols);
    for (size_t k = 0; k < cols; ++k) {
        Sig sa{use_power_maps ? a.class_sizes[k] : BigInt(0),
               use_power_maps ? a.element_orders[k] : 0, da.sorted_columns[k]};
        Sig sb{use_power_maps ? b.class_sizes[k] : BigInt(0),
               use_power_maps ? b.element_orders[k] : 0, db.sorted_columns[k]};
        color_a[k] = sig_ids.emplace(std::move(sa), static_cast<int>(sig_ids.size()))
                         .first->second;
        color_b[k] = sig_ids.emplace(std::move(sb), static_cast<int>(sig_ids.size()))
                         .first->second;
    }

    // Refine colors through the power maps until stable.
    if (use_power_maps && !a.power_maps.empty()) {
        size_t ncolors = sig_ids.size();
        while (true) {
            std::map<std::vector<int>, int> next_ids;
            std::vector<int> na(cols), nb(cols);
            const auto refined = [&](const CharacterTable& t,
                                     const std::vector<int>& color, size_t k) {
                std::vector<int> key{color[k]};
                for (const auto& [p, pm] : t.power_maps)
                    key.push_back(color[static_cast<size_t>(pm[k])]);
                return key;
            };
            for (size_t k = 0; k < cols; ++k) {
                na[k] = next_ids
                            .emplace(refined(a, color_a, k),
                                     static_cast<int>(next_ids.size()))
                            .first->second;
                nb[k] = next_ids
                            .emplace(refined(b, color_b, k),
                                     static_cast<int>(next_ids.size()))
                            .first->second;
            }
            color_a = std::move(na);
            color_b = std::move(nb);
            if (next_ids.size() == ncolors) break;
            ncolors = next_ids.size();
        }
    }

    // Candidate b-columns per a-column, ascending for the least witness.
    std::vector<std::vector<int>> candidates(cols);
    {
        std::map<int, int> count_a, count_b;
        for (size_t k = 0; k < cols; ++k) {
            ++count_a[color_a[k]];
            ++count_b[color_b[k]];
        }
        if (count_a != count_b) return std::nullopt;
        for (size_t k = 0; k < cols; ++k)
            for (size_t l = 0; l < cols; ++l)
                if (color_b[l] == color_a[k])
                    candidates[k].push_back(static_cast<int>(l));
    }

    std::vector<int> sigma(cols, -1);
    std::vector<bool> used(cols, false);
    std::optional<EquivalenceWitness> found;

    const auto rows_match = [&]() -> std::optional<std::vector<int>> {
        std::map<std::vector<Cyclo>, std::deque<int>, VecLess> pool;
        for (size_t j = 0; j < rows; ++j) pool[b.values[j]].push_back(
            static_cast<int>(j));
        std::vector<int> row_perm(rows, -1);
        for (size_t i = 0; i < rows; ++i) {
            std::vector<Cyclo> target(cols);
            for (size_t k = 0; k < cols; ++k)
                target[static_cast<size_t>(sigma[k])] = a.values[i][k];
            const auto it = pool.find(target);
            if (it == pool.end() || it->second.empty()) return std::nullopt;
            row_perm[i] = it->second.front();
            it->second.pop_front();
        }
        return row_perm;
    };

    const auto power_maps_ok = [&]() {
        for (const auto& [p, pm] : a.power_maps) {
            const auto& pmb = b.power_maps.at(p);
            for (size_t k = 0; k < cols; ++k)
                if (pmb[static_cast<size_t>(sigma[k])] !=
                    sigma[static_cast<size_t>(pm[k])])
                    return false;
        }
        return true;
    };

    const auto dfs = [&](auto&& self, size_t k) -> bool {
        if (k == cols) {
            if (use_power_maps && !power_maps_ok()) return false;
            auto rp = rows_match();
            if (!rp) return false;
            found = EquivalenceWitness{std::move(*rp), sigma};
            return true;
        }
        for (int l : candidates[k]) {
            if (used[static_cast<size_t>(l)]) continue;
            // Forward power-map consistency against assigned columns.
            if (use_power_maps) {
                bool ok = true;
                for (const auto& [p, pm] : a.power_maps) {
                    const auto& pmb = b.power_maps.at(p);
                    const int imga = pm[k];
                    if (sigma[static_cast<size_t>(imga)] >= 0 &&
                        pmb[static_cast<size_t>(l)] !=
                            sigma[static_cast<size_t>(imga)]) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
            }
            sigma[k] = l;
            used[static_cast<size_t>(l)] = true;
            if (self(self, k + 1)) return true;
            sigma[k] = -1;
            used[static_cast<size_t>(l)] = false;
        }
        return false;
    };
    if (!dfs(dfs, 0)) return std::nullopt;

    // Replay the witness; a failure here would be an internal bug.
    for (size_t i = 0; i < rows; ++i)
        for (size_t k = 0; k < cols; ++k)
            if (b.values[static_cast<size_t>(found->row_perm[i])]
                        [static_cast<size_t>(found->col_perm[k])] !=
                a.values[i][k])
                throw computation_error(
                    "equivalence witness failed replay validation");
    if (use_power_maps) {
        for (size_t k = 0; k < cols; ++k) {
            const size_t l = static_cast<size_t>(found->col_perm[k]);
            if (a.class_sizes[k] != b.class_sizes[l] ||
                a.element_orders[k] != b.element_orders[l])
                throw computation_error(
                    "equivalence witness failed replay validation");
        }
    }
    return found;
}

chartab::CharacterTable inject_mutation(const chartab::CharacterTable& t,
                                        const MutationSpec& m) {
    chartab::CharacterTable out = t;
    const int rows = static_cast<int>(t.values.size());
    const int cols = static_cast<int>(t.class_sizes.size());
    const auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw precondition_error("inject_mutation: " + msg);
    };
    const auto valid_cell = [&](int i, int k) {
        require(i >= 0 && i < rows, "row out of range");
        require(k >= 0 &&
                    static_cast<size_t>(k) < t.values[static_cast<size_t>(i)].size(),
                "column out of range");
    };
    const auto target_columns = [&](const std::vector<int>& cs) {
        std::vector<int> out_cols = cs;
        if (out_cols.empty()) {
            for (int k = 0; k < cols; ++k)
                if (k != t.identity_class) out_cols.push_back(k);
        }
        for (int k : out_cols)
            require(k >= 0 && k < cols, "column out of range");
        return out_cols;
    };

    switch (m.kind) {
        case MutationKind::sign_flip: {
            valid_cell(m.row, m.column);
            auto& v = out.values[static_cast<size_t>(m.row)]
                                [static_cast<size_t>(m.column)];
            if (!v.is_zero()) v = -v;
            break;
        }
        case MutationKind::value_change: {
            valid_cell(m.row, m.column);
            out.values[static_cast<size_t>(m.row)]
                      [static_cast<size_t>(m.column)] = m.value;
            break;
        }
        case MutationKind::extension_swap: {
            require(m.row >= 0 && m.row < rows, "row out of range");
            require(m.row2 >= 0 && m.row2 < rows, "row2 out of range");
            require(m.row != m.row2, "rows to swap must differ");
            for (int k : target_columns(m.columns))
                std::swap(out.values[static_cast<size_t>(m.row)]
                                    [static_cast<size_t>(k)],
                          out.values[static_cast<size_t>(m.row2)]
                                    [static_cast<size_t>(k)]);
            break;
        }
        case MutationKind::class_split_merge: {
            require(m.column >= 0 && m.column < cols, "column out of range");
            if (m.column2 >= 0) {
                // Merge column2 into column.
                require(m.column2 < cols, "column out of range");
                require(m.column2 != m.column,
                        "cannot merge a class with itself");
                const size_t src = static_cast<size_t>(m.column2);
                const int kept =
                    m.column > m.column2 ? m.column - 1 : m.column;
                out.class_sizes[static_cast<size_t>(m.column)] +=
                    out.class_sizes[src];
                out.class_sizes.erase(out.class_sizes.begin() +
                                      static_cast<std::ptrdiff_t>(src));
                out.element_orders.erase(out.element_orders.begin() +
                                         static_cast<std::ptrdiff_t>(src));
                for (auto& row : out.values) {
                    require(src < row.size(), "value row too short to merge");
                    row.erase(row.begin() + static_cast<std::ptrdiff_t>(src));
                }
                for (auto& [p, pm] : out.power_maps) {
                    pm.erase(pm.begin() + static_cast<std::ptrdiff_t>(src));
                    for (int& img : pm) {
                        if (img == m.column2)
                            img = kept;
                        else if (img > m.column2)
                            --img;
                    }
                }
                if (out.identity_class == m.column2)
                    out.identity_class = kept;
                else if (out.identity_class > m.column2)
                    --out.identity_class;
            } else {
                // Split column into two halves.
                const size_t src = static_cast<size_t>(m.column);
                require(out.class_sizes[src] % 2 == 0,
                        "cannot split a class of odd size");
                const BigInt half = out.class_sizes[src] / 2;
                out.class_sizes[src] = half;
                out.class_sizes.insert(
                    out.class_sizes.begin() +
                        static_cast<std::ptrdiff_t>(src) + 1,
                    half);
                out.element_orders.insert(
                    out.element_orders.begin() +
                        static_cast<std::ptrdiff_t>(src) + 1,
                    out.element_orders[src]);
                for (auto& row : out.values) {
                    require(src < row.size(), "value row too short to split");
                    row.insert(row.begin() + static_cast<std::ptrdiff_t>(src) + 1,
                               row[src]);
                }
                for (auto& [p, pm] : out.power_maps) {
                    pm.insert(pm.begin() + static_cast<std::ptrdiff_t>(src) + 1,
                              pm[src]);
                    for (int& img : pm)
                        if (img > m.column) ++img;
                }
                if (out.identity_class > m.column) ++out.identity_class;
            }
            break;
        }
        case MutationKind::power_map_change: {
            const auto it = out.power_maps.find(m.prime);
            require(it != out.power_maps.end(),
                    "no stored power map for prime " + std::to_string(m.prime));
            require(m.column >= 0 &&
                        static_cast<size_t>(m.column) < it->second.size(),
                    "column out of range");
            require(m.column2 >= 0 && m.column2 < cols,
                    "power-map image out of range");
            it->second[static_cast<size_t>(m.column)] = m.column2;
            break;
        }
        case MutationKind::irrationality_twist: {
            require(m.row >= 0 && m.row < rows, "row out of range");
            require(m.root_order >= 1, "root order must be positive");
            const Cyclo mult =
                Cyclo::root_of_unity(m.root_order, m.root_exponent);
            for (int k : target_columns(m.columns)) {
                valid_cell(m.row, k);
                out.values[static_cast<size_t>(m.row)]
                          [static_cast<size_t>(k)] *= mult;
            }
            break;
        }
    }
    return out;
}

namespace {

// True when the table is the wrong shape outright: a non-square value
// block or metadata lists of the wrong length.  Value-level problems
// (negative degrees, inconsistent sizes) are left for check_table, whose
// report names the failing check.
bool dimensions_broken(const chartab::CharacterTable& t) {
    const size_t r = t.class_sizes.size();
    if (r == 0) return true;
    if (t.element_orders.size() != r) return true;
    if (t.values.size() != r) return true;
    for (const auto& row : t.values)
        if (row.size() != r) return true;
    for (const auto& [p, pm] : t.power_maps)
        if (pm.size() != r) return true;
    return false;
}

}  // namespace

int classify_detection(const permgroup::PermutationGroup& original_group,
                       const chartab::CharacterTable& mutant,
                       const chartab::ComputeOptions& opt) {
    const auto reference =
        chartab::compute_character_table(original_group, opt);

    // A dimension scan catches these before any arithmetic is possible.
    if (dimensions_broken(mutant)) return 2;

    if (!check_table(mutant).all_passed()) return 1;

    // Metadata: class count, then the multiset of (size, order) pairs.
    if (mutant.class_sizes.size() != reference.class_sizes.size() ||
        mutant.order != reference.order)
        return 2;
    using Profile = std::vector<std::pair<BigInt, std::int64_t>>;
    const auto profile = [](const chartab::CharacterTable& t) {
        Profile p;
        for (size_t k = 0; k < t.class_sizes.size(); ++k)
            p.emplace_back(t.class_sizes[k], t.element_orders[k]);
        std::sort(p.begin(), p.end());
        return p;
    };
    if (profile(mutant) != profile(reference)) return 2;

    return tables_equivalent(reference, mutant, true) ? 0 : 3;
}

}  // namespace ctt::verify
