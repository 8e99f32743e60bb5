#include "ctt/chartab.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "ctt/catalog.hpp"
#include "ctt/errors.hpp"

namespace ctt::chartab {

namespace {

using cyclo::Cyclo;
using permgroup::ConjugacyClassSet;
using permgroup::Permutation;
using permgroup::PermutationGroup;

using i64 = std::int64_t;
using Row = std::vector<i64>;
using Mat = std::vector<Row>;

// ---------- arithmetic in F_p (p prime, kept below 2^31) ----------

i64 mod_mul(i64 a, i64 b, i64 p) { return a * b % p; }

i64 mod_pow(i64 b, i64 e, i64 p) {
    b %= p;
    if (b < 0) b += p;
    i64 r = 1;
    while (e > 0) {
        if (e & 1) r = mod_mul(r, b, p);
        b = mod_mul(b, b, p);
        e >>= 1;
    }
    return r;
}

i64 mod_inv(i64 a, i64 p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) throw computation_error("division by zero in F_p");
    return mod_pow(a, p - 2, p);
}

bool is_prime_i64(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Smallest prime p = 1 (mod e) with p^2 > 4|G|.
i64 splitting_prime(i64 e, const BigInt& order) {
    const BigInt four_g = 4 * order;
    for (i64 k = 1;; ++k) {
        const i64 p = k * e + 1;
        if (p > 2147483647)
            throw capacity_error("no suitable splitting prime below 2^31");
        if (BigInt(p) * p <= four_g) continue;
        if (is_prime_i64(p)) return p;
    }
}

std::vector<i64> distinct_prime_factors(i64 n) {
    std::vector<i64> out;
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

i64 smallest_primitive_root(i64 p) {
    const auto qs = distinct_prime_factors(p - 1);
    for (i64 w = 2; w < p; ++w) {
        bool ok = true;
        for (i64 q : qs)
            if (mod_pow(w, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return w;
    }
    throw computation_error("no primitive root found");
}

// ---------- linear algebra over F_p ----------

// Reduced row echelon form in place; zero rows are dropped. Returns the
// pivot column per remaining row (strictly ascending).
std::vector<int> rref(Mat& m, i64 p) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(m[pr], m[r]);
        const i64 s = mod_inv(m[r][c], p);
        for (i64& x : m[r]) x = mod_mul(x, s, p);
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const i64 f = m[i][c];
            for (int cc = 0; cc < cols; ++cc)
                m[i][cc] = ((m[i][cc] - mod_mul(f, m[r][cc], p)) % p + p) % p;
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(pivots.size());
    return pivots;
}

// Canonical basis of the kernel of a square matrix, one row per free column
// of its echelon form, in ascending free-column order.
Mat kernel_basis(Mat b, i64 p) {
    const int d = static_cast<int>(b.size());
    const auto pivots = rref(b, p);
    std::vector<bool> is_pivot(d, false);
    for (int c : pivots) is_pivot[c] = true;
    Mat out;
    for (int f = 0; f < d; ++f) {
        if (is_pivot[f]) continue;
        Row v(d, 0);
        v[f] = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = (p - b[r][f]) % p;
        out.push_back(std::move(v));
    }
    return out;
}

Row mat_vec(const Mat& a, const Row& v, i64 p) {
    const int n = static_cast<int>(a.size());
    Row u(n, 0);
    for (int j = 0; j < n; ++j) {
        i64 acc = 0;
        const Row& row = a[j];
        for (size_t k = 0; k < row.size(); ++k) {
            acc += mod_mul(row[k], v[k], p);
            if (acc >= p) acc -= p;
        }
        u[j] = acc;
    }
    return u;
}

// Characteristic polynomial det(xI - B), monic, coefficients ascending by
// degree. Reduces to upper Hessenberg form by similarity transforms, then
// runs the last-column expansion recurrence.
Row charpoly(Mat h, i64 p) {
    const int d = static_cast<int>(h.size());
    for (int j = 0; j + 2 < d; ++j) {
        int piv = -1;
        for (int i = j + 1; i < d; ++i)
            if (h[i][j] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != j + 1) {
            std::swap(h[piv], h[j + 1]);
            for (int i = 0; i < d; ++i) std::swap(h[i][piv], h[i][j + 1]);
        }
        const i64 inv = mod_inv(h[j + 1][j], p);
        for (int i = j + 2; i < d; ++i) {
            if (h[i][j] == 0) continue;
            const i64 f = mod_mul(h[i][j], inv, p);
            for (int c = 0; c < d; ++c)
                h[i][c] = ((h[i][c] - mod_mul(f, h[j + 1][c], p)) % p + p) % p;
            for (int r = 0; r < d; ++r)
                h[r][j + 1] = (h[r][j + 1] + mod_mul(f, h[r][i], p)) % p;
        }
    }
    // polys[k] = charpoly of the leading k x k block.
    std::vector<Row> polys(d + 1);
    polys[0] = {1};
    for (int k = 1; k <= d; ++k) {
        const Row& prev = polys[k - 1];
        Row q(k + 1, 0);
        for (int i = 0; i < k; ++i) {
            q[i + 1] = (q[i + 1] + prev[i]) % p;  // x * prev
            q[i] = ((q[i] - mod_mul(h[k - 1][k - 1], prev[i], p)) % p + p) % p;
        }
        i64 prod = 1;
        for (int m = k - 2; m >= 0; --m) {
            prod = mod_mul(prod, h[m + 1][m], p);
            if (prod == 0) break;
            const i64 f = mod_mul(h[m][k - 1], prod, p);
            if (f == 0) continue;
            const Row& pm = polys[m];
            for (size_t i = 0; i < pm.size(); ++i)
                q[i] = ((q[i] - mod_mul(f, pm[i], p)) % p + p) % p;
        }
        polys[k] = std::move(q);
    }
    return polys[d];
}

i64 poly_eval(const Row& poly, i64 x, i64 p) {
    i64 acc = 0;
    for (size_t i = poly.size(); i-- > 0;) acc = (mod_mul(acc, x, p) + poly[i]) % p;
    return acc;
}

// ---------- class matrices ----------

// a[j][k] = number of ways z_k = x * y with x in class i, y in class j.
Mat class_matrix(const ConjugacyClassSet& cls, int i, int threads) {
    const int r = static_cast<int>(cls.count());
    const auto& members = cls.class_members(i);
    std::vector<Permutation> inverses;
    inverses.reserve(members.size());
    for (const auto& x : members) inverses.push_back(x.inverse());

    Mat a(r, Row(r, 0));
    auto fill_column = [&](int k) {
        const Permutation& zk = cls.representatives[static_cast<size_t>(k)];
        for (const auto& xi : inverses) ++a[cls.class_of(xi * zk)][k];
    };
    const int nthreads = std::max(1, std::min(threads, r));
    if (nthreads == 1) {
        for (int k = 0; k < r; ++k) fill_column(k);
    } else {
        // Threads own disjoint column stripes, so the counts they write
        // never overlap and the result is independent of scheduling.
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(nthreads));
        for (int m = 0; m < nthreads; ++m)
            pool.emplace_back([&, m]() {
                for (int k = m; k < r; k += nthreads) fill_column(k);
            });
        for (auto& th : pool) th.join();
    }
    return a;
}

// ---------- the eigenvector splitting ----------

struct Space {
    Mat basis;                // rows in reduced echelon form, width r
    std::vector<int> pivots;  // pivot column of each basis row
};

// Restriction of a (mod p, r x r) to the span of s; column l holds the
// coordinates of a * basis[l]. Throws if the span is not invariant.
Mat restrict_to(const Mat& a, const Space& s, i64 p) {
    const int d = static_cast<int>(s.basis.size());
    Mat b(d, Row(d, 0));
    for (int l = 0; l < d; ++l) {
        const Row u = mat_vec(a, s.basis[l], p);
        Row coords(d);
        for (int m = 0; m < d; ++m) coords[m] = u[s.pivots[m]];
        Row check(u.size(), 0);
        for (int m = 0; m < d; ++m) {
            if (coords[m] == 0) continue;
            for (size_t c = 0; c < check.size(); ++c)
                check[c] = (check[c] + mod_mul(coords[m], s.basis[m][c], p)) % p;
        }
        if (check != u)
            throw computation_error(
                "class matrix does not preserve a split subspace");
        for (int m = 0; m < d; ++m) b[m][l] = coords[m];
    }
    return b;
}

// Splits s into the eigenspaces of b (the restriction of a class matrix),
// appending them in ascending eigenvalue order. Certifies that the
// geometric multiplicities exhaust the dimension.
void split_space(const Space& s, const Mat& b, i64 p, std::vector<Space>& out) {
    const int d = static_cast<int>(s.basis.size());
    const Row poly = charpoly(b, p);
    int remaining = d;
    for (i64 lam = 0; lam < p && remaining > 0; ++lam) {
        if (poly_eval(poly, lam, p) != 0) continue;
        Mat shifted = b;
        for (int i = 0; i < d; ++i)
            shifted[i][i] = ((shifted[i][i] - lam) % p + p) % p;
        const Mat ker = kernel_basis(std::move(shifted), p);
        if (ker.empty())
            throw computation_error("eigenvalue with empty eigenspace");
        Space child;
        for (const Row& kv : ker) {
            Row w(s.basis[0].size(), 0);
            for (int m = 0; m < d; ++m) {
                if (kv[m] == 0) continue;
                for (size_t c = 0; c < w.size(); ++c)
                    w[c] = (w[c] + mod_mul(kv[m], s.basis[m][c], p)) % p;
            }
            child.basis.push_back(std::move(w));
        }
        child.pivots = rref(child.basis, p);
        remaining -= static_cast<int>(child.basis.size());
        out.push_back(std::move(child));
    }
    if (remaining != 0)
        throw computation_error(
            "class matrix restriction is not diagonalizable over F_p");
}

// ---------- certified exact verification of a finished table ----------

void certify_table(const CharacterTable& t) {
    const int r = t.class_count();
    const BigInt& g = t.order;
    BigInt degree_square_sum = 0;
    for (int row = 0; row < r; ++row) {
        const Cyclo& dval = t.values[row][static_cast<size_t>(t.identity_class)];
        if (!dval.is_integer())
            throw computation_error("degree is not an integer");
        const BigInt d = dval.integer_value();
        if (d <= 0) throw computation_error("degree is not positive");
        if (g % d != 0) throw computation_error("degree does not divide order");
        degree_square_sum += d * d;
    }
    if (degree_square_sum != g)
        throw computation_error("degree squares do not sum to the order");
    std::vector<std::vector<Cyclo>> conj(t.values.size());
    for (size_t row = 0; row < t.values.size(); ++row)
        for (const Cyclo& v : t.values[row])
            conj[row].push_back(v.conjugate());
    for (int a = 0; a < r; ++a)
        for (int b = a; b < r; ++b) {
            Cyclo acc;
            for (int k = 0; k < r; ++k)
                acc += Cyclo(t.class_sizes[k]) * t.values[a][k] * conj[b][k];
            const Cyclo expect = a == b ? Cyclo(g) : Cyclo();
            if (acc != expect)
                throw computation_error("row orthogonality certificate failed");
        }
    for (int j = 0; j < r; ++j)
        for (int k = j; k < r; ++k) {
            Cyclo acc;
            for (int row = 0; row < r; ++row)
                acc += t.values[row][j] * conj[row][k];
            Cyclo expect;
            if (j == k) {
                if (g % t.class_sizes[j] != 0)
                    throw computation_error("class size does not divide order");
                expect = Cyclo(BigInt(g / t.class_sizes[j]));
            }
            if (acc != expect)
                throw computation_error(
                    "column orthogonality certificate failed");
        }
}

}  // namespace

// ---------- CharacterTable helpers ----------

std::int64_t CharacterTable::exponent() const {
    BigInt e = 1;
    for (std::int64_t o : element_orders) {
        if (o <= 0) throw precondition_error("element order data missing");
        e = lcm(e, BigInt(o));
    }
    return to_int64(e, "table exponent");
}

BigInt CharacterTable::degree(int row) const {
    const Cyclo& v = values.at(static_cast<size_t>(row))
                         .at(static_cast<size_t>(identity_class));
    if (!v.is_integer() || v.integer_value() <= 0)
        throw precondition_error("row value on the identity class is not a "
                                 "positive integer");
    return v.integer_value();
}

std::vector<BigInt> CharacterTable::centralizer_orders() const {
    std::vector<BigInt> out;
    out.reserve(class_sizes.size());
    for (const BigInt& s : class_sizes) {
        if (s <= 0 || order % s != 0)
            throw precondition_error(
                "class size does not divide the group order");
        out.push_back(order / s);
    }
    return out;
}

// ---------- the computation ----------

CharacterTable compute_character_table(const PermutationGroup& g,
                                       const ConjugacyClassSet& cls,
                                       const ComputeOptions& opt) {
    if (g.order() > opt.max_order)
        throw capacity_error("group order exceeds the configured bound");
    const int r = static_cast<int>(cls.count());
    if (r > opt.max_classes)
        throw capacity_error("class count exceeds the configured bound");
    if (!cls.has_classifier())
        throw precondition_error("class set lacks classifier data");

    const i64 e = cls.exponent();
    const i64 p = splitting_prime(e, g.order());
    const i64 gmod = to_int64(g.order() % p);

    std::vector<i64> h(r), hinv(r);
    std::vector<int> invclass(r);
    for (int k = 0; k < r; ++k) {
        h[k] = to_int64(cls.sizes[k] % p);
        hinv[k] = mod_inv(h[k], p);
        invclass[k] = cls.class_of(cls.representatives[k].inverse());
    }

    // Split F_p^r by every class matrix until only common eigenlines
    // remain. Later matrices act as scalars on finished lines, so a single
    // pass in canonical class order is enough.
    std::vector<Space> spaces(1);
    spaces[0].basis = Mat(r, Row(r, 0));
    for (int i = 0; i < r; ++i) {
        spaces[0].basis[i][i] = 1;
        spaces[0].pivots.push_back(i);
    }
    for (int i = 1; i < r; ++i) {
        bool any_big = false;
        for (const Space& s : spaces)
            if (s.basis.size() > 1) {
                any_big = true;
                break;
            }
        if (!any_big) break;
        Mat a = class_matrix(cls, i, opt.threads);
        for (auto& row : a)
            for (i64& x : row) x %= p;
        std::vector<Space> next;
        next.reserve(spaces.size());
        for (Space& s : spaces) {
            if (s.basis.size() == 1) {
                next.push_back(std::move(s));
                continue;
            }
            const Mat b = restrict_to(a, s, p);
            split_space(s, b, p, next);
        }
        spaces = std::move(next);
    }
    for (const Space& s : spaces)
        if (s.basis.size() != 1)
            throw computation_error("class matrices failed to separate the "
                                    "characters");

    // Degrees and lifted values per eigenline.
    const i64 z = mod_pow(smallest_primitive_root(p), (p - 1) / e, p);
    const i64 sqrt_bound = to_int64(boost::multiprecision::sqrt(g.order()));

    struct PendingRow {
        i64 degree;
        std::vector<Cyclo> values;
    };
    std::vector<PendingRow> rows;
    rows.reserve(static_cast<size_t>(r));
    for (const Space& s : spaces) {
        Row w = s.basis[0];
        if (w[0] == 0)
            throw computation_error("eigenvector vanishes on the identity "
                                    "class");
        const i64 scale = mod_inv(w[0], p);
        for (i64& x : w) x = mod_mul(x, scale, p);

        i64 t_acc = 0;
        for (int k = 0; k < r; ++k)
            t_acc = (t_acc +
                     mod_mul(mod_mul(w[k], w[invclass[k]], p), hinv[k], p)) %
                    p;
        if (t_acc == 0)
            throw computation_error("degree recovery sum vanished");
        const i64 dsq = mod_mul(gmod, mod_inv(t_acc, p), p);
        i64 degree = 0;
        for (i64 d = 1; d <= sqrt_bound; ++d)
            if (mod_mul(d % p, d % p, p) == dsq) {
                degree = d;
                break;
            }
        if (degree == 0)
            throw computation_error("no degree matches the recovered square");

        std::vector<i64> theta(r);
        for (int k = 0; k < r; ++k)
            theta[k] = mod_mul(mod_mul(degree % p, w[k], p), hinv[k], p);

        PendingRow row;
        row.degree = degree;
        row.values.resize(static_cast<size_t>(r));
        for (int k = 0; k < r; ++k) {
            const i64 ek = cls.element_orders[k];
            if (ek == 1) {
                row.values[k] = Cyclo(BigInt(degree));
                continue;
            }
            const i64 zk = mod_pow(z, e / ek, p);
            const i64 zkinv = mod_inv(zk, p);
            std::vector<i64> zkinv_pow(static_cast<size_t>(ek));
            zkinv_pow[0] = 1;
            for (i64 m = 1; m < ek; ++m)
                zkinv_pow[m] = mod_mul(zkinv_pow[m - 1], zkinv, p);
            std::vector<i64> theta_pow(static_cast<size_t>(ek));
            {
                Permutation cur(cls.representatives[k].degree());
                for (i64 s2 = 0; s2 < ek; ++s2) {
                    theta_pow[s2] = theta[cls.class_of(cur)];
                    cur = cur * cls.representatives[k];
                }
            }
            const i64 ekinv = mod_inv(ek % p, p);
            i64 mult_sum = 0;
            Cyclo value;
            for (i64 t = 0; t < ek; ++t) {
                i64 acc = 0;
                for (i64 s2 = 0; s2 < ek; ++s2)
                    acc = (acc + mod_mul(theta_pow[s2],
                                         zkinv_pow[(s2 * t) % ek], p)) %
                          p;
                const i64 mult = mod_mul(acc, ekinv, p);
                mult_sum += mult;
                if (mult != 0)
                    value += Cyclo(BigInt(mult)) * Cyclo::root_of_unity(ek, t);
            }
            if (mult_sum != degree)
                throw computation_error(
                    "root-of-unity multiplicities do not sum to the degree");
            row.values[k] = value;
        }
        rows.push_back(std::move(row));
    }

    std::sort(rows.begin(), rows.end(),
              [](const PendingRow& a, const PendingRow& b) {
                  if (a.degree != b.degree) return a.degree < b.degree;
                  for (size_t k = 0; k < a.values.size(); ++k) {
                      const int c = cyclo::compare(a.values[k], b.values[k]);
                      if (c != 0) return c < 0;
                  }
                  return false;
              });

    CharacterTable table;
    table.order = g.order();
    table.class_sizes = cls.sizes;
    table.element_orders = cls.element_orders;
    table.power_maps = cls.power_maps;
    table.identity_class = 0;
    table.values.reserve(rows.size());
    for (auto& row : rows) table.values.push_back(std::move(row.values));

    certify_table(table);
    return table;
}

CharacterTable compute_character_table(const PermutationGroup& g,
                                       const ComputeOptions& opt) {
    permgroup::ClassOptions copt;
    copt.max_order = opt.max_order;
    copt.seed = opt.seed;
    return compute_character_table(g, conjugacy_classes(g, copt), opt);
}

// ---------- table readers ----------

std::vector<int> squaring_map(const CharacterTable& t) {
    const int r = t.class_count();
    const auto it = t.power_maps.find(2);
    if (it != t.power_maps.end()) {
        if (static_cast<int>(it->second.size()) != r)
            throw precondition_error("stored squaring map has wrong length");
        return it->second;
    }
    for (std::int64_t o : t.element_orders)
        if (o <= 0 || o % 2 == 0)
            throw precondition_error(
                "no squaring data: table lacks a prime-2 power map and has "
                "even element orders");
    // Odd exponent: squaring permutes each cyclic subgroup, and the column
    // of g^2 is the Galois transform of the column of g.
    std::vector<int> sq(static_cast<size_t>(r), -1);
    for (int k = 0; k < r; ++k) {
        std::vector<Cyclo> want;
        want.reserve(t.values.size());
        for (const auto& row : t.values) want.push_back(row[k].galois(2));
        int found = -1;
        for (int j = 0; j < r && found < 0; ++j) {
            bool all = true;
            for (size_t row = 0; row < t.values.size(); ++row)
                if (t.values[row][j] != want[row]) {
                    all = false;
                    break;
                }
            if (all) found = j;
        }
        if (found < 0)
            throw precondition_error(
                "no squaring data: Galois image of a column is missing");
        sq[k] = found;
    }
    return sq;
}

int fs_indicator(const CharacterTable& t, int row) {
    if (row < 0 || row >= t.row_count())
        throw precondition_error("row index out of range");
    const std::vector<int> sq = squaring_map(t);
    Cyclo acc;
    for (int k = 0; k < t.class_count(); ++k)
        acc += Cyclo(t.class_sizes[k]) * t.values[row][sq[k]];
    if (acc.is_zero()) return 0;
    if (acc == Cyclo(t.order)) return 1;
    if (acc == -Cyclo(t.order)) return -1;
    throw computation_error("indicator sum is not -|G|, 0 or +|G|");
}

std::vector<int> fs_indicators(const CharacterTable& t) {
    std::vector<int> out;
    out.reserve(t.values.size());
    for (int row = 0; row < t.row_count(); ++row)
        out.push_back(fs_indicator(t, row));
    return out;
}

std::vector<int> kernel_classes(const CharacterTable& t, int row) {
    if (row < 0 || row >= t.row_count())
        throw precondition_error("row index out of range");
    std::vector<int> out;
    const Cyclo& d = t.values[row][static_cast<size_t>(t.identity_class)];
    for (int k = 0; k < t.class_count(); ++k)
        if (t.values[row][k] == d) out.push_back(k);
    return out;
}

DerivedSubgroupData derived_subgroup_data(const CharacterTable& t) {
    DerivedSubgroupData data;
    std::vector<bool> in(static_cast<size_t>(t.class_count()), true);
    const Cyclo one(1);
    for (int row = 0; row < t.row_count(); ++row) {
        if (t.values[row][static_cast<size_t>(t.identity_class)] != one)
            continue;
        ++data.linear_character_count;
        std::vector<bool> keep(static_cast<size_t>(t.class_count()), false);
        for (int k : kernel_classes(t, row)) keep[k] = true;
        for (size_t k = 0; k < in.size(); ++k) in[k] = in[k] && keep[k];
    }
    data.order = 0;
    for (int k = 0; k < t.class_count(); ++k)
        if (in[k]) {
            data.classes.push_back(k);
            data.order += t.class_sizes[k];
        }
    return data;
}

std::vector<int> centre_classes(const CharacterTable& t) {
    std::vector<int> out;
    for (int k = 0; k < t.class_count(); ++k) {
        const bool by_size = t.class_sizes[k] == 1;
        bool by_values = true;
        for (int row = 0; row < t.row_count() && by_values; ++row) {
            const Cyclo& v = t.values[row][k];
            const Cyclo& d =
                t.values[row][static_cast<size_t>(t.identity_class)];
            if (v * v.conjugate() != d * d.conjugate()) by_values = false;
        }
        if (by_size != by_values)
            throw inconsistency_error(
                "central-class criteria disagree on column " +
                std::to_string(k));
        if (by_size) out.push_back(k);
    }
    return out;
}

// ---------- composition shape ----------

namespace {

std::vector<std::pair<i64, int>> factorize_i64(i64 n) {
    std::vector<std::pair<i64, int>> out;
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        int m = 0;
        while (n % d == 0) {
            n /= d;
            ++m;
        }
        out.push_back({d, m});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

// Orders certified solvable from the order alone: odd (odd-order theorem),
// a prime power, a product of two prime powers, or below 60.
bool solvable_order(const BigInt& n) {
    if (n < 60) return true;
    if (n % 2 == 1) return true;
    if (n > BigInt("1000000000000000000")) return false;
    const auto f = factorize_i64(to_int64(n));
    return f.size() <= 2;
}

void append_prime_factors(const BigInt& n, std::vector<std::string>& out) {
    for (const auto& [prime, mult] : factorize_i64(to_int64(n, "order")))
        for (int i = 0; i < mult; ++i)
            out.push_back("C" + std::to_string(prime));
}

std::string join(const std::vector<std::string>& parts) {
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ", ";
        s += parts[i];
    }
    return s;
}

// Character table of the quotient by a visible normal subgroup (given by
// its classes): rows with that subgroup in their kernel, columns fused by
// equal value vectors. Element orders and power maps are not derivable
// here and are left empty; the shape analysis never touches them.
CharacterTable quotient_by_normal_classes(const CharacterTable& t,
                                          const std::vector<int>& ncls) {
    BigInt nord = 0;
    for (int k : ncls) nord += t.class_sizes[k];
    if (nord <= 0 || t.order % nord != 0)
        throw computation_error("visible normal subgroup order does not "
                                "divide the group order");

    std::vector<int> rows;
    for (int row = 0; row < t.row_count(); ++row) {
        const Cyclo& d = t.values[row][static_cast<size_t>(t.identity_class)];
        bool contains = true;
        for (int k : ncls)
            if (t.values[row][k] != d) {
                contains = false;
                break;
            }
        if (contains) rows.push_back(row);
    }

    // Fuse columns with identical values across the selected rows.
    auto vec_less = [](const std::vector<Cyclo>& a,
                       const std::vector<Cyclo>& b) {
        for (size_t i = 0; i < a.size(); ++i) {
            const int c = cyclo::compare(a[i], b[i]);
            if (c != 0) return c < 0;
        }
        return false;
    };
    std::map<std::vector<Cyclo>, int, decltype(vec_less)> fused(vec_less);
    std::vector<int> col_group(static_cast<size_t>(t.class_count()));
    std::vector<BigInt> fused_size;
    std::vector<int> rep_col;
    for (int k = 0; k < t.class_count(); ++k) {
        std::vector<Cyclo> key;
        key.reserve(rows.size());
        for (int row : rows) key.push_back(t.values[row][k]);
        auto [it, inserted] =
            fused.insert({std::move(key), static_cast<int>(rep_col.size())});
        if (inserted) {
            rep_col.push_back(k);
            fused_size.push_back(0);
        }
        col_group[k] = it->second;
        fused_size[it->second] += t.class_sizes[k];
    }

    CharacterTable q;
    q.group_name = t.group_name.empty() ? "" : t.group_name + "/N";
    q.order = t.order / nord;
    q.identity_class = col_group[static_cast<size_t>(t.identity_class)];
    q.class_sizes.reserve(fused_size.size());
    for (const BigInt& s : fused_size) {
        if (s % nord != 0)
            throw computation_error("fused class size is not a multiple of "
                                    "the visible subgroup order");
        q.class_sizes.push_back(s / nord);
    }
    q.element_orders.assign(fused_size.size(), 0);
    for (int row : rows) {
        std::vector<Cyclo> vals(fused_size.size());
        for (size_t c = 0; c < rep_col.size(); ++c)
            vals[c] = t.values[row][rep_col[c]];
        q.values.push_back(std::move(vals));
    }
    return q;
}

void analyze_shape(const CharacterTable& t, CompositionShapeReport& rep,
                   int depth) {
    if (t.order == 1) return;
    if (depth > 64) {
        rep.undetermined.push_back("analysis recursion bound reached");
        rep.ambiguous = true;
        return;
    }
    const DerivedSubgroupData derived = derived_subgroup_data(t);
    if (derived.order == 1 || solvable_order(t.order)) {
        append_prime_factors(t.order, rep.factors);
        return;
    }

    // Visible normal subgroups: kernels of single rows, closed under
    // intersection; pick a minimal nontrivial proper one.
    std::set<std::vector<int>> visible;
    for (int row = 0; row < t.row_count(); ++row)
        visible.insert(kernel_classes(t, row));
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<std::vector<int>> items(visible.begin(), visible.end());
        for (size_t a = 0; a < items.size(); ++a)
            for (size_t b = a + 1; b < items.size(); ++b) {
                std::vector<int> meet;
                std::set_intersection(items[a].begin(), items[a].end(),
                                      items[b].begin(), items[b].end(),
                                      std::back_inserter(meet));
                if (visible.insert(meet).second) grew = true;
            }
    }
    auto subgroup_order = [&t](const std::vector<int>& classes) {
        BigInt o = 0;
        for (int k : classes) o += t.class_sizes[k];
        return o;
    };
    const std::vector<int>* minimal = nullptr;
    BigInt minimal_order = 0;
    for (const auto& cand : visible) {
        const BigInt o = subgroup_order(cand);
        if (o <= 1 || o >= t.order) continue;
        if (minimal == nullptr || o < minimal_order ||
            (o == minimal_order && cand < *minimal)) {
            minimal = &cand;
            minimal_order = o;
        }
    }

    if (minimal == nullptr) {
        // No proper nontrivial kernel: the group is simple.
        if (t.order > catalog::catalog_bound()) {
            rep.notes.push_back("simple, but order " + to_string(t.order) +
                                " exceeds the catalog bound");
            rep.ambiguous = true;
            return;
        }
        const auto matches = catalog::simple_groups_of_order(t.order);
        if (matches.empty()) {
            rep.notes.push_back(
                "no simple group has order " + to_string(t.order) +
                "; the table cannot belong to a group");
            rep.ambiguous = true;
            return;
        }
        if (matches.size() == 1) {
            rep.factors.push_back(matches[0].name);
            return;
        }
        std::vector<std::string> names;
        for (const auto& m : matches) names.push_back(m.name);
        rep.notes.push_back("order " + to_string(t.order) +
                            " is shared by simple groups " + join(names));
        std::vector<BigInt> profile = t.centralizer_orders();
        std::sort(profile.begin(), profile.end());
        const catalog::SimpleGroupEntry* hit = nullptr;
        bool unique = true;
        for (const auto& m : matches)
            if (m.centralizer_profile == profile) {
                if (hit) unique = false;
                hit = &m;
            }
        if (hit != nullptr && unique) {
            rep.factors.push_back(hit->name);
            rep.notes.push_back("resolved to " + hit->name +
                                " by the centralizer-order multiset");
        } else {
            rep.undetermined.push_back("simple factor of order " +
                                       to_string(t.order) + " (one of " +
                                       join(names) + ")");
            rep.ambiguous = true;
        }
        return;
    }

    if (minimal_order == 1 || minimal_order >= t.order)
        throw computation_error("minimal visible normal subgroup is "
                                "degenerate");
    bool resolved = false;
    if (solvable_order(minimal_order)) {
        append_prime_factors(minimal_order, rep.factors);
        resolved = true;
    }
    if (!resolved) {
        rep.undetermined.push_back(
            "normal subgroup of order " + to_string(minimal_order) +
            ": its composition factors are not determined by the table");
        const auto cands = catalog::simple_groups_of_order(minimal_order);
        if (!cands.empty()) {
            std::vector<std::string> names;
            for (const auto& c : cands) names.push_back(c.name);
            rep.notes.push_back("simple groups of order " +
                                to_string(minimal_order) + ": " + join(names));
        }
        rep.ambiguous = true;
    }
    analyze_shape(quotient_by_normal_classes(t, *minimal), rep, depth + 1);
}

}  // namespace

std::string CompositionShapeReport::str() const {
    std::ostringstream os;
    os << "abelian: " << (abelian ? "yes" : "no") << "\n";
    os << "perfect: " << (perfect ? "yes" : "no") << "\n";
    os << "derived-series-orders:";
    for (const BigInt& o : derived_series_orders) os << " " << to_string(o);
    os << "\n";
    os << "factors: " << (factors.empty() ? "none determined" : join(factors))
       << "\n";
    for (const auto& u : undetermined) os << "undetermined: " << u << "\n";
    for (const auto& n : notes) os << "note: " << n << "\n";
    os << "ambiguous: " << (ambiguous ? "yes" : "no") << "\n";
    return os.str();
}

CompositionShapeReport identify_composition_shape(const CharacterTable& t) {
    CompositionShapeReport rep;
    const DerivedSubgroupData derived = derived_subgroup_data(t);
    rep.abelian = derived.order == 1;
    rep.perfect = derived.order == t.order;
    rep.derived_series_orders = {t.order, derived.order};
    analyze_shape(t, rep, 0);
    return rep;
}

}  // namespace ctt::chartab
