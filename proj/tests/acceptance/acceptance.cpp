// Acceptance checks for the toolkit, one criterion per line of output:
//
//   1  battery of stored groups: recompute, certify, and match an
//      independent brute-force solver on every group of order <= 60
//   2  D8 and Q8: identical value matrices, separated only by power maps
//   3  mutation corpus over A5, S4, Q8: flips and value edits are caught
//      by the internal checks, reshapes by the dimension scan, and the
//      subtle mutants only by full equivalence search
//   4  bicyclic sandwich enumeration on D12 and the order-240 extension
//      of SL(2,5), confirmed against a brute-force enumeration
//   5  the two catalogued orbit splittings, reproduced exactly
//   6  byte-identical serialized output across thread counts, seeds, and
//      generator orderings
//   7  Frobenius-Schur indicators against direct square-class summation
//   8  serialization round trips and rejection of malformed files
//
// Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctt/chartab.hpp"
#include "ctt/cyclo.hpp"
#include "ctt/errors.hpp"
#include "ctt/extensions.hpp"
#include "ctt/orbits.hpp"
#include "ctt/permgroup.hpp"
#include "ctt/tblio.hpp"
#include "ctt/verify.hpp"
#include "oracle.hpp"

using ctt::BigInt;
using ctt::cyclo::Cyclo;
using ctt::chartab::CharacterTable;
using ctt::permgroup::Permutation;
using ctt::permgroup::PermutationGroup;

namespace {

// ------------------------------------------------------------- plumbing ----

void expect(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error(what);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    expect(in.good(), "cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

const std::vector<std::string> kBattery = {
    "c2", "c3", "c4",  "c5",  "c6",  "c7",   "c8",     "c9",
    "c10", "c11", "c12", "s3", "s4",  "s5",   "a4",     "a5",
    "d8", "d12", "q8",  "f20", "sl23", "sl25", "glpm25", "psl27"};

std::map<std::string, ctt::tblio::GroupDocument> g_docs;
std::map<std::string, PermutationGroup> g_groups;
std::map<std::string, CharacterTable> g_tables;

const ctt::tblio::GroupDocument& doc_of(const std::string& name) {
    auto it = g_docs.find(name);
    if (it == g_docs.end())
        it = g_docs
                 .emplace(name, ctt::tblio::parse_group(slurp(
                                    std::string(CTT_FIXTURES_DIR) +
                                    "/groups/" + name + ".grp")))
                 .first;
    return it->second;
}

const PermutationGroup& group_of(const std::string& name) {
    auto it = g_groups.find(name);
    if (it == g_groups.end()) {
        const auto& d = doc_of(name);
        it = g_groups.emplace(name, PermutationGroup(d.degree, d.generators))
                 .first;
    }
    return it->second;
}

const CharacterTable& table_of(const std::string& name) {
    auto it = g_tables.find(name);
    if (it == g_tables.end()) {
        CharacterTable t = ctt::chartab::compute_character_table(
            group_of(name), ctt::chartab::ComputeOptions{});
        t.group_name = doc_of(name).name;
        it = g_tables.emplace(name, std::move(t)).first;
    }
    return it->second;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double secs() const {
        return std::chrono::duration<double>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

// --------------------------------------- brute-force subquotient oracle ----

using PermSet = std::vector<Permutation>;  // sorted element set

PermSet close_over(int degree, std::vector<Permutation> gens) {
    std::set<Permutation> seen{Permutation(degree)};
    std::vector<Permutation> queue{Permutation(degree)};
    while (!queue.empty()) {
        const Permutation at = queue.back();
        queue.pop_back();
        for (const auto& gen : gens) {
            Permutation next = at * gen;
            if (seen.insert(next).second) queue.push_back(std::move(next));
        }
    }
    return PermSet(seen.begin(), seen.end());
}

PermSet conj_set(const PermSet& s, const Permutation& c) {
    PermSet out;
    out.reserve(s.size());
    for (const auto& p : s) out.push_back(p.conjugated_by(c));
    std::sort(out.begin(), out.end());
    return out;
}

bool set_has(const PermSet& s, const Permutation& p) {
    return std::binary_search(s.begin(), s.end(), p);
}

struct BrutePairs {
    std::vector<std::pair<PermSet, PermSet>> pairs;  // (U, K) element sets
    std::vector<int> orbit_of;                       // union-find result
    int orbit_count = 0;
};

// Every (U, K) with N <= U <= G, U/N cyclic, K <= M, M/K cyclic, K normal
// in U, built from first principles, then merged into conjugation orbits
// by conjugating with every single group element.
BrutePairs brute_bicyclic(const PermutationGroup& g, const PermSet& m_els,
                          const std::vector<Permutation>& n_gens) {
    const int deg = g.degree();
    const auto& all = g.elements(BigInt(1000));

    std::vector<PermSet> us;
    for (const auto& x : all) {
        auto ngens = n_gens;
        ngens.push_back(x);
        PermSet u = close_over(deg, ngens);
        if (std::find(us.begin(), us.end(), u) == us.end())
            us.push_back(std::move(u));
    }

    expect(m_els.size() <= 8, "brute subgroup scan limited to tiny M");
    std::vector<PermSet> ks;
    for (size_t mask = 0; mask < (size_t{1} << m_els.size()); ++mask) {
        std::vector<Permutation> sub;
        for (size_t i = 0; i < m_els.size(); ++i)
            if (mask & (size_t{1} << i)) sub.push_back(m_els[i]);
        PermSet k = close_over(deg, sub);
        if (!std::includes(m_els.begin(), m_els.end(), k.begin(), k.end()))
            continue;
        bool cyclic_over = false;
        for (const auto& m : m_els) {
            auto kgens = sub;
            kgens.push_back(m);
            if (close_over(deg, kgens) == m_els) {
                cyclic_over = true;
                break;
            }
        }
        if (!cyclic_over) continue;
        if (std::find(ks.begin(), ks.end(), k) == ks.end())
            ks.push_back(std::move(k));
    }

    BrutePairs out;
    for (const auto& u : us)
        for (const auto& k : ks) {
            bool normal = true;
            for (const auto& uu : u) {
                for (const auto& kk : k)
                    if (!set_has(k, kk.conjugated_by(uu))) {
                        normal = false;
                        break;
                    }
                if (!normal) break;
            }
            if (normal) out.pairs.emplace_back(u, k);
        }

    std::vector<int> parent(out.pairs.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int a) {
        while (parent[static_cast<size_t>(a)] != a)
            a = parent[static_cast<size_t>(a)] =
                parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
        return a;
    };
    for (size_t i = 0; i < out.pairs.size(); ++i)
        for (const auto& c : all) {
            const auto img = std::make_pair(conj_set(out.pairs[i].first, c),
                                            conj_set(out.pairs[i].second, c));
            const auto it = std::find(out.pairs.begin(), out.pairs.end(), img);
            expect(it != out.pairs.end(),
                   "conjugate of a candidate pair is not a candidate");
            const int a = find(static_cast<int>(i));
            const int b =
                find(static_cast<int>(std::distance(out.pairs.begin(), it)));
            if (a != b) parent[static_cast<size_t>(a)] = b;
        }
    std::set<int> roots;
    out.orbit_of.resize(out.pairs.size());
    for (size_t i = 0; i < out.pairs.size(); ++i) {
        out.orbit_of[i] = find(static_cast<int>(i));
        roots.insert(out.orbit_of[i]);
    }
    out.orbit_count = static_cast<int>(roots.size());
    return out;
}

// Library enumeration vs the brute-force pairs: same number of classes,
// every returned representative a genuine candidate, no two in one orbit.
void cross_check_sandwich(const PermutationGroup& g,
                          const ctt::permgroup::SubgroupHandle& m,
                          const ctt::permgroup::SubgroupHandle& n,
                          const std::vector<ctt::extensions::SubquotientDescriptor>& ds) {
    const auto brute =
        brute_bicyclic(g, m.group.elements(BigInt(1000)), n.group.generators());
    expect(static_cast<int>(ds.size()) == brute.orbit_count,
           "representative count disagrees with brute force");
    std::set<int> seen_orbits;
    for (const auto& d : ds) {
        const auto key = std::make_pair(d.U.group.elements(BigInt(1000)),
                                        d.K.group.elements(BigInt(1000)));
        const auto it =
            std::find(brute.pairs.begin(), brute.pairs.end(), key);
        expect(it != brute.pairs.end(),
               "representative is not a brute-force candidate");
        const int orbit = brute.orbit_of[static_cast<size_t>(
            std::distance(brute.pairs.begin(), it))];
        expect(seen_orbits.insert(orbit).second,
               "two representatives share a conjugation orbit");
    }
}

// ------------------------------------------------------------- criteria ----

std::string criterion_battery() {
    Timer tm;
    int oracle_checked = 0;
    for (const auto& name : kBattery) {
        const auto& t = table_of(name);
        const auto report = ctt::verify::check_table(t);
        expect(report.all_passed(), name + ": certification failed");

        BigInt sq = 0;
        for (int i = 0; i < t.row_count(); ++i) {
            const BigInt d = t.degree(i);
            sq += d * d;
            expect(t.order % d == 0, name + ": a degree does not divide the order");
        }
        expect(sq == t.order, name + ": degree squares do not sum to the order");

        if (t.order <= 60) {
            const auto& d = doc_of(name);
            oracle::OracleResult ref;
            try {
                ref = oracle::brute_force_table(d.degree, d.generators, d.name);
            } catch (const std::exception& e) {
                throw std::runtime_error(name + ": " + e.what());
            }
            expect(ctt::verify::check_table(ref.table).all_passed(),
                   name + ": oracle table fails certification");
            expect(ctt::verify::tables_equivalent(t, ref.table, true).has_value(),
                   name + ": not equivalent to the brute-force table");
            ++oracle_checked;
        }
    }
    expect(tm.secs() < 120.0, "battery exceeded its time budget");
    return std::to_string(kBattery.size()) + " tables certified, " +
           std::to_string(oracle_checked) + " matched the brute-force solver";
}

std::string criterion_power_map_separation() {
    const auto& d8 = table_of("d8");
    const auto& q8 = table_of("q8");
    Timer tm;
    const auto loose = ctt::verify::tables_equivalent(d8, q8, false);
    const auto strict = ctt::verify::tables_equivalent(d8, q8, true);
    const double took = tm.secs();
    expect(loose.has_value(), "D8 and Q8 value matrices should be equivalent");
    expect(!strict.has_value(), "power maps should separate D8 from Q8");
    expect(took < 1.0, "equivalence search exceeded one second");
    return "same values, separated by the power maps alone";
}

std::string criterion_mutation_tiers() {
    using ctt::verify::MutationKind;
    using ctt::verify::MutationSpec;
    int flips = 0, edits = 0, reshapes = 0, subtle = 0;
    for (const auto& name : {"a5", "s4", "q8"}) {
        const auto& g = group_of(name);
        const auto& t = table_of(name);
        const int r = t.row_count();

        // Every sign flip of a nonzero entry, identity column included,
        // is caught by the internal consistency checks alone.
        for (int i = 0; i < r; ++i)
            for (int k = 0; k < t.class_count(); ++k) {
                if (t.value(i, k).is_zero()) continue;
                MutationSpec m;
                m.kind = MutationKind::sign_flip;
                m.row = i;
                m.column = k;
                const auto mutant = ctt::verify::inject_mutation(t, m);
                const int tier = ctt::verify::classify_detection(g, mutant);
                expect(tier == 1, std::string(name) + ": sign flip at (" +
                                      std::to_string(i) + "," +
                                      std::to_string(k) +
                                      ") classified as tier " +
                                      std::to_string(tier));
                ++flips;
            }

        // A few value edits, including a degree edit.
        for (const auto& [i, k] : {std::pair<int, int>{0, 1}, {1, 1}, {r - 1, 0}}) {
            MutationSpec m;
            m.kind = MutationKind::value_change;
            m.row = i;
            m.column = k;
            m.value = t.value(i, k) + Cyclo(1);
            const auto mutant = ctt::verify::inject_mutation(t, m);
            const int tier = ctt::verify::classify_detection(g, mutant);
            expect(tier == 1, std::string(name) + ": value edit at (" +
                                  std::to_string(i) + "," + std::to_string(k) +
                                  ") classified as tier " + std::to_string(tier));
            ++edits;
        }

        // Merging or splitting classes changes the dimensions: caught by
        // the shape scan, never silently accepted.
        {
            MutationSpec m;
            m.kind = MutationKind::class_split_merge;
            m.column = 1;
            m.column2 = 2;
            const int tier =
                ctt::verify::classify_detection(g, ctt::verify::inject_mutation(t, m));
            expect(tier == 2, std::string(name) + ": class merge classified as tier " +
                                  std::to_string(tier));
            ++reshapes;
        }
        {
            MutationSpec m;
            m.kind = MutationKind::class_split_merge;
            m.column = 2;  // an even-sized class in all three tables
            const int tier =
                ctt::verify::classify_detection(g, ctt::verify::inject_mutation(t, m));
            expect(tier == 2, std::string(name) + ": class split classified as tier " +
                                  std::to_string(tier));
            ++reshapes;
        }
    }

    // Two mutants that survive every check short of the full equivalence
    // search. S4: swap the two degree-1 rows and the two degree-3 rows on
    // the transposition and 4-cycle columns.
    {
        const auto& t = table_of("s4");
        MutationSpec a;
        a.kind = MutationKind::extension_swap;
        a.row = 0;
        a.row2 = 1;
        a.columns = {1, 4};
        MutationSpec b = a;
        b.row = 3;
        b.row2 = 4;
        const auto mutant = ctt::verify::inject_mutation(
            ctt::verify::inject_mutation(t, a), b);
        const int tier = ctt::verify::classify_detection(group_of("s4"), mutant);
        expect(tier == 3,
               "s4: paired row swap classified as tier " + std::to_string(tier));
        ++subtle;
    }
    // A5: redirect the squaring map to fix both order-5 classes.
    {
        const auto& t = table_of("a5");
        MutationSpec a;
        a.kind = MutationKind::power_map_change;
        a.prime = 2;
        a.column = 3;
        a.column2 = 3;
        MutationSpec b = a;
        b.column = 4;
        b.column2 = 4;
        const auto mutant = ctt::verify::inject_mutation(
            ctt::verify::inject_mutation(t, a), b);
        const int tier = ctt::verify::classify_detection(group_of("a5"), mutant);
        expect(tier == 3, "a5: power-map redirect classified as tier " +
                              std::to_string(tier));
        ++subtle;
    }

    const int total = flips + edits + reshapes + subtle;
    expect(total >= 50, "mutation corpus is too small");
    return std::to_string(total) + " mutants: " + std::to_string(flips) +
           " flips and " + std::to_string(edits) + " edits tier 1, " +
           std::to_string(reshapes) + " reshapes tier 2, " +
           std::to_string(subtle) + " equivalence-only tier 3, none missed";
}

std::string criterion_sandwiches() {
    Timer tm;

    // D12 = <r, s | r^6 = s^2 = 1, s r s = r^-1>, M = <r^3>, N = <r>.
    {
        const auto& g = group_of("d12");
        expect(g.order() == BigInt(12), "d12 fixture has the wrong order");
        Permutation r(g.degree());
        for (const auto& gen : doc_of("d12").generators)
            if (gen.order() == 6) r = gen;
        expect(r.order() == 6, "d12 fixture lacks an order-6 generator");
        const auto m = ctt::permgroup::make_subgroup(g, {r.power(3)});
        const auto n = ctt::permgroup::make_subgroup(g, {r});
        const auto ds = ctt::extensions::enumerate_bicyclic_subquotients(g, m, n);
        expect(ds.size() == 4, "d12 sandwich should have 4 classes, got " +
                                   std::to_string(ds.size()));
        std::multiset<std::string> labels;
        std::multiset<std::string> orders;
        for (const auto& d : ds) {
            labels.insert(d.label);
            orders.insert(d.quotient_order.str());
        }
        expect(labels == std::multiset<std::string>{"2.C3", "2.C3.2", "C3", "C3.2"},
               "d12 sandwich labels are wrong");
        expect(orders == std::multiset<std::string>{"12", "3", "6", "6"},
               "d12 sandwich quotient orders are wrong");
        cross_check_sandwich(g, m, n, ds);
    }

    // The order-240 group over SL(2,5): M its central involution, N = SL(2,5).
    {
        const auto& g = group_of("glpm25");
        expect(g.order() == BigInt(240), "glpm25 fixture has the wrong order");
        const auto sl = ctt::extensions::derived_subgroup(g);
        expect(sl.order() == BigInt(120), "derived subgroup should be SL(2,5)");
        const auto n = ctt::permgroup::make_subgroup(g, sl.generators());
        Permutation central(g.degree());
        int found = 0;
        for (const auto& x : sl.elements(BigInt(120))) {
            if (x.order() != 2) continue;
            bool commutes = true;
            for (const auto& a : g.generators())
                if (x.conjugated_by(a) != x) commutes = false;
            if (commutes) {
                central = x;
                ++found;
            }
        }
        expect(found == 1, "central involution of SL(2,5) is not unique");
        const auto m = ctt::permgroup::make_subgroup(g, {central});

        const auto ds = ctt::extensions::enumerate_bicyclic_subquotients(g, m, n);
        expect(ds.size() == 4, "glpm25 sandwich should have 4 classes, got " +
                                   std::to_string(ds.size()));
        std::multiset<std::string> orders;
        std::multiset<std::string> abelianizations;
        for (const auto& d : ds) {
            orders.insert(d.quotient_order.str());
            if (d.quotient_order == BigInt(120)) {
                const auto inv = ctt::extensions::abelianization_invariants(
                    ctt::extensions::subquotient_group(d));
                std::string s = "[";
                for (const auto& v : inv) s += " " + v.str();
                abelianizations.insert(s + " ]");
            }
        }
        expect(orders == std::multiset<std::string>{"120", "120", "240", "60"},
               "glpm25 sandwich quotient orders are wrong");
        expect(abelianizations == std::multiset<std::string>{"[ ]", "[ 2 ]"},
               "the two order-120 quotients should be one perfect, one not");
        cross_check_sandwich(g, m, n, ds);
    }

    expect(tm.secs() < 60.0, "sandwich enumeration exceeded its time budget");
    return "4 classes each on D12 and the SL(2,5) extension, brute-force confirmed";
}

std::string criterion_catalogued_orbits() {
    // Nonzero vectors of F_3^2, indexed 3x + y - 1, under the negation
    // map (x,y) -> (-x,y) and the swap (x,y) -> (y,x): two orbits of
    // size four, and exactly these.
    {
        const auto act = [](int a, int b, int c, int d) {
            std::vector<int> img(8);
            for (int x = 0; x < 3; ++x)
                for (int y = 0; y < 3; ++y) {
                    if (x == 0 && y == 0) continue;
                    const int nx = ((a * x + b * y) % 3 + 3) % 3;
                    const int ny = ((c * x + d * y) % 3 + 3) % 3;
                    img[static_cast<size_t>(3 * x + y - 1)] = 3 * nx + ny - 1;
                }
            return img;
        };
        const auto parts = ctt::permgroup::orbit_partition(
            8, {act(-1, 0, 0, 1), act(0, 1, 1, 0)});
        const std::vector<std::vector<int>> want = {{0, 1, 2, 5}, {3, 4, 6, 7}};
        expect(parts.orbits == want, "orbits of the F_3^2 action are wrong");
    }

    // The six cyclic order-4 subgroups of Z_4 x Z_4 under three
    // automorphisms: the split is {(1,0),(0,1),(1,1)} vs the rest.
    {
        const std::vector<std::pair<int, int>> gens = {
            {1, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 1}, {1, 3}};
        const auto members = [](std::pair<int, int> v) {
            std::set<int> s;
            for (int k = 0; k < 4; ++k)
                s.insert(k * v.first % 4 * 4 + k * v.second % 4);
            return s;
        };
        std::vector<std::set<int>> subgroups;
        for (const auto& v : gens) subgroups.push_back(members(v));
        const auto act = [&](int a, int b, int c, int d) {
            std::vector<int> img(6);
            for (size_t i = 0; i < 6; ++i) {
                const int x = gens[i].first, y = gens[i].second;
                const auto image =
                    members({(a * x + b * y) % 4, (c * x + d * y) % 4});
                const auto it =
                    std::find(subgroups.begin(), subgroups.end(), image);
                expect(it != subgroups.end(), "automorphism leaves the list");
                img[i] = static_cast<int>(
                    std::distance(subgroups.begin(), it));
            }
            return img;
        };
        const auto parts = ctt::permgroup::orbit_partition(
            6, {act(0, 1, 3, 1), act(1, 3, 0, 3), act(3, 1, 0, 1)});
        const std::vector<std::vector<int>> want = {{0, 1, 2}, {3, 4, 5}};
        expect(parts.orbits == want, "orbits of the Z_4 x Z_4 action are wrong");
    }
    return "both splittings reproduced with exact memberships";
}

std::string criterion_determinism() {
    for (const auto& name : kBattery) {
        const auto& d = doc_of(name);
        std::vector<std::string> outputs;
        for (int run = 0; run < 3; ++run) {
            auto gens = d.generators;
            if (run == 1) std::reverse(gens.begin(), gens.end());
            if (run == 2) std::rotate(gens.begin(), gens.begin() + 1, gens.end());
            ctt::chartab::ComputeOptions opt;
            opt.threads = run == 0 ? 1 : (run == 1 ? 2 : 4);
            opt.seed = static_cast<std::uint64_t>(run);
            CharacterTable t = ctt::chartab::compute_character_table(
                PermutationGroup(d.degree, gens), opt);
            t.group_name = d.name;
            outputs.push_back(ctt::tblio::serialize_table(t));
        }
        expect(outputs[1] == outputs[0] && outputs[2] == outputs[0],
               name + ": output differs between runs");
    }
    return std::to_string(kBattery.size()) +
           " groups byte-identical across threads, seeds, generator orders";
}

std::string criterion_indicators() {
    const auto fs_of = [](const oracle::OracleResult& o, size_t row) {
        Cyclo sum;
        for (size_t k = 0; k < o.squares.size(); ++k)
            sum += Cyclo(o.table.class_sizes[k]) *
                   o.table.values[row][static_cast<size_t>(o.squares[k])];
        for (int f : {-1, 0, 1})
            if (sum == Cyclo(o.table.order) * Cyclo(f)) return f;
        throw std::runtime_error("square-class sum is not -|G|, 0, or |G|");
    };
    const auto check = [&](const std::string& name, const std::vector<int>& want) {
        const auto& t = table_of(name);
        expect(ctt::chartab::fs_indicators(t) == want,
               name + ": indicator vector is wrong");
        const auto& d = doc_of(name);
        const auto ref = oracle::brute_force_table(d.degree, d.generators, d.name);
        const auto w = ctt::verify::tables_equivalent(t, ref.table, true);
        expect(w.has_value(), name + ": oracle table mismatch");
        for (int i = 0; i < t.row_count(); ++i)
            expect(want[static_cast<size_t>(i)] ==
                       fs_of(ref, static_cast<size_t>(w->row_perm[static_cast<size_t>(i)])),
                   name + ": indicator disagrees with the direct square sum");
    };
    check("q8", {1, 1, 1, 1, -1});
    check("c3", {1, 0, 0});
    return "Q8 and C3 match the direct square-class sums";
}

std::string criterion_serialization() {
    for (const auto& name : kBattery) {
        const auto& t = table_of(name);
        const auto back = ctt::tblio::parse_table(ctt::tblio::serialize_table(t));
        expect(back == t, name + ": round trip is not the identity");
    }
    int rejected = 0;
    const std::string dir = std::string(CTT_FIXTURES_DIR) + "/malformed";
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.path().extension() == ".tbl")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        const std::string text = slurp(path);
        try {
            ctt::tblio::parse_table(text);
            throw std::runtime_error(path + " was accepted");
        } catch (const ctt::parse_error& e) {
            expect(e.line() >= 1, path + ": error lacks a line number");
            ++rejected;
        }
    }
    expect(rejected >= 20, "fewer than 20 malformed fixtures");
    return std::to_string(kBattery.size()) + " round trips exact, " +
           std::to_string(rejected) + " malformed files rejected with line info";
}

bool run(int id, const std::string& what,
         const std::function<std::string()>& body) {
    Timer tm;
    try {
        const std::string detail = body();
        std::printf("%d PASS %s: %s (%.2fs)\n", id, what.c_str(),
                    detail.c_str(), tm.secs());
        return true;
    } catch (const std::exception& e) {
        std::printf("%d FAIL %s: %s (%.2fs)\n", id, what.c_str(), e.what(),
                    tm.secs());
        return false;
    }
}

}  // namespace

int main() {
    bool ok = true;
    ok &= run(1, "battery", criterion_battery);
    ok &= run(2, "power-map separation", criterion_power_map_separation);
    ok &= run(3, "mutation tiers", criterion_mutation_tiers);
    ok &= run(4, "bicyclic sandwiches", criterion_sandwiches);
    ok &= run(5, "catalogued orbits", criterion_catalogued_orbits);
    ok &= run(6, "determinism", criterion_determinism);
    ok &= run(7, "indicators", criterion_indicators);
    ok &= run(8, "serialization", criterion_serialization);
    return ok ? 0 : 1;
}
