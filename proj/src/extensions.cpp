#include "ctt/extensions.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ctt/errors.hpp"
#include "ctt/orbits.hpp"

namespace ctt::extensions {

using permgroup::Permutation;
using permgroup::PermutationGroup;
using permgroup::PermutationHash;
using permgroup::SubgroupHandle;

namespace {

constexpr std::int64_t kIndexBound = 10000;     // [G:N] and quotient orders
constexpr std::int64_t kLayerBound = 1000;      // |M|
constexpr std::int64_t kSubgroupBound = 50000;  // subgroups of M explored
constexpr std::int64_t kSearchOrderBound = 512; // exhaustive isomorphism search
constexpr std::int64_t kSearchStepBudget = 200000000;

bool generators_commute(const PermutationGroup& g) {
    const auto& gens = g.generators();
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j)
            if (gens[i] * gens[j] != gens[j] * gens[i]) return false;
    return true;
}

bool contains_all(const PermutationGroup& g, const PermutationGroup& sub) {
    for (const auto& x : sub.generators())
        if (!g.contains(x)) return false;
    return true;
}

std::vector<Permutation> join_generators(const PermutationGroup& a,
                                         const std::vector<Permutation>& extra) {
    std::vector<Permutation> gens = a.generators();
    gens.insert(gens.end(), extra.begin(), extra.end());
    return gens;
}

// Does some element x of m satisfy <k, x> = m? Exactly the condition for
// m/k to be cyclic (k normal in m assumed).
bool quotient_is_cyclic_small(const PermutationGroup& m,
                              const PermutationGroup& k) {
    if (m.order() == k.order()) return true;
    for (const auto& x : m.elements(BigInt(kLayerBound))) {
        if (k.contains(x)) continue;
        PermutationGroup j(m.degree(), join_generators(k, {x}));
        if (j.order() == m.order()) return true;
    }
    return false;
}

// Cyclicity of an arbitrary quotient u/n via the coset action: scan the
// quotient's elements for one of full order. (Exponent alone does not
// decide this: S3 has exponent 6.)
bool quotient_is_cyclic(const PermutationGroup& u, const PermutationGroup& n) {
    if (u.order() == n.order()) return true;
    auto qm = permgroup::quotient_map(u, n, BigInt(kIndexBound));
    BigInt target = qm.quotient.order();
    for (const auto& x : qm.quotient.elements(BigInt(kIndexBound)))
        if (BigInt(x.order()) == target) return true;
    return false;
}

// Every subgroup of m, found by closing each known subgroup with each
// outside element. Deterministic: results sorted by (order, generators).
std::vector<PermutationGroup> all_subgroups(const PermutationGroup& m) {
    auto elements = m.elements(BigInt(kLayerBound));
    std::sort(elements.begin(), elements.end());
    std::map<std::vector<Permutation>, PermutationGroup> found;
    std::vector<const std::vector<Permutation>*> queue;

    auto add = [&](PermutationGroup h) {
        auto els = h.elements(BigInt(kLayerBound));
        std::sort(els.begin(), els.end());
        auto [it, fresh] = found.emplace(std::move(els), std::move(h));
        if (fresh) {
            queue.push_back(&it->first);
            if (static_cast<std::int64_t>(found.size()) > kSubgroupBound)
                throw capacity_error("subgroup lattice exceeds " +
                                     std::to_string(kSubgroupBound) +
                                     " subgroups");
        }
    };

    add(PermutationGroup(m.degree(), {}));
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        // copy: `found` may rehash... std::map nodes are stable, but the
        // loop below inserts while holding the reference, so copy the key.
        std::vector<Permutation> members = *queue[qi];
        const PermutationGroup& h = found.at(members);
        std::vector<Permutation> hgens = h.generators();
        for (const auto& x : elements) {
            if (std::binary_search(members.begin(), members.end(), x)) continue;
            add(PermutationGroup(m.degree(), join_generators(h, {x})));
        }
    }

    std::vector<PermutationGroup> out;
    out.reserve(found.size());
    for (auto& [els, h] : found) out.push_back(h);
    std::sort(out.begin(), out.end(),
              [](const PermutationGroup& a, const PermutationGroup& b) {
                  if (a.order() != b.order()) return a.order() < b.order();
                  return a.generators() < b.generators();
              });
    return out;
}

// Index of the subgroup in `list` equal to <gens>; all of list is assumed
// to consist of distinct subgroups and the target must be present.
int find_subgroup(const std::vector<PermutationGroup>& list,
                  const std::vector<Permutation>& gens, const BigInt& order,
                  const char* what) {
    for (size_t i = 0; i < list.size(); ++i) {
        if (list[i].order() != order) continue;
        bool ok = true;
        for (const auto& x : gens)
            if (!list[i].contains(x)) {
                ok = false;
                break;
            }
        if (ok) return static_cast<int>(i);
    }
    throw computation_error(std::string("conjugate of a ") + what +
                            " candidate left the candidate set");
}

std::string join_label(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (p.empty()) continue;
        if (!out.empty()) out += ".";
        out += p;
    }
    if (out.empty()) out = "1";
    return out;
}

// ---------------------------------------------------------- isomorphism ----

enum class IsoAnswer { yes, no, undecided };

struct SmallGroupData {
    int n = 0;
    std::vector<Permutation> elements;              // sorted; [0] = identity
    std::vector<std::vector<int>> mult;             // index multiplication
    std::vector<std::int64_t> orders;               // element orders
    std::vector<int> gens;                          // greedy generating set
};

SmallGroupData index_group(const PermutationGroup& g) {
    SmallGroupData d;
    d.elements = g.elements(BigInt(kSearchOrderBound));
    std::sort(d.elements.begin(), d.elements.end());
    d.n = static_cast<int>(d.elements.size());
    std::unordered_map<Permutation, int, PermutationHash> index;
    for (int i = 0; i < d.n; ++i) index.emplace(d.elements[i], i);
    if (!d.elements[0].is_identity())
        throw computation_error("identity is not the least group element");
    d.mult.assign(static_cast<size_t>(d.n), std::vector<int>(d.n));
    for (int i = 0; i < d.n; ++i)
        for (int j = 0; j < d.n; ++j)
            d.mult[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                index.at(d.elements[static_cast<size_t>(i)] *
                         d.elements[static_cast<size_t>(j)]);
    d.orders.resize(static_cast<size_t>(d.n));
    for (int i = 0; i < d.n; ++i)
        d.orders[static_cast<size_t>(i)] = d.elements[static_cast<size_t>(i)].order();

    // Greedy generating set: scan elements in order, keep what enlarges.
    std::vector<char> span(static_cast<size_t>(d.n), 0);
    span[0] = 1;
    int span_size = 1;
    auto close = [&]() {
        std::vector<int> reach;
        for (int i = 0; i < d.n; ++i)
            if (span[static_cast<size_t>(i)]) reach.push_back(i);
        for (size_t qi = 0; qi < reach.size(); ++qi)
            for (int s : d.gens) {
                int y = d.mult[static_cast<size_t>(reach[qi])][static_cast<size_t>(s)];
                if (!span[static_cast<size_t>(y)]) {
                    span[static_cast<size_t>(y)] = 1;
                    reach.push_back(y);
                    ++span_size;
                }
            }
    };
    for (int i = 1; i < d.n && span_size < d.n; ++i) {
        if (span[static_cast<size_t>(i)]) continue;
        d.gens.push_back(i);
        close();
    }
    return d;
}

// Extends identity->identity by gens->images over the subgroup the first
// `levels` generators span. Returns false on any homomorphism mismatch.
bool closure_consistent(const SmallGroupData& a, const SmallGroupData& b,
                        const std::vector<int>& images, size_t levels,
                        std::int64_t& budget) {
    std::vector<int> img(static_cast<size_t>(a.n), -1);
    std::vector<char> used(static_cast<size_t>(b.n), 0);
    img[0] = 0;
    used[0] = 1;
    std::vector<int> reach{0};
    for (size_t qi = 0; qi < reach.size(); ++qi) {
        int x = reach[qi];
        for (size_t t = 0; t < levels; ++t) {
            if (--budget < 0) return false;
            int y = a.mult[static_cast<size_t>(x)][static_cast<size_t>(a.gens[t])];
            int w = b.mult[static_cast<size_t>(img[static_cast<size_t>(x)])]
                          [static_cast<size_t>(images[t])];
            int& iy = img[static_cast<size_t>(y)];
            if (iy == -1) {
                if (used[static_cast<size_t>(w)]) return false;  // not injective
                iy = w;
                used[static_cast<size_t>(w)] = 1;
                reach.push_back(y);
            } else if (iy != w) {
                return false;
            }
        }
    }
    return true;
}

IsoAnswer exhaustive_isomorphic(const PermutationGroup& ga,
                                const PermutationGroup& gb) {
    if (ga.order() != gb.order()) return IsoAnswer::no;
    if (ga.order() > BigInt(kSearchOrderBound)) return IsoAnswer::undecided;
    SmallGroupData a = index_group(ga);
    SmallGroupData b = index_group(gb);

    std::int64_t budget = kSearchStepBudget;
    std::vector<int> images;
    // Depth-first over generator images, order-matched, pruned by checking
    // homomorphism consistency of the partial closure at every level.
    std::function<IsoAnswer(size_t)> dfs = [&](size_t level) -> IsoAnswer {
        if (level == a.gens.size()) return IsoAnswer::yes;
        bool ran_out = false;
        for (int cand = 1; cand < b.n; ++cand) {
            if (b.orders[static_cast<size_t>(cand)] !=
                a.orders[static_cast<size_t>(a.gens[level])])
                continue;
            images.push_back(cand);
            IsoAnswer sub = IsoAnswer::no;
            if (closure_consistent(a, b, images, level + 1, budget))
                sub = dfs(level + 1);
            else if (budget < 0)
                sub = IsoAnswer::undecided;
            images.pop_back();
            if (sub == IsoAnswer::yes) return IsoAnswer::yes;
            if (sub == IsoAnswer::undecided) ran_out = true;
            if (budget < 0) ran_out = true;
            if (ran_out) break;
        }
        return ran_out ? IsoAnswer::undecided : IsoAnswer::no;
    };
    if (a.gens.empty()) return IsoAnswer::yes;  // both trivial
    return dfs(0);
}

}  // namespace

// ------------------------------------------------------- group utilities ---

PermutationGroup derived_subgroup(const PermutationGroup& g) {
    std::vector<Permutation> gens;
    PermutationGroup d(g.degree(), {});
    auto grow = [&](const Permutation& x) {
        if (d.contains(x)) return false;
        gens.push_back(x);
        d = PermutationGroup(g.degree(), gens);
        return true;
    };
    const auto& gg = g.generators();
    for (size_t i = 0; i < gg.size(); ++i)
        for (size_t j = 0; j < gg.size(); ++j)
            grow(gg[i].inverse() * gg[j].inverse() * gg[i] * gg[j]);
    // normal closure under g-conjugation
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Permutation> snapshot = gens;
        for (const auto& x : snapshot)
            for (const auto& a : gg)
                changed = grow(x.conjugated_by(a)) || changed;
    }
    return d;
}

std::vector<BigInt> abelian_invariants(const PermutationGroup& g,
                                       const BigInt& bound) {
    if (g.order() > bound)
        throw capacity_error("group order " + g.order().str() +
                             " above abelian invariant bound " + bound.str());
    if (!generators_commute(g))
        throw precondition_error("abelian invariants of a nonabelian group");
    std::int64_t n = to_int64(g.order(), "group order");
    if (n == 1) return {};

    auto elements = g.elements(bound);
    std::vector<std::int64_t> orders;
    orders.reserve(elements.size());
    for (const auto& x : elements) orders.push_back(x.order());

    // factor n
    std::vector<std::pair<std::int64_t, int>> primes;
    std::int64_t rest = n;
    for (std::int64_t p = 2; p * p <= rest; ++p)
        if (rest % p == 0) {
            int a = 0;
            while (rest % p == 0) {
                rest /= p;
                ++a;
            }
            primes.emplace_back(p, a);
        }
    if (rest > 1) primes.emplace_back(rest, 1);

    // For each prime: partition lambda of the p-component, largest first,
    // from the counts c_j = #{x : x^(p^j) = 1} = p^(sum_i min(lambda_i, j)).
    std::vector<std::vector<int>> lambdas;
    size_t max_len = 0;
    for (auto [p, a] : primes) {
        std::vector<int> m{0};  // m[j] = log_p c_j
        std::int64_t pj = 1;
        while (m.back() < a) {
            pj *= p;
            std::int64_t count = 0;
            for (std::int64_t o : orders)
                if (pj % o == 0) ++count;
            int e = 0;
            std::int64_t c = count;
            while (c % p == 0) {
                c /= p;
                ++e;
            }
            if (c != 1)
                throw computation_error("p-power element count is not a power");
            m.push_back(e);
        }
        std::vector<int> lambda;
        for (size_t j = 1; j < m.size(); ++j) {
            int parts = m[j] - m[j - 1];
            // parts = number of lambda entries >= j
            if (lambda.empty()) lambda.assign(static_cast<size_t>(parts), 0);
            for (int i = 0; i < parts; ++i) ++lambda[static_cast<size_t>(i)];
        }
        max_len = std::max(max_len, lambda.size());
        lambdas.push_back(std::move(lambda));
    }

    std::vector<BigInt> factors(max_len, BigInt(1));
    for (size_t pi = 0; pi < primes.size(); ++pi)
        for (size_t t = 0; t < lambdas[pi].size(); ++t) {
            BigInt q(1);
            for (int e = 0; e < lambdas[pi][t]; ++e) q *= BigInt(primes[pi].first);
            factors[t] *= q;
        }
    std::reverse(factors.begin(), factors.end());  // ascending, d_i | d_{i+1}
    return factors;
}

std::vector<BigInt> abelianization_invariants(const PermutationGroup& g,
                                              const BigInt& bound) {
    PermutationGroup d = derived_subgroup(g);
    if (d.order() == g.order()) return {};
    auto qm = permgroup::quotient_map(g, d, bound);
    return abelian_invariants(qm.quotient, bound);
}

std::string structure_name(const PermutationGroup& g) {
    if (g.order() == 1) return "1";
    std::string fallback = "[" + g.order().str() + "]";
    try {
        if (generators_commute(g)) {
            auto inv = abelian_invariants(g, BigInt(kIndexBound));
            std::string name;
            for (const auto& d : inv) {
                if (!name.empty()) name += "x";
                name += "C" + d.str();
            }
            return name;
        }
        if (g.order() > BigInt(kIndexBound)) return fallback;
        auto t = chartab::compute_character_table(g);
        auto shape = chartab::identify_composition_shape(t);
        if (!shape.ambiguous && shape.undetermined.empty() &&
            shape.factors.size() == 1 && shape.perfect)
            return shape.factors[0];
    } catch (const capacity_error&) {
        // fall through to the order fallback
    }
    return fallback;
}

// ---------------------------------------------------- bicyclic extensions ---

PermutationGroup subquotient_group(const SubquotientDescriptor& d) {
    return permgroup::quotient_map(d.U.group, d.K.group, BigInt(kIndexBound))
        .quotient;
}

namespace {

void check_descriptor(const PermutationGroup& g, const PermutationGroup& m,
                      const PermutationGroup& n, const PermutationGroup& u,
                      const PermutationGroup& k) {
    if (!contains_all(g, u) || !contains_all(u, n))
        throw computation_error("descriptor violates N <= U <= G");
    if (!contains_all(m, k))
        throw computation_error("descriptor violates K <= M");
    if (!permgroup::is_normal(u, k))
        throw computation_error("descriptor K is not normal in U");
    if (!quotient_is_cyclic(u, n))
        throw computation_error("descriptor U/N is not cyclic");
    if (!permgroup::is_normal(m, k) || !quotient_is_cyclic_small(m, k))
        throw computation_error("descriptor M/K is not cyclic");
}

}  // namespace

std::vector<SubquotientDescriptor> enumerate_bicyclic_subquotients(
    const PermutationGroup& g, const SubgroupHandle& m,
    const SubgroupHandle& n) {
    const PermutationGroup& mg = m.group;
    const PermutationGroup& ng = n.group;
    if (!contains_all(ng, mg))
        throw precondition_error("M is not contained in N");
    if (!permgroup::is_normal(g, mg))
        throw precondition_error("M is not normal in the ambient group");
    if (!permgroup::is_normal(g, ng))
        throw precondition_error("N is not normal in the ambient group");
    BigInt index = g.order() / ng.order();
    if (index > BigInt(kIndexBound))
        throw capacity_error("index of N is " + index.str() +
                             ", above the bound " + std::to_string(kIndexBound));
    if (mg.order() > BigInt(kLayerBound))
        throw capacity_error("order of M is " + mg.order().str() +
                             ", above the bound " + std::to_string(kLayerBound));

    // U candidates: pullbacks of the cyclic subgroups of G/N. Every U with
    // N <= U and U/N cyclic arises exactly once this way.
    auto qm = permgroup::quotient_map(g, ng, BigInt(kIndexBound));
    auto cyc = permgroup::cyclic_subgroups(qm.quotient, BigInt(kIndexBound));
    std::vector<PermutationGroup> us;
    us.reserve(cyc.size());
    for (const auto& c : cyc) {
        std::vector<Permutation> lifted;
        for (const auto& q : c.group.generators()) lifted.push_back(qm.lift(q));
        us.emplace_back(g.degree(), join_generators(ng, lifted));
    }

    // K candidates: subgroups of M with cyclic quotient M/K. Normality in
    // each U is checked per pair.
    std::vector<PermutationGroup> ks;
    for (const auto& k : all_subgroups(mg))
        if (permgroup::is_normal(mg, k) && quotient_is_cyclic_small(mg, k))
            ks.push_back(k);

    std::vector<std::pair<int, int>> pairs;
    std::map<std::pair<int, int>, int> pair_index;
    for (int ui = 0; ui < static_cast<int>(us.size()); ++ui)
        for (int ki = 0; ki < static_cast<int>(ks.size()); ++ki)
            if (permgroup::is_normal(us[static_cast<size_t>(ui)],
                                     ks[static_cast<size_t>(ki)])) {
                pair_index[{ui, ki}] = static_cast<int>(pairs.size());
                pairs.emplace_back(ui, ki);
            }

    // Simultaneous conjugation action of each generator of G on the pairs.
    // The U side is computed inside the quotient (U is determined by its
    // cyclic image there), the K side inside M.
    std::vector<std::vector<int>> actions;
    for (const auto& a : g.generators()) {
        Permutation qa = qm.project(a);
        std::vector<int> umap(us.size());
        for (size_t ui = 0; ui < us.size(); ++ui) {
            std::vector<Permutation> conj;
            for (const auto& q : cyc[ui].group.generators())
                conj.push_back(q.conjugated_by(qa));
            // find the cyclic subgroup equal to the conjugate
            int target = -1;
            for (size_t cj = 0; cj < cyc.size(); ++cj) {
                if (cyc[cj].order() != cyc[ui].order()) continue;
                bool ok = true;
                for (const auto& x : conj)
                    if (!cyc[cj].group.contains(x)) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    target = static_cast<int>(cj);
                    break;
                }
            }
            if (target < 0)
                throw computation_error(
                    "conjugate of a cyclic subgroup left the candidate set");
            umap[ui] = target;
        }
        std::vector<int> kmap(ks.size());
        for (size_t ki = 0; ki < ks.size(); ++ki) {
            std::vector<Permutation> conj;
            for (const auto& x : ks[ki].generators())
                conj.push_back(x.conjugated_by(a));
            kmap[ki] = find_subgroup(ks, conj, ks[ki].order(), "kernel");
        }
        std::vector<int> pmap(pairs.size());
        for (size_t pi = 0; pi < pairs.size(); ++pi) {
            auto [ui, ki] = pairs[pi];
            auto it = pair_index.find({umap[static_cast<size_t>(ui)],
                                       kmap[static_cast<size_t>(ki)]});
            if (it == pair_index.end())
                throw computation_error(
                    "conjugation left the subquotient pair set");
            pmap[pi] = it->second;
        }
        actions.push_back(std::move(pmap));
    }

    auto orbits =
        permgroup::orbit_partition(static_cast<int>(pairs.size()), actions);

    // Label ingredients shared by every descriptor: the name of N/M.
    std::string middle;
    if (ng.order() != mg.order()) {
        try {
            middle = structure_name(
                permgroup::quotient_map(ng, mg, BigInt(kIndexBound)).quotient);
        } catch (const capacity_error&) {
            middle = "[" + BigInt(ng.order() / mg.order()).str() + "]";
        }
    }

    std::vector<SubquotientDescriptor> out;
    for (int rep : orbits.representatives) {
        auto [ui, ki] = pairs[static_cast<size_t>(rep)];
        const PermutationGroup& u = us[static_cast<size_t>(ui)];
        const PermutationGroup& k = ks[static_cast<size_t>(ki)];
        check_descriptor(g, mg, ng, u, k);

        BigInt down = mg.order() / k.order();   // [M:K]
        BigInt up = u.order() / ng.order();     // [U:N]
        std::vector<std::string> parts;
        parts.push_back(down == 1 ? "" : down.str());
        parts.push_back(middle);
        parts.push_back(up == 1 ? "" : up.str());

        SubquotientDescriptor d{permgroup::make_subgroup(g, u.generators()),
                                permgroup::make_subgroup(g, k.generators()),
                                join_label(parts), u.order() / k.order()};
        out.push_back(std::move(d));
    }
    return out;
}

// ------------------------------------------------------------------ dedup ---

std::string IsomorphismPartition::str() const {
    std::ostringstream os;
    for (size_t c = 0; c < cells.size(); ++c) {
        os << "cell " << c << ":";
        for (int i : cells[c]) os << " " << i;
        os << "\n";
    }
    for (const auto& [i, j] : undecided)
        os << "undecided: " << i << " " << j << "\n";
    return os.str();
}

IsomorphismPartition dedup_isomorphic(
    const std::vector<SubquotientDescriptor>& descriptors) {
    int n = static_cast<int>(descriptors.size());
    std::vector<PermutationGroup> quotients;
    quotients.reserve(descriptors.size());
    for (const auto& d : descriptors) {
        if (d.quotient_order > BigInt(kIndexBound))
            throw capacity_error("quotient order " + d.quotient_order.str() +
                                 " above the deduplication bound " +
                                 std::to_string(kIndexBound));
        quotients.push_back(subquotient_group(d));
    }

    // Invariant signature: order, abelianization, then the class profile
    // (and degree list) of the recomputed character table.
    std::vector<std::string> sig(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const PermutationGroup& q = quotients[static_cast<size_t>(i)];
        std::ostringstream os;
        os << q.order().str() << "|";
        for (const auto& d : abelianization_invariants(q)) os << d.str() << ",";
        os << "|";
        try {
            auto t = chartab::compute_character_table(q);
            std::vector<std::pair<std::string, std::int64_t>> profile;
            for (int c = 0; c < t.class_count(); ++c)
                profile.emplace_back(t.class_sizes[static_cast<size_t>(c)].str(),
                                     t.element_orders[static_cast<size_t>(c)]);
            std::sort(profile.begin(), profile.end());
            for (const auto& [s, o] : profile) os << s << ":" << o << " ";
            os << "|";
            std::vector<std::string> degrees;
            for (int r = 0; r < t.row_count(); ++r)
                degrees.push_back(t.degree(r).str());
            std::sort(degrees.begin(), degrees.end());
            for (const auto& dg : degrees) os << dg << " ";
        } catch (const capacity_error&) {
            os << "unprofiled";
        }
        sig[static_cast<size_t>(i)] = os.str();
    }

    std::vector<int> parent(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x)
            x = parent[static_cast<size_t>(x)] =
                parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        return x;
    };

    std::vector<std::pair<int, int>> undecided;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (sig[static_cast<size_t>(i)] != sig[static_cast<size_t>(j)])
                continue;
            if (find(i) == find(j)) continue;
            switch (exhaustive_isomorphic(quotients[static_cast<size_t>(i)],
                                          quotients[static_cast<size_t>(j)])) {
                case IsoAnswer::yes:
                    parent[static_cast<size_t>(find(j))] = find(i);
                    break;
                case IsoAnswer::no:
                    break;
                case IsoAnswer::undecided:
                    undecided.emplace_back(i, j);
                    break;
            }
        }

    IsomorphismPartition part;
    std::map<int, std::vector<int>> cells;
    for (int i = 0; i < n; ++i) cells[find(i)].push_back(i);
    for (auto& [root, members] : cells) {
        std::sort(members.begin(), members.end());
        part.cells.push_back(std::move(members));
    }
    std::sort(part.cells.begin(), part.cells.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    for (auto [i, j] : undecided)
        if (find(i) != find(j)) part.undecided.emplace_back(i, j);
    return part;
}

// --------------------------------------------------- verification pipeline ---

namespace {

std::string profile_string(const chartab::CharacterTable& t) {
    if (t.element_orders.size() != t.class_sizes.size())
        throw structural_error("class metadata lengths differ");
    std::vector<std::pair<std::string, std::int64_t>> profile;
    for (int c = 0; c < t.class_count(); ++c)
        profile.emplace_back(t.class_sizes[static_cast<size_t>(c)].str(),
                             t.element_orders[static_cast<size_t>(c)]);
    std::sort(profile.begin(), profile.end());
    std::ostringstream os;
    for (const auto& [s, o] : profile) os << s << ":" << o << " ";
    return os.str();
}

}  // namespace

PipelineReport pipeline_verify(const PermutationGroup& g,
                               const chartab::CharacterTable& reference,
                               const chartab::ComputeOptions& opt) {
    PipelineReport r;
    r.group_name = reference.group_name;

    permgroup::ClassOptions copt;
    copt.max_order = opt.max_order;
    copt.seed = opt.seed;
    auto classes = permgroup::conjugacy_classes(g, copt);
    r.step1_ok = true;
    r.group_order = g.order();
    r.class_count = classes.count();

    auto t = chartab::compute_character_table(g, classes, opt);
    r.step2_ok = true;
    r.shape = chartab::identify_composition_shape(t);

    // Step 3: structural data of the recomputed table against the same
    // data derived from the reference. Defects inside the reference table
    // surface here as discrepancies, not as errors.
    std::string mismatch;
    try {
        if (t.order != reference.order) {
            mismatch = "group order " + t.order.str() +
                       " does not match reference order " + reference.order.str();
        } else if (t.class_count() != reference.class_count()) {
            mismatch = "class count " + std::to_string(t.class_count()) +
                       " does not match reference count " +
                       std::to_string(reference.class_count());
        } else if (profile_string(t) != profile_string(reference)) {
            mismatch = "class size/order profile differs from the reference";
        } else {
            auto dt = chartab::derived_subgroup_data(t);
            auto dr = chartab::derived_subgroup_data(reference);
            if (dt.order != dr.order) {
                mismatch = "derived subgroup order " + dt.order.str() +
                           " does not match reference " + dr.order.str();
            } else if (chartab::centre_classes(t).size() !=
                       chartab::centre_classes(reference).size()) {
                mismatch = "centre size differs from the reference";
            } else {
                auto rshape = chartab::identify_composition_shape(reference);
                if (rshape.abelian != r.shape.abelian ||
                    rshape.perfect != r.shape.perfect ||
                    rshape.factors != r.shape.factors)
                    mismatch = "composition shape differs from the reference";
            }
        }
    } catch (const capacity_error&) {
        throw;
    } catch (const ctt::error& e) {
        mismatch = std::string("reference table is not well-formed: ") + e.what();
    }

    if (!mismatch.empty()) {
        r.step3_ok = false;
        r.discrepancy = mismatch;
        return r;
    }
    r.step3_ok = true;

    r.step4_run = true;
    auto witness = verify::tables_equivalent(t, reference, true);
    if (witness) {
        r.step4_ok = true;
        r.witness = *witness;
    } else {
        r.step4_ok = false;
        r.discrepancy =
            "no permutation equivalence with power maps matches the reference";
    }
    return r;
}

std::string PipelineReport::str() const {
    std::ostringstream os;
    os << "group: " << (group_name.empty() ? "(anonymous)" : group_name) << "\n";
    os << "order: " << group_order.str() << "\n";
    os << "classes: " << class_count << "\n";
    os << "step1: " << (step1_ok ? "ok" : "failed") << "\n";
    os << "step2: " << (step2_ok ? "ok" : "failed") << "\n";
    os << "step3: " << (step3_ok ? "ok" : "mismatch") << "\n";
    os << "step4: " << (!step4_run ? "skipped" : step4_ok ? "ok" : "mismatch")
       << "\n";
    os << "agreement: " << (agrees() ? "yes" : "no") << "\n";
    if (!discrepancy.empty()) os << "discrepancy: " << discrepancy << "\n";
    os << shape.str();
    if (witness) {
        os << "row_map:";
        for (int x : witness->row_perm) os << " " << x;
        os << "\n";
        os << "column_map:";
        for (int x : witness->col_perm) os << " " << x;
        os << "\n";
    }
    return os.str();
}

}  // namespace ctt::extensions
