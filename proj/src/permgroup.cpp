#include "ctt/permgroup.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

namespace ctt::permgroup {

// ---------------------------------------------------------------- chain ----

StabilizerChain::StabilizerChain(int degree,
                                 const std::vector<Permutation>& gens)
    : degree_(degree) {
    for (const auto& g : gens) extend(g, 0);
}

void StabilizerChain::rebuild_orbit(size_t li) {
    ChainLevel& lv = levels_[li];
    lv.orbit.clear();
    lv.transversal.clear();
    lv.orbit.push_back(lv.base_point);
    lv.transversal.emplace(lv.base_point, Permutation(degree_));
    for (size_t qi = 0; qi < lv.orbit.size(); ++qi) {
        int pt = lv.orbit[qi];
        const Permutation& u = lv.transversal.at(pt);
        for (const auto& s : lv.generators) {
            int im = s[pt];
            if (!lv.transversal.count(im)) {
                lv.orbit.push_back(im);
                lv.transversal.emplace(im, u * s);
            }
        }
    }
}

void StabilizerChain::extend(const Permutation& g, size_t li) {
    if (g.is_identity()) return;
    if (li == levels_.size()) {
        // new level anchored at the least point g moves
        int b = -1;
        for (int i = 0; i < degree_; ++i)
            if (g[i] != i) {
                b = i;
                break;
            }
        ChainLevel lv;
        lv.base_point = b;
        levels_.push_back(std::move(lv));
    }
    ChainLevel& lv = levels_[li];
    if (lv.transversal.empty()) rebuild_orbit(li);

    // membership-style sift first: nothing to do if already generated
    {
        Permutation r = g;
        size_t j = li;
        for (; j < levels_.size(); ++j) {
            int im = r[levels_[j].base_point];
            auto it = levels_[j].transversal.find(im);
            if (it == levels_[j].transversal.end()) break;
            r = r * it->second.inverse();
        }
        if (j == levels_.size() && r.is_identity()) return;
    }

    lv.generators.push_back(g);
    rebuild_orbit(li);

    // Push Schreier generators down one level. Recursive calls may grow
    // levels_ and relocate it, so work from copies and re-index each access.
    const std::vector<int> orbit_now = levels_[li].orbit;
    const std::vector<Permutation> gens_now = levels_[li].generators;
    for (int pt : orbit_now) {
        const Permutation u = levels_[li].transversal.at(pt);
        for (const auto& s : gens_now) {
            const Permutation v = levels_[li].transversal.at(s[pt]);
            Permutation schreier = u * s * v.inverse();
            if (!schreier.is_identity()) extend(schreier, li + 1);
        }
    }
}

BigInt StabilizerChain::order() const {
    BigInt n = 1;
    for (const auto& lv : levels_) n *= static_cast<unsigned>(lv.orbit.size());
    return n;
}

Permutation StabilizerChain::sift(const Permutation& p) const {
    Permutation r = p;
    for (const auto& lv : levels_) {
        int im = r[lv.base_point];
        auto it = lv.transversal.find(im);
        if (it == lv.transversal.end()) return r;
        r = r * it->second.inverse();
    }
    return r;
}

bool StabilizerChain::contains(const Permutation& p) const {
    if (p.degree() != degree_) return false;
    return sift(p).is_identity();
}

// ---------------------------------------------------------------- group ----

struct PermutationGroup::Core {
    int degree = 0;
    std::vector<Permutation> gens;
    StabilizerChain chain;
    BigInt order;

    mutable std::mutex elem_mutex;
    mutable std::vector<Permutation> elems;  // cached, sorted
};

PermutationGroup::PermutationGroup(int degree,
                                   std::vector<Permutation> generators) {
    if (degree < 0) throw structural_error("negative degree");
    auto core = std::make_shared<Core>();
    core->degree = degree;
    for (auto& g : generators) {
        if (g.degree() != degree)
            throw structural_error("generator degree mismatch");
        if (!g.is_identity()) core->gens.push_back(std::move(g));
    }
    std::sort(core->gens.begin(), core->gens.end());
    core->gens.erase(std::unique(core->gens.begin(), core->gens.end()),
                     core->gens.end());
    core->chain = StabilizerChain(degree, core->gens);
    core->order = core->chain.order();
    core_ = std::move(core);
}

int PermutationGroup::degree() const { return core_ ? core_->degree : 0; }

const std::vector<Permutation>& PermutationGroup::generators() const {
    static const std::vector<Permutation> empty;
    return core_ ? core_->gens : empty;
}

const BigInt& PermutationGroup::order() const {
    static const BigInt one(1);
    return core_ ? core_->order : one;
}

const StabilizerChain& PermutationGroup::chain() const {
    static const StabilizerChain empty;
    return core_ ? core_->chain : empty;
}

bool PermutationGroup::contains(const Permutation& p) const {
    if (!core_) return p.is_identity();
    if (p.degree() != core_->degree) return false;
    return core_->chain.contains(p);
}

const std::vector<Permutation>& PermutationGroup::elements(
    const BigInt& bound) const {
    if (!core_) throw structural_error("uninitialized group");
    if (core_->order > bound)
        throw capacity_error("group order " + core_->order.str() +
                             " above enumeration bound " + bound.str());
    std::lock_guard<std::mutex> lock(core_->elem_mutex);
    if (!core_->elems.empty() || core_->order == 1) {
        if (core_->elems.empty())
            core_->elems.push_back(Permutation(core_->degree));
        return core_->elems;
    }
    std::unordered_set<Permutation, PermutationHash> seen;
    std::deque<Permutation> queue;
    Permutation id(core_->degree);
    seen.insert(id);
    queue.push_back(id);
    while (!queue.empty()) {
        Permutation x = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : core_->gens) {
            Permutation y = x * g;
            if (seen.insert(y).second) queue.push_back(std::move(y));
        }
    }
    core_->elems.assign(seen.begin(), seen.end());
    std::sort(core_->elems.begin(), core_->elems.end());
    if (BigInt(core_->elems.size()) != core_->order)
        throw computation_error("element enumeration disagrees with order");
    return core_->elems;
}

bool PermutationGroup::operator==(const PermutationGroup& o) const {
    if (degree() != o.degree() || order() != o.order()) return false;
    for (const auto& g : generators())
        if (!o.contains(g)) return false;
    for (const auto& g : o.generators())
        if (!contains(g)) return false;
    return true;
}

SubgroupHandle make_subgroup(const PermutationGroup& parent,
                             std::vector<Permutation> generators) {
    for (const auto& g : generators)
        if (!parent.contains(g))
            throw precondition_error("subgroup generator outside parent");
    PermutationGroup sub(parent.degree(), std::move(generators));
    return SubgroupHandle{parent, std::move(sub)};
}

bool is_normal(const PermutationGroup& g, const PermutationGroup& n) {
    for (const auto& x : n.generators())
        if (!g.contains(x)) return false;
    for (const auto& a : g.generators())
        for (const auto& x : n.generators())
            if (!n.contains(x.conjugated_by(a))) return false;
    return true;
}

// -------------------------------------------------------------- classes ----

std::int64_t ConjugacyClassSet::exponent() const {
    std::int64_t e = 1;
    for (std::int64_t o : element_orders) e = std::lcm(e, o);
    return e;
}

int ConjugacyClassSet::class_of(const Permutation& x) const {
    if (!lookup_) throw precondition_error("class set has no classifier data");
    auto it = lookup_->find(x);
    if (it == lookup_->end())
        throw precondition_error("element not in classified group");
    return it->second;
}

const std::vector<Permutation>& ConjugacyClassSet::class_members(int i) const {
    if (!members_) throw precondition_error("class set has no classifier data");
    return members_->at(static_cast<size_t>(i));
}

namespace {

// Conjugation orbit of x under the group generators.
std::vector<Permutation> class_orbit(const std::vector<Permutation>& gens,
                                     const Permutation& x) {
    std::unordered_set<Permutation, PermutationHash> seen;
    std::deque<Permutation> queue;
    seen.insert(x);
    queue.push_back(x);
    while (!queue.empty()) {
        Permutation y = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : gens) {
            Permutation z = y.conjugated_by(g);
            if (seen.insert(z).second) queue.push_back(std::move(z));
        }
    }
    return {seen.begin(), seen.end()};
}

}  // namespace

ConjugacyClassSet conjugacy_classes(const PermutationGroup& g,
                                    const ClassOptions& opt) {
    if (g.order() > opt.max_order)
        throw capacity_error("group order " + g.order().str() +
                             " above class computation bound " +
                             opt.max_order.str());

    std::vector<std::vector<Permutation>> classes;
    auto lookup = std::make_shared<
        std::unordered_map<Permutation, int, PermutationHash>>();

    const BigInt exhaustive_bound(100000);
    if (g.order() <= exhaustive_bound) {
        // Elements come out sorted, so the first unclassified element met is
        // the least member of its class.
        const auto& els = g.elements(exhaustive_bound);
        for (const auto& x : els) {
            if (lookup->count(x)) continue;
            auto orbit = class_orbit(g.generators(), x);
            int idx = static_cast<int>(classes.size());
            for (const auto& y : orbit) lookup->emplace(y, idx);
            std::sort(orbit.begin(), orbit.end());
            classes.push_back(std::move(orbit));
        }
    } else {
        // Random search; every class is still stored in full, and the class
        // equation summing to |G| certifies completeness.
        std::mt19937_64 rng(opt.seed);
        const auto& gens = g.generators();
        BigInt covered = 0;
        Permutation id(g.degree());
        {
            auto orbit = class_orbit(gens, id);
            for (const auto& y : orbit) lookup->emplace(y, 0);
            classes.push_back(std::move(orbit));
            covered += 1;
        }
        std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
        Permutation walk = id;
        while (covered < g.order()) {
            for (int step = 0; step < 16; ++step) walk = walk * gens[pick(rng)];
            if (lookup->count(walk)) continue;
            auto orbit = class_orbit(gens, walk);
            int idx = static_cast<int>(classes.size());
            for (const auto& y : orbit) lookup->emplace(y, idx);
            covered += static_cast<unsigned>(orbit.size());
            std::sort(orbit.begin(), orbit.end());
            classes.push_back(std::move(orbit));
        }
    }

    // canonical order: (element order, size, least member)
    std::vector<int> perm(classes.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::int64_t> ords(classes.size());
    for (size_t i = 0; i < classes.size(); ++i)
        ords[i] = classes[i].front().order();
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
        if (ords[a] != ords[b]) return ords[a] < ords[b];
        if (classes[a].size() != classes[b].size())
            return classes[a].size() < classes[b].size();
        return classes[a].front() < classes[b].front();
    });

    ConjugacyClassSet out;
    auto members = std::make_shared<std::vector<std::vector<Permutation>>>();
    std::vector<int> new_index(classes.size());
    BigInt total = 0;
    for (size_t ni = 0; ni < perm.size(); ++ni) {
        int oi = perm[ni];
        new_index[oi] = static_cast<int>(ni);
        out.representatives.push_back(classes[oi].front());
        out.sizes.push_back(BigInt(classes[oi].size()));
        out.element_orders.push_back(ords[oi]);
        total += static_cast<unsigned>(classes[oi].size());
        members->push_back(std::move(classes[oi]));
    }
    if (total != g.order())
        throw computation_error("class equation does not sum to group order");

    for (auto& kv : *lookup) kv.second = new_index[kv.second];
    out.lookup_ = lookup;
    out.members_ = members;

    // prime power maps
    std::int64_t e = out.exponent();
    for (std::int64_t p = 2; p <= e; ++p) {
        if (e % p != 0) continue;
        bool prime = true;
        for (std::int64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (!prime) continue;
        std::vector<int> pm(out.count());
        for (size_t i = 0; i < out.count(); ++i)
            pm[i] = out.class_of(out.representatives[i].power(p));
        out.power_maps.emplace(p, std::move(pm));
    }
    return out;
}

std::vector<int> power_map(const ConjugacyClassSet& c, std::int64_t k) {
    if (k < 0) throw precondition_error("power map exponent must be >= 0");
    size_t r = c.count();
    std::vector<int> map(r);
    std::iota(map.begin(), map.end(), 0);
    k %= c.exponent();
    if (k == 0) {
        std::fill(map.begin(), map.end(), c.identity_class());
        return map;
    }
    std::int64_t rest = k;
    for (const auto& [p, pm] : c.power_maps) {
        while (rest % p == 0) {
            for (size_t i = 0; i < r; ++i) map[i] = pm[map[i]];
            rest /= p;
        }
    }
    if (rest != 1) {
        // residue coprime to the exponent (or with primes outside the stored
        // set): classify directly
        for (size_t i = 0; i < r; ++i)
            map[i] = c.class_of(c.representatives[map[i]].power(rest));
    }
    return map;
}

BigInt centralizer_order(const PermutationGroup& g, const ConjugacyClassSet& c,
                         int class_index) {
    if (class_index < 0 || static_cast<size_t>(class_index) >= c.count())
        throw precondition_error("class index out of range");
    return g.order() / c.sizes[static_cast<size_t>(class_index)];
}

std::vector<std::int64_t> structure_constants(const PermutationGroup& g,
                                              const ConjugacyClassSet& c,
                                              int i, int j) {
    (void)g;
    size_t r = c.count();
    if (i < 0 || j < 0 || static_cast<size_t>(i) >= r ||
        static_cast<size_t>(j) >= r)
        throw precondition_error("class index out of range");
    std::vector<std::int64_t> a(r, 0);
    const auto& ci = c.class_members(i);
    for (int k = 0; k < static_cast<int>(r); ++k) {
        const Permutation z = c.representatives[static_cast<size_t>(k)];
        std::int64_t count = 0;
        for (const auto& x : ci)
            if (c.class_of(x.inverse() * z) == j) ++count;
        a[static_cast<size_t>(k)] = count;
    }
    return a;
}

// ------------------------------------------------------------- quotient ----

namespace {

// Least image tuple of the coset N*g over the base points of N's chain;
// identifies the coset uniquely and deterministically.
Permutation canonical_coset_rep(const StabilizerChain& nchain,
                                const Permutation& g) {
    Permutation rep = g;
    for (const auto& lv : nchain.levels()) {
        int best_pt = -1;
        int best_im = -1;
        for (int pt : lv.orbit) {
            int im = rep[pt];
            if (best_pt < 0 || im < best_im) {
                best_pt = pt;
                best_im = im;
            }
        }
        rep = lv.transversal.at(best_pt) * rep;
    }
    return rep;
}

}  // namespace

QuotientMap quotient_map(const PermutationGroup& g, const PermutationGroup& n,
                         const BigInt& max_index) {
    if (!is_normal(g, n))
        throw precondition_error("quotient requires a normal subgroup");
    BigInt index = g.order() / n.order();
    if (index > max_index)
        throw capacity_error("subgroup index " + index.str() +
                             " above coset action bound " + max_index.str());
    int nc = static_cast<int>(index);

    auto coset_index = std::make_shared<
        std::unordered_map<Permutation, int, PermutationHash>>();
    std::vector<Permutation> reps;
    reps.push_back(canonical_coset_rep(n.chain(), Permutation(g.degree())));
    coset_index->emplace(reps[0], 0);
    std::vector<std::vector<int>> images(g.generators().size());

    for (size_t qi = 0; qi < reps.size(); ++qi) {
        Permutation base = reps[qi];
        for (size_t gi = 0; gi < g.generators().size(); ++gi) {
            Permutation moved =
                canonical_coset_rep(n.chain(), base * g.generators()[gi]);
            auto [it, fresh] =
                coset_index->emplace(moved, static_cast<int>(reps.size()));
            if (fresh) reps.push_back(std::move(moved));
            images[gi].push_back(it->second);
        }
    }
    if (static_cast<int>(reps.size()) != nc)
        throw computation_error("coset enumeration found wrong index");

    std::vector<Permutation> qgens;
    for (size_t gi = 0; gi < images.size(); ++gi) {
        // images[gi][c] is the image of coset c (BFS order fills cosets in
        // ascending discovery index, and every coset was visited)
        qgens.push_back(Permutation(images[gi]));
    }
    QuotientMap qm;
    qm.quotient = PermutationGroup(nc, std::move(qgens));
    qm.coset_reps = std::move(reps);
    qm.parent = g;
    qm.kernel = n;
    qm.coset_index_ = coset_index;
    if (qm.quotient.order() != index)
        throw computation_error("coset action order mismatch");
    return qm;
}

int QuotientMap::coset_index_of(const Permutation& g) const {
    Permutation rep = canonical_coset_rep(kernel.chain(), g);
    auto it = coset_index_->find(rep);
    if (it == coset_index_->end())
        throw precondition_error("element outside the quotient's parent");
    return it->second;
}

Permutation QuotientMap::lift(const Permutation& q) const {
    // q sends coset 0 (= N) to N*g, so any representative of that coset works
    if (q.degree() != quotient.degree())
        throw precondition_error("degree mismatch in quotient lift");
    return coset_reps[static_cast<size_t>(q[0])];
}

Permutation QuotientMap::project(const Permutation& g) const {
    std::vector<int> img(coset_reps.size());
    for (size_t c = 0; c < coset_reps.size(); ++c)
        img[c] = coset_index_of(coset_reps[c] * g);
    return Permutation(std::move(img));
}

PermutationGroup quotient(const PermutationGroup& g, const SubgroupHandle& n,
                          const BigInt& max_index) {
    return quotient_map(g, n.group, max_index).quotient;
}

// ------------------------------------------------------------ subgroups ----

std::vector<SubgroupHandle> cyclic_subgroups(const PermutationGroup& g,
                                             const BigInt& bound) {
    if (g.order() > bound)
        throw capacity_error("group order " + g.order().str() +
                             " above cyclic subgroup bound " + bound.str());
    const auto& els = g.elements(bound);
    std::set<std::vector<Permutation>> seen;
    std::vector<SubgroupHandle> out;
    for (const auto& x : els) {
        std::vector<Permutation> cyc;
        Permutation y(g.degree());
        do {
            cyc.push_back(y);
            y = y * x;
        } while (!y.is_identity());
        std::sort(cyc.begin(), cyc.end());
        if (seen.insert(cyc).second)
            out.push_back(make_subgroup(g, {x}));
    }
    std::sort(out.begin(), out.end(),
              [](const SubgroupHandle& a, const SubgroupHandle& b) {
                  if (a.order() != b.order()) return a.order() < b.order();
                  return a.group.generators() < b.group.generators();
              });
    return out;
}

}  // namespace ctt::permgroup
