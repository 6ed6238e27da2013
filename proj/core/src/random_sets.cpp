#include "tset/random_sets.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace tset {

FiniteAbelianGroup random_group(SplitMix64& rng, long long max_order) {
    if (max_order < 2) throw std::invalid_argument("max_order must be at least 2");
    std::uint64_t shape_roll = rng.below(10);
    int shape = shape_roll < 6 ? 1 : (shape_roll < 9 ? 2 : 3);
    std::vector<long long> factors;
    long long room = max_order;
    for (int i = 0; i < shape; ++i) {
        if (room < 2) break;
        long long cap = i + 1 < shape ? std::max<long long>(2, room / 2) : room;
        long long f = rng.range(2, cap);
        factors.push_back(f);
        room /= f;
    }
    return FiniteAbelianGroup(factors);
}

GroupSubset uniform_subset(SplitMix64& rng, const FiniteAbelianGroup& g, std::uint64_t num,
                           std::uint64_t den) {
    GroupSubset s(g);
    for (long long e = 0; e < g.order(); ++e)
        if (rng.chance(num, den)) s.insert(e);
    if (s.empty()) s.insert(rng.range(0, g.order() - 1));
    return s;
}

namespace {

Subgroup random_subgroup(SplitMix64& rng, const FiniteAbelianGroup& g) {
    auto subs = all_subgroups(g);
    return subs[static_cast<size_t>(rng.below(subs.size()))];
}

GroupSubset random_coset_union(SplitMix64& rng, const FiniteAbelianGroup& g, const Subgroup& h) {
    auto proj = quotient_projection(g, h);
    GroupSubset image(proj.quotient);
    for (long long q = 0; q < proj.quotient.order(); ++q)
        if (rng.chance(1, 3)) image.insert(q);
    if (image.empty()) image.insert(rng.range(0, proj.quotient.order() - 1));
    return pullback_subset(proj, image);
}

} // namespace

GroupSubset coset_perturbed_subset(SplitMix64& rng, const FiniteAbelianGroup& g,
                                   long long max_toggles) {
    GroupSubset s = random_coset_union(rng, g, random_subgroup(rng, g));
    long long toggles = max_toggles > 0 ? rng.range(0, max_toggles) : 0;
    for (long long i = 0; i < toggles; ++i) s.toggle(rng.range(0, g.order() - 1));
    if (s.empty()) s.insert(rng.range(0, g.order() - 1));
    return s;
}

GroupSubset dented_coset_subset(SplitMix64& rng, const FiniteAbelianGroup& g) {
    Subgroup h = random_subgroup(rng, g);
    long long shift = rng.range(0, g.order() - 1);
    GroupSubset s(g);
    for (long long e : h.elements().indices()) s.insert(g.add(e, shift));
    long long dents = rng.range(0, std::max<long long>(0, h.size() / 2 - 1));
    for (long long i = 0; i < dents && s.size() > 1; ++i) {
        auto members = s.indices();
        s.erase(members[static_cast<size_t>(rng.below(members.size()))]);
    }
    return s;
}

std::pair<GroupSubset, GroupSubset> coset_pair(SplitMix64& rng, const FiniteAbelianGroup& g) {
    Subgroup h = random_subgroup(rng, g);
    GroupSubset a = random_coset_union(rng, g, h);
    GroupSubset b = random_coset_union(rng, g, h);
    long long toggles = rng.range(0, 2);
    for (long long i = 0; i < toggles; ++i) {
        a.toggle(rng.range(0, g.order() - 1));
        b.toggle(rng.range(0, g.order() - 1));
    }
    if (a.empty()) a.insert(rng.range(0, g.order() - 1));
    if (b.empty()) b.insert(rng.range(0, g.order() - 1));
    return {std::move(a), std::move(b)};
}

} // namespace tset
