#include "doctest.h"

#include "tset/finite_group.hpp"
#include "tset/rng.hpp"

#include <set>
#include <vector>

using namespace tset;

namespace {

/* coordinate arithmetic kept independent of FiniteAbelianGroup::add */
std::vector<long long> oracle_decode(const std::vector<long long>& factors, long long idx) {
    std::vector<long long> c(factors.size());
    for (size_t i = 0; i < factors.size(); ++i) {
        c[i] = idx % factors[i];
        idx /= factors[i];
    }
    return c;
}

long long oracle_encode(const std::vector<long long>& factors, std::vector<long long> c) {
    long long idx = 0, stride = 1;
    for (size_t i = 0; i < factors.size(); ++i) {
        long long v = ((c[i] % factors[i]) + factors[i]) % factors[i];
        idx += v * stride;
        stride *= factors[i];
    }
    return idx;
}

std::set<long long> oracle_difference(const std::vector<long long>& factors,
                                      const std::set<long long>& a,
                                      const std::set<long long>& b) {
    std::set<long long> d;
    for (long long x : a)
        for (long long y : b) {
            auto cx = oracle_decode(factors, x);
            auto cy = oracle_decode(factors, y);
            for (size_t i = 0; i < cx.size(); ++i) cy[i] -= cx[i];
            d.insert(oracle_encode(factors, cy));
        }
    return d;
}

std::set<long long> oracle_stabilizer(const std::vector<long long>& factors,
                                      const std::set<long long>& s) {
    long long order = 1;
    for (long long f : factors) order *= f;
    std::set<long long> h;
    for (long long g = 0; g < order; ++g) {
        std::set<long long> shifted;
        for (long long m : s) {
            auto cm = oracle_decode(factors, m);
            auto cg = oracle_decode(factors, g);
            for (size_t i = 0; i < cm.size(); ++i) cm[i] += cg[i];
            shifted.insert(oracle_encode(factors, cm));
        }
        if (shifted == s) h.insert(g);
    }
    return h;
}

std::set<long long> as_set(const GroupSubset& s) {
    auto idx = s.indices();
    return std::set<long long>(idx.begin(), idx.end());
}

FiniteAbelianGroup random_group(SplitMix64& rng, long long max_order) {
    for (;;) {
        int nf = static_cast<int>(rng.below(3)) + 1;
        std::vector<long long> factors;
        long long order = 1;
        for (int i = 0; i < nf; ++i) {
            long long f = rng.range(2, 16);
            factors.push_back(f);
            order *= f;
        }
        if (order <= max_order) return FiniteAbelianGroup(factors);
    }
}

GroupSubset random_subset(SplitMix64& rng, const FiniteAbelianGroup& g, bool nonempty = true) {
    GroupSubset s(g);
    std::uint64_t p = rng.below(90) + 5; /* density 5..94 percent */
    for (long long i = 0; i < g.order(); ++i)
        if (rng.below(100) < p) s.insert(i);
    if (nonempty && s.empty()) s.insert(static_cast<long long>(rng.below(g.order())));
    return s;
}

} // namespace

TEST_CASE("mixed radix encode and decode agree with the oracle") {
    FiniteAbelianGroup g({3, 4, 2});
    CHECK(g.order() == 24);
    for (long long i = 0; i < g.order(); ++i) {
        CHECK(g.decode(i) == oracle_decode({3, 4, 2}, i));
        CHECK(g.encode(g.decode(i)) == i);
    }
    /* addition is coordinatewise: 1 = (1,0,0), 2 = (2,0,0), sum wraps to (0,0,0) */
    CHECK(g.add(1, 2) == 0);
    CHECK(g.add(3, 3) == oracle_encode({3, 4, 2}, {0, 2, 0}));
    for (long long i = 0; i < g.order(); ++i) CHECK(g.add(i, g.negate(i)) == 0);
}

TEST_CASE("group construction limits") {
    CHECK_THROWS_AS(FiniteAbelianGroup({}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteAbelianGroup({0}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteAbelianGroup({1 << 11, 1 << 11}), std::invalid_argument);
    CHECK_NOTHROW(FiniteAbelianGroup({1 << 20}));
    CHECK(FiniteAbelianGroup({1}).order() == 1);
}

TEST_CASE("difference sets match the enumeration oracle on random inputs") {
    SplitMix64 rng(20250814);
    for (int trial = 0; trial < 60; ++trial) {
        auto g = random_group(rng, 120);
        auto a = random_subset(rng, g);
        auto b = random_subset(rng, g);
        auto d = difference_set(a, b);
        CHECK(as_set(d) == oracle_difference(g.cyclic_factors(), as_set(a), as_set(b)));
    }
}

TEST_CASE("difference set of swapped arguments is the negation") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = random_group(rng, 150);
        auto a = random_subset(rng, g);
        auto b = random_subset(rng, g);
        auto d1 = difference_set(a, b);
        auto d2 = difference_set(b, a);
        GroupSubset neg(g);
        for (long long m : d2.indices()) neg.insert(g.negate(m));
        CHECK(d1 == neg);
    }
}

TEST_CASE("difference set rejects bad input") {
    FiniteAbelianGroup g({6});
    FiniteAbelianGroup g2({7});
    GroupSubset a = GroupSubset::from_indices(g, {0, 3});
    CHECK_THROWS_WITH_AS(difference_set(a, GroupSubset(g)), "empty set", std::invalid_argument);
    CHECK_THROWS_WITH_AS(difference_set(a, GroupSubset::from_indices(g2, {0})),
                         "group mismatch", std::invalid_argument);
}

TEST_CASE("stabilizer matches the oracle and saturates its set") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = random_group(rng, 80);
        auto s = random_subset(rng, g);
        auto h = stabilizer(s);
        CHECK(as_set(h.elements()) == oracle_stabilizer(g.cyclic_factors(), as_set(s)));
        CHECK(saturate(s, h) == s);
        CHECK(h.index() * h.size() == g.order());
    }
}

TEST_CASE("stabilizer of a union of cosets recovers the subgroup") {
    FiniteAbelianGroup g({12});
    GroupSubset s = GroupSubset::from_indices(g, {0, 4, 8, 1, 5, 9}); /* H + {0,1}, H = 4Z */
    auto h = stabilizer(s);
    CHECK(as_set(h.elements()) == std::set<long long>{0, 4, 8});
}

TEST_CASE("frozen reduction: two-point subgroup inside Z/6") {
    FiniteAbelianGroup g({6});
    GroupSubset a = GroupSubset::from_indices(g, {0, 3});
    auto d = difference_set(a, a);
    CHECK(as_set(d) == std::set<long long>{0, 3});

    auto red = kneser_decompose(a, a);
    REQUIRE(red.has_value());
    CHECK(as_set(red->stabilizer.elements()) == std::set<long long>{0, 3});
    CHECK(red->projection.quotient.order() == 3);
    CHECK(red->image_a.size() == 1);
    CHECK(red->image_d.size() == 1);
    CHECK(red->identity_holds);
    /* |D| = |A+H| + |B+H| - |H| reads 2 = 2 + 2 - 2 here */
    CHECK(d.size() == 2);
}

TEST_CASE("frozen reduction: interval pair in Z/5 has trivial stabilizer") {
    FiniteAbelianGroup g({5});
    GroupSubset a = GroupSubset::from_indices(g, {0, 1});
    auto d = difference_set(a, a);
    CHECK(as_set(d) == std::set<long long>{0, 1, 4});
    CHECK(d.size() == 3);

    auto red = kneser_decompose(a, a);
    REQUIRE(red.has_value());
    CHECK(red->stabilizer.size() == 1);
    CHECK(red->projection.quotient.order() == 5);
    CHECK(red->identity_holds); /* 3 = 2 + 2 - 1 */
}

TEST_CASE("frozen reduction: hypothesis fails for a spread pair in Z/6") {
    FiniteAbelianGroup g({6});
    GroupSubset a = GroupSubset::from_indices(g, {0, 1});
    GroupSubset b = GroupSubset::from_indices(g, {0, 1, 3});
    auto d = difference_set(a, b);
    CHECK(d.size() == 5);
    CHECK(as_set(d) == std::set<long long>{0, 1, 2, 3, 5});
    CHECK_FALSE(kneser_decompose(a, b).has_value());
}

TEST_CASE("identity holds across generated hypothesis pairs") {
    SplitMix64 rng(314159);
    int hits = 0;
    while (hits < 120) {
        long long n = rng.range(4, 200);
        FiniteAbelianGroup g({n});
        long long step = rng.range(1, n - 1);
        auto h = generated_subgroup(g, {step});
        long long q = h.index();
        if (q < 3) continue;
        long long la = rng.range(1, std::min<long long>(q - 1, 5));
        long long lb = rng.range(1, std::min<long long>(q - la, 5));
        auto proj = quotient_projection(g, h);
        GroupSubset ia(proj.quotient), ib(proj.quotient);
        /* quotient of a cyclic group is cyclic; use generator image of 1 */
        long long gen = proj.map[1];
        long long cur = 0;
        for (long long i = 0; i < la; ++i) {
            ia.insert(cur);
            cur = proj.quotient.add(cur, gen);
        }
        cur = 0;
        for (long long i = 0; i < lb; ++i) {
            ib.insert(cur);
            cur = proj.quotient.add(cur, gen);
        }
        auto a = pullback_subset(proj, ia);
        auto b = pullback_subset(proj, ib);
        auto red = kneser_decompose(a, b);
        REQUIRE(red.has_value());
        CHECK(red->identity_holds);
        ++hits;
    }
}

TEST_CASE("frozen small doubling: two-point set in Z/8") {
    FiniteAbelianGroup g({8});
    GroupSubset a = GroupSubset::from_indices(g, {0, 4});
    auto res = small_doubling_subgroup_check(a);
    CHECK(res.is_subgroup);
    CHECK(as_set(res.difference) == std::set<long long>{0, 4});
    REQUIRE(res.index.has_value());
    CHECK(*res.index == 4);
}

TEST_CASE("small doubling guarantee on random structured sets") {
    SplitMix64 rng(424242);
    int hits = 0;
    for (int trial = 0; trial < 400; ++trial) {
        auto g = random_group(rng, 128);
        GroupSubset a(g);
        if (rng.below(2) == 0) {
            /* coset of a generated subgroup, sometimes dented */
            auto h = generated_subgroup(g, {rng.range(0, g.order() - 1)});
            long long shift = rng.range(0, g.order() - 1);
            for (long long m : h.elements().indices()) a.insert(g.add(m, shift));
            if (rng.below(2) == 0 && a.size() > 3) a.erase(a.indices()[rng.below(a.size())]);
        } else {
            a = random_subset(rng, g);
        }
        if (a.empty()) continue;
        auto res = small_doubling_subgroup_check(a);
        if (2 * res.difference.size() < 3 * a.size()) {
            ++hits;
            CHECK(res.is_subgroup);
            REQUIRE(res.index.has_value());
            /* index <= |G| / |A| as exact rationals */
            CHECK(*res.index * a.size() <= g.order());
        }
        if (res.is_subgroup)
            CHECK_NOTHROW(Subgroup::validate(res.difference));
    }
    CHECK(hits >= 40);
}

TEST_CASE("subgroup validation") {
    FiniteAbelianGroup g({8});
    CHECK_NOTHROW(Subgroup::validate(GroupSubset::from_indices(g, {0, 4})));
    CHECK_NOTHROW(Subgroup::validate(GroupSubset::from_indices(g, {0, 2, 4, 6})));
    CHECK_THROWS_AS(Subgroup::validate(GroupSubset::from_indices(g, {0, 3})),
                    std::invalid_argument);
    CHECK_THROWS_AS(Subgroup::validate(GroupSubset::from_indices(g, {4})),
                    std::invalid_argument);
    CHECK_THROWS_AS(Subgroup::validate(GroupSubset(g)), std::invalid_argument);
}

TEST_CASE("subgroup enumeration on small groups") {
    CHECK(all_subgroups(FiniteAbelianGroup({6})).size() == 4);
    CHECK(all_subgroups(FiniteAbelianGroup({7})).size() == 2);
    CHECK(all_subgroups(FiniteAbelianGroup({2, 2})).size() == 5);
    CHECK(all_subgroups(FiniteAbelianGroup({12})).size() == 6);
    CHECK(all_subgroups(FiniteAbelianGroup({2, 4})).size() == 8);

    auto subs = all_subgroups(FiniteAbelianGroup({16}));
    CHECK(subs.size() == 5);
    for (const auto& h : subs) CHECK_NOTHROW(Subgroup::validate(h.elements()));

    CHECK_THROWS_WITH_AS(all_subgroups(FiniteAbelianGroup({8192})),
                         "group too large for subgroup enumeration", std::invalid_argument);
}

TEST_CASE("generated subgroup in Z/8") {
    FiniteAbelianGroup g({8});
    auto h = generated_subgroup(g, {2});
    CHECK(as_set(h.elements()) == std::set<long long>{0, 2, 4, 6});
    CHECK(h.index() == 2);
}

TEST_CASE("quotient by a subgroup of Z/6") {
    FiniteAbelianGroup g({6});
    auto h = Subgroup::validate(GroupSubset::from_indices(g, {0, 3}));
    auto proj = quotient_projection(g, h);
    CHECK(proj.quotient.order() == 3);
    CHECK(proj.map[0] == proj.map[3]);
    std::set<long long> kernel;
    for (long long e = 0; e < 6; ++e)
        if (proj.map[e] == proj.map[0]) kernel.insert(e);
    CHECK(kernel == std::set<long long>{0, 3});
}

TEST_CASE("quotient by the trivial subgroup is the identity map") {
    FiniteAbelianGroup g({2, 3});
    auto h = Subgroup::validate(GroupSubset::from_indices(g, {0}));
    auto proj = quotient_projection(g, h);
    CHECK(proj.quotient == g);
    for (long long e = 0; e < g.order(); ++e) CHECK(proj.map[e] == e);
}

TEST_CASE("quotient by the full group is trivial") {
    FiniteAbelianGroup g({6});
    auto h = Subgroup::validate(GroupSubset::full(g));
    auto proj = quotient_projection(g, h);
    CHECK(proj.quotient.order() == 1);
}

TEST_CASE("projection is a homomorphism with kernel exactly H") {
    SplitMix64 rng(5150);
    for (int trial = 0; trial < 25; ++trial) {
        auto g = random_group(rng, 64);
        auto subs = all_subgroups(g);
        const auto& h = subs[rng.below(subs.size())];
        auto proj = quotient_projection(g, h);
        CHECK(proj.quotient.order() == h.index());
        for (int k = 0; k < 200; ++k) {
            long long x = rng.range(0, g.order() - 1);
            long long y = rng.range(0, g.order() - 1);
            CHECK(proj.map[g.add(x, y)] ==
                  proj.quotient.add(proj.map[x], proj.map[y]));
        }
        for (long long e = 0; e < g.order(); ++e) {
            bool in_kernel = proj.map[e] == proj.quotient.zero();
            CHECK(in_kernel == h.elements().contains(e));
        }
        /* surjectivity */
        std::set<long long> image(proj.map.begin(), proj.map.end());
        CHECK(static_cast<long long>(image.size()) == proj.quotient.order());
    }
}

TEST_CASE("pullback of a projected set is the saturation") {
    SplitMix64 rng(61803);
    for (int trial = 0; trial < 25; ++trial) {
        auto g = random_group(rng, 64);
        auto subs = all_subgroups(g);
        const auto& h = subs[rng.below(subs.size())];
        auto proj = quotient_projection(g, h);
        auto s = random_subset(rng, g);
        auto back = pullback_subset(proj, project_subset(proj, s));
        CHECK(back == saturate(s, h));
        /* containment S subset of pullback */
        for (long long m : s.indices()) CHECK(back.contains(m));
    }
}
