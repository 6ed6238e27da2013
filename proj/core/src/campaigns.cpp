#include "tset/campaigns.hpp"

#include "tset/random_sets.hpp"
#include "tset/rng.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

namespace tset {

using nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

void note_violation(CampaignResult& r, const std::string& text) {
    ++r.violations;
    if (r.notes.size() < 8) r.notes.push_back(text);
}

std::string trial_tag(long long t) { return "trial " + std::to_string(t); }

/* min over n in [burn_in, window] of |S n [1, n]| / n, streamed with integer
 * cross-multiplication (window <= 2^26 keeps the products in range) */
Rat tail_min_density(const IntegerWindowSet& set, long long burn_in) {
    auto members = set.members();
    auto it = std::lower_bound(members.begin(), members.end(), 1LL);
    long long count = 0, best_count = -1, best_n = 1;
    for (long long n = 1; n <= set.window(); ++n) {
        if (it != members.end() && *it == n) {
            ++count;
            ++it;
        }
        if (n >= burn_in && (best_count < 0 || count * best_n < best_count * n)) {
            best_count = count;
            best_n = n;
        }
    }
    if (best_count < 0) {
        best_count = count;
        best_n = std::max<long long>(1, set.window());
    }
    return Rat(best_count, best_n);
}

IntervalUnion random_rational_union(SplitMix64& rng, long long max_den, long long max_pieces) {
    long long q = rng.range(2, max_den);
    long long pieces = rng.range(1, max_pieces);
    std::vector<IntervalUnion::Piece> raw;
    for (long long i = 0; i < pieces; ++i) {
        long long lo = rng.range(0, q - 1);
        long long len = rng.range(1, q);
        raw.emplace_back(QuadVal(Rat(lo, q)), QuadVal(Rat(lo + len, q)));
    }
    return IntervalUnion::from_pieces(raw);
}

} // namespace

ordered_json CampaignResult::to_json() const {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["generator"] = "transferset";
    doc["kind"] = "campaign_report";
    doc["campaign"] = name;
    doc["seed"] = seed;
    doc["trials"] = trials;
    doc["hypothesis_hits"] = hypothesis_hits;
    doc["violations"] = violations;
    doc["equality_cases"] = equality_cases;
    doc["passed"] = passed;
    doc["notes"] = notes;
    doc["details"] = details;
    return doc;
}

CampaignResult verify_max_bound(std::uint64_t seed, long long trials, long long max_order) {
    CampaignResult r;
    r.name = "max_bound";
    r.seed = seed;
    r.trials = trials;
    for (long long t = 0; t < trials; ++t) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        FiniteAbelianGroup g = random_group(rng, max_order);
        GroupSubset a = uniform_subset(rng, g, static_cast<std::uint64_t>(rng.range(1, 3)), 4);
        GroupSubset b = uniform_subset(rng, g, static_cast<std::uint64_t>(rng.range(1, 3)), 4);
        GroupSubset d = difference_set(a, b);
        ++r.hypothesis_hits;
        Rat bound = std::max(a.density(), b.density());
        if (d.density() < bound)
            note_violation(r, trial_tag(t) + ": density " + rat_to_string(d.density()) +
                                  " below max bound " + rat_to_string(bound));
        if (d.density() == bound) ++r.equality_cases;
    }
    r.passed = r.violations == 0;
    r.details["max_order"] = max_order;
    return r;
}

CampaignResult verify_kneser(std::uint64_t seed, long long trials, long long max_order) {
    CampaignResult r;
    r.name = "kneser";
    r.seed = seed;
    r.trials = trials;
    for (long long t = 0; t < trials; ++t) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        FiniteAbelianGroup g = random_group(rng, max_order);
        GroupSubset a(g), b(g);
        if (t % 10 < 7) {
            a = uniform_subset(rng, g, static_cast<std::uint64_t>(rng.range(1, 3)), 4);
            b = uniform_subset(rng, g, static_cast<std::uint64_t>(rng.range(1, 3)), 4);
        } else {
            auto pair = coset_pair(rng, g);
            a = pair.first;
            b = pair.second;
        }
        GroupSubset d = difference_set(a, b);
        if (d.size() >= a.size() + b.size()) continue;
        ++r.hypothesis_hits;

        /* oracle: plain cardinalities around an independently computed stabilizer */
        Subgroup h = stabilizer(d);
        long long direct = saturate(a, h).size() + saturate(b, h).size() - h.size();
        if (d.size() != direct)
            note_violation(r, trial_tag(t) + ": |D| = " + std::to_string(d.size()) +
                                  " but |A+H| + |B+H| - |H| = " + std::to_string(direct));
        auto reduction = kneser_decompose(a, b);
        if (!reduction || !reduction->identity_holds)
            note_violation(r, trial_tag(t) + ": decomposition missing or identity flag false");
    }
    r.passed = r.violations == 0;
    r.details["max_order"] = max_order;
    return r;
}

CampaignResult verify_thm1(std::uint64_t seed, long long trials, long long max_order,
                           long long min_hits) {
    CampaignResult r;
    r.name = "thm1";
    r.seed = seed;
    r.trials = trials;
    for (long long t = 0; t < trials; ++t) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        FiniteAbelianGroup g = random_group(rng, max_order);
        GroupSubset a = [&] {
            switch (t % 5) {
            case 0:
            case 1: return dented_coset_subset(rng, g);
            case 2:
            case 3: return coset_perturbed_subset(rng, g, 2);
            default: return uniform_subset(rng, g, 1, 3);
            }
        }();
        GroupSubset d = difference_set(a, a);
        if (2 * d.size() >= 3 * a.size()) continue;
        ++r.hypothesis_hits;

        auto result = small_doubling_subgroup_check(a);
        bool index_ok =
            result.index && Rat(*result.index) <= Rat(g.order(), a.size());
        if (!result.is_subgroup || !index_ok)
            note_violation(r, trial_tag(t) + ": hypothesis met but " +
                                  (result.is_subgroup ? "index bound failed"
                                                      : "difference set is not a subgroup"));
    }
    r.passed = r.violations == 0 && r.hypothesis_hits >= min_hits;
    if (r.hypothesis_hits < min_hits)
        r.notes.push_back("only " + std::to_string(r.hypothesis_hits) +
                          " hypothesis hits; required " + std::to_string(min_hits));
    r.details["max_order"] = max_order;
    r.details["min_hits"] = min_hits;
    return r;
}

CampaignResult verify_thm2(std::uint64_t seed, long long trials, long long max_order) {
    CampaignResult r;
    r.name = "thm2";
    r.seed = seed;
    r.trials = trials;
    long long strict_hits = 0;
    for (long long t = 0; t < trials; ++t) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        FiniteAbelianGroup g = random_group(rng, max_order);
        GroupSubset a(g), b(g);
        if (t % 5 < 3) {
            auto pair = coset_pair(rng, g);
            a = pair.first;
            b = pair.second;
        } else {
            a = uniform_subset(rng, g, static_cast<std::uint64_t>(rng.range(1, 3)), 4);
            b = uniform_subset(rng, g, static_cast<std::uint64_t>(rng.range(1, 3)), 4);
        }
        GroupSubset d = difference_set(a, b);
        if (d.size() >= a.size() + b.size()) continue;
        ++r.hypothesis_hits;

        auto reduction = kneser_decompose(a, b);
        if (!reduction || !reduction->identity_holds) {
            note_violation(r, trial_tag(t) + ": decomposition missing under hypothesis");
            continue;
        }
        const Subgroup& h = reduction->stabilizer;
        if (!(saturate(d, h) == d))
            note_violation(r, trial_tag(t) + ": transfer set not a union of stabilizer cosets");
        GroupSubset saturated = difference_set(saturate(a, h), saturate(b, h));
        if (!(saturated == d))
            note_violation(r, trial_tag(t) + ": saturating the pair changed the transfer set");
        bool strict = d.size() < a.size() + b.size() - 1;
        if (strict) {
            ++strict_hits;
            if (h.size() <= 1)
                note_violation(r, trial_tag(t) + ": strict hypothesis with trivial stabilizer");
        }
    }
    r.passed = r.violations == 0;
    r.details["max_order"] = max_order;
    r.details["strict_hits"] = strict_hits;
    return r;
}

CampaignResult verify_overshoot(std::uint64_t seed, long long trials, long long max_order) {
    CampaignResult r;
    r.name = "overshoot";
    r.seed = seed;
    r.trials = trials;
    long long inequality_checks = 0;
    for (long long t = 0; t < trials; ++t) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        FiniteAbelianGroup g = random_group(rng, max_order);
        GroupSubset a(g), b(g);
        if (t % 5 < 3) {
            auto pair = coset_pair(rng, g);
            a = pair.first;
            b = pair.second;
        } else {
            a = uniform_subset(rng, g, static_cast<std::uint64_t>(rng.range(1, 3)), 4);
            b = uniform_subset(rng, g, static_cast<std::uint64_t>(rng.range(1, 3)), 4);
        }
        GroupSubset d = difference_set(a, b);
        if (d.size() >= a.size() + b.size()) continue;
        ++r.hypothesis_hits;

        auto reduction = kneser_decompose(a, b);
        if (!reduction) {
            note_violation(r, trial_tag(t) + ": decomposition missing under hypothesis");
            continue;
        }
        const auto& proj = reduction->projection;
        if (!(pullback_subset(proj, reduction->image_d) == d)) {
            note_violation(r, trial_tag(t) +
                                  ": pulled-back image difference disagrees with the "
                                  "transfer set (excluded set nonempty)");
            continue;
        }
        const FiniteAbelianGroup& quot = proj.quotient;
        Rat lhs = a.density() + b.density();
        long long image_sizes = reduction->image_a.size() + reduction->image_b.size();
        for (long long e = 0; e < g.order(); ++e) {
            if (d.contains(e)) continue;
            long long eta = proj.map[static_cast<size_t>(e)];
            long long overlap = 0;
            for (long long q = 0; q < quot.order(); ++q)
                if (reduction->image_a.contains(q) &&
                    reduction->image_b.contains(quot.add(q, eta)))
                    ++overlap;
            Rat rhs = Rat(image_sizes - overlap, quot.order());
            ++inequality_checks;
            if (lhs > rhs)
                note_violation(r, trial_tag(t) + ": overshoot inequality failed at g = " +
                                      std::to_string(e));
            else if (lhs == rhs)
                ++r.equality_cases;
        }
    }
    r.passed = r.violations == 0;
    r.details["max_order"] = max_order;
    r.details["inequality_checks"] = inequality_checks;
    return r;
}

CampaignResult verify_connectedness(std::uint64_t seed, long long trials) {
    CampaignResult r;
    r.name = "connectedness";
    r.seed = seed;
    r.trials = trials;
    for (long long t = 0; t < trials; ++t) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        IntervalUnion i = random_rational_union(rng, 48, 3);
        IntervalUnion j = random_rational_union(rng, 48, 3);
        QuadVal diff_measure = minkowski_difference(i, j).measure();
        QuadVal sum = i.measure() + j.measure();
        QuadVal bound = sum < QuadVal(1) ? sum : QuadVal(1);
        ++r.hypothesis_hits;
        if (diff_measure < bound)
            note_violation(r, trial_tag(t) + ": measure(J - I) fell below min(1, m(I) + m(J))");
        else if (diff_measure == bound)
            ++r.equality_cases;
    }
    r.passed = r.violations == 0;
    return r;
}

CampaignResult verify_return_identity_campaign(std::uint64_t seed, long long systems,
                                               long long points_per_system) {
    CampaignResult r;
    r.name = "return_identity";
    r.seed = seed;
    r.trials = systems;
    long long rejected_points = 0;
    long long inclusion_checks = 0;
    for (long long t = 0; t < systems; ++t) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        long long q = rng.range(2, 25);
        long long p = rng.range(1, q - 1);
        while (std::gcd(p, q) != 1) p = rng.range(1, q - 1);
        /* cells of width 1/q; odd trials may shrink a cell to its left half,
         * which makes some base points non-generic without ever losing all of
         * them (every left-offset point stays generic) */
        bool halves = (t % 2) == 1;
        auto random_blocks = [&] {
            std::vector<IntervalUnion::Piece> raw;
            for (long long c = 0; c < q; ++c) {
                if (!rng.chance(1, 3)) continue;
                Rat lo(c, q);
                Rat hi = (halves && rng.chance(1, 2)) ? lo + Rat(1, 2 * q) : Rat(c + 1, q);
                raw.emplace_back(QuadVal(lo), QuadVal(hi));
            }
            if (raw.empty()) {
                long long c = rng.range(0, q - 1);
                raw.emplace_back(QuadVal(Rat(c, q)), QuadVal(Rat(c + 1, q)));
            }
            return IntervalUnion::from_pieces(raw);
        };
        IntervalUnion a = random_blocks();
        IntervalUnion b = random_blocks();
        RotationSystem system = RotationSystem::make(Angle::rational(Rat(p, q)), a, b);
        long long window = 8 * q;

        /* positive-overlap component per residue class of the angle */
        std::vector<IntervalUnion> components;
        components.reserve(static_cast<size_t>(q));
        for (long long s = 0; s < q; ++s)
            components.push_back(a.intersect(b.shifted(QuadVal(-Rat(s * p, q)))));
        auto generic = [&](const Rat& x) {
            for (long long s = 0; s < q; ++s) {
                if (components[static_cast<size_t>(s)].empty()) continue;
                bool hit = false;
                for (long long j = 0; j < q && !hit; ++j)
                    hit = components[static_cast<size_t>(s)].contains(QuadVal(x + Rat(j, q)));
                if (!hit) return false;
            }
            return true;
        };

        std::vector<QuadVal> accepted;
        std::vector<QuadVal> skipped;
        for (int attempt = 0;
             attempt < 200 && accepted.size() < static_cast<size_t>(points_per_system);
             ++attempt) {
            Rat x(rng.range(0, 8 * q - 1), 8 * q);
            if (generic(x)) {
                accepted.push_back(QuadVal(x));
            } else {
                ++rejected_points;
                if (skipped.size() < 4) skipped.push_back(QuadVal(x));
            }
        }
        if (accepted.size() < static_cast<size_t>(points_per_system)) {
            note_violation(r, trial_tag(t) + ": could not sample enough generic points");
            continue;
        }
        ++r.hypothesis_hits;

        auto report = verify_return_identity(system, accepted, window);
        for (const auto& point : report.points)
            if (!point.matched)
                note_violation(r, trial_tag(t) + ": identity failed at a generic point");

        /* non-generic draws must still satisfy the one-sided inclusion, and
         * must genuinely miss part of the transfer set */
        if (!skipped.empty()) {
            auto partial = verify_return_identity(system, skipped, window);
            for (const auto& point : partial.points) {
                ++inclusion_checks;
                if (!point.extra.empty())
                    note_violation(r, trial_tag(t) +
                                          ": difference pair outside the transfer set");
                if (point.matched)
                    note_violation(r, trial_tag(t) +
                                          ": point flagged non-generic but identity held");
            }
        }
    }
    r.passed = r.violations == 0;
    r.details["points_per_system"] = points_per_system;
    r.details["rejected_points"] = rejected_points;
    r.details["inclusion_checks"] = inclusion_checks;
    return r;
}

namespace {

/* endpoints of a set forming one circular arc, tolerating the wrap split */
std::optional<std::pair<QuadVal, QuadVal>> single_arc(const IntervalUnion& u) {
    const auto& p = u.pieces();
    if (p.size() == 1) return std::make_pair(p[0].first, p[0].second);
    if (p.size() == 2 && p[0].first == QuadVal(0) && p[1].second == QuadVal(1))
        return std::make_pair(p[1].first, p[0].second);
    return std::nullopt;
}

} // namespace

Thm3Outcome check_thm3_system(const RotationSystem& system, long long window) {
    if (!system.small_measure_ok) throw std::invalid_argument("standing assumption violated");
    auto arc_a = single_arc(system.set_a);
    auto arc_b = single_arc(system.set_b);
    if (!arc_a || !arc_b)
        throw std::invalid_argument("coding comparison needs single-interval sets");

    IntervalUnion arc = minkowski_difference(system.set_a, system.set_b);
    std::vector<QuadVal> pool;
    CompiledMembership membership = CompiledMembership::from_half_open(arc, pool);
    IntegerWindowSet coding(window);
    {
        OrbitWalker fwd(system.alpha, QuadVal(0), pool);
        for (long long g = 0; g <= window; ++g) {
            if (membership.test(fwd)) coding.insert(g);
            if (g < window) fwd.step();
        }
        OrbitWalker bwd(system.alpha, QuadVal(0), pool);
        for (long long g = -1; g >= -window; --g) {
            bwd.step_back();
            if (membership.test(bwd)) coding.insert(g);
        }
    }
    IntegerWindowSet transfer = transfer_set(system, window);

    /* closure endpoints of the difference arc */
    QuadVal lo = (arc_b->first - arc_a->second).mod1();
    QuadVal hi = (arc_b->second - arc_a->first).mod1();

    Thm3Outcome out;
    std::vector<long long> mismatch;
    for (long long g = -window; g <= window; ++g)
        if (coding.contains(g) != transfer.contains(g)) mismatch.push_back(g);
    out.sym_diff_size = static_cast<long long>(mismatch.size());
    out.exact_equality = mismatch.empty();
    for (size_t i = 0; i < mismatch.size() && i < 8; ++i)
        out.sym_diff_sample.push_back(mismatch[i]);

    if (mismatch.size() > 1000) {
        out.endpoints_only = false; /* far beyond what endpoint hits could explain */
    } else {
        for (long long g : mismatch) {
            QuadVal landing = system.alpha.times(g).mod1();
            if (!(landing == lo || landing == hi)) {
                out.endpoints_only = false;
                break;
            }
        }
    }

    if (system.alpha.is_rational()) {
        long long q = system.alpha.denominator();
        std::set<long long> classes;
        for (long long g : mismatch) classes.insert(((g % q) + q) % q);
        out.residue_classes = static_cast<long long>(classes.size());
    } else {
        out.residue_classes = out.sym_diff_size;
    }
    out.passed = out.endpoints_only && out.residue_classes <= 2;
    return out;
}

CampaignResult verify_thm3(const std::vector<RotationSystem>& systems, long long window) {
    CampaignResult r;
    r.name = "thm3";
    r.trials = static_cast<long long>(systems.size());
    ordered_json per_system = ordered_json::array();
    for (size_t i = 0; i < systems.size(); ++i) {
        Thm3Outcome out = check_thm3_system(systems[i], window);
        ++r.hypothesis_hits;
        if (!out.passed)
            note_violation(r, "system " + std::to_string(i) + ": symmetric difference spans " +
                                  std::to_string(out.residue_classes) +
                                  " residue classes or leaves the arc endpoints");
        if (out.exact_equality) ++r.equality_cases;
        ordered_json doc;
        doc["alpha"] = systems[i].alpha.to_string();
        doc["exact_equality"] = out.exact_equality;
        doc["sym_diff_size"] = out.sym_diff_size;
        doc["sym_diff_sample"] = out.sym_diff_sample;
        doc["residue_classes"] = out.residue_classes;
        doc["endpoints_only"] = out.endpoints_only;
        doc["passed"] = out.passed;
        per_system.push_back(std::move(doc));
    }
    r.passed = r.violations == 0;
    r.details["window"] = window;
    r.details["systems"] = per_system;
    return r;
}

ordered_json DoublingProbeResult::to_json() const {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["generator"] = "transferset";
    doc["kind"] = "doubling_probe";
    doc["family"] = family;
    doc["delta"] = value_json(delta);
    doc["window"] = window;
    doc["exact"] = exact;
    doc["constant"] = value_json(constant);
    ordered_json arr = ordered_json::array();
    for (const auto& c : candidates) {
        ordered_json entry;
        entry["label"] = c.label;
        entry["measure"] = value_json(c.measure);
        entry["density"] = value_json(c.density);
        entry["ratio"] = value_json(c.ratio);
        arr.push_back(std::move(entry));
    }
    doc["candidates"] = arr;
    return doc;
}

DoublingProbeResult doubling_probe(const SystemSpec& spec, const Rat& delta,
                                   const std::string& family, long long window) {
    if (family != "subgroup_pullbacks" && family != "intervals")
        throw std::invalid_argument("candidate family must be subgroup_pullbacks or intervals");
    DoublingProbeResult out;
    out.family = family;
    out.delta = delta;

    if (family == "subgroup_pullbacks") {
        const FiniteTranslationSpec* fin = spec.finite();
        if (!fin)
            throw std::invalid_argument("subgroup_pullbacks needs a finite_translation system");
        for (const Subgroup& h : all_subgroups(fin->group)) {
            Rat mu = h.elements().density();
            if (!(mu < delta) || !(mu < 1)) continue;
            GroupSubset d = difference_set(h.elements(), h.elements());
            DoublingCandidate cand;
            cand.label = "subgroup of index " + std::to_string(h.index());
            cand.measure = mu;
            cand.density = d.density();
            cand.ratio = cand.density / mu;
            out.candidates.push_back(std::move(cand));
        }
        out.exact = true;
    } else {
        const RotationSpec* rot = spec.rotation();
        if (!rot) throw std::invalid_argument("intervals needs a rotation system");
        out.window = window > 0 ? window : 1000000;
        int k = 1;
        while (k <= 60 && !(Rat(Int(1), Int(1) << k) < delta)) ++k;
        for (int rung = k; rung < k + 3 && rung <= 60; ++rung) {
            Rat len(Int(1), Int(1) << rung);
            IntervalUnion candidate =
                IntervalUnion::from_pieces({{QuadVal(0), QuadVal(len)}});
            RotationSystem system = RotationSystem::make(rot->alpha, candidate, candidate);
            IntegerWindowSet transfer = transfer_set(system, out.window);
            DoublingCandidate cand;
            cand.label = "interval [0, 1/2^" + std::to_string(rung) + ")";
            cand.measure = len;
            cand.density =
                tail_min_density(transfer, std::max<long long>(1, out.window / 10));
            cand.ratio = cand.density / len;
            out.candidates.push_back(std::move(cand));
        }
        out.exact = false;
    }

    if (out.candidates.empty()) throw std::invalid_argument("no candidate below delta");
    out.constant = out.candidates.front().ratio;
    for (const auto& c : out.candidates) out.constant = std::min(out.constant, c.ratio);
    return out;
}

} // namespace tset
