#pragma once

#include "tset/circle_dynamics.hpp"
#include "tset/report.hpp"
#include "tset/system_spec.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace tset {

/* Outcome of a seeded verification campaign.  Trials draw per-trial seeds from
 * the master seed by counter mixing and are merged in trial order, so the
 * result (including the rendered JSON) is reproducible byte for byte. */
struct CampaignResult {
    std::string name;
    std::uint64_t seed = 0;
    long long trials = 0;
    long long hypothesis_hits = 0;
    long long violations = 0;
    long long equality_cases = 0;
    std::vector<std::string> notes; /* first few violation descriptions */
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
    bool passed = true;

    nlohmann::ordered_json to_json() const;
};

/* |B - A| >= max(|A|, |B|) as exact densities, over uniform random pairs. */
CampaignResult verify_max_bound(std::uint64_t seed, long long trials, long long max_order);

/* Stabilizer decomposition identity |D| = |A+H| + |B+H| - |H| on every trial
 * with |D| < |A| + |B|; cardinalities recomputed directly as the oracle. */
CampaignResult verify_kneser(std::uint64_t seed, long long trials, long long max_order);

/* Small-density structure: every trial with density(A-A) < (3/2) measure(A)
 * must yield a subgroup of index <= 1/measure(A).  Fails when fewer than
 * min_hits trials reach the hypothesis. */
CampaignResult verify_thm1(std::uint64_t seed, long long trials, long long max_order,
                           long long min_hits = 0);

/* Pair-density structure: under |D| < |A| + |B| the transfer set is a union of
 * stabilizer cosets, unchanged when A and B are saturated by the stabilizer;
 * strictly inside the region the stabilizer is nontrivial. */
CampaignResult verify_thm2(std::uint64_t seed, long long trials, long long max_order);

/* Quotient overshoot inequality: with H = stab(D) and images I_o, J_o in
 * G/H, the set eta^{-1}(J_o - I_o) \ D must be empty, and every g outside D
 * satisfies measure_a + measure_b <= m(I_o) + m(J_o) - m(I_o n (J_o - eta(g)))
 * with exact rationals; equality cases are counted. */
CampaignResult verify_overshoot(std::uint64_t seed, long long trials, long long max_order);

/* measure(J - I) >= min(1, measure(I) + measure(J)) over random rational
 * interval unions, exact. */
CampaignResult verify_connectedness(std::uint64_t seed, long long trials);

/* Pointwise return-set identity on rational rotations: for generic base
 * points (orbit meets every positive-overlap component) the difference set
 * B_x - A_x equals the transfer set on the half window, exactly.  Points are
 * rejection-sampled for genericity; non-generic draws are still checked for
 * the one-sided inclusion (differences always land inside the transfer set). */
CampaignResult verify_return_identity_campaign(std::uint64_t seed, long long systems,
                                               long long points_per_system);

struct Thm3Outcome {
    bool exact_equality = false;
    long long sym_diff_size = 0;
    std::vector<long long> sym_diff_sample; /* first few mismatching g */
    bool endpoints_only = true; /* every mismatch has g*alpha on an arc endpoint */
    long long residue_classes = 0; /* classes mod q for rational angles, else count */
    bool passed = false;
};

/* Coding comparison for single-interval rotation pairs: the transfer set must
 * match the orbit coding of the closed difference arc up to endpoint hits,
 * i.e. up to at most two residue classes of the angle period (rational) or at
 * most two integers (quadratic).  Throws "standing assumption violated" when
 * measure(A) + measure(B) >= 1 and rejects multi-interval inputs. */
Thm3Outcome check_thm3_system(const RotationSystem& system, long long window);

CampaignResult verify_thm3(const std::vector<RotationSystem>& systems, long long window);

struct DoublingCandidate {
    std::string label;
    Rat measure;
    Rat density; /* exact for finite systems, tail-min proxy for rotations */
    Rat ratio;   /* density / measure */
};

struct DoublingProbeResult {
    std::string family; /* "subgroup_pullbacks" | "intervals" */
    Rat delta;
    long long window = 0; /* rotations only */
    bool exact = false;   /* true when every candidate ratio is exact */
    Rat constant;         /* min ratio over candidates */
    std::vector<DoublingCandidate> candidates;

    nlohmann::ordered_json to_json() const;
};

/* Minimum of density(R_A)/measure(A) over a candidate family below delta.
 * subgroup_pullbacks: all subgroups of the finite group with measure < delta
 * (exact).  intervals: halving ladder [0, 2^-k) below delta on the rotation,
 * probed by the tail-min density proxy at the given window.
 * Throws "no candidate below delta" when the family is empty. */
DoublingProbeResult doubling_probe(const SystemSpec& spec, const Rat& delta,
                                   const std::string& family, long long window);

} // namespace tset
