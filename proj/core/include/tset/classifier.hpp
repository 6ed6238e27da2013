#pragma once

#include "tset/window_set.hpp"

#include <string>
#include <vector>

namespace tset {

struct PeriodResult {
    bool periodic = false;
    long long period = 0; /* smallest d <= d_max with S(g) == S(g + d) across the window */
    std::vector<long long> residues; /* members of [0, period) hit by the set */
    bool operator==(const PeriodResult&) const = default;
};

/* requires window length >= 4 * d_max so a reported period is attested by
 * several repetitions */
PeriodResult detect_period(const IntegerWindowSet& set, long long d_max = 500);

struct BalanceResult {
    bool balanced = true;
    /* on violation: two length-`length` factors whose hit counts differ by
     * more than one, anchored at pos_a / pos_b */
    long long length = 0;
    long long pos_a = 0, pos_b = 0;
    long long count_a = 0, count_b = 0;
};

/* checks every factor length up to max_len; requires window length >= 2 * max_len */
BalanceResult is_balanced(const IntegerWindowSet& set, long long max_len = 200);

/* number of distinct length-l factors of the membership word, l = 1..max_len
 * (max_len capped at 63 by the factor encoding) */
std::vector<long long> factor_complexity(const IntegerWindowSet& set, long long max_len);

enum class StructureClass { subgroup, periodic, sturmian, unstructured };

std::string to_string(StructureClass c);

struct Classification {
    StructureClass verdict = StructureClass::unstructured;
    long long period = 0;              /* set for subgroup / periodic */
    std::vector<long long> residues;   /* residue set mod period */
    long long complexity_cap = 0;      /* factor lengths inspected for the sturmian test */
    long long balance_deficit = 0;     /* max count spread among equal-length factors */
    std::string confidence;            /* "exact-on-window": every test is exact there */
};

/* Precedence: subgroup (periodic with residue set closed under addition and
 * negation mod d and containing 0) beats periodic, which beats sturmian
 * (aperiodic, enough members, and factor complexity at most 2l for every l up
 * to the cap — the profile of a rotation coded by a single interval), which
 * beats unstructured.  d_max is clamped so the period scan stays attested. */
Classification classify(const IntegerWindowSet& set, long long d_max = 500,
                        long long max_len = 200);

} // namespace tset
