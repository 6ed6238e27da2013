#include "tset/classifier.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace tset {

namespace {

std::vector<long long> prefix_sums(const std::vector<std::uint8_t>& bits) {
    std::vector<long long> pre(bits.size() + 1, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) pre[i + 1] = pre[i] + bits[i];
    return pre;
}

bool closed_residue_group(const std::vector<long long>& residues, long long d) {
    std::vector<std::uint8_t> in(static_cast<std::size_t>(d), 0);
    for (long long r : residues) in[static_cast<std::size_t>(r)] = 1;
    if (!in[0]) return false;
    for (long long a : residues) {
        if (!in[static_cast<std::size_t>((d - a) % d)]) return false;
        for (long long b : residues)
            if (!in[static_cast<std::size_t>((a + b) % d)]) return false;
    }
    return true;
}

} // namespace

PeriodResult detect_period(const IntegerWindowSet& set, long long d_max) {
    if (d_max < 1) throw std::invalid_argument("period bound must be positive");
    const auto& bits = set.raw();
    const long long len = static_cast<long long>(bits.size());
    if (len < 4 * d_max) throw std::invalid_argument("window too small for period scan");
    for (long long d = 1; d <= d_max; ++d) {
        bool match = true;
        for (long long i = 0; i + d < len; ++i) {
            if (bits[static_cast<std::size_t>(i)] != bits[static_cast<std::size_t>(i + d)]) {
                match = false;
                break;
            }
        }
        if (match) {
            PeriodResult out{true, d, {}};
            for (long long r = 0; r < d; ++r)
                if (set.contains(r)) out.residues.push_back(r);
            return out;
        }
    }
    return {};
}

BalanceResult is_balanced(const IntegerWindowSet& set, long long max_len) {
    if (max_len < 1) throw std::invalid_argument("factor length bound must be positive");
    const auto& bits = set.raw();
    const long long len = static_cast<long long>(bits.size());
    if (len < 2 * max_len) throw std::invalid_argument("window too small for balance scan");
    std::vector<long long> pre = prefix_sums(bits);

    for (long long l = 1; l <= max_len; ++l) {
        long long min_count = l + 1, max_count = -1;
        long long min_pos = 0, max_pos = 0;
        for (long long g = 0; g + l <= len; ++g) {
            long long count = pre[static_cast<std::size_t>(g + l)] - pre[static_cast<std::size_t>(g)];
            if (count < min_count) {
                min_count = count;
                min_pos = g;
            }
            if (count > max_count) {
                max_count = count;
                max_pos = g;
            }
        }
        if (max_count - min_count > 1) {
            BalanceResult out;
            out.balanced = false;
            out.length = l;
            out.pos_a = min_pos - set.window();
            out.pos_b = max_pos - set.window();
            out.count_a = min_count;
            out.count_b = max_count;
            return out;
        }
    }
    BalanceResult out;
    out.length = max_len;
    return out;
}

std::vector<long long> factor_complexity(const IntegerWindowSet& set, long long max_len) {
    if (max_len < 1) throw std::invalid_argument("factor length bound must be positive");
    if (max_len > 63) throw std::invalid_argument("factor length exceeds 63");
    const auto& bits = set.raw();
    const long long len = static_cast<long long>(bits.size());
    if (len < max_len) throw std::invalid_argument("window too small for complexity scan");

    std::vector<long long> profile;
    profile.reserve(static_cast<std::size_t>(max_len));
    for (long long l = 1; l <= max_len; ++l) {
        std::unordered_set<std::uint64_t> factors;
        std::uint64_t word = 0;
        const std::uint64_t mask = (l == 63) ? ~0ULL >> 1 : (1ULL << l) - 1;
        for (long long i = 0; i < len; ++i) {
            word = ((word << 1) | bits[static_cast<std::size_t>(i)]) & mask;
            if (i >= l - 1) factors.insert(word);
        }
        profile.push_back(static_cast<long long>(factors.size()));
    }
    return profile;
}

std::string to_string(StructureClass c) {
    switch (c) {
        case StructureClass::subgroup: return "subgroup";
        case StructureClass::periodic: return "periodic";
        case StructureClass::sturmian: return "sturmian";
        default: return "unstructured";
    }
}

Classification classify(const IntegerWindowSet& set, long long d_max, long long max_len) {
    Classification out;
    out.confidence = "exact-on-window";
    const long long len = 2 * set.window() + 1;

    PeriodResult period;
    long long d_eff = std::min(d_max, len / 4);
    if (d_eff >= 1) period = detect_period(set, d_eff);

    long long cap = std::min<long long>(40, len / 4);
    if (cap < 1) cap = 1;
    out.complexity_cap = cap;

    /* balance spread up to max_len, reported as a diagnostic */
    {
        const long long balance_cap = std::min(max_len, len / 2);
        const auto& bits = set.raw();
        std::vector<long long> pre = prefix_sums(bits);
        for (long long l = 1; l <= balance_cap; ++l) {
            long long min_count = l + 1, max_count = -1;
            for (long long g = 0; g + l <= len; ++g) {
                long long count =
                    pre[static_cast<std::size_t>(g + l)] - pre[static_cast<std::size_t>(g)];
                min_count = std::min(min_count, count);
                max_count = std::max(max_count, count);
            }
            out.balance_deficit = std::max(out.balance_deficit, max_count - min_count);
        }
    }

    if (period.periodic) {
        out.period = period.period;
        out.residues = period.residues;
        out.verdict = closed_residue_group(period.residues, period.period)
                          ? StructureClass::subgroup
                          : StructureClass::periodic;
        return out;
    }

    /* sturmian: aperiodic with the complexity profile of an interval coding.
     * Very sparse sets (fewer than 8 members or fewer than 2 per inspected
     * length) cannot attest the profile and fall through to unstructured. */
    long long attested_cap = std::min(cap, set.size() / 2);
    if (set.size() >= 8 && attested_cap >= 1 && len >= attested_cap) {
        out.complexity_cap = attested_cap;
        std::vector<long long> profile = factor_complexity(set, attested_cap);
        bool low = true;
        for (long long l = 1; l <= attested_cap; ++l)
            if (profile[static_cast<std::size_t>(l - 1)] > 2 * l) {
                low = false;
                break;
            }
        if (low) {
            out.verdict = StructureClass::sturmian;
            return out;
        }
    }

    out.verdict = StructureClass::unstructured;
    return out;
}

} // namespace tset
