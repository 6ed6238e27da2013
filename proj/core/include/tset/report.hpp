#pragma once

#include "tset/classifier.hpp"
#include "tset/quadratic.hpp"
#include "tset/sequence_density.hpp"
#include "tset/system_spec.hpp"
#include "tset/window_set.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tset {

/* fixed-point rendering truncated toward zero; exact integer arithmetic, so
 * identical inputs give identical bytes */
std::string quad_to_decimal(const QuadVal& v, int digits = 12);

/* {"exact": ..., "decimal": ...} */
nlohmann::ordered_json value_json(const QuadVal& v);
nlohmann::ordered_json value_json(const Rat& r);

/* One named inequality (or predicate) with exact sides.  `exact` is false for
 * finite-window proxies: those are tolerance checks, not identities. */
struct CheckResult {
    std::string name;
    std::string relation;
    QuadVal lhs;
    QuadVal rhs;
    bool has_sides = true;
    bool exact = true;
    bool holds = false;
    std::string note;
};

nlohmann::ordered_json check_json(const CheckResult& c);

struct FamilyDensity {
    std::string label;
    std::vector<TracePoint> trace;
    DensityEstimate estimate;
};

struct RunOptions {
    long long window = 0; /* 0 -> per-kind default */
    std::vector<std::string> families = {"initial_segments"};
    std::uint64_t seed = 0;
    long long sample_cap = 128;
    long long d_max = 500;
    long long max_len = 200;
    long long coverage_modulus = 30; /* residue-coverage audit for prime mixtures */
};

/* family restricted to values representable inside [-window, window] */
SequenceFamily family_for_window(const std::string& label, long long window);

struct TransferOutcome {
    nlohmann::ordered_json report;
    long long window = 0;
    std::optional<IntegerWindowSet> transfer;  /* integer image, when the action embeds in Z */
    std::vector<long long> group_transfer;     /* element indices, finite systems */
    std::optional<Rat> exact_density;
    QuadVal measure_a;
    QuadVal measure_b;
    std::optional<Classification> classification;
    std::vector<FamilyDensity> families;
    std::vector<CheckResult> checks;
    std::vector<std::string> warnings;
    /* filename -> contents; one density trace per family */
    std::vector<std::pair<std::string, std::string>> csv_files;

    bool all_checks_hold() const;
};

TransferOutcome run_transfer(const SystemSpec& spec, const RunOptions& options);

std::string render_report(const nlohmann::ordered_json& doc);

} // namespace tset
