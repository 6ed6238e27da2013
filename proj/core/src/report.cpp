#include "tset/report.hpp"

#include "tset/circle_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tset {

using nlohmann::ordered_json;

std::string quad_to_decimal(const QuadVal& v, int digits) {
    if (v.is_rational()) return rat_to_decimal(v.as_rational(), digits);
    bool negative = v.sign() < 0;
    QuadVal magnitude = negative ? -v : v;
    Int scale(1);
    for (int i = 0; i < digits; ++i) scale *= 10;
    Int fixed = magnitude.scaled(Rat(scale)).floor();
    Int whole = fixed / scale;
    Int frac = fixed % scale;
    std::string frac_text = frac.str();
    frac_text.insert(0, static_cast<size_t>(digits) - frac_text.size(), '0');
    return (negative ? "-" : "") + whole.str() + "." + frac_text;
}

ordered_json value_json(const QuadVal& v) {
    return ordered_json{{"exact", v.to_string()}, {"decimal", quad_to_decimal(v)}};
}

ordered_json value_json(const Rat& r) {
    return ordered_json{{"exact", rat_to_string(r)}, {"decimal", rat_to_decimal(r)}};
}

ordered_json check_json(const CheckResult& c) {
    ordered_json doc;
    doc["name"] = c.name;
    doc["relation"] = c.relation;
    doc["holds"] = c.holds;
    doc["exact"] = c.exact;
    if (c.has_sides) {
        doc["lhs"] = value_json(c.lhs);
        doc["rhs"] = value_json(c.rhs);
        doc["slack"] = value_json(c.rhs - c.lhs);
    }
    if (!c.note.empty()) doc["note"] = c.note;
    return doc;
}

SequenceFamily family_for_window(const std::string& label, long long window) {
    if (label == "initial_segments") return SequenceFamily::initial_segments(window);
    if (label == "squares") {
        long long count = static_cast<long long>(std::sqrt(static_cast<double>(window)));
        while ((count + 1) * (count + 1) <= window) ++count;
        while (count > 0 && count * count > window) --count;
        if (count < 1) throw std::invalid_argument("window too small for the squares family");
        return SequenceFamily::squares(count);
    }
    if (label == "sparse_sqrt2") {
        long long guess = static_cast<long long>(std::pow(static_cast<double>(window), 0.4)) + 3;
        auto full = SequenceFamily::sparse_sqrt2(guess).values();
        std::vector<long long> kept;
        for (long long v : full)
            if (v <= window) kept.push_back(v);
        if (kept.empty())
            throw std::invalid_argument("window too small for the sparse_sqrt2 family");
        return SequenceFamily::custom("sparse_sqrt2", kept);
    }
    throw std::invalid_argument("unknown sequence family: " + label);
}

namespace {

constexpr int kSchemaVersion = 1;

struct ReportBuilder {
    const SystemSpec& spec;
    const RunOptions& options;
    TransferOutcome out;

    explicit ReportBuilder(const SystemSpec& s, const RunOptions& o) : spec(s), options(o) {}

    void add_warning(std::string text) { out.warnings.push_back(std::move(text)); }

    void add_check(CheckResult c) { out.checks.push_back(std::move(c)); }

    /* members ordered by distance from zero, then re-sorted ascending */
    static std::vector<long long> centered_sample(const IntegerWindowSet& set, long long cap) {
        auto all = set.members();
        std::sort(all.begin(), all.end(), [](long long x, long long y) {
            return std::llabs(x) != std::llabs(y) ? std::llabs(x) < std::llabs(y) : x < y;
        });
        if (static_cast<long long>(all.size()) > cap) all.resize(static_cast<size_t>(cap));
        std::sort(all.begin(), all.end());
        return all;
    }

    void run_families(const IntegerWindowSet& transfer) {
        for (const std::string& label : options.families) {
            SequenceFamily family = family_for_window(label, out.window);
            FamilyDensity fd;
            fd.label = label;
            fd.trace = density_trace(transfer, family);
            fd.estimate = liminf_estimate(fd.trace);
            std::ostringstream csv;
            write_trace_csv(csv, fd.trace);
            out.csv_files.emplace_back("trace_" + label + ".csv", csv.str());
            out.families.push_back(std::move(fd));
        }
    }

    const FamilyDensity* family(const std::string& label) const {
        for (const auto& fd : out.families)
            if (fd.label == label) return &fd;
        return nullptr;
    }

    const FamilyDensity* proxy_family() const {
        if (const auto* fd = family("initial_segments")) return fd;
        return out.families.empty() ? nullptr : &out.families.front();
    }

    void classify_transfer(const IntegerWindowSet& transfer) {
        out.classification = classify(transfer, options.d_max, options.max_len);
    }

    ordered_json families_json() const {
        ordered_json arr = ordered_json::array();
        for (const auto& fd : out.families) {
            ordered_json f;
            f["label"] = fd.label;
            f["n_max"] = fd.trace.empty() ? 0 : fd.trace.back().n;
            ordered_json est;
            est["value"] = value_json(fd.estimate.value);
            est["method"] = fd.estimate.method;
            est["exact_periodic"] = fd.estimate.exact_periodic;
            est["period"] = fd.estimate.period;
            est["burn_in"] = fd.estimate.burn_in;
            est["achieved_n"] = fd.estimate.achieved_n;
            f["liminf"] = est;
            ordered_json tail = ordered_json::array();
            size_t points = fd.trace.size();
            size_t stride = points <= 32 ? 1 : points / 32;
            for (size_t i = stride - 1; i < points; i += stride)
                tail.push_back({fd.trace[i].n, rat_to_decimal(fd.trace[i].ratio)});
            f["trace_tail"] = tail;
            arr.push_back(std::move(f));
        }
        return arr;
    }

    ordered_json classification_json() const {
        if (!out.classification) return nullptr;
        const Classification& c = *out.classification;
        ordered_json doc;
        doc["verdict"] = to_string(c.verdict);
        doc["period"] = c.period;
        doc["residues"] = c.residues;
        doc["complexity_cap"] = c.complexity_cap;
        doc["balance_deficit"] = c.balance_deficit;
        doc["confidence"] = c.confidence;
        return doc;
    }

    void finish(const std::string& action, ordered_json structure = nullptr) {
        ordered_json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["generator"] = "transferset";
        doc["kind"] = "transfer_report";
        doc["seed"] = options.seed;
        doc["window"] = out.window;
        doc["system"] = spec.echo();
        doc["action"] = action;
        ordered_json opts;
        opts["families"] = options.families;
        opts["d_max"] = options.d_max;
        opts["max_len"] = options.max_len;
        opts["sample_cap"] = options.sample_cap;
        doc["options"] = opts;
        doc["measure_a"] = value_json(out.measure_a);
        doc["measure_b"] = value_json(out.measure_b);
        doc["exact_density"] = out.exact_density ? value_json(*out.exact_density)
                                                 : ordered_json(nullptr);
        ordered_json transfer_doc;
        if (out.transfer) {
            transfer_doc["size"] = out.transfer->size();
            transfer_doc["sample_cap"] = options.sample_cap;
            transfer_doc["sample"] = centered_sample(*out.transfer, options.sample_cap);
        } else {
            transfer_doc["size"] = static_cast<long long>(out.group_transfer.size());
            transfer_doc["elements"] = out.group_transfer;
        }
        doc["transfer"] = transfer_doc;
        doc["families"] = families_json();
        doc["classification"] = classification_json();
        if (!structure.is_null()) doc["structure"] = structure;
        ordered_json checks = ordered_json::array();
        for (const auto& c : out.checks) checks.push_back(check_json(c));
        doc["checks"] = checks;
        doc["warnings"] = out.warnings;
        out.report = std::move(doc);
    }
};

IntegerWindowSet residue_pullback(long long window, long long modulus,
                                  const std::vector<long long>& residues) {
    IntegerWindowSet set(window);
    for (long long r : residues) {
        long long start = -window + ((r + window) % modulus + modulus) % modulus;
        for (long long g = start; g <= window; g += modulus) set.insert(g);
    }
    return set;
}

void standing_assumption_guard(ReportBuilder& b) {
    if (b.out.measure_a + b.out.measure_b >= QuadVal(1))
        b.add_warning("small-measure standing assumption violated: "
                      "measure_a + measure_b >= 1");
}

void finite_structure_checks(ReportBuilder& b, const FiniteTranslationSpec& fin,
                             const GroupSubset& d, const QuadVal& density) {
    long long order = fin.group.order();
    Rat mu_a = fin.set_a.density();
    Rat mu_b = fin.set_b.density();

    CheckResult max_bound;
    max_bound.name = "density_lower_bound_max";
    max_bound.relation = "max(measure_a, measure_b) <= density";
    max_bound.lhs = QuadVal(std::max(mu_a, mu_b));
    max_bound.rhs = density;
    max_bound.holds = max_bound.lhs <= max_bound.rhs;
    b.add_check(max_bound);

    if (fin.set_a == fin.set_b) {
        auto doubling = small_doubling_subgroup_check(fin.set_a);
        bool hypothesis = Rat(2 * d.size()) < Rat(3 * fin.set_a.size());
        CheckResult sub;
        sub.name = "subgroup_under_small_density";
        sub.relation =
            "density < (3/2)*measure_a implies subgroup with index <= 1/measure_a";
        sub.lhs = density;
        sub.rhs = QuadVal(Rat(3) / Rat(2) * mu_a);
        if (!hypothesis) {
            sub.holds = true;
            sub.note = "hypothesis not met; conclusion vacuous";
        } else {
            bool index_ok = doubling.index && Rat(*doubling.index) <= Rat(1) / mu_a;
            sub.holds = doubling.is_subgroup && index_ok;
            sub.note = doubling.is_subgroup
                           ? "hypothesis met; subgroup of index " +
                                 std::to_string(doubling.index ? *doubling.index : 0)
                           : "hypothesis met but the transfer set is not a subgroup";
        }
        b.add_check(sub);
    }

    /* strictly inside the pair-density region the stabilizer cannot be trivial */
    bool strict = d.size() < fin.set_a.size() + fin.set_b.size() - 1;
    Subgroup stab = stabilizer(d);
    CheckResult periodic;
    periodic.name = "periodic_under_pair_density";
    periodic.relation =
        "density < measure_a + measure_b - 1/order implies nontrivial stabilizer";
    periodic.lhs = density;
    periodic.rhs = QuadVal(mu_a + mu_b - Rat(1, order));
    periodic.holds = !strict || stab.size() > 1;
    periodic.note = strict ? "hypothesis met; stabilizer size " + std::to_string(stab.size())
                           : "hypothesis not met; conclusion vacuous";
    b.add_check(periodic);
}

TransferOutcome run_finite(const SystemSpec& spec, const RunOptions& options) {
    const FiniteTranslationSpec& fin = *spec.finite();
    ReportBuilder b(spec, options);
    long long order = fin.group.order();
    b.out.window = options.window > 0 ? options.window : std::max<long long>(2000, 4 * order);

    GroupSubset d = difference_set(fin.set_a, fin.set_b);
    b.out.group_transfer = d.indices();
    b.out.measure_a = QuadVal(fin.set_a.density());
    b.out.measure_b = QuadVal(fin.set_b.density());
    b.out.exact_density = d.density();
    standing_assumption_guard(b);

    if (fin.integer_action) {
        b.out.transfer = residue_pullback(b.out.window, order, d.indices());
        b.run_families(*b.out.transfer);
        b.classify_transfer(*b.out.transfer);
        finite_structure_checks(b, fin, d, QuadVal(*b.out.exact_density));
        b.finish("integers acting by +1 on Z/" + std::to_string(order));
        return std::move(b.out);
    }

    /* the group acting on itself has no integer embedding: densities are
     * counting measures and traces are skipped */
    if (!options.families.empty())
        b.add_warning("sequence families skipped: the self action has no integer window");
    finite_structure_checks(b, fin, d, QuadVal(*b.out.exact_density));
    ordered_json structure;
    bool is_subgroup = true;
    try {
        Subgroup::validate(d);
    } catch (const std::exception&) {
        is_subgroup = false;
    }
    Subgroup stab = stabilizer(d);
    structure["difference_is_subgroup"] = is_subgroup;
    structure["stabilizer_size"] = stab.size();
    structure["subgroup_index"] =
        is_subgroup ? ordered_json(order / d.size()) : ordered_json(nullptr);
    b.finish(fin.group.to_string() + " acting on itself", structure);
    return std::move(b.out);
}

TransferOutcome run_rotation(const SystemSpec& spec, const RunOptions& options) {
    const RotationSpec& rot = *spec.rotation();
    ReportBuilder b(spec, options);
    b.out.window = options.window > 0 ? options.window : 20000;

    RotationSystem system = RotationSystem::make(rot.alpha, rot.set_a, rot.set_b);
    b.out.measure_a = rot.set_a.measure();
    b.out.measure_b = rot.set_b.measure();
    if (!system.small_measure_ok)
        b.add_warning("small-measure standing assumption violated: "
                      "measure_a + measure_b >= 1");

    b.out.transfer = transfer_set(system, b.out.window);
    b.run_families(*b.out.transfer);
    b.classify_transfer(*b.out.transfer);

    if (rot.alpha.is_rational()) {
        long long q = rot.alpha.denominator();
        if (b.out.window >= q) {
            long long residues = 0;
            for (long long g = 0; g < q; ++g)
                if (b.out.transfer->contains(g)) ++residues;
            b.out.exact_density = Rat(residues, q);
        } else {
            b.add_warning("window below the rotation period; exact density unavailable");
        }
    }

    CheckResult max_bound;
    max_bound.name = "density_lower_bound_max";
    max_bound.relation = "max(measure_a, measure_b) <= density";
    max_bound.lhs = b.out.measure_a < b.out.measure_b ? b.out.measure_b : b.out.measure_a;
    if (b.out.exact_density) {
        max_bound.rhs = QuadVal(*b.out.exact_density);
        max_bound.exact = true;
    } else if (const FamilyDensity* fd = b.proxy_family()) {
        max_bound.rhs = QuadVal(fd->estimate.value);
        max_bound.exact = false;
        max_bound.note = "finite-window liminf proxy along " + fd->label;
    }
    max_bound.holds = max_bound.lhs <= max_bound.rhs;
    b.add_check(max_bound);

    b.finish("rotation by " + rot.alpha.to_string());
    return std::move(b.out);
}

TransferOutcome run_mixture(const SystemSpec& spec, const RunOptions& options) {
    const PrimeMixtureSpec& mix = *spec.mixture();
    ReportBuilder b(spec, options);
    b.out.window = options.window > 0 ? options.window : 10000;

    Rat mu = mix.measure_a();
    b.out.measure_a = QuadVal(mu);
    b.out.measure_b = QuadVal(mu);
    standing_assumption_guard(b);

    b.out.transfer = mixture_transfer_window(mix, b.out.window);
    b.out.exact_density = mixture_exact_density(mix);
    b.run_families(*b.out.transfer);
    b.classify_transfer(*b.out.transfer);

    CheckResult below_delta;
    below_delta.name = "measure_below_delta";
    below_delta.relation = "measure_a < delta";
    below_delta.lhs = QuadVal(mu);
    below_delta.rhs = QuadVal(mix.delta);
    below_delta.holds = mu < mix.delta;
    b.add_check(below_delta);

    Rat bound = mix.density_bound();
    CheckResult exact_bound;
    exact_bound.name = "mixture_density_bound_exact";
    exact_bound.relation = "density <= (1+eta)/(1-eta) * measure_a";
    exact_bound.lhs = QuadVal(*b.out.exact_density);
    exact_bound.rhs = QuadVal(bound);
    exact_bound.holds = *b.out.exact_density <= bound;
    b.add_check(exact_bound);

    if (const FamilyDensity* fd = b.proxy_family()) {
        CheckResult proxy_bound;
        proxy_bound.name = "mixture_density_bound_proxy";
        proxy_bound.relation = "liminf proxy <= (1+eta)/(1-eta) * measure_a";
        proxy_bound.lhs = QuadVal(fd->estimate.value);
        proxy_bound.rhs = QuadVal(bound);
        proxy_bound.exact = false;
        proxy_bound.note = "finite-window liminf proxy along " + fd->label;
        proxy_bound.holds = fd->estimate.value <= bound;
        b.add_check(proxy_bound);
    }

    CheckResult coverage;
    coverage.name = "residue_coverage";
    coverage.relation = "transfer set meets every residue class mod m, m <= " +
                        std::to_string(options.coverage_modulus);
    coverage.has_sides = false;
    coverage.holds = true;
    for (long long m = 1; m <= options.coverage_modulus && coverage.holds; ++m) {
        std::vector<char> seen(static_cast<size_t>(m), 0);
        long long covered = 0;
        for (long long g : b.out.transfer->members()) {
            long long r = ((g % m) + m) % m;
            if (!seen[static_cast<size_t>(r)]) {
                seen[static_cast<size_t>(r)] = 1;
                if (++covered == m) break;
            }
        }
        if (covered < m) {
            coverage.holds = false;
            coverage.note = "uncovered class found mod " + std::to_string(m);
        }
    }
    b.add_check(coverage);

    b.finish("weighted mixture of prime shifts");
    return std::move(b.out);
}

} // namespace

bool TransferOutcome::all_checks_hold() const {
    for (const auto& c : checks)
        if (!c.holds) return false;
    return true;
}

TransferOutcome run_transfer(const SystemSpec& spec, const RunOptions& options) {
    if (spec.finite()) return run_finite(spec, options);
    if (spec.rotation()) return run_rotation(spec, options);
    return run_mixture(spec, options);
}

std::string render_report(const nlohmann::ordered_json& doc) { return doc.dump(2) + "\n"; }

} // namespace tset
