/* transferset: reports and verification campaigns for transfer-time sets.
 *
 * exit codes: 0 all checks hold, 1 a check or campaign failed, 2 bad usage
 * or configuration. */

#include "tset/campaigns.hpp"
#include "tset/finite_group.hpp"
#include "tset/report.hpp"
#include "tset/system_spec.hpp"

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;

void emit(const ordered_json& doc) { std::cout << tset::render_report(doc); }

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int write_outputs(const tset::TransferOutcome& outcome, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "cannot create output directory " << out_dir << "\n";
        return 2;
    }
    {
        std::ofstream report(fs::path(out_dir) / "report.json", std::ios::binary);
        report << tset::render_report(outcome.report);
        if (!report) {
            std::cerr << "cannot write report.json under " << out_dir << "\n";
            return 2;
        }
    }
    for (const auto& [name, contents] : outcome.csv_files) {
        std::ofstream csv(fs::path(out_dir) / name, std::ios::binary);
        csv << contents;
        if (!csv) {
            std::cerr << "cannot write " << name << " under " << out_dir << "\n";
            return 2;
        }
    }
    return 0;
}

int cmd_transfer(const std::string& config, long long window, std::uint64_t seed,
                 const std::string& families, const std::string& out_dir,
                 long long sample_cap) {
    tset::SystemSpec spec = tset::SystemSpec::load(config);
    tset::RunOptions options;
    options.window = window;
    options.seed = seed;
    options.sample_cap = sample_cap;
    if (!families.empty()) options.families = split_csv(families);
    tset::TransferOutcome outcome = tset::run_transfer(spec, options);
    emit(outcome.report);
    if (!out_dir.empty())
        if (int rc = write_outputs(outcome, out_dir); rc != 0) return rc;
    return outcome.all_checks_hold() ? 0 : 1;
}

int cmd_kneser(const std::string& config) {
    tset::SystemSpec spec = tset::SystemSpec::load(config);
    const tset::FiniteTranslationSpec* fin = spec.finite();
    if (!fin)
        throw tset::SpecError("kind", "stabilizer decomposition needs a finite_translation system");
    const tset::GroupSubset& a = fin->set_a;
    const tset::GroupSubset& b = fin->set_b;
    tset::GroupSubset d = tset::difference_set(a, b);

    ordered_json doc;
    doc["schema_version"] = 1;
    doc["generator"] = "transferset";
    doc["kind"] = "kneser_report";
    doc["system"] = spec.echo();
    ordered_json sizes;
    sizes["group"] = a.group().order();
    sizes["a"] = a.size();
    sizes["b"] = b.size();
    sizes["difference"] = d.size();
    doc["sizes"] = sizes;
    bool hypothesis = d.size() < a.size() + b.size();
    doc["hypothesis"] =
        ordered_json{{"relation", "|D| < |A| + |B|"}, {"holds", hypothesis}};

    auto reduction = tset::kneser_decompose(a, b);
    if (reduction) {
        ordered_json dec;
        dec["stabilizer_size"] = reduction->stabilizer.size();
        dec["stabilizer_index"] = reduction->stabilizer.index();
        dec["stabilizer_elements"] = reduction->stabilizer.elements().indices();
        dec["quotient_order"] = reduction->projection.quotient.order();
        ordered_json images;
        images["a"] = reduction->image_a.size();
        images["b"] = reduction->image_b.size();
        images["difference"] = reduction->image_d.size();
        dec["image_sizes"] = images;
        dec["identity"] = "|D| = |A+H| + |B+H| - |H|";
        dec["identity_holds"] = reduction->identity_holds;
        doc["decomposition"] = dec;
    } else {
        doc["decomposition"] = nullptr;
        doc["note"] = "hypothesis not met; decomposition skipped";
    }
    emit(doc);
    return (reduction && !reduction->identity_holds) ? 1 : 0;
}

int cmd_classify(const std::string& membership, long long window, long long d_max,
                 long long max_len) {
    std::ifstream in(membership);
    if (!in) throw tset::SpecError("membership", "cannot open " + membership);
    std::vector<long long> members;
    long long value;
    while (in >> value) members.push_back(value);
    if (!in.eof())
        throw tset::SpecError("membership", "expected one integer per line");
    if (members.empty()) throw tset::SpecError("membership", "no members given");

    long long w = window;
    if (w <= 0)
        for (long long m : members) w = std::max(w, std::llabs(m));
    if (w <= 0) w = 1;
    tset::IntegerWindowSet set = tset::IntegerWindowSet::from_members(w, members);
    tset::Classification c = tset::classify(set, d_max, max_len);

    ordered_json doc;
    doc["schema_version"] = 1;
    doc["generator"] = "transferset";
    doc["kind"] = "classification_report";
    doc["window"] = w;
    doc["size"] = set.size();
    doc["verdict"] = tset::to_string(c.verdict);
    doc["period"] = c.period;
    doc["residues"] = c.residues;
    doc["complexity_cap"] = c.complexity_cap;
    doc["balance_deficit"] = c.balance_deficit;
    doc["confidence"] = c.confidence;
    emit(doc);
    return 0;
}

std::vector<tset::RotationSystem> load_rotation_systems(const std::string& config) {
    std::ifstream in(config);
    if (!in) throw tset::SpecError("config", "cannot open " + config);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw tset::SpecError("config", std::string("parse failure: ") + e.what());
    }
    std::vector<nlohmann::json> entries;
    if (doc.is_object() && doc.contains("systems")) {
        if (!doc["systems"].is_array() || doc["systems"].empty())
            throw tset::SpecError("systems", "expected a nonempty array of system configs");
        for (const auto& entry : doc["systems"]) entries.push_back(entry);
    } else {
        entries.push_back(doc);
    }
    std::vector<tset::RotationSystem> systems;
    for (const auto& entry : entries) {
        tset::SystemSpec spec = tset::SystemSpec::parse(entry);
        const tset::RotationSpec* rot = spec.rotation();
        if (!rot) throw tset::SpecError("kind", "thm3 verification needs rotation systems");
        systems.push_back(tset::RotationSystem::make(rot->alpha, rot->set_a, rot->set_b));
    }
    return systems;
}

int cmd_verify(const std::string& campaign, std::uint64_t seed, long long trials,
               long long max_order, const std::string& config, long long window,
               long long points) {
    tset::CampaignResult result;
    if (campaign == "max") {
        result = tset::verify_max_bound(seed, trials, max_order);
    } else if (campaign == "kneser") {
        result = tset::verify_kneser(seed, trials, max_order);
    } else if (campaign == "thm1") {
        result = tset::verify_thm1(seed, trials, max_order);
    } else if (campaign == "thm2") {
        result = tset::verify_thm2(seed, trials, max_order);
    } else if (campaign == "overshoot") {
        result = tset::verify_overshoot(seed, trials, max_order);
    } else if (campaign == "connected") {
        result = tset::verify_connectedness(seed, trials);
    } else if (campaign == "return") {
        result = tset::verify_return_identity_campaign(seed, trials, points);
    } else { /* thm3 */
        if (config.empty())
            throw tset::SpecError("config", "thm3 verification needs --config");
        auto systems = load_rotation_systems(config);
        result = tset::verify_thm3(systems, window > 0 ? window : 20000);
    }
    emit(result.to_json());
    return result.passed ? 0 : 1;
}

int cmd_probe(const std::string& config, const std::string& delta_text,
              const std::string& family, long long window) {
    tset::SystemSpec spec = tset::SystemSpec::load(config);
    tset::Rat delta;
    try {
        delta = tset::parse_rational(delta_text);
    } catch (const std::exception& e) {
        throw tset::SpecError("delta", e.what());
    }
    if (!(delta > 0))
        throw tset::SpecError("delta", "must be positive");
    tset::DoublingProbeResult result = tset::doubling_probe(spec, delta, family, window);
    emit(result.to_json());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transfer-time sets of measure-preserving systems"};
    app.require_subcommand(1);

    std::string config, families, out_dir, membership, campaign, delta_text;
    std::string family = "subgroup_pullbacks";
    long long window = 0, sample_cap = 128, d_max = 500, max_len = 200;
    long long trials = 1000, max_order = 200, points = 10;
    std::uint64_t seed = 0;

    CLI::App* transfer = app.add_subcommand(
        "transfer", "compute the transfer set of a configured system and report on it");
    transfer->add_option("--config", config, "system config (JSON)")->required();
    transfer->add_option("--window", window, "integer window half-width (0 = per-kind default)");
    transfer->add_option("--seed", seed, "report seed (sampling and trace layout)");
    transfer->add_option("--families", families,
                         "comma-separated sampling families "
                         "(initial_segments, squares, sparse_sqrt2)");
    transfer->add_option("--out", out_dir, "directory for report.json and trace CSVs");
    transfer->add_option("--sample-cap", sample_cap, "max transfer elements echoed in the report");

    CLI::App* kneser = app.add_subcommand(
        "kneser", "stabilizer decomposition of one finite difference set");
    kneser->add_option("--config", config, "finite_translation config (JSON)")->required();

    CLI::App* classify = app.add_subcommand(
        "classify", "structure verdict for an explicit membership list");
    classify->add_option("--membership", membership, "file with one integer per line")
        ->required();
    classify->add_option("--window", window, "window half-width (default: max |member|)");
    classify->add_option("--dmax", d_max, "largest candidate period");
    classify->add_option("--maxlen", max_len, "largest factor length for the complexity scan");

    CLI::App* verify = app.add_subcommand("verify", "seeded verification campaigns");
    verify->add_option("campaign", campaign, "which campaign to run")
        ->required()
        ->check(CLI::IsMember(
            {"thm1", "thm2", "thm3", "max", "overshoot", "kneser", "connected", "return"}));
    verify->add_option("--trials", trials, "number of seeded trials (or systems)");
    verify->add_option("--seed", seed, "master seed");
    verify->add_option("--max-order", max_order, "largest group order drawn");
    verify->add_option("--config", config, "rotation config for thm3 (single system or {\"systems\": [...]})");
    verify->add_option("--window", window, "integer window for thm3");
    verify->add_option("--points", points, "base points per system for the return campaign");

    CLI::App* probe = app.add_subcommand(
        "doubling-probe", "minimum density(R)/measure over small candidate sets");
    probe->add_option("--config", config, "system config (JSON)")->required();
    probe->add_option("--delta", delta_text, "measure threshold (rational)")->required();
    probe->add_option("--family", family, "subgroup_pullbacks | intervals");
    probe->add_option("--window", window, "window for the rotation density proxy");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (transfer->parsed())
            return cmd_transfer(config, window, seed, families, out_dir, sample_cap);
        if (kneser->parsed()) return cmd_kneser(config);
        if (classify->parsed()) return cmd_classify(membership, window, d_max, max_len);
        if (verify->parsed())
            return cmd_verify(campaign, seed, trials, max_order, config, window, points);
        if (probe->parsed()) return cmd_probe(config, delta_text, family, window);
    } catch (const tset::SpecError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
