#include "tset/campaigns.hpp"
#include "tset/random_sets.hpp"
#include "tset/report.hpp"
#include "tset/rng.hpp"
#include "tset/system_spec.hpp"

#include "doctest.h"

#include <nlohmann/json.hpp>

#include <set>
#include <stdexcept>
#include <string>

using namespace tset;
using nlohmann::json;

namespace {

SystemSpec parse_text(const std::string& text) { return SystemSpec::parse(json::parse(text)); }

/* e.what() must start with the offending field path */
void check_spec_error(const std::string& text, const std::string& field) {
    try {
        parse_text(text);
        FAIL("expected SpecError for ", text);
    } catch (const SpecError& e) {
        CHECK(e.field() == field);
        CHECK(std::string(e.what()).rfind(field + ":", 0) == 0);
    }
}

const char* kMixtureText =
    R"({"kind": "prime_mixture", "primes": [31, 311, 1009], "eta": "1/5", "delta": "1/30"})";

} // namespace

TEST_CASE("finite_translation configs parse with defaults") {
    SystemSpec spec = parse_text(
        R"({"kind": "finite_translation", "factors": [5], "set_a": [0, 1]})");
    const FiniteTranslationSpec* fin = spec.finite();
    REQUIRE(fin != nullptr);
    CHECK(spec.kind() == "finite_translation");
    CHECK(fin->group.order() == 5);
    CHECK(fin->integer_action); /* "integers" is the default action */
    CHECK(fin->set_a.indices() == std::vector<long long>{0, 1});
    CHECK(fin->set_b == fin->set_a); /* set_b defaults to set_a */
    CHECK(spec.echo()["action"] == "integers");
}

TEST_CASE("finite_translation configs validate fields") {
    check_spec_error(R"({"factors": [5], "set_a": [0]})", "kind");
    check_spec_error(R"({"kind": "finite_translation", "set_a": [0]})", "factors");
    check_spec_error(R"({"kind": "finite_translation", "factors": [], "set_a": [0]})",
                     "factors");
    check_spec_error(R"({"kind": "finite_translation", "factors": [5], "set_a": []})",
                     "set_a");
    check_spec_error(R"({"kind": "finite_translation", "factors": [5], "set_a": [5]})",
                     "set_a[0]");
    check_spec_error(
        R"({"kind": "finite_translation", "factors": [5], "set_a": [0], "action": "weird"})",
        "action");
    /* the +1 action needs a cyclic group */
    check_spec_error(
        R"({"kind": "finite_translation", "factors": [2, 3], "set_a": [0], "action": "integers"})",
        "action");
    SystemSpec self = parse_text(
        R"({"kind": "finite_translation", "factors": [2, 3], "set_a": [0], "action": "self"})");
    CHECK_FALSE(self.finite()->integer_action);
}

TEST_CASE("rotation configs parse rational, quadratic, and offset endpoints") {
    SystemSpec spec = parse_text(R"json({
        "kind": "rotation", "alpha": "-1+1*sqrt(2)",
        "set_a": [["0", "3/10"]],
        "set_b": [[{"r": "1/2"}, {"r": "1/5", "k": 1}]]
    })json");
    const RotationSpec* rot = spec.rotation();
    REQUIRE(rot != nullptr);
    CHECK_FALSE(rot->alpha.is_rational());
    CHECK(rot->set_a.measure() == QuadVal(Rat(3, 10)));
    /* upper endpoint 1/5 + alpha = 1/5 + sqrt(2) - 1 */
    QuadVal hi = QuadVal(Rat(1, 5)) + QuadVal(Rat(-1), Rat(1), 2);
    CHECK(rot->set_b.pieces().front().second == hi);

    check_spec_error(R"({"kind": "rotation", "alpha": "x", "set_a": [["0","1/2"]]})", "alpha");
    check_spec_error(R"({"kind": "rotation", "alpha": "1/3", "set_a": []})", "set_a");
    check_spec_error(R"({"kind": "rotation", "alpha": "1/3", "set_a": [["1/2","1/2"]]})",
                     "set_a[0]");
    check_spec_error(R"({"kind": "rotation", "alpha": "1/3", "set_a": [[{"x": 1}, "1/2"]]})",
                     "set_a[0].lo");
}

TEST_CASE("prime mixture configs enforce the smallness conditions") {
    SystemSpec spec = parse_text(kMixtureText);
    const PrimeMixtureSpec* mix = spec.mixture();
    REQUIRE(mix != nullptr);
    CHECK(mix->primes == std::vector<long long>{31, 311, 1009});

    /* measure = (1 - eta)/p_1 + eta * (1/(2 p_2) + 1/(4 p_3)) */
    Rat expected = Rat(4, 5) / 31 + Rat(1, 5) * (Rat(1, 622) + Rat(1, 4036));
    CHECK(mix->measure_a() == expected);
    CHECK(mix->density_bound() == Rat(3, 2) * expected);

    check_spec_error(R"({"kind": "prime_mixture", "primes": [], "eta": "1/5", "delta": "1/30"})",
                     "primes");
    check_spec_error(
        R"({"kind": "prime_mixture", "primes": [31, 312], "eta": "1/5", "delta": "1/30"})",
        "primes[1]");
    check_spec_error(
        R"({"kind": "prime_mixture", "primes": [31, 311], "eta": "1/5", "delta": "1/40"})",
        "primes");
    /* tail too heavy for eta/p_1: 1/3 > (1/5)/2 */
    check_spec_error(
        R"({"kind": "prime_mixture", "primes": [2, 3], "eta": "1/5", "delta": "9/10"})",
        "primes");
    check_spec_error(
        R"({"kind": "prime_mixture", "primes": [31], "eta": "2", "delta": "1/30"})", "eta");
}

TEST_CASE("mixture transfer density matches a brute union count") {
    SystemSpec spec = parse_text(
        R"({"kind": "prime_mixture", "primes": [11, 101, 211], "eta": "1/5", "delta": "1/10"})");
    const PrimeMixtureSpec& mix = *spec.mixture();

    long long lcm = 11 * 101 * 211;
    long long members = 0;
    for (long long g = 0; g < lcm; ++g)
        if (g % 11 == 0 || g % 101 == 0 || g % 211 == 0) ++members;
    CHECK(mixture_exact_density(mix) == Rat(members, lcm));

    IntegerWindowSet window_set = mixture_transfer_window(mix, 500);
    for (long long g = -500; g <= 500; ++g) {
        bool expect = g % 11 == 0 || g % 101 == 0 || g % 211 == 0;
        CHECK(window_set.contains(g) == expect);
    }
}

TEST_CASE("finite transfer report: density, verdict, checks") {
    SystemSpec spec = parse_text(
        R"({"kind": "finite_translation", "factors": [5], "set_a": [0, 1]})");
    RunOptions options;
    TransferOutcome out = run_transfer(spec, options);

    REQUIRE(out.exact_density.has_value());
    CHECK(*out.exact_density == Rat(3, 5));
    REQUIRE(out.classification.has_value());
    CHECK(out.classification->verdict == StructureClass::periodic);
    CHECK(out.classification->period == 5);
    CHECK(out.classification->residues == std::vector<long long>{0, 1, 4});
    CHECK(out.all_checks_hold());
    CHECK(out.warnings.empty());
    CHECK(out.report["transfer"]["size"].get<long long>() > 0);

    /* {0,1} is not a subgroup story: hypothesis 2|D| < 3|A| fails here (6 < 6
     * is false), so the small-density check is vacuous */
    bool found = false;
    for (const auto& check : out.checks)
        if (check.name == "subgroup_under_small_density") {
            found = true;
            CHECK(check.holds);
            CHECK(check.note == "hypothesis not met; conclusion vacuous");
        }
    CHECK(found);
}

TEST_CASE("finite transfer report under the self action skips families") {
    SystemSpec spec = parse_text(
        R"({"kind": "finite_translation", "factors": [4, 2], "set_a": [0, 4], "action": "self"})");
    TransferOutcome out = run_transfer(spec, RunOptions{});
    CHECK(out.families.empty());
    REQUIRE(out.warnings.size() == 1);
    CHECK(out.warnings[0] ==
          "sequence families skipped: the self action has no integer window");
    /* {0,1} in Z/4 x Z/2 is the subgroup generated by the second factor */
    CHECK(out.report["structure"]["difference_is_subgroup"] == true);
    CHECK(out.report["structure"]["subgroup_index"] == 4);
    CHECK(out.exact_density.has_value());
}

TEST_CASE("rotation report computes the exact density for rational angles") {
    SystemSpec spec = parse_text(
        R"({"kind": "rotation", "alpha": "2/5", "set_a": [["0", "2/5"]], "set_b": [["1/2", "9/10"]]})");
    TransferOutcome out = run_transfer(spec, RunOptions{});
    REQUIRE(out.exact_density.has_value());
    CHECK(*out.exact_density == Rat(4, 5));
    REQUIRE(out.classification.has_value());
    CHECK(out.classification->verdict == StructureClass::periodic);
    CHECK(out.all_checks_hold());
}

TEST_CASE("standing assumption violations surface as a warning") {
    SystemSpec spec = parse_text(
        R"({"kind": "rotation", "alpha": "1/3", "set_a": [["0", "2/3"]], "set_b": [["0", "2/3"]]})");
    TransferOutcome out = run_transfer(spec, RunOptions{});
    REQUIRE(!out.warnings.empty());
    CHECK(out.warnings[0] ==
          "small-measure standing assumption violated: measure_a + measure_b >= 1");
}

TEST_CASE("reports and trace files are byte-identical across runs") {
    SystemSpec spec = parse_text(
        R"json({"kind": "rotation", "alpha": "-1+1*sqrt(2)", "set_a": [["0", "3/10"]], "set_b": [["1/2", "4/5"]]})json");
    RunOptions options;
    options.window = 20000;
    options.families = {"initial_segments", "squares", "sparse_sqrt2"};
    options.seed = 99;
    TransferOutcome first = run_transfer(spec, options);
    TransferOutcome second = run_transfer(spec, options);
    CHECK(render_report(first.report) == render_report(second.report));
    REQUIRE(first.csv_files.size() == 3);
    REQUIRE(second.csv_files.size() == 3);
    for (size_t i = 0; i < first.csv_files.size(); ++i) {
        CHECK(first.csv_files[i].first == second.csv_files[i].first);
        CHECK(first.csv_files[i].second == second.csv_files[i].second);
    }
}

TEST_CASE("campaign smokes: zero violations and seed determinism") {
    CampaignResult max_bound = verify_max_bound(7, 50, 64);
    CHECK(max_bound.passed);
    CHECK(max_bound.hypothesis_hits == 50);

    CampaignResult kneser = verify_kneser(7, 100, 96);
    CHECK(kneser.passed);
    CHECK(kneser.hypothesis_hits > 0);

    CampaignResult thm1 = verify_thm1(7, 100, 96, 10);
    CHECK(thm1.passed);
    CHECK(thm1.hypothesis_hits >= 10);

    CampaignResult thm2 = verify_thm2(7, 100, 96);
    CHECK(thm2.passed);
    CHECK(thm2.details["strict_hits"].get<long long>() > 0);

    CampaignResult overshoot = verify_overshoot(7, 100, 96);
    CHECK(overshoot.passed);
    CHECK(overshoot.equality_cases > 0);

    CampaignResult connected = verify_connectedness(7, 50);
    CHECK(connected.passed);

    CampaignResult ret = verify_return_identity_campaign(7, 20, 3);
    CHECK(ret.passed);
    CHECK(ret.hypothesis_hits == 20);

    /* same seeds, same bytes */
    CHECK(verify_kneser(7, 100, 96).to_json().dump() == kneser.to_json().dump());
    CHECK(verify_thm1(7, 100, 96, 10).to_json().dump() == thm1.to_json().dump());
    CHECK(verify_return_identity_campaign(7, 20, 3).to_json().dump() == ret.to_json().dump());
}

TEST_CASE("thm1 campaign reports missing hypothesis hits") {
    CampaignResult starved = verify_thm1(7, 1, 8, 5);
    CHECK_FALSE(starved.passed);
    CHECK(starved.violations == 0);
}

TEST_CASE("rational coding comparison is exact on grid-aligned arcs") {
    RotationSystem system = RotationSystem::make(
        Angle::rational(Rat(2, 5)),
        IntervalUnion::from_pieces({{QuadVal(0), QuadVal(Rat(2, 5))}}),
        IntervalUnion::from_pieces({{QuadVal(Rat(1, 2)), QuadVal(Rat(9, 10))}}));
    Thm3Outcome out = check_thm3_system(system, 400);
    CHECK(out.passed);
    CHECK(out.residue_classes <= 2);
}

TEST_CASE("quadratic coding comparison: empty symmetric difference off the grid") {
    RotationSystem system = RotationSystem::make(
        Angle::parse("-1+1*sqrt(2)"),
        IntervalUnion::from_pieces({{QuadVal(0), QuadVal(Rat(3, 10))}}),
        IntervalUnion::from_pieces({{QuadVal(Rat(1, 2)), QuadVal(Rat(4, 5))}}));
    Thm3Outcome out = check_thm3_system(system, 5000);
    CHECK(out.exact_equality);
    CHECK(out.sym_diff_size == 0);
    CHECK(out.passed);
}

TEST_CASE("quadratic coding comparison: endpoint hits stay within two classes") {
    /* B's upper endpoint is 3*alpha mod 1, so the orbit lands exactly on the
     * closure endpoint d = 3*alpha - 0 at g = 3 */
    QuadVal alpha(Rat(-1), Rat(1), 2);
    QuadVal three_alpha = alpha.scaled(Rat(3)).mod1();
    RotationSystem system = RotationSystem::make(
        Angle::quadratic(alpha),
        IntervalUnion::from_pieces({{QuadVal(0), alpha}}),
        IntervalUnion::from_pieces({{QuadVal(0), three_alpha}}));
    Thm3Outcome out = check_thm3_system(system, 5000);
    CHECK(out.endpoints_only);
    CHECK(out.residue_classes <= 2);
    CHECK(out.passed);

    CHECK_THROWS_WITH_AS(
        check_thm3_system(RotationSystem::make(
                              Angle::quadratic(alpha),
                              IntervalUnion::from_pieces({{QuadVal(0), QuadVal(Rat(3, 5))}}),
                              IntervalUnion::from_pieces({{QuadVal(0), QuadVal(Rat(3, 5))}})),
                          100),
        "standing assumption violated", std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        check_thm3_system(RotationSystem::make(
                              Angle::quadratic(alpha),
                              IntervalUnion::from_pieces({{QuadVal(0), QuadVal(Rat(1, 10))},
                                                          {QuadVal(Rat(1, 2)), QuadVal(Rat(3, 5))}}),
                              IntervalUnion::from_pieces({{QuadVal(0), QuadVal(Rat(1, 10))}})),
                          100),
        "coding comparison needs single-interval sets", std::invalid_argument);
}

TEST_CASE("wrapped arcs are accepted by the coding comparison") {
    /* A = [9/10, 1) u [0, 1/10) is one circular arc through 0 */
    RotationSystem system = RotationSystem::make(
        Angle::rational(Rat(1, 7)),
        IntervalUnion::from_pieces({{QuadVal(Rat(9, 10)), QuadVal(Rat(11, 10))}}),
        IntervalUnion::from_pieces({{QuadVal(Rat(2, 5)), QuadVal(Rat(3, 5))}}));
    Thm3Outcome out = check_thm3_system(system, 700);
    CHECK(out.passed);
}

TEST_CASE("doubling probe over subgroup pullbacks is exact") {
    SystemSpec spec = parse_text(
        R"({"kind": "finite_translation", "factors": [64], "set_a": [0]})");
    DoublingProbeResult probe = doubling_probe(spec, Rat(1, 10), "subgroup_pullbacks", 0);
    CHECK(probe.exact);
    CHECK(probe.constant == Rat(1));
    /* |H| < 64/10: sizes 1, 2, 4 */
    CHECK(probe.candidates.size() == 3);
    for (const auto& cand : probe.candidates) CHECK(cand.ratio == Rat(1));

    CHECK_THROWS_WITH_AS(doubling_probe(spec, Rat(1, 100), "subgroup_pullbacks", 0),
                         "no candidate below delta", std::invalid_argument);
    CHECK_THROWS_WITH_AS(doubling_probe(spec, Rat(1, 10), "intervals", 0),
                         "intervals needs a rotation system", std::invalid_argument);
    CHECK_THROWS_WITH_AS(doubling_probe(spec, Rat(1, 10), "cubes", 0),
                         "candidate family must be subgroup_pullbacks or intervals",
                         std::invalid_argument);
}

TEST_CASE("doubling probe over intervals tracks the rotation constant") {
    SystemSpec spec = parse_text(
        R"json({"kind": "rotation", "alpha": "-1+1*sqrt(2)", "set_a": [["0", "1/10"]]})json");
    DoublingProbeResult probe = doubling_probe(spec, Rat(1, 16), "intervals", 40000);
    CHECK_FALSE(probe.exact);
    CHECK(probe.candidates.size() == 3);
    CHECK(probe.candidates[0].measure == Rat(1, 32));
    double constant = rat_to_double(probe.constant);
    CHECK(constant > 1.8);
    CHECK(constant < 2.2);
}

TEST_CASE("random generators respect their constraints") {
    SplitMix64 rng(123);
    for (int i = 0; i < 50; ++i) {
        FiniteAbelianGroup g = random_group(rng, 200);
        CHECK(g.order() >= 2);
        CHECK(g.order() <= 200);
        GroupSubset u = uniform_subset(rng, g, 1, 4);
        CHECK(!u.empty());
        GroupSubset dent = dented_coset_subset(rng, g);
        CHECK(!dent.empty());
        auto [a, b] = coset_pair(rng, g);
        CHECK(!a.empty());
        CHECK(!b.empty());
    }
}
