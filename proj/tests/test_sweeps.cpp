// Sweep layer: the preset catalog, the generic grid runner, worker
// determinism, and the CSV/manifest serialization.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "wgmm/errors.hpp"
#include "wgmm/output.hpp"
#include "wgmm/partitions.hpp"
#include "wgmm/physics.hpp"
#include "wgmm/sweeps.hpp"
#include "wgmm/units.hpp"

using namespace wgmm;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

// the two-node working point: only node 1 is magnomechanically driven
Scenario two_node(double g_mhz = 2.0, double phi = pi) {
    Scenario s;
    s.n_nodes = 2;
    s.delta.assign(2, mhz_to_rad_us(-10.0));
    s.g = {mhz_to_rad_us(g_mhz), 0.0};
    s.kappa.assign(2, mhz_to_rad_us(3.0));
    s.gamma.assign(2, mhz_to_rad_us(1.0));
    s.omega_b = mhz_to_rad_us(10.0);
    s.kappa_b = hz_to_rad_us(100.0);
    s.phi = {phi};
    s.n_bar_m = thermal_occupation(9.99e9, 0.010);
    s.n_bar_b = thermal_occupation(10.0e6, 0.010);
    return s;
}

// small custom preset over the two-node family: g axis, fixed tau
Preset small_g_preset(std::vector<double> g_values, double tau = 3.0) {
    Preset p;
    p.name = "test-g-scan";
    p.description = "two-node g scan used by the unit tests";
    p.axes = {{"g_over_2pi_mhz", std::move(g_values)}};
    p.eval.mode = EvalMode::fixed_tau;
    p.eval.tau = tau;
    p.scenario_at = [](const std::vector<double>& ax) { return two_node(ax[0], pi); };
    p.partitions_at = [](const std::vector<double>&) {
        return std::vector<Bipartition>{parse_partition("m2|b1", 2)};
    };
    return p;
}

} // namespace

TEST_CASE("linspace endpoints and spacing") {
    const auto v = linspace(-2.0, 2.0, 5);
    REQUIRE(v.size() == 5);
    CHECK(v.front() == -2.0);
    CHECK(v.back() == 2.0);
    CHECK_THAT(v[1], WithinAbs(-1.0, 1e-15));
    CHECK(linspace(3.0, 9.0, 1) == std::vector<double>{3.0});
}

TEST_CASE("the preset catalog is complete and well-formed") {
    const std::vector<std::string> expected = {
        "fig2a", "fig2b", "fig2c", "fig2d", "fig2e", "fig3c", "fig3d", "fig3e", "fig3f",
        "fig4a", "fig4b", "fig4c", "fig4d", "fig5a", "fig5b", "fig5c", "fig6a", "fig6b",
        "fig6c"};
    const auto catalog = preset_catalog();
    REQUIRE(catalog.size() == expected.size());
    std::set<std::string> names;
    for (const auto& p : catalog) {
        names.insert(p.name);
        CHECK_FALSE(p.description.empty());
        REQUIRE(p.scenario_at);
        REQUIRE(p.partitions_at);
        // every preset must produce a valid scenario and partitions at its
        // first grid point
        std::vector<double> first;
        for (const auto& ax : p.axes) {
            REQUIRE_FALSE(ax.values.empty());
            first.push_back(ax.values.front());
        }
        const Scenario s = p.scenario_at(first);
        REQUIRE_NOTHROW(s.validate());
        const auto parts = p.partitions_at(first);
        REQUIRE_FALSE(parts.empty());
        for (const auto& bp : parts) REQUIRE_NOTHROW(validate_partition(bp, s.n_nodes));
        if (p.eval.mode == EvalMode::trajectory) REQUIRE(p.eval.times.size() > 1);
    }
    for (const auto& n : expected) {
        INFO("missing preset " << n);
        CHECK(names.count(n) == 1);
    }

    CHECK_NOTHROW(find_preset("fig4c"));
    REQUIRE_THROWS_MATCHES(find_preset("fig9z"), config_error,
                           Catch::Matchers::MessageMatches(ContainsSubstring("fig2a")));
}

TEST_CASE("row layout is grid-point major with the last axis fastest") {
    Preset p = small_g_preset({1.0, 2.0});
    p.axes.push_back({"phi_adjacent_rad", {pi / 2, 3 * pi / 4, pi}});
    p.scenario_at = [](const std::vector<double>& ax) { return two_node(ax[0], ax[1]); };
    p.eval.tau = 0.5; // keep it quick

    const SweepResult r = run_preset(p, 1);
    REQUIRE(r.errors.empty());
    REQUIRE(r.rows.size() == 6); // 2 x 3 grid, one partition
    CHECK(r.axis_names == std::vector<std::string>{"g_over_2pi_mhz", "phi_adjacent_rad"});
    CHECK_FALSE(r.has_time);

    std::vector<std::vector<double>> expect = {
        {1.0, pi / 2}, {1.0, 3 * pi / 4}, {1.0, pi},
        {2.0, pi / 2}, {2.0, 3 * pi / 4}, {2.0, pi}};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(r.rows[i].axis_values == expect[i]);
        CHECK(r.rows[i].partition == "m2|b1");
        CHECK(std::isfinite(r.rows[i].ln));
    }
}

TEST_CASE("worker count does not change the emitted bytes") {
    Preset p = small_g_preset({0.5, 1.0, 1.5, 2.0});
    p.eval.tau = 0.5;
    const SweepResult serial = run_preset(p, 1);
    const SweepResult parallel = run_preset(p, 4);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    CHECK(serial.fingerprint == parallel.fingerprint);
    CHECK(to_csv(serial) == to_csv(parallel));
    CHECK(serial.workers == 1);
    CHECK(parallel.workers == 4);
}

TEST_CASE("single-point preset equals the direct pipeline") {
    Preset p = small_g_preset({2.0});
    p.eval.tau = 1.0;
    const SweepResult r = run_preset(p, 1);
    REQUIRE(r.rows.size() == 1);
    // frozen value of the headline working point at t = 1 us
    CHECK_THAT(r.rows[0].ln, WithinAbs(0.228942191, 2e-7));
    CHECK_FALSE(r.rows[0].stable);
    CHECK(r.rows[0].physical);
    CHECK(r.max_digits > 16);
}

TEST_CASE("a preset without axes runs exactly one point") {
    Preset p = small_g_preset({});
    p.axes.clear();
    p.eval.tau = 0.5;
    p.scenario_at = [](const std::vector<double>& ax) {
        REQUIRE(ax.empty());
        return two_node(2.0, pi);
    };
    const SweepResult r = run_preset(p, 3);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].axis_values.empty());
    CHECK(std::isfinite(r.rows[0].ln));
}

TEST_CASE("trajectory presets add the time column") {
    Preset p = small_g_preset({2.0});
    p.eval.mode = EvalMode::trajectory;
    p.eval.times = {0.0, 0.25, 0.5};
    const SweepResult r = run_preset(p, 1);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.has_time);
    CHECK(r.rows[0].t == 0.0);
    CHECK(r.rows[2].t == 0.5);
    CHECK(r.rows[0].ln == 0.0); // the initial product state is unentangled
    CHECK(r.rows[2].ln > 0.0);
}

TEST_CASE("entanglement grows with the traveling phase toward phi = pi") {
    // reduced fig2b check: at g/2pi = 2 MHz and tau = 3 us the ordering
    // E(pi) > E(3pi/4) > E(pi/2) holds
    Preset p = small_g_preset({2.0});
    p.axes.push_back({"phi_adjacent_rad", {pi / 2, 3 * pi / 4, pi}});
    p.scenario_at = [](const std::vector<double>& ax) { return two_node(ax[0], ax[1]); };
    const SweepResult r = run_preset(p, 2);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.rows[2].ln > r.rows[1].ln);
    CHECK(r.rows[1].ln > r.rows[0].ln);
    // frozen endpoints
    CHECK_THAT(r.rows[0].ln, WithinAbs(0.076773993, 2e-6));
    CHECK_THAT(r.rows[1].ln, WithinAbs(0.124730295, 2e-6));
    CHECK_THAT(r.rows[2].ln, WithinAbs(0.228942182, 2e-6));
}

TEST_CASE("chain growth redistributes the one-phonon entanglement") {
    // fig5c at a fixed N: dropping one magnon from the collective side of
    // b1|all-magnons gives the same scenario as the (N-1)-chain up to the
    // spectator structure; the catalog values themselves are frozen here
    const Preset p = find_preset("fig3e");
    REQUIRE(p.axes.size() == 3); // N, g, phi

    Preset probe = p;
    probe.axes[0].values = {3.0};
    probe.axes[1].values = {2.0};
    probe.axes[2].values = {pi};
    const SweepResult r = run_preset(probe, 1);
    REQUIRE(r.errors.empty());
    REQUIRE(r.rows.size() == 1);
    CHECK_THAT(r.rows[0].ln, WithinAbs(0.215944174, 2e-6));
}

TEST_CASE("grid sweep applies parameter paths in config units") {
    GridSpec spec;
    spec.base = two_node(2.0, pi);
    spec.partitions = {parse_partition("m2|b1", 2)};
    spec.eval.mode = EvalMode::fixed_tau;
    spec.eval.tau = 0.5;

    SECTION("broadcast path") {
        // a bare name sets the value on every node; driving both nodes
        // magnomechanically would clamp m2|b1 to zero, so vary kappa instead
        spec.axes = {{"kappa_over_2pi_mhz", {3.0, 4.0}}};
        const SweepResult r = grid_sweep(spec, 1);
        REQUIRE(r.errors.empty());
        REQUIRE(r.rows.size() == 2);
        CHECK(r.rows[0].ln > 0.0);
        CHECK(r.rows[0].ln != r.rows[1].ln);
    }

    SECTION("indexed path touches one node") {
        spec.axes = {{"delta_over_2pi_mhz[2]", {-10.0, -12.0}}};
        const SweepResult r = grid_sweep(spec, 1);
        REQUIRE(r.errors.empty());
        REQUIRE(r.rows.size() == 2);
        CHECK(r.rows[0].ln != r.rows[1].ln);
    }

    SECTION("temperature recomputes both occupations") {
        spec.axes = {{"temperature_mk", {10.0, 200.0}}};
        const SweepResult r = grid_sweep(spec, 1);
        REQUIRE(r.errors.empty());
        REQUIRE(r.rows.size() == 2);
        CHECK(r.rows[0].ln > r.rows[1].ln); // hotter bath, less entanglement
    }

    SECTION("phase path is reduced mod 2pi") {
        spec.axes = {{"phi_adjacent_rad", {pi, pi + two_pi}}};
        const SweepResult r = grid_sweep(spec, 1);
        REQUIRE(r.errors.empty());
        CHECK_THAT(r.rows[0].ln, WithinAbs(r.rows[1].ln, 1e-9));
    }

    SECTION("unknown path is rejected up front") {
        spec.axes = {{"coupling_mhz", {1.0}}};
        REQUIRE_THROWS_MATCHES(grid_sweep(spec, 1), config_error,
                               Catch::Matchers::MessageMatches(ContainsSubstring("coupling_mhz")));
    }

    SECTION("out-of-range index is rejected") {
        spec.axes = {{"g_over_2pi_mhz[3]", {1.0}}};
        CHECK_THROWS_AS(grid_sweep(spec, 1), config_error);
    }

    SECTION("empty axis is rejected") {
        spec.axes = {{"g_over_2pi_mhz", {}}};
        CHECK_THROWS_AS(grid_sweep(spec, 1), config_error);
    }
}

TEST_CASE("algebraic-steady mode flags unstable points instead of failing") {
    GridSpec spec;
    spec.base = two_node(1.0, pi);
    spec.partitions = {parse_partition("m2|b1", 2)};
    spec.eval.mode = EvalMode::algebraic_steady;
    // kappa_b axis straddles the stability boundary: 100 Hz is unstable,
    // 1 MHz is stable
    spec.axes = {{"kappa_b_hz", {100.0, 1.0e6}}};

    const SweepResult r = grid_sweep(spec, 1);
    REQUIRE(r.rows.size() == 2);
    CHECK_FALSE(r.rows[0].stable);
    CHECK(std::isnan(r.rows[0].ln));
    CHECK(r.rows[1].stable);
    CHECK(r.rows[1].ln == 0.0); // stable operating points here are separable
    CHECK(r.rows[1].physical);
    CHECK(std::isnan(r.rows[0].t));
}

TEST_CASE("per-point failures are collected, not fatal") {
    Preset p = small_g_preset({1.0, 2.0});
    p.eval.tau = 0.25;
    p.scenario_at = [](const std::vector<double>& ax) {
        if (ax[0] > 1.5) throw config_error("synthetic failure for testing");
        return two_node(ax[0], pi);
    };
    const SweepResult r = run_preset(p, 2);
    REQUIRE(r.rows.size() == 2);
    CHECK(std::isfinite(r.rows[0].ln));
    CHECK(std::isnan(r.rows[1].ln));
    REQUIRE(r.errors.size() == 1);
    CHECK_THAT(r.errors[0], ContainsSubstring("synthetic failure"));
}

TEST_CASE("csv and manifest serialization") {
    Preset p = small_g_preset({1.0, 2.0});
    p.eval.tau = 0.5;
    const SweepResult r = run_preset(p, 1);
    const std::string csv = to_csv(r);

    // header says what the columns are; one line per row plus the header
    REQUIRE(csv.rfind("g_over_2pi_mhz,partition,ln,stable,physical\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK_THAT(csv, ContainsSubstring("m2|b1"));
    CHECK_THAT(csv, ContainsSubstring("false")); // unstable working point

    const std::string manifest = to_manifest_json(r);
    CHECK_THAT(manifest, ContainsSubstring("\"name\": \"test-g-scan\""));
    CHECK_THAT(manifest, ContainsSubstring("\"fingerprint\""));
    CHECK_THAT(manifest, ContainsSubstring("\"axes\""));

    SECTION("round-trip precision of the formatter") {
        CHECK(format_double(0.1) == "0.1");
        const double v = 0.228942182;
        CHECK(std::stod(format_double(v)) == v);
        CHECK(format_double(1.0) == "1");
    }

    SECTION("csv quoting") {
        CHECK(csv_field("plain") == "plain");
        CHECK(csv_field("a,b") == "\"a,b\"");
        CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    }
}

TEST_CASE("input fingerprint ignores workers but tracks the grid") {
    Preset p = small_g_preset({1.0, 2.0});
    p.eval.tau = 0.5;
    const auto f1 = run_preset(p, 1).fingerprint;
    const auto f2 = run_preset(p, 4).fingerprint;
    CHECK(f1 == f2);
    p.axes[0].values = {1.0, 2.5};
    const auto f3 = run_preset(p, 1).fingerprint;
    CHECK(f1 != f3);
}
