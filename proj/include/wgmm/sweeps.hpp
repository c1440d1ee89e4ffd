#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wgmm/engine.hpp"
#include "wgmm/partitions.hpp"
#include "wgmm/scenario.hpp"

namespace wgmm {

// How a grid point is turned into log-negativities: sample a whole
// trajectory, evaluate at a single fixed time tau, or substitute the
// algebraic steady state (stable scenarios only; unstable points yield a
// flagged row with no value).
enum class EvalMode { trajectory, fixed_tau, algebraic_steady };

struct EvalSpec {
    EvalMode mode = EvalMode::fixed_tau;
    double tau = 3.0;          // us, fixed_tau mode
    std::vector<double> times; // us, trajectory mode, nondecreasing
};

struct Axis {
    std::string name; // CSV column header; for grid_sweep also the parameter path
    std::vector<double> values;
};

// A named parameter study: a scenario family over a small Cartesian grid,
// the partitions to evaluate, and the evaluation mode. scenario_at /
// partitions_at receive the axis values of one grid point (same order as
// axes).
struct Preset {
    std::string name;
    std::string description;
    std::vector<Axis> axes;
    EvalSpec eval;
    std::function<Scenario(const std::vector<double>&)> scenario_at;
    std::function<std::vector<Bipartition>(const std::vector<double>&)> partitions_at;
};

struct SweepRow {
    std::vector<double> axis_values;
    double t = 0.0;        // sample time (us); NaN in algebraic-steady mode
    std::string partition;
    double ln = 0.0;       // NaN when the point failed or has no steady state
    bool stable = false;   // strict linear stability of the drift
    bool physical = false; // min symplectic eigenvalue of V >= 1/2 (tolerance 1e-7)
};

struct SweepResult {
    std::string name;
    std::string description;
    std::vector<std::string> axis_names;
    bool has_time = false; // trajectory runs add a t column
    std::string eval_label;
    std::vector<SweepRow> rows; // grid-point major, deterministic order
    std::vector<std::string> errors; // per-point failure messages, if any
    int workers = 1;
    int max_digits = 0; // highest working precision used by any point
    double wall_seconds = 0.0;
    std::uint64_t fingerprint = 0; // hash of the inputs (not outputs/timings)
};

// The named catalog: fig2a..fig2e (two-node magnon-phonon entanglement),
// fig3c..fig3f and fig5a..fig5c, fig6a..fig6c (one-phonon--N-magnon and
// one-magnon--N-phonon chains), fig4a..fig4d (four-mode network).
std::vector<Preset> preset_catalog();

// throws config_error listing the known names
Preset find_preset(const std::string& name);

SweepResult run_preset(const Preset& p, int workers = 8, const EngineOptions& eng = {},
                       bool algebraic_steady_override = false);

// User-defined grid over a base scenario. Axis names are parameter paths in
// config units: delta_over_2pi_mhz, g_over_2pi_mhz, kappa_over_2pi_mhz,
// gamma_over_2pi_mhz, omega_b_over_2pi_mhz, kappa_b_hz, phi_adjacent_rad,
// n_bar_m, n_bar_b, temperature_mk. Per-node paths take a 1-based suffix,
// e.g. g_over_2pi_mhz[1]; bare names broadcast. temperature_mk recomputes
// both occupations (magnon frequency epsilon + delta_1) and is applied after
// the other axes of each grid point.
struct GridSpec {
    std::string name = "sweep";
    Scenario base;
    double epsilon_over_2pi_ghz = 10.0;
    std::vector<Axis> axes;
    std::vector<Bipartition> partitions;
    EvalSpec eval;
};

SweepResult grid_sweep(const GridSpec& spec, int workers = 8, const EngineOptions& eng = {});

// n evenly spaced values from lo to hi inclusive (n >= 2; n == 1 -> {lo})
std::vector<double> linspace(double lo, double hi, std::size_t n);

} // namespace wgmm
