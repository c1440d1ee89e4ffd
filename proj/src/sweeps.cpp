#include "wgmm/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "wgmm/config.hpp"
#include "wgmm/dynamics.hpp"
#include "wgmm/entanglement.hpp"
#include "wgmm/errors.hpp"
#include "wgmm/fingerprint.hpp"
#include "wgmm/matrices.hpp"
#include "wgmm/physics.hpp"
#include "wgmm/units.hpp"

namespace wgmm {

namespace {

constexpr double nan_d = std::numeric_limits<double>::quiet_NaN();

std::size_t grid_size(const std::vector<Axis>& axes) {
    std::size_t total = 1;
    for (const Axis& a : axes) {
        if (a.values.empty()) throw config_error("axis '" + a.name + "' has no values");
        total *= a.values.size();
    }
    return total;
}

// grid-point index -> axis values, last axis fastest
std::vector<double> values_at(const std::vector<Axis>& axes, std::size_t idx) {
    std::vector<double> v(axes.size());
    for (std::size_t k = axes.size(); k-- > 0;) {
        const std::size_t n = axes[k].values.size();
        v[k] = axes[k].values[idx % n];
        idx /= n;
    }
    return v;
}

// everything one grid point produces, assembled into rows afterwards
struct PointOutput {
    std::vector<SweepRow> rows;
    std::uint64_t scenario_fp = 0;
    int digits = 16;
    std::string error; // nonempty when the point failed
};

PointOutput evaluate_point(const Preset& p, const std::vector<double>& vals,
                           const EvalSpec& eval, const EngineOptions& eng) {
    PointOutput out;
    std::vector<std::string> labels;

    auto failed_rows = [&](const std::string& why) {
        out.error = why;
        out.rows.clear();
        const double t = eval.mode == EvalMode::fixed_tau ? eval.tau : nan_d;
        for (const std::string& label : labels)
            out.rows.push_back({vals, t, label, nan_d, false, false});
    };

    try {
        const std::vector<Bipartition> parts = p.partitions_at(vals);
        labels.reserve(parts.size());
        for (const Bipartition& bp : parts) labels.push_back(format_partition(bp));
        const Scenario s = p.scenario_at(vals);
        out.scenario_fp = scenario_fingerprint(s);
        for (const Bipartition& bp : parts) validate_partition(bp, s.n_nodes);
        const Eigen::MatrixXd a = build_drift(s);
        const Eigen::MatrixXd d = build_diffusion(s);
        const CovarianceMatrix v0 = initial_cm(s);

        if (eval.mode == EvalMode::algebraic_steady) {
            const StabilityReport rep = stability(a);
            if (!rep.stable) {
                for (const std::string& label : labels)
                    out.rows.push_back({vals, nan_d, label, nan_d, false, false});
                return out;
            }
            const SteadyResult ss = steady_state(a, d);
            const std::vector<double> mods = symplectic_eigenvalues(ss.v.data);
            const bool physical = mods.front() >= 0.5 - 1e-7;
            for (std::size_t k = 0; k < parts.size(); ++k) {
                const LnResult ln = log_negativity(ss.v, parts[k]);
                out.rows.push_back({vals, nan_d, labels[k], ln.value, true, physical});
            }
            return out;
        }

        std::vector<RowPartition> rows_p;
        rows_p.reserve(parts.size());
        for (const Bipartition& bp : parts) rows_p.push_back(to_row_partition(bp));
        const std::vector<double> times =
            eval.mode == EvalMode::fixed_tau ? std::vector<double>{eval.tau} : eval.times;

        const EngineResult res = evaluate_ln(a, d, v0.data, times, rows_p, eng);
        out.digits = res.digits_used;
        for (const EnginePoint& pt : res.points)
            for (std::size_t k = 0; k < labels.size(); ++k)
                out.rows.push_back({vals, pt.t, labels[k], pt.ln[k], res.stable, pt.physical});
    } catch (const std::exception& e) {
        failed_rows(e.what());
    }
    return out;
}

std::uint64_t input_fingerprint(const Preset& p, const EvalSpec& eval, const EngineOptions& eng,
                                const std::vector<PointOutput>& outputs) {
    Fingerprint fp;
    fp.add(p.name);
    for (const Axis& a : p.axes) {
        fp.add(a.name);
        fp.add(a.values);
    }
    fp.add(static_cast<std::uint64_t>(eval.mode));
    fp.add(eval.tau);
    fp.add(eval.times);
    fp.add(static_cast<std::uint64_t>(eng.digits));
    fp.add(static_cast<std::uint64_t>(eng.drop_decoupled));
    fp.add(static_cast<std::uint64_t>(eng.physicality_stride));
    fp.add(eng.ln_clamp);
    for (const PointOutput& o : outputs) {
        fp.add(o.scenario_fp);
        for (const SweepRow& r : o.rows) fp.add(r.partition);
    }
    return fp.value();
}

SweepResult run_grid(const Preset& p, int workers, const EngineOptions& eng,
                     const EvalSpec& eval) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t total = grid_size(p.axes);

    std::vector<PointOutput> outputs(total);
    const int n_threads =
        std::max(1, std::min<int>(workers, static_cast<int>(total)));
    if (n_threads == 1) {
        for (std::size_t i = 0; i < total; ++i)
            outputs[i] = evaluate_point(p, values_at(p.axes, i), eval, eng);
    } else {
        std::atomic<std::size_t> next{0};
        auto work = [&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= total) return;
                outputs[i] = evaluate_point(p, values_at(p.axes, i), eval, eng);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int k = 0; k < n_threads; ++k) pool.emplace_back(work);
        for (std::thread& th : pool) th.join();
    }

    SweepResult res;
    res.name = p.name;
    res.description = p.description;
    for (const Axis& a : p.axes) res.axis_names.push_back(a.name);
    res.has_time = eval.mode == EvalMode::trajectory;
    res.eval_label = eval.mode == EvalMode::trajectory  ? std::string("trajectory")
                     : eval.mode == EvalMode::fixed_tau ? "tau=" + std::to_string(eval.tau)
                                                        : std::string("algebraic-steady");
    res.workers = n_threads;
    for (std::size_t i = 0; i < total; ++i) {
        PointOutput& o = outputs[i];
        res.max_digits = std::max(res.max_digits, o.digits);
        if (!o.error.empty())
            res.errors.push_back("point " + std::to_string(i) + ": " + o.error);
        res.rows.insert(res.rows.end(), std::make_move_iterator(o.rows.begin()),
                        std::make_move_iterator(o.rows.end()));
    }
    res.fingerprint = input_fingerprint(p, eval, eng, outputs);
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

// ---- grid_sweep parameter paths -------------------------------------------

struct ParamPath {
    std::string name;
    int index = 0; // 1-based node (or adjacent-pair) index; 0 = broadcast
};

ParamPath parse_path(const std::string& text) {
    ParamPath p;
    const auto open = text.find('[');
    if (open == std::string::npos) {
        p.name = text;
        return p;
    }
    if (text.back() != ']') throw config_error("parameter path '" + text + "': missing ']'");
    p.name = text.substr(0, open);
    const std::string idx = text.substr(open + 1, text.size() - open - 2);
    try {
        p.index = std::stoi(idx);
    } catch (...) {
        throw config_error("parameter path '" + text + "': bad index '" + idx + "'");
    }
    if (p.index < 1) throw config_error("parameter path '" + text + "': index is 1-based");
    return p;
}

void assign(std::vector<double>& field, const ParamPath& p, double value,
            const char* what) {
    if (p.index == 0) {
        field.assign(field.size(), value);
        return;
    }
    if (static_cast<std::size_t>(p.index) > field.size())
        throw config_error("parameter path '" + p.name + "[" + std::to_string(p.index) +
                           "]': index exceeds the number of " + what);
    field[static_cast<std::size_t>(p.index) - 1] = value;
}

// applies one axis value; temperature is deferred by the caller
void apply_path(Scenario& s, const ParamPath& p, double value) {
    if (p.name == "delta_over_2pi_mhz") {
        assign(s.delta, p, mhz_to_rad_us(value), "nodes");
    } else if (p.name == "g_over_2pi_mhz") {
        assign(s.g, p, mhz_to_rad_us(value), "nodes");
    } else if (p.name == "kappa_over_2pi_mhz") {
        assign(s.kappa, p, mhz_to_rad_us(value), "nodes");
    } else if (p.name == "gamma_over_2pi_mhz") {
        assign(s.gamma, p, mhz_to_rad_us(value), "nodes");
    } else if (p.name == "phi_adjacent_rad") {
        assign(s.phi, p, value, "adjacent pairs");
    } else if (p.name == "omega_b_over_2pi_mhz") {
        s.omega_b = mhz_to_rad_us(value);
    } else if (p.name == "kappa_b_hz") {
        s.kappa_b = hz_to_rad_us(value);
    } else if (p.name == "n_bar_m") {
        s.n_bar_m = value;
    } else if (p.name == "n_bar_b") {
        s.n_bar_b = value;
    } else {
        throw config_error("unknown parameter path '" + p.name + "'");
    }
}

} // namespace

SweepResult run_preset(const Preset& p, int workers, const EngineOptions& eng,
                       bool algebraic_steady_override) {
    EvalSpec eval = p.eval;
    if (algebraic_steady_override) eval.mode = EvalMode::algebraic_steady;
    return run_grid(p, workers, eng, eval);
}

SweepResult grid_sweep(const GridSpec& spec, int workers, const EngineOptions& eng) {
    spec.base.validate();
    if (spec.partitions.empty()) throw config_error("grid_sweep: no partitions given");
    for (const Bipartition& bp : spec.partitions) validate_partition(bp, spec.base.n_nodes);

    std::vector<ParamPath> paths;
    paths.reserve(spec.axes.size());
    for (const Axis& a : spec.axes) {
        ParamPath p = parse_path(a.name);
        if (p.name == "temperature_mk" && p.index != 0)
            throw config_error("parameter path 'temperature_mk' takes no index");
        // validate the name (and the index range) up front on the base scenario
        if (p.name != "temperature_mk") {
            Scenario probe = spec.base;
            apply_path(probe, p, p.name == "phi_adjacent_rad" ? 0.0 : 1.0);
        }
        paths.push_back(std::move(p));
    }

    Preset as_preset;
    as_preset.name = spec.name;
    as_preset.description = "user-defined grid over " +
                            (spec.base.name.empty() ? std::string("a scenario") : spec.base.name);
    as_preset.axes = spec.axes;
    as_preset.eval = spec.eval;
    const Scenario base = spec.base;
    const double eps_ghz = spec.epsilon_over_2pi_ghz;
    as_preset.scenario_at = [base, paths, eps_ghz](const std::vector<double>& vals) {
        Scenario s = base;
        double t_mk = 0.0;
        bool has_temp = false;
        for (std::size_t k = 0; k < paths.size(); ++k) {
            if (paths[k].name == "temperature_mk") {
                t_mk = vals[k];
                has_temp = true;
            } else {
                apply_path(s, paths[k], vals[k]);
            }
        }
        if (has_temp) {
            const double f_m_hz = eps_ghz * 1e9 + rad_us_to_mhz(s.delta[0]) * 1e6;
            const double f_b_hz = rad_us_to_mhz(s.omega_b) * 1e6;
            s.n_bar_m = thermal_occupation(f_m_hz, mk_to_k(t_mk));
            s.n_bar_b = thermal_occupation(f_b_hz, mk_to_k(t_mk));
        }
        s.normalize_phases();
        s.validate();
        return s;
    };
    const std::vector<Bipartition> parts = spec.partitions;
    as_preset.partitions_at = [parts](const std::vector<double>&) { return parts; };

    return run_grid(as_preset, workers, eng, spec.eval);
}

} // namespace wgmm
