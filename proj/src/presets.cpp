#include <cstddef>
#include <string>
#include <vector>

#include "wgmm/errors.hpp"
#include "wgmm/physics.hpp"
#include "wgmm/sweeps.hpp"
#include "wgmm/units.hpp"

namespace wgmm {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v;
    if (n == 0) return v;
    if (n == 1) return {lo};
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        v.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    return v;
}

namespace {

constexpr double default_epsilon_ghz = 10.0;

// occupations from temperature, magnon frequency epsilon + delta_1
void set_temperature(Scenario& s, double t_mk) {
    const double t_k = mk_to_k(t_mk);
    const double f_m_hz = default_epsilon_ghz * 1e9 + rad_us_to_mhz(s.delta[0]) * 1e6;
    const double f_b_hz = rad_us_to_mhz(s.omega_b) * 1e6;
    s.n_bar_m = thermal_occupation(f_m_hz, t_k);
    s.n_bar_b = thermal_occupation(f_b_hz, t_k);
}

// shared defaults: omega_b/2pi = 10 MHz, kappa_b/2pi = 100 Hz,
// gamma/2pi = 1 MHz, kappa/2pi = 3 MHz, T = 10 mK, Delta = -omega_b
Scenario base_scenario(std::size_t n) {
    Scenario s;
    s.n_nodes = n;
    s.delta.assign(n, mhz_to_rad_us(-10.0));
    s.g.assign(n, 0.0);
    s.kappa.assign(n, mhz_to_rad_us(3.0));
    s.gamma.assign(n, mhz_to_rad_us(1.0));
    s.omega_b = mhz_to_rad_us(10.0);
    s.kappa_b = hz_to_rad_us(100.0);
    if (n > 1) s.phi.assign(n - 1, 0.0);
    set_temperature(s, 10.0);
    return s;
}

// One driven phonon: g_1 = g, all other g_j = 0; phi_12 = phi, the
// remaining adjacent phases 2pi. The two-node scenarios of fig2* are the
// N = 2 member of this family.
Scenario one_phonon_n_magnon(std::size_t n, double g_mhz, double phi) {
    Scenario s = base_scenario(n);
    s.g[0] = mhz_to_rad_us(g_mhz);
    if (n > 1) s.phi[0] = phi;
    s.normalize_phases();
    s.validate();
    return s;
}

// One driven magnon: g_1 = 0, g_2 = ... = g_N = g; phi_12 = phi, rest 2pi.
Scenario one_magnon_n_phonon(std::size_t n, double g_mhz, double phi) {
    Scenario s = base_scenario(n);
    for (std::size_t j = 1; j < n; ++j) s.g[j] = mhz_to_rad_us(g_mhz);
    s.phi[0] = phi;
    s.normalize_phases();
    s.validate();
    return s;
}

// Four nodes, outer phonons driven: g_1 = g_4 = g, g_2 = g_3 = 0, all
// adjacent phases 2pi.
Scenario four_mode(double g_mhz) {
    Scenario s = base_scenario(4);
    s.g[0] = s.g[3] = mhz_to_rad_us(g_mhz);
    s.validate();
    return s;
}

ModeLabel m(std::size_t j) { return {ModeKind::magnon, j}; }
ModeLabel b(std::size_t j) { return {ModeKind::phonon, j}; }

// b1 | m2..mN
Bipartition b1_vs_magnons(std::size_t n) {
    Bipartition p;
    p.side_a = {b(1)};
    for (std::size_t j = 2; j <= n; ++j) p.side_b.push_back(m(j));
    return p;
}

// m1 | b2..bN
Bipartition m1_vs_phonons(std::size_t n) {
    Bipartition p;
    p.side_a = {m(1)};
    for (std::size_t j = 2; j <= n; ++j) p.side_b.push_back(b(j));
    return p;
}

// b2 | m1, b3..bN
Bipartition b2_vs_rest(std::size_t n) {
    Bipartition p;
    p.side_a = {b(2)};
    p.side_b = {m(1)};
    for (std::size_t j = 3; j <= n; ++j) p.side_b.push_back(b(j));
    return p;
}

std::vector<double> sample_times(double t_end) {
    const auto n = static_cast<std::size_t>(t_end / 0.02 + 0.5) + 1;
    return linspace(0.0, t_end, n);
}

EvalSpec trajectory_to(double t_end) {
    EvalSpec e;
    e.mode = EvalMode::trajectory;
    e.times = sample_times(t_end);
    return e;
}

EvalSpec at_tau(double tau) {
    EvalSpec e;
    e.mode = EvalMode::fixed_tau;
    e.tau = tau;
    return e;
}

using Parts = std::vector<Bipartition>;

const double half_pi = pi / 2.0;
const double three_quarter_pi = 3.0 * pi / 4.0;

std::vector<double> n_axis() { return linspace(2.0, 12.0, 11); }

Preset make_fig2a() {
    Preset p;
    p.name = "fig2a";
    p.description = "two-node E_{m2|b1}(t) for (g/2pi, phi) in {1,2} MHz x {pi/2, pi}";
    p.axes = {{"g_over_2pi_mhz", {1.0, 2.0}}, {"phi_rad", {half_pi, pi}}};
    p.eval = trajectory_to(4.0);
    p.scenario_at = [](const std::vector<double>& v) {
        return one_phonon_n_magnon(2, v[0], v[1]);
    };
    p.partitions_at = [](const std::vector<double>&) -> Parts {
        return {parse_partition("m2|b1", 2)};
    };
    return p;
}

Preset make_fig2b() {
    Preset p;
    p.name = "fig2b";
    p.description = "two-node E_{m2|b1}(tau=3us) vs g for phi in {pi/2, 3pi/4, pi}";
    p.axes = {{"g_over_2pi_mhz", linspace(0.5, 3.0, 26)},
              {"phi_rad", {half_pi, three_quarter_pi, pi}}};
    p.eval = at_tau(3.0);
    p.scenario_at = [](const std::vector<double>& v) {
        return one_phonon_n_magnon(2, v[0], v[1]);
    };
    p.partitions_at = [](const std::vector<double>&) -> Parts {
        return {parse_partition("m2|b1", 2)};
    };
    return p;
}

Preset make_fig2c() {
    Preset p;
    p.name = "fig2c";
    p.description = "two-node E_{m2|b1}(tau=3us) vs temperature for phi in {pi/2, 3pi/4, pi}";
    p.axes = {{"temperature_mk", linspace(10.0, 300.0, 30)},
              {"phi_rad", {half_pi, three_quarter_pi, pi}}};
    p.eval = at_tau(3.0);
    p.scenario_at = [](const std::vector<double>& v) {
        Scenario s = one_phonon_n_magnon(2, 2.0, v[1]);
        set_temperature(s, v[0]);
        return s;
    };
    p.partitions_at = [](const std::vector<double>&) -> Parts {
        return {parse_partition("m2|b1", 2)};
    };
    return p;
}

Preset make_fig2d() {
    Preset p;
    p.name = "fig2d";
    p.description = "two-node E_{m2|b1}(tau=3us) map over g and kappa at phi = pi";
    p.axes = {{"g_over_2pi_mhz", linspace(0.5, 3.0, 41)},
              {"kappa_over_2pi_mhz", linspace(1.0, 4.0, 41)}};
    p.eval = at_tau(3.0);
    p.scenario_at = [](const std::vector<double>& v) {
        Scenario s = one_phonon_n_magnon(2, v[0], pi);
        s.kappa.assign(2, mhz_to_rad_us(v[1]));
        s.validate();
        return s;
    };
    p.partitions_at = [](const std::vector<double>&) -> Parts {
        return {parse_partition("m2|b1", 2)};
    };
    return p;
}

Preset make_fig2e() {
    Preset p;
    p.name = "fig2e";
    p.description = "two-node E_{m2|b1}(tau=3us) map over detunings delta_1 and delta_2";
    p.axes = {{"delta1_over_2pi_mhz", linspace(-20.0, 0.0, 41)},
              {"delta2_over_2pi_mhz", linspace(-20.0, 0.0, 41)}};
    p.eval = at_tau(3.0);
    p.scenario_at = [](const std::vector<double>& v) {
        Scenario s = one_phonon_n_magnon(2, 2.0, pi);
        s.delta = {mhz_to_rad_us(v[0]), mhz_to_rad_us(v[1])};
        set_temperature(s, 10.0); // magnon frequency tracks delta_1
        s.validate();
        return s;
    };
    p.partitions_at = [](const std::vector<double>&) -> Parts {
        return {parse_partition("m2|b1", 2)};
    };
    return p;
}

Preset make_fig3c() {
    Preset p;
    p.name = "fig3c";
    p.description = "one-phonon--4-magnon E_{b1|M}(t) and E_{b1|m2}(t) for phi in {pi/2, pi}";
    p.axes = {{"phi_rad", {half_pi, pi}}};
    p.eval = trajectory_to(4.0);
    p.scenario_at = [](const std::vector<double>& v) {
        return one_phonon_n_magnon(4, 2.0, v[0]);
    };
    p.partitions_at = [](const std::vector<double>&) -> Parts {
        return {b1_vs_magnons(4), parse_partition("b1|m2", 4)};
    };
    return p;
}

Preset make_fig3d() {
    Preset p;
    p.name = "fig3d";
    p.description = "one-magnon--4-phonon E_{m1|B}(t) and E_{m1|b2}(t) for phi in {pi/2, pi}";
    p.axes = {{"phi_rad", {half_pi, pi}}};
    p.eval = trajectory_to(4.0);
    p.scenario_at = [](const std::vector<double>& v) {
        return one_magnon_n_phonon(4, 2.0, v[0]);
    };
    p.partitions_at = [](const std::vector<double>&) -> Parts {
        return {m1_vs_phonons(4), parse_partition("m1|b2", 4)};
    };
    return p;
}

Preset make_fig3e() {
    Preset p;
    p.name = "fig3e";
    p.description = "one-phonon--N-magnon E_{b1|M}(tau=4us) vs N for g in {2,3}, phi in {pi/2, pi}";
    p.axes = {{"n_nodes", n_axis()},
              {"g_over_2pi_mhz", {2.0, 3.0}},
              {"phi_rad", {half_pi, pi}}};
    p.eval = at_tau(4.0);
    p.scenario_at = [](const std::vector<double>& v) {
        return one_phonon_n_magnon(static_cast<std::size_t>(v[0]), v[1], v[2]);
    };
    p.partitions_at = [](const std::vector<double>& v) -> Parts {
        return {b1_vs_magnons(static_cast<std::size_t>(v[0]))};
    };
    return p;
}

Preset make_fig3f() {
    Preset p;
    p.name = "fig3f";
    p.description = "one-magnon--N-phonon E_{m1|B}(tau=4us) vs N for g in {2,3}, phi in {pi/2, pi}";
    p.axes = {{"n_nodes", n_axis()},
              {"g_over_2pi_mhz", {2.0, 3.0}},
              {"phi_rad", {half_pi, pi}}};
    p.eval = at_tau(4.0);
    p.scenario_at = [](const std::vector<double>& v) {
        return one_magnon_n_phonon(static_cast<std::size_t>(v[0]), v[1], v[2]);
    };
    p.partitions_at = [](const std::vector<double>& v) -> Parts {
        return {m1_vs_phonons(static_cast<std::size_t>(v[0]))};
    };
    return p;
}

Preset make_fig4a() {
    Preset p;
    p.name = "fig4a";
    p.description = "four-mode full-system bipartition LNs vs time at g/2pi = 2 MHz";
    p.eval = trajectory_to(3.0);
    p.scenario_at = [](const std::vector<double>&) { return four_mode(2.0); };
    p.partitions_at = [](const std::vector<double>&) -> Parts {
        return {parse_partition("b1|m2,m3,b4", 4), parse_partition("m2|b1,m3,b4", 4),
                parse_partition("b1,m2|m3,b4", 4), parse_partition("b1,b4|m2,m3", 4)};
    };
    return p;
}

Preset make_fig4b() {
    Preset p;
    p.name = "fig4b";
    p.description = "four-mode three-mode-subsystem LNs vs time at g/2pi = 2 MHz";
    p.eval = trajectory_to(3.0);
    p.scenario_at = [](const std::vector<double>&) { return four_mode(2.0); };
    p.partitions_at = [](const std::vector<double>&) -> Parts {
        return {parse_partition("b1|m2,b4", 4), parse_partition("m2|b1,b4", 4),
                parse_partition("b1|m2,m3", 4), parse_partition("m2|b1,m3", 4)};
    };
    return p;
}

Preset make_fig4c() {
    Preset p;
    p.name = "fig4c";
    p.description = "four-mode full-system bipartition LNs at tau = 3 us vs g";
    p.axes = {{"g_over_2pi_mhz", linspace(0.5, 3.0, 26)}};
    p.eval = at_tau(3.0);
    p.scenario_at = [](const std::vector<double>& v) { return four_mode(v[0]); };
    p.partitions_at = [](const std::vector<double>&) -> Parts {
        return {parse_partition("b1|m2,m3,b4", 4), parse_partition("m2|b1,m3,b4", 4),
                parse_partition("b1,b4|m2,m3", 4)};
    };
    return p;
}

Preset make_fig4d() {
    Preset p;
    p.name = "fig4d";
    p.description = "four-mode three-mode-subsystem LNs at tau = 3 us vs g";
    p.axes = {{"g_over_2pi_mhz", linspace(0.5, 3.0, 26)}};
    p.eval = at_tau(3.0);
    p.scenario_at = [](const std::vector<double>& v) { return four_mode(v[0]); };
    p.partitions_at = [](const std::vector<double>&) -> Parts {
        return {parse_partition("b1|m2,b4", 4), parse_partition("m2|b1,b4", 4),
                parse_partition("b1|m2,m3", 4)};
    };
    return p;
}

Preset make_fig5a() {
    Preset p;
    p.name = "fig5a";
    p.description = "one-phonon--4-magnon nested-partition LNs vs time at phi = pi";
    p.eval = trajectory_to(4.0);
    p.scenario_at = [](const std::vector<double>&) { return one_phonon_n_magnon(4, 2.0, pi); };
    p.partitions_at = [](const std::vector<double>&) -> Parts {
        return {b1_vs_magnons(4), parse_partition("b1|m2,m3", 4), parse_partition("b1|m2", 4)};
    };
    return p;
}

Preset make_fig5b() {
    Preset p;
    p.name = "fig5b";
    p.description = "one-phonon--5-magnon nested-partition LNs vs time at phi = pi";
    p.eval = trajectory_to(4.0);
    p.scenario_at = [](const std::vector<double>&) { return one_phonon_n_magnon(5, 2.0, pi); };
    p.partitions_at = [](const std::vector<double>&) -> Parts {
        return {b1_vs_magnons(5), parse_partition("b1|m2,m3,m4", 5),
                parse_partition("b1|m2", 5)};
    };
    return p;
}

Preset make_fig5c() {
    Preset p;
    p.name = "fig5c";
    p.description = "one-phonon--N-magnon E_{b1|M} and E_{b1|m2} at tau = 4 us vs N, phi = pi";
    p.axes = {{"n_nodes", n_axis()}, {"g_over_2pi_mhz", {2.0, 3.0}}};
    p.eval = at_tau(4.0);
    p.scenario_at = [](const std::vector<double>& v) {
        return one_phonon_n_magnon(static_cast<std::size_t>(v[0]), v[1], pi);
    };
    p.partitions_at = [](const std::vector<double>& v) -> Parts {
        const auto n = static_cast<std::size_t>(v[0]);
        return {b1_vs_magnons(n), parse_partition("b1|m2", n)};
    };
    return p;
}

Preset make_fig6a() {
    Preset p;
    p.name = "fig6a";
    p.description = "one-magnon--4-phonon bipartition LNs vs time at phi = pi";
    p.eval = trajectory_to(4.0);
    p.scenario_at = [](const std::vector<double>&) { return one_magnon_n_phonon(4, 2.0, pi); };
    p.partitions_at = [](const std::vector<double>&) -> Parts {
        return {m1_vs_phonons(4), b2_vs_rest(4), parse_partition("m1|b2,b3", 4),
                parse_partition("b2|m1,b3", 4)};
    };
    return p;
}

Preset make_fig6b() {
    Preset p;
    p.name = "fig6b";
    p.description = "one-magnon--5-phonon bipartition LNs vs time at phi = pi";
    p.eval = trajectory_to(4.0);
    p.scenario_at = [](const std::vector<double>&) { return one_magnon_n_phonon(5, 2.0, pi); };
    p.partitions_at = [](const std::vector<double>&) -> Parts {
        return {m1_vs_phonons(5), b2_vs_rest(5), parse_partition("m1|b2,b3,b4", 5),
                parse_partition("b2|m1,b3,b4", 5)};
    };
    return p;
}

Preset make_fig6c() {
    Preset p;
    p.name = "fig6c";
    p.description = "one-magnon--N-phonon E_{m1|B} and E_{b2|B'} at tau = 4 us vs N, phi = pi";
    p.axes = {{"n_nodes", n_axis()}, {"g_over_2pi_mhz", {2.0, 3.0}}};
    p.eval = at_tau(4.0);
    p.scenario_at = [](const std::vector<double>& v) {
        return one_magnon_n_phonon(static_cast<std::size_t>(v[0]), v[1], pi);
    };
    p.partitions_at = [](const std::vector<double>& v) -> Parts {
        const auto n = static_cast<std::size_t>(v[0]);
        return {m1_vs_phonons(n), b2_vs_rest(n)};
    };
    return p;
}

} // namespace

std::vector<Preset> preset_catalog() {
    return {make_fig2a(), make_fig2b(), make_fig2c(), make_fig2d(), make_fig2e(),
            make_fig3c(), make_fig3d(), make_fig3e(), make_fig3f(), make_fig4a(),
            make_fig4b(), make_fig4c(), make_fig4d(), make_fig5a(), make_fig5b(),
            make_fig5c(), make_fig6a(), make_fig6b(), make_fig6c()};
}

Preset find_preset(const std::string& name) {
    std::vector<Preset> all = preset_catalog();
    for (Preset& p : all)
        if (p.name == name) return std::move(p);
    std::string known;
    for (const Preset& p : all) {
        if (!known.empty()) known += ", ";
        known += p.name;
    }
    throw config_error("unknown preset '" + name + "' (known: " + known + ")");
}

} // namespace wgmm
