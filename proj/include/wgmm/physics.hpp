#pragma once

#include <complex>
#include <vector>

#include "wgmm/scenario.hpp"

namespace wgmm {

// Bose-Einstein occupation n = 1/(exp(hbar*omega/kB*T) - 1) for a mode of
// cyclic frequency freq_hz at temperature_k. Returns 0 at T = 0; negative
// temperatures and nonpositive frequencies are rejected.
double thermal_occupation(double freq_hz, double temperature_k);

// Drive Rabi frequency Omega = gyro * sqrt(5 * spin_count) * b_field / 4 for
// a uniformly driven YIG sphere; gyro in Hz/T (cyclic, ~28 GHz/T for YIG),
// result in Hz (cyclic).
double rabi_frequency(double b_field_tesla, double spin_count, double gyro_hz_per_t);

// Microscopic waveguide parameters. The magnon-waveguide coupling G_j is
// given in sqrt(rad/us * m/us) so that kappa_j = 2*pi*G_j^2/v_g lands in
// rad/us directly; v_g in m/us; node positions in m; magnon frequency
// omega_m in rad/us (sets the traveling phase phi_j = omega_m * L_j / v_g).
struct WaveguideInputs {
    std::vector<double> coupling; // G_j
    double v_g = 0.0;             // group speed, m/us
    std::vector<double> position; // L_j, m, nondecreasing along the guide
    double omega_m = 0.0;         // rad/us
};

struct WaveguideParams {
    std::vector<double> kappa;        // radiative decays, rad/us
    std::vector<double> phi_node;     // cumulative phases phi_j = omega_m L_j / v_g
    std::vector<double> phi_adjacent; // phi_{j,j+1} = phi_{j+1} - phi_j, reduced mod 2pi
};

WaveguideParams derive_waveguide_params(const WaveguideInputs& in);

// Classical steady amplitudes of the driven network: fixed point of the
// nonlinear mean-field equations
//   (i*delta_eff_j + kappa~_j) <m_j> + sum_{l != j} sqrt(kappa_j kappa_l)
//       e^{i phi_jl} <m_l> = -i Omega_j,
//   <b_j> = -i g0_j |<m_j>|^2 / (i omega_b + kappa_b),
//   delta_eff_j = delta_j + 2 g0_j Re<b_j>,
// iterated from the large-detuning approximation <m_j> = -Omega_j/delta_j.
// rabi in Hz (cyclic), bare couplings g0 in Hz (cyclic); amplitudes are
// dimensionless.
struct DriveInputs {
    std::vector<double> rabi_hz;          // Omega_j
    std::vector<double> bare_coupling_hz; // g0_j
};

struct ClassicalAmplitudes {
    std::vector<std::complex<double>> m, b;
    double residual = 0.0; // max norm of the magnon fixed-point equations
    int iterations = 0;
    bool converged = false;
};

ClassicalAmplitudes classical_steady_amplitudes(const DriveInputs& in, const Scenario& s,
                                                int max_iterations = 10000);

} // namespace wgmm
