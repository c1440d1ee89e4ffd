#include "wgmm/physics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>

#include "wgmm/errors.hpp"
#include "wgmm/units.hpp"

namespace wgmm {

double thermal_occupation(double freq_hz, double temperature_k) {
    if (freq_hz <= 0.0) throw config_error("thermal_occupation: frequency must be positive");
    if (temperature_k < 0.0) throw config_error("thermal_occupation: negative temperature");
    if (temperature_k == 0.0) return 0.0;
    const double x = hbar_si * two_pi * freq_hz / (k_b_si * temperature_k);
    if (x > 700.0) return 0.0; // exp would overflow; occupation is < 1e-304
    return 1.0 / std::expm1(x);
}

double rabi_frequency(double b_field_tesla, double spin_count, double gyro_hz_per_t) {
    if (spin_count < 0.0) throw config_error("rabi_frequency: negative spin count");
    return gyro_hz_per_t * std::sqrt(5.0 * spin_count) * b_field_tesla / 4.0;
}

WaveguideParams derive_waveguide_params(const WaveguideInputs& in) {
    const std::size_t n = in.coupling.size();
    if (n == 0) throw config_error("derive_waveguide_params: empty coupling list");
    if (in.position.size() != n)
        throw config_error("derive_waveguide_params: positions/coupling length mismatch");
    if (in.v_g <= 0.0) throw config_error("derive_waveguide_params: v_g must be positive");
    for (std::size_t j = 0; j + 1 < n; ++j)
        if (in.position[j + 1] < in.position[j])
            throw config_error("derive_waveguide_params: positions must be nondecreasing "
                               "along the guide");
    WaveguideParams out;
    out.kappa.resize(n);
    out.phi_node.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.kappa[j] = two_pi * in.coupling[j] * in.coupling[j] / in.v_g;
        out.phi_node[j] = in.omega_m * in.position[j] / in.v_g;
    }
    out.phi_adjacent.resize(n > 0 ? n - 1 : 0);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        double d = std::fmod(out.phi_node[j + 1] - out.phi_node[j], two_pi);
        if (d < 0.0) d += two_pi;
        if (d >= two_pi) d -= two_pi;
        out.phi_adjacent[j] = d;
    }
    return out;
}

ClassicalAmplitudes classical_steady_amplitudes(const DriveInputs& in, const Scenario& s,
                                                int max_iterations) {
    using cd = std::complex<double>;
    const std::size_t n = s.n_nodes;
    if (in.rabi_hz.size() != n || in.bare_coupling_hz.size() != n)
        throw config_error("classical_steady_amplitudes: drive lists must have length n_nodes");

    // internal angular units
    Eigen::VectorXcd omega(n), m(n);
    std::vector<double> g0(n);
    for (std::size_t j = 0; j < n; ++j) {
        omega(j) = cd(hz_to_rad_us(in.rabi_hz[j]), 0.0);
        g0[j] = hz_to_rad_us(in.bare_coupling_hz[j]);
        if (s.delta[j] == 0.0 && std::abs(omega(j)) > 0.0)
            throw config_error("classical_steady_amplitudes: delta[" + std::to_string(j + 1) +
                               "] = 0 (the large-detuning seed is undefined)");
        m(j) = s.delta[j] != 0.0 ? cd(-in.rabi_hz[j], 0.0) * (two_pi * 1e-6 / s.delta[j]) : cd(0.0);
    }

    const cd i_unit(0.0, 1.0);
    const cd mech_pole = i_unit * s.omega_b + s.kappa_b;
    const double drive_scale = std::max(1.0, omega.cwiseAbs().maxCoeff());

    auto phonon_of = [&](const Eigen::VectorXcd& mm, std::size_t j) {
        return -i_unit * g0[j] * std::norm(mm(j)) / mech_pole;
    };

    // residual of the magnon fixed-point equations at the current amplitudes
    auto residual_of = [&](const Eigen::VectorXcd& mm) {
        double r = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double deff = s.delta[j] + 2.0 * g0[j] * phonon_of(mm, j).real();
            cd eq = (i_unit * deff + s.kappa_tilde(j)) * mm(j) + i_unit * omega(j);
            for (std::size_t l = 0; l < n; ++l) {
                if (l == j) continue;
                eq += std::sqrt(s.kappa[j] * s.kappa[l]) *
                      std::exp(i_unit * s.pair_phase(j, l)) * mm(l);
            }
            r = std::max(r, std::abs(eq));
        }
        return r / drive_scale;
    };

    ClassicalAmplitudes out;
    double prev_change = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= max_iterations; ++it) {
        // mechanical response and effective detunings at the current m
        Eigen::MatrixXcd coef = Eigen::MatrixXcd::Zero(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            const double deff = s.delta[j] + 2.0 * g0[j] * phonon_of(m, j).real();
            coef(j, j) = i_unit * deff + s.kappa_tilde(j);
            for (std::size_t l = 0; l < n; ++l) {
                if (l == j) continue;
                coef(j, l) = std::sqrt(s.kappa[j] * s.kappa[l]) *
                             std::exp(i_unit * s.pair_phase(j, l));
            }
        }
        Eigen::VectorXcd m_next = coef.partialPivLu().solve(-i_unit * omega);

        double change = (m_next - m).cwiseAbs().maxCoeff() /
                        std::max(1.0, m_next.cwiseAbs().maxCoeff());
        if (change > prev_change) // oscillating update: damp the step
            m_next = 0.5 * (m_next + m);
        prev_change = change;

        m = m_next;
        out.iterations = it;
        if (change < 1e-10) {
            out.converged = true;
            break;
        }
    }
    if (!out.converged)
        throw numerical_error("classical_steady_amplitudes: no convergence after " +
                              std::to_string(max_iterations) + " iterations");

    out.m.resize(n);
    out.b.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.m[j] = m(j);
        out.b[j] = phonon_of(m, j);
    }
    out.residual = residual_of(m);
    return out;
}

} // namespace wgmm
