#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "wgmm/scenario.hpp"

namespace wgmm {

// Drift matrix A of the linearized quantum Langevin equations in the
// canonical quadrature ordering (4N x 4N). Per node j: a rotating magnon
// block (+delta_j / -delta_j off-diagonal, -kappa~_j diagonal), a rotating
// phonon block (+omega_b / -omega_b, -kappa_b), and the magnomechanical
// coupling entries A[ym_j, xb_j] = A[yb_j, xm_j] = -2 g_j. Waveguide-mediated
// magnon-magnon blocks for j != l:
//   [[-Gamma_jl, S_jl], [-S_jl, -Gamma_jl]],
// with Gamma_jl = sqrt(kappa_j kappa_l) cos(phi_jl) (correlated dissipation)
// and S_jl = sqrt(kappa_j kappa_l) sin(phi_jl) (coherent exchange); the same
// block appears at (j,l) and (l,j).
Eigen::MatrixXd build_drift(const Scenario& s);

// Diffusion matrix D of the input noise: magnon diagonals
// kappa~_j (2 n_bar_m + 1), phonon diagonals kappa_b (2 n_bar_b + 1), and
// correlated magnon-magnon noise Gamma_jl (2 n_bar_m + 1) on the X-X and Y-Y
// cross entries; symmetric PSD by construction.
Eigen::MatrixXd build_diffusion(const Scenario& s);

struct StabilityReport {
    std::vector<std::complex<double>> eigenvalues;
    double spectral_abscissa = 0.0; // max real part
    bool stable = false;            // all real parts strictly negative
};

StabilityReport stability(const Eigen::MatrixXd& drift);

} // namespace wgmm
