#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "wgmm/scenario.hpp"

namespace wgmm {

struct CovarianceMatrix {
    Eigen::MatrixXd data; // symmetric, canonical quadrature ordering
    double time = 0.0;    // us
};

// V(0): diagonal thermal state, magnon quadrature variances n_bar_m + 1/2,
// phonon quadrature variances n_bar_b + 1/2.
CovarianceMatrix initial_cm(const Scenario& s);

struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::MatrixXd> snapshots; // one per time, symmetric
    std::uint64_t fingerprint = 0;          // hash of (A, D, V0, times, options)
};

enum class Integrator {
    rk4,  // classical fixed-step Runge-Kutta in double precision
    exact // stepped matrix-exponential map in adaptive extended precision
};

struct EvolveOptions {
    Integrator method = Integrator::rk4;
    double dt = 1e-4; // rk4 step, us
    int digits = 0;   // exact method: working decimal digits, 0 = automatic
};

// Integrates dV/dt = A V + V A^T + D from v0 through the strictly increasing
// sample times (us, first >= v0.time). Snapshots are symmetrized after every
// step; sample times are hit exactly by shortening the final step of each
// segment. Non-finite values abort with a diagnostic quoting the spectral
// abscissa of A.
Trajectory evolve(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                  const CovarianceMatrix& v0, const std::vector<double>& times,
                  const EvolveOptions& opts = {});

struct SteadyResult {
    CovarianceMatrix v;
    double residual = 0.0; // max-norm of A V + V A^T + D, relative to max |D|
};

// Algebraic steady state of the Lyapunov equation via the vectorized dense
// solve (I (x) A + A (x) I) vec(V) = -vec(D). Requires a strictly stable
// drift (throws unstable_error otherwise); residual is checked against
// 1e-8 * max|D|.
SteadyResult steady_state(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d);

} // namespace wgmm
