#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "wgmm/dynamics.hpp"

namespace wgmm {

// Extended-precision evaluation pipeline.
//
// The propagation uses the exact one-step solution of the Lyapunov equation:
// over a step h, V -> F V F^T + Q with F = exp(A h) and
// Q = int_0^h exp(A s) D exp(A^T s) ds, which is exact for constant A at any
// step size; F and Q are built once per distinct step from a short Taylor
// seed followed by doublings (F <- F^2, Q <- F Q F^T + Q).
//
// Why extended precision: an unstable drift (spectral abscissa lambda > 0)
// makes the covariance grow like exp(2 lambda t) while the entanglement of
// interest lives in an O(1) Schur complement of V. Once
// exp(2 lambda t) * eps exceeds that scale the log-negativity is lost to
// round-off, so the working precision is chosen from lambda and the horizon
// and the whole pipeline (propagation, partial transpose, symplectic
// spectra) runs in that precision before results are returned as doubles.

// A bipartition resolved to row indices of a concrete matrix layout:
// x,y row pairs, side_a modes first.
struct RowPartition {
    std::vector<std::size_t> rows;
    std::size_t n_side_a = 0; // mode counts per side
    std::size_t n_side_b = 0;
};

struct EngineOptions {
    int digits = 0;              // working decimal digits; 0 = automatic
    bool drop_decoupled = true;  // exactly reduce away uncoupled modes
    int physicality_stride = 0;  // if k > 0: evaluate min eig(V + (i/2) Omega)
                                 // at every k-th sample (and the last)
    double ln_clamp = 1e-12;     // log-negativities below this become 0
};

struct EnginePoint {
    double t = 0.0;
    std::vector<double> ln;        // one value per requested partition
    double min_symplectic = 0.0;   // smallest symplectic eigenvalue of V itself
    bool physical = false;         // min_symplectic >= 1/2 - 1e-7
    double min_cm_eig = 0.0;       // min eig(V + (i/2) Omega); NaN if not evaluated
};

struct EngineResult {
    std::vector<EnginePoint> points;
    int digits_used = 0;        // 16 when the double path was sufficient
    double abscissa = 0.0;      // spectral abscissa of the drift
    bool stable = false;
    std::size_t dim_propagated = 0; // matrix dimension after reduction
};

// Propagates v0 through the nondecreasing sample times (us) and evaluates the
// log-negativity of every partition at every sample.
EngineResult evaluate_ln(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                         const Eigen::MatrixXd& v0, const std::vector<double>& times,
                         const std::vector<RowPartition>& partitions,
                         const EngineOptions& opts = {});

// Exact-map trajectory returned as double snapshots (backend of
// evolve(..., Integrator::exact)). Entries that overflow double range abort
// with a diagnostic.
std::vector<Eigen::MatrixXd> propagate_exact(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                                             const Eigen::MatrixXd& v0,
                                             const std::vector<double>& times, int digits = 0);

// Decimal digits needed to keep ~9 significant digits of an O(1)
// log-negativity at horizon t_max under growth exp(2*abscissa*t).
int required_digits(double abscissa, double t_max);

// Maps a Bipartition of an n_nodes network onto canonical 4N rows.
RowPartition to_row_partition(const struct Bipartition& p);

} // namespace wgmm
