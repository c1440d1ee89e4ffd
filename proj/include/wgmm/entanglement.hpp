#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wgmm/dynamics.hpp"
#include "wgmm/partitions.hpp"

namespace wgmm {

// Submatrix of the full covariance matrix on the given modes, two
// rows/columns per mode, in the listed order.
Eigen::MatrixXd reduce(const CovarianceMatrix& v, const std::vector<ModeLabel>& modes);

// Partial transpose of a reduced covariance matrix laid out side_a-then-
// side_b: Ṽ = P V P with P diagonal, -1 on the Y quadrature of every side_a
// mode.
Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& reduced, const Bipartition& p);

// Moduli of the eigenvalues of Omega V for a symmetric (not necessarily
// physical) even-dimensional matrix, one value per +/- pair; partners are
// matched within relative tolerance 1e-8. Sorted ascending.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& v);

struct LnResult {
    double value = 0.0;                     // log-negativity, >= 0
    std::vector<double> symplectic_spectrum; // PT symplectic eigenvalues
    Bipartition partition;
};

// Log-negativity of a bipartition of the state v: reduce, partially
// transpose, take symplectic eigenvalues. Partitions with a single mode on
// either side use E = max[0, -ln(2 e_min)]; larger m|n partitions sum
// -ln(2 e_j) over all e_j < 1/2. Values below 1e-12 are clamped to zero.
LnResult log_negativity(const CovarianceMatrix& v, const Bipartition& p);

// Independent closed-form two-mode oracle: for V = [[A, C], [C^T, B]] in 2x2
// blocks, the smallest PT symplectic eigenvalue obeys
// 2 e~^2 = S - sqrt(S^2 - 4 det V) with S = det A + det B - 2 det C.
LnResult two_mode_ln_closed_form(const Eigen::MatrixXd& v4);

} // namespace wgmm
