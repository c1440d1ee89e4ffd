#include "wgmm/matrices.hpp"

#include <cmath>
#include <limits>

#include "wgmm/errors.hpp"

namespace wgmm {

Eigen::MatrixXd build_drift(const Scenario& s) {
    s.validate();
    const std::size_t n = s.n_nodes;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4 * n, 4 * n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t xm = row_xm(j), ym = row_ym(j), xb = row_xb(j), yb = row_yb(j);
        a(xm, xm) = a(ym, ym) = -s.kappa_tilde(j);
        a(xm, ym) = s.delta[j];
        a(ym, xm) = -s.delta[j];
        a(xb, xb) = a(yb, yb) = -s.kappa_b;
        a(xb, yb) = s.omega_b;
        a(yb, xb) = -s.omega_b;
        a(ym, xb) = -2.0 * s.g[j];
        a(yb, xm) = -2.0 * s.g[j];
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = j + 1; l < n; ++l) {
            const double root = std::sqrt(s.kappa[j] * s.kappa[l]);
            const double phase = s.pair_phase(j, l);
            const double gam = root * std::cos(phase);
            const double sin_part = root * std::sin(phase);
            // identical block on both sides of the diagonal
            for (auto [r, c] : {std::pair{j, l}, std::pair{l, j}}) {
                a(row_xm(r), row_xm(c)) = -gam;
                a(row_ym(r), row_ym(c)) = -gam;
                a(row_xm(r), row_ym(c)) = sin_part;
                a(row_ym(r), row_xm(c)) = -sin_part;
            }
        }
    }
    return a;
}

Eigen::MatrixXd build_diffusion(const Scenario& s) {
    s.validate();
    const std::size_t n = s.n_nodes;
    const double m_noise = 2.0 * s.n_bar_m + 1.0;
    const double b_noise = 2.0 * s.n_bar_b + 1.0;
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(4 * n, 4 * n);
    for (std::size_t j = 0; j < n; ++j) {
        d(row_xm(j), row_xm(j)) = d(row_ym(j), row_ym(j)) = s.kappa_tilde(j) * m_noise;
        d(row_xb(j), row_xb(j)) = d(row_yb(j), row_yb(j)) = s.kappa_b * b_noise;
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = j + 1; l < n; ++l) {
            const double gam = std::sqrt(s.kappa[j] * s.kappa[l]) * std::cos(s.pair_phase(j, l));
            d(row_xm(j), row_xm(l)) = d(row_xm(l), row_xm(j)) = gam * m_noise;
            d(row_ym(j), row_ym(l)) = d(row_ym(l), row_ym(j)) = gam * m_noise;
        }
    }
    return d;
}

StabilityReport stability(const Eigen::MatrixXd& drift) {
    if (drift.rows() != drift.cols()) throw config_error("stability: matrix must be square");
    Eigen::EigenSolver<Eigen::MatrixXd> solver(drift, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw numerical_error("stability: eigenvalue iteration failed to converge");
    StabilityReport rep;
    rep.eigenvalues.reserve(static_cast<std::size_t>(drift.rows()));
    double max_re = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < drift.rows(); ++i) {
        const std::complex<double> ev = solver.eigenvalues()(i);
        rep.eigenvalues.push_back(ev);
        max_re = std::max(max_re, ev.real());
    }
    rep.spectral_abscissa = max_re;
    rep.stable = max_re < 0.0;
    return rep;
}

} // namespace wgmm
