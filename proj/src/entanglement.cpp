#include "wgmm/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "wgmm/errors.hpp"

namespace wgmm {

namespace {

constexpr double ln_clamp = 1e-12;

double ln_from_spectrum(const std::vector<double>& mods, bool min_form) {
    double value = 0.0;
    if (min_form) {
        const double mn = mods.front();
        if (mn <= 0.0) throw numerical_error("log_negativity: vanishing symplectic eigenvalue");
        if (mn < 0.5) value = -std::log(2.0 * mn);
    } else {
        for (double e : mods) {
            if (e <= 0.0) throw numerical_error("log_negativity: vanishing symplectic eigenvalue");
            if (e < 0.5) value += -std::log(2.0 * e);
        }
    }
    if (!(value > ln_clamp)) value = 0.0;
    return value;
}

} // namespace

Eigen::MatrixXd reduce(const CovarianceMatrix& v, const std::vector<ModeLabel>& modes) {
    if (modes.empty()) throw config_error("reduce: empty mode list");
    for (std::size_t i = 0; i < modes.size(); ++i)
        for (std::size_t j = i + 1; j < modes.size(); ++j)
            if (modes[i] == modes[j])
                throw config_error("reduce: duplicate mode " + format_label(modes[i]));

    std::vector<std::size_t> rows;
    for (const ModeLabel& m : modes) {
        const auto [x, y] = mode_rows(m);
        if (static_cast<Eigen::Index>(y) >= v.data.rows())
            throw config_error("reduce: mode " + format_label(m) +
                               " outside the covariance matrix");
        rows.push_back(x);
        rows.push_back(y);
    }
    const Eigen::Index k = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd out(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            out(i, j) = v.data(static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)]),
                               static_cast<Eigen::Index>(rows[static_cast<std::size_t>(j)]));
    return out;
}

Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& reduced, const Bipartition& p) {
    const std::size_t n_modes = p.side_a.size() + p.side_b.size();
    if (reduced.rows() != reduced.cols() ||
        reduced.rows() != static_cast<Eigen::Index>(2 * n_modes))
        throw config_error("partial_transpose: matrix dimension does not match the partition");
    Eigen::MatrixXd out = reduced;
    for (std::size_t mode = 0; mode < p.side_a.size(); ++mode) {
        const Eigen::Index y = static_cast<Eigen::Index>(2 * mode + 1);
        out.row(y) *= -1.0;
        out.col(y) *= -1.0;
    }
    return out;
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& v) {
    const Eigen::Index n = v.rows();
    if (n != v.cols() || n % 2 != 0)
        throw config_error("symplectic_eigenvalues: matrix must be square and even-dimensional");

    Eigen::MatrixXd om(n, n); // Omega * V
    for (Eigen::Index k = 0; k + 1 < n; k += 2) {
        om.row(k) = v.row(k + 1);
        om.row(k + 1) = -v.row(k);
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(om, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw numerical_error("symplectic_eigenvalues: eigenvalue iteration failed");

    std::vector<double> mods(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        mods[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()(i));
    std::sort(mods.begin(), mods.end());

    // eigenvalues of Omega V come in +/- pairs; adjacent moduli must agree
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n / 2));
    for (std::size_t i = 0; i + 1 < mods.size(); i += 2) {
        const double scale = std::max({mods[i], mods[i + 1], 1e-300});
        if ((mods[i + 1] - mods[i]) / scale > 1e-8)
            throw numerical_error(
                "symplectic_eigenvalues: unpaired spectrum (matrix not symmetric?)");
        out.push_back(0.5 * (mods[i] + mods[i + 1]));
    }
    return out;
}

LnResult log_negativity(const CovarianceMatrix& v, const Bipartition& p) {
    if (p.side_a.empty() || p.side_b.empty())
        throw config_error("log_negativity: both partition sides must be nonempty");
    LnResult res;
    res.partition = p;
    const Eigen::MatrixXd sub = reduce(v, p.modes());
    const Eigen::MatrixXd pt = partial_transpose(sub, p);
    res.symplectic_spectrum = symplectic_eigenvalues(pt);
    const bool min_form = p.side_a.size() == 1 || p.side_b.size() == 1;
    res.value = ln_from_spectrum(res.symplectic_spectrum, min_form);
    return res;
}

LnResult two_mode_ln_closed_form(const Eigen::MatrixXd& v4) {
    if (v4.rows() != 4 || v4.cols() != 4)
        throw config_error("two_mode_ln_closed_form: expected a 4x4 covariance matrix");
    const double scale = std::max(v4.cwiseAbs().maxCoeff(), 1e-300);
    if ((v4 - v4.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw config_error("two_mode_ln_closed_form: matrix is not symmetric");

    const double det_a = v4.block<2, 2>(0, 0).determinant();
    const double det_b = v4.block<2, 2>(2, 2).determinant();
    const double det_c = v4.block<2, 2>(0, 2).determinant();
    const double det_v = v4.determinant();
    const double sigma = det_a + det_b - 2.0 * det_c;

    double disc = sigma * sigma - 4.0 * det_v;
    if (disc < -1e-12 * std::max(sigma * sigma, 1.0))
        throw numerical_error("two_mode_ln_closed_form: negative discriminant (unphysical input)");
    disc = std::max(disc, 0.0);

    double e_min_sq = 0.5 * (sigma - std::sqrt(disc));
    double e_max_sq = 0.5 * (sigma + std::sqrt(disc));
    if (e_min_sq < -1e-12 * std::max(std::abs(sigma), 1.0))
        throw numerical_error("two_mode_ln_closed_form: negative squared eigenvalue");
    e_min_sq = std::max(e_min_sq, 0.0);
    e_max_sq = std::max(e_max_sq, 0.0);

    LnResult res;
    res.symplectic_spectrum = {std::sqrt(e_min_sq), std::sqrt(e_max_sq)};
    res.value = ln_from_spectrum(res.symplectic_spectrum, /*min_form=*/true);
    return res;
}

} // namespace wgmm
