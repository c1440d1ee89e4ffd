#include "wgmm/dynamics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wgmm/engine.hpp"
#include "wgmm/errors.hpp"
#include "wgmm/fingerprint.hpp"
#include "wgmm/matrices.hpp"

namespace wgmm {

namespace {

std::uint64_t trajectory_fingerprint(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                                     const CovarianceMatrix& v0,
                                     const std::vector<double>& times,
                                     const EvolveOptions& opts) {
    Fingerprint fp;
    auto add_matrix = [&](const Eigen::MatrixXd& m) {
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i) fp.add(m(i, j));
    };
    add_matrix(a);
    add_matrix(d);
    add_matrix(v0.data);
    fp.add(v0.time);
    fp.add(times);
    fp.add(static_cast<std::uint64_t>(opts.method));
    fp.add(opts.dt);
    fp.add(static_cast<std::uint64_t>(opts.digits));
    return fp.value();
}

// one classical RK4 step of dV/dt = A V + V A^T + D
void rk4_step(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d, Eigen::MatrixXd& v, double h) {
    auto rhs = [&](const Eigen::MatrixXd& w) { return (a * w + w * a.transpose() + d).eval(); };
    const Eigen::MatrixXd k1 = rhs(v);
    const Eigen::MatrixXd k2 = rhs(v + (h / 2) * k1);
    const Eigen::MatrixXd k3 = rhs(v + (h / 2) * k2);
    const Eigen::MatrixXd k4 = rhs(v + h * k3);
    v += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    v = ((v + v.transpose()) / 2).eval(); // the flow preserves symmetry; keep round-off out
}

} // namespace

CovarianceMatrix initial_cm(const Scenario& s) {
    s.validate();
    CovarianceMatrix v;
    v.data = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(s.dim()),
                                   static_cast<Eigen::Index>(s.dim()));
    for (std::size_t j = 0; j < s.n_nodes; ++j) {
        v.data(static_cast<Eigen::Index>(row_xm(j)), static_cast<Eigen::Index>(row_xm(j))) =
            s.n_bar_m + 0.5;
        v.data(static_cast<Eigen::Index>(row_ym(j)), static_cast<Eigen::Index>(row_ym(j))) =
            s.n_bar_m + 0.5;
        v.data(static_cast<Eigen::Index>(row_xb(j)), static_cast<Eigen::Index>(row_xb(j))) =
            s.n_bar_b + 0.5;
        v.data(static_cast<Eigen::Index>(row_yb(j)), static_cast<Eigen::Index>(row_yb(j))) =
            s.n_bar_b + 0.5;
    }
    v.time = 0.0;
    return v;
}

Trajectory evolve(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d, const CovarianceMatrix& v0,
                  const std::vector<double>& times, const EvolveOptions& opts) {
    if (a.rows() != a.cols() || d.rows() != a.rows() || v0.data.rows() != a.rows())
        throw config_error("evolve: dimension mismatch between A, D and V0");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < v0.time - 1e-15)
            throw config_error("evolve: sample time before the initial time");
        if (i > 0 && times[i] <= times[i - 1])
            throw config_error("evolve: sample times must be strictly increasing");
    }

    Trajectory traj;
    traj.times = times;
    traj.fingerprint = trajectory_fingerprint(a, d, v0, times, opts);

    if (opts.method == Integrator::exact) {
        std::vector<double> rel(times.size());
        for (std::size_t i = 0; i < times.size(); ++i) rel[i] = times[i] - v0.time;
        traj.snapshots = propagate_exact(a, d, v0.data, rel, opts.digits);
        return traj;
    }

    if (!(opts.dt > 0.0)) throw config_error("evolve: dt must be positive");
    Eigen::MatrixXd v = v0.data;
    double t_cur = v0.time;
    for (double t_target : times) {
        const double span = t_target - t_cur;
        if (span > 0.0) {
            // align the grid so the sample time is hit exactly
            const auto steps = static_cast<long>(std::ceil(span / opts.dt - 1e-12));
            const double h = span / static_cast<double>(std::max<long>(steps, 1));
            for (long k = 0; k < std::max<long>(steps, 1); ++k) rk4_step(a, d, v, h);
            t_cur = t_target;
        }
        if (!v.allFinite()) {
            const double abscissa = stability(a).spectral_abscissa;
            throw numerical_error("evolve: non-finite covariance at t = " +
                                  std::to_string(t_target) + " us (spectral abscissa " +
                                  std::to_string(abscissa) +
                                  " rad/us; the drift is exponentially unstable)");
        }
        traj.snapshots.push_back(v);
    }
    return traj;
}

SteadyResult steady_state(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d) {
    if (a.rows() != a.cols() || d.rows() != d.cols() || a.rows() != d.rows())
        throw config_error("steady_state: A and D must be square and same size");
    const StabilityReport rep = stability(a);
    if (!rep.stable)
        throw unstable_error("steady_state: drift is not strictly stable (spectral abscissa " +
                             std::to_string(rep.spectral_abscissa) +
                             " rad/us); the Lyapunov equation has no physical steady state");

    const Eigen::Index n = a.rows();
    // vec(A V + V A^T) = (I (x) A + A (x) I) vec(V) in column-major vec
    Eigen::MatrixXd big = Eigen::MatrixXd::Zero(n * n, n * n);
    for (Eigen::Index c = 0; c < n; ++c) big.block(n * c, n * c, n, n) = a;
    for (Eigen::Index bc = 0; bc < n; ++bc)
        for (Eigen::Index br = 0; br < n; ++br)
            if (a(br, bc) != 0.0)
                for (Eigen::Index k = 0; k < n; ++k) big(n * br + k, n * bc + k) += a(br, bc);

    Eigen::VectorXd rhs(n * n);
    for (Eigen::Index c = 0; c < n; ++c) rhs.segment(n * c, n) = -d.col(c);

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(big);
    const Eigen::VectorXd x = lu.solve(rhs);
    if (!x.allFinite()) throw numerical_error("steady_state: singular vectorized system");

    SteadyResult out;
    out.v.data.resize(n, n);
    for (Eigen::Index c = 0; c < n; ++c) out.v.data.col(c) = x.segment(n * c, n);
    out.v.data = ((out.v.data + out.v.data.transpose()) / 2).eval();
    out.v.time = std::numeric_limits<double>::infinity();

    const double d_scale = std::max(d.cwiseAbs().maxCoeff(), 1e-300);
    out.residual =
        (a * out.v.data + out.v.data * a.transpose() + d).cwiseAbs().maxCoeff() / d_scale;
    if (out.residual > 1e-8)
        throw numerical_error("steady_state: Lyapunov residual " + std::to_string(out.residual) +
                              " exceeds 1e-8 (ill-conditioned system)");
    return out;
}

} // namespace wgmm
