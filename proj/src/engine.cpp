#include "wgmm/engine.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "wgmm/errors.hpp"
#include "wgmm/matrices.hpp"
#include "wgmm/partitions.hpp"

// Eigen 3.4's generic hypot wants NumTraits<T>::infinity()/quiet_NaN(),
// which the multiprecision interop header does not provide; supply the plain
// scaled formula instead (the eigensolvers only call it on finite values).
namespace Eigen {
namespace internal {
template <class Backend, boost::multiprecision::expression_template_option ET>
struct hypot_impl<boost::multiprecision::number<Backend, ET>> {
    using Scalar = boost::multiprecision::number<Backend, ET>;
    static inline Scalar run(const Scalar& x, const Scalar& y) {
        using std::abs;
        using std::sqrt;
        Scalar ax = abs(x), ay = abs(y);
        if (ay > ax) ax.swap(ay);
        if (ax == 0) return Scalar(0);
        const Scalar r = ay / ax;
        return ax * sqrt(Scalar(1) + r * r);
    }
};
} // namespace internal
} // namespace Eigen

namespace wgmm {

namespace {

namespace bmp = boost::multiprecision;
using bf50 = bmp::cpp_bin_float_50;
using bf100 = bmp::cpp_bin_float_100;
using bf200 = bmp::number<bmp::backends::cpp_bin_float<200>>;

template <class Real>
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

template <class Real>
Real max_abs(const Mat<Real>& m) {
    using std::abs;
    Real mx(0);
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            Real a = abs(m(i, j));
            if (a > mx) mx = a;
        }
    return mx;
}

// One-step propagators (F, Q) for the exact map V -> F V F^T + Q, built from
// a Taylor seed at h0 = h / 2^s (with ||A|| h0 <= 0.1) and s doublings.
template <class Real>
class Stepper {
  public:
    Stepper(Mat<Real> a, Mat<Real> d, double a_scale)
        : a_(std::move(a)), d_(std::move(d)), a_scale_(a_scale) {}

    struct Maps {
        Mat<Real> f, q;
    };

    // steps within 1e-9 relative of an already-built one share its maps (the
    // exact map varies smoothly in h, so the induced error is far below the
    // working precision targets)
    const Maps& maps_for(double h) {
        for (const auto& entry : cache_)
            if (std::abs(entry.first - h) <= 1e-9 * std::max(entry.first, h))
                return entry.second;
        cache_.emplace_back(h, build(h));
        return cache_.back().second;
    }

  private:
    Maps build(double h) const {
        const Eigen::Index n = a_.rows();
        const Real eps = std::numeric_limits<Real>::epsilon();

        int s = 0;
        for (double x = a_scale_ * h; x > 0.1; x *= 0.5) ++s;
        Real h0(h);
        for (int i = 0; i < s; ++i) h0 /= 2;

        // F(h0) = exp(A h0) by plain Taylor (||A h0|| <= 0.1 converges fast)
        Mat<Real> x = a_ * h0;
        Mat<Real> f = Mat<Real>::Identity(n, n) + x;
        Mat<Real> term = x;
        for (int k = 2;; ++k) {
            if (k > 400) throw numerical_error("exact engine: exp Taylor did not converge");
            term = (term * x).eval();
            term /= Real(k);
            f += term;
            if (max_abs(term) <= eps * max_abs(f)) break;
        }

        // Q(h0) = sum_k T_k h0^{k+1} / (k+1)!  with T_0 = D and the symmetric
        // recurrence T_k = A T_{k-1} + (A T_{k-1})^T
        Mat<Real> t = d_;
        Mat<Real> q = d_ * h0;
        Real coef = h0;
        for (int k = 1;; ++k) {
            if (k > 400) throw numerical_error("exact engine: Q Taylor did not converge");
            Mat<Real> u = a_ * t;
            t = u + u.transpose();
            coef *= h0 / Real(k + 1);
            q += t * coef;
            if (max_abs(t) * coef <= eps * max_abs(q)) break;
        }

        // double the step s times: F(2t) = F^2, Q(2t) = F Q F^T + Q
        for (int i = 0; i < s; ++i) {
            q = (f * q * f.transpose() + q).eval();
            q = ((q + q.transpose()) / Real(2)).eval();
            f = (f * f).eval();
        }
        return {std::move(f), std::move(q)};
    }

    Mat<Real> a_, d_;
    double a_scale_;
    std::vector<std::pair<double, Maps>> cache_;
};

// Symplectic spectrum of a symmetric matrix M: the moduli of the (purely
// imaginary) eigenvalues of Omega M, extracted from the 2x2 blocks of its
// real Schur form — no complex arithmetic, so it works at any precision.
// Returns the k per-mode values (sorted ascending, +/- partners merged).
template <class Real>
std::vector<Real> symplectic_moduli(const Mat<Real>& m) {
    using std::abs;
    using std::sqrt;
    const Eigen::Index n = m.rows();
    Mat<Real> om(n, n);
    for (Eigen::Index k = 0; k + 1 < n; k += 2) {
        om.row(k) = m.row(k + 1);
        om.row(k + 1) = -m.row(k);
    }
    Eigen::RealSchur<Mat<Real>> schur;
    schur.compute(om, /*computeU=*/false);
    if (schur.info() != Eigen::Success)
        throw numerical_error("symplectic spectrum: Schur iteration did not converge");
    const Mat<Real>& t = schur.matrixT();
    std::vector<Real> mods;
    mods.reserve(static_cast<std::size_t>(n));
    Eigen::Index i = 0;
    while (i < n) {
        if (i + 1 < n && t(i + 1, i) != Real(0)) {
            // complex-conjugate pair: |lambda|^2 = det of the 2x2 block
            Real det = t(i, i) * t(i + 1, i + 1) - t(i, i + 1) * t(i + 1, i);
            Real mod = sqrt(abs(det));
            mods.push_back(mod);
            mods.push_back(mod);
            i += 2;
        } else {
            mods.push_back(abs(t(i, i)));
            ++i;
        }
    }
    std::sort(mods.begin(), mods.end());
    std::vector<Real> out;
    out.reserve(static_cast<std::size_t>(n / 2));
    for (Eigen::Index k = 0; k < n; k += 2) out.push_back(mods[static_cast<std::size_t>(k)]);
    return out;
}

template <class Real>
double ln_of_partition(const Mat<Real>& v, const RowPartition& p, double clamp) {
    using std::log;
    const std::size_t k = p.rows.size();
    Mat<Real> sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            sub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                v(static_cast<Eigen::Index>(p.rows[i]), static_cast<Eigen::Index>(p.rows[j]));

    // partial transpose on side a: flip the sign of its Y quadratures
    for (std::size_t mode = 0; mode < p.n_side_a; ++mode) {
        const Eigen::Index y = static_cast<Eigen::Index>(2 * mode + 1);
        sub.row(y) *= Real(-1);
        sub.col(y) *= Real(-1);
    }

    const auto mods = symplectic_moduli(sub);
    Real value(0);
    const Real half(0.5);
    if (p.n_side_a == 1 || p.n_side_b == 1) {
        const Real& mn = mods.front();
        if (mn <= Real(0))
            throw numerical_error("log_negativity: vanishing symplectic eigenvalue");
        if (mn < half) value = -log(2 * mn);
    } else {
        for (const Real& e : mods) {
            if (e <= Real(0))
                throw numerical_error("log_negativity: vanishing symplectic eigenvalue");
            if (e < half) value += -log(2 * e);
        }
    }
    double out = static_cast<double>(value);
    if (!(out > clamp)) out = 0.0;
    return out;
}

// min eig(V + (i/2) Omega) through the real embedding
// [[V, -Omega/2], [Omega/2, V]], whose spectrum is that of the Hermitian
// matrix doubled.
template <class Real>
double min_cm_eigenvalue(const Mat<Real>& v) {
    const Eigen::Index n = v.rows();
    Mat<Real> embed = Mat<Real>::Zero(2 * n, 2 * n);
    embed.topLeftCorner(n, n) = v;
    embed.bottomRightCorner(n, n) = v;
    for (Eigen::Index k = 0; k + 1 < n; k += 2) {
        embed(k, n + k + 1) = Real(-0.5);
        embed(k + 1, n + k) = Real(0.5);
        embed(n + k, k + 1) = Real(0.5);
        embed(n + k + 1, k) = Real(-0.5);
    }
    Eigen::SelfAdjointEigenSolver<Mat<Real>> es(embed, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw numerical_error("physicality check: eigensolver did not converge");
    return static_cast<double>(es.eigenvalues()(0));
}

// Exact reduction: modes never coupled (through A, D or V0) to any partition
// mode evolve independently and cannot influence the requested
// log-negativities, so they are dropped before propagation.
struct Reduction {
    std::vector<std::size_t> kept_rows; // ascending, full-layout indices
    std::vector<RowPartition> partitions;
};

bool block_nonzero(const Eigen::MatrixXd& m, std::size_t i, std::size_t j) {
    return m(2 * i, 2 * j) != 0.0 || m(2 * i, 2 * j + 1) != 0.0 ||
           m(2 * i + 1, 2 * j) != 0.0 || m(2 * i + 1, 2 * j + 1) != 0.0;
}

Reduction reduce_decoupled(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                           const Eigen::MatrixXd& v0,
                           const std::vector<RowPartition>& partitions, bool enabled) {
    const std::size_t n_modes = static_cast<std::size_t>(a.rows()) / 2;
    Reduction red;
    red.partitions = partitions;

    std::vector<std::size_t> keep_modes;
    if (!enabled) {
        keep_modes.resize(n_modes);
        std::iota(keep_modes.begin(), keep_modes.end(), std::size_t{0});
    } else {
        std::vector<std::size_t> parent(n_modes);
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (std::size_t i = 0; i < n_modes; ++i)
            for (std::size_t j = i + 1; j < n_modes; ++j)
                if (block_nonzero(a, i, j) || block_nonzero(a, j, i) || block_nonzero(d, i, j) ||
                    block_nonzero(v0, i, j))
                    parent[find(i)] = find(j);

        std::vector<bool> wanted(n_modes, false);
        for (const RowPartition& p : partitions)
            for (std::size_t r : p.rows) wanted[find(r / 2)] = true;
        for (std::size_t m = 0; m < n_modes; ++m)
            if (wanted[find(m)]) keep_modes.push_back(m);
    }

    std::vector<std::size_t> new_row(2 * n_modes, static_cast<std::size_t>(-1));
    for (std::size_t pos = 0; pos < keep_modes.size(); ++pos) {
        red.kept_rows.push_back(2 * keep_modes[pos]);
        red.kept_rows.push_back(2 * keep_modes[pos] + 1);
        new_row[2 * keep_modes[pos]] = 2 * pos;
        new_row[2 * keep_modes[pos] + 1] = 2 * pos + 1;
    }
    for (RowPartition& p : red.partitions)
        for (std::size_t& r : p.rows) r = new_row[r];
    return red;
}

Eigen::MatrixXd gather(const Eigen::MatrixXd& m, const std::vector<std::size_t>& rows) {
    const Eigen::Index k = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd out(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            out(i, j) = m(static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)]),
                          static_cast<Eigen::Index>(rows[static_cast<std::size_t>(j)]));
    return out;
}

template <class Real>
EngineResult run_impl(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                      const Eigen::MatrixXd& v0, const std::vector<double>& times,
                      const Reduction& red, const EngineOptions& opts, EngineResult res,
                      int digits_used) {
    res.digits_used = digits_used;
    res.dim_propagated = red.kept_rows.size();

    const Eigen::MatrixXd ar = gather(a, red.kept_rows);
    const Eigen::MatrixXd dr = gather(d, red.kept_rows);
    const Eigen::MatrixXd vr = gather(v0, red.kept_rows);

    const double a_scale =
        std::max(ar.cwiseAbs().rowwise().sum().maxCoeff(), 1e-300); // ||A||_inf
    Stepper<Real> stepper(ar.cast<Real>(), dr.cast<Real>(), a_scale);
    Mat<Real> v = vr.cast<Real>();

    double t_cur = 0.0;
    for (std::size_t idx = 0; idx < times.size(); ++idx) {
        const double t = times[idx];
        const double gap = t - t_cur;
        if (gap < -1e-12)
            throw config_error("evaluate_ln: sample times must be nondecreasing");
        if (gap > 1e-15) {
            const auto& m = stepper.maps_for(gap);
            v = (m.f * v * m.f.transpose() + m.q).eval();
            v = ((v + v.transpose()) / Real(2)).eval();
            t_cur = t;
        }

        EnginePoint pt;
        pt.t = t;
        const auto full_mods = symplectic_moduli(v);
        pt.min_symplectic = static_cast<double>(full_mods.front());
        pt.physical = pt.min_symplectic >= 0.5 - 1e-7;
        pt.min_cm_eig = std::numeric_limits<double>::quiet_NaN();
        if (opts.physicality_stride > 0 &&
            (idx % static_cast<std::size_t>(opts.physicality_stride) == 0 ||
             idx + 1 == times.size()))
            pt.min_cm_eig = min_cm_eigenvalue(v);
        pt.ln.reserve(red.partitions.size());
        for (const RowPartition& p : red.partitions)
            pt.ln.push_back(ln_of_partition(v, p, opts.ln_clamp));
        res.points.push_back(std::move(pt));
    }
    return res;
}

void check_inputs(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d, const Eigen::MatrixXd& v0,
                  const std::vector<RowPartition>& partitions) {
    if (a.rows() != a.cols() || a.rows() % 2 != 0)
        throw config_error("evaluate_ln: drift must be square with even dimension");
    if (d.rows() != a.rows() || d.cols() != a.cols() || v0.rows() != a.rows() ||
        v0.cols() != a.cols())
        throw config_error("evaluate_ln: dimension mismatch between A, D and V0");
    const std::size_t dim = static_cast<std::size_t>(a.rows());
    for (const RowPartition& p : partitions) {
        if (p.rows.size() != 2 * (p.n_side_a + p.n_side_b) || p.n_side_a == 0 || p.n_side_b == 0)
            throw config_error("evaluate_ln: malformed row partition");
        for (std::size_t r : p.rows)
            if (r >= dim) throw config_error("evaluate_ln: partition row out of range");
    }
}

} // namespace

int required_digits(double abscissa, double t_max) {
    const double log10_e = 0.4342944819032518;
    const double growth = 2.0 * std::max(abscissa, 0.0) * std::max(t_max, 0.0) * log10_e;
    return 21 + static_cast<int>(std::ceil(growth));
}

RowPartition to_row_partition(const Bipartition& p) {
    RowPartition rp;
    rp.rows = partition_rows(p);
    rp.n_side_a = p.side_a.size();
    rp.n_side_b = p.side_b.size();
    return rp;
}

EngineResult evaluate_ln(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                         const Eigen::MatrixXd& v0, const std::vector<double>& times,
                         const std::vector<RowPartition>& partitions,
                         const EngineOptions& opts) {
    check_inputs(a, d, v0, partitions);

    EngineResult res;
    const StabilityReport rep = stability(a);
    res.abscissa = rep.spectral_abscissa;
    res.stable = rep.stable;
    if (times.empty()) return res;

    const Reduction red = reduce_decoupled(a, d, v0, partitions, opts.drop_decoupled);
    const int need =
        opts.digits > 0 ? opts.digits : required_digits(rep.spectral_abscissa, times.back());

    // precision ladder; "<= 25" lets plain double absorb up to ~4 digits of
    // unstable growth while keeping ~9 significant digits in the result
    if (need <= (opts.digits > 0 ? 16 : 25))
        return run_impl<double>(a, d, v0, times, red, opts, std::move(res), 16);
    if (need <= 50) return run_impl<bf50>(a, d, v0, times, red, opts, std::move(res), 50);
    if (need <= 100) return run_impl<bf100>(a, d, v0, times, red, opts, std::move(res), 100);
    if (need <= 200) return run_impl<bf200>(a, d, v0, times, red, opts, std::move(res), 200);
    throw numerical_error(
        "evaluate_ln: required precision " + std::to_string(need) +
        " digits exceeds the 200-digit budget (abscissa " + std::to_string(rep.spectral_abscissa) +
        " rad/us over " + std::to_string(times.back()) + " us)");
}

namespace {

template <class Real>
std::vector<Eigen::MatrixXd> propagate_impl(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                                            const Eigen::MatrixXd& v0,
                                            const std::vector<double>& times, double abscissa) {
    const double a_scale = std::max(a.cwiseAbs().rowwise().sum().maxCoeff(), 1e-300);
    Stepper<Real> stepper(a.cast<Real>(), d.cast<Real>(), a_scale);
    Mat<Real> v = v0.cast<Real>();
    std::vector<Eigen::MatrixXd> out;
    out.reserve(times.size());
    double t_cur = 0.0;
    for (double t : times) {
        const double gap = t - t_cur;
        if (gap < -1e-12) throw config_error("propagate_exact: times must be nondecreasing");
        if (gap > 1e-15) {
            const auto& m = stepper.maps_for(gap);
            v = (m.f * v * m.f.transpose() + m.q).eval();
            v = ((v + v.transpose()) / Real(2)).eval();
            t_cur = t;
        }
        Eigen::MatrixXd snap(v.rows(), v.cols());
        for (Eigen::Index i = 0; i < v.rows(); ++i)
            for (Eigen::Index j = 0; j < v.cols(); ++j) snap(i, j) = static_cast<double>(v(i, j));
        if (!snap.allFinite())
            throw numerical_error(
                "propagate_exact: covariance overflowed double range at t = " +
                std::to_string(t) + " us (spectral abscissa " + std::to_string(abscissa) +
                " rad/us)");
        out.push_back(std::move(snap));
    }
    return out;
}

} // namespace

std::vector<Eigen::MatrixXd> propagate_exact(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                                             const Eigen::MatrixXd& v0,
                                             const std::vector<double>& times, int digits) {
    if (a.rows() != a.cols() || d.rows() != a.rows() || v0.rows() != a.rows())
        throw config_error("propagate_exact: dimension mismatch");
    const StabilityReport rep = stability(a);
    const double t_max = times.empty() ? 0.0 : times.back();
    const int need = digits > 0 ? digits : required_digits(rep.spectral_abscissa, t_max);
    if (need <= (digits > 0 ? 16 : 25))
        return propagate_impl<double>(a, d, v0, times, rep.spectral_abscissa);
    if (need <= 50) return propagate_impl<bf50>(a, d, v0, times, rep.spectral_abscissa);
    if (need <= 100) return propagate_impl<bf100>(a, d, v0, times, rep.spectral_abscissa);
    if (need <= 200) return propagate_impl<bf200>(a, d, v0, times, rep.spectral_abscissa);
    throw numerical_error("propagate_exact: precision budget exceeded");
}

} // namespace wgmm
