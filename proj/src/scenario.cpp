#include "wgmm/scenario.hpp"

#include <cmath>

#include "wgmm/errors.hpp"
#include "wgmm/units.hpp"

namespace wgmm {

namespace {

// reduce an angle into [0, 2*pi); tolerant of negative inputs
double wrap_phase(double phi) {
    double w = std::fmod(phi, two_pi);
    if (w < 0.0) w += two_pi;
    // fmod can return exactly two_pi after the correction when phi is a tiny
    // negative number
    if (w >= two_pi) w -= two_pi;
    return w;
}

} // namespace

double Scenario::pair_phase(std::size_t j, std::size_t l) const {
    if (j == l) return 0.0;
    if (j > l) return pair_phase(l, j);
    double sum = 0.0;
    for (std::size_t k = j; k < l; ++k) sum += phi[k];
    return wrap_phase(sum);
}

void Scenario::normalize_phases() {
    for (double& p : phi) p = wrap_phase(p);
}

void Scenario::validate() const {
    if (n_nodes < 1) throw config_error("scenario: n_nodes must be >= 1");
    auto check_len = [&](const std::vector<double>& v, const char* field) {
        if (v.size() != n_nodes)
            throw config_error(std::string("scenario: ") + field + " has length " +
                               std::to_string(v.size()) + ", expected n_nodes = " +
                               std::to_string(n_nodes));
    };
    check_len(delta, "delta");
    check_len(g, "g");
    check_len(kappa, "kappa");
    check_len(gamma, "gamma");
    if (phi.size() != n_nodes - 1)
        throw config_error("scenario: phi has length " + std::to_string(phi.size()) +
                           ", expected n_nodes - 1 = " + std::to_string(n_nodes - 1));
    for (std::size_t j = 0; j < n_nodes; ++j) {
        if (kappa[j] < 0.0)
            throw config_error("scenario: kappa[" + std::to_string(j + 1) + "] is negative");
        if (gamma[j] < 0.0)
            throw config_error("scenario: gamma[" + std::to_string(j + 1) + "] is negative");
        if (!std::isfinite(delta[j]) || !std::isfinite(g[j]))
            throw config_error("scenario: non-finite delta or g at node " + std::to_string(j + 1));
    }
    if (omega_b <= 0.0) throw config_error("scenario: omega_b must be positive");
    if (kappa_b < 0.0) throw config_error("scenario: kappa_b is negative");
    if (n_bar_m < 0.0) throw config_error("scenario: n_bar_m is negative");
    if (n_bar_b < 0.0) throw config_error("scenario: n_bar_b is negative");
    for (std::size_t k = 0; k + 1 < n_nodes; ++k) {
        if (phi[k] < 0.0 || phi[k] >= two_pi)
            throw config_error("scenario: phi[" + std::to_string(k + 1) +
                               "] not reduced into [0, 2pi); call normalize_phases()");
    }
}

} // namespace wgmm
