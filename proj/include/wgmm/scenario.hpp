#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace wgmm {

// A linearized network of N YIG nodes coupled through a common microwave
// waveguide. Node j carries one magnon mode (detuning delta[j], radiative
// decay kappa[j] into the guide, intrinsic decay gamma[j], effective
// magnomechanical coupling g[j]) and one phonon mode (frequency omega_b,
// decay kappa_b, shared by all nodes). The waveguide mediates coherent and
// dissipative magnon-magnon coupling controlled by the traveling phase
// accumulated between nodes.
//
// All rates/frequencies in rad/us; phases in radians, stored in [0, 2*pi).
struct Scenario {
    std::size_t n_nodes = 0;
    std::vector<double> delta; // magnon-drive detunings, length N
    std::vector<double> g;     // driving-enhanced magnomechanical couplings, length N
    std::vector<double> kappa; // radiative magnon decays, length N
    std::vector<double> gamma; // intrinsic magnon decays, length N
    double omega_b = 0.0;      // mechanical frequency, shared
    double kappa_b = 0.0;      // mechanical decay, shared
    std::vector<double> phi;   // adjacent traveling phases phi_{j,j+1}, length N-1
    double n_bar_m = 0.0;      // magnon thermal occupation
    double n_bar_b = 0.0;      // phonon thermal occupation
    std::string name;          // optional tag used in manifests

    std::size_t dim() const { return 4 * n_nodes; }

    // total magnon linewidth kappa~_j = kappa_j + gamma_j (0-based j)
    double kappa_tilde(std::size_t j) const { return kappa[j] + gamma[j]; }

    // pairwise traveling phase phi_{jl} (0-based j, l): cumulative sum of the
    // adjacent phases between the two nodes, reduced mod 2*pi; symmetric in
    // (j, l) and zero for j == l.
    double pair_phase(std::size_t j, std::size_t l) const;

    // wraps adjacent phases into [0, 2*pi)
    void normalize_phases();

    // throws config_error naming the offending field
    void validate() const;
};

// Canonical quadrature ordering: node j (0-based) occupies rows
// [X_mj, Y_mj, X_bj, Y_bj] = 4j .. 4j+3 of every 4N x 4N matrix.
inline std::size_t row_xm(std::size_t j) { return 4 * j; }
inline std::size_t row_ym(std::size_t j) { return 4 * j + 1; }
inline std::size_t row_xb(std::size_t j) { return 4 * j + 2; }
inline std::size_t row_yb(std::size_t j) { return 4 * j + 3; }

} // namespace wgmm
