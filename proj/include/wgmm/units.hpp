#pragma once

namespace wgmm {

// Unit policy: all internal angular frequencies and decay rates are rad/us,
// time is us. Configuration files and command-line values use the cyclic
// units common in the cavity-magnonics literature (MHz, Hz, GHz for
// frequencies "f = omega/2pi", mK for temperatures); the conversion happens
// once at the boundary.

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// CODATA 2018 exact values.
inline constexpr double hbar_si = 1.054571817e-34; // J s
inline constexpr double k_b_si = 1.380649e-23;     // J / K

// cyclic MHz -> angular rad/us (1 MHz = 1 cycle/us)
inline constexpr double mhz_to_rad_us(double f_mhz) { return two_pi * f_mhz; }

// cyclic Hz -> angular rad/us
inline constexpr double hz_to_rad_us(double f_hz) { return two_pi * f_hz * 1e-6; }

// angular rad/us -> cyclic MHz
inline constexpr double rad_us_to_mhz(double w) { return w / two_pi; }

inline constexpr double mk_to_k(double t_mk) { return t_mk * 1e-3; }

} // namespace wgmm
