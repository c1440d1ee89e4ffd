#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wgmm/physics.hpp"
#include "wgmm/scenario.hpp"

namespace wgmm {

// Minimal TOML-style configuration: [section] headers, key = value lines,
// '#' comments; values are numbers, booleans, double-quoted strings, or
// single-line arrays of numbers/strings.
using ConfigValue = std::variant<double, bool, std::string, std::vector<double>,
                                 std::vector<std::string>>;

struct ConfigDocument {
    std::map<std::string, std::map<std::string, ConfigValue>> sections;

    bool has(const std::string& section, const std::string& key) const;
    const ConfigValue& at(const std::string& section, const std::string& key) const;
};

ConfigDocument parse_config(const std::string& text);
ConfigDocument parse_config_file(const std::string& path);

// Reads the [scenario] section (cyclic units: *_over_2pi_mhz, kappa_b_hz,
// temperature_mk, phi_adjacent_rad) into an internal Scenario (rad/us).
// Scalars broadcast to per-node lists; phases reduce mod 2pi. Thermal
// occupations come either from temperature_mk (magnon frequency
// epsilon_over_2pi_ghz + delta_1, default epsilon 10 GHz) or from explicit
// n_bar_m / n_bar_b. When kappa / phi are absent and [physical] provides a
// waveguide block, the radiative rates and traveling phases are derived from
// it.
Scenario build_scenario(const ConfigDocument& doc);

// Optional [physical] drive/waveguide inputs (for classical amplitudes and
// waveguide-parameter derivation).
struct PhysicalSection {
    std::optional<DriveInputs> drive;
    std::optional<WaveguideInputs> waveguide;
};

PhysicalSection parse_physical(const ConfigDocument& doc, std::size_t n_nodes);

std::uint64_t scenario_fingerprint(const Scenario& s);

} // namespace wgmm
