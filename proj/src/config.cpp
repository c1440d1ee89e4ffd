#include "wgmm/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "wgmm/errors.hpp"
#include "wgmm/fingerprint.hpp"
#include "wgmm/units.hpp"

namespace wgmm {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw config_error("config line " + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string& text, int line) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') fail(line, "cannot parse number '" + text + "'");
    return v;
}

ConfigValue parse_scalar(const std::string& text, int line) {
    if (text == "true") return true;
    if (text == "false") return false;
    if (text.size() >= 2 && text.front() == '"' && text.back() == '"')
        return text.substr(1, text.size() - 2);
    return parse_number(text, line);
}

ConfigValue parse_array(const std::string& inner, int line) {
    std::vector<std::string> tokens;
    std::string cur;
    bool quoted = false;
    for (char c : inner) {
        if (c == '"') quoted = !quoted;
        if (c == ',' && !quoted) {
            tokens.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) tokens.push_back(trim(cur));
    if (quoted) fail(line, "unterminated string in array");

    bool strings = !tokens.empty() && tokens.front().size() >= 1 && tokens.front().front() == '"';
    if (strings) {
        std::vector<std::string> out;
        for (const auto& t : tokens) {
            if (t.size() < 2 || t.front() != '"' || t.back() != '"')
                fail(line, "mixed array element types");
            out.push_back(t.substr(1, t.size() - 2));
        }
        return out;
    }
    std::vector<double> out;
    for (const auto& t : tokens) out.push_back(parse_number(t, line));
    return out;
}

std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

// ---- [scenario] interpretation -------------------------------------------

struct ScenarioReader {
    const ConfigDocument& doc;
    std::set<std::string> consumed;

    bool has(const std::string& key) const { return doc.has("scenario", key); }

    const ConfigValue& take(const std::string& key) {
        consumed.insert(key);
        return doc.at("scenario", key);
    }

    double number(const std::string& key) {
        const ConfigValue& v = take(key);
        if (const double* d = std::get_if<double>(&v)) return *d;
        throw config_error("scenario." + key + " must be a number");
    }

    // scalar broadcast or exact-length list
    std::vector<double> list(const std::string& key, std::size_t len) {
        const ConfigValue& v = take(key);
        if (const double* d = std::get_if<double>(&v)) return std::vector<double>(len, *d);
        if (const auto* a = std::get_if<std::vector<double>>(&v)) {
            if (a->size() != len)
                throw config_error("scenario." + key + " has " + std::to_string(a->size()) +
                                   " entries, expected " + std::to_string(len));
            return *a;
        }
        throw config_error("scenario." + key + " must be a number or an array of numbers");
    }
};

} // namespace

bool ConfigDocument::has(const std::string& section, const std::string& key) const {
    const auto s = sections.find(section);
    return s != sections.end() && s->second.count(key) > 0;
}

const ConfigValue& ConfigDocument::at(const std::string& section, const std::string& key) const {
    const auto s = sections.find(section);
    if (s == sections.end()) throw config_error("missing [" + section + "] section");
    const auto k = s->second.find(key);
    if (k == s->second.end())
        throw config_error("missing key '" + key + "' in [" + section + "]");
    return k->second;
}

ConfigDocument parse_config(const std::string& text) {
    ConfigDocument doc;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!valid_key(section)) fail(line_no, "bad section name '" + section + "'");
            doc.sections[section]; // created even if empty
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!valid_key(key)) fail(line_no, "bad key '" + key + "'");
        if (section.empty()) fail(line_no, "key '" + key + "' outside any [section]");
        if (value.empty()) fail(line_no, "empty value for '" + key + "'");
        if (doc.sections[section].count(key)) fail(line_no, "duplicate key '" + key + "'");
        if (value.front() == '[') {
            if (value.back() != ']') fail(line_no, "unterminated array (arrays are single-line)");
            doc.sections[section][key] = parse_array(value.substr(1, value.size() - 2), line_no);
        } else {
            doc.sections[section][key] = parse_scalar(value, line_no);
        }
    }
    return doc;
}

ConfigDocument parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

Scenario build_scenario(const ConfigDocument& doc) {
    if (!doc.sections.count("scenario")) throw config_error("missing [scenario] section");
    ScenarioReader rd{doc, {}};

    const double n_raw = rd.number("n_nodes");
    if (n_raw < 1.0 || n_raw != std::floor(n_raw))
        throw config_error("scenario.n_nodes must be a positive integer");
    const auto n = static_cast<std::size_t>(n_raw);

    Scenario s;
    s.n_nodes = n;
    if (rd.has("name")) {
        const ConfigValue& v = rd.take("name");
        if (const auto* str = std::get_if<std::string>(&v)) s.name = *str;
        else throw config_error("scenario.name must be a string");
    }

    auto to_rad_us = [](std::vector<double> v) {
        for (double& x : v) x = mhz_to_rad_us(x);
        return v;
    };
    s.delta = to_rad_us(rd.list("delta_over_2pi_mhz", n));
    s.g = to_rad_us(rd.list("g_over_2pi_mhz", n));
    s.gamma = to_rad_us(rd.list("gamma_over_2pi_mhz", n));
    s.omega_b = mhz_to_rad_us(rd.number("omega_b_over_2pi_mhz"));
    s.kappa_b = hz_to_rad_us(rd.number("kappa_b_hz"));

    const PhysicalSection phys = parse_physical(doc, n);
    if (rd.has("kappa_over_2pi_mhz")) {
        s.kappa = to_rad_us(rd.list("kappa_over_2pi_mhz", n));
    } else if (phys.waveguide) {
        s.kappa = derive_waveguide_params(*phys.waveguide).kappa;
    } else {
        throw config_error(
            "missing key 'kappa_over_2pi_mhz' in [scenario] (no [physical] waveguide block "
            "to derive it from)");
    }
    if (n == 1 && rd.has("phi_adjacent_rad"))
        throw config_error("scenario.phi_adjacent_rad requires n_nodes > 1");
    if (n > 1 && rd.has("phi_adjacent_rad")) {
        s.phi = rd.list("phi_adjacent_rad", n - 1);
    } else if (n > 1 && phys.waveguide) {
        s.phi = derive_waveguide_params(*phys.waveguide).phi_adjacent;
    } else if (n > 1) {
        throw config_error(
            "missing key 'phi_adjacent_rad' in [scenario] (no [physical] waveguide block "
            "to derive it from)");
    }

    const bool has_temp = rd.has("temperature_mk");
    const bool has_nbar = rd.has("n_bar_m") || rd.has("n_bar_b");
    if (has_temp && has_nbar)
        throw config_error("scenario: give either temperature_mk or explicit n_bar_m/n_bar_b, "
                           "not both");
    if (has_temp) {
        const double t_k = mk_to_k(rd.number("temperature_mk"));
        const double eps_ghz = rd.has("epsilon_over_2pi_ghz")
                                   ? rd.number("epsilon_over_2pi_ghz")
                                   : 10.0;
        // magnon frequency omega_1 = epsilon + delta_1 (cyclic Hz)
        const double f_m_hz = eps_ghz * 1e9 + rad_us_to_mhz(s.delta[0]) * 1e6;
        const double f_b_hz = rad_us_to_mhz(s.omega_b) * 1e6;
        if (f_m_hz <= 0.0)
            throw config_error("scenario: epsilon + delta_1 must be positive to derive n_bar_m");
        s.n_bar_m = thermal_occupation(f_m_hz, t_k);
        s.n_bar_b = thermal_occupation(f_b_hz, t_k);
    } else if (rd.has("n_bar_m") && rd.has("n_bar_b")) {
        s.n_bar_m = rd.number("n_bar_m");
        s.n_bar_b = rd.number("n_bar_b");
    } else {
        throw config_error("scenario: temperature_mk or both n_bar_m and n_bar_b required");
    }
    if (rd.has("epsilon_over_2pi_ghz")) rd.take("epsilon_over_2pi_ghz"); // consumed either way

    for (const auto& [key, value] : doc.sections.at("scenario")) {
        (void)value;
        if (!rd.consumed.count(key))
            throw config_error("unknown key '" + key + "' in [scenario]");
    }

    s.normalize_phases();
    s.validate();
    return s;
}

PhysicalSection parse_physical(const ConfigDocument& doc, std::size_t n_nodes) {
    PhysicalSection out;
    const auto sec = doc.sections.find("physical");
    if (sec == doc.sections.end()) return out;

    std::set<std::string> consumed;
    auto has = [&](const std::string& k) { return sec->second.count(k) > 0; };
    auto number = [&](const std::string& k) {
        consumed.insert(k);
        const ConfigValue& v = sec->second.at(k);
        if (const double* d = std::get_if<double>(&v)) return *d;
        throw config_error("physical." + k + " must be a number");
    };
    auto list = [&](const std::string& k, std::size_t len) {
        consumed.insert(k);
        const ConfigValue& v = sec->second.at(k);
        if (const double* d = std::get_if<double>(&v)) return std::vector<double>(len, *d);
        if (const auto* a = std::get_if<std::vector<double>>(&v)) {
            if (a->size() != len)
                throw config_error("physical." + k + " has " + std::to_string(a->size()) +
                                   " entries, expected " + std::to_string(len));
            return *a;
        }
        throw config_error("physical." + k + " must be a number or an array of numbers");
    };

    if (has("rabi_hz") || has("b_field_tesla")) {
        DriveInputs drive;
        if (has("rabi_hz") && has("b_field_tesla"))
            throw config_error("physical: give rabi_hz or b_field_tesla, not both");
        if (has("rabi_hz")) {
            drive.rabi_hz = list("rabi_hz", n_nodes);
        } else {
            const double gyro = has("gyro_hz_per_t") ? number("gyro_hz_per_t") : 28e9;
            const double spins = number("spin_count");
            const auto fields = list("b_field_tesla", n_nodes);
            for (double b : fields) drive.rabi_hz.push_back(rabi_frequency(b, spins, gyro));
        }
        drive.bare_coupling_hz =
            has("bare_coupling_hz") ? list("bare_coupling_hz", n_nodes)
                                    : std::vector<double>(n_nodes, 0.0);
        out.drive = std::move(drive);
    }

    if (has("waveguide_coupling")) {
        WaveguideInputs wg;
        wg.coupling = list("waveguide_coupling", n_nodes);
        wg.v_g = number("waveguide_speed_m_per_us");
        wg.position = list("positions_m", n_nodes);
        wg.omega_m = mhz_to_rad_us(number("magnon_freq_ghz") * 1e3);
        out.waveguide = std::move(wg);
    }

    for (const auto& [key, value] : sec->second) {
        (void)value;
        if (!consumed.count(key))
            throw config_error("unknown key '" + key + "' in [physical]");
    }
    return out;
}

std::uint64_t scenario_fingerprint(const Scenario& s) {
    Fingerprint fp;
    fp.add(static_cast<std::uint64_t>(s.n_nodes));
    fp.add(s.delta);
    fp.add(s.g);
    fp.add(s.kappa);
    fp.add(s.gamma);
    fp.add(s.omega_b);
    fp.add(s.kappa_b);
    fp.add(s.phi);
    fp.add(s.n_bar_m);
    fp.add(s.n_bar_b);
    return fp.value();
}

} // namespace wgmm
