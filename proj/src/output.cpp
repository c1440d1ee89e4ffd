#include "wgmm/output.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wgmm/errors.hpp"

namespace wgmm {

std::string format_double(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break; // shortest form that round-trips
    }
    return buf;
}

std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
    std::string out = "\"";
    for (char c : raw) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string to_csv(const SweepResult& r) {
    std::ostringstream os;
    for (const std::string& name : r.axis_names) os << csv_field(name) << ',';
    if (r.has_time) os << "t,";
    os << "partition,ln,stable,physical\n";
    for (const SweepRow& row : r.rows) {
        for (double v : row.axis_values) os << format_double(v) << ',';
        if (r.has_time) os << format_double(row.t) << ',';
        os << csv_field(row.partition) << ',' << format_double(row.ln) << ','
           << (row.stable ? "true" : "false") << ',' << (row.physical ? "true" : "false")
           << '\n';
    }
    return os.str();
}

namespace {

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

} // namespace

std::string to_manifest_json(const SweepResult& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["description"] = r.description;
    j["evaluation"] = r.eval_label;
    j["axes"] = r.axis_names;
    j["columns"] = [&] {
        std::vector<std::string> cols = r.axis_names;
        if (r.has_time) cols.push_back("t");
        cols.insert(cols.end(), {"partition", "ln", "stable", "physical"});
        return cols;
    }();
    j["rows"] = r.rows.size();
    j["workers"] = r.workers;
    j["max_digits"] = r.max_digits;
    j["wall_seconds"] = r.wall_seconds;
    j["fingerprint"] = hex64(r.fingerprint);
    j["errors"] = r.errors;
    return j.dump(2) + "\n";
}

std::string trajectory_to_json(const Trajectory& tr) {
    nlohmann::json j;
    j["times"] = tr.times;
    nlohmann::json snaps = nlohmann::json::array();
    for (const Eigen::MatrixXd& v : tr.snapshots) {
        std::vector<double> flat;
        flat.reserve(static_cast<std::size_t>(v.size()));
        for (Eigen::Index i = 0; i < v.rows(); ++i)
            for (Eigen::Index k = 0; k < v.cols(); ++k) flat.push_back(v(i, k));
        snaps.push_back(std::move(flat));
    }
    j["dim"] = tr.snapshots.empty() ? 0 : tr.snapshots.front().rows();
    j["snapshots"] = std::move(snaps);
    j["fingerprint"] = hex64(tr.fingerprint);
    return j.dump() + "\n";
}

std::string trajectory_to_csv(const Trajectory& tr,
                              const std::vector<std::pair<int, int>>& entries) {
    std::ostringstream os;
    os << 't';
    for (const auto& [row, col] : entries) os << ",V[" << row << "][" << col << "]";
    os << '\n';
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        os << format_double(tr.times[i]);
        for (const auto& [row, col] : entries)
            os << ',' << format_double(tr.snapshots[i](row, col));
        os << '\n';
    }
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

} // namespace wgmm
