#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wgmm/dynamics.hpp"
#include "wgmm/sweeps.hpp"

namespace wgmm {

// full round-trip precision, '.' decimal separator
std::string format_double(double v);

// RFC-4180 quoting: fields containing comma, quote or newline are quoted
std::string csv_field(const std::string& raw);

// header: axis columns, then t (trajectory runs only), partition, ln,
// stable, physical; one row per (grid point x sample x partition)
std::string to_csv(const SweepResult& r);

// run metadata sidecar (inputs, fingerprint, timings, per-point errors)
std::string to_manifest_json(const SweepResult& r);

// times + flattened (row-major) covariance snapshots + fingerprint
std::string trajectory_to_json(const Trajectory& tr);

// t plus the selected (row, col) entries of every snapshot
std::string trajectory_to_csv(const Trajectory& tr,
                              const std::vector<std::pair<int, int>>& entries);

void write_text_file(const std::string& path, const std::string& content);

} // namespace wgmm
