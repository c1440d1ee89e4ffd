#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace wgmm {

enum class ModeKind { magnon, phonon };

// One bosonic mode of the network, identified the way the captions do:
// m<j> = magnon of node j, b<j> = phonon of node j, j 1-based.
struct ModeLabel {
    ModeKind kind = ModeKind::magnon;
    std::size_t node = 1;
    bool operator==(const ModeLabel& o) const { return kind == o.kind && node == o.node; }
};

struct Bipartition {
    std::vector<ModeLabel> side_a, side_b;
    // all partition modes, side_a first, each side in listed order
    std::vector<ModeLabel> modes() const;
};

// Parses "m2|b1", "b1|m2,m3,m4", "b1,b4|m2,m3": sides separated by '|',
// modes by ','; throws config_error on syntax errors, out-of-range nodes,
// overlapping or empty sides.
Bipartition parse_partition(const std::string& text, std::size_t n_nodes);

std::string format_label(const ModeLabel& m);
std::string format_partition(const Bipartition& p);

// checks the invariants without parsing (sides disjoint, nonempty, in range)
void validate_partition(const Bipartition& p, std::size_t n_nodes);

// (x, y) quadrature row indices of a mode in the canonical 4N layout
std::pair<std::size_t, std::size_t> mode_rows(const ModeLabel& m);

// interleaved x,y rows of all partition modes, side_a first
std::vector<std::size_t> partition_rows(const Bipartition& p);

} // namespace wgmm
