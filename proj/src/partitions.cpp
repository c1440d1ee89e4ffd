#include "wgmm/partitions.hpp"

#include <algorithm>
#include <cctype>

#include "wgmm/errors.hpp"
#include "wgmm/scenario.hpp"

namespace wgmm {

namespace {

ModeLabel parse_label(const std::string& token, std::size_t n_nodes) {
    if (token.size() < 2 || (token[0] != 'm' && token[0] != 'b'))
        throw config_error("partition: bad mode label '" + token +
                           "' (expected m<j> or b<j>, 1-based j)");
    for (std::size_t i = 1; i < token.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(token[i])))
            throw config_error("partition: bad mode index in '" + token + "'");
    const std::size_t node = std::stoul(token.substr(1));
    if (node < 1 || node > n_nodes)
        throw config_error("partition: node index in '" + token + "' outside 1.." +
                           std::to_string(n_nodes));
    return {token[0] == 'm' ? ModeKind::magnon : ModeKind::phonon, node};
}

std::vector<ModeLabel> parse_side(const std::string& text, std::size_t n_nodes) {
    std::vector<ModeLabel> side;
    std::string token;
    auto flush = [&] {
        if (token.empty()) throw config_error("partition: empty mode label in '" + text + "'");
        side.push_back(parse_label(token, n_nodes));
        token.clear();
    };
    for (char c : text) {
        if (c == ',') {
            flush();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            token += c;
        }
    }
    flush();
    return side;
}

} // namespace

std::vector<ModeLabel> Bipartition::modes() const {
    std::vector<ModeLabel> all = side_a;
    all.insert(all.end(), side_b.begin(), side_b.end());
    return all;
}

Bipartition parse_partition(const std::string& text, std::size_t n_nodes) {
    const auto bar = text.find('|');
    if (bar == std::string::npos)
        throw config_error("partition: missing '|' side separator in '" + text + "'");
    if (text.find('|', bar + 1) != std::string::npos)
        throw config_error("partition: more than one '|' in '" + text + "'");
    Bipartition p;
    p.side_a = parse_side(text.substr(0, bar), n_nodes);
    p.side_b = parse_side(text.substr(bar + 1), n_nodes);
    validate_partition(p, n_nodes);
    return p;
}

std::string format_label(const ModeLabel& m) {
    return (m.kind == ModeKind::magnon ? "m" : "b") + std::to_string(m.node);
}

std::string format_partition(const Bipartition& p) {
    std::string out;
    auto join = [&](const std::vector<ModeLabel>& side) {
        for (std::size_t i = 0; i < side.size(); ++i) {
            if (i) out += ',';
            out += format_label(side[i]);
        }
    };
    join(p.side_a);
    out += '|';
    join(p.side_b);
    return out;
}

void validate_partition(const Bipartition& p, std::size_t n_nodes) {
    if (p.side_a.empty() || p.side_b.empty())
        throw config_error("partition: both sides must be nonempty");
    const auto all = p.modes();
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (all[i].node < 1 || all[i].node > n_nodes)
            throw config_error("partition: mode " + format_label(all[i]) + " outside 1.." +
                               std::to_string(n_nodes));
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (all[i] == all[j])
                throw config_error("partition: mode " + format_label(all[i]) +
                                   " appears more than once");
    }
}

std::pair<std::size_t, std::size_t> mode_rows(const ModeLabel& m) {
    const std::size_t j = m.node - 1;
    if (m.kind == ModeKind::magnon) return {row_xm(j), row_ym(j)};
    return {row_xb(j), row_yb(j)};
}

std::vector<std::size_t> partition_rows(const Bipartition& p) {
    std::vector<std::size_t> rows;
    for (const ModeLabel& m : p.modes()) {
        const auto [x, y] = mode_rows(m);
        rows.push_back(x);
        rows.push_back(y);
    }
    return rows;
}

} // namespace wgmm
