#include "wgmm/fingerprint.hpp"

#include <cstdio>

namespace wgmm {

std::string Fingerprint::hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state));
    return buf;
}

} // namespace wgmm
