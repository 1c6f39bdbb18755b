#pragma once

#include <cstdio>
#include <string>

namespace relmass::csv {

// 17 significant digits round-trips any double exactly; '.' decimal point
// and '\n' line endings regardless of locale.
inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace relmass::csv
