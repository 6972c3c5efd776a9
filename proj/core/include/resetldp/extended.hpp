#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

// Extended reals are plain doubles; +/-inf are first-class values that must
// survive CSV and JSON round trips as the literals "inf" / "-inf".

namespace resetldp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_finite(double x) { return std::isfinite(x); }

inline std::string format_extended(double x) {
    if (std::isnan(x)) return "nan";
    if (x == kInf) return "inf";
    if (x == -kInf) return "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline double parse_extended(const std::string& s) {
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad extended-real literal: " + s);
    return v;
}

}  // namespace resetldp
