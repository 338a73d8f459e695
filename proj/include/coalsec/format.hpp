/// \file format.hpp
/// Deterministic text formatting for logs, CSVs, and manifests.

#ifndef COALSEC_FORMAT_HPP
#define COALSEC_FORMAT_HPP

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

namespace coalsec {

/// Shortest decimal form that parses back to the exact same double.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string join_doubles(const std::vector<double>& vs, char sep = ',') {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += sep;
        out += format_double(vs[i]);
    }
    return out;
}

inline std::string join_ints(const std::vector<int>& vs, char sep = ',') {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(vs[i]);
    }
    return out;
}

}  // namespace coalsec

#endif  // COALSEC_FORMAT_HPP
