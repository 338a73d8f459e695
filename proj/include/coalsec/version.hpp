#ifndef COALSEC_VERSION_HPP
#define COALSEC_VERSION_HPP

namespace coalsec {
inline constexpr const char* kVersion = "1.0.0";
}

#endif  // COALSEC_VERSION_HPP
