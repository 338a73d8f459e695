/// \file geometry.hpp

#ifndef COALSEC_GEOMETRY_HPP
#define COALSEC_GEOMETRY_HPP

#include <cmath>

namespace coalsec {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

inline double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace coalsec

#endif  // COALSEC_GEOMETRY_HPP
