#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace risopt {

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Planar position in meters.
struct Point2D {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2D&, const Point2D&) = default;
};

inline bool is_finite(const Point2D& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline double distance(const Point2D& a, const Point2D& b) { return std::hypot(b.x - a.x, b.y - a.y); }

/// Angle of the vector from -> to, counter-clockwise from +x, in (-pi, pi].
inline double bearing(const Point2D& from, const Point2D& to) {
    const double dx = to.x - from.x;
    const double dy = to.y - from.y;
    if (dx == 0.0 && dy == 0.0) {
        throw GeometryError("bearing: coincident points (" + std::to_string(from.x) + ", " +
                            std::to_string(from.y) + ")");
    }
    const double angle = std::atan2(dy, dx);
    // atan2 returns -pi for (-x, -0.0); fold onto the closed end of the interval.
    return angle == -std::numbers::pi ? std::numbers::pi : angle;
}

/// Wraps an angle onto (-pi, pi].
inline double wrap_angle(double angle) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double wrapped = std::remainder(angle, two_pi);
    if (wrapped <= -std::numbers::pi) wrapped += two_pi;
    return wrapped;
}

}  // namespace risopt
