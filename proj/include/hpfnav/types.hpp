#pragma once

#include <cmath>

namespace hpfnav {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    bool operator==(const Vec2&) const = default;
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
};

/// Planar pose; theta is kept wrapped to (-pi, pi].
struct Pose {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;

    Vec2 position() const { return {x, y}; }
    bool operator==(const Pose&) const = default;
    Vec2 heading() const { return {std::cos(theta), std::sin(theta)}; }
};

/// Zero-based grid cell index; i follows world x, j follows world y.
struct CellIndex {
    int i = 0;
    int j = 0;
    bool operator==(const CellIndex&) const = default;
};

/// Wrap an angle to (-pi, pi].
inline double wrap_angle(double a) {
    double r = std::remainder(a, 2.0 * M_PI);
    if (r <= -M_PI) r += 2.0 * M_PI;
    return r;
}

}  // namespace hpfnav
