#include "hpfnav/world.hpp"

#include <algorithm>
#include <cmath>

namespace hpfnav {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Smallest positive ray parameter hitting the circle, +inf if none.
double ray_circle(Vec2 origin, Vec2 dir, const Circle& c) {
    Vec2 oc = origin - c.center;
    double k = oc.dot(dir);
    double q = oc.dot(oc) - c.radius * c.radius;
    double det = k * k - q;
    if (det < 0.0) return kInf;
    double s = std::sqrt(det);
    double t0 = -k - s;
    if (t0 > 0.0) return t0;
    double t1 = -k + s;
    return t1 > 0.0 ? t1 : kInf;
}

// Smallest positive ray parameter hitting the segment, +inf if none.
double ray_segment(Vec2 origin, Vec2 dir, const Segment& seg) {
    Vec2 e = seg.b - seg.a;
    double denom = dir.cross(e);
    if (std::fabs(denom) < 1e-15) return kInf;  // parallel
    Vec2 ao = seg.a - origin;
    double t = ao.cross(e) / denom;
    double s = ao.cross(dir) / denom;
    if (t <= 0.0 || s < 0.0 || s > 1.0) return kInf;
    return t;
}

double point_segment_distance(Vec2 p, const Segment& seg) {
    Vec2 e = seg.b - seg.a;
    double len2 = e.dot(e);
    if (len2 <= 0.0) return (p - seg.a).norm();
    double s = std::clamp((p - seg.a).dot(e) / len2, 0.0, 1.0);
    return (p - (seg.a + e * s)).norm();
}

}  // namespace

double World::raycast(Vec2 origin, Vec2 dir) const {
    double best = kInf;
    for (const auto& c : circles) best = std::min(best, ray_circle(origin, dir, c));
    for (const auto& s : segments)
        best = std::min(best, ray_segment(origin, dir, s));
    if (bounds_solid && bounds_width > 0.0) {
        double h = 0.5 * bounds_width;
        Vec2 c = bounds_center;
        const Segment walls[4] = {
            {{c.x - h, c.y - h}, {c.x + h, c.y - h}},
            {{c.x + h, c.y - h}, {c.x + h, c.y + h}},
            {{c.x + h, c.y + h}, {c.x - h, c.y + h}},
            {{c.x - h, c.y + h}, {c.x - h, c.y - h}},
        };
        for (const auto& w : walls) best = std::min(best, ray_segment(origin, dir, w));
    }
    return best;
}

double World::surface_distance(Vec2 p) const {
    double best = kInf;
    for (const auto& c : circles)
        best = std::min(best, (p - c.center).norm() - c.radius);
    for (const auto& s : segments)
        best = std::min(best, point_segment_distance(p, s));
    if (bounds_solid && bounds_width > 0.0) {
        double h = 0.5 * bounds_width;
        double dx = h - std::fabs(p.x - bounds_center.x);
        double dy = h - std::fabs(p.y - bounds_center.y);
        best = std::min(best, std::min(dx, dy));
    }
    return best;
}

double raycast_ultrasonic(const World& world, const Pose& true_pose,
                          const VehicleParams& vehicle,
                          const SensorModel& model) {
    Vec2 dir = true_pose.heading();
    Vec2 origin = true_pose.position() + dir * vehicle.body_radius;
    double hit = world.raycast(origin, dir);
    return std::min(hit, model.s_max);
}

SensorReading degrade(double ideal, const SensorModel& model,
                      double omega_true, double t, Rng& rng) {
    SensorReading out;
    out.t = t;
    if (rng.uniform() < model.p_drop) {
        out.dropped = true;
        out.value = 0.0;
        return out;
    }
    if (std::fabs(omega_true) > model.omega_spur &&
        rng.uniform() < model.p_spur) {
        out.value = rng.uniform(model.spur_min, model.spur_max);
        out.saturated = false;
        return out;
    }
    if (ideal >= model.s_max) {
        // saturation means no echo came back; there is nothing to perturb
        out.value = model.s_max;
        out.saturated = true;
        return out;
    }
    double v = ideal;
    if (model.sigma > 0.0) v += model.sigma * rng.normal();
    v = std::clamp(v, 0.02, model.s_max);
    out.value = v;
    out.saturated = v >= model.s_max;
    return out;
}

double min_clearance(const World& world, const Pose& true_pose,
                     const VehicleParams& vehicle) {
    return world.surface_distance(true_pose.position()) - vehicle.body_radius;
}

}  // namespace hpfnav
