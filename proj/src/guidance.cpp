#include "hpfnav/guidance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace hpfnav {

namespace {

// Cell-centered gradient component along one axis. Central difference when
// both axis neighbors are usable, one-sided toward the usable side when the
// other is unsafe, zero when neither side is usable.
double axis_gradient(const PotentialField& f, const SafetyGrid& g, int i,
                     int j, int di, int dj) {
    int n = g.size();
    double delta = g.cell_size();
    int ip = i + di, jp = j + dj;
    int im = i - di, jm = j - dj;
    bool plus = ip >= 0 && jp >= 0 && ip < n && jp < n && g.usable(ip, jp);
    bool minus = im >= 0 && jm >= 0 && im < n && jm < n && g.usable(im, jm);
    if (plus && minus)
        return (f.value(ip, jp) - f.value(im, jm)) / (2.0 * delta);
    if (plus) return (f.value(ip, jp) - f.value(i, j)) / delta;
    if (minus) return (f.value(i, j) - f.value(im, jm)) / delta;
    return 0.0;
}

}  // namespace

GuidanceVector guidance_at(const PotentialField& field, const SafetyGrid& grid,
                           double x, double y) {
    int n = grid.size();
    double d = grid.cell_size();
    double half = 0.5 * grid.domain_width();
    x = std::clamp(x, -half, half);
    y = std::clamp(y, -half, half);

    // continuous cell coordinates: cell i's center sits at u = i
    double u = (x + half) / d - 0.5;
    double w = (y + half) / d - 0.5;
    int i0 = std::clamp(static_cast<int>(std::floor(u)), 0, n - 2);
    int j0 = std::clamp(static_cast<int>(std::floor(w)), 0, n - 2);
    double fu = std::clamp(u - i0, 0.0, 1.0);
    double fw = std::clamp(w - j0, 0.0, 1.0);

    double gx = 0.0, gy = 0.0;
    const double wts[4] = {(1 - fu) * (1 - fw), fu * (1 - fw), (1 - fu) * fw,
                           fu * fw};
    const int off[4][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    for (int k = 0; k < 4; ++k) {
        int ci = i0 + off[k][0];
        int cj = j0 + off[k][1];
        gx += wts[k] * axis_gradient(field, grid, ci, cj, 1, 0);
        gy += wts[k] * axis_gradient(field, grid, ci, cj, 0, 1);
    }

    double mag = std::hypot(gx, gy);
    if (mag < 1e-30) {
        // far-field underflow: fall back to the straight line to the target
        Vec2 t = grid.cell_center(field.target());
        double tx = t.x - x, ty = t.y - y;
        double tm = std::hypot(tx, ty);
        if (tm < 1e-30) return {1.0, 0.0, true};
        return {tx / tm, ty / tm, true};
    }
    return {-gx / mag, -gy / mag, false};
}

void write_guidance_csv(const PotentialField& field, const SafetyGrid& grid,
                        std::ostream& out, int stride) {
    out << "x,y,ex,ey\n";
    int n = grid.size();
    char buf[160];
    for (int i = 1; i < n - 1; i += stride) {
        for (int j = 1; j < n - 1; j += stride) {
            if (grid.unsafe(i, j)) continue;
            Vec2 p = grid.cell_center({i, j});
            GuidanceVector e = guidance_at(field, grid, p.x, p.y);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", p.x,
                          p.y, e.ex, e.ey);
            out << buf;
        }
    }
}

}  // namespace hpfnav
