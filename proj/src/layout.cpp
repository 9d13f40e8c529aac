#include "shellbound/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "shellbound/profile.hpp"

namespace shellbound {

double InclusionGeometry::signed_distance(double x, double y) const {
    double sd = -std::numeric_limits<double>::infinity();
    for (const auto& d : disks)
        sd = std::max(sd, d.r - std::hypot(x - d.cx, y - d.cy));
    for (const auto& r : rects)
        sd = std::max(sd, std::min({x - r.x0, r.x1 - x, y - r.y0, r.y1 - y}));
    return empty() ? -1.0 : sd;
}

double InclusionGeometry::exact_area() const {
    double a = 0.0;
    for (const auto& d : disks) a += M_PI * d.r * d.r;
    for (const auto& r : rects) a += (r.x1 - r.x0) * (r.y1 - r.y0);
    return a;
}

double PhaseLayout::phase1_weight(double x, double y) const {
    const double sd = geometry.signed_distance(x, y);
    const double w = smoothing_width * grid.h;
    if (w <= 0.0) return sd >= 0.0 ? 1.0 : 0.0;
    // Cubic smoothstep over a band of total width w around the interface.
    const double t = std::clamp(sd / w + 0.5, 0.0, 1.0);
    return t * t * (3.0 - 2.0 * t);
}

double PhaseLayout::lambda_at(double x, double y) const {
    const double c = phase1_weight(x, y);
    return c * material.lambda1 + (1.0 - c) * material.lambda2;
}

double PhaseLayout::mu_at(double x, double y) const {
    const double c = phase1_weight(x, y);
    return c * material.mu1 + (1.0 - c) * material.mu2;
}

double PhaseLayout::f1_grid() const {
    double s = 0.0;
    for (int j = 0; j < grid.n; ++j)
        for (int i = 0; i < grid.n; ++i) s += trapezoid_weight(grid, i, j) * chi1[grid.idx(i, j)];
    return s;
}

PhaseLayout make_phase_layout(const InclusionGeometry& geom, const PhaseMaterial& mat,
                              const Grid& grid, double smoothing_width) {
    for (const auto& d : geom.disks)
        if (d.cx - d.r < 0.0 || d.cx + d.r > 1.0 || d.cy - d.r < 0.0 || d.cy + d.r > 1.0)
            throw std::invalid_argument("disk inclusion escapes the unit square");
    for (const auto& r : geom.rects)
        if (r.x0 < 0.0 || r.x1 > 1.0 || r.y0 < 0.0 || r.y1 > 1.0 || r.x0 >= r.x1 || r.y0 >= r.y1)
            throw std::invalid_argument("rectangle inclusion escapes the unit square");
    if (smoothing_width < 0.0) throw std::invalid_argument("smoothing_width must be >= 0");

    PhaseLayout layout{geom, mat, geom.empty() ? 0.0 : geom.exact_area(), smoothing_width, {}, grid};
    layout.chi1.assign(grid.num_nodes(), 0.0);
    for (int j = 0; j < grid.n; ++j)
        for (int i = 0; i < grid.n; ++i)
            layout.chi1[grid.idx(i, j)] = geom.signed_distance(grid.x(i), grid.y(j)) >= 0.0 ? 1.0 : 0.0;
    return layout;
}

ShellProfile make_profile(const std::string& kind, double p0, double p1, double p2) {
    if (kind == "flat") return ShellProfile::flat();
    if (kind == "affine") return ShellProfile::affine(p0, p1, p2);
    if (kind == "paraboloid") return ShellProfile::paraboloid(p1, p2);
    if (kind == "sinusoidal") return ShellProfile::sinusoidal(p0, p1, p2);
    throw std::invalid_argument("unknown shell profile kind: " + kind);
}

}  // namespace shellbound
