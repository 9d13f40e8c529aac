// Two-phase geometry on the unit square: inclusion shapes with analytic
// area, per-node indicator, and (optionally mollified) coefficient fields.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "shellbound/grid.hpp"
#include "shellbound/tensor.hpp"

namespace shellbound {

/// Inclusion geometry: signed distance is positive inside phase 1.
struct InclusionGeometry {
    struct Disk {
        double cx, cy, r;
    };
    struct Rect {
        double x0, x1, y0, y1;
    };
    std::vector<Disk> disks;
    std::vector<Rect> rects;

    bool empty() const { return disks.empty() && rects.empty(); }
    /// Signed distance to the phase-1 region (positive inside), as the max
    /// over components (components assumed disjoint).
    double signed_distance(double x, double y) const;
    /// Exact area of the phase-1 region (components assumed disjoint and
    /// contained in the unit square; validated by make_phase_layout).
    double exact_area() const;

    static InclusionGeometry disk(double cx, double cy, double r) { return {{{cx, cy, r}}, {}}; }
    static InclusionGeometry rect(double x0, double x1, double y0, double y1) {
        return {{}, {{x0, x1, y0, y1}}};
    }
};

/// Grid realization of a two-phase material.
struct PhaseLayout {
    InclusionGeometry geometry;
    PhaseMaterial material;
    double f1_exact = 0.0;        // analytic area fraction of phase 1
    double smoothing_width = 2.0; // interface mollification in units of h
    std::vector<double> chi1;     // sharp per-node indicator in {0,1}
    Grid grid;

    /// Mollified phase-1 weight in [0,1] at an arbitrary point; sharp when
    /// smoothing_width == 0.
    double phase1_weight(double x, double y) const;
    double lambda_at(double x, double y) const;
    double mu_at(double x, double y) const;
    /// Phase-1 fraction of the grid indicator under trapezoid quadrature.
    double f1_grid() const;
};

PhaseLayout make_phase_layout(const InclusionGeometry& geom, const PhaseMaterial& mat,
                              const Grid& grid, double smoothing_width = 2.0);

}  // namespace shellbound
