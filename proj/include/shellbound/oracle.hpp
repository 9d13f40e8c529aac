// Independent cross-checks: a direct KKT solve of the constrained quadratic
// minimum, Richardson-refined quadratures, and convergence-order estimation.
// Deliberately reimplemented without reusing the closed forms they verify.
#pragma once

#include <functional>
#include <vector>

#include "shellbound/boundary.hpp"
#include "shellbound/grid.hpp"
#include "shellbound/tensor.hpp"

namespace shellbound {

/// Minimizer of f1 A1.S1 A1 + f2 A2.S2 A2 subject to f1 A1 + f2 A2 = a0 and
/// f1 S1 A1 + f2 S2 A2 = g0, obtained from the 6x6 constraint system.
struct KktSolution {
    MandelVec A1;
    MandelVec A2;
    double energy = 0.0;
    double constraint_residual = 0.0;
};
KktSolution kkt_two_phase(const IsoTensor2D& s1, const IsoTensor2D& s2, double f1,
                          const MandelVec& a0, const MandelVec& g0);

/// Richardson-extrapolated trapezoid integral of f over the unit square.
/// Each level doubles the cell count per direction starting from n0 nodes.
struct QuadRefinement {
    double value = 0.0;
    double error_estimate = 0.0;
    std::vector<double> raw;  // unextrapolated values per level
};
QuadRefinement refine_quadrature(const std::function<double(double, double)>& f, int levels = 4,
                                 int n0 = 17);

/// Same refinement for a contour integral of f(x, y) over the boundary of the
/// unit square (counterclockwise arc-length measure).
QuadRefinement refine_boundary_quadrature(const std::function<double(double, double)>& f,
                                          int levels = 4, int n0 = 17);

/// Least-squares slope of log2(error) against refinement level for errors
/// measured at h, h/2, h/4, ... Returns NaN for empty/invalid input
/// (non-positive or non-decreasing errors).
double convergence_order(const std::vector<double>& errors);

}  // namespace shellbound
