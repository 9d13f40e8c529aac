// Boundary frames, per-edge traces, and boundary quadrature for the unit
// square.  Every edge carries its own constant (n, t) frame with t = -Rp n
// (counterclockwise traversal); corner nodes appear once per incident edge,
// so nothing is ever differentiated tangentially across a corner.
#pragma once

#include <array>
#include <vector>

#include "shellbound/grid.hpp"

namespace shellbound {

enum class EdgeId { Bottom = 0, Right = 1, Top = 2, Left = 3 };

struct Edge {
    EdgeId id;
    std::array<double, 2> normal;
    std::array<double, 2> tangent;      // -Rp n; points along counterclockwise traversal
    std::vector<int> nodes;             // grid node indices ordered along the tangent
    std::vector<double> weight;         // per-node arc-length weights (composite trapezoid)
};

struct BoundaryFrame {
    std::array<Edge, 4> edges;
    explicit BoundaryFrame(const Grid& g);
};

/// Scalar values attached to the boundary, stored per edge in tangent order.
struct EdgeValues {
    std::array<std::vector<double>, 4> e;
    explicit EdgeValues(const BoundaryFrame& f) {
        for (int k = 0; k < 4; ++k) e[k].assign(f.edges[k].nodes.size(), 0.0);
    }
    EdgeValues() = default;
    std::vector<double>& operator[](int k) { return e[k]; }
    const std::vector<double>& operator[](int k) const { return e[k]; }
};

/// Traces of a scalar grid field: value, normal derivative, and first/second
/// tangential derivatives, each per edge.
struct ScalarTraces {
    EdgeValues value, dn, dt, dtt;
};

/// Tangential derivative of per-edge values (second-order stencils along the edge).
EdgeValues edge_derivative(const Grid& g, const BoundaryFrame& f, const EdgeValues& v);

/// Restrict a grid field to the boundary edges.
EdgeValues restrict_to_boundary(const Grid& g, const BoundaryFrame& f, const ScalarField& field);

/// Full trace bundle of a grid scalar field.  The normal derivative is taken
/// by the one-sided interior stencil; tangential derivatives act per edge.
ScalarTraces boundary_trace(const Grid& g, const BoundaryFrame& f, const ScalarField& field);

/// Integral over the boundary of per-edge values (composite trapezoid per edge).
double boundary_integral(const BoundaryFrame& f, const EdgeValues& v);

}  // namespace shellbound
