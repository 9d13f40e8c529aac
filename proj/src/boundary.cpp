#include "shellbound/boundary.hpp"

#include <stdexcept>

namespace shellbound {

BoundaryFrame::BoundaryFrame(const Grid& g)
    : edges{Edge{EdgeId::Bottom, {0.0, -1.0}, {1.0, 0.0}, {}, {}},
            Edge{EdgeId::Right, {1.0, 0.0}, {0.0, 1.0}, {}, {}},
            Edge{EdgeId::Top, {0.0, 1.0}, {-1.0, 0.0}, {}, {}},
            Edge{EdgeId::Left, {-1.0, 0.0}, {0.0, -1.0}, {}, {}}} {
    const int n = g.n;
    auto fill = [&](Edge& e, auto&& node_of) {
        e.nodes.resize(n);
        e.weight.assign(n, g.h);
        e.weight.front() = e.weight.back() = 0.5 * g.h;
        for (int k = 0; k < n; ++k) e.nodes[k] = node_of(k);
    };
    fill(edges[0], [&](int k) { return g.idx(k, 0); });
    fill(edges[1], [&](int k) { return g.idx(n - 1, k); });
    fill(edges[2], [&](int k) { return g.idx(n - 1 - k, n - 1); });
    fill(edges[3], [&](int k) { return g.idx(0, n - 1 - k); });
}

EdgeValues edge_derivative(const Grid& g, const BoundaryFrame& f, const EdgeValues& v) {
    EdgeValues out(f);
    const double h = g.h;
    for (int k = 0; k < 4; ++k) {
        const auto& a = v[k];
        auto& d = out[k];
        const int m = static_cast<int>(a.size());
        if (m < 3) throw std::invalid_argument("edge too short");
        d[0] = (-3.0 * a[0] + 4.0 * a[1] - a[2]) / (2.0 * h);
        for (int i = 1; i + 1 < m; ++i) d[i] = (a[i + 1] - a[i - 1]) / (2.0 * h);
        d[m - 1] = (3.0 * a[m - 1] - 4.0 * a[m - 2] + a[m - 3]) / (2.0 * h);
    }
    return out;
}

EdgeValues restrict_to_boundary(const Grid& g, const BoundaryFrame& f, const ScalarField& field) {
    (void)g;
    EdgeValues out(f);
    for (int k = 0; k < 4; ++k)
        for (std::size_t i = 0; i < f.edges[k].nodes.size(); ++i)
            out[k][i] = field[f.edges[k].nodes[i]];
    return out;
}

namespace {

// One-sided second-order normal derivative (outward) at a boundary node.
double normal_derivative(const Grid& g, const ScalarField& field, int i, int j,
                         const std::array<double, 2>& normal) {
    // Step one node inward against the normal.
    const int di = static_cast<int>(-normal[0]);
    const int dj = static_cast<int>(-normal[1]);
    const double f0 = field[g.idx(i, j)];
    const double f1 = field[g.idx(i + di, j + dj)];
    const double f2 = field[g.idx(i + 2 * di, j + 2 * dj)];
    return (3.0 * f0 - 4.0 * f1 + f2) / (2.0 * g.h);
}

}  // namespace

ScalarTraces boundary_trace(const Grid& g, const BoundaryFrame& f, const ScalarField& field) {
    ScalarTraces tr;
    tr.value = restrict_to_boundary(g, f, field);
    tr.dn = EdgeValues(f);
    for (int k = 0; k < 4; ++k) {
        const Edge& e = f.edges[k];
        for (std::size_t q = 0; q < e.nodes.size(); ++q) {
            const int node = e.nodes[q];
            tr.dn[k][q] = normal_derivative(g, field, node % g.n, node / g.n, e.normal);
        }
    }
    tr.dt = edge_derivative(g, f, tr.value);
    tr.dtt = edge_derivative(g, f, tr.dt);
    return tr;
}

double boundary_integral(const BoundaryFrame& f, const EdgeValues& v) {
    double sum = 0.0;
    for (int k = 0; k < 4; ++k)
        for (std::size_t i = 0; i < v[k].size(); ++i) sum += f.edges[k].weight[i] * v[k][i];
    return sum;
}

}  // namespace shellbound
