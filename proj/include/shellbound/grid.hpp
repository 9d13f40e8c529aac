// Uniform node-centered grid on the closed unit square and the discrete
// scalar/vector/tensor fields living on it.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "shellbound/tensor.hpp"

namespace shellbound {

struct Grid {
    int n = 0;     // nodes per side, odd and >= 17 for production runs
    double h = 0;  // spacing 1/(n-1)

    explicit Grid(int nodes, int min_nodes = 17) : n(nodes), h(1.0 / (nodes - 1)) {
        if (n < min_nodes) throw std::invalid_argument("grid too coarse");
        if (n % 2 == 0) throw std::invalid_argument("node count per side must be odd");
    }

    int num_nodes() const { return n * n; }
    int idx(int i, int j) const { return j * n + i; }
    double x(int i) const { return i * h; }
    double y(int j) const { return j * h; }
    bool on_boundary(int i, int j) const { return i == 0 || j == 0 || i == n - 1 || j == n - 1; }
    int center_node() const { return idx((n - 1) / 2, (n - 1) / 2); }
};

struct ScalarField {
    std::vector<double> v;
    explicit ScalarField(const Grid& g) : v(g.num_nodes(), 0.0) {}
    ScalarField() = default;
    double& operator[](int k) { return v[k]; }
    double operator[](int k) const { return v[k]; }
    std::size_t size() const { return v.size(); }
};

struct VecField {
    std::vector<double> x, y;
    explicit VecField(const Grid& g) : x(g.num_nodes(), 0.0), y(g.num_nodes(), 0.0) {}
    VecField() = default;
};

struct TensorField {
    std::vector<double> a11, a12, a22;
    explicit TensorField(const Grid& g)
        : a11(g.num_nodes(), 0.0), a12(g.num_nodes(), 0.0), a22(g.num_nodes(), 0.0) {}
    TensorField() = default;
    SymMat2 at(int k) const { return {a11[k], a12[k], a22[k]}; }
    void set(int k, const SymMat2& m) {
        a11[k] = m.a11;
        a12[k] = m.a12;
        a22[k] = m.a22;
    }
};

/// Trapezoid quadrature weight of node (i,j); weights sum to |Omega| = 1.
inline double trapezoid_weight(const Grid& g, int i, int j) {
    const double wx = (i == 0 || i == g.n - 1) ? 0.5 : 1.0;
    const double wy = (j == 0 || j == g.n - 1) ? 0.5 : 1.0;
    return wx * wy * g.h * g.h;
}

}  // namespace shellbound
