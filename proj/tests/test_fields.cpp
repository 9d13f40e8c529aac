#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "shellbound/boundary.hpp"
#include "shellbound/grid.hpp"
#include "shellbound/kernels.hpp"
#include "shellbound/layout.hpp"

using namespace shellbound;

namespace {

ScalarField sample(const Grid& g, const std::function<double(double, double)>& f) {
    ScalarField out(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) out[g.idx(i, j)] = f(g.x(i), g.y(j));
    return out;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

}  // namespace

TEST_CASE("first derivatives are exact on quadratics including the boundary") {
    const Grid g(33);
    const ScalarField f = sample(g, [](double x, double y) { return x * x + 3 * x * y - y * y; });
    const VecField grad = kernels::gradient(g, f);
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const int k = g.idx(i, j);
            worst = std::max(worst, std::abs(grad.x[k] - (2 * g.x(i) + 3 * g.y(j))));
            worst = std::max(worst, std::abs(grad.y[k] - (3 * g.x(i) - 2 * g.y(j))));
        }
    CHECK(worst <= 1e-12);
}

TEST_CASE("second derivatives are exact on cubics including the boundary") {
    const Grid g(33);
    const ScalarField f =
        sample(g, [](double x, double y) { return x * x * x - 2 * y * y * y + x * y; });
    const TensorField h = kernels::hessian(g, f);
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const int k = g.idx(i, j);
            worst = std::max(worst, std::abs(h.a11[k] - 6 * g.x(i)));
            worst = std::max(worst, std::abs(h.a22[k] + 12 * g.y(j)));
            worst = std::max(worst, std::abs(h.a12[k] - 1.0));
        }
    CHECK(worst <= 1e-11);
}

TEST_CASE("parallel kernels match the serial reference") {
    const Grid g(65);
    const ScalarField f =
        sample(g, [](double x, double y) { return std::sin(3 * x) * std::cos(2 * y) + x * y; });
    const VecField gp = kernels::gradient(g, f), gs = kernels::serial::gradient(g, f);
    CHECK(max_abs_diff(gp.x, gs.x) <= 1e-14);
    CHECK(max_abs_diff(gp.y, gs.y) <= 1e-14);
    const TensorField hp = kernels::hessian(g, f), hs = kernels::serial::hessian(g, f);
    CHECK(max_abs_diff(hp.a11, hs.a11) <= 1e-12);
    CHECK(max_abs_diff(hp.a12, hs.a12) <= 1e-12);
    const VecField dp = kernels::divergence(g, hp), ds = kernels::serial::divergence(g, hs);
    CHECK(max_abs_diff(dp.x, ds.x) <= 1e-10);
    const double ap = kernels::volume_average(g, f);
    const double as = kernels::serial::volume_average(g, f);
    CHECK(std::abs(ap - as) <= 1e-14 * (1.0 + std::abs(as)));
    const double qp = kernels::volume_average_dot(g, hp, hp);
    const double qs = kernels::serial::volume_average_dot(g, hs, hs);
    CHECK(std::abs(qp - qs) <= 1e-12 * (1.0 + std::abs(qs)));
}

TEST_CASE("hessian converges at second order on a smooth field") {
    double prev = 0.0;
    std::vector<double> errs;
    for (int n : {33, 65, 129}) {
        const Grid g(n);
        const ScalarField f =
            sample(g, [](double x, double y) { return std::sin(2 * x + 1) * std::cos(3 * y); });
        const TensorField h = kernels::hessian(g, f);
        double worst = 0.0;
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                const double ex = -4 * std::sin(2 * g.x(i) + 1) * std::cos(3 * g.y(j));
                worst = std::max(worst, std::abs(h.a11[g.idx(i, j)] - ex));
            }
        errs.push_back(worst);
        prev = worst;
    }
    (void)prev;
    CHECK(std::log2(errs[0] / errs[1]) >= 1.9);
    CHECK(std::log2(errs[1] / errs[2]) >= 1.9);
}

TEST_CASE("boundary integral of 1 is the perimeter") {
    const Grid g(33);
    const BoundaryFrame f(g);
    EdgeValues ones(f);
    for (int e = 0; e < 4; ++e)
        for (auto& v : ones[e]) v = 1.0;
    CHECK(boundary_integral(f, ones) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("divergence theorem holds to discretization accuracy") {
    const Grid g(129);
    const BoundaryFrame fr(g);
    const ScalarField f =
        sample(g, [](double x, double y) { return x * x * y + std::sin(x + 2 * y); });
    const TensorField h = kernels::hessian(g, f);
    const VecField dv = kernels::divergence(g, h);
    // <div H . e1> over the volume vs the contour integral of (H n) . e1.
    ScalarField dx(g);
    for (int k = 0; k < g.num_nodes(); ++k) dx[k] = dv.x[k];
    const double vol = kernels::volume_average(g, dx);
    EdgeValues hn(fr);
    for (int e = 0; e < 4; ++e)
        for (std::size_t q = 0; q < fr.edges[e].nodes.size(); ++q) {
            const auto m = h.at(fr.edges[e].nodes[q]);
            const auto sn = m.apply(fr.edges[e].normal);
            hn[e][q] = sn[0];
        }
    CHECK(std::abs(vol - boundary_integral(fr, hn)) <= 2e-3);
}

TEST_CASE("boundary frame is counterclockwise with outward normals") {
    const Grid g(17);
    const BoundaryFrame f(g);
    for (int e = 0; e < 4; ++e) {
        const auto& n = f.edges[e].normal;
        const auto& t = f.edges[e].tangent;
        // t = -Rp n, i.e. t = (-n2, n1)
        CHECK(t[0] == doctest::Approx(-n[1]).epsilon(1e-15));
        CHECK(t[1] == doctest::Approx(n[0]).epsilon(1e-15));
        // Walking the nodes advances along the tangent.
        const int a = f.edges[e].nodes[0], b = f.edges[e].nodes[1];
        const double dxs = g.x(b % g.n) - g.x(a % g.n), dys = g.y(b / g.n) - g.y(a / g.n);
        CHECK(dxs * t[0] + dys * t[1] > 0.0);
    }
}

TEST_CASE("phase layout: disk of radius 1/4 has fraction pi/16") {
    const Grid g(65);
    const PhaseLayout lay = make_phase_layout(InclusionGeometry::disk(0.5, 0.5, 0.25),
                                              PhaseMaterial(1.0, 1.0, 2.0, 2.0), g, 2.0);
    CHECK(lay.f1_exact == doctest::Approx(M_PI / 16.0).epsilon(1e-14));
    CHECK(std::abs(lay.f1_grid() - lay.f1_exact) <= 5e-3);
    // Moduli take phase-1 values deep inside, phase-2 values far outside.
    CHECK(lay.mu_at(0.5, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lay.mu_at(0.05, 0.05) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("phase layout rejects geometry escaping the unit square") {
    const Grid g(33);
    CHECK_THROWS_AS(make_phase_layout(InclusionGeometry::disk(0.5, 0.5, 0.6),
                                      PhaseMaterial(1.0, 1.0, 2.0, 2.0), g, 2.0),
                    std::invalid_argument);
}

TEST_CASE("grid constructor validates size and parity") {
    CHECK_THROWS_AS(Grid(15), std::invalid_argument);
    CHECK_THROWS_AS(Grid(18), std::invalid_argument);
    CHECK_NOTHROW(Grid(17));
}
