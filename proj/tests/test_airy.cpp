#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "shellbound/airy.hpp"
#include "shellbound/forward.hpp"
#include "shellbound/kernels.hpp"

using namespace shellbound;

namespace {

ScalarField sample(const Grid& g, const std::function<double(double, double)>& f) {
    ScalarField out(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) out[g.idx(i, j)] = f(g.x(i), g.y(j));
    return out;
}

/// Stress field with R hess(psi) = s for an analytic psi.
TensorField stress_of(const Grid& g, const std::function<SymMat2(double, double)>& hess) {
    TensorField s(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const SymMat2 h = hess(g.x(i), g.y(j));
            s.set(g.idx(i, j), rperp_conjugate(h));
        }
    return s;
}

double hessian_mismatch(const Grid& g, const ScalarField& psi,
                        const std::function<SymMat2(double, double)>& hess) {
    const TensorField h = kernels::hessian(g, psi);
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const SymMat2 ex = hess(g.x(i), g.y(j));
            worst = std::max(worst, (h.at(g.idx(i, j)) - ex).norm());
        }
    return worst;
}

}  // namespace

TEST_CASE("round trip is exact for quadratic potentials") {
    const Grid g(33);
    auto hess = [](double, double) { return SymMat2{2.0, -0.5, 1.0}; };
    const AiryField a = airy_reconstruct(g, stress_of(g, hess));
    CHECK(a.residual <= 1e-11);
    CHECK(hessian_mismatch(g, a.psi, hess) <= 1e-10);
}

TEST_CASE("round trip converges at second order for smooth potentials") {
    auto hess = [](double x, double y) {
        const double s = std::sin(2 * x) * std::cos(y);
        return SymMat2{-4 * s, -2 * std::cos(2 * x) * std::sin(y), -s};
    };
    std::vector<double> errs;
    for (int n : {33, 65}) {
        const Grid g(n);
        const AiryField a = airy_reconstruct(g, stress_of(g, hess));
        errs.push_back(hessian_mismatch(g, a.psi, hess));
    }
    CHECK(errs[1] < errs[0]);
    CHECK(std::log2(errs[0] / errs[1]) >= 1.5);
}

TEST_CASE("reconstruction is insensitive to the affine gauge of the source") {
    const Grid g(33);
    auto hess = [](double x, double y) { return SymMat2{6 * x * y, 3 * x * x, 0.0}; };
    const AiryField a = airy_reconstruct(g, stress_of(g, hess));
    // Adding an affine function to psi does not change the stress; feeding
    // the same stress twice must reproduce identical psi.
    const AiryField b = airy_reconstruct(g, stress_of(g, hess));
    double diff = 0.0;
    for (int k = 0; k < g.num_nodes(); ++k) diff = std::max(diff, std::abs(a.psi[k] - b.psi[k]));
    CHECK(diff <= 1e-12);
    // Cubic potentials are not reproduced exactly (one-sided boundary
    // stencils), but the misfit is small at this resolution.
    CHECK(hessian_mismatch(g, a.psi, hess) <= 5e-2);
}

TEST_CASE("non-equilibrated stress fails the divergence precondition") {
    const Grid g(33);
    TensorField s(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) s.set(g.idx(i, j), {g.x(i), 0.0, 0.0});
    CHECK_THROWS_AS(airy_reconstruct(g, s), std::invalid_argument);
}

TEST_CASE("transformed residual vanishes for biharmonic pairs on a flat shell") {
    const Grid g(33);
    const PhaseLayout lay = make_phase_layout(InclusionGeometry::disk(0.5, 0.5, 0.25),
                                              PhaseMaterial(0.0, 0.25, 0.0, 0.25), g, 2.0);
    const ScalarField psi = sample(g, [](double x, double y) { return x * x * x * y; });
    const ScalarField u3 = sample(g, [](double x, double y) { return x * x - y * y; });
    const Shell2Residual r = shell2_residual(g, psi, u3, ShellProfile::flat(), lay);
    CHECK(r.r1 <= 1e-9);
    CHECK(r.r2 <= 1e-9);
}

TEST_CASE("transformed residual vanishes for an exact coupled affine pair") {
    // lambda = 0, mu = 1/4 makes the membrane compliance the identity.  With
    // an affine profile, psi = x^3 y (biharmonic) and u3 = x^2 - y^2
    // (harmonic quadratic) satisfy both transformed equations exactly: the
    // coupling terms have affine integrands whose double divergence
    // vanishes, and div(R hess psi) is identically zero.
    const Grid g(33);
    const PhaseLayout lay = make_phase_layout(InclusionGeometry::disk(0.5, 0.5, 0.25),
                                              PhaseMaterial(0.0, 0.25, 0.0, 0.25), g, 2.0);
    const ShellProfile theta = ShellProfile::affine(0.0, 0.4, -0.3);
    const ScalarField psi = sample(g, [](double x, double y) { return x * x * x * y; });
    const ScalarField u3 = sample(g, [](double x, double y) { return x * x - y * y; });
    const Shell2Residual r = shell2_residual(g, psi, u3, theta, lay);
    CHECK(r.r1 <= 1e-9);
    CHECK(r.r2 <= 1e-9);
}

TEST_CASE("transformed residual of a smooth exact pair decreases under refinement") {
    // psi = e^x cos y is harmonic (hence biharmonic); with u3 = 0 and an
    // affine profile both equations hold exactly, so the residual is pure
    // discretization error.
    std::vector<double> r1s;
    for (int n : {33, 65}) {
        const Grid g(n);
        const PhaseLayout lay = make_phase_layout(InclusionGeometry::disk(0.5, 0.5, 0.25),
                                                  PhaseMaterial(0.0, 0.25, 0.0, 0.25), g, 2.0);
        const ShellProfile theta = ShellProfile::affine(0.0, 0.4, -0.3);
        const ScalarField psi =
            sample(g, [](double x, double y) { return std::exp(x) * std::cos(y); });
        const ScalarField u3 = sample(g, [](double, double) { return 0.0; });
        const Shell2Residual r = shell2_residual(g, psi, u3, theta, lay);
        r1s.push_back(r.r1);
    }
    CHECK(r1s[1] < r1s[0]);
}

TEST_CASE("displacement traces reproduce the transformed Neumann data") {
    // psi = e^x cos y is harmonic, so u' = -grad psi has R grad^2 psi as its
    // stress at identity compliance (lambda = 0, mu = 1/4).  The trace maps
    // must reproduce the psi-side Neumann data at second order away from the
    // corners (the two end nodes of each edge see one-sided stencils whose
    // iterated error is only first order).
    std::vector<double> errs;
    for (int n : {33, 65}) {
        const Grid g(n);
        const BoundaryFrame f(g);
        CauchyBundle cb;
        cb.u1 = EdgeValues(f);
        cb.u2 = EdgeValues(f);
        cb.u3 = EdgeValues(f);
        cb.u3n = EdgeValues(f);
        for (int e = 0; e < 4; ++e)
            for (std::size_t q = 0; q < f.edges[e].nodes.size(); ++q) {
                const int node = f.edges[e].nodes[q];
                const double x = g.x(node % g.n), y = g.y(node / g.n);
                cb.u1[e][q] = -std::exp(x) * std::cos(y);
                cb.u2[e][q] = std::exp(x) * std::sin(y);
            }
        const TransformedNeumann tn = cauchy_from_displacement(g, f, cb, ShellProfile::flat());

        // hess psi = E [[c, -s], [-s, -c]] with E = e^x, c = cos y, s = sin y;
        // div(hess psi) = 0.
        double worst = 0.0;
        for (int e = 0; e < 4; ++e) {
            const auto& nn = f.edges[e].normal;
            const auto& tt = f.edges[e].tangent;
            const std::size_t m = f.edges[e].nodes.size();
            for (std::size_t q = 2; q + 2 < m; ++q) {
                const int node = f.edges[e].nodes[q];
                const double x = g.x(node % g.n), y = g.y(node / g.n);
                const double E = std::exp(x), c = std::cos(y), s = std::sin(y);
                const SymMat2 h{E * c, -E * s, -E * c};
                const auto hn = h.apply({nn[0], nn[1]});
                const double m_exact = hn[0] * nn[0] + hn[1] * nn[1];
                // d/dt of (hn . t) = sum_k t_k d_k(H_ij) t_i n_j
                const double dH[2][3] = {{E * c, -E * s, -E * c},    // d/dx of (h11, h12, h22)
                                         {-E * s, -E * c, E * s}};   // d/dy
                double d_exact = 0.0;                                // div h = 0 here
                for (int k = 0; k < 2; ++k) {
                    const SymMat2 dh{dH[k][0], dH[k][1], dH[k][2]};
                    const auto dhn = dh.apply({nn[0], nn[1]});
                    d_exact += tt[k] * (dhn[0] * tt[0] + dhn[1] * tt[1]);
                }
                worst = std::max(worst, std::abs(tn.moment[e][q] - m_exact));
                worst = std::max(worst, std::abs(tn.shear[e][q] - d_exact));
            }
        }
        errs.push_back(worst);
    }
    CHECK(errs[1] <= 5e-3);
    CHECK(std::log2(errs[0] / errs[1]) >= 1.5);
}

TEST_CASE("psi traces recovered from a constant traction match the potential") {
    // s = diag(1, 2) corresponds to psi = x^2 + y^2/2 (up to affine gauge).
    const Grid g(33);
    const BoundaryFrame f(g);
    const ScalarField psi = sample(g, [](double x, double y) { return x * x + 0.5 * y * y; });
    TensorField s(g);
    for (int k = 0; k < g.num_nodes(); ++k) s.set(k, {1.0, 0.0, 2.0});
    const TensorTraces tt = tensor_traces(g, f, s);
    const EdgeValues ref = restrict_to_boundary(g, f, psi);
    const PsiTraces pt = dirichlet_psi_from_traction(g, f, tt.n_x, tt.n_y, &ref);
    double worst = 0.0;
    for (int e = 0; e < 4; ++e)
        for (std::size_t q = 0; q < f.edges[e].nodes.size(); ++q)
            worst = std::max(worst, std::abs(pt.value[e][q] - ref[e][q]));
    CHECK(worst <= 1e-10);
}

TEST_CASE("unbalanced tractions are rejected") {
    const Grid g(33);
    const BoundaryFrame f(g);
    TensorField s(g);
    for (int k = 0; k < g.num_nodes(); ++k) s.set(k, {1.0, 0.0, 2.0});
    TensorTraces tt = tensor_traces(g, f, s);
    for (auto& v : tt.n_x[0]) v += 1.0;  // net force on the bottom edge
    CHECK_THROWS(dirichlet_psi_from_traction(g, f, tt.n_x, tt.n_y));
}
