#include "shellbound/moments.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "shellbound/kernels.hpp"
#include "shellbound/tensor.hpp"

namespace shellbound {

namespace {

// Corner c joins the end of edge c to the start of edge (c+1)%4.
struct Corner {
    int edge_a, idx_a;  // edge ending at the corner
    int edge_b, idx_b;  // edge starting at the corner
    double x, y;
};

std::array<Corner, 4> corners_of(const Grid& g, const BoundaryFrame& f) {
    std::array<Corner, 4> out;
    for (int c = 0; c < 4; ++c) {
        const int a = c, b = (c + 1) % 4;
        const int la = static_cast<int>(f.edges[a].nodes.size()) - 1;
        const int node = f.edges[a].nodes[la];
        out[c] = {a, la, b, 0, g.x(node % g.n), g.y(node / g.n)};
    }
    return out;
}

// Cartesian boundary gradient of a scalar from its Dirichlet pair.
struct BoundaryGradient {
    EdgeValues g1, g2;
};
BoundaryGradient cartesian_gradient(const Grid& g, const BoundaryFrame& f,
                                    const EdgeValues& value, const EdgeValues& dn) {
    BoundaryGradient out{EdgeValues(f), EdgeValues(f)};
    const EdgeValues vt = edge_derivative(g, f, value);
    for (int e = 0; e < 4; ++e) {
        const Edge& edge = f.edges[e];
        for (std::size_t q = 0; q < edge.nodes.size(); ++q) {
            out.g1[e][q] = vt[e][q] * edge.tangent[0] + dn[e][q] * edge.normal[0];
            out.g2[e][q] = vt[e][q] * edge.tangent[1] + dn[e][q] * edge.normal[1];
        }
    }
    return out;
}

// Affine and quadratic multiplier descriptions.
struct Multiplier {
    std::function<double(double, double)> value;
    std::function<std::array<double, 2>(double, double)> grad;
};

Multiplier phi_11() {
    return {[](double x, double) { return 0.5 * x * x; },
            [](double x, double) { return std::array<double, 2>{x, 0.0}; }};
}
Multiplier phi_22() {
    return {[](double, double y) { return 0.5 * y * y; },
            [](double, double y) { return std::array<double, 2>{0.0, y}; }};
}
Multiplier phi_12(double scale) {
    return {[scale](double x, double y) { return scale * x * y; },
            [scale](double x, double y) { return std::array<double, 2>{scale * y, scale * x}; }};
}

// Green pairing with arbitrary boundary multiplier traces:
//   integral of (N phi_n - D phi) over the boundary
//   + sum over corners of phi(P) * (trace_a(P) - trace_b(P))
// where D is the combined shear-type trace D = div sigma . n + (sigma n . t)_t
// and the corner term restores the per-edge tangential integration by parts.
double green_pairing(const Grid& g, const BoundaryFrame& f, const EdgeValues& d_trace,
                     const EdgeValues& n_trace, const std::array<std::array<double, 2>, 4>& nt,
                     const EdgeValues& phi, const EdgeValues& phi_n) {
    double acc = 0.0;
    for (int e = 0; e < 4; ++e) {
        const Edge& edge = f.edges[e];
        for (std::size_t q = 0; q < edge.nodes.size(); ++q)
            acc += edge.weight[q] * (n_trace[e][q] * phi_n[e][q] - d_trace[e][q] * phi[e][q]);
    }
    const auto cs = corners_of(g, f);
    for (int c = 0; c < 4; ++c)
        acc += phi[cs[c].edge_a][cs[c].idx_a] * (nt[c][0] - nt[c][1]);
    return acc;
}

double green_multiplier(const Grid& g, const BoundaryFrame& f, const EdgeValues& d_trace,
                        const EdgeValues& n_trace, const std::array<std::array<double, 2>, 4>& nt,
                        const Multiplier& phi) {
    EdgeValues pv(f), pn(f);
    for (int e = 0; e < 4; ++e) {
        const Edge& edge = f.edges[e];
        for (std::size_t q = 0; q < edge.nodes.size(); ++q) {
            const int k = edge.nodes[q];
            const double x = g.x(k % g.n), y = g.y(k / g.n);
            pv[e][q] = phi.value(x, y);
            const auto gr = phi.grad(x, y);
            pn[e][q] = gr[0] * edge.normal[0] + gr[1] * edge.normal[1];
        }
    }
    return green_pairing(g, f, d_trace, n_trace, nt, pv, pn);
}

// Corner values of (sigma n . t) per incident edge, with sigma = R(sym grad u')
// assembled from the tangential derivatives of u' on both incident edges.
std::array<std::array<double, 2>, 4> sigma_nt_corners(const Grid& g, const BoundaryFrame& f,
                                                      const CauchyBundle& cb) {
    const EdgeValues u1t = edge_derivative(g, f, cb.u1);
    const EdgeValues u2t = edge_derivative(g, f, cb.u2);
    std::array<std::array<double, 2>, 4> out{};
    const auto cs = corners_of(g, f);
    for (int c = 0; c < 4; ++c) {
        double d1u1 = 0, d1u2 = 0, d2u1 = 0, d2u2 = 0;
        for (int side = 0; side < 2; ++side) {
            const int e = side == 0 ? cs[c].edge_a : cs[c].edge_b;
            const int q = side == 0 ? cs[c].idx_a : cs[c].idx_b;
            const auto t = f.edges[e].tangent;
            if (std::fabs(t[0]) > 0.5) {
                d1u1 = t[0] * u1t[e][q];
                d1u2 = t[0] * u2t[e][q];
            } else {
                d2u1 = t[1] * u1t[e][q];
                d2u2 = t[1] * u2t[e][q];
            }
        }
        const SymMat2 eps{d1u1, 0.5 * (d2u1 + d1u2), d2u2};
        const SymMat2 sig = rperp_conjugate(eps);
        for (int side = 0; side < 2; ++side) {
            const int e = side == 0 ? cs[c].edge_a : cs[c].edge_b;
            const auto sn = sig.apply(f.edges[e].normal);
            out[c][side] = sn[0] * f.edges[e].tangent[0] + sn[1] * f.edges[e].tangent[1];
        }
    }
    return out;
}

// Corner values of (m n . t) with m = M(hess u3): the corner Hessian of u3 is
// determined by the (u3, u3_n) pairs of the two incident edges.
std::array<std::array<double, 2>, 4> moment_nt_corners(const Grid& g, const BoundaryFrame& f,
                                                       const CauchyBundle& cb,
                                                       const PhaseLayout& layout) {
    const EdgeValues u3t = edge_derivative(g, f, cb.u3);
    const EdgeValues u3tt = edge_derivative(g, f, u3t);
    const EdgeValues u3nt = edge_derivative(g, f, cb.u3n);
    std::array<std::array<double, 2>, 4> out{};
    const auto cs = corners_of(g, f);
    for (int c = 0; c < 4; ++c) {
        double h11 = 0, h22 = 0, h12 = 0;
        for (int side = 0; side < 2; ++side) {
            const int e = side == 0 ? cs[c].edge_a : cs[c].edge_b;
            const int q = side == 0 ? cs[c].idx_a : cs[c].idx_b;
            const auto t = f.edges[e].tangent;
            const auto n = f.edges[e].normal;
            if (std::fabs(t[0]) > 0.5) {
                h11 = u3tt[e][q];
                h12 += 0.5 * u3nt[e][q] / (t[0] * n[1]);
            } else {
                h22 = u3tt[e][q];
                h12 += 0.5 * u3nt[e][q] / (t[1] * n[0]);
            }
        }
        const SymMat2 hess{h11, h12, h22};
        const SymMat2 m =
            iso_M(layout.lambda_at(cs[c].x, cs[c].y), layout.mu_at(cs[c].x, cs[c].y)).apply(hess);
        for (int side = 0; side < 2; ++side) {
            const int e = side == 0 ? cs[c].edge_a : cs[c].edge_b;
            const auto mn = m.apply(f.edges[e].normal);
            out[c][side] = mn[0] * f.edges[e].tangent[0] + mn[1] * f.edges[e].tangent[1];
        }
    }
    return out;
}

// integral of w_kl * w_affine over Omega expressed through boundary data:
//   int (hess w)_{kl} a = contour{ w_k a n_l - w a_l n_k }   (a affine).
double hessian_entry_weighted(const Grid& g, const BoundaryFrame& f, const EdgeValues& value,
                              const BoundaryGradient& gr, int k, int l, double a0, double ax,
                              double ay) {
    double acc = 0.0;
    for (int e = 0; e < 4; ++e) {
        const Edge& edge = f.edges[e];
        for (std::size_t q = 0; q < edge.nodes.size(); ++q) {
            const int node = edge.nodes[q];
            const double x = g.x(node % g.n), y = g.y(node / g.n);
            const double a = a0 + ax * x + ay * y;
            const double al = (l == 1) ? ax : ay;
            const double wk = (k == 1) ? gr.g1[e][q] : gr.g2[e][q];
            const double nl = (l == 1) ? edge.normal[0] : edge.normal[1];
            const double nk = (k == 1) ? edge.normal[0] : edge.normal[1];
            acc += edge.weight[q] * (wk * a * nl - value[e][q] * al * nk);
        }
    }
    return acc;
}

void require_affine(const ShellProfile& theta, const char* what) {
    if (!theta.has_constant_gradient())
        throw std::invalid_argument(std::string(what) +
                                    ": the boundary-only path needs an affine or flat profile "
                                    "(curved profiles couple interior fields; use the "
                                    "field-based evaluation instead)");
}

}  // namespace

BoundaryHessianAvg a0_from_boundary(const Grid& g, const BoundaryFrame& f,
                                    const EdgeValues& value, const EdgeValues& dn) {
    const BoundaryGradient gr = cartesian_gradient(g, f, value, dn);
    double m11 = 0, m12 = 0, m21 = 0, m22 = 0;
    for (int e = 0; e < 4; ++e) {
        const Edge& edge = f.edges[e];
        for (std::size_t q = 0; q < edge.nodes.size(); ++q) {
            const double w = edge.weight[q];
            m11 += w * edge.normal[0] * gr.g1[e][q];
            m12 += w * edge.normal[0] * gr.g2[e][q];
            m21 += w * edge.normal[1] * gr.g1[e][q];
            m22 += w * edge.normal[1] * gr.g2[e][q];
        }
    }
    return {{m11, 0.5 * (m12 + m21), m22}, 0.5 * std::fabs(m12 - m21)};
}

DetForms c0_from_boundary(const Grid& g, const BoundaryFrame& f, const EdgeValues& value,
                          const EdgeValues& dn) {
    const BoundaryGradient gr = cartesian_gradient(g, f, value, dn);
    const EdgeValues g1t = edge_derivative(g, f, gr.g1);
    const EdgeValues g2t = edge_derivative(g, f, gr.g2);
    DetForms out;
    for (int e = 0; e < 4; ++e) {
        const Edge& edge = f.edges[e];
        const auto t = edge.tangent;
        const auto n = edge.normal;
        for (std::size_t q = 0; q < edge.nodes.size(); ++q) {
            const double w = edge.weight[q];
            if (std::fabs(t[0]) > 0.5) {
                // Horizontal edge: tangential data give w_11 and w_12.
                const double w11 = t[0] * g1t[e][q];
                const double w12 = t[0] * g2t[e][q];
                out.form1 += w * (-gr.g1[e][q] * w12 * n[1]);
                out.form2 += w * (gr.g2[e][q] * w11 * n[1]);
            } else {
                // Vertical edge: tangential data give w_12 and w_22.
                const double w12 = t[1] * g1t[e][q];
                const double w22 = t[1] * g2t[e][q];
                out.form1 += w * (gr.g1[e][q] * w22 * n[0]);
                out.form2 += w * (-gr.g2[e][q] * w12 * n[0]);
            }
        }
    }
    out.value = 0.5 * (out.form1 + out.form2);
    return out;
}

SymMat2 b0_from_cauchy(const Grid& g, const BoundaryFrame& f, const CauchyBundle& cb,
                       const TransformedNeumann& tn, const ShellProfile& theta,
                       bool half_mixed_multiplier) {
    require_affine(theta, "b0_from_cauchy");
    const auto nt = sigma_nt_corners(g, f, cb);
    const double s11 = green_multiplier(g, f, tn.shear, tn.moment, nt, phi_11());
    const double s22 = green_multiplier(g, f, tn.shear, tn.moment, nt, phi_22());
    const double mixed_scale = half_mixed_multiplier ? 0.5 : 1.0;
    // phi = x1 x2 pairs with 2 sigma_12 (phi = x1 x2 / 2 pairs with sigma_12).
    const double s12 =
        green_multiplier(g, f, tn.shear, tn.moment, nt, phi_12(mixed_scale)) / (2.0 * mixed_scale);

    // <L hess psi> = <sigma> + <K_theta>; with a constant profile gradient c,
    // <K_theta> only needs <grad u3> = contour{ u3 n }.
    const auto c = theta.gradient(0.5, 0.5);
    double m1 = 0, m2 = 0;
    for (int e = 0; e < 4; ++e)
        for (std::size_t q = 0; q < cb.u3[e].size(); ++q) {
            m1 += f.edges[e].weight[q] * f.edges[e].normal[0] * cb.u3[e][q];
            m2 += f.edges[e].weight[q] * f.edges[e].normal[1] * cb.u3[e][q];
        }
    const SymMat2 kbar{c[1] * m2, -0.5 * (c[1] * m1 + c[0] * m2), c[0] * m1};
    return SymMat2{s11, s12, s22} + kbar;
}

SymMat2 b0t_from_cauchy(const Grid& g, const BoundaryFrame& f, const CauchyBundle& cb,
                        const PsiTraces& psi, const ShellProfile& theta,
                        const PhaseLayout& layout, bool half_mixed_multiplier) {
    require_affine(theta, "b0t_from_cauchy");
    const auto nt = moment_nt_corners(g, f, cb, layout);
    const auto c = theta.gradient(0.5, 0.5);
    const BoundaryGradient gr = cartesian_gradient(g, f, psi.value, psi.dn);

    // coupling correction: - integral (R hess psi grad_theta) . grad phi,
    // expanded over Hessian entries with affine weights (grad phi components).
    auto correction = [&](const Multiplier& phi) {
        if (c[0] == 0.0 && c[1] == 0.0) return 0.0;
        // grad phi = (w1, w2), both affine: w = a0 + ax x + ay y.
        // (R S c) . grad phi = S22 c1 w1 - S12 (c2 w1 + c1 w2) + S11 c2 w2.
        const auto gp0 = phi.grad(0.0, 0.0);
        const auto gpx = phi.grad(1.0, 0.0);
        const auto gpy = phi.grad(0.0, 1.0);
        const double w1a = gp0[0], w1x = gpx[0] - gp0[0], w1y = gpy[0] - gp0[0];
        const double w2a = gp0[1], w2x = gpx[1] - gp0[1], w2y = gpy[1] - gp0[1];
        auto entry = [&](int k, int l, double a0c, double ax, double ay) {
            // symmetrized estimate of int S_kl a
            return 0.5 * (hessian_entry_weighted(g, f, psi.value, gr, k, l, a0c, ax, ay) +
                          hessian_entry_weighted(g, f, psi.value, gr, l, k, a0c, ax, ay));
        };
        double acc = 0.0;
        acc += c[0] * entry(2, 2, w1a, w1x, w1y);
        acc -= c[1] * entry(1, 2, w1a, w1x, w1y);
        acc -= c[0] * entry(1, 2, w2a, w2x, w2y);
        acc += c[1] * entry(1, 1, w2a, w2x, w2y);
        return -acc;
    };

    const Multiplier p11 = phi_11(), p22 = phi_22();
    const double mixed_scale = half_mixed_multiplier ? 0.5 : 1.0;
    const Multiplier p12 = phi_12(mixed_scale);
    const double t11 =
        green_multiplier(g, f, cb.shear_combined, cb.mn_n, nt, p11) + correction(p11);
    const double t22 =
        green_multiplier(g, f, cb.shear_combined, cb.mn_n, nt, p22) + correction(p22);
    const double t12 =
        (green_multiplier(g, f, cb.shear_combined, cb.mn_n, nt, p12) + correction(p12)) /
        (2.0 * mixed_scale);
    return {t11, t12, t22};
}

double B_term(const Grid& g, const BoundaryFrame& f, const PsiTraces& psi, const EdgeValues& u3,
              const TransformedNeumann& tn, const ShellProfile& theta) {
    const EdgeValues psit = edge_derivative(g, f, psi.value);
    const BoundaryGradient gr = cartesian_gradient(g, f, psi.value, psi.dn);
    const EdgeValues g1t = edge_derivative(g, f, gr.g1);
    const EdgeValues g2t = edge_derivative(g, f, gr.g2);

    double acc = 0.0;
    for (int e = 0; e < 4; ++e) {
        const Edge& edge = f.edges[e];
        for (std::size_t q = 0; q < edge.nodes.size(); ++q) {
            const int node = edge.nodes[q];
            const auto tg = theta.gradient(g.x(node % g.n), g.y(node / g.n));
            // (R hess psi grad_theta) . n = -(hess psi t) . Rp grad_theta
            const double s_gt_n = -g1t[e][q] * tg[1] + g2t[e][q] * tg[0];
            acc += edge.weight[q] *
                   (-tn.divk_n[e][q] * psi.value[e][q] + tn.k_nt[e][q] * psit[e][q] +
                    tn.k_nn[e][q] * psi.dn[e][q] - s_gt_n * u3[e][q]);
        }
    }
    // The shear-type term is kept in the corner-free form k_nt psi_t (the
    // tangential derivative of psi is Dirichlet data); no corner jumps arise.
    return acc;
}

double e0_from_cauchy(const Grid& g, const BoundaryFrame& f, const CauchyBundle& cb,
                      const TransformedNeumann& tn, const PsiTraces& psi,
                      const PhaseLayout& layout, double tol) {
    const auto nt_sigma = sigma_nt_corners(g, f, cb);
    const auto nt_m = moment_nt_corners(g, f, cb, layout);
    const EdgeValues u3n = cb.u3n;
    const double mem = green_pairing(g, f, tn.shear, tn.moment, nt_sigma, psi.value, psi.dn);
    const double bend = green_pairing(g, f, cb.shear_combined, cb.mn_n, nt_m, cb.u3, u3n);
    const double e0 = mem + bend;
    if (e0 < -tol * std::max(1.0, std::fabs(e0)))
        throw std::runtime_error("e0_from_cauchy: negative energy moment " + std::to_string(e0) +
                                 " signals inconsistent Cauchy traces");
    return e0;
}

MomentSet moments_from_field(const Grid& g, const ScalarField& psi, const ScalarField& u3,
                             const ShellProfile& theta, const PhaseLayout& layout) {
    const TensorField hp = kernels::hessian(g, psi);
    const TensorField hu = kernels::hessian(g, u3);
    const VecField gu3 = kernels::gradient(g, u3);

    MomentSet m;
    m.a0_tag = m.b0_tag = m.c0_tag = m.e0_tag = m.B_tag = Provenance::FromField;
    m.a0 = kernels::volume_average(g, hp);
    m.a0t = kernels::volume_average(g, hu);

    TensorField lp(g), mu3(g);
    ScalarField detp(g), detu(g), energy(g);
    TensorField kth(g);
    ScalarField q1(g), q2(g);  // R hess psi grad theta
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const int k = g.idx(i, j);
            const double x = g.x(i), y = g.y(j);
            const double lambda = layout.lambda_at(x, y), mu = layout.mu_at(x, y);
            const SymMat2 sp = hp.at(k), su = hu.at(k);
            lp.set(k, iso_L(lambda, mu).apply(sp));
            mu3.set(k, iso_M(lambda, mu).apply(su));
            detp[k] = sp.det();
            detu[k] = su.det();
            energy[k] = lp.at(k).dot(sp) + mu3.at(k).dot(su);
            const auto tg = theta.gradient(x, y);
            kth.set(k, {tg[1] * gu3.y[k], -0.5 * (tg[1] * gu3.x[k] + tg[0] * gu3.y[k]),
                        tg[0] * gu3.x[k]});
            const auto sv = rperp_conjugate(sp).apply({tg[0], tg[1]});
            q1[k] = sv[0];
            q2[k] = sv[1];
        }
    m.b0 = kernels::volume_average(g, lp);
    m.b0t = kernels::volume_average(g, mu3);
    m.c0 = kernels::volume_average(g, detp);
    m.c0t = kernels::volume_average(g, detu);
    m.e0 = kernels::volume_average(g, energy);

    // B = -< divdiv(K) psi + div(R hess psi grad_theta) u3 >
    const VecField divk = kernels::divergence(g, kth);
    ScalarField dkx(g), dky(g);
    dkx.v = divk.x;
    dky.v = divk.y;
    const ScalarField ddk_x = kernels::dx(g, dkx);
    const ScalarField ddk_y = kernels::dy(g, dky);
    const ScalarField dq1 = kernels::dx(g, q1);
    const ScalarField dq2 = kernels::dy(g, q2);
    ScalarField bfield(g);
    for (int k = 0; k < g.num_nodes(); ++k)
        bfield[k] = -((ddk_x[k] + ddk_y[k]) * psi[k] + (dq1[k] + dq2[k]) * u3[k]);
    m.B = kernels::volume_average(g, bfield);
    return m;
}

MomentSet moments_from_boundary(const Grid& g, const BoundaryFrame& f,
                                const BoundaryMomentInputs& in, bool strict_boundary_only,
                                const ScalarField* fallback_psi, const ScalarField* fallback_u3) {
    MomentSet m;
    const auto a = a0_from_boundary(g, f, in.psi.value, in.psi.dn);
    m.a0 = a.sym;
    const auto at = a0_from_boundary(g, f, in.cb.u3, in.cb.u3n);
    m.a0t = at.sym;
    m.c0 = c0_from_boundary(g, f, in.psi.value, in.psi.dn).value;
    m.c0t = c0_from_boundary(g, f, in.cb.u3, in.cb.u3n).value;
    m.B = B_term(g, f, in.psi, in.cb.u3, in.tn, in.theta);
    m.e0 = e0_from_cauchy(g, f, in.cb, in.tn, in.psi, in.layout);

    if (in.theta.has_constant_gradient()) {
        m.b0 = b0_from_cauchy(g, f, in.cb, in.tn, in.theta);
        m.b0t = b0t_from_cauchy(g, f, in.cb, in.psi, in.theta, in.layout);
    } else if (!strict_boundary_only && fallback_psi && fallback_u3) {
        const MomentSet vol = moments_from_field(g, *fallback_psi, *fallback_u3, in.theta,
                                                 in.layout);
        m.b0 = vol.b0;
        m.b0t = vol.b0t;
        m.b0_tag = Provenance::FromField;
    } else {
        require_affine(in.theta, "moments_from_boundary");
    }
    return m;
}

}  // namespace shellbound
