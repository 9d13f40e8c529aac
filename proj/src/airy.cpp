#include "shellbound/airy.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "shellbound/kernels.hpp"
#include "shellbound/tensor.hpp"

namespace shellbound {

namespace {

// 1D stencil (offset, coefficient) pairs matching the kernel operators.
struct Stencil1D {
    int m = 0;
    std::array<int, 4> off{};
    std::array<double, 4> c{};
    void add(int o, double v) {
        off[m] = o;
        c[m] = v;
        ++m;
    }
};

Stencil1D d1_stencil(int i, int n, double h) {
    Stencil1D s;
    if (i == 0) {
        s.add(0, -1.5 / h);
        s.add(1, 2.0 / h);
        s.add(2, -0.5 / h);
    } else if (i == n - 1) {
        s.add(0, 1.5 / h);
        s.add(-1, -2.0 / h);
        s.add(-2, 0.5 / h);
    } else {
        s.add(-1, -0.5 / h);
        s.add(1, 0.5 / h);
    }
    return s;
}

Stencil1D d2_stencil(int i, int n, double h) {
    const double h2 = h * h;
    Stencil1D s;
    if (i == 0) {
        s.add(0, 2.0 / h2);
        s.add(1, -5.0 / h2);
        s.add(2, 4.0 / h2);
        s.add(3, -1.0 / h2);
    } else if (i == n - 1) {
        s.add(0, 2.0 / h2);
        s.add(-1, -5.0 / h2);
        s.add(-2, 4.0 / h2);
        s.add(-3, -1.0 / h2);
    } else {
        s.add(-1, 1.0 / h2);
        s.add(0, -2.0 / h2);
        s.add(1, 1.0 / h2);
    }
    return s;
}

struct Row {
    int m = 0;
    std::array<int, 16> col{};
    std::array<double, 16> c{};
    void add(int cl, double v) {
        col[m] = cl;
        c[m] = v;
        ++m;
    }
};

double rms(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return v.empty() ? 0.0 : std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

AiryField airy_reconstruct(const Grid& g, const TensorField& s_theta, double div_tol) {
    const int n = g.n;
    const int nn = g.num_nodes();

    // Divergence check: the Airy representation only exists for equilibrium
    // stresses.  The scale is the larger of the stress magnitude and its
    // gradient magnitude, so both constant and oscillatory inputs are judged
    // fairly.
    {
        const VecField div = kernels::divergence(g, s_theta);
        ScalarField c11(g), c12(g), c22(g);
        c11.v = s_theta.a11;
        c12.v = s_theta.a12;
        c22.v = s_theta.a22;
        std::vector<double> grads;
        grads.reserve(6 * nn);
        for (const ScalarField* f : {&c11, &c12, &c22}) {
            const VecField gr = kernels::gradient(g, *f);
            grads.insert(grads.end(), gr.x.begin(), gr.x.end());
            grads.insert(grads.end(), gr.y.begin(), gr.y.end());
        }
        std::vector<double> divs;
        divs.reserve(2 * nn);
        divs.insert(divs.end(), div.x.begin(), div.x.end());
        divs.insert(divs.end(), div.y.begin(), div.y.end());
        std::vector<double> mags;
        mags.reserve(3 * nn);
        mags.insert(mags.end(), s_theta.a11.begin(), s_theta.a11.end());
        mags.insert(mags.end(), s_theta.a12.begin(), s_theta.a12.end());
        mags.insert(mags.end(), s_theta.a22.begin(), s_theta.a22.end());
        const double scale = std::max(rms(grads), rms(mags));
        const double ratio = scale > 0.0 ? rms(divs) / scale : 0.0;
        if (ratio > div_tol)
            throw std::invalid_argument(
                "airy_reconstruct: input stress is not divergence-free (relative divergence " +
                std::to_string(ratio) + ")");
    }

    // Normal equations of min |hess(psi) - R s|^2 summed over all nodes,
    // with the off-diagonal component double-weighted (Frobenius metric).
    // The kernel of the discrete Hessian is exactly the affine functions,
    // removed by the three gauge constraints at the anchor node.
    using SpMat = Eigen::SparseMatrix<double>;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(nn) * 120);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nn + 3);

    auto accumulate = [&](const Row& r, double w, double target) {
        for (int a = 0; a < r.m; ++a) {
            for (int b = 0; b < r.m; ++b)
                trip.emplace_back(r.col[a], r.col[b], w * r.c[a] * r.c[b]);
            rhs[r.col[a]] += w * r.c[a] * target;
        }
    };

    Row row;
    for (int j = 0; j < n; ++j) {
        const Stencil1D sy1 = d1_stencil(j, n, g.h);
        const Stencil1D sy2 = d2_stencil(j, n, g.h);
        for (int i = 0; i < n; ++i) {
            const Stencil1D sx1 = d1_stencil(i, n, g.h);
            const Stencil1D sx2 = d2_stencil(i, n, g.h);
            const int k = g.idx(i, j);
            // R s: hess(psi) should equal (s22, -s12; -s12, s11).
            row.m = 0;
            for (int a = 0; a < sx2.m; ++a) row.add(g.idx(i + sx2.off[a], j), sx2.c[a]);
            accumulate(row, 1.0, s_theta.a22[k]);
            row.m = 0;
            for (int a = 0; a < sy2.m; ++a) row.add(g.idx(i, j + sy2.off[a]), sy2.c[a]);
            accumulate(row, 1.0, s_theta.a11[k]);
            row.m = 0;
            for (int a = 0; a < sx1.m; ++a)
                for (int b = 0; b < sy1.m; ++b)
                    row.add(g.idx(i + sx1.off[a], j + sy1.off[b]), sx1.c[a] * sy1.c[b]);
            accumulate(row, 2.0, -s_theta.a12[k]);
        }
    }

    // Gauge: psi = 0 and centered grad psi = 0 at the center node.
    const int anchor = g.center_node();
    const int ai = anchor % n, aj = anchor / n;
    auto constrain = [&](int crow, std::initializer_list<std::pair<int, double>> entries) {
        for (const auto& [cl, v] : entries) {
            trip.emplace_back(nn + crow, cl, v);
            trip.emplace_back(cl, nn + crow, v);
        }
    };
    constrain(0, {{anchor, 1.0}});
    constrain(1, {{g.idx(ai + 1, aj), 0.5 / g.h}, {g.idx(ai - 1, aj), -0.5 / g.h}});
    constrain(2, {{g.idx(ai, aj + 1), 0.5 / g.h}, {g.idx(ai, aj - 1), -0.5 / g.h}});

    SpMat kkt(nn + 3, nn + 3);
    kkt.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<SpMat> lu(kkt);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("airy_reconstruct: least-squares system factorization failed");
    const Eigen::VectorXd sol = lu.solve(rhs);

    AiryField out;
    out.psi = ScalarField(g);
    for (int k = 0; k < nn; ++k) out.psi[k] = sol[k];
    out.anchor = anchor;

    const TensorField hp = kernels::hessian(g, out.psi);
    double mis = 0.0;
    for (int k = 0; k < nn; ++k) {
        const double d11 = hp.a11[k] - s_theta.a22[k];
        const double d22 = hp.a22[k] - s_theta.a11[k];
        const double d12 = hp.a12[k] + s_theta.a12[k];
        mis += d11 * d11 + d22 * d22 + 2.0 * d12 * d12;
    }
    out.residual = std::sqrt(mis / nn);

    const VecField div = kernels::divergence(g, s_theta);
    std::vector<double> dv;
    dv.insert(dv.end(), div.x.begin(), div.x.end());
    dv.insert(dv.end(), div.y.begin(), div.y.end());
    out.div_check = rms(dv);
    return out;
}

Shell2Residual shell2_residual(const Grid& g, const ScalarField& psi, const ScalarField& u3,
                               const ShellProfile& theta, const PhaseLayout& layout, int margin) {
    const int n = g.n;
    const TensorField hp = kernels::hessian(g, psi);
    const TensorField hu = kernels::hessian(g, u3);
    const VecField gu3 = kernels::gradient(g, u3);

    TensorField t1(g);  // L hess psi - K_theta
    TensorField t2(g);  // M hess u3
    ScalarField q1(g), q2(g);  // components of R hess psi grad theta
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const int k = g.idx(i, j);
            const double x = g.x(i), y = g.y(j);
            const double lambda = layout.lambda_at(x, y), mu = layout.mu_at(x, y);
            const auto tg = theta.gradient(x, y);
            const SymMat2 kth{tg[1] * gu3.y[k], -0.5 * (tg[1] * gu3.x[k] + tg[0] * gu3.y[k]),
                              tg[0] * gu3.x[k]};
            t1.set(k, iso_L(lambda, mu).apply(hp.at(k)) - kth);
            t2.set(k, iso_M(lambda, mu).apply(hu.at(k)));
            const auto sv = rperp_conjugate(hp.at(k)).apply({tg[0], tg[1]});
            q1[k] = sv[0];
            q2[k] = sv[1];
        }

    const VecField d1 = kernels::divergence(g, t1);
    const VecField d2v = kernels::divergence(g, t2);
    ScalarField d1x(g), d1y(g), d2x(g), d2y(g);
    d1x.v = d1.x;
    d1y.v = d1.y;
    d2x.v = d2v.x;
    d2y.v = d2v.y;
    const ScalarField r1a = kernels::dx(g, d1x), r1b = kernels::dy(g, d1y);
    const ScalarField r2a = kernels::dx(g, d2x), r2b = kernels::dy(g, d2y);
    const ScalarField qx = kernels::dx(g, q1), qy = kernels::dy(g, q2);

    Shell2Residual out;
    double s1 = 0.0, s2 = 0.0;
    int count = 0;
    for (int j = margin; j < n - margin; ++j)
        for (int i = margin; i < n - margin; ++i) {
            const int k = g.idx(i, j);
            const double e1 = r1a[k] + r1b[k];
            const double e2 = r2a[k] + r2b[k] - (qx[k] + qy[k]);
            s1 += e1 * e1;
            s2 += e2 * e2;
            ++count;
        }
    out.r1 = std::sqrt(s1 / count);
    out.r2 = std::sqrt(s2 / count);
    return out;
}

TransformedNeumann cauchy_from_displacement(const Grid& g, const BoundaryFrame& frame,
                                            const CauchyBundle& cb, const ShellProfile& theta) {
    TransformedNeumann out{EdgeValues(frame), EdgeValues(frame), EdgeValues(frame),
                           EdgeValues(frame), EdgeValues(frame), EdgeValues(frame),
                           EdgeValues(frame)};
    const EdgeValues u1t = edge_derivative(g, frame, cb.u1);
    const EdgeValues u2t = edge_derivative(g, frame, cb.u2);
    const EdgeValues u3t = edge_derivative(g, frame, cb.u3);

    EdgeValues n_dot(frame);
    for (int e = 0; e < 4; ++e) {
        const Edge& edge = frame.edges[e];
        const auto nrm = edge.normal;
        const auto tan = edge.tangent;
        for (std::size_t q = 0; q < edge.nodes.size(); ++q) {
            n_dot[e][q] = nrm[0] * u1t[e][q] + nrm[1] * u2t[e][q];
            out.moment[e][q] = tan[0] * u1t[e][q] + tan[1] * u2t[e][q];
            // Cartesian gradient of u3 from its Dirichlet pair.
            out.u3_g1[e][q] = u3t[e][q] * tan[0] + cb.u3n[e][q] * nrm[0];
            out.u3_g2[e][q] = u3t[e][q] * tan[1] + cb.u3n[e][q] * nrm[1];
        }
    }
    // shear = -(n . u'_t)_t, differentiated within each edge only.
    const EdgeValues n_dot_t = edge_derivative(g, frame, n_dot);
    for (int e = 0; e < 4; ++e)
        for (std::size_t q = 0; q < out.shear[e].size(); ++q) out.shear[e][q] = -n_dot_t[e][q];

    // theta-correction traces: K = (1/2)(R(grad_theta x grad_u3) + transpose)
    // and div K . n from the closed-form expansions in terms of the boundary
    // gradient of u3 and hess theta.
    EdgeValues g1t = edge_derivative(g, frame, out.u3_g1);
    EdgeValues g2t = edge_derivative(g, frame, out.u3_g2);
    for (int e = 0; e < 4; ++e) {
        const Edge& edge = frame.edges[e];
        for (std::size_t q = 0; q < edge.nodes.size(); ++q) {
            const int k = edge.nodes[q];
            const double x = g.x(k % g.n), y = g.y(k / g.n);
            const auto tg = theta.gradient(x, y);
            const SymMat2 ht = theta.hessian(x, y);
            const double b1 = out.u3_g1[e][q], b2 = out.u3_g2[e][q];
            const SymMat2 kk{tg[1] * b2, -0.5 * (tg[1] * b1 + tg[0] * b2), tg[0] * b1};
            const auto kn = kk.apply(edge.normal);
            out.k_nt[e][q] = kn[0] * edge.tangent[0] + kn[1] * edge.tangent[1];
            out.k_nn[e][q] = kn[0] * edge.normal[0] + kn[1] * edge.normal[1];
            // div(R(grad_theta x grad_u3)) . n = theta_2 (u3_1)_t - theta_1 (u3_2)_t
            const double diva = tg[1] * g1t[e][q] - tg[0] * g2t[e][q];
            // div(R(grad_theta x grad_u3)^T) . n from hess theta and grad u3.
            const double divb =
                (ht.a12 * b2 - ht.a22 * b1) * edge.normal[0] +
                (-ht.a11 * b2 + ht.a12 * b1) * edge.normal[1];
            out.divk_n[e][q] = 0.5 * (diva + divb);
        }
    }
    return out;
}

PsiTraces dirichlet_psi_from_traction(const Grid& g, const BoundaryFrame& frame,
                                      const EdgeValues& sn_x, const EdgeValues& sn_y,
                                      const EdgeValues* reference_psi, double balance_tol) {
    PsiTraces out{EdgeValues(frame), EdgeValues(frame)};
    EdgeValues gx(frame), gy(frame);  // grad psi along the contour

    // d(grad psi)/ds = -Rp (s n) with Rp = [[0,1],[-1,0]]: integrate the
    // traction counterclockwise, carrying grad psi and psi across corners
    // (both are continuous; the traction itself may jump at corners).
    double px = 0.0, py = 0.0, ps = 0.0;
    double scale = 1.0;
    for (int e = 0; e < 4; ++e)
        for (std::size_t q = 0; q < sn_x[e].size(); ++q)
            scale = std::max({scale, std::fabs(sn_x[e][q]), std::fabs(sn_y[e][q])});
    for (int e = 0; e < 4; ++e) {
        const Edge& edge = frame.edges[e];
        const std::size_t m = edge.nodes.size();
        for (std::size_t q = 0; q < m; ++q) {
            if (q > 0) {
                // -Rp (sn) = (-sn_y, sn_x)
                const double fx0 = -sn_y[e][q - 1], fy0 = sn_x[e][q - 1];
                const double fx1 = -sn_y[e][q], fy1 = sn_x[e][q];
                const double px0 = px, py0 = py;
                px += 0.5 * g.h * (fx0 + fx1);
                py += 0.5 * g.h * (fy0 + fy1);
                const double dpsi0 = px0 * edge.tangent[0] + py0 * edge.tangent[1];
                const double dpsi1 = px * edge.tangent[0] + py * edge.tangent[1];
                ps += 0.5 * g.h * (dpsi0 + dpsi1);
            }
            gx[e][q] = px;
            gy[e][q] = py;
            out.value[e][q] = ps;
            out.dn[e][q] = px * edge.normal[0] + py * edge.normal[1];
        }
    }
    // Closure: the left edge ends at the bottom-left corner, so after the
    // loop (px, py, ps) hold the fully integrated contour values, which must
    // return to their starting values (net force and net moment balance).
    if (std::fabs(px) / scale > balance_tol || std::fabs(py) / scale > balance_tol)
        throw std::invalid_argument("dirichlet_psi_from_traction: net traction force " +
                                    std::to_string(std::hypot(px, py)) +
                                    " violates equilibrium");
    if (std::fabs(ps) / scale > balance_tol)
        throw std::invalid_argument("dirichlet_psi_from_traction: net moment violates equilibrium");

    if (reference_psi) {
        // Fix the affine gauge psi += a + b x + c y by matching the reference
        // at three non-collinear corner nodes.
        const auto node_xy = [&](int e, std::size_t q) {
            const int k = frame.edges[e].nodes[q];
            return std::array<double, 2>{g.x(k % g.n), g.y(k / g.n)};
        };
        const std::array<std::pair<int, std::size_t>, 3> picks = {
            std::pair<int, std::size_t>{0, 0},
            {0, frame.edges[0].nodes.size() - 1},
            {2, frame.edges[2].nodes.size() - 1}};
        Eigen::Matrix3d mat;
        Eigen::Vector3d rv;
        for (int r = 0; r < 3; ++r) {
            const auto [e, q] = picks[r];
            const auto xy = node_xy(e, q);
            mat(r, 0) = 1.0;
            mat(r, 1) = xy[0];
            mat(r, 2) = xy[1];
            rv[r] = (*reference_psi)[e][q] - out.value[e][q];
        }
        const Eigen::Vector3d abc = mat.fullPivLu().solve(rv);
        for (int e = 0; e < 4; ++e) {
            const Edge& edge = frame.edges[e];
            for (std::size_t q = 0; q < edge.nodes.size(); ++q) {
                const auto xy = node_xy(e, q);
                out.value[e][q] += abc[0] + abc[1] * xy[0] + abc[2] * xy[1];
                out.dn[e][q] += abc[1] * edge.normal[0] + abc[2] * edge.normal[1];
            }
        }
    }
    return out;
}

}  // namespace shellbound
