#include "shellbound/forward.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <stdexcept>

#include "shellbound/kernels.hpp"

namespace shellbound {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

// Affine row: value(u) = sum coeff_k u[col_k] + constant.
struct AffineRow {
    int ncols = 0;
    std::array<int, 16> col{};
    std::array<double, 16> val{};
    double constant = 0.0;

    void add(int c, double v) {
        col[ncols] = c;
        val[ncols] = v;
        ++ncols;
    }
    void clear() {
        ncols = 0;
        constant = 0.0;
    }
};

struct Assembler {
    std::vector<Triplet> trip;
    Eigen::VectorXd b;        // gradient convention: grad E = A u - b
    double c0 = 0.0;          // constant part of the energy

    explicit Assembler(int ndof) : b(Eigen::VectorXd::Zero(ndof)) {}

    // Adds the energy term (c/2) (rowA . u + ra)(rowB . u + rb).
    void add_quad(const AffineRow& A, const AffineRow& B, double c) {
        const double half = 0.5 * c;
        for (int a = 0; a < A.ncols; ++a)
            for (int bb = 0; bb < B.ncols; ++bb) {
                const double v = half * A.val[a] * B.val[bb];
                trip.emplace_back(A.col[a], B.col[bb], v);
                trip.emplace_back(B.col[bb], A.col[a], v);
            }
        for (int a = 0; a < A.ncols; ++a) b[A.col[a]] -= half * B.constant * A.val[a];
        for (int bb = 0; bb < B.ncols; ++bb) b[B.col[bb]] -= half * A.constant * B.val[bb];
        c0 += half * A.constant * B.constant;
    }
};

struct MaterialBend {
    double am, bm, mu;  // m = M H: m11 = am H11 + bm H22, m12 = (4mu/3) H12
};

MaterialBend bending_coeffs(const PhaseLayout& layout, double x, double y) {
    const double mu = layout.mu_at(x, y), lambda = layout.lambda_at(x, y);
    const double kt = 4.0 * lambda * mu / (3.0 * (lambda + 2.0 * mu));
    return {4.0 * mu / 3.0 + kt, kt, mu};
}

}  // namespace

struct ShellSystem::Impl {
    Grid grid;
    PhaseLayout layout;
    ShellProfile theta;
    BoundaryConditions bc;
    Forcing forcing;
    bool has_forcing = false;

    SpMat a_full;
    Eigen::VectorXd b_elastic;  // ghost-data contributions
    double c0 = 0.0;
    Eigen::VectorXd b_force;
    std::vector<int> free_of_full;  // -1 for fixed dofs
    std::vector<int> full_of_free;
    Eigen::VectorXd fixed_values;   // full-length, zero at free dofs

    Impl(const Grid& g, const PhaseLayout& lay, const ShellProfile& th,
         const BoundaryConditions& bcond, const Forcing* f)
        : grid(g), layout(lay), theta(th), bc(bcond), forcing(g), has_forcing(f != nullptr) {
        if (f) forcing = *f;
        assemble();
    }

    int dof_u1(int k) const { return k; }
    int dof_u2(int k) const { return grid.num_nodes() + k; }
    int dof_u3(int k) const { return 2 * grid.num_nodes() + k; }

    void assemble() {
        const int n = grid.n;
        const double h = grid.h;
        const int ndof = 3 * grid.num_nodes();
        Assembler asmb(ndof);
        asmb.trip.reserve(static_cast<std::size_t>(n) * n * 420);

        // Normal-derivative data addressed by edge coordinate.
        std::vector<double> gb(n), gt(n), gl(n), gr(n);
        for (int k = 0; k < n; ++k) {
            gb[k] = bc.u3n[0][k];
            gr[k] = bc.u3n[1][k];
            gt[n - 1 - k] = bc.u3n[2][k];
            gl[n - 1 - k] = bc.u3n[3][k];
        }

        // --- Membrane energy: bilinear strains at 2x2 Gauss points per cell.
        const double gq[2] = {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)};
        AffineRow r11, r22, r12;
        for (int j = 0; j + 1 < n; ++j)
            for (int i = 0; i + 1 < n; ++i) {
                const int nodes[4] = {grid.idx(i, j), grid.idx(i + 1, j), grid.idx(i, j + 1),
                                      grid.idx(i + 1, j + 1)};
                for (int qa = 0; qa < 2; ++qa)
                    for (int qb = 0; qb < 2; ++qb) {
                        const double xi = gq[qa], eta = gq[qb];
                        const double x = (i + xi) * h, y = (j + eta) * h;
                        const double dNx[4] = {-(1 - eta) / h, (1 - eta) / h, -eta / h, eta / h};
                        const double dNy[4] = {-(1 - xi) / h, -xi / h, (1 - xi) / h, xi / h};
                        const auto tg = theta.gradient(x, y);
                        r11.clear();
                        r22.clear();
                        r12.clear();
                        for (int a = 0; a < 4; ++a) {
                            r11.add(dof_u1(nodes[a]), dNx[a]);
                            r22.add(dof_u2(nodes[a]), dNy[a]);
                            r12.add(dof_u1(nodes[a]), 0.5 * dNy[a]);
                            r12.add(dof_u2(nodes[a]), 0.5 * dNx[a]);
                            if (tg[0] != 0.0 || tg[1] != 0.0) {
                                r11.add(dof_u3(nodes[a]), tg[0] * dNx[a]);
                                r22.add(dof_u3(nodes[a]), tg[1] * dNy[a]);
                                r12.add(dof_u3(nodes[a]),
                                        0.5 * (tg[0] * dNy[a] + tg[1] * dNx[a]));
                            }
                        }
                        const double mu = layout.mu_at(x, y), lambda = layout.lambda_at(x, y);
                        const double kappa = 4.0 * lambda * mu / (lambda + 2.0 * mu);
                        const double wg = 0.25 * h * h;
                        asmb.add_quad(r11, r11, wg * (4.0 * mu + kappa));
                        asmb.add_quad(r22, r22, wg * (4.0 * mu + kappa));
                        asmb.add_quad(r11, r22, 2.0 * wg * kappa);
                        asmb.add_quad(r12, r12, wg * 8.0 * mu);
                    }
            }

        // --- Bending energy, diagonal Hessian components at nodes.  The
        // clamped condition u3_n enters through ghost-node elimination, which
        // keeps the nodal trapezoid quadrature exactly compatible with the
        // compact stencils (quadratic states are discrete minimizers).
        const double h2 = h * h;
        AffineRow h11, h22;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                h11.clear();
                h22.clear();
                if (i == 0) {
                    h11.add(dof_u3(grid.idx(1, j)), 2.0 / h2);
                    h11.add(dof_u3(grid.idx(0, j)), -2.0 / h2);
                    h11.constant = 2.0 * gl[j] / h;
                } else if (i == n - 1) {
                    h11.add(dof_u3(grid.idx(n - 2, j)), 2.0 / h2);
                    h11.add(dof_u3(grid.idx(n - 1, j)), -2.0 / h2);
                    h11.constant = 2.0 * gr[j] / h;
                } else {
                    h11.add(dof_u3(grid.idx(i - 1, j)), 1.0 / h2);
                    h11.add(dof_u3(grid.idx(i, j)), -2.0 / h2);
                    h11.add(dof_u3(grid.idx(i + 1, j)), 1.0 / h2);
                }
                if (j == 0) {
                    h22.add(dof_u3(grid.idx(i, 1)), 2.0 / h2);
                    h22.add(dof_u3(grid.idx(i, 0)), -2.0 / h2);
                    h22.constant = 2.0 * gb[i] / h;
                } else if (j == n - 1) {
                    h22.add(dof_u3(grid.idx(i, n - 2)), 2.0 / h2);
                    h22.add(dof_u3(grid.idx(i, n - 1)), -2.0 / h2);
                    h22.constant = 2.0 * gt[i] / h;
                } else {
                    h22.add(dof_u3(grid.idx(i, j - 1)), 1.0 / h2);
                    h22.add(dof_u3(grid.idx(i, j)), -2.0 / h2);
                    h22.add(dof_u3(grid.idx(i, j + 1)), 1.0 / h2);
                }
                const auto mb = bending_coeffs(layout, grid.x(i), grid.y(j));
                const double w = trapezoid_weight(grid, i, j);
                asmb.add_quad(h11, h11, w * mb.am);
                asmb.add_quad(h22, h22, w * mb.am);
                asmb.add_quad(h11, h22, 2.0 * w * mb.bm);
            }

        // Mixed bending component at cell centers (compact cross difference,
        // compatible with clamped perturbations at every interior node).
        AffineRow h12;
        for (int j = 0; j + 1 < n; ++j)
            for (int i = 0; i + 1 < n; ++i) {
                h12.clear();
                h12.add(dof_u3(grid.idx(i, j)), 1.0 / h2);
                h12.add(dof_u3(grid.idx(i + 1, j + 1)), 1.0 / h2);
                h12.add(dof_u3(grid.idx(i + 1, j)), -1.0 / h2);
                h12.add(dof_u3(grid.idx(i, j + 1)), -1.0 / h2);
                const auto mb = bending_coeffs(layout, (i + 0.5) * h, (j + 0.5) * h);
                asmb.add_quad(h12, h12, h2 * (8.0 * mb.mu / 3.0));
            }

        a_full.resize(ndof, ndof);
        a_full.setFromTriplets(asmb.trip.begin(), asmb.trip.end());
        b_elastic = asmb.b;
        c0 = asmb.c0;

        // Forcing: nodal trapezoid quadrature of <f.u' + g u3>.
        b_force = Eigen::VectorXd::Zero(ndof);
        if (has_forcing)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    const int k = grid.idx(i, j);
                    const double w = trapezoid_weight(grid, i, j);
                    b_force[dof_u1(k)] += w * forcing.f1[k];
                    b_force[dof_u2(k)] += w * forcing.f2[k];
                    b_force[dof_u3(k)] += w * forcing.g[k];
                }

        // Dirichlet reduction bookkeeping.
        free_of_full.assign(ndof, -1);
        fixed_values = Eigen::VectorXd::Zero(ndof);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const int k = grid.idx(i, j);
                if (grid.on_boundary(i, j)) {
                    fixed_values[dof_u1(k)] = bc.u1[k];
                    fixed_values[dof_u2(k)] = bc.u2[k];
                    fixed_values[dof_u3(k)] = bc.u3[k];
                } else {
                    free_of_full[dof_u1(k)] = 0;
                    free_of_full[dof_u2(k)] = 0;
                    free_of_full[dof_u3(k)] = 0;
                }
            }
        full_of_free.clear();
        for (int d = 0; d < ndof; ++d)
            if (free_of_full[d] == 0) {
                free_of_full[d] = static_cast<int>(full_of_free.size());
                full_of_free.push_back(d);
            }
    }
};

ShellSystem::ShellSystem(const Grid& g, const PhaseLayout& layout, const ShellProfile& theta,
                         const BoundaryConditions& bc, const Forcing* forcing)
    : impl_(std::make_unique<Impl>(g, layout, theta, bc, forcing)) {}
ShellSystem::~ShellSystem() = default;
ShellSystem::ShellSystem(ShellSystem&&) noexcept = default;

std::pair<ShellState, SolveReport> ShellSystem::solve() const {
    const Impl& im = *impl_;
    const int nfree = static_cast<int>(im.full_of_free.size());

    // Reduced system A_ff z = (b - A u_fixed)|free.
    std::vector<Triplet> trip;
    trip.reserve(static_cast<std::size_t>(im.a_full.nonZeros()));
    for (int col = 0; col < im.a_full.outerSize(); ++col)
        for (SpMat::InnerIterator it(im.a_full, col); it; ++it) {
            const int fr = im.free_of_full[it.row()];
            const int fc = im.free_of_full[it.col()];
            if (fr >= 0 && fc >= 0) trip.emplace_back(fr, fc, it.value());
        }
    SpMat a_red(nfree, nfree);
    a_red.setFromTriplets(trip.begin(), trip.end());

    const Eigen::VectorXd coupling = im.a_full * im.fixed_values;
    Eigen::VectorXd rhs(nfree);
    for (int f = 0; f < nfree; ++f) {
        const int d = im.full_of_free[f];
        rhs[f] = im.b_elastic[d] + im.b_force[d] - coupling[d];
    }

    SolveReport report;
    report.free_dofs = nfree;
    Eigen::VectorXd z;
    Eigen::SimplicialLDLT<SpMat> ldlt(a_red);
    bool ok = ldlt.info() == Eigen::Success;
    if (ok) {
        z = ldlt.solve(rhs);
        ok = ldlt.info() == Eigen::Success;
        report.method = "ldlt";
    }
    const double rhs_norm = std::max(1.0, rhs.norm());
    if (ok) report.residual = (a_red * z - rhs).norm() / rhs_norm;
    if (!ok || report.residual > 1e-9) {
        Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper> cg(a_red);
        cg.setTolerance(1e-13);
        cg.setMaxIterations(20000);
        if (ok)
            z = cg.solveWithGuess(rhs, z);
        else
            z = cg.solve(rhs);
        report.method = "cg";
        report.cg_iterations = static_cast<int>(cg.iterations());
        report.residual = (a_red * z - rhs).norm() / rhs_norm;
        if (report.residual > 1e-9)
            throw std::runtime_error("shell solve did not reach the residual tolerance");
    }

    Eigen::VectorXd ufull = im.fixed_values;
    for (int f = 0; f < nfree; ++f) ufull[im.full_of_free[f]] = z[f];
    report.energy = 0.5 * ufull.dot(im.a_full * ufull) - im.b_elastic.dot(ufull) + im.c0;

    ShellState st{im.grid, im.theta, ScalarField(im.grid), ScalarField(im.grid),
                  ScalarField(im.grid), {}, {}, {}, {}};
    const int nn = im.grid.num_nodes();
    for (int k = 0; k < nn; ++k) {
        st.u1[k] = ufull[k];
        st.u2[k] = ufull[nn + k];
        st.u3[k] = ufull[2 * nn + k];
    }
    derive_state_fields(st, im.layout);
    return {std::move(st), report};
}

std::pair<ShellState, SolveReport> solve_shell(const Grid& g, const PhaseLayout& layout,
                                               const ShellProfile& theta,
                                               const BoundaryConditions& bc,
                                               const Forcing* forcing) {
    return ShellSystem(g, layout, theta, bc, forcing).solve();
}

void derive_state_fields(ShellState& st, const PhaseLayout& layout) {
    const Grid& g = st.grid;
    const VecField g1 = kernels::gradient(g, st.u1);
    const VecField g2 = kernels::gradient(g, st.u2);
    const VecField g3 = kernels::gradient(g, st.u3);
    st.hess_u3 = kernels::hessian(g, st.u3);
    st.strain = TensorField(g);
    st.stress = TensorField(g);
    st.moment = TensorField(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const int k = g.idx(i, j);
            const double x = g.x(i), y = g.y(j);
            const auto tg = st.theta.gradient(x, y);
            const SymMat2 e{g1.x[k] + tg[0] * g3.x[k],
                            0.5 * (g1.y[k] + g2.x[k] + tg[0] * g3.y[k] + tg[1] * g3.x[k]),
                            g2.y[k] + tg[1] * g3.y[k]};
            const double mu = layout.mu_at(x, y), lambda = layout.lambda_at(x, y);
            const double kappa = 4.0 * lambda * mu / (lambda + 2.0 * mu);
            const SymMat2 s{(4.0 * mu + kappa) * e.a11 + kappa * e.a22, 4.0 * mu * e.a12,
                            kappa * e.a11 + (4.0 * mu + kappa) * e.a22};
            const double kt = kappa / 3.0;
            const SymMat2 hh = st.hess_u3.at(k);
            const SymMat2 m{(4.0 * mu / 3.0 + kt) * hh.a11 + kt * hh.a22,
                            (4.0 * mu / 3.0) * hh.a12,
                            kt * hh.a11 + (4.0 * mu / 3.0 + kt) * hh.a22};
            st.strain.set(k, e);
            st.stress.set(k, s);
            st.moment.set(k, m);
        }
}

Forcing manufactured_forcing(const Grid& g, const PhaseLayout& layout, const ShellProfile& theta,
                             const ScalarField& u1s, const ScalarField& u2s,
                             const ScalarField& u3s) {
    ShellState st{g, theta, u1s, u2s, u3s, {}, {}, {}, {}};
    derive_state_fields(st, layout);
    const VecField div_s = kernels::divergence(g, st.stress);
    const VecField div_m = kernels::divergence(g, st.moment);
    ScalarField divm_x(g), divm_y(g);
    divm_x.v = div_m.x;
    divm_y.v = div_m.y;
    const ScalarField ddm_x = kernels::dx(g, divm_x);
    const ScalarField ddm_y = kernels::dy(g, divm_y);

    ScalarField sth_x(g), sth_y(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const int k = g.idx(i, j);
            const auto tg = theta.gradient(g.x(i), g.y(j));
            const auto v = st.stress.at(k).apply({tg[0], tg[1]});
            sth_x[k] = v[0];
            sth_y[k] = v[1];
        }
    const ScalarField dsx = kernels::dx(g, sth_x);
    const ScalarField dsy = kernels::dy(g, sth_y);

    Forcing f(g);
    for (int k = 0; k < g.num_nodes(); ++k) {
        f.f1[k] = -div_s.x[k];
        f.f2[k] = -div_s.y[k];
        f.g[k] = ddm_x[k] + ddm_y[k] - (dsx[k] + dsy[k]);
    }
    return f;
}

BoundaryConditions boundary_conditions_from_fields(const Grid& g, const BoundaryFrame& f,
                                                   const Scalar2Fn& u1, const Scalar2Fn& u2,
                                                   const Scalar2Fn& u3, const Grad2Fn& grad_u3) {
    BoundaryConditions bc(g, f);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            if (!g.on_boundary(i, j)) continue;
            const int k = g.idx(i, j);
            bc.u1[k] = u1(g.x(i), g.y(j));
            bc.u2[k] = u2(g.x(i), g.y(j));
            bc.u3[k] = u3(g.x(i), g.y(j));
        }
    for (int e = 0; e < 4; ++e) {
        const Edge& edge = f.edges[e];
        for (std::size_t q = 0; q < edge.nodes.size(); ++q) {
            const int node = edge.nodes[q];
            const auto gr = grad_u3(g.x(node % g.n), g.y(node / g.n));
            bc.u3n[e][q] = gr[0] * edge.normal[0] + gr[1] * edge.normal[1];
        }
    }
    return bc;
}

BoundaryConditions make_loading(const std::string& name, double amplitude, int fourier_k,
                                const Grid& g, const BoundaryFrame& f) {
    const double a = amplitude;
    auto zero = [](double, double) { return 0.0; };
    auto zero_grad = [](double, double) { return std::array<double, 2>{0.0, 0.0}; };
    if (name == "uniaxial-stretch")
        return boundary_conditions_from_fields(
            g, f, [a](double x, double) { return a * x; }, zero, zero, zero_grad);
    if (name == "shear")
        return boundary_conditions_from_fields(
            g, f, [a](double, double y) { return a * y; }, zero, zero, zero_grad);
    if (name == "bend-x")
        return boundary_conditions_from_fields(
            g, f, zero, zero, [a](double x, double) { return 0.5 * a * x * x; },
            [a](double x, double) { return std::array<double, 2>{a * x, 0.0}; });
    if (name == "bend-y")
        return boundary_conditions_from_fields(
            g, f, zero, zero, [a](double, double y) { return 0.5 * a * y * y; },
            [a](double, double y) { return std::array<double, 2>{0.0, a * y}; });
    if (name == "stretch-bend")
        return boundary_conditions_from_fields(
            g, f, [a](double x, double) { return a * x; }, zero,
            [a](double x, double y) { return 0.5 * a * (x * x + y * y); },
            [a](double x, double y) { return std::array<double, 2>{a * x, a * y}; });
    if (name == "twist")
        return boundary_conditions_from_fields(
            g, f, zero, zero, [a](double x, double y) { return a * x * y; },
            [a](double x, double y) { return std::array<double, 2>{a * y, a * x}; });
    if (name == "fourier") {
        const double w = M_PI * fourier_k;
        return boundary_conditions_from_fields(
            g, f, [a, w](double, double y) { return a * std::sin(w * y); },
            [a, w](double x, double) { return a * std::sin(w * x); },
            [a, w](double x, double y) { return a * std::sin(w * x) * std::sin(w * y); },
            [a, w](double x, double y) {
                return std::array<double, 2>{a * w * std::cos(w * x) * std::sin(w * y),
                                             a * w * std::sin(w * x) * std::cos(w * y)};
            });
    }
    throw std::invalid_argument("unknown loading: " + name);
}

TensorTraces tensor_traces(const Grid&, const BoundaryFrame& f, const TensorField& s) {
    TensorTraces tr{EdgeValues(f), EdgeValues(f), EdgeValues(f), EdgeValues(f)};
    for (int e = 0; e < 4; ++e) {
        const Edge& edge = f.edges[e];
        for (std::size_t q = 0; q < edge.nodes.size(); ++q) {
            const auto m = s.at(edge.nodes[q]);
            const auto sn = m.apply(edge.normal);
            tr.n_x[e][q] = sn[0];
            tr.n_y[e][q] = sn[1];
            tr.n_t[e][q] = sn[0] * edge.tangent[0] + sn[1] * edge.tangent[1];
            tr.n_n[e][q] = sn[0] * edge.normal[0] + sn[1] * edge.normal[1];
        }
    }
    return tr;
}

CauchyBundle extract_cauchy(const ShellState& st, const BoundaryFrame& frame) {
    const Grid& g = st.grid;
    CauchyBundle cb;
    cb.u1 = restrict_to_boundary(g, frame, st.u1);
    cb.u2 = restrict_to_boundary(g, frame, st.u2);
    const ScalarTraces t3 = boundary_trace(g, frame, st.u3);
    cb.u3 = t3.value;
    cb.u3n = t3.dn;

    const TensorTraces s_tr = tensor_traces(g, frame, st.stress);
    cb.sn_x = s_tr.n_x;
    cb.sn_y = s_tr.n_y;
    cb.sn_t = s_tr.n_t;
    cb.sn_n = s_tr.n_n;

    const TensorTraces m_tr = tensor_traces(g, frame, st.moment);
    cb.mn_x = m_tr.n_x;
    cb.mn_y = m_tr.n_y;
    cb.mn_t = m_tr.n_t;
    cb.mn_n = m_tr.n_n;

    const VecField div_m = kernels::divergence(g, st.moment);
    cb.divm_n = EdgeValues(frame);
    cb.s_gradtheta_n = EdgeValues(frame);
    for (int e = 0; e < 4; ++e) {
        const Edge& edge = frame.edges[e];
        for (std::size_t q = 0; q < edge.nodes.size(); ++q) {
            const int k = edge.nodes[q];
            cb.divm_n[e][q] = div_m.x[k] * edge.normal[0] + div_m.y[k] * edge.normal[1];
            const auto tg = st.theta.gradient(g.x(k % g.n), g.y(k / g.n));
            const auto sth = st.stress.at(k).apply({tg[0], tg[1]});
            cb.s_gradtheta_n[e][q] = sth[0] * edge.normal[0] + sth[1] * edge.normal[1];
        }
    }
    const EdgeValues mnt_dt = edge_derivative(g, frame, cb.mn_t);
    cb.shear_combined = EdgeValues(frame);
    for (int e = 0; e < 4; ++e)
        for (std::size_t q = 0; q < cb.shear_combined[e].size(); ++q)
            cb.shear_combined[e][q] =
                cb.divm_n[e][q] - cb.s_gradtheta_n[e][q] + mnt_dt[e][q];
    return cb;
}

}  // namespace shellbound
