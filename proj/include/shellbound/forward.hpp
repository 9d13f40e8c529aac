// Forward solver for the two-phase shallow-shell system: discrete energy
// minimization in the physical unknowns (u', u3) with Dirichlet data
// (u'; u3, u3_n), plus Cauchy-data extraction from solved states.
#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "shellbound/boundary.hpp"
#include "shellbound/grid.hpp"
#include "shellbound/layout.hpp"
#include "shellbound/profile.hpp"

namespace shellbound {

/// Dirichlet data: u' and u3 at boundary nodes (stored on full-grid fields,
/// interior entries unused) and the outward normal derivative of u3 per edge.
struct BoundaryConditions {
    ScalarField u1, u2, u3;
    std::array<std::vector<double>, 4> u3n;  // aligned with BoundaryFrame edges

    explicit BoundaryConditions(const Grid& g, const BoundaryFrame& f)
        : u1(g), u2(g), u3(g) {
        for (int k = 0; k < 4; ++k) u3n[k].assign(f.edges[k].nodes.size(), 0.0);
    }
};

using Scalar2Fn = std::function<double(double, double)>;
using Grad2Fn = std::function<std::array<double, 2>(double, double)>;

/// Sample boundary data from globally defined fields.
BoundaryConditions boundary_conditions_from_fields(const Grid& g, const BoundaryFrame& f,
                                                   const Scalar2Fn& u1, const Scalar2Fn& u2,
                                                   const Scalar2Fn& u3, const Grad2Fn& grad_u3);

/// Named loading catalog: uniaxial-stretch, shear, bend-x, bend-y,
/// stretch-bend, twist, fourier (with wavenumber k).  All entries are
/// restrictions of global polynomial/trigonometric fields.
BoundaryConditions make_loading(const std::string& name, double amplitude, int fourier_k,
                                const Grid& g, const BoundaryFrame& f);

/// Volume forcing (work-conjugate to (u', u3)); zero by default.
struct Forcing {
    ScalarField f1, f2, g;
    explicit Forcing(const Grid& grid) : f1(grid), f2(grid), g(grid) {}
};

struct SolveReport {
    double residual = 0.0;       // relative algebraic residual of the reduced solve
    double energy = 0.0;         // value of the discrete energy at the solution
    int free_dofs = 0;
    std::string method;          // "ldlt" or "cg"
    int cg_iterations = 0;
};

/// Solved state with the derived tensor fields of the constitutive law.
struct ShellState {
    Grid grid;
    ShellProfile theta;
    ScalarField u1, u2, u3;
    TensorField strain;    // e^theta
    TensorField stress;    // s^theta
    TensorField moment;    // m = M hess(u3)
    TensorField hess_u3;
};

class ShellSystem {
  public:
    ShellSystem(const Grid& g, const PhaseLayout& layout, const ShellProfile& theta,
                const BoundaryConditions& bc, const Forcing* forcing = nullptr);
    ~ShellSystem();
    ShellSystem(ShellSystem&&) noexcept;

    std::pair<ShellState, SolveReport> solve() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::pair<ShellState, SolveReport> solve_shell(const Grid& g, const PhaseLayout& layout,
                                               const ShellProfile& theta,
                                               const BoundaryConditions& bc,
                                               const Forcing* forcing = nullptr);

/// Forcing fields that make (u1*, u2*, u3*) a solution of the forced system,
/// built by applying the discrete operators to the target fields:
/// f' = -div s^theta(u*), g = divdiv m(u3*) - div(s^theta grad theta).
Forcing manufactured_forcing(const Grid& g, const PhaseLayout& layout, const ShellProfile& theta,
                             const ScalarField& u1s, const ScalarField& u2s,
                             const ScalarField& u3s);

/// Recompute e^theta, s^theta, m from displacement fields with the nodal
/// stencil operators (used both after a solve and for manufactured states).
void derive_state_fields(ShellState& st, const PhaseLayout& layout);

/// Boundary traces of a solved state: the physical Cauchy data plus the raw
/// traces consumed by the boundary functionals.
struct CauchyBundle {
    // Dirichlet-side traces
    EdgeValues u1, u2, u3, u3n;
    // Neumann-side traces of the membrane stress
    EdgeValues sn_x, sn_y, sn_t, sn_n;
    // Bending traces
    EdgeValues divm_n, mn_t, mn_n, s_gradtheta_n, shear_combined;  // (div m - s grad_theta) . n
    // Raw traces for the null-Lagrangian functionals
    EdgeValues mn_x, mn_y;
};

CauchyBundle extract_cauchy(const ShellState& st, const BoundaryFrame& frame);

/// Traces of a symmetric tensor field: (S n) components and frame projections.
struct TensorTraces {
    EdgeValues n_x, n_y, n_t, n_n;
};
TensorTraces tensor_traces(const Grid& g, const BoundaryFrame& f, const TensorField& s);

}  // namespace shellbound
