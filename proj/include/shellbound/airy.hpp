// Airy-function machinery: least-squares reconstruction of psi from a
// membrane stress field, residuals of the transformed (psi, u3) system, the
// displacement-to-Neumann trace maps, and recovery of (psi, psi_n) on the
// boundary from the traction.
#pragma once

#include "shellbound/boundary.hpp"
#include "shellbound/forward.hpp"
#include "shellbound/grid.hpp"
#include "shellbound/profile.hpp"

namespace shellbound {

/// Scalar potential with rotated Hessian matching a divergence-free stress.
/// Gauge: psi and its centered gradient vanish at the anchor node.
struct AiryField {
    ScalarField psi;
    int anchor = 0;          // grid node index of the gauge anchor
    double residual = 0.0;   // RMS misfit |hess(psi) - R s|
    double div_check = 0.0;  // relative divergence of the input stress
};

/// Reconstruct psi with R hess(psi) = s in the least-squares sense over all
/// grid functions, gauge-fixed at the center node.  Throws if the input
/// stress fails the divergence check (relative to its own gradient scale).
AiryField airy_reconstruct(const Grid& g, const TensorField& s_theta, double div_tol = 0.1);

/// RMS residuals of the two transformed equations, measured on nodes at
/// least `margin` layers away from the boundary (the one-sided closure of
/// iterated stencils loses accuracy in the outermost layers).
struct Shell2Residual {
    double r1 = 0.0;  // divdiv(L hess psi) - (1/2) divdiv(R(grad_theta x grad_u3) + sym)
    double r2 = 0.0;  // divdiv(M hess u3) - div(R hess psi grad_theta)
};
Shell2Residual shell2_residual(const Grid& g, const ScalarField& psi, const ScalarField& u3,
                               const ShellProfile& theta, const PhaseLayout& layout,
                               int margin = 3);

/// Neumann-side traces of the transformed system computed purely from the
/// physical Dirichlet data (u', u3, u3_n) and the known profile theta.
struct TransformedNeumann {
    EdgeValues shear;    // -(n . u'_t)_t      : right side of the shear-type trace
    EdgeValues moment;   // t . u'_t           : right side of the moment-type trace
    EdgeValues k_nt;     // (K n) . t,  K = (1/2)(R(grad_theta x grad_u3) + sym)
    EdgeValues k_nn;     // (K n) . n
    EdgeValues divk_n;   // div K . n, built from u3, u3_n, grad theta, hess theta
    EdgeValues u3_g1;    // Cartesian grad u3 on the boundary (from u3, u3_n)
    EdgeValues u3_g2;
};
TransformedNeumann cauchy_from_displacement(const Grid& g, const BoundaryFrame& frame,
                                            const CauchyBundle& cb, const ShellProfile& theta);

/// Dirichlet traces of psi recovered from the traction s^theta n by contour
/// integration of grad(psi)' = -Rp (s n) along the boundary.  Checks global
/// force and moment balance (contour closure).  When a reference trace is
/// supplied the free affine gauge is fixed so the values agree at three
/// non-collinear corner nodes; otherwise psi and grad psi vanish at the
/// first node of the bottom edge.
struct PsiTraces {
    EdgeValues value, dn;
};
PsiTraces dirichlet_psi_from_traction(const Grid& g, const BoundaryFrame& frame,
                                      const EdgeValues& sn_x, const EdgeValues& sn_y,
                                      const EdgeValues* reference_psi = nullptr,
                                      double balance_tol = 1e-6);

}  // namespace shellbound
