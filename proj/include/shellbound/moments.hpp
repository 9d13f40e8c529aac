// Boundary-determined moments of the transformed fields: <hess psi>,
// <det hess psi>, <L hess psi>, their bending (tilde) analogs, the coupling
// term B, and the energy e0.  Every moment also has a volume-quadrature form
// for cross-validation.
//
// All boundary expressions are assembled in corner-safe form: tangential
// integration by parts is performed per edge, and the resulting corner terms
// are evaluated from the corner values of the traces, which on the square
// are determined by the Dirichlet data of the two incident edges.
#pragma once

#include <optional>
#include <string>

#include "shellbound/airy.hpp"
#include "shellbound/boundary.hpp"
#include "shellbound/forward.hpp"
#include "shellbound/grid.hpp"
#include "shellbound/layout.hpp"
#include "shellbound/profile.hpp"

namespace shellbound {

enum class Provenance { FromBoundary, FromField };

inline const char* to_string(Provenance p) {
    return p == Provenance::FromBoundary ? "from_boundary" : "from_field";
}

/// The scalars and tensors feeding the translation bounds.
struct MomentSet {
    SymMat2 a0, b0;    // <hess psi>, <L hess psi>
    double c0 = 0.0;   // <det hess psi>
    SymMat2 a0t, b0t;  // <hess u3>, <M hess u3>
    double c0t = 0.0;  // <det hess u3>
    double e0 = 0.0;   // <L hess psi . hess psi> + <M hess u3 . hess u3>
    double B = 0.0;    // coupling null-Lagrangian of the profile terms
    Provenance a0_tag = Provenance::FromBoundary, b0_tag = Provenance::FromBoundary;
    Provenance c0_tag = Provenance::FromBoundary, e0_tag = Provenance::FromBoundary;
    Provenance B_tag = Provenance::FromBoundary;
};

/// <hess w> from the Dirichlet pair (w, w_n): the full boundary matrix
/// integral n (grad w)^T, returned with its symmetric part and the norm of
/// the skew part (which must vanish up to discretization error).
struct BoundaryHessianAvg {
    SymMat2 sym;
    double skew = 0.0;
};
BoundaryHessianAvg a0_from_boundary(const Grid& g, const BoundaryFrame& frame,
                                    const EdgeValues& value, const EdgeValues& dn);

/// <det hess w> from the Dirichlet pair, in both Cartesian contour forms
/// (they agree analytically; the spread is a discretization self-check).
struct DetForms {
    double value = 0.0;  // average of the two forms
    double form1 = 0.0;
    double form2 = 0.0;
};
DetForms c0_from_boundary(const Grid& g, const BoundaryFrame& frame, const EdgeValues& value,
                          const EdgeValues& dn);

/// <L hess psi> from the transformed Neumann data (quadratic-multiplier
/// Green identities) plus the profile correction.  The boundary-only path
/// requires an affine (or flat) profile; otherwise throws.
/// half_mixed_multiplier switches the off-diagonal multiplier from x1 x2 to
/// x1 x2 / 2 (compensated in assembly; both conventions must agree).
SymMat2 b0_from_cauchy(const Grid& g, const BoundaryFrame& frame, const CauchyBundle& cb,
                       const TransformedNeumann& tn, const ShellProfile& theta,
                       bool half_mixed_multiplier = false);

/// <M hess u3> from the physical Neumann data of the bending equation plus
/// the psi-trace correction for the coupling term.  Affine profile required.
SymMat2 b0t_from_cauchy(const Grid& g, const BoundaryFrame& frame, const CauchyBundle& cb,
                        const PsiTraces& psi, const ShellProfile& theta,
                        const PhaseLayout& layout, bool half_mixed_multiplier = false);

/// Coupling null-Lagrangian B of the profile terms, from (psi, psi_n),
/// (u3, u3_n) and the profile-built traces.
double B_term(const Grid& g, const BoundaryFrame& frame, const PsiTraces& psi,
              const EdgeValues& u3, const TransformedNeumann& tn, const ShellProfile& theta);

/// Energy moment e0 from boundary data alone (valid for any profile).
/// Throws if the value is negative beyond -tol * max(1, |value|).
double e0_from_cauchy(const Grid& g, const BoundaryFrame& frame, const CauchyBundle& cb,
                      const TransformedNeumann& tn, const PsiTraces& psi,
                      const PhaseLayout& layout, double tol = 1e-8);

/// Volume-quadrature evaluation of every moment (the cross-validation
/// oracle, and the fallback for curved profiles).
MomentSet moments_from_field(const Grid& g, const ScalarField& psi, const ScalarField& u3,
                             const ShellProfile& theta, const PhaseLayout& layout);

/// Full boundary-path assembly.  For curved profiles, b0/b0t (and only they)
/// fall back to the field values when fallback fields are supplied, with the
/// provenance tag recording it; in strict mode the fallback throws instead.
struct BoundaryMomentInputs {
    const CauchyBundle& cb;
    const TransformedNeumann& tn;
    const PsiTraces& psi;
    const ShellProfile& theta;
    const PhaseLayout& layout;
};
MomentSet moments_from_boundary(const Grid& g, const BoundaryFrame& frame,
                                const BoundaryMomentInputs& in, bool strict_boundary_only = false,
                                const ScalarField* fallback_psi = nullptr,
                                const ScalarField* fallback_u3 = nullptr);

}  // namespace shellbound
