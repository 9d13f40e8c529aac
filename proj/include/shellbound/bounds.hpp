// Translation-method bounds: the closed-form constrained minimum, the
// two-parameter bound gap, corner evaluation, and extraction of the set of
// volume fractions compatible with the measured moments.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "shellbound/moments.hpp"
#include "shellbound/tensor.hpp"

namespace shellbound {

/// Everything the bound evaluation needs: moments, per-phase tensors, and
/// admissible translation ranges.  Degenerate contrast (equal eigenvalues
/// across phases in either block) disables the closed form.
struct BoundInputs {
    MomentSet moments;
    PhaseMaterial material = PhaseMaterial(0.0, 1.0, 0.0, 1.0);
    ZetaRanges ranges;
    bool degenerate_membrane = false;
    bool degenerate_bending = false;
};
BoundInputs make_bound_inputs(const MomentSet& moments, const PhaseMaterial& material);

/// Closed-form value of min <A . S A> over fields with <A> = a0 and
/// <S A> = g0 in a two-phase medium with volume fractions (f1, 1-f1):
///   g0 . a0 + (S1-S2)^{-2}/(f1 f2) [g0 - <S> a0] . [(f2 S1 + f1 S2) g0 - S1 S2 a0].
/// Throws on zero contrast in any component.
double mn_min_value(const IsoTensor2D& s1, const IsoTensor2D& s2, double f1, const MandelVec& a0,
                    const MandelVec& g0);

/// Gap between the two sides of the volume-fraction inequality at a trial
/// fraction f1 and translation parameters (zeta, zetat); nonnegative gap at
/// all four corner points certifies that f1 is compatible with the data.
double bound_gap(double f1, double zeta, double zetat, const BoundInputs& in);

/// The four extremal points {-beta*, alpha*} x {-beta~*, alpha~*}.
std::array<std::array<double, 2>, 4> corner_points(const BoundInputs& in);

struct ScanParams {
    int grid = 4096;
    double epsilon = 1e-3;     // scanned fraction range (epsilon, 1 - epsilon)
    double refine_tol = 1e-6;  // bisection resolution of interval endpoints
    double gap_tol = -1.0;     // negative => 1e-8 * max(1, |e0|)
};

struct FeasibilityReport {
    bool degenerate = false;
    std::string verdict;
    struct Interval {
        double lo, hi;
    };
    std::vector<Interval> intervals;
    double true_f1 = -1.0;  // < 0 when unknown
    bool true_f1_feasible = false;
    double gap_tol = 0.0;
    // Sampled gap curves (per corner) for plotting.
    std::vector<double> scan_f1;
    std::array<std::vector<double>, 4> corner_gaps;

    bool contains(double f) const {
        for (const auto& iv : intervals)
            if (f >= iv.lo && f <= iv.hi) return true;
        return false;
    }
};

/// Scan + bisection extraction of the feasible fraction set.  Degenerate
/// contrast yields the uninformative full interval with an explanation.
FeasibilityReport feasible_fraction_set(const BoundInputs& in, const ScanParams& scan = {},
                                        double true_f1 = -1.0);

}  // namespace shellbound
