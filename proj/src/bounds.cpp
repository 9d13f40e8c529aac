#include "shellbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace shellbound {

namespace {

constexpr std::array<double, 3> kT = {1.0, -1.0, -1.0};

std::array<double, 3> diag(const IsoTensor2D& s) { return {s.alpha, s.beta, s.beta}; }

bool degenerate_pair(const IsoTensor2D& s1, const IsoTensor2D& s2) {
    const double scale = std::max({std::abs(s1.alpha), std::abs(s2.alpha), std::abs(s1.beta),
                                   std::abs(s2.beta), 1e-300});
    return std::abs(s1.alpha - s2.alpha) <= 1e-12 * scale ||
           std::abs(s1.beta - s2.beta) <= 1e-12 * scale;
}

/// Quadratic-in-moments part of the bound's right-hand side that does not
/// multiply the translation parameter:
///   (S1-S2)^{-2}/(f1 f2) [b0 - <L> a0] . [(f2 L1 + f1 L2) b0 - L1 L2 a0]
std::array<double, 3> comps(const MandelVec& v) { return {v.v1, v.v2, v.v3}; }

double product_term(const IsoTensor2D& l1, const IsoTensor2D& l2, double f1, const MandelVec& a0v,
                    const MandelVec& b0v) {
    const double f2 = 1.0 - f1;
    const auto d1 = diag(l1);
    const auto d2 = diag(l2);
    const auto a0 = comps(a0v);
    const auto b0 = comps(b0v);
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double dl = d1[i] - d2[i];
        const double avg = f1 * d1[i] + f2 * d2[i];
        const double first = b0[i] - avg * a0[i];
        const double second = (f2 * d1[i] + f1 * d2[i]) * b0[i] - d1[i] * d2[i] * a0[i];
        sum += first * second / (dl * dl * f1 * f2);
    }
    return sum;
}

/// Slope of the minimum value with respect to the translation parameter:
///   (S1-S2)^{-2}/(f1 f2) [b0 - <L> a0] . [<L> T a0 - T b0]
double zeta_slope(const IsoTensor2D& l1, const IsoTensor2D& l2, double f1, const MandelVec& a0v,
                  const MandelVec& b0v) {
    const double f2 = 1.0 - f1;
    const auto d1 = diag(l1);
    const auto d2 = diag(l2);
    const auto a0 = comps(a0v);
    const auto b0 = comps(b0v);
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double dl = d1[i] - d2[i];
        const double avg = f1 * d1[i] + f2 * d2[i];
        const double first = b0[i] - avg * a0[i];
        const double second = kT[i] * (avg * a0[i] - b0[i]);
        sum += first * second / (dl * dl * f1 * f2);
    }
    return sum;
}

}  // namespace

BoundInputs make_bound_inputs(const MomentSet& moments, const PhaseMaterial& material) {
    BoundInputs in;
    in.moments = moments;
    in.material = material;
    in.ranges = zeta_ranges(material);
    in.degenerate_membrane = degenerate_pair(material.L1(), material.L2());
    in.degenerate_bending = degenerate_pair(material.M1(), material.M2());
    return in;
}

double mn_min_value(const IsoTensor2D& s1, const IsoTensor2D& s2, double f1, const MandelVec& a0,
                    const MandelVec& g0) {
    if (!(f1 > 0.0 && f1 < 1.0)) throw std::invalid_argument("mn_min_value: f1 must lie in (0,1)");
    const double f2 = 1.0 - f1;
    const auto d1 = diag(s1);
    const auto d2 = diag(s2);
    const auto a = comps(a0);
    const auto g = comps(g0);
    double value = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double dl = d1[i] - d2[i];
        if (dl == 0.0)
            throw std::invalid_argument("mn_min_value: zero contrast in a tensor component");
        value += g[i] * a[i];
        const double avg = f1 * d1[i] + f2 * d2[i];
        const double first = g[i] - avg * a[i];
        const double second = (f2 * d1[i] + f1 * d2[i]) * g[i] - d1[i] * d2[i] * a[i];
        value += first * second / (dl * dl * f1 * f2);
    }
    return value;
}

double bound_gap(double f1, double zeta, double zetat, const BoundInputs& in) {
    const MomentSet& m = in.moments;
    const double lhs = m.e0 - m.b0.dot(m.a0) - m.b0t.dot(m.a0t);

    const IsoTensor2D l1 = in.material.L1();
    const IsoTensor2D l2 = in.material.L2();
    const IsoTensor2D m1 = in.material.M1();
    const IsoTensor2D m2 = in.material.M2();
    const MandelVec a0 = sym_to_vec(m.a0);
    const MandelVec b0 = sym_to_vec(m.b0);
    const MandelVec a0t = sym_to_vec(m.a0t);
    const MandelVec b0t = sym_to_vec(m.b0t);

    double rhs = product_term(l1, l2, f1, a0, b0) + product_term(m1, m2, f1, a0t, b0t);
    rhs += zeta * (zeta_slope(l1, l2, f1, a0, b0) + 2.0 * m.c0 - 2.0 * m.a0.det());
    rhs += zetat * (zeta_slope(m1, m2, f1, a0t, b0t) + 2.0 * m.c0t - 2.0 * m.a0t.det());
    return lhs - rhs;
}

std::array<std::array<double, 2>, 4> corner_points(const BoundInputs& in) {
    const double lo = in.ranges.membrane.lo;
    const double hi = in.ranges.membrane.hi;
    const double lot = in.ranges.bending.lo;
    const double hit = in.ranges.bending.hi;
    return {{{lo, lot}, {lo, hit}, {hi, lot}, {hi, hit}}};
}

FeasibilityReport feasible_fraction_set(const BoundInputs& in, const ScanParams& scan,
                                        double true_f1) {
    FeasibilityReport rep;
    rep.true_f1 = true_f1;
    rep.gap_tol =
        scan.gap_tol >= 0.0 ? scan.gap_tol : 1e-8 * std::max(1.0, std::abs(in.moments.e0));

    if (in.degenerate_membrane || in.degenerate_bending) {
        rep.degenerate = true;
        rep.intervals.push_back({0.0, 1.0});
        rep.verdict =
            "uninformative: (0,1) - zero contrast in at least one tensor component, bound applies "
            "to every volume fraction";
        rep.true_f1_feasible = true_f1 > 0.0;
        return rep;
    }
    if (scan.grid < 2) throw std::invalid_argument("feasible_fraction_set: grid must be >= 2");

    const auto corners = corner_points(in);
    auto min_gap = [&](double f) {
        double g = bound_gap(f, corners[0][0], corners[0][1], in);
        for (int c = 1; c < 4; ++c) g = std::min(g, bound_gap(f, corners[c][0], corners[c][1], in));
        return g;
    };
    auto feasible = [&](double f) { return min_gap(f) >= -rep.gap_tol; };

    const double lo = scan.epsilon;
    const double hi = 1.0 - scan.epsilon;
    rep.scan_f1.resize(scan.grid);
    for (int c = 0; c < 4; ++c) rep.corner_gaps[c].resize(scan.grid);
    std::vector<char> ok(scan.grid);
    for (int k = 0; k < scan.grid; ++k) {
        const double f = lo + (hi - lo) * k / (scan.grid - 1);
        rep.scan_f1[k] = f;
        double g = 1e300;
        for (int c = 0; c < 4; ++c) {
            rep.corner_gaps[c][k] = bound_gap(f, corners[c][0], corners[c][1], in);
            g = std::min(g, rep.corner_gaps[c][k]);
        }
        ok[k] = g >= -rep.gap_tol;
    }

    // Bisect a feasibility transition between two adjacent scan points;
    // returns the boundary location to the requested resolution.
    auto bisect = [&](double fa, double fb, bool a_ok) {
        while (fb - fa > scan.refine_tol) {
            const double mid = 0.5 * (fa + fb);
            if (feasible(mid) == a_ok)
                fa = mid;
            else
                fb = mid;
        }
        return 0.5 * (fa + fb);
    };

    int k = 0;
    while (k < scan.grid) {
        if (!ok[k]) {
            ++k;
            continue;
        }
        int start = k;
        while (k + 1 < scan.grid && ok[k + 1]) ++k;
        FeasibilityReport::Interval iv;
        iv.lo = start == 0 ? lo : bisect(rep.scan_f1[start - 1], rep.scan_f1[start], false);
        iv.hi = k == scan.grid - 1 ? hi : bisect(rep.scan_f1[k], rep.scan_f1[k + 1], true);
        rep.intervals.push_back(iv);
        ++k;
    }

    rep.true_f1_feasible = true_f1 > 0.0 && rep.contains(true_f1);
    std::ostringstream os;
    if (rep.intervals.empty()) {
        os << "infeasible: no volume fraction in (" << lo << ", " << hi
           << ") satisfies the bound; moments are inconsistent with the assumed phase pair";
    } else {
        os << "feasible fractions:";
        for (const auto& iv : rep.intervals) os << " [" << iv.lo << ", " << iv.hi << "]";
    }
    rep.verdict = os.str();
    return rep;
}

}  // namespace shellbound
