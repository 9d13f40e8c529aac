#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "shellbound/bounds.hpp"
#include "shellbound/oracle.hpp"

using namespace shellbound;

namespace {

MomentSet zero_moments() {
    MomentSet m;
    m.a0 = {0, 0, 0};
    m.b0 = {0, 0, 0};
    m.a0t = {0, 0, 0};
    m.b0t = {0, 0, 0};
    return m;
}

}  // namespace

TEST_CASE("constrained minimum matches hand-worked scalar cases") {
    const IsoTensor2D s1{2.0, 2.0}, s2{1.0, 1.0};
    const MandelVec a0{1.0, 0.0, 0.0};
    // g0 = <S A> consistent with A1 = A2 = a0 gives energy <A . S A> = 1.5.
    CHECK(mn_min_value(s1, s2, 0.5, a0, {1.5, 0.0, 0.0}) == doctest::Approx(1.5).epsilon(1e-12));
    // g0 = (2, 0, 0) forces a split between the phases; minimum is 4.
    CHECK(mn_min_value(s1, s2, 0.5, a0, {2.0, 0.0, 0.0}) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("constrained minimum agrees with the KKT oracle") {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> up(0.2, 3.0);
    std::uniform_real_distribution<double> uf(0.05, 0.95);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const IsoTensor2D s1{up(rng), up(rng)};
        IsoTensor2D s2{up(rng), up(rng)};
        // Keep the contrast away from zero so the closed form is defined.
        if (std::abs(s1.alpha - s2.alpha) < 0.05) s2.alpha += 0.1;
        if (std::abs(s1.beta - s2.beta) < 0.05) s2.beta += 0.1;
        const double f1 = uf(rng);
        const MandelVec a0{u(rng), u(rng), u(rng)};
        // Draw g0 from an achievable pair so the constraint set is nonempty.
        const MandelVec a1{u(rng), u(rng), u(rng)};
        const MandelVec a2{(a0.v1 - f1 * a1.v1) / (1 - f1), (a0.v2 - f1 * a1.v2) / (1 - f1),
                           (a0.v3 - f1 * a1.v3) / (1 - f1)};
        const MandelVec g0{f1 * s1.apply(a1).v1 + (1 - f1) * s2.apply(a2).v1,
                           f1 * s1.apply(a1).v2 + (1 - f1) * s2.apply(a2).v2,
                           f1 * s1.apply(a1).v3 + (1 - f1) * s2.apply(a2).v3};
        const double closed = mn_min_value(s1, s2, f1, a0, g0);
        const KktSolution kkt = kkt_two_phase(s1, s2, f1, a0, g0);
        worst = std::max(worst,
                         std::abs(closed - kkt.energy) / std::max(1.0, std::abs(kkt.energy)));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("constrained minimum rejects invalid inputs") {
    const IsoTensor2D s{1.0, 1.0};
    CHECK_THROWS(mn_min_value(s, s, 0.5, {1, 0, 0}, {1, 0, 0}));
    CHECK_THROWS(mn_min_value({2, 2}, {1, 1}, 0.0, {1, 0, 0}, {1, 0, 0}));
    CHECK_THROWS(mn_min_value({2, 2}, {1, 1}, 1.0, {1, 0, 0}, {1, 0, 0}));
}

TEST_CASE("bound gap is affine in each translation parameter") {
    MomentSet m = zero_moments();
    m.a0 = {0.7, 0.2, -0.3};
    m.b0 = {0.5, 0.1, -0.1};
    m.c0 = -0.04;
    m.a0t = {0.2, -0.1, 0.4};
    m.b0t = {0.3, -0.05, 0.5};
    m.c0t = 0.06;
    m.e0 = 2.0;
    const BoundInputs in = make_bound_inputs(m, PhaseMaterial(1.0, 1.0, 2.0, 2.0));
    const double f1 = 0.3;
    auto g = [&](double z, double zt) { return bound_gap(f1, z, zt, in); };
    for (auto [za, zb] : {std::pair{-0.1, 0.08}, std::pair{0.02, 0.11}}) {
        const double mid = 0.5 * (za + zb);
        CHECK(std::abs(g(za, -0.05) + g(zb, -0.05) - 2 * g(mid, -0.05)) <= 1e-12);
        CHECK(std::abs(g(-0.03, za) + g(-0.03, zb) - 2 * g(-0.03, mid)) <= 1e-12);
    }
}

TEST_CASE("translation slope matches the explicit formula") {
    MomentSet m = zero_moments();
    m.a0 = {0.7, 0.2, -0.3};
    m.b0 = {0.5, 0.1, -0.1};
    m.c0 = -0.04;
    m.e0 = 2.0;
    const PhaseMaterial mat(1.0, 1.0, 2.0, 2.0);
    const BoundInputs in = make_bound_inputs(m, mat);
    const double f1 = 0.3, f2 = 0.7;
    const double dz = 1e-3;
    const double numeric = (bound_gap(f1, dz, 0.0, in) - bound_gap(f1, -dz, 0.0, in)) / (2 * dz);

    // d(gap)/dzeta = -[slope + 2 c0 - 2 det a0] with
    // slope = sum_i (b0 - <L> a0)_i T_i (<L> a0 - b0)_i / ((L1 - L2)_i^2 f1 f2).
    const MandelVec a0 = sym_to_vec(m.a0), b0 = sym_to_vec(m.b0);
    const IsoTensor2D L1 = mat.L1(), L2 = mat.L2();
    const double T[3] = {1.0, -1.0, -1.0};
    const double comp_a[3] = {a0.v1, a0.v2, a0.v3};
    const double comp_b[3] = {b0.v1, b0.v2, b0.v3};
    const double l1[3] = {L1.alpha, L1.beta, L1.beta};
    const double l2[3] = {L2.alpha, L2.beta, L2.beta};
    double slope = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double avg = f1 * l1[i] + f2 * l2[i];
        const double r = comp_b[i] - avg * comp_a[i];
        slope += r * T[i] * (-r) / ((l1[i] - l2[i]) * (l1[i] - l2[i]) * f1 * f2);
    }
    const double analytic = -(slope + 2 * m.c0 - 2 * m.a0.det());
    CHECK(std::abs(numeric - analytic) <= 1e-8 * std::max(1.0, std::abs(analytic)));
}

TEST_CASE("relabeling the phases mirrors the feasible set") {
    MomentSet m = zero_moments();
    m.a0 = {0.7, 0.2, -0.3};
    m.b0 = {0.45, 0.1, -0.12};
    m.c0 = -0.04;
    m.a0t = {0.2, -0.1, 0.4};
    m.b0t = {0.35, -0.08, 0.55};
    m.c0t = 0.06;
    m.e0 = 2.0;
    const BoundInputs in12 = make_bound_inputs(m, PhaseMaterial(1.0, 1.0, 2.0, 2.0));
    const BoundInputs in21 = make_bound_inputs(m, PhaseMaterial(2.0, 2.0, 1.0, 1.0));
    for (double f1 : {0.2, 0.35, 0.6, 0.8}) {
        for (auto [z, zt] : corner_points(in12)) {
            const double a = bound_gap(f1, z, zt, in12);
            const double b = bound_gap(1.0 - f1, z, zt, in21);
            CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("zero moments give a zero gap") {
    const BoundInputs in = make_bound_inputs(zero_moments(), PhaseMaterial(1.0, 1.0, 2.0, 2.0));
    for (double f1 : {0.1, 0.5, 0.9})
        for (auto [z, zt] : corner_points(in)) CHECK(std::abs(bound_gap(f1, z, zt, in)) <= 1e-14);
}

TEST_CASE("flat shells decouple from the bending translation") {
    MomentSet m = zero_moments();
    m.a0 = {0.7, 0.2, -0.3};
    m.b0 = {0.45, 0.1, -0.12};
    m.c0 = -0.04;
    m.e0 = 1.5;
    const BoundInputs in = make_bound_inputs(m, PhaseMaterial(1.0, 1.0, 2.0, 2.0));
    const double base = bound_gap(0.4, 0.05, in.ranges.bending.lo, in);
    CHECK(std::abs(bound_gap(0.4, 0.05, 0.0, in) - base) <= 1e-12);
    CHECK(std::abs(bound_gap(0.4, 0.05, in.ranges.bending.hi, in) - base) <= 1e-12);
}

TEST_CASE("zero contrast yields the uninformative verdict") {
    MomentSet m = zero_moments();
    m.a0 = {1.0, 0.0, 0.0};
    m.e0 = 1.0;
    const BoundInputs in = make_bound_inputs(m, PhaseMaterial(1.0, 1.0, 1.0, 1.0));
    CHECK(in.degenerate_membrane);
    CHECK(in.degenerate_bending);
    const FeasibilityReport rep = feasible_fraction_set(in, {}, 0.25);
    CHECK(rep.degenerate);
    REQUIRE(rep.intervals.size() == 1);
    CHECK(rep.intervals[0].lo == doctest::Approx(0.0));
    CHECK(rep.intervals[0].hi == doctest::Approx(1.0));
    CHECK(rep.verdict.find("uninformative") != std::string::npos);
    CHECK(rep.true_f1_feasible);
}

TEST_CASE("translation ranges match the pinned eigenvalue windows") {
    const BoundInputs in = make_bound_inputs(zero_moments(), PhaseMaterial(0.0, 1.0, 0.0, 2.0));
    CHECK(in.ranges.membrane.lo == doctest::Approx(-0.125).epsilon(1e-12));
    CHECK(in.ranges.membrane.hi == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(in.ranges.bending.lo == doctest::Approx(-4.0 / 3.0).epsilon(1e-12));
    CHECK(in.ranges.bending.hi == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("a consistent synthetic state is declared feasible") {
    // Build moments from a two-phase laminate-like split that satisfies the
    // constraint structure exactly: A piecewise constant, u3 = 0.
    const PhaseMaterial mat(0.0, 1.0, 0.0, 2.0);
    const double f1 = 0.3, f2 = 0.7;
    const MandelVec A1{1.2, 0.0, 0.0}, A2{0.8, 0.3, 0.0};
    MomentSet m = zero_moments();
    const IsoTensor2D L1 = mat.L1(), L2 = mat.L2();
    const MandelVec la1 = L1.apply(A1), la2 = L2.apply(A2);
    m.a0 = vec_to_sym({f1 * A1.v1 + f2 * A2.v1, f1 * A1.v2 + f2 * A2.v2, f1 * A1.v3 + f2 * A2.v3});
    m.b0 = vec_to_sym({f1 * la1.v1 + f2 * la2.v1, f1 * la1.v2 + f2 * la2.v2,
                       f1 * la1.v3 + f2 * la2.v3});
    m.c0 = f1 * det_via_T(A1) + f2 * det_via_T(A2);
    m.e0 = f1 * A1.dot(la1) + f2 * A2.dot(la2);
    const BoundInputs in = make_bound_inputs(m, mat);
    const FeasibilityReport rep = feasible_fraction_set(in, {}, f1);
    CHECK_FALSE(rep.degenerate);
    CHECK(rep.true_f1_feasible);
    CHECK(rep.contains(f1));
    CHECK(rep.verdict.find("feasible") != std::string::npos);
}
