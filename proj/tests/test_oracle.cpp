#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "shellbound/oracle.hpp"

using namespace shellbound;

TEST_CASE("KKT oracle reproduces the consistent-field minimum") {
    // g0 = <S> a0: the constant field A1 = A2 = a0 is feasible and optimal.
    const KktSolution s =
        kkt_two_phase({2.0, 2.0}, {1.0, 1.0}, 0.5, {1.0, 0.0, 0.0}, {1.5, 0.0, 0.0});
    CHECK(s.energy == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(s.A1.v1 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(s.A2.v1 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(s.constraint_residual <= 1e-13);
}

TEST_CASE("KKT oracle pinned example with incompatible flux") {
    const KktSolution s =
        kkt_two_phase({2.0, 2.0}, {1.0, 1.0}, 0.5, {1.0, 0.0, 0.0}, {2.0, 0.0, 0.0});
    CHECK(s.energy == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("KKT oracle rejects degenerate inputs") {
    CHECK_THROWS(kkt_two_phase({1.0, 1.0}, {1.0, 1.0}, 0.5, {1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}));
    CHECK_THROWS(kkt_two_phase({2.0, 2.0}, {1.0, 1.0}, 0.0, {1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}));
}

TEST_CASE("Richardson quadrature: polynomial volume integrals") {
    const QuadRefinement q =
        refine_quadrature([](double x, double y) { return x * x * y; }, 4, 17);
    CHECK(q.value == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
    const QuadRefinement p = refine_quadrature([](double x, double y) { return x * y; }, 2, 17);
    CHECK(p.value == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("Richardson quadrature: boundary integral") {
    const QuadRefinement q =
        refine_boundary_quadrature([](double, double) { return 1.0; }, 2, 17);
    CHECK(q.value == doctest::Approx(4.0).epsilon(1e-13));
    const QuadRefinement s =
        refine_boundary_quadrature([](double x, double y) { return x + y; }, 4, 17);
    CHECK(s.value == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("convergence order estimation") {
    CHECK(convergence_order({4e-2, 1e-2, 2.5e-3}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(convergence_order({8e-3, 4e-3, 2e-3}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::isnan(convergence_order({1e-2, 2e-2})));       // non-decreasing
    CHECK(std::isnan(convergence_order({1e-2, 0.0})));        // non-positive
    CHECK(std::isnan(convergence_order({1e-2})));             // too short
}
