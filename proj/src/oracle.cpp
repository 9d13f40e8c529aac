#include "shellbound/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace shellbound {

namespace {

Eigen::Vector3d to_eigen(const MandelVec& v) { return {v.v1, v.v2, v.v3}; }
MandelVec from_eigen(const Eigen::Vector3d& v) { return {v[0], v[1], v[2]}; }

Eigen::Matrix3d iso_matrix(const IsoTensor2D& s) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(0, 0) = s.alpha;
    m(1, 1) = s.beta;
    m(2, 2) = s.beta;
    return m;
}

double trapezoid_square(const std::function<double(double, double)>& f, int n) {
    const double h = 1.0 / (n - 1);
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        const double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
        for (int i = 0; i < n; ++i) {
            const double wi = (i == 0 || i == n - 1) ? 0.5 : 1.0;
            sum += wi * wj * f(i * h, j * h);
        }
    }
    return sum * h * h;
}

double trapezoid_contour(const std::function<double(double, double)>& f, int n) {
    const double h = 1.0 / (n - 1);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
        const double s = k * h;
        sum += w * (f(s, 0.0) + f(1.0, s) + f(1.0 - s, 1.0) + f(0.0, 1.0 - s));
    }
    return sum * h;
}

QuadRefinement romberg(const std::function<double(int)>& level_value, int levels) {
    if (levels < 1) throw std::invalid_argument("refine_quadrature: levels must be >= 1");
    QuadRefinement out;
    std::vector<std::vector<double>> table(levels);
    for (int l = 0; l < levels; ++l) {
        table[l].resize(l + 1);
        table[l][0] = level_value(l);
        out.raw.push_back(table[l][0]);
        for (int m = 1; m <= l; ++m) {
            const double p = std::pow(4.0, m);
            table[l][m] = (p * table[l][m - 1] - table[l - 1][m - 1]) / (p - 1.0);
        }
    }
    out.value = table[levels - 1][levels - 1];
    out.error_estimate = levels > 1
                             ? std::abs(out.value - table[levels - 2][levels - 2])
                             : std::numeric_limits<double>::quiet_NaN();
    return out;
}

}  // namespace

KktSolution kkt_two_phase(const IsoTensor2D& s1, const IsoTensor2D& s2, double f1,
                          const MandelVec& a0, const MandelVec& g0) {
    if (!(f1 > 0.0 && f1 < 1.0))
        throw std::invalid_argument("kkt_two_phase: f1 must lie in (0,1)");
    const double f2 = 1.0 - f1;
    const Eigen::Matrix3d m1 = iso_matrix(s1);
    const Eigen::Matrix3d m2 = iso_matrix(s2);

    // Unknowns x = [A1; A2]; the average and flux constraints already pin
    // them down, so the minimum is read off the unique feasible point.
    Eigen::Matrix<double, 6, 6> sys = Eigen::Matrix<double, 6, 6>::Zero();
    Eigen::Matrix<double, 6, 1> rhs;
    sys.block<3, 3>(0, 0) = f1 * Eigen::Matrix3d::Identity();
    sys.block<3, 3>(0, 3) = f2 * Eigen::Matrix3d::Identity();
    sys.block<3, 3>(3, 0) = f1 * m1;
    sys.block<3, 3>(3, 3) = f2 * m2;
    rhs.head<3>() = to_eigen(a0);
    rhs.tail<3>() = to_eigen(g0);

    const Eigen::FullPivLU<Eigen::Matrix<double, 6, 6>> lu(sys);
    if (!lu.isInvertible())
        throw std::invalid_argument("kkt_two_phase: singular constraint system (zero contrast)");
    const Eigen::Matrix<double, 6, 1> x = lu.solve(rhs);

    KktSolution sol;
    sol.A1 = from_eigen(x.head<3>());
    sol.A2 = from_eigen(x.tail<3>());
    sol.energy = f1 * x.head<3>().dot(m1 * x.head<3>()) + f2 * x.tail<3>().dot(m2 * x.tail<3>());
    sol.constraint_residual = (sys * x - rhs).norm();
    return sol;
}

QuadRefinement refine_quadrature(const std::function<double(double, double)>& f, int levels,
                                 int n0) {
    return romberg([&](int l) { return trapezoid_square(f, ((n0 - 1) << l) + 1); }, levels);
}

QuadRefinement refine_boundary_quadrature(const std::function<double(double, double)>& f,
                                          int levels, int n0) {
    return romberg([&](int l) { return trapezoid_contour(f, ((n0 - 1) << l) + 1); }, levels);
}

double convergence_order(const std::vector<double>& errors) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (errors.size() < 2) return nan;
    for (size_t k = 0; k < errors.size(); ++k) {
        if (!(errors[k] > 0.0) || !std::isfinite(errors[k])) return nan;
        if (k > 0 && errors[k] >= errors[k - 1]) return nan;
    }
    // Least-squares slope of log2(error) against level index, negated.
    const double n = static_cast<double>(errors.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k = 0; k < errors.size(); ++k) {
        const double x = static_cast<double>(k);
        const double y = std::log2(errors[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace shellbound
