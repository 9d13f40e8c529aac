// Middle-surface height profiles theta with analytic derivatives.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "shellbound/tensor.hpp"

namespace shellbound {

enum class ProfileKind { Flat, Affine, Paraboloid, Sinusoidal };

/// theta(x) and its first two derivatives.
///   flat:        theta = 0
///   affine:      theta = c0 + c1 x1 + c2 x2
///   paraboloid:  theta = (c1 (x1-1/2)^2 + c2 (x2-1/2)^2) / 2
///   sinusoidal:  theta = c0 sin(pi c1 x1) sin(pi c2 x2)
struct ShellProfile {
    ProfileKind kind = ProfileKind::Flat;
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;

    static ShellProfile flat() { return {}; }
    static ShellProfile affine(double c0, double c1, double c2) {
        return {ProfileKind::Affine, c0, c1, c2};
    }
    static ShellProfile paraboloid(double c1, double c2) {
        return {ProfileKind::Paraboloid, 0.0, c1, c2};
    }
    static ShellProfile sinusoidal(double amp, double k1, double k2) {
        return {ProfileKind::Sinusoidal, amp, k1, k2};
    }

    bool is_flat() const { return kind == ProfileKind::Flat; }
    /// Affine profiles (flat included) have identically vanishing Hessian.
    bool has_constant_gradient() const {
        return kind == ProfileKind::Flat || kind == ProfileKind::Affine;
    }

    double value(double x, double y) const {
        switch (kind) {
            case ProfileKind::Flat: return 0.0;
            case ProfileKind::Affine: return c0 + c1 * x + c2 * y;
            case ProfileKind::Paraboloid: {
                const double a = x - 0.5, b = y - 0.5;
                return 0.5 * (c1 * a * a + c2 * b * b);
            }
            case ProfileKind::Sinusoidal:
                return c0 * std::sin(M_PI * c1 * x) * std::sin(M_PI * c2 * y);
        }
        return 0.0;
    }

    std::array<double, 2> gradient(double x, double y) const {
        switch (kind) {
            case ProfileKind::Flat: return {0.0, 0.0};
            case ProfileKind::Affine: return {c1, c2};
            case ProfileKind::Paraboloid: return {c1 * (x - 0.5), c2 * (y - 0.5)};
            case ProfileKind::Sinusoidal: {
                const double sx = std::sin(M_PI * c1 * x), cx = std::cos(M_PI * c1 * x);
                const double sy = std::sin(M_PI * c2 * y), cy = std::cos(M_PI * c2 * y);
                return {c0 * M_PI * c1 * cx * sy, c0 * M_PI * c2 * sx * cy};
            }
        }
        return {0.0, 0.0};
    }

    SymMat2 hessian(double x, double y) const {
        switch (kind) {
            case ProfileKind::Flat:
            case ProfileKind::Affine: return {0.0, 0.0, 0.0};
            case ProfileKind::Paraboloid: return {c1, 0.0, c2};
            case ProfileKind::Sinusoidal: {
                const double sx = std::sin(M_PI * c1 * x), cx = std::cos(M_PI * c1 * x);
                const double sy = std::sin(M_PI * c2 * y), cy = std::cos(M_PI * c2 * y);
                const double k1 = M_PI * c1, k2 = M_PI * c2;
                return {-c0 * k1 * k1 * sx * sy, c0 * k1 * k2 * cx * cy, -c0 * k2 * k2 * sx * sy};
            }
        }
        return {0.0, 0.0, 0.0};
    }
};

ShellProfile make_profile(const std::string& kind, double p0, double p1, double p2);

}  // namespace shellbound
