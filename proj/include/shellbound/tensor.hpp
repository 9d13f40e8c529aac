// Symmetric 2x2 matrix algebra in the orthonormal (Mandel) basis, isotropic
// fourth-order tensors stored by their two eigenvalues, the R-perp
// conjugation, and the translation matrix T = diag(1,-1,-1).
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace shellbound {

/// Symmetric 2x2 matrix. Frobenius product: A.B = a11 b11 + a22 b22 + 2 a12 b12.
struct SymMat2 {
    double a11 = 0.0;
    double a12 = 0.0;
    double a22 = 0.0;

    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a12; }
    double dot(const SymMat2& b) const {
        return a11 * b.a11 + a22 * b.a22 + 2.0 * a12 * b.a12;
    }
    double norm() const { return std::sqrt(dot(*this)); }

    SymMat2 operator+(const SymMat2& b) const { return {a11 + b.a11, a12 + b.a12, a22 + b.a22}; }
    SymMat2 operator-(const SymMat2& b) const { return {a11 - b.a11, a12 - b.a12, a22 - b.a22}; }
    SymMat2 operator*(double c) const { return {c * a11, c * a12, c * a22}; }
    SymMat2& operator+=(const SymMat2& b) {
        a11 += b.a11; a12 += b.a12; a22 += b.a22;
        return *this;
    }

    // A v for a 2-vector v.
    std::array<double, 2> apply(const std::array<double, 2>& v) const {
        return {a11 * v[0] + a12 * v[1], a12 * v[0] + a22 * v[1]};
    }

    static SymMat2 identity() { return {1.0, 0.0, 1.0}; }
    /// Symmetric part of the outer product a (x) b.
    static SymMat2 sym_outer(const std::array<double, 2>& a, const std::array<double, 2>& b) {
        return {a[0] * b[0], 0.5 * (a[0] * b[1] + a[1] * b[0]), a[1] * b[1]};
    }
};

/// Coordinates of a SymMat2 in the orthonormal basis
/// { I/sqrt2, diag(1,-1)/sqrt2, offdiag(1)/sqrt2 }.
struct MandelVec {
    double v1 = 0.0;
    double v2 = 0.0;
    double v3 = 0.0;

    double dot(const MandelVec& w) const { return v1 * w.v1 + v2 * w.v2 + v3 * w.v3; }
    double norm() const { return std::sqrt(dot(*this)); }
    MandelVec operator+(const MandelVec& w) const { return {v1 + w.v1, v2 + w.v2, v3 + w.v3}; }
    MandelVec operator-(const MandelVec& w) const { return {v1 - w.v1, v2 - w.v2, v3 - w.v3}; }
    MandelVec operator*(double c) const { return {c * v1, c * v2, c * v3}; }
};

inline MandelVec sym_to_vec(const SymMat2& a) {
    const double s = 1.0 / std::sqrt(2.0);
    return {s * (a.a11 + a.a22), s * (a.a11 - a.a22), s * (2.0 * a.a12)};
}

inline SymMat2 vec_to_sym(const MandelVec& v) {
    const double s = 1.0 / std::sqrt(2.0);
    return {s * (v.v1 + v.v2), s * v.v3, s * (v.v1 - v.v2)};
}

/// T = diag(1,-1,-1); det A = (1/2) v . T v for v = sym_to_vec(A).
inline MandelVec apply_T(const MandelVec& v) { return {v.v1, -v.v2, -v.v3}; }

inline double det_via_T(const MandelVec& v) { return 0.5 * v.dot(apply_T(v)); }

/// R-perp conjugation of a symmetric matrix: R A = Rp^T A Rp with
/// Rp = [[0,1],[-1,0]]. Involution; preserves trace and determinant.
inline SymMat2 rperp_conjugate(const SymMat2& a) { return {a.a22, -a.a12, a.a11}; }

/// R applied to a general (not necessarily symmetric) 2x2 matrix m = [[m11,m12],[m21,m22]],
/// returned as the full 2x2 array.  Rp^T m Rp = [[m22,-m21],[-m12,m11]].
inline std::array<double, 4> rperp_conjugate_full(double m11, double m12, double m21, double m22) {
    return {m22, -m21, -m12, m11};
}

/// Isotropic fourth-order tensor on symmetric 2x2 matrices: diag(alpha, beta, beta)
/// in the Mandel basis (alpha acts on the trace part, beta on the deviatoric part).
struct IsoTensor2D {
    double alpha = 0.0;
    double beta = 0.0;

    bool positive_definite() const { return alpha > 0.0 && beta > 0.0; }

    MandelVec apply(const MandelVec& v) const { return {alpha * v.v1, beta * v.v2, beta * v.v3}; }
    SymMat2 apply(const SymMat2& a) const { return vec_to_sym(apply(sym_to_vec(a))); }

    IsoTensor2D inverse() const { return {1.0 / alpha, 1.0 / beta}; }
    IsoTensor2D operator*(const IsoTensor2D& o) const { return {alpha * o.alpha, beta * o.beta}; }
    IsoTensor2D operator+(const IsoTensor2D& o) const { return {alpha + o.alpha, beta + o.beta}; }
    IsoTensor2D operator-(const IsoTensor2D& o) const { return {alpha - o.alpha, beta - o.beta}; }
    IsoTensor2D scaled(double c) const { return {c * alpha, c * beta}; }
};

inline void require_strong_convexity(double lambda, double mu, const std::string& which) {
    if (!(mu > 0.0) || !(2.0 * mu + 3.0 * lambda > 0.0))
        throw std::invalid_argument("moduli violate strong convexity (mu > 0, 2mu + 3lambda > 0): " + which);
}

/// Compliance-type tensor of the membrane equation: alpha = (lambda+2mu)/(4mu(2mu+3lambda)),
/// beta = 1/(4mu).  Acts like S A = A/(4mu) - lambda Tr(A) I / (4mu(3lambda+2mu)).
inline IsoTensor2D iso_L(double lambda, double mu) {
    require_strong_convexity(lambda, mu, "iso_L");
    return {(lambda + 2.0 * mu) / (4.0 * mu * (2.0 * mu + 3.0 * lambda)), 1.0 / (4.0 * mu)};
}

/// Bending stiffness tensor: alpha = 4mu(3lambda+2mu)/(3(lambda+2mu)), beta = 4mu/3.
/// Acts like M H = (4mu/3) H + (4 lambda mu / (3(lambda+2mu))) Tr(H) I.
inline IsoTensor2D iso_M(double lambda, double mu) {
    require_strong_convexity(lambda, mu, "iso_M");
    return {4.0 * mu * (3.0 * lambda + 2.0 * mu) / (3.0 * (lambda + 2.0 * mu)), 4.0 * mu / 3.0};
}

/// Translated tensor S = L - zeta T = diag(alpha - zeta, beta + zeta, beta + zeta).
inline IsoTensor2D translate(const IsoTensor2D& L, double zeta) {
    return {L.alpha - zeta, L.beta + zeta};
}

/// Open interval of admissible translation parameters.
struct ZetaRange {
    double lo = 0.0;  // -beta_*
    double hi = 0.0;  // alpha_*
};

/// Two-phase Lame moduli; both phases strongly convex.
struct PhaseMaterial {
    double lambda1, mu1;
    double lambda2, mu2;

    PhaseMaterial(double l1, double m1, double l2, double m2)
        : lambda1(l1), mu1(m1), lambda2(l2), mu2(m2) {
        require_strong_convexity(lambda1, mu1, "phase 1");
        require_strong_convexity(lambda2, mu2, "phase 2");
    }

    IsoTensor2D L1() const { return iso_L(lambda1, mu1); }
    IsoTensor2D L2() const { return iso_L(lambda2, mu2); }
    IsoTensor2D M1() const { return iso_M(lambda1, mu1); }
    IsoTensor2D M2() const { return iso_M(lambda2, mu2); }
};

/// Admissible ranges (-beta_*, alpha_*) for the membrane block and the
/// bending (tilde) block.
struct ZetaRanges {
    ZetaRange membrane;
    ZetaRange bending;
};

inline ZetaRanges zeta_ranges(const PhaseMaterial& mat) {
    const IsoTensor2D l1 = mat.L1(), l2 = mat.L2();
    const IsoTensor2D m1 = mat.M1(), m2 = mat.M2();
    ZetaRanges r;
    r.membrane.lo = -std::min(l1.beta, l2.beta);
    r.membrane.hi = std::min(l1.alpha, l2.alpha);
    r.bending.lo = -std::min(m1.beta, m2.beta);
    r.bending.hi = std::min(m1.alpha, m2.alpha);
    return r;
}

}  // namespace shellbound
