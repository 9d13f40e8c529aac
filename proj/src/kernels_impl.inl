// Shared stencil bodies for the parallel kernels and the serial reference.
// Included twice from kernels.cpp / kernels_serial.cpp with SB_KERNEL_NS and
// SB_OMP_FOR defined by the including file.  Interior stencils are centered
// second order; boundary closures are one-sided second order, so all
// operators are exact on quadratics.

namespace shellbound::kernels {
#ifdef SB_KERNEL_SERIAL
namespace serial {
#endif

namespace {

// One-dimensional first derivative of the grid line f(base + k*stride).
inline double d1_line(const double* f, int i, int n, int stride, double h) {
    const double* p = f + static_cast<std::ptrdiff_t>(i) * stride;
    if (i == 0) return (-3.0 * p[0] + 4.0 * p[stride] - p[2 * stride]) / (2.0 * h);
    if (i == n - 1) return (3.0 * p[0] - 4.0 * p[-stride] + p[-2 * stride]) / (2.0 * h);
    return (p[stride] - p[-stride]) / (2.0 * h);
}

inline double d2_line(const double* f, int i, int n, int stride, double h) {
    const double* p = f + static_cast<std::ptrdiff_t>(i) * stride;
    const double h2 = h * h;
    if (i == 0) return (2.0 * p[0] - 5.0 * p[stride] + 4.0 * p[2 * stride] - p[3 * stride]) / h2;
    if (i == n - 1)
        return (2.0 * p[0] - 5.0 * p[-stride] + 4.0 * p[-2 * stride] - p[-3 * stride]) / h2;
    return (p[stride] - 2.0 * p[0] + p[-stride]) / h2;
}

}  // namespace

ScalarField dx(const Grid& g, const ScalarField& f) {
    ScalarField out(g);
    const int n = g.n;
    SB_OMP_FOR
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) out[g.idx(i, j)] = d1_line(f.v.data() + j * n, i, n, 1, g.h);
    return out;
}

ScalarField dy(const Grid& g, const ScalarField& f) {
    ScalarField out(g);
    const int n = g.n;
    SB_OMP_FOR
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) out[g.idx(i, j)] = d1_line(f.v.data() + i, j, n, n, g.h);
    return out;
}

VecField gradient(const Grid& g, const ScalarField& f) {
    VecField out(g);
    const int n = g.n;
    SB_OMP_FOR
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const int k = g.idx(i, j);
            out.x[k] = d1_line(f.v.data() + j * n, i, n, 1, g.h);
            out.y[k] = d1_line(f.v.data() + i, j, n, n, g.h);
        }
    return out;
}

TensorField hessian(const Grid& g, const ScalarField& f) {
    const int n = g.n;
    const ScalarField fx = dx(g, f);
    const ScalarField fy = dy(g, f);
    TensorField out(g);
    SB_OMP_FOR
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const int k = g.idx(i, j);
            out.a11[k] = d2_line(f.v.data() + j * n, i, n, 1, g.h);
            out.a22[k] = d2_line(f.v.data() + i, j, n, n, g.h);
            // Cross derivative averaged over the two application orders.
            const double dxy = d1_line(fx.v.data() + i, j, n, n, g.h);
            const double dyx = d1_line(fy.v.data() + j * n, i, n, 1, g.h);
            out.a12[k] = 0.5 * (dxy + dyx);
        }
    return out;
}

double volume_average(const Grid& g, const ScalarField& f) {
    const int n = g.n;
    double sum = 0.0;
    SB_OMP_FOR_REDUCE(sum)
    for (int j = 0; j < n; ++j) {
        double row = 0.0;
        for (int i = 0; i < n; ++i) row += trapezoid_weight(g, i, j) * f[g.idx(i, j)];
        sum += row;
    }
    return sum;
}

SymMat2 volume_average(const Grid& g, const TensorField& f) {
    const int n = g.n;
    double s11 = 0.0, s12 = 0.0, s22 = 0.0;
    SB_OMP_FOR_REDUCE3(s11, s12, s22)
    for (int j = 0; j < n; ++j) {
        double r11 = 0.0, r12 = 0.0, r22 = 0.0;
        for (int i = 0; i < n; ++i) {
            const int k = g.idx(i, j);
            const double w = trapezoid_weight(g, i, j);
            r11 += w * f.a11[k];
            r12 += w * f.a12[k];
            r22 += w * f.a22[k];
        }
        s11 += r11;
        s12 += r12;
        s22 += r22;
    }
    return {s11, s12, s22};
}

double volume_average_dot(const Grid& g, const TensorField& a, const TensorField& b) {
    const int n = g.n;
    double sum = 0.0;
    SB_OMP_FOR_REDUCE(sum)
    for (int j = 0; j < n; ++j) {
        double row = 0.0;
        for (int i = 0; i < n; ++i) {
            const int k = g.idx(i, j);
            row += trapezoid_weight(g, i, j) *
                   (a.a11[k] * b.a11[k] + a.a22[k] * b.a22[k] + 2.0 * a.a12[k] * b.a12[k]);
        }
        sum += row;
    }
    return sum;
}

VecField divergence(const Grid& g, const TensorField& s) {
    const int n = g.n;
    VecField out(g);
    SB_OMP_FOR
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const int k = g.idx(i, j);
            const double d11_1 = d1_line(s.a11.data() + j * n, i, n, 1, g.h);
            const double d12_2 = d1_line(s.a12.data() + i, j, n, n, g.h);
            const double d12_1 = d1_line(s.a12.data() + j * n, i, n, 1, g.h);
            const double d22_2 = d1_line(s.a22.data() + i, j, n, n, g.h);
            out.x[k] = d11_1 + d12_2;
            out.y[k] = d12_1 + d22_2;
        }
    return out;
}

#ifdef SB_KERNEL_SERIAL
}  // namespace serial
#endif
}  // namespace shellbound::kernels
