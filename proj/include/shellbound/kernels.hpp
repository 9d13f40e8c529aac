// Data-parallel grid kernels (second-order stencils, quadrature reductions).
// The default entry points in shellbound::kernels are OpenMP-parallel; the
// serial reference used by the tests and the benchmark lives in
// shellbound::kernels::serial and must produce identical results.
#pragma once

#include "shellbound/grid.hpp"

namespace shellbound::kernels {

ScalarField dx(const Grid& g, const ScalarField& f);
ScalarField dy(const Grid& g, const ScalarField& f);
VecField gradient(const Grid& g, const ScalarField& f);
TensorField hessian(const Grid& g, const ScalarField& f);

double volume_average(const Grid& g, const ScalarField& f);
SymMat2 volume_average(const Grid& g, const TensorField& f);
/// < f . g > for tensor fields (Frobenius product per node).
double volume_average_dot(const Grid& g, const TensorField& a, const TensorField& b);

/// Row-wise divergence of a symmetric tensor field.
VecField divergence(const Grid& g, const TensorField& s);

namespace serial {
ScalarField dx(const Grid& g, const ScalarField& f);
ScalarField dy(const Grid& g, const ScalarField& f);
VecField gradient(const Grid& g, const ScalarField& f);
TensorField hessian(const Grid& g, const ScalarField& f);
double volume_average(const Grid& g, const ScalarField& f);
SymMat2 volume_average(const Grid& g, const TensorField& f);
double volume_average_dot(const Grid& g, const TensorField& a, const TensorField& b);
VecField divergence(const Grid& g, const TensorField& s);
}  // namespace serial

}  // namespace shellbound::kernels
