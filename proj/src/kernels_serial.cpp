// Serial reference implementation of the grid kernels; kept deliberately
// pragma-free so the tests can compare it against the OpenMP versions.
#include "shellbound/kernels.hpp"

#define SB_KERNEL_SERIAL
#define SB_OMP_FOR
#define SB_OMP_FOR_REDUCE(a)
#define SB_OMP_FOR_REDUCE3(a, b, c)

#include "kernels_impl.inl"
