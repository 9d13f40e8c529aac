#include "shellbound/kernels.hpp"

#define SB_STR(x) #x
#define SB_PRAGMA(x) _Pragma(SB_STR(x))
#define SB_OMP_FOR SB_PRAGMA(omp parallel for)
#define SB_OMP_FOR_REDUCE(a) SB_PRAGMA(omp parallel for reduction(+ : a))
#define SB_OMP_FOR_REDUCE3(a, b, c) SB_PRAGMA(omp parallel for reduction(+ : a, b, c))

#include "kernels_impl.inl"
