#include "relmas/par.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace relmas::par {

bool parallel_available() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

Policy default_policy() {
    return parallel_available() ? Policy::Parallel : Policy::Serial;
}

namespace detail {

void run_parallel(std::size_t n, void (*trampoline)(void*, std::size_t), void* ctx) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        trampoline(ctx, static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < n; ++i) trampoline(ctx, i);
#endif
}

}  // namespace detail

}  // namespace relmas::par
