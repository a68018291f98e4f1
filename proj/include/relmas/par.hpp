#ifndef RELMAS_PAR_HPP
#define RELMAS_PAR_HPP

#include <cstddef>

namespace relmas::par {

enum class Policy { Serial, Parallel };

bool parallel_available();
Policy default_policy();

namespace detail {
void run_parallel(std::size_t n, void (*trampoline)(void*, std::size_t), void* ctx);
}

// Runs f(0), ..., f(n-1). Under Parallel each call must touch only its own
// slot; do any reduction after the loop in index order so Serial and Parallel
// produce identical results.
template <typename F>
void for_each_index(std::size_t n, Policy policy, F&& f) {
    if (policy == Policy::Parallel && parallel_available()) {
        auto trampoline = [](void* ctx, std::size_t i) {
            (*static_cast<F*>(ctx))(i);
        };
        detail::run_parallel(n, trampoline, &f);
        return;
    }
    for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace relmas::par

#endif
