#pragma once

#include <cstddef>

// Internal: per-backend entry points wired up by the dispatcher.
namespace ssplab::kernels::detail {

struct Vtable {
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum)(const double*, std::size_t);
    double (*sumsq)(const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*scal)(double, double*, std::size_t);
    void (*matvec)(const double*, std::size_t, std::size_t, const double*, double*);
    void (*rank1_update)(double*, std::size_t, double, const double*);
};

const Vtable& scalar_vtable();

#if defined(__x86_64__) || defined(_M_X64)
const Vtable& avx2_vtable();
#endif
#if defined(__aarch64__)
const Vtable& neon_vtable();
#endif

}  // namespace ssplab::kernels::detail
