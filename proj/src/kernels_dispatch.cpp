#include "ssplab/kernels.hpp"

#include "kernels_backends.hpp"

namespace ssplab::kernels {

namespace {

using detail::Vtable;

Backend detect_backend() {
#if defined(__aarch64__)
    return Backend::neon;
#elif (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Backend::avx2;
    return Backend::scalar;
#else
    return Backend::scalar;
#endif
}

const Vtable* vtable_for(Backend b) {
    switch (b) {
        case Backend::scalar:
            return &detail::scalar_vtable();
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::avx2:
            return &detail::avx2_vtable();
#endif
#if defined(__aarch64__)
        case Backend::neon:
            return &detail::neon_vtable();
#endif
        default:
            return nullptr;
    }
}

struct Dispatch {
    Backend backend;
    const Vtable* vt;
    Dispatch() : backend(detect_backend()), vt(vtable_for(backend)) {}
};

Dispatch& dispatch() {
    static Dispatch d;
    return d;
}

}  // namespace

Backend active_backend() { return dispatch().backend; }

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "?";
}

bool force_backend(Backend b) {
    if (b != Backend::scalar && b != detect_backend()) return false;
    const Vtable* vt = vtable_for(b);
    if (!vt) return false;
    dispatch().backend = b;
    dispatch().vt = vt;
    return true;
}

double dot(const double* a, const double* b, std::size_t n) { return dispatch().vt->dot(a, b, n); }
double sum(const double* x, std::size_t n) { return dispatch().vt->sum(x, n); }
double sumsq(const double* x, std::size_t n) { return dispatch().vt->sumsq(x, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) {
    dispatch().vt->axpy(alpha, x, y, n);
}
void scal(double alpha, double* x, std::size_t n) { dispatch().vt->scal(alpha, x, n); }
void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
    dispatch().vt->matvec(a, rows, cols, x, y);
}
void rank1_update(double* a, std::size_t n, double alpha, const double* x) {
    dispatch().vt->rank1_update(a, n, alpha, x);
}

}  // namespace ssplab::kernels
