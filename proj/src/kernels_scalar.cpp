#include "kernels_backends.hpp"

namespace ssplab::kernels::detail {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double sumsq_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
    return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scal_scalar(double alpha, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void matvec_scalar(const double* a, std::size_t rows, std::size_t cols, const double* x,
                   double* y) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = dot_scalar(a + r * cols, x, cols);
}

void rank1_scalar(double* a, std::size_t n, double alpha, const double* x) {
    for (std::size_t r = 0; r < n; ++r) {
        const double ax = alpha * x[r];
        double* row = a + r * n;
        for (std::size_t c = 0; c < n; ++c) row[c] += ax * x[c];
    }
}

}  // namespace

const Vtable& scalar_vtable() {
    static const Vtable t{dot_scalar,  sum_scalar,    sumsq_scalar, axpy_scalar,
                          scal_scalar, matvec_scalar, rank1_scalar};
    return t;
}

}  // namespace ssplab::kernels::detail
