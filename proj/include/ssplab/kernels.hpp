#pragma once

#include <cstddef>

// Arithmetic inner loops used by the solvers and learners. Scalar reference
// implementations always exist; AVX2 (x86-64) and NEON (aarch64) variants are
// selected at runtime and equivalence-tested against the scalar ones.
namespace ssplab::kernels {

enum class Backend { scalar, avx2, neon };

Backend active_backend();
const char* backend_name(Backend b);

// Pins the backend (tests only; not thread-safe). Returns false if the
// requested backend is not available on this host.
bool force_backend(Backend b);

double dot(const double* a, const double* b, std::size_t n);
double sum(const double* x, std::size_t n);
double sumsq(const double* x, std::size_t n);

// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scal(double alpha, double* x, std::size_t n);

// y = A x with A row-major (rows x cols)
void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);

// A += alpha * x x^T with A row-major (n x n), full square updated
void rank1_update(double* a, std::size_t n, double alpha, const double* x);

}  // namespace ssplab::kernels
