#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssplab {

using Vec = std::vector<double>;

struct SsplabError : std::runtime_error {
    explicit SsplabError(const std::string& what) : std::runtime_error(what) {}
};

// Dense row-major matrix; sized for desk-scale problems.
struct Mat {
    std::size_t rows = 0, cols = 0;
    Vec a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
    double* row(std::size_t r) { return a.data() + r * cols; }
    const double* row(std::size_t r) const { return a.data() + r * cols; }

    void symmetrize();           // A <- (A + A^T)/2
    double frob_norm() const;
    double max_abs_asymmetry() const;
};

Vec mat_vec(const Mat& m, const Vec& x);

// LDL^T factorization for symmetric positive definite matrices (no pivoting;
// callers pass lambda*I + PSD sums, which keeps pivots >= lambda).
class LdltFactor {
public:
    explicit LdltFactor(const Mat& a);

    Vec solve(const Vec& b) const;
    // x^T A^{-1} x
    double quad_inv(const Vec& x) const;
    double quad_inv(const double* x) const;
    double min_pivot() const { return min_pivot_; }

private:
    std::size_t n_;
    Mat l_;   // unit lower triangle
    Vec d_;   // diagonal
    double min_pivot_;
};

// Partially pivoted LU for general square systems (hitting times).
class LuFactor {
public:
    explicit LuFactor(const Mat& a);

    bool singular() const { return singular_; }
    Vec solve(const Vec& b) const;

private:
    std::size_t n_;
    Mat lu_;
    std::vector<std::size_t> perm_;
    bool singular_ = false;
};

}  // namespace ssplab
