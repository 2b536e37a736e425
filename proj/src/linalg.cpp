#include "ssplab/linalg.hpp"

#include <cmath>

#include "ssplab/kernels.hpp"

namespace ssplab {

void Mat::symmetrize() {
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = r + 1; c < cols; ++c) {
            const double m = 0.5 * ((*this)(r, c) + (*this)(c, r));
            (*this)(r, c) = m;
            (*this)(c, r) = m;
        }
}

double Mat::frob_norm() const { return std::sqrt(kernels::sumsq(a.data(), a.size())); }

double Mat::max_abs_asymmetry() const {
    double m = 0.0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = r + 1; c < cols; ++c)
            m = std::max(m, std::fabs((*this)(r, c) - (*this)(c, r)));
    return m;
}

Vec mat_vec(const Mat& m, const Vec& x) {
    Vec y(m.rows);
    kernels::matvec(m.a.data(), m.rows, m.cols, x.data(), y.data());
    return y;
}

LdltFactor::LdltFactor(const Mat& a) : n_(a.rows), l_(a.rows, a.rows), d_(a.rows, 0.0) {
    if (a.rows != a.cols) throw SsplabError("LdltFactor: matrix not square");
    min_pivot_ = n_ ? 1.0 / 0.0 : 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
        double dj = a(j, j);
        for (std::size_t k = 0; k < j; ++k) dj -= l_(j, k) * l_(j, k) * d_[k];
        if (!(dj > 0.0)) throw SsplabError("LdltFactor: matrix not positive definite");
        d_[j] = dj;
        min_pivot_ = std::min(min_pivot_, dj);
        l_(j, j) = 1.0;
        for (std::size_t i = j + 1; i < n_; ++i) {
            double v = a(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= l_(i, k) * l_(j, k) * d_[k];
            l_(i, j) = v / dj;
        }
    }
}

Vec LdltFactor::solve(const Vec& b) const {
    Vec y(b);
    // forward: L y = b
    for (std::size_t i = 0; i < n_; ++i)
        y[i] -= kernels::dot(l_.row(i), y.data(), i);
    for (std::size_t i = 0; i < n_; ++i) y[i] /= d_[i];
    // backward: L^T x = y
    for (std::size_t ii = n_; ii-- > 0;) {
        double v = y[ii];
        for (std::size_t j = ii + 1; j < n_; ++j) v -= l_(j, ii) * y[j];
        y[ii] = v;
    }
    return y;
}

double LdltFactor::quad_inv(const double* x) const {
    // x^T A^{-1} x = z^T D^{-1} z with L z = x
    Vec z(x, x + n_);
    for (std::size_t i = 0; i < n_; ++i)
        z[i] -= kernels::dot(l_.row(i), z.data(), i);
    double q = 0.0;
    for (std::size_t i = 0; i < n_; ++i) q += z[i] * z[i] / d_[i];
    return q;
}

double LdltFactor::quad_inv(const Vec& x) const { return quad_inv(x.data()); }

LuFactor::LuFactor(const Mat& a) : n_(a.rows), lu_(a), perm_(a.rows) {
    if (a.rows != a.cols) throw SsplabError("LuFactor: matrix not square");
    for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < n_; ++k) {
        std::size_t p = k;
        double best = std::fabs(lu_(k, k));
        for (std::size_t i = k + 1; i < n_; ++i) {
            const double v = std::fabs(lu_(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best == 0.0) {
            singular_ = true;
            return;
        }
        if (p != k) {
            for (std::size_t c = 0; c < n_; ++c) std::swap(lu_(p, c), lu_(k, c));
            std::swap(perm_[p], perm_[k]);
        }
        const double piv = lu_(k, k);
        for (std::size_t i = k + 1; i < n_; ++i) {
            const double f = lu_(i, k) / piv;
            lu_(i, k) = f;
            if (f != 0.0) kernels::axpy(-f, lu_.row(k) + k + 1, lu_.row(i) + k + 1, n_ - k - 1);
        }
    }
}

Vec LuFactor::solve(const Vec& b) const {
    if (singular_) throw SsplabError("LuFactor: singular system");
    Vec y(n_);
    for (std::size_t i = 0; i < n_; ++i) y[i] = b[perm_[i]];
    for (std::size_t i = 0; i < n_; ++i)
        y[i] -= kernels::dot(lu_.row(i), y.data(), i);
    for (std::size_t ii = n_; ii-- > 0;) {
        double v = y[ii] - kernels::dot(lu_.row(ii) + ii + 1, y.data() + ii + 1, n_ - ii - 1);
        y[ii] = v / lu_(ii, ii);
    }
    return y;
}

}  // namespace ssplab
