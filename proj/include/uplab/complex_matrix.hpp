#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace uplab {

using cplx = std::complex<double>;

/// Dense complex square matrix with value semantics, row-major storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const { return dim_; }

    cplx& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }

    cplx* row(std::size_t r) { return a_.data() + r * dim_; }
    const cplx* row(std::size_t r) const { return a_.data() + r * dim_; }

    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_dim(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same_dim(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    ComplexMatrix& operator*=(cplx s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.check_same_dim(b);
        const std::size_t n = a.dim_;
        ComplexMatrix c(n);
        for (std::size_t i = 0; i < n; ++i) {
            const cplx* ai = a.row(i);
            cplx* ci = c.row(i);
            for (std::size_t k = 0; k < n; ++k) {
                const cplx aik = ai[k];
                if (aik == cplx{}) continue;
                const cplx* bk = b.row(k);
                for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
            }
        }
        return c;
    }

    void check_same_dim(const ComplexMatrix& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("ComplexMatrix: dimension mismatch");
    }

private:
    std::size_t dim_ = 0;
    std::vector<cplx> a_;
};

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = std::conj(a(j, i));
    return r;
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.check_same_dim(b);
    return a * b - b * a;
}

inline cplx trace(const ComplexMatrix& a) {
    cplx t{};
    for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

inline double im_trace(const ComplexMatrix& a) { return trace(a).imag(); }

/// Im Tr(a*b) without forming the product.
inline double im_trace_prod(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.check_same_dim(b);
    const std::size_t n = a.dim();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx* ai = a.row(i);
        for (std::size_t k = 0; k < n; ++k) {
            const cplx& x = ai[k];
            const cplx& y = b(k, i);
            s += x.real() * y.imag() + x.imag() * y.real();
        }
    }
    return s;
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n * n; ++i) s += std::norm(a.data()[i]);
    return std::sqrt(s);
}

inline double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n * n; ++i) m = std::max(m, std::abs(a.data()[i]));
    return m;
}

inline bool all_finite(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n * n; ++i) {
        const cplx& v = a.data()[i];
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

/// ||x + x*||_F, deviation from skew-Hermitian.
inline double skew_defect(const ComplexMatrix& x) {
    double s = 0.0;
    const std::size_t n = x.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s += std::norm(x(i, j) + std::conj(x(j, i)));
    return std::sqrt(s);
}

/// ||x - x*||_F, deviation from Hermitian.
inline double hermitian_defect(const ComplexMatrix& x) {
    double s = 0.0;
    const std::size_t n = x.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s += std::norm(x(i, j) - std::conj(x(j, i)));
    return std::sqrt(s);
}

inline ComplexMatrix hermitian_part(const ComplexMatrix& x) {
    const std::size_t n = x.dim();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = 0.5 * (x(i, j) + std::conj(x(j, i)));
    return r;
}

inline ComplexMatrix skew_part(const ComplexMatrix& x) {
    const std::size_t n = x.dim();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = 0.5 * (x(i, j) - std::conj(x(j, i)));
    return r;
}

}  // namespace uplab
