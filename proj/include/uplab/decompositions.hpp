#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "uplab/complex_matrix.hpp"

namespace uplab {

struct SvdResult {
    std::vector<double> values;  // non-increasing
    ComplexMatrix u;             // a = u * diag(values) * adjoint(v)
    ComplexMatrix v;
};

namespace detail {

inline double small_root(double zeta) {
    // small-magnitude root of t^2 - 2*zeta*t - 1 = 0
    const double r = std::abs(zeta) + std::sqrt(1.0 + zeta * zeta);
    return (zeta >= 0.0) ? -1.0 / r : 1.0 / r;
}

/// Hestenes one-sided Jacobi on the rows of w. On exit the rows are mutually
/// orthogonal; if r is non-null it accumulates the applied rotations, so
/// w_out = r * w_in. Returns false if the sweep cap was hit.
inline bool orthogonalize_rows(ComplexMatrix& w, ComplexMatrix* r, int max_sweeps) {
    const std::size_t n = w.dim();
    const double tol = 1e-14;
    // correlations below this are roundoff noise of the whole matrix; without
    // the absolute floor, pairs of negligible rows can rotate forever
    const double floor2 = std::pow(1e-15 * frobenius_norm(w), 2);
    bool converged = (n < 2);
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                cplx* rp = w.row(p);
                cplx* rq = w.row(q);
                double alpha = 0.0, beta = 0.0;
                cplx gamma{};
                for (std::size_t k = 0; k < n; ++k) {
                    alpha += std::norm(rp[k]);
                    beta += std::norm(rq[k]);
                    gamma += rp[k] * std::conj(rq[k]);
                }
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= tol * std::sqrt(alpha * beta) || g <= floor2) continue;
                converged = false;

                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = small_root(zeta);
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx s = (t * c) * (gamma / g);
                const cplx sc = std::conj(s);

                for (std::size_t k = 0; k < n; ++k) {
                    const cplx xp = rp[k], xq = rq[k];
                    rp[k] = c * xp + s * xq;
                    rq[k] = -sc * xp + c * xq;
                }
                if (r) {
                    cplx* up = r->row(p);
                    cplx* uq = r->row(q);
                    for (std::size_t k = 0; k < n; ++k) {
                        const cplx xp = up[k], xq = uq[k];
                        up[k] = c * xp + s * xq;
                        uq[k] = -sc * xp + c * xq;
                    }
                }
            }
        }
    }
    return converged;
}

}  // namespace detail

/// One-sided Jacobi SVD. Plane rotations orthogonalize the rows of a working
/// copy; the accumulated rotations give U and the normalized rows give V*.
/// Row orientation keeps every inner loop contiguous in row-major storage.
inline SvdResult svd(const ComplexMatrix& a, int max_sweeps = 60) {
    const std::size_t n = a.dim();
    ComplexMatrix w = a;
    ComplexMatrix r = ComplexMatrix::identity(n);
    if (!detail::orthogonalize_rows(w, &r, max_sweeps))
        throw std::runtime_error("svd: Jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    std::vector<double> norms(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s2 = 0.0;
        for (std::size_t k = 0; k < n; ++k) s2 += std::norm(w(i, k));
        norms[i] = std::sqrt(s2);
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });

    SvdResult out;
    out.values.resize(n);
    out.u = ComplexMatrix(n);
    out.v = ComplexMatrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t src = order[i];
        const double sv = norms[src];
        out.values[i] = sv;
        for (std::size_t k = 0; k < n; ++k) out.u(k, i) = std::conj(r(src, k));
        if (sv > 0.0)
            for (std::size_t k = 0; k < n; ++k) out.v(k, i) = std::conj(w(src, k)) / sv;
    }
    return out;
}

/// Singular values only, non-increasing.
inline std::vector<double> svd_values(const ComplexMatrix& a, int max_sweeps = 60) {
    ComplexMatrix w = a;
    if (!detail::orthogonalize_rows(w, nullptr, max_sweeps))
        throw std::runtime_error("svd_values: Jacobi sweeps did not converge");
    const std::size_t n = a.dim();
    std::vector<double> sv(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s2 = 0.0;
        for (std::size_t k = 0; k < n; ++k) s2 += std::norm(w(i, k));
        sv[i] = std::sqrt(s2);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

enum class Sp { one, two, inf };

inline double trace_norm(const ComplexMatrix& a) {
    const auto sv = svd_values(a);
    double s = 0.0;
    for (double v : sv) s += v;
    return s;
}

inline double operator_norm(const ComplexMatrix& a) {
    const auto sv = svd_values(a);
    return sv.empty() ? 0.0 : sv.front();
}

inline double schatten_norm(const ComplexMatrix& a, Sp p) {
    switch (p) {
        case Sp::one: return trace_norm(a);
        case Sp::two: return frobenius_norm(a);
        case Sp::inf: return operator_norm(a);
    }
    throw std::invalid_argument("schatten_norm: bad exponent");
}

struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;  // columns; h = vectors * diag(values) * adjoint(vectors)
};

/// Cyclic two-sided Jacobi for Hermitian matrices.
inline HermitianEigen hermitian_eigen(const ComplexMatrix& h_in, int max_sweeps = 60) {
    const std::size_t n = h_in.dim();
    ComplexMatrix h = h_in;
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(frobenius_norm(h), 1e-300);
    const double tol = 1e-15 * scale;
    bool converged = (n < 2);
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx hpq = h(p, q);
                const double g = std::abs(hpq);
                if (g <= tol) continue;
                converged = false;

                const double zeta = (h(p, p).real() - h(q, q).real()) / (2.0 * g);
                const double t = detail::small_root(zeta);
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx s = (t * c) * (hpq / g);
                const cplx sc = std::conj(s);

                // h <- J* h J where J mixes columns (p, q)
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx xp = h(k, p), xq = h(k, q);
                    h(k, p) = c * xp - sc * xq;
                    h(k, q) = s * xp + c * xq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx xp = h(p, k), xq = h(q, k);
                    h(p, k) = c * xp - s * xq;
                    h(q, k) = sc * xp + c * xq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx xp = v(k, p), xq = v(k, q);
                    v(k, p) = c * xp - sc * xq;
                    v(k, q) = s * xp + c * xq;
                }
            }
        }
    }
    if (!converged) throw std::runtime_error("hermitian_eigen: Jacobi sweeps did not converge");

    HermitianEigen out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = h(i, i).real();
    out.vectors = std::move(v);
    return out;
}

struct unchecked_t {
    explicit unchecked_t() = default;
};
inline constexpr unchecked_t unchecked{};

/// Skew-Hermitian operator, validated at construction unless tagged.
class SkewHermitian {
public:
    explicit SkewHermitian(ComplexMatrix m) : m_(std::move(m)) {
        if (!all_finite(m_)) throw std::invalid_argument("SkewHermitian: non-finite entries");
        const double defect = skew_defect(m_);
        if (defect == 0.0) return;
        // Frobenius bound first; exact operator norms only if that fails.
        if (defect <= 1e-12 * frobenius_norm(m_)) return;
        if (operator_norm(m_ + adjoint(m_)) > 1e-12 * operator_norm(m_))
            throw std::invalid_argument("SkewHermitian: validation failed");
    }
    SkewHermitian(ComplexMatrix m, unchecked_t) : m_(std::move(m)) {}

    const ComplexMatrix& matrix() const { return m_; }
    operator const ComplexMatrix&() const { return m_; }
    std::size_t dim() const { return m_.dim(); }

private:
    ComplexMatrix m_;
};

/// Unitary group element, validated at construction unless tagged.
class UnitaryElement {
public:
    explicit UnitaryElement(ComplexMatrix m) : m_(std::move(m)) {
        if (!all_finite(m_)) throw std::invalid_argument("UnitaryElement: non-finite entries");
        const double tol = 1e-12 * static_cast<double>(m_.dim());
        ComplexMatrix defect = adjoint(m_) * m_ - ComplexMatrix::identity(m_.dim());
        if (frobenius_norm(defect) <= tol) return;
        if (operator_norm(defect) > tol)
            throw std::invalid_argument("UnitaryElement: validation failed");
    }
    UnitaryElement(ComplexMatrix m, unchecked_t) : m_(std::move(m)) {}

    static UnitaryElement identity(std::size_t dim) {
        return UnitaryElement(ComplexMatrix::identity(dim), unchecked);
    }

    const ComplexMatrix& matrix() const { return m_; }
    operator const ComplexMatrix&() const { return m_; }
    std::size_t dim() const { return m_.dim(); }
    ComplexMatrix inverse() const { return adjoint(m_); }

private:
    ComplexMatrix m_;
};

/// exp of a skew-Hermitian matrix via the eigendecomposition of -i*x.
inline UnitaryElement exp_skew(const SkewHermitian& x) {
    const std::size_t n = x.dim();
    ComplexMatrix h(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = cplx(0.0, -1.0) * x.matrix()(i, j);
    h = hermitian_part(h);  // scrub rounding before the eigensolver
    const auto eig = hermitian_eigen(h);

    ComplexMatrix phased(n);  // vectors * diag(exp(i*lambda))
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            phased(i, j) = eig.vectors(i, j) * std::polar(1.0, eig.values[j]);
    return UnitaryElement(phased * adjoint(eig.vectors), unchecked);
}

}  // namespace uplab
