#pragma once

#include <cstddef>
#include <stdexcept>

#include "uplab/complex_matrix.hpp"
#include "uplab/decompositions.hpp"

namespace uplab {

/// Symmetric window {-N, ..., N-1} of basis labels, mapped in ascending order
/// onto storage indices 0 .. 2N-1. The first N labels span the negative half
/// of the basis, the last N the non-negative half.
///
/// Triangular convention: an entry (m, n) of an operator is *upper* iff
/// m >= n in label order. Labels ascend with storage index, so the kept part
/// of an upper truncation is the lower triangle of the stored matrix,
/// diagonal included. All predicates below are written against label order.
class BasisWindow {
public:
    explicit BasisWindow(std::size_t half_width) : n_(half_width) {
        if (n_ == 0) throw std::invalid_argument("BasisWindow: half width must be positive");
    }

    std::size_t half_width() const { return n_; }
    std::size_t dim() const { return 2 * n_; }

    long label(std::size_t storage) const { return static_cast<long>(storage) - static_cast<long>(n_); }
    std::size_t storage(long label) const { return static_cast<std::size_t>(label + static_cast<long>(n_)); }

    void check(const ComplexMatrix& a) const {
        if (a.dim() != dim()) throw std::invalid_argument("BasisWindow: dimension mismatch");
    }

private:
    std::size_t n_;
};

/// Keep entries with row label >= column label.
inline ComplexMatrix t_plus(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) r(i, j) = a(i, j);
    return r;
}

/// Keep entries with row label > column label.
inline ComplexMatrix t_plus_plus(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) r(i, j) = a(i, j);
    return r;
}

/// Keep the diagonal.
inline ComplexMatrix t_zero(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i) r(i, i) = a(i, i);
    return r;
}

inline ComplexMatrix t_plus(const ComplexMatrix& a, const BasisWindow& w) {
    w.check(a);
    return t_plus(a);
}
inline ComplexMatrix t_plus_plus(const ComplexMatrix& a, const BasisWindow& w) {
    w.check(a);
    return t_plus_plus(a);
}
inline ComplexMatrix t_zero(const ComplexMatrix& a, const BasisWindow& w) {
    w.check(a);
    return t_zero(a);
}

/// (T_++ + T_0/2)(a), the truncation entering all coadjoint formulas.
inline ComplexMatrix strict_plus_half_diag(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) r(i, j) = a(i, j);
        r(i, i) = 0.5 * a(i, i);
    }
    return r;
}

/// Projection of the splitting L2 = u2 (+) b2+ onto the triangular side:
/// (T_++ + T_0/2)(x + x*), evaluated entrywise. Each entry is the correctly
/// rounded value of its exact expression: below the diagonal x_ij + conj(x_ji)
/// (the one rounded operation), on the diagonal Re x_ii, zero above.
/// Idempotent; identity on b+; kills skew input.
inline ComplexMatrix project_triangular(const ComplexMatrix& x) {
    const std::size_t n = x.dim();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) r(i, j) = x(i, j) + std::conj(x(j, i));
        r(i, i) = x(i, i).real();
    }
    return r;
}

/// Complementary projection onto the skew-Hermitian side. Every entry is
/// exact (no arithmetic beyond negation and conjugation), so the output is
/// bitwise skew-Hermitian: above the diagonal x_ij, below -conj(x_ji), on the
/// diagonal i Im x_ii.
inline ComplexMatrix project_skew(const ComplexMatrix& x) {
    const std::size_t n = x.dim();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) r(i, j) = x(i, j);
        for (std::size_t j = 0; j < i; ++j) r(i, j) = -std::conj(x(j, i));
        r(i, i) = cplx(0.0, x(i, i).imag());
    }
    return r;
}

inline ComplexMatrix project_triangular(const ComplexMatrix& x, const BasisWindow& w) {
    w.check(x);
    return project_triangular(x);
}
inline ComplexMatrix project_skew(const ComplexMatrix& x, const BasisWindow& w) {
    w.check(x);
    return project_skew(x);
}

/// Membership in b+: zero above the diagonal (in label order) and real
/// diagonal, with tolerance 1e-12 * operator norm.
inline bool in_b_plus(const ComplexMatrix& x) {
    const std::size_t n = x.dim();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(x(i, i).imag()));
        for (std::size_t j = i + 1; j < n; ++j) worst = std::max(worst, std::abs(x(i, j)));
    }
    if (worst == 0.0) return true;
    return worst <= 1e-12 * operator_norm(x);
}

/// Membership in u: x + x* = 0 with tolerance 1e-12 * operator norm.
inline bool in_u(const ComplexMatrix& x) {
    const double defect = skew_defect(x);
    if (defect == 0.0) return true;
    return operator_norm(x + adjoint(x)) <= 1e-12 * operator_norm(x);
}

/// Partial isometry mapping the negative half onto the non-negative half in
/// reversed label order: u |-n> = |n-1>, n = 1..N.
inline ComplexMatrix shift_u(const BasisWindow& w) {
    const std::size_t hw = w.half_width();
    ComplexMatrix u(w.dim());
    for (std::size_t n = 1; n <= hw; ++n) u(w.storage(static_cast<long>(n) - 1), w.storage(-static_cast<long>(n))) = 1.0;
    return u;
}

/// Off-diagonal block operator (0, u; -u*, 0): exactly skew-Hermitian with
/// unit operator norm.
inline SkewHermitian build_block_A(const BasisWindow& w) {
    const std::size_t hw = w.half_width();
    ComplexMatrix a(w.dim());
    for (std::size_t n = 1; n <= hw; ++n) {
        const std::size_t plus = w.storage(static_cast<long>(n) - 1);
        const std::size_t minus = w.storage(-static_cast<long>(n));
        a(plus, minus) = 1.0;
        a(minus, plus) = -1.0;
    }
    return SkewHermitian(std::move(a), unchecked);
}

/// Block operator (0, uK; 0, 0) for a Hermitian K on the negative half.
/// Lands in b+ with ||B||_1 = ||K||_1.
inline ComplexMatrix build_block_B(const ComplexMatrix& k, const BasisWindow& w) {
    const std::size_t hw = w.half_width();
    if (k.dim() != hw) throw std::invalid_argument("build_block_B: K must act on the negative half");
    if (hermitian_defect(k) > 1e-10 * std::max(frobenius_norm(k), 1e-300))
        throw std::invalid_argument("build_block_B: K must be Hermitian");
    ComplexMatrix b(w.dim());
    for (std::size_t m = 1; m <= hw; ++m)
        for (std::size_t n = 1; n <= hw; ++n)
            b(w.storage(static_cast<long>(m) - 1), w.storage(-static_cast<long>(n))) =
                k(hw - m, hw - n);
    return b;
}

}  // namespace uplab
