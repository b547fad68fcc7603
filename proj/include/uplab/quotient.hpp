#pragma once

#include <vector>

#include "uplab/basis_window.hpp"
#include "uplab/complex_matrix.hpp"
#include "uplab/decompositions.hpp"

namespace uplab {

/// Im Tr(a b), the duality pairing between skew-Hermitian operators and b+.
inline double im_trace_pair(const SkewHermitian& a, const ComplexMatrix& b) {
    return im_trace_prod(a.matrix(), b);
}

struct PairingGram {
    ComplexMatrix gram;  // real entries, n^2 x n^2
    double smallest_singular_value = 0.0;
};

/// Gram matrix of the pairing over the real basis of u(n) against the real
/// basis of b+(n). Basis order: diagonal elements first, then for each pair
/// (m, n) with m > n in lexicographic order the two associated elements.
///   u(n):  i E_kk;  E_nm - E_mn,  i(E_nm + E_mn)
///   b+(n): E_kk;    E_mn,         i E_mn
inline PairingGram pairing_gram(std::size_t n) {
    if (n == 0) throw std::invalid_argument("pairing_gram: n must be positive");
    const std::size_t count = n * n;
    std::vector<ComplexMatrix> u_basis, b_basis;
    u_basis.reserve(count);
    b_basis.reserve(count);
    for (std::size_t k = 0; k < n; ++k) {
        ComplexMatrix iu(n), bb(n);
        iu(k, k) = cplx(0, 1);
        bb(k, k) = 1.0;
        u_basis.push_back(std::move(iu));
        b_basis.push_back(std::move(bb));
    }
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t l = 0; l < m; ++l) {
            ComplexMatrix u1(n), u2(n), b1(n), b2(n);
            u1(l, m) = 1.0;
            u1(m, l) = -1.0;
            u2(l, m) = cplx(0, 1);
            u2(m, l) = cplx(0, 1);
            b1(m, l) = 1.0;
            b2(m, l) = cplx(0, 1);
            u_basis.push_back(std::move(u1));
            u_basis.push_back(std::move(u2));
            b_basis.push_back(std::move(b1));
            b_basis.push_back(std::move(b2));
        }
    }

    PairingGram out;
    out.gram = ComplexMatrix(count);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j)
            out.gram(i, j) = im_trace_prod(u_basis[i], b_basis[j]);
    const auto sv = svd_values(out.gram);
    out.smallest_singular_value = sv.empty() ? 0.0 : sv.back();
    return out;
}

/// Element of L1/u1, stored by the canonical Hermitian representative
/// (x + x*)/2. Construction canonicalizes, so the invariant cannot drift.
class QuotientClass {
public:
    explicit QuotientClass(const ComplexMatrix& coset_member)
        : rep_(hermitian_part(coset_member)) {}

    static QuotientClass zero(std::size_t dim) { return QuotientClass(ComplexMatrix(dim)); }

    const ComplexMatrix& rep() const { return rep_; }
    std::size_t dim() const { return rep_.dim(); }

private:
    ComplexMatrix rep_;
};

inline QuotientClass class_of(const ComplexMatrix& x) { return QuotientClass(x); }

/// The functional of [x] applied to a skew-Hermitian b. With rep = (x + x*)/2
/// this equals Im Tr(x b); representative independence is a tested contract.
inline double eval_class(const QuotientClass& c, const SkewHermitian& b) {
    c.rep().check_same_dim(b.matrix());
    return im_trace_prod(c.rep(), b.matrix());
}

/// Ad*_g [x] = [g^{-1} x g].
inline QuotientClass coadjoint_group(const UnitaryElement& g, const QuotientClass& c) {
    c.rep().check_same_dim(g.matrix());
    return QuotientClass(g.inverse() * c.rep() * g.matrix());
}

/// ad*_a b = -(T_++ + T_0/2)([a,b] + [a,b]*) for b in b+.
inline ComplexMatrix coadjoint_algebra_bplus(const SkewHermitian& a, const ComplexMatrix& b) {
    a.matrix().check_same_dim(b);
    if (!in_b_plus(b)) throw std::invalid_argument("coadjoint_algebra_bplus: b not in b+");
    return -project_triangular(commutator(a.matrix(), b));
}

}  // namespace uplab
