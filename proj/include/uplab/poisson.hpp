#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "uplab/quotient.hpp"

namespace uplab {

/// One residual measurement of an algebraic identity, with the magnitude of
/// the terms entering it so relative comparisons stay meaningful.
struct ResidualRecord {
    std::string identity;
    std::size_t dim = 0;
    std::uint64_t seed = 0;
    double residual = 0.0;
    double scale = 0.0;

    double relative() const { return residual / std::max(scale, 1e-30); }
};

/// p_{b2+}(x) for any coset member x of c, computed from the stored
/// representative: (T_++ + T_0/2)(2 rep). Well defined because the skew part
/// of a coset member never reaches the output.
inline ComplexMatrix b_plus_recovery(const QuotientClass& c) {
    return strict_plus_half_diag(c.rep() * cplx(2.0, 0.0));
}

/// One evaluation of the tensor, keeping the base point and operands so a
/// report can replay it. Swapping the operands negates the value.
struct PoissonEvaluation {
    UnitaryElement g;
    double value;
    QuotientClass first;
    QuotientClass second;
};

/// The tensor at g on a pair of classes:
/// Im Tr( g^{-1} X1 g * p_u2(g^{-1} X2 g) ) with Xi the b+ recoveries.
inline double pi_r(const UnitaryElement& g, const QuotientClass& c1, const QuotientClass& c2) {
    g.matrix().check_same_dim(c1.rep());
    c1.rep().check_same_dim(c2.rep());
    const ComplexMatrix ginv = g.inverse();
    const ComplexMatrix a1 = ginv * b_plus_recovery(c1) * g.matrix();
    const ComplexMatrix a2 = ginv * b_plus_recovery(c2) * g.matrix();
    return im_trace_prod(a1, project_skew(a2));
}

inline PoissonEvaluation evaluate_tensor(const UnitaryElement& g, const QuotientClass& c1,
                                         const QuotientClass& c2) {
    return {g, pi_r(g, c1, c2), c1, c2};
}

/// Contraction of the tensor in its first slot, as a tangent vector at e:
/// -g p_u2(g^{-1} p_b2(x) g) g^{-1}. Satisfies
/// eval_class(c2, sharp(g, c)) = pi_r(g, c, c2) for every c2.
inline SkewHermitian sharp(const UnitaryElement& g, const QuotientClass& c) {
    g.matrix().check_same_dim(c.rep());
    const ComplexMatrix inner = project_skew(g.inverse() * b_plus_recovery(c) * g.matrix());
    return SkewHermitian(-(g.matrix() * inner * g.inverse()), unchecked);
}

/// Derivative of the tensor at the identity along Y:
/// Im Tr( Y [p_b2(x1), p_b2(x2)] ).
inline double d_pi_e(const SkewHermitian& y, const QuotientClass& c1, const QuotientClass& c2) {
    y.matrix().check_same_dim(c1.rep());
    return im_trace_prod(y.matrix(), commutator(b_plus_recovery(c1), b_plus_recovery(c2)));
}

/// Derivative at g along the right-translated direction X:
/// Im Tr( g^{-1} X g [p_b2(g^{-1} x1 g), p_b2(g^{-1} x2 g)] ).
inline double d_pi_translated(const UnitaryElement& g, const SkewHermitian& x,
                              const QuotientClass& c1, const QuotientClass& c2) {
    g.matrix().check_same_dim(x.matrix());
    const ComplexMatrix p1 = b_plus_recovery(coadjoint_group(g, c1));
    const ComplexMatrix p2 = b_plus_recovery(coadjoint_group(g, c2));
    return im_trace_prod(g.inverse() * x.matrix() * g.matrix(), commutator(p1, p2));
}

/// Residual of the multiplicativity cocycle
/// pi_r(gu) = pi_r(u) o (Ad*_g x Ad*_g) + pi_r(g).
inline ResidualRecord cocycle_residual(const UnitaryElement& g, const UnitaryElement& u,
                                       const QuotientClass& c1, const QuotientClass& c2) {
    g.matrix().check_same_dim(u.matrix());
    const UnitaryElement gu(g.matrix() * u.matrix(), unchecked);
    const double lhs = pi_r(gu, c1, c2);
    const double pulled = pi_r(u, coadjoint_group(g, c1), coadjoint_group(g, c2));
    const double at_g = pi_r(g, c1, c2);
    ResidualRecord r;
    r.identity = "cocycle";
    r.dim = g.dim();
    r.residual = std::abs(lhs - pulled - at_g);
    r.scale = std::max({std::abs(lhs), std::abs(pulled), std::abs(at_g)});
    return r;
}

/// Full Jacobi verification at g: the cyclic sum of the two derivative terms,
/// each evaluated both through the defining expressions (sharp plus
/// translated derivative, pairing with a bracket of sharps) and through the
/// closed forms
///   - Im Tr p_u2(C) [p_b2(A), p_b2(B)]   and   - Im Tr p_u2(C) [p_b2(A), p_u2(B)],
/// followed by the stepwise collapse of the sum to -Im Tr C [A, B], which
/// vanishes because b+ is an isotropic subalgebra.
struct JacobiCheck {
    double cyclic_sum = 0.0;         // S, should vanish
    double scale = 0.0;              // max |summand|
    double closed_mismatch = 0.0;    // max |direct - closed| over the six terms
    double collapse_mismatch = 0.0;  // |row-collapsed sum - (-Im Tr C[A,B])|
    double isotropy_term = 0.0;      // |-Im Tr C[A,B]|, vanishes by isotropy

    double relative_sum() const { return std::abs(cyclic_sum) / std::max(scale, 1e-30); }
    double relative_closed_mismatch() const { return closed_mismatch / std::max(scale, 1e-30); }
};

inline JacobiCheck jacobi_cyclic_sum(const UnitaryElement& g, const QuotientClass& c1,
                                     const QuotientClass& c2, const QuotientClass& c3) {
    g.matrix().check_same_dim(c1.rep());
    const ComplexMatrix ginv = g.inverse();
    const std::array<const QuotientClass*, 3> cs = {&c1, &c2, &c3};
    std::array<ComplexMatrix, 3> acted;  // A, B, C = g^{-1} p_b2(x_i) g
    std::array<SkewHermitian, 3> sharps = {sharp(g, c1), sharp(g, c2), sharp(g, c3)};
    for (int i = 0; i < 3; ++i) acted[i] = ginv * b_plus_recovery(*cs[i]) * g.matrix();

    JacobiCheck out;
    double collapsed = 0.0;
    for (int k = 0; k < 3; ++k) {
        const int i1 = k, i2 = (k + 1) % 3, i3 = (k + 2) % 3;
        // defining expressions
        const double pigr_direct = d_pi_translated(g, sharps[i3], *cs[i1], *cs[i2]);
        const double lr_direct =
            eval_class(*cs[i1], SkewHermitian(commutator(sharps[i3].matrix(), sharps[i2].matrix()),
                                              unchecked));
        // closed forms
        const ComplexMatrix pu_c = project_skew(acted[i3]);
        const ComplexMatrix pb_a = project_triangular(acted[i1]);
        const double pigr_closed = -im_trace_prod(pu_c, commutator(pb_a, project_triangular(acted[i2])));
        const double lr_closed = -im_trace_prod(pu_c, commutator(pb_a, project_skew(acted[i2])));

        out.closed_mismatch = std::max(out.closed_mismatch,
                                       std::max(std::abs(pigr_direct - pigr_closed),
                                                std::abs(lr_direct - lr_closed)));
        out.scale = std::max({out.scale, std::abs(pigr_direct), std::abs(lr_direct)});
        out.cyclic_sum += pigr_direct + lr_direct;
        // row collapse: both terms merge into -Im Tr p_u2(C) [p_b2(A), B]
        collapsed += -im_trace_prod(pu_c, commutator(pb_a, acted[i2]));
    }
    const double full_trace = -im_trace_prod(acted[2], commutator(acted[0], acted[1]));
    out.collapse_mismatch = std::abs(collapsed - full_trace);
    out.isotropy_term = std::abs(full_trace);
    return out;
}

/// The induced Lie bracket on the quotient: ([x1],[x2]) -> [p_b2(x1), p_b2(x2)].
inline QuotientClass quotient_bracket(const QuotientClass& c1, const QuotientClass& c2) {
    c1.rep().check_same_dim(c2.rep());
    return class_of(commutator(b_plus_recovery(c1), b_plus_recovery(c2)));
}

/// Residuals of the two conjugation identities
///   p_b2(g^{-1} x g) = p_b2(g^{-1} p_b2(x) g)
///   p_u2(g^{-1} x g) = g^{-1} p_u2(x) g + p_u2(g^{-1} p_b2(x) g)
/// in Hilbert-Schmidt norm, with scale ||x||_2.
struct ConjResiduals {
    ResidualRecord b;
    ResidualRecord u;
};

inline ConjResiduals conj_identities_residual(const UnitaryElement& g, const ComplexMatrix& x) {
    g.matrix().check_same_dim(x);
    const ComplexMatrix ginv = g.inverse();
    const ComplexMatrix conj_x = ginv * x * g.matrix();
    const ComplexMatrix conj_pb = ginv * project_triangular(x) * g.matrix();
    const double scale = frobenius_norm(x);

    ConjResiduals out;
    out.b.identity = "conj-identity-b";
    out.b.dim = x.dim();
    out.b.residual = frobenius_norm(project_triangular(conj_x) - project_triangular(conj_pb));
    out.b.scale = scale;
    out.u.identity = "conj-identity-u";
    out.u.dim = x.dim();
    out.u.residual = frobenius_norm(
        project_skew(conj_x) - (ginv * project_skew(x) * g.matrix() + project_skew(conj_pb)));
    out.u.scale = scale;
    return out;
}

}  // namespace uplab
