#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "uplab/basis_window.hpp"
#include "uplab/quotient.hpp"

namespace uplab {

/// Hermitian unit-trace-norm families K_N on the negative half of the window
/// whose triangular truncation is measured as N grows.
///
///   hilbert_kernel:      entries i/(j - k) off the diagonal. The classical
///                        extremal matrix for the operator-norm growth of the
///                        truncation; its S1 ratio saturates near 0.71 at
///                        desk scale because ||K_N||_1 itself grows linearly.
///   uniform_projector:   rank-one projector onto the constant vector.
///   projector_difference: difference of the projectors onto the constant and
///                        the alternating vector; the S1 ratio of this family
///                        shows clean logarithmic growth, so it is the default
///                        for the growth experiment.
enum class WitnessFamily { hilbert_kernel, uniform_projector, projector_difference };

inline const char* witness_family_name(WitnessFamily f) {
    switch (f) {
        case WitnessFamily::hilbert_kernel: return "hilbert";
        case WitnessFamily::uniform_projector: return "uniform";
        case WitnessFamily::projector_difference: return "difference";
    }
    return "?";
}

/// Hermitian matrix with entries i/(j - k) for j != k in label order, zero
/// diagonal, rescaled to unit trace norm.
inline ComplexMatrix hilbert_witness(std::size_t n) {
    if (n < 2) throw std::invalid_argument("hilbert_witness: need N >= 2");
    ComplexMatrix k(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) {
            if (j == l) continue;
            k(j, l) = cplx(0.0, 1.0 / (static_cast<double>(j) - static_cast<double>(l)));
        }
    k *= cplx(1.0 / trace_norm(k), 0.0);
    return k;
}

inline ComplexMatrix witness_matrix(std::size_t n, WitnessFamily family) {
    if (n < 2) throw std::invalid_argument("witness_matrix: need N >= 2");
    switch (family) {
        case WitnessFamily::hilbert_kernel: return hilbert_witness(n);
        case WitnessFamily::uniform_projector: {
            ComplexMatrix k(n);
            const double v = 1.0 / static_cast<double>(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) k(i, j) = v;
            k *= cplx(1.0 / trace_norm(k), 0.0);
            return k;
        }
        case WitnessFamily::projector_difference: {
            ComplexMatrix k(n);
            const double v = 1.0 / static_cast<double>(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    const double alt = ((i + j) % 2 == 0) ? v : -v;
                    k(i, j) = v - alt;
                }
            k *= cplx(1.0 / trace_norm(k), 0.0);
            return k;
        }
    }
    throw std::invalid_argument("witness_matrix: bad family");
}

struct GrowthRow {
    std::size_t half_width = 0;
    double witness_ratio = 0.0;    // ||T_+(K)||_1 / ||K||_1 on the negative half
    double coadjoint_ratio = 0.0;  // ||ad*_A B||_1 / ||B||_1 on the full window
};

struct LogFit {
    bool valid = false;  // needs at least two rows
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

struct GrowthSeries {
    WitnessFamily family = WitnessFamily::projector_difference;
    std::vector<GrowthRow> rows;
    LogFit witness_fit;
    LogFit coadjoint_fit;
};

/// Unweighted least squares of ratio against ln N.
inline LogFit fit_log_model(const std::vector<GrowthRow>& rows, bool coadjoint) {
    LogFit fit;
    const std::size_t n = rows.size();
    if (n < 2) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rows) {
        const double x = std::log(static_cast<double>(r.half_width));
        const double y = coadjoint ? r.coadjoint_ratio : r.witness_ratio;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double den = n * sxx - sx * sx;
    if (den == 0.0) return fit;
    fit.slope = (n * sxy - sx * sy) / den;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean = sy / n;
    for (const auto& r : rows) {
        const double x = std::log(static_cast<double>(r.half_width));
        const double y = coadjoint ? r.coadjoint_ratio : r.witness_ratio;
        ss_res += (y - (fit.slope * x + fit.intercept)) * (y - (fit.slope * x + fit.intercept));
        ss_tot += (y - mean) * (y - mean);
    }
    fit.r_squared = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
    fit.valid = true;
    return fit;
}

inline GrowthRow growth_row(std::size_t half_width, WitnessFamily family) {
    if (half_width < 2) throw std::invalid_argument("growth_row: need N >= 2");
    const BasisWindow w(half_width);
    const ComplexMatrix k = witness_matrix(half_width, family);
    GrowthRow row;
    row.half_width = half_width;
    row.witness_ratio = trace_norm(t_plus(k)) / trace_norm(k);
    const SkewHermitian a = build_block_A(w);
    const ComplexMatrix b = build_block_B(k, w);
    row.coadjoint_ratio = trace_norm(coadjoint_algebra_bplus(a, b)) / trace_norm(b);
    return row;
}

inline GrowthSeries witness_growth(const std::vector<std::size_t>& half_widths,
                                   WitnessFamily family = WitnessFamily::projector_difference) {
    for (std::size_t i = 0; i < half_widths.size(); ++i) {
        if (half_widths[i] < 2) throw std::invalid_argument("witness_growth: need N >= 2");
        if (i > 0 && half_widths[i] <= half_widths[i - 1])
            throw std::invalid_argument("witness_growth: N list must be strictly increasing");
    }
    GrowthSeries s;
    s.family = family;
    s.rows.reserve(half_widths.size());
    for (std::size_t n : half_widths) s.rows.push_back(growth_row(n, family));
    s.witness_fit = fit_log_model(s.rows, false);
    s.coadjoint_fit = fit_log_model(s.rows, true);
    return s;
}

/// Consistency of the coadjoint action on the shift-block construction: the
/// defining form -(T_++ + T_0/2)([A,B] + [A,B]*) against the Hermitian
/// substitution [A,B]* -> [A,B], plus the block-diagonal closed form of
/// [A,B] and the norm transfer ||B||_1 = ||K||_1.
struct CoadjointBlockCheck {
    std::size_t half_width = 0;
    double shortcut_residual = 0.0;   // relative, between the two ad* routes
    double block_residual = 0.0;      // [A,B] vs closed form, entrywise max
    double commutator_defect = 0.0;   // Hermiticity defect of [A,B]
    double norm_transfer = 0.0;       // | ||B||_1 - ||K||_1 |
};

inline CoadjointBlockCheck coadjoint_norm_identity_check(
    std::size_t half_width, WitnessFamily family = WitnessFamily::hilbert_kernel) {
    const BasisWindow w(half_width);
    const ComplexMatrix k = witness_matrix(half_width, family);
    const SkewHermitian a = build_block_A(w);
    const ComplexMatrix b = build_block_B(k, w);
    const ComplexMatrix c = commutator(a.matrix(), b);

    CoadjointBlockCheck out;
    out.half_width = half_width;
    const ComplexMatrix via_adjoint = coadjoint_algebra_bplus(a, b);
    const ComplexMatrix via_hermitian = -strict_plus_half_diag(c + c);
    out.shortcut_residual =
        frobenius_norm(via_adjoint - via_hermitian) / std::max(frobenius_norm(via_adjoint), 1e-30);

    ComplexMatrix closed(w.dim());
    for (std::size_t i = 0; i < half_width; ++i)
        for (std::size_t j = 0; j < half_width; ++j) {
            closed(i, j) = -k(i, j);
            closed(half_width + i, half_width + j) = k(half_width - 1 - i, half_width - 1 - j);
        }
    out.block_residual = max_abs(c - closed);
    out.commutator_defect = hermitian_defect(c) / std::max(frobenius_norm(c), 1e-30);
    out.norm_transfer = std::abs(trace_norm(b) - trace_norm(k));
    return out;
}

}  // namespace uplab
