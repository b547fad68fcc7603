#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "uplab/basis_window.hpp"
#include "uplab/random.hpp"

using namespace uplab;

namespace {

ComplexMatrix unit_entry(std::size_t dim, std::size_t r, std::size_t c, cplx v = 1.0) {
    ComplexMatrix m(dim);
    m(r, c) = v;
    return m;
}

}  // namespace

TEST_CASE("basis window") {
    BasisWindow w(3);
    REQUIRE(w.dim() == 6);
    REQUIRE(w.label(0) == -3);
    REQUIRE(w.label(5) == 2);
    for (std::size_t s = 0; s < w.dim(); ++s) {
        REQUIRE(w.storage(w.label(s)) == s);
        if (s > 0) REQUIRE(w.label(s) == w.label(s - 1) + 1);
    }
    REQUIRE_THROWS_AS(BasisWindow(0), std::invalid_argument);
}

TEST_CASE("triangular truncations") {
    BasisWindow w(1);  // labels -1, 0
    ComplexMatrix a(2);
    a(0, 0) = 1.0;
    a(0, 1) = 2.0;
    a(1, 0) = 3.0;
    a(1, 1) = 4.0;

    SECTION("2x2 worked example") {
        auto tp = t_plus(a, w);
        REQUIRE(tp(0, 0) == cplx(1.0));
        REQUIRE(tp(0, 1) == cplx(0.0));
        REQUIRE(tp(1, 0) == cplx(3.0));
        REQUIRE(tp(1, 1) == cplx(4.0));
        auto tpp = t_plus_plus(a, w);
        REQUIRE(max_abs(tpp - unit_entry(2, 1, 0, 3.0)) == 0.0);
        auto tz = t_zero(a, w);
        REQUIRE(tz(0, 0) == cplx(1.0));
        REQUIRE(tz(1, 1) == cplx(4.0));
        REQUIRE(tz(0, 1) == cplx(0.0));
    }
    SECTION("identity") {
        auto i2 = ComplexMatrix::identity(2);
        REQUIRE(max_abs(t_plus(i2) - i2) == 0.0);
        REQUIRE(max_abs(t_plus_plus(i2)) == 0.0);
    }
    SECTION("exact algebra: t_plus = t_plus_plus + t_zero, complementary projections") {
        Rng rng(7);
        auto m = random_matrix(16, rng);
        REQUIRE(max_abs(t_plus(m) - (t_plus_plus(m) + t_zero(m))) == 0.0);
        REQUIRE(max_abs(t_plus_plus(t_zero(m))) == 0.0);
        REQUIRE(max_abs(t_plus(t_plus(m)) - t_plus(m)) == 0.0);
        // discarded strict-upper complement restores the matrix entrywise
        ComplexMatrix rest(16);
        for (std::size_t i = 0; i < 16; ++i)
            for (std::size_t j = i + 1; j < 16; ++j) rest(i, j) = m(i, j);
        REQUIRE(max_abs(t_plus(m) + rest - m) == 0.0);
    }
    SECTION("window mismatch") {
        REQUIRE_THROWS_AS(t_plus(ComplexMatrix(4), w), std::invalid_argument);
    }
}

TEST_CASE("splitting projections") {
    SECTION("skew input is killed") {
        REQUIRE(max_abs(project_triangular(unit_entry(2, 0, 0, cplx(0, 1)))) == 0.0);
    }
    SECTION("E01 -> E10") {
        REQUIRE(max_abs(project_triangular(unit_entry(2, 0, 1)) - unit_entry(2, 1, 0)) == 0.0);
    }
    SECTION("identity on b+") {
        auto b = project_triangular(random_trace_class(12, 19));
        REQUIRE(max_abs(project_triangular(b) - b) == 0.0);
    }
    SECTION("p_u2 examples") {
        auto s = random_skew_hermitian(8, 23).matrix();
        REQUIRE(max_abs(project_skew(s) - s) == 0.0);
        auto e01 = unit_entry(2, 0, 1);
        REQUIRE(max_abs(project_skew(e01) - (e01 - unit_entry(2, 1, 0))) == 0.0);
        auto x = random_trace_class(8, 29);
        REQUIRE(max_abs(project_skew(project_skew(x)) - project_skew(x)) < 1e-12);
    }
    SECTION("complementarity: exact on and above the diagonal, correctly rounded below") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto x = random_trace_class(16, 100 + seed);
            auto defect = project_triangular(x) + project_skew(x) - x;
            for (std::size_t i = 0; i < 16; ++i)
                for (std::size_t j = 0; j < 16; ++j) {
                    if (j >= i) {
                        REQUIRE(defect(i, j) == cplx(0.0));
                    } else {
                        // only the rounding of the b+ entry x_ij + conj(x_ji) remains
                        const double local = std::abs(x(i, j)) + std::abs(x(j, i));
                        REQUIRE(std::abs(defect(i, j)) <= 0x1.0p-52 * local);
                    }
                }
            REQUIRE(in_b_plus(project_triangular(x)));
            REQUIRE(in_u(project_skew(x)));
            REQUIRE(skew_defect(project_skew(x)) == 0.0);
        }
    }
    SECTION("uniqueness against independent basis-solve decomposition") {
        for (std::size_t dim : {2u, 5u, 8u}) {
            auto x = random_trace_class(dim, 55 + dim);
            ComplexMatrix u_ref, b_ref;
            oracle::basis_solve_split(x, u_ref, b_ref);
            REQUIRE(max_abs(u_ref - project_skew(x)) < 1e-12);
            REQUIRE(max_abs(b_ref - project_triangular(x)) < 1e-12);
        }
    }
}

TEST_CASE("subspace predicates") {
    SECTION("examples") {
        REQUIRE(in_b_plus(unit_entry(2, 1, 0)));
        REQUIRE(in_u(unit_entry(2, 0, 0, cplx(0, 1))));
        REQUIRE_FALSE(in_b_plus(unit_entry(2, 0, 0, cplx(0, 1))));
        REQUIRE_FALSE(in_u(unit_entry(2, 1, 0)));
    }
    SECTION("projection outputs always pass") {
        for (std::uint64_t seed = 0; seed < 20; ++seed)
            REQUIRE(in_b_plus(project_triangular(random_trace_class(10, 200 + seed))));
    }
}

TEST_CASE("isotropy of u and b+") {
    for (std::size_t dim : {4u, 16u, 64u}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto x = random_skew_hermitian(dim, 300 + seed).matrix();
            auto y = random_skew_hermitian(dim, 400 + seed).matrix();
            REQUIRE(std::abs(im_trace_prod(x, y)) <=
                    1e-12 * frobenius_norm(x) * frobenius_norm(y));
            auto bx = project_triangular(random_trace_class(dim, 500 + seed));
            auto by = project_triangular(random_trace_class(dim, 600 + seed));
            REQUIRE(std::abs(im_trace_prod(bx, by)) <=
                    1e-12 * frobenius_norm(bx) * frobenius_norm(by));
        }
    }
}

TEST_CASE("b+ closed under commutator") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto b1 = project_triangular(random_trace_class(12, 700 + seed));
        auto b2 = project_triangular(random_trace_class(12, 800 + seed));
        REQUIRE(in_b_plus(commutator(b1, b2)));
    }
}

TEST_CASE("shift operator") {
    SECTION("N = 1") {
        BasisWindow w(1);
        auto u = shift_u(w);
        REQUIRE(max_abs(u - unit_entry(2, 1, 0)) == 0.0);
    }
    SECTION("N = 2 placement") {
        BasisWindow w(2);
        auto u = shift_u(w);
        REQUIRE(u(w.storage(0), w.storage(-1)) == cplx(1.0));
        REQUIRE(u(w.storage(1), w.storage(-2)) == cplx(1.0));
        REQUIRE(frobenius_norm(u) == Catch::Approx(std::sqrt(2.0)));
    }
    SECTION("partial isometry identities") {
        for (std::size_t hw : {1u, 2u, 5u, 8u}) {
            BasisWindow w(hw);
            auto u = shift_u(w);
            auto proj_minus = adjoint(u) * u;
            auto proj_plus = u * adjoint(u);
            REQUIRE(max_abs(proj_minus + proj_plus - ComplexMatrix::identity(w.dim())) == 0.0);
            for (std::size_t s = 0; s < w.dim(); ++s) {
                const bool neg = w.label(s) < 0;
                REQUIRE(proj_minus(s, s) == cplx(neg ? 1.0 : 0.0));
            }
        }
    }
}

TEST_CASE("block operators") {
    BasisWindow w(3);
    SECTION("A is skew with unit norm, squares to -identity") {
        auto a = build_block_A(w).matrix();
        REQUIRE(skew_defect(a) == 0.0);
        REQUIRE(operator_norm(a) == Catch::Approx(1.0).margin(1e-13));
        REQUIRE(max_abs(a * a + ComplexMatrix::identity(w.dim())) < 1e-14);
    }
    SECTION("B = 0 for K = 0") {
        REQUIRE(max_abs(build_block_B(ComplexMatrix(3), w)) == 0.0);
    }
    SECTION("N = 1, K = [1]") {
        BasisWindow w1(1);
        ComplexMatrix k(1);
        k(0, 0) = 1.0;
        auto b = build_block_B(k, w1);
        REQUIRE(max_abs(b - unit_entry(2, 1, 0)) == 0.0);
        REQUIRE(trace_norm(b) == Catch::Approx(1.0).margin(1e-14));
    }
    SECTION("commutator equals the block-diagonal closed form") {
        Rng rng(31);
        auto k = hermitian_part(random_matrix(3, rng));
        auto a = build_block_A(w).matrix();
        auto b = build_block_B(k, w);
        auto c = commutator(a, b);
        // expected: -K on the negative half, reversed-index K on the other
        ComplexMatrix expected(w.dim());
        const std::size_t hw = w.half_width();
        for (std::size_t i = 0; i < hw; ++i)
            for (std::size_t j = 0; j < hw; ++j) {
                expected(i, j) = -k(i, j);
                expected(hw + i, hw + j) = k(hw - 1 - i, hw - 1 - j);
            }
        REQUIRE(max_abs(c - expected) < 1e-14);
        REQUIRE(hermitian_defect(c) < 1e-14);
    }
    SECTION("B lands in b+ and preserves the trace norm of K") {
        Rng rng(37);
        auto k = hermitian_part(random_matrix(3, rng));
        auto b = build_block_B(k, w);
        REQUIRE(in_b_plus(b));
        REQUIRE(oracle::rel_err(trace_norm(b), trace_norm(k)) < 1e-12);
    }
    SECTION("rejects non-Hermitian K") {
        ComplexMatrix k(3);
        k(0, 1) = 1.0;
        REQUIRE_THROWS_AS(build_block_B(k, w), std::invalid_argument);
    }
}
