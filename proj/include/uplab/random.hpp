#pragma once

#include <cstdint>

#include "uplab/complex_matrix.hpp"
#include "uplab/decompositions.hpp"

namespace uplab {

/// SplitMix64 stream with a Box-Muller Gaussian on top. std::normal_distribution
/// is implementation-defined, so reports would not be reproducible across
/// standard libraries; this generator is pinned bit-for-bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = next_double();
        if (u <= 0.0) u = 0x1.0p-53;
        const double v = next_double();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double a = 6.283185307179586476925286766559 * v;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    cplx next_complex_gaussian() {
        const double re = next_gaussian();
        const double im = next_gaussian();
        return {re, im};
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// FNV-1a over a small byte string; used to derive independent per-trial seeds.
inline std::uint64_t hash64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t hash64_u64(std::uint64_t h, std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xffu;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline ComplexMatrix random_matrix(std::size_t dim, Rng& rng) {
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = rng.next_complex_gaussian();
    return g;
}

/// (G - G*)/2 from i.i.d. complex Gaussian G; exactly skew by construction.
inline SkewHermitian random_skew_hermitian(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    return SkewHermitian(skew_part(random_matrix(dim, rng)), unchecked);
}

inline UnitaryElement random_unitary(std::size_t dim, std::uint64_t seed) {
    return exp_skew(random_skew_hermitian(dim, seed));
}

/// At finite dimension every operator is trace class; a plain Gaussian matrix
/// stands in, with optional unit trace-norm rescaling.
inline ComplexMatrix random_trace_class(std::size_t dim, std::uint64_t seed,
                                        bool unit_trace_norm = false) {
    Rng rng(seed);
    ComplexMatrix g = random_matrix(dim, rng);
    if (unit_trace_norm) {
        const double n1 = trace_norm(g);
        if (n1 > 0.0) g *= cplx(1.0 / n1, 0.0);
    }
    return g;
}

}  // namespace uplab
