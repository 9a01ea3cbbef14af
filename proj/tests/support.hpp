// Seeded random generators shared by the property tests and the acceptance
// gate. Every generator draws from an explicitly passed engine so a run is
// reproducible from the top-level seed alone.
#ifndef EXPOLY_TESTS_SUPPORT_HPP
#define EXPOLY_TESTS_SUPPORT_HPP

#include "expoly/equation.hpp"
#include "expoly/exp_poly.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace testsupport {

using namespace expoly;

inline std::uint64_t& global_seed() {
    static std::uint64_t seed = 0;
    return seed;
}

/// Independent stream per call site; `salt` keeps streams decorrelated.
inline std::mt19937_64 make_rng(std::uint64_t salt) {
    std::mt19937_64 rng(global_seed() ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
    rng.discard(16);
    return rng;
}

inline long long rand_int(std::mt19937_64& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline Rational rand_rational(std::mt19937_64& rng, long long num_max = 10,
                              long long den_max = 4) {
    return Rational(rand_int(rng, -num_max, num_max), rand_int(rng, 1, den_max));
}

inline Rational rand_nonzero_rational(std::mt19937_64& rng, long long num_max = 10,
                                      long long den_max = 4) {
    for (;;) {
        Rational r = rand_rational(rng, num_max, den_max);
        if (!r.is_zero()) return r;
    }
}

inline GaussRational rand_gauss(std::mt19937_64& rng, long long num_max = 10) {
    return GaussRational(rand_rational(rng, num_max), rand_rational(rng, num_max));
}

inline GaussRational rand_nonzero_gauss(std::mt19937_64& rng, long long num_max = 10) {
    for (;;) {
        GaussRational g = rand_gauss(rng, num_max);
        if (!g.is_zero()) return g;
    }
}

inline RatVector rand_rat_vector(std::mt19937_64& rng, std::size_t d, long long num_max = 3) {
    RatVector v;
    for (std::size_t j = 0; j < d; ++j) v.push_back(rand_rational(rng, num_max, 2));
    return v;
}

/// Small Gaussian-integer frequency vector (zero with positive probability).
inline Freq rand_freq(std::mt19937_64& rng, std::size_t d, long long mag = 2) {
    Freq f;
    for (std::size_t j = 0; j < d; ++j)
        f.emplace_back(Rational(rand_int(rng, -mag, mag)), Rational(rand_int(rng, -1, 1)));
    return f;
}

inline MultiIndex rand_alpha(std::mt19937_64& rng, std::size_t d, unsigned max_total) {
    MultiIndex alpha(d, 0);
    unsigned budget = static_cast<unsigned>(rand_int(rng, 0, max_total));
    for (unsigned t = 0; t < budget; ++t) ++alpha[static_cast<std::size_t>(rand_int(rng, 0, d - 1))];
    return alpha;
}

/// Random nonzero exponential polynomial: up to `max_freqs` frequencies, a few
/// monomials each, total degree <= max_deg, coefficient height <= height.
inline ExpPoly rand_exppoly(std::mt19937_64& rng, std::size_t d, std::size_t max_freqs = 4,
                            unsigned max_deg = 6, long long height = 10) {
    ExpPoly f(d);
    const std::size_t n_freqs = static_cast<std::size_t>(rand_int(rng, 1, max_freqs));
    for (std::size_t s = 0; s < n_freqs; ++s) {
        Freq lambda = rand_freq(rng, d);
        const std::size_t n_monos = static_cast<std::size_t>(rand_int(rng, 1, 3));
        for (std::size_t t = 0; t < n_monos; ++t)
            f.add_term(lambda, rand_alpha(rng, d, max_deg),
                       ExpScalar(rand_gauss(rng, height)));
    }
    if (f.is_zero()) f += ExpPoly::constant(d, ExpScalar(1));
    return f;
}

/// Random polynomial of exact total degree `deg` whose top form involves every
/// coordinate, so an axis-aligned difference always lowers the degree by one.
inline ExpPoly rand_polynomial(std::mt19937_64& rng, std::size_t d, unsigned deg,
                               long long height = 6) {
    ExpPoly p(d);
    const std::size_t n_monos = static_cast<std::size_t>(rand_int(rng, 1, 4));
    for (std::size_t t = 0; t < n_monos; ++t)
        p.add_term(Freq(d), rand_alpha(rng, d, deg), ExpScalar(rand_gauss(rng, height)));
    for (std::size_t j = 0; j < d; ++j) {
        MultiIndex top(d, 0);
        top[j] = deg;
        p.add_term(Freq(d), top, ExpScalar(Rational(rand_int(rng, 1, height))));
    }
    return p;
}

/// Random polynomial with a lower part of total degree <= deg - 1 plus a
/// forced positive pure top sum_j c_j x_j^deg. At any y with positive
/// coordinates the deg-th difference is the constant deg! * sum_j c_j y_j^deg,
/// which is strictly positive, and any nonzero step lowers the degree by
/// exactly one. That makes degree-descent assertions seed-independent.
inline ExpPoly rand_polynomial_split(std::mt19937_64& rng, std::size_t d, unsigned deg,
                                     long long height = 6) {
    ExpPoly p(d);
    if (deg > 0) {
        const std::size_t n_monos = static_cast<std::size_t>(rand_int(rng, 0, 3));
        for (std::size_t t = 0; t < n_monos; ++t)
            p.add_term(Freq(d), rand_alpha(rng, d, deg - 1), ExpScalar(rand_gauss(rng, height)));
    }
    for (std::size_t j = 0; j < d; ++j) {
        MultiIndex top(d, 0);
        top[j] = deg;
        p.add_term(Freq(d), top, ExpScalar(Rational(rand_int(rng, 1, height))));
    }
    return p;
}

inline RatVector rand_positive_vector(std::mt19937_64& rng, std::size_t d, long long max = 3) {
    RatVector v;
    for (std::size_t j = 0; j < d; ++j)
        v.push_back(Rational(rand_int(rng, 1, max), rand_int(rng, 1, 2)));
    return v;
}

inline RatMatrix rand_invertible(std::mt19937_64& rng, std::size_t d, long long num_max = 3) {
    for (;;) {
        RatMatrix m(d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) m.at(r, c) = rand_rational(rng, num_max, 2);
        if (is_invertible(m)) return m;
    }
}

/// Random m-summand spec in dimension d satisfying the strongest profile
/// (all b_i, c_i and all pairwise b_i^{-1}c_i - b_j^{-1}c_j invertible).
inline EquationSpec rand_spec(std::mt19937_64& rng, std::size_t d, std::size_t m) {
    for (;;) {
        EquationSpec spec;
        spec.d = d;
        for (std::size_t i = 0; i < m; ++i)
            spec.pairs.push_back({rand_invertible(rng, d), rand_invertible(rng, d)});
        if (validate_conditions(spec, Profile::Thm21).pass) return spec;
    }
}

/// Normalized variant: every b_i = I, the c_i pairwise-difference invertible.
inline EquationSpec rand_normalized_spec(std::mt19937_64& rng, std::size_t d, std::size_t m) {
    for (;;) {
        EquationSpec spec;
        spec.d = d;
        for (std::size_t i = 0; i < m; ++i)
            spec.pairs.push_back({RatMatrix::identity(d), rand_invertible(rng, d)});
        if (validate_conditions(spec, Profile::Thm21).pass) return spec;
    }
}

}  // namespace testsupport

#endif  // EXPOLY_TESTS_SUPPORT_HPP
