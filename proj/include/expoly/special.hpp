// Named special cases as first-class checkers: Frechet's difference equation,
// the Kakutani-Nagumo rotational mean-value equation, Wilson's split into
// f(x) + g(y), the linearized Skitovich-Darmois identity, and the
// Ghurye-Olkin polynomial-remainder split A(x,y) + B(y,x).
#ifndef EXPOLY_SPECIAL_HPP
#define EXPOLY_SPECIAL_HPP

#include "expoly/bivariate.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace expoly {

// ---------------------------------------------------------------------------
// Frechet: Delta_y^m f = 0  <=>  f is a polynomial of degree < m

struct FrechetVerdict {
    bool pass = false;
    bool symbolic = false;            // is_polynomial(f) and total_degree < m
    bool differences_vanish = false;  // Delta_y^m f = 0 for every supplied y
    std::optional<RatVector> failing_y;
    std::optional<ExpPoly> residual;  // Delta_y^m f at the failing y
};

inline FrechetVerdict frechet_check(const ExpPoly& f, unsigned order,
                                    const std::vector<RatVector>& trials) {
    FrechetVerdict v;
    v.symbolic = is_polynomial(f) && f.total_degree() < static_cast<int>(order);
    v.differences_vanish = true;
    for (const auto& y : trials) {
        ExpPoly delta = difference(f, y, order);
        if (!delta.is_zero()) {
            v.differences_vanish = false;
            v.failing_y = y;
            v.residual = std::move(delta);
            break;
        }
    }
    v.pass = v.symbolic && v.differences_vanish;
    return v;
}

// ---------------------------------------------------------------------------
// Kakutani-Nagumo: the N-fold rotational mean on R^2 = C reproduces f(z)

inline constexpr double kKakutaniTolerance = 1e-9;

struct KnSampleResult {
    RatVector z, h;
    std::optional<ExpScalar> exact_residual;  // exact mode only
    double abs_residual = 0.0;
};

struct KakutaniVerdict {
    bool pass = false;
    bool exact_mode = false;  // N in {2, 4}: rotation matrices are rational
    double max_abs_residual = 0.0;
    std::vector<KnSampleResult> samples;
};

/// Residual of the mean-value identity (1/N) sum_k f(z + w^k h) - f(z) at the
/// given rational sample points. For N in {2, 4} the powers of w are rational
/// rotation matrices and the residual is computed exactly; otherwise in
/// double precision against the 1e-9 tolerance.
inline KakutaniVerdict kakutani_nagumo_check(const ExpPoly& f, unsigned n,
                                             const std::vector<std::pair<RatVector, RatVector>>& samples) {
    if (n < 2) throw std::invalid_argument("kakutani_nagumo_check needs N >= 2");
    if (f.dim() != 2) throw DimensionMismatch("kakutani_nagumo_check needs f on R^2");
    KakutaniVerdict v;
    v.exact_mode = (n == 2 || n == 4);
    bool all_zero = true;
    for (const auto& [z, h] : samples) {
        if (z.size() != 2 || h.size() != 2)
            throw DimensionMismatch("sample points must lie in R^2");
        KnSampleResult res;
        res.z = z;
        res.h = h;
        if (v.exact_mode) {
            // w = -1 (N = 2) or w = i as [[0,-1],[1,0]] (N = 4).
            ExpScalar mean;
            RatVector rot = h;
            for (unsigned k = 0; k < n; ++k) {
                RatVector p{z[0] + rot[0], z[1] + rot[1]};
                mean += evaluate_exact(f, p);
                rot = (n == 2) ? RatVector{-rot[0], -rot[1]} : RatVector{-rot[1], rot[0]};
            }
            ExpScalar residual = mean * ExpScalar(GaussRational(Rational(1, n))) -
                                 evaluate_exact(f, z);
            res.abs_residual = std::abs(residual.evaluate());
            all_zero = all_zero && residual.is_zero();
            res.exact_residual = std::move(residual);
        } else {
            std::complex<double> mean(0.0);
            const double zr = to_double(z[0]), zi = to_double(z[1]);
            const double hr = to_double(h[0]), hi = to_double(h[1]);
            for (unsigned k = 0; k < n; ++k) {
                const double angle = 2.0 * M_PI * k / n;
                const double rr = hr * std::cos(angle) - hi * std::sin(angle);
                const double ri = hr * std::sin(angle) + hi * std::cos(angle);
                mean += evaluate(f, {zr + rr, zi + ri});
            }
            res.abs_residual = std::abs(mean / static_cast<double>(n) - evaluate(f, {zr, zi}));
        }
        v.max_abs_residual = std::max(v.max_abs_residual, res.abs_residual);
        v.samples.push_back(std::move(res));
    }
    v.pass = v.exact_mode ? all_zero : (v.max_abs_residual < kKakutaniTolerance);
    return v;
}

// ---------------------------------------------------------------------------
// Wilson: sum_i f_i(alpha_i x + beta_i y) = f(x) + g(y) on R^1

struct WilsonVerdict {
    bool pass = false;
    ExpPoly f_x{1}, g_y{1};           // the split, when no mixed atoms remain
    std::size_t degree_bound = 0;     // m = number of summands
    std::vector<bool> fi_degree_ok;   // f_i polynomial of degree <= m
    std::optional<BiAtom> mixed_atom; // witness
};

inline WilsonVerdict wilson_check(const std::vector<Rational>& alphas,
                                  const std::vector<Rational>& betas,
                                  const std::vector<ExpPoly>& f) {
    if (alphas.size() != betas.size() || alphas.size() != f.size())
        throw DimensionMismatch("wilson_check: coefficient and function counts differ");
    EquationSpec spec;
    spec.d = 1;
    SolutionTuple sol;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].dim() != 1) throw DimensionMismatch("wilson_check works on R^1");
        RatMatrix b(1), c(1);
        b.at(0, 0) = alphas[i];
        c.at(0, 0) = betas[i];
        spec.pairs.push_back({std::move(b), std::move(c)});
        sol.f.push_back(f[i]);
    }

    WilsonVerdict v;
    v.degree_bound = f.size();
    for (const auto& fi : f)
        v.fi_degree_ok.push_back(is_polynomial(fi) &&
                                 fi.total_degree() <= static_cast<int>(v.degree_bound));

    v.pass = true;
    for (const auto& [atom, coeff] : bivariate_expand(spec, sol).atoms()) {
        const bool x_trivial = is_zero(atom.x.lambda) && total_order(atom.x.alpha) == 0;
        const bool y_trivial = is_zero(atom.y.lambda) && total_order(atom.y.alpha) == 0;
        if (y_trivial) {
            v.f_x.add_term(atom.x.lambda, atom.x.alpha, coeff);  // constants go to f
        } else if (x_trivial) {
            v.g_y.add_term(atom.y.lambda, atom.y.alpha, coeff);
        } else if (v.pass) {
            v.pass = false;
            v.mixed_atom = atom;
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Skitovich-Darmois (linearized): LHS = pure-x part + pure-y part

struct SkitovichVerdict {
    bool pass = false;
    BivariatePoly difference;  // LHS - (sum f_i(b_i x) + sum f_i(c_i y)); zero iff pass
};

inline SkitovichVerdict skitovich_check(const EquationSpec& spec, const SolutionTuple& sol) {
    spec.check_valid();
    if (sol.f.size() != spec.summands())
        throw DimensionMismatch("solution tuple length != number of pairs");
    ExpPoly rhs(2 * spec.d);
    for (std::size_t i = 0; i < spec.summands(); ++i) {
        rhs += embed_x(dilate(sol.f[i], spec.pairs[i].b));
        rhs += embed_y(dilate(sol.f[i], spec.pairs[i].c));
    }
    SkitovichVerdict v;
    v.difference = bivariate_expand(spec, sol) - BivariatePoly(spec.d, std::move(rhs));
    v.pass = v.difference.is_zero();
    return v;
}

// ---------------------------------------------------------------------------
// Ghurye-Olkin: sum_i f_i(x + c_i y) = A(x,y) + B(y,x) with A polynomial in x
// of degree <= r and B polynomial in y of degree <= s

struct GhuryeOlkinSpec {
    std::size_t d = 0;
    std::vector<RatMatrix> c;
    std::uint32_t r = 0, s = 0;

    std::size_t summands() const { return c.size(); }
};

struct GhuryeOlkinVerdict {
    bool pass = false;
    BivariatePoly a_part, b_part;      // a valid split; overlap atoms go to A
    std::vector<bool> fi_polynomial;   // the theorem's conclusion, per function
    std::optional<BiAtom> bad_atom;    // witness: fits neither A nor B
};

inline GhuryeOlkinVerdict ghurye_olkin_check(const GhuryeOlkinSpec& go,
                                             const SolutionTuple& sol) {
    if (go.c.empty()) throw DimensionMismatch("ghurye_olkin_check needs at least one c_i");
    if (sol.f.size() != go.summands())
        throw DimensionMismatch("solution tuple length != number of c matrices");
    EquationSpec spec;
    spec.d = go.d;
    for (const auto& ci : go.c) spec.pairs.push_back({RatMatrix::identity(go.d), ci});

    GhuryeOlkinVerdict v;
    for (const auto& fi : sol.f) v.fi_polynomial.push_back(is_polynomial(fi));

    ExpPoly a_joint(2 * go.d), b_joint(2 * go.d);
    v.pass = true;
    for (const auto& [atom, coeff] : bivariate_expand(spec, sol).atoms()) {
        const bool a_ok = is_zero(atom.x.lambda) && total_order(atom.x.alpha) <= go.r;
        const bool b_ok = is_zero(atom.y.lambda) && total_order(atom.y.alpha) <= go.s;
        Freq joint_freq = atom.x.lambda;
        joint_freq.insert(joint_freq.end(), atom.y.lambda.begin(), atom.y.lambda.end());
        MultiIndex joint_mono = atom.x.alpha;
        joint_mono.insert(joint_mono.end(), atom.y.alpha.begin(), atom.y.alpha.end());
        if (a_ok) {
            a_joint.add_term(std::move(joint_freq), std::move(joint_mono), coeff);
        } else if (b_ok) {
            b_joint.add_term(std::move(joint_freq), std::move(joint_mono), coeff);
        } else if (v.pass) {
            v.pass = false;
            v.bad_atom = atom;
        }
    }
    v.a_part = BivariatePoly(go.d, std::move(a_joint));
    v.b_part = BivariatePoly(go.d, std::move(b_joint));
    return v;
}

}  // namespace expoly

#endif  // EXPOLY_SPECIAL_HPP
