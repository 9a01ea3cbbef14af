// Canonical exponential polynomials on R^d and the operator algebra acting on
// them: shift tau_y, dilation sigma_b, iterated differences Delta_y^k.
//
// A value is a finite sum  sum_s P_s(x) * e^{<lambda_s, x>}  stored as a map
// frequency -> polynomial part, each polynomial part a map multi-index ->
// formal exponential scalar. Both maps are kept sorted and zero-pruned, so
// structural equality is semantic equality.
#ifndef EXPOLY_EXP_POLY_HPP
#define EXPOLY_EXP_POLY_HPP

#include "expoly/exp_scalar.hpp"
#include "expoly/linalg.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace expoly {

using MultiIndex = std::vector<std::uint32_t>;

inline std::uint32_t total_order(const MultiIndex& a) {
    std::uint32_t s = 0;
    for (auto e : a) s += e;
    return s;
}

/// Graded lexicographic order: by total degree, ties broken lexicographically.
struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        std::uint32_t ta = total_order(a), tb = total_order(b);
        if (ta != tb) return ta < tb;
        return a < b;
    }
};

using Freq = GaussVector;
using PolyPart = std::map<MultiIndex, ExpScalar, GradedLexLess>;

namespace detail {

inline void pp_add_term(PolyPart& p, const MultiIndex& alpha, const ExpScalar& c) {
    if (c.is_zero()) return;
    auto it = p.find(alpha);
    if (it == p.end()) {
        p.emplace(alpha, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

inline PolyPart pp_mul(const PolyPart& a, const PolyPart& b) {
    PolyPart r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            MultiIndex m(ma.size());
            for (std::size_t j = 0; j < m.size(); ++j) m[j] = ma[j] + mb[j];
            pp_add_term(r, m, ca * cb);
        }
    return r;
}

inline Rational binomial(std::uint32_t n, std::uint32_t k) {
    Int num = 1, den = 1;
    for (std::uint32_t j = 0; j < k; ++j) {
        num *= n - j;
        den *= j + 1;
    }
    return Rational(num, den);
}

inline Rational rat_pow(const Rational& x, std::uint32_t k) {
    Rational r(1);
    for (std::uint32_t j = 0; j < k; ++j) r *= x;
    return r;
}

/// P(x) -> P(x + y) for a rational shift y, by per-variable binomial expansion.
inline PolyPart pp_translate(const PolyPart& p, const RatVector& y) {
    const std::size_t d = y.size();
    PolyPart r;
    std::vector<std::pair<MultiIndex, Rational>> partial;
    for (const auto& [alpha, c] : p) {
        partial.assign(1, {MultiIndex(d, 0), Rational(1)});
        for (std::size_t j = 0; j < d; ++j) {
            if (alpha[j] == 0) {
                for (auto& [m, w] : partial) m[j] = 0;
                continue;
            }
            std::vector<std::pair<MultiIndex, Rational>> next;
            next.reserve(partial.size() * (alpha[j] + 1));
            for (const auto& [m, w] : partial)
                for (std::uint32_t bj = 0; bj <= alpha[j]; ++bj) {
                    Rational factor = w * binomial(alpha[j], bj) * rat_pow(y[j], alpha[j] - bj);
                    if (factor.is_zero()) continue;
                    MultiIndex m2 = m;
                    m2[j] = bj;
                    next.emplace_back(std::move(m2), std::move(factor));
                }
            partial = std::move(next);
        }
        for (const auto& [m, w] : partial) pp_add_term(r, m, c * ExpScalar(GaussRational(w)));
    }
    return r;
}

/// P(x) -> P(bx): each variable z_j is replaced by the linear form (b x)_j.
inline PolyPart pp_substitute_matrix(const PolyPart& p, const RatMatrix& b) {
    const std::size_t d = b.dim();
    // Linear forms and their powers, computed on demand.
    std::vector<std::vector<PolyPart>> powers(d);
    auto form_power = [&](std::size_t j, std::uint32_t k) -> const PolyPart& {
        auto& cache = powers[j];
        if (cache.empty()) {
            PolyPart one;
            one.emplace(MultiIndex(d, 0), ExpScalar(1));
            cache.push_back(std::move(one));
            PolyPart lin;
            for (std::size_t t = 0; t < d; ++t) {
                if (b.at(j, t).is_zero()) continue;
                MultiIndex m(d, 0);
                m[t] = 1;
                lin.emplace(std::move(m), ExpScalar(GaussRational(b.at(j, t))));
            }
            cache.push_back(std::move(lin));
        }
        while (cache.size() <= k) cache.push_back(pp_mul(cache.back(), cache[1]));
        return cache[k];
    };
    PolyPart r;
    for (const auto& [alpha, c] : p) {
        PolyPart acc;
        acc.emplace(MultiIndex(d, 0), c);
        for (std::size_t j = 0; j < d; ++j)
            if (alpha[j] > 0) acc = pp_mul(acc, form_power(j, alpha[j]));
        for (const auto& [m, w] : acc) pp_add_term(r, m, w);
    }
    return r;
}

inline PolyPart pp_derivative(const PolyPart& p, std::size_t j) {
    PolyPart r;
    for (const auto& [alpha, c] : p) {
        if (alpha[j] == 0) continue;
        MultiIndex m = alpha;
        m[j] -= 1;
        pp_add_term(r, m, c * ExpScalar(GaussRational(Rational(alpha[j]))));
    }
    return r;
}

}  // namespace detail

class ExpPoly {
public:
    using TermMap = std::map<Freq, PolyPart, GaussVectorLess>;

    ExpPoly() = default;
    explicit ExpPoly(std::size_t d) : d_(d) {}

    static ExpPoly zero(std::size_t d) { return ExpPoly(d); }

    static ExpPoly constant(std::size_t d, ExpScalar c) {
        ExpPoly f(d);
        f.add_term(Freq(d), MultiIndex(d, 0), std::move(c));
        return f;
    }

    /// The coordinate function x_j (0-based index).
    static ExpPoly variable(std::size_t d, std::size_t j) {
        ExpPoly f(d);
        MultiIndex m(d, 0);
        m.at(j) = 1;
        f.add_term(Freq(d), std::move(m), ExpScalar(1));
        return f;
    }

    static ExpPoly monomial(std::size_t d, MultiIndex alpha, ExpScalar c) {
        ExpPoly f(d);
        if (alpha.size() != d) throw DimensionMismatch("monomial: index length != d");
        f.add_term(Freq(d), std::move(alpha), std::move(c));
        return f;
    }

    /// e^{<lambda, x>}
    static ExpPoly exponential(std::size_t d, Freq lambda, ExpScalar c = ExpScalar(1)) {
        ExpPoly f(d);
        if (lambda.size() != d) throw DimensionMismatch("exponential: frequency length != d");
        f.add_term(std::move(lambda), MultiIndex(d, 0), std::move(c));
        return f;
    }

    std::size_t dim() const { return d_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Freq lambda, MultiIndex alpha, ExpScalar c) {
        if (c.is_zero()) return;
        auto& part = terms_[std::move(lambda)];
        detail::pp_add_term(part, alpha, c);
        if (part.empty()) prune();
    }

    ExpPoly operator-() const {
        ExpPoly r(d_);
        for (const auto& [l, p] : terms_) {
            PolyPart q;
            for (const auto& [m, c] : p) q.emplace(m, -c);
            r.terms_.emplace(l, std::move(q));
        }
        return r;
    }

    ExpPoly& operator+=(const ExpPoly& o) {
        check_dim(o);
        for (const auto& [l, p] : o.terms_) {
            auto& part = terms_[l];
            for (const auto& [m, c] : p) detail::pp_add_term(part, m, c);
        }
        prune();
        return *this;
    }
    ExpPoly& operator-=(const ExpPoly& o) { return *this += -o; }

    friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
    friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }

    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
        a.check_dim(b);
        ExpPoly r(a.d_);
        for (const auto& [la, pa] : a.terms_)
            for (const auto& [lb, pb] : b.terms_) {
                Freq l(a.d_);
                for (std::size_t k = 0; k < a.d_; ++k) l[k] = la[k] + lb[k];
                auto& part = r.terms_[std::move(l)];
                for (const auto& [m, c] : detail::pp_mul(pa, pb))
                    detail::pp_add_term(part, m, c);
            }
        r.prune();
        return r;
    }

    friend bool operator==(const ExpPoly& a, const ExpPoly& b) {
        return a.d_ == b.d_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const ExpPoly& a, const ExpPoly& b) { return !(a == b); }

    /// Total degree of the polynomial parts; -1 for the zero function.
    int total_degree() const {
        int deg = -1;
        for (const auto& [l, p] : terms_)
            for (const auto& [m, c] : p) deg = std::max(deg, static_cast<int>(total_order(m)));
        return deg;
    }

    friend ExpPoly scale(const ExpPoly& f, const ExpScalar& c) {
        ExpPoly r(f.d_);
        if (c.is_zero()) return r;
        for (const auto& [l, p] : f.terms_) {
            PolyPart q;
            for (const auto& [m, s] : p) {
                ExpScalar cs = s * c;
                if (!cs.is_zero()) q.emplace(m, std::move(cs));
            }
            if (!q.empty()) r.terms_.emplace(l, std::move(q));
        }
        return r;
    }

private:
    void check_dim(const ExpPoly& o) const {
        if (d_ != o.d_) throw DimensionMismatch("exp poly dimension mismatch");
    }
    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = it->second.empty() ? terms_.erase(it) : std::next(it);
    }

    std::size_t d_ = 0;
    TermMap terms_;
};

// ---------------------------------------------------------------------------
// Operators

/// tau_y: (tau_y f)(x) = f(x + y). Every term P(x)e^{<l,x>} picks up the
/// formal scalar e^{<l,y>} and its polynomial part expands binomially.
inline ExpPoly translate(const ExpPoly& f, const RatVector& y) {
    if (y.size() != f.dim()) throw DimensionMismatch("translate: shift length != d");
    ExpPoly r(f.dim());
    for (const auto& [lambda, part] : f.terms()) {
        GaussRational w;
        for (std::size_t j = 0; j < y.size(); ++j) w += lambda[j] * GaussRational(y[j]);
        const ExpScalar factor = ExpScalar::exp_of(w);
        for (const auto& [m, c] : detail::pp_translate(part, y))
            r.add_term(lambda, m, c * factor);
    }
    return r;
}

/// sigma_b: (sigma_b f)(x) = f(bx). Frequencies map along b^T.
inline ExpPoly dilate(const ExpPoly& f, const RatMatrix& b) {
    if (b.dim() != f.dim()) throw DimensionMismatch("dilate: matrix size != d");
    const std::size_t d = f.dim();
    ExpPoly r(d);
    for (const auto& [lambda, part] : f.terms()) {
        Freq bt_lambda(d);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t j = 0; j < d; ++j)
                bt_lambda[k] += GaussRational(b.at(j, k)) * lambda[j];
        for (const auto& [m, c] : detail::pp_substitute_matrix(part, b))
            r.add_term(bt_lambda, m, c);
    }
    return r;
}

/// Delta_y^order, the iterated difference (tau_y - id)^order.
inline ExpPoly difference(const ExpPoly& f, const RatVector& y, unsigned order) {
    ExpPoly r = f;
    for (unsigned k = 0; k < order; ++k) r = translate(r, y) - r;
    return r;
}

inline std::complex<double> evaluate(const ExpPoly& f, const std::vector<double>& x) {
    if (x.size() != f.dim()) throw DimensionMismatch("evaluate: point length != d");
    std::complex<double> total(0.0);
    for (const auto& [lambda, part] : f.terms()) {
        std::complex<double> dot(0.0);
        for (std::size_t j = 0; j < x.size(); ++j) dot += lambda[j].to_complex() * x[j];
        std::complex<double> poly(0.0);
        for (const auto& [m, c] : part) {
            double mono = 1.0;
            for (std::size_t j = 0; j < x.size(); ++j)
                for (std::uint32_t e = 0; e < m[j]; ++e) mono *= x[j];
            poly += c.evaluate() * mono;
        }
        total += poly * std::exp(dot);
    }
    return total;
}

/// Exact evaluation at a rational point; the result is a formal scalar.
inline ExpScalar evaluate_exact(const ExpPoly& f, const RatVector& x) {
    if (x.size() != f.dim()) throw DimensionMismatch("evaluate_exact: point length != d");
    ExpScalar total;
    for (const auto& [lambda, part] : f.terms()) {
        GaussRational dot;
        for (std::size_t j = 0; j < x.size(); ++j) dot += lambda[j] * GaussRational(x[j]);
        ExpScalar sum;
        for (const auto& [m, c] : part) {
            Rational mono(1);
            for (std::size_t j = 0; j < x.size(); ++j) mono *= detail::rat_pow(x[j], m[j]);
            sum += c * ExpScalar(GaussRational(mono));
        }
        total += sum * ExpScalar::exp_of(dot);
    }
    return total;
}

/// True iff f is an ordinary polynomial: only the zero frequency occurs and
/// no coefficient carries a formal e^w factor.
inline bool is_polynomial(const ExpPoly& f) {
    for (const auto& [lambda, part] : f.terms()) {
        if (!is_zero(lambda)) return false;
        for (const auto& [m, c] : part)
            if (!c.as_constant()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Coordinates over (frequency, monomial) atoms, shared by the span machinery.

struct PolyAtom {
    Freq lambda;
    MultiIndex alpha;

    friend bool operator<(const PolyAtom& a, const PolyAtom& b) {
        GaussVectorLess fl;
        if (fl(a.lambda, b.lambda)) return true;
        if (fl(b.lambda, a.lambda)) return false;
        return GradedLexLess{}(a.alpha, b.alpha);
    }
    friend bool operator==(const PolyAtom& a, const PolyAtom& b) {
        return a.lambda == b.lambda && a.alpha == b.alpha;
    }
};

inline std::vector<PolyAtom> collect_atoms(const std::vector<const ExpPoly*>& fs) {
    std::set<PolyAtom> seen;
    for (const ExpPoly* f : fs)
        for (const auto& [lambda, part] : f->terms())
            for (const auto& [m, c] : part) seen.insert(PolyAtom{lambda, m});
    return std::vector<PolyAtom>(seen.begin(), seen.end());
}

inline std::vector<ExpScalarFrac> coord_vector(const ExpPoly& f,
                                               const std::vector<PolyAtom>& atoms) {
    std::vector<ExpScalarFrac> v(atoms.size());
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        auto it = f.terms().find(atoms[k].lambda);
        if (it == f.terms().end()) continue;
        auto jt = it->second.find(atoms[k].alpha);
        if (jt != it->second.end()) v[k] = ExpScalarFrac(jt->second);
    }
    return v;
}

/// Leading-coefficient normalization (when the lead is a single-term unit).
inline ExpPoly make_monic(const ExpPoly& f) {
    if (f.is_zero()) return f;
    const auto& part = f.terms().rbegin()->second;
    const ExpScalar& lead = part.rbegin()->second;
    if (auto inv = lead.unit_inverse()) return scale(f, *inv);
    return f;
}

/// Basis of span{tau_y f : y in R^d}, built per frequency from the partial
/// derivatives of the polynomial parts (the Taylor expansion of P(x+y) in y).
inline std::vector<ExpPoly> translates_closure(const ExpPoly& f) {
    std::vector<ExpPoly> basis;
    const std::size_t d = f.dim();
    for (const auto& [lambda, part] : f.terms()) {
        // All derivatives of the polynomial part, by graded descent.
        std::vector<PolyPart> derivs{part};
        std::set<MultiIndex, GradedLexLess> visited{MultiIndex(d, 0)};
        std::vector<std::pair<MultiIndex, PolyPart>> frontier{{MultiIndex(d, 0), part}};
        while (!frontier.empty()) {
            std::vector<std::pair<MultiIndex, PolyPart>> next;
            for (const auto& [order, p] : frontier)
                for (std::size_t j = 0; j < d; ++j) {
                    PolyPart dp = detail::pp_derivative(p, j);
                    if (dp.empty()) continue;
                    MultiIndex o = order;
                    o[j] += 1;
                    if (!visited.insert(o).second) continue;
                    derivs.push_back(dp);
                    next.emplace_back(std::move(o), std::move(dp));
                }
            frontier = std::move(next);
        }
        // Keep an independent subset, in derivative order (f itself first).
        std::vector<ExpPoly> candidates;
        candidates.reserve(derivs.size());
        for (auto& p : derivs) {
            ExpPoly g(d);
            for (const auto& [m, c] : p) g.add_term(lambda, m, c);
            candidates.push_back(std::move(g));
        }
        std::vector<const ExpPoly*> ptrs;
        for (const auto& g : candidates) ptrs.push_back(&g);
        auto atoms = collect_atoms(ptrs);
        SpanReducer<ExpScalarFrac> span;
        for (const auto& g : candidates)
            if (span.insert(coord_vector(g, atoms))) basis.push_back(make_monic(g));
    }
    return basis;
}

}  // namespace expoly

#endif  // EXPOLY_EXP_POLY_HPP
