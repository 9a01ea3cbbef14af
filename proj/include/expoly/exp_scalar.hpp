// Formal exponential scalars: exact values of the form sum_j c_j * e^{w_j}
// with Gaussian-rational c_j, w_j. These arise as the e^{<lambda,y>} factors
// produced when exponential terms are shifted, so keeping them formal keeps
// every operator exact and equality decidable.
#ifndef EXPOLY_EXP_SCALAR_HPP
#define EXPOLY_EXP_SCALAR_HPP

#include "expoly/rational.hpp"

#include <complex>
#include <map>
#include <optional>
#include <string>

namespace expoly {

class ExpScalar {
public:
    // exponent w -> coefficient c, no zero coefficients; empty map is 0.
    using TermMap = std::map<GaussRational, GaussRational>;

    ExpScalar() = default;
    ExpScalar(GaussRational c) {  // NOLINT: constants embed implicitly
        if (!c.is_zero()) terms_[GaussRational()] = std::move(c);
    }
    ExpScalar(Rational c) : ExpScalar(GaussRational(std::move(c))) {}  // NOLINT
    ExpScalar(long c) : ExpScalar(GaussRational(c)) {}                 // NOLINT

    /// The formal scalar e^w.
    static ExpScalar exp_of(GaussRational w) {
        ExpScalar s;
        s.terms_[std::move(w)] = GaussRational(1);
        return s;
    }

    static ExpScalar term(GaussRational w, GaussRational c) {
        ExpScalar s;
        if (!c.is_zero()) s.terms_[std::move(w)] = std::move(c);
        return s;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first.is_zero() &&
               terms_.begin()->second == GaussRational(1);
    }
    bool is_single_term() const { return terms_.size() == 1; }

    /// The value as a plain Gaussian rational, when no formal e^w is involved.
    std::optional<GaussRational> as_constant() const {
        if (terms_.empty()) return GaussRational();
        if (terms_.size() == 1 && terms_.begin()->first.is_zero()) return terms_.begin()->second;
        return std::nullopt;
    }

    ExpScalar operator-() const {
        ExpScalar r;
        for (const auto& [w, c] : terms_) r.terms_[w] = -c;
        return r;
    }

    ExpScalar& operator+=(const ExpScalar& o) {
        for (const auto& [w, c] : o.terms_) {
            auto it = terms_.find(w);
            if (it == terms_.end()) {
                terms_[w] = c;
            } else {
                it->second += c;
                if (it->second.is_zero()) terms_.erase(it);
            }
        }
        return *this;
    }
    ExpScalar& operator-=(const ExpScalar& o) { return *this += -o; }

    friend ExpScalar operator+(ExpScalar a, const ExpScalar& b) { return a += b; }
    friend ExpScalar operator-(ExpScalar a, const ExpScalar& b) { return a -= b; }

    friend ExpScalar operator*(const ExpScalar& a, const ExpScalar& b) {
        ExpScalar r;
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) {
                GaussRational c = ca * cb;
                GaussRational w = wa + wb;
                auto it = r.terms_.find(w);
                if (it == r.terms_.end()) {
                    if (!c.is_zero()) r.terms_[std::move(w)] = std::move(c);
                } else {
                    it->second += c;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        return r;
    }
    ExpScalar& operator*=(const ExpScalar& o) { return *this = *this * o; }

    friend bool operator==(const ExpScalar& a, const ExpScalar& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const ExpScalar& a, const ExpScalar& b) { return !(a == b); }
    friend bool operator<(const ExpScalar& a, const ExpScalar& b) {
        return std::lexicographical_compare(
            a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
            [](const auto& x, const auto& y) {
                if (x.first != y.first) return x.first < y.first;
                return y.second != x.second && (x.second.re != y.second.re
                                                    ? x.second.re < y.second.re
                                                    : x.second.im < y.second.im);
            });
    }

    /// Single-term scalars c*e^w are the units; inverse is (1/c)*e^{-w}.
    std::optional<ExpScalar> unit_inverse() const {
        if (terms_.size() != 1) return std::nullopt;
        const auto& [w, c] = *terms_.begin();
        return term(-w, inverse(c));
    }

    std::complex<double> evaluate() const {
        std::complex<double> v(0.0, 0.0);
        for (const auto& [w, c] : terms_) v += c.to_complex() * std::exp(w.to_complex());
        return v;
    }

private:
    TermMap terms_;
};

/// Attempts exact division a / b in the scalar ring; nullopt when b does not
/// divide a. Exponents live in an ordered group, so the quotient's support is
/// confined to [low(a)-low(b), lead(a)-lead(b)]; the loop walks leading terms
/// downward and bails out past the lower bound (or a step cap, for safety).
inline std::optional<ExpScalar> try_divide(const ExpScalar& a, const ExpScalar& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return ExpScalar();
    if (auto binv = b.unit_inverse()) return a * *binv;
    const GaussRational lead_b = b.terms().rbegin()->first;
    const GaussRational low_bound = a.terms().begin()->first - b.terms().begin()->first;
    const GaussRational lead_cb = b.terms().rbegin()->second;
    ExpScalar r = a, q;
    std::size_t cap = 8 * (a.terms().size() + 1) * (b.terms().size() + 1) + 64;
    while (!r.is_zero()) {
        if (cap-- == 0) return std::nullopt;
        const auto& [wr, cr] = *r.terms().rbegin();
        GaussRational wt = wr - lead_b;
        if (wt < low_bound) return std::nullopt;
        ExpScalar t = ExpScalar::term(wt, cr / lead_cb);
        q += t;
        r -= t * b;
    }
    return q;
}

// ---------------------------------------------------------------------------
// Fraction field of the scalar ring. The ring is an integral domain (its
// exponent group is ordered), so quotients form a field with a decidable zero
// test; elimination over this field is how exact rank and span membership are
// computed when coefficients carry formal exponentials. Denominators stay at 1
// for plain rational inputs.

class ExpScalarFrac {
public:
    ExpScalarFrac() : den_(1) {}
    ExpScalarFrac(ExpScalar n) : num_(std::move(n)), den_(1) {}  // NOLINT
    ExpScalarFrac(long n) : num_(n), den_(1) {}                  // NOLINT
    ExpScalarFrac(ExpScalar n, ExpScalar d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw std::domain_error("ExpScalarFrac: zero denominator");
        normalize();
    }

    const ExpScalar& num() const { return num_; }
    const ExpScalar& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integral() const { return den_.is_one(); }

    ExpScalarFrac operator-() const {
        ExpScalarFrac r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend ExpScalarFrac operator+(const ExpScalarFrac& a, const ExpScalarFrac& b) {
        ExpScalarFrac r;
        if (a.den_ == b.den_) {
            r.num_ = a.num_ + b.num_;
            r.den_ = a.den_;
        } else {
            r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
            r.den_ = a.den_ * b.den_;
        }
        r.normalize();
        return r;
    }
    friend ExpScalarFrac operator-(const ExpScalarFrac& a, const ExpScalarFrac& b) {
        return a + (-b);
    }
    friend ExpScalarFrac operator*(const ExpScalarFrac& a, const ExpScalarFrac& b) {
        ExpScalarFrac r;
        r.num_ = a.num_ * b.num_;
        r.den_ = a.den_ * b.den_;
        r.normalize();
        return r;
    }
    friend ExpScalarFrac operator/(const ExpScalarFrac& a, const ExpScalarFrac& b) {
        if (b.is_zero()) throw std::domain_error("ExpScalarFrac division by zero");
        ExpScalarFrac r;
        r.num_ = a.num_ * b.den_;
        r.den_ = a.den_ * b.num_;
        r.normalize();
        return r;
    }

    friend bool operator==(const ExpScalarFrac& a, const ExpScalarFrac& b) {
        if (a.den_ == b.den_) return a.num_ == b.num_;
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const ExpScalarFrac& a, const ExpScalarFrac& b) { return !(a == b); }

    /// The value as a plain scalar when the denominator divides out.
    std::optional<ExpScalar> as_scalar() const {
        if (den_.is_one()) return num_;
        return try_divide(num_, den_);
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = ExpScalar(1);
            return;
        }
        // Scale by the inverse of the denominator's leading unit; a one-term
        // denominator reduces to 1 and re-enables the integral fast path.
        const auto& [w, c] = *den_.terms().rbegin();
        if (!w.is_zero() || c != GaussRational(1)) {
            ExpScalar u = ExpScalar::term(-w, inverse(c));
            num_ *= u;
            den_ *= u;
        }
        if (!den_.is_one() && num_.terms().size() >= den_.terms().size()) {
            if (auto q = try_divide(num_, den_)) {
                num_ = std::move(*q);
                den_ = ExpScalar(1);
            }
        }
    }

    ExpScalar num_;
    ExpScalar den_;
};

}  // namespace expoly

#endif  // EXPOLY_EXP_SCALAR_HPP
