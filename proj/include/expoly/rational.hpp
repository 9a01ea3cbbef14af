// Exact scalar substrate: arbitrary-precision rationals and Gaussian rationals.
#ifndef EXPOLY_RATIONAL_HPP
#define EXPOLY_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace expoly {

using Int = boost::multiprecision::cpp_int;

// Canonical rational: denominator > 0, gcd-reduced, zero is 0/1.
// cpp_rational maintains exactly these invariants.
using Rational = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rational& q) { return numerator(q); }
inline Int rat_den(const Rational& q) { return denominator(q); }

inline bool is_zero(const Rational& q) { return q.is_zero(); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

/// Serializes as "p/q", with "/q" omitted when q = 1.
inline std::string to_string(const Rational& q) {
    std::string s = rat_num(q).str();
    if (!is_integer(q)) {
        s += "/";
        s += rat_den(q).str();
    }
    return s;
}

struct ParseError : std::runtime_error {
    std::size_t line = 0;
    std::size_t column = 0;
    ParseError(const std::string& msg, std::size_t ln = 0, std::size_t col = 0)
        : std::runtime_error(msg), line(ln), column(col) {}
};

/// Parses "p", "-p" or "p/q" with a positive denominator q. Throws ParseError
/// on anything else; cpp_int would accept "" as 0 and the cpp_rational pair
/// constructor rejects q <= 0, so both are screened here.
inline Rational rational_from_string(const std::string& text) {
    const auto slash = text.find('/');
    const std::string num = text.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (num.empty() || den.empty()) throw ParseError("malformed rational: '" + text + "'");
    try {
        Int p(num);
        Int q(den);
        if (q <= 0) throw ParseError("rational needs a positive denominator: " + text);
        return Rational(p, q);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("malformed rational: '" + text + "'");
    }
}

// ---------------------------------------------------------------------------
// Gaussian rationals

struct GaussRational {
    Rational re;
    Rational im;

    GaussRational() = default;
    GaussRational(Rational r) : re(std::move(r)) {}  // NOLINT: implicit by design
    GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussRational(long r) : re(r) {}  // NOLINT
    GaussRational(long r, long i) : re(r), im(i) {}

    static GaussRational unit_i() { return GaussRational(Rational(0), Rational(1)); }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }

    GaussRational conj() const { return {re, -im}; }

    /// |z|^2 = re^2 + im^2, exact.
    Rational norm2() const { return re * re + im * im; }

    GaussRational operator-() const { return {-re, -im}; }

    GaussRational& operator+=(const GaussRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussRational& operator-=(const GaussRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussRational& operator*=(const GaussRational& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    GaussRational& operator/=(const GaussRational& o) {
        Rational n = o.norm2();
        if (n.is_zero()) throw std::domain_error("GaussRational division by zero");
        Rational r = (re * o.re + im * o.im) / n;
        im = (im * o.re - re * o.im) / n;
        re = std::move(r);
        return *this;
    }

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }

    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

    // Lexicographic by (re, im); the canonical ordering used for all term maps.
    friend bool operator<(const GaussRational& a, const GaussRational& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }

    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
};

inline GaussRational inverse(const GaussRational& z) {
    GaussRational one{Rational(1)};
    return one / z;
}

/// Prints "a", "b*i" or "a + b*i" (with "- " joins for negative imaginary part).
inline std::string to_string(const GaussRational& z) {
    if (z.is_zero()) return "0";
    std::string s;
    if (!z.re.is_zero()) s = to_string(z.re);
    if (!z.im.is_zero()) {
        Rational b = z.im;
        if (s.empty()) {
            if (b == 1) return "i";
            if (b == -1) return "-i";
            return to_string(b) + "*i";
        }
        if (b < 0) {
            s += " - ";
            b = -b;
        } else {
            s += " + ";
        }
        s += (b == 1) ? "i" : to_string(b) + "*i";
    }
    return s;
}

using RatVector = std::vector<Rational>;
using GaussVector = std::vector<GaussRational>;

inline bool operator<(const GaussVector&, const GaussVector&) = delete;  // use freq_less

/// Componentwise lexicographic order on Gaussian-rational vectors.
struct GaussVectorLess {
    bool operator()(const GaussVector& a, const GaussVector& b) const {
        const std::size_t n = std::min(a.size(), b.size());
        for (std::size_t k = 0; k < n; ++k) {
            if (a[k] != b[k]) return a[k] < b[k];
        }
        return a.size() < b.size();
    }
};

inline bool is_zero(const GaussVector& v) {
    for (const auto& z : v)
        if (!z.is_zero()) return false;
    return true;
}

}  // namespace expoly

#endif  // EXPOLY_RATIONAL_HPP
