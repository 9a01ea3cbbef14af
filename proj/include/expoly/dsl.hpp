// The expression DSL: a total recursive-descent parser for
//   expr   := ('+'|'-')? term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := literal | 'i' | var ('^' int)? | 'exp' '(' expr ')'
//           | 'E' '(' expr ')' | '(' expr ')'
// with rational literals "p" / "p/q", variables x1..xd (1-indexed), `i` the
// imaginary unit, `exp(...)` an exponential with affine argument and `E(w)`
// the formal scalar e^w. The printer emits a canonical form; print-then-parse
// is the identity on values and parse-then-print fixes canonical strings.
#ifndef EXPOLY_DSL_HPP
#define EXPOLY_DSL_HPP

#include "expoly/exp_poly.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <vector>

namespace expoly {

struct DimensionExceeded : ParseError {
    DimensionExceeded(const std::string& msg, std::size_t ln, std::size_t col)
        : ParseError(msg, ln, col) {}
};

namespace detail {

struct DslParser {
    const std::string& text;
    std::size_t pos = 0;
    std::size_t line = 1, col = 1;
    std::size_t d;

    DslParser(const std::string& t, std::size_t dim) : text(t), d(dim) {}

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }

    void advance() {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            advance();
    }

    bool eof() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            advance();
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    Int parse_integer() {
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail("expected an integer");
        std::string digits;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            digits += text[pos];
            advance();
        }
        return Int(digits);
    }

    // keyword lookahead that does not consume
    bool at_word(const std::string& w) {
        skip_ws();
        if (text.compare(pos, w.size(), w) != 0) return false;
        const std::size_t end = pos + w.size();
        if (end < text.size() &&
            (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_'))
            return false;
        return true;
    }

    void eat_word(const std::string& w) {
        for (std::size_t k = 0; k < w.size(); ++k) advance();
    }

    ExpPoly parse_expr() {
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        ExpPoly acc = parse_term();
        if (neg) acc = -acc;
        while (true) {
            if (accept('+'))
                acc += parse_term();
            else if (accept('-'))
                acc -= parse_term();
            else
                break;
        }
        return acc;
    }

    ExpPoly parse_term() {
        ExpPoly acc = parse_factor();
        while (accept('*')) acc = acc * parse_factor();
        return acc;
    }

    ExpPoly parse_factor() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        const char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int num = parse_integer();
            Rational value(num);
            if (accept('/')) {
                Int den = parse_integer();
                if (den == 0) fail("division by zero in literal");
                value = Rational(num, den);
            }
            return ExpPoly::constant(d, ExpScalar(GaussRational(value)));
        }
        if (at_word("i")) {
            eat_word("i");
            return ExpPoly::constant(d, ExpScalar(GaussRational(Rational(0), Rational(1))));
        }
        if (at_word("exp")) {
            eat_word("exp");
            expect('(');
            const std::size_t at_line = line, at_col = col;
            ExpPoly arg = parse_expr();
            expect(')');
            return make_exponential(arg, at_line, at_col);
        }
        if (c == 'E') {
            eat_word("E");
            expect('(');
            const std::size_t at_line = line, at_col = col;
            ExpPoly arg = parse_expr();
            expect(')');
            if (arg.is_zero()) return ExpPoly::constant(d, ExpScalar(1));
            auto constant = constant_of(arg);
            if (!constant)
                throw ParseError("E(..) takes a Gaussian-rational constant", at_line, at_col);
            return ExpPoly::constant(d, ExpScalar::exp_of(*constant));
        }
        if (c == 'x') {
            const std::size_t at_line = line, at_col = col;
            advance();
            Int idx = parse_integer();
            if (idx < 1) fail("variable indices start at x1");
            if (idx > Int(d))
                throw DimensionExceeded(
                    "variable x" + idx.str() + " exceeds dimension " + std::to_string(d),
                    at_line, at_col);
            ExpPoly var =
                ExpPoly::variable(d, static_cast<std::size_t>(idx.convert_to<long>()) - 1);
            if (accept('^')) {
                Int e = parse_integer();
                if (e > 64) fail("exponent larger than 64");
                ExpPoly acc = ExpPoly::constant(d, ExpScalar(1));
                for (Int k = 0; k < e; ++k) acc = acc * var;
                return acc;
            }
            return var;
        }
        if (c == '(') {
            advance();
            ExpPoly inner = parse_expr();
            expect(')');
            return inner;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    // The constant value of a constant polynomial, if that is what arg is.
    std::optional<GaussRational> constant_of(const ExpPoly& arg) {
        if (arg.is_zero()) return GaussRational();
        if (arg.terms().size() != 1) return std::nullopt;
        const auto& [lambda, part] = *arg.terms().begin();
        if (!is_zero(lambda) || part.size() != 1) return std::nullopt;
        const auto& [mono, coeff] = *part.begin();
        if (total_order(mono) != 0) return std::nullopt;
        return coeff.as_constant();
    }

    /// exp(a0 + a1 x1 + ... + ad xd) = E(a0) * e^{<a, x>}; the argument must
    /// be an affine polynomial with plain Gaussian-rational coefficients.
    ExpPoly make_exponential(const ExpPoly& arg, std::size_t at_line, std::size_t at_col) {
        if (arg.is_zero()) return ExpPoly::constant(d, ExpScalar(1));
        if (arg.terms().size() != 1 || !is_zero(arg.terms().begin()->first) ||
            arg.total_degree() > 1)
            throw ParseError("exp(..) takes an affine argument", at_line, at_col);
        GaussRational a0;
        Freq lambda(d);
        for (const auto& [mono, coeff] : arg.terms().begin()->second) {
            auto value = coeff.as_constant();
            if (!value)
                throw ParseError("exp(..) coefficients must be Gaussian rationals", at_line,
                                 at_col);
            if (total_order(mono) == 0) {
                a0 = *value;
            } else {
                for (std::size_t j = 0; j < d; ++j)
                    if (mono[j] == 1) lambda[j] = *value;
            }
        }
        ExpPoly r = ExpPoly::exponential(d, lambda);
        return scale(r, ExpScalar::exp_of(a0));
    }
};

/// Highest variable index mentioned in the text (0 when none).
inline std::size_t scan_max_variable(const std::string& text) {
    std::size_t best = 0;
    for (std::size_t k = 0; k < text.size(); ++k) {
        if (text[k] != 'x') continue;
        if (k > 0 && (std::isalnum(static_cast<unsigned char>(text[k - 1])) || text[k - 1] == '_'))
            continue;
        std::size_t j = k + 1, idx = 0;
        bool any = false;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])) &&
               j - k <= 9) {
            idx = idx * 10 + static_cast<std::size_t>(text[j] - '0');
            any = true;
            ++j;
        }
        if (any) best = std::max(best, idx);
    }
    return best;
}

}  // namespace detail

/// Parse a DSL expression. The dimension is the highest variable index unless
/// pinned; pinning makes larger indices a DimensionExceeded error.
inline ExpPoly parse_exppoly(const std::string& text,
                             std::optional<std::size_t> dim = std::nullopt) {
    std::size_t d = dim ? *dim : std::max<std::size_t>(detail::scan_max_variable(text), 1);
    detail::DslParser parser(text, d);
    ExpPoly result = parser.parse_expr();
    if (!parser.eof()) parser.fail("trailing input after expression");
    return result;
}

// ---------------------------------------------------------------------------
// Canonical printer

namespace detail {

/// "1/2", "i", "-i", "3*i", "1 + i", "1 - 2*i", ... — a standalone expr.
inline std::string gauss_inline(const GaussRational& g) {
    using expoly::to_string;
    if (g.im.is_zero()) return to_string(g.re);
    std::string imag = g.im == 1 ? "i" : g.im == -1 ? "-i" : to_string(g.im) + "*i";
    if (g.re.is_zero()) return imag;
    std::string out = to_string(g.re);
    if (g.im > 0)
        out += " + " + (g.im == 1 ? std::string("i") : to_string(g.im) + "*i");
    else
        out += " - " + (g.im == -1 ? std::string("i") : to_string(Rational(-g.im)) + "*i");
    return out;
}

/// Split a coefficient into a leading sign and a factor string; an empty
/// factor means "coefficient 1" and may be omitted before other factors.
struct CoeffPrint {
    bool negative = false;
    std::string factor;  // empty when the magnitude is exactly 1
};

inline CoeffPrint coeff_print(const GaussRational& c) {
    using expoly::to_string;
    CoeffPrint out;
    if (c.im.is_zero()) {
        out.negative = c.re < 0;
        Rational mag = out.negative ? Rational(-c.re) : c.re;
        if (mag != 1) out.factor = to_string(mag);
        return out;
    }
    if (c.re.is_zero()) {
        out.negative = c.im < 0;
        Rational mag = out.negative ? Rational(-c.im) : c.im;
        out.factor = mag == 1 ? "i" : to_string(mag) + "*i";
        return out;
    }
    out.factor = "(" + gauss_inline(c) + ")";
    return out;
}

inline std::string monomial_string(const MultiIndex& alpha) {
    std::string out;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        if (alpha[j] == 0) continue;
        if (!out.empty()) out += "*";
        out += "x" + std::to_string(j + 1);
        if (alpha[j] > 1) out += "^" + std::to_string(alpha[j]);
    }
    return out;
}

inline std::string linform_string(const Freq& lambda) {
    std::string out;
    for (std::size_t j = 0; j < lambda.size(); ++j) {
        if (lambda[j].is_zero()) continue;
        CoeffPrint cp = coeff_print(lambda[j]);
        std::string piece = cp.factor.empty() ? "" : cp.factor + "*";
        piece += "x" + std::to_string(j + 1);
        if (out.empty())
            out = (cp.negative ? "-" : "") + piece;
        else
            out += (cp.negative ? " - " : " + ") + piece;
    }
    return out;
}

}  // namespace detail

/// Canonical DSL form: terms in map order (frequencies ascending, monomials
/// graded-lex, scalar exponents ascending), each scalar term fully expanded
/// as coefficient * E(w) * monomial * exp(linear form).
inline std::string to_dsl(const ExpPoly& f) {
    std::string out;
    for (const auto& [lambda, part] : f.terms()) {
        const std::string expfactor =
            is_zero(lambda) ? "" : "exp(" + detail::linform_string(lambda) + ")";
        for (const auto& [alpha, coeff] : part) {
            const std::string mono = detail::monomial_string(alpha);
            for (const auto& [w, c] : coeff.terms()) {
                detail::CoeffPrint cp = detail::coeff_print(c);
                std::vector<std::string> factors;
                if (!cp.factor.empty()) factors.push_back(cp.factor);
                if (!w.is_zero()) factors.push_back("E(" + detail::gauss_inline(w) + ")");
                if (!mono.empty()) factors.push_back(mono);
                if (!expfactor.empty()) factors.push_back(expfactor);
                std::string body;
                if (factors.empty()) {
                    body = "1";
                } else {
                    for (std::size_t k = 0; k < factors.size(); ++k)
                        body += (k ? "*" : "") + factors[k];
                }
                if (out.empty())
                    out = (cp.negative ? "-" : "") + body;
                else
                    out += (cp.negative ? " - " : " + ") + body;
            }
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace expoly

#endif  // EXPOLY_DSL_HPP
