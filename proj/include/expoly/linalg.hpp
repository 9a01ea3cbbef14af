// Exact linear algebra: rational matrices, fraction-free rank, span solving.
#ifndef EXPOLY_LINALG_HPP
#define EXPOLY_LINALG_HPP

#include "expoly/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace expoly {

struct SingularMatrix : std::runtime_error {
    SingularMatrix() : std::runtime_error("singular matrix") {}
    explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Square rational matrices (the b_i, c_i coefficient matrices).

class RatMatrix {
public:
    RatMatrix() = default;
    explicit RatMatrix(std::size_t d) : d_(d), e_(d * d) {}
    RatMatrix(std::size_t d, std::vector<Rational> entries) : d_(d), e_(std::move(entries)) {
        if (e_.size() != d_ * d_) throw DimensionMismatch("RatMatrix entry count != d*d");
    }

    static RatMatrix identity(std::size_t d) {
        RatMatrix m(d);
        for (std::size_t i = 0; i < d; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t dim() const { return d_; }
    Rational& at(std::size_t i, std::size_t j) { return e_[i * d_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return e_[i * d_ + j]; }

    RatMatrix transpose() const {
        RatMatrix t(d_);
        for (std::size_t i = 0; i < d_; ++i)
            for (std::size_t j = 0; j < d_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
        if (a.d_ != b.d_) throw DimensionMismatch("matrix add: dimension mismatch");
        RatMatrix r(a.d_);
        for (std::size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] + b.e_[k];
        return r;
    }
    friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
        if (a.d_ != b.d_) throw DimensionMismatch("matrix sub: dimension mismatch");
        RatMatrix r(a.d_);
        for (std::size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] - b.e_[k];
        return r;
    }
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
        if (a.d_ != b.d_) throw DimensionMismatch("matrix mul: dimension mismatch");
        RatMatrix r(a.d_);
        for (std::size_t i = 0; i < a.d_; ++i)
            for (std::size_t k = 0; k < a.d_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < a.d_; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return r;
    }
    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.d_ == b.d_ && a.e_ == b.e_;
    }
    friend bool operator!=(const RatMatrix& a, const RatMatrix& b) { return !(a == b); }

    RatVector apply(const RatVector& v) const {
        if (v.size() != d_) throw DimensionMismatch("matrix apply: dimension mismatch");
        RatVector r(d_);
        for (std::size_t i = 0; i < d_; ++i)
            for (std::size_t j = 0; j < d_; ++j) r[i] += at(i, j) * v[j];
        return r;
    }

private:
    std::size_t d_ = 0;
    std::vector<Rational> e_;
};

inline Rational determinant(const RatMatrix& m) {
    const std::size_t d = m.dim();
    RatMatrix a = m;
    Rational det(1);
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        while (piv < d && a.at(piv, col).is_zero()) ++piv;
        if (piv == d) return Rational(0);
        if (piv != col) {
            for (std::size_t j = col; j < d; ++j) std::swap(a.at(piv, j), a.at(col, j));
            det = -det;
        }
        det *= a.at(col, col);
        for (std::size_t r = col + 1; r < d; ++r) {
            if (a.at(r, col).is_zero()) continue;
            Rational factor = a.at(r, col) / a.at(col, col);
            for (std::size_t j = col; j < d; ++j) a.at(r, j) -= factor * a.at(col, j);
        }
    }
    return det;
}

inline bool is_invertible(const RatMatrix& m) { return !determinant(m).is_zero(); }

/// Exact inverse by Gauss-Jordan elimination. Throws SingularMatrix.
inline RatMatrix mat_inverse(const RatMatrix& m) {
    const std::size_t d = m.dim();
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(d);
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        while (piv < d && a.at(piv, col).is_zero()) ++piv;
        if (piv == d) throw SingularMatrix();
        if (piv != col) {
            for (std::size_t j = 0; j < d; ++j) {
                std::swap(a.at(piv, j), a.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        }
        Rational p = a.at(col, col);
        for (std::size_t j = 0; j < d; ++j) {
            a.at(col, j) /= p;
            inv.at(col, j) /= p;
        }
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col || a.at(r, col).is_zero()) continue;
            Rational f = a.at(r, col);
            for (std::size_t j = 0; j < d; ++j) {
                a.at(r, j) -= f * a.at(col, j);
                inv.at(r, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

// ---------------------------------------------------------------------------
// Rectangular matrices over an arbitrary exact scalar type.

template <class F>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), e_(rows * cols) {}

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    F& at(std::size_t i, std::size_t j) { return e_[i * c_ + j]; }
    const F& at(std::size_t i, std::size_t j) const { return e_[i * c_ + j]; }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<F> e_;
};

namespace detail {

inline Int row_denominator_lcm(Matrix<GaussRational>& a, std::size_t i) {
    Int l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        l = lcm(l, rat_den(a.at(i, j).re));
        l = lcm(l, rat_den(a.at(i, j).im));
    }
    return l;
}

}  // namespace detail

/// Exact rank of a rectangular Gaussian-rational matrix.
///
/// Rows are first scaled integral, then reduced by fraction-free (Bareiss)
/// elimination so intermediate entries stay Gaussian integers of bounded size.
inline std::size_t mat_rank(Matrix<GaussRational> a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    for (std::size_t i = 0; i < rows; ++i) {
        Int l = detail::row_denominator_lcm(a, i);
        if (l != 1) {
            GaussRational s{Rational(l)};
            for (std::size_t j = 0; j < cols; ++j) a.at(i, j) *= s;
        }
    }
    GaussRational prev{Rational(1)};
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a.at(piv, col).is_zero()) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(piv, j), a.at(rank, j));
        const GaussRational p = a.at(rank, col);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t j = col + 1; j < cols; ++j)
                a.at(r, j) = (a.at(r, j) * p - a.at(r, col) * a.at(rank, j)) / prev;
            a.at(r, col) = GaussRational();
        }
        prev = p;
        ++rank;
    }
    return rank;
}

/// Plain field-arithmetic rank, for scalar types without a useful integral form.
template <class F>
std::size_t field_rank(Matrix<F> a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a.at(piv, col).is_zero()) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(piv, j), a.at(rank, j));
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (a.at(r, col).is_zero()) continue;
            F f = a.at(r, col) / a.at(rank, col);
            for (std::size_t j = col; j < cols; ++j) a.at(r, j) = a.at(r, j) - f * a.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

/// Exact coefficients with sum_j coeff[j] * basis[j] = target, or nullopt.
template <class F>
std::optional<std::vector<F>> solve_in_span(const std::vector<F>& target,
                                            const std::vector<std::vector<F>>& basis) {
    const std::size_t n = target.size();
    for (const auto& b : basis)
        if (b.size() != n) throw DimensionMismatch("solve_in_span: vector length mismatch");
    const std::size_t k = basis.size();
    // Augmented system [basis columns | target], solved by row reduction.
    Matrix<F> a(n, k + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) a.at(i, j) = basis[j][i];
        a.at(i, k) = target[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < k && rank < n; ++col) {
        std::size_t piv = rank;
        while (piv < n && a.at(piv, col).is_zero()) ++piv;
        if (piv == n) continue;
        if (piv != rank)
            for (std::size_t j = 0; j <= k; ++j) std::swap(a.at(piv, j), a.at(rank, j));
        F p = a.at(rank, col);
        for (std::size_t j = col; j <= k; ++j) a.at(rank, j) = a.at(rank, j) / p;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == rank || a.at(r, col).is_zero()) continue;
            F f = a.at(r, col);
            for (std::size_t j = col; j <= k; ++j) a.at(r, j) = a.at(r, j) - f * a.at(rank, j);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t r = rank; r < n; ++r)
        if (!a.at(r, k).is_zero()) return std::nullopt;  // inconsistent: not in span
    std::vector<F> coeff(k);
    for (std::size_t r = 0; r < rank; ++r) coeff[pivot_col[r]] = a.at(r, k);
    return coeff;
}

// ---------------------------------------------------------------------------
// Incremental row-space tracker: dedup, membership and residual extraction.

template <class F>
class SpanReducer {
public:
    /// Reduces v against the rows kept so far; the remainder has zeros in
    /// every pivot position already seen.
    std::vector<F> reduce(std::vector<F> v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const F& lead = v[pivots_[r]];
            if (lead.is_zero()) continue;
            F f = lead;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] - f * rows_[r][j];
        }
        return v;
    }

    bool contains(const std::vector<F>& v) const {
        auto rem = reduce(v);
        for (const auto& x : rem)
            if (!x.is_zero()) return false;
        return true;
    }

    /// Adds v to the span. Returns true when v was independent of the span.
    bool insert(std::vector<F> v) {
        v = reduce(std::move(v));
        std::size_t p = 0;
        while (p < v.size() && v[p].is_zero()) ++p;
        if (p == v.size()) return false;
        F lead = v[p];
        for (auto& x : v) x = x / lead;
        // Back-substitute to keep stored rows fully reduced.
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            F f = rows_[r][p];
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < v.size(); ++j)
                rows_[r][j] = rows_[r][j] - f * v[j];
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

    std::size_t dimension() const { return rows_.size(); }

private:
    std::vector<std::vector<F>> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace expoly

#endif  // EXPOLY_LINALG_HPP
