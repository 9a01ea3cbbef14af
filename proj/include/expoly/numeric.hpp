// Floating-point bridge: sample functions on grids, fit exponential
// polynomials with a known frequency set by least squares, and measure the
// separability rank of a sampled bivariate kernel through singular values.
#ifndef EXPOLY_NUMERIC_HPP
#define EXPOLY_NUMERIC_HPP

#include "expoly/equation.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace expoly {

struct NonFiniteValue : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IllConditioned : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kFitRoundTolerance = 1e-9;   // distance to a low rational
inline constexpr double kConditionLimit = 1e12;      // on the normal system
inline constexpr double kResidualTolerance = 1e-8;   // default rank-test tolerance
inline constexpr std::int64_t kFitRoundMaxDen = 1024;

struct SampleGrid {
    std::size_t d = 0;
    std::vector<std::vector<double>> points;
    std::vector<std::complex<double>> values;
};

using Callable = std::function<std::complex<double>(const std::vector<double>&)>;

inline SampleGrid sample(const Callable& f, std::size_t d,
                         const std::vector<std::vector<double>>& points) {
    SampleGrid grid;
    grid.d = d;
    grid.points = points;
    grid.values.reserve(points.size());
    for (const auto& p : points) {
        if (p.size() != d) throw DimensionMismatch("sample: point length != d");
        std::complex<double> v = f(p);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NonFiniteValue("sample: non-finite value at a grid point");
        grid.values.push_back(v);
    }
    return grid;
}

inline SampleGrid sample(const ExpPoly& f, const std::vector<std::vector<double>>& points) {
    return sample([&f](const std::vector<double>& p) { return evaluate(f, p); }, f.dim(),
                  points);
}

/// Tensor grid over [lo, hi]^d with per_axis points per axis.
inline std::vector<std::vector<double>> make_grid(std::size_t d, std::size_t per_axis = 20,
                                                  double lo = -1.0, double hi = 1.0) {
    std::vector<double> axis(per_axis);
    for (std::size_t k = 0; k < per_axis; ++k)
        axis[k] = per_axis == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / (per_axis - 1);
    std::vector<std::vector<double>> points{{}};
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<std::vector<double>> next;
        next.reserve(points.size() * per_axis);
        for (const auto& p : points)
            for (double t : axis) {
                auto q = p;
                q.push_back(t);
                next.push_back(std::move(q));
            }
        points = std::move(next);
    }
    return points;
}

// ---------------------------------------------------------------------------
// Least-squares fit over the basis {x^alpha e^{<lambda,x>}}

struct FitModel {
    std::vector<GaussVector> frequencies;
    std::vector<std::uint32_t> max_degree;  // one bound per frequency

    void check(std::size_t d) const {
        if (frequencies.size() != max_degree.size())
            throw DimensionMismatch("fit model: one degree bound per frequency required");
        for (std::size_t s = 0; s < frequencies.size(); ++s) {
            if (frequencies[s].size() != d)
                throw DimensionMismatch("fit model: frequency length != d");
            for (std::size_t t = s + 1; t < frequencies.size(); ++t)
                if (frequencies[s] == frequencies[t])
                    throw std::invalid_argument("fit model: duplicate frequencies");
        }
    }
};

struct FitBasisAtom {
    std::size_t freq_index = 0;
    MultiIndex alpha;
};

inline std::vector<FitBasisAtom> fit_basis(const FitModel& model, std::size_t d) {
    std::vector<FitBasisAtom> basis;
    for (std::size_t s = 0; s < model.frequencies.size(); ++s) {
        // All monomials with total degree <= bound, in graded-lex order.
        std::vector<MultiIndex> monos{MultiIndex(d, 0)};
        std::set<MultiIndex, GradedLexLess> seen{MultiIndex(d, 0)};
        for (std::size_t head = 0; head < monos.size(); ++head) {
            MultiIndex m = monos[head];
            if (total_order(m) >= model.max_degree[s]) continue;
            for (std::size_t j = 0; j < d; ++j) {
                MultiIndex m2 = m;
                m2[j] += 1;
                if (seen.insert(m2).second) monos.push_back(std::move(m2));
            }
        }
        std::sort(monos.begin(), monos.end(), GradedLexLess{});
        for (auto& m : monos) basis.push_back({s, std::move(m)});
    }
    return basis;
}

struct RawCoefficient {
    std::size_t freq_index = 0;
    MultiIndex alpha;
    std::complex<double> value;
    bool rounded = false;  // true when the value was admitted into the ExpPoly
};

struct FitResult {
    ExpPoly fitted;
    double rms_residual = 0.0;
    double condition = 0.0;                  // of the design matrix
    std::vector<RawCoefficient> raw_coefficients;  // full side channel
};

namespace detail {

/// Best rational with denominator <= max_den via continued fractions.
inline Rational rational_approx(double v, std::int64_t max_den) {
    if (!std::isfinite(v)) throw NonFiniteValue("rational_approx: non-finite input");
    const bool neg = v < 0;
    double x = neg ? -v : v;
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
        const double fl = std::floor(x);
        if (fl > 9e17) break;
        const std::int64_t a = static_cast<std::int64_t>(fl);
        if (q1 != 0 && a > (max_den - q0) / q1) break;
        const std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double frac = x - fl;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    Rational r(p1, q1 == 0 ? 1 : q1);
    return neg ? Rational(-r) : r;
}

inline std::optional<GaussRational> round_coefficient(std::complex<double> v) {
    Rational re = rational_approx(v.real(), kFitRoundMaxDen);
    Rational im = rational_approx(v.imag(), kFitRoundMaxDen);
    if (std::abs(to_double(re) - v.real()) > kFitRoundTolerance) return std::nullopt;
    if (std::abs(to_double(im) - v.imag()) > kFitRoundTolerance) return std::nullopt;
    return GaussRational{re, im};
}

}  // namespace detail

/// Least-squares coefficients over the model basis. Coefficients within
/// 1e-9 of a denominator<=1024 Gaussian rational enter the fitted ExpPoly;
/// every raw value is reported in the side channel either way.
inline FitResult fit(const SampleGrid& grid, const FitModel& model) {
    model.check(grid.d);
    const auto basis = fit_basis(model, grid.d);
    const std::size_t n_pts = grid.points.size(), n_coef = basis.size();
    if (n_pts < n_coef)
        throw std::invalid_argument("fit needs at least as many points as coefficients");

    Eigen::MatrixXcd a(n_pts, n_coef);
    Eigen::VectorXcd b(n_pts);
    for (std::size_t i = 0; i < n_pts; ++i) {
        const auto& p = grid.points[i];
        b(static_cast<Eigen::Index>(i)) = grid.values[i];
        for (std::size_t j = 0; j < n_coef; ++j) {
            const auto& at = basis[j];
            std::complex<double> dot(0.0);
            for (std::size_t t = 0; t < grid.d; ++t)
                dot += model.frequencies[at.freq_index][t].to_complex() * p[t];
            double mono = 1.0;
            for (std::size_t t = 0; t < grid.d; ++t)
                for (std::uint32_t e = 0; e < at.alpha[t]; ++e) mono *= p[t];
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                mono * std::exp(dot);
        }
    }

    FitResult result;
    result.fitted = ExpPoly(grid.d);
    if (n_coef == 0) {
        result.rms_residual = n_pts ? std::sqrt(b.squaredNorm() / static_cast<double>(n_pts)) : 0.0;
        return result;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    const double smax = sigma(0), smin = sigma(sigma.size() - 1);
    result.condition = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
    if (result.condition * result.condition > kConditionLimit)
        throw IllConditioned("fit: normal-system condition estimate exceeds 1e12");
    Eigen::VectorXcd coef = svd.solve(b);
    result.rms_residual = std::sqrt((a * coef - b).squaredNorm() / static_cast<double>(n_pts));

    for (std::size_t j = 0; j < n_coef; ++j) {
        RawCoefficient raw;
        raw.freq_index = basis[j].freq_index;
        raw.alpha = basis[j].alpha;
        raw.value = coef(static_cast<Eigen::Index>(j));
        if (auto g = detail::round_coefficient(raw.value)) {
            raw.rounded = true;
            result.fitted.add_term(model.frequencies[raw.freq_index], raw.alpha, ExpScalar(*g));
        }
        result.raw_coefficients.push_back(std::move(raw));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Separability rank test through singular values of the sampled kernel

struct ResidualReport {
    std::size_t rank = 0;           // the tested n
    double spectral_tail = 0.0;     // sqrt(sum of squared singular values past n)
    double max_abs = 0.0;           // entrywise residual of the rank-n truncation
    double mean_abs = 0.0;
    double tolerance = kResidualTolerance;
    bool pass = false;
};

inline ResidualReport equation_residual(const EquationSpec& spec,
                                        const std::vector<Callable>& fs,
                                        const std::vector<std::vector<double>>& x_grid,
                                        const std::vector<std::vector<double>>& y_grid,
                                        std::size_t n, double tol = kResidualTolerance) {
    spec.check_valid();
    if (fs.size() != spec.summands())
        throw DimensionMismatch("one callable per summand required");
    const std::size_t d = spec.d;
    std::vector<std::vector<std::vector<double>>> bmat(spec.summands()), cmat(spec.summands());
    for (std::size_t i = 0; i < spec.summands(); ++i) {
        bmat[i].assign(d, std::vector<double>(d));
        cmat[i].assign(d, std::vector<double>(d));
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t cidx = 0; cidx < d; ++cidx) {
                bmat[i][r][cidx] = to_double(spec.pairs[i].b.at(r, cidx));
                cmat[i][r][cidx] = to_double(spec.pairs[i].c.at(r, cidx));
            }
    }
    Eigen::MatrixXcd f(x_grid.size(), y_grid.size());
    std::vector<double> arg(d);
    for (std::size_t p = 0; p < x_grid.size(); ++p)
        for (std::size_t q = 0; q < y_grid.size(); ++q) {
            std::complex<double> total(0.0);
            for (std::size_t i = 0; i < spec.summands(); ++i) {
                for (std::size_t r = 0; r < d; ++r) {
                    double s = 0.0;
                    for (std::size_t t = 0; t < d; ++t)
                        s += bmat[i][r][t] * x_grid[p][t] + cmat[i][r][t] * y_grid[q][t];
                    arg[r] = s;
                }
                total += fs[i](arg);
            }
            if (!std::isfinite(total.real()) || !std::isfinite(total.imag()))
                throw NonFiniteValue("equation_residual: non-finite kernel value");
            f(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = total;
        }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(f, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    ResidualReport report;
    report.rank = n;
    report.tolerance = tol;
    double tail2 = 0.0;
    for (Eigen::Index k = static_cast<Eigen::Index>(n); k < sigma.size(); ++k)
        tail2 += sigma(k) * sigma(k);
    report.spectral_tail = std::sqrt(tail2);

    Eigen::MatrixXcd truncated = Eigen::MatrixXcd::Zero(f.rows(), f.cols());
    const Eigen::Index keep = std::min<Eigen::Index>(static_cast<Eigen::Index>(n), sigma.size());
    if (keep > 0)
        truncated = svd.matrixU().leftCols(keep) * sigma.head(keep).asDiagonal() *
                    svd.matrixV().leftCols(keep).adjoint();
    Eigen::MatrixXcd residual = f - truncated;
    report.max_abs = residual.cwiseAbs().maxCoeff();
    report.mean_abs = residual.cwiseAbs().mean();
    report.pass = report.spectral_tail < tol;
    return report;
}

inline ResidualReport equation_residual(const EquationSpec& spec, const SolutionTuple& sol,
                                        const std::vector<std::vector<double>>& x_grid,
                                        const std::vector<std::vector<double>>& y_grid,
                                        std::size_t n, double tol = kResidualTolerance) {
    std::vector<Callable> fs;
    for (const auto& fi : sol.f)
        fs.push_back([&fi](const std::vector<double>& p) { return evaluate(fi, p); });
    return equation_residual(spec, fs, x_grid, y_grid, n, tol);
}

// ---------------------------------------------------------------------------
// CSV ingestion: columns x_1 .. x_d, re, im

inline SampleGrid parse_csv_samples(std::istream& in) {
    SampleGrid grid;
    std::string line;
    bool first = true;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            // A non-numeric first row is a header.
            try {
                std::stod(cells.at(0));
            } catch (const std::exception&) {
                first = false;
                width = cells.size();
                continue;
            }
            width = cells.size();
            first = false;
        }
        if (cells.size() != width || width < 3)
            throw ParseError("csv: expected columns x_1..x_d, re, im", 0, 0);
        std::vector<double> nums;
        for (const auto& c : cells) {
            try {
                nums.push_back(std::stod(c));
            } catch (const std::exception&) {
                throw ParseError("csv: non-numeric cell '" + c + "'", 0, 0);
            }
        }
        grid.points.emplace_back(nums.begin(), nums.end() - 2);
        grid.values.emplace_back(nums[width - 2], nums[width - 1]);
    }
    grid.d = grid.points.empty() ? 0 : grid.points.front().size();
    for (const auto& p : grid.points)
        if (p.size() != grid.d) throw ParseError("csv: inconsistent column count", 0, 0);
    return grid;
}

}  // namespace expoly

#endif  // EXPOLY_NUMERIC_HPP
