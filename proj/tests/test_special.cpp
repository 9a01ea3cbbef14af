#include "support.hpp"

#include "expoly/special.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace expoly;

namespace {

ExpPoly var(std::size_t d, std::size_t j) { return ExpPoly::variable(d, j); }

RatVector rv(std::initializer_list<long> xs) {
    RatVector v;
    for (long x : xs) v.push_back(Rational(x));
    return v;
}

}  // namespace

TEST_CASE("frechet: cubic fails order three with residual six") {
    ExpPoly x = var(1, 0);
    auto v = frechet_check(x * x * x, 3, {rv({1})});
    CHECK_FALSE(v.pass);
    CHECK_FALSE(v.symbolic);
    CHECK_FALSE(v.differences_vanish);
    REQUIRE(v.residual.has_value());
    CHECK(*v.residual == ExpPoly::constant(1, ExpScalar(6)));
    REQUIRE(v.failing_y.has_value());
    CHECK((*v.failing_y)[0] == Rational(1));
}

TEST_CASE("frechet: polynomials of degree below the order pass") {
    ExpPoly x = var(1, 0);
    auto v = frechet_check(x * x * x, 4, {rv({1}), rv({-2})});
    CHECK(v.pass);
    CHECK(v.symbolic);
    CHECK(v.differences_vanish);
    // Exponentials never satisfy a finite-order difference equation.
    ExpPoly e = ExpPoly::exponential(1, Freq{GaussRational(1)});
    CHECK_FALSE(frechet_check(e, 5, {rv({1})}).pass);
}

TEST_CASE("frechet: random polynomials, exact order threshold") {
    auto rng = testsupport::make_rng(901);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t d = 1 + static_cast<std::size_t>(testsupport::rand_int(rng, 0, 1));
        unsigned k = static_cast<unsigned>(testsupport::rand_int(rng, 1, 4));
        ExpPoly p = testsupport::rand_polynomial_split(rng, d, k);
        RatVector y = testsupport::rand_positive_vector(rng, d);
        CHECK(frechet_check(p, k + 1, {y}).pass);
        CHECK_FALSE(difference(p, y, k).is_zero());  // degree is exactly k
    }
}

TEST_CASE("kakutani-nagumo: harmonic quadratic passes the four-point mean") {
    ExpPoly f = var(2, 0) * var(2, 0) - var(2, 1) * var(2, 1);
    auto v = kakutani_nagumo_check(f, 4, {{rv({1, 2}), rv({1, 1})}, {rv({0, 0}), rv({3, -2})}});
    CHECK(v.pass);
    CHECK(v.exact_mode);
    CHECK(v.max_abs_residual == 0.0);
    for (const auto& s : v.samples) {
        REQUIRE(s.exact_residual.has_value());
        CHECK(s.exact_residual->is_zero());
    }
}

TEST_CASE("kakutani-nagumo: x^2 + y^2 fails with residual |h|^2 exactly") {
    ExpPoly f = var(2, 0) * var(2, 0) + var(2, 1) * var(2, 1);
    std::vector<std::pair<RatVector, RatVector>> samples = {{rv({1, 2}), rv({1, 1})},
                                                            {rv({0, 0}), rv({3, -2})}};
    auto v = kakutani_nagumo_check(f, 4, samples);
    CHECK_FALSE(v.pass);
    for (const auto& s : v.samples) {
        REQUIRE(s.exact_residual.has_value());
        Rational h2 = s.h[0] * s.h[0] + s.h[1] * s.h[1];
        CHECK(*s.exact_residual == ExpScalar(h2));
    }
}

TEST_CASE("kakutani-nagumo: two-point mean is the even-part condition") {
    // (f(z+h) + f(z-h))/2 - f(z) = f(h) for an even quadratic along the
    // diagonal only; x^2 - y^2 passes at N=2 exactly on diagonal steps.
    ExpPoly f = var(2, 0) * var(2, 0) - var(2, 1) * var(2, 1);
    CHECK(kakutani_nagumo_check(f, 2, {{rv({1, 0}), rv({2, 2})}}).pass);
    CHECK_FALSE(kakutani_nagumo_check(f, 2, {{rv({1, 0}), rv({1, 0})}}).pass);
}

TEST_CASE("kakutani-nagumo: float mode at N = 3") {
    ExpPoly f = var(2, 0) * var(2, 0) - var(2, 1) * var(2, 1);
    auto v = kakutani_nagumo_check(f, 3, {{rv({1, 2}), rv({1, 1})}});
    CHECK_FALSE(v.exact_mode);
    CHECK(v.pass);
    ExpPoly g = var(2, 0) * var(2, 0) + var(2, 1) * var(2, 1);
    CHECK_FALSE(kakutani_nagumo_check(g, 3, {{rv({1, 2}), rv({1, 1})}}).pass);
}

TEST_CASE("kakutani-nagumo input validation") {
    ExpPoly f = var(2, 0);
    CHECK_THROWS_AS(kakutani_nagumo_check(f, 1, {}), std::invalid_argument);
    CHECK_THROWS_AS(kakutani_nagumo_check(var(1, 0), 4, {}), DimensionMismatch);
}

TEST_CASE("wilson: symmetric quadratic instance splits") {
    // f(x+y) + f(x-y) = 2f(x) + 2f(y) for f = x^2.
    ExpPoly x = var(1, 0);
    auto v = wilson_check({Rational(1), Rational(1)}, {Rational(1), Rational(-1)},
                          {x * x, x * x});
    CHECK(v.pass);
    CHECK(v.degree_bound == 2);
    CHECK(v.f_x == scale(x * x, ExpScalar(2)));
    CHECK(v.g_y == scale(x * x, ExpScalar(2)));
    for (bool ok : v.fi_degree_ok) CHECK(ok);
}

TEST_CASE("wilson: cubic leaves a mixed atom witness") {
    ExpPoly x = var(1, 0);
    auto v = wilson_check({Rational(1), Rational(1)}, {Rational(1), Rational(-1)},
                          {x * x * x, x * x * x});
    CHECK_FALSE(v.pass);
    REQUIRE(v.mixed_atom.has_value());
    // (x+y)^3 + (x-y)^3 = 2x^3 + 6xy^2: the witness is the x*y^2 atom.
    CHECK(v.mixed_atom->x.alpha == MultiIndex{1});
    CHECK(v.mixed_atom->y.alpha == MultiIndex{2});
}

TEST_CASE("wilson rejects non-polynomial entries via the degree report") {
    ExpPoly e = ExpPoly::exponential(1, Freq{GaussRational(1)});
    auto v = wilson_check({Rational(1)}, {Rational(1)}, {e});
    CHECK_FALSE(v.fi_degree_ok[0]);
    CHECK_FALSE(v.pass);
}

TEST_CASE("skitovich-darmois: quadratic instance balances") {
    EquationSpec spec;
    spec.d = 1;
    RatMatrix one = RatMatrix::identity(1), minus(1);
    minus.at(0, 0) = Rational(-1);
    spec.pairs.push_back({one, one});
    spec.pairs.push_back({one, minus});
    ExpPoly x = var(1, 0);
    SolutionTuple sol;
    sol.f = {x * x, x * x};
    auto v = skitovich_check(spec, sol);
    CHECK(v.pass);
    CHECK(v.difference.is_zero());
}

TEST_CASE("skitovich-darmois: constant bookkeeping matters") {
    // f = 1 gives LHS = 2 but RHS = 4; the additive split fails by the
    // constant 2, and the difference names it.
    EquationSpec spec;
    spec.d = 1;
    RatMatrix one = RatMatrix::identity(1), minus(1);
    minus.at(0, 0) = Rational(-1);
    spec.pairs.push_back({one, one});
    spec.pairs.push_back({one, minus});
    SolutionTuple sol;
    sol.f = {ExpPoly::constant(1, ExpScalar(1)), ExpPoly::constant(1, ExpScalar(1))};
    auto v = skitovich_check(spec, sol);
    CHECK_FALSE(v.pass);
    CHECK(v.difference.joint() == ExpPoly::constant(2, ExpScalar(-2)));
    // Cubics break the split with a genuine cross term.
    ExpPoly x = var(1, 0);
    sol.f = {x * x * x, x * x * x};
    CHECK_FALSE(skitovich_check(spec, sol).pass);
}

TEST_CASE("ghurye-olkin: quartic instance splits with polynomial conclusion") {
    GhuryeOlkinSpec go;
    go.d = 1;
    RatMatrix c1 = RatMatrix::identity(1), c2(1);
    c2.at(0, 0) = Rational(2);
    go.c = {c1, c2};
    go.r = 4;
    go.s = 4;
    ExpPoly x = var(1, 0);
    SolutionTuple sol;
    sol.f = {x * x * x * x, x * x};
    auto v = ghurye_olkin_check(go, sol);
    CHECK(v.pass);
    for (bool ok : v.fi_polynomial) CHECK(ok);
    // The split reconstructs the kernel.
    EquationSpec spec;
    spec.d = 1;
    for (const auto& ci : go.c) spec.pairs.push_back({RatMatrix::identity(1), ci});
    CHECK(v.a_part + v.b_part == bivariate_expand(spec, sol));
}

TEST_CASE("ghurye-olkin: degree caps produce a witness when violated") {
    // A is arbitrary in y and B arbitrary in x, so an atom only fails when it
    // exceeds both caps at once. (x+y)^2 still splits at r=1, s=0 because x^2
    // is constant in y; the x^2 y atom of (x+y)^3 is the first real offender.
    GhuryeOlkinSpec go;
    go.d = 1;
    go.c = {RatMatrix::identity(1)};
    go.r = 1;
    go.s = 0;
    ExpPoly x = var(1, 0);
    CHECK(ghurye_olkin_check(go, {{x * x}}).pass);
    auto v = ghurye_olkin_check(go, {{x * x * x}});
    CHECK_FALSE(v.pass);
    REQUIRE(v.bad_atom.has_value());
    CHECK(v.bad_atom->x.alpha == MultiIndex{2});
    CHECK(v.bad_atom->y.alpha == MultiIndex{1});
}

TEST_CASE("ghurye-olkin: exponential solutions are flagged non-polynomial") {
    GhuryeOlkinSpec go;
    go.d = 1;
    go.c = {RatMatrix::identity(1)};
    go.r = 4;
    go.s = 4;
    SolutionTuple sol;
    sol.f = {ExpPoly::exponential(1, Freq{GaussRational(1)})};
    auto v = ghurye_olkin_check(go, sol);
    CHECK_FALSE(v.pass);
    CHECK_FALSE(v.fi_polynomial[0]);
}
