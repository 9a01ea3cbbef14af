#include "support.hpp"

#include "expoly/io_json.hpp"
#include "expoly/reduction.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace expoly;

namespace {

EquationSpec scalar_spec(std::initializer_list<long> cs) {
    EquationSpec spec;
    spec.d = 1;
    for (long c : cs) {
        RatMatrix mc(1);
        mc.at(0, 0) = Rational(c);
        spec.pairs.push_back({RatMatrix::identity(1), mc});
    }
    return spec;
}

SubspaceW poly_space(unsigned deg) {
    std::vector<ExpPoly> basis;
    for (unsigned k = 0; k <= deg; ++k)
        basis.push_back(ExpPoly::monomial(1, MultiIndex{k}, ExpScalar(1)));
    return make_subspace(basis);
}

}  // namespace

TEST_CASE("one elimination step on the worked scalar instance") {
    // f_1 = x^2 (c_1 = 1), f_2 = x (c_2 = 2), W = polynomials of degree <= 2.
    // Eliminating the first summand with h = 1 applies Delta_{d_2 h} to the
    // survivor: d_2 = 1 - c_2/c_1 = -1, so g_2 = (x - 1) - x = -1.
    EquationSpec spec = scalar_spec({1, 2});
    SolutionTuple sol;
    ExpPoly x = ExpPoly::variable(1, 0);
    sol.f = {x * x, x};
    auto [out, step] = reduce_once(spec, sol, poly_space(2), {Rational(1)}, 0);
    REQUIRE(out.spec.summands() == 1);
    CHECK(out.spec.pairs[0].c.at(0, 0) == Rational(2));
    CHECK(out.sol.f[0] == ExpPoly::constant(1, ExpScalar(-1)));
    REQUIRE(step.d_mats.size() == 1);
    CHECK(step.d_mats[0].second.at(0, 0) == Rational(-1));
    // The reduced instance is again a solution of its own equation.
    CHECK(verify_membership(out.spec, out.sol, out.w).pass);
}

TEST_CASE("elimination requires the difference hypothesis") {
    EquationSpec spec = scalar_spec({2, 2});  // c_1 = c_2: d_2 = 0 singular
    SolutionTuple sol;
    ExpPoly x = ExpPoly::variable(1, 0);
    sol.f = {x, x};
    CHECK_THROWS_AS(reduce_once(spec, sol, poly_space(1), {Rational(1)}, 0),
                    HypothesisViolation);
}

TEST_CASE("elimination rejects non-solutions and non-normalized specs") {
    EquationSpec spec = scalar_spec({1, 2});
    SolutionTuple sol;
    ExpPoly x = ExpPoly::variable(1, 0);
    sol.f = {x * x, x};
    // W too small: the input is not a member, so there is nothing to reduce.
    CHECK_THROWS_AS(reduce_once(spec, sol, poly_space(0), {Rational(1)}, 0),
                    std::invalid_argument);
    EquationSpec skew = spec;
    skew.pairs[0].b.at(0, 0) = Rational(2);
    CHECK_THROWS_AS(reduce_once(skew, sol, poly_space(2), {Rational(1)}, 0),
                    std::invalid_argument);
}

TEST_CASE("full reduction reaches a single summand") {
    EquationSpec spec = scalar_spec({1, 2, 3});
    SolutionTuple sol;
    ExpPoly x = ExpPoly::variable(1, 0);
    sol.f = {x * x, x, x * x};
    ReductionChain chain = full_reduction(spec, sol, poly_space(2));
    REQUIRE(chain.steps.size() == 2);
    REQUIRE(chain.instances.size() == 2);
    CHECK(chain.instances.back().spec.summands() == 1);
    for (const auto& inst : chain.instances)
        CHECK(verify_membership(inst.spec, inst.sol, inst.w).pass);
}

TEST_CASE("random reduction soundness, growth bound and degree descent") {
    auto rng = testsupport::make_rng(801);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t m = 2 + static_cast<std::size_t>(testsupport::rand_int(rng, 0, 2));
        EquationSpec spec = testsupport::rand_normalized_spec(rng, 1, m);
        SolutionTuple sol;
        unsigned deg = static_cast<unsigned>(m) + 1;
        for (std::size_t i = 0; i < m; ++i)
            sol.f.push_back(testsupport::rand_polynomial_split(rng, 1, deg, 4));
        SubspaceW w = poly_space(deg);
        ReductionChain chain = full_reduction(spec, sol, w);
        REQUIRE(chain.instances.size() == m - 1);
        std::size_t dim_before = w.dimension();
        int max_deg_before = solution_max_degree(sol);
        for (const auto& inst : chain.instances) {
            CHECK(verify_membership(inst.spec, inst.sol, inst.w).pass);
            CHECK(inst.w.dimension() <= 2 * dim_before);
            int max_deg_after = solution_max_degree(inst.sol);
            CHECK(max_deg_after < max_deg_before);
            dim_before = inst.w.dimension();
            max_deg_before = max_deg_after;
        }
    }
}

TEST_CASE("folfact identity on the worked example and random data") {
    ExpPoly x = ExpPoly::variable(1, 0);
    RatMatrix c2(1);
    c2.at(0, 0) = Rational(2);
    auto verdict = folfact_check(x * x, c2, {Rational(1)}, {Rational(3)});
    CHECK(verdict.pass);
    CHECK(verdict.lhs == verdict.rhs);

    auto rng = testsupport::make_rng(802);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t d = 1 + static_cast<std::size_t>(testsupport::rand_int(rng, 0, 1));
        ExpPoly f = testsupport::rand_exppoly(rng, d, 3, 4, 6);
        RatMatrix c = testsupport::rand_invertible(rng, d, 2);
        CHECK(folfact_check(f, c, testsupport::rand_rat_vector(rng, d),
                            testsupport::rand_rat_vector(rng, d))
                  .pass);
    }
}

TEST_CASE("levi-civita closure dimensions") {
    ExpPoly x = ExpPoly::variable(1, 0);
    CHECK(levi_civita_closure(x * x).dimension == 3);
    ExpPoly e = ExpPoly::exponential(1, Freq{GaussRational(2)});
    CHECK(levi_civita_closure(x + e).dimension == 3);  // {x, 1, e^{2x}}
}
