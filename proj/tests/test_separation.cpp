#include "support.hpp"

#include "expoly/bivariate.hpp"

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

// Planted separated form with independent factors: v_k = x^k, u_k random
// nonzero, so the rank is exactly the number of pairs.
SeparatedForm planted_form(std::mt19937_64& rng, std::size_t n) {
    SeparatedForm form;
    form.n = n;
    ExpPoly x = ExpPoly::variable(1, 0);
    for (std::size_t k = 0; k < n; ++k) {
        ExpPoly v = ExpPoly::monomial(1, MultiIndex{static_cast<std::uint32_t>(k)}, ExpScalar(1));
        ExpPoly u(1);
        u.add_term(Freq{GaussRational(static_cast<long>(k))}, MultiIndex{0},
                   ExpScalar(testsupport::rand_nonzero_gauss(rng, 4)));
        form.pairs.emplace_back(u, v);
    }
    return form;
}

}  // namespace

TEST_CASE("bivariate expansion splits frequencies across the two blocks") {
    // f(x + 2y) for f = e^x: the joint form is e^{x1} * e^{2 x2}.
    EquationSpec spec = scalar_spec({2});
    SolutionTuple sol;
    sol.f.push_back(ExpPoly::exponential(1, Freq{GaussRational(1)}));
    BivariatePoly F = bivariate_expand(spec, sol);
    ExpPoly want(2);
    want.add_term(Freq{GaussRational(1), GaussRational(2)}, MultiIndex{0, 0}, ExpScalar(1));
    CHECK(F.joint() == want);
}

TEST_CASE("embed and product build u(y) v(x) kernels") {
    ExpPoly x = ExpPoly::variable(1, 0);
    BivariatePoly prod = bivariate_product(x, x * x);  // u(y) = y, v(x) = x^2
    ExpPoly want(2);
    want.add_term(Freq(2), MultiIndex{2, 1}, ExpScalar(1));
    CHECK(prod.joint() == want);
}

TEST_CASE("worked scalar instance separates at rank three") {
    // f_1 = x^2 at c_1 = 1 and f_2 = x at c_2 = 2: the kernel
    // (x+y)^2 + (x+2y) needs exactly three product terms.
    EquationSpec spec = scalar_spec({1, 2});
    SolutionTuple sol;
    ExpPoly x = ExpPoly::variable(1, 0);
    sol.f = {x * x, x};
    BivariatePoly F = bivariate_expand(spec, sol);
    SeparatedForm form = separate_minimal(F);
    CHECK(form.n == 3);
    CHECK(form.pairs.size() == 3);
    CHECK(reconstruct(form, 1) == F);
    CHECK(separation_rank(F) == 3);
}

TEST_CASE("separation round trip on planted ranks") {
    auto rng = testsupport::make_rng(701);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 1 + static_cast<std::size_t>(testsupport::rand_int(rng, 0, 3));
        SeparatedForm planted = planted_form(rng, n);
        BivariatePoly F = reconstruct(planted, 1);
        SeparatedForm got = separate_minimal(F);
        CHECK(got.n == n);
        CHECK(reconstruct(got, 1) == F);
        CHECK(separation_rank(F) == n);
    }
}

TEST_CASE("separating the zero kernel gives rank zero") {
    SeparatedForm form = separate_minimal(BivariatePoly(1));
    CHECK(form.n == 0);
    CHECK(form.pairs.empty());
}

TEST_CASE("membership verdict accepts W spanning the x-factors") {
    EquationSpec spec = scalar_spec({1, 2});
    SolutionTuple sol;
    ExpPoly x = ExpPoly::variable(1, 0);
    sol.f = {x * x, x};
    ExpPoly one = ExpPoly::constant(1, ExpScalar(1));
    CHECK(verify_membership(spec, sol, make_subspace({one, x, x * x})).pass);
    auto fail = verify_membership(spec, sol, make_subspace({one, x}));
    CHECK_FALSE(fail.pass);
    REQUIRE(fail.residual.has_value());
    // The witness is a nonzero function outside span(W).
    CHECK_FALSE(in_subspace(*fail.residual, make_subspace({one, x})).has_value());
}

TEST_CASE("membership groups by y-atom: exponential solution") {
    // f(x + y) = e^{x} e^{y} lies in span{e^x} for every y.
    EquationSpec spec = scalar_spec({1});
    SolutionTuple sol;
    ExpPoly e = ExpPoly::exponential(1, Freq{GaussRational(1)});
    sol.f = {e};
    CHECK(verify_membership(spec, sol, make_subspace({e})).pass);
    ExpPoly x = ExpPoly::variable(1, 0);
    CHECK_FALSE(verify_membership(spec, sol, make_subspace({x})).pass);
}

TEST_CASE("separated factors of the worked instance stay in the right blocks") {
    EquationSpec spec = scalar_spec({1, 2});
    SolutionTuple sol;
    ExpPoly x = ExpPoly::variable(1, 0);
    sol.f = {x * x, x};
    SeparatedForm form = separate_minimal(bivariate_expand(spec, sol));
    // Each u_k, v_k is univariate in its own block by construction.
    for (const auto& [u, v] : form.pairs) {
        CHECK(u.dim() == 1);
        CHECK(v.dim() == 1);
        CHECK_FALSE(u.is_zero());
        CHECK_FALSE(v.is_zero());
    }
    // W spanned by the minimal v_k accepts the kernel.
    std::vector<ExpPoly> vs;
    for (const auto& [u, v] : form.pairs) vs.push_back(v);
    CHECK(verify_membership(spec, sol, make_subspace(vs)).pass);
}
