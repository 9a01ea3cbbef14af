// Worked example: split the kernel of f_1(x + y) + f_2(x + 2y) for
// f_1 = x^2, f_2 = x into a minimal sum of products u_k(y) v_k(x), then
// check that the x-factors span a subspace the kernel translates into.
#include "expoly/bivariate.hpp"
#include "expoly/dsl.hpp"

#include <cstdio>

using namespace expoly;

int main() {
    EquationSpec spec;
    spec.d = 1;
    RatMatrix two(1);
    two.at(0, 0) = Rational(2);
    spec.pairs.push_back({RatMatrix::identity(1), RatMatrix::identity(1)});
    spec.pairs.push_back({RatMatrix::identity(1), two});

    SolutionTuple sol;
    sol.f = {parse_exppoly("x1^2"), parse_exppoly("x1")};

    BivariatePoly kernel = bivariate_expand(spec, sol);
    SeparatedForm form = separate_minimal(kernel);
    std::printf("separation rank: %zu\n", form.n);
    for (std::size_t k = 0; k < form.pairs.size(); ++k)
        std::printf("  u_%zu(y) = %-12s  v_%zu(x) = %s\n", k + 1,
                    to_dsl(form.pairs[k].first).c_str(), k + 1,
                    to_dsl(form.pairs[k].second).c_str());

    std::printf("reconstruction exact: %s\n",
                reconstruct(form, spec.d) == kernel ? "yes" : "no");

    std::vector<ExpPoly> vs;
    for (const auto& [u, v] : form.pairs) vs.push_back(v);
    auto verdict = verify_membership(spec, sol, make_subspace(vs));
    std::printf("membership in span{v_k}: %s\n", verdict.pass ? "yes" : "no");
    return verdict.pass ? 0 : 1;
}
