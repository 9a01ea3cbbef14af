// Worked example: eliminate summands from a three-term instance one shift at
// a time and watch the solution degrees fall until a single summand is left.
#include "expoly/dsl.hpp"
#include "expoly/io_json.hpp"
#include "expoly/reduction.hpp"

#include <cstdio>

using namespace expoly;

int main() {
    // f_1(x + y) + f_2(x + 2y) + f_3(x + 3y) with cubic solutions.
    EquationSpec spec;
    spec.d = 1;
    for (long c = 1; c <= 3; ++c) {
        RatMatrix mc(1);
        mc.at(0, 0) = Rational(c);
        spec.pairs.push_back({RatMatrix::identity(1), mc});
    }

    SolutionTuple sol;
    sol.f = {parse_exppoly("x1^3"), parse_exppoly("x1^3 + x1"), parse_exppoly("x1^2")};

    std::vector<ExpPoly> basis;
    for (unsigned k = 0; k <= 3; ++k)
        basis.push_back(ExpPoly::monomial(1, MultiIndex{k}, ExpScalar(1)));
    SubspaceW w = make_subspace(basis);

    ReductionChain chain = full_reduction(spec, sol, w);
    std::printf("step  pivot  summands  dim(W)  max_deg\n");
    std::printf("   0      -  %8zu  %6zu  %7d\n", spec.summands(), w.dimension(),
                solution_max_degree(sol));
    for (std::size_t k = 0; k < chain.instances.size(); ++k) {
        const auto& inst = chain.instances[k];
        std::printf("%4zu  %5zu  %8zu  %6zu  %7d\n", k + 1,
                    chain.steps[k].eliminated_index + 1, inst.spec.summands(),
                    inst.w.dimension(), solution_max_degree(inst.sol));
    }

    const auto& last = chain.instances.back();
    std::printf("final solution: %s\n", to_dsl(last.sol.f[0]).c_str());
    return last.spec.summands() == 1 ? 0 : 1;
}
