// Worked example: sample 2 e^x + x on a grid, fit coefficients for the model
// {e^0 up to degree 1, e^x constant}, and round them back to exact rationals.
#include "expoly/dsl.hpp"
#include "expoly/numeric.hpp"

#include <cstdio>

using namespace expoly;

int main() {
    ExpPoly target = parse_exppoly("2*exp(x1) + x1");

    FitModel model;
    model.frequencies = {GaussVector{GaussRational(0)}, GaussVector{GaussRational(1)}};
    model.max_degree = {1, 0};

    SampleGrid grid = sample(target, make_grid(1, 50));
    FitResult result = fit(grid, model);

    std::printf("fitted:       %s\n", to_dsl(result.fitted).c_str());
    std::printf("rms residual: %.3e\n", result.rms_residual);
    std::printf("condition:    %.3e\n", result.condition);
    for (const auto& raw : result.raw_coefficients)
        std::printf("  freq #%zu, alpha %u: %+.12f%+.12fi%s\n", raw.freq_index,
                    raw.alpha.empty() ? 0u : static_cast<unsigned>(raw.alpha[0]),
                    raw.value.real(), raw.value.imag(),
                    raw.rounded ? "  (rounded into the result)" : "");

    return result.fitted == target ? 0 : 1;
}
