// The elimination step: substituting y -> y - c_1^{-1} h and shifting by h
// turns an m-summand instance into an (m-1)-summand instance in the
// differenced unknowns g_i = Delta_{d_i h} f_i with d_i = I - c_i c_1^{-1},
// against the enlarged subspace W* = tau_h(W) + W. Chaining reaches m = 1,
// a plain Levi-Civita instance.
#ifndef EXPOLY_REDUCTION_HPP
#define EXPOLY_REDUCTION_HPP

#include "expoly/bivariate.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace expoly {

/// A required matrix (some d_i = I - c_i c_pivot^{-1}) is singular.
struct HypothesisViolation : std::runtime_error {
    HypothesisViolation(std::size_t pivot_index, std::size_t offending_index)
        : std::runtime_error("d_i = I - c_i c_pivot^{-1} is singular for pair (pivot=" +
                             std::to_string(pivot_index + 1) + ", i=" +
                             std::to_string(offending_index + 1) + ")"),
          pivot(pivot_index),
          offending(offending_index) {}
    std::size_t pivot;
    std::size_t offending;
};

struct ReductionStep {
    RatVector h;
    std::size_t eliminated_index = 0;
    // d_i = I_d - c_i c_pivot^{-1} for each surviving index (original numbering)
    std::vector<std::pair<std::size_t, RatMatrix>> d_mats;
    SubspaceW w_out;
};

struct ReducedInstance {
    EquationSpec spec;
    SolutionTuple sol;
    SubspaceW w;
};

/// One elimination step. Requires b_i = I_d, an invertible pivot c, and an
/// input instance that actually satisfies the membership relation; the
/// output instance is verified internally and is guaranteed to satisfy it.
inline std::pair<ReducedInstance, ReductionStep> reduce_once(const EquationSpec& spec,
                                                             const SolutionTuple& sol,
                                                             const SubspaceW& w,
                                                             const RatVector& h,
                                                             std::size_t pivot = 0) {
    spec.check_valid();
    if (!is_normalized(spec))
        throw std::invalid_argument("reduce_once requires a normalized spec (b_i = I_d)");
    if (sol.f.size() != spec.summands())
        throw DimensionMismatch("solution tuple length != number of pairs");
    if (h.size() != spec.d) throw DimensionMismatch("shift h length != d");
    if (pivot >= spec.summands()) throw std::invalid_argument("pivot index out of range");
    if (spec.summands() < 2)
        throw std::invalid_argument("reduce_once needs at least two summands");
    if (!verify_membership(spec, sol, w).pass)
        throw std::invalid_argument("input instance fails the membership relation");

    const std::size_t d = spec.d;
    const RatMatrix c1inv = mat_inverse(spec.pairs[pivot].c);  // SingularMatrix if not
    const RatMatrix id = RatMatrix::identity(d);

    ReductionStep step;
    step.h = h;
    step.eliminated_index = pivot;

    ReducedInstance out;
    out.spec.d = d;
    for (std::size_t i = 0; i < spec.summands(); ++i) {
        if (i == pivot) continue;
        RatMatrix di = id - spec.pairs[i].c * c1inv;
        if (!is_invertible(di)) throw HypothesisViolation(pivot, i);
        out.spec.pairs.push_back({id, spec.pairs[i].c});
        out.sol.f.push_back(difference(sol.f[i], di.apply(h), 1));
        step.d_mats.emplace_back(i, std::move(di));
    }

    std::vector<ExpPoly> gens;
    gens.reserve(2 * w.basis.size());
    for (const auto& b : w.basis) gens.push_back(translate(b, h));
    for (const auto& b : w.basis) gens.push_back(b);
    out.w = make_subspace(gens);
    step.w_out = out.w;

    if (!verify_membership(out.spec, out.sol, out.w).pass)
        throw std::logic_error("internal error: reduced instance fails membership");
    return {std::move(out), std::move(step)};
}

struct ReductionChain {
    std::vector<ReducedInstance> instances;  // one per step, last has m = 1
    std::vector<ReductionStep> steps;
};

/// Default shift schedule: the j-th step uses the standard basis vector
/// e_{(j mod d)} — deterministic and generic for the tested instance classes.
inline std::vector<RatVector> default_h_schedule(std::size_t d, std::size_t steps) {
    std::vector<RatVector> hs;
    for (std::size_t j = 0; j < steps; ++j) {
        RatVector h(d, Rational(0));
        h[j % d] = Rational(1);
        hs.push_back(std::move(h));
    }
    return hs;
}

/// Chain reduce_once down to a single summand. Accepts non-normalized specs
/// by applying the b_i = I_d substitution first. The schedule must supply
/// m - 1 shifts; an empty chain is returned when m = 1 already.
inline ReductionChain full_reduction(const EquationSpec& spec, const SolutionTuple& sol,
                                     const SubspaceW& w,
                                     std::vector<RatVector> h_schedule = {}) {
    EquationSpec cur_spec = spec;
    SolutionTuple cur_sol = sol;
    if (!is_normalized(cur_spec)) {
        auto norm = normalize_b_to_identity(cur_spec, cur_sol);
        cur_spec = std::move(norm.first);
        cur_sol = std::move(norm.second);
    }
    const std::size_t m = cur_spec.summands();
    if (h_schedule.empty() && m >= 2) h_schedule = default_h_schedule(cur_spec.d, m - 1);
    if (h_schedule.size() != m - 1)
        throw std::invalid_argument("h_schedule must supply exactly m - 1 shifts");

    ReductionChain chain;
    SubspaceW cur_w = w;
    for (std::size_t j = 0; j + 1 < m; ++j) {
        auto [inst, step] = reduce_once(cur_spec, cur_sol, cur_w, h_schedule[j], 0);
        cur_spec = inst.spec;
        cur_sol = inst.sol;
        cur_w = inst.w;
        chain.instances.push_back(std::move(inst));
        chain.steps.push_back(std::move(step));
    }
    return chain;
}

// ---------------------------------------------------------------------------
// The two-variable difference identity and the m = 1 base case

struct FolfactVerdict {
    bool pass = false;
    BivariatePoly lhs, rhs;
};

/// Delta_{(h,k)}(f(x + c y)) = (Delta_{h + c k} f)(x + c y), checked by
/// expanding both sides to canonical bivariate form.
inline FolfactVerdict folfact_check(const ExpPoly& f, const RatMatrix& c, const RatVector& h,
                                    const RatVector& k) {
    const std::size_t d = f.dim();
    if (c.dim() != d || h.size() != d || k.size() != d)
        throw DimensionMismatch("folfact_check: dimensions disagree");
    EquationSpec spec;
    spec.d = d;
    spec.pairs.push_back({RatMatrix::identity(d), c});

    BivariatePoly G = bivariate_expand(spec, {{f}});
    RatVector hk(2 * d);
    for (std::size_t t = 0; t < d; ++t) {
        hk[t] = h[t];
        hk[d + t] = k[t];
    }
    BivariatePoly lhs(d, translate(G.joint(), hk) - G.joint());

    RatVector wshift = c.apply(k);
    for (std::size_t t = 0; t < d; ++t) wshift[t] += h[t];
    BivariatePoly rhs = bivariate_expand(spec, {{difference(f, wshift, 1)}});

    FolfactVerdict verdict;
    verdict.pass = (lhs == rhs);
    verdict.lhs = std::move(lhs);
    verdict.rhs = std::move(rhs);
    return verdict;
}

struct ClosureResult {
    std::size_t dimension = 0;
    std::vector<ExpPoly> basis;
};

/// The minimal W for which f solves the plain Levi-Civita equation: the span
/// of all translates of f, with its dimension.
inline ClosureResult levi_civita_closure(const ExpPoly& f) {
    ClosureResult r;
    r.basis = translates_closure(f);
    r.dimension = r.basis.size();
    return r;
}

}  // namespace expoly

#endif  // EXPOLY_REDUCTION_HPP
