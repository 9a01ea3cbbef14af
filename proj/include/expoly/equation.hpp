// Data model for instances of  sum_i f_i(b_i x + c_i y) = sum_k u_k(y) v_k(x):
// the coefficient-matrix spec, solution tuples, the subspace W spanned by the
// v_k, hypothesis validation for the four theorem profiles, and the b_i = I_d
// normalization.
#ifndef EXPOLY_EQUATION_HPP
#define EXPOLY_EQUATION_HPP

#include "expoly/exp_poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace expoly {

/// Which theorem's hypothesis list a spec is validated against.
enum class Profile { Thm21, Thm22, Thm32, Cor43 };

inline std::string to_string(Profile p) {
    switch (p) {
        case Profile::Thm21: return "thm2.1";
        case Profile::Thm22: return "thm2.2";
        case Profile::Thm32: return "thm3.2";
        case Profile::Cor43: return "cor4.3";
    }
    return "?";
}

inline std::optional<Profile> profile_from_string(const std::string& s) {
    if (s == "thm2.1") return Profile::Thm21;
    if (s == "thm2.2") return Profile::Thm22;
    if (s == "thm3.2") return Profile::Thm32;
    if (s == "cor4.3") return Profile::Cor43;
    return std::nullopt;
}

inline const std::vector<Profile>& all_profiles() {
    static const std::vector<Profile> ps{Profile::Thm21, Profile::Thm22, Profile::Thm32,
                                         Profile::Cor43};
    return ps;
}

struct EquationPair {
    RatMatrix b, c;
};

struct EquationSpec {
    std::size_t d = 0;
    std::vector<EquationPair> pairs;
    std::optional<std::size_t> rhs_rank_hint;  // advisory only

    std::size_t summands() const { return pairs.size(); }

    void check_valid() const {
        if (pairs.empty()) throw DimensionMismatch("spec needs at least one (b, c) pair");
        for (const auto& p : pairs)
            if (p.b.dim() != d || p.c.dim() != d)
                throw DimensionMismatch("spec matrices must be d x d");
    }
};

struct SolutionTuple {
    std::vector<ExpPoly> f;
};

/// The finite-dimensional space W = span{v_k}. The basis is kept linearly
/// independent; make_subspace enforces that by exact span reduction.
struct SubspaceW {
    std::vector<ExpPoly> basis;
    std::size_t dimension() const { return basis.size(); }
};

inline SubspaceW make_subspace(const std::vector<ExpPoly>& gens) {
    std::vector<const ExpPoly*> ptrs;
    for (const auto& g : gens)
        if (!g.is_zero()) ptrs.push_back(&g);
    auto atoms = collect_atoms(ptrs);
    SpanReducer<ExpScalarFrac> span;
    SubspaceW w;
    for (const ExpPoly* g : ptrs)
        if (span.insert(coord_vector(*g, atoms))) w.basis.push_back(*g);
    return w;
}

/// Exact membership f in span(W.basis); returns the coefficients when inside.
inline std::optional<std::vector<ExpScalarFrac>> in_subspace(const ExpPoly& f,
                                                             const SubspaceW& w) {
    std::vector<const ExpPoly*> ptrs{&f};
    for (const auto& g : w.basis) ptrs.push_back(&g);
    auto atoms = collect_atoms(ptrs);
    std::vector<std::vector<ExpScalarFrac>> basis;
    basis.reserve(w.basis.size());
    for (const auto& g : w.basis) basis.push_back(coord_vector(g, atoms));
    return solve_in_span(coord_vector(f, atoms), basis);
}

// ---------------------------------------------------------------------------
// Hypothesis validation

struct ConditionCheck {
    std::string condition;  // e.g. "c_1 - c_2 invertible"
    bool holds = false;
    std::string detail;     // filled when the matrix could not even be formed
};

struct HypothesisReport {
    Profile requested = Profile::Thm21;
    bool pass = false;                 // verdict for the requested profile
    std::map<Profile, bool> overall;   // verdict for every profile
    std::vector<ConditionCheck> b_invertible;
    std::vector<ConditionCheck> c_invertible;
    std::vector<ConditionCheck> bc_diff_invertible;  // b_i^{-1}c_i - b_j^{-1}c_j
    std::vector<ConditionCheck> c_diff_invertible;   // c_i - c_j
};

/// Exact invertibility verdicts for every matrix each theorem profile needs.
/// Failure is a verdict, never an exception.
inline HypothesisReport validate_conditions(const EquationSpec& spec, Profile profile) {
    spec.check_valid();
    const std::size_t m = spec.summands();
    HypothesisReport rep;
    rep.requested = profile;

    std::vector<bool> b_ok(m), c_ok(m);
    std::vector<std::optional<RatMatrix>> b_inv_c(m);
    for (std::size_t i = 0; i < m; ++i) {
        b_ok[i] = is_invertible(spec.pairs[i].b);
        c_ok[i] = is_invertible(spec.pairs[i].c);
        rep.b_invertible.push_back(
            {"b_" + std::to_string(i + 1) + " invertible", b_ok[i], ""});
        rep.c_invertible.push_back(
            {"c_" + std::to_string(i + 1) + " invertible", c_ok[i], ""});
        if (b_ok[i]) b_inv_c[i] = mat_inverse(spec.pairs[i].b) * spec.pairs[i].c;
    }

    bool all_b = true, all_c = true, all_bc_diff = true, all_c_diff = true;
    for (std::size_t i = 0; i < m; ++i) {
        all_b = all_b && b_ok[i];
        all_c = all_c && c_ok[i];
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const std::string ij = std::to_string(i + 1) + "," + std::to_string(j + 1);
            ConditionCheck bc{"b_i^{-1}c_i - b_j^{-1}c_j invertible (i,j=" + ij + ")",
                              false, ""};
            if (b_inv_c[i] && b_inv_c[j])
                bc.holds = is_invertible(*b_inv_c[i] - *b_inv_c[j]);
            else
                bc.detail = "not computable: some b is singular";
            all_bc_diff = all_bc_diff && bc.holds;
            rep.bc_diff_invertible.push_back(std::move(bc));

            ConditionCheck cd{"c_i - c_j invertible (i,j=" + ij + ")",
                              is_invertible(spec.pairs[i].c - spec.pairs[j].c), ""};
            all_c_diff = all_c_diff && cd.holds;
            rep.c_diff_invertible.push_back(std::move(cd));
        }

    // Thm 2.1, its general-class restatement (3.2) and the distributional
    // corollary (4.3) all need b_i, c_i and the b^{-1}c differences; Thm 2.2
    // works with shifts only and needs just c_i and the c differences.
    const bool full = all_b && all_c && all_bc_diff;
    rep.overall[Profile::Thm21] = full;
    rep.overall[Profile::Thm32] = full;
    rep.overall[Profile::Cor43] = full;
    rep.overall[Profile::Thm22] = all_c && all_c_diff;
    rep.pass = rep.overall.at(profile);
    return rep;
}

// ---------------------------------------------------------------------------
// Normalization to b_i = I_d

/// The substitution f~_i(x) = f_i(b_i x) turns the instance into one with
/// b_i = I_d and c~_i = b_i^{-1} c_i. Throws SingularMatrix if some b_i is
/// not invertible. Idempotent.
inline std::pair<EquationSpec, SolutionTuple> normalize_b_to_identity(
    const EquationSpec& spec, const SolutionTuple& sol) {
    spec.check_valid();
    if (sol.f.size() != spec.summands())
        throw DimensionMismatch("solution tuple length != number of pairs");
    EquationSpec out;
    out.d = spec.d;
    out.rhs_rank_hint = spec.rhs_rank_hint;
    SolutionTuple fout;
    for (std::size_t i = 0; i < spec.summands(); ++i) {
        RatMatrix binv = mat_inverse(spec.pairs[i].b);
        out.pairs.push_back({RatMatrix::identity(spec.d), binv * spec.pairs[i].c});
        fout.f.push_back(dilate(sol.f[i], spec.pairs[i].b));
    }
    return {std::move(out), std::move(fout)};
}

inline bool is_normalized(const EquationSpec& spec) {
    for (const auto& p : spec.pairs)
        if (!(p.b == RatMatrix::identity(spec.d))) return false;
    return true;
}

}  // namespace expoly

#endif  // EXPOLY_EQUATION_HPP
