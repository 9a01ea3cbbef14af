// JSON serialization for every document and report the workbench exchanges.
// Rationals travel as "p/q" strings (the "/q" omitted for integers), Gaussian
// rationals as {"re", "im"}, matrices as row-major nested arrays, functions
// as DSL strings. Bivariate values serialize through their joint form, where
// variables x_{d+1}..x_{2d} stand for the y coordinates.
#ifndef EXPOLY_IO_JSON_HPP
#define EXPOLY_IO_JSON_HPP

#include "expoly/bivariate.hpp"
#include "expoly/dsl.hpp"
#include "expoly/numeric.hpp"
#include "expoly/reduction.hpp"
#include "expoly/special.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace expoly {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Scalars, vectors, matrices

inline Json rational_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return rational_from_string(j.get<std::string>());
    throw ParseError("expected a rational (integer or \"p/q\" string)");
}

inline Json gauss_json(const GaussRational& g) {
    return Json{{"re", to_string(g.re)}, {"im", to_string(g.im)}};
}

inline GaussRational gauss_from_json(const Json& j) {
    if (j.is_object()) {
        GaussRational g;
        if (j.contains("re")) g.re = rational_from_json(j.at("re"));
        if (j.contains("im")) g.im = rational_from_json(j.at("im"));
        return g;
    }
    return GaussRational(rational_from_json(j));
}

inline Json rat_vector_json(const RatVector& v) {
    Json arr = Json::array();
    for (const auto& r : v) arr.push_back(rational_json(r));
    return arr;
}

inline RatVector rat_vector_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("expected an array of rationals");
    RatVector v;
    for (const auto& e : j) v.push_back(rational_from_json(e));
    return v;
}

inline Json freq_json(const Freq& f) {
    Json arr = Json::array();
    for (const auto& g : f) arr.push_back(gauss_json(g));
    return arr;
}

inline Freq freq_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("expected an array of Gaussian rationals");
    Freq f;
    for (const auto& e : j) f.push_back(gauss_from_json(e));
    return f;
}

inline Json matrix_json(const RatMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(rational_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline RatMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("expected a nonempty matrix");
    const std::size_t d = j.size();
    RatMatrix m(d);
    for (std::size_t r = 0; r < d; ++r) {
        if (!j[r].is_array() || j[r].size() != d)
            throw ParseError("matrix rows must all have length d");
        for (std::size_t c = 0; c < d; ++c) m.at(r, c) = rational_from_json(j[r][c]);
    }
    return m;
}

// ---------------------------------------------------------------------------
// Specs, solutions, subspaces

struct SpecDocument {
    EquationSpec spec;
    std::optional<Profile> profile;
};

inline Json spec_json(const EquationSpec& spec, std::optional<Profile> profile = {}) {
    Json pairs = Json::array();
    for (const auto& p : spec.pairs)
        pairs.push_back(Json{{"b", matrix_json(p.b)}, {"c", matrix_json(p.c)}});
    Json j{{"d", spec.d}, {"pairs", std::move(pairs)}};
    if (profile) j["profile"] = to_string(*profile);
    if (spec.rhs_rank_hint) j["rhs_rank_hint"] = *spec.rhs_rank_hint;
    return j;
}

inline SpecDocument spec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("d") || !j.contains("pairs"))
        throw ParseError("spec document needs \"d\" and \"pairs\"");
    SpecDocument doc;
    doc.spec.d = j.at("d").get<std::size_t>();
    for (const auto& p : j.at("pairs")) {
        if (!p.is_object() || !p.contains("b") || !p.contains("c"))
            throw ParseError("each pair needs \"b\" and \"c\"");
        doc.spec.pairs.push_back({matrix_from_json(p.at("b")), matrix_from_json(p.at("c"))});
    }
    if (j.contains("rhs_rank_hint"))
        doc.spec.rhs_rank_hint = j.at("rhs_rank_hint").get<std::size_t>();
    if (j.contains("profile")) {
        doc.profile = profile_from_string(j.at("profile").get<std::string>());
        if (!doc.profile)
            throw ParseError("unknown profile \"" + j.at("profile").get<std::string>() + "\"");
    }
    doc.spec.check_valid();
    return doc;
}

inline Json solution_json(const SolutionTuple& sol) {
    Json fs = Json::array();
    for (const auto& f : sol.f) fs.push_back(to_dsl(f));
    return Json{{"f", std::move(fs)}};
}

inline SolutionTuple solution_from_json(const Json& j, std::size_t d) {
    if (!j.is_object() || !j.contains("f") || !j.at("f").is_array())
        throw ParseError("solution document needs an \"f\" array of DSL strings");
    SolutionTuple sol;
    for (const auto& e : j.at("f")) sol.f.push_back(parse_exppoly(e.get<std::string>(), d));
    return sol;
}

inline Json subspace_json(const SubspaceW& w) {
    Json basis = Json::array();
    for (const auto& b : w.basis) basis.push_back(to_dsl(b));
    return Json{{"basis", std::move(basis)}};
}

inline SubspaceW subspace_from_json(const Json& j, std::size_t d) {
    if (!j.is_object() || !j.contains("basis") || !j.at("basis").is_array())
        throw ParseError("subspace document needs a \"basis\" array of DSL strings");
    std::vector<ExpPoly> gens;
    for (const auto& e : j.at("basis")) gens.push_back(parse_exppoly(e.get<std::string>(), d));
    return make_subspace(gens);
}

// ---------------------------------------------------------------------------
// Reports

inline Json condition_json(const std::vector<ConditionCheck>& checks) {
    Json arr = Json::array();
    for (const auto& c : checks) {
        Json e{{"condition", c.condition}, {"holds", c.holds}};
        if (!c.detail.empty()) e["detail"] = c.detail;
        arr.push_back(std::move(e));
    }
    return arr;
}

inline Json hypothesis_report_json(const HypothesisReport& rep) {
    Json overall = Json::object();
    for (const auto& [p, ok] : rep.overall) overall[to_string(p)] = ok;
    return Json{{"profile", to_string(rep.requested)},
                {"pass", rep.pass},
                {"overall", std::move(overall)},
                {"conditions",
                 Json{{"b_invertible", condition_json(rep.b_invertible)},
                      {"c_invertible", condition_json(rep.c_invertible)},
                      {"bc_diff_invertible", condition_json(rep.bc_diff_invertible)},
                      {"c_diff_invertible", condition_json(rep.c_diff_invertible)}}}};
}

inline Json separated_form_json(const SeparatedForm& form) {
    Json pairs = Json::array();
    for (const auto& [u, v] : form.pairs)
        pairs.push_back(Json{{"u", to_dsl(u)}, {"v", to_dsl(v)}});
    return Json{{"n", form.n}, {"pairs", std::move(pairs)}};
}

inline Json atom_json(const PolyAtom& a) {
    Json alpha = Json::array();
    for (auto e : a.alpha) alpha.push_back(e);
    return Json{{"alpha", std::move(alpha)}, {"lambda", freq_json(a.lambda)}};
}

inline Json biatom_json(const BiAtom& a) {
    return Json{{"x", atom_json(a.x)}, {"y", atom_json(a.y)}};
}

inline Json membership_json(const MembershipVerdict& v) {
    Json j{{"pass", v.pass}};
    if (!v.pass && v.offending_y_atom && v.residual)
        j["witness"] = Json{{"y_atom", atom_json(*v.offending_y_atom)},
                            {"residual", to_dsl(*v.residual)}};
    return j;
}

inline Json remainder_json(const RemainderVerdict& v) {
    Json samples = Json::array();
    for (const auto& s : v.samples)
        samples.push_back(Json{{"y", rat_vector_json(s.y)}, {"pass", s.pass}});
    return Json{{"pass", v.pass}, {"samples", std::move(samples)}};
}

inline Json bivariate_json(const BivariatePoly& f) {
    return Json{{"d", f.dim()}, {"joint", to_dsl(f.joint())}};
}

inline int solution_max_degree(const SolutionTuple& sol) {
    int deg = -1;
    for (const auto& f : sol.f) deg = std::max(deg, f.total_degree());
    return deg;
}

inline Json reduction_chain_json(const ReductionChain& chain) {
    Json steps = Json::array();
    for (std::size_t k = 0; k < chain.steps.size(); ++k) {
        const auto& st = chain.steps[k];
        Json dmats = Json::array();
        for (const auto& [idx, m] : st.d_mats)
            dmats.push_back(Json{{"index", idx + 1}, {"matrix", matrix_json(m)}});
        steps.push_back(Json{{"step", k + 1},
                             {"pivot", st.eliminated_index + 1},
                             {"h", rat_vector_json(st.h)},
                             {"d_mats", std::move(dmats)},
                             {"dim_w", st.w_out.dimension()},
                             {"max_degree", solution_max_degree(chain.instances[k].sol)}});
    }
    Json instances = Json::array();
    for (const auto& inst : chain.instances)
        instances.push_back(Json{{"spec", spec_json(inst.spec)},
                                 {"solution", solution_json(inst.sol)},
                                 {"w", subspace_json(inst.w)}});
    return Json{{"steps", std::move(steps)}, {"instances", std::move(instances)}};
}

/// A formal scalar as a DSL constant expression, e.g. "1/4*E(1/2)".
inline std::string scalar_dsl(const ExpScalar& s) {
    ExpPoly c(1);
    c.add_term(Freq(1), MultiIndex(1, 0), s);
    return to_dsl(c);
}

inline Json frechet_json(const FrechetVerdict& v) {
    Json j{{"kind", "frechet"},
           {"pass", v.pass},
           {"symbolic", v.symbolic},
           {"differences_vanish", v.differences_vanish}};
    if (v.failing_y) j["failing_y"] = rat_vector_json(*v.failing_y);
    if (v.residual) j["residual"] = to_dsl(*v.residual);
    return j;
}

inline Json kakutani_json(const KakutaniVerdict& v) {
    Json samples = Json::array();
    for (const auto& s : v.samples) {
        Json e{{"z", rat_vector_json(s.z)},
               {"h", rat_vector_json(s.h)},
               {"abs_residual", s.abs_residual}};
        if (s.exact_residual) e["exact_residual"] = scalar_dsl(*s.exact_residual);
        samples.push_back(std::move(e));
    }
    return Json{{"kind", "kakutani"},
                {"pass", v.pass},
                {"exact_mode", v.exact_mode},
                {"max_abs_residual", v.max_abs_residual},
                {"samples", std::move(samples)}};
}

inline Json wilson_json(const WilsonVerdict& v) {
    Json j{{"kind", "wilson"},
           {"pass", v.pass},
           {"degree_bound", v.degree_bound},
           {"fi_degree_ok", v.fi_degree_ok}};
    if (v.pass) {
        j["f"] = to_dsl(v.f_x);
        j["g"] = to_dsl(v.g_y);
    }
    if (v.mixed_atom) j["mixed_atom"] = biatom_json(*v.mixed_atom);
    return j;
}

inline Json skitovich_json(const SkitovichVerdict& v) {
    return Json{{"kind", "skitovich"},
                {"pass", v.pass},
                {"difference", bivariate_json(v.difference)}};
}

inline Json ghurye_olkin_json(const GhuryeOlkinVerdict& v) {
    Json j{{"kind", "ghurye-olkin"},
           {"pass", v.pass},
           {"a", bivariate_json(v.a_part)},
           {"b", bivariate_json(v.b_part)},
           {"fi_polynomial", v.fi_polynomial}};
    if (v.bad_atom) j["bad_atom"] = biatom_json(*v.bad_atom);
    return j;
}

inline GhuryeOlkinSpec ghurye_olkin_spec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("d") || !j.contains("c") || !j.contains("r") ||
        !j.contains("s"))
        throw ParseError("ghurye-olkin spec needs \"d\", \"c\", \"r\", \"s\"");
    GhuryeOlkinSpec go;
    go.d = j.at("d").get<std::size_t>();
    for (const auto& m : j.at("c")) go.c.push_back(matrix_from_json(m));
    go.r = j.at("r").get<std::uint32_t>();
    go.s = j.at("s").get<std::uint32_t>();
    return go;
}

inline FitModel fit_model_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("frequencies") || !j.contains("max_degree"))
        throw ParseError("fit model needs \"frequencies\" and \"max_degree\"");
    FitModel model;
    for (const auto& f : j.at("frequencies")) model.frequencies.push_back(freq_from_json(f));
    for (const auto& e : j.at("max_degree")) model.max_degree.push_back(e.get<std::uint32_t>());
    return model;
}

inline Json fit_report_json(const FitResult& r, const FitModel& model) {
    Json coeffs = Json::array();
    for (const auto& c : r.raw_coefficients) {
        Json alpha = Json::array();
        for (auto e : c.alpha) alpha.push_back(e);
        coeffs.push_back(Json{{"frequency", freq_json(model.frequencies[c.freq_index])},
                              {"alpha", std::move(alpha)},
                              {"re", c.value.real()},
                              {"im", c.value.imag()},
                              {"rounded", c.rounded}});
    }
    return Json{{"fitted", to_dsl(r.fitted)},
                {"rms_residual", r.rms_residual},
                {"condition", r.condition},
                {"coefficients", std::move(coeffs)}};
}

inline Json residual_report_json(const ResidualReport& r) {
    return Json{{"rank", r.rank},
                {"spectral_tail", r.spectral_tail},
                {"max_abs", r.max_abs},
                {"mean_abs", r.mean_abs},
                {"tolerance", r.tolerance},
                {"pass", r.pass}};
}

inline Json closure_report_json(const ClosureResult& r) {
    Json basis = Json::array();
    for (const auto& b : r.basis) basis.push_back(to_dsl(b));
    return Json{{"dimension", r.dimension}, {"basis", std::move(basis)}};
}

}  // namespace expoly

#endif  // EXPOLY_IO_JSON_HPP
