// expoly: command-line workbench for generalized Levi-Civita functional
// equations. Subcommands: validate, separate, verify, reduce, check, fit,
// residual, closure. Exit codes: 0 = pass/success, 1 = check failure (the
// report carries a witness), 2 = invalid input.
#include "expoly/io_json.hpp"
#include "expoly/schema.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace expoly;

/// Documents may be passed inline (first non-space byte '{' or '[') or as a
/// path to a JSON file.
Json read_doc(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '['))
        return Json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw ParseError("cannot open file: " + arg);
    std::stringstream buf;
    buf << in.rdbuf();
    return Json::parse(buf.str());
}

void emit(const Json& report, bool as_json, const std::string& human) {
    if (as_json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << human;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------

int run_validate(const std::string& spec_arg, const std::string& profile_arg, bool as_json) {
    SpecDocument doc = spec_from_json(read_doc(spec_arg));
    Profile profile = doc.profile.value_or(Profile::Thm21);
    if (!profile_arg.empty()) {
        auto p = profile_from_string(profile_arg);
        if (!p) throw ParseError("unknown profile \"" + profile_arg + "\"");
        profile = *p;
    }
    HypothesisReport rep = validate_conditions(doc.spec, profile);
    std::ostringstream human;
    human << "hypothesis check, profile " << to_string(profile) << ": "
          << (rep.pass ? "PASS" : "FAIL") << "\n";
    auto dump = [&human](const std::vector<ConditionCheck>& cs) {
        for (const auto& c : cs) {
            human << "  [" << (c.holds ? " ok " : "FAIL") << "] " << c.condition;
            if (!c.detail.empty()) human << " (" << c.detail << ")";
            human << "\n";
        }
    };
    dump(rep.b_invertible);
    dump(rep.c_invertible);
    dump(rep.bc_diff_invertible);
    dump(rep.c_diff_invertible);
    human << "profiles:";
    for (auto p : all_profiles())
        human << " " << to_string(p) << "=" << yesno(rep.overall.at(p));
    human << "\n";
    emit(hypothesis_report_json(rep), as_json, human.str());
    return rep.pass ? 0 : 1;
}

int run_separate(const std::string& spec_arg, const std::string& sol_arg, bool as_json) {
    SpecDocument doc = spec_from_json(read_doc(spec_arg));
    SolutionTuple sol = solution_from_json(read_doc(sol_arg), doc.spec.d);
    BivariatePoly F = bivariate_expand(doc.spec, sol);
    SeparatedForm form = separate_minimal(F);
    const bool exact = (reconstruct(form, doc.spec.d) == F);
    Json report = separated_form_json(form);
    report["reconstruction_exact"] = exact;
    std::ostringstream human;
    human << "minimal separated form: n = " << form.n
          << " (reconstruction exact: " << yesno(exact) << ")\n";
    for (std::size_t k = 0; k < form.pairs.size(); ++k)
        human << "  u_" << k + 1 << "(y) = " << to_dsl(form.pairs[k].first) << "\n"
              << "  v_" << k + 1 << "(x) = " << to_dsl(form.pairs[k].second) << "\n";
    emit(report, as_json, human.str());
    return exact ? 0 : 1;
}

int run_verify(const std::string& spec_arg, const std::string& sol_arg,
               const std::string& w_arg, const std::string& remainder_arg, bool as_json) {
    SpecDocument doc = spec_from_json(read_doc(spec_arg));
    SolutionTuple sol = solution_from_json(read_doc(sol_arg), doc.spec.d);
    SubspaceW w = w_arg.empty() ? SubspaceW{} : subspace_from_json(read_doc(w_arg), doc.spec.d);
    if (!remainder_arg.empty()) {
        Json rj = read_doc(remainder_arg);
        if (!rj.is_object() || !rj.contains("samples"))
            throw ParseError("remainder document needs a \"samples\" array");
        std::vector<std::pair<RatVector, std::vector<ExpPoly>>> remainders;
        for (const auto& s : rj.at("samples")) {
            std::vector<ExpPoly> gens;
            for (const auto& g : s.at("generators"))
                gens.push_back(parse_exppoly(g.get<std::string>(), doc.spec.d));
            remainders.emplace_back(rat_vector_from_json(s.at("y")), std::move(gens));
        }
        RemainderVerdict v = verify_with_remainder(doc.spec, sol, w, remainders);
        std::ostringstream human;
        human << "membership with remainders: " << (v.pass ? "PASS" : "FAIL") << "\n";
        for (const auto& s : v.samples) {
            human << "  y = [";
            for (std::size_t t = 0; t < s.y.size(); ++t)
                human << (t ? ", " : "") << to_string(s.y[t]);
            human << "]: " << (s.pass ? "in W + R(y)" : "NOT in W + R(y)") << "\n";
        }
        emit(remainder_json(v), as_json, human.str());
        return v.pass ? 0 : 1;
    }
    MembershipVerdict v = verify_membership(doc.spec, sol, w);
    std::ostringstream human;
    human << "membership in W (dim " << w.dimension() << "): " << (v.pass ? "PASS" : "FAIL")
          << "\n";
    if (!v.pass && v.residual)
        human << "  witness residual outside W: " << to_dsl(*v.residual) << "\n";
    emit(membership_json(v), as_json, human.str());
    return v.pass ? 0 : 1;
}

int run_reduce(const std::string& spec_arg, const std::string& sol_arg,
               const std::string& w_arg, const std::string& schedule_arg, bool as_json) {
    SpecDocument doc = spec_from_json(read_doc(spec_arg));
    SolutionTuple sol = solution_from_json(read_doc(sol_arg), doc.spec.d);
    SubspaceW w = subspace_from_json(read_doc(w_arg), doc.spec.d);

    EquationSpec spec = doc.spec;
    if (!is_normalized(spec)) {
        auto norm = normalize_b_to_identity(spec, sol);
        spec = std::move(norm.first);
        sol = std::move(norm.second);
    }
    MembershipVerdict pre = verify_membership(spec, sol, w);
    if (!pre.pass) {
        std::ostringstream human;
        human << "input instance fails membership; nothing to reduce\n";
        if (pre.residual) human << "  witness residual: " << to_dsl(*pre.residual) << "\n";
        emit(membership_json(pre), as_json, human.str());
        return 1;
    }

    std::vector<RatVector> schedule;
    if (!schedule_arg.empty())
        for (const auto& h : read_doc(schedule_arg)) schedule.push_back(rat_vector_from_json(h));
    ReductionChain chain = full_reduction(spec, sol, w, schedule);

    std::ostringstream human;
    human << "step  pivot  h" << std::string(14, ' ') << "dim(W)  max_deg\n";
    for (std::size_t k = 0; k < chain.steps.size(); ++k) {
        const auto& st = chain.steps[k];
        std::string hstr = "[";
        for (std::size_t t = 0; t < st.h.size(); ++t)
            hstr += (t ? ", " : "") + to_string(st.h[t]);
        hstr += "]";
        hstr.resize(std::max<std::size_t>(hstr.size(), 15), ' ');
        human << "   " << k + 1 << "      " << st.eliminated_index + 1 << "  " << hstr
              << std::to_string(st.w_out.dimension()) << "       "
              << solution_max_degree(chain.instances[k].sol) << "\n";
    }
    human << "chain length " << chain.instances.size() << ", final summands "
          << (chain.instances.empty() ? spec.summands() : chain.instances.back().spec.summands())
          << "\n";
    emit(reduction_chain_json(chain), as_json, human.str());
    return 0;
}

int run_check_frechet(const std::string& f_arg, unsigned order, const std::string& y_arg,
                      std::optional<std::size_t> dim, bool as_json) {
    ExpPoly f = parse_exppoly(f_arg, dim);
    std::vector<RatVector> trials;
    if (!y_arg.empty())
        for (const auto& y : read_doc(y_arg)) trials.push_back(rat_vector_from_json(y));
    else
        trials = {RatVector(f.dim(), Rational(1)), RatVector(f.dim(), Rational(-2))};
    for (const auto& y : trials)
        if (y.size() != f.dim()) throw DimensionMismatch("trial y length != dimension of f");
    FrechetVerdict v = frechet_check(f, order, trials);
    std::ostringstream human;
    human << "frechet order " << order << ": " << (v.pass ? "PASS" : "FAIL")
          << " (symbolic: " << yesno(v.symbolic)
          << ", differences vanish: " << yesno(v.differences_vanish) << ")\n";
    if (v.residual) human << "  residual: " << to_dsl(*v.residual) << "\n";
    emit(frechet_json(v), as_json, human.str());
    return v.pass ? 0 : 1;
}

int run_check_kakutani(const std::string& f_arg, unsigned n, const std::string& samples_arg,
                       bool as_json) {
    ExpPoly f = parse_exppoly(f_arg, 2);
    std::vector<std::pair<RatVector, RatVector>> samples;
    if (!samples_arg.empty()) {
        for (const auto& s : read_doc(samples_arg))
            samples.emplace_back(rat_vector_from_json(s.at("z")),
                                 rat_vector_from_json(s.at("h")));
    } else {
        samples = {{{Rational(1), Rational(2)}, {Rational(1, 2), Rational(1)}},
                   {{Rational(0), Rational(0)}, {Rational(3), Rational(-2)}}};
    }
    KakutaniVerdict v = kakutani_nagumo_check(f, n, samples);
    std::ostringstream human;
    human << "kakutani-nagumo N=" << n << " (" << (v.exact_mode ? "exact" : "float")
          << " mode): " << (v.pass ? "PASS" : "FAIL") << ", max residual "
          << v.max_abs_residual << "\n";
    for (const auto& s : v.samples)
        if (s.exact_residual && !s.exact_residual->is_zero())
            human << "  residual " << scalar_dsl(*s.exact_residual) << "\n";
    emit(kakutani_json(v), as_json, human.str());
    return v.pass ? 0 : 1;
}

int run_check_wilson(const std::string& alphas_arg, const std::string& betas_arg,
                     const std::vector<std::string>& f_args, bool as_json) {
    std::vector<Rational> alphas, betas;
    for (const auto& a : read_doc(alphas_arg)) alphas.push_back(rational_from_json(a));
    for (const auto& b : read_doc(betas_arg)) betas.push_back(rational_from_json(b));
    std::vector<ExpPoly> fs;
    for (const auto& f : f_args) fs.push_back(parse_exppoly(f, 1));
    WilsonVerdict v = wilson_check(alphas, betas, fs);
    std::ostringstream human;
    human << "wilson split: " << (v.pass ? "PASS" : "FAIL") << "\n";
    if (v.pass)
        human << "  f(x) = " << to_dsl(v.f_x) << "\n  g(y) = " << to_dsl(v.g_y) << "\n";
    for (std::size_t i = 0; i < v.fi_degree_ok.size(); ++i)
        human << "  f_" << i + 1 << " polynomial of degree <= " << v.degree_bound << ": "
              << yesno(v.fi_degree_ok[i]) << "\n";
    emit(wilson_json(v), as_json, human.str());
    return v.pass ? 0 : 1;
}

int run_check_skitovich(const std::string& spec_arg, const std::string& sol_arg, bool as_json) {
    SpecDocument doc = spec_from_json(read_doc(spec_arg));
    SolutionTuple sol = solution_from_json(read_doc(sol_arg), doc.spec.d);
    SkitovichVerdict v = skitovich_check(doc.spec, sol);
    std::ostringstream human;
    human << "skitovich-darmois split: " << (v.pass ? "PASS" : "FAIL") << "\n";
    if (!v.pass) human << "  difference: " << to_dsl(v.difference.joint()) << "\n";
    emit(skitovich_json(v), as_json, human.str());
    return v.pass ? 0 : 1;
}

int run_check_ghurye(const std::string& go_arg, const std::string& sol_arg, bool as_json) {
    GhuryeOlkinSpec go = ghurye_olkin_spec_from_json(read_doc(go_arg));
    SolutionTuple sol = solution_from_json(read_doc(sol_arg), go.d);
    GhuryeOlkinVerdict v = ghurye_olkin_check(go, sol);
    std::ostringstream human;
    human << "ghurye-olkin split (r=" << go.r << ", s=" << go.s
          << "): " << (v.pass ? "PASS" : "FAIL") << "\n";
    if (v.pass)
        human << "  A joint form: " << to_dsl(v.a_part.joint())
              << "\n  B joint form: " << to_dsl(v.b_part.joint()) << "\n";
    for (std::size_t i = 0; i < v.fi_polynomial.size(); ++i)
        human << "  f_" << i + 1 << " polynomial: " << yesno(v.fi_polynomial[i]) << "\n";
    emit(ghurye_olkin_json(v), as_json, human.str());
    return v.pass ? 0 : 1;
}

int run_fit(const std::string& data_arg, const std::string& f_arg, std::size_t grid_n,
            const std::string& freq_arg, const std::string& degree_arg, double tol,
            bool as_json) {
    FitModel model;
    for (const auto& f : read_doc(freq_arg)) model.frequencies.push_back(freq_from_json(f));
    if (!degree_arg.empty()) {
        for (const auto& e : read_doc(degree_arg))
            model.max_degree.push_back(e.get<std::uint32_t>());
    } else {
        model.max_degree.assign(model.frequencies.size(), 0);
    }
    SampleGrid grid;
    if (!data_arg.empty()) {
        std::ifstream in(data_arg);
        if (!in) throw ParseError("cannot open file: " + data_arg);
        grid = parse_csv_samples(in);
    } else if (!f_arg.empty()) {
        ExpPoly f = parse_exppoly(f_arg);
        grid = sample(f, make_grid(f.dim(), grid_n));
    } else {
        throw ParseError("fit needs --data or --f");
    }
    FitResult r = fit(grid, model);
    std::ostringstream human;
    human << "fitted: " << to_dsl(r.fitted) << "\n"
          << "rms residual " << r.rms_residual << ", condition " << r.condition << "\n";
    emit(fit_report_json(r, model), as_json, human.str());
    return r.rms_residual <= tol ? 0 : 1;
}

int run_residual(const std::string& spec_arg, const std::string& sol_arg, std::size_t n,
                 std::size_t grid_n, double tol, bool as_json) {
    SpecDocument doc = spec_from_json(read_doc(spec_arg));
    SolutionTuple sol = solution_from_json(read_doc(sol_arg), doc.spec.d);
    auto xg = make_grid(doc.spec.d, grid_n), yg = make_grid(doc.spec.d, grid_n);
    ResidualReport r = equation_residual(doc.spec, sol, xg, yg, n, tol);
    std::ostringstream human;
    human << "rank-" << n << " residual: spectral tail " << r.spectral_tail << ", max "
          << r.max_abs << ", mean " << r.mean_abs << " -> " << (r.pass ? "PASS" : "FAIL")
          << "\n";
    emit(residual_report_json(r), as_json, human.str());
    return r.pass ? 0 : 1;
}

int run_closure(const std::string& f_arg, std::optional<std::size_t> dim, bool as_json) {
    ExpPoly f = parse_exppoly(f_arg, dim);
    ClosureResult r = levi_civita_closure(f);
    std::ostringstream human;
    human << "translates closure dimension " << r.dimension << "\n";
    for (const auto& b : r.basis) human << "  " << to_dsl(b) << "\n";
    emit(closure_report_json(r), as_json, human.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "expoly: exact workbench for generalized Levi-Civita functional equations\n"
        "  sum_i f_i(b_i x + c_i y) = sum_k u_k(y) v_k(x)"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit machine-readable JSON reports");

    int rc = 0;

    // validate
    auto* validate = app.add_subcommand("validate", "check theorem hypotheses for a spec");
    std::string v_spec, v_profile;
    validate->add_option("--spec", v_spec, "spec document (path or inline JSON)")->required();
    validate->add_option("--profile", v_profile, "thm2.1|thm2.2|thm3.2|cor4.3");
    validate->callback([&] { rc = run_validate(v_spec, v_profile, as_json); });

    // separate
    auto* separate = app.add_subcommand("separate", "minimal separated form of the left side");
    std::string s_spec, s_sol;
    separate->add_option("--spec", s_spec, "spec document")->required();
    separate->add_option("--solution", s_sol, "solution document")->required();
    separate->callback([&] { rc = run_separate(s_spec, s_sol, as_json); });

    // verify
    auto* verify = app.add_subcommand("verify", "membership of the left side in span(W)");
    std::string vf_spec, vf_sol, vf_w, vf_rem;
    verify->add_option("--spec", vf_spec, "spec document")->required();
    verify->add_option("--solution", vf_sol, "solution document")->required();
    verify->add_option("--w", vf_w, "subspace document {\"basis\": [DSL]}");
    verify->add_option("--remainder", vf_rem,
                       "remainder samples {\"samples\": [{\"y\": [..], \"generators\": [DSL]}]}");
    verify->callback([&] { rc = run_verify(vf_spec, vf_sol, vf_w, vf_rem, as_json); });

    // reduce
    auto* reduce = app.add_subcommand("reduce", "chain elimination steps down to one summand");
    std::string r_spec, r_sol, r_w, r_sched;
    reduce->add_option("--spec", r_spec, "spec document")->required();
    reduce->add_option("--solution", r_sol, "solution document")->required();
    reduce->add_option("--w", r_w, "subspace document")->required();
    reduce->add_option("--h-schedule", r_sched, "JSON array of rational shift vectors");
    reduce->callback([&] { rc = run_reduce(r_spec, r_sol, r_w, r_sched, as_json); });

    // check
    auto* check = app.add_subcommand("check", "special equation checkers");
    std::string c_kind, c_f, c_y, c_samples, c_alphas, c_betas, c_spec, c_sol, c_go;
    std::vector<std::string> c_fs;
    unsigned c_order = 1, c_n = 4;
    std::optional<std::size_t> c_dim;
    check->add_option("--kind", c_kind, "frechet|kakutani|wilson|skitovich|ghurye-olkin")
        ->required();
    check->add_option("--f", c_fs, "function(s) in the DSL");
    check->add_option("--order", c_order, "difference order m (frechet)");
    check->add_option("--y", c_y, "JSON array of rational trial vectors (frechet)");
    check->add_option("--N", c_n, "root-of-unity order (kakutani)");
    check->add_option("--samples", c_samples, "JSON [{\"z\": [..], \"h\": [..]}] (kakutani)");
    check->add_option("--alphas", c_alphas, "JSON array of rationals (wilson)");
    check->add_option("--betas", c_betas, "JSON array of rationals (wilson)");
    check->add_option("--spec", c_spec, "spec document (skitovich)");
    check->add_option("--solution", c_sol, "solution document (skitovich, ghurye-olkin)");
    check->add_option("--go-spec", c_go,
                      "ghurye-olkin spec {\"d\", \"c\": [matrix..], \"r\", \"s\"}");
    check->add_option("--dim", c_dim, "pin the dimension for DSL parsing");
    check->callback([&] {
        auto need_f = [&]() -> const std::string& {
            if (c_fs.empty()) throw ParseError("this check needs --f");
            return c_fs.front();
        };
        if (c_kind == "frechet")
            rc = run_check_frechet(need_f(), c_order, c_y, c_dim, as_json);
        else if (c_kind == "kakutani")
            rc = run_check_kakutani(need_f(), c_n, c_samples, as_json);
        else if (c_kind == "wilson")
            rc = run_check_wilson(c_alphas, c_betas, c_fs, as_json);
        else if (c_kind == "skitovich")
            rc = run_check_skitovich(c_spec, c_sol, as_json);
        else if (c_kind == "ghurye-olkin")
            rc = run_check_ghurye(c_go, c_sol, as_json);
        else
            throw ParseError("unknown check kind \"" + c_kind + "\"");
    });

    // fit
    auto* fitcmd = app.add_subcommand("fit", "least-squares fit over a known frequency set");
    std::string f_data, f_expr, f_freq, f_degree;
    std::size_t f_grid = 50;
    double f_tol = 1e-8;
    fitcmd->add_option("--data", f_data, "CSV file with columns x_1..x_d, re, im");
    fitcmd->add_option("--f", f_expr, "DSL expression to sample instead of CSV data");
    fitcmd->add_option("--grid", f_grid, "points per axis when sampling --f");
    fitcmd->add_option("--freq", f_freq, "JSON array of frequency vectors")->required();
    fitcmd->add_option("--degree", f_degree, "JSON array of per-frequency degree bounds");
    fitcmd->add_option("--tol", f_tol, "rms residual threshold for exit code");
    fitcmd->callback(
        [&] { rc = run_fit(f_data, f_expr, f_grid, f_freq, f_degree, f_tol, as_json); });

    // residual
    auto* residual = app.add_subcommand("residual", "numeric rank test of the sampled kernel");
    std::string rs_spec, rs_sol;
    std::size_t rs_n = 0, rs_grid = 20;
    double rs_tol = kResidualTolerance;
    residual->add_option("--spec", rs_spec, "spec document")->required();
    residual->add_option("--solution", rs_sol, "solution document")->required();
    residual->add_option("--n", rs_n, "rank to test")->required();
    residual->add_option("--grid", rs_grid, "points per axis");
    residual->add_option("--tol", rs_tol, "spectral tail tolerance");
    residual->callback([&] { rc = run_residual(rs_spec, rs_sol, rs_n, rs_grid, rs_tol, as_json); });

    // closure
    auto* closure = app.add_subcommand("closure", "translates closure of a function");
    std::string cl_f;
    std::optional<std::size_t> cl_dim;
    closure->add_option("--f", cl_f, "DSL expression")->required();
    closure->add_option("--dim", cl_dim, "pin the dimension");
    closure->callback([&] { rc = run_closure(cl_f, cl_dim, as_json); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const HypothesisViolation& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 1;
    } catch (const NotTranslationInvariant& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "invalid input: " << e.what();
        if (e.line) std::cerr << " (line " << e.line << ", column " << e.column << ")";
        std::cerr << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "invalid JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
