#include "wedge/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wedge/errors.hpp"
#include "wedge/mcoracle.hpp"
#include "wedge/solve.hpp"

namespace wedge {

namespace {

using ordered_json = nlohmann::ordered_json;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::Usage: return 1;
        case ErrorCode::RegimeViolation: return 2;
        case ErrorCode::NotImplemented:
        case ErrorCode::MultipleRoot:
        case ErrorCode::DegreeOne:
        case ErrorCode::ResonanceMismatch:
        case ErrorCode::DegenerateReflection: return 3;
        default: return 4;
    }
}

std::string hexf(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%a", x);
    return buf;
}

std::string fmt17(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

QuadrantModel model_from_json(const ordered_json& j) {
    if (j.contains("sigma")) {
        QuadrantModel m;
        m.sigma11 = j.at("sigma").at(0).at(0).get<double>();
        m.sigma22 = j.at("sigma").at(1).at(1).get<double>();
        const double s01 = j.at("sigma").at(0).at(1).get<double>();
        const double s10 = j.at("sigma").at(1).at(0).get<double>();
        if (std::abs(s01 - s10) > 1e-12 * std::max(1.0, std::abs(s01)))
            throw Error(ErrorCode::Usage, "sigma must be symmetric");
        m.sigma12 = 0.5 * (s01 + s10);
        m.mu1 = j.at("mu").at(0).get<double>();
        m.mu2 = j.at("mu").at(1).get<double>();
        m.r1 = j.at("r").at(0).get<double>();
        m.r2 = j.at("r").at(1).get<double>();
        validate(m);
        return m;
    }
    if (j.contains("beta")) {
        WedgeModel w;
        w.beta = j.at("beta").get<double>();
        w.theta = j.at("theta").get<double>();
        w.delta = j.at("delta").get<double>();
        w.epsilon = j.at("epsilon").get<double>();
        return wedge_to_quadrant(w);
    }
    throw Error(ErrorCode::Usage, "model JSON needs either sigma/mu/r or beta/theta/delta/epsilon");
}

QuadrantModel load_model(const std::string& path) {
    ordered_json j;
    try {
        if (path == "-") {
            j = ordered_json::parse(std::cin);
        } else {
            std::ifstream in(path);
            if (!in) throw Error(ErrorCode::Usage, "cannot open model file " + path);
            j = ordered_json::parse(in);
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Usage, std::string("model JSON parse error: ") + e.what());
    }
    return model_from_json(j);
}

std::pair<double, double> parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw Error(ErrorCode::Usage, "expected two comma-separated numbers, got '" + text + "'");
    try {
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw Error(ErrorCode::Usage, "expected two comma-separated numbers, got '" + text + "'");
    }
}

ordered_json model_json(const QuadrantModel& m, const WedgeModel& w) {
    ordered_json j;
    j["quadrant"] = {{"sigma", {{m.sigma11, m.sigma12}, {m.sigma12, m.sigma22}}},
                     {"mu", {m.mu1, m.mu2}},
                     {"r", {m.r1, m.r2}}};
    j["wedge"] = {{"beta", w.beta}, {"theta", w.theta}, {"delta", w.delta}, {"epsilon", w.epsilon}};
    return j;
}

ordered_json tolerances_json(const Tolerances& t) {
    ordered_json j;
    j["integer_detect"] = t.integer_detect;
    j["angular"] = t.angular;
    j["realness"] = t.realness;
    j["pole_guard"] = t.pole_guard;
    j["fit_residual"] = t.fit_residual;
    j["chain_match"] = t.chain_match;
    j["simple_root"] = t.simple_root;
    return j;
}

ordered_json estimate_json(const McEstimate& est) {
    ordered_json j;
    j["p_hat"] = est.p_hat;
    j["p_hat_hex"] = hexf(est.p_hat);
    j["std_err"] = est.std_err;
    j["counts"] = {{"absorbed", est.n_absorbed},
                   {"escaped", est.n_escaped},
                   {"censored", est.n_censored}};
    j["valid"] = est.valid;
    return j;
}

ordered_json report_json(const SolveReport& rep, std::uint64_t seed) {
    ordered_json j;
    j["model"] = model_json(rep.model, rep.wedge);
    j["alpha"] = rep.alpha;
    j["alpha_hex"] = hexf(rep.alpha);
    j["class"] = to_string(rep.cls.tag);
    if (rep.cls.dr) {
        j["d"] = rep.cls.dr->first;
        j["r"] = rep.cls.dr->second;
    }
    ordered_json sol;
    sol["kind"] = to_string(rep.kind);
    if (rep.pair) {
        sol["lambda"] = rep.pair->lambda;
        sol[rep.pair->pole_mode ? "p_poles" : "p_roots"] = rep.pair->proots;
        sol[rep.pair->pole_mode ? "q_poles" : "q_roots"] = rep.pair->qroots;
        if (rep.pair->near_double_root_j)
            sol["near_double_root_j"] = *rep.pair->near_double_root_j;
    }
    if (rep.kind == SolutionKind::ExponentialSum) {
        ordered_json terms = ordered_json::array();
        for (const auto& t : rep.sum->terms) {
            terms.push_back({{"a", t.a},
                             {"b", t.b},
                             {"c", t.c},
                             {"a_hex", hexf(t.a)},
                             {"b_hex", hexf(t.b)},
                             {"c_hex", hexf(t.c)}});
        }
        sol["terms"] = std::move(terms);
    } else if (rep.kind == SolutionKind::AffineExponential) {
        sol["case"] = rep.affine_case == DoubleRootCase::Case1 ? 1 : 2;
        ordered_json terms = ordered_json::array();
        for (const auto& t : rep.affine->terms)
            terms.push_back({{"p", t.p}, {"qu", t.qu}, {"qv", t.qv}, {"a", t.a}, {"b", t.b}});
        sol["terms"] = std::move(terms);
    } else if (rep.kind == SolutionKind::LaplaceOnly) {
        sol["S"] = {{"mode", rep.correction->pole_mode ? "poles" : "zeros"},
                    {"points", rep.correction->points},
                    {"w_points", rep.correction->w_points},
                    {"w0", rep.correction->w0}};
    } else if (rep.violating_j) {
        sol["violating_j"] = *rep.violating_j;
    }
    if (rep.L) {
        ordered_json rows = ordered_json::array();
        for (const auto& row : rep.L->coeff) rows.push_back(row);
        sol["L_coefficients"] = std::move(rows);
    }
    j["solution"] = std::move(sol);
    if (rep.residuals) {
        j["residuals"] = {{"pde", rep.residuals->pde},
                          {"neumann1", rep.residuals->neumann1},
                          {"neumann2", rep.residuals->neumann2}};
    }
    j["tolerances"] = tolerances_json(rep.tols);
    j["seed"] = seed;
    return j;
}

struct CommonOpts {
    std::string model_path;
    double tol = 0.0; // 0 = defaults
};

Tolerances make_tols(const CommonOpts& opts) {
    Tolerances t;
    if (opts.tol > 0.0) {
        t.integer_detect = opts.tol;
        t.angular = opts.tol;
    }
    return t;
}

int cmd_classify(const CommonOpts& opts, bool as_json, std::ostream& out) {
    const QuadrantModel m = load_model(opts.model_path);
    const Tolerances tols = make_tols(opts);
    const WedgeModel w = quadrant_to_wedge(m, tols);
    validate(w, tols);
    const TransformClass cls = classify(w, tols);
    if (as_json) {
        ordered_json j;
        j["alpha"] = w.alpha();
        j["class"] = to_string(cls.tag);
        if (cls.dr) {
            j["d"] = cls.dr->first;
            j["r"] = cls.dr->second;
        }
        out << j.dump() << "\n";
        return 0;
    }
    out << "alpha=" << fmt17(w.alpha()) << " class=" << to_string(cls.tag);
    if (cls.dr) out << " d=" << cls.dr->first << " r=" << cls.dr->second;
    out << "\n";
    return 0;
}

int cmd_solve(const CommonOpts& opts, bool as_json, bool check_mc,
              const std::optional<std::pair<double, double>>& at, const SimConfig& sim,
              std::ostream& out, std::ostream& err) {
    const QuadrantModel m = load_model(opts.model_path);
    const Tolerances tols = make_tols(opts);
    const SolveReport rep = solve(m, tols);

    ordered_json j = report_json(rep, sim.seed);

    int exit_code = 0;
    if (rep.kind == SolutionKind::NotImplemented) exit_code = 3;

    if (check_mc && exit_code == 0) {
        if (!at) throw Error(ErrorCode::Usage, "--check mc requires --at u,v");
        const auto closed = rep.eval(at->first, at->second);
        if (!closed)
            throw Error(ErrorCode::Usage, "mc check needs a pointwise closed form (integer alpha)");
        const McEstimate est = estimate(m, {at->first, at->second}, sim);
        const double allowance = 3.0 * est.std_err + 0.01;
        const bool agree = std::abs(*closed - est.p_hat) <= allowance;
        ordered_json check;
        check["at"] = {at->first, at->second};
        check["closed_form"] = *closed;
        check["mc"] = estimate_json(est);
        check["allowance"] = allowance;
        check["agree"] = agree;
        j["mc_checks"] = ordered_json::array({check});
        if (!agree) exit_code = 5;
    }

    if (as_json) {
        out << j.dump(2) << "\n";
    } else if (rep.kind == SolutionKind::ExponentialSum) {
        out << "k,a,b,c\n";
        int k = 1;
        for (const auto& t : rep.sum->terms)
            out << k++ << "," << fmt17(t.a) << "," << fmt17(t.b) << "," << fmt17(t.c) << "\n";
    } else if (rep.kind == SolutionKind::AffineExponential) {
        out << "k,p,qu,qv,a,b\n";
        int k = 1;
        for (const auto& t : rep.affine->terms)
            out << k++ << "," << fmt17(t.p) << "," << fmt17(t.qu) << "," << fmt17(t.qv) << ","
                << fmt17(t.a) << "," << fmt17(t.b) << "\n";
    } else {
        out << j.dump(2) << "\n";
    }
    if (exit_code == 3) err << "no closed form implemented for this regime\n";
    if (exit_code == 5) err << "closed form and path-simulation estimate disagree\n";
    return exit_code;
}

int cmd_eval(const CommonOpts& opts, const std::pair<double, double>& at, std::ostream& out,
             std::ostream& err) {
    const QuadrantModel m = load_model(opts.model_path);
    const SolveReport rep = solve(m, make_tols(opts));
    const auto value = rep.eval(at.first, at.second);
    if (!value) {
        err << "no pointwise closed form for this regime\n";
        return 3;
    }
    out << fmt17(*value) << "\n";
    return 0;
}

int cmd_laplace(const CommonOpts& opts, int grid_n, std::pair<double, double> bounds,
                std::ostream& out, std::ostream& err) {
    if (grid_n < 1) throw Error(ErrorCode::Usage, "--grid must be at least 1");
    if (!(bounds.first > 0.0) || !(bounds.second > bounds.first))
        throw Error(ErrorCode::Usage, "--bounds must satisfy 0 < a < b");
    const QuadrantModel m = load_model(opts.model_path);
    const Tolerances tols = make_tols(opts);
    const SolveReport rep = solve(m, tols);
    if (!rep.pair) {
        err << "no Laplace transform data for this regime\n";
        return 3;
    }
    const KernelGeometry geom = special_points(m, tols);
    const CorrectionS S =
        rep.correction ? *rep.correction : build_S(geom, *rep.pair, tols);
    const GluingFunction g = make_gluing(geom);
    out << "y,phi1\n";
    const double ratio = bounds.second / bounds.first;
    for (int i = 0; i < grid_n; ++i) {
        const double frac = grid_n == 1 ? 0.0 : static_cast<double>(i) / (grid_n - 1);
        const double y = bounds.first * std::pow(ratio, frac);
        const complexd value = phi1(g, *rep.pair, S, complexd(y, 0.0), tols);
        out << fmt17(y) << "," << fmt17(value.real()) << "\n";
    }
    return 0;
}

int cmd_mc(const CommonOpts& opts, const std::pair<double, double>& start, const SimConfig& sim,
           std::ostream& out) {
    const QuadrantModel m = load_model(opts.model_path);
    const McEstimate est = estimate(m, {start.first, start.second}, sim);
    ordered_json j = estimate_json(est);
    j["config"] = {{"start", {start.first, start.second}}, {"n", sim.n_paths},
                   {"dt", sim.dt},       {"seed", sim.seed},
                   {"eps_abs", sim.eps_abs}, {"escape_radius", sim.escape_radius},
                   {"max_time", sim.max_time}};
    out << j.dump(2) << "\n";
    return 0;
}

int cmd_sweep(const CommonOpts& opts, int grid_n, std::pair<double, double> bounds,
              std::ostream& out, std::ostream& err) {
    if (grid_n < 1) throw Error(ErrorCode::Usage, "--grid must be at least 1");
    if (!(bounds.second >= bounds.first))
        throw Error(ErrorCode::Usage, "--bounds must satisfy a <= b");
    const QuadrantModel m = load_model(opts.model_path);
    const SolveReport rep = solve(m, make_tols(opts));
    if (rep.kind != SolutionKind::ExponentialSum && rep.kind != SolutionKind::AffineExponential) {
        err << "no pointwise closed form for this regime\n";
        return 3;
    }
    long clamped = 0;
    out << "u,v,f\n";
    for (int i = 0; i < grid_n; ++i) {
        for (int k = 0; k < grid_n; ++k) {
            const double fu = grid_n == 1 ? 0.0 : static_cast<double>(i) / (grid_n - 1);
            const double fv = grid_n == 1 ? 0.0 : static_cast<double>(k) / (grid_n - 1);
            const double u = bounds.first + (bounds.second - bounds.first) * fu;
            const double v = bounds.first + (bounds.second - bounds.first) * fv;
            double f = *rep.eval(u, v);
            if (f < 0.0 || f > 1.0) {
                ++clamped;
                f = std::min(1.0, std::max(0.0, f));
            }
            out << fmt17(u) << "," << fmt17(v) << "," << fmt17(f) << "\n";
        }
    }
    err << "clamped " << clamped << " of " << static_cast<long>(grid_n) * grid_n << " values\n";
    return 0;
}

int cmd_kernel_report(const CommonOpts& opts, std::ostream& out) {
    const QuadrantModel m = load_model(opts.model_path);
    const Tolerances tols = make_tols(opts);
    const KernelGeometry g = special_points(m, tols);
    auto cplx = [](complexd z) { return ordered_json{{"re", z.real()}, {"im", z.imag()}}; };
    ordered_json j;
    j["model"] = model_json(g.model, g.wedge);
    j["alpha"] = g.wedge.alpha();
    j["branch_points"] = {{"xplus", g.xplus}, {"xminus", g.xminus},
                          {"yplus", g.yplus}, {"yminus", g.yminus}};
    j["q"] = cplx(g.q);
    j["s0p"] = cplx(g.s0p);
    j["s0pp"] = cplx(g.s0pp);
    j["s1"] = cplx(g.s1);
    j["s2"] = cplx(g.s2);
    j["s0star"] = cplx(g.s0star);
    j["s1star"] = cplx(g.s1star);
    j["s2star"] = cplx(g.s2star);
    j["C1"] = cplx(g.C1);
    j["C2"] = cplx(g.C2);
    j["C1star"] = cplx(g.C1star);
    j["C2star"] = cplx(g.C2star);
    out << j.dump(2) << "\n";
    return 0;
}

} // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"absorption probability of an obliquely reflected Brownian motion in a wedge"};
    app.require_subcommand(1);

    CommonOpts opts;
    bool as_json = false;
    bool check_mc_flag = false;
    std::string check_what;
    std::string at_text, start_text;
    int grid_n = 50;
    std::pair<double, double> bounds{0.0, 0.0};
    bool bounds_set = false;
    std::string bounds_text;
    SimConfig sim;
    sim.n_paths = 20000;
    sim.dt = 1e-4;
    sim.seed = 12345;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--model", opts.model_path, "model JSON file, or - for stdin")->required();
        cmd->add_option("--tol", opts.tol, "integer/angle detection tolerance");
    };

    CLI::App* c_classify = app.add_subcommand("classify", "alpha, (d, r) and transform class");
    add_common(c_classify);
    c_classify->add_flag("--json", as_json);

    CLI::App* c_solve = app.add_subcommand("solve", "closed-form solution report");
    add_common(c_solve);
    c_solve->add_flag("--json", as_json);
    c_solve->add_option("--check", check_what, "cross-check against 'mc'");
    c_solve->add_option("--at", at_text, "evaluation point u,v");
    c_solve->add_option("--n", sim.n_paths);
    c_solve->add_option("--dt", sim.dt);
    c_solve->add_option("--seed", sim.seed);
    c_solve->add_option("--eps-abs", sim.eps_abs);
    c_solve->add_option("--escape-radius", sim.escape_radius);

    CLI::App* c_eval = app.add_subcommand("eval", "absorption probability at one point");
    add_common(c_eval);
    c_eval->add_option("--at", at_text, "evaluation point u,v")->required();

    CLI::App* c_laplace = app.add_subcommand("laplace", "phi1 over a log grid (CSV)");
    add_common(c_laplace);
    c_laplace->add_option("--grid", grid_n);
    c_laplace->add_option("--bounds", bounds_text, "a,b");

    CLI::App* c_mc = app.add_subcommand("mc", "path-simulation estimate");
    add_common(c_mc);
    c_mc->add_option("--start", start_text, "start point u,v")->required();
    c_mc->add_option("--n", sim.n_paths);
    c_mc->add_option("--dt", sim.dt);
    c_mc->add_option("--seed", sim.seed);
    c_mc->add_option("--eps-abs", sim.eps_abs);
    c_mc->add_option("--escape-radius", sim.escape_radius);
    c_mc->add_option("--max-time", sim.max_time);
    c_mc->add_option("--threads", sim.threads);

    CLI::App* c_sweep = app.add_subcommand("sweep", "grid of absorption probabilities (CSV)");
    add_common(c_sweep);
    c_sweep->add_option("--grid", grid_n)->required();
    c_sweep->add_option("--bounds", bounds_text, "a,b");

    CLI::App* c_kernel = app.add_subcommand("kernel-report", "kernel geometry (JSON)");
    add_common(c_kernel);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 1;
    }

    try {
        if (!bounds_text.empty()) {
            bounds = parse_point(bounds_text);
            bounds_set = true;
        }
        std::optional<std::pair<double, double>> at;
        if (!at_text.empty()) at = parse_point(at_text);

        if (app.got_subcommand(c_classify)) return cmd_classify(opts, as_json, out);
        if (app.got_subcommand(c_solve)) {
            check_mc_flag = (check_what == "mc");
            if (!check_what.empty() && !check_mc_flag)
                throw Error(ErrorCode::Usage, "unknown --check mode '" + check_what + "'");
            return cmd_solve(opts, as_json, check_mc_flag, at, sim, out, err);
        }
        if (app.got_subcommand(c_eval)) {
            if (!at) throw Error(ErrorCode::Usage, "--at u,v is required");
            return cmd_eval(opts, *at, out, err);
        }
        if (app.got_subcommand(c_laplace))
            return cmd_laplace(opts, grid_n, bounds_set ? bounds : std::make_pair(0.01, 100.0),
                               out, err);
        if (app.got_subcommand(c_mc)) return cmd_mc(opts, parse_point(start_text), sim, out);
        if (app.got_subcommand(c_sweep))
            return cmd_sweep(opts, grid_n, bounds_set ? bounds : std::make_pair(0.0, 5.0), out,
                             err);
        if (app.got_subcommand(c_kernel)) return cmd_kernel_report(opts, out);
        throw Error(ErrorCode::Usage, "no subcommand given");
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
}

} // namespace wedge
