// l2alex: L2-Alexander torsion functions for knots and deficiency-one
// presentations with abelian coefficient systems.
//
// Subcommands: knot, torus, graph, fibered, mahler, norm, basiccase.
// Exit codes: 0 success, 2 input/parse error, 3 singular index selection.

#include <CLI11.hpp>
#include <iostream>
#include <l2alex/io_json.hpp>

using namespace l2alex;
using nlohmann::json;

namespace {

struct CliConfig {
    int quad_points = 1024;
    double root_tol = 1e-12;
    int kmax = 32;
    double tmin = 1e-3, tmax = 1e3;
    int grid_n = 121;

    FkConfig fk() const { return FkConfig{quad_points, root_tol}; }
    std::vector<double> grid() const { return log_grid(tmin, tmax, grid_n); }
};

void add_config_flags(CLI::App* cmd, CliConfig& cfg) {
    cmd->add_option("--quad-points", cfg.quad_points, "quadrature points per dimension (power of two)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--root-tol", cfg.root_tol, "snap tolerance for unit-modulus roots")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--kmax", cfg.kmax, "growth bound power cutoff")->check(CLI::PositiveNumber);
    cmd->add_option("--tmin", cfg.tmin, "sample grid lower endpoint")->check(CLI::PositiveNumber);
    cmd->add_option("--tmax", cfg.tmax, "sample grid upper endpoint")->check(CLI::PositiveNumber);
    cmd->add_option("--grid-n", cfg.grid_n, "sample grid size")->check(CLI::PositiveNumber);
}

void emit(const json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream os(out_path);
        if (!os) throw ParseError("cannot write " + out_path);
        os << report.dump(2) << "\n";
    }
}

void write_samples(const MaxMonomialFn& fn, const CliConfig& cfg, const std::string& path) {
    if (path.empty()) return;
    std::ofstream os(path);
    if (!os) throw ParseError("cannot write " + path);
    sampled_to_csv(os, mm_sample(fn, cfg.tmin, cfg.tmax, cfg.grid_n));
}

json fn_report(const MaxMonomialFn& fn) {
    json j;
    j["exact_form"] = mm_format(fn);
    j["fn"] = mm_to_json(fn);
    j["degree"] = degree_to_json(mm_degree(fn));
    j["monic"] = fn.zero ? false : mm_is_monic(fn);
    if (auto k = mm_symmetry_exponent(fn)) j["symmetry_exponent"] = *k;
    return j;
}

std::vector<double> parse_dir(const std::string& s) {
    std::vector<double> v;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            v.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ParseError("bad direction component '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (v.empty()) throw ParseError("empty direction");
    return v;
}

std::vector<std::vector<Rat>> matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
    std::vector<std::vector<Rat>> m;
    for (auto& row : j) {
        if (!row.is_array()) throw ParseError("matrix rows must be arrays");
        std::vector<Rat> r;
        for (auto& x : row) {
            if (x.is_number_integer())
                r.push_back(Rat(x.get<std::int64_t>()));
            else if (x.is_string())
                r.push_back(parse_rat(x.get<std::string>()));
            else
                throw ParseError("matrix entries must be integers or rational strings");
        }
        m.push_back(std::move(r));
    }
    return m;
}

int cmd_knot(const std::string& pd_path, const std::string& pres_path, const CliConfig& cfg,
             const std::string& out_path, const std::string& samples_path) {
    KnotTorsion k;
    json input;
    if (!pd_path.empty()) {
        PDCode D = pd_from_json(load_json_file(pd_path));
        k = tau_knot_abelianization(D, cfg.fk());
        input["pd"] = pd_path;
        input["presentation"] = presentation_to_json(wirtinger_from_pd(D));
    } else {
        Presentation P = presentation_from_json(load_json_file(pres_path));
        k = tau_knot_abelianization(P, cfg.fk());
        input["presentation"] = presentation_to_json(P);
    }
    json rep = fn_report(k.fn);
    rep["input"] = input;
    rep["zero"] = k.zero;
    rep["det"] = format_poly(k.det, {"z"});
    rep["alexander"] = format_poly(k.alex, {"z"});
    rep["alexander_clean"] = k.alex_clean;
    rep["deleted_column"] = k.deleted_col;
    rep["phi_deleted"] = k.phi_deleted;
    auto ut = unknot_necessary_test(k.fn);
    rep["unknot_test"] = {{"consistent_with_unknot", ut.passes}, {"details", ut.details}};
    if (!k.zero) {
        auto& roots = rep["root_moduli"] = json::array();
        for (auto& cl : k.roots.clusters)
            roots.push_back({{"modulus", cl.modulus}, {"mult", cl.mult}, {"unit", cl.snapped_one}});
    }
    emit(rep, out_path);
    write_samples(k.fn, cfg, samples_path);
    return 0;
}

int cmd_torus(int p, int q, const CliConfig& cfg, const std::string& out_path,
              const std::string& samples_path) {
    MaxMonomialFn fn = tau_torus_knot(p, q);
    json rep = fn_report(fn);
    rep["p"] = p;
    rep["q"] = q;
    // cross-compute through the presentation pipeline as a consistency record
    KnotTorsion k = tau_knot_abelianization(torus_presentation(p, q), cfg.fk());
    rep["pipeline_exact_form"] = mm_format(k.fn);
    rep["pipeline_agrees"] = mm_equivalent(fn, k.fn);
    rep["alexander"] = format_poly(k.alex, {"z"});
    emit(rep, out_path);
    write_samples(fn, cfg, samples_path);
    return 0;
}

int cmd_graph(double x, const CliConfig& cfg, const std::string& out_path,
              const std::string& samples_path) {
    MaxMonomialFn fn = tau_graph_manifold(x);
    json rep = fn_report(fn);
    rep["norm_value"] = x;
    emit(rep, out_path);
    write_samples(fn, cfg, samples_path);
    return 0;
}

int cmd_fibered(const std::string& endo_path, int chi, const CliConfig& cfg,
                const std::string& out_path) {
    FreeGroupEndo f = endo_from_json(load_json_file(endo_path));
    FiberedCertificate cert = tau_fibered(f, chi, cfg.kmax, cfg.fk());
    json rep;
    rep["fiber_rank"] = cert.n;
    rep["norm_value"] = cert.x;
    rep["t_upper"] = cert.t_upper;
    rep["exact_form_below"] = "1 on (0, " + fmt_double(1.0 / cert.t_upper) + ")";
    rep["exact_form_above"] = "t^" + fmt_double(cert.x) + " on (" + fmt_double(cert.t_upper) + ", inf)";
    rep["growth"] = {{"bound", cert.growth.bound},
                     {"materialized", cert.growth.materialized},
                     {"running_min", cert.growth.running_min}};
    rep["sanity"] = {{"t_low", cert.t_low},
                     {"t_high", cert.t_high},
                     {"value_low", cert.v_low.value},
                     {"value_high", cert.v_high.value},
                     {"low_is_one", cert.sanity_low_is_one},
                     {"cross_check_ok", cert.sanity_cross_ok}};
    rep["caveats"] = cert.caveats;
    emit(rep, out_path);
    return 0;
}

int cmd_mahler(const std::string& poly, bool force_quad, const CliConfig& cfg,
               const std::string& out_path) {
    auto [p, vars] = parse_poly(poly);
    json rep;
    rep["poly"] = format_poly(p, vars);
    rep["nvars"] = p.nvars;
    MahlerValue v;
    if (p.nvars == 1 && !force_quad) {
        v = mahler_jensen(p, cfg.root_tol);
        RootData rd = one_var_roots(p, cfg.root_tol);
        auto& roots = rep["root_moduli"] = json::array();
        for (auto& cl : rd.clusters)
            roots.push_back({{"modulus", cl.modulus}, {"mult", cl.mult}, {"unit", cl.snapped_one}});
    } else {
        v = p.nvars == 0 ? mahler_jensen(p, cfg.root_tol) : mahler_quadrature(p, cfg.quad_points);
    }
    rep["value"] = v.value;
    rep["err"] = v.err;
    rep["method"] = mahler_method_name(v.method);
    rep["low_confidence"] = v.low_confidence;
    emit(rep, out_path);
    return 0;
}

int cmd_norm(const std::string& pres_path, const std::string& poly,
             const std::vector<std::string>& dir_specs, const std::string& out_path) {
    std::vector<std::vector<double>> dirs;
    for (auto& d : dir_specs) dirs.push_back(parse_dir(d));
    NormReport nr;
    json rep;
    if (!poly.empty()) {
        auto [p, vars] = parse_poly(poly);
        for (auto& d : dirs)
            if ((int)d.size() != p.nvars)
                throw ParseError("direction arity does not match variable count");
        nr = alexander_norm_report(p, dirs);
        rep["poly"] = format_poly(p, vars);
    } else {
        Presentation P = presentation_from_json(load_json_file(pres_path));
        for (auto& d : dirs)
            if ((int)d.size() != P.phi.rank)
                throw ParseError("direction arity does not match phi rank");
        nr = alexander_norm_report(P, dirs);
        rep["presentation"] = presentation_to_json(P);
    }
    rep["zero_det"] = nr.zero_det;
    rep["homogeneity_ok"] = nr.homogeneity_ok;
    rep["triangle_ok"] = nr.triangle_ok;
    auto& entries = rep["entries"] = json::array();
    for (auto& e : nr.entries)
        entries.push_back({{"psi", e.psi},
                           {"norm_value", e.norm_value},
                           {"deg_tau", e.deg_tau},
                           {"statement", e.statement}});
    emit(rep, out_path);
    return 0;
}

int cmd_basiccase(const std::string& p_path, const std::string& q_path,
                  const std::string& grid_spec, const CliConfig& cfg,
                  const std::string& out_path) {
    auto Pm = matrix_from_json(load_json_file(p_path));
    auto Qm = matrix_from_json(load_json_file(q_path));
    std::vector<double> grid = grid_spec.empty() ? cfg.grid() : parse_dir(grid_spec);
    BasicCaseReport rep = basiccase_check(Pm, Qm, grid, cfg.kmax, cfg.fk());
    json j;
    j["n"] = rep.n;
    j["t_upper"] = rep.t_upper;
    j["all_ok"] = rep.all_ok;
    auto& rows = j["rows"] = json::array();
    for (auto& r : rep.rows)
        rows.push_back({{"t", r.t},
                        {"value", r.f},
                        {"regime", r.regime == -1 ? "below" : r.regime == 1 ? "above" : "gap"},
                        {"expected", r.regime == 0 ? json() : json(r.expected)},
                        {"ok", r.ok}});
    emit(j, out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"L2-Alexander torsion functions (abelian coefficient systems)"};
    app.require_subcommand(1);
    CliConfig cfg;
    std::string out_path, samples_path;

    auto* knot = app.add_subcommand("knot", "torsion of a knot from a PD code or presentation");
    std::string pd_path, pres_path;
    auto* pd_opt = knot->add_option("--pd", pd_path, "PD code JSON file");
    knot->add_option("--presentation", pres_path, "presentation JSON file")->excludes(pd_opt);
    knot->add_option("--out", out_path, "report path (default stdout)");
    knot->add_option("--samples", samples_path, "write CSV samples to this path");
    add_config_flags(knot, cfg);

    auto* torus = app.add_subcommand("torus", "closed-form torsion of the (p,q) torus knot");
    int tp = 0, tq = 0;
    torus->add_option("p", tp, "p >= 2")->required();
    torus->add_option("q", tq, "q >= 2, coprime to p")->required();
    torus->add_option("--out", out_path, "report path (default stdout)");
    torus->add_option("--samples", samples_path, "write CSV samples to this path");
    add_config_flags(torus, cfg);

    auto* graph = app.add_subcommand("graph", "torsion of a graph manifold from its norm value");
    double gx = 0;
    graph->add_option("x", gx, "Thurston norm value x_N(phi) >= 0")->required();
    graph->add_option("--out", out_path, "report path (default stdout)");
    graph->add_option("--samples", samples_path, "write CSV samples to this path");
    add_config_flags(graph, cfg);

    auto* fibered = app.add_subcommand("fibered", "certificate for a fibered mapping torus");
    std::string endo_path;
    int chi = 0;
    fibered->add_option("--endo", endo_path, "free-group endomorphism JSON file")->required();
    fibered->add_option("--chi", chi, "Euler characteristic of the fiber")->required();
    fibered->add_option("--out", out_path, "report path (default stdout)");
    add_config_flags(fibered, cfg);

    auto* mahler = app.add_subcommand("mahler", "Mahler measure of a Laurent polynomial");
    std::string poly;
    bool force_quad = false;
    mahler->add_option("--poly", poly, "polynomial, e.g. \"1 - 3*z\" or \"1 + z1 + z2\"")->required();
    mahler->add_flag("--quadrature", force_quad, "force torus quadrature even for one variable");
    mahler->add_option("--out", out_path, "report path (default stdout)");
    add_config_flags(mahler, cfg);

    auto* norm = app.add_subcommand("norm", "Newton-polytope norm bounds per direction");
    std::string norm_pres, norm_poly;
    std::vector<std::string> dir_specs;
    auto* np = norm->add_option("--file", norm_pres, "presentation JSON file");
    norm->add_option("--poly", norm_poly, "raw determinant polynomial")->excludes(np);
    norm->add_option("--dir", dir_specs, "direction, comma separated, repeatable")->required();
    norm->add_option("--out", out_path, "report path (default stdout)");
    add_config_flags(norm, cfg);

    auto* basic = app.add_subcommand("basiccase", "spectral window check for det(P - t z Q)");
    std::string p_path, q_path, grid_spec;
    basic->add_option("--p", p_path, "matrix P JSON file (det = +-1)")->required();
    basic->add_option("--q", q_path, "matrix Q JSON file")->required();
    basic->add_option("--grid", grid_spec, "comma-separated t grid (default log grid)");
    basic->add_option("--out", out_path, "report path (default stdout)");
    add_config_flags(basic, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (knot->parsed()) {
            if (pd_path.empty() && pres_path.empty())
                throw ParseError("knot: need --pd or --presentation");
            return cmd_knot(pd_path, pres_path, cfg, out_path, samples_path);
        }
        if (torus->parsed()) return cmd_torus(tp, tq, cfg, out_path, samples_path);
        if (graph->parsed()) return cmd_graph(gx, cfg, out_path, samples_path);
        if (fibered->parsed()) return cmd_fibered(endo_path, chi, cfg, out_path);
        if (mahler->parsed()) return cmd_mahler(poly, force_quad, cfg, out_path);
        if (norm->parsed()) return cmd_norm(norm_pres, norm_poly, dir_specs, out_path);
        if (basic->parsed()) return cmd_basiccase(p_path, q_path, grid_spec, cfg, out_path);
    } catch (const SingularSelectionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
