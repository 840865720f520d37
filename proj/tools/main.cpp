#include "fracsurf/field_io.hpp"
#include "fracsurf/harness.hpp"
#include "fracsurf/version.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

using namespace fracsurf;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_numerical = 2;
constexpr int exit_smallness = 3;

Json envelope(const std::string& command, Json config, Json payload) {
    Json j;
    j["toolkit_version"] = toolkit_version;
    j["command"] = command;
    j["config"] = std::move(config);
    j["report"] = std::move(payload);
    return j;
}

void emit(const Json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        write_text_file(out_path, text);
    }
}

std::vector<double> parse_list(const std::string& spec) {
    // "lo:hi:count" or a comma-separated list
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double lo = 0.0, hi = 0.0;
        int count = 0;
        if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 || count < 1)
            throw std::invalid_argument("expected lo:hi:count");
        for (int i = 0; i < count; ++i)
            out.push_back(count == 1 ? hi : lo + (hi - lo) * i / (count - 1));
        return out;
    }
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t next = spec.find(',', pos);
        if (next == std::string::npos) next = spec.size();
        out.push_back(std::stod(spec.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

Frame frame_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open field file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    const Json j = Json::parse(text);
    if (j.contains("e1")) {
        Frame f;
        f.e1 = field_from_json(j.at("e1").dump()).vec3;
        f.e2 = field_from_json(j.at("e2").dump()).vec3;
        f.u = field_from_json(j.at("u").dump()).vec3;
        if (f.invariant_defect() > 1e-6)
            throw std::invalid_argument("frame file violates the orthonormality invariants");
        return f;
    }
    const LoadedField lf = field_from_json(text);
    if (lf.components != 3)
        throw std::invalid_argument("expected an immersion (3 components) or frame object");
    return frame_from_immersion(lf.vec3).frame;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracsurf: fractional seminorms, Coulomb gauge lifting, and "
                 "empirical-constant verification on disk grids"};
    app.set_version_flag("--version", toolkit_version);
    app.require_subcommand(1);

    // ---- gen ----------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate fields, frames, and immersions");
    std::string gen_kind = "scalar", gen_grid = "disk", gen_out;
    int gen_n = 64;
    double gen_R = 1.0;
    SampleSpec gen_spec;
    std::uint64_t gen_stream = 0;
    gen->add_option("--kind", gen_kind, "scalar|unit|frame|stereographic")
        ->check(CLI::IsMember({"scalar", "unit", "frame", "stereographic"}));
    gen->add_option("--grid", gen_grid)->check(CLI::IsMember({"disk", "square"}));
    gen->add_option("--n", gen_n);
    gen->add_option("--R", gen_R);
    gen->add_option("--seed", gen_spec.seed);
    gen->add_option("--smoothness", gen_spec.smoothness);
    gen->add_option("--amplitude", gen_spec.amplitude);
    gen->add_option("--stream", gen_stream);
    gen->add_option("--out", gen_out)->required();

    // ---- energy -------------------------------------------------------
    auto* energy = app.add_subcommand("energy", "evaluate seminorms and energies");
    std::string en_op = "gagliardo", en_field, en_out, en_csv, en_slist;
    double en_s = 0.75, en_p = 0.0;
    energy->add_option("--op", en_op)
        ->check(CLI::IsMember({"gagliardo", "frac-normal", "bbm"}));
    energy->add_option("--field", en_field)->required();
    energy->add_option("--s", en_s);
    energy->add_option("--p", en_p);
    energy->add_option("--s-list", en_slist, "orders for bbm, e.g. 0.8,0.85,0.9,0.95");
    energy->add_option("--out", en_out);
    energy->add_option("--csv", en_csv);

    // ---- wente --------------------------------------------------------
    auto* wente = app.add_subcommand("wente", "solve the Wente problem for a pair (a, b)");
    std::string w_a, w_b, w_out;
    SolverOptions w_opt;
    wente->add_option("--a", w_a)->required();
    wente->add_option("--b", w_b)->required();
    wente->add_option("--tol", w_opt.tol);
    wente->add_option("--max-iter", w_opt.max_iter);
    wente->add_option("--out", w_out);

    // ---- gauge --------------------------------------------------------
    auto* gauge = app.add_subcommand("gauge", "Coulomb gauge on B(0,r)");
    std::string g_field, g_out;
    double g_r = 1.0;
    SolverOptions g_opt;
    gauge->add_option("--field", g_field)->required();
    gauge->add_option("--r", g_r);
    gauge->add_option("--tol", g_opt.tol);
    gauge->add_option("--max-iter", g_opt.max_iter);
    gauge->add_option("--out", g_out);

    // ---- lift ---------------------------------------------------------
    auto* lift = app.add_subcommand("lift", "continuity-argument lifting pipeline");
    std::string l_field, l_constants, l_out, l_csv, l_radii = "0.1:1.0:10";
    double l_s = 0.75;
    lift->add_option("--field", l_field)->required();
    lift->add_option("--s", l_s);
    lift->add_option("--radii", l_radii, "lo:hi:count");
    lift->add_option("--constant-file", l_constants,
                     "JSON with the empirical constant C (required, never defaulted)")
        ->required();
    lift->add_option("--out", l_out);
    lift->add_option("--csv", l_csv);

    // ---- spectral -----------------------------------------------------
    auto* spectral = app.add_subcommand("spectral", "Fourier-multiplier operators");
    std::string sp_op = "frac-laplacian", sp_field, sp_out;
    double sp_s = 0.5, sp_p = 2.0, sp_pad = 2.0;
    int sp_j = 0;
    spectral->add_option("--op", sp_op)
        ->check(CLI::IsMember({"frac-laplacian", "riesz-potential", "riesz-transform",
                               "lp-project", "triebel", "embed"}));
    spectral->add_option("--field", sp_field)->required();
    spectral->add_option("--s", sp_s);
    spectral->add_option("--p", sp_p);
    spectral->add_option("--j", sp_j);
    spectral->add_option("--pad", sp_pad);
    spectral->add_option("--out", sp_out);

    // ---- verify -------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "randomized verification suites");
    std::string v_suite, v_out;
    std::uint64_t v_seed = 1;
    long v_trials = 50;
    double v_s = 0.75, v_t = 0.75;
    int v_grid_n = 64;
    verify->add_option("--suite", v_suite)
        ->required()
        ->check(CLI::IsMember({"uwu", "frame", "wente", "kernel", "operator", "dyadic",
                               "harmonic", "collapse", "lift-constants"}));
    verify->add_option("--seed", v_seed);
    verify->add_option("--trials", v_trials);
    verify->add_option("--s", v_s);
    verify->add_option("--t", v_t);
    verify->add_option("--grid-n", v_grid_n);
    verify->add_option("--out", v_out);

    // ---- collapse -----------------------------------------------------
    auto* collapse = app.add_subcommand("collapse", "shrinking-immersion experiment");
    int c_kmax = 10, c_n = 128;
    double c_s = 0.75;
    std::string c_out;
    collapse->add_option("--k-max", c_kmax);
    collapse->add_option("--n", c_n);
    collapse->add_option("--s", c_s);
    collapse->add_option("--out", c_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            GridPtr grid = make_grid(gen_grid == "disk" ? GridKind::disk : GridKind::square,
                                     gen_R, gen_n);
            std::string payload;
            if (gen_kind == "scalar") {
                payload = field_to_json(gen_scalar(gen_spec, grid, gen_stream));
            } else if (gen_kind == "unit") {
                payload = field_to_json(gen_unit_field(gen_spec, grid, gen_stream));
            } else if (gen_kind == "frame") {
                const Frame f = gen_frame(gen_spec, grid, gen_stream);
                payload = std::string("{\"e1\":") + field_to_json(f.e1) +
                          ",\"e2\":" + field_to_json(f.e2) + ",\"u\":" + field_to_json(f.u) +
                          "}";
            } else {
                payload = field_to_json(stereographic_immersion(grid).phi);
            }
            write_text_file(gen_out, payload + "\n");
            return exit_ok;
        }

        if (*energy) {
            const LoadedField lf = load_field_file(en_field);
            Json config{{"op", en_op}, {"field", en_field}, {"s", en_s}, {"p", en_p}};
            if (en_op == "gagliardo") {
                const EnergyReport r =
                    lf.components == 3
                        ? gagliardo_seminorm(lf.vec3, en_s, en_p > 0.0 ? en_p : 2.0 / en_s)
                        : gagliardo_seminorm(lf.scalar, en_s, en_p > 0.0 ? en_p : 2.0 / en_s);
                emit(envelope("energy", config, to_json(r)), en_out);
            } else if (en_op == "frac-normal") {
                if (lf.components != 3)
                    throw std::invalid_argument("frac-normal needs 3 components");
                const EnergyReport r = frac_normal_energy(lf.vec3, en_s, en_p);
                emit(envelope("energy", config, to_json(r)), en_out);
            } else {
                if (lf.components != 3) throw std::invalid_argument("bbm needs 3 components");
                const std::vector<double> s_list =
                    en_slist.empty() ? std::vector<double>{0.8, 0.85, 0.9, 0.95}
                                     : parse_list(en_slist);
                config["s_list"] = s_list;
                const BbmReport r = bbm_limit(lf.vec3, s_list);
                if (!en_csv.empty()) write_text_file(en_csv, bbm_csv(r));
                emit(envelope("energy", config, to_json(r)), en_out);
            }
            return exit_ok;
        }

        if (*wente) {
            const LoadedField a = load_field_file(w_a);
            const LoadedField b = load_field_file(w_b);
            const SolveReport r = wente_solve(a.scalar, b.scalar, w_opt);
            emit(envelope("wente", Json{{"a", w_a}, {"b", w_b}, {"tol", w_opt.tol}},
                          to_json(r)),
                 w_out);
            return r.converged ? exit_ok : exit_numerical;
        }

        if (*gauge) {
            const Frame f = frame_from_file(g_field);
            const GaugeResult r = coulomb_gauge(f, g_r, g_opt);
            Json payload;
            payload["f_r"] = r.f_r;
            payload["div_residual"] = r.div_residual;
            payload["converged"] = r.converged;
            payload["theta"] = Json::parse(field_to_json(r.theta));
            emit(envelope("gauge", Json{{"field", g_field}, {"r", g_r}, {"tol", g_opt.tol}},
                          payload),
                 g_out);
            return r.converged ? exit_ok : exit_numerical;
        }

        if (*lift) {
            const Frame f = frame_from_file(l_field);
            std::ifstream cfs(l_constants);
            if (!cfs) throw std::runtime_error("cannot open constants file: " + l_constants);
            Json cj;
            cfs >> cj;
            // accept both a bare {"C": ...} and a `verify --suite lift-constants` report
            const double C = cj.contains("C") ? cj.at("C").get<double>()
                                              : cj.at("report").at("C").get<double>();
            const std::vector<double> radii = parse_list(l_radii);
            const LiftDiagnostics d = lifting_pipeline(f, l_s, radii, C);
            Json config{{"field", l_field},
                        {"s", l_s},
                        {"radii", radii},
                        {"constant_file", l_constants},
                        {"C", C}};
            if (!l_csv.empty()) write_text_file(l_csv, lift_csv(d));
            emit(envelope("lift", config, to_json(d)), l_out);
            return d.smallness_violated ? exit_smallness : exit_ok;
        }

        if (*spectral) {
            const LoadedField lf = load_field_file(sp_field);
            Json config{{"op", sp_op}, {"field", sp_field}, {"s", sp_s},
                        {"j", sp_j},   {"pad", sp_pad},     {"p", sp_p}};
            PeriodicField input;
            if (lf.is_periodic) {
                input = lf.periodic;
            } else if (lf.components == 1) {
                input = embed(lf.scalar, sp_pad);
            } else {
                throw std::invalid_argument("spectral operators need a scalar or periodic field");
            }
            if (sp_op == "embed") {
                write_text_file(sp_out.empty() ? sp_field + ".periodic.json" : sp_out,
                                field_to_json(input) + "\n");
                return exit_ok;
            }
            if (sp_op == "triebel") {
                const TriebelReport r = triebel_seminorm(input, sp_s, sp_p);
                emit(envelope("spectral", config,
                              Json{{"value", r.value},
                                   {"tail", r.tail},
                                   {"tail_warning", r.tail_warning},
                                   {"j_min", r.j_min},
                                   {"j_max", r.j_max}}),
                     sp_out);
                return exit_ok;
            }
            if (sp_op == "riesz-transform") {
                const auto r = riesz_transform(input);
                const std::string base = sp_out.empty() ? sp_field : sp_out;
                write_text_file(base + ".r1.json", field_to_json(r[0]) + "\n");
                write_text_file(base + ".r2.json", field_to_json(r[1]) + "\n");
                return exit_ok;
            }
            PeriodicField out;
            if (sp_op == "frac-laplacian") out = frac_laplacian(input, sp_s);
            if (sp_op == "riesz-potential") out = riesz_potential(input, sp_s);
            if (sp_op == "lp-project") out = lp_project(input, sp_j);
            write_text_file(sp_out.empty() ? sp_field + ".out.json" : sp_out,
                            field_to_json(out) + "\n");
            return exit_ok;
        }

        if (*verify) {
            Json config{{"suite", v_suite}, {"seed", v_seed}, {"trials", v_trials},
                        {"s", v_s},         {"t", v_t},       {"grid_n", v_grid_n}};
            SampleSpec spec;
            spec.seed = v_seed;
            spec.count = static_cast<int>(v_trials);
            Json payload;
            if (v_suite == "uwu") {
                GridPtr grid = make_grid(GridKind::disk, 1.0, v_grid_n);
                payload = to_json(check_uwu_equivalence(spec, v_s, grid));
            } else if (v_suite == "frame") {
                GridPtr grid = make_grid(GridKind::disk, 1.0, v_grid_n);
                payload = to_json(check_frame_estimate(spec, v_s, grid));
            } else if (v_suite == "wente") {
                GridPtr grid = make_grid(GridKind::disk, 1.0, v_grid_n);
                payload = Json::array();
                for (const auto& rep : check_wente_constant(spec, {0.6, 0.75, 0.9}, grid))
                    payload.push_back(to_json(rep));
            } else if (v_suite == "kernel") {
                payload = Json::array();
                for (const auto& rep : check_kernel_lemmas(v_seed, v_trials))
                    payload.push_back(to_json(rep));
            } else if (v_suite == "operator") {
                payload = Json::array();
                for (const auto& rep : check_operator_bounds(spec, std::min(v_s, 0.7), v_t,
                                                             std::min(v_grid_n, 16)))
                    payload.push_back(to_json(rep));
            } else if (v_suite == "dyadic") {
                payload = Json::array();
                for (const auto& rep :
                     check_dyadic_blocks(spec, std::min(v_s, 0.7), v_t))
                    payload.push_back(to_json(rep));
            } else if (v_suite == "harmonic") {
                payload = to_json(
                    check_harmonic_bound(v_seed, static_cast<int>(v_trials), v_grid_n, 0.5));
            } else if (v_suite == "collapse") {
                payload = to_json(collapse_experiment(10, v_grid_n, v_s));
            } else { // lift-constants
                GridPtr grid = make_grid(GridKind::disk, 1.0, v_grid_n);
                SampleSpec cal = spec;
                cal.count = std::min(spec.count, 20);
                const LiftConstants lc =
                    calibrate_lift_constant(cal, v_s, {0.25, 0.5, 0.75, 1.0}, grid);
                payload = Json{{"C", lc.C_direct},
                               {"C_composed", lc.C_composed},
                               {"c_wente", lc.c_wente},
                               {"c_frame", lc.c_frame}};
            }
            emit(envelope("verify", config, payload), v_out);
            return exit_ok;
        }

        if (*collapse) {
            const CollapseReport r = collapse_experiment(c_kmax, c_n, c_s);
            emit(envelope("collapse", Json{{"k_max", c_kmax}, {"n", c_n}, {"s", c_s}},
                          to_json(r)),
                 c_out);
            return exit_ok;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_validation;
}
