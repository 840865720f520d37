#include "fracsurf/field_io.hpp"
#include "fracsurf/version.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fracsurf {

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

void append_grid_header(std::string& out, const Grid& g, int components) {
    out += "{\"grid\":{\"kind\":\"";
    out += Grid::kind_name(g.kind);
    out += "\",\"R\":";
    out += format_real(g.R);
    out += ",\"n\":";
    out += std::to_string(g.n);
    if (g.mask_radius != g.R) {
        out += ",\"mask_radius\":";
        out += format_real(g.mask_radius);
    }
    out += "},\"components\":";
    out += std::to_string(components);
    out += ",\"values\":[";
}

template <class T, class Emit>
std::string field_json(const Field<T>& f, int components, Emit&& emit) {
    const Grid& g = *f.grid;
    std::string out;
    out.reserve(static_cast<std::size_t>(g.n) * g.n * 20 * components);
    append_grid_header(out, g, components);
    bool first = true;
    for (int j = 0; j < g.n; ++j) {
        for (int i = 0; i < g.n; ++i) {
            if (!first) out += ',';
            first = false;
            const std::int32_t c = g.at(i, j);
            if (c < 0) {
                out += "null";
            } else {
                emit(out, f.v[c]);
            }
        }
    }
    out += "]}";
    return out;
}

} // namespace

std::string field_to_json(const ScalarField& f) {
    return field_json(f, 1, [](std::string& out, double v) { out += format_real(v); });
}

std::string field_to_json(const VecField2& f) {
    return field_json(f, 2, [](std::string& out, const Vec2& v) {
        out += '[';
        out += format_real(v.x);
        out += ',';
        out += format_real(v.y);
        out += ']';
    });
}

std::string field_to_json(const VecField3& f) {
    return field_json(f, 3, [](std::string& out, const Vec3& v) {
        out += '[';
        out += format_real(v.x);
        out += ',';
        out += format_real(v.y);
        out += ',';
        out += format_real(v.z);
        out += ']';
    });
}

std::string field_to_json(const PeriodicField& f) {
    std::string out;
    out.reserve(f.v.size() * 20);
    out += "{\"grid\":{\"kind\":\"square-periodic\",\"R\":";
    out += format_real(0.5 * f.side);
    out += ",\"n\":";
    out += std::to_string(f.n);
    out += "},\"components\":1,\"values\":[";
    for (std::size_t i = 0; i < f.v.size(); ++i) {
        if (i) out += ',';
        out += format_real(f.v[i]);
    }
    out += "]}";
    return out;
}

LoadedField field_from_json(const std::string& text) {
    const Json j = Json::parse(text);
    LoadedField out;
    const std::string kind = j.at("grid").at("kind").get<std::string>();
    const double R = j.at("grid").at("R").get<double>();
    const int n = j.at("grid").at("n").get<int>();
    out.components = j.at("components").get<int>();
    const auto& vals = j.at("values");

    if (kind == "square-periodic") {
        out.is_periodic = true;
        out.periodic = PeriodicField(2.0 * R, n);
        if (static_cast<int>(vals.size()) != n * n)
            throw std::invalid_argument("field_from_json: periodic value count mismatch");
        for (int i = 0; i < n * n; ++i) out.periodic.v[i] = vals[i].get<double>();
        return out;
    }

    GridPtr g = make_grid(kind == "disk" ? GridKind::disk : GridKind::square, R, n);
    if (j.at("grid").contains("mask_radius"))
        g = restrict_grid(g, j.at("grid").at("mask_radius").get<double>());
    out.grid = g;
    if (static_cast<int>(vals.size()) != n * n)
        throw std::invalid_argument("field_from_json: value count mismatch");

    auto expect_masked = [&](int idx, bool masked) {
        if (vals[idx].is_null() == masked)
            throw std::invalid_argument("field_from_json: null pattern disagrees with mask");
    };
    if (out.components == 1) out.scalar = ScalarField(g);
    if (out.components == 2) out.vec2 = VecField2(g);
    if (out.components == 3) out.vec3 = VecField3(g);
    for (int jj = 0; jj < n; ++jj) {
        for (int ii = 0; ii < n; ++ii) {
            const int idx = jj * n + ii;
            const std::int32_t c = g->at(ii, jj);
            expect_masked(idx, c >= 0);
            if (c < 0) continue;
            if (out.components == 1) {
                out.scalar.v[c] = vals[idx].get<double>();
            } else if (out.components == 2) {
                out.vec2.v[c] = Vec2{vals[idx][0].get<double>(), vals[idx][1].get<double>()};
            } else if (out.components == 3) {
                out.vec3.v[c] = Vec3{vals[idx][0].get<double>(), vals[idx][1].get<double>(),
                                     vals[idx][2].get<double>()};
            } else {
                throw std::invalid_argument("field_from_json: unsupported component count");
            }
        }
    }
    return out;
}

LoadedField load_field_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open field file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return field_from_json(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

Json to_json(const EnergyReport& r) {
    Json j;
    j["value"] = r.value;
    j["s"] = r.s;
    j["p"] = r.p;
    j["domain"] = {{"kind", Grid::kind_name(r.grid_kind)},
                   {"R", r.grid_R},
                   {"mask_radius", r.mask_radius},
                   {"n", r.grid_n}};
    j["quadrature"] = {{"diagonal_excluded", r.diagonal_excluded}, {"pair_count", r.pair_count}};
    return j;
}

Json to_json(const BbmReport& r) {
    Json j;
    j["s_values"] = r.s_values;
    j["weighted_values"] = r.weighted;
    j["w12"] = r.w12;
    j["extrapolated"] = r.extrapolated;
    j["fitted_constant"] = r.fitted_constant;
    return j;
}

namespace {
const char* branch_name(LiftBranch b) {
    switch (b) {
        case LiftBranch::lower: return "lower";
        case LiftBranch::upper: return "upper";
        default: return "indeterminate";
    }
}
} // namespace

Json to_json(const LiftDiagnostics& d) {
    Json j;
    j["radii"] = d.radii;
    j["f_values"] = d.f_values;
    j["F1"] = d.F1;
    j["F2"] = d.F2;
    j["wente_norms"] = d.wente_norms;
    j["branch"] = branch_name(d.branch);
    j["smallness_violated"] = d.smallness_violated;
    j["C_used"] = d.C_used;
    j["epsilon"] = d.epsilon;
    j["smallness_threshold"] = d.smallness_threshold;
    j["final_connection_norm"] = d.final_connection_norm;
    j["final_ratio"] = d.final_ratio;
    return j;
}

Json to_json(const SolveReport& r) {
    Json j;
    j["residual"] = r.residual;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["boundary"] = r.boundary == BoundaryKind::dirichlet ? "dirichlet" : "neumann-mean-zero";
    j["solution"] = Json::parse(field_to_json(r.solution));
    return j;
}

Json to_json(const NeumannReport& r) {
    Json j;
    j["minimum"] = r.minimum;
    j["residual"] = r.residual;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["boundary"] = "neumann-mean-zero";
    j["theta"] = Json::parse(field_to_json(r.theta));
    return j;
}

Json to_json(const ConstantReport& r) {
    Json j;
    j["inequality_id"] = r.inequality_id;
    j["max_ratio"] = r.max_ratio;
    j["violations"] = r.violations;
    j["skipped_small_denominator"] = r.skipped_small_denominator;
    j["fitted"] = r.fitted;
    j["extra"] = r.extra;
    if (!r.notes.empty()) j["notes"] = r.notes;
    j["ratios"] = r.ratios;
    return j;
}

Json to_json(const CollapseReport& r) {
    Json j;
    Json steps = Json::array();
    for (const CollapseStep& s : r.steps) {
        steps.push_back({{"scale", s.scale},
                         {"w_s", s.w_s},
                         {"grad_phi_l2", s.grad_phi_l2},
                         {"lambda_shift_defect", s.lambda_shift_defect},
                         {"int_lambda_h_minus", s.int_lambda_h_minus}});
    }
    j["steps"] = steps;
    j["w_max_rel_drift"] = r.w_max_rel_drift;
    j["grad_scaling_defect"] = r.grad_scaling_defect;
    j["slope"] = r.slope;
    j["slope_expected"] = r.slope_expected;
    return j;
}

std::string lift_csv(const LiftDiagnostics& d) {
    std::string out = "r,f,F1,F2\n";
    for (std::size_t i = 0; i < d.radii.size(); ++i) {
        out += format_real(d.radii[i]);
        out += ',';
        out += format_real(d.f_values[i]);
        out += ',';
        out += format_real(i < d.F1.size() ? d.F1[i] : 0.0);
        out += ',';
        out += format_real(i < d.F2.size() ? d.F2[i] : 0.0);
        out += '\n';
    }
    return out;
}

std::string bbm_csv(const BbmReport& r) {
    std::string out = "s,weighted\n";
    for (std::size_t i = 0; i < r.s_values.size(); ++i) {
        out += format_real(r.s_values[i]);
        out += ',';
        out += format_real(r.weighted[i]);
        out += '\n';
    }
    return out;
}

} // namespace fracsurf
