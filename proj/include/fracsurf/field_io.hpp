#pragma once

#include "fracsurf/fields.hpp"
#include "fracsurf/frames.hpp"
#include "fracsurf/harness.hpp"
#include "fracsurf/sobolev.hpp"
#include "fracsurf/spectral.hpp"

#include <json.hpp>

#include <string>

namespace fracsurf {

using Json = nlohmann::ordered_json;

/// Field files: {"grid":{"kind","R","n"},"components":k,"values":[...]} with
/// values row-major over the full lattice, unmasked nodes stored as null and
/// reals carrying 17 significant digits. Writing is fully deterministic.
std::string field_to_json(const ScalarField& f);
std::string field_to_json(const VecField2& f);
std::string field_to_json(const VecField3& f);
std::string field_to_json(const PeriodicField& f);

struct LoadedField {
    GridPtr grid;           // null for periodic fields
    int components = 0;
    ScalarField scalar;     // components == 1
    VecField2 vec2;         // components == 2
    VecField3 vec3;         // components == 3
    PeriodicField periodic; // kind "square-periodic"
    bool is_periodic = false;
};

LoadedField field_from_json(const std::string& text);
LoadedField load_field_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// 17-significant-digit decimal form (round-trips doubles exactly).
std::string format_real(double x);

Json to_json(const EnergyReport& r);
Json to_json(const BbmReport& r);
Json to_json(const LiftDiagnostics& d);
Json to_json(const SolveReport& r);
Json to_json(const NeumannReport& r);
Json to_json(const ConstantReport& r);
Json to_json(const CollapseReport& r);

std::string lift_csv(const LiftDiagnostics& d);
std::string bbm_csv(const BbmReport& r);

} // namespace fracsurf
