#include "bikeframe/load_cases.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <span>
#include <string>

#include "text_util.hpp"

namespace bikeframe {

namespace {

constexpr std::array<std::string_view, 3> kCaseNames{"InPlane", "Transverse", "Eccentric"};
constexpr std::array<std::string_view, 4> kStatusNames{"Ok", "GeometricInfeasible", "BuildFailed",
                                                       "SimFailed"};
constexpr std::array<std::string_view, 5> kValidityNames{
    "Valid", "StructuralFailure", "GeometricInfeasible", "BuildFailed", "SimFailed"};

struct FieldDef {
    std::string_view name;
    double PerformanceRecord::*member;
};

constexpr std::array<FieldDef, kPerformanceFieldCount> kFieldDefs{{
    {"inplane_bb_vertical_disp", &PerformanceRecord::inplane_bb_vertical_disp},
    {"inplane_bb_lateral_disp", &PerformanceRecord::inplane_bb_lateral_disp},
    {"inplane_dropout_vertical_disp", &PerformanceRecord::inplane_dropout_vertical_disp},
    {"inplane_dropout_lateral_disp", &PerformanceRecord::inplane_dropout_lateral_disp},
    {"inplane_safety_factor", &PerformanceRecord::inplane_safety_factor},
    {"transverse_bb_lateral_disp", &PerformanceRecord::transverse_bb_lateral_disp},
    {"eccentric_bb_vertical_disp", &PerformanceRecord::eccentric_bb_vertical_disp},
    {"eccentric_bb_twist", &PerformanceRecord::eccentric_bb_twist},
    {"eccentric_safety_factor", &PerformanceRecord::eccentric_safety_factor},
    {"mass", &PerformanceRecord::mass},
}};

template <typename Enum, std::size_t N>
std::optional<Enum> parse_enum(const std::array<std::string_view, N>& names, std::string_view text) {
    for (std::size_t i = 0; i < N; ++i) {
        if (names[i] == text) return static_cast<Enum>(i);
    }
    return std::nullopt;
}

PerformanceRecord failed(Status status) {
    PerformanceRecord r;
    r.status = status;
    return r;
}

void solve_case(const BeamModel& base, LoadCaseId id, const SimulationConfig& config,
                double yield_strength, PerformanceRecord& record) {
    const BeamModel model = apply_load_case(base, id, config);
    const SolutionField field = assemble_and_solve(model);
    const Vec3 bb = field.translation(model.node("bb_center"));
    switch (id) {
        case LoadCaseId::InPlane: {
            const Vec3 left = field.translation(model.node("dropout_left"));
            const Vec3 right = field.translation(model.node("dropout_right"));
            record.inplane_bb_vertical_disp = bb.y();
            record.inplane_bb_lateral_disp = bb.z();
            record.inplane_dropout_vertical_disp = 0.5 * (left.y() + right.y());
            record.inplane_dropout_lateral_disp = 0.5 * (left.z() + right.z());
            record.inplane_safety_factor =
                compute_stress_summary(model, field, yield_strength).safety_factor;
            break;
        }
        case LoadCaseId::Transverse:
            record.transverse_bb_lateral_disp = bb.z();
            break;
        case LoadCaseId::Eccentric:
            record.eccentric_bb_vertical_disp = bb.y();
            record.eccentric_bb_twist = field.rotation(model.node("bb_center")).x();
            record.eccentric_safety_factor =
                compute_stress_summary(model, field, yield_strength).safety_factor;
            break;
    }
}

bool measured_by(LoadCaseId id, PerformanceField f) {
    using F = PerformanceField;
    switch (id) {
        case LoadCaseId::InPlane:
            return f == F::InplaneBbVerticalDisp || f == F::InplaneBbLateralDisp ||
                   f == F::InplaneDropoutVerticalDisp || f == F::InplaneDropoutLateralDisp ||
                   f == F::InplaneSafetyFactor;
        case LoadCaseId::Transverse: return f == F::TransverseBbLateralDisp;
        case LoadCaseId::Eccentric:
            return f == F::EccentricBbVerticalDisp || f == F::EccentricBbTwist ||
                   f == F::EccentricSafetyFactor;
    }
    return false;
}

PerformanceRecord evaluate_cases(const FrameParams& params, const SimulationConfig& config,
                                 std::span<const LoadCaseId> cases) {
    if (!check_feasibility(params).feasible) return failed(Status::GeometricInfeasible);

    FrameSkeleton skeleton;
    BeamModel model;
    try {
        skeleton = build_skeleton(params);
        model = discretize(skeleton, params, config.elements_per_tube);
    } catch (const BuildFailure&) {
        return failed(Status::BuildFailed);
    } catch (const DegenerateTube&) {
        return failed(Status::BuildFailed);
    } catch (const DomainError&) {
        return failed(Status::BuildFailed);
    }

    const MaterialProperties material = config.material_for(params.material);
    for (auto& m : model.materials) m = material;

    PerformanceRecord record;
    try {
        for (const auto id : cases) solve_case(model, id, config, material.yield_strength, record);
    } catch (const SingularSystem&) {
        return failed(Status::SimFailed);
    } catch (const Error&) {
        return failed(Status::SimFailed);
    }
    record.mass = compute_mass(skeleton, params, material.density);

    // Fields of cases not run stay NaN; everything else must be finite.
    for (const auto f : performance_fields()) {
        const bool ran = f == PerformanceField::Mass ||
                         std::any_of(cases.begin(), cases.end(),
                                     [&](LoadCaseId id) { return measured_by(id, f); });
        if (ran && !std::isfinite(field_value(record, f))) return failed(Status::SimFailed);
    }
    return record;
}

}  // namespace

std::string_view to_string(LoadCaseId id) { return kCaseNames[static_cast<std::size_t>(id)]; }

std::optional<LoadCaseId> parse_load_case(std::string_view text) {
    return parse_enum<LoadCaseId>(kCaseNames, text);
}

std::string_view to_string(Status status) { return kStatusNames[static_cast<std::size_t>(status)]; }

std::string_view to_string(ValidityClass validity) {
    return kValidityNames[static_cast<std::size_t>(validity)];
}

std::optional<Status> parse_status(std::string_view text) {
    return parse_enum<Status>(kStatusNames, text);
}

std::optional<ValidityClass> parse_validity(std::string_view text) {
    return parse_enum<ValidityClass>(kValidityNames, text);
}

const std::array<PerformanceField, kPerformanceFieldCount>& performance_fields() {
    static const auto fields = [] {
        std::array<PerformanceField, kPerformanceFieldCount> out{};
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<PerformanceField>(i);
        return out;
    }();
    return fields;
}

std::string_view to_string(PerformanceField field) {
    return kFieldDefs[static_cast<std::size_t>(field)].name;
}

std::optional<PerformanceField> parse_performance_field(std::string_view text) {
    for (std::size_t i = 0; i < kFieldDefs.size(); ++i) {
        if (kFieldDefs[i].name == text) return static_cast<PerformanceField>(i);
    }
    return std::nullopt;
}

double& field_ref(PerformanceRecord& record, PerformanceField field) {
    return record.*kFieldDefs[static_cast<std::size_t>(field)].member;
}

double field_value(const PerformanceRecord& record, PerformanceField field) {
    return record.*kFieldDefs[static_cast<std::size_t>(field)].member;
}

bool is_deflection(PerformanceField field) {
    return field != PerformanceField::InplaneSafetyFactor &&
           field != PerformanceField::EccentricSafetyFactor && field != PerformanceField::Mass;
}

MaterialProperties SimulationConfig::material_for(Material material) const {
    MaterialProperties m = lookup(material);
    if (elastic_modulus) m.elastic_modulus = *elastic_modulus;
    if (shear_modulus) m.shear_modulus = *shear_modulus;
    if (density) m.density = *density;
    if (yield_strength) m.yield_strength = *yield_strength;
    return m;
}

SimulationConfig parse_config(std::istream& in) {
    SimulationConfig config;
    std::set<std::string, std::less<>> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text(line);
        if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        text = detail::trim(text);
        if (text.empty()) continue;

        const auto eq = text.find('=');
        const auto where = "config line " + std::to_string(line_no) + ": ";
        if (eq == std::string_view::npos) throw ParseError(where + "expected key = value");
        const auto key = detail::trim(text.substr(0, eq));
        const auto raw = detail::trim(text.substr(eq + 1));
        if (!seen.emplace(key).second) throw ParseError(where + "duplicate key '" + std::string(key) + "'");

        if (key == "elements_per_tube") {
            const auto n = detail::parse_integer<int>(raw);
            if (!n || *n < 1) throw ParseError(where + "elements_per_tube must be a positive integer");
            config.elements_per_tube = *n;
            continue;
        }
        const auto value = detail::parse_double(raw);
        if (!value || !std::isfinite(*value) || *value <= 0.0) {
            throw ParseError(where + "'" + std::string(key) + "' needs a positive number");
        }
        if (key == "fos_threshold") config.fos_threshold = *value;
        else if (key == "inplane_force_N") config.inplane_force_N = *value;
        else if (key == "transverse_force_N") config.transverse_force_N = *value;
        else if (key == "eccentric_force_N") config.eccentric_force_N = *value;
        else if (key == "eccentric_moment_Nm") config.eccentric_moment_Nm = *value;
        else if (key == "elastic_modulus") config.elastic_modulus = *value;
        else if (key == "shear_modulus") config.shear_modulus = *value;
        else if (key == "density") config.density = *value;
        else if (key == "yield_strength") config.yield_strength = *value;
        else throw ParseError(where + "unknown key '" + std::string(key) + "'");
    }
    return config;
}

SimulationConfig read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    return parse_config(in);
}

BeamModel apply_load_case(BeamModel model, LoadCaseId id, const SimulationConfig& config) {
    std::fill(model.constraints.begin(), model.constraints.end(), DofMask{});
    std::fill(model.loads.begin(), model.loads.end(), Vector6d::Zero());

    bool has_head_tube = false;
    for (const auto& e : model.elements) {
        if (e.group != static_cast<int>(TubeKind::HeadTube)) continue;
        model.constraints[e.node_a] = kFixedAll;
        model.constraints[e.node_b] = kFixedAll;
        has_head_tube = true;
    }
    if (!has_head_tube) throw MissingLabel("model has no head tube elements");

    const std::size_t bb = model.node("bb_center");
    const std::size_t left = model.node("dropout_left");
    const std::size_t right = model.node("dropout_right");

    switch (id) {
        case LoadCaseId::InPlane:
            model.loads[left](1) += config.inplane_force_N / 2.0;
            model.loads[right](1) += config.inplane_force_N / 2.0;
            model.loads[bb](1) -= config.inplane_force_N;
            break;
        case LoadCaseId::Transverse:
            model.constraints[left].set(2);
            model.constraints[right].set(2);
            model.loads[bb](2) += config.transverse_force_N;
            break;
        case LoadCaseId::Eccentric:
            for (const auto n : {left, right}) {
                model.constraints[n].set(1);
                model.constraints[n].set(2);
            }
            model.loads[bb](1) -= config.eccentric_force_N;
            model.loads[bb](3) += config.eccentric_moment_Nm;
            break;
    }
    return model;
}

PerformanceRecord evaluate_frame(const FrameParams& params, const SimulationConfig& config) {
    return evaluate_cases(params, config, kLoadCases);
}

PerformanceRecord evaluate_frame(const FrameParams& params, const SimulationConfig& config,
                                 const std::array<LoadCaseId, 3>& order) {
    return evaluate_cases(params, config, order);
}

ValidityClass classify_validity(const PerformanceRecord& record, double fos_threshold) {
    switch (record.status) {
        case Status::GeometricInfeasible: return ValidityClass::GeometricInfeasible;
        case Status::BuildFailed: return ValidityClass::BuildFailed;
        case Status::SimFailed: return ValidityClass::SimFailed;
        case Status::Ok: break;
    }
    const bool holds = record.inplane_safety_factor >= fos_threshold &&
                       record.eccentric_safety_factor >= fos_threshold;
    return holds ? ValidityClass::Valid : ValidityClass::StructuralFailure;
}

std::vector<ConvergenceRow> convergence_study(const FrameParams& params,
                                              std::optional<LoadCaseId> only_case,
                                              const std::vector<int>& subdivisions,
                                              const SimulationConfig& config) {
    std::vector<ConvergenceRow> rows;
    rows.reserve(subdivisions.size());
    for (const int level : subdivisions) {
        SimulationConfig c = config;
        c.elements_per_tube = level;
        PerformanceRecord record =
            only_case ? evaluate_cases(params, c, std::span<const LoadCaseId>(&*only_case, 1))
                      : evaluate_cases(params, c, kLoadCases);
        rows.push_back({level, record});
    }
    return rows;
}

}  // namespace bikeframe
