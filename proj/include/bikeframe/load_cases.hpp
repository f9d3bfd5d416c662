#pragma once

#include <array>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "bikeframe/beam_fea.hpp"
#include "bikeframe/params.hpp"

namespace bikeframe {

enum class LoadCaseId { InPlane, Transverse, Eccentric };

inline constexpr std::array<LoadCaseId, 3> kLoadCases{LoadCaseId::InPlane, LoadCaseId::Transverse,
                                                      LoadCaseId::Eccentric};

std::string_view to_string(LoadCaseId id);
std::optional<LoadCaseId> parse_load_case(std::string_view text);

struct SimulationConfig {
    int elements_per_tube = 16;
    double fos_threshold = 1.0;
    double inplane_force_N = 2000.0;
    double transverse_force_N = 500.0;
    double eccentric_force_N = 2000.0;
    double eccentric_moment_Nm = 140.0;

    // Replace the tabulated material values when set.
    std::optional<double> elastic_modulus;
    std::optional<double> shear_modulus;
    std::optional<double> density;
    std::optional<double> yield_strength;

    MaterialProperties material_for(Material material) const;
};

/// Flat `key = value` lines; `#` starts a comment. Keys are the field names
/// above. Unknown keys, bad numbers and non-positive magnitudes throw ParseError.
SimulationConfig parse_config(std::istream& in);
SimulationConfig read_config(const std::string& path);

enum class Status { Ok, GeometricInfeasible, BuildFailed, SimFailed };
enum class ValidityClass { Valid, StructuralFailure, GeometricInfeasible, BuildFailed, SimFailed };

inline constexpr std::array<ValidityClass, 5> kValidityClasses{
    ValidityClass::Valid, ValidityClass::StructuralFailure, ValidityClass::GeometricInfeasible,
    ValidityClass::BuildFailed, ValidityClass::SimFailed};

std::string_view to_string(Status status);
std::string_view to_string(ValidityClass validity);
std::optional<Status> parse_status(std::string_view text);
std::optional<ValidityClass> parse_validity(std::string_view text);

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

// Ten performance values; NaN marks a missing value.
struct PerformanceRecord {
    double inplane_bb_vertical_disp = kMissing;
    double inplane_bb_lateral_disp = kMissing;
    double inplane_dropout_vertical_disp = kMissing;
    double inplane_dropout_lateral_disp = kMissing;
    double inplane_safety_factor = kMissing;
    double transverse_bb_lateral_disp = kMissing;
    double eccentric_bb_vertical_disp = kMissing;
    double eccentric_bb_twist = kMissing;
    double eccentric_safety_factor = kMissing;
    double mass = kMissing;
    Status status = Status::Ok;
};

enum class PerformanceField {
    InplaneBbVerticalDisp,
    InplaneBbLateralDisp,
    InplaneDropoutVerticalDisp,
    InplaneDropoutLateralDisp,
    InplaneSafetyFactor,
    TransverseBbLateralDisp,
    EccentricBbVerticalDisp,
    EccentricBbTwist,
    EccentricSafetyFactor,
    Mass,
};

inline constexpr std::size_t kPerformanceFieldCount = 10;

const std::array<PerformanceField, kPerformanceFieldCount>& performance_fields();
std::string_view to_string(PerformanceField field);
std::optional<PerformanceField> parse_performance_field(std::string_view text);
double& field_ref(PerformanceRecord& record, PerformanceField field);
double field_value(const PerformanceRecord& record, PerformanceField field);

/// Displacements and the twist, i.e. the seven deflection measurements.
bool is_deflection(PerformanceField field);

/// Replaces constraints and loads of `model` with the recipe of `id`.
/// Throws MissingLabel when bb, dropout or head tube nodes are absent.
BeamModel apply_load_case(BeamModel model, LoadCaseId id, const SimulationConfig& config);

/// Feasibility, build, mesh, the three solves, stresses and mass. Failures
/// become the status of the record; nothing is thrown.
PerformanceRecord evaluate_frame(const FrameParams& params, const SimulationConfig& config);

/// Evaluates with the load cases solved in the given order.
PerformanceRecord evaluate_frame(const FrameParams& params, const SimulationConfig& config,
                                 const std::array<LoadCaseId, 3>& order);

ValidityClass classify_validity(const PerformanceRecord& record, double fos_threshold);

struct ConvergenceRow {
    int elements_per_tube;
    PerformanceRecord record;
};

/// Solves `only_case` (or every case when empty) at each subdivision level.
/// Rows for a level that fails carry the failure status.
std::vector<ConvergenceRow> convergence_study(const FrameParams& params,
                                              std::optional<LoadCaseId> only_case,
                                              const std::vector<int>& subdivisions,
                                              const SimulationConfig& config = {});

}  // namespace bikeframe
