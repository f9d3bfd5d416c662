#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "bikeframe/materials.hpp"

namespace bikeframe {

// The 37-value frame design vector. Lengths in meters, angles in degrees.
// Offsets along a tube are measured from the named end of that tube.
struct FrameParams {
    // Geometry relations (18).
    double stack = 0;                       // bb center to head tube top, vertical
    double reach = 0;                       // bb center to head tube top, horizontal
    double head_tube_angle_deg = 0;         // from horizontal
    double head_tube_length = 0;
    double seat_tube_angle_deg = 0;         // from horizontal
    double seat_tube_length = 0;            // bb center to seat tube top
    double seat_tube_top_tube_offset = 0;   // seat tube top down to top tube junction
    double head_tube_upper_offset = 0;      // head tube top down to top tube junction
    double head_tube_lower_offset = 0;      // head tube bottom up to down tube junction
    double chain_stay_length = 0;           // side-view bb center to dropout
    double bb_drop = 0;                     // bb below the rear axle line
    double rear_axle_spacing = 0;
    double chain_stay_bb_half_spacing = 0;  // lateral chain stay root position on the shell
    double seat_stay_junction_offset = 0;   // seat tube top down to seat stay junction
    double seat_stay_half_spacing = 0;
    double bb_shell_length = 0;
    double chain_stay_bridge_fraction = 0;  // along the stay, from the bb end
    double seat_stay_bridge_fraction = 0;   // along the stay, from the seat tube end

    // Outer diameters (9).
    double top_tube_od = 0;
    double down_tube_od = 0;
    double seat_tube_od = 0;
    double head_tube_od = 0;
    double bb_shell_od = 0;
    double chain_stay_od = 0;
    double seat_stay_od = 0;
    double chain_stay_bridge_od = 0;
    double seat_stay_bridge_od = 0;

    // Wall thicknesses (7).
    double top_tube_t = 0;
    double down_tube_t = 0;
    double seat_tube_t = 0;
    double head_tube_t = 0;
    double bb_shell_t = 0;
    double chain_stay_t = 0;
    double seat_stay_t = 0;

    Material material = Material::Steel;
    bool has_chain_stay_bridge = false;
    bool has_seat_stay_bridge = false;

    bool operator==(const FrameParams&) const = default;
};

using ScalarField = double FrameParams::*;

struct ScalarColumn {
    std::string_view name;
    ScalarField field;
};

inline constexpr std::size_t kGeometryCount = 18;
inline constexpr std::size_t kDiameterCount = 9;
inline constexpr std::size_t kThicknessCount = 7;
inline constexpr std::size_t kParameterCount = 37;

/// Continuous columns in canonical order: geometry, diameters, thicknesses.
const std::array<ScalarColumn, kGeometryCount + kDiameterCount + kThicknessCount>& scalar_columns();

/// The seven thickness fields, in the order the sampler fills them.
const std::array<ScalarField, kThicknessCount>& thickness_fields();

inline constexpr std::string_view kMaterialColumn = "material";
inline constexpr std::string_view kChainStayBridgeColumn = "has_chain_stay_bridge";
inline constexpr std::string_view kSeatStayBridgeColumn = "has_seat_stay_bridge";

/// All 37 column names in canonical order.
const std::array<std::string_view, kParameterCount>& parameter_names();

/// A conventional steel road frame (56 cm class) with a seat stay bridge.
FrameParams reference_road_frame();

}  // namespace bikeframe
