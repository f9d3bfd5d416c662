#include "bikeframe/params.hpp"

namespace bikeframe {

const std::array<ScalarColumn, kGeometryCount + kDiameterCount + kThicknessCount>& scalar_columns() {
    static const std::array<ScalarColumn, kGeometryCount + kDiameterCount + kThicknessCount> columns{{
        {"stack", &FrameParams::stack},
        {"reach", &FrameParams::reach},
        {"head_tube_angle_deg", &FrameParams::head_tube_angle_deg},
        {"head_tube_length", &FrameParams::head_tube_length},
        {"seat_tube_angle_deg", &FrameParams::seat_tube_angle_deg},
        {"seat_tube_length", &FrameParams::seat_tube_length},
        {"seat_tube_top_tube_offset", &FrameParams::seat_tube_top_tube_offset},
        {"head_tube_upper_offset", &FrameParams::head_tube_upper_offset},
        {"head_tube_lower_offset", &FrameParams::head_tube_lower_offset},
        {"chain_stay_length", &FrameParams::chain_stay_length},
        {"bb_drop", &FrameParams::bb_drop},
        {"rear_axle_spacing", &FrameParams::rear_axle_spacing},
        {"chain_stay_bb_half_spacing", &FrameParams::chain_stay_bb_half_spacing},
        {"seat_stay_junction_offset", &FrameParams::seat_stay_junction_offset},
        {"seat_stay_half_spacing", &FrameParams::seat_stay_half_spacing},
        {"bb_shell_length", &FrameParams::bb_shell_length},
        {"chain_stay_bridge_fraction", &FrameParams::chain_stay_bridge_fraction},
        {"seat_stay_bridge_fraction", &FrameParams::seat_stay_bridge_fraction},
        {"top_tube_od", &FrameParams::top_tube_od},
        {"down_tube_od", &FrameParams::down_tube_od},
        {"seat_tube_od", &FrameParams::seat_tube_od},
        {"head_tube_od", &FrameParams::head_tube_od},
        {"bb_shell_od", &FrameParams::bb_shell_od},
        {"chain_stay_od", &FrameParams::chain_stay_od},
        {"seat_stay_od", &FrameParams::seat_stay_od},
        {"chain_stay_bridge_od", &FrameParams::chain_stay_bridge_od},
        {"seat_stay_bridge_od", &FrameParams::seat_stay_bridge_od},
        {"top_tube_t", &FrameParams::top_tube_t},
        {"down_tube_t", &FrameParams::down_tube_t},
        {"seat_tube_t", &FrameParams::seat_tube_t},
        {"head_tube_t", &FrameParams::head_tube_t},
        {"bb_shell_t", &FrameParams::bb_shell_t},
        {"chain_stay_t", &FrameParams::chain_stay_t},
        {"seat_stay_t", &FrameParams::seat_stay_t},
    }};
    return columns;
}

const std::array<ScalarField, kThicknessCount>& thickness_fields() {
    static const std::array<ScalarField, kThicknessCount> fields{
        &FrameParams::top_tube_t,  &FrameParams::down_tube_t,  &FrameParams::seat_tube_t,
        &FrameParams::head_tube_t, &FrameParams::bb_shell_t,   &FrameParams::chain_stay_t,
        &FrameParams::seat_stay_t,
    };
    return fields;
}

const std::array<std::string_view, kParameterCount>& parameter_names() {
    static const auto names = [] {
        std::array<std::string_view, kParameterCount> out{};
        std::size_t i = 0;
        for (const auto& column : scalar_columns()) out[i++] = column.name;
        out[i++] = kMaterialColumn;
        out[i++] = kChainStayBridgeColumn;
        out[i++] = kSeatStayBridgeColumn;
        return out;
    }();
    return names;
}

FrameParams reference_road_frame() {
    FrameParams p;
    p.stack = 0.565;
    p.reach = 0.385;
    p.head_tube_angle_deg = 73.0;
    p.head_tube_length = 0.150;
    p.seat_tube_angle_deg = 73.5;
    p.seat_tube_length = 0.540;
    p.seat_tube_top_tube_offset = 0.030;
    p.head_tube_upper_offset = 0.020;
    p.head_tube_lower_offset = 0.025;
    p.chain_stay_length = 0.410;
    p.bb_drop = 0.070;
    p.rear_axle_spacing = 0.130;
    p.chain_stay_bb_half_spacing = 0.030;
    p.seat_stay_junction_offset = 0.040;
    p.seat_stay_half_spacing = 0.018;
    p.bb_shell_length = 0.068;
    p.chain_stay_bridge_fraction = 0.25;
    p.seat_stay_bridge_fraction = 0.30;

    p.top_tube_od = 0.0286;
    p.down_tube_od = 0.0318;
    p.seat_tube_od = 0.0286;
    p.head_tube_od = 0.036;
    p.bb_shell_od = 0.040;
    p.chain_stay_od = 0.022;
    p.seat_stay_od = 0.016;
    p.chain_stay_bridge_od = 0.012;
    p.seat_stay_bridge_od = 0.012;

    p.top_tube_t = 0.0009;
    p.down_tube_t = 0.0009;
    p.seat_tube_t = 0.0009;
    p.head_tube_t = 0.0012;
    p.bb_shell_t = 0.0020;
    p.chain_stay_t = 0.0008;
    p.seat_stay_t = 0.0007;

    p.material = Material::Steel;
    p.has_chain_stay_bridge = false;
    p.has_seat_stay_bridge = true;
    return p;
}

}  // namespace bikeframe
