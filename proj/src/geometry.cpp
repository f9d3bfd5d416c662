#include "bikeframe/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>

namespace bikeframe {

namespace {

double radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

// Junction positions in the z = 0 plane.
struct InPlaneLayout {
    Vec3 head_top, head_bottom, head_dir;
    Vec3 seat_top, seat_dir;
    Vec3 top_tube_head, down_tube_head;
    Vec3 top_tube_seat, seat_stay_seat;
};

InPlaneLayout in_plane_layout(const FrameParams& p) {
    InPlaneLayout g;
    const double hta = radians(p.head_tube_angle_deg);
    const double sta = radians(p.seat_tube_angle_deg);
    g.head_dir = Vec3(std::cos(hta), -std::sin(hta), 0.0);
    g.head_top = Vec3(p.reach, p.stack, 0.0);
    g.head_bottom = g.head_top + p.head_tube_length * g.head_dir;
    g.top_tube_head = g.head_top + p.head_tube_upper_offset * g.head_dir;
    g.down_tube_head = g.head_bottom - p.head_tube_lower_offset * g.head_dir;

    g.seat_dir = Vec3(-std::cos(sta), std::sin(sta), 0.0);
    g.seat_top = p.seat_tube_length * g.seat_dir;
    g.top_tube_seat = g.seat_top - p.seat_tube_top_tube_offset * g.seat_dir;
    g.seat_stay_seat = g.seat_top - p.seat_stay_junction_offset * g.seat_dir;
    return g;
}

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

// True when a head tube or seat tube junction ordering leaves a zero-length in-plane tube.
bool in_plane_degenerate(const FrameParams& p) {
    const auto g = in_plane_layout(p);
    const double head_mid = p.head_tube_length - p.head_tube_upper_offset - p.head_tube_lower_offset;
    return !(p.head_tube_upper_offset >= kMinTubeLength) ||
           !(p.head_tube_lower_offset >= kMinTubeLength) || !(head_mid >= kMinTubeLength) ||
           !(p.seat_tube_top_tube_offset <= p.seat_tube_length - kMinTubeLength) ||
           !((g.top_tube_head - g.top_tube_seat).norm() >= kMinTubeLength) ||
           !(g.down_tube_head.norm() >= kMinTubeLength);
}

class SkeletonBuilder {
public:
    std::size_t add_node(std::string label, const Vec3& position) {
        const std::size_t index = skeleton_.nodes.size();
        skeleton_.labels.emplace(label, index);
        skeleton_.nodes.push_back({std::move(label), position});
        return index;
    }

    void alias(const std::string& label, std::size_t index) { skeleton_.labels.emplace(label, index); }

    void add_tube(std::size_t a, std::size_t b, TubeKind kind, bool structural = true) {
        const double length = (skeleton_.nodes[b].position - skeleton_.nodes[a].position).norm();
        if (!(length >= kMinTubeLength)) {
            throw BuildFailure(std::string(to_string(kind)) + " segment has non-positive length");
        }
        skeleton_.tubes.push_back({a, b, kind, structural});
    }

    // Adds a stay from `root` to `tip`, split at `fraction` when a bridge node is requested.
    std::size_t add_stay(std::size_t root, std::size_t tip, TubeKind kind,
                         std::optional<double> fraction, const std::string& bridge_label) {
        if (!fraction) {
            add_tube(root, tip, kind);
            return root;
        }
        const Vec3& a = skeleton_.nodes[root].position;
        const Vec3& b = skeleton_.nodes[tip].position;
        const std::size_t mid = add_node(bridge_label, a + *fraction * (b - a));
        add_tube(root, mid, kind);
        add_tube(mid, tip, kind);
        return mid;
    }

    std::size_t at(std::string_view label) const { return skeleton_.at(label); }
    FrameSkeleton take() { return std::move(skeleton_); }

private:
    FrameSkeleton skeleton_;
};

}  // namespace

std::string_view to_string(TubeKind kind) {
    static constexpr std::array<std::string_view, kTubeKindCount> names{
        "TopTube", "DownTube", "SeatTube", "HeadTube", "BottomBracketShell",
        "ChainStay", "SeatStay", "ChainStayBridge", "SeatStayBridge"};
    return names[static_cast<std::size_t>(kind)];
}

std::string_view to_string(Violation violation) {
    static constexpr std::array<std::string_view, 6> names{
        "NonPositiveDimension", "AngleOutOfRange", "StayIntersectionFailure",
        "ThicknessExceedsRadius", "DegenerateTube", "BuildFailure"};
    return names[static_cast<std::size_t>(violation)];
}

std::optional<std::size_t> FrameSkeleton::find(std::string_view label) const {
    const auto it = labels.find(label);
    if (it == labels.end()) return std::nullopt;
    return it->second;
}

std::size_t FrameSkeleton::at(std::string_view label) const {
    if (auto i = find(label)) return *i;
    throw MissingLabel("skeleton has no node labeled '" + std::string(label) + "'");
}

double FrameSkeleton::tube_length(const Tube& tube) const {
    return (nodes[tube.end].position - nodes[tube.start].position).norm();
}

std::pair<double, double> tube_dimensions(const FrameParams& p, TubeKind kind) {
    switch (kind) {
        case TubeKind::TopTube: return {p.top_tube_od, p.top_tube_t};
        case TubeKind::DownTube: return {p.down_tube_od, p.down_tube_t};
        case TubeKind::SeatTube: return {p.seat_tube_od, p.seat_tube_t};
        case TubeKind::HeadTube: return {p.head_tube_od, p.head_tube_t};
        case TubeKind::BottomBracketShell: return {p.bb_shell_od, p.bb_shell_t};
        case TubeKind::ChainStay: return {p.chain_stay_od, p.chain_stay_t};
        case TubeKind::SeatStay: return {p.seat_stay_od, p.seat_stay_t};
        case TubeKind::ChainStayBridge: return {p.chain_stay_bridge_od, p.chain_stay_t};
        case TubeKind::SeatStayBridge: return {p.seat_stay_bridge_od, p.seat_stay_t};
    }
    return {0.0, 0.0};
}

SectionProperties section_for(const FrameParams& params, TubeKind kind) {
    const auto [od, t] = tube_dimensions(params, kind);
    return tube_section_properties(od, t);
}

FrameSkeleton build_skeleton(const FrameParams& p) {
    for (const auto& column : scalar_columns()) {
        if (!std::isfinite(p.*column.field)) {
            throw BuildFailure("non-finite parameter " + std::string(column.name));
        }
    }
    if (in_plane_degenerate(p)) {
        throw BuildFailure("head tube or seat tube junctions out of order");
    }
    const auto g = in_plane_layout(p);
    SkeletonBuilder b;

    const std::size_t bb = b.add_node("bb_center", Vec3::Zero());

    // Seat tube stations, measured from the top; junctions closer than the
    // minimum tube length share a node.
    struct Station {
        double distance;
        std::string label;
    };
    std::vector<Station> stations{{0.0, "seat_tube_top"},
                                  {p.seat_tube_top_tube_offset, "top_tube_seat_junction"},
                                  {p.seat_stay_junction_offset, "seat_stay_seat_junction"}};
    std::stable_sort(stations.begin(), stations.end(),
                     [](const Station& a, const Station& c) { return a.distance < c.distance; });
    if (!(stations.front().distance >= 0.0)) {
        throw BuildFailure("seat stay junction above the seat tube top");
    }
    std::vector<std::size_t> seat_chain;
    double last = 0.0;
    for (const auto& s : stations) {
        if (s.distance > p.seat_tube_length - kMinTubeLength) {
            if (s.distance >= p.seat_tube_length) {
                throw BuildFailure(s.label + " lies beyond the seat tube");
            }
            b.alias(s.label, bb);
            continue;
        }
        if (!seat_chain.empty() && s.distance - last < kMinTubeLength) {
            b.alias(s.label, seat_chain.back());
            continue;
        }
        seat_chain.push_back(b.add_node(s.label, g.seat_top - s.distance * g.seat_dir));
        last = s.distance;
    }
    seat_chain.push_back(bb);
    for (std::size_t i = 0; i + 1 < seat_chain.size(); ++i) {
        b.add_tube(seat_chain[i + 1], seat_chain[i], TubeKind::SeatTube);
    }

    const std::size_t head_top = b.add_node("head_tube_top", g.head_top);
    const std::size_t tt_head = b.add_node("top_tube_head_junction", g.top_tube_head);
    const std::size_t dt_head = b.add_node("down_tube_head_junction", g.down_tube_head);
    const std::size_t head_bottom = b.add_node("head_tube_bottom", g.head_bottom);
    b.add_tube(head_top, tt_head, TubeKind::HeadTube);
    b.add_tube(tt_head, dt_head, TubeKind::HeadTube);
    b.add_tube(dt_head, head_bottom, TubeKind::HeadTube);

    b.add_tube(b.at("top_tube_seat_junction"), tt_head, TubeKind::TopTube);
    b.add_tube(bb, dt_head, TubeKind::DownTube);

    // Bottom bracket shell along z, chain stay roots on the shell.
    const double h = p.chain_stay_bb_half_spacing;
    const double half_shell = p.bb_shell_length / 2.0;
    if (h > half_shell) throw BuildFailure("chain stay roots lie outside the bb shell");
    const std::size_t root_l = b.add_node("chain_stay_root_left", Vec3(0, 0, -h));
    const std::size_t root_r = b.add_node("chain_stay_root_right", Vec3(0, 0, h));
    b.add_tube(root_l, bb, TubeKind::BottomBracketShell);
    b.add_tube(bb, root_r, TubeKind::BottomBracketShell);
    if (half_shell - h >= kMinTubeLength) {
        const std::size_t end_l = b.add_node("bb_shell_end_left", Vec3(0, 0, -half_shell));
        const std::size_t end_r = b.add_node("bb_shell_end_right", Vec3(0, 0, half_shell));
        // The shell ends carry nothing; meshing them only adds very short,
        // very stiff elements that swamp the solve in round-off.
        b.add_tube(end_l, root_l, TubeKind::BottomBracketShell, false);
        b.add_tube(root_r, end_r, TubeKind::BottomBracketShell, false);
    }

    // Dropouts: chain_stay_length is the side-view distance from the bb.
    const double side_sq = p.chain_stay_length * p.chain_stay_length - p.bb_drop * p.bb_drop;
    if (!(side_sq > 0.0) || !(std::sqrt(side_sq) >= kMinTubeLength)) {
        throw BuildFailure("chain stay too short to reach the rear axle line");
    }
    const double dropout_x = -std::sqrt(side_sq);
    const double half_axle = p.rear_axle_spacing / 2.0;
    const std::size_t drop_l = b.add_node("dropout_left", Vec3(dropout_x, p.bb_drop, -half_axle));
    const std::size_t drop_r = b.add_node("dropout_right", Vec3(dropout_x, p.bb_drop, half_axle));

    const auto bridge_fraction = [](bool flag, double f) -> std::optional<double> {
        if (!flag) return std::nullopt;
        if (!(f > 0.0 && f < 1.0)) throw BuildFailure("bridge fraction outside (0, 1)");
        return f;
    };

    const auto cs_fraction = bridge_fraction(p.has_chain_stay_bridge, p.chain_stay_bridge_fraction);
    const std::size_t cs_l = b.add_stay(root_l, drop_l, TubeKind::ChainStay, cs_fraction,
                                        "chain_stay_bridge_left");
    const std::size_t cs_r = b.add_stay(root_r, drop_r, TubeKind::ChainStay, cs_fraction,
                                        "chain_stay_bridge_right");
    if (cs_fraction) b.add_tube(cs_l, cs_r, TubeKind::ChainStayBridge);

    // Seat stays start beside the seat tube; a short connector joins each
    // start point to the seat tube junction.
    const std::size_t ss_seat = b.at("seat_stay_seat_junction");
    const Vec3 lateral(0, 0, p.seat_stay_half_spacing);
    const std::size_t ss_l = b.add_node("seat_stay_junction_left", g.seat_stay_seat - lateral);
    const std::size_t ss_r = b.add_node("seat_stay_junction_right", g.seat_stay_seat + lateral);
    b.add_tube(ss_seat, ss_l, TubeKind::SeatStay);
    b.add_tube(ss_seat, ss_r, TubeKind::SeatStay);
    const auto ss_fraction = bridge_fraction(p.has_seat_stay_bridge, p.seat_stay_bridge_fraction);
    const std::size_t sb_l = b.add_stay(ss_l, drop_l, TubeKind::SeatStay, ss_fraction,
                                        "seat_stay_bridge_left");
    const std::size_t sb_r = b.add_stay(ss_r, drop_r, TubeKind::SeatStay, ss_fraction,
                                        "seat_stay_bridge_right");
    if (ss_fraction) b.add_tube(sb_l, sb_r, TubeKind::SeatStayBridge);

    return b.take();
}

FeasibilityReport check_feasibility(const FrameParams& p) {
    FeasibilityReport report;

    const std::array<double, 11> lengths{
        p.stack, p.reach, p.head_tube_length, p.seat_tube_length, p.seat_tube_top_tube_offset,
        p.head_tube_upper_offset, p.head_tube_lower_offset, p.chain_stay_length,
        p.rear_axle_spacing, p.seat_stay_half_spacing, p.bb_shell_length};
    const bool lengths_ok = std::all_of(lengths.begin(), lengths.end(), positive) &&
                            positive(p.chain_stay_bb_half_spacing) && std::isfinite(p.bb_drop);
    if (!lengths_ok) report.add(Violation::NonPositiveDimension);

    const auto check_section = [&](double od, double t) {
        if (!positive(od) || !positive(t)) {
            report.add(Violation::NonPositiveDimension);
        } else if (t >= od / 2.0) {
            report.add(Violation::ThicknessExceedsRadius);
        }
    };
    for (auto kind : {TubeKind::TopTube, TubeKind::DownTube, TubeKind::SeatTube,
                      TubeKind::HeadTube, TubeKind::BottomBracketShell, TubeKind::ChainStay,
                      TubeKind::SeatStay}) {
        const auto [od, t] = tube_dimensions(p, kind);
        check_section(od, t);
    }
    if (p.has_chain_stay_bridge) {
        check_section(p.chain_stay_bridge_od, p.chain_stay_t);
        if (!positive(p.chain_stay_bridge_fraction)) report.add(Violation::NonPositiveDimension);
    }
    if (p.has_seat_stay_bridge) {
        check_section(p.seat_stay_bridge_od, p.seat_stay_t);
        if (!positive(p.seat_stay_bridge_fraction)) report.add(Violation::NonPositiveDimension);
    }

    const auto angle_ok = [](double deg) { return deg > 0.0 && deg < 180.0; };
    const bool angles_ok = angle_ok(p.head_tube_angle_deg) && angle_ok(p.seat_tube_angle_deg);
    if (!angles_ok) report.add(Violation::AngleOutOfRange);

    // Seat stays must attach to the seat tube, chain stays to the bb shell.
    const bool seat_stay_attached = p.seat_stay_junction_offset >= 0.0 &&
                                    p.seat_stay_junction_offset < p.seat_tube_length;
    const bool chain_stay_attached = p.chain_stay_bb_half_spacing <= p.bb_shell_length / 2.0;
    if (!seat_stay_attached || !chain_stay_attached) {
        report.add(Violation::StayIntersectionFailure);
    }

    if (lengths_ok && angles_ok && in_plane_degenerate(p)) {
        report.add(Violation::DegenerateTube);
    }
    return report;
}

FeasibilityReport check_buildable(const FrameParams& params) {
    FeasibilityReport report = check_feasibility(params);
    if (!report.feasible) return report;
    try {
        const auto skeleton = build_skeleton(params);
        (void)skeleton;
    } catch (const BuildFailure&) {
        report.add(Violation::BuildFailure);
    } catch (const DegenerateTube&) {
        report.add(Violation::DegenerateTube);
    }
    return report;
}

void FeasibilityReport::add(Violation v) {
    if (!contains(v)) violations.push_back(v);
    feasible = false;
}

bool FeasibilityReport::contains(Violation v) const {
    return std::find(violations.begin(), violations.end(), v) != violations.end();
}

}  // namespace bikeframe
