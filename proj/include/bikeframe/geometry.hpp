#pragma once

#include <Eigen/Core>

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bikeframe/errors.hpp"
#include "bikeframe/params.hpp"

namespace bikeframe {

using Vec3 = Eigen::Vector3d;

/// Closed-form properties of a thin-walled circular tube.
template <typename Scalar>
struct TubeSection {
    Scalar area;
    Scalar bending_inertia;   // about any diameter
    Scalar torsion_constant;  // polar, J = 2I
    Scalar outer_radius;
};

using SectionProperties = TubeSection<double>;

/// Annulus section of outer diameter `od` and wall `t`. `t == od / 2` is the
/// solid-rod limit. Throws DomainError unless 0 < t <= od / 2.
template <typename Scalar>
TubeSection<Scalar> tube_section_properties(Scalar od, Scalar t) {
    using std::pow;
    if (!(t > Scalar(0)) || !(od > Scalar(0)) || t > od / Scalar(2)) {
        throw DomainError("tube section requires 0 < t <= od/2");
    }
    const Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar ro = od / Scalar(2);
    const Scalar ri = ro - t;
    const Scalar id = Scalar(2) * ri;
    TubeSection<Scalar> s;
    s.area = pi * (ro * ro - ri * ri);
    s.bending_inertia = pi * (pow(od, 4) - pow(id, 4)) / Scalar(64);
    s.torsion_constant = Scalar(2) * s.bending_inertia;
    s.outer_radius = ro;
    return s;
}

// Each kind owns one cross section; the kind doubles as the section id.
enum class TubeKind {
    TopTube,
    DownTube,
    SeatTube,
    HeadTube,
    BottomBracketShell,
    ChainStay,
    SeatStay,
    ChainStayBridge,
    SeatStayBridge,
};

inline constexpr std::size_t kTubeKindCount = 9;

std::string_view to_string(TubeKind kind);

struct Tube {
    std::size_t start;
    std::size_t end;
    TubeKind kind;
    bool structural = true;  // false: unloaded end stub, counted for mass only
};

struct SkeletonNode {
    std::string label;
    Vec3 position;
};

// Frame wireframe: x forward, y up, z lateral right, bb center at the origin.
struct FrameSkeleton {
    std::vector<SkeletonNode> nodes;
    std::vector<Tube> tubes;
    // Every label, including aliases of merged junctions, mapped to its node.
    std::map<std::string, std::size_t, std::less<>> labels;

    std::optional<std::size_t> find(std::string_view label) const;
    /// Throws MissingLabel.
    std::size_t at(std::string_view label) const;
    double tube_length(const Tube& tube) const;
};

/// Outer diameter and wall thickness used for a tube kind. Bridges carry
/// their parent stay's wall thickness.
std::pair<double, double> tube_dimensions(const FrameParams& params, TubeKind kind);
SectionProperties section_for(const FrameParams& params, TubeKind kind);

/// Throws BuildFailure when a junction cannot be placed or a derived tube
/// has non-positive length.
FrameSkeleton build_skeleton(const FrameParams& params);

enum class Violation {
    NonPositiveDimension,
    AngleOutOfRange,
    StayIntersectionFailure,
    ThicknessExceedsRadius,
    DegenerateTube,
    BuildFailure,
};

std::string_view to_string(Violation violation);

struct FeasibilityReport {
    bool feasible = true;
    std::vector<Violation> violations;

    void add(Violation v);
    bool contains(Violation v) const;
};

/// Explicit parameter checks. Reports every violation, not only the first.
FeasibilityReport check_feasibility(const FrameParams& params);

/// check_feasibility followed by an attempted build; build errors are
/// appended as BuildFailure / DegenerateTube.
FeasibilityReport check_buildable(const FrameParams& params);

inline constexpr double kMinTubeLength = 1e-6;

}  // namespace bikeframe
