#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "bikeframe/geometry.hpp"
#include "bikeframe/sampling.hpp"

using namespace bikeframe;

namespace {

// Second moment of an annulus about a diameter by Simpson quadrature of
// pi * r^3 over the wall, independent of the closed form.
double annulus_inertia_quadrature(double od, double t) {
    const double ro = od / 2, ri = ro - t;
    const int n = 2000;
    const double h = (ro - ri) / n;
    double sum = 0;
    for (int i = 0; i <= n; ++i) {
        const double r = ri + i * h;
        const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        sum += w * std::numbers::pi * r * r * r;
    }
    return sum * h / 3;
}

bool has(const FeasibilityReport& r, Violation v) { return r.contains(v); }

std::set<TubeKind> kinds(const FrameSkeleton& s) {
    std::set<TubeKind> out;
    for (const auto& t : s.tubes) out.insert(t.kind);
    return out;
}

}  // namespace

TEST_CASE("tube section properties") {
    const auto s = tube_section_properties(0.025, 0.002);
    CHECK(std::abs(s.bending_inertia - 9.6289e-9) <= 1e-12);
    CHECK(s.bending_inertia == doctest::Approx(annulus_inertia_quadrature(0.025, 0.002)).epsilon(1e-10));
    CHECK(std::abs(s.area - 1.4451e-4) <= 1e-8);
    CHECK(s.torsion_constant == 2 * s.bending_inertia);
    CHECK(s.outer_radius == 0.0125);

    SUBCASE("solid rod limit") {
        const auto rod = tube_section_properties(0.02, 0.01);
        CHECK(rod.area == doctest::Approx(std::numbers::pi * 0.01 * 0.01).epsilon(1e-14));
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(tube_section_properties(0.02, 0.0), DomainError);
        CHECK_THROWS_AS(tube_section_properties(0.02, -0.001), DomainError);
        CHECK_THROWS_AS(tube_section_properties(0.02, 0.0101), DomainError);
        CHECK_THROWS_AS(tube_section_properties(-0.02, 0.001), DomainError);
    }
    SUBCASE("long double instantiation agrees") {
        const auto ld = tube_section_properties<long double>(0.025L, 0.002L);
        CHECK(static_cast<double>(ld.bending_inertia) == doctest::Approx(s.bending_inertia).epsilon(1e-14));
    }
}

TEST_CASE("section properties are strictly increasing in thickness") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const double od = rng.uniform(0.005, 0.06);
        const double t1 = rng.uniform(1e-5, od / 2);
        const double t2 = rng.uniform(1e-5, od / 2);
        if (t1 == t2) continue;
        const auto a = tube_section_properties(od, std::min(t1, t2));
        const auto b = tube_section_properties(od, std::max(t1, t2));
        CHECK(a.area < b.area);
        CHECK(a.bending_inertia < b.bending_inertia);
        CHECK(b.torsion_constant == 2 * b.bending_inertia);
    }
}

TEST_CASE("reference skeleton") {
    const auto params = reference_road_frame();
    const auto s = build_skeleton(params);

    CHECK(kinds(s).size() == 8);
    CHECK(s.nodes[s.at("bb_center")].position.isZero());
    CHECK(s.nodes[s.at("head_tube_top")].position.isApprox(Vec3(params.reach, params.stack, 0)));
    for (const auto& t : s.tubes) CHECK(s.tube_length(t) > 0.0);

    SUBCASE("mirror symmetry") {
        for (const auto& n : s.nodes) {
            const Vec3 mirror(n.position.x(), n.position.y(), -n.position.z());
            const bool found = std::any_of(s.nodes.begin(), s.nodes.end(), [&](const SkeletonNode& m) {
                return (m.position - mirror).norm() <= 1e-12;
            });
            CHECK(found);
        }
    }
    SUBCASE("dropout spacing") {
        CHECK(s.nodes[s.at("dropout_left")].position.z() == doctest::Approx(-0.065).epsilon(1e-15));
        CHECK(s.nodes[s.at("dropout_right")].position.z() == doctest::Approx(0.065).epsilon(1e-15));
    }
    SUBCASE("chain stay length is the side-view distance") {
        const Vec3 d = s.nodes[s.at("dropout_left")].position;
        CHECK(std::hypot(d.x(), d.y()) == doctest::Approx(params.chain_stay_length).epsilon(1e-14));
        CHECK(d.y() == doctest::Approx(params.bb_drop));
    }
    SUBCASE("top tube joins at the offsets") {
        const Vec3 seat_top = s.nodes[s.at("seat_tube_top")].position;
        const Vec3 tt_seat = s.nodes[s.at("top_tube_seat_junction")].position;
        CHECK((seat_top - tt_seat).norm() == doctest::Approx(params.seat_tube_top_tube_offset));
        const Vec3 head_top = s.nodes[s.at("head_tube_top")].position;
        const Vec3 tt_head = s.nodes[s.at("top_tube_head_junction")].position;
        CHECK((head_top - tt_head).norm() == doctest::Approx(params.head_tube_upper_offset));
    }
}

TEST_CASE("bridge flags control bridge tubes") {
    auto params = reference_road_frame();
    params.has_chain_stay_bridge = false;
    params.has_seat_stay_bridge = false;
    auto k = kinds(build_skeleton(params));
    CHECK_FALSE(k.count(TubeKind::ChainStayBridge));
    CHECK_FALSE(k.count(TubeKind::SeatStayBridge));

    params.has_chain_stay_bridge = true;
    params.has_seat_stay_bridge = true;
    k = kinds(build_skeleton(params));
    CHECK(k.count(TubeKind::ChainStayBridge));
    CHECK(k.count(TubeKind::SeatStayBridge));
}

TEST_CASE("rear axle spacing sets dropout half spacing") {
    auto params = reference_road_frame();
    params.rear_axle_spacing = 0.130;
    const auto s = build_skeleton(params);
    CHECK(s.nodes[s.at("dropout_left")].position.z() == -0.065);
    CHECK(s.nodes[s.at("dropout_right")].position.z() == 0.065);
}

TEST_CASE("coincident seat tube junctions share a node") {
    auto params = reference_road_frame();
    params.seat_stay_junction_offset = 0.0;
    const auto s = build_skeleton(params);
    CHECK(s.at("seat_stay_seat_junction") == s.at("seat_tube_top"));

    params.seat_stay_junction_offset = params.seat_tube_top_tube_offset;
    const auto s2 = build_skeleton(params);
    CHECK(s2.at("seat_stay_seat_junction") == s2.at("top_tube_seat_junction"));
}

TEST_CASE("feasibility checks") {
    const auto base = reference_road_frame();
    CHECK(check_feasibility(base).feasible);
    CHECK(check_feasibility(base).violations.empty());

    SUBCASE("negative thickness") {
        auto p = base;
        p.top_tube_t = -0.001;
        CHECK(has(check_feasibility(p), Violation::NonPositiveDimension));
    }
    SUBCASE("angle out of range") {
        auto p = base;
        p.head_tube_angle_deg = 190;
        CHECK(has(check_feasibility(p), Violation::AngleOutOfRange));
        p.head_tube_angle_deg = 0;
        CHECK(has(check_feasibility(p), Violation::AngleOutOfRange));
    }
    SUBCASE("thickness exceeds radius") {
        auto p = base;
        p.seat_stay_t = 0.013;
        p.seat_stay_od = 0.020;
        CHECK(has(check_feasibility(p), Violation::ThicknessExceedsRadius));
    }
    SUBCASE("stays must attach") {
        auto p = base;
        p.seat_stay_junction_offset = p.seat_tube_length;
        CHECK(has(check_feasibility(p), Violation::StayIntersectionFailure));
        p = base;
        p.chain_stay_bb_half_spacing = p.bb_shell_length;
        CHECK(has(check_feasibility(p), Violation::StayIntersectionFailure));
    }
    SUBCASE("head tube junctions out of order") {
        auto p = base;
        p.head_tube_upper_offset = 0.1;
        p.head_tube_lower_offset = 0.1;
        CHECK(has(check_feasibility(p), Violation::DegenerateTube));
    }
    SUBCASE("violations accumulate") {
        auto p = base;
        p.top_tube_t = -0.001;
        p.seat_tube_angle_deg = 200;
        p.seat_stay_t = 0.013;
        p.seat_stay_od = 0.020;
        const auto r = check_feasibility(p);
        CHECK_FALSE(r.feasible);
        CHECK(r.violations.size() == 3);
        CHECK(check_feasibility(p).violations == r.violations);
    }
    SUBCASE("non-finite values are infeasible") {
        auto p = base;
        p.stack = std::nan("");
        CHECK(has(check_feasibility(p), Violation::NonPositiveDimension));
    }
}

TEST_CASE("lateral build failures map to BuildFailure") {
    auto p = reference_road_frame();
    p.chain_stay_length = 0.05;  // shorter than bb_drop
    CHECK(check_feasibility(p).feasible);
    CHECK_THROWS_AS(build_skeleton(p), BuildFailure);
    CHECK(check_buildable(p).contains(Violation::BuildFailure));

    p = reference_road_frame();
    p.seat_stay_bridge_fraction = 1.5;
    CHECK_THROWS_AS(build_skeleton(p), BuildFailure);
}

TEST_CASE("feasible parameters always build their in-plane members") {
    Rng rng(2024);
    int feasible = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        FrameParams p = reference_road_frame();
        for (const auto& c : scalar_columns()) p.*c.field *= rng.uniform(0.2, 2.5);
        p.head_tube_angle_deg = rng.uniform(-20, 200);
        p.seat_tube_angle_deg = rng.uniform(-20, 200);
        p.has_chain_stay_bridge = rng.uniform() < 0.5;
        p.has_seat_stay_bridge = rng.uniform() < 0.5;
        // Keep the lateral solves well posed; only in-plane layout varies freely.
        p.chain_stay_bridge_fraction = rng.uniform(0.05, 0.95);
        p.seat_stay_bridge_fraction = rng.uniform(0.05, 0.95);
        p.bb_drop = std::min(p.bb_drop, 0.5 * p.chain_stay_length);

        const auto report = check_feasibility(p);
        if (!report.feasible) continue;
        ++feasible;
        CHECK_NOTHROW(build_skeleton(p));
    }
    CHECK(feasible > 50);
}
