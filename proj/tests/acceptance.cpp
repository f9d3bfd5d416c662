// Acceptance gate: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.
#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bikeframe/analysis.hpp"
#include "bikeframe/beam_fea.hpp"
#include "bikeframe/load_cases.hpp"
#include "bikeframe/materials.hpp"
#include "bikeframe/sampling.hpp"
#include "bikeframe/sobol.hpp"
#include "bikeframe/table_io.hpp"

using namespace bikeframe;
namespace fs = std::filesystem;

namespace {

// Collects failed checks of one criterion.
struct Check {
    std::vector<std::string> failures;
    std::string detail;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

// Steel tube od 25 mm, t 2 mm, 1 m, fixed at x = 0, 16 elements.
BeamModel cantilever() {
    BeamModel m;
    m.sections.push_back(tube_section_properties(0.025, 0.002));
    m.materials.push_back(lookup(Material::Steel));
    for (int i = 0; i <= 16; ++i) m.add_node(Vec3(i / 16.0, 0, 0));
    for (std::size_t i = 0; i < 16; ++i) m.elements.push_back({i, i + 1, 0, 0, 0});
    m.constraints[0] = kFixedAll;
    return m;
}

// Closed-form tube properties, independent of the library.
constexpr double kRo = 0.0125, kRi = 0.0105;
const double kI = std::numbers::pi / 4.0 * (std::pow(kRo, 4) - std::pow(kRi, 4));
const double kJ = 2.0 * kI;

void criterion_1(Check& c) {
    auto m = cantilever();
    m.loads[16](1) = -100.0;
    const double tip = std::abs(assemble_and_solve(m).translation(16).y());
    const double oracle = 100.0 / (3.0 * 205e9 * kI);
    c.expect(std::abs(tip - oracle) <= 0.005 * oracle, "tip deflection vs PL^3/3EI");
    c.expect(std::abs(tip - 0.016887) <= 0.005 * 0.016887, "tip deflection vs 0.016887 m");
    c.detail = "tip " + fmt(tip) + " m, closed form " + fmt(oracle) + " m";
}

void criterion_2(Check& c) {
    auto m = cantilever();
    m.loads[16](3) = 140.0;
    const double twist = assemble_and_solve(m).rotation(16).x();
    const double oracle = 140.0 / (80e9 * kJ);
    c.expect(std::abs(twist - oracle) <= 0.005 * oracle, "twist vs TL/GJ");
    c.expect(std::abs(twist - 0.09087) <= 0.005 * 0.09087, "twist vs 0.09087 rad");
    c.detail = "twist " + fmt(twist) + " rad, closed form " + fmt(oracle) + " rad";
}

// Largest deflection magnitude of the load case that measures `f`.
double case_scale(const PerformanceRecord& r, PerformanceField f) {
    using F = PerformanceField;
    switch (f) {
        case F::InplaneBbVerticalDisp:
        case F::InplaneBbLateralDisp:
        case F::InplaneDropoutVerticalDisp:
        case F::InplaneDropoutLateralDisp:
            return std::max({std::abs(r.inplane_bb_vertical_disp), std::abs(r.inplane_bb_lateral_disp),
                             std::abs(r.inplane_dropout_vertical_disp), std::abs(r.inplane_dropout_lateral_disp)});
        default: return std::abs(field_value(r, f));
    }
}

void criterion_3(Check& c) {
    const auto rows = convergence_study(reference_road_frame(), std::nullopt, {16, 32});
    const auto& coarse = rows[0].record;
    const auto& fine = rows[1].record;
    c.expect(coarse.status == Status::Ok && fine.status == Status::Ok, "both levels solve");
    double worst = 0;
    int symmetric_zeros = 0;
    for (const auto f : performance_fields()) {
        if (!is_deflection(f)) continue;
        const double a = field_value(coarse, f), b = field_value(fine, f);
        // Values zero by symmetry sit at round-off level on both meshes.
        const double floor = 1e-6 * case_scale(fine, f);
        if (std::abs(a) < floor && std::abs(b) < floor) {
            ++symmetric_zeros;
            continue;
        }
        const double change = std::abs(b - a) / std::abs(b);
        worst = std::max(worst, change);
        c.expect(change < 0.01, std::string(to_string(f)) + " changes by " + fmt(100 * change) + "%");
    }
    c.detail = "largest change " + fmt(100 * worst) + "%, " + std::to_string(symmetric_zeros) +
               " values zero by symmetry";
}

void criterion_4(Check& c) {
    SimulationConfig config;
    std::vector<FrameParams> frames{reference_road_frame()};
    for (const auto& row : generate_designs(24, 404)) frames.push_back(row.params);
    int checked = 0;
    double worst = 0;
    for (const auto& p : frames) {
        const auto r = evaluate_frame(p, config);
        if (r.status != Status::Ok) continue;
        ++checked;
        const double bb = std::abs(r.inplane_bb_lateral_disp) / std::abs(r.inplane_bb_vertical_disp);
        const double dropout =
            std::abs(r.inplane_dropout_lateral_disp) / std::abs(r.inplane_dropout_vertical_disp);
        worst = std::max({worst, bb, dropout});
        c.expect(bb < 1e-6, "bb lateral/vertical " + fmt(bb));
        c.expect(dropout < 1e-6, "dropout lateral/vertical " + fmt(dropout));

        // Individual dropouts move as mirror images of each other.
        auto model = apply_load_case(discretize(build_skeleton(p), p, config.elements_per_tube),
                                     LoadCaseId::InPlane, config);
        for (auto& m : model.materials) m = config.material_for(p.material);
        const auto field = assemble_and_solve(model);
        const Vec3 left = field.translation(model.node("dropout_left"));
        const Vec3 right = field.translation(model.node("dropout_right"));
        const Vec3 mirrored(right.x(), right.y(), -right.z());
        const double mirror = (left - mirrored).norm() / left.norm();
        c.expect(mirror < 1e-6, "dropouts not mirror images, " + fmt(mirror));
    }
    c.expect(checked >= 10, "too few solvable symmetric frames");
    c.detail = std::to_string(checked) + " frames, worst ratio " + fmt(worst);
}

void criterion_5(Check& c) {
    const auto p = reference_road_frame();
    const SimulationConfig base_config;
    const auto base = evaluate_frame(p, base_config);

    SimulationConfig doubled_loads = base_config;
    doubled_loads.inplane_force_N *= 2;
    doubled_loads.transverse_force_N *= 2;
    doubled_loads.eccentric_force_N *= 2;
    doubled_loads.eccentric_moment_Nm *= 2;
    const auto loads = evaluate_frame(p, doubled_loads);

    SimulationConfig doubled_moduli = base_config;
    doubled_moduli.elastic_modulus = 2 * lookup(p.material).elastic_modulus;
    doubled_moduli.shear_modulus = 2 * lookup(p.material).shear_modulus;
    const auto stiff = evaluate_frame(p, doubled_moduli);

    double worst = 0;
    for (const auto f : performance_fields()) {
        if (!is_deflection(f)) continue;
        const double v = field_value(base, f);
        const double e1 = std::abs(field_value(loads, f) - 2 * v);
        const double e2 = std::abs(field_value(stiff, f) - v / 2);
        worst = std::max({worst, e1 / std::abs(2 * v), e2 / std::abs(v / 2)});
        c.expect(e1 <= 1e-9 * std::abs(2 * v), std::string(to_string(f)) + " under doubled loads");
        c.expect(e2 <= 1e-9 * std::abs(v / 2), std::string(to_string(f)) + " under doubled E and G");
    }
    c.detail = "worst relative deviation " + fmt(worst);
}

ResultRow random_record(std::int64_t id, std::mt19937_64& rng) {
    std::lognormal_distribution<double> mag(0.0, 1.0);
    std::normal_distribution<double> normal;
    ResultRow r{id, {}, ValidityClass::Valid};
    for (const auto f : performance_fields()) field_ref(r.record, f) = normal(rng);
    r.record.inplane_safety_factor = mag(rng);
    r.record.mass = mag(rng);
    if (id % 17 == 0) {
        r.record = PerformanceRecord{};
        r.record.status = Status::GeometricInfeasible;
        r.validity = ValidityClass::GeometricInfeasible;
    }
    return r;
}

void criterion_6(Check& c) {
    std::mt19937_64 rng(6);
    ResultTable table;
    for (int i = 1; i <= 500; ++i) table.push_back(random_record(i, rng));
    const auto spec = ObjectiveSpec::defaults();

    std::map<std::int64_t, std::vector<double>> cost;
    for (const auto& r : table) {
        if (r.record.status != Status::Ok) continue;
        for (const auto& o : spec.objectives) {
            double v = field_value(r.record, o.field);
            if (o.transform == Transform::AbsoluteValue) v = std::abs(v);
            cost[r.row_id].push_back(o.direction == Direction::Maximize ? -v : v);
        }
    }
    auto beats = [](const std::vector<double>& a, const std::vector<double>& b) {
        bool strict = false;
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a[k] > b[k]) return false;
            strict = strict || a[k] < b[k];
        }
        return strict;
    };
    std::set<std::int64_t> oracle;
    for (const auto& [id, a] : cost) {
        bool dominated = false;
        for (const auto& [other, b] : cost) dominated = dominated || beats(b, a);
        if (!dominated) oracle.insert(id);
    }

    const auto front = pareto_front(table, spec);
    const std::set<std::int64_t> got(front.begin(), front.end());
    c.expect(got == oracle, "front differs from brute force");
    for (const auto& [id, a] : cost) {
        if (got.count(id)) continue;
        const bool covered = std::any_of(got.begin(), got.end(), [&](std::int64_t f) { return beats(cost[f], a); });
        c.expect(covered, "row " + std::to_string(id) + " not dominated by the front");
    }
    c.detail = std::to_string(cost.size()) + " Ok rows, front of " + std::to_string(got.size());
}

void criterion_7(Check& c) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal;
    ResultTable table;
    for (int i = 1; i <= 200; ++i) {
        auto r = random_record(i, rng);
        r.record.transverse_bb_lateral_disp += 0.7 * r.record.inplane_dropout_vertical_disp;
        r.record.mass += 0.3 * std::abs(r.record.eccentric_bb_twist) + 0.01 * normal(rng);
        table.push_back(r);
    }
    const auto spec = ObjectiveSpec::defaults();
    const auto m = pearson_matrix(table, spec);
    const auto n = spec.size();

    std::vector<std::vector<double>> cols(n);
    for (const auto& r : table) {
        if (r.record.status != Status::Ok) continue;
        for (std::size_t k = 0; k < n; ++k) {
            const double v = field_value(r.record, spec.objectives[k].field);
            cols[k].push_back(spec.objectives[k].transform == Transform::AbsoluteValue ? std::abs(v) : v);
        }
    }
    auto two_pass = [](const std::vector<double>& x, const std::vector<double>& y) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
        mx /= x.size();
        my /= y.size();
        double sxy = 0, sxx = 0, syy = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sxy += (x[i] - mx) * (y[i] - my);
            sxx += (x[i] - mx) * (x[i] - mx);
            syy += (y[i] - my) * (y[i] - my);
        }
        return sxy / std::sqrt(sxx * syy);
    };
    double worst = 0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const double d = std::abs(m.values(a, b) - two_pass(cols[a], cols[b]));
            worst = std::max(worst, d);
            c.expect(d < 1e-12, "entry " + std::to_string(a) + "," + std::to_string(b) + " off by " + fmt(d));
            c.expect(m.values(a, b) == m.values(b, a), "asymmetric entry");
        }
        c.expect(m.values(a, a) == 1.0, "diagonal not 1");
    }

    for (std::size_t k = 0; k < n; ++k) {
        auto scaled = table;
        for (auto& r : scaled) {
            double& v = field_ref(r.record, spec.objectives[k].field);
            // Keep the sign so |.| objectives see a positive affine map too.
            v = spec.objectives[k].transform == Transform::AbsoluteValue
                    ? std::copysign(4.5 * std::abs(v) + 0.25, v)
                    : 4.5 * v + 0.25;
        }
        const auto m2 = pearson_matrix(scaled, spec);
        const double d = (m2.values - m.values).cwiseAbs().maxCoeff();
        worst = std::max(worst, d);
        c.expect(d < 1e-12, "affine change of column " + std::to_string(k) + " moves r by " + fmt(d));
    }
    c.detail = "max deviation " + fmt(worst);
}

void criterion_8(Check& c) {
    SobolState state;
    std::array<int, kSobolDimension> lower{};
    double lo = 1, hi = 0;
    for (int i = 0; i < 1024; ++i) {
        const auto p = state.next();
        for (std::size_t d = 0; d < kSobolDimension; ++d) {
            lower[d] += p[d] < 0.5;
            const double t = scale_thickness(p[d]);
            lo = std::min(lo, t);
            hi = std::max(hi, t);
            c.expect(t >= 0.0005 && t <= 0.010, "thickness out of range");
        }
    }
    for (std::size_t d = 0; d < kSobolDimension; ++d) {
        c.expect(std::abs(lower[d] - 512) <= 1, "dimension " + std::to_string(d) + " has " +
                                                     std::to_string(lower[d]) + " points below 0.5");
    }
    c.expect(scale_thickness(0.0) == 0.0005, "u = 0 endpoint");
    c.expect(scale_thickness(1.0) == 0.010, "u = 1 endpoint");

    for (const auto& row : generate_designs(300, 8)) {
        for (const auto field : thickness_fields()) {
            const double t = row.params.*field;
            c.expect(t >= 0.0005 && t <= 0.010, "generated thickness out of range");
        }
    }
    c.detail = "scaled range [" + fmt(lo * 1e3) + ", " + fmt(hi * 1e3) + "] mm";
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

ValidityCounts run_pipeline(const fs::path& dir, unsigned jobs) {
    fs::create_directories(dir);
    const auto designs = generate_designs(200, 2024);
    write_designs((dir / "designs.csv").string(), designs);
    BatchOptions options;
    options.jobs = jobs;
    const auto results = run_batch(read_designs((dir / "designs.csv").string()), SimulationConfig{}, options);
    write_results((dir / "results.csv").string(), results);

    const auto report = analyze(read_results((dir / "results.csv").string()), ObjectiveSpec::defaults());
    {
        std::ofstream json(dir / "analysis_report.json", std::ios::binary);
        write_report_json(json, report);
    }
    if (report.correlation) {
        std::ofstream csv(dir / "correlation_matrix.csv", std::ios::binary);
        write_correlation_csv(csv, *report.correlation);
    }
    emit_plots(results, ObjectiveSpec::defaults(), dir / "plots");
    return validity_breakdown(results);
}

void criterion_9(Check& c) {
    const fs::path root = fs::temp_directory_path() / "bikeframe_acceptance_9";
    fs::remove_all(root);
    const auto first = run_pipeline(root / "first", 1);
    const auto second = run_pipeline(root / "second", 3);
    c.expect(first.total() == 200, "partition sums to " + std::to_string(first.total()));

    std::size_t compared = 0;
    for (const auto& entry : fs::recursive_directory_iterator(root / "first")) {
        if (!entry.is_regular_file()) continue;
        const auto rel = fs::relative(entry.path(), root / "first");
        const auto twin = root / "second" / rel;
        c.expect(fs::exists(twin) && slurp(entry.path()) == slurp(twin), rel.string() + " differs");
        ++compared;
    }
    c.expect(compared >= 4, "expected design, result and analysis files");
    c.detail = std::to_string(compared) + " files identical; Valid " +
               std::to_string(first[ValidityClass::Valid]) + ", StructuralFailure " +
               std::to_string(first[ValidityClass::StructuralFailure]) + ", GeometricInfeasible " +
               std::to_string(first[ValidityClass::GeometricInfeasible]) + ", BuildFailed " +
               std::to_string(first[ValidityClass::BuildFailed]) + ", SimFailed " +
               std::to_string(first[ValidityClass::SimFailed]);
    fs::remove_all(root);
}

void criterion_10(Check& c) {
    const auto results = run_batch(generate_designs(500, 10), SimulationConfig{}, {});
    const auto spec = ObjectiveSpec::defaults();
    const auto m = pearson_matrix(results, spec);
    const std::vector<std::size_t> deflections{0, 1, 2};  // |dropout vertical|, |bb lateral|, |twist|
    std::string values;
    for (std::size_t a = 0; a < deflections.size(); ++a) {
        for (std::size_t b = a + 1; b < deflections.size(); ++b) {
            const double r = m.values(deflections[a], deflections[b]);
            values += fmt(r) + " ";
            c.expect(m.defined(deflections[a], deflections[b]) && r > 0,
                     spec.objectives[a].label() + " vs " + spec.objectives[b].label() + " r = " + fmt(r));
        }
    }
    const double mass = m.values(0, 4);
    c.expect(m.defined(0, 4) && mass < 0, "|dropout deflection| vs mass r = " + fmt(mass));
    c.detail = std::to_string(ok_rows(results).size()) + " Ok rows; displacement r = " + values +
               "; dropout-mass r = " + fmt(mass);
}

void criterion_11(Check& c) {
    struct Row {
        Material m;
        double values[6];
    };
    const Row table[] = {
        {Material::Steel, {205e9, 0.285, 80e9, 7850, 731e6, 460e6}},
        {Material::Aluminum, {69e9, 0.33, 26e9, 2700, 310e6, 275e6}},
        {Material::Titanium, {105e9, 0.31, 41e9, 4429, 1050e6, 827e6}},
    };
    int matched = 0;
    for (const auto& row : table) {
        const auto p = lookup(row.m);
        const double got[6] = {p.elastic_modulus, p.poisson_ratio, p.shear_modulus,
                               p.density, p.tensile_strength, p.yield_strength};
        for (int k = 0; k < 6; ++k) {
            const bool ok = got[k] == row.values[k];
            matched += ok;
            c.expect(ok, std::string(to_string(row.m)) + " value " + std::to_string(k));
        }
    }
    c.expect(substitute_category(RawMaterial::Carbon) == Material::Aluminum, "Carbon");
    c.expect(substitute_category(RawMaterial::Bamboo) == Material::Aluminum, "Bamboo");
    c.expect(substitute_category(RawMaterial::Other) == Material::Aluminum, "Other");
    c.expect(substitute_category(RawMaterial::Steel) == Material::Steel, "Steel");
    c.expect(substitute_category(RawMaterial::Aluminum) == Material::Aluminum, "Aluminum");
    c.expect(substitute_category(RawMaterial::Titanium) == Material::Titanium, "Titanium");
    c.detail = std::to_string(matched) + "/18 table values exact";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"cantilever bending matches PL^3/3EI within 0.5%", criterion_1},
        {"cantilever torsion matches TL/GJ within 0.5%", criterion_2},
        {"reference frame deflections change < 1% from 16 to 32 elements per tube", criterion_3},
        {"symmetric frames show no lateral in-plane response", criterion_4},
        {"doubling loads doubles and doubling E, G halves all deflections", criterion_5},
        {"Pareto front equals brute force on 500 records and is complete", criterion_6},
        {"Pearson matrix matches two-pass formula and is affine invariant", criterion_7},
        {"Sobol balance and thickness scaling range", criterion_8},
        {"200-design pipeline is total and byte-for-byte reproducible", criterion_9},
        {"500-design correlation signs: deflections positive, dropout vs mass negative", criterion_10},
        {"material table and category substitution", criterion_11},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check check;
        try {
            criteria[i].second(check);
        } catch (const std::exception& e) {
            check.failures.push_back(std::string("exception: ") + e.what());
        }
        const bool ok = check.failures.empty();
        failed += !ok;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << i + 1 << ". " << criteria[i].first;
        if (!check.detail.empty()) std::cout << " (" << check.detail << ")";
        std::cout << '\n';
        for (std::size_t k = 0; k < std::min<std::size_t>(check.failures.size(), 5); ++k) {
            std::cout << "       " << check.failures[k] << '\n';
        }
        std::cout.flush();
    }
    std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
