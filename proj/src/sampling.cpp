#include "bikeframe/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "bikeframe/errors.hpp"

namespace bikeframe {

double scale_thickness(double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("thickness sample outside [0, 1]");
    if (u == 0.0) return kMinThickness;
    if (u == 1.0) return kMaxThickness;
    const double lo = std::log(kMinThickness);
    const double hi = std::log(kMaxThickness);
    return std::exp(lo + u * (hi - lo));
}

DesignTable resample_thicknesses(DesignTable table, SobolState& state) {
    const auto& fields = thickness_fields();
    for (auto& row : table) {
        const SobolPoint u = state.next();
        for (std::size_t i = 0; i < fields.size(); ++i) row.params.*fields[i] = scale_thickness(u[i]);
    }
    return table;
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t Rng::below(std::uint64_t n) {
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

DesignTable generate_designs(std::size_t count, std::uint64_t seed) {
    const FrameParams base = reference_road_frame();
    Rng rng(seed);
    DesignTable table;
    table.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        FrameParams p = base;
        const auto scale = [&](double& v, double spread) { v *= rng.uniform(1.0 - spread, 1.0 + spread); };

        scale(p.stack, 0.10);
        scale(p.reach, 0.10);
        p.head_tube_angle_deg += rng.uniform(-3.0, 3.0);
        scale(p.head_tube_length, 0.25);
        p.seat_tube_angle_deg += rng.uniform(-3.0, 3.0);
        scale(p.seat_tube_length, 0.12);
        scale(p.seat_tube_top_tube_offset, 0.30);
        scale(p.head_tube_upper_offset, 0.30);
        scale(p.head_tube_lower_offset, 0.30);
        scale(p.chain_stay_length, 0.06);
        scale(p.bb_drop, 0.20);
        p.rear_axle_spacing = rng.uniform() < 0.5 ? 0.130 : 0.135;
        scale(p.seat_stay_junction_offset, 0.30);
        scale(p.seat_stay_half_spacing, 0.15);
        scale(p.bb_shell_length, 0.05);
        scale(p.chain_stay_bb_half_spacing, 0.08);
        p.chain_stay_bb_half_spacing = std::min(p.chain_stay_bb_half_spacing, p.bb_shell_length / 2.0);
        p.chain_stay_bridge_fraction = rng.uniform(0.15, 0.45);
        p.seat_stay_bridge_fraction = rng.uniform(0.15, 0.45);

        scale(p.top_tube_od, 0.25);
        scale(p.down_tube_od, 0.25);
        scale(p.seat_tube_od, 0.20);
        scale(p.head_tube_od, 0.15);
        scale(p.bb_shell_od, 0.10);
        scale(p.chain_stay_od, 0.20);
        scale(p.seat_stay_od, 0.20);
        scale(p.chain_stay_bridge_od, 0.20);
        scale(p.seat_stay_bridge_od, 0.20);

        const double m = rng.uniform();
        p.material = m < 0.45 ? Material::Steel : (m < 0.85 ? Material::Aluminum : Material::Titanium);
        p.has_chain_stay_bridge = rng.uniform() < 0.3;
        p.has_seat_stay_bridge = rng.uniform() < 0.7;

        table.push_back({static_cast<std::int64_t>(i + 1), p});
    }
    SobolState sobol;
    return resample_thicknesses(std::move(table), sobol);
}

std::size_t ValidityCounts::total() const {
    std::size_t sum = 0;
    for (auto c : counts) sum += c;
    return sum;
}

ResultTable run_batch(const DesignTable& table, const SimulationConfig& config,
                      const BatchOptions& options) {
    ResultTable results(table.size());
    ValidityCounts counts;
    std::size_t done = 0;
    std::mutex progress_mutex;
    std::atomic<std::size_t> next{0};

    const auto worker = [&] {
        for (std::size_t i = next++; i < table.size(); i = next++) {
            const auto record = evaluate_frame(table[i].params, config);
            const auto validity = classify_validity(record, config.fos_threshold);
            results[i] = {table[i].row_id, record, validity};

            std::lock_guard lock(progress_mutex);
            ++counts[validity];
            ++done;
            if (options.on_progress) options.on_progress(done, table.size(), counts);
        }
    };

    const unsigned jobs = std::max(1u, options.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    return results;
}

}  // namespace bikeframe
