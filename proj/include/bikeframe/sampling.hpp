#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "bikeframe/load_cases.hpp"
#include "bikeframe/params.hpp"
#include "bikeframe/sobol.hpp"

namespace bikeframe {

inline constexpr double kMinThickness = 0.0005;  // m
inline constexpr double kMaxThickness = 0.010;   // m

/// Log-uniform map of u in [0, 1] onto [0.5 mm, 10 mm]. Throws DomainError.
double scale_thickness(double u);

struct DesignRow {
    std::int64_t row_id;
    FrameParams params;

    bool operator==(const DesignRow&) const = default;
};

using DesignTable = std::vector<DesignRow>;

struct ResultRow {
    std::int64_t row_id;
    PerformanceRecord record;
    ValidityClass validity;
};

using ResultTable = std::vector<ResultRow>;

/// Overwrites the seven thicknesses of each row, in row order, with one
/// scaled Sobol point per row drawn from `state`.
DesignTable resample_thicknesses(DesignTable table, SobolState& state);

/// Seeded 64-bit Mersenne Twister with explicitly defined conversions, so
/// streams are identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);   // [lo, hi)
    std::uint64_t below(std::uint64_t n);   // [0, n), unbiased

private:
    std::mt19937_64 engine_;
};

/// `count` designs: the reference road frame with seeded geometry, diameter,
/// material and bridge perturbations, thicknesses from the Sobol sampler.
/// Row ids run 1..count.
DesignTable generate_designs(std::size_t count, std::uint64_t seed);

struct ValidityCounts {
    std::array<std::size_t, 5> counts{};

    std::size_t& operator[](ValidityClass v) { return counts[static_cast<std::size_t>(v)]; }
    std::size_t operator[](ValidityClass v) const { return counts[static_cast<std::size_t>(v)]; }
    std::size_t total() const;
};

struct BatchOptions {
    unsigned jobs = 1;
    // Called after each finished design with the running class counts.
    std::function<void(std::size_t done, std::size_t total, const ValidityCounts&)> on_progress;
};

/// Evaluates and classifies every row. Output order equals input order for
/// any number of jobs.
ResultTable run_batch(const DesignTable& table, const SimulationConfig& config,
                      const BatchOptions& options = {});

}  // namespace bikeframe
