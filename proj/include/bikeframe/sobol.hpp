#pragma once

#include <array>
#include <cstdint>

namespace bikeframe {

inline constexpr std::size_t kSobolDimension = 7;

using SobolPoint = std::array<double, kSobolDimension>;

/// Unscrambled 7-dimensional Sobol sequence (Joe-Kuo direction numbers,
/// 32-bit, Gray-code order). `index` counts points already drawn; the first
/// call to next() returns sequence element 1, skipping the all-zero point.
class SobolState {
public:
    explicit SobolState(std::uint64_t index = 0) : index_(index) {}

    SobolPoint next();
    std::uint64_t index() const { return index_; }

    /// Sequence element `n` (element 0 is the origin).
    static SobolPoint point(std::uint64_t n);

private:
    std::uint64_t index_;
};

inline SobolPoint sobol_next(SobolState& state) { return state.next(); }

}  // namespace bikeframe
