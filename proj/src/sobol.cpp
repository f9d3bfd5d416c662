#include "bikeframe/sobol.hpp"

#include <vector>

namespace bikeframe {

namespace {

constexpr int kBits = 32;

struct Primitive {
    unsigned degree;
    std::uint32_t coefficients;
    std::array<std::uint32_t, 4> initial;
};

// Dimensions 2..7 of new-joe-kuo-6.21201 (d, s, a, m_1..m_s).
constexpr std::array<Primitive, kSobolDimension - 1> kPrimitives{{
    {1, 0, {1, 0, 0, 0}},
    {2, 1, {1, 3, 0, 0}},
    {3, 1, {1, 3, 1, 0}},
    {3, 2, {1, 1, 1, 0}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
}};

using DirectionTable = std::array<std::array<std::uint32_t, kBits>, kSobolDimension>;

DirectionTable make_directions() {
    DirectionTable v{};
    for (int k = 0; k < kBits; ++k) v[0][k] = std::uint32_t{1} << (kBits - 1 - k);

    for (std::size_t d = 1; d < kSobolDimension; ++d) {
        const auto& p = kPrimitives[d - 1];
        const unsigned s = p.degree;
        std::vector<std::uint32_t> m(kBits);
        for (unsigned k = 0; k < s; ++k) m[k] = p.initial[k];
        for (unsigned k = s; k < kBits; ++k) {
            std::uint32_t value = m[k - s] ^ (m[k - s] << s);
            for (unsigned j = 1; j < s; ++j) {
                if ((p.coefficients >> (s - 1 - j)) & 1u) value ^= m[k - j] << j;
            }
            m[k] = value;
        }
        for (int k = 0; k < kBits; ++k) v[d][k] = m[k] << (kBits - 1 - k);
    }
    return v;
}

const DirectionTable& directions() {
    static const DirectionTable table = make_directions();
    return table;
}

}  // namespace

SobolPoint SobolState::point(std::uint64_t n) {
    const auto& v = directions();
    const std::uint64_t gray = n ^ (n >> 1);
    SobolPoint out{};
    for (std::size_t d = 0; d < kSobolDimension; ++d) {
        std::uint32_t x = 0;
        for (int k = 0; k < kBits; ++k) {
            if ((gray >> k) & 1u) x ^= v[d][k];
        }
        out[d] = static_cast<double>(x) / 4294967296.0;
    }
    return out;
}

SobolPoint SobolState::next() { return point(++index_); }

}  // namespace bikeframe
