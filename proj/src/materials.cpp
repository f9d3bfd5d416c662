#include "bikeframe/materials.hpp"

#include <array>

namespace bikeframe {

namespace {

constexpr double kGPa = 1e9;
constexpr double kMPa = 1e6;

constexpr MaterialProperties kSteel{205 * kGPa, 0.285, 80 * kGPa, 7850, 731 * kMPa, 460 * kMPa};
constexpr MaterialProperties kAluminum{69 * kGPa, 0.330, 26 * kGPa, 2700, 310 * kMPa, 275 * kMPa};
constexpr MaterialProperties kTitanium{105 * kGPa, 0.310, 41 * kGPa, 4429, 1050 * kMPa, 827 * kMPa};

constexpr std::array<std::string_view, 6> kRawNames{"Steel", "Aluminum", "Titanium",
                                                     "Carbon", "Bamboo", "Other"};

}  // namespace

MaterialProperties lookup(Material material) {
    switch (material) {
        case Material::Steel: return kSteel;
        case Material::Aluminum: return kAluminum;
        case Material::Titanium: return kTitanium;
    }
    return kSteel;
}

Material substitute_category(RawMaterial raw) {
    switch (raw) {
        case RawMaterial::Steel: return Material::Steel;
        case RawMaterial::Titanium: return Material::Titanium;
        case RawMaterial::Aluminum:
        case RawMaterial::Carbon:
        case RawMaterial::Bamboo:
        case RawMaterial::Other: return Material::Aluminum;
    }
    return Material::Aluminum;
}

std::string_view to_string(Material material) {
    return kRawNames[static_cast<std::size_t>(material)];
}

std::string_view to_string(RawMaterial raw) {
    return kRawNames[static_cast<std::size_t>(raw)];
}

std::optional<RawMaterial> parse_raw_material(std::string_view text) {
    for (std::size_t i = 0; i < kRawNames.size(); ++i) {
        if (kRawNames[i] == text) return static_cast<RawMaterial>(i);
    }
    return std::nullopt;
}

}  // namespace bikeframe
