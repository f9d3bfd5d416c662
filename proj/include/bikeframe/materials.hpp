#pragma once

#include <optional>
#include <string_view>

namespace bikeframe {

enum class Material { Steel, Aluminum, Titanium };

// Material categories as they appear in community design data.
enum class RawMaterial { Steel, Aluminum, Titanium, Carbon, Bamboo, Other };

struct MaterialProperties {
    double elastic_modulus;   // Pa
    double poisson_ratio;
    double shear_modulus;     // Pa
    double density;           // kg/m^3
    double tensile_strength;  // Pa
    double yield_strength;    // Pa
};

/// Isotropic properties for the three simulated alloys (4130 steel,
/// 6061-T6 aluminum, Ti-6Al-4V).
MaterialProperties lookup(Material material);

/// Anisotropic and unspecified categories are simulated as aluminum.
Material substitute_category(RawMaterial raw);

std::string_view to_string(Material material);
std::string_view to_string(RawMaterial raw);
std::optional<RawMaterial> parse_raw_material(std::string_view text);

}  // namespace bikeframe
