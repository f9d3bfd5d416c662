#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <bitset>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bikeframe/geometry.hpp"
#include "bikeframe/materials.hpp"

namespace bikeframe {

using Vector6d = Eigen::Matrix<double, 6, 1>;
using Vector12d = Eigen::Matrix<double, 12, 1>;

// Per-node fixed DOFs: bits 0-2 translations x, y, z; bits 3-5 rotations.
using DofMask = std::bitset<6>;

inline const DofMask kFixedAll{0b111111};

struct BeamElement {
    std::size_t node_a;
    std::size_t node_b;
    std::size_t section;
    std::size_t material;
    int group;  // tube kind for frame models
};

struct BeamModel {
    std::vector<Vec3> nodes;
    std::vector<BeamElement> elements;
    std::vector<SectionProperties> sections;
    std::vector<MaterialProperties> materials;
    std::vector<DofMask> constraints;
    std::vector<Vector6d> loads;  // force (N) then moment (N m)
    std::map<std::string, std::size_t, std::less<>> node_labels;

    std::size_t add_node(const Vec3& position);
    std::size_t dof_count() const { return 6 * nodes.size(); }
    double element_length(const BeamElement& e) const { return (nodes[e.node_b] - nodes[e.node_a]).norm(); }
    /// Throws MissingLabel.
    std::size_t node(std::string_view label) const;
};

/// Internal end forces of one element in its local axes.
struct ElementEndForces {
    Vector12d local;  // k_local * T * u_e

    // `end` 0 is node_a, 1 is node_b. Signs follow the internal-force
    // convention: tension and positive moments act on the cut face.
    double axial(int end) const { return end == 0 ? -local(0) : local(6); }
    double shear_y(int end) const { return end == 0 ? -local(1) : local(7); }
    double shear_z(int end) const { return end == 0 ? -local(2) : local(8); }
    double torsion(int end) const { return end == 0 ? -local(3) : local(9); }
    double moment_y(int end) const { return end == 0 ? -local(4) : local(10); }
    double moment_z(int end) const { return end == 0 ? -local(5) : local(11); }
};

struct SolutionField {
    Eigen::VectorXd displacements;  // 6 per node
    Eigen::VectorXd reactions;      // K u - f, nonzero only on constrained DOFs
    std::vector<ElementEndForces> end_forces;

    Vec3 translation(std::size_t node) const { return displacements.segment<3>(6 * node); }
    Vec3 rotation(std::size_t node) const { return displacements.segment<3>(6 * node + 3); }
};

inline constexpr double kSafetyFactorCap = 1e6;
inline constexpr double kPivotTolerance = 1e-12;

struct StressSummary {
    double max_von_mises = 0;
    std::size_t element = 0;
    int end = 0;
    double safety_factor = kSafetyFactorCap;
};

/// Splits each tube into `elements_per_tube` equal elements. Junction nodes
/// keep the skeleton's indices and labels; interior nodes follow.
/// Throws DegenerateTube (tube shorter than 1e-6 m) or DomainError.
BeamModel discretize(const FrameSkeleton& skeleton, const FrameParams& params, int elements_per_tube);

/// Global stiffness before constraint elimination.
Eigen::SparseMatrix<double> assemble_stiffness(const BeamModel& model);
Eigen::VectorXd load_vector(const BeamModel& model);

/// Throws SingularSystem on a non-positive or vanishing pivot.
SolutionField assemble_and_solve(const BeamModel& model);

/// Axial plus biaxial bending normal stress and torsional shear at every
/// element end, combined as von Mises; transverse shear is neglected.
StressSummary compute_stress_summary(const BeamModel& model, const SolutionField& field,
                                     double yield_strength);

/// Sum of rho * A * L over skeleton tubes; independent of the mesh.
double compute_mass(const FrameSkeleton& skeleton, const FrameParams& params, double density);

/// Sum of rho * A * L over model elements.
double model_mass(const BeamModel& model);

}  // namespace bikeframe
