#include "bikeframe/beam_fea.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <array>
#include <optional>
#include <vector>
#include <cmath>

#include "bikeframe/beam_element.hpp"

namespace bikeframe {

namespace {

struct ElementMatrices {
    Matrix12<double> local;
    Matrix12<double> transform;
};

// Moduli are divided by `modulus_unit`.
ElementMatrices element_matrices(const BeamModel& model, const BeamElement& e, double modulus_unit = 1.0) {
    const auto& s = model.sections[e.section];
    const auto& m = model.materials[e.material];
    const Vec3& a = model.nodes[e.node_a];
    const Vec3& b = model.nodes[e.node_b];
    return {local_stiffness(m.elastic_modulus / modulus_unit, m.shear_modulus / modulus_unit, s.area,
                            s.bending_inertia,
                            s.bending_inertia, s.torsion_constant, (b - a).norm()),
            element_transformation<double>(element_axes<double>(a, b))};
}

Vector12d gather(const Eigen::VectorXd& u, const BeamElement& e) {
    Vector12d ue;
    ue.head<6>() = u.segment<6>(6 * e.node_a);
    ue.tail<6>() = u.segment<6>(6 * e.node_b);
    return ue;
}

Eigen::Index global_dof(const BeamElement& e, int local) {
    const auto node = local < 6 ? e.node_a : e.node_b;
    return static_cast<Eigen::Index>(6 * node + local % 6);
}

}  // namespace

std::size_t BeamModel::add_node(const Vec3& position) {
    nodes.push_back(position);
    constraints.emplace_back();
    loads.push_back(Vector6d::Zero());
    return nodes.size() - 1;
}

std::size_t BeamModel::node(std::string_view label) const {
    const auto it = node_labels.find(label);
    if (it == node_labels.end()) {
        throw MissingLabel("model has no node labeled '" + std::string(label) + "'");
    }
    return it->second;
}

BeamModel discretize(const FrameSkeleton& skeleton, const FrameParams& params, int elements_per_tube) {
    if (elements_per_tube < 1) throw DomainError("elements_per_tube must be at least 1");

    BeamModel model;
    for (const auto& n : skeleton.nodes) model.add_node(n.position);
    model.node_labels.insert(skeleton.labels.begin(), skeleton.labels.end());
    model.materials.push_back(lookup(params.material));

    std::array<std::optional<std::size_t>, kTubeKindCount> section_of{};
    for (const auto& tube : skeleton.tubes) {
        const double length = skeleton.tube_length(tube);
        if (!(length >= kMinTubeLength)) {
            throw DegenerateTube(std::string(to_string(tube.kind)) + " shorter than 1e-6 m");
        }
        if (!tube.structural) continue;
        auto& section = section_of[static_cast<std::size_t>(tube.kind)];
        if (!section) {
            section = model.sections.size();
            model.sections.push_back(section_for(params, tube.kind));
        }

        const Vec3 a = skeleton.nodes[tube.start].position;
        const Vec3 b = skeleton.nodes[tube.end].position;
        std::size_t previous = tube.start;
        for (int i = 1; i <= elements_per_tube; ++i) {
            const std::size_t next =
                i == elements_per_tube
                    ? tube.end
                    : model.add_node(a + (b - a) * (static_cast<double>(i) / elements_per_tube));
            model.elements.push_back({previous, next, *section, 0, static_cast<int>(tube.kind)});
            previous = next;
        }
    }
    return model;
}

namespace {

Eigen::SparseMatrix<double> assemble(const BeamModel& model, double modulus_unit) {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(model.elements.size() * 144);
    for (const auto& e : model.elements) {
        const auto m = element_matrices(model, e, modulus_unit);
        const Matrix12<double> k = m.transform.transpose() * m.local * m.transform;
        for (int i = 0; i < 12; ++i) {
            for (int j = 0; j < 12; ++j) {
                triplets.emplace_back(global_dof(e, i), global_dof(e, j), k(i, j));
            }
        }
    }
    const auto n = static_cast<Eigen::Index>(model.dof_count());
    Eigen::SparseMatrix<double> K(n, n);
    K.setFromTriplets(triplets.begin(), triplets.end());
    return K;
}

}  // namespace

Eigen::SparseMatrix<double> assemble_stiffness(const BeamModel& model) { return assemble(model, 1.0); }

Eigen::VectorXd load_vector(const BeamModel& model) {
    Eigen::VectorXd f(model.dof_count());
    for (std::size_t i = 0; i < model.nodes.size(); ++i) f.segment<6>(6 * i) = model.loads[i];
    return f;
}

SolutionField assemble_and_solve(const BeamModel& model) {
    const Eigen::SparseMatrix<double> K = assemble_stiffness(model);
    const Eigen::VectorXd f = load_vector(model);
    const auto n = static_cast<Eigen::Index>(model.dof_count());

    // Nodes without elements (ends of mass-only stubs) stay at rest.
    std::vector<bool> attached(model.nodes.size(), false);
    for (const auto& e : model.elements) attached[e.node_a] = attached[e.node_b] = true;

    // Free DOFs get consecutive reduced indices; constrained ones -1.
    std::vector<Eigen::Index> reduced(n, -1);
    Eigen::Index free_count = 0;
    for (std::size_t node = 0; node < model.nodes.size(); ++node) {
        if (!attached[node]) {
            if (!model.loads[node].isZero(0.0)) throw SingularSystem("load on a node without elements");
            continue;
        }
        for (int d = 0; d < 6; ++d) {
            if (!model.constraints[node].test(d)) reduced[6 * node + d] = free_count++;
        }
    }

    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    if (free_count > 0) {
        // Solved in units of the first material's modulus, so a common
        // scaling of E and G leaves the reduced matrix bit-for-bit unchanged.
        const double unit = model.materials.empty() ? 1.0 : model.materials.front().elastic_modulus;
        const Eigen::SparseMatrix<double> Kn = assemble(model, unit);
        std::vector<Eigen::Triplet<double>> triplets;
        triplets.reserve(Kn.nonZeros());
        for (Eigen::Index col = 0; col < Kn.outerSize(); ++col) {
            for (Eigen::SparseMatrix<double>::InnerIterator it(Kn, col); it; ++it) {
                const auto r = reduced[it.row()];
                const auto c = reduced[it.col()];
                if (r >= 0 && c >= 0) triplets.emplace_back(r, c, it.value());
            }
        }
        Eigen::SparseMatrix<double> Kff(free_count, free_count);
        Kff.setFromTriplets(triplets.begin(), triplets.end());
        Eigen::VectorXd ff(free_count);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (reduced[i] >= 0) ff(reduced[i]) = f(i);
        }

        // Symmetric diagonal scaling to unit diagonal, so the pivot test
        // sees singularity rather than the spread between axial and
        // rotational stiffness of short elements. Short elements also make
        // the system badly conditioned, so it is factored in extended
        // precision.
        using Extended = long double;
        using ExtendedVector = Eigen::Matrix<Extended, Eigen::Dynamic, 1>;
        const Eigen::VectorXd diagonal = Kff.diagonal();
        if (!(diagonal.minCoeff() > 0.0) || !diagonal.allFinite()) {
            throw SingularSystem("non-positive diagonal in reduced stiffness matrix");
        }
        const ExtendedVector scale = diagonal.cast<Extended>().cwiseSqrt().cwiseInverse();
        const Eigen::SparseMatrix<Extended> scaled =
            scale.asDiagonal() * Kff.cast<Extended>() * scale.asDiagonal();

        Eigen::SimplicialLDLT<Eigen::SparseMatrix<Extended>> solver(scaled);
        if (solver.info() != Eigen::Success) throw SingularSystem("factorization failed");
        const ExtendedVector& pivots = solver.vectorD();
        const Extended largest = pivots.cwiseAbs().maxCoeff();
        if (!std::isfinite(static_cast<double>(largest)) ||
            !(pivots.minCoeff() > kPivotTolerance * largest)) {
            throw SingularSystem("non-positive pivot in reduced stiffness matrix");
        }
        const ExtendedVector rhs = scale.cwiseProduct(ff.cast<Extended>() / static_cast<Extended>(unit));
        const Eigen::VectorXd uf = scale.cwiseProduct(solver.solve(rhs)).cast<double>();
        if (!uf.allFinite()) throw SingularSystem("non-finite displacement");
        for (Eigen::Index i = 0; i < n; ++i) {
            if (reduced[i] >= 0) u(i) = uf(reduced[i]);
        }
    }

    SolutionField field;
    field.displacements = std::move(u);
    field.reactions = K * field.displacements - f;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (reduced[i] >= 0) field.reactions(i) = 0.0;
    }
    field.end_forces.reserve(model.elements.size());
    for (const auto& e : model.elements) {
        const auto m = element_matrices(model, e);
        field.end_forces.push_back({m.local * (m.transform * gather(field.displacements, e))});
    }
    return field;
}

StressSummary compute_stress_summary(const BeamModel& model, const SolutionField& field,
                                     double yield_strength) {
    StressSummary summary;
    for (std::size_t i = 0; i < model.elements.size(); ++i) {
        const auto& s = model.sections[model.elements[i].section];
        const auto& forces = field.end_forces[i];
        for (int end = 0; end < 2; ++end) {
            const double bending = std::hypot(forces.moment_y(end), forces.moment_z(end));
            const double normal =
                std::abs(forces.axial(end)) / s.area + bending * s.outer_radius / s.bending_inertia;
            const double shear = std::abs(forces.torsion(end)) * s.outer_radius / s.torsion_constant;
            const double von_mises = std::sqrt(normal * normal + 3.0 * shear * shear);
            if (von_mises > summary.max_von_mises) {
                summary.max_von_mises = von_mises;
                summary.element = i;
                summary.end = end;
            }
        }
    }
    summary.safety_factor = summary.max_von_mises > 0.0
                                ? std::min(yield_strength / summary.max_von_mises, kSafetyFactorCap)
                                : kSafetyFactorCap;
    return summary;
}

double compute_mass(const FrameSkeleton& skeleton, const FrameParams& params, double density) {
    double mass = 0.0;
    for (const auto& tube : skeleton.tubes) {
        mass += density * section_for(params, tube.kind).area * skeleton.tube_length(tube);
    }
    return mass;
}

double model_mass(const BeamModel& model) {
    double mass = 0.0;
    for (const auto& e : model.elements) {
        mass += model.materials[e.material].density * model.sections[e.section].area *
                model.element_length(e);
    }
    return mass;
}

}  // namespace bikeframe
