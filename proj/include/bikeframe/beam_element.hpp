#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cmath>

namespace bikeframe {

template <typename Scalar>
using Matrix12 = Eigen::Matrix<Scalar, 12, 12>;

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

/// Rows are the element's local x, y, z axes in global coordinates.
/// Local x runs from `a` to `b`; local z is the projection of global z
/// unless the element is within |cos| > 0.99 of it, then global y is used.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> element_axes(const Vector3<Scalar>& a, const Vector3<Scalar>& b) {
    using std::abs;
    const Vector3<Scalar> ex = (b - a).normalized();
    Vector3<Scalar> ref = Vector3<Scalar>::UnitZ();
    if (abs(ex.dot(ref)) > Scalar(0.99)) ref = Vector3<Scalar>::UnitY();
    const Vector3<Scalar> ez = (ref - ref.dot(ex) * ex).normalized();
    const Vector3<Scalar> ey = ez.cross(ex);
    Eigen::Matrix<Scalar, 3, 3> axes;
    axes.row(0) = ex.transpose();
    axes.row(1) = ey.transpose();
    axes.row(2) = ez.transpose();
    return axes;
}

/// Global-to-local transformation for the 12 end DOFs.
template <typename Scalar>
Matrix12<Scalar> element_transformation(const Eigen::Matrix<Scalar, 3, 3>& axes) {
    Matrix12<Scalar> t = Matrix12<Scalar>::Zero();
    for (int block = 0; block < 4; ++block) t.template block<3, 3>(3 * block, 3 * block) = axes;
    return t;
}

/// Euler-Bernoulli space-frame element stiffness in local axes, DOF order
/// (ux, uy, uz, rx, ry, rz) at each end.
template <typename Scalar>
Matrix12<Scalar> local_stiffness(Scalar E, Scalar G, Scalar A, Scalar Iy, Scalar Iz, Scalar J,
                                 Scalar L) {
    Matrix12<Scalar> k = Matrix12<Scalar>::Zero();
    const Scalar L2 = L * L;
    const Scalar L3 = L2 * L;

    const Scalar axial = E * A / L;
    k(0, 0) = axial;
    k(0, 6) = -axial;
    k(6, 6) = axial;

    const Scalar torsion = G * J / L;
    k(3, 3) = torsion;
    k(3, 9) = -torsion;
    k(9, 9) = torsion;

    // Bending in the local x-y plane (uy, rz).
    k(1, 1) = 12 * E * Iz / L3;
    k(1, 5) = 6 * E * Iz / L2;
    k(1, 7) = -12 * E * Iz / L3;
    k(1, 11) = 6 * E * Iz / L2;
    k(5, 5) = 4 * E * Iz / L;
    k(5, 7) = -6 * E * Iz / L2;
    k(5, 11) = 2 * E * Iz / L;
    k(7, 7) = 12 * E * Iz / L3;
    k(7, 11) = -6 * E * Iz / L2;
    k(11, 11) = 4 * E * Iz / L;

    // Bending in the local x-z plane (uz, ry).
    k(2, 2) = 12 * E * Iy / L3;
    k(2, 4) = -6 * E * Iy / L2;
    k(2, 8) = -12 * E * Iy / L3;
    k(2, 10) = -6 * E * Iy / L2;
    k(4, 4) = 4 * E * Iy / L;
    k(4, 8) = 6 * E * Iy / L2;
    k(4, 10) = 2 * E * Iy / L;
    k(8, 8) = 12 * E * Iy / L3;
    k(8, 10) = 6 * E * Iy / L2;
    k(10, 10) = 4 * E * Iy / L;

    k.template triangularView<Eigen::StrictlyLower>() = k.transpose();
    return k;
}

}  // namespace bikeframe
