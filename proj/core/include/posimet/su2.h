// Copyright 2026 The posimet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POSIMET_SU2_H
#define POSIMET_SU2_H

#include <Eigen/Dense>
#include <complex>

namespace posimet {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;
using RotMat3 = Eigen::Matrix3d;

inline constexpr double kUnitTol = 1e-12;
inline constexpr double kComposedTol = 1e-10;

/// Unit vector on the Bloch sphere. Construction validates the norm.
class AxisVec3 {
   public:
    AxisVec3(double x, double y, double z);
    explicit AxisVec3(const Eigen::Vector3d &v) : AxisVec3(v.x(), v.y(), v.z()) {}

    /// (sin t cos p, sin t sin p, cos t).
    static AxisVec3 from_angles(double theta, double phi);
    /// Rescales any nonzero vector to unit length.
    static AxisVec3 normalized(const Eigen::Vector3d &v);
    static AxisVec3 x_hat() { return {1, 0, 0}; }
    static AxisVec3 y_hat() { return {0, 1, 0}; }
    static AxisVec3 z_hat() { return {0, 0, 1}; }

    double x() const { return v_.x(); }
    double y() const { return v_.y(); }
    double z() const { return v_.z(); }
    const Eigen::Vector3d &vec() const { return v_; }
    double theta() const;
    double phi() const;

   private:
    Eigen::Vector3d v_;
};

Mat2 identity2();
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();
/// pauli(0..2) = X, Y, Z.
Mat2 pauli(int i);

/// n_x X + n_y Y + n_z Z.
Mat2 pauli_dot(const AxisVec3 &n);

/// cos(a/2) 1 - i sin(a/2) n.sigma
Mat2 rotation_unitary(double alpha, const AxisVec3 &n);

/// R with U^dag sigma_i U = sum_j R_ij sigma_j. Accepts any unitary; the global
/// phase drops out of the adjoint action.
RotMat3 su2_to_so3(const Mat2 &u);

/// A (x) B, basis index 2a + b.
Mat4 kron2(const Mat2 &a, const Mat2 &b);

bool is_unitary(const Eigen::MatrixXcd &m, double tol = kUnitTol);
bool is_hermitian(const Eigen::MatrixXcd &m, double tol = kUnitTol);

/// |<a|b>| == |a||b| within tol, i.e. equal up to a global phase.
bool equal_up_to_phase(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b, double tol = kComposedTol);
/// Same for operators: a = e^{i g} b entrywise within tol.
bool operators_equal_up_to_phase(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b, double tol);

}  // namespace posimet

#endif
