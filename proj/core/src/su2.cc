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

#include "posimet/su2.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "posimet/errors.h"

namespace posimet {

namespace {
constexpr cplx I1{0.0, 1.0};
}

AxisVec3::AxisVec3(double x, double y, double z) : v_(x, y, z) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z) || std::abs(v_.norm() - 1.0) > kUnitTol) {
        throw DomainError("axis is not a unit vector (norm " + std::to_string(v_.norm()) + ")");
    }
}

AxisVec3 AxisVec3::from_angles(double theta, double phi) {
    return normalized(
        {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)});
}

AxisVec3 AxisVec3::normalized(const Eigen::Vector3d &v) {
    double n = v.norm();
    if (!(n > 0) || !std::isfinite(n)) {
        throw DomainError("cannot normalize a zero or non-finite vector");
    }
    Eigen::Vector3d u = v / n;
    return {u.x(), u.y(), u.z()};
}

double AxisVec3::theta() const {
    return std::acos(std::clamp(v_.z(), -1.0, 1.0));
}

double AxisVec3::phi() const {
    return std::atan2(v_.y(), v_.x());
}

Mat2 identity2() {
    return Mat2::Identity();
}

Mat2 pauli_x() {
    Mat2 m;
    m << 0, 1, 1, 0;
    return m;
}

Mat2 pauli_y() {
    Mat2 m;
    m << 0, -I1, I1, 0;
    return m;
}

Mat2 pauli_z() {
    Mat2 m;
    m << 1, 0, 0, -1;
    return m;
}

Mat2 pauli(int i) {
    switch (i) {
        case 0:
            return pauli_x();
        case 1:
            return pauli_y();
        case 2:
            return pauli_z();
        default:
            throw DomainError("pauli index must be 0, 1 or 2");
    }
}

Mat2 pauli_dot(const AxisVec3 &n) {
    Mat2 m;
    m << n.z(), cplx(n.x(), -n.y()), cplx(n.x(), n.y()), -n.z();
    return m;
}

Mat2 rotation_unitary(double alpha, const AxisVec3 &n) {
    double c = std::cos(alpha / 2);
    double s = std::sin(alpha / 2);
    return c * identity2() - I1 * s * pauli_dot(n);
}

RotMat3 su2_to_so3(const Mat2 &u) {
    if (!is_unitary(u, kComposedTol)) {
        throw DomainError("su2_to_so3 requires a unitary matrix");
    }
    RotMat3 r;
    for (int i = 0; i < 3; i++) {
        Mat2 conj = u.adjoint() * pauli(i) * u;
        for (int j = 0; j < 3; j++) {
            r(i, j) = 0.5 * (pauli(j) * conj).trace().real();
        }
    }
    return r;
}

Mat4 kron2(const Mat2 &a, const Mat2 &b) {
    Mat4 k;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return k;
}

bool is_unitary(const Eigen::MatrixXcd &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    Eigen::MatrixXcd d = m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    return d.cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const Eigen::MatrixXcd &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool equal_up_to_phase(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b, double tol) {
    if (a.size() != b.size()) {
        return false;
    }
    return std::abs(std::abs(a.dot(b)) - a.norm() * b.norm()) <= tol && std::abs(a.norm() - b.norm()) <= tol;
}

bool operators_equal_up_to_phase(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    // Align the phase on the largest entry of b.
    Eigen::Index r = 0, c = 0;
    b.cwiseAbs().maxCoeff(&r, &c);
    if (std::abs(b(r, c)) == 0.0) {
        return a.cwiseAbs().maxCoeff() <= tol;
    }
    cplx phase = a(r, c) / b(r, c);
    if (std::abs(std::abs(phase) - 1.0) > tol) {
        return false;
    }
    phase /= std::abs(phase);
    return (a - phase * b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace posimet
