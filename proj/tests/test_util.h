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

#ifndef POSIMET_TESTS_TEST_UTIL_H
#define POSIMET_TESTS_TEST_UTIL_H

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <random>

#include "posimet/hardware.h"
#include "posimet/noise.h"
#include "posimet/states.h"

namespace posimet::testing {

inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd &m) {
    return m.exp();
}

/// exp(-i a n.sigma / 2) through the generic exponential.
inline Mat2 expm_rotation(double alpha, const AxisVec3 &n) {
    Mat2 h = pauli_dot(n) * (alpha / 2);
    return Mat2((cplx(0, -1) * h).exp());
}

inline AxisVec3 random_axis(std::mt19937_64 &g) {
    std::normal_distribution<double> nd;
    Eigen::Vector3d v;
    do {
        v = {nd(g), nd(g), nd(g)};
    } while (v.norm() < 1e-3);
    return AxisVec3::normalized(v);
}

inline Eigen::VectorXcd random_vector(std::mt19937_64 &g, int dim) {
    std::normal_distribution<double> nd;
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; i++) {
        v[i] = cplx(nd(g), nd(g));
    }
    return v.normalized();
}

inline TwoTlsState random_state(std::mt19937_64 &g) {
    return TwoTlsState::renormalized(Vec4(random_vector(g, 4)));
}

/// Haar-ish unitary from the QR decomposition of a complex Gaussian matrix.
inline Mat2 random_unitary(std::mt19937_64 &g) {
    std::normal_distribution<double> nd;
    Mat2 m;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            m(i, j) = cplx(nd(g), nd(g));
        }
    }
    Eigen::HouseholderQR<Mat2> qr(m);
    Mat2 q = qr.householderQ();
    Mat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < 2; i++) {
        q.col(i) *= r(i, i) / std::abs(r(i, i));
    }
    return q;
}

/// <psi| A (x) B |psi> from the 4x4 matrices.
inline double expectation(const Mat2 &a, const Mat2 &b, const TwoTlsState &psi) {
    return psi.amplitudes().dot(kron2(a, b) * psi.amplitudes()).real();
}

inline Eigen::Matrix3d correlation_oracle(const TwoTlsState &psi) {
    Eigen::Matrix3d t;
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            t(i, j) = expectation(pauli(i), pauli(j), psi);
        }
    }
    return t;
}

/// 4 (<H^2> - <H>^2) straight from the matrices.
inline double variance_oracle(const Eigen::MatrixXcd &h, const Eigen::VectorXcd &psi) {
    double m1 = psi.dot(h * psi).real();
    double m2 = psi.dot(h * h * psi).real();
    return 4 * (m2 - m1 * m1);
}

/// Exact max of the two-TLS QFI over axes: top eigenvalue of 2 + 2 s sym(T) - v v^T.
inline double max_qfi_oracle(const TwoTlsState &psi, int s) {
    Eigen::Matrix3d t = correlation_oracle(psi);
    Eigen::Vector3d ra, rb;
    for (int i = 0; i < 3; i++) {
        ra[i] = expectation(pauli(i), identity2(), psi);
        rb[i] = expectation(identity2(), pauli(i), psi);
    }
    Eigen::Vector3d v = ra + s * rb;
    Eigen::Matrix3d q = 2 * Eigen::Matrix3d::Identity() + s * (t + t.transpose()) - v * v.transpose();
    return Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(q).eigenvalues().maxCoeff();
}

// Device table used throughout the experiment.
inline DeviceParams table_device() {
    DeviceParams d;
    d.qubit = {"qubit", 4.16748, -146.916, 28, 35, 6.69};
    d.antiqubit = {"antiqubit", 4.27398, -144.658, 17, 22, 6.88};
    d.coupler = {"coupler", 5.24975, -152.384, 14, 16, 7.08};
    d.antiqubit_amplitude_ratio = 1.78;
    return d;
}

// Prep 0.97, readout 0.978 / 0.95, optional Stark tones at the 1.78 magic frequency.
inline NoiseModel device_noise(bool stark) {
    NoiseModel n;
    n.prep_fidelity = 0.97;
    n.qubit_confusion = symmetric_confusion(0.978);
    n.antiqubit_confusion = symmetric_confusion(0.95);
    n.stark.enabled = stark;
    n.stark.qubit_detuning_ghz = -9.52e-3;
    n.stark.antiqubit_detuning_ghz = 96.98e-3;
    n.stark.field_rate_ghz = 2.13e-3;
    n.stark.max_pulse_ns = 470;
    return n;
}

}  // namespace posimet::testing

#endif
