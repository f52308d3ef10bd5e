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

#include "posimet/states.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "posimet/errors.h"
#include "test_util.h"

using namespace posimet;
using posimet::testing::correlation_oracle;
using posimet::testing::expectation;
using posimet::testing::random_state;
using posimet::testing::random_unitary;

namespace {

double max_abs(const Eigen::MatrixXd &m) {
    return m.cwiseAbs().maxCoeff();
}

}  // namespace

TEST(two_tls_state, validates_norm) {
    EXPECT_THROW(TwoTlsState(1, 1, 0, 0), DomainError);
    EXPECT_NO_THROW(TwoTlsState::renormalized(Vec4(1, 1, 0, 0)));
    EXPECT_THROW(TwoTlsState::renormalized(Vec4::Zero()), DomainError);
}

TEST(bloch_vectors, singlet_is_locally_mixed) {
    BlochPair r = bloch_vectors(TwoTlsState::singlet());
    EXPECT_LE(r.a.norm(), 1e-15);
    EXPECT_LE(r.b.norm(), 1e-15);
}

TEST(bloch_vectors, product_of_eigenstates) {
    BlochPair r = bloch_vectors(TwoTlsState::product(ket_x_plus(), ket_z_plus()));
    EXPECT_LE((r.a - Eigen::Vector3d(1, 0, 0)).norm(), 1e-15);
    EXPECT_LE((r.b - Eigen::Vector3d(0, 0, 1)).norm(), 1e-15);
}

TEST(bloch_vectors, reference_state) {
    TwoTlsState chi = reference_state(0.6);
    BlochPair r = bloch_vectors(chi);
    EXPECT_LE((r.a - Eigen::Vector3d(0, 0, 0.8)).norm(), 1e-12);
    EXPECT_LE((r.b - Eigen::Vector3d(0, 0, 0.8)).norm(), 1e-12);
    for (int i = 0; i < 3; i++) {
        EXPECT_NEAR(r.a[i], expectation(pauli(i), identity2(), chi), 1e-12);
    }
}

TEST(bloch_vectors, match_direct_expectation) {
    std::mt19937_64 g(11);
    for (int t = 0; t < 200; t++) {
        TwoTlsState psi = random_state(g);
        BlochPair r = bloch_vectors(psi);
        for (int i = 0; i < 3; i++) {
            EXPECT_NEAR(r.a[i], expectation(pauli(i), identity2(), psi), 1e-12);
            EXPECT_NEAR(r.b[i], expectation(identity2(), pauli(i), psi), 1e-12);
        }
        EXPECT_LE(r.a.norm(), 1 + 1e-12);
        EXPECT_LE(r.b.norm(), 1 + 1e-12);
    }
}

TEST(correlation_tensor, singlet_and_phi_plus) {
    EXPECT_LE(max_abs(correlation_tensor(TwoTlsState::singlet()) + Eigen::Matrix3d::Identity()), 1e-15);
    Eigen::Matrix3d phi = correlation_oracle(TwoTlsState::phi_plus());
    Eigen::Matrix3d expected = Eigen::Vector3d(1, -1, 1).asDiagonal();
    EXPECT_LE(max_abs(phi - expected), 1e-15);
    EXPECT_LE(max_abs(correlation_tensor(TwoTlsState::phi_plus()) - expected), 1e-15);
}

TEST(correlation_tensor, product_state_is_outer_product) {
    TwoTlsState psi = TwoTlsState::product(ket_x_plus(), ket_z_plus());
    Eigen::Matrix3d t = correlation_tensor(psi);
    Eigen::Matrix3d expected = Eigen::Matrix3d::Zero();
    expected(0, 2) = 1;
    EXPECT_LE(max_abs(t - expected), 1e-15);
    BlochPair r = bloch_vectors(psi);
    EXPECT_LE(max_abs(t - r.a * r.b.transpose()), 1e-15);
}

TEST(correlation_tensor, closed_form_matches_expectations) {
    std::mt19937_64 g(12);
    for (int t = 0; t < 500; t++) {
        TwoTlsState psi = random_state(g);
        Eigen::Matrix3d tt = correlation_tensor(psi);
        EXPECT_LE(max_abs(tt - correlation_oracle(psi)), 1e-12);
        EXPECT_LE(max_abs(tt), 1 + 1e-12);
        EXPECT_LE(std::abs(tt.determinant()), 1 + 1e-12);
    }
}

TEST(concurrence, special_states) {
    EXPECT_NEAR(concurrence(TwoTlsState::singlet()), 1, 1e-15);
    EXPECT_NEAR(concurrence(TwoTlsState::phi_plus()), 1, 1e-15);
    std::mt19937_64 g(13);
    for (int t = 0; t < 20; t++) {
        Vec2 a = posimet::testing::random_vector(g, 2);
        Vec2 b = posimet::testing::random_vector(g, 2);
        EXPECT_NEAR(concurrence(TwoTlsState::product(a, b)), 0, 1e-15);
    }
    // 2 sqrt(l1 l2) with l = (1 +- 0.8)/2.
    EXPECT_NEAR(concurrence(reference_state(0.6)), 2 * std::sqrt(0.9 * 0.1), 1e-12);
    EXPECT_NEAR(concurrence(reference_state(0.6)), 0.6, 1e-12);
}

TEST(reference_state, special_values) {
    EXPECT_TRUE(reference_state(1).equal_up_to_phase(TwoTlsState::phi_plus(), 1e-14));
    EXPECT_TRUE(reference_state(0).equal_up_to_phase(TwoTlsState::basis(0), 1e-14));
    TwoTlsState chi = reference_state(0.6);
    EXPECT_NEAR(chi.a().real(), std::sqrt(0.9), 1e-15);
    EXPECT_NEAR(chi.d().real(), std::sqrt(0.1), 1e-15);
    EXPECT_THROW(reference_state(1.1), DomainError);
    EXPECT_THROW(reference_state(-0.1), DomainError);
    for (double c : {0.0, 0.1, 0.37, 0.9, 0.999, 1.0}) {
        EXPECT_NEAR(concurrence(reference_state(c)), c, 1e-12);
    }
}

TEST(apply_local, identities_and_rotations) {
    std::mt19937_64 g(14);
    TwoTlsState psi = random_state(g);
    EXPECT_TRUE(apply_local(identity2(), identity2(), psi).equal_up_to_phase(psi, 1e-15));

    Mat2 minus_i_y = cplx(0, -1) * pauli_y();
    EXPECT_TRUE(
        apply_local(identity2(), minus_i_y, TwoTlsState::phi_plus()).equal_up_to_phase(TwoTlsState::singlet()));

    for (int t = 0; t < 20; t++) {
        Mat2 u = random_unitary(g);
        EXPECT_TRUE(apply_local(u, u, TwoTlsState::singlet()).equal_up_to_phase(TwoTlsState::singlet()));
    }
    Mat2 m;
    m << 1, 0, 0, 2;
    EXPECT_THROW(apply_local(m, identity2(), psi), DomainError);
}

TEST(apply_local, concurrence_invariant) {
    std::mt19937_64 g(15);
    for (int t = 0; t < 200; t++) {
        TwoTlsState psi = random_state(g);
        TwoTlsState out = apply_local(random_unitary(g), random_unitary(g), psi);
        EXPECT_NEAR(concurrence(out), concurrence(psi), 1e-10);
    }
}

TEST(apply_local, correlation_tensor_of_rotated_reference) {
    std::mt19937_64 g(16);
    std::uniform_real_distribution<double> uc(0, 1);
    for (int t = 0; t < 200; t++) {
        double c0 = uc(g);
        Mat2 ua = random_unitary(g);
        Mat2 ub = random_unitary(g);
        TwoTlsState psi = apply_local(ua, ub, reference_state(c0));
        RotMat3 ra = su2_to_so3(ua);
        RotMat3 rb = su2_to_so3(ub);
        Eigen::Matrix3d d = Eigen::Vector3d(c0, -c0, 1).asDiagonal();
        Eigen::Matrix3d expected = ra * d * rb.transpose();
        EXPECT_LE(max_abs(correlation_tensor(psi) - expected), 1e-10);
        BlochPair r = bloch_vectors(psi);
        double s = std::sqrt(1 - c0 * c0);
        EXPECT_LE((r.a - s * ra * Eigen::Vector3d::UnitZ()).norm(), 1e-10);
        EXPECT_LE((r.b - s * rb * Eigen::Vector3d::UnitZ()).norm(), 1e-10);
    }
}
