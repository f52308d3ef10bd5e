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

#include "posimet/protocols.h"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "posimet/errors.h"
#include "test_util.h"

using namespace posimet;
using posimet::testing::random_axis;
using posimet::testing::random_unitary;

namespace {

constexpr double kPi = std::numbers::pi;

// Projection onto the singlet after an arbitrary local pair, through the full 4x4 product.
double singlet_overlap_oracle(const Mat2 &ua, const Mat2 &ub) {
    Eigen::Vector4cd psi = TwoTlsState::singlet().amplitudes();
    Eigen::Vector4cd out = kron2(ua, ub) * psi;
    return std::norm(psi.dot(out));
}

}  // namespace

TEST(parse_protocol, names_round_trip) {
    for (ProtocolKind k : {ProtocolKind::kSingleQubitThreeAxis, ProtocolKind::kAgnostic,
                           ProtocolKind::kSeparableAntimatter, ProtocolKind::kPositronium,
                           ProtocolKind::kPositroniumSequential}) {
        EXPECT_EQ(parse_protocol(protocol_name(k)), k);
    }
    EXPECT_EQ(parse_protocol("separable"), ProtocolKind::kSeparableAntimatter);
    EXPECT_THROW(parse_protocol("ghz"), DomainError);
}

TEST(protocol_spec, validates) {
    ProtocolSpec s;
    s.n_reps = 0;
    EXPECT_THROW(s.validate(), DomainError);
    EXPECT_THROW(run_ideal(s), DomainError);
}

TEST(positronium_probs, examples) {
    EXPECT_NEAR(positronium_probs(0, AxisVec3::normalized({0.4, -0.1, 0.7}))[0], 1, 1e-12);
    EXPECT_NEAR(positronium_probs(kPi / 4, AxisVec3::normalized({1, 1, 1}))[0], 0.5, 1e-12);
    EXPECT_NEAR(positronium_probs(kPi / 3, AxisVec3::y_hat())[0], 0.25, 1e-12);
    Mat2 u = rotation_unitary(kPi / 3, AxisVec3::y_hat());
    EXPECT_NEAR(singlet_overlap_oracle(u, u.adjoint()), 0.25, 1e-12);
}

TEST(positronium_probs, axis_independent) {
    std::mt19937_64 g(41);
    const double alpha = 0.83;
    double lo = 1, hi = 0;
    for (int t = 0; t < 1000; t++) {
        double p = positronium_probs(alpha, random_axis(g))[0];
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    EXPECT_LT(hi - lo, 1e-10);
    EXPECT_NEAR(hi, std::pow(std::cos(alpha), 2), 1e-12);
}

TEST(positronium_probs, matches_full_pipeline) {
    std::mt19937_64 g(42);
    std::uniform_real_distribution<double> ua(-kPi, kPi);
    for (int t = 0; t < 100; t++) {
        double a = ua(g);
        AxisVec3 n = random_axis(g);
        Mat2 u = rotation_unitary(a, n);
        EXPECT_NEAR(positronium_probs(a, n)[0], singlet_overlap_oracle(u, u.adjoint()), 1e-12);
    }
}

TEST(positronium_probs, constant_fi) {
    std::mt19937_64 g(43);
    for (double a : {0.1, 0.4, 1.0, 1.3, 2.0, 2.9}) {
        EXPECT_NEAR(classical_fi(positronium_distribution(random_axis(g)), a), 4, 1e-6) << a;
    }
}

TEST(singlet, invariant_under_identical_unitaries) {
    std::mt19937_64 g(44);
    TwoTlsState s = TwoTlsState::singlet();
    for (int t = 0; t < 100; t++) {
        Mat2 u = random_unitary(g);
        TwoTlsState out(kron2(u, u) * s.amplitudes());
        EXPECT_TRUE(out.equal_up_to_phase(s, 1e-10));
    }
}

TEST(singlet, sliding_identity) {
    std::mt19937_64 g(45);
    std::uniform_real_distribution<double> ua(-kPi, kPi);
    Vec4 s = TwoTlsState::singlet().amplitudes();
    for (int t = 0; t < 100; t++) {
        double a = ua(g);
        AxisVec3 n = random_axis(g);
        Mat2 u = rotation_unitary(a, n);
        Vec4 lhs = kron2(u, u.adjoint()) * s;
        Vec4 rhs = kron2(u * u, identity2()) * s;
        EXPECT_TRUE(equal_up_to_phase(lhs, rhs, 1e-10));
    }
}

TEST(agnostic_probs, examples) {
    AxisVec3 n = AxisVec3::normalized({0.3, -0.2, 0.9});
    EXPECT_NEAR(agnostic_probs(0, n)[0], 1, 1e-12);
    EXPECT_NEAR(agnostic_probs(kPi, n)[0], 0, 1e-12);
    EXPECT_NEAR(agnostic_probs(1.1, n)[0], std::pow(std::cos(0.55), 2), 1e-12);
    EXPECT_NEAR(classical_fi(agnostic_distribution(n), kPi / 2), 1, 1e-8);
    EXPECT_NEAR(singlet_overlap_oracle(rotation_unitary(1.1, n), identity2()), std::pow(std::cos(0.55), 2), 1e-12);
}

TEST(separable_probs, examples) {
    for (double a : {0.2, 1.0, 2.5}) {
        EXPECT_NEAR(separable_probs(a, AxisVec3::x_hat()).p_xplus, 1, 1e-12);
        EXPECT_NEAR(separable_probs(a, AxisVec3::z_hat()).p_xplus, std::pow(std::cos(a / 2), 2), 1e-12);
        // <sigma_x> = 2 P - 1 = cos(a).
        EXPECT_NEAR(2 * separable_probs(a, AxisVec3::z_hat()).p_xplus - 1, std::cos(a), 1e-12);
        EXPECT_NEAR(separable_probs(a, AxisVec3::z_hat()).p_zplus, 1, 1e-12);
    }
    EXPECT_NEAR(separable_probs(kPi, AxisVec3::y_hat()).p_xplus, 0, 1e-12);
}

TEST(separable_fi, axis_average_ceiling) {
    for (double a : {0.3, 1.2, 2.0}) {
        EXPECT_NEAR(separable_axis_average_fi(a), 4.0 / 3, 1e-6);
    }
}

TEST(single_qubit_three_axis_fi, two_thirds) {
    std::mt19937_64 g(46);
    std::uniform_real_distribution<double> ua(0.1, 3.0);
    for (int t = 0; t < 50; t++) {
        EXPECT_NEAR(single_qubit_three_axis_fi(ua(g), random_axis(g)), 2.0 / 3, 1e-8);
    }
    EXPECT_NEAR(single_qubit_three_axis_fi(0.7, AxisVec3::z_hat()), 2.0 / 3, 1e-8);
}

TEST(sequential_positronium_qfi, scaling) {
    for (int n : {1, 2, 3, 4}) {
        SequentialQfi q = sequential_positronium_qfi(n);
        EXPECT_NEAR(q.qfi, 4.0 * n * n, 1e-8 * n * n);
        EXPECT_EQ(q.v_st, 2 * n);
    }
    EXPECT_THROW(sequential_positronium_qfi(0), DomainError);
}

TEST(positronium_sequential_probs, fringe) {
    AxisVec3 n = AxisVec3::normalized({1, 2, 3});
    for (int reps : {1, 2, 5}) {
        EXPECT_NEAR(positronium_sequential_probs(0.21, n, reps)[0], std::pow(std::cos(0.21 * reps), 2), 1e-12);
    }
}

TEST(run_ideal, fi_per_two_vst) {
    ProtocolSpec s;
    s.axis = AxisVec3::normalized({0.2, 0.5, -0.8});
    s.alpha = 0.6;
    s.kind = ProtocolKind::kPositronium;
    ProtocolResult r = run_ideal(s);
    EXPECT_NEAR(r.fi_per_two_vst, 4, 1e-6);
    EXPECT_EQ(r.v_st, 2);
    EXPECT_NEAR(r.probabilities[0] + r.probabilities[1], 1, 1e-12);

    s.kind = ProtocolKind::kAgnostic;
    EXPECT_NEAR(run_ideal(s).fi_per_two_vst, 1, 1e-6);

    s.kind = ProtocolKind::kSingleQubitThreeAxis;
    r = run_ideal(s);
    EXPECT_EQ(r.v_st, 1);
    EXPECT_NEAR(r.fi_per_two_vst, 4.0 / 3, 1e-6);

    s.kind = ProtocolKind::kPositroniumSequential;
    s.n_reps = 3;
    r = run_ideal(s);
    EXPECT_EQ(r.v_st, 6);
    EXPECT_NEAR(r.fi, 36, 1e-5);
    EXPECT_NEAR(r.fi_per_two_vst, 12, 1e-5);
}

TEST(run_ideal, separable_axis_average) {
    double sum = 0;
    for (const AxisVec3 &n : {AxisVec3::x_hat(), AxisVec3::y_hat(), AxisVec3::z_hat()}) {
        ProtocolSpec s{ProtocolKind::kSeparableAntimatter, n, 0.9, 1};
        sum += run_ideal(s).fi_per_two_vst;
    }
    EXPECT_NEAR(sum / 3, 4.0 / 3, 1e-6);
}

TEST(run_ideal, degenerate_alpha_is_offset) {
    ProtocolSpec s{ProtocolKind::kPositronium, AxisVec3::z_hat(), 0.0, 1};
    ProtocolResult r = run_ideal(s);
    EXPECT_TRUE(r.alpha_offset);
    EXPECT_NEAR(r.fi, 4, 1e-4);
    s.alpha = 0.5;
    EXPECT_FALSE(run_ideal(s).alpha_offset);
}
