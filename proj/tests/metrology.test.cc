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

#include "posimet/metrology.h"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "posimet/errors.h"
#include "test_util.h"

using namespace posimet;
using posimet::testing::max_qfi_oracle;
using posimet::testing::random_axis;
using posimet::testing::random_state;
using posimet::testing::random_unitary;
using posimet::testing::random_vector;
using posimet::testing::variance_oracle;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXcd random_hermitian(std::mt19937_64 &g, int dim) {
    std::normal_distribution<double> nd;
    Eigen::MatrixXcd m(dim, dim);
    for (int i = 0; i < dim; i++) {
        for (int j = 0; j < dim; j++) {
            m(i, j) = cplx(nd(g), nd(g));
        }
    }
    return 0.5 * (m + m.adjoint());
}

}  // namespace

TEST(evolution_sign, only_plus_minus_one) {
    EXPECT_THROW(EvolutionSign(0), DomainError);
    EXPECT_THROW(EvolutionSign(2), DomainError);
    EXPECT_EQ(EvolutionSign::minus().value(), -1);
}

TEST(classical_fi, positronium_fringe) {
    OutcomeDistribution d([](double a) {
        return std::vector<double>{std::cos(a) * std::cos(a), std::sin(a) * std::sin(a)};
    });
    EXPECT_NEAR(classical_fi(d, kPi / 8), 4, 1e-8);
}

TEST(classical_fi, constant_distribution) {
    OutcomeDistribution d([](double) { return std::vector<double>{0.3, 0.7}; });
    EXPECT_NEAR(classical_fi(d, 0.4), 0, 1e-15);
}

TEST(classical_fi, half_angle_fringe) {
    OutcomeDistribution d([](double a) {
        return std::vector<double>{std::pow(std::cos(a / 2), 2), std::pow(std::sin(a / 2), 2)};
    });
    // (dP)^2 / (P (1 - P)) = (sin(a)/2)^2 / (cos^2(a/2) sin^2(a/2)) = 1.
    double a = kPi / 3;
    double p = std::pow(std::cos(a / 2), 2);
    double oracle = std::pow(std::sin(a) / 2, 2) / (p * (1 - p));
    EXPECT_NEAR(oracle, 1, 1e-14);
    EXPECT_NEAR(classical_fi(d, a), oracle, 1e-8);
}

TEST(classical_fi, rejects_bad_distributions) {
    OutcomeDistribution negative([](double) { return std::vector<double>{1.1, -0.1}; });
    EXPECT_THROW(classical_fi(negative, 0.1), DomainError);
    OutcomeDistribution unnormalized([](double) { return std::vector<double>{0.5, 0.4}; });
    EXPECT_THROW(classical_fi(unnormalized, 0.1), DomainError);
    OutcomeDistribution ok([](double) { return std::vector<double>{0.5, 0.5}; });
    EXPECT_THROW(classical_fi(ok, 0.1, 0.0), DomainError);
}

TEST(qfi_pure, single_qubit_families) {
    auto family = [](const Vec2 &probe) {
        return [probe](double a) -> Eigen::VectorXcd { return rotation_unitary(a, AxisVec3::z_hat()) * probe; };
    };
    EXPECT_NEAR(qfi_pure(family(ket_z_plus()), 0.7), 0, 1e-9);
    EXPECT_NEAR(qfi_pure(family(ket_x_plus()), 0.7), 1, 1e-8);
}

TEST(qfi_pure, positronium_family) {
    std::mt19937_64 g(21);
    for (int t = 0; t < 10; t++) {
        AxisVec3 n = random_axis(g);
        StateFamily f = [n](double a) -> Eigen::VectorXcd {
            Mat2 u = rotation_unitary(a, n);
            return kron2(u, u.adjoint()) * TwoTlsState::singlet().amplitudes();
        };
        EXPECT_NEAR(qfi_pure(f, 0.3 + 0.1 * t), 4, 1e-8);
    }
}

TEST(qfi_pure, rejects_unnormalized_family) {
    StateFamily f = [](double a) -> Eigen::VectorXcd { return Vec2(1 + a, 0); };
    EXPECT_THROW(qfi_pure(f, 0.5), DomainError);
}

TEST(generator_variance_qfi, examples) {
    Mat2 h = pauli_z() / 2;
    EXPECT_NEAR(generator_variance_qfi(h, ket_x_plus()), 1, 1e-15);
    EXPECT_NEAR(generator_variance_qfi(h, ket_z_plus()), 0, 1e-15);
    std::mt19937_64 g(22);
    for (int t = 0; t < 10; t++) {
        Mat4 hm = two_tls_generator(random_axis(g), EvolutionSign::minus());
        EXPECT_NEAR(generator_variance_qfi(hm, TwoTlsState::singlet().amplitudes()), 4, 1e-12);
    }
    Mat2 bad;
    bad << 0, 1, 0, 0;
    EXPECT_THROW(generator_variance_qfi(bad, ket_x_plus()), DomainError);
}

TEST(generator_variance_qfi, equals_qfi_pure_of_generated_family) {
    // Pins the factor 4: QFI of exp(-i a H)|psi> is 4 Var(H).
    std::mt19937_64 g(23);
    for (int t = 0; t < 30; t++) {
        Eigen::MatrixXcd h = random_hermitian(g, 4);
        Eigen::VectorXcd psi = random_vector(g, 4);
        StateFamily f = [&](double a) -> Eigen::VectorXcd {
            return posimet::testing::expm(cplx(0, -1) * a * h) * psi;
        };
        EXPECT_NEAR(qfi_pure(f, 0.2), generator_variance_qfi(h, psi), 1e-6 * (1 + generator_variance_qfi(h, psi)));
        EXPECT_NEAR(variance_oracle(h, psi), generator_variance_qfi(h, psi), 1e-10);
    }
}

TEST(two_tls_qfi, examples) {
    std::mt19937_64 g(24);
    for (int t = 0; t < 20; t++) {
        AxisVec3 n = random_axis(g);
        EXPECT_NEAR(two_tls_qfi(TwoTlsState::singlet(), EvolutionSign::minus(), n), 4, 1e-12);
        EXPECT_NEAR(two_tls_qfi(TwoTlsState::singlet(), EvolutionSign::plus(), n), 0, 1e-12);
    }
    TwoTlsState prod = TwoTlsState::product(ket_x_plus(), ket_z_plus());
    double v = two_tls_qfi(prod, EvolutionSign::minus(), AxisVec3::z_hat());
    EXPECT_NEAR(v, 1, 1e-15);
    EXPECT_NEAR(variance_oracle(two_tls_generator(AxisVec3::z_hat(), EvolutionSign::minus()), prod.amplitudes()),
                1, 1e-15);
}

TEST(two_tls_qfi, equals_generator_variance) {
    std::mt19937_64 g(25);
    for (int t = 0; t < 500; t++) {
        TwoTlsState psi = random_state(g);
        EvolutionSign s(t % 2 ? 1 : -1);
        AxisVec3 n = random_axis(g);
        EXPECT_NEAR(two_tls_qfi(psi, s, n), variance_oracle(two_tls_generator(n, s), psi.amplitudes()), 1e-10);
    }
}

TEST(two_tls_qfi, singlet_axis_independent) {
    std::mt19937_64 g(26);
    double sum = 0, sum2 = 0;
    const int n = 1000;
    for (int t = 0; t < n; t++) {
        double v = two_tls_qfi(TwoTlsState::singlet(), EvolutionSign::minus(), random_axis(g));
        sum += v;
        sum2 += v * v;
    }
    double mean = sum / n;
    EXPECT_LT(std::sqrt(std::max(0.0, sum2 / n - mean * mean)), 1e-10);
}

TEST(concurrence_bound, values) {
    EXPECT_EQ(concurrence_bound(0), 2);
    EXPECT_EQ(concurrence_bound(1), 4);
    EXPECT_EQ(concurrence_bound(0.5), 3);
    EXPECT_THROW(concurrence_bound(1.5), DomainError);
    EXPECT_THROW(concurrence_bound(-0.5), DomainError);
}

TEST(optimal_state, maximally_entangled_is_singlet) {
    TwoTlsState psi = optimal_state(1.0, EvolutionSign::minus(), kPi, OptimalBranch::kAxisRotation, identity2());
    EXPECT_TRUE(psi.equal_up_to_phase(TwoTlsState::singlet(), 1e-12));
    TwoTlsState pi_branch = optimal_state(1.0, EvolutionSign::minus(), 0.0, OptimalBranch::kPiRotation, identity2());
    EXPECT_TRUE(pi_branch.equal_up_to_phase(TwoTlsState::singlet(), 1e-12));
}

TEST(optimal_state, product_state_reaches_two) {
    TwoTlsState psi = optimal_state(0.0, EvolutionSign::minus(), 0.0, OptimalBranch::kAxisRotation, identity2());
    EXPECT_NEAR(concurrence(psi), 0, 1e-12);
    EXPECT_NEAR(max_qfi_oracle(psi, -1), 2, 1e-12);
    EXPECT_NEAR(max_qfi_over_axes(psi, EvolutionSign::minus()).value, 2, 1e-8);
}

TEST(optimal_state, partial_entanglement_plus_sign) {
    for (OptimalBranch b : {OptimalBranch::kAxisRotation, OptimalBranch::kPiRotation}) {
        TwoTlsState psi = optimal_state(0.6, EvolutionSign::plus(), kPi / 4, b, identity2());
        EXPECT_NEAR(concurrence(psi), 0.6, 1e-12);
        EXPECT_NEAR(max_qfi_oracle(psi, 1), 3.2, 1e-12);
        EXPECT_NEAR(max_qfi_over_axes(psi, EvolutionSign::plus()).value, 3.2, 1e-6);
    }
}

TEST(optimal_state, saturates_bound) {
    std::mt19937_64 g(27);
    std::uniform_real_distribution<double> uc(0, 1), up(-kPi, kPi);
    for (int t = 0; t < 100; t++) {
        double c0 = uc(g);
        EvolutionSign s(t % 2 ? 1 : -1);
        OptimalBranch b = (t / 2) % 2 ? OptimalBranch::kPiRotation : OptimalBranch::kAxisRotation;
        TwoTlsState psi = optimal_state(c0, s, up(g), b, random_unitary(g));
        EXPECT_NEAR(concurrence(psi), c0, 1e-10);
        EXPECT_NEAR(max_qfi_oracle(psi, s.value()), concurrence_bound(c0), 1e-9);
        EXPECT_NEAR(max_qfi_over_axes(psi, s).value, concurrence_bound(c0), 1e-6);
    }
}

TEST(optimal_state, invalid_branch) {
    EXPECT_THROW(optimal_state(0.5, EvolutionSign::minus(), 0.0, 2, identity2()), DomainError);
    EXPECT_THROW(optimal_state(0.5, EvolutionSign::minus(), 0.0, static_cast<OptimalBranch>(7), identity2()),
                 DomainError);
    EXPECT_THROW(optimal_state(1.5, EvolutionSign::minus(), 0.0, 0, identity2()), DomainError);
}

TEST(max_qfi_over_axes, examples) {
    EXPECT_NEAR(max_qfi_over_axes(TwoTlsState::singlet(), EvolutionSign::minus()).value, 4, 1e-12);

    AxisMaximum phi = max_qfi_over_axes(TwoTlsState::phi_plus(), EvolutionSign::plus());
    EXPECT_NEAR(phi.value, 4, 1e-9);
    EXPECT_LT(std::abs(phi.axis.y()), 1e-4);

    AxisMaximum prod =
        max_qfi_over_axes(TwoTlsState::product(ket_x_plus(), ket_z_plus()), EvolutionSign::minus());
    EXPECT_NEAR(prod.value, 2, 1e-9);
    EXPECT_NEAR(std::abs(prod.axis.y()), 1, 1e-4);
}

TEST(max_qfi_over_axes, concurrence_bound_holds) {
    std::mt19937_64 g(28);
    for (int t = 0; t < 200; t++) {
        TwoTlsState psi = random_state(g);
        for (int s : {-1, 1}) {
            AxisMaximum m = max_qfi_over_axes(psi, EvolutionSign(s));
            EXPECT_LE(m.value, concurrence_bound(concurrence(psi)) + 1e-6);
            EXPECT_NEAR(m.value, max_qfi_oracle(psi, s), 1e-8);
            EXPECT_NEAR(two_tls_qfi(psi, EvolutionSign(s), m.axis), m.value, 1e-12);
        }
    }
}

TEST(classical_fi, bounded_by_qfi) {
    std::mt19937_64 g(29);
    for (int t = 0; t < 50; t++) {
        Eigen::MatrixXcd h = random_hermitian(g, 4);
        Eigen::VectorXcd psi = random_vector(g, 4);
        Mat4 basis = posimet::testing::expm(cplx(0, 1) * random_hermitian(g, 4));
        auto state = [&](double a) -> Eigen::VectorXcd { return posimet::testing::expm(cplx(0, -1) * a * h) * psi; };
        OutcomeDistribution d([&](double a) {
            Eigen::VectorXcd amp = basis.adjoint() * state(a);
            std::vector<double> p(4);
            for (int j = 0; j < 4; j++) {
                p[j] = std::norm(amp[j]);
            }
            return p;
        });
        EXPECT_LE(classical_fi(d, 0.4), qfi_pure(state, 0.4) + 1e-6);
    }
}

TEST(is_axis_independent_optimal, examples) {
    EXPECT_TRUE(is_axis_independent_optimal(TwoTlsState::singlet(), EvolutionSign::minus(), 1e-10));
    EXPECT_FALSE(is_axis_independent_optimal(TwoTlsState::phi_plus(), EvolutionSign::minus(), 1e-10));
    EXPECT_FALSE(is_axis_independent_optimal(TwoTlsState::singlet(), EvolutionSign::plus(), 1e-10));
    for (const TwoTlsState &s : {TwoTlsState::phi_plus(), TwoTlsState::phi_minus(), TwoTlsState::triplet_zero()}) {
        EXPECT_FALSE(is_axis_independent_optimal(s, EvolutionSign::plus(), 1e-10));
    }
}

TEST(fibonacci_sphere, unit_and_balanced) {
    std::vector<AxisVec3> pts = fibonacci_sphere(10000);
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const AxisVec3 &p : pts) {
        mean += p.vec();
    }
    EXPECT_LT((mean / pts.size()).norm(), 1e-3);
}
