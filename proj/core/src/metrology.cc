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

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "posimet/errors.h"
#include "posimet/internal/nelder_mead.h"

namespace posimet {

EvolutionSign::EvolutionSign(int s) : s_(s) {
    if (s != 1 && s != -1) {
        throw DomainError("evolution sign must be +1 or -1, got " + std::to_string(s));
    }
}

std::vector<double> OutcomeDistribution::probabilities(double alpha) const {
    std::vector<double> p = f_(alpha);
    double total = 0;
    for (double v : p) {
        if (!(v >= -kProbabilityFloor)) {
            throw DomainError("negative outcome probability " + std::to_string(v));
        }
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw DomainError("outcome probabilities sum to " + std::to_string(total));
    }
    return p;
}

double classical_fi(const OutcomeDistribution &dist, double alpha, double step) {
    if (!(step > 0)) {
        throw DomainError("finite-difference step must be positive");
    }
    std::vector<double> p0 = dist.probabilities(alpha);
    std::vector<double> pp = dist.probabilities(alpha + step);
    std::vector<double> pm = dist.probabilities(alpha - step);
    if (pp.size() != p0.size() || pm.size() != p0.size()) {
        throw DomainError("outcome count changes with alpha");
    }
    double fi = 0;
    for (size_t j = 0; j < p0.size(); j++) {
        if (p0[j] < kProbabilityFloor) {
            continue;
        }
        double dp = (pp[j] - pm[j]) / (2 * step);
        fi += dp * dp / p0[j];
    }
    return fi;
}

double qfi_pure(const StateFamily &family, double alpha, double step) {
    if (!(step > 0)) {
        throw DomainError("finite-difference step must be positive");
    }
    Eigen::VectorXcd psi = family(alpha);
    Eigen::VectorXcd plus = family(alpha + step);
    Eigen::VectorXcd minus = family(alpha - step);
    for (const auto *v : {&psi, &plus, &minus}) {
        if (std::abs(v->squaredNorm() - 1.0) > 1e-8) {
            throw DomainError("state family leaves the normalized manifold across the stencil");
        }
    }
    Eigen::VectorXcd d = (plus - minus) / (2 * step);
    return 4 * (d.squaredNorm() - std::norm(psi.dot(d)));
}

double generator_variance_qfi(const Eigen::MatrixXcd &h, const Eigen::VectorXcd &psi) {
    if (h.rows() != h.cols() || h.rows() != psi.size()) {
        throw DomainError("generator and state dimensions differ");
    }
    if (!is_hermitian(h, 1e-12)) {
        throw DomainError("generator is not Hermitian");
    }
    if (std::abs(psi.squaredNorm() - 1.0) > 1e-10) {
        throw DomainError("state is not normalized");
    }
    Eigen::VectorXcd hpsi = h * psi;
    double mean = psi.dot(hpsi).real();
    double second = hpsi.squaredNorm();
    return 4 * (second - mean * mean);
}

Mat4 two_tls_generator(const AxisVec3 &n, EvolutionSign s) {
    Mat2 ns = pauli_dot(n);
    return 0.5 * (kron2(ns, identity2()) + double(s.value()) * kron2(identity2(), ns));
}

double two_tls_qfi(const TwoTlsState &psi, EvolutionSign s, const AxisVec3 &n) {
    Eigen::Matrix3d t = correlation_tensor(psi);
    BlochPair r = bloch_vectors(psi);
    const Eigen::Vector3d &v = n.vec();
    double sv = s.value();
    double proj = v.dot(r.a) + sv * v.dot(r.b);
    return 2 * (1 + sv * v.dot(t * v)) - proj * proj;
}

double concurrence_bound(double c) {
    if (!(c >= 0.0 && c <= 1.0)) {
        throw DomainError("concurrence must lie in [0, 1]");
    }
    return 2 * (1 + c);
}

TwoTlsState optimal_state(double c0, EvolutionSign s, double phi, OptimalBranch branch, const Mat2 &u_id) {
    TwoTlsState chi = reference_state(c0);
    bool minus = s.value() == -1;
    Mat2 u_rel;
    switch (branch) {
        case OptimalBranch::kAxisRotation:
            u_rel = rotation_unitary(phi, minus ? AxisVec3::y_hat() : AxisVec3::x_hat());
            break;
        case OptimalBranch::kPiRotation: {
            AxisVec3 axis = minus ? AxisVec3(0, std::cos(phi), std::sin(phi))
                                  : AxisVec3(std::cos(phi), 0, std::sin(phi));
            u_rel = rotation_unitary(std::numbers::pi, axis);
            break;
        }
        default:
            throw DomainError("unknown optimal-state branch");
    }
    return apply_local(u_id, u_id * u_rel, chi);
}

TwoTlsState optimal_state(double c0, EvolutionSign s, double phi, int branch, const Mat2 &u_id) {
    if (branch != 0 && branch != 1) {
        throw DomainError("optimal-state branch must be 0 (axis rotation) or 1 (pi rotation)");
    }
    return optimal_state(c0, s, phi, static_cast<OptimalBranch>(branch), u_id);
}

std::vector<AxisVec3> fibonacci_sphere(int count) {
    if (count < 1) {
        throw DomainError("sphere grid needs at least one point");
    }
    std::vector<AxisVec3> out;
    out.reserve(count);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; i++) {
        double z = 1.0 - (2.0 * i + 1.0) / count;
        double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        double p = golden * i;
        out.push_back(AxisVec3::normalized({rho * std::cos(p), rho * std::sin(p), z}));
    }
    return out;
}

AxisMaximum max_qfi_over_axes(const TwoTlsState &psi, EvolutionSign s, int grid_points) {
    // The QFI is the quadratic form n^T Q n on the unit sphere.
    Eigen::Matrix3d t = correlation_tensor(psi);
    BlochPair r = bloch_vectors(psi);
    double sv = s.value();
    Eigen::Vector3d v = r.a + sv * r.b;
    Eigen::Matrix3d q = 2 * Eigen::Matrix3d::Identity() + sv * (t + t.transpose()) - v * v.transpose();

    std::vector<AxisVec3> grid = fibonacci_sphere(grid_points);
    size_t best = 0;
    double best_value = -1e300;
    for (size_t i = 0; i < grid.size(); i++) {
        const Eigen::Vector3d &n = grid[i].vec();
        double value = n.dot(q * n);
        if (value > best_value) {
            best_value = value;
            best = i;
        }
    }

    auto objective = [&](const std::array<double, 2> &x) {
        Eigen::Vector3d n(std::sin(x[0]) * std::cos(x[1]), std::sin(x[0]) * std::sin(x[1]), std::cos(x[0]));
        return -n.dot(q * n);
    };
    std::array<double, 2> start{grid[best].theta(), grid[best].phi()};
    internal::NelderMeadResult<2> polished = internal::nelder_mead<2>(objective, start, 0.02, 1e-15, 2000);

    if (-polished.value > best_value) {
        return {-polished.value, AxisVec3::from_angles(polished.x[0], polished.x[1])};
    }
    return {best_value, grid[best]};
}

bool is_axis_independent_optimal(const TwoTlsState &psi, EvolutionSign s, double tol) {
    Eigen::Matrix3d d = correlation_tensor(psi) - double(s.value()) * Eigen::Matrix3d::Identity();
    return d.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace posimet
