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

#ifndef POSIMET_METROLOGY_H
#define POSIMET_METROLOGY_H

#include <functional>
#include <vector>

#include "posimet/states.h"

namespace posimet {

inline constexpr double kDefaultFdStep = 1e-5;
inline constexpr double kProbabilityFloor = 1e-12;

/// s = +1 for U (x) U, s = -1 for U (x) U^dag.
class EvolutionSign {
   public:
    explicit EvolutionSign(int s);
    static EvolutionSign plus() { return EvolutionSign(1); }
    static EvolutionSign minus() { return EvolutionSign(-1); }
    int value() const { return s_; }
    bool operator==(const EvolutionSign &) const = default;

   private:
    int s_;
};

/// Outcome probabilities as a function of alpha.
class OutcomeDistribution {
   public:
    using Evaluator = std::function<std::vector<double>(double)>;
    explicit OutcomeDistribution(Evaluator f) : f_(std::move(f)) {}

    /// Evaluates and validates (sum 1 within 1e-10, entries >= -1e-12).
    std::vector<double> probabilities(double alpha) const;

   private:
    Evaluator f_;
};

/// sum_j (dP_j)^2 / P_j by central differences; terms with P_j < 1e-12 are dropped.
double classical_fi(const OutcomeDistribution &dist, double alpha, double step = kDefaultFdStep);

using StateFamily = std::function<Eigen::VectorXcd(double)>;

/// 4(<dpsi|dpsi> - |<psi|dpsi>|^2) by central differences.
double qfi_pure(const StateFamily &family, double alpha, double step = kDefaultFdStep);

/// 4 Var_psi(H).
double generator_variance_qfi(const Eigen::MatrixXcd &h, const Eigen::VectorXcd &psi);

/// (n.sigma (x) 1 + s 1 (x) n.sigma) / 2; the family (U (x) U^s) = exp(-i a G).
Mat4 two_tls_generator(const AxisVec3 &n, EvolutionSign s);

/// 2(1 + s n^T T n) - (n.r_A + s n.r_B)^2.
double two_tls_qfi(const TwoTlsState &psi, EvolutionSign s, const AxisVec3 &n);

/// 2(1 + C).
double concurrence_bound(double c);

enum class OptimalBranch {
    kAxisRotation,  // U_rel = exp(-i phi sigma_y / 2) for s = -1, sigma_x for s = +1
    kPiRotation,    // U_rel = exp(-i pi/2 (cos phi sigma_y + sin phi sigma_z)), x for s = +1
};

/// (U_id (x) U_id U_rel)|chi(C0)>; saturates 2(1 + C0) for some axis.
TwoTlsState optimal_state(double c0, EvolutionSign s, double phi, OptimalBranch branch, const Mat2 &u_id);
TwoTlsState optimal_state(double c0, EvolutionSign s, double phi, int branch, const Mat2 &u_id);

struct AxisMaximum {
    double value;
    AxisVec3 axis;
};

/// Fibonacci grid of `grid_points` axes, then Nelder-Mead polish in (theta, phi).
AxisMaximum max_qfi_over_axes(const TwoTlsState &psi, EvolutionSign s, int grid_points = 10000);

/// max |T - s 1| <= tol.
bool is_axis_independent_optimal(const TwoTlsState &psi, EvolutionSign s, double tol = 1e-10);

/// Near-uniform points on the unit sphere.
std::vector<AxisVec3> fibonacci_sphere(int count);

}  // namespace posimet

#endif
