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

#ifndef POSIMET_QFIM_H
#define POSIMET_QFIM_H

#include <functional>

#include "posimet/su2.h"

namespace posimet {

/// Parameter order is (alpha, theta, phi) everywhere.
using ParamFamily = std::function<Eigen::VectorXcd(const Eigen::Vector3d &)>;

/// 3x3 QFIM over (alpha, theta, phi); symmetric and PSD (eigenvalues >= -1e-9).
class Qfim3 {
   public:
    explicit Qfim3(const Eigen::Matrix3d &m);
    const Eigen::Matrix3d &matrix() const { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

   private:
    Eigen::Matrix3d m_;
};

/// L = 2 d(rho) for rho = |psi><psi|.
Eigen::MatrixXcd sld_pure(const Eigen::VectorXcd &psi, const Eigen::VectorXcd &dpsi);

/// M_ij = 1/2 Tr(rho {L_i, L_j}) with central-difference derivatives.
Qfim3 qfim(const ParamFamily &family, const Eigen::Vector3d &point, double step = 1e-5);

/// (M^-1)_aa by the Schur complement; the nuisance block is pseudo-inverted (cutoff 1e-10).
double effective_inverse_alpha(const Qfim3 &m);

/// (1/8)[7 + cos 2t + 2 cos 2p sin^2 t].
double closed_form_inverse_alpha(double theta, double phi);

/// (U_a(n)|x+>) (x) (U_a(n)^dag |z+>) with n = n(theta, phi).
Eigen::VectorXcd separable_family(const Eigen::Vector3d &params);

/// Weak-field limit a -> 0 of effective_inverse_alpha for separable_family at (theta, phi):
/// even part in a, Richardson-extrapolated from a0 and 2 a0.
double weak_field_inverse_alpha(double theta, double phi, double a0 = 0.01, double step = 1e-6);

struct SphereRule {
    int n_cos_theta = 64;  // Gauss-Legendre order in cos(theta); must be 64 or 48
    int n_phi = 128;
    double polar_cap = 1e-3;
};

using SphereFunction = std::function<double(double theta, double phi)>;

/// Average of f over the sphere with density proportional to `weight` (uniform if empty).
double sphere_average(const SphereFunction &f, const SphereRule &rule = {}, const SphereFunction &weight = {});

enum class InverseAlphaPath { kClosedForm, kNumericQfim };

/// <(M^-1)_aa> over the uniform sphere; cross-checked against a coarser rule.
double sphere_average_inverse_alpha(InverseAlphaPath path = InverseAlphaPath::kClosedForm);

/// 1 / <(M^-1)_aa>.
double sphere_average_effective_qfi(InverseAlphaPath path = InverseAlphaPath::kClosedForm);

}  // namespace posimet

#endif
