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

#ifndef POSIMET_STATES_H
#define POSIMET_STATES_H

#include <utility>

#include "posimet/su2.h"

namespace posimet {

/// Pure two-TLS state a|00> + b|01> + c|10> + d|11>, index 2*(A bit) + (B bit).
class TwoTlsState {
   public:
    /// Validates |a|^2+|b|^2+|c|^2+|d|^2 = 1 within 1e-12.
    explicit TwoTlsState(const Vec4 &amplitudes);
    TwoTlsState(cplx a, cplx b, cplx c, cplx d) : TwoTlsState(Vec4(a, b, c, d)) {}

    /// For noisy pipelines: divides by the norm instead of rejecting.
    static TwoTlsState renormalized(const Vec4 &amplitudes);

    static TwoTlsState singlet();
    static TwoTlsState triplet_zero();
    static TwoTlsState phi_plus();
    static TwoTlsState phi_minus();
    static TwoTlsState product(const Vec2 &a, const Vec2 &b);
    static TwoTlsState basis(int index);

    const Vec4 &amplitudes() const { return amp_; }
    cplx a() const { return amp_[0]; }
    cplx b() const { return amp_[1]; }
    cplx c() const { return amp_[2]; }
    cplx d() const { return amp_[3]; }

    /// |<this|other>|.
    double overlap(const TwoTlsState &other) const;
    bool equal_up_to_phase(const TwoTlsState &other, double tol = kComposedTol) const;

   private:
    Vec4 amp_;
};

/// Single-TLS states |x+>, |y+>, |z+> and friends.
Vec2 ket_z_plus();
Vec2 ket_z_minus();
Vec2 ket_x_plus();
Vec2 ket_x_minus();
Vec2 ket_y_plus();
/// +1 eigenvector of n.sigma.
Vec2 ket_along(const AxisVec3 &n);

struct BlochPair {
    Eigen::Vector3d a;
    Eigen::Vector3d b;
};

BlochPair bloch_vectors(const TwoTlsState &psi);

/// T_ij = <psi| sigma_i (x) sigma_j |psi>, from the closed form in the amplitudes.
Eigen::Matrix3d correlation_tensor(const TwoTlsState &psi);

/// 2|ad - bc|, in [0, 1].
double concurrence(const TwoTlsState &psi);

/// sqrt(l1)|00> + sqrt(l2)|11>, l = (1 +- sqrt(1 - C0^2))/2.
TwoTlsState reference_state(double c0);

TwoTlsState apply_local(const Mat2 &u_a, const Mat2 &u_b, const TwoTlsState &psi);

}  // namespace posimet

#endif
