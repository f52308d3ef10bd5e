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

#include <algorithm>
#include <cmath>
#include <string>

#include "posimet/errors.h"

namespace posimet {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

TwoTlsState::TwoTlsState(const Vec4 &amplitudes) : amp_(amplitudes) {
    double n2 = amp_.squaredNorm();
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kUnitTol) {
        throw DomainError("two-TLS state is not normalized (norm^2 = " + std::to_string(n2) + ")");
    }
}

TwoTlsState TwoTlsState::renormalized(const Vec4 &amplitudes) {
    double n = amplitudes.norm();
    if (!(n > 0) || !std::isfinite(n)) {
        throw DomainError("cannot renormalize a zero or non-finite state");
    }
    return TwoTlsState(Vec4(amplitudes / n));
}

TwoTlsState TwoTlsState::singlet() {
    return {0, kInvSqrt2, -kInvSqrt2, 0};
}

TwoTlsState TwoTlsState::triplet_zero() {
    return {0, kInvSqrt2, kInvSqrt2, 0};
}

TwoTlsState TwoTlsState::phi_plus() {
    return {kInvSqrt2, 0, 0, kInvSqrt2};
}

TwoTlsState TwoTlsState::phi_minus() {
    return {kInvSqrt2, 0, 0, -kInvSqrt2};
}

TwoTlsState TwoTlsState::product(const Vec2 &a, const Vec2 &b) {
    return TwoTlsState(Vec4(a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]));
}

TwoTlsState TwoTlsState::basis(int index) {
    if (index < 0 || index > 3) {
        throw DomainError("basis index must be in 0..3");
    }
    Vec4 v = Vec4::Zero();
    v[index] = 1;
    return TwoTlsState(v);
}

double TwoTlsState::overlap(const TwoTlsState &other) const {
    return std::abs(amp_.dot(other.amp_));
}

bool TwoTlsState::equal_up_to_phase(const TwoTlsState &other, double tol) const {
    return std::abs(overlap(other) - 1.0) <= tol;
}

Vec2 ket_z_plus() {
    return {1, 0};
}

Vec2 ket_z_minus() {
    return {0, 1};
}

Vec2 ket_x_plus() {
    return {kInvSqrt2, kInvSqrt2};
}

Vec2 ket_x_minus() {
    return {kInvSqrt2, -kInvSqrt2};
}

Vec2 ket_y_plus() {
    return {kInvSqrt2, cplx(0, kInvSqrt2)};
}

Vec2 ket_along(const AxisVec3 &n) {
    // cos(t/2)|0> + e^{ip} sin(t/2)|1>
    double t = n.theta();
    double p = n.phi();
    return {std::cos(t / 2), std::polar(std::sin(t / 2), p)};
}

BlochPair bloch_vectors(const TwoTlsState &psi) {
    cplx a = psi.a(), b = psi.b(), c = psi.c(), d = psi.d();
    // <sigma_x (x) 1> = 2 Re(a* c + b* d), <sigma_y (x) 1> = 2 Im(a* c + b* d), etc.
    cplx ac = std::conj(a) * c + std::conj(b) * d;
    cplx ab = std::conj(a) * b + std::conj(c) * d;
    BlochPair r;
    r.a = {2 * ac.real(), 2 * ac.imag(), std::norm(a) + std::norm(b) - std::norm(c) - std::norm(d)};
    r.b = {2 * ab.real(), 2 * ab.imag(), std::norm(a) - std::norm(b) + std::norm(c) - std::norm(d)};
    return r;
}

Eigen::Matrix3d correlation_tensor(const TwoTlsState &psi) {
    cplx a = psi.a(), b = psi.b(), c = psi.c(), d = psi.d();
    cplx ad = a * std::conj(d);
    cplx bc = b * std::conj(c);
    cplx ac = a * std::conj(c);
    cplx bd = b * std::conj(d);
    cplx ab = a * std::conj(b);
    cplx cd = c * std::conj(d);
    Eigen::Matrix3d t;
    t << 2 * (ad + bc).real(), 2 * (bc - ad).imag(), 2 * (ac - bd).real(),
        -2 * (ad + bc).imag(), 2 * (bc - ad).real(), 2 * (bd - ac).imag(),
        2 * (ab - cd).real(), 2 * (cd - ab).imag(),
        std::norm(a) - std::norm(b) - std::norm(c) + std::norm(d);
    return t;
}

double concurrence(const TwoTlsState &psi) {
    return std::min(1.0, 2.0 * std::abs(psi.a() * psi.d() - psi.b() * psi.c()));
}

TwoTlsState reference_state(double c0) {
    if (!(c0 >= 0.0 && c0 <= 1.0)) {
        throw DomainError("concurrence must lie in [0, 1]");
    }
    double root = std::sqrt(1.0 - c0 * c0);
    double l1 = (1.0 + root) / 2.0;
    double l2 = (1.0 - root) / 2.0;
    return TwoTlsState::renormalized(Vec4(std::sqrt(l1), 0, 0, std::sqrt(l2)));
}

TwoTlsState apply_local(const Mat2 &u_a, const Mat2 &u_b, const TwoTlsState &psi) {
    if (!is_unitary(u_a, kComposedTol) || !is_unitary(u_b, kComposedTol)) {
        throw DomainError("apply_local requires unitary operators");
    }
    return TwoTlsState::renormalized(kron2(u_a, u_b) * psi.amplitudes());
}

}  // namespace posimet
