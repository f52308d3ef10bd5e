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

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "posimet/errors.h"

namespace posimet {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// {P(Psi-), P(rest)}; the complement is summed from the other Bell/basis amplitudes
// so that tiny probabilities keep full relative precision.
std::vector<double> singlet_povm(const Vec4 &v) {
    cplx psi_minus = (v[1] - v[2]) * kInvSqrt2;
    cplx psi_plus = (v[1] + v[2]) * kInvSqrt2;
    double rest = std::norm(psi_plus) + std::norm(v[0]) + std::norm(v[3]);
    return {std::norm(psi_minus), rest};
}

std::vector<double> binary(double p_plus, double p_minus) {
    return {p_plus, p_minus};
}

// |<k|u|k>|^2 and its complement |<k_perp|u|k>|^2 for a single TLS.
std::vector<double> stay_probability(const Mat2 &u, const Vec2 &ket, const Vec2 &ket_perp) {
    Vec2 out = u * ket;
    return binary(std::norm(ket.dot(out)), std::norm(ket_perp.dot(out)));
}

double min_probability(const std::vector<double> &p) {
    return *std::min_element(p.begin(), p.end());
}

// FI of a distribution at alpha, shifted off P in {0, 1}.
double fi_with_offset(const OutcomeDistribution &dist, double alpha, bool *shifted) {
    if (min_probability(dist.probabilities(alpha)) < 1e-10) {
        if (shifted != nullptr) {
            *shifted = true;
        }
        return classical_fi(dist, alpha + kDegenerateOffset);
    }
    return classical_fi(dist, alpha);
}

Eigen::Vector3d bloch_of(const Vec2 &ket) {
    cplx a = ket[0], b = ket[1];
    cplx ab = std::conj(a) * b;
    return {2 * ab.real(), 2 * ab.imag(), std::norm(a) - std::norm(b)};
}

}  // namespace

std::string_view protocol_name(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::kSingleQubitThreeAxis:
            return "single_qubit_three_axis";
        case ProtocolKind::kAgnostic:
            return "agnostic";
        case ProtocolKind::kSeparableAntimatter:
            return "separable_antimatter";
        case ProtocolKind::kPositronium:
            return "positronium";
        case ProtocolKind::kPositroniumSequential:
            return "positronium_sequential";
    }
    throw DomainError("unknown protocol kind");
}

ProtocolKind parse_protocol(std::string_view name) {
    std::string s(name);
    std::replace(s.begin(), s.end(), '-', '_');
    if (s == "separable") {
        return ProtocolKind::kSeparableAntimatter;
    }
    if (s == "sequential") {
        return ProtocolKind::kPositroniumSequential;
    }
    for (ProtocolKind k : {ProtocolKind::kSingleQubitThreeAxis, ProtocolKind::kAgnostic,
                           ProtocolKind::kSeparableAntimatter, ProtocolKind::kPositronium,
                           ProtocolKind::kPositroniumSequential}) {
        if (s == protocol_name(k)) {
            return k;
        }
    }
    throw DomainError("unknown protocol '" + std::string(name) + "'");
}

void ProtocolSpec::validate() const {
    if (n_reps < 1) {
        throw DomainError("n_reps must be >= 1");
    }
    if (!std::isfinite(alpha)) {
        throw DomainError("alpha must be finite");
    }
    if (n_reps != 1 && kind != ProtocolKind::kPositroniumSequential) {
        throw DomainError("n_reps applies only to the sequential positronium protocol");
    }
}

std::vector<double> positronium_probs(double alpha, const AxisVec3 &n) {
    return positronium_sequential_probs(alpha, n, 1);
}

OutcomeDistribution positronium_distribution(const AxisVec3 &n) {
    return OutcomeDistribution([n](double a) { return positronium_probs(a, n); });
}

std::vector<double> agnostic_probs(double alpha, const AxisVec3 &n) {
    Mat4 u = kron2(rotation_unitary(alpha, n), identity2());
    return singlet_povm(u * TwoTlsState::singlet().amplitudes());
}

OutcomeDistribution agnostic_distribution(const AxisVec3 &n) {
    return OutcomeDistribution([n](double a) { return agnostic_probs(a, n); });
}

std::vector<double> positronium_sequential_probs(double alpha, const AxisVec3 &n, int n_reps) {
    if (n_reps < 1) {
        throw DomainError("n_reps must be >= 1");
    }
    Mat2 u = rotation_unitary(alpha, n);
    Mat4 step = kron2(u, u.adjoint());
    Vec4 v = TwoTlsState::singlet().amplitudes();
    for (int k = 0; k < n_reps; k++) {
        v = step * v;
    }
    return singlet_povm(v);
}

SeparableProbs separable_probs(double alpha, const AxisVec3 &n) {
    Mat2 u = rotation_unitary(alpha, n);
    return {stay_probability(u, ket_x_plus(), ket_x_minus())[0],
            stay_probability(u.adjoint(), ket_z_plus(), ket_z_minus())[0]};
}

double separable_fi(double alpha, const AxisVec3 &n) {
    OutcomeDistribution qubit([n](double a) {
        return stay_probability(rotation_unitary(a, n), ket_x_plus(), ket_x_minus());
    });
    OutcomeDistribution antiqubit([n](double a) {
        return stay_probability(rotation_unitary(a, n).adjoint(), ket_z_plus(), ket_z_minus());
    });
    return fi_with_offset(qubit, alpha, nullptr) + fi_with_offset(antiqubit, alpha, nullptr);
}

double separable_axis_average_fi(double alpha) {
    return (separable_fi(alpha, AxisVec3::x_hat()) + separable_fi(alpha, AxisVec3::y_hat()) +
            separable_fi(alpha, AxisVec3::z_hat())) /
           3.0;
}

namespace {

struct Batch {
    OutcomeDistribution dist;
    double p_plus;
    bool frozen;  // probe along the axis: it does not rotate, FI = 0
};

// Probe |r0> rotated by U_a, measured along the Bloch velocity at alpha.
Batch three_axis_batch(double alpha, const AxisVec3 &n, const Vec2 &probe) {
    Eigen::Vector3d r0 = bloch_of(probe);
    const Eigen::Vector3d &nv = n.vec();
    Eigen::Vector3d velocity =
        -r0 * std::sin(alpha) + nv.cross(r0) * std::cos(alpha) + nv * nv.dot(r0) * std::sin(alpha);
    bool frozen = velocity.norm() <= 1e-12;
    Eigen::Vector3d m = frozen ? r0 : Eigen::Vector3d(velocity.normalized());
    AxisVec3 axis = AxisVec3::normalized(m);
    Vec2 up = ket_along(axis);
    Vec2 down = ket_along(AxisVec3::normalized(-m));
    OutcomeDistribution dist([=](double a) {
        Vec2 out = rotation_unitary(a, n) * probe;
        return binary(std::norm(up.dot(out)), std::norm(down.dot(out)));
    });
    double p = dist.probabilities(alpha)[0];
    return {std::move(dist), p, frozen};
}

}  // namespace

double single_qubit_three_axis_fi(double alpha, const AxisVec3 &n) {
    double total = 0;
    for (const Vec2 &probe : {ket_x_plus(), ket_y_plus(), ket_z_plus()}) {
        Batch b = three_axis_batch(alpha, n, probe);
        total += b.frozen ? 0.0 : fi_with_offset(b.dist, alpha, nullptr);
    }
    return total / 3.0;
}

SequentialQfi sequential_positronium_qfi(int n_reps, double alpha, const AxisVec3 &n) {
    if (n_reps < 1) {
        throw DomainError("n_reps must be >= 1");
    }
    StateFamily family = [n, n_reps](double a) -> Eigen::VectorXcd {
        Mat2 u = rotation_unitary(a, n);
        Mat4 step = kron2(u, u.adjoint());
        Vec4 v = TwoTlsState::singlet().amplitudes();
        for (int k = 0; k < n_reps; k++) {
            v = step * v;
        }
        return v;
    };
    return {qfi_pure(family, alpha), 2 * n_reps};
}

ProtocolResult run_ideal(const ProtocolSpec &spec) {
    spec.validate();
    ProtocolResult r;
    const double a = spec.alpha;
    const AxisVec3 &n = spec.axis;
    switch (spec.kind) {
        case ProtocolKind::kPositronium:
        case ProtocolKind::kPositroniumSequential: {
            int reps = spec.n_reps;
            OutcomeDistribution dist([n, reps](double x) { return positronium_sequential_probs(x, n, reps); });
            r.outcome_labels = {"psi_minus", "other"};
            r.probabilities = dist.probabilities(a);
            r.fi = fi_with_offset(dist, a, &r.alpha_offset);
            r.v_st = 2 * reps;
            break;
        }
        case ProtocolKind::kAgnostic: {
            OutcomeDistribution dist = agnostic_distribution(n);
            r.outcome_labels = {"psi_minus", "other"};
            r.probabilities = dist.probabilities(a);
            r.fi = fi_with_offset(dist, a, &r.alpha_offset);
            r.v_st = 2;
            break;
        }
        case ProtocolKind::kSeparableAntimatter: {
            SeparableProbs p = separable_probs(a, n);
            r.outcome_labels = {"qubit_x_plus", "antiqubit_z_plus"};
            r.probabilities = {p.p_xplus, p.p_zplus};
            auto edge = [](double x) { return x < 1e-10 || x > 1 - 1e-10; };
            r.alpha_offset = edge(p.p_xplus) || edge(p.p_zplus);
            r.fi = separable_fi(a, n);
            r.v_st = 2;
            break;
        }
        case ProtocolKind::kSingleQubitThreeAxis: {
            r.outcome_labels = {"x_probe_plus", "y_probe_plus", "z_probe_plus"};
            double total = 0;
            for (const Vec2 &probe : {ket_x_plus(), ket_y_plus(), ket_z_plus()}) {
                Batch b = three_axis_batch(a, n, probe);
                r.probabilities.push_back(b.p_plus);
                total += b.frozen ? 0.0 : fi_with_offset(b.dist, a, &r.alpha_offset);
            }
            r.fi = total / 3.0;
            // One qubit per trial; reported per two units of space-time volume.
            r.v_st = 1;
            break;
        }
        default:
            throw DomainError("unknown protocol kind");
    }
    r.fi_per_two_vst = r.fi * 2.0 / r.v_st;
    return r;
}

}  // namespace posimet
