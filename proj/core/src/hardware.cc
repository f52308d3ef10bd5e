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

#include "posimet/hardware.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "posimet/errors.h"
#include "posimet/internal/search.h"

namespace posimet {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kPoleTol = 1e-12;

std::string format_poles(const std::vector<double> &poles) {
    std::ostringstream os;
    os.precision(9);
    for (size_t i = 0; i < poles.size(); i++) {
        os << (i ? ", " : "") << poles[i] << " GHz";
    }
    return os.str();
}

int sign_of(double x) {
    return x > 0 ? 1 : (x < 0 ? -1 : 0);
}

}  // namespace

void TransmonParams::validate() const {
    if (!(frequency_ghz > 0)) {
        throw DomainError("transmon '" + name + "': frequency must be positive");
    }
    if (!(anharmonicity_mhz < 0)) {
        throw DomainError("transmon '" + name + "': anharmonicity must be negative");
    }
    if (t1_us < 0 || t2star_us < 0) {
        throw DomainError("transmon '" + name + "': coherence times must be non-negative");
    }
    if (resonator_ghz && !(*resonator_ghz > 0)) {
        throw DomainError("transmon '" + name + "': resonator frequency must be positive");
    }
}

void DeviceParams::validate() const {
    qubit.validate();
    antiqubit.validate();
    coupler.validate();
    if (!(antiqubit_amplitude_ratio > 0)) {
        throw DomainError("antiqubit amplitude ratio must be positive");
    }
}

double ac_stark_shift(double omega_transmon_ghz, double anharm_ghz, double omega_drive_ghz, double amp_ghz) {
    double delta = omega_transmon_ghz - omega_drive_ghz;
    if (std::abs(delta) < kPoleTol) {
        throw DomainError("AC Stark pole: drive resonant with the transmon at " +
                          format_poles({omega_transmon_ghz}));
    }
    if (std::abs(anharm_ghz + delta) < kPoleTol) {
        throw DomainError("AC Stark pole: drive detuning equals minus the anharmonicity at " +
                          format_poles({omega_transmon_ghz + anharm_ghz}));
    }
    return anharm_ghz * amp_ghz * amp_ghz / (2 * delta * (anharm_ghz + delta));
}

std::vector<double> stark_poles(const TransmonParams &t) {
    return {t.frequency_ghz, t.frequency_ghz + t.anharmonicity_ghz()};
}

MagicFrequency magic_frequency(const DeviceParams &device, double amp_ratio, double lo_ghz, double hi_ghz,
                               double xtol_ghz) {
    if (!(amp_ratio > 0)) {
        throw DomainError("amplitude ratio must be positive");
    }
    if (!(lo_ghz < hi_ghz)) {
        throw DomainError("magic-frequency window must satisfy lo < hi");
    }
    device.validate();
    const TransmonParams &q = device.qubit;
    const TransmonParams &aq = device.antiqubit;

    std::vector<double> poles = stark_poles(q);
    for (double p : stark_poles(aq)) {
        poles.push_back(p);
    }
    std::sort(poles.begin(), poles.end());

    for (double p : poles) {
        if (p >= lo_ghz && p <= hi_ghz) {
            std::ostringstream os;
            os.precision(9);
            os << "window [" << lo_ghz << ", " << hi_ghz << "] GHz contains the Stark pole at " << p
               << " GHz; poles: " << format_poles(poles);
            throw NumericalError(os.str());
        }
    }

    double r2 = amp_ratio * amp_ratio;
    auto f = [&](double w) {
        return ac_stark_shift(q.frequency_ghz, q.anharmonicity_ghz(), w, 1.0) +
               r2 * ac_stark_shift(aq.frequency_ghz, aq.anharmonicity_ghz(), w, 1.0);
    };
    double flo = f(lo_ghz);
    double fhi = f(hi_ghz);
    if (sign_of(flo) * sign_of(fhi) > 0) {
        std::ostringstream os;
        os.precision(9);
        os << "no magic frequency in [" << lo_ghz << ", " << hi_ghz
           << "] GHz (no sign change); poles: " << format_poles(poles);
        throw NumericalError(os.str());
    }

    MagicFrequency out;
    if (flo == 0) {
        out.frequency_ghz = lo_ghz;
        out.iterations = 0;
    } else if (fhi == 0) {
        out.frequency_ghz = hi_ghz;
        out.iterations = 0;
    } else {
        internal::BisectionResult r = internal::bisect(f, lo_ghz, hi_ghz, flo, xtol_ghz);
        out.frequency_ghz = r.root;
        out.iterations = r.iterations;
    }
    out.window_lo_ghz = lo_ghz;
    out.window_hi_ghz = hi_ghz;
    out.poles_ghz = poles;
    out.qubit_shift_per_amp2 = ac_stark_shift(q.frequency_ghz, q.anharmonicity_ghz(), out.frequency_ghz, 1.0);
    out.antiqubit_shift_per_amp2 =
        ac_stark_shift(aq.frequency_ghz, aq.anharmonicity_ghz(), out.frequency_ghz, 1.0);
    return out;
}

Mat2 z_conjugated_unitary(double alpha, const AxisVec3 &n) {
    Mat2 z = pauli_z();
    return z * rotation_unitary(alpha, n) * z;
}

Mat2 rotation_pulse(double beta, double phi) {
    double c = std::cos(beta / 2);
    double s = std::sin(beta / 2);
    Mat2 m;
    m << c, cplx(0, -1) * std::polar(1.0, -phi) * s, cplx(0, -1) * std::polar(1.0, phi) * s, c;
    return m;
}

Mat2 physical_rz(double alpha) {
    return rotation_pulse(std::numbers::pi, alpha / 2) * rotation_pulse(std::numbers::pi, 0.0);
}

void StarkDrive::validate() const {
    if (!std::isfinite(detuning_ghz) || detuning_ghz == 0) {
        throw DomainError("Stark drive needs a nonzero detuning");
    }
    if (!(field_rate_ghz > 0)) {
        throw DomainError("Stark drive needs a positive field rate");
    }
    if (amplitude_ghz && !(*amplitude_ghz >= 0)) {
        throw DomainError("Stark drive amplitude must be non-negative");
    }
    if (!(max_step_ns > 0) || max_pulse_ns < 0) {
        throw DomainError("invalid Stark integration settings");
    }
}

Mat2 stark_driven_unitary(double alpha, double b_x, double b_y, double nz_abs, const StarkDrive &drive) {
    drive.validate();
    if (!(alpha >= 0)) {
        throw DomainError("Stark-driven pulses need alpha >= 0 (the Stark shift cannot change sign)");
    }
    if (!(nz_abs >= 0 && nz_abs <= 1 + kUnitTol)) {
        throw DomainError("|n_z| must lie in [0, 1]");
    }
    const double delta = drive.detuning_ghz;
    const double rate = drive.field_rate_ghz;
    const double tau = alpha / (kTwoPi * rate);  // ns
    if (drive.max_pulse_ns > 0 && tau > drive.max_pulse_ns + 1e-9) {
        throw DomainError("pulse of " + std::to_string(tau) + " ns exceeds the maximum of " +
                          std::to_string(drive.max_pulse_ns) + " ns");
    }
    double omega;
    if (drive.amplitude_ghz) {
        omega = *drive.amplitude_ghz;
    } else {
        double target = std::abs(delta) + nz_abs * rate;
        omega = std::sqrt(std::max(0.0, target * target - delta * delta));
    }
    if (omega == 0 && !drive.amplitude_ghz) {
        // No tone: purely resonant transverse field, constant in the transmon frame.
        double bt = std::hypot(b_x, b_y);
        if (bt == 0) {
            return identity2();
        }
        return rotation_unitary(alpha * bt, AxisVec3::normalized({b_x, b_y, 0.0}));
    }

    // Drive frame: H = pi [Delta Z + (Omega cos p + rate b'_x) X + (Omega sin p + rate b'_y) Y],
    // with the resonant field counter-rotating as b' = R_z(2 pi Delta t) b. H is in GHz, t in ns,
    // so exp(-i H dt) = rotation by angle 2 pi |h| dt about h.
    double dt_max = std::min(drive.max_step_ns, 0.02 / std::abs(delta));
    int steps = std::max(1, static_cast<int>(std::ceil(tau / dt_max)));
    double dt = tau / steps;
    Mat2 u = identity2();
    for (int k = 0; k < steps; k++) {
        double t = (k + 0.5) * dt;
        double g = kTwoPi * delta * t;
        double bx = b_x * std::cos(g) - b_y * std::sin(g);
        double by = b_x * std::sin(g) + b_y * std::cos(g);
        Eigen::Vector3d h(omega * std::cos(drive.phase_rad) + rate * bx, omega * std::sin(drive.phase_rad) + rate * by,
                          delta);
        double hn = h.norm();
        u = rotation_unitary(kTwoPi * hn * dt, AxisVec3::normalized(h)) * u;
    }
    // Back to the transmon frame: exp(+i pi Delta tau Z).
    Mat2 frame = rotation_unitary(-kTwoPi * delta * tau, AxisVec3::z_hat());
    return frame * u;
}

Mat2 antiqubit_effective_unitary(double alpha, const AxisVec3 &n, UnitaryMode mode,
                                 const std::optional<StarkDrive> &drive) {
    if (mode == UnitaryMode::kIdeal) {
        return rotation_unitary(alpha, n).adjoint();
    }
    if (!drive) {
        throw DomainError("Stark-imperfect mode requires drive parameters");
    }
    return stark_driven_unitary(alpha, -n.x(), -n.y(), std::abs(n.z()), *drive);
}

Mat2 qubit_effective_unitary(double alpha, const AxisVec3 &n, UnitaryMode mode,
                             const std::optional<StarkDrive> &drive) {
    if (mode == UnitaryMode::kIdeal) {
        return rotation_unitary(alpha, n);
    }
    if (!drive) {
        throw DomainError("Stark-imperfect mode requires drive parameters");
    }
    return stark_driven_unitary(alpha, n.x(), n.y(), std::abs(n.z()), *drive);
}

double gate_fidelity(const Mat2 &a, const Mat2 &b) {
    return std::abs((a.adjoint() * b).trace()) / 2.0;
}

}  // namespace posimet
