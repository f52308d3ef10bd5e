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

#ifndef POSIMET_HARDWARE_H
#define POSIMET_HARDWARE_H

#include <optional>
#include <string>
#include <vector>

#include "posimet/su2.h"

namespace posimet {

/// One transmon row of the device table. Frequencies in GHz (cycles), anharmonicity in MHz.
struct TransmonParams {
    std::string name;
    double frequency_ghz = 0;
    double anharmonicity_mhz = 0;
    double t1_us = 0;
    double t2star_us = 0;
    std::optional<double> resonator_ghz;

    double anharmonicity_ghz() const { return anharmonicity_mhz * 1e-3; }
    void validate() const;
};

struct DeviceParams {
    TransmonParams qubit;
    TransmonParams antiqubit;
    TransmonParams coupler;
    double antiqubit_amplitude_ratio = 1.0;

    void validate() const;
};

/// a Omega^2 / (2 Delta (a + Delta)), Delta = omega_transmon - omega_drive. All in GHz.
double ac_stark_shift(double omega_transmon_ghz, double anharm_ghz, double omega_drive_ghz, double amp_ghz);

/// Drive frequencies where ac_stark_shift diverges: omega_t (Delta = 0) and omega_t + a (Delta = -a).
std::vector<double> stark_poles(const TransmonParams &t);

struct MagicFrequency {
    double frequency_ghz;
    double window_lo_ghz;
    double window_hi_ghz;
    std::vector<double> poles_ghz;  // qubit and antiqubit poles, sorted
    int iterations;
    double qubit_shift_per_amp2;      // shift at the root for unit qubit amplitude
    double antiqubit_shift_per_amp2;  // shift at the root for unit antiqubit amplitude
};

/// Root of shift_q(w) + ratio^2 shift_aq(w) = 0 in [lo, hi] by bisection to xtol GHz.
/// Throws NumericalError naming the poles if the window holds a pole or no sign change.
MagicFrequency magic_frequency(const DeviceParams &device, double amp_ratio, double lo_ghz, double hi_ghz,
                               double xtol_ghz = 1e-7);

/// Z U_a(n) Z = U_a(-n_x, -n_y, n_z).
Mat2 z_conjugated_unitary(double alpha, const AxisVec3 &n);

/// Resonant pulse R(beta, phi) = exp(-i beta/2 (cos phi X + sin phi Y)).
Mat2 rotation_pulse(double beta, double phi);

/// R(pi, a/2) R(pi, 0) = -exp(-i a Z / 2).
Mat2 physical_rz(double alpha);

/// Off-resonant tone that produces the z-component of the field by its AC Stark shift.
struct StarkDrive {
    double detuning_ghz = 0;    // omega_transmon - omega_drive
    double field_rate_ghz = 0;  // |field| as a rotation rate; pulse length = alpha / (2 pi rate)
    double phase_rad = 0;
    /// Tone amplitude. If empty it is calibrated so the two-level shift equals |n_z| * field_rate.
    std::optional<double> amplitude_ghz;
    double max_step_ns = 1.0;
    double max_pulse_ns = 0;  // 0 = unchecked

    void validate() const;
};

/// Integrates (Delta/2) Z + (Omega/2)(cos p X + sin p Y) plus a resonant transverse field
/// rate * (b_x X + b_y Y)/2 over the pulse, returned in the transmon frame. The realized
/// rotation axis tends to (b_x, b_y, sign(Delta) |n_z|) as Omega/Delta -> 0.
Mat2 stark_driven_unitary(double alpha, double b_x, double b_y, double nz_abs, const StarkDrive &drive);

enum class UnitaryMode { kIdeal, kStarkImperfect };

/// Ideal: U_a(n)^dag. Stark: x/y by Z-conjugated resonant drive, z by the Stark tone; the ideal
/// limit is U_a(m)^dag with m = (n_x, n_y, -sign(Delta) |n_z|).
Mat2 antiqubit_effective_unitary(double alpha, const AxisVec3 &n, UnitaryMode mode,
                                 const std::optional<StarkDrive> &drive = std::nullopt);

/// Ideal: U_a(n). Stark: limit U_a(m) with m = (n_x, n_y, sign(Delta) |n_z|).
Mat2 qubit_effective_unitary(double alpha, const AxisVec3 &n, UnitaryMode mode,
                             const std::optional<StarkDrive> &drive = std::nullopt);

/// |Tr(a^dag b)| / 2.
double gate_fidelity(const Mat2 &a, const Mat2 &b);

}  // namespace posimet

#endif
