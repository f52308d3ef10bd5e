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

#ifndef POSIMET_JSON_IO_H
#define POSIMET_JSON_IO_H

#include <iosfwd>
#include <nlohmann/json.hpp>

#include "posimet/estimation.h"
#include "posimet/hardware.h"
#include "posimet/noise.h"
#include "posimet/qfim.h"

namespace posimet {

using Json = nlohmann::ordered_json;

/// Device document: {"transmons": [{name, frequency_ghz, anharmonicity_mhz, t1_us, t2star_us,
/// resonator_ghz?} x3 named qubit/antiqubit/coupler], "antiqubit_amplitude_ratio": r}.
DeviceParams device_from_json(const Json &j);
Json device_to_json(const DeviceParams &d);

/// {"prep_fidelity", "readout": {"qubit": [[..],[..]] | fidelity, "antiqubit": ...},
///  "ac_stark": {"enabled", "qubit_detuning_mhz", "antiqubit_detuning_mhz", "field_rate_mhz",
///  "drive_phase_rad", "max_pulse_ns"}}
NoiseModel noise_from_json(const Json &j);
Json noise_to_json(const NoiseModel &n);

Json axis_to_json(const AxisVec3 &n);
Json shot_summary_json(const ShotRecord &r);
/// Columns shot_index,qubit_bit,antiqubit_bit.
void write_shot_csv(std::ostream &out, const ShotRecord &r);

/// {A, phi0, B, k, covariance, fi, alpha_star, delta, ...}.
Json fit_report_json(const FringeFit &fit, const FiExtraction &fi);
Json magic_frequency_json(const MagicFrequency &m);
Json qfim_json(const Qfim3 &m);

}  // namespace posimet

#endif
