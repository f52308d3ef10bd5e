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

#ifndef POSIMET_NOISE_H
#define POSIMET_NOISE_H

#include <array>
#include <cstdint>
#include <vector>

#include "posimet/hardware.h"
#include "posimet/protocols.h"

namespace posimet {

/// C(t, r) = P(read r | true t); rows sum to 1.
using Confusion = Eigen::Matrix2d;

Confusion symmetric_confusion(double fidelity);

struct StarkImperfection {
    bool enabled = false;
    double qubit_detuning_ghz = 0;
    double antiqubit_detuning_ghz = 0;
    double field_rate_ghz = 0;
    double drive_phase_rad = 0;
    double max_pulse_ns = 0;

    StarkDrive qubit_drive() const;
    StarkDrive antiqubit_drive() const;
};

struct NoiseModel {
    double prep_fidelity = 1.0;
    Confusion qubit_confusion = Confusion::Identity();
    Confusion antiqubit_confusion = Confusion::Identity();
    StarkImperfection stark;

    static NoiseModel ideal() { return {}; }
    void validate() const;
    /// Depolarizing strength p in rho = p |psi><psi| + (1 - p) 1/4, so that <psi|rho|psi> = prep_fidelity.
    double depolarizing_keep() const;
};

/// Outcome pattern index 2 * qubit_bit + antiqubit_bit.
using PatternProbs = std::array<double, 4>;

struct ShotRecord {
    ProtocolKind kind = ProtocolKind::kPositronium;
    AxisVec3 axis = AxisVec3::z_hat();
    double alpha = 0;
    int n_reps = 1;
    uint64_t seed = 0;
    std::vector<uint8_t> qubit_bits;
    std::vector<uint8_t> antiqubit_bits;

    size_t n_shots() const { return qubit_bits.size(); }
    std::array<uint64_t, 4> counts() const;
    PatternProbs frequencies() const;
};

/// Fixed block size of the splittable RNG stream.
inline constexpr uint64_t kShotBlock = 4096;

/// Monte Carlo of one protocol setting. Bit patterns: positronium-type protocols map
/// Psi- -> (0,1), Psi+ -> (1,0), |00> -> (0,0), |11> -> (1,1); the separable protocol reads the
/// qubit in the x basis and the antiqubit in the z basis (bit 0 = "+"). Output is identical for
/// any worker count.
ShotRecord simulate_shots(const ProtocolSpec &spec, const NoiseModel &noise, uint64_t n_shots, uint64_t seed,
                          unsigned workers = 1);

/// Exact pattern probabilities before readout error for the ideal-branch and basis-branch states.
/// Exposed for replay and diagnostics; simulate_shots samples from the same quantities.
struct PatternModel {
    PatternProbs ideal;
    std::array<PatternProbs, 4> from_basis;
};
PatternModel pattern_model(const ProtocolSpec &spec, const NoiseModel &noise);

/// Exact distribution of the recorded bit pair, the one simulate_shots samples from.
PatternProbs noisy_pattern_probs(const ProtocolSpec &spec, const NoiseModel &noise);

struct CorrectedProbabilities {
    PatternProbs probs;
    int clip_events = 0;

    /// P(qubit bit = 0), P(antiqubit bit = 0).
    double qubit_zero() const { return probs[0] + probs[1]; }
    double antiqubit_zero() const { return probs[0] + probs[2]; }
    /// Positronium-type outcome: P(Psi-) = P(0, 1).
    double psi_minus() const { return probs[1]; }
};

/// Inverts (C_q (x) C_aq)^T on the pattern frequencies; clips to [0, 1] and renormalizes.
CorrectedProbabilities correct_frequencies(const PatternProbs &freqs, const Confusion &qubit,
                                           const Confusion &antiqubit);
CorrectedProbabilities readout_correct(const ShotRecord &record, const Confusion &qubit, const Confusion &antiqubit);

/// Single-transmon version: corrected P(bit 0) from the observed frequency of bit 0.
double correct_single(double freq_zero, const Confusion &c, bool *clipped = nullptr);

}  // namespace posimet

#endif
