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

#include "posimet/noise.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "posimet/errors.h"
#include "posimet/states.h"

namespace posimet {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void validate_confusion(const Confusion &c, const char *who) {
    for (int t = 0; t < 2; t++) {
        if (c(t, 0) < 0 || c(t, 1) < 0 || std::abs(c(t, 0) + c(t, 1) - 1.0) > 1e-12) {
            throw DomainError(std::string(who) + " confusion matrix is not row-stochastic");
        }
    }
}

PatternProbs bell_patterns(const Vec4 &v) {
    cplx psi_minus = (v[1] - v[2]) * kInvSqrt2;
    cplx psi_plus = (v[1] + v[2]) * kInvSqrt2;
    return {std::norm(v[0]), std::norm(psi_minus), std::norm(psi_plus), std::norm(v[3])};
}

PatternProbs xz_patterns(const Vec4 &v) {
    // Qubit (first factor) in the x basis, antiqubit in the z basis.
    Vec4 w = kron2(Mat2(Eigen::Matrix2cd{{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}}), identity2()) * v;
    return {std::norm(w[0]), std::norm(w[1]), std::norm(w[2]), std::norm(w[3])};
}

// Uniform double in [0, 1) from the top 53 bits.
double uniform53(std::mt19937_64 &g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

std::mt19937_64 block_stream(uint64_t seed, uint64_t block) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(block), static_cast<uint32_t>(block >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

Confusion symmetric_confusion(double fidelity) {
    if (!(fidelity >= 0 && fidelity <= 1)) {
        throw DomainError("readout fidelity must lie in [0, 1]");
    }
    Confusion c;
    c << fidelity, 1 - fidelity, 1 - fidelity, fidelity;
    return c;
}

StarkDrive StarkImperfection::qubit_drive() const {
    StarkDrive d;
    d.detuning_ghz = qubit_detuning_ghz;
    d.field_rate_ghz = field_rate_ghz;
    d.phase_rad = drive_phase_rad;
    d.max_pulse_ns = max_pulse_ns;
    return d;
}

StarkDrive StarkImperfection::antiqubit_drive() const {
    StarkDrive d = qubit_drive();
    d.detuning_ghz = antiqubit_detuning_ghz;
    return d;
}

void NoiseModel::validate() const {
    if (!(prep_fidelity >= 0.25 && prep_fidelity <= 1.0)) {
        throw DomainError("prep_fidelity must lie in [0.25, 1] for a depolarizing model");
    }
    validate_confusion(qubit_confusion, "qubit");
    validate_confusion(antiqubit_confusion, "antiqubit");
    if (stark.enabled) {
        stark.qubit_drive().validate();
        stark.antiqubit_drive().validate();
    }
}

double NoiseModel::depolarizing_keep() const {
    return (4 * prep_fidelity - 1) / 3;
}

std::array<uint64_t, 4> ShotRecord::counts() const {
    std::array<uint64_t, 4> c{};
    for (size_t i = 0; i < qubit_bits.size(); i++) {
        c[2 * qubit_bits[i] + antiqubit_bits[i]]++;
    }
    return c;
}

PatternProbs ShotRecord::frequencies() const {
    PatternProbs f{};
    if (n_shots() == 0) {
        return f;
    }
    std::array<uint64_t, 4> c = counts();
    for (int k = 0; k < 4; k++) {
        f[k] = static_cast<double>(c[k]) / static_cast<double>(n_shots());
    }
    return f;
}

PatternModel pattern_model(const ProtocolSpec &spec, const NoiseModel &noise) {
    spec.validate();
    noise.validate();
    const AxisVec3 &n = spec.axis;
    Mat2 uq, ua;
    if (noise.stark.enabled && std::abs(n.z()) > 0) {
        uq = qubit_effective_unitary(spec.alpha, n, UnitaryMode::kStarkImperfect, noise.stark.qubit_drive());
        ua = antiqubit_effective_unitary(spec.alpha, n, UnitaryMode::kStarkImperfect,
                                         noise.stark.antiqubit_drive());
    } else {
        uq = qubit_effective_unitary(spec.alpha, n, UnitaryMode::kIdeal);
        ua = antiqubit_effective_unitary(spec.alpha, n, UnitaryMode::kIdeal);
    }

    Mat4 evolution;
    Vec4 start;
    bool bell = true;
    switch (spec.kind) {
        case ProtocolKind::kPositronium:
        case ProtocolKind::kPositroniumSequential: {
            Mat4 step = kron2(uq, ua);
            evolution = Mat4::Identity();
            for (int k = 0; k < spec.n_reps; k++) {
                evolution = step * evolution;
            }
            start = TwoTlsState::singlet().amplitudes();
            break;
        }
        case ProtocolKind::kAgnostic:
            evolution = kron2(uq, identity2());
            start = TwoTlsState::singlet().amplitudes();
            break;
        case ProtocolKind::kSeparableAntimatter:
            evolution = kron2(uq, ua);
            start = TwoTlsState::product(ket_x_plus(), ket_z_plus()).amplitudes();
            bell = false;
            break;
        default:
            throw DomainError("protocol '" + std::string(protocol_name(spec.kind)) +
                              "' is not a two-transmon experiment");
    }

    auto patterns = [&](const Vec4 &v) { return bell ? bell_patterns(v) : xz_patterns(v); };
    PatternModel m;
    m.ideal = patterns(evolution * start);
    for (int k = 0; k < 4; k++) {
        m.from_basis[k] = patterns(evolution * TwoTlsState::basis(k).amplitudes());
    }
    return m;
}

PatternProbs noisy_pattern_probs(const ProtocolSpec &spec, const NoiseModel &noise) {
    PatternModel model = pattern_model(spec, noise);
    const double keep = noise.depolarizing_keep();
    PatternProbs mixed{};
    for (int t = 0; t < 4; t++) {
        mixed[t] = keep * model.ideal[t];
        for (int k = 0; k < 4; k++) {
            mixed[t] += (1 - keep) / 4 * model.from_basis[k][t];
        }
    }
    PatternProbs out{};
    for (int t = 0; t < 4; t++) {
        for (int r = 0; r < 4; r++) {
            out[r] += mixed[t] * noise.qubit_confusion(t >> 1, r >> 1) * noise.antiqubit_confusion(t & 1, r & 1);
        }
    }
    return out;
}

ShotRecord simulate_shots(const ProtocolSpec &spec, const NoiseModel &noise, uint64_t n_shots, uint64_t seed,
                          unsigned workers) {
    if (n_shots < 1) {
        throw DomainError("n_shots must be >= 1");
    }
    PatternModel model = pattern_model(spec, noise);
    const double keep = noise.depolarizing_keep();
    const double flip_q[2] = {noise.qubit_confusion(0, 1), noise.qubit_confusion(1, 0)};
    const double flip_a[2] = {noise.antiqubit_confusion(0, 1), noise.antiqubit_confusion(1, 0)};

    ShotRecord rec;
    rec.kind = spec.kind;
    rec.axis = spec.axis;
    rec.alpha = spec.alpha;
    rec.n_reps = spec.n_reps;
    rec.seed = seed;
    rec.qubit_bits.assign(n_shots, 0);
    rec.antiqubit_bits.assign(n_shots, 0);

    auto sample = [](const PatternProbs &p, double u) {
        double acc = 0;
        for (int k = 0; k < 3; k++) {
            acc += p[k];
            if (u < acc) {
                return k;
            }
        }
        return 3;
    };

    const uint64_t n_blocks = (n_shots + kShotBlock - 1) / kShotBlock;
    auto run_block = [&](uint64_t b) {
        std::mt19937_64 g = block_stream(seed, b);
        uint64_t end = std::min(n_shots, (b + 1) * kShotBlock);
        for (uint64_t i = b * kShotBlock; i < end; i++) {
            double u_branch = uniform53(g);
            double u_outcome = uniform53(g);
            double u_q = uniform53(g);
            double u_a = uniform53(g);
            const PatternProbs *p = &model.ideal;
            if (u_branch >= keep) {
                int k = std::min(3, static_cast<int>((u_branch - keep) / (1 - keep) * 4));
                p = &model.from_basis[k];
            }
            int pattern = sample(*p, u_outcome);
            int bq = pattern >> 1;
            int ba = pattern & 1;
            if (u_q < flip_q[bq]) {
                bq ^= 1;
            }
            if (u_a < flip_a[ba]) {
                ba ^= 1;
            }
            rec.qubit_bits[i] = static_cast<uint8_t>(bq);
            rec.antiqubit_bits[i] = static_cast<uint8_t>(ba);
        }
    };

    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<uint64_t>(workers, n_blocks));
    if (workers <= 1) {
        for (uint64_t b = 0; b < n_blocks; b++) {
            run_block(b);
        }
        return rec;
    }
    std::atomic<uint64_t> next{0};
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; w++) {
            pool.emplace_back([&] {
                for (uint64_t b = next++; b < n_blocks; b = next++) {
                    run_block(b);
                }
            });
        }
    }
    return rec;
}

CorrectedProbabilities correct_frequencies(const PatternProbs &freqs, const Confusion &qubit,
                                           const Confusion &antiqubit) {
    validate_confusion(qubit, "qubit");
    validate_confusion(antiqubit, "antiqubit");
    if (std::abs(qubit.determinant()) < 1e-12 || std::abs(antiqubit.determinant()) < 1e-12) {
        throw DomainError("confusion matrix is singular");
    }
    Eigen::Matrix4d m;
    for (int t = 0; t < 4; t++) {
        for (int r = 0; r < 4; r++) {
            m(t, r) = qubit(t >> 1, r >> 1) * antiqubit(t & 1, r & 1);
        }
    }
    Eigen::Vector4d f(freqs[0], freqs[1], freqs[2], freqs[3]);
    Eigen::Vector4d p = m.transpose().partialPivLu().solve(f);
    CorrectedProbabilities out;
    double total = 0;
    for (int k = 0; k < 4; k++) {
        double v = p[k];
        if (v < 0) {
            v = 0;
            out.clip_events++;
        } else if (v > 1) {
            v = 1;
            out.clip_events++;
        }
        out.probs[k] = v;
        total += v;
    }
    if (total > 0) {
        for (double &v : out.probs) {
            v /= total;
        }
    }
    return out;
}

CorrectedProbabilities readout_correct(const ShotRecord &record, const Confusion &qubit,
                                       const Confusion &antiqubit) {
    if (record.n_shots() == 0) {
        throw DomainError("empty shot record");
    }
    return correct_frequencies(record.frequencies(), qubit, antiqubit);
}

double correct_single(double freq_zero, const Confusion &c, bool *clipped) {
    validate_confusion(c, "readout");
    double det = c.determinant();
    if (std::abs(det) < 1e-12) {
        throw DomainError("confusion matrix is singular");
    }
    // f0 = p0 C00 + (1 - p0) C10.
    double p0 = (freq_zero - c(1, 0)) / (c(0, 0) - c(1, 0));
    double clamped = std::clamp(p0, 0.0, 1.0);
    if (clipped != nullptr) {
        *clipped = clamped != p0;
    }
    return clamped;
}

}  // namespace posimet
