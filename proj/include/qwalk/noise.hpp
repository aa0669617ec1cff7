#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qwalk/circuit.hpp"
#include "qwalk/statevector.hpp"

namespace qwalk {

// Depolarizing-style gate noise plus readout error. p1 applies per involved
// qubit after 1-qubit gates, p2 after gates touching >= 2 qubits, p_ro flips
// each measured bit independently.
struct NoiseModel {
    double p1 = 0.0;
    double p2 = 0.0;
    double p_ro = 0.0;
};

void validate_noise_model(const NoiseModel& model);

// Monte-Carlo Pauli-trajectory sampling: per shot, evolve |0...0> through the
// circuit inserting a uniformly random Pauli (X, Y or Z) after each gate,
// independently per involved qubit with the gate-arity probability; sample
// the measured marginal once, then flip each readout bit with p_ro.
// Per-shot substreams make the result deterministic for a fixed seed and
// independent of thread count; the zero model reproduces sample() exactly.
// n_threads = 0 picks the hardware concurrency.
CountsHistogram noisy_sample(const Circuit& circuit, const std::vector<int>& measured_qubits,
                             const NoiseModel& model, std::uint64_t shots, std::uint64_t seed,
                             int n_threads = 0);

struct SweepRow {
    NoiseModel model;
    double marked_probability = 0.0;  // total frequency of the marked labels
    std::uint64_t shots = 0;
};

// One noisy_sample per grid point (same shots/seed each), reporting the
// frequency of outcomes whose label is in `marked_labels`.
std::vector<SweepRow> noise_sweep(const Circuit& circuit, const std::vector<int>& measured_qubits,
                                  const std::vector<std::string>& marked_labels,
                                  const std::vector<NoiseModel>& grid, std::uint64_t shots,
                                  std::uint64_t seed, int n_threads = 0);

// CSV rendering of a sweep: header p1,p2,p_ro,marked_probability,shots.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace qwalk
