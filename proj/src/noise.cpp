#include "qwalk/noise.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <thread>

#include "qwalk/errors.hpp"
#include "qwalk/gates.hpp"
#include "qwalk/matrix.hpp"
#include "qwalk/rng.hpp"
#include "qwalk/text.hpp"

namespace qwalk {

namespace {

const Matrix& pauli_y() {
    static const Matrix y(2, {Complex{0, 0}, Complex{0, -1}, Complex{0, 1}, Complex{0, 0}});
    return y;
}

void insert_pauli(StateVector& state, int qubit, int which) {
    switch (which) {
        case 0:
            apply_x(state, qubit, {});
            break;
        case 1:
            apply_gate(state, pauli_y(), {qubit});
            break;
        default:
            apply_phase(state, Complex{-1.0, 0.0}, qubit, {});
            break;
    }
}

std::uint64_t one_shot(const Circuit& circuit, const std::vector<int>& measured,
                       const NoiseModel& model, std::uint64_t seed, std::uint64_t shot) {
    StateVector state(circuit.n_qubits());
    SplitMix64 noise_rng(derive_stream(seed, shot, kStreamNoise));
    for (const Gate& g : circuit.gates()) {
        run_gate(g, state);
        const std::size_t involved = g.targets.size() + g.controls.size();
        const double p = involved >= 2 ? model.p2 : model.p1;
        if (p <= 0.0) continue;
        auto kick = [&](int qubit) {
            if (noise_rng.next_double() < p) {
                const int which = std::min(2, static_cast<int>(noise_rng.next_double() * 3.0));
                insert_pauli(state, qubit, which);
            }
        };
        for (int q : g.targets) kick(q);
        for (const ControlBit& c : g.controls) kick(c.qubit);
    }

    const std::vector<double> probs = marginal_probabilities(state, measured);
    SplitMix64 measure_rng(derive_stream(seed, shot, kStreamMeasure));
    std::uint64_t value = sample_index(probs, measure_rng.next_double());
    if (model.p_ro > 0.0) {
        SplitMix64 readout_rng(derive_stream(seed, shot, kStreamReadout));
        for (std::size_t bit = 0; bit < measured.size(); ++bit)
            if (readout_rng.next_double() < model.p_ro) value ^= std::uint64_t{1} << bit;
    }
    return value;
}

}  // namespace

void validate_noise_model(const NoiseModel& model) {
    for (double p : {model.p1, model.p2, model.p_ro})
        if (!(p >= 0.0 && p <= 1.0))
            throw ValidationError("noise probabilities must lie in [0, 1]");
}

CountsHistogram noisy_sample(const Circuit& circuit, const std::vector<int>& measured_qubits,
                             const NoiseModel& model, std::uint64_t shots, std::uint64_t seed,
                             int n_threads) {
    validate_noise_model(model);
    if (shots < 1) throw ArgumentError("shots must be at least 1");
    if (n_threads < 0) throw ArgumentError("thread count must be nonnegative");
    // Validates the measured-qubit list before any work.
    (void)marginal_probabilities(StateVector(circuit.n_qubits()), measured_qubits);

    unsigned workers = n_threads > 0 ? static_cast<unsigned>(n_threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, shots));

    // Per-shot tallies; shot index alone fixes every random stream, so the
    // chunk split cannot change the result.
    std::vector<std::map<std::uint64_t, std::uint64_t>> tallies(workers);
    auto work = [&](unsigned w) {
        for (std::uint64_t shot = w; shot < shots; shot += workers)
            ++tallies[w][one_shot(circuit, measured_qubits, model, seed, shot)];
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (std::thread& t : pool) t.join();
    }

    CountsHistogram hist;
    hist.shots = shots;
    hist.bits = measured_qubits.size();
    for (const auto& tally : tallies)
        for (const auto& [value, count] : tally)
            hist.counts[bit_label(value, measured_qubits.size())] += count;
    return hist;
}

std::vector<SweepRow> noise_sweep(const Circuit& circuit, const std::vector<int>& measured_qubits,
                                  const std::vector<std::string>& marked_labels,
                                  const std::vector<NoiseModel>& grid, std::uint64_t shots,
                                  std::uint64_t seed, int n_threads) {
    for (const std::string& label : marked_labels)
        if (label.size() != measured_qubits.size())
            throw ArgumentError("marked label '" + label + "' does not match the measured width");
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (const NoiseModel& model : grid) {
        const CountsHistogram hist =
            noisy_sample(circuit, measured_qubits, model, shots, seed, n_threads);
        std::uint64_t hits = 0;
        for (const std::string& label : marked_labels) {
            const auto it = hist.counts.find(label);
            if (it != hist.counts.end()) hits += it->second;
        }
        rows.push_back({model, static_cast<double>(hits) / static_cast<double>(shots), shots});
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string out = "p1,p2,p_ro,marked_probability,shots\n";
    for (const SweepRow& r : rows) {
        out += format_double(r.model.p1) + ',' + format_double(r.model.p2) + ',' +
               format_double(r.model.p_ro) + ',' + format_double(r.marked_probability) + ',' +
               std::to_string(r.shots) + '\n';
    }
    return out;
}

}  // namespace qwalk
