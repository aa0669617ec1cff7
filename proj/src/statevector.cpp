#include "qwalk/statevector.hpp"

#include <algorithm>
#include <cmath>

#include "qwalk/errors.hpp"
#include "qwalk/rng.hpp"

namespace qwalk {

namespace {

// Packs the control conditions into (mask, want) so a basis index i is
// selected iff (i & mask) == want.
void control_masks(const std::vector<ControlBit>& controls, std::uint64_t& mask,
                   std::uint64_t& want) {
    mask = 0;
    want = 0;
    for (const ControlBit& c : controls) {
        const std::uint64_t bit = std::uint64_t{1} << c.qubit;
        if (mask & bit) throw ArgumentError("duplicate control qubit");
        mask |= bit;
        if (c.value) want |= bit;
    }
}

void check_qubits(const StateVector& state, const std::vector<int>& targets,
                  const std::vector<ControlBit>& controls) {
    std::uint64_t seen = 0;
    for (int t : targets) {
        if (t < 0 || t >= state.n_qubits()) throw ArgumentError("target qubit out of range");
        const std::uint64_t bit = std::uint64_t{1} << t;
        if (seen & bit) throw ArgumentError("duplicate target qubit");
        seen |= bit;
    }
    for (const ControlBit& c : controls) {
        if (c.qubit < 0 || c.qubit >= state.n_qubits())
            throw ArgumentError("control qubit out of range");
        if (seen & (std::uint64_t{1} << c.qubit))
            throw ArgumentError("control qubit overlaps a target");
    }
}

}  // namespace

std::string bit_label(std::uint64_t value, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t i = 0; i < width; ++i)
        if (value >> (width - 1 - i) & 1) s[i] = '1';
    return s;
}

std::uint64_t parse_bit_label(const std::string& label) {
    if (label.empty() || label.size() > 63) throw ParseError("bad bitstring: '" + label + "'");
    std::uint64_t v = 0;
    for (char ch : label) {
        if (ch != '0' && ch != '1') throw ParseError("bad bitstring: '" + label + "'");
        v = (v << 1) | static_cast<std::uint64_t>(ch - '0');
    }
    return v;
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw CapacityError("qubit count must be between 1 and 24");
    amps_.assign(std::uint64_t{1} << n_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
    StateVector s(n_qubits);
    if (index >= s.size()) throw ArgumentError("basis index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

double StateVector::norm_sq() const {
    double acc = 0.0;
    for (const Complex& a : amps_) acc += std::norm(a);
    return acc;
}

bool StateVector::finite() const {
    for (const Complex& a : amps_)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
    return true;
}

StateVector new_zero_state(int n_qubits) { return StateVector(n_qubits); }

void apply_gate(StateVector& state, const Matrix& unitary, const std::vector<int>& targets,
                const std::vector<ControlBit>& controls) {
    check_qubits(state, targets, controls);
    const std::size_t k = targets.size();
    if (unitary.dim() != (std::size_t{1} << k))
        throw ArgumentError("unitary dimension does not match target count");
    if (!unitary.is_unitary(1e-9)) throw ValidationError("gate matrix is not unitary");

    std::uint64_t cmask, cwant;
    control_masks(controls, cmask, cwant);
    std::uint64_t tmask = 0;
    for (int t : targets) tmask |= std::uint64_t{1} << t;
    if (cmask & tmask) throw ArgumentError("control qubit overlaps a target");

    const std::size_t block = std::size_t{1} << k;
    std::vector<std::uint64_t> offsets(block, 0);
    for (std::size_t p = 0; p < block; ++p)
        for (std::size_t j = 0; j < k; ++j)
            if (p >> j & 1) offsets[p] |= std::uint64_t{1} << targets[j];

    std::vector<Complex> in(block), out(block);
    auto& amps = state.amps();
    const std::uint64_t n = state.size();
    for (std::uint64_t base = 0; base < n; ++base) {
        if (base & tmask) continue;
        if ((base & cmask) != cwant) continue;
        for (std::size_t p = 0; p < block; ++p) in[p] = amps[base | offsets[p]];
        for (std::size_t r = 0; r < block; ++r) {
            Complex acc{0.0, 0.0};
            for (std::size_t c = 0; c < block; ++c) acc += unitary(r, c) * in[c];
            out[r] = acc;
        }
        for (std::size_t p = 0; p < block; ++p) amps[base | offsets[p]] = out[p];
    }
}

void apply_phase(StateVector& state, Complex phase, int target,
                 const std::vector<ControlBit>& controls) {
    check_qubits(state, {target}, controls);
    std::uint64_t cmask, cwant;
    control_masks(controls, cmask, cwant);
    cmask |= std::uint64_t{1} << target;
    cwant |= std::uint64_t{1} << target;
    auto& amps = state.amps();
    const std::uint64_t n = state.size();
    for (std::uint64_t i = 0; i < n; ++i)
        if ((i & cmask) == cwant) amps[i] *= phase;
}

void apply_x(StateVector& state, int target, const std::vector<ControlBit>& controls) {
    check_qubits(state, {target}, controls);
    std::uint64_t cmask, cwant;
    control_masks(controls, cmask, cwant);
    const std::uint64_t tbit = std::uint64_t{1} << target;
    if (cmask & tbit) throw ArgumentError("control qubit overlaps a target");
    auto& amps = state.amps();
    const std::uint64_t n = state.size();
    for (std::uint64_t i = 0; i < n; ++i) {
        if (i & tbit) continue;
        if ((i & cmask) != cwant) continue;
        std::swap(amps[i], amps[i | tbit]);
    }
}

void apply_swap(StateVector& state, int a, int b, const std::vector<ControlBit>& controls) {
    check_qubits(state, {a, b}, controls);
    std::uint64_t cmask, cwant;
    control_masks(controls, cmask, cwant);
    const std::uint64_t abit = std::uint64_t{1} << a;
    const std::uint64_t bbit = std::uint64_t{1} << b;
    auto& amps = state.amps();
    const std::uint64_t n = state.size();
    // Visit each pair once via the (a=1, b=0) representative.
    for (std::uint64_t i = 0; i < n; ++i) {
        if (!(i & abit) || (i & bbit)) continue;
        if ((i & cmask) != cwant) continue;
        std::swap(amps[i], amps[(i ^ abit) | bbit]);
    }
}

std::vector<double> probabilities(const StateVector& state) {
    std::vector<double> p(state.size());
    const auto& amps = state.amps();
    for (std::uint64_t i = 0; i < state.size(); ++i) p[i] = std::norm(amps[i]);
    return p;
}

std::vector<double> marginal_probabilities(const StateVector& state,
                                           const std::vector<int>& qubits) {
    std::uint64_t seen = 0;
    for (int q : qubits) {
        if (q < 0 || q >= state.n_qubits()) throw ArgumentError("qubit index out of range");
        const std::uint64_t bit = std::uint64_t{1} << q;
        if (seen & bit) throw ArgumentError("duplicate qubit in marginal subset");
        seen |= bit;
    }
    std::vector<double> out(std::size_t{1} << qubits.size(), 0.0);
    const auto& amps = state.amps();
    for (std::uint64_t i = 0; i < state.size(); ++i) {
        const double p = std::norm(amps[i]);
        if (p == 0.0) continue;
        std::uint64_t key = 0;
        for (std::size_t j = 0; j < qubits.size(); ++j)
            if (i >> qubits[j] & 1) key |= std::uint64_t{1} << j;
        out[key] += p;
    }
    return out;
}

std::size_t sample_index(const std::vector<double>& probs, double u) {
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return i;
    }
    return probs.size() - 1;  // guard against rounding at the top end
}

CountsHistogram sample(const StateVector& state, const std::vector<int>& measured_qubits,
                       std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw ArgumentError("shots must be at least 1");
    const std::vector<double> probs = marginal_probabilities(state, measured_qubits);
    const std::size_t width = measured_qubits.size();

    std::vector<std::uint64_t> tally(probs.size(), 0);
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        SplitMix64 rng(derive_stream(seed, shot, kStreamMeasure));
        ++tally[sample_index(probs, rng.next_double())];
    }

    CountsHistogram h;
    h.shots = shots;
    h.bits = width;
    for (std::size_t v = 0; v < tally.size(); ++v)
        if (tally[v] > 0) h.counts[bit_label(v, width)] = tally[v];
    return h;
}

}  // namespace qwalk
