#include "qwalk/gates.hpp"

#include <cmath>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

Gate single(GateKind kind, int target) { return Gate{kind, {target}, {}, 0.0, Matrix{}, {}}; }

std::vector<ControlBit> plus_controls(const std::vector<int>& qubits) {
    std::vector<ControlBit> out;
    out.reserve(qubits.size());
    for (int q : qubits) out.push_back({q, true});
    return out;
}

}  // namespace

Gate x(int target) { return single(GateKind::kX, target); }
Gate h(int target) { return single(GateKind::kH, target); }
Gate z(int target) { return single(GateKind::kZ, target); }
Gate id(int target) { return single(GateKind::kI, target); }

Gate rz(int target, double angle) {
    Gate g = single(GateKind::kRZ, target);
    g.angle = angle;
    return g;
}

Gate sx(int target) { return single(GateKind::kSX, target); }

Gate swap_gate(int a, int b) { return Gate{GateKind::kSwap, {a, b}, {}, 0.0, Matrix{}, {}}; }

Gate cnot(int control, int target) { return with_control(x(target), control); }
Gate cz(int control, int target) { return with_control(z(target), control); }
Gate crz(int control, int target, double angle) { return with_control(rz(target, angle), control); }

Gate toffoli(int control_a, int control_b, int target) {
    return mcx(std::vector<int>{control_a, control_b}, target);
}

Gate mcx(const std::vector<int>& controls, int target) {
    return mcx(plus_controls(controls), target);
}

Gate mcx(const std::vector<ControlBit>& controls, int target) {
    Gate g = x(target);
    g.controls = controls;
    return g;
}

Gate mcz(const std::vector<int>& controls, int target) {
    return mcz(plus_controls(controls), target);
}

Gate mcz(const std::vector<ControlBit>& controls, int target) {
    Gate g = z(target);
    g.controls = controls;
    return g;
}

Gate unitary(const Matrix& matrix, const std::vector<int>& targets, std::string label) {
    return Gate{GateKind::kUnitary, targets, {}, 0.0, matrix, std::move(label)};
}

Gate with_control(Gate g, int qubit, bool value) {
    g.controls.push_back({qubit, value});
    return g;
}

Gate dagger(const Gate& g) {
    switch (g.kind) {
        case GateKind::kX:
        case GateKind::kH:
        case GateKind::kZ:
        case GateKind::kI:
        case GateKind::kSwap:
            return g;
        case GateKind::kRZ: {
            Gate out = g;
            out.angle = -g.angle;
            return out;
        }
        case GateKind::kSX: {
            Gate out = g;
            out.kind = GateKind::kUnitary;
            out.matrix = target_matrix(g).adjoint();
            out.label = "SXDG";
            return out;
        }
        case GateKind::kUnitary: {
            Gate out = g;
            out.matrix = g.matrix.adjoint();
            if (g.label.size() > 2 && g.label.substr(g.label.size() - 2) == "DG")
                out.label = g.label.substr(0, g.label.size() - 2);
            else
                out.label = g.label + "DG";
            return out;
        }
    }
    throw ArgumentError("unknown gate kind");
}

Matrix target_matrix(const Gate& g) {
    const double s = 1.0 / std::sqrt(2.0);
    switch (g.kind) {
        case GateKind::kX:
            return Matrix(2, {0, 1, 1, 0});
        case GateKind::kH:
            return Matrix(2, {s, s, s, -s});
        case GateKind::kZ:
            return Matrix(2, {1, 0, 0, -1});
        case GateKind::kI:
            return Matrix::identity(2);
        case GateKind::kRZ:
            return Matrix(2, {1, 0, 0, std::polar(1.0, g.angle)});
        case GateKind::kSX:
            return Matrix(2, {Complex{0.5, 0.5}, Complex{0.5, -0.5}, Complex{0.5, -0.5},
                              Complex{0.5, 0.5}});
        case GateKind::kSwap:
            return Matrix(4, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1});
        case GateKind::kUnitary:
            return g.matrix;
    }
    throw ArgumentError("unknown gate kind");
}

std::string gate_name(const Gate& g) {
    const std::size_t nc = g.controls.size();
    switch (g.kind) {
        case GateKind::kX:
            return nc == 0 ? "X" : nc == 1 ? "CNOT" : "MCX";
        case GateKind::kH:
            return nc == 0 ? "H" : "CH";
        case GateKind::kZ:
            return nc == 0 ? "Z" : nc == 1 ? "CZ" : "MCZ";
        case GateKind::kI:
            return "I";
        case GateKind::kRZ:
            return nc == 0 ? "RZ" : "CRZ";
        case GateKind::kSX:
            return nc == 0 ? "SX" : "CSX";
        case GateKind::kSwap:
            return nc == 0 ? "SWAP" : "CSWAP";
        case GateKind::kUnitary:
            return g.label.empty() ? "U" : g.label;
    }
    return "?";
}

void validate_gate(const Gate& g) {
    const std::size_t want_targets = g.kind == GateKind::kSwap      ? 2
                                     : g.kind == GateKind::kUnitary ? g.targets.size()
                                                                    : 1;
    if (g.targets.size() != want_targets || g.targets.empty())
        throw ArgumentError("gate target arity mismatch");
    for (std::size_t i = 0; i < g.targets.size(); ++i) {
        if (g.targets[i] < 0) throw ArgumentError("negative qubit index");
        for (std::size_t j = i + 1; j < g.targets.size(); ++j)
            if (g.targets[i] == g.targets[j]) throw ArgumentError("duplicate target qubit");
    }
    for (std::size_t i = 0; i < g.controls.size(); ++i) {
        const int q = g.controls[i].qubit;
        if (q < 0) throw ArgumentError("negative qubit index");
        for (int t : g.targets)
            if (t == q) throw ArgumentError("control qubit overlaps a target");
        for (std::size_t j = i + 1; j < g.controls.size(); ++j)
            if (g.controls[j].qubit == q) throw ArgumentError("duplicate control qubit");
    }
    if (g.kind == GateKind::kRZ && !std::isfinite(g.angle))
        throw ValidationError("RZ angle must be finite");
    if (g.kind == GateKind::kUnitary) {
        if (g.matrix.dim() != (std::size_t{1} << g.targets.size()))
            throw ArgumentError("unitary dimension does not match target count");
        if (!g.matrix.is_unitary(1e-9)) throw ValidationError("gate matrix is not unitary");
    }
}

}  // namespace qwalk
