#pragma once

#include <string>
#include <vector>

#include "qwalk/matrix.hpp"
#include "qwalk/statevector.hpp"

namespace qwalk {

// Base gate kinds. Controlled variants (CNOT, CZ, MCX, MCZ, CRZ, ...) are the
// same kinds carrying a control list; display names are derived from the
// structure. RZ(phi) = diag(1, e^{i phi}) (phase shift on |1>).
enum class GateKind { kX, kH, kZ, kI, kRZ, kSX, kSwap, kUnitary };

struct Gate {
    GateKind kind;
    std::vector<int> targets;
    std::vector<ControlBit> controls;
    double angle = 0.0;  // kRZ only
    Matrix matrix;       // kUnitary only
    std::string label;   // kUnitary display name
};

// Constructors. Multi-control variants accept explicit polarities; the int
// overloads mean 1-polarity (black dot) controls.
Gate x(int target);
Gate h(int target);
Gate z(int target);
Gate id(int target);
Gate rz(int target, double angle);
Gate sx(int target);
Gate swap_gate(int a, int b);
Gate cnot(int control, int target);
Gate cz(int control, int target);
Gate crz(int control, int target, double angle);
Gate toffoli(int control_a, int control_b, int target);
Gate mcx(const std::vector<int>& controls, int target);
Gate mcx(const std::vector<ControlBit>& controls, int target);
Gate mcz(const std::vector<int>& controls, int target);
Gate mcz(const std::vector<ControlBit>& controls, int target);
Gate unitary(const Matrix& matrix, const std::vector<int>& targets, std::string label = "U");

// Copy of `g` with one more control attached.
Gate with_control(Gate g, int qubit, bool value = true);

// Conjugate transpose. Self-inverse kinds pass through; RZ negates its
// angle; SX becomes a raw-unitary SXDG.
Gate dagger(const Gate& g);

// Matrix on the gate's targets alone (controls not included). 2x2 for
// single-qubit kinds, 4x4 for SWAP, the stored matrix for kUnitary.
Matrix target_matrix(const Gate& g);

// Derived display name: X -> X/CNOT/MCX by control count, Z -> Z/CZ/MCZ,
// RZ -> RZ/CRZ, SWAP -> SWAP/CSWAP, kUnitary -> its label.
std::string gate_name(const Gate& g);

// Validates arity, duplicate/overlapping indices, angle finiteness and
// unitarity. Throws ArgumentError / ValidationError. Index upper bounds are
// checked by Circuit, which knows the register width.
void validate_gate(const Gate& g);

}  // namespace qwalk
