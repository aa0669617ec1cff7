#include "qwalk/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "qwalk/errors.hpp"

namespace qwalk {

Circuit::Circuit(int n_qubits, std::string name) : n_qubits_(n_qubits), name_(std::move(name)) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw CapacityError("qubit count must be between 1 and 24");
}

void Circuit::set_work_qubits(int w) {
    if (w < 0 || w > n_qubits_) throw ArgumentError("work qubit count out of range");
    work_qubits_ = w;
}

Circuit& Circuit::add(Gate g) {
    validate_gate(g);
    for (int t : g.targets)
        if (t >= n_qubits_) throw ArgumentError("target qubit outside the register");
    for (const ControlBit& c : g.controls)
        if (c.qubit >= n_qubits_) throw ArgumentError("control qubit outside the register");
    gates_.push_back(std::move(g));
    return *this;
}

Circuit& Circuit::add(const Circuit& other) {
    if (other.n_qubits_ != n_qubits_) throw ArgumentError("circuit width mismatch");
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
}

void run_gate(const Gate& g, StateVector& state) {
    switch (g.kind) {
        case GateKind::kX:
            apply_x(state, g.targets[0], g.controls);
            break;
        case GateKind::kZ:
            apply_phase(state, Complex{-1.0, 0.0}, g.targets[0], g.controls);
            break;
        case GateKind::kRZ:
            apply_phase(state, std::polar(1.0, g.angle), g.targets[0], g.controls);
            break;
        case GateKind::kI:
            break;
        case GateKind::kSwap:
            apply_swap(state, g.targets[0], g.targets[1], g.controls);
            break;
        case GateKind::kH:
        case GateKind::kSX:
        case GateKind::kUnitary:
            apply_gate(state, target_matrix(g), g.targets, g.controls);
            break;
    }
}

void run_inplace(const Circuit& circuit, StateVector& state) {
    if (circuit.n_qubits() != state.n_qubits())
        throw ArgumentError("circuit and state widths differ");
    for (const Gate& g : circuit.gates()) run_gate(g, state);
}

StateVector run(const Circuit& circuit, const StateVector& state) {
    StateVector out = state;
    run_inplace(circuit, out);
    return out;
}

Circuit inverse(const Circuit& circuit) {
    Circuit out(circuit.n_qubits(),
                circuit.name().empty() ? std::string{} : circuit.name() + "_inv");
    out.set_work_qubits(circuit.work_qubits());
    const auto& gs = circuit.gates();
    for (auto it = gs.rbegin(); it != gs.rend(); ++it) out.add(dagger(*it));
    return out;
}

Circuit controlled(const Circuit& circuit, int ctrl) {
    if (ctrl < 0 || ctrl >= kMaxQubits) throw ArgumentError("control qubit out of range");
    for (const Gate& g : circuit.gates()) {
        for (int t : g.targets)
            if (t == ctrl) throw ArgumentError("control qubit already used by the circuit");
        for (const ControlBit& c : g.controls)
            if (c.qubit == ctrl) throw ArgumentError("control qubit already used by the circuit");
    }
    const int new_n = std::max(circuit.n_qubits(), ctrl + 1);
    if (new_n > circuit.n_qubits() && circuit.work_qubits() > 0)
        throw ArgumentError("control beyond a register with work qubits");
    Circuit out(new_n, circuit.name());
    out.set_work_qubits(circuit.work_qubits());
    for (const Gate& g : circuit.gates()) out.add(with_control(g, ctrl));
    return out;
}

Circuit power(const Circuit& circuit, unsigned k) {
    Circuit out(circuit.n_qubits(), circuit.name());
    out.set_work_qubits(circuit.work_qubits());
    for (unsigned i = 0; i < k; ++i) out.add(circuit);
    return out;
}

Circuit remap(const Circuit& circuit, const std::vector<int>& map, int new_n) {
    if (static_cast<int>(map.size()) != circuit.n_qubits())
        throw ArgumentError("remap table size must equal the circuit width");
    for (int q : map)
        if (q < 0 || q >= new_n) throw ArgumentError("remap target out of range");
    Circuit out(new_n, circuit.name());
    for (Gate g : circuit.gates()) {
        for (int& t : g.targets) t = map[t];
        for (ControlBit& c : g.controls) c.qubit = map[c.qubit];
        out.add(std::move(g));
    }
    return out;
}

Matrix matrix_of(const Circuit& circuit) {
    const int n = circuit.n_qubits();
    if (n > 10) throw CapacityError("matrix_of supports at most 10 qubits");
    const std::uint64_t dim = std::uint64_t{1} << n;
    Matrix m(dim);
    for (std::uint64_t col = 0; col < dim; ++col) {
        StateVector s = StateVector::basis(n, col);
        run_inplace(circuit, s);
        for (std::uint64_t row = 0; row < dim; ++row) m(row, col) = s.amps()[row];
    }
    return m;
}

int depth(const Circuit& circuit) {
    std::vector<int> busy_until(circuit.n_qubits(), 0);
    int d = 0;
    for (const Gate& g : circuit.gates()) {
        int layer = 0;
        for (int t : g.targets) layer = std::max(layer, busy_until[t]);
        for (const ControlBit& c : g.controls) layer = std::max(layer, busy_until[c.qubit]);
        ++layer;
        for (int t : g.targets) busy_until[t] = layer;
        for (const ControlBit& c : g.controls) busy_until[c.qubit] = layer;
        d = std::max(d, layer);
    }
    return d;
}

std::map<std::string, std::size_t> gate_counts(const Circuit& circuit) {
    std::map<std::string, std::size_t> counts;
    for (const Gate& g : circuit.gates()) ++counts[gate_name(g)];
    return counts;
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

int parse_int(const std::string& tok, int line_no) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": expected an integer, got '" +
                         tok + "'");
    }
}

double parse_angle(const std::string& tok, int line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size() || !std::isfinite(v)) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": expected an angle, got '" + tok +
                         "'");
    }
}

std::string fmt_angle(double angle) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", angle);
    return buf;
}

}  // namespace

Circuit read_circuit_text(std::istream& in) {
    Circuit circuit;
    bool have_header = false;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::string ctrl_part;
        if (const auto semi = raw.find(';'); semi != std::string::npos) {
            ctrl_part = raw.substr(semi + 1);
            raw.erase(semi);
        }
        std::vector<std::string> toks = split_ws(raw);
        if (toks.empty()) {
            if (!split_ws(ctrl_part).empty())
                throw ParseError("line " + std::to_string(line_no) + ": controls without a gate");
            continue;
        }

        if (!have_header) {
            if (toks[0] != "qubits" || toks.size() != 2)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected header 'qubits N'");
            const int n = parse_int(toks[1], line_no);
            if (n < 1 || n > kMaxQubits)
                throw ParseError("line " + std::to_string(line_no) + ": qubit count out of range");
            circuit = Circuit(n);
            have_header = true;
            continue;
        }
        if (toks[0] == "work") {
            if (toks.size() != 2) throw ParseError("line " + std::to_string(line_no) +
                                                   ": expected 'work W'");
            const int w = parse_int(toks[1], line_no);
            if (w < 0 || w > circuit.n_qubits())
                throw ParseError("line " + std::to_string(line_no) +
                                 ": work qubit count out of range");
            circuit.set_work_qubits(w);
            continue;
        }
        if (toks[0] == "name") {
            std::string name;
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (i > 1) name += ' ';
                name += toks[i];
            }
            circuit.set_name(name);
            continue;
        }

        std::string head = toks[0];
        double angle = 0.0;
        bool has_angle = false;
        if (const auto paren = head.find('('); paren != std::string::npos) {
            if (head.back() != ')')
                throw ParseError("line " + std::to_string(line_no) + ": malformed angle");
            angle = parse_angle(head.substr(paren + 1, head.size() - paren - 2), line_no);
            has_angle = true;
            head.erase(paren);
        }

        std::vector<int> args;
        for (std::size_t i = 1; i < toks.size(); ++i) args.push_back(parse_int(toks[i], line_no));

        std::vector<ControlBit> controls;
        for (const std::string& tok : split_ws(ctrl_part)) {
            if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-'))
                throw ParseError("line " + std::to_string(line_no) +
                                 ": controls must look like +q or -q");
            controls.push_back({parse_int(tok.substr(1), line_no), tok[0] == '+'});
        }

        auto need = [&](std::size_t n_args) {
            if (args.size() != n_args)
                throw ParseError("line " + std::to_string(line_no) + ": " + head + " expects " +
                                 std::to_string(n_args) + " qubit argument(s)");
        };
        auto need_at_least = [&](std::size_t n_args) {
            if (args.size() < n_args)
                throw ParseError("line " + std::to_string(line_no) + ": " + head +
                                 " expects at least " + std::to_string(n_args) + " arguments");
        };
        auto reject_angle = [&] {
            if (has_angle)
                throw ParseError("line " + std::to_string(line_no) + ": " + head +
                                 " takes no angle");
        };

        Gate g;
        if (head == "X" || head == "H" || head == "Z" || head == "I" || head == "SX" ||
            head == "SXDG") {
            reject_angle();
            need(1);
            if (head == "X")
                g = x(args[0]);
            else if (head == "H")
                g = h(args[0]);
            else if (head == "Z")
                g = z(args[0]);
            else if (head == "I")
                g = id(args[0]);
            else if (head == "SX")
                g = sx(args[0]);
            else
                g = dagger(sx(args[0]));
        } else if (head == "RZ") {
            if (!has_angle)
                throw ParseError("line " + std::to_string(line_no) + ": RZ needs an angle");
            need(1);
            g = rz(args[0], angle);
        } else if (head == "SWAP") {
            reject_angle();
            need(2);
            g = swap_gate(args[0], args[1]);
        } else if (head == "CNOT" || head == "CX") {
            reject_angle();
            need(2);
            g = cnot(args[0], args[1]);
        } else if (head == "CZ") {
            reject_angle();
            need(2);
            g = cz(args[0], args[1]);
        } else if (head == "CRZ") {
            if (!has_angle)
                throw ParseError("line " + std::to_string(line_no) + ": CRZ needs an angle");
            need(2);
            g = crz(args[0], args[1], angle);
        } else if (head == "CCX" || head == "TOFFOLI") {
            reject_angle();
            need(3);
            g = toffoli(args[0], args[1], args[2]);
        } else if (head == "CCZ") {
            reject_angle();
            need(3);
            g = mcz(std::vector<int>{args[0], args[1]}, args[2]);
        } else if (head == "MCX" || head == "MCZ") {
            reject_angle();
            need_at_least(2);
            const int target = args.back();
            std::vector<int> ctrls(args.begin(), args.end() - 1);
            g = head == "MCX" ? mcx(ctrls, target) : mcz(ctrls, target);
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unknown gate '" + head + "'");
        }
        for (const ControlBit& c : controls) g = with_control(std::move(g), c.qubit, c.value);
        try {
            circuit.add(std::move(g));
        } catch (const Error& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!have_header) throw ParseError("missing 'qubits N' header");
    return circuit;
}

Circuit parse_circuit_text(const std::string& text) {
    std::istringstream iss(text);
    return read_circuit_text(iss);
}

void write_circuit_text(const Circuit& circuit, std::ostream& out) {
    out << "qubits " << circuit.n_qubits() << '\n';
    if (circuit.work_qubits() > 0) out << "work " << circuit.work_qubits() << '\n';
    if (!circuit.name().empty()) out << "name " << circuit.name() << '\n';
    for (const Gate& g : circuit.gates()) {
        std::string head;
        switch (g.kind) {
            case GateKind::kX: head = "X"; break;
            case GateKind::kH: head = "H"; break;
            case GateKind::kZ: head = "Z"; break;
            case GateKind::kI: head = "I"; break;
            case GateKind::kSX: head = "SX"; break;
            case GateKind::kSwap: head = "SWAP"; break;
            case GateKind::kRZ: head = "RZ(" + fmt_angle(g.angle) + ")"; break;
            case GateKind::kUnitary:
                if (g.label == "SXDG") {
                    head = "SXDG";
                    break;
                }
                throw UnsupportedGateError("raw unitary '" + g.label + "' has no text form");
        }
        out << head;
        for (int t : g.targets) out << ' ' << t;
        if (!g.controls.empty()) {
            out << " ;";
            for (const ControlBit& c : g.controls) out << ' ' << (c.value ? '+' : '-') << c.qubit;
        }
        out << '\n';
    }
}

std::string circuit_to_text(const Circuit& circuit) {
    std::ostringstream oss;
    write_circuit_text(circuit, oss);
    return oss.str();
}

}  // namespace qwalk
