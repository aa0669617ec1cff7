#include "qwalk/transpile.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include "qwalk/errors.hpp"
#include "qwalk/gates.hpp"
#include "qwalk/matrix.hpp"

namespace qwalk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kLookahead = 20;

std::string trimmed(const std::string& s) {
    const auto from = s.find_first_not_of(" \t\r");
    if (from == std::string::npos) return {};
    const auto to = s.find_last_not_of(" \t\r");
    return s.substr(from, to - from + 1);
}

int parse_wire(const std::string& token, int line_no) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(token, &used);
    } catch (const std::exception&) {
        used = std::string::npos;
    }
    if (used != token.size() || value < 0)
        throw ParseError("coupling map line " + std::to_string(line_no) + ": bad qubit index '" +
                         token + "'");
    return value;
}

}  // namespace

CouplingMap::CouplingMap(int n_qubits, std::vector<std::pair<int, int>> edges) : n_(n_qubits) {
    if (n_ < 1) throw ArgumentError("coupling map needs at least one qubit");
    for (auto& [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n_ || b >= n_)
            throw ArgumentError("coupling edge " + std::to_string(a) + "-" + std::to_string(b) +
                                " is outside the " + std::to_string(n_) + "-qubit device");
        if (a == b)
            throw ArgumentError("coupling edge " + std::to_string(a) + "-" + std::to_string(b) +
                                " is a self-loop");
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    adj_.assign(n_, {});
    for (const auto& [a, b] : edges_) {
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    }
    for (auto& row : adj_) std::sort(row.begin(), row.end());

    dist_.assign(n_, std::vector<int>(n_, -1));
    for (int s = 0; s < n_; ++s) {
        std::deque<int> queue{s};
        dist_[s][s] = 0;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int v : adj_[u]) {
                if (dist_[s][v] < 0) {
                    dist_[s][v] = dist_[s][u] + 1;
                    queue.push_back(v);
                }
            }
        }
        for (int v = 0; v < n_; ++v)
            if (dist_[s][v] < 0) throw ValidationError("coupling map is not connected");
    }
}

bool CouplingMap::has_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(a, b));
}

const std::vector<int>& CouplingMap::neighbors(int q) const {
    if (q < 0 || q >= n_) throw ArgumentError("qubit index out of range");
    return adj_[q];
}

int CouplingMap::degree(int q) const { return static_cast<int>(neighbors(q).size()); }

int CouplingMap::distance(int a, int b) const {
    if (a < 0 || b < 0 || a >= n_ || b >= n_) throw ArgumentError("qubit index out of range");
    return dist_[a][b];
}

CouplingMap read_coupling_map(std::istream& in) {
    int declared = -1;
    std::vector<std::pair<int, int>> edges;
    int max_index = -1;
    std::string raw;
    for (int line_no = 1; std::getline(in, raw); ++line_no) {
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trimmed(line);
        if (line.empty()) continue;
        if (line.starts_with("qubits")) {
            const std::string value = trimmed(line.substr(6));
            if (declared >= 0)
                throw ParseError("coupling map line " + std::to_string(line_no) +
                                 ": duplicate qubits line");
            declared = parse_wire(value, line_no);
            continue;
        }
        const auto dash = line.find('-');
        if (dash == std::string::npos)
            throw ParseError("coupling map line " + std::to_string(line_no) +
                             ": expected 'a-b', got '" + line + "'");
        const int a = parse_wire(trimmed(line.substr(0, dash)), line_no);
        const int b = parse_wire(trimmed(line.substr(dash + 1)), line_no);
        edges.emplace_back(a, b);
        max_index = std::max({max_index, a, b});
    }
    const int n = declared >= 0 ? declared : max_index + 1;
    return CouplingMap(n, std::move(edges));
}

CouplingMap parse_coupling_map(const std::string& text) {
    std::istringstream in(text);
    return read_coupling_map(in);
}

CouplingMap load_coupling_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open coupling map file '" + path + "'");
    return read_coupling_map(in);
}

std::string coupling_map_to_text(const CouplingMap& map) {
    std::string out = "qubits " + std::to_string(map.n_qubits()) + "\n";
    for (const auto& [a, b] : map.edges())
        out += std::to_string(a) + "-" + std::to_string(b) + "\n";
    return out;
}

Layout identity_layout(int n_qubits) {
    Layout layout;
    layout.to_physical.resize(n_qubits);
    for (int q = 0; q < n_qubits; ++q) layout.to_physical[q] = q;
    return layout;
}

namespace {

void validate_layout(const Layout& layout, int n_logical, const CouplingMap& map) {
    if (static_cast<int>(layout.to_physical.size()) != n_logical)
        throw ArgumentError("layout size " + std::to_string(layout.to_physical.size()) +
                            " does not match the " + std::to_string(n_logical) +
                            "-qubit circuit");
    std::vector<bool> used(map.n_qubits(), false);
    for (int p : layout.to_physical) {
        if (p < 0 || p >= map.n_qubits())
            throw ArgumentError("layout places a wire outside the device");
        if (used[p]) throw ArgumentError("layout places two wires on physical " + std::to_string(p));
        used[p] = true;
    }
}

// --- decomposition to {CNOT, I, RZ, SX, X} ---------------------------------

// Borrowed wires needed by the Toffoli ladder for an all-1-polarity
// multi-controlled X with k controls. The ladders are exact for any borrowed
// wire state, so the work wires come back untouched.
int ladder_works(std::size_t k, const std::string& what) {
    if (k <= 2) return 0;
    if (k == 3) return 1;
    if (k == 4) return 2;
    throw UnsupportedGateError(what + " with " + std::to_string(k) +
                               " controls exceeds the two-work-qubit ladder");
}

int works_needed(const Gate& g) {
    const std::size_t k = g.controls.size();
    switch (g.kind) {
        case GateKind::kUnitary:
            throw UnsupportedGateError("raw unitary '" + gate_name(g) +
                                       "' has no basis decomposition");
        case GateKind::kI:
            return 0;
        case GateKind::kX:
        case GateKind::kZ:
            return ladder_works(k, "multi-controlled gate");
        case GateKind::kSwap:
            return k == 0 ? 0 : ladder_works(k + 1, "controlled swap");
        case GateKind::kRZ:
        case GateKind::kSX:
        case GateKind::kH:
            // Half-angle recursion peels one control per level without
            // scratch wires; only the inner MCX ladders borrow.
            return k <= 1 ? 0 : ladder_works(k - 1, "controlled rotation");
    }
    throw ArgumentError("unknown gate kind");
}

class BasisEmitter {
  public:
    BasisEmitter(Circuit& out, std::vector<int> works) : out_(out), works_(std::move(works)) {}

    void emit(const Gate& g) {
        if (g.kind == GateKind::kUnitary)
            throw UnsupportedGateError("raw unitary '" + gate_name(g) +
                                       "' has no basis decomposition");
        // Controlled identity is the identity; keep the basis I on the target.
        if (g.kind == GateKind::kI) {
            out_.add(id(g.targets[0]));
            return;
        }
        std::vector<int> flips;
        std::vector<int> ctrls;
        for (const ControlBit& c : g.controls) {
            if (!c.value) flips.push_back(c.qubit);
            ctrls.push_back(c.qubit);
        }
        for (int q : flips) out_.add(x(q));
        dispatch(g, ctrls);
        for (int q : flips) out_.add(x(q));
    }

  private:
    void dispatch(const Gate& g, const std::vector<int>& c) {
        switch (g.kind) {
            case GateKind::kX:
                emit_mcx(c, g.targets[0]);
                return;
            case GateKind::kZ:
                if (c.empty()) {
                    out_.add(rz(g.targets[0], kPi));
                } else {
                    basis_h(g.targets[0]);
                    emit_mcx(c, g.targets[0]);
                    basis_h(g.targets[0]);
                }
                return;
            case GateKind::kRZ:
                emit_mcrz(c, g.targets[0], g.angle);
                return;
            case GateKind::kSX:
                if (c.empty()) {
                    out_.add(sx(g.targets[0]));
                } else {
                    emit_mcsx(c, g.targets[0]);
                }
                return;
            case GateKind::kH:
                emit_mch(c, g.targets[0]);
                return;
            case GateKind::kSwap:
                emit_mcswap(c, g.targets[0], g.targets[1]);
                return;
            default:
                throw UnsupportedGateError("gate '" + gate_name(g) + "' has no basis decomposition");
        }
    }

    // H = RZ(pi/2) SX RZ(pi/2) up to the global phase e^{-i pi/4}.
    void basis_h(int t) {
        out_.add(rz(t, kPi / 2));
        out_.add(sx(t));
        out_.add(rz(t, kPi / 2));
    }

    // Exact Toffoli as 6 CNOTs, RZ(+-pi/4) and two basis-H blocks.
    void toffoli_net(int a, int b, int t) {
        basis_h(t);
        out_.add(cnot(b, t));
        out_.add(rz(t, -kPi / 4));
        out_.add(cnot(a, t));
        out_.add(rz(t, kPi / 4));
        out_.add(cnot(b, t));
        out_.add(rz(t, -kPi / 4));
        out_.add(cnot(a, t));
        out_.add(rz(b, kPi / 4));
        out_.add(rz(t, kPi / 4));
        basis_h(t);
        out_.add(cnot(a, b));
        out_.add(rz(a, kPi / 4));
        out_.add(rz(b, -kPi / 4));
        out_.add(cnot(a, b));
    }

    void emit_mcx(const std::vector<int>& c, int t) {
        switch (c.size()) {
            case 0:
                out_.add(x(t));
                return;
            case 1:
                out_.add(cnot(c[0], t));
                return;
            case 2:
                toffoli_net(c[0], c[1], t);
                return;
            case 3: {
                // Borrowed-ancilla split (exact for any state of the work
                // wire): t ^= c0 & (a ^ c1c2) ^ c0 & a = c0c1c2.
                const int a = works_[0];
                toffoli_net(c[1], c[2], a);
                toffoli_net(c[0], a, t);
                toffoli_net(c[1], c[2], a);
                toffoli_net(c[0], a, t);
                return;
            }
            case 4: {
                const int a = works_[0];
                const int b = works_[1];
                const auto inner = [&] {  // C3X(c0, c1, a -> t) borrowing b
                    toffoli_net(c[1], a, b);
                    toffoli_net(c[0], b, t);
                    toffoli_net(c[1], a, b);
                    toffoli_net(c[0], b, t);
                };
                toffoli_net(c[2], c[3], a);
                inner();
                toffoli_net(c[2], c[3], a);
                inner();
                return;
            }
            default:
                throw UnsupportedGateError("multi-controlled gate with " +
                                           std::to_string(c.size()) +
                                           " controls exceeds the two-work-qubit ladder");
        }
    }

    // diag(1 .. 1, e^{i phi}) on controls+target, exactly (no global phase).
    // Half-angle recursion: the +-phi/2 pair around the MCX cancels unless
    // the peeled controls are all 1.
    void emit_mcrz(const std::vector<int>& c, int t, double phi) {
        if (c.empty()) {
            out_.add(rz(t, phi));
            return;
        }
        if (c.size() == 1) {
            out_.add(rz(t, phi / 2));
            out_.add(cnot(c[0], t));
            out_.add(rz(t, -phi / 2));
            out_.add(cnot(c[0], t));
            out_.add(rz(c[0], phi / 2));
            return;
        }
        const std::vector<int> rest(c.begin(), c.end() - 1);
        const int last = c.back();
        emit_mcrz({last}, t, phi / 2);
        emit_mcx(rest, last);
        emit_mcrz({last}, t, -phi / 2);
        emit_mcx(rest, last);
        emit_mcrz(rest, t, phi / 2);
    }

    // SX = H RZ(pi/2) H exactly, so the controlled form only controls the RZ.
    void emit_mcsx(const std::vector<int>& c, int t) {
        basis_h(t);
        emit_mcrz(c, t, kPi / 2);
        basis_h(t);
    }

    // H = e^{-i pi/4} RZ(pi/2) SX RZ(pi/2); under controls the phase factor
    // becomes a rotation on the control wires themselves.
    void emit_mch(const std::vector<int>& c, int t) {
        if (c.empty()) {
            basis_h(t);
            return;
        }
        emit_mcrz(c, t, kPi / 2);
        emit_mcsx(c, t);
        emit_mcrz(c, t, kPi / 2);
        emit_mcrz(std::vector<int>(c.begin(), c.end() - 1), c.back(), -kPi / 4);
    }

    void emit_mcswap(const std::vector<int>& c, int a, int b) {
        if (c.empty()) {
            out_.add(cnot(a, b));
            out_.add(cnot(b, a));
            out_.add(cnot(a, b));
            return;
        }
        std::vector<int> ctrls = c;
        ctrls.push_back(a);
        out_.add(cnot(b, a));
        emit_mcx(ctrls, b);
        out_.add(cnot(b, a));
    }

    Circuit& out_;
    std::vector<int> works_;
};

bool is_basis_gate(const Gate& g) {
    switch (g.kind) {
        case GateKind::kX:
            return g.controls.size() <= 1 &&
                   std::all_of(g.controls.begin(), g.controls.end(),
                               [](const ControlBit& c) { return c.value; });
        case GateKind::kI:
        case GateKind::kRZ:
        case GateKind::kSX:
            return g.controls.empty();
        default:
            return false;
    }
}

std::vector<int> gate_wires(const Gate& g) {
    std::vector<int> wires = g.targets;
    for (const ControlBit& c : g.controls) wires.push_back(c.qubit);
    std::sort(wires.begin(), wires.end());
    wires.erase(std::unique(wires.begin(), wires.end()), wires.end());
    return wires;
}

}  // namespace

Circuit decompose_to_basis(const Circuit& circuit) {
    int works = 0;
    for (const Gate& g : circuit.gates()) works = std::max(works, works_needed(g));

    Circuit out(circuit.n_qubits() + works, circuit.name());
    out.set_work_qubits(circuit.work_qubits() + works);
    std::vector<int> work_wires;
    for (int w = 0; w < works; ++w) work_wires.push_back(circuit.n_qubits() + w);

    BasisEmitter emitter(out, work_wires);
    for (const Gate& g : circuit.gates()) emitter.emit(g);
    return out;
}

RouteResult route(const Circuit& circuit, const CouplingMap& map, const Layout& layout) {
    if (circuit.n_qubits() > map.n_qubits())
        throw CapacityError("circuit needs " + std::to_string(circuit.n_qubits()) +
                            " qubits but the device has " + std::to_string(map.n_qubits()));
    for (const Gate& g : circuit.gates())
        if (!is_basis_gate(g))
            throw ArgumentError("route requires a basis-only circuit; gate '" + gate_name(g) +
                                "' is not in {CNOT, I, RZ, SX, X}");
    validate_layout(layout, circuit.n_qubits(), map);

    const int n_phys = map.n_qubits();
    std::vector<int> phys_of = layout.to_physical;  // logical -> physical
    std::vector<int> contents(n_phys);              // physical -> original wire
    for (int p = 0; p < n_phys; ++p) contents[p] = p;

    // Two-qubit gates ahead of each gate index, for the lookahead score.
    const auto& gates = circuit.gates();
    std::vector<std::pair<int, int>> pair_of(gates.size(), {-1, -1});
    for (std::size_t i = 0; i < gates.size(); ++i)
        if (gates[i].controls.size() == 1)
            pair_of[i] = {gates[i].controls[0].qubit, gates[i].targets[0]};

    RouteResult result{Circuit(n_phys, circuit.name()), layout, layout, {}, 0};
    Circuit& out = result.circuit;

    auto apply_swap = [&](int u, int v) {
        out.add(cnot(u, v));
        out.add(cnot(v, u));
        out.add(cnot(u, v));
        ++result.swaps;
        std::swap(contents[u], contents[v]);
        for (int l = 0; l < circuit.n_qubits(); ++l) {
            if (phys_of[l] == u)
                phys_of[l] = v;
            else if (phys_of[l] == v)
                phys_of[l] = u;
        }
    };

    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        if (pair_of[i].first < 0) {
            Gate moved = g;
            for (int& t : moved.targets) t = phys_of[t];
            out.add(moved);
            continue;
        }
        while (map.distance(phys_of[pair_of[i].first], phys_of[pair_of[i].second]) > 1) {
            const int pc = phys_of[pair_of[i].first];
            const int pt = phys_of[pair_of[i].second];
            const int current = map.distance(pc, pt);

            // Candidate swaps: edges touching the active pair that strictly
            // shorten it; scored by the summed distance of the lookahead
            // window after the swap.
            std::pair<int, int> best{-1, -1};
            long best_score = 0;
            auto consider = [&](int u, int v) {
                if (u > v) std::swap(u, v);
                const auto moved = [&](int p) { return p == u ? v : (p == v ? u : p); };
                if (map.distance(moved(pc), moved(pt)) >= current) return;
                long score = 0;
                int seen = 0;
                for (std::size_t j = i; j < gates.size() && seen < kLookahead; ++j) {
                    if (pair_of[j].first < 0) continue;
                    ++seen;
                    score += map.distance(moved(phys_of[pair_of[j].first]),
                                          moved(phys_of[pair_of[j].second]));
                }
                if (best.first < 0 || score < best_score ||
                    (score == best_score && std::make_pair(u, v) < best)) {
                    best = {u, v};
                    best_score = score;
                }
            };
            for (int end : {pc, pt})
                for (int nb : map.neighbors(end)) consider(end, nb);
            apply_swap(best.first, best.second);
        }
        Gate moved = g;
        moved.controls[0].qubit = phys_of[moved.controls[0].qubit];
        moved.targets[0] = phys_of[moved.targets[0]];
        out.add(moved);
    }

    result.final_layout.to_physical = phys_of;
    result.wire_permutation = contents;
    return result;
}

Layout hardware_aware_layout(const Circuit& circuit, const CouplingMap& map) {
    const int n_log = circuit.n_qubits();
    if (n_log > map.n_qubits())
        throw CapacityError("circuit needs " + std::to_string(n_log) +
                            " qubits but the device has " + std::to_string(map.n_qubits()));

    std::map<std::pair<int, int>, long> pair_count;
    std::vector<long> weight(n_log, 0);
    for (const Gate& g : circuit.gates()) {
        const std::vector<int> wires = gate_wires(g);
        for (std::size_t i = 0; i < wires.size(); ++i)
            for (std::size_t j = i + 1; j < wires.size(); ++j) {
                ++pair_count[{wires[i], wires[j]}];
                ++weight[wires[i]];
                ++weight[wires[j]];
            }
    }
    std::vector<std::pair<std::pair<int, int>, long>> pairs(pair_count.begin(), pair_count.end());
    std::sort(pairs.begin(), pairs.end(), [](const auto& lhs, const auto& rhs) {
        if (lhs.second != rhs.second) return lhs.second > rhs.second;
        return lhs.first < rhs.first;
    });

    std::vector<int> phys_of(n_log, -1);
    std::vector<bool> taken(map.n_qubits(), false);
    const auto place = [&](int logical, int physical) {
        phys_of[logical] = physical;
        taken[physical] = true;
    };
    // Free spot closest to `anchor`; prefers adjacency, then device degree,
    // then the lower index.
    const auto best_near = [&](int anchor) {
        int best = -1;
        for (int p = 0; p < map.n_qubits(); ++p) {
            if (taken[p]) continue;
            if (best < 0) {
                best = p;
                continue;
            }
            const int da = map.distance(anchor, p);
            const int db = map.distance(anchor, best);
            if (da != db ? da < db : map.degree(p) > map.degree(best)) best = p;
        }
        if (best < 0) throw CapacityError("no free physical qubit left");
        return best;
    };

    for (const auto& [pair, count] : pairs) {
        const auto [a, b] = pair;
        const bool a_placed = phys_of[a] >= 0;
        const bool b_placed = phys_of[b] >= 0;
        if (a_placed && b_placed) continue;
        if (!a_placed && !b_placed) {
            // Heaviest free edge by summed device degree, index tie-break.
            std::pair<int, int> edge{-1, -1};
            for (const auto& [u, v] : map.edges()) {
                if (taken[u] || taken[v]) continue;
                if (edge.first < 0 ||
                    map.degree(u) + map.degree(v) > map.degree(edge.first) + map.degree(edge.second))
                    edge = {u, v};
            }
            if (edge.first < 0) {
                place(a, best_near(0));
                place(b, best_near(phys_of[a]));
                continue;
            }
            // The wire with more total interactions takes the better end.
            int heavy = a, light = b;
            if (weight[b] > weight[a]) std::swap(heavy, light);
            int heavy_end = edge.first, light_end = edge.second;
            if (map.degree(edge.second) != map.degree(edge.first)
                    ? map.degree(edge.second) > map.degree(edge.first)
                    : true)
                std::swap(heavy_end, light_end);
            place(heavy, heavy_end);
            place(light, light_end);
            continue;
        }
        const int anchored = a_placed ? a : b;
        const int incoming = a_placed ? b : a;
        int spot = -1;
        for (int nb : map.neighbors(phys_of[anchored])) {
            if (taken[nb]) continue;
            if (spot < 0 || map.degree(nb) > map.degree(spot)) spot = nb;
        }
        place(incoming, spot >= 0 ? spot : best_near(phys_of[anchored]));
    }

    for (int l = 0; l < n_log; ++l) {
        if (phys_of[l] >= 0) continue;
        for (int p = 0; p < map.n_qubits(); ++p) {
            if (!taken[p]) {
                place(l, p);
                break;
            }
        }
    }
    return Layout{phys_of};
}

bool verify_equivalence(const Circuit& a, const Circuit& b, const std::vector<int>& permutation,
                        double tol) {
    const int n = a.n_qubits();
    if (n > 10 || b.n_qubits() > 10)
        throw CapacityError("equivalence check is limited to 10 qubits");
    if (b.n_qubits() != n || static_cast<int>(permutation.size()) != n)
        throw ArgumentError("equivalence check needs equal widths and a full wire permutation");
    std::vector<bool> seen(n, false);
    for (int p : permutation) {
        if (p < 0 || p >= n || seen[p]) throw ArgumentError("wire permutation is not a bijection");
        seen[p] = true;
    }
    if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");

    const Matrix ma = matrix_of(a);
    const Matrix mb = matrix_of(b);
    const std::size_t dim = ma.dim();

    // p(x): bit i of x lands on bit permutation[i].
    std::vector<std::size_t> index_map(dim, 0);
    for (std::size_t x = 0; x < dim; ++x) {
        std::size_t y = 0;
        for (int i = 0; i < n; ++i)
            if (x >> i & 1) y |= std::size_t{1} << permutation[i];
        index_map[x] = y;
    }

    // Global phase from the largest entry of the permuted b-matrix.
    std::size_t ref_r = 0, ref_c = 0;
    double ref_mag = -1.0;
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
            const double m = std::abs(mb(index_map[r], index_map[c]));
            if (m > ref_mag) {
                ref_mag = m;
                ref_r = r;
                ref_c = c;
            }
        }
    const Complex ref_b = mb(index_map[ref_r], index_map[ref_c]);
    const Complex ref_a = ma(ref_r, ref_c);
    if (std::abs(ref_a) < ref_mag - tol) return false;  // magnitudes must match
    Complex phase = ref_a / ref_b;
    phase /= std::abs(phase);

    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            if (std::abs(ma(r, c) - phase * mb(index_map[r], index_map[c])) > tol) return false;
    return true;
}

bool verify_routing(const Circuit& original, const RouteResult& routed, double tol) {
    // Undo the accumulated swap permutation so every wire's content returns
    // to where it started; the tail swaps are virtual (verification only).
    Circuit undone = routed.circuit;
    std::vector<int> contents = routed.wire_permutation;
    for (int p = 0; p < static_cast<int>(contents.size()); ++p) {
        while (contents[p] != p) {
            const int q = contents[p];
            undone.add(swap_gate(p, q));
            std::swap(contents[p], contents[q]);
        }
    }

    // Restrict to the wires that matter: initial positions plus anything a
    // routed gate touched.
    std::vector<bool> used(routed.circuit.n_qubits(), false);
    for (int p : routed.initial.to_physical) used[p] = true;
    for (const Gate& g : undone.gates())
        for (int w : gate_wires(g)) used[w] = true;
    std::vector<int> compact_of(routed.circuit.n_qubits(), -1);
    int m = 0;
    for (int p = 0; p < routed.circuit.n_qubits(); ++p)
        if (used[p]) compact_of[p] = m++;

    Circuit compacted(m, undone.name());
    for (const Gate& g : undone.gates()) {
        Gate moved = g;
        for (int& t : moved.targets) t = compact_of[t];
        for (ControlBit& c : moved.controls) c.qubit = compact_of[c.qubit];
        compacted.add(moved);
    }

    Circuit padded(m, original.name());
    for (const Gate& g : original.gates()) padded.add(g);

    // Wire i of the original lives at its initial physical position; pad
    // wires take the remaining compact slots in order.
    std::vector<int> permutation(m, -1);
    std::vector<bool> assigned(m, false);
    for (int l = 0; l < original.n_qubits(); ++l) {
        permutation[l] = compact_of[routed.initial.to_physical[l]];
        assigned[permutation[l]] = true;
    }
    int next = 0;
    for (int l = original.n_qubits(); l < m; ++l) {
        while (assigned[next]) ++next;
        permutation[l] = next;
        assigned[next] = true;
    }
    return verify_equivalence(padded, compacted, permutation, tol);
}

CircuitMetrics metrics(const Circuit& circuit) {
    CircuitMetrics m;
    m.depth = depth(circuit);
    m.total_gates = circuit.size();
    for (const Gate& g : circuit.gates()) {
        const std::size_t wires = gate_wires(g).size();
        if (wires == 2) ++m.two_qubit_gates;
        if (g.kind == GateKind::kSwap) ++m.swap_gates;
    }
    return m;
}

CircuitMetrics metrics(const RouteResult& routed) {
    CircuitMetrics m = metrics(routed.circuit);
    m.swap_gates = static_cast<std::size_t>(routed.swaps);
    return m;
}

}  // namespace qwalk
