"""Smoke tests for the python bindings; the heavy numerics live in the C++ suites."""

import math
import os

import pytest

import qwalk

MELBOURNE = os.path.join(os.environ.get("QWALK_REPO", "."), "configs", "melbourne.map")


def test_graph_catalog():
    assert qwalk.graphs() == ["hypercube", "lattice", "bipartite", "complete"]
    assert qwalk.default_theta_width("hypercube", 16) == 3
    assert qwalk.default_theta_width("bipartite", 8) == 2
    with pytest.raises(ValueError):
        qwalk.hitting_time("moebius", 16, ["1011"])
    with pytest.raises(ValueError):
        qwalk.hitting_time("hypercube", 12, ["1011"])


def test_hitting_times_match_the_reference_peaks():
    hit, peak = qwalk.hitting_time("hypercube", 16, ["1011"])
    assert hit == 3
    assert abs(peak - 0.916706323624) < 1e-9

    hit, peak = qwalk.hitting_time("complete", 16, ["1011", "1111"])
    assert hit == 2
    assert abs(peak - 0.9453125) < 1e-9

    trace = qwalk.marked_probability_trace("bipartite", 8, ["011"], iterations=2)
    assert len(trace) == 3
    assert abs(trace[2] - 0.9453125) < 1e-9


def test_search_samples_the_marked_node():
    r = qwalk.search("hypercube", 16, ["1011"], seed=7)
    assert r["iterations"] == 3
    assert sum(r["counts"].values()) == r["shots"] == 1024
    assert r["counts"]["1011"] >= 880
    again = qwalk.search("hypercube", 16, ["1011"], seed=7)
    assert again["counts"] == r["counts"]


def test_grover_baseline():
    r = qwalk.grover(16, "0110", shots=64, seed=3)
    assert r["iterations"] == 3
    assert abs(r["trace"][-1] - 0.961318969727) < 1e-9
    assert abs(qwalk.theoretical_iterations(16, 1) - 4.0) < 1e-12


def test_walk_distributions():
    r = qwalk.walk("hypercube", 16, steps=1)
    assert r["nodes"][0] == "0000"
    assert r["distributions"][0][0] == pytest.approx(1.0)
    spread = r["distributions"][1]
    assert sum(spread) == pytest.approx(1.0)
    assert spread[1] == pytest.approx(0.25)  # neighbor 0001


def test_classical_baseline():
    r = qwalk.classical("complete", 16, ["1011"], trials=20000, seed=1)
    assert r["periodic"] is False
    assert r["mixing_time"] == 1
    assert abs(r["hitting_unmarked"] - 16.0) < 1e-9
    assert abs(r["hitting_mc"] - 16.0) < 0.8

    b = qwalk.classical("bipartite", 8)
    assert b["periodic"] is True
    assert b["mixing_time"] is None


def test_noisy_search_degrades():
    clean = qwalk.noisy_search("hypercube", 16, ["1011"], 0.0, 0.0, 0.0, shots=512, seed=1)
    assert clean["marked_probability"] > 0.85
    noisy = qwalk.noisy_search("hypercube", 16, ["1011"], 0.002, 0.02, 0.03, shots=512, seed=1)
    assert noisy["marked_probability"] < clean["marked_probability"] - 0.3
    assert abs(noisy["ideal_marked_probability"] - 0.916706323624) < 1e-9


def test_run_circuit_text():
    bell = "qubits 2\nH 0\nX 1 ; +0\n"
    counts = qwalk.run_circuit(bell, shots=256, seed=5)
    assert set(counts) <= {"00", "11"}
    assert sum(counts.values()) == 256
    metrics = qwalk.circuit_metrics(bell)
    assert metrics["depth"] == 2
    assert metrics["total_gates"] == 2
    assert metrics["two_qubit_gates"] == 1


def test_transpile_routes_and_verifies():
    r = qwalk.transpile("bipartite", 8, MELBOURNE)
    assert r["verified"] is True
    assert r["device_qubits"] == 15
    assert (
        r["routed_metrics"]["two_qubit_gates"]
        == r["input_metrics"]["two_qubit_gates"] + 3 * r["swaps"]
    )
    assert "qubits 15" in r["routed_text"]
