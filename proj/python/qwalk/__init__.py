"""Coined-quantum-walk search toolkit on a dense statevector simulator."""

from ._qwalk import (
    circuit_metrics,
    classical,
    default_theta_width,
    graphs,
    grover,
    hitting_time,
    marked_probability_trace,
    noisy_search,
    run_circuit,
    search,
    theoretical_iterations,
    transpile,
    walk,
)

__all__ = [
    "circuit_metrics",
    "classical",
    "default_theta_width",
    "graphs",
    "grover",
    "hitting_time",
    "marked_probability_trace",
    "noisy_search",
    "run_circuit",
    "search",
    "theoretical_iterations",
    "transpile",
    "walk",
]
