"""Configurations, frameworks, and conic-graph algebra.

A configuration assigns each agent a spatial position in R^d plus a
clock bias in length units, i.e. a point of R^(d+1). A framework pairs
a directed graph with a configuration; its conic class forgets arc
directions but remembers which pairs carry both arcs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .graphs import ConicGraph, DirectedGraph, EuclideanGraph


@dataclass(frozen=True, eq=False)
class Configuration:
    """Positions (n, d) and biases (n,). Positions must be pairwise distinct."""

    positions: np.ndarray
    biases: np.ndarray

    def __init__(self, positions, biases):
        pos = np.array(positions, dtype=float)
        bias = np.array(biases, dtype=float)
        if pos.ndim != 2:
            raise ValueError("positions must be an (n, d) array")
        if bias.shape != (pos.shape[0],):
            raise ValueError("biases must be a length-n vector")
        n = pos.shape[0]
        for u in range(n):
            for w in range(u + 1, n):
                if np.array_equal(pos[u], pos[w]):
                    raise ValueError(f"coincident positions at vertices {u} and {w}")
        pos.setflags(write=False)
        bias.setflags(write=False)
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "biases", bias)

    @property
    def n(self) -> int:
        return self.positions.shape[0]

    @property
    def d(self) -> int:
        return self.positions.shape[1]

    def point(self, u: int) -> np.ndarray:
        """Stacked point (x_u, beta_u) in R^(d+1)."""
        return np.concatenate([self.positions[u], [self.biases[u]]])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return np.array_equal(self.positions, other.positions) and np.array_equal(
            self.biases, other.biases
        )


@dataclass(frozen=True, eq=False)
class ConicFramework:
    """A directed graph together with a configuration on its vertices."""

    graph: DirectedGraph
    config: Configuration

    def __post_init__(self):
        if self.graph.n != self.config.n:
            raise ValueError(
                f"graph has {self.graph.n} vertices, configuration has {self.config.n}"
            )

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def d(self) -> int:
        return self.config.d

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConicFramework):
            return NotImplemented
        return self.graph == other.graph and self.config == other.config


@dataclass(frozen=True)
class Decomposition:
    """An ordered pair of Euclidean graphs on a common vertex set."""

    g: EuclideanGraph
    h: EuclideanGraph

    def __post_init__(self):
        if self.g.n != self.h.n:
            raise ValueError("decomposition parts disagree on vertex count")

    @property
    def n(self) -> int:
        return self.g.n


def pseudo_range(p_e: np.ndarray, p_r: np.ndarray) -> float:
    """One-way range between emitter and receiver points of R^(d+1).

    The spatial distance plus the receiver bias minus the emitter bias;
    asymmetric in its arguments.
    """
    p_e = np.asarray(p_e, dtype=float)
    p_r = np.asarray(p_r, dtype=float)
    if p_e.shape != p_r.shape or p_e.ndim != 1 or p_e.size < 2:
        raise ValueError("expected two stacked points of equal dimension >= 2")
    dist = float(np.linalg.norm(p_e[:-1] - p_r[:-1]))
    if dist == 0.0:
        raise ValueError("coincident spatial positions")
    return dist + float(p_r[-1]) - float(p_e[-1])


def arc_pseudo_ranges(fw: ConicFramework) -> np.ndarray:
    """Measured pseudo-range for every arc, in arc order."""
    return np.array(
        [pseudo_range(fw.config.point(u), fw.config.point(w)) for u, w in fw.graph.arcs]
    )


def conic_class(dg: DirectedGraph) -> ConicGraph:
    """Forget arc directions; pairs carrying both arcs become double edges."""
    arcs = set(dg.arcs)
    simple, double = [], []
    for u, w in sorted({(min(a), max(a)) for a in arcs}):
        if (u, w) in arcs and (w, u) in arcs:
            double.append((u, w))
        else:
            simple.append((u, w))
    return ConicGraph(dg.n, simple, double)


def union(g1: EuclideanGraph, g2: EuclideanGraph) -> ConicGraph:
    """Conic union: shared edges become double, the rest stay simple."""
    if g1.n != g2.n:
        raise ValueError("vertex counts differ")
    e1, e2 = g1.edge_set(), g2.edge_set()
    return ConicGraph(g1.n, e1 ^ e2, e1 & e2)


def is_decomposition_of(dec: Decomposition, cg: ConicGraph) -> bool:
    return union(dec.g, dec.h) == cg


def orient(obj: Union[ConicGraph, Decomposition]) -> DirectedGraph:
    """Canonical orientation: double edges yield both arcs (in sorted
    edge order), then each simple edge yields one low-to-high arc."""
    cg = union(obj.g, obj.h) if isinstance(obj, Decomposition) else obj
    arcs: list[tuple[int, int]] = []
    for u, w in cg.double_edges:
        arcs.append((u, w))
        arcs.append((w, u))
    arcs.extend(cg.simple_edges)
    return DirectedGraph(cg.n, arcs)


def random_generic_configuration(n: int, d: int, seed: int) -> Configuration:
    """Uniform [0, 1) positions and biases; resamples on the (measure
    zero) event of coincident positions. Deterministic under seed."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    rng = np.random.default_rng(seed)
    while True:
        pos = rng.random((n, d))
        if len({tuple(row) for row in pos}) == n:
            break
    return Configuration(pos, rng.random(n))
