"""Exact rigidity test on the line.

In one dimension the verdict is combinatorial and configuration
dependent: split the arcs by the sign of x_w - x_u, keep the two
undirected shadow graphs, and require both to be connected. An
increasing arc pins v_u + a_u = v_w + a_w, a decreasing arc pins
v_u - a_u = v_w - a_w, and arcs between coincident positions constrain
nothing.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .frameworks import ConicFramework
from .graphs import EuclideanGraph, Pair, connected_components

NEAR_TIE = 1e-12


@dataclass(frozen=True)
class ArcSplit:
    """Arcs partitioned by coordinate order of tail and head."""

    increasing: tuple[Pair, ...]
    decreasing: tuple[Pair, ...]
    null: tuple[Pair, ...]


@dataclass(frozen=True)
class OneDimVerdict:
    rigid: bool
    split: ArcSplit
    plus_components: tuple[tuple[int, ...], ...]
    minus_components: tuple[tuple[int, ...], ...]


def _require_line(fw: ConicFramework) -> np.ndarray:
    if fw.d != 1:
        raise ValueError(f"one-dimensional test called with d={fw.d}")
    return fw.config.positions[:, 0]


def split_arcs(fw: ConicFramework) -> ArcSplit:
    """Partition arcs by exact coordinate comparison.

    Comparison is exact; a warning flags nonzero gaps below 1e-12 where
    the strict ordering is numerically fragile.
    """
    x = _require_line(fw)
    inc, dec, null = [], [], []
    for u, w in fw.graph.arcs:
        gap = x[w] - x[u]
        if gap != 0.0 and abs(gap) < NEAR_TIE:
            warnings.warn(
                f"arc ({u}, {w}) orders positions by a gap of {gap:.3e}; "
                "the strict ordering may not be meaningful",
                stacklevel=2,
            )
        if gap > 0:
            inc.append((u, w))
        elif gap < 0:
            dec.append((u, w))
        else:
            null.append((u, w))
    return ArcSplit(tuple(inc), tuple(dec), tuple(null))


def _shadow(n: int, arcs: tuple[Pair, ...]) -> EuclideanGraph:
    return EuclideanGraph(n, [(min(a), max(a)) for a in arcs])


def is_rigid_1d(fw: ConicFramework) -> OneDimVerdict:
    """Rigid iff both split shadow graphs are connected (exact test)."""
    split = split_arcs(fw)
    n = fw.n
    plus = connected_components(_shadow(n, split.increasing))
    minus = connected_components(_shadow(n, split.decreasing))
    return OneDimVerdict(
        rigid=len(plus) == 1 and len(minus) == 1,
        split=split,
        plus_components=tuple(tuple(c) for c in plus),
        minus_components=tuple(tuple(c) for c in minus),
    )


def flex_witness_1d(fw: ConicFramework) -> Optional[np.ndarray]:
    """A nontrivial admissible velocity (v_1..v_n, a_1..a_n), or None.

    When the decreasing shadow graph is disconnected, one of its
    components moves with (v, a) = (1, -1); this keeps v + a = 0
    everywhere, so increasing arcs stay satisfied no matter how they
    cross, and decreasing arcs never cross the component boundary.
    Symmetrically for a disconnected increasing shadow with (1, +1).
    """
    verdict = is_rigid_1d(fw)
    if verdict.rigid:
        return None
    n = fw.n
    q = np.zeros(2 * n)
    if len(verdict.minus_components) > 1:
        side, a_sign = verdict.minus_components[0], -1.0
    else:
        side, a_sign = verdict.plus_components[0], 1.0
    for u in side:
        q[u] = 1.0
        q[n + u] = a_sign
    return q
