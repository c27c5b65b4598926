"""Closed-form flexes of the small under-constrained frameworks.

Three agents with a double edge between two of them and one single arc
from each to the third leave a one-parameter motion: the third agent
slides along a conic with the fixed agents as foci. When both single
arcs point the same way relative to the moving agent the bias cancels
in the difference of distances (hyperbola branch); otherwise it
cancels in the sum (ellipse). Adding a fourth agent with single arcs
to a doubly-connected triangle pins it to finitely many placements,
generically two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .frameworks import Configuration, ConicFramework, pseudo_range
from .graphs import DirectedGraph, Pair


@dataclass(frozen=True, eq=False)
class ConicCurveFlex:
    """One-parameter flex curve of the 3-agent, 4-arc pattern."""

    kind: str  # "hyperbola" or "ellipse"
    foci: tuple[np.ndarray, np.ndarray]
    constant: float  # r_a - r_b on the hyperbola, r_a + r_b on the ellipse
    bias_fn: Callable[[np.ndarray], float]
    moving: int
    fixed: tuple[int, int]
    base_t: float
    center: np.ndarray
    axis_u: np.ndarray
    axis_v: np.ndarray
    semi_a: float
    semi_b: float
    branch: float  # +1/-1 hyperbola branch along axis_u; unused for ellipses

    def point_at(self, t: float) -> np.ndarray:
        if self.kind == "hyperbola":
            along = self.branch * self.semi_a * math.cosh(t)
            across = self.semi_b * math.sinh(t)
        else:
            along = self.semi_a * math.cos(t)
            across = self.semi_b * math.sin(t)
        return self.center + along * self.axis_u + across * self.axis_v


@dataclass(frozen=True, eq=False)
class FlexSample:
    t: float
    position: np.ndarray
    bias: float


@dataclass(frozen=True, eq=False)
class SecondPlacement:
    """Alternative placement of the fourth agent, with diagnostics."""

    position: np.ndarray
    bias: float
    residuals: tuple[float, float, float]
    solutions: tuple[np.ndarray, ...]  # all placements found, original included
    degenerate: bool  # both intersections coincide


def _single_arc_pattern(fw: ConicFramework) -> tuple[int, int, int, Pair, Pair]:
    """Locate the double pair (a, b), the moving agent m, and the two
    single arcs of the 3-agent pattern; raise if the shape differs."""
    if fw.n != 3 or fw.d != 2 or fw.graph.m != 4:
        raise ValueError("expected 3 agents in the plane with 4 arcs")
    arcs = set(fw.graph.arcs)
    double = [
        (u, w) for u in range(3) for w in range(u + 1, 3)
        if (u, w) in arcs and (w, u) in arcs
    ]
    if len(double) != 1:
        raise ValueError("expected exactly one double edge")
    a, b = double[0]
    (m,) = set(range(3)) - {a, b}
    singles = arcs - {(a, b), (b, a)}
    arc_a = [s for s in singles if a in s]
    arc_b = [s for s in singles if b in s]
    if len(arc_a) != 1 or len(arc_b) != 1:
        raise ValueError("each fixed agent needs one single arc to the third")
    return a, b, m, arc_a[0], arc_b[0]


def _bias_sign(arc: Pair, m: int) -> float:
    """Sign of the moving agent's bias in the arc constraint: +1 when m
    receives (head), -1 when m emits (tail)."""
    return 1.0 if arc[1] == m else -1.0


def build_flex_curve(fw: ConicFramework) -> ConicCurveFlex:
    """Classify and parametrize the flex curve of the 3-agent pattern."""
    a, b, m, arc_a, arc_b = _single_arc_pattern(fw)
    pos = fw.config.positions
    xa, xb, xm = pos[a], pos[b], pos[m]
    r_a = float(np.linalg.norm(xa - xm))
    r_b = float(np.linalg.norm(xb - xm))
    same_side = _bias_sign(arc_a, m) == _bias_sign(arc_b, m)
    kind = "hyperbola" if same_side else "ellipse"
    constant = r_a - r_b if same_side else r_a + r_b

    center = (xa + xb) / 2.0
    span = xb - xa
    c = float(np.linalg.norm(span)) / 2.0
    axis_u = span / (2.0 * c)
    axis_v = np.array([-axis_u[1], axis_u[0]])
    rel = xm - center
    proj_u = float(rel @ axis_u)
    proj_v = float(rel @ axis_v)

    if kind == "hyperbola":
        semi_a = abs(constant) / 2.0
        if semi_a <= 1e-12 or semi_a >= c:
            raise ValueError("degenerate hyperbola: equal or collinear distances")
        semi_b = math.sqrt(c * c - semi_a * semi_a)
        # r_a - r_b > 0 puts the moving agent on the branch nearer b
        branch = 1.0 if constant > 0 else -1.0
        base_t = math.asinh(proj_v / semi_b)
    else:
        semi_a = constant / 2.0
        if semi_a <= c + 1e-12:
            raise ValueError("degenerate ellipse: moving agent on the focal segment")
        semi_b = math.sqrt(semi_a * semi_a - c * c)
        branch = 1.0
        base_t = math.atan2(proj_v / semi_b, proj_u / semi_a)

    # preserve the pseudo-range along the arc at focus a exactly
    pa, pm = fw.config.point(a), fw.config.point(m)
    rho_a = pseudo_range(pa, pm) if arc_a == (a, m) else pseudo_range(pm, pa)
    beta_a = fw.config.biases[a]
    sign = _bias_sign(arc_a, m)

    def bias_fn(x: np.ndarray) -> float:
        dist = float(np.linalg.norm(np.asarray(x, dtype=float) - xa))
        # head: rho = dist + beta_m - beta_a; tail: rho = dist + beta_a - beta_m
        if sign > 0:
            return rho_a - dist + beta_a
        return beta_a + dist - rho_a

    curve = ConicCurveFlex(
        kind=kind,
        foci=(xa.copy(), xb.copy()),
        constant=constant,
        bias_fn=bias_fn,
        moving=m,
        fixed=(a, b),
        base_t=base_t,
        center=center,
        axis_u=axis_u,
        axis_v=axis_v,
        semi_a=semi_a,
        semi_b=semi_b,
        branch=branch,
    )
    # parametrization sanity: the base parameter reproduces the input point
    if not np.allclose(curve.point_at(base_t), xm, atol=1e-9 * (1.0 + c)):
        raise ValueError("moving agent does not lie on the derived curve")
    return curve


def sample_flex(curve: ConicCurveFlex, k: int, span: float = 0.5) -> list[FlexSample]:
    """k samples across parameter range base_t +- span (k = 1 gives the
    base point itself). Every sample preserves all four pseudo-ranges."""
    if k < 1:
        raise ValueError("need at least one sample")
    offsets = [0.0] if k == 1 else list(np.linspace(-span, span, k))
    out = []
    for off in offsets:
        t = curve.base_t + off
        x = curve.point_at(t)
        out.append(FlexSample(t=t, position=x, bias=curve.bias_fn(x)))
    return out


# -- second placement of a fourth agent --------------------------------------


def _pinned_pattern(fw: ConicFramework) -> tuple[int, list[tuple[int, Pair]]]:
    """Locate the fourth agent tied by three single arcs to a doubly
    connected triangle; return (m, [(fixed agent, arc), ...])."""
    if fw.n != 4 or fw.d != 2 or fw.graph.m != 9:
        raise ValueError("expected 4 agents in the plane with 9 arcs")
    arcs = set(fw.graph.arcs)
    degree_double = {v: 0 for v in range(4)}
    for u in range(4):
        for w in range(u + 1, 4):
            if (u, w) in arcs and (w, u) in arcs:
                degree_double[u] += 1
                degree_double[w] += 1
    movers = [v for v, deg in degree_double.items() if deg == 0]
    if len(movers) != 1 or any(degree_double[v] != 2 for v in range(4) if v != movers[0]):
        raise ValueError("expected a doubly connected triangle plus one loose agent")
    m = movers[0]
    ties = []
    for v in range(4):
        if v == m:
            continue
        single = [a for a in ((v, m), (m, v)) if a in arcs]
        if len(single) != 1:
            raise ValueError(f"agent {v} needs exactly one arc to agent {m}")
        ties.append((v, single[0]))
    return m, ties


def _pair_constraint(
    fw: ConicFramework, m: int, tie_i: tuple[int, Pair], tie_j: tuple[int, Pair]
) -> Callable[[np.ndarray], float]:
    """Scalar locus equation from two ties: the bias of the moving agent
    cancels in a difference (same arc sense) or a sum (opposite)."""
    i, arc_i = tie_i
    j, arc_j = tie_j
    pos = fw.config.positions
    eps = -1.0 if _bias_sign(arc_i, m) == _bias_sign(arc_j, m) else 1.0
    k0 = float(
        np.linalg.norm(pos[i] - pos[m]) + eps * np.linalg.norm(pos[j] - pos[m])
    )

    def f(x: np.ndarray) -> float:
        return (
            float(np.linalg.norm(x - pos[i]))
            + eps * float(np.linalg.norm(x - pos[j]))
            - k0
        )

    return f


def _newton2(
    funcs, start: np.ndarray, max_iter: int = 60, tol: float = 1e-13
) -> Optional[np.ndarray]:
    """Damped Newton on two scalar equations in the plane."""
    f1, f2, grads = funcs

    def value(x):
        return np.array([f1(x), f2(x)])

    x = np.array(start, dtype=float)
    fx = value(x)
    for _ in range(max_iter):
        if np.linalg.norm(fx) <= tol:
            return x
        j = grads(x)
        try:
            step = np.linalg.solve(j, -fx)
        except np.linalg.LinAlgError:
            return None
        scale = 1.0
        for _ in range(30):
            x_new = x + scale * step
            f_new = value(x_new)
            if np.linalg.norm(f_new) < np.linalg.norm(fx):
                x, fx = x_new, f_new
                break
            scale *= 0.5
        else:
            return None
    return x if np.linalg.norm(fx) <= tol else None


def locate_second_intersection(fw: ConicFramework) -> SecondPlacement:
    """Find the other placement of the pinned fourth agent.

    Root-finds on two of the three pairwise locus equations (damped
    Newton, starting from the reflection of the agent across the line
    through the first two fixed agents, then a coarse grid) and checks
    the third equation as a certificate. The bias is recomputed from
    one arc; when the distances change, the bias must change too.
    """
    m, ties = _pinned_pattern(fw)
    pos = fw.config.positions
    xm = pos[m]
    fs = [
        _pair_constraint(fw, m, ties[0], ties[1]),
        _pair_constraint(fw, m, ties[0], ties[2]),
        _pair_constraint(fw, m, ties[1], ties[2]),
    ]

    anchors = [pos[v] for v, _ in ties]

    def grads(x):
        # rows: gradients of the two equations used by Newton
        rows = []
        for (i, arc_i), (j, arc_j) in ((ties[0], ties[1]), (ties[0], ties[2])):
            eps = -1.0 if _bias_sign(arc_i, m) == _bias_sign(arc_j, m) else 1.0
            gi = (x - pos[i]) / np.linalg.norm(x - pos[i])
            gj = (x - pos[j]) / np.linalg.norm(x - pos[j])
            rows.append(gi + eps * gj)
        return np.array(rows)

    def solve_from(start):
        x = _newton2((fs[0], fs[1], grads), start)
        if x is None:
            return None
        if abs(fs[2](x)) > 1e-8:
            return None
        return x

    # mirror across the line through the first two anchors
    base, along = anchors[0], anchors[1] - anchors[0]
    along = along / np.linalg.norm(along)
    rel = xm - base
    mirror = base + 2.0 * (rel @ along) * along - rel

    solutions = [xm.copy()]

    def register(x):
        if x is None:
            return
        for known in solutions:
            if np.linalg.norm(x - known) <= 1e-6:
                return
        solutions.append(x)

    register(solve_from(mirror))
    if len(solutions) < 2:
        lo = np.min(np.array(anchors + [xm]), axis=0)
        hi = np.max(np.array(anchors + [xm]), axis=0)
        pad = 0.75 * (hi - lo + 1.0)
        for gx in np.linspace(lo[0] - pad[0], hi[0] + pad[0], 7):
            for gy in np.linspace(lo[1] - pad[1], hi[1] + pad[1], 7):
                register(solve_from(np.array([gx, gy])))

    degenerate = len(solutions) == 1
    second = solutions[0] if degenerate else solutions[1]

    # recompute the bias from the lexicographically first tie
    v0, arc0 = ties[0]
    p_v0, p_m = fw.config.point(v0), fw.config.point(m)
    rho0 = pseudo_range(p_v0, p_m) if arc0 == (v0, m) else pseudo_range(p_m, p_v0)
    dist = float(np.linalg.norm(second - pos[v0]))
    beta_v0 = fw.config.biases[v0]
    if _bias_sign(arc0, m) > 0:
        bias = rho0 - dist + beta_v0
    else:
        bias = beta_v0 + dist - rho0

    old_dist = float(np.linalg.norm(xm - pos[v0]))
    if abs(dist - old_dist) > 1e-9:
        assert abs(bias - fw.config.biases[m]) > 0, "distances moved but bias did not"

    residuals = tuple(abs(f(second)) for f in fs)
    return SecondPlacement(
        position=second,
        bias=float(bias),
        residuals=residuals,  # type: ignore[arg-type]
        solutions=tuple(solutions),
        degenerate=degenerate,
    )


# -- reference fixtures -------------------------------------------------------

FIXTURE_POSITIONS = np.array([[0.0, 0.0], [4.0, 0.0], [1.0, 2.0]])
FIXTURE_BIASES = np.array([0.0, 0.3, -0.1])


def make_hyperbola_framework() -> ConicFramework:
    """Double edge between the two anchors; both single arcs received by
    the moving agent, so the distance difference is conserved."""
    graph = DirectedGraph(3, [(0, 1), (1, 0), (0, 2), (1, 2)])
    return ConicFramework(graph, Configuration(FIXTURE_POSITIONS, FIXTURE_BIASES))


def make_ellipse_framework() -> ConicFramework:
    """One arc into and one out of the moving agent: distance sum is
    conserved."""
    graph = DirectedGraph(3, [(0, 1), (1, 0), (0, 2), (2, 1)])
    return ConicFramework(graph, Configuration(FIXTURE_POSITIONS, FIXTURE_BIASES))


def make_pinned_framework() -> ConicFramework:
    """Doubly connected triangle plus a fourth agent held by three
    single arcs; rigid, with one mirror-like alternative placement."""
    graph = DirectedGraph(
        4,
        [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1), (0, 3), (3, 1), (2, 3)],
    )
    positions = np.vstack([FIXTURE_POSITIONS, [2.5, 1.2]])
    biases = np.concatenate([FIXTURE_BIASES, [0.2]])
    return ConicFramework(graph, Configuration(positions, biases))
