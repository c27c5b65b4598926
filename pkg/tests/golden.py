"""Hand-checked fixtures shared across the test modules.

Expected values were derived by hand (counting, componentry, circuit
membership) and frozen after one verified run; the tests assert the
implementations keep reproducing them exactly.
"""

from __future__ import annotations

import numpy as np

from conicrig import (
    Configuration,
    ConicFramework,
    ConicGraph,
    DirectedGraph,
    EuclideanGraph,
)

# -- four agents on a line: one arc set, two placements -----------------------

QUAD_ARCS = ((0, 1), (1, 2), (2, 3), (3, 1), (2, 0), (0, 3))
QUAD_BIASES = (0.0, 0.25, -0.5, 0.125)
# left placement: the decreasing shadow splits into {0,2} | {1,3}
QUAD_FLEX_COORDS = (0.0, 1.0, 2.0, 3.0)
# permuted placement: both shadows are spanning trees
QUAD_RIGID_COORDS = (2.0, 3.0, 1.0, 0.0)
QUAD_FLEX_MINUS_COMPONENTS = ((0, 2), (1, 3))


def quad_framework(coords) -> ConicFramework:
    config = Configuration(np.array([[c] for c in coords]), np.array(QUAD_BIASES))
    return ConicFramework(DirectedGraph(4, QUAD_ARCS), config)


# -- five vertices, eleven arcs: the swap family -------------------------------

GAMMA5 = ConicGraph(
    5,
    [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (2, 3), (2, 4), (3, 4)],
    [(1, 3)],
)

# three ways to write GAMMA5 as a union; only the first two have a
# minimally rigid spatial part
G1 = EuclideanGraph(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (3, 4)])
H1 = EuclideanGraph(5, [(0, 1), (1, 3), (2, 3), (2, 4)])
G2 = EuclideanGraph(5, [(0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (2, 4), (3, 4)])
H2 = EuclideanGraph(5, [(0, 1), (1, 2), (1, 3), (2, 3)])
G3 = EuclideanGraph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (1, 4), (2, 3)])
H3 = EuclideanGraph(5, [(0, 4), (1, 3), (2, 4), (3, 4)])

H2_COMPONENTS = ((0, 1, 2, 3), (4,))
# edges of G2 that can be traded for (1, 2); vertex 2 keeps degree 3 in
# G2 + (1,2), so all three of its edges are forced into the circuit
G2_CIRCUIT_12 = ((0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (2, 4), (3, 4))
# trading (2, 4) out turns G2 into G1

# frozen run of decompose(GAMMA5) with the default oracle
GAMMA5_INITIAL_G = ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4))
GAMMA5_INITIAL_H = ((1, 3), (2, 3), (2, 4), (3, 4))
GAMMA5_EXCHANGES = (((0, (2, 3), (0, 1)),),)  # one round, one exchange
GAMMA5_FINAL_G = ((0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3))
GAMMA5_FINAL_H = ((0, 1), (1, 3), (2, 4), (3, 4))

# -- seven-vertex chain: a selection chain of length three --------------------

CHAIN7_G = EuclideanGraph(
    7,
    [(0, 4), (0, 5), (0, 6), (1, 5), (1, 6), (2, 5), (2, 6), (3, 5), (3, 6), (4, 5), (4, 6)],
)
CHAIN7_H = EuclideanGraph(7, [(0, 1), (1, 2), (2, 3), (2, 4), (3, 4), (5, 6)])
CHAIN7_CYCLE = [(2, 3), (3, 4), (2, 4)]
# selection steps as (uv, wz, z); the exchange pass replays steps 2, 0
CHAIN7_STEPS = (((0, 1), (0, 5), 5), ((1, 2), (0, 4), 0), ((2, 3), (0, 4), 0))
CHAIN7_SIGMAS = (2, 0)
CHAIN7_H_AFTER = ((0, 4), (0, 5), (1, 2), (2, 4), (3, 4), (5, 6))

# the full pipeline on the same graph builds its own greedy split and
# needs two rounds; round two replays a non-consecutive subsequence
CHAIN7_FULL_SIGMAS = ((1,), (3, 1, 0))
CHAIN7_FULL_FINAL_H = ((0, 1), (0, 5), (2, 4), (3, 6), (4, 6), (5, 6))

# -- pinned four-agent fixture: the alternative placement ---------------------

PINNED_SECOND_POSITION = (1.8791366858025926, 1.2265646300629611)
PINNED_SECOND_BIAS = 0.7290672163639753
