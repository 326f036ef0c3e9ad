"""Bipartite coupling-graph criteria for ZZ and XY-type pair interactions."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from ..config import TOL
from ..errors import DisconnectedGraph
from ..local import LocalUnitary
from ..pauli import CouplingGraph, build_matrix, graph_to_hamiltonian
from .criteria import verify_inversion
from .orders import joint_z_unitary


@dataclass
class GraphVerdict:
    invertible: bool | None          # None = undecided (mixed interaction kinds)
    method: str
    coloring: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    odd_cycle: tuple[int, ...] | None = None
    witness: LocalUnitary | None = None
    residual: float | None = None
    diagnostics: dict = field(default_factory=dict)


def two_coloring(g: CouplingGraph):
    """BFS 2-colouring from vertex 1.

    Returns ``(colour, None)`` for a bipartite graph, else ``(None, cycle)``
    with an odd cycle as a vertex sequence.
    """
    adj = g.adjacency()
    colour = {1: 0}
    parent = {1: None}
    todo = deque([1])
    while todo:
        v = todo.popleft()
        for w in sorted(adj[v]):
            if w not in colour:
                colour[w] = 1 - colour[v]
                parent[w] = v
                todo.append(w)
            elif colour[w] == colour[v]:
                return None, _odd_cycle(parent, v, w)
    return colour, None


def _odd_cycle(parent, u, v):
    def path(x):
        out = []
        while x is not None:
            out.append(x)
            x = parent[x]
        return out
    pu, pv = path(u), path(v)
    common = set(pu) & set(pv)
    lca = next(x for x in pu if x in common)
    left = pu[:pu.index(lca) + 1]
    right = pv[:pv.index(lca)]
    # u .. lca .. v, closed by the edge (v, u)
    return tuple(left + right[::-1])


def class_pulses(n: int, members, axis) -> LocalUnitary:
    """pi rotations about ``axis`` on the 1-based vertices in ``members``."""
    axes = [(0, 0, 1)] * n
    angles = [0.0] * n
    for v in members:
        axes[v - 1] = axis
        angles[v - 1] = np.pi
    return LocalUnitary.from_axis_angles(axes, angles)


def bipartite_invertibility(g: CouplingGraph) -> GraphVerdict:
    if not g.is_connected():
        raise DisconnectedGraph("coupling graph is not connected")
    h = build_matrix(graph_to_hamiltonian(g))
    kinds = {e.effective_kind for e in g.edges}
    kappas = {e.kappa for e in g.edges if e.kind == "xy"}
    colour, cycle = two_coloring(g)
    coloring = None
    if colour is not None:
        a = tuple(sorted(v for v, c in colour.items() if c == 0))
        b = tuple(sorted(v for v, c in colour.items() if c == 1))
        coloring = (a, b)

    def accept(K, method):
        res = verify_inversion(h, K)
        if res < TOL.inversion_rel:
            return GraphVerdict(True, method, coloring, cycle, K, res)
        return None

    if kinds == {"xmx"}:
        v = accept(joint_z_unitary(g.n, np.pi / 2), "joint z pi/2")
        assert v is not None, "joint pi/2 z rotation failed on an X(-X) graph"
        return v
    uniform = len(kinds) == 1 and len(kappas) <= 1
    if kinds == {"zz"}:
        axis, label = (1, 0, 0), "x pi pulses on one colour class"
    elif kinds <= {"xx", "xy"} and uniform:
        axis, label = (0, 0, 1), "z pi pulses on one colour class"
    else:
        axis, label = None, None
    if axis is not None:
        if coloring is None:
            return GraphVerdict(False, "odd cycle", None, cycle)
        v = accept(class_pulses(g.n, coloring[0], axis), label)
        assert v is not None, "colour-class witness failed verification"
        return v
    # mixed interaction kinds: no uniform rule, try the natural candidates
    cands = [("joint z pi/2", joint_z_unitary(g.n, np.pi / 2))]
    if coloring is not None:
        for ax, name in (((1, 0, 0), "x"), ((0, 1, 0), "y"), ((0, 0, 1), "z")):
            cands.append((f"{name} pi pulses on one colour class",
                          class_pulses(g.n, coloring[0], ax)))
    for method, K in cands:
        v = accept(K, method)
        if v is not None:
            return v
    return GraphVerdict(None, "undecided (mixed interaction kinds)", coloring, cycle)
