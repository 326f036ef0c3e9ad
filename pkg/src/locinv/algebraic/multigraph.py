"""Splitting a Hamiltonian into interaction-order groups with connected support.

Conjugation by a local unitary maps a Pauli string into the span of
strings with the same support, so a local K inverts h exactly when it
inverts every such group on its own.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..pauli import HamiltonianSpec, build_matrix
from .criteria import verify_inversion


@dataclass(frozen=True)
class TermGroup:
    order: int
    support: tuple[int, ...]      # 1-based qubits touched by the group
    spec: HamiltonianSpec


def multigraph_decompose(h: HamiltonianSpec) -> list[TermGroup]:
    by_order: dict[int, list] = {}
    for t in h.terms:
        by_order.setdefault(t.weight, []).append(t)
    groups = []
    for order in sorted(by_order):
        terms = by_order[order]
        # union-find over terms sharing a qubit
        parent = list(range(len(terms)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(len(terms)):
            for j in range(i + 1, len(terms)):
                if set(terms[i].support) & set(terms[j].support):
                    parent[find(i)] = find(j)
        comps: dict[int, list] = {}
        for i, t in enumerate(terms):
            comps.setdefault(find(i), []).append(t)
        for members in comps.values():
            support = tuple(sorted({q + 1 for t in members for q in t.support}))
            spec = HamiltonianSpec(h.n, tuple(members), h.half_spin_convention)
            groups.append(TermGroup(order, support, spec))
    return groups


def group_residuals(h: HamiltonianSpec, k_witness):
    """Whole-h residual and per-group residuals under one candidate witness.

    The groups are mutually orthogonal and each is mapped into its own
    span, so ||Ad_K(h) + h||^2 splits exactly over groups; this is
    asserted, making "whole inverted" and "every group inverted" equivalent.
    """
    hm = build_matrix(h)
    whole = verify_inversion(hm, k_witness)
    parts, total = [], 0.0
    for g in multigraph_decompose(h):
        m = build_matrix(g.spec)
        r = verify_inversion(m, k_witness)
        parts.append(r)
        total += (r * np.linalg.norm(m)) ** 2
    lhs = (whole * np.linalg.norm(hm)) ** 2
    assert abs(lhs - total) <= 1e-9 * max(np.linalg.norm(hm) ** 2, 1.0), \
        "group-wise residuals do not add up to the whole residual"
    return whole, parts


def support_groups(h: HamiltonianSpec) -> list[TermGroup]:
    """Finer split by exact support set; each group is still mapped into its own span."""
    by_support: dict[tuple, list] = {}
    for t in h.terms:
        by_support.setdefault(t.support, []).append(t)
    return [TermGroup(len(s), tuple(q + 1 for q in s),
                      HamiltonianSpec(h.n, tuple(ts), h.half_spin_convention))
            for s, ts in sorted(by_support.items())]
