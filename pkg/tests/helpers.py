"""Shared test fixtures and oracles."""

from __future__ import annotations

import itertools

from coloursym.equivariant import FiniteGroup, group_from_perms
from coloursym.graphs import ColouredGraph, PartialIso, extend_iso, graph_from_edges
from coloursym.perms import enumerate_sym


def sym_group(m: int) -> FiniteGroup:
    return group_from_perms(enumerate_sym(m))


def back_and_forth(
    A: ColouredGraph, B: ColouredGraph, p: PartialIso, size: int
) -> PartialIso:
    """Alternate forward and backward extension steps until |p| == size,
    always picking the smallest unmapped vertex on the active side."""
    while len(p) < size:
        if len(p) % 2 == 1:
            v = min(set(range(A.n)) - p.sources())
            p = extend_iso(A, B, p, v)
        else:
            w = min(set(range(B.n)) - p.images())
            p = extend_iso(B, A, p.inverse(), w).inverse()
    return p


def all_two_colourings(n: int):
    """Every complete graph on n vertices with colours from {1, 2}."""
    pairs = list(itertools.combinations(range(n), 2))
    for bits in itertools.product((1, 2), repeat=len(pairs)):
        yield graph_from_edges(2, n, [[u, v, c] for (u, v), c in zip(pairs, bits)])
