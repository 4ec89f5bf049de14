"""Finite metric families and the capped graph metric.

A family is one vertex set with r exact metrics on it (integers or
rationals; no floats anywhere).  The graph metric of a colour class is the
shortest-path distance with |V(G)| substituted for pairs in different
components; the cap keeps the value finite while still exceeding every
honest path length, and the result is a genuine metric.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Union

from .duality import ColoredMultigraph
from .errors import PreconditionError

Exact = Union[int, Fraction]


def is_metric(matrix: Sequence[Sequence[Exact]], labels: Optional[Sequence[str]] = None):
    """Check the metric axioms; on failure return the violating witness.

    Returns (True, None) or (False, (kind, *vertices, observed)) where kind is
    one of "identity", "positivity", "symmetry", "triangle".  The triangle
    witness (x, y, z) means d(x,y) > d(x,z) + d(z,y).
    """
    n = len(matrix)
    labels = list(labels) if labels is not None else [str(i) for i in range(n)]
    for row in matrix:
        if len(row) != n:
            raise PreconditionError("matrix must be square")
    for i in range(n):
        if matrix[i][i] != 0:
            return False, ("identity", labels[i], matrix[i][i])
    for i in range(n):
        for j in range(i + 1, n):
            if matrix[i][j] != matrix[j][i]:
                return False, ("symmetry", labels[i], labels[j], (matrix[i][j], matrix[j][i]))
            if matrix[i][j] <= 0:
                return False, ("positivity", labels[i], labels[j], matrix[i][j])
    for k in range(n):
        row_k = matrix[k]
        for i in range(n):
            dik = matrix[i][k]
            row_i = matrix[i]
            for j in range(n):
                if row_i[j] > dik + row_k[j]:
                    return False, ("triangle", labels[i], labels[j], labels[k], row_i[j])
    return True, None


def graph_metric(g: ColoredMultigraph, color: int) -> list[list[int]]:
    """Breadth-first distances inside one colour class, capped at |V(G)|.

    Pairs in different colour components get exactly n = |V(G)|; within a
    component the value is the true shortest path length, which is at most
    n - 1, so the cap is recognisable.
    """
    if not 1 <= color <= g.r:
        raise PreconditionError(f"colour {color} outside 1..{g.r}")
    verts = g.vertices
    n = len(verts)
    idx = {v: i for i, v in enumerate(verts)}
    adj = g.color_adjacency(color)
    dist = [[n] * n for _ in range(n)]
    for s, source in enumerate(verts):
        row = dist[s]
        row[s] = 0
        q = deque([source])
        while q:
            x = q.popleft()
            dx = row[idx[x]]
            for y in adj[x]:
                if row[idx[y]] == n and y != source:
                    row[idx[y]] = dx + 1
                    q.append(y)
    return dist


@dataclass(frozen=True)
class MetricFamily:
    """A finite vertex set with r exact metrics on it."""

    vertices: tuple[str, ...]
    dists: tuple[tuple[tuple[Exact, ...], ...], ...]

    def __post_init__(self):
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise PreconditionError("duplicate vertex ids")
        for m, matrix in enumerate(self.dists):
            if len(matrix) != n or any(len(row) != n for row in matrix):
                raise PreconditionError(f"metric {m} has wrong shape")

    @staticmethod
    def build(vertices: Sequence[str], matrices: Sequence[Sequence[Sequence[Exact]]],
              validate: bool = True) -> "MetricFamily":
        verts = tuple(vertices)
        mats = tuple(tuple(tuple(x for x in row) for row in m) for m in matrices)
        fam = MetricFamily(verts, mats)
        if validate:
            for m, matrix in enumerate(mats):
                ok, witness = is_metric(matrix, verts)
                if not ok:
                    raise PreconditionError(f"metric {m + 1} violates axioms: {witness}")
        return fam

    @staticmethod
    def from_colored_graph(g: ColoredMultigraph) -> "MetricFamily":
        return MetricFamily.build(
            g.vertices, [graph_metric(g, c) for c in range(1, g.r + 1)], validate=False)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @property
    def r(self) -> int:
        return len(self.dists)

    def dist(self, metric: int, u: str, v: str) -> Exact:
        """d_metric(u, v); metric is 1-based to match colour labels."""
        return self.dists[metric - 1][self.index[u]][self.index[v]]


def ball(family: MetricFamily, metric: int, center: str, radius) -> frozenset[str]:
    """All vertices within `radius` of `center` in the chosen metric.

    The radius may be any exact comparable (int, Fraction, or a symbolic
    power value); the centre is always included since d(c, c) = 0.
    """
    if center not in family.index:
        raise PreconditionError(f"unknown centre {center!r}")
    row = family.dists[metric - 1][family.index[center]]
    return frozenset(v for i, v in enumerate(family.vertices) if row[i] <= radius)
