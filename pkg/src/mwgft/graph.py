"""Weighted undirected graphs and their Laplacians.

Graphs here are simple (no self loops, no multi-edges), undirected, have
non-negative edge weights and must be connected.  Vertices are numbered
1..N in every public interface and file format; internally arrays are
0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .errors import (
    Disconnected,
    DuplicateEdgeConflict,
    IndexOutOfRange,
    InvalidParameter,
    InvalidSize,
    NegativeWeight,
    ParseError,
    SelfLoop,
    ZeroDegree,
)


class LaplacianKind(Enum):
    """Which Laplacian to build from the weight matrix."""

    UNNORMALIZED = "unnormalized"
    SYMMETRIC_NORMALIZED = "normalized"

    @classmethod
    def from_name(cls, name: str) -> "LaplacianKind":
        for kind in cls:
            if kind.value == name:
                return kind
        valid = ", ".join(k.value for k in cls)
        raise InvalidParameter(f"unknown laplacian kind {name!r} (expected one of: {valid})")


@dataclass(frozen=True)
class Graph:
    """A connected weighted undirected graph.

    Parameters
    ----------
    num_vertices:
        Number of vertices N.
    weights:
        Symmetric ``(N, N)`` sparse weight matrix with zero diagonal and
        non-negative entries.
    coordinates:
        Optional ``(N, 2)`` array of plotting coordinates.
    """

    num_vertices: int
    weights: sp.csr_matrix
    coordinates: np.ndarray | None = None

    def __post_init__(self):
        n = self.num_vertices
        if n < 1:
            raise InvalidSize(f"graph needs at least one vertex, got {n}")
        w = self.weights
        if w.shape != (n, n):
            raise InvalidSize(f"weight matrix shape {w.shape} does not match {n} vertices")
        if (w != w.T).nnz != 0:
            raise InvalidParameter("weight matrix must be exactly symmetric")
        if w.diagonal().any():
            raise SelfLoop("weight matrix has nonzero diagonal entries")
        if w.nnz and w.data.min() < 0:
            raise NegativeWeight("weight matrix has negative entries")
        ncomp, _ = connected_components(w, directed=False)
        if ncomp != 1:
            raise Disconnected(f"graph has {ncomp} connected components, expected 1")
        if self.coordinates is not None:
            coords = np.asarray(self.coordinates, dtype=float)
            if coords.shape != (n, 2):
                raise InvalidSize(f"coordinates shape {coords.shape}, expected ({n}, 2)")
            object.__setattr__(self, "coordinates", coords)

    @property
    def degrees(self) -> np.ndarray:
        """Weighted degree of each vertex (row sums of the weight matrix)."""
        return np.asarray(self.weights.sum(axis=1)).ravel()

    @property
    def num_edges(self) -> int:
        return self.weights.nnz // 2

    def neighbors(self, vertex: int) -> list[int]:
        """1-based neighbors of a 1-based vertex."""
        _check_vertex(vertex, self.num_vertices)
        row = self.weights.getrow(vertex - 1)
        return [int(j) + 1 for j in row.indices]


def _check_vertex(vertex: int, num_vertices: int) -> None:
    if not 1 <= vertex <= num_vertices:
        raise IndexOutOfRange(f"vertex {vertex} outside 1..{num_vertices}")


def _collect_edges(num_vertices: int, edges: Iterable[tuple[int, int, float]]) -> dict:
    """Validate and deduplicate an edge iterable into {(i<j): weight}.

    Zero-weight edges are dropped.  Repeating a pair with the same weight is
    tolerated; repeating it with a different weight raises
    :class:`DuplicateEdgeConflict`.
    """
    out: dict[tuple[int, int], float] = {}
    for i, j, w in edges:
        i, j, w = int(i), int(j), float(w)
        _check_vertex(i, num_vertices)
        _check_vertex(j, num_vertices)
        if i == j:
            raise SelfLoop(f"self loop at vertex {i}")
        if w < 0:
            raise NegativeWeight(f"edge ({i}, {j}) has negative weight {w}")
        key = (min(i, j), max(i, j))
        if key in out and out[key] != w:
            raise DuplicateEdgeConflict(
                f"edge {key} listed with weights {out[key]} and {w}"
            )
        out[key] = w
    return {k: w for k, w in out.items() if w != 0.0}


def _assemble(num_vertices: int, edge_dict: dict) -> sp.csr_matrix:
    if edge_dict:
        rows, cols, vals = [], [], []
        for (i, j), w in edge_dict.items():
            rows += [i - 1, j - 1]
            cols += [j - 1, i - 1]
            vals += [w, w]
        w = sp.coo_matrix((vals, (rows, cols)), shape=(num_vertices, num_vertices))
        return w.tocsr()
    return sp.csr_matrix((num_vertices, num_vertices))


def build_graph(
    num_vertices: int,
    edges: Iterable[tuple[int, int, float]],
    coordinates: np.ndarray | None = None,
) -> Graph:
    """Build a graph from an edge list of (i, j, weight) with 1-based vertices."""
    if num_vertices < 1:
        raise InvalidSize(f"graph needs at least one vertex, got {num_vertices}")
    weights = _assemble(num_vertices, _collect_edges(num_vertices, edges))
    return Graph(num_vertices, weights, coordinates)


def path_graph(num_vertices: int) -> Graph:
    """Unweighted path on ``num_vertices`` vertices, 1 - 2 - ... - N."""
    if num_vertices < 2:
        raise InvalidSize("path graph needs at least two vertices")
    edges = [(i, i + 1, 1.0) for i in range(1, num_vertices)]
    coords = np.column_stack([np.arange(num_vertices, dtype=float), np.zeros(num_vertices)])
    return build_graph(num_vertices, edges, coords)


def random_connected_graph(
    num_vertices: int,
    seed: int,
    extra_edges: int | None = None,
    weight_range: tuple[float, float] = (0.5, 1.5),
) -> Graph:
    """Random connected graph with irregular degrees (seeded, reproducible).

    A random spanning tree guarantees connectivity, then ``extra_edges``
    additional random edges (default: ``num_vertices``, capped at the number
    of vertex pairs still unconnected) are thrown in.  Weights are drawn
    uniformly from ``weight_range``.
    """
    if num_vertices < 2:
        raise InvalidSize("random graph needs at least two vertices")
    if extra_edges is None:
        extra_edges = num_vertices
    lo, hi = weight_range
    if not (0 < lo <= hi):
        raise InvalidParameter(f"weight range {weight_range} must be positive")
    rng = np.random.default_rng(seed)
    order = rng.permutation(num_vertices) + 1
    edge_dict: dict[tuple[int, int], float] = {}
    for idx in range(1, num_vertices):
        a = int(order[idx])
        b = int(order[rng.integers(0, idx)])
        edge_dict[(min(a, b), max(a, b))] = float(rng.uniform(lo, hi))
    capacity = num_vertices * (num_vertices - 1) // 2 - len(edge_dict)
    added = 0
    while added < min(int(extra_edges), capacity):
        a, b = (int(v) + 1 for v in rng.integers(0, num_vertices, size=2))
        key = (min(a, b), max(a, b))
        if a == b or key in edge_dict:
            continue
        edge_dict[key] = float(rng.uniform(lo, hi))
        added += 1
    return Graph(num_vertices, _assemble(num_vertices, edge_dict))


def laplacian(graph: Graph, kind: LaplacianKind = LaplacianKind.UNNORMALIZED) -> np.ndarray:
    """Dense graph Laplacian of the requested kind.

    ``UNNORMALIZED`` gives ``L = D - W``; ``SYMMETRIC_NORMALIZED`` gives
    ``I - D^{-1/2} W D^{-1/2}`` and requires every degree to be positive.
    The returned matrix is exactly symmetric (it is symmetrized bitwise).
    """
    d = graph.degrees
    if kind is LaplacianKind.UNNORMALIZED:
        lap = sp.diags(d) - graph.weights
    elif kind is LaplacianKind.SYMMETRIC_NORMALIZED:
        if np.any(d == 0):
            zero = [str(i + 1) for i in np.flatnonzero(d == 0)]
            raise ZeroDegree(f"vertices with zero degree: {', '.join(zero)}")
        s = 1.0 / np.sqrt(d)
        lap = sp.identity(graph.num_vertices) - sp.diags(s) @ graph.weights @ sp.diags(s)
    else:  # pragma: no cover - enum is closed
        raise InvalidParameter(f"unknown laplacian kind {kind!r}")
    dense = np.asarray(lap.todense(), dtype=float)
    return (dense + dense.T) / 2.0


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------
#
# Edge lists are plain text.  Blank lines and lines starting with '#' are
# ignored.  An optional first data line holding a single integer gives the
# vertex count; otherwise N is inferred as the largest vertex index seen.
# Every other data line is "i j" or "i j w" with 1-based vertex indices
# (weight defaults to 1.0).  A coordinate sidecar has lines "i x y".


def _data_lines(path) -> Iterable[tuple[int, list[str]]]:
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.strip()
            if not text or text.startswith("#"):
                continue
            yield lineno, text.split()


def load_graph(
    path,
    coordinates_path=None,
    largest_component: bool = False,
) -> Graph:
    """Read a graph from an edge-list file.

    With ``largest_component=True`` a disconnected input is reduced to its
    largest connected component (ties broken toward the component containing
    the smallest vertex index); vertices are then relabeled 1..N' preserving
    their original order.  Otherwise a disconnected input raises
    :class:`Disconnected`.
    """
    edges: list[tuple[int, int, float]] = []
    declared: int | None = None
    max_seen = 0
    first = True
    for lineno, tokens in _data_lines(path):
        if first and len(tokens) == 1:
            first = False
            try:
                declared = int(tokens[0])
            except ValueError:
                raise ParseError(f"expected a vertex count, got {tokens[0]!r}", lineno)
            if declared < 1:
                raise ParseError(f"vertex count must be positive, got {declared}", lineno)
            continue
        first = False
        if len(tokens) not in (2, 3):
            raise ParseError(f"expected 'i j' or 'i j w', got {' '.join(tokens)!r}", lineno)
        try:
            i, j = int(tokens[0]), int(tokens[1])
            w = float(tokens[2]) if len(tokens) == 3 else 1.0
        except ValueError:
            raise ParseError(f"could not parse edge {' '.join(tokens)!r}", lineno)
        edges.append((i, j, w))
        max_seen = max(max_seen, i, j)

    n = declared if declared is not None else max_seen
    if n < 1:
        raise ParseError("file contains no vertices")
    edge_dict = _collect_edges(n, edges)
    weights = _assemble(n, edge_dict)

    coords = None
    if coordinates_path is not None:
        coords = _load_coordinates(coordinates_path, n)

    if largest_component:
        ncomp, labels = connected_components(weights, directed=False)
        if ncomp > 1:
            sizes = np.bincount(labels, minlength=ncomp)
            keep_label = int(np.argmax(sizes))  # first maximal component wins ties
            keep = np.flatnonzero(labels == keep_label)
            weights = weights[np.ix_(keep, keep)].tocsr()
            if coords is not None:
                coords = coords[keep]
            n = len(keep)
    return Graph(n, weights, coords)


def _load_coordinates(path, num_vertices: int) -> np.ndarray:
    coords = np.full((num_vertices, 2), np.nan)
    for lineno, tokens in _data_lines(path):
        if len(tokens) != 3:
            raise ParseError(f"expected 'i x y', got {' '.join(tokens)!r}", lineno)
        try:
            i = int(tokens[0])
            x, y = float(tokens[1]), float(tokens[2])
        except ValueError:
            raise ParseError(f"could not parse coordinate line {' '.join(tokens)!r}", lineno)
        _check_vertex(i, num_vertices)
        coords[i - 1] = (x, y)
    if np.isnan(coords).any():
        missing = np.flatnonzero(np.isnan(coords).any(axis=1)) + 1
        raise ParseError(f"missing coordinates for vertices {missing.tolist()}")
    return coords


def save_graph(path, graph: Graph, coordinates_path=None) -> None:
    """Write a graph back out in the edge-list format (with an N header)."""
    w = sp.triu(graph.weights, k=1).tocoo()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{graph.num_vertices}\n")
        order = np.lexsort((w.col, w.row))
        for idx in order:
            fh.write(f"{w.row[idx] + 1} {w.col[idx] + 1} {float(w.data[idx])!r}\n")
    if coordinates_path is not None and graph.coordinates is not None:
        with open(coordinates_path, "w", encoding="utf-8") as fh:
            for i, (x, y) in enumerate(graph.coordinates, start=1):
                fh.write(f"{i} {float(x)!r} {float(y)!r}\n")
