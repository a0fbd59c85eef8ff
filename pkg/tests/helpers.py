"""Small factories shared across test modules."""

from __future__ import annotations

import numpy as np

from mwgft import (
    LaplacianKind,
    build_graph,
    eigendecompose,
    laplacian,
    random_connected_graph,
)

UNNORM = LaplacianKind.UNNORMALIZED
NORM = LaplacianKind.SYMMETRIC_NORMALIZED


def basis_for(graph, kind=UNNORM):
    return eigendecompose(laplacian(graph, kind), kind)


def random_basis(seed: int, size: int | None = None, kind=UNNORM, min_size: int = 4, max_size: int = 15):
    """A basis on a seeded random connected graph (size drawn if not given)."""
    rng = np.random.default_rng(seed)
    if size is None:
        size = int(rng.integers(min_size, max_size + 1))
    graph = random_connected_graph(
        size,
        seed=int(rng.integers(0, 2**31)),
        extra_edges=int(rng.integers(0, 2 * size)),
    )
    return basis_for(graph, kind)


def star_graph(num_vertices: int):
    """Hub-and-spokes graph; its Laplacian has an (N-2)-fold eigenvalue."""
    return build_graph(num_vertices, [(1, j, 1.0) for j in range(2, num_vertices + 1)])


def random_complex(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)
