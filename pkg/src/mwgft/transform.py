"""Windowed graph Fourier analysis, exact reconstruction, and frame bounds.

The windowed transform of a signal f against a window g is the N x N matrix

    S(n, k) = <f, g_{n,k}>,    g_{n,k} = M_k T_n g,

with vertices n down the rows (1-based) and frequencies k across the columns
(0-based).  The whole matrix is assembled from dense matrix products instead
of N^2 individual atom inner products: row n of S is sqrt(N) times the GFT of
``h_n(i) = f(i) * conj((T_n g)(i))``, and all translates come from a single
N^3 product.  The atom-by-atom path survives only as a test oracle.

Multi-window synthesis divides the accumulated filter outputs by the
per-vertex denominator ``d(n)``; it is exact whenever d never vanishes.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    DegenerateDenominator,
    DimensionMismatch,
    FingerprintMismatch,
    NotAFrame,
    ParseError,
)
from .operators import translate_all, translation_inner_products, translate_norms_sq
from .spectral import SpectralBasis, gft
from .windows import SpectralWindow, WindowFamily, default_nondegeneracy_tolerance


def _window_spectrum(basis: SpectralBasis, window) -> np.ndarray:
    """Accept a window in either domain and return its spectrum.

    A :class:`SpectralWindow` is taken as already-spectral samples; a plain
    array is treated as a vertex-domain window and transformed once.
    """
    if isinstance(window, SpectralWindow):
        if window.size != basis.size:
            raise DimensionMismatch(
                f"window sampled on {window.size} eigenvalues, basis has {basis.size}"
            )
        return window.samples
    return gft(basis, window)


@dataclass(frozen=True)
class WgftCoefficients:
    """Per-window coefficient matrices plus the basis fingerprint they belong to."""

    matrices: tuple[np.ndarray, ...]
    basis_fingerprint: str

    def __post_init__(self):
        matrices = tuple(np.asarray(m) for m in self.matrices)
        if len(matrices) == 0:
            raise DimensionMismatch("need at least one coefficient matrix")
        n = matrices[0].shape[0]
        for m in matrices:
            if m.shape != (n, n):
                raise DimensionMismatch(
                    f"coefficient matrices must all be ({n}, {n}), got {m.shape}"
                )
        object.__setattr__(self, "matrices", matrices)

    @property
    def num_windows(self) -> int:
        return len(self.matrices)

    @property
    def size(self) -> int:
        return self.matrices[0].shape[0]


@dataclass(frozen=True)
class FrameBounds:
    """Tight frame bounds plus the per-vertex translate energies behind them.

    ``lower``/``upper`` are the optimal constants N*min/max of ``||T_i g||^2``.
    When a synthesis window was supplied, ``loose_lower``/``loose_upper`` hold
    the coarser two-window pair (a^2 N, b^2 N); they always bracket at least
    as loosely: loose_lower <= lower and upper <= loose_upper.
    """

    lower: float
    upper: float
    translate_energies: np.ndarray
    loose_lower: float | None = None
    loose_upper: float | None = None


@dataclass(frozen=True)
class Spectrogram:
    """Squared-magnitude coefficient maps, per window and averaged over windows."""

    per_window: tuple[np.ndarray, ...]
    averaged: np.ndarray


def _wgft_spectrum(basis: SpectralBasis, window_spectrum: np.ndarray, signal: np.ndarray) -> np.ndarray:
    translates = translate_all(basis, window_spectrum)  # column n-1 = T_n g
    windowed = signal[:, None] * np.conj(translates)
    return np.sqrt(basis.size) * (basis.vectors.conj().T @ windowed).T


def wgft(basis: SpectralBasis, window, signal: np.ndarray) -> np.ndarray:
    """Windowed transform ``S(n, k) = <f, g_{n,k}>`` as an N x N complex matrix."""
    signal = np.asarray(signal)
    if signal.shape != (basis.size,):
        raise DimensionMismatch(f"signal shape {signal.shape}, expected ({basis.size},)")
    return _wgft_spectrum(basis, _window_spectrum(basis, window), signal)


def _synthesis_numerator(basis: SpectralBasis, gamma_hat: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """``p(i) = sum_{n,k} S(n,k) gamma_{n,k}(i)`` via two dense products.

    Filtering the coefficient columns by gamma gives
    C = U diag(gamma_hat) U^H S^T; contracting C against the modulation
    factors chi_k(i) yields p without ever forming an atom.
    """
    u = basis.vectors
    filtered = u @ (gamma_hat[:, None] * (u.conj().T @ coeffs))  # (i, k)
    return basis.size * np.einsum("ik,ik->i", u, filtered)


def reconstruct_two_window(
    basis: SpectralBasis,
    window,
    dual_window,
    coeffs: np.ndarray,
    tolerance: float | None = None,
) -> np.ndarray:
    """Invert a single-window transform with a (possibly different) dual window.

    ``f(i) = [N <T_i gamma, T_i g>]^{-1} sum_{n,k} S(n,k) gamma_{n,k}(i)``.
    Raises :class:`DegenerateDenominator` listing the vertices where the
    denominator magnitude is at or below tolerance.
    """
    coeffs = np.asarray(coeffs)
    if coeffs.shape != (basis.size, basis.size):
        raise DimensionMismatch(
            f"coefficients shape {coeffs.shape}, expected ({basis.size}, {basis.size})"
        )
    g_hat = _window_spectrum(basis, window)
    gamma_hat = _window_spectrum(basis, dual_window)
    if tolerance is None:
        tolerance = 1e-10 * basis.size * float(
            np.linalg.norm(g_hat) * np.linalg.norm(gamma_hat)
        )
    d = translation_inner_products(basis, g_hat, gamma_hat)
    bad = np.flatnonzero(np.abs(d) <= tolerance)
    if bad.size:
        raise DegenerateDenominator(
            f"|<T_i dual, T_i window>| <= {tolerance:.3e}", vertices=bad + 1
        )
    return _synthesis_numerator(basis, gamma_hat, coeffs) / (basis.size * d)


def mwgft_analyze(
    basis: SpectralBasis, family: WindowFamily, signal: np.ndarray, threads: int = 1
) -> WgftCoefficients:
    """Windowed transform against every analysis window of the family."""
    signal = np.asarray(signal)
    if signal.shape != (basis.size,):
        raise DimensionMismatch(f"signal shape {signal.shape}, expected ({basis.size},)")
    if family.size != basis.size:
        raise DimensionMismatch(
            f"family sampled on {family.size} eigenvalues, basis has {basis.size}"
        )

    def one(w: SpectralWindow) -> np.ndarray:
        return _wgft_spectrum(basis, w.samples, signal)

    if threads > 1 and family.num_windows > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            matrices = list(pool.map(one, family.analysis))
    else:
        matrices = [one(w) for w in family.analysis]
    return WgftCoefficients(tuple(matrices), basis.fingerprint)


def mwgft_synthesize(
    basis: SpectralBasis,
    family: WindowFamily,
    coeffs: WgftCoefficients,
    tolerance: float | None = None,
    threads: int = 1,
) -> np.ndarray:
    """Exact multi-window reconstruction ``f(i) = p(i) / (N d(i))``.

    Contributions are reduced in fixed window order so single-threaded output
    is bit-reproducible; threaded runs compute the per-window terms in
    parallel but still sum them in order.
    """
    if coeffs.basis_fingerprint != basis.fingerprint:
        raise FingerprintMismatch(
            "coefficients were produced against a different spectral basis"
        )
    if coeffs.num_windows != family.num_windows:
        raise DimensionMismatch(
            f"{coeffs.num_windows} coefficient matrices for {family.num_windows} windows"
        )
    if coeffs.size != basis.size or family.size != basis.size:
        raise DimensionMismatch("coefficients / family / basis sizes differ")
    if tolerance is None:
        tolerance = default_nondegeneracy_tolerance(family)

    d = np.zeros(basis.size, dtype=complex)
    for g, gam in zip(family.analysis, family.synthesis):
        d += translation_inner_products(basis, g.samples, gam.samples)
    bad = np.flatnonzero(np.abs(d) <= tolerance)
    if bad.size:
        raise DegenerateDenominator(
            f"sum_j |<T_i gamma_j, T_i g_j>| <= {tolerance:.3e}", vertices=bad + 1
        )

    def one(j: int) -> np.ndarray:
        return _synthesis_numerator(basis, family.synthesis[j].samples, coeffs.matrices[j])

    indices = range(family.num_windows)
    if threads > 1 and family.num_windows > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            terms = list(pool.map(one, indices))
    else:
        terms = [one(j) for j in indices]
    numerator = np.zeros(basis.size, dtype=complex)
    for term in terms:
        numerator = numerator + term
    return numerator / (basis.size * d)


def frame_bounds(
    basis: SpectralBasis,
    window,
    dual_window=None,
    tolerance: float | None = None,
) -> FrameBounds:
    """Optimal frame bounds of the atom system ``{g_{n,k}}``.

    The analysis energy of any f is ``N sum_i |f(i)|^2 ||T_i g||^2``, so the
    best constants are ``N min_i ||T_i g||^2`` and ``N max_i ||T_i g||^2``
    (delta signals attain both).  Raises :class:`NotAFrame` when the smallest
    translate norm vanishes within tolerance.
    """
    g_hat = _window_spectrum(basis, window)
    energies = translate_norms_sq(basis, g_hat)
    if tolerance is None:
        tolerance = 1e-10 * np.sqrt(basis.size) * float(np.linalg.norm(g_hat))
    if np.sqrt(max(energies.min(), 0.0)) <= tolerance:
        worst = int(np.argmin(energies)) + 1
        raise NotAFrame(
            f"translate norm at vertex {worst} is below tolerance; atoms do not span"
        )
    n = basis.size
    bounds = FrameBounds(
        lower=float(n * energies.min()),
        upper=float(n * energies.max()),
        translate_energies=energies,
    )
    if dual_window is None:
        return bounds
    gamma_hat = _window_spectrum(basis, dual_window)
    cross = translation_inner_products(basis, g_hat, gamma_hat)
    dual_energies = translate_norms_sq(basis, gamma_hat)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(dual_energies > 0, np.abs(cross) / np.sqrt(dual_energies), 0.0)
    a = float(np.min(ratios))
    b = float(np.sqrt(energies.max()))
    return FrameBounds(
        lower=bounds.lower,
        upper=bounds.upper,
        translate_energies=energies,
        loose_lower=a * a * n,
        loose_upper=b * b * n,
    )


def spectrogram(coeffs: WgftCoefficients) -> Spectrogram:
    """Squared magnitudes per window plus their mean over windows."""
    per = tuple(np.abs(m) ** 2 for m in coeffs.matrices)
    return Spectrogram(per, np.mean(np.stack(per), axis=0))


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

def _meta_path(path) -> Path:
    path = Path(path)
    return path.with_name(path.stem + ".meta.json")


def save_coefficients(path, coeffs: WgftCoefficients) -> None:
    """Coefficients as CSV (window, vertex, freq, re, im) plus a JSON sidecar
    carrying the basis fingerprint."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["window", "vertex", "freq", "re", "im"])
        for j, matrix in enumerate(coeffs.matrices, start=1):
            for n in range(matrix.shape[0]):
                for k in range(matrix.shape[1]):
                    v = complex(matrix[n, k])
                    writer.writerow([j, n + 1, k, repr(v.real), repr(v.imag)])
    meta = {
        "basis_fingerprint": coeffs.basis_fingerprint,
        "num_windows": coeffs.num_windows,
        "size": coeffs.size,
    }
    _meta_path(path).write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")


def load_coefficients(path) -> WgftCoefficients:
    meta_file = _meta_path(path)
    if not meta_file.exists():
        raise ParseError(f"missing coefficient metadata file {meta_file}")
    meta = json.loads(meta_file.read_text(encoding="utf-8"))
    size = int(meta["size"])
    num_windows = int(meta["num_windows"])
    matrices = [np.zeros((size, size), dtype=complex) for _ in range(num_windows)]
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["window", "vertex", "freq", "re", "im"]:
            raise ParseError(f"unexpected coefficient header {header}", 1)
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                j, n, k = int(row[0]), int(row[1]), int(row[2])
                value = complex(float(row[3]), float(row[4]))
            except (ValueError, IndexError):
                raise ParseError("bad coefficient row", lineno)
            if not (1 <= j <= num_windows and 1 <= n <= size and 0 <= k < size):
                raise ParseError(f"indices ({j}, {n}, {k}) out of range", lineno)
            matrices[j - 1][n - 1, k] = value
    return WgftCoefficients(tuple(matrices), str(meta["basis_fingerprint"]))


def save_spectrogram_csv(path, matrix: np.ndarray) -> None:
    """One spectrogram matrix as CSV: vertex row index, then |S|^2 per frequency."""
    matrix = np.asarray(matrix)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["vertex"] + [f"k{k}" for k in range(matrix.shape[1])])
        for n in range(matrix.shape[0]):
            writer.writerow([n + 1] + [repr(float(v)) for v in matrix[n]])


def save_spectrogram_pgm(path, matrix: np.ndarray) -> None:
    """Binary PGM preview: linear grayscale, normalized by the matrix maximum."""
    matrix = np.asarray(matrix, dtype=float)
    peak = matrix.max()
    scaled = matrix / peak if peak > 0 else matrix
    pixels = np.round(255.0 * scaled).astype(np.uint8)
    rows, cols = pixels.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{cols} {rows}\n255\n".encode("ascii"))
        fh.write(pixels.tobytes())
