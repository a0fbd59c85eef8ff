"""Vertex-domain operators: modulation, convolution, translation, atoms.

Conventions (N = number of vertices, chi_ell = eigenvector for frequency
ell, hats denote GFT coefficients):

* modulation     ``(M_k f)(i) = sqrt(N) f(i) chi_k(i)``
* convolution    ``(f * g)(i) = sum_ell fhat(ell) ghat(ell) chi_ell(i)``
* translation    ``(T_n f)(i) = sqrt(N) sum_ell fhat(ell) conj(chi_ell(n)) chi_ell(i)``
* atom           ``g_{n,k} = M_k T_n g``

Vertex arguments ``n`` are 1-based, frequency arguments ``k`` are 0-based.
Inner products are linear in the first slot and conjugate-linear in the
second: ``<f, g> = sum_i f(i) conj(g(i))``.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange
from .spectral import SpectralBasis, gft, igft


def _check_signal(basis: SpectralBasis, signal: np.ndarray) -> np.ndarray:
    signal = np.asarray(signal)
    if signal.shape != (basis.size,):
        raise DimensionMismatch(f"signal shape {signal.shape}, expected ({basis.size},)")
    return signal


def modulate(basis: SpectralBasis, k: int, signal: np.ndarray) -> np.ndarray:
    """Pointwise multiply by sqrt(N) times the k-th eigenvector."""
    signal = _check_signal(basis, signal)
    if not 0 <= k < basis.size:
        raise IndexOutOfRange(f"frequency {k} outside 0..{basis.size - 1}")
    return np.sqrt(basis.size) * signal * basis.vectors[:, k]


def convolve(basis: SpectralBasis, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Graph convolution: multiply spectra, transform back."""
    return igft(basis, gft(basis, f) * gft(basis, g))


def translate(basis: SpectralBasis, n: int, signal: np.ndarray) -> np.ndarray:
    """Localize ``signal`` around vertex ``n`` (1-based)."""
    signal = _check_signal(basis, signal)
    if not 1 <= n <= basis.size:
        raise IndexOutOfRange(f"vertex {n} outside 1..{basis.size}")
    coeff = gft(basis, signal) * basis.vectors[n - 1, :].conj()
    return np.sqrt(basis.size) * (basis.vectors @ coeff)


def translate_all(basis: SpectralBasis, window_spectrum: np.ndarray) -> np.ndarray:
    """All translates at once: column ``n-1`` holds ``T_n g``.

    Equals ``sqrt(N) * U diag(ghat) U^H`` which is Hermitian for real
    spectra; costs one dense N^3 product instead of N matvecs.
    """
    ghat = np.asarray(window_spectrum)
    if ghat.shape != (basis.size,):
        raise DimensionMismatch(f"spectrum shape {ghat.shape}, expected ({basis.size},)")
    u = basis.vectors
    return np.sqrt(basis.size) * ((u * ghat) @ u.conj().T)


def atom(basis: SpectralBasis, window: np.ndarray, n: int, k: int) -> np.ndarray:
    """Windowed atom ``g_{n,k} = M_k T_n g`` in a single pass.

    ``g_{n,k}(i) = N chi_k(i) sum_ell ghat(ell) conj(chi_ell(n)) chi_ell(i)``.
    """
    window = _check_signal(basis, window)
    if not 1 <= n <= basis.size:
        raise IndexOutOfRange(f"vertex {n} outside 1..{basis.size}")
    if not 0 <= k < basis.size:
        raise IndexOutOfRange(f"frequency {k} outside 0..{basis.size - 1}")
    coeff = gft(basis, window) * basis.vectors[n - 1, :].conj()
    return basis.size * basis.vectors[:, k] * (basis.vectors @ coeff)


def apply_filter(basis: SpectralBasis, window_spectrum: np.ndarray, signal: np.ndarray) -> np.ndarray:
    """Multiply the signal's spectrum by ``window_spectrum`` and go back."""
    signal = _check_signal(basis, signal)
    ghat = np.asarray(window_spectrum)
    if ghat.shape != (basis.size,):
        raise DimensionMismatch(f"spectrum shape {ghat.shape}, expected ({basis.size},)")
    return basis.vectors @ (ghat * (basis.vectors.conj().T @ signal))


def translation_inner_product(
    basis: SpectralBasis, g_hat: np.ndarray, gamma_hat: np.ndarray, n: int
) -> complex:
    """``<T_n gamma, T_n g>`` from the two spectra, without forming translates.

    ``<T_n gamma, T_n g> = N sum_ell gammahat(ell) conj(ghat(ell)) |chi_ell(n)|^2``.
    """
    if not 1 <= n <= basis.size:
        raise IndexOutOfRange(f"vertex {n} outside 1..{basis.size}")
    weights = np.abs(basis.vectors[n - 1, :]) ** 2
    return complex(basis.size * np.sum(np.asarray(gamma_hat) * np.conj(g_hat) * weights))


def translation_inner_products(
    basis: SpectralBasis, g_hat: np.ndarray, gamma_hat: np.ndarray
) -> np.ndarray:
    """``<T_n gamma, T_n g>`` for every vertex at once; entry ``n-1`` is vertex n."""
    g_hat = np.asarray(g_hat)
    gamma_hat = np.asarray(gamma_hat)
    if g_hat.shape != (basis.size,) or gamma_hat.shape != (basis.size,):
        raise DimensionMismatch("window spectra must have one sample per eigenvalue")
    return basis.size * (np.abs(basis.vectors) ** 2) @ (gamma_hat * np.conj(g_hat))


def translate_norms_sq(basis: SpectralBasis, g_hat: np.ndarray) -> np.ndarray:
    """``||T_n g||_2^2`` for every vertex (real, non-negative)."""
    return translation_inner_products(basis, g_hat, g_hat).real
