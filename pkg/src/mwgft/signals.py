"""Test-signal generators: impulse, heat profile, chirp, spectral profiles.

Each generator is a pure function; the ``*Spec`` dataclasses are the
declarative form used by experiment configs, resolved against a basis by
:func:`build_signal`.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange, InvalidParameter, ParseError
from .spectral import SpectralBasis, igft

#: default heat diffusion time as a multiple of 1/lambda_max
DEFAULT_HEAT_TAU_FACTOR = 10.0


def impulse(num_vertices: int, center: int) -> np.ndarray:
    """Unit impulse at a 1-based vertex."""
    if not 1 <= center <= num_vertices:
        raise IndexOutOfRange(f"vertex {center} outside 1..{num_vertices}")
    out = np.zeros(num_vertices)
    out[center - 1] = 1.0
    return out


def heat_signal(basis: SpectralBasis, tau: float | None = None) -> np.ndarray:
    """Smooth signal with spectrum ``exp(-tau * lambda_ell)``.

    ``tau`` defaults to ``10 / lambda_max``, which keeps the profile visibly
    smooth without collapsing it to a constant.  Real-valued for real bases.
    """
    if tau is None:
        tau = DEFAULT_HEAT_TAU_FACTOR / basis.lambda_max
    if not tau > 0:
        raise InvalidParameter(f"diffusion time must be positive, got {tau}")
    return igft(basis, np.exp(-tau * basis.eigenvalues))


def chirp_signal(num_vertices: int, center: int, width: float, rate: float) -> np.ndarray:
    """Gaussian-envelope chirp over the vertex indices.

    ``f(n) = exp(-(n - center)^2 / (2 width^2)) * exp(1j * rate * (n - center))``
    for n = 1..N.  The index arithmetic only means "position" on path-like
    vertex orderings, but the generator itself works on any size.
    """
    if not 1 <= center <= num_vertices:
        raise IndexOutOfRange(f"vertex {center} outside 1..{num_vertices}")
    if not width > 0:
        raise InvalidParameter(f"width must be positive, got {width}")
    offsets = np.arange(1, num_vertices + 1, dtype=float) - center
    envelope = np.exp(-(offsets**2) / (2.0 * width * width))
    return envelope * np.exp(1j * rate * offsets)


def spectral_signal(basis: SpectralBasis, spectrum: np.ndarray) -> np.ndarray:
    """Vertex signal with a prescribed spectrum (just the inverse transform)."""
    return igft(basis, spectrum)


def random_signal(num_vertices: int, seed: int, complex_values: bool = True) -> np.ndarray:
    rng = np.random.default_rng(seed)
    if complex_values:
        return rng.standard_normal(num_vertices) + 1j * rng.standard_normal(num_vertices)
    return rng.standard_normal(num_vertices)


# ---------------------------------------------------------------------------
# declarative specs for configs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ImpulseSpec:
    center: int


@dataclass(frozen=True)
class HeatSpec:
    tau: float | None = None


@dataclass(frozen=True)
class ChirpSpec:
    center: int
    width: float = 6.0
    rate: float = 0.3


@dataclass(frozen=True)
class SpectralProfileSpec:
    """Spectrum either inline (``values``) or from a CSV written by
    :func:`save_spectrum_csv`."""

    values: tuple | None = None
    path: str | None = None

    def __post_init__(self):
        if (self.values is None) == (self.path is None):
            raise InvalidParameter("give exactly one of values/path for a spectral profile")


@dataclass(frozen=True)
class RandomSpec:
    seed: int
    complex_values: bool = True


SignalSpec = Union[ImpulseSpec, HeatSpec, ChirpSpec, SpectralProfileSpec, RandomSpec]


def build_signal(spec: SignalSpec, basis: SpectralBasis) -> np.ndarray:
    """Resolve a declarative signal spec against a concrete basis."""
    n = basis.size
    if isinstance(spec, ImpulseSpec):
        return impulse(n, spec.center)
    if isinstance(spec, HeatSpec):
        return heat_signal(basis, spec.tau)
    if isinstance(spec, ChirpSpec):
        return chirp_signal(n, spec.center, spec.width, spec.rate)
    if isinstance(spec, SpectralProfileSpec):
        if spec.path is not None:
            spectrum = load_spectrum_csv(spec.path)
        else:
            spectrum = np.asarray(spec.values)
        if spectrum.shape != (n,):
            raise DimensionMismatch(f"spectrum shape {spectrum.shape}, expected ({n},)")
        return spectral_signal(basis, spectrum)
    if isinstance(spec, RandomSpec):
        return random_signal(n, spec.seed, spec.complex_values)
    raise InvalidParameter(f"unknown signal spec {spec!r}")


# ---------------------------------------------------------------------------
# CSV formats
# ---------------------------------------------------------------------------

def save_signal_csv(path, values: np.ndarray) -> None:
    values = np.asarray(values)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["vertex", "re", "im"])
        for i, v in enumerate(values, start=1):
            c = complex(v)
            writer.writerow([i, repr(c.real), repr(c.imag)])


def _read_indexed_csv(path, expected_header):
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != expected_header:
            raise ParseError(f"unexpected header {header}, expected {expected_header}", 1)
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                rows.append((int(row[0]), float(row[1]), float(row[2])))
            except (ValueError, IndexError):
                raise ParseError("bad row in signal file", lineno)
    if not rows:
        raise ParseError("signal file has no data rows")
    return rows


def load_signal_csv(path) -> np.ndarray:
    """Read a (vertex, re, im) CSV back into a vector; real input stays real."""
    rows = _read_indexed_csv(path, ["vertex", "re", "im"])
    n = len(rows)
    out = np.zeros(n, dtype=complex)
    seen = np.zeros(n, dtype=bool)
    for vertex, re, im in rows:
        if not 1 <= vertex <= n:
            raise ParseError(f"vertex {vertex} outside 1..{n}")
        out[vertex - 1] = complex(re, im)
        seen[vertex - 1] = True
    if not seen.all():
        raise ParseError("signal file skips some vertices")
    if np.all(out.imag == 0):
        return out.real
    return out


def save_spectrum_csv(path, values: np.ndarray) -> None:
    values = np.asarray(values)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["ell", "re", "im"])
        for ell, v in enumerate(values):
            c = complex(v)
            writer.writerow([ell, repr(c.real), repr(c.imag)])


def load_spectrum_csv(path) -> np.ndarray:
    rows = _read_indexed_csv(path, ["ell", "re", "im"])
    n = len(rows)
    out = np.zeros(n, dtype=complex)
    seen = np.zeros(n, dtype=bool)
    for ell, re, im in rows:
        if not 0 <= ell < n:
            raise ParseError(f"frequency {ell} outside 0..{n - 1}")
        out[ell] = complex(re, im)
        seen[ell] = True
    if not seen.all():
        raise ParseError("spectrum file skips some frequencies")
    if np.all(out.imag == 0):
        return out.real
    return out
