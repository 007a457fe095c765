"""Seeded instance generators for property checks and sweeps.

All generators consume an explicit ``numpy.random.Generator`` (or a seed) and
are deterministic given it; nothing touches global random state.
"""

from __future__ import annotations

import numpy as np

from .config import Config, DEFAULT_CONFIG
from .operators import (
    HermitianOperator,
    OrbitPoint,
    Spectrum,
    haar_unitary,
    make_spectrum,
    random_density,
)
from .tangent import TangentVector, tangent_map

__all__ = [
    "gaussian_hermitian",
    "random_spectrum",
    "maximally_mixed_spectrum",
    "pure_spectrum",
    "random_point",
    "random_tangent",
    "random_gauge",
]


def gaussian_hermitian(dim: int, rng: np.random.Generator) -> HermitianOperator:
    """Gaussian-ensemble Hermitian matrix drawn from ``rng``."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return HermitianOperator(0.5 * (z + z.conj().T))


def maximally_mixed_spectrum(dim: int, cfg: Config = DEFAULT_CONFIG) -> Spectrum:
    """Single-cluster spectrum {1/dim} with multiplicity dim."""
    return make_spectrum([1.0 / dim], [dim], cfg)


def pure_spectrum(dim: int, cfg: Config = DEFAULT_CONFIG) -> Spectrum:
    """Rank-one spectrum (1, 0) with multiplicities (1, dim - 1)."""
    if dim == 1:
        return make_spectrum([1.0], [1], cfg)
    return make_spectrum([1.0, 0.0], [1, dim - 1], cfg)


def random_spectrum(dim: int, rng: np.random.Generator,
                    max_clusters: int = 4, max_mult: int = 3,
                    min_gap: float = 0.05,
                    cfg: Config = DEFAULT_CONFIG) -> Spectrum:
    """Random density spectrum with bounded cluster count and multiplicities.

    Distinct values are kept at least ``min_gap`` apart before trace
    normalization, which keeps every gap far above the clustering tolerance.
    """
    lo = -(-dim // max_mult)  # ceil
    hi = min(max_clusters, dim)
    if lo > hi:
        raise ValueError(f"dim {dim} cannot be split into <= {max_clusters} "
                         f"clusters of multiplicity <= {max_mult}")
    k = int(rng.integers(lo, hi + 1))
    while True:
        mults = rng.multinomial(dim - k, [1.0 / k] * k) + 1
        if mults.max() <= max_mult:
            break
    while True:
        levels = np.sort(rng.uniform(0.1, 1.0, size=k))[::-1]
        if k == 1 or np.min(-np.diff(levels)) >= min_gap:
            break
    values = levels / float(np.dot(mults, levels))
    return make_spectrum(values, mults, cfg)


def random_point(dim: int, rng: np.random.Generator,
                 cfg: Config = DEFAULT_CONFIG, **spectrum_kwargs) -> OrbitPoint:
    """Haar-random orbit point with a random spectrum in dimension ``dim``."""
    spectrum = random_spectrum(dim, rng, cfg=cfg, **spectrum_kwargs)
    return random_density(spectrum, rng, cfg)


def random_tangent(p: OrbitPoint, rng: np.random.Generator,
                   cfg: Config = DEFAULT_CONFIG) -> TangentVector:
    """Tangent vector generated by a Gaussian Hermitian matrix."""
    return tangent_map(gaussian_hermitian(p.dim, rng), p, cfg)


def random_gauge(p: OrbitPoint, rng: np.random.Generator) -> np.ndarray:
    """Haar-random intra-cluster gauge: block-diagonal unitary for ``p``."""
    out = np.zeros((p.dim, p.dim), dtype=np.complex128)
    for s in p.block_slices():
        out[s, s] = haar_unitary(s.stop - s.start, rng)
    return out
