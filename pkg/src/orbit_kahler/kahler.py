"""Symplectic form, complex structure, metric, and Hermitian product.

On the orbit of a density operator the symplectic form is

    omega(X_A, X_B) = (1/(i hbar)) Tr([A, B] rho),

the complex structure J acts through generators by multiplying blocks above
the diagonal by i and blocks below by -i, and the metric is

    g(X, Y) = omega(J X, Y).

Sign convention. The pair (g, omega) is packaged as h = g + i omega, which is
linear in the first slot (h(JX, Y) = i h(X, Y)) and conjugate linear in the
second. With descending eigenvalues this makes g positive definite and matches
the closed block form

    h(X_A, X_B) = (2/hbar) sum_{i<j} (p_i - p_j) Tr(A_ij B_ij^dag),

where A_ij, B_ij are the off-diagonal blocks of the generators in the frame of
the base point. The alternative packaging g'(X, Y) = omega(X, JY) is
negative definite here and is not exposed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import Config, DEFAULT_CONFIG
from .errors import DimMismatchError, NonRealResultError, NotOffDiagonalError
from .operators import HermitianOperator, OrbitPoint
from .tangent import TangentVector, _require_same_base, lift, tangent_map

__all__ = [
    "KahlerEvaluation",
    "j_generator",
    "apply_J",
    "symplectic",
    "symplectic_tangent",
    "metric",
    "hermitian_product",
    "hermitian_product_blocks",
    "hamiltonian_field",
    "kahler_evaluation",
]


@dataclass(frozen=True)
class KahlerEvaluation:
    """Joint evaluation of the structure on one pair of tangent directions."""

    omega: float
    metric: float
    h: complex
    base: OrbitPoint


def _require_real(z: complex, cfg: Config, what: str) -> float:
    if abs(z.imag) > cfg.tol_check:
        raise NonRealResultError(
            f"{what} has imaginary part {z.imag:.3e}; inputs are likely not Hermitian")
    return float(z.real)


def _require_offdiag(framed: np.ndarray, p: OrbitPoint, cfg: Config):
    worst = max(float(np.max(np.abs(framed[s, s]))) for s in p.block_slices())
    if worst > cfg.tol_hermitian:
        raise NotOffDiagonalError(
            f"diagonal blocks reach {worst:.3e}; split off the commuting part first")


def j_generator(b: HermitianOperator, p: OrbitPoint,
                cfg: Config = DEFAULT_CONFIG) -> HermitianOperator:
    """Generator inducing J of the tangent vector induced by ``b``.

    In the frame of ``p`` the blocks above the diagonal are multiplied by i
    and the blocks below by -i. Requires ``b`` purely off-block-diagonal.
    """
    if b.dim != p.dim:
        raise DimMismatchError(f"operator dim {b.dim} vs point dim {p.dim}")
    framed = p.to_frame(b.matrix)
    _require_offdiag(framed, p, cfg)
    slices = p.block_slices()
    out = np.zeros_like(framed)
    for i in range(len(slices)):
        for j in range(i + 1, len(slices)):
            block = 1j * framed[slices[i], slices[j]]
            out[slices[i], slices[j]] = block
            out[slices[j], slices[i]] = block.conj().T
    return HermitianOperator(p.from_frame(out))


def apply_J(x: TangentVector, cfg: Config = DEFAULT_CONFIG) -> TangentVector:
    """The complex structure on tangent vectors: lift, twist blocks, push down."""
    return tangent_map(j_generator(lift(x, cfg), x.base, cfg), x.base, cfg)


def symplectic(a: HermitianOperator, b: HermitianOperator, p: OrbitPoint,
               cfg: Config = DEFAULT_CONFIG) -> float:
    """The orbit symplectic form on the tangent directions generated by a, b.

    Returns (1/(i hbar)) Tr([A, B] rho). The imaginary residual must stay
    below ``tol_check``; a large one signals corrupted inputs and raises
    :class:`NonRealResultError` instead of being discarded.
    """
    if a.dim != p.dim or b.dim != p.dim:
        raise DimMismatchError(f"dims {a.dim}, {b.dim} vs point dim {p.dim}")
    commutator = a.matrix @ b.matrix - b.matrix @ a.matrix
    z = np.trace(commutator @ p.rho) / (1j * cfg.hbar)
    return _require_real(z, cfg, "symplectic form")


def symplectic_tangent(x: TangentVector, y: TangentVector,
                       cfg: Config = DEFAULT_CONFIG) -> float:
    """The symplectic form on tangent vectors, via the generator of ``x``.

    Evaluates Tr(B_x Y) with B_x the off-block-diagonal generator of ``x``,
    which equals the commutator form on the lifted generators.
    """
    _require_same_base(x.base, y.base)
    z = np.trace(lift(x, cfg).matrix @ y.ambient)
    return _require_real(complex(z), cfg, "symplectic form")


def metric(x: TangentVector, y: TangentVector,
           cfg: Config = DEFAULT_CONFIG) -> float:
    """Riemannian metric g(X, Y) = omega(JX, Y); positive definite."""
    return symplectic_tangent(apply_J(x, cfg), y, cfg)


def hermitian_product(x: TangentVector, y: TangentVector,
                      cfg: Config = DEFAULT_CONFIG) -> complex:
    """Hermitian product h(X, Y) = g(X, Y) + i omega(X, Y)."""
    return complex(metric(x, y, cfg), symplectic_tangent(x, y, cfg))


def hermitian_product_blocks(a: HermitianOperator, b: HermitianOperator,
                             p: OrbitPoint, cfg: Config = DEFAULT_CONFIG) -> complex:
    """Closed block form of the Hermitian product of two generated directions.

    For off-block-diagonal generators at ``p``:

        h = (2/hbar) sum_{i<j} (p_i - p_j) Tr(A_ij B_ij^dag),

    with descending eigenvalues, so every weight p_i - p_j is positive. Agrees
    with :func:`hermitian_product` of the generated tangent vectors.
    """
    if a.dim != p.dim or b.dim != p.dim:
        raise DimMismatchError(f"dims {a.dim}, {b.dim} vs point dim {p.dim}")
    fa = p.to_frame(a.matrix)
    fb = p.to_frame(b.matrix)
    _require_offdiag(fa, p, cfg)
    _require_offdiag(fb, p, cfg)
    slices = p.block_slices()
    values = p.spectrum.values
    total = 0.0 + 0.0j
    for i in range(len(slices)):
        for j in range(i + 1, len(slices)):
            pair = np.trace(fa[slices[i], slices[j]] @ fb[slices[i], slices[j]].conj().T)
            total += (values[i] - values[j]) * pair
    return complex(2.0 / cfg.hbar * total)


def hamiltonian_field(a: HermitianOperator, p: OrbitPoint,
                      cfg: Config = DEFAULT_CONFIG) -> TangentVector:
    """Hamiltonian vector field of the expectation function of ``a`` at ``p``.

    Identical to :func:`tangent_map`; named for readability where the
    symplectic role of the vector matters.
    """
    return tangent_map(a, p, cfg)


def kahler_evaluation(a: HermitianOperator, b: HermitianOperator, p: OrbitPoint,
                      cfg: Config = DEFAULT_CONFIG) -> KahlerEvaluation:
    """Evaluate omega, g, and h on the tangent directions generated by a, b."""
    xa = tangent_map(a, p, cfg)
    xb = tangent_map(b, p, cfg)
    g = metric(xa, xb, cfg)
    w = symplectic_tangent(xa, xb, cfg)
    return KahlerEvaluation(omega=w, metric=g, h=complex(g, w), base=p)
