"""Tangent vectors to a unitary orbit and their operator representations.

The map ``H -> (1/(i hbar)) [H, rho]`` sends Hermitian operators onto the
tangent space at rho. Its kernel consists of the operators that are block
diagonal in a frame of rho; the purely off-block-diagonal operators form a
complement on which the map is invertible block by block:

    B_ij = i hbar X_ij / (p_j - p_i)    for clusters i != j.

Tangent vectors remember their base point. Operations mixing vectors at
different points raise :class:`BaseMismatchError` rather than re-basing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import Config, DEFAULT_CONFIG
from .errors import BaseMismatchError, DimMismatchError, NotHermitianError
from .operators import HermitianOperator, OrbitPoint, hermiticity_defect

__all__ = [
    "TangentVector",
    "BlockDecomposition",
    "tangent_map",
    "make_tangent",
    "split_kernel",
    "blocks",
    "lift",
]


def same_base(p: OrbitPoint, q: OrbitPoint) -> bool:
    """Whether two orbit points are the same base point (same rho and frame)."""
    return (p is q) or (
        p.spectrum == q.spectrum
        and np.array_equal(p.rho, q.rho)
        and np.array_equal(p.frame, q.frame)
    )


def _require_same_base(p: OrbitPoint, q: OrbitPoint):
    if not same_base(p, q):
        raise BaseMismatchError("tangent vectors live at different base points")


@dataclass(frozen=True)
class TangentVector:
    """A tangent vector at ``base``, stored as its ambient Hermitian matrix.

    In the frame of the base point the matrix has vanishing diagonal blocks.
    """

    base: OrbitPoint
    ambient: np.ndarray

    @property
    def dim(self) -> int:
        return self.ambient.shape[0]

    @property
    def max_norm(self) -> float:
        return float(np.max(np.abs(self.ambient)))

    @property
    def frobenius(self) -> float:
        return float(np.linalg.norm(self.ambient))

    def in_frame(self) -> np.ndarray:
        """Matrix of the vector in the frame of its base point."""
        return self.base.to_frame(self.ambient)

    def __add__(self, other: "TangentVector") -> "TangentVector":
        if not isinstance(other, TangentVector):
            return NotImplemented
        _require_same_base(self.base, other.base)
        return TangentVector(self.base, self.ambient + other.ambient)

    def __sub__(self, other: "TangentVector") -> "TangentVector":
        if not isinstance(other, TangentVector):
            return NotImplemented
        _require_same_base(self.base, other.base)
        return TangentVector(self.base, self.ambient - other.ambient)

    def __neg__(self) -> "TangentVector":
        return TangentVector(self.base, -self.ambient)

    def __mul__(self, scalar) -> "TangentVector":
        if np.ndim(scalar) != 0 or np.iscomplexobj(np.asarray(scalar)):
            return NotImplemented
        return TangentVector(self.base, float(scalar) * self.ambient)

    __rmul__ = __mul__


@dataclass(frozen=True)
class BlockDecomposition:
    """Cluster-block partition of a Hermitian operator in the frame of a point.

    ``diag_blocks[j]`` is the n_j x n_j diagonal block; ``upper_blocks[(i, j)]``
    (i < j) is the n_i x n_j block above the diagonal. The lower blocks are the
    conjugate transposes and are not stored.
    """

    base: OrbitPoint
    diag_blocks: tuple
    upper_blocks: dict

    def assemble(self) -> HermitianOperator:
        """Reassemble the ambient operator from its blocks."""
        n = self.base.dim
        framed = np.zeros((n, n), dtype=np.complex128)
        slices = self.base.block_slices()
        for j, block in enumerate(self.diag_blocks):
            framed[slices[j], slices[j]] = block
        for (i, j), block in self.upper_blocks.items():
            framed[slices[i], slices[j]] = block
            framed[slices[j], slices[i]] = block.conj().T
        return HermitianOperator(self.base.from_frame(framed))


def tangent_map(h: HermitianOperator, p: OrbitPoint,
                cfg: Config = DEFAULT_CONFIG) -> TangentVector:
    """Tangent vector generated by a Hermitian operator: (1/(i hbar))[H, rho]."""
    if h.dim != p.dim:
        raise DimMismatchError(f"operator dim {h.dim} vs point dim {p.dim}")
    commutator = h.matrix @ p.rho - p.rho @ h.matrix
    return TangentVector(p, commutator / (1j * cfg.hbar))


def make_tangent(ambient, p: OrbitPoint, cfg: Config = DEFAULT_CONFIG) -> TangentVector:
    """Validate an ambient matrix as a tangent vector at ``p``.

    Requires hermiticity and vanishing diagonal blocks in the frame of ``p``.
    """
    arr = np.asarray(ambient, dtype=np.complex128)
    if arr.shape != (p.dim, p.dim):
        raise DimMismatchError(f"shape {arr.shape} vs point dim {p.dim}")
    defect = hermiticity_defect(arr)
    if defect > cfg.tol_hermitian:
        raise NotHermitianError(f"tangent candidate hermiticity defect {defect:.3e}")
    framed = p.to_frame(arr)
    worst = max(float(np.max(np.abs(framed[s, s]))) for s in p.block_slices())
    if worst > cfg.tol_hermitian:
        raise NotHermitianError(
            f"diagonal blocks do not vanish: max entry {worst:.3e}")
    return TangentVector(p, arr)


def split_kernel(h: HermitianOperator, p: OrbitPoint):
    """Split an operator into commuting and off-block-diagonal parts at ``p``.

    Returns ``(kernel_part, complement_part)``: the first is block diagonal in
    the frame of ``p`` (it commutes with rho, so it generates no motion), the
    second is purely off-block-diagonal; they sum to ``h``.
    """
    if h.dim != p.dim:
        raise DimMismatchError(f"operator dim {h.dim} vs point dim {p.dim}")
    framed = p.to_frame(h.matrix)
    diag = np.zeros_like(framed)
    for s in p.block_slices():
        diag[s, s] = framed[s, s]
    off = framed - diag
    return (HermitianOperator(p.from_frame(diag)),
            HermitianOperator(p.from_frame(off)))


def blocks(h: HermitianOperator, p: OrbitPoint) -> BlockDecomposition:
    """Partition an operator by the multiplicity pattern of ``p``."""
    if h.dim != p.dim:
        raise DimMismatchError(f"operator dim {h.dim} vs point dim {p.dim}")
    framed = p.to_frame(h.matrix)
    slices = p.block_slices()
    diag = tuple(framed[s, s].copy() for s in slices)
    upper = {}
    for i in range(len(slices)):
        for j in range(i + 1, len(slices)):
            upper[(i, j)] = framed[slices[i], slices[j]].copy()
    return BlockDecomposition(base=p, diag_blocks=diag, upper_blocks=upper)


def lift(x: TangentVector, cfg: Config = DEFAULT_CONFIG) -> HermitianOperator:
    """The unique off-block-diagonal generator of a tangent vector.

    Inverts the tangent map on its complement: in the frame of the base,
    ``B_ij = i hbar X_ij / (p_j - p_i)`` for i < j, mirrored Hermitianly.
    """
    p = x.base
    framed = x.in_frame()
    values = p.spectrum.values
    slices = p.block_slices()
    gen = np.zeros_like(framed)
    for i in range(len(slices)):
        for j in range(i + 1, len(slices)):
            block = 1j * cfg.hbar * framed[slices[i], slices[j]] / (values[j] - values[i])
            gen[slices[i], slices[j]] = block
            gen[slices[j], slices[i]] = block.conj().T
    return HermitianOperator(p.from_frame(gen))
