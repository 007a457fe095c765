"""Checks that J is integrable and that the symplectic form is closed.

Two independent verifications of integrability are provided. The algebraic
one exploits that the +i eigenspace of J at a point is spanned, in the frame
of that point, by strictly upper block triangular matrices: involutivity of
that distribution amounts to commutators of strictly upper matrices staying
strictly upper, which holds structurally. The analytic one evaluates the
torsion tensor of J,

    N(X, Y) = [X, Y] + J[JX, Y] + J[X, JY] - [JX, JY],

on vector fields extended from generators, with Lie brackets approximated by
central finite differences along exact unitary flows. Both residuals must
vanish: the first exactly, the second quadratically in the step.

Directional derivatives always flow along exact unitary conjugations, never
ODE steppers, so samples stay on the orbit and never drift across eigenvalue
clusters; if a flowed point still fails validation, the checks raise
:class:`DegenerateDriftError`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import Config, DEFAULT_CONFIG
from .dynamics import evolve
from .errors import DegenerateDriftError, OrbitKahlerError
from .kahler import apply_J, symplectic, symplectic_tangent
from .operators import HermitianOperator, OrbitPoint
from .tangent import TangentVector, lift, tangent_map

__all__ = [
    "CheckReport",
    "involutivity_check",
    "nijenhuis_fd",
    "closedness_check",
    "nondegeneracy_check",
]


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one sampled invariant check."""

    check_name: str
    max_residual: float
    samples: int
    tolerance: float
    passed: bool
    worst_case: dict

    @staticmethod
    def build(name: str, max_residual: float, samples: int, tolerance: float,
              worst_case: dict) -> "CheckReport":
        return CheckReport(
            check_name=name,
            max_residual=float(max_residual),
            samples=int(samples),
            tolerance=float(tolerance),
            passed=bool(max_residual <= tolerance),
            worst_case=worst_case,
        )


def _random_strictly_upper(p: OrbitPoint, rng: np.random.Generator) -> np.ndarray:
    """Frame-coordinates matrix with Gaussian entries strictly above the
    block diagonal and exact zeros elsewhere."""
    n = p.dim
    out = np.zeros((n, n), dtype=np.complex128)
    slices = p.block_slices()
    for i in range(len(slices)):
        for j in range(i + 1, len(slices)):
            shape = (slices[i].stop - slices[i].start, slices[j].stop - slices[j].start)
            out[slices[i], slices[j]] = (rng.standard_normal(shape)
                                         + 1j * rng.standard_normal(shape))
    return out


def involutivity_check(p: OrbitPoint, samples: int, seed,
                       cfg: Config = DEFAULT_CONFIG) -> CheckReport:
    """Strictly-lower residual of commutators of strictly-upper block matrices.

    Structural zero: products of strictly upper block triangular matrices stay
    strictly upper, so the residual is exactly zero even in floating point.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    rng = np.random.default_rng(seed)
    slices = p.block_slices()
    max_residual = 0.0
    scale = 1.0
    worst = {"sample": 0, "dim": p.dim,
             "spectrum": {"values": list(p.spectrum.values),
                          "mults": list(p.spectrum.mults)}}
    for index in range(samples):
        upper_a = _random_strictly_upper(p, rng)
        upper_b = _random_strictly_upper(p, rng)
        commutator = upper_a @ upper_b - upper_b @ upper_a
        residual = 0.0
        for i in range(len(slices)):
            for j in range(i):
                block = commutator[slices[i], slices[j]]
                if block.size:
                    residual = max(residual, float(np.max(np.abs(block))))
        scale = max(scale, float(np.linalg.norm(upper_a) * np.linalg.norm(upper_b)))
        if residual >= max_residual:
            max_residual = residual
            worst["sample"] = index
    tolerance = 100.0 * np.finfo(float).eps * scale
    return CheckReport.build("involutivity", max_residual, samples, tolerance, worst)


def _fundamental_field(a: HermitianOperator, cfg: Config):
    """The field q -> (1/(i hbar)) [A, rho_q], defined on the whole orbit."""
    def value(q: OrbitPoint) -> np.ndarray:
        return (a.matrix @ q.rho - q.rho @ a.matrix) / (1j * cfg.hbar)
    return value

def _j_field(a: HermitianOperator, cfg: Config):
    """The pointwise-J extension q -> J_q (fundamental field of A at q)."""
    def value(q: OrbitPoint) -> np.ndarray:
        return apply_J(tangent_map(a, q, cfg), cfg).ambient
    return value


def _project_tangent(ambient: np.ndarray, p: OrbitPoint) -> TangentVector:
    """Off-block-diagonal part of an ambient matrix, as a tangent vector at p.

    Finite differencing leaves O(step^2) dirt in the diagonal blocks; this is
    the orthogonal projection back onto the tangent space.
    """
    framed = p.to_frame(ambient)
    for s in p.block_slices():
        framed[s, s] = 0.0
    return TangentVector(p, p.from_frame(framed))


def _flow(p: OrbitPoint, generator: HermitianOperator, t: float, cfg: Config) -> OrbitPoint:
    try:
        return evolve(p, generator, t, cfg)
    except OrbitKahlerError as exc:
        raise DegenerateDriftError(
            f"flow for time {t} left the validated orbit neighborhood: {exc}") from exc


def _directional_derivative(field, p: OrbitPoint, velocity: np.ndarray,
                            cfg: Config) -> np.ndarray:
    """Central difference of an ambient-valued field along a curve on the
    orbit with the given initial velocity (the unitary flow of its lift)."""
    generator = lift(TangentVector(p, velocity), cfg)
    step = cfg.fd_step
    forward = field(_flow(p, generator, step, cfg))
    backward = field(_flow(p, generator, -step, cfg))
    return (forward - backward) / (2.0 * step)


def _bracket(field_v, field_w, p: OrbitPoint, cfg: Config) -> np.ndarray:
    """Lie bracket [V, W] at p: D_V W - D_W V by central differences."""
    v0 = field_v(p)
    w0 = field_w(p)
    return (_directional_derivative(field_w, p, v0, cfg)
            - _directional_derivative(field_v, p, w0, cfg))


def nijenhuis_fd(a: HermitianOperator, b: HermitianOperator, p: OrbitPoint,
                 cfg: Config = DEFAULT_CONFIG) -> float:
    """Max-norm of the torsion tensor of J on the fields generated by a, b.

    Evaluated at ``p`` with brackets by central differences of step
    ``cfg.fd_step``; the exact value is zero, so the return is pure
    discretization residual, O(fd_step^2).
    """
    field_a = _fundamental_field(a, cfg)
    field_b = _fundamental_field(b, cfg)
    field_ja = _j_field(a, cfg)
    field_jb = _j_field(b, cfg)
    plain = _bracket(field_a, field_b, p, cfg)
    mixed_a = _bracket(field_ja, field_b, p, cfg)
    mixed_b = _bracket(field_a, field_jb, p, cfg)
    twisted = _bracket(field_ja, field_jb, p, cfg)
    total = (plain
             + apply_J(_project_tangent(mixed_a, p), cfg).ambient
             + apply_J(_project_tangent(mixed_b, p), cfg).ambient
             - twisted)
    return float(np.max(np.abs(total)))


def closedness_check(a: HermitianOperator, b: HermitianOperator,
                     c: HermitianOperator, p: OrbitPoint,
                     cfg: Config = DEFAULT_CONFIG) -> float:
    """Six-term exterior derivative of omega on three generated fields.

    Cyclic directional derivatives of omega along the flows plus cyclic omega
    on pairwise brackets, normalized by 1/3. Exactly zero on the orbit; the
    return is the finite-difference residual, O(fd_step^2).
    """
    step = cfg.fd_step

    def derivative_along(generator, first, second):
        forward = _flow(p, generator, step, cfg)
        backward = _flow(p, generator, -step, cfg)
        return (symplectic(first, second, forward, cfg)
                - symplectic(first, second, backward, cfg)) / (2.0 * step)

    field_a = _fundamental_field(a, cfg)
    field_b = _fundamental_field(b, cfg)
    field_c = _fundamental_field(c, cfg)

    derivative_terms = (derivative_along(a, b, c)
                        - derivative_along(b, a, c)
                        + derivative_along(c, a, b))

    bracket_ab = _project_tangent(_bracket(field_a, field_b, p, cfg), p)
    bracket_bc = _project_tangent(_bracket(field_b, field_c, p, cfg), p)
    bracket_ca = _project_tangent(_bracket(field_c, field_a, p, cfg), p)
    bracket_terms = (symplectic_tangent(bracket_ab, tangent_map(c, p, cfg), cfg)
                     + symplectic_tangent(bracket_bc, tangent_map(a, p, cfg), cfg)
                     + symplectic_tangent(bracket_ca, tangent_map(b, p, cfg), cfg))

    return abs((derivative_terms + bracket_terms) / 3.0)


def nondegeneracy_check(p: OrbitPoint, samples: int, seed,
                        cfg: Config = DEFAULT_CONFIG) -> CheckReport:
    """Witness that omega(X, JX) is bounded away from zero on unit tangents.

    For every tangent vector, |omega(X, JX)| = g(X, X) is at least
    ``hbar / (p_1 - p_k)`` times the squared Frobenius norm of X (the weakest
    weight in the block sum). Reports the deficit against that floor and the
    smallest observed witness ratio.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    rng = np.random.default_rng(seed)
    if p.spectrum.k == 1:
        worst = {"note": "single-cluster orbit: tangent space is zero", "dim": p.dim}
        return CheckReport.build("nondegeneracy", 0.0, samples, cfg.tol_check, worst)
    floor = cfg.hbar / p.spectrum.span
    max_deficit = 0.0
    smallest_witness = np.inf
    worst = {"sample": 0, "dim": p.dim, "floor": floor,
             "spectrum": {"values": list(p.spectrum.values),
                          "mults": list(p.spectrum.mults)}}
    for index in range(samples):
        z = rng.standard_normal((p.dim, p.dim)) + 1j * rng.standard_normal((p.dim, p.dim))
        x = tangent_map(HermitianOperator(0.5 * (z + z.conj().T)), p, cfg)
        squared = x.frobenius ** 2
        if squared == 0.0:
            continue
        witness = abs(symplectic_tangent(x, apply_J(x, cfg), cfg)) / squared
        deficit = max(0.0, floor - witness)
        if witness < smallest_witness:
            smallest_witness = witness
            worst["sample"] = index
            worst["smallest_witness"] = witness
        max_deficit = max(max_deficit, deficit)
    return CheckReport.build("nondegeneracy", max_deficit, samples, cfg.tol_check, worst)
