"""Sampled verification suites for every structural invariant.

Each suite draws deterministic instances from a seeded stream, evaluates one
invariant across dimensions and spectra (degenerate ones included), and
returns a :class:`CheckReport`. ``run_checks`` executes the whole catalog;
the CLI ``checks`` command is a thin wrapper around it. Passing an explicit
``spectra`` pool restricts sampling to those orbits.

``perturb_j`` is a fault-injection hook for the J^2 = -1 suite: it adds a
multiple of the input vector to J(J(X)) so the suite must fail, which guards
the plumbing that turns residuals into exit codes.
"""

from __future__ import annotations

import numpy as np

from .config import Config, DEFAULT_CONFIG
from .dynamics import ehrenfest_check, evolve, trajectory
from .integrability import (
    CheckReport,
    closedness_check,
    involutivity_check,
    nijenhuis_fd,
    nondegeneracy_check,
)
from .kahler import (
    apply_J,
    hermitian_product,
    hermitian_product_blocks,
    metric,
    symplectic,
    symplectic_tangent,
)
from .operators import conjugate, conjugate_point, haar_unitary, random_density, with_gauge
from .sampling import (
    gaussian_hermitian,
    maximally_mixed_spectrum,
    pure_spectrum,
    random_gauge,
    random_spectrum,
)
from .tangent import lift, split_kernel, tangent_map
from .uncertainty import full_report, uncertainty, variance_decomposition

__all__ = ["CHECK_NAMES", "run_checks"]


def _spectrum_info(p) -> dict:
    return {"values": list(p.spectrum.values), "mults": list(p.spectrum.mults)}


class _Instances:
    """Deterministic instance factory shared by all suites.

    Points cycle through the requested dimensions with a fresh random spectrum
    each time (every tenth one maximally mixed so the zero-tangent edge case
    stays covered), or through an explicit spectra pool when one is given.
    """

    def __init__(self, dims, rng: np.random.Generator, cfg: Config, pool=None):
        self.rng = rng
        self.cfg = cfg
        self.pool = list(pool) if pool else None
        self.dims = (tuple(sorted({s.total_dim for s in self.pool}))
                     if self.pool else tuple(dims))
        self._count = 0

    def point(self, mixed_every: int = 10):
        index = self._count
        self._count += 1
        if self.pool:
            spectrum = self.pool[index % len(self.pool)]
        else:
            dim = self.dims[index % len(self.dims)]
            if mixed_every and index % mixed_every == mixed_every - 1:
                spectrum = maximally_mixed_spectrum(dim, self.cfg)
            else:
                spectrum = random_spectrum(dim, self.rng, cfg=self.cfg)
        return random_density(spectrum, self.rng, self.cfg)

    def multi_cluster_point(self):
        """A point whose orbit has a nonzero tangent space (k >= 2)."""
        if self.pool and all(s.k == 1 for s in self.pool):
            raise ValueError("spectra pool contains only single-cluster orbits; "
                             "this check needs a nonzero tangent space")
        while True:
            p = self.point(mixed_every=0)
            if p.spectrum.k >= 2:
                return p

    def observable(self, dim: int):
        return gaussian_hermitian(dim, self.rng)


def _report_max(name, pairs, samples, tolerance):
    """Build a report from (residual, worst_case) pairs."""
    max_residual = 0.0
    worst = {}
    for residual, case in pairs:
        if residual >= max_residual:
            max_residual = residual
            worst = case
    return CheckReport.build(name, max_residual, samples, tolerance, worst)


def _check_j_squared(inst, samples, perturb_j=0.0):
    cfg = inst.cfg
    pairs = []
    for index in range(samples):
        p = inst.point()
        x = tangent_map(inst.observable(p.dim), p, cfg)
        twice = apply_J(apply_J(x, cfg), cfg)
        residual_matrix = twice.ambient + x.ambient + perturb_j * x.ambient
        residual = float(np.max(np.abs(residual_matrix)))
        pairs.append((residual, {"sample": index, "dim": p.dim,
                                 "spectrum": _spectrum_info(p)}))
    return _report_max("j_squared", pairs, samples, cfg.tol_check)


def _check_omega_antisymmetry(inst, samples):
    cfg = inst.cfg
    pairs = []
    for index in range(samples):
        p = inst.point()
        a = inst.observable(p.dim)
        b = inst.observable(p.dim)
        residual = abs(symplectic(a, b, p, cfg) + symplectic(b, a, p, cfg))
        pairs.append((residual, {"sample": index, "dim": p.dim,
                                 "spectrum": _spectrum_info(p)}))
    return _report_max("omega_antisymmetry", pairs, samples, cfg.tol_check)


def _check_metric_symmetry(inst, samples):
    cfg = inst.cfg
    pairs = []
    for index in range(samples):
        p = inst.point()
        x = tangent_map(inst.observable(p.dim), p, cfg)
        y = tangent_map(inst.observable(p.dim), p, cfg)
        residual = abs(metric(x, y, cfg) - metric(y, x, cfg))
        pairs.append((residual, {"sample": index, "dim": p.dim,
                                 "spectrum": _spectrum_info(p)}))
    return _report_max("metric_symmetry", pairs, samples, cfg.tol_check)


def _check_metric_positivity(inst, samples):
    cfg = inst.cfg
    pairs = []
    smallest = np.inf
    for index in range(samples):
        p = inst.multi_cluster_point()
        x = tangent_map(inst.observable(p.dim), p, cfg)
        squared = x.frobenius ** 2
        if squared == 0.0:
            continue
        ratio = metric(x, x, cfg) / squared
        smallest = min(smallest, ratio)
        pairs.append((max(0.0, -ratio),
                      {"sample": index, "dim": p.dim, "witness_ratio": float(ratio),
                       "spectrum": _spectrum_info(p)}))
    report = _report_max("metric_positivity", pairs, samples, cfg.tol_check)
    report.worst_case["smallest_witness"] = float(smallest)
    return report


def _check_compatibility(inst, samples):
    cfg = inst.cfg
    pairs = []
    for index in range(samples):
        p = inst.point()
        x = tangent_map(inst.observable(p.dim), p, cfg)
        y = tangent_map(inst.observable(p.dim), p, cfg)
        residual = abs(symplectic_tangent(apply_J(x, cfg), apply_J(y, cfg), cfg)
                       - symplectic_tangent(x, y, cfg))
        pairs.append((residual, {"sample": index, "dim": p.dim,
                                 "spectrum": _spectrum_info(p)}))
    return _report_max("compatibility", pairs, samples, cfg.tol_check)


def _check_hermitian_symmetry(inst, samples):
    cfg = inst.cfg
    pairs = []
    for index in range(samples):
        p = inst.point()
        x = tangent_map(inst.observable(p.dim), p, cfg)
        y = tangent_map(inst.observable(p.dim), p, cfg)
        residual = abs(hermitian_product(x, y, cfg)
                       - np.conj(hermitian_product(y, x, cfg)))
        pairs.append((residual, {"sample": index, "dim": p.dim,
                                 "spectrum": _spectrum_info(p)}))
    return _report_max("hermitian_symmetry", pairs, samples, cfg.tol_check)


def _check_block_formula(inst, samples):
    cfg = inst.cfg
    pairs = []
    for index in range(samples):
        p = inst.point()
        a_off = split_kernel(inst.observable(p.dim), p)[1]
        b_off = split_kernel(inst.observable(p.dim), p)[1]
        definitional = hermitian_product(tangent_map(a_off, p, cfg),
                                         tangent_map(b_off, p, cfg), cfg)
        closed_form = hermitian_product_blocks(a_off, b_off, p, cfg)
        residual = abs(closed_form - definitional) / max(1.0, abs(definitional))
        pairs.append((residual, {"sample": index, "dim": p.dim,
                                 "spectrum": _spectrum_info(p)}))
    return _report_max("block_formula", pairs, samples, cfg.tol_check)


def _check_tangent_roundtrip(inst, samples):
    cfg = inst.cfg
    pairs = []
    for index in range(samples):
        p = inst.point()
        h = inst.observable(p.dim)
        x = tangent_map(h, p, cfg)
        roundtrip = tangent_map(lift(x, cfg), p, cfg)
        residual = float(np.max(np.abs(roundtrip.ambient - x.ambient)))
        complement = split_kernel(h, p)[1]
        lifted_back = lift(tangent_map(complement, p, cfg), cfg)
        residual = max(residual,
                       float(np.max(np.abs(lifted_back.matrix - complement.matrix))))
        pairs.append((residual, {"sample": index, "dim": p.dim,
                                 "spectrum": _spectrum_info(p)}))
    return _report_max("tangent_roundtrip", pairs, samples, cfg.tol_check)


def _check_split_orthogonality(inst, samples):
    cfg = inst.cfg
    pairs = []
    for index in range(samples):
        p = inst.point()
        kernel_part, complement_part = split_kernel(inst.observable(p.dim), p)
        residual = abs(complex(np.trace(kernel_part.matrix @ complement_part.matrix)))
        pairs.append((residual, {"sample": index, "dim": p.dim,
                                 "spectrum": _spectrum_info(p)}))
    return _report_max("split_orthogonality", pairs, samples, cfg.tol_check)


def _scalar_panel(a, b, p, cfg) -> np.ndarray:
    """All public scalars for one (A, B, rho) triple, as a vector."""
    x = tangent_map(a, p, cfg)
    y = tangent_map(b, p, cfg)
    product = hermitian_product(x, y, cfg)
    report = full_report(a, b, p, cfg)
    return np.array([
        symplectic(a, b, p, cfg),
        metric(x, y, cfg),
        product.real,
        product.imag,
        report.deltaA,
        report.deltaB,
        report.geometric_bound,
        report.rs_bound,
    ])


def _check_ad_equivariance(inst, samples):
    cfg = inst.cfg
    pairs = []
    for index in range(samples):
        p = inst.point(mixed_every=0)
        a = inst.observable(p.dim)
        b = inst.observable(p.dim)
        u = haar_unitary(p.dim, inst.rng)
        before = _scalar_panel(a, b, p, cfg)
        after = _scalar_panel(conjugate(a, u, cfg), conjugate(b, u, cfg),
                              conjugate_point(p, u, cfg), cfg)
        residual = float(np.max(np.abs(after - before)))
        pairs.append((residual, {"sample": index, "dim": p.dim,
                                 "spectrum": _spectrum_info(p)}))
    return _report_max("ad_equivariance", pairs, samples, cfg.tol_check)


def _check_gauge_invariance(inst, samples):
    cfg = inst.cfg
    pairs = []
    for index in range(samples):
        p = inst.point(mixed_every=0)
        a = inst.observable(p.dim)
        b = inst.observable(p.dim)
        gauged = with_gauge(p, random_gauge(p, inst.rng), cfg)
        before = _scalar_panel(a, b, p, cfg)
        after = _scalar_panel(a, b, gauged, cfg)
        residual = float(np.max(np.abs(after - before)))
        pairs.append((residual, {"sample": index, "dim": p.dim,
                                 "spectrum": _spectrum_info(p)}))
    return _report_max("gauge_invariance", pairs, samples, cfg.tol_check)


def _aggregate(name, sub_reports):
    worst = max(sub_reports, key=lambda r: r.max_residual)
    total = sum(r.samples for r in sub_reports)
    return CheckReport.build(name, worst.max_residual, total,
                             worst.tolerance, worst.worst_case)


def _check_involutivity(inst, samples):
    points = [inst.point(mixed_every=4) for _ in range(max(2, 2 * len(inst.dims)))]
    per_point = max(1, samples // len(points))
    return _aggregate("involutivity",
                      [involutivity_check(p, per_point, inst.rng, inst.cfg)
                       for p in points])


def _check_nondegeneracy(inst, samples):
    points = [inst.point(mixed_every=4) for _ in range(max(2, 2 * len(inst.dims)))]
    per_point = max(1, samples // len(points))
    return _aggregate("nondegeneracy",
                      [nondegeneracy_check(p, per_point, inst.rng, inst.cfg)
                       for p in points])


def _fd_tolerance(cfg: Config) -> float:
    # calibrated: observed constants are O(10) for unit-scale observables
    return 1e3 * cfg.fd_step ** 2


def _fd_count(samples: int) -> int:
    return max(2, min(10, samples // 25))


def _check_nijenhuis(inst, samples):
    cfg = inst.cfg
    count = _fd_count(samples)
    pairs = []
    for index in range(count):
        p = inst.multi_cluster_point()
        a = inst.observable(p.dim)
        b = inst.observable(p.dim)
        residual = nijenhuis_fd(a, b, p, cfg)
        pairs.append((residual, {"sample": index, "dim": p.dim,
                                 "spectrum": _spectrum_info(p)}))
    return _report_max("nijenhuis_fd", pairs, count, _fd_tolerance(cfg))


def _check_closedness(inst, samples):
    cfg = inst.cfg
    count = _fd_count(samples)
    pairs = []
    for index in range(count):
        p = inst.multi_cluster_point()
        a = inst.observable(p.dim)
        b = inst.observable(p.dim)
        c = inst.observable(p.dim)
        residual = closedness_check(a, b, c, p, cfg)
        pairs.append((residual, {"sample": index, "dim": p.dim,
                                 "spectrum": _spectrum_info(p)}))
    return _report_max("closedness_fd", pairs, count, _fd_tolerance(cfg))


def _check_uncertainty_bound(inst, samples):
    cfg = inst.cfg
    pairs = []
    for index in range(samples):
        p = inst.point()
        report = full_report(inst.observable(p.dim), inst.observable(p.dim), p, cfg)
        pairs.append((max(0.0, -report.slack_geometric),
                      {"sample": index, "dim": p.dim,
                       "slack": report.slack_geometric,
                       "spectrum": _spectrum_info(p)}))
    return _report_max("uncertainty_bound", pairs, samples, cfg.tol_check)


def _check_rs_baseline(inst, samples):
    cfg = inst.cfg
    pairs = []
    for index in range(samples):
        p = inst.point()
        report = full_report(inst.observable(p.dim), inst.observable(p.dim), p, cfg)
        pairs.append((max(0.0, -report.slack_rs),
                      {"sample": index, "dim": p.dim, "slack": report.slack_rs,
                       "spectrum": _spectrum_info(p)}))
    return _report_max("rs_baseline", pairs, samples, cfg.tol_check)


def _check_pure_state_equality(inst, samples):
    cfg = inst.cfg
    pairs = []
    for index in range(samples):
        dim = inst.dims[index % len(inst.dims)]
        p = random_density(pure_spectrum(dim, cfg), inst.rng, cfg)
        a = inst.observable(dim)
        x = tangent_map(a, p, cfg)
        bound_term = 0.5 * cfg.hbar * hermitian_product(x, x, cfg).real
        residual = abs(uncertainty(a, p, cfg) ** 2 - bound_term)
        pairs.append((residual, {"sample": index, "dim": dim}))
    return _report_max("pure_state_equality", pairs, samples, cfg.tol_check)


def _check_variance_identity(inst, samples):
    cfg = inst.cfg
    pairs = []
    for index in range(samples):
        p = inst.point()
        a = inst.observable(p.dim)
        delta_perp_sq, sum_plus, sum_minus = variance_decomposition(a, p, cfg)
        variance = uncertainty(a, p, cfg) ** 2
        residual = abs(variance - (delta_perp_sq + sum_plus))
        x = tangent_map(a, p, cfg)
        residual = max(residual, abs(
            sum_minus - 0.5 * cfg.hbar * hermitian_product(x, x, cfg).real))
        residual = max(residual, max(0.0, sum_minus - sum_plus))
        pairs.append((residual, {"sample": index, "dim": p.dim,
                                 "spectrum": _spectrum_info(p)}))
    return _report_max("variance_identity", pairs, samples, cfg.tol_check)


def _check_spectrum_preservation(inst, samples):
    cfg = inst.cfg
    count = _fd_count(samples)
    pairs = []
    for index in range(count):
        p = inst.point(mixed_every=0)
        h = inst.observable(p.dim)
        traj = trajectory(p, h, t_max=1.0, steps=5, cfg=cfg)
        drift = 0.0
        for point in traj.points:
            eigenvalues = np.sort(np.linalg.eigvalsh(point.rho))[::-1]
            drift = max(drift, float(np.max(np.abs(
                eigenvalues - p.spectrum.full_values()))))
        pairs.append((drift, {"sample": index, "dim": p.dim,
                              "spectrum": _spectrum_info(p)}))
    return _report_max("spectrum_preservation", pairs, count, cfg.tol_check)


def _check_flow_composition(inst, samples):
    cfg = inst.cfg
    count = _fd_count(samples)
    pairs = []
    for index in range(count):
        p = inst.point(mixed_every=0)
        h = inst.observable(p.dim)
        s, t = inst.rng.uniform(-1.0, 1.0, size=2)
        two_step = evolve(evolve(p, h, float(s), cfg), h, float(t), cfg)
        one_step = evolve(p, h, float(s + t), cfg)
        residual = float(np.max(np.abs(two_step.rho - one_step.rho)))
        pairs.append((residual, {"sample": index, "dim": p.dim}))
    return _report_max("flow_composition", pairs, count, cfg.tol_check)


def _check_ehrenfest(inst, samples):
    cfg = inst.cfg
    count = _fd_count(samples)
    pairs = []
    for index in range(count):
        p = inst.point(mixed_every=0)
        a = inst.observable(p.dim)
        h = inst.observable(p.dim)
        residual = ehrenfest_check(a, h, p, cfg)
        pairs.append((residual, {"sample": index, "dim": p.dim}))
    return _report_max("ehrenfest", pairs, count, _fd_tolerance(cfg))


_CATALOG = [
    ("j_squared", _check_j_squared),
    ("omega_antisymmetry", _check_omega_antisymmetry),
    ("metric_symmetry", _check_metric_symmetry),
    ("metric_positivity", _check_metric_positivity),
    ("compatibility", _check_compatibility),
    ("hermitian_symmetry", _check_hermitian_symmetry),
    ("block_formula", _check_block_formula),
    ("tangent_roundtrip", _check_tangent_roundtrip),
    ("split_orthogonality", _check_split_orthogonality),
    ("ad_equivariance", _check_ad_equivariance),
    ("gauge_invariance", _check_gauge_invariance),
    ("involutivity", _check_involutivity),
    ("nondegeneracy", _check_nondegeneracy),
    ("nijenhuis_fd", _check_nijenhuis),
    ("closedness_fd", _check_closedness),
    ("uncertainty_bound", _check_uncertainty_bound),
    ("rs_baseline", _check_rs_baseline),
    ("pure_state_equality", _check_pure_state_equality),
    ("variance_identity", _check_variance_identity),
    ("spectrum_preservation", _check_spectrum_preservation),
    ("flow_composition", _check_flow_composition),
    ("ehrenfest", _check_ehrenfest),
]

CHECK_NAMES = tuple(name for name, _ in _CATALOG)


def run_checks(dims=(2, 3, 4, 5, 6), samples: int = 200, seed: int = 0,
               cfg: Config = DEFAULT_CONFIG, perturb_j: float = 0.0,
               names=None, spectra=None) -> list:
    """Run the full invariant catalog (or the named subset).

    Deterministic given the arguments: every check gets its own child stream
    of the seed, so results do not depend on which other checks run. When
    ``spectra`` (a list of :class:`Spectrum`) is given, sampled orbits are
    drawn from it instead of from random spectra over ``dims``.
    """
    dims = tuple(int(d) for d in dims)
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    selected = set(names) if names is not None else None
    unknown = (selected or set()) - set(CHECK_NAMES)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    children = np.random.SeedSequence(seed).spawn(len(_CATALOG))
    reports = []
    for (name, fn), child in zip(_CATALOG, children):
        if selected is not None and name not in selected:
            continue
        inst = _Instances(dims, np.random.default_rng(child), cfg, pool=spectra)
        if name == "j_squared":
            reports.append(fn(inst, samples, perturb_j=perturb_j))
        else:
            reports.append(fn(inst, samples))
    return reports
