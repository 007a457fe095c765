import numpy as np
import pytest

from orbit_kahler import (
    DimMismatchError,
    NegativeVarianceError,
    OrbitPoint,
    TheoremViolationError,
    expectation,
    full_report,
    geometric_bound,
    hermitian_product,
    make_hermitian,
    make_spectrum,
    orbit_point,
    random_density,
    rs_bound,
    tangent_map,
    uncertainty,
    variance_decomposition,
)
from orbit_kahler.sampling import gaussian_hermitian, pure_spectrum, random_point


class TestExpectation:
    def test_identity_has_unit_mean(self, qubit_point):
        assert expectation(make_hermitian(np.eye(2)), qubit_point) == pytest.approx(1.0)

    def test_sigma_z_value(self, sigma_z, qubit_point):
        assert expectation(sigma_z, qubit_point) == pytest.approx(0.4, abs=1e-14)

    def test_off_diagonal_observable_vanishes(self, sigma_x, qubit_point):
        assert expectation(sigma_x, qubit_point) == 0.0

    def test_dim_mismatch(self, qubit_point):
        with pytest.raises(DimMismatchError):
            expectation(make_hermitian(np.eye(3)), qubit_point)


class TestUncertainty:
    def test_identity_sharp(self, qubit_point):
        assert uncertainty(make_hermitian(np.eye(2)), qubit_point) == 0.0

    def test_sigma_x_unit_for_any_p(self, sigma_x):
        # Tr(rho sx^2) = 1 and <sx> = 0 whenever rho is diagonal
        for p in (0.55, 0.7, 0.95):
            point = orbit_point(make_hermitian(np.diag([p, 1 - p]).astype(complex)))
            assert uncertainty(sigma_x, point) == pytest.approx(1.0, abs=1e-14)

    def test_sigma_z_value(self, sigma_z, qubit_point):
        assert uncertainty(sigma_z, qubit_point) == pytest.approx(np.sqrt(0.84),
                                                                  abs=1e-14)

    def test_negative_variance_guard(self):
        # white box: a corrupted point with a negative "eigenvalue" makes the
        # variance of the matching projector negative, which must be flagged
        fake = OrbitPoint(rho=np.diag([1.1, -0.1]).astype(complex),
                          spectrum=make_spectrum([1.1, -0.1], [1, 1], density=False),
                          frame=np.eye(2, dtype=complex))
        projector = make_hermitian(np.diag([0.0, 1.0]))
        with pytest.raises(NegativeVarianceError):
            uncertainty(projector, fake)


class TestVarianceDecomposition:
    def test_diagonal_observable_classical(self, qubit_point):
        a = make_hermitian(np.diag([2.0, -1.0]))
        delta_perp_sq, sum_plus, sum_minus = variance_decomposition(a, qubit_point)
        assert sum_plus == 0.0 and sum_minus == 0.0
        # classical variance of (2, -1) under weights (0.7, 0.3)
        mean = 0.7 * 2.0 - 0.3
        expected = 0.7 * 4.0 + 0.3 * 1.0 - mean ** 2
        assert delta_perp_sq == pytest.approx(expected, abs=1e-13)

    def test_pure_state_structure(self):
        rng = np.random.default_rng(0)
        for dim in (2, 4):
            p = random_density(pure_spectrum(dim), rng)
            a = gaussian_hermitian(dim, rng)
            delta_perp_sq, sum_plus, sum_minus = variance_decomposition(a, p)
            assert abs(delta_perp_sq) < 1e-12
            assert sum_plus == pytest.approx(sum_minus, abs=1e-12)

    def test_reassembles_variance(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            dim = int(rng.integers(2, 8))
            p = random_point(dim, rng)
            a = gaussian_hermitian(dim, rng)
            delta_perp_sq, sum_plus, sum_minus = variance_decomposition(a, p)
            assert delta_perp_sq + sum_plus == pytest.approx(
                uncertainty(a, p) ** 2, abs=1e-11)
            assert sum_minus <= sum_plus + 1e-12
            x = tangent_map(a, p)
            assert sum_minus == pytest.approx(
                0.5 * hermitian_product(x, x).real, abs=1e-11)


class TestGeometricBound:
    def test_qubit_closed_form(self, sigma_x, sigma_y):
        for p in np.linspace(0.5, 1.0, 11):
            point = orbit_point(make_hermitian(np.diag([p, 1 - p]).astype(complex)))
            bound = geometric_bound(sigma_x, sigma_y, point)
            assert bound == pytest.approx(abs(2 * p - 1), abs=1e-12)
            product = uncertainty(sigma_x, point) * uncertainty(sigma_y, point)
            assert product == pytest.approx(1.0, abs=1e-13)
            assert product >= bound - 1e-12

    def test_commuting_diagonals_zero(self, qubit_point):
        a = make_hermitian(np.diag([1.0, 2.0]))
        b = make_hermitian(np.diag([3.0, -1.0]))
        assert geometric_bound(a, b, qubit_point) == 0.0

    def test_pre_schwarz_self_bound(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            dim = int(rng.integers(2, 7))
            p = random_point(dim, rng)
            a = gaussian_hermitian(dim, rng)
            assert geometric_bound(a, a, p) <= uncertainty(a, p) ** 2 + 1e-11


class TestRsBound:
    def test_qubit_value(self, sigma_x, sigma_y, qubit_point):
        # anticommutator term 0, commutator term |<sz>| = 0.4
        assert rs_bound(sigma_x, sigma_y, qubit_point) == pytest.approx(0.4, abs=1e-13)

    def test_self_pairing_covariance(self, qubit_point):
        rng = np.random.default_rng(3)
        a = gaussian_hermitian(2, rng)
        variance = uncertainty(a, qubit_point) ** 2
        assert rs_bound(a, a, qubit_point) == pytest.approx(variance, abs=1e-11)

    def test_never_violated_random_sweep(self):
        rng = np.random.default_rng(4)
        for _ in range(500):
            dim = int(rng.integers(2, 8))
            p = random_point(dim, rng)
            a = gaussian_hermitian(dim, rng)
            b = gaussian_hermitian(dim, rng)
            product = uncertainty(a, p) * uncertainty(b, p)
            assert product >= rs_bound(a, b, p) - 1e-10


class TestFullReport:
    def test_qubit_reference_case(self, sigma_x, sigma_y, qubit_point):
        report = full_report(sigma_x, sigma_y, qubit_point)
        assert report.deltaA == pytest.approx(1.0, abs=1e-13)
        assert report.deltaB == pytest.approx(1.0, abs=1e-13)
        assert report.product == pytest.approx(1.0, abs=1e-13)
        assert report.geometric_bound == pytest.approx(0.4, abs=1e-13)
        assert report.rs_bound == pytest.approx(0.4, abs=1e-13)
        assert report.slack_geometric == pytest.approx(0.6, abs=1e-13)
        assert report.slack_rs == pytest.approx(0.6, abs=1e-13)

    def test_identity_pair_all_zero(self, qubit_point):
        eye = make_hermitian(np.eye(2))
        report = full_report(eye, eye, qubit_point)
        assert report.deltaA == report.deltaB == report.product == 0.0
        assert report.geometric_bound == 0.0 and report.rs_bound == 0.0

    def test_single_cluster_orbit_zero_bounds(self):
        p = orbit_point(make_hermitian(np.eye(3) / 3.0))
        rng = np.random.default_rng(5)
        report = full_report(gaussian_hermitian(3, rng), gaussian_hermitian(3, rng), p)
        assert report.geometric_bound <= 1e-13

    def test_pure_state_self_slack_zero(self):
        rng = np.random.default_rng(6)
        p = random_density(pure_spectrum(3), rng)
        a = gaussian_hermitian(3, rng)
        report = full_report(a, a, p)
        # bound = (1/2) h(X_A, X_A) = dA^2 = product for pure states
        assert report.slack_geometric == pytest.approx(0.0, abs=1e-11)

    def test_shift_invariance(self):
        rng = np.random.default_rng(7)
        p = random_point(4, rng)
        a = gaussian_hermitian(4, rng)
        b = gaussian_hermitian(4, rng)
        shifted = a + 3.7 * make_hermitian(np.eye(4))
        before = full_report(a, b, p)
        after = full_report(shifted, b, p)
        assert after.deltaA == pytest.approx(before.deltaA, abs=1e-11)
        assert after.geometric_bound == pytest.approx(before.geometric_bound, abs=1e-11)
        assert after.rs_bound == pytest.approx(before.rs_bound, abs=1e-11)
        assert after.slack_geometric == pytest.approx(before.slack_geometric, abs=1e-11)

    def test_theorem_violation_guard(self, sigma_x, sigma_y, qubit_point):
        # white box: lie about the spectrum so the lifted generator (and with
        # it the bound) is inflated past the product; must raise, not return
        lying = OrbitPoint(rho=qubit_point.rho,
                           spectrum=make_spectrum([0.55, 0.45], [1, 1]),
                           frame=qubit_point.frame)
        with pytest.raises(TheoremViolationError):
            full_report(sigma_x, sigma_y, lying)
