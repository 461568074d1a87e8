import math

import numpy as np
import pytest

from quasiherm import (
    DimerParams,
    EPRegion,
    FermionicParams,
    InvalidCoupling,
    SingularDysonMap,
    bch_conjugation_check,
    dimer_build,
    dimer_from_coupling,
    dimer_params,
    ep_scan,
    fermionic_build,
    fermionic_from_fock,
)

LOG2 = math.log(2.0)


class TestDimerParams:
    def test_from_rapidity(self):
        p = dimer_params(1.0, LOG2)
        assert p.kappa == pytest.approx(1.25, abs=1e-14)
        assert p.gamma == pytest.approx(0.75, abs=1e-14)

    def test_from_coupling(self):
        p = dimer_from_coupling(1.25, 0.75)
        assert p.omega == pytest.approx(1.0, abs=1e-14)
        assert p.alpha == pytest.approx(LOG2, abs=1e-14)

    def test_round_trip(self):
        p = dimer_params(0.7, -1.3)
        q = dimer_from_coupling(p.kappa, p.gamma)
        assert q.omega == pytest.approx(p.omega, rel=1e-13)
        assert q.alpha == pytest.approx(p.alpha, rel=1e-13)

    def test_trivial_coupling(self):
        p = dimer_from_coupling(1.0, 0.0)
        assert p.omega == 1.0
        assert p.alpha == 0.0

    def test_ep_region_rejected(self):
        with pytest.raises(EPRegion):
            dimer_from_coupling(1.0, 1.0)
        with pytest.raises(EPRegion):
            dimer_from_coupling(1.0, -1.5)
        with pytest.raises(EPRegion):
            DimerParams(omega=1.0, alpha=0.0, kappa=1.0, gamma=1.0)

    def test_bad_scalars_rejected(self):
        with pytest.raises(ValueError):
            dimer_params(-1.0, 0.0)
        with pytest.raises(ValueError):
            dimer_from_coupling(0.0, 0.0)

    def test_inconsistent_fields_rejected(self):
        with pytest.raises(ValueError):
            DimerParams(omega=1.0, alpha=0.0, kappa=2.0, gamma=0.0)
        with pytest.raises(ValueError):
            DimerParams(omega=1.0, alpha=0.5, kappa=1.25, gamma=0.75)


class TestDimerBuild:
    def test_zero_rapidity(self):
        h, omega_map, big_h, theta = dimer_build(dimer_params(1.0, 0.0))
        sx = np.array([[0.0, 1.0], [1.0, 0.0]])
        assert np.allclose(h, sx)
        assert np.allclose(omega_map, np.eye(2))
        assert np.allclose(big_h, sx)
        assert np.allclose(theta, np.eye(2))

    def test_log_two_rapidity(self):
        h, omega_map, big_h, theta = dimer_build(dimer_params(1.0, LOG2))
        assert np.linalg.norm(big_h - np.array([[0.75j, 1.25], [1.25, -0.75j]])) < 1e-14
        assert np.linalg.norm(theta - np.array([[1.25, -0.75j], [0.75j, 1.25]])) < 1e-14
        ch = 3.0 / (2.0 * np.sqrt(2.0))
        sh = 1.0 / (2.0 * np.sqrt(2.0))
        assert np.linalg.norm(omega_map - np.array([[ch, -1j * sh], [1j * sh, ch]])) < 1e-14
        assert np.allclose(h, np.array([[0.0, 1.0], [1.0, 0.0]]))

    @pytest.mark.parametrize("omega", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("alpha", [-2.0, -0.5, 0.0, 1.0, 3.0])
    def test_mutual_consistency(self, omega, alpha):
        p = dimer_params(omega, alpha)
        h, omega_map, big_h, theta = dimer_build(p)
        scale = np.linalg.norm(big_h)
        inv = np.linalg.inv(omega_map)
        assert np.linalg.norm(omega_map @ big_h @ inv - h) < 1e-12 * scale
        assert np.linalg.norm(omega_map.conj().T @ omega_map - theta) < 1e-12 * np.linalg.norm(theta)
        assert np.allclose(
            np.linalg.eigvalsh(theta),
            np.sort([np.exp(-alpha), np.exp(alpha)]),
            rtol=1e-12,
        )
        eigs = np.sort(np.linalg.eigvals(big_h).real)
        assert np.allclose(eigs, [-omega, omega], atol=1e-12 * max(scale, 1.0))


class TestBchConjugation:
    def test_zero_rapidity(self):
        rx, rz = bch_conjugation_check(0.0)
        assert rx < 1e-15
        assert rz < 1e-15

    def test_log_two(self):
        rx, rz = bch_conjugation_check(LOG2)
        assert rx < 1e-14
        assert rz < 1e-14

    def test_large_negative(self):
        rx, rz = bch_conjugation_check(-3.0)
        assert rx < 1e-12
        assert rz < 1e-12


class TestEpScan:
    def test_locates_the_exceptional_point(self):
        grid = 0.0 + np.arange(201) * 0.01
        report = ep_scan(1.0, grid)
        assert report.ep_locations.size == 1
        assert 0.99 <= report.ep_locations[0] <= 1.01
        assert report.is_ep[100]
        assert np.sum(report.is_ep) == 1

    def test_safe_region_is_clean(self):
        grid = np.linspace(0.05, 0.45, 41)
        report = ep_scan(1.0, grid)
        assert report.ep_locations.size == 0
        assert not report.is_ep.any()

    def test_gap_value_inside_real_phase(self):
        report = ep_scan(1.25, np.array([0.75]))
        # eigenvalues are +-omega with omega = sqrt(kappa^2 - gamma^2) = 1
        assert report.min_gap[0] == pytest.approx(2.0, abs=1e-12)
        assert report.eigvec_cond[0] < 1e3

    def test_normal_point_has_unit_condition(self):
        report = ep_scan(1.0, np.array([0.0]))
        assert report.eigvec_cond[0] == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize("kappa", [0.5, 1.0, 1.6, 2.5])
    def test_locates_ep_for_varied_couplings(self, kappa):
        step = 0.01
        grid = np.arange(0.0, 2.0 * kappa + step / 2.0, step)
        report = ep_scan(kappa, grid)
        assert report.ep_locations.size == 1
        assert abs(report.ep_locations[0] - kappa) <= step + 1e-12

    def test_input_validation(self):
        with pytest.raises(ValueError):
            ep_scan(0.0, np.array([0.1]))
        with pytest.raises(ValueError):
            ep_scan(1.0, np.array([]))
        with pytest.raises(ValueError):
            ep_scan(1.0, np.array([0.2, 0.1]))


class TestFermionicParams:
    def test_derived_quantities(self):
        p = FermionicParams(alpha=4.0, beta=1.0, omega=0.3)
        assert p.sqrt_ab == pytest.approx(2.0)
        assert p.det_D == pytest.approx(-1.0)

    def test_coupling_sign_rejected(self):
        with pytest.raises(InvalidCoupling):
            FermionicParams(alpha=1.0, beta=-1.0, omega=0.5)
        with pytest.raises(InvalidCoupling):
            FermionicParams(alpha=0.0, beta=1.0, omega=0.5)

    def test_omega_window(self):
        with pytest.raises(ValueError):
            FermionicParams(alpha=1.0, beta=1.0, omega=0.0)
        with pytest.raises(ValueError):
            FermionicParams(alpha=1.0, beta=1.0, omega=1.0)
        with pytest.raises(ValueError):
            FermionicParams(alpha=1.0, beta=1.0, omega=1.5)

    def test_singular_determinant_rejected(self):
        root5 = math.sqrt(5.0)
        with pytest.raises(SingularDysonMap):
            FermionicParams(alpha=(3.0 + root5) / 2.0, beta=(3.0 - root5) / 2.0, omega=0.5)


class TestFermionicBuild:
    def test_reference_point_entries(self):
        p = FermionicParams(alpha=4.0, beta=1.0, omega=0.3)
        big_h, h, omega_inv, omega_map, theta = fermionic_build(p)
        assert big_h[0, 3] == 4.0 and big_h[3, 0] == 1.0
        assert np.allclose(np.diag(big_h), [0.0, 0.3, 0.7, 1.0])
        assert h[0, 3] == 2.0 and h[3, 0] == 2.0
        assert omega_inv[0, 3] == 2.0 and omega_inv[3, 0] == 1.0
        assert np.allclose(np.diag(theta).real, [2.0, 1.0, 1.0, 5.0])
        assert theta[0, 3] == pytest.approx(-3.0)
        assert theta[3, 0] == pytest.approx(-3.0)

    def test_reference_point_energies(self):
        p = FermionicParams(alpha=4.0, beta=1.0, omega=0.3)
        big_h, h, _oi, _o, _t = fermionic_build(p)
        lo = (1.0 - math.sqrt(17.0)) / 2.0
        hi = (1.0 + math.sqrt(17.0)) / 2.0
        assert np.allclose(np.sort(np.linalg.eigvals(big_h).real), [lo, 0.3, 0.7, hi], atol=1e-12)
        assert np.allclose(np.linalg.eigvalsh(h), [lo, 0.3, 0.7, hi], atol=1e-12)

    def test_equal_couplings_collapse_to_hermitian(self):
        p = FermionicParams(alpha=1.5, beta=1.5, omega=0.25)
        big_h, h, omega_inv, omega_map, theta = fermionic_build(p)
        assert np.allclose(big_h, h)
        assert np.allclose(omega_map, np.eye(4))
        assert np.allclose(omega_inv, np.eye(4))
        assert np.allclose(theta, np.eye(4))

    @pytest.mark.parametrize(
        "alpha,beta,omega",
        [(4.0, 1.0, 0.3), (2.0, 0.5, 0.7), (-1.0, -2.0, 0.5), (1.5, 1.5, 0.25), (0.3, 0.9, 0.6)],
    )
    def test_mutual_consistency(self, alpha, beta, omega):
        p = FermionicParams(alpha=alpha, beta=beta, omega=omega)
        big_h, h, omega_inv, omega_map, theta = fermionic_build(p)
        assert np.linalg.norm(omega_map @ omega_inv - np.eye(4)) < 1e-13
        scale = np.linalg.norm(big_h)
        assert np.linalg.norm(omega_map @ big_h @ omega_inv - h) < 1e-12 * scale
        assert np.linalg.norm(omega_map.conj().T @ omega_map - theta) < 1e-12 * np.linalg.norm(theta)
        # metric intertwines H and the twin spectra agree
        res = big_h.conj().T @ theta - theta @ big_h
        assert np.linalg.norm(res) < 1e-12 * scale * np.linalg.norm(theta)
        assert np.allclose(
            np.sort(np.linalg.eigvals(big_h).real), np.linalg.eigvalsh(h), atol=1e-11 * scale
        )
        assert np.min(np.linalg.eigvalsh(theta)) > 0


class TestFermionicFromFock:
    def test_matches_closed_form(self):
        p = FermionicParams(alpha=4.0, beta=1.0, omega=0.3)
        big_h, _h, _oi, _o, _t = fermionic_build(p)
        assert np.max(np.abs(fermionic_from_fock(p) - big_h)) <= 1e-15

    @pytest.mark.parametrize(
        "alpha,beta,omega",
        [(2.0, 0.5, 0.7), (-1.0, -2.0, 0.5), (1.5, 1.5, 0.25), (0.3, 0.9, 0.6)],
    )
    def test_matches_closed_form_grid(self, alpha, beta, omega):
        p = FermionicParams(alpha=alpha, beta=beta, omega=omega)
        big_h, _h, _oi, _o, _t = fermionic_build(p)
        assert np.max(np.abs(fermionic_from_fock(p) - big_h)) <= 1e-15

    def test_operator_actions_on_basis_states(self):
        p = FermionicParams(alpha=4.0, beta=1.0, omega=0.3)
        h = fermionic_from_fock(p)
        # pair creation out of the vacuum, pair annihilation out of |11>
        assert np.allclose(h[:, 0], [0.0, 0.0, 0.0, 1.0])
        assert np.allclose(h[:, 3], [4.0, 0.0, 0.0, 1.0])
        # singly occupied states only pick up their mode energy
        assert np.allclose(h[:, 1], [0.0, 0.3, 0.0, 0.0])
        assert np.allclose(h[:, 2], [0.0, 0.0, 0.7, 0.0])
