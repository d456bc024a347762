import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dragonhull import theory
from dragonhull.checks import angles, corner_angles, orientation_signs, signs
from dragonhull.core import DomainError, make_params, point_z
from dragonhull.geometry import is_convex_clockwise
from dragonhull.theory import (
    BoundaryAmbiguous,
    BoundaryAmbiguousError,
    BracketSignError,
    PartitionCell,
    UpperRegion,
    UpperRegionError,
    bisect,
    cell,
    eta_root,
    partition_cell,
    phi,
    phi_alt,
    predicted_hull,
    psi,
    remark62_check,
    escape_quartic,
    escape_quartic_derivative,
    root_bracket,
    theta,
)

mpmath.mp.dps = 50
ETA4_CLOSED = math.acos(2 ** -0.75)
etas = st.floats(min_value=1e-3, max_value=math.pi / 3 - 1e-3)
ks = st.integers(1, 40)


# high-precision oracles, written from the trigonometric definitions
def mp_mod(eta):
    return 1 / (2 * mpmath.cos(eta))


def mp_phi(eta, k):
    m = mp_mod(eta)
    return (1 - m**4) * mpmath.sin((k - 1) * eta) - m**3 * mpmath.sin((k - 2) * eta) + m**k * mpmath.sin(eta)


def mp_theta(eta, k):
    m = mp_mod(eta)
    return (1 - m**4) * mpmath.sin(eta) + m ** (k + 1) * mpmath.sin(k * eta)


def mp_psi(eta, k):
    m = mp_mod(eta)
    return mpmath.sin(eta) + m ** (k - 2) * mpmath.sin((k + 1) * eta)


def mp_root(k):
    # Phi_4 also vanishes at pi/3, so pull that bracket end inward
    hi = mpmath.pi / 3 - mpmath.mpf("0.01") if k == 4 else mpmath.pi / (k - 1)
    lo = mpmath.pi / k
    assert mp_phi(lo, k) > 0 > mp_phi(hi, k)
    return mpmath.findroot(lambda e: mp_phi(e, k), (lo, hi), solver="anderson")


class TestSignFunctions:
    p = make_params(math.pi / 4)

    def test_heighway_values(self):
        assert phi(self.p, 4) == pytest.approx(math.sqrt(2) / 4, abs=1e-12)
        assert phi(self.p, 5) == pytest.approx(-0.125, abs=1e-12)
        assert theta(self.p, 4) == pytest.approx(0.53033, abs=1e-5)
        assert psi(self.p, 4) == pytest.approx(0.35355, abs=1e-5)

    def test_pi_over_6_k1(self):
        assert phi(make_params(math.pi / 6), 1) == pytest.approx(0.3849, abs=1e-4)
        assert phi(make_params(math.pi / 6), 1) == pytest.approx(float(mp_phi(mpmath.pi / 6, 1)), abs=1e-14)

    def test_k_zero(self):
        for f in (phi, phi_alt, theta, psi):
            with pytest.raises(ValueError):
                f(self.p, 0)

    @given(etas, ks)
    def test_against_mpmath(self, eta, k):
        p = make_params(eta)
        e = mpmath.mpf(eta)
        assert phi(p, k) == pytest.approx(float(mp_phi(e, k)), abs=1e-12)
        assert theta(p, k) == pytest.approx(float(mp_theta(e, k)), abs=1e-12)
        assert psi(p, k) == pytest.approx(float(mp_psi(e, k)), abs=1e-12)

    @given(etas, ks)
    def test_two_forms_agree(self, eta, k):
        p = make_params(eta)
        assert phi(p, k) == pytest.approx(phi_alt(p, k), abs=1e-12)
        assert theory.phi_at(eta, k) == pytest.approx(phi(p, k), abs=1e-14)


class TestRoots:
    def test_eta4_closed_form(self):
        assert abs(eta_root(4) - ETA4_CLOSED) < 1e-10

    @pytest.mark.parametrize("k", range(4, 21))
    def test_against_mpmath(self, k):
        assert abs(eta_root(k) - float(mp_root(k))) < 1e-12

    def test_eta5_in_bracket(self):
        assert math.pi / 5 < eta_root(5) < math.pi / 4

    def test_decreasing(self):
        table = [eta_root(k) for k in range(4, 31)]
        assert all(b < a for a, b in zip(table, table[1:]))

    def test_k3_rejected(self):
        with pytest.raises(ValueError):
            eta_root(3)
        with pytest.raises(ValueError):
            root_bracket(2)

    def test_phi4_vanishes_at_pi_over_3(self):
        # |a| = 1 at pi/3, so the two leading terms cancel exactly
        assert float(mp_phi(mpmath.pi / 3, 4)) == pytest.approx(0, abs=1e-40)
        assert abs(theory.phi_at(math.pi / 3, 4)) <= 1e-15
        assert theory.phi_at(math.pi / 3 - 1e-6, 4) < 0

    def test_bad_bracket_detected(self, monkeypatch):
        monkeypatch.setattr(theory, "phi_at", lambda eta, k: -1.0)
        with pytest.raises(BracketSignError):
            eta_root.__wrapped__(6)

    def test_bisect(self):
        assert bisect(lambda x: 2 - x * x, 0, 2) == pytest.approx(math.sqrt(2), abs=1e-12)
        assert bisect(lambda x: 1 - x, 0, 2) == 1.0


class TestPartition:
    def test_examples(self):
        c = partition_cell(math.pi / 4)
        assert isinstance(c, PartitionCell) and c.k == 4
        assert isinstance(partition_cell(1.0), UpperRegion)
        assert partition_cell(math.pi / 6).k == 6

    def test_boundary(self):
        res = partition_cell(eta_root(5))
        assert isinstance(res, BoundaryAmbiguous) and res.k == 5

    @pytest.mark.parametrize("eta", [0.0, math.pi / 3, 2.0, float("nan")])
    def test_domain(self, eta):
        with pytest.raises(DomainError):
            partition_cell(eta)

    @settings(max_examples=200)
    @given(st.floats(min_value=0.05, max_value=0.93))
    def test_cell_contains_eta(self, eta):
        res = partition_cell(eta)
        if isinstance(res, PartitionCell):
            assert res.lower < eta < res.upper
            assert math.pi / (res.k + 1) < eta < math.pi / (res.k - 1)
            assert res == cell(res.k)

    def test_cells_tile(self):
        for k in range(4, 20):
            assert cell(k).lower == cell(k + 1).upper

    def test_invalid_cell(self):
        with pytest.raises(ValueError):
            PartitionCell(4, 0.9, 0.8)


class TestPredictedHull:
    def test_heighway(self):
        h = predicted_hull(make_params(math.pi / 4))
        assert h.k == 4 and len(h.vertices) == 10
        assert h.labels == ["b0", "z0", "z1", "z2", "z3", "z4", "w1", "w2", "w3", "w4"]

    def test_pi_over_6(self):
        assert len(predicted_hull(make_params(math.pi / 6)).vertices) == 14

    def test_upper_region(self):
        with pytest.raises(UpperRegionError):
            predicted_hull(make_params(1.0))

    def test_at_eta4_octagon(self):
        h = predicted_hull(make_params(eta_root(4)))
        assert len(h.vertices) == 8

    def test_ambiguous_boundary(self):
        with pytest.raises(BoundaryAmbiguousError):
            predicted_hull(make_params(eta_root(6)))

    @settings(max_examples=60, deadline=None)
    @given(st.floats(min_value=0.15, max_value=0.933))
    def test_vertex_count_and_convexity(self, eta):
        try:
            h = predicted_hull(make_params(eta))
        except BoundaryAmbiguousError:
            return
        assert len(h.vertices) == 2 * h.k + 2
        assert is_convex_clockwise([v.point for v in h.vertices])


class TestSignIdentities:
    def test_sign_grid(self):
        assert signs(range(4, 8), n=25).passed

    @settings(max_examples=30, deadline=None)
    @given(st.floats(min_value=0.05, max_value=math.pi / 3 - 0.05))
    def test_orientation_signs_follow_phi_psi(self, eta):
        assert orientation_signs([eta]).passed

    @settings(max_examples=30, deadline=None)
    @given(st.floats(min_value=0.05, max_value=math.pi / 3 - 0.05))
    def test_turning_angle(self, eta):
        assert angles([eta]).passed

    def test_corner_angles(self):
        assert corner_angles(range(4, 8), n=20).passed

    def test_z_tail_decays_to_zero(self):
        p = make_params(0.5)
        assert abs(point_z(p, 200)) < 1e-20


class TestZ6Escape:
    def test_polynomial(self):
        assert escape_quartic(1.0) == 0
        assert escape_quartic_derivative(1.0) == -1
        # derivative oracle: central difference
        x, h = 0.7, 1e-6
        central = (escape_quartic(x + h) - escape_quartic(x - h)) / (2 * h)
        assert escape_quartic_derivative(x) == pytest.approx(central, abs=1e-6)

    def test_report_near_pi_over_3(self):
        rep = remark62_check(make_params(math.pi / 3 - 0.01))
        assert rep.im_value == pytest.approx(6.37, abs=0.01)
        assert rep.h_value > 0
        assert rep.z6_containment == "inside"
        assert not rep.z6_outside
        d = rep.to_dict()
        assert d["h_prime_at_1_positive"] is False
