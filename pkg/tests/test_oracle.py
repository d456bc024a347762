import logging
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dragonhull.core import DomainError, make_params, point_w, point_z
from dragonhull.geometry import Polygon, convex_hull, hull_match, max_outward_violation, polygon_distance
from dragonhull.oracle import (
    MAX_DEPTH,
    _arg_case,
    candidate_depth,
    check_disk_property,
    check_invariance,
    check_membership_lemmas,
    empirical_hull,
    sample_attractor,
)
from dragonhull.theory import cell, eta_root, predicted_hull

HEIGHWAY = make_params(math.pi / 4)


def words_oracle(p, depth):
    """All f_w(x), |w| = depth, x in {0, 1}, built by recursion on the outermost symbol."""
    def f(word, z):
        for s in reversed(word):
            z = p.a * z if s == 1 else 1 - p.a.conjugate() * z
        return z

    out = []
    for n in range(2**depth):
        word = [1 + ((n >> i) & 1) for i in range(depth)]
        out += [f(word, 0j), f(word, 1 + 0j)]
    return out


class TestSampling:
    def test_depth_one(self):
        a = HEIGHWAY.a
        pts = sample_attractor(HEIGHWAY, 1).points
        assert len(pts) == 4
        expected = [0, a, 1, 1 - a.conjugate()]
        assert all(min(abs(pts - e)) < 1e-15 for e in expected)

    @pytest.mark.parametrize("depth", [1, 3, 6])
    def test_matches_word_enumeration(self, depth):
        p = make_params(0.6)
        got = np.sort_complex(sample_attractor(p, depth).points)
        want = np.sort_complex(np.array(words_oracle(p, depth)))
        assert np.max(np.abs(got - want)) < 1e-14

    def test_depth_two_inside_predicted(self):
        cloud = sample_attractor(HEIGHWAY, 2)
        assert len(cloud) == 8
        assert max_outward_violation(cloud.points, predicted_hull(HEIGHWAY).polygon) <= 1e-9

    def test_error_bound_value(self):
        r = 2 ** -0.5
        bound = sample_attractor(HEIGHWAY, 20).error_bound
        assert bound == pytest.approx(r**20 / (1 - r), rel=1e-12)
        assert bound == pytest.approx(3.3339e-3, rel=1e-4)

    @pytest.mark.parametrize("depth", [0, MAX_DEPTH + 1, -3])
    def test_depth_range(self, depth):
        with pytest.raises(ValueError):
            sample_attractor(HEIGHWAY, depth)

    def test_size(self):
        assert len(sample_attractor(HEIGHWAY, 12)) == 2**13


class TestEmpiricalHull:
    def test_heighway_ten_vertices(self):
        emp = empirical_hull(HEIGHWAY, 16)
        assert len(emp) == 10
        assert hull_match(predicted_hull(HEIGHWAY).polygon, emp, 1e-6).passed

    def test_pi_over_6(self):
        p = make_params(math.pi / 6)
        emp = empirical_hull(p, 16)
        assert len(emp) == 14
        assert hull_match(predicted_hull(p).polygon, emp, 1e-6).passed

    def test_upper_region_still_polygon(self):
        emp = empirical_hull(make_params(1.0), 14)
        assert isinstance(emp, Polygon) and len(emp) >= 3

    def test_candidate_depth(self):
        assert candidate_depth(HEIGHWAY) == 13
        assert candidate_depth(make_params(1.0)) == 13

    def test_candidates_plus_depth12_samples(self):
        from dragonhull.core import candidate_set

        pts = np.concatenate([[v.point for v in candidate_set(HEIGHWAY, 4)], sample_attractor(HEIGHWAY, 12).points])
        h = convex_hull(pts)
        assert hull_match(predicted_hull(HEIGHWAY).polygon, h, 1e-6).passed

    def test_samples_only_hull_within_error_bound(self):
        # no candidate augmentation: predicted vertices lie within error_bound of the raw samples
        for eta in (math.pi / 4, cell(5).midpoint):
            p = make_params(eta)
            cloud = sample_attractor(p, 16)
            raw = convex_hull(cloud.points)
            for v in predicted_hull(p).polygon.vertices:
                assert polygon_distance(v, raw) <= cloud.error_bound

    @pytest.mark.parametrize("k", range(4, 9))
    def test_samples_inside_predicted(self, k):
        c = cell(k)
        for eta in np.linspace(c.lower, c.upper, 5)[1:-1]:
            p = make_params(float(eta))
            cloud = sample_attractor(p, 16)
            assert max_outward_violation(cloud.points, predicted_hull(p).polygon) <= 1e-9

    @settings(max_examples=10, deadline=None)
    @given(st.floats(0.3, 1.0), st.integers(6, 14))
    def test_depth_monotone(self, eta, depth):
        p = make_params(eta)
        coarse = sample_attractor(p, depth)
        fine = sample_attractor(p, depth + 1)
        assert max_outward_violation(fine.points, convex_hull(coarse.points)) <= coarse.error_bound


class TestInvariance:
    def test_predicted(self):
        assert check_invariance(HEIGHWAY, predicted_hull(HEIGHWAY).polygon)

    def test_unit_square(self):
        square = Polygon.from_vertices([0, 1, 1 + 1j, 1j])
        assert 1 - HEIGHWAY.a.conjugate() * 1j == pytest.approx(1.5 - 0.5j)
        assert not check_invariance(HEIGHWAY, square)

    @pytest.mark.parametrize("k", range(4, 9))
    def test_cell_midpoints(self, k):
        p = make_params(cell(k).midpoint)
        assert check_invariance(p, predicted_hull(p).polygon, 1e-9)


class TestDisk:
    def test_examples(self):
        assert check_disk_property(HEIGHWAY, 3)
        assert check_disk_property(HEIGHWAY, 1)

    def test_ratio(self):
        for k in range(10):
            assert abs(point_z(HEIGHWAY, k + 1)) / abs(point_z(HEIGHWAY, k)) == pytest.approx(HEIGHWAY.mod_a)

    def test_domain(self):
        with pytest.raises(DomainError):
            check_disk_property(make_params(1.0), 3)
        with pytest.raises(ValueError):
            check_disk_property(HEIGHWAY, 0)

    @settings(max_examples=25, deadline=None)
    @given(st.floats(0.05, 0.93), st.integers(1, 10))
    def test_property(self, eta, j):
        if eta < eta_root(4):
            assert check_disk_property(make_params(eta), j)


class TestMembership:
    def test_w0_triangles_at_0_9(self):
        p = make_params(0.9)
        assert point_w(p, 0).real < 0
        rep = check_membership_lemmas(p)
        assert rep.by_name()["w0_triangles"].status == "passed"
        assert rep.passed

    def test_w0_skipped_at_heighway(self):
        rep = check_membership_lemmas(HEIGHWAY)
        assert point_w(HEIGHWAY, 0).real == pytest.approx(1 / 3)
        assert rep.by_name()["w0_triangles"].status == "skipped"
        assert rep.passed

    def test_zero_one_at_pi_over_5(self):
        rep = check_membership_lemmas(make_params(math.pi / 5))
        assert rep.by_name()["zero_one_in_hull"].status == "passed"
        assert rep.passed

    def test_upper_region_skips(self):
        rep = check_membership_lemmas(make_params(1.0))
        assert rep.passed
        assert all(c.status == "skipped" for c in rep.checks if c.name != "w0_triangles")

    def test_arg_tie_goes_to_closed_side(self, caplog):
        eta = 0.5
        z = complex(math.cos(eta), math.sin(eta))
        with caplog.at_level(logging.INFO, logger="dragonhull.oracle"):
            assert _arg_case(z, eta, 1e-12) == "low"
        assert "closed side" in caplog.text
        assert _arg_case(complex(math.cos(0.8), math.sin(0.8)), eta, 1e-12) == "high"

    @settings(max_examples=20, deadline=None)
    @given(st.floats(0.15, 0.93))
    def test_all_membership_checks_hold(self, eta):
        rep = check_membership_lemmas(make_params(eta))
        assert rep.passed, rep.to_dict()
