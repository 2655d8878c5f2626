import math

import numpy as np
import pytest

from conftest import ACUTE, OBTUSE, UNIT_SQUARE, ggr_grid_fixture, largest_angle, perturbed_square
from pcfiber.exceptions import AngleViolation, InputError, NotApplicable
from pcfiber.fiber import (NOT_APPLICABLE, cech_local_identifiability, fiber_dim_bounds, generate_chain_cloud,
                           genericity_diagnostics, identify, identify_all, local_fiber_dimension,
                           vr_global_identifiability_sufficient, vr_local_identifiability)
from pcfiber.geometry import PointCloud, random_rigid_motion
from pcfiber.persistence import barcodes


class TestBounds:
    @pytest.mark.parametrize("n,d,k,expected", [(1, 2, 1, (2, 2)), (3, 2, 3, (4, 4)), (4, 2, 6, (3, 5))])
    def test_examples(self, n, d, k, expected):
        assert fiber_dim_bounds(n, d, k) == expected

    @pytest.mark.parametrize("args", [(0, 2, 1), (2, 0, 1), (2, 2, 0), (2.5, 2, 1)])
    def test_rejects_bad(self, args):
        with pytest.raises(InputError):
            fiber_dim_bounds(*args)


class TestLocalFiberDimension:
    @pytest.mark.parametrize("kind", ["vr", "cech"])
    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_two_points(self, kind, d):
        P = np.random.default_rng(d).normal(size=(2, d))
        assert local_fiber_dimension(P, kind) == 2 * d - 1

    def test_single_point(self):
        assert local_fiber_dimension([[1.0, 2.0]], "vr") == 2

    @pytest.mark.parametrize("seed", range(10))
    def test_triangle_vr(self, seed):
        # k = 3: two edge deaths plus zero; fiber has dimension 6 - 2 = 4
        P = np.random.default_rng(seed).uniform(size=(3, 2))
        assert local_fiber_dimension(P, "vr") == 4

    @pytest.mark.parametrize("seed", range(10))
    def test_triangle_cech(self, seed):
        P = np.random.default_rng(seed).uniform(size=(3, 2))
        expected = 4 if largest_angle(P) > math.pi / 2 else 3
        assert local_fiber_dimension(P, "cech") == expected

    @pytest.mark.parametrize("kind", ["vr", "cech"])
    @pytest.mark.parametrize("n,d", [(4, 2), (5, 2), (5, 3), (6, 3)])
    def test_sandwich(self, kind, n, d):
        for seed in range(5):
            P = PointCloud(np.random.default_rng(100 * n + seed).normal(size=(n, d)))
            r = identify(P, kind)
            assert r.lower_bound <= r.local_fiber_dim <= r.upper_bound
            assert r.local_fiber_dim == local_fiber_dimension(P, kind)

    def test_motion_invariant(self, rng):
        P = PointCloud(rng.normal(size=(6, 2)))
        Q = random_rigid_motion(P, rng)
        for kind in ("vr", "cech"):
            assert local_fiber_dimension(P, kind) == local_fiber_dimension(Q, kind)


class TestVerdicts:
    @pytest.mark.parametrize("seed", range(10))
    def test_three_points_not_vr_identifiable(self, seed):
        assert not vr_local_identifiability(np.random.default_rng(seed).uniform(size=(3, 2)))

    @pytest.mark.parametrize("seed", range(5))
    def test_perturbed_square(self, seed):
        P = perturbed_square(seed)
        assert vr_local_identifiability(P)
        assert vr_global_identifiability_sufficient(P) is False

    def test_grid_globally_identifiable(self):
        P = ggr_grid_fixture()
        assert vr_local_identifiability(P)
        assert vr_global_identifiability_sufficient(P) is True

    def test_global_not_applicable(self):
        with pytest.raises(NotApplicable):
            vr_global_identifiability_sufficient(np.random.default_rng(0).uniform(size=(3, 2)))
        with pytest.raises(NotApplicable):
            vr_global_identifiability_sufficient(np.random.default_rng(0).uniform(size=(5, 1)))

    def test_acute_obtuse(self):
        assert cech_local_identifiability(ACUTE)
        assert not cech_local_identifiability(OBTUSE)

    def test_two_points_on_a_line(self):
        X = [[0.0], [1.5]]
        assert vr_local_identifiability(X) and cech_local_identifiability(X)

    def test_global_implies_local(self):
        for seed in range(20):
            rng = np.random.default_rng(seed)
            X = rng.normal(size=(int(rng.integers(4, 8)), 2))
            if vr_global_identifiability_sufficient(X):
                assert vr_local_identifiability(X)
        assert vr_local_identifiability(ggr_grid_fixture())

    def test_global_3d_randomized_seeded(self, rng):
        P = rng.normal(size=(6, 3))
        assert vr_global_identifiability_sufficient(P, seed=1) == vr_global_identifiability_sufficient(P, seed=1)


class TestReport:
    def test_three_points(self):
        r = identify(OBTUSE, "vr")
        assert (r.n, r.d, r.k) == (3, 2, 3)
        assert (r.lower_bound, r.upper_bound, r.local_fiber_dim) == (4, 4, 4)
        assert r.vr_locally_identifiable is False
        assert r.vr_globally_identifiable_sufficient == NOT_APPLICABLE
        assert r.cech_locally_identifiable is False

    def test_json_keys(self):
        js = identify(perturbed_square(0), "cech", seed=3).to_json()
        assert js["filtration"] == "cech" and js["seed"] == 3
        for key in ("version", "k", "fiber_dim_lower_bound", "fiber_dim_upper_bound", "local_fiber_dim",
                    "vr_locally_identifiable", "vr_globally_identifiable_sufficient",
                    "cech_locally_identifiable", "genericity_flags", "diagnostics"):
            assert key in js

    def test_identify_all_consistent(self):
        P = perturbed_square(1)
        both = identify_all(P)
        assert set(both) == {"vr", "cech"}
        assert both["vr"].to_json() == identify(P, "vr").to_json()

    def test_two_points_one_dim(self):
        r = identify([[0.0], [1.0]], "vr")
        assert r.vr_locally_identifiable is True
        assert r.vr_globally_identifiable_sufficient == NOT_APPLICABLE
        assert r.local_fiber_dim == 1

    def test_collinear_verdict_unavailable(self):
        P = [[0.0, 0.0], [1.0, 0.0], [2.5, 0.0], [4.5, 0.0]]
        r = identify(P, "vr")
        codes = {w.code for w in r.genericity_flags}
        assert "affine_dependence" in codes and "verdict_unavailable" in codes


class TestDiagnostics:
    def test_random_cloud_clean(self, rng):
        assert genericity_diagnostics(rng.normal(size=(6, 2))) == []

    def test_unit_square(self):
        codes = {w.code for w in genericity_diagnostics(UNIT_SQUARE)}
        assert "coincident_distances" in codes
        assert "support_degeneracy" in codes or "unforced_cech_ties" in codes

    def test_collinear(self):
        codes = {w.code for w in genericity_diagnostics([[0.0, 0.0], [1.0, 0.0], [3.0, 0.0]])}
        assert "affine_dependence" in codes

    def test_json(self):
        w = genericity_diagnostics(UNIT_SQUARE)[0]
        assert set(w.to_json()) == {"code", "message", "items"}


class TestChain:
    def test_example(self):
        P = generate_chain_cloud(3, [0.5, 0.7], [0.1, -0.2])
        assert np.allclose(P.coords[0], 0.0)
        assert np.linalg.norm(P.coords[1] - P.coords[0]) == pytest.approx(1.0)

    @pytest.mark.parametrize("seed", range(5))
    def test_barcode(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(3, 9))
        radii = rng.permutation(np.linspace(0.5, 2.0, n - 1))
        P = generate_chain_cloud(n, radii, rng.uniform(-0.2, 0.2, n - 1))
        D = barcodes(P, "cech")
        assert all(len(bc) == 0 for k, bc in D if k >= 1)
        deaths = sorted(iv.death for iv in D[0] if iv.is_finite)
        assert deaths == pytest.approx(sorted(radii), rel=1e-9)

    def test_errors(self):
        with pytest.raises(AngleViolation):
            generate_chain_cloud(3, [1.0, 1.0], [0.1, math.pi / 4])
        with pytest.raises(InputError):
            generate_chain_cloud(3, [1.0, -1.0], [0.1, 0.1])
        with pytest.raises(InputError):
            generate_chain_cloud(3, [1.0], [0.1])
        with pytest.raises(AngleViolation):
            generate_chain_cloud(2, [1.0], [-math.pi / 4])
