import math

import numpy as np
import pytest

from xdeficit import (
    BoundaryKind,
    StateParams,
    TrajectorySpec,
    one_way_deficit,
    solve_halfpi_boundary,
    solve_jump_boundary,
    sweep,
    trace_boundaries,
    trajectory_profile,
)

HALF_PI = math.pi / 2
RES = 120


@pytest.fixture(scope="module")
def small_grid():
    return sweep(resolution=RES, theta_grid=256, threads=1)


@pytest.fixture(scope="module")
def curves():
    return trace_boundaries(resolution=100)


class TestSweep:
    def test_cells_inside_triangle(self, small_grid):
        for cell in small_grid.cells:
            assert cell.q1 + cell.q2 <= 1.0

    def test_area_fraction_near_one_percent(self, small_grid):
        assert 0.005 <= small_grid.area_fraction_interior <= 0.02

    def test_no_unresolved_cells(self, small_grid):
        assert small_grid.unresolved_cells == 0

    def test_branch_labels_mirror_symmetric(self, small_grid):
        labels = {}
        for cell in small_grid.cells:
            i = round(cell.q1 * RES - 0.5)
            j = round(cell.q2 * RES - 0.5)
            labels[(i, j)] = cell.branch
        for (i, j), branch in labels.items():
            assert labels[(j, i)] == branch

    def test_known_cells(self, small_grid):
        by_index = {
            (round(c.q1 * RES - 0.5), round(c.q2 * RES - 0.5)): c for c in small_grid.cells
        }
        center = by_index[(45, 45)]  # cell containing (0.375, 0.375)
        assert center.branch == "AtZero"
        near_axis = by_index[(108, 0)]  # deep inside the half-pi lobe
        assert near_axis.branch == "AtHalfPi"

    def test_interior_cells_confined_to_jump_window(self, small_grid):
        interior = [c for c in small_grid.cells if c.branch == "Interior"]
        assert interior, "expected a nonempty interior phase"
        width = 1.5 / RES
        # spot-check a deterministic subset; each solve costs a trajectory scan
        for cell in interior[:: max(1, len(interior) // 6)]:
            q1, q2 = (cell.q1, cell.q2) if cell.q1 >= cell.q2 else (cell.q2, cell.q1)
            total = q1 + q2
            rec = solve_jump_boundary(TrajectorySpec(total))
            hp = solve_halfpi_boundary(TrajectorySpec(total))
            upper = hp.p.q1 if hp is not None else total
            assert rec is not None
            assert rec.boundary.p.q1 - width <= q1 <= upper + width

    def test_deterministic_across_worker_counts(self):
        a = sweep(resolution=100, theta_grid=128, threads=1)
        b = sweep(resolution=100, theta_grid=128, threads=2)
        assert a.cells == b.cells

    def test_resolution_validation(self):
        with pytest.raises(ValueError):
            sweep(resolution=50)


class TestTrajectoryProfile:
    def test_branch_sequence_on_075(self):
        profile = trajectory_profile(TrajectorySpec(0.75), samples=2000)
        kinds = [(t[1], t[2]) for t in profile.transitions]
        assert kinds == [("AtZero", "Interior"), ("Interior", "AtHalfPi")]
        assert profile.transitions[0][0] == pytest.approx(0.721590, abs=1e-3)
        assert profile.transitions[1][0] == pytest.approx(0.72358, abs=1e-3)

    def test_single_fracture_on_08(self):
        profile = trajectory_profile(TrajectorySpec(0.8), samples=2000)
        assert [(t[1], t[2]) for t in profile.transitions] == [("AtZero", "AtHalfPi")]
        assert profile.transitions[0][0] == pytest.approx(0.769269, abs=1e-3)

    def test_no_transitions_on_low_total(self):
        profile = trajectory_profile(TrajectorySpec(0.2), samples=200)
        assert profile.transitions == []

    def test_deficit_continuous_along_075(self):
        profile = trajectory_profile(TrajectorySpec(0.75), samples=2000)
        deltas = np.array([row.delta for row in profile.rows])
        q2s = np.array([row.q2 for row in profile.rows])
        step = profile.rows[1].q1 - profile.rows[0].q1
        diffs = np.abs(np.diff(deltas))
        # bounded slope through both branch switches; the last fraction of the
        # path is excluded because d(delta)/dq1 grows like log(1/q2) toward
        # the axis contact (the entropy itself, not a branch discontinuity)
        away_from_axis = q2s[:-1] > 5e-3
        assert np.max(diffs[away_from_axis]) < 10.0 * step
        assert np.max(diffs) < 3e-3  # continuous everywhere, just steeper

    def test_fracture_visible_on_08_but_not_on_axis(self):
        h = 1e-4

        def slope_break(fn, q):
            left = (fn(q - h) - fn(q - 2 * h)) / h
            right = (fn(q + 2 * h) - fn(q + h)) / h
            return abs(right - left)

        on_08 = lambda q1: one_way_deficit(StateParams(q1, 0.8 - q1)).delta
        on_axis = lambda q1: one_way_deficit(StateParams(q1, 0.0)).delta
        assert slope_break(on_08, 0.7692693) > 0.05
        assert slope_break(on_axis, 0.5) < 1e-3
        assert slope_break(on_axis, 0.6751510) < 1e-3

    def test_axis_branch_sequence(self):
        profile = trajectory_profile(TrajectorySpec.on_axis(), samples=400)
        for row in profile.rows:
            if 0.01 < row.q1 < 0.49:
                assert row.branch == "AtZero"
            elif 0.51 < row.q1 < 0.665:
                assert row.branch == "Interior"
            elif 0.686 < row.q1 < 0.99:
                assert row.branch == "AtHalfPi"

    def test_samples_validation(self):
        with pytest.raises(ValueError):
            trajectory_profile(TrajectorySpec(0.75), samples=10)


class TestTraceBoundaries:
    def _curves_of(self, curves, kind):
        return [c for c in curves if c.kind is kind and len(c.points) > 1]

    def test_curve_inventory(self, curves):
        assert len(self._curves_of(curves, BoundaryKind.EQUAL_ENDPOINTS)) == 2
        assert len(self._curves_of(curves, BoundaryKind.HALFPI_BIFURCATION)) == 2
        assert len(self._curves_of(curves, BoundaryKind.JUMP_BOUNDARY)) == 2
        marks = [c for c in curves if c.kind is BoundaryKind.ZERO_BIFURCATION_AXIS]
        assert len(marks) == 4 and all(len(c.points) == 1 for c in marks)

    def test_equal_endpoint_curve_anchors(self, curves):
        curve = self._curves_of(curves, BoundaryKind.EQUAL_ENDPOINTS)[0]
        assert curve.points[0].p.q1 == pytest.approx(0.61554, abs=1e-3)
        assert curve.points[0].p.q2 == pytest.approx(0.0, abs=1e-9)
        assert curve.points[-1].p.q1 == pytest.approx(1.0, abs=1e-3)

    def test_halfpi_curve_anchors(self, curves):
        curve = self._curves_of(curves, BoundaryKind.HALFPI_BIFURCATION)[0]
        assert curve.points[0].p.q1 == pytest.approx(0.67515, abs=1e-3)
        assert curve.points[-1].p.q1 == pytest.approx(1.0, abs=1e-3)

    def test_jump_curve_anchors(self, curves):
        curve = self._curves_of(curves, BoundaryKind.JUMP_BOUNDARY)[0]
        assert (curve.points[0].p.q1, curve.points[0].p.q2) == (0.5, 0.0)
        assert curve.points[-1].p.q1 == pytest.approx(0.739409, abs=1e-3)
        assert curve.points[-1].p.q2 == pytest.approx(0.029686, abs=1e-3)

    def test_polylines_have_no_gaps(self, curves):
        for curve in curves:
            assert curve.gaps == []

    def test_residuals_within_tolerance(self, curves):
        for curve in curves:
            for bp in curve.points:
                if not bp.degenerate and bp.kind is not BoundaryKind.BIMODALITY_BIRTH:
                    assert bp.residual < 1e-6

    def test_mirror_curves_are_mirrors(self, curves):
        eq = self._curves_of(curves, BoundaryKind.EQUAL_ENDPOINTS)
        first = [(bp.p.q1, bp.p.q2) for bp in eq[0].points]
        second = [(bp.p.q2, bp.p.q1) for bp in eq[1].points]
        assert first == second

    def test_boundary_curves_meet_near_intersection(self, curves):
        eq = self._curves_of(curves, BoundaryKind.EQUAL_ENDPOINTS)[0]
        hp = self._curves_of(curves, BoundaryKind.HALFPI_BIFURCATION)[0]
        closest = min(
            math.hypot(a.p.q1 - b.p.q1, a.p.q2 - b.p.q2)
            for a in eq.points
            for b in hp.points
        )
        assert closest < 5e-4
