import math

import pytest

from xdeficit import (
    BoundaryKind,
    StateParams,
    TrajectorySpec,
    bimodality_birth,
    curves_intersection,
    endpoint_entropy_halfpi,
    endpoint_entropy_zero,
    interior_minimum,
    jump_angle_table,
    solve_equal_endpoints,
    solve_halfpi_boundary,
    solve_jump_boundary,
    zero_boundary_axis,
)
from xdeficit.core import s2_halfpi, s2_zero_axis

HALF_PI = math.pi / 2


class TestTrajectorySpec:
    def test_diagonal_range(self):
        traj = TrajectorySpec(0.75)
        lo, hi = traj.q1_range()
        assert (lo, hi) == (0.375, 0.75)
        assert traj.state(0.7).q2 == pytest.approx(0.05)

    def test_axis(self):
        traj = TrajectorySpec.on_axis()
        assert traj.state(0.3) == StateParams(0.3, 0.0)

    def test_rejects_bad_total(self):
        with pytest.raises(ValueError):
            TrajectorySpec(0.0)
        with pytest.raises(ValueError):
            TrajectorySpec(1.2)


class TestEqualEndpoints:
    def test_axis_root(self):
        bp = solve_equal_endpoints(TrajectorySpec.on_axis())
        assert bp.p.q1 == pytest.approx(0.61554, abs=1e-4)
        assert bp.p.q1 == pytest.approx(0.6155418, abs=2e-6)
        assert bp.residual < 1e-6

    def test_total_08(self):
        bp = solve_equal_endpoints(TrajectorySpec(0.8))
        assert bp.p.q1 == pytest.approx(0.769269, abs=1e-4)

    def test_no_root_on_low_total(self):
        assert solve_equal_endpoints(TrajectorySpec(0.2)) is None

    def test_mirror_symmetry_of_defining_gap(self):
        bp = solve_equal_endpoints(TrajectorySpec(0.8))
        mirror = bp.p.swapped()
        gap = endpoint_entropy_zero(mirror) - endpoint_entropy_halfpi(mirror)
        assert abs(gap) == pytest.approx(bp.residual, abs=1e-15)


class TestHalfPiBoundary:
    def test_axis_root(self):
        bp = solve_halfpi_boundary(TrajectorySpec.on_axis())
        assert bp.p.q1 == pytest.approx(0.67515, abs=1e-4)

    def test_total_075(self):
        bp = solve_halfpi_boundary(TrajectorySpec(0.75))
        assert bp.p.q1 == pytest.approx(0.72358, abs=1e-4)
        assert bp.residual < 1e-6

    def test_total_at_intersection(self):
        bp = solve_halfpi_boundary(TrajectorySpec(0.769095))
        assert bp.p.q1 == pytest.approx(0.739409, abs=1e-3)

    def test_mirror_symmetry(self):
        bp = solve_halfpi_boundary(TrajectorySpec(0.75))
        val = s2_halfpi(bp.p.swapped())
        assert abs(val) == pytest.approx(bp.residual, abs=1e-15)


class TestZeroBoundaryAxis:
    def test_four_points_with_tiny_residuals(self):
        points = zero_boundary_axis()
        coords = {(bp.p.q1, bp.p.q2) for bp in points}
        assert coords == {(0.5, 0.0), (0.0, 0.5), (1.0, 0.0), (0.0, 1.0)}
        for bp in points:
            assert bp.kind is BoundaryKind.ZERO_BIFURCATION_AXIS
            assert bp.residual < 1e-10

    def test_off_root_value_nonzero(self):
        assert abs(s2_zero_axis(0.75)) > 0.1


class TestJumpBoundary:
    @pytest.mark.parametrize(
        "total,ref_q1,ref_angle",
        [
            # angles cross-checked by 40-digit evaluation of the curve
            (0.55, 0.544535, 0.126695),
            (0.65, 0.631766, 0.402041),
            (0.75, 0.721590, 1.039193),
        ],
    )
    def test_landmark_totals(self, total, ref_q1, ref_angle):
        rec = solve_jump_boundary(TrajectorySpec(total))
        assert rec is not None
        assert rec.boundary.p.q1 == pytest.approx(ref_q1, abs=1e-4)
        assert rec.jump_angle == pytest.approx(ref_angle, abs=5e-4)
        assert rec.boundary.residual < 1e-6

    def test_no_window_on_low_total(self):
        assert solve_jump_boundary(TrajectorySpec(0.4)) is None

    def test_axis_rejected(self):
        with pytest.raises(ValueError):
            solve_jump_boundary(TrajectorySpec.on_axis())

    def test_jump_ties_endpoint_and_interior(self):
        rec = solve_jump_boundary(TrajectorySpec(0.75))
        p = rec.boundary.p
        ext = interior_minimum(p, grid_n=2048)
        assert endpoint_entropy_zero(p) == pytest.approx(ext.value, abs=1e-8)


class TestBimodalityBirth:
    def test_total_075(self):
        bp = bimodality_birth(TrajectorySpec(0.75))
        assert bp is not None
        assert bp.p.q1 == pytest.approx(0.72008, abs=2e-4)
        assert bp.residual <= 1e-5 + 1e-12

    def test_total_065(self):
        bp = bimodality_birth(TrajectorySpec(0.65))
        assert bp.p.q1 == pytest.approx(0.631, abs=1e-3)

    def test_no_transition_on_low_total(self):
        assert bimodality_birth(TrajectorySpec(0.4)) is None

    def test_classification_flips_across(self):
        from xdeficit import ShapeClass, classify_shape

        bp = bimodality_birth(TrajectorySpec(0.75))
        q = bp.p.q1
        below = classify_shape(StateParams(q - 3e-5, 0.75 - (q - 3e-5)))
        above = classify_shape(StateParams(q + 3e-5, 0.75 - (q + 3e-5)))
        assert below.shape_class is not ShapeClass.BIMODAL
        assert above.shape_class is ShapeClass.BIMODAL


class TestOrderingOnTrajectory:
    @pytest.mark.parametrize("total", [0.7, 0.75])
    def test_birth_jump_death_ordering(self, total):
        traj = TrajectorySpec(total)
        birth = bimodality_birth(traj).p.q1
        jump = solve_jump_boundary(traj).boundary.p.q1
        death = solve_halfpi_boundary(traj).p.q1
        assert birth < jump < death


class TestCurvesIntersection:
    def test_landmark(self):
        p = curves_intersection()
        assert p.q1 == pytest.approx(0.739409, abs=2e-4)
        assert p.q2 == pytest.approx(0.029686, abs=2e-4)
        assert p.q1 + p.q2 == pytest.approx(0.769095, abs=3e-4)

    def test_mirrored_intersection_satisfies_both_equations(self):
        p = curves_intersection().swapped()
        assert abs(endpoint_entropy_zero(p) - endpoint_entropy_halfpi(p)) < 1e-5
        assert abs(s2_halfpi(p)) < 1e-4


class TestJumpAngleTable:
    def test_seven_rows_against_reference(self):
        table = jump_angle_table()
        assert len(table) == 7
        ref_q1 = [0.5, 0.544535, 0.588104, 0.631766, 0.676082, 0.721590, 0.739409]
        for rec, q1 in zip(table, ref_q1):
            assert rec.boundary.p.q1 == pytest.approx(q1, abs=1e-4)
        assert table[0].jump_angle == 0.0
        assert table[-1].jump_angle == pytest.approx(HALF_PI, abs=1e-12)

    def test_angles_increase_with_total(self):
        table = jump_angle_table()
        angles = [rec.jump_angle for rec in table]
        assert angles == sorted(angles)

    def test_boundary_points_satisfy_their_equations(self):
        for rec in jump_angle_table():
            assert rec.boundary.residual < 1e-6
