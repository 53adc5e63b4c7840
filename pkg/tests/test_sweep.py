import statistics

import pytest

from geogame import (
    DomainError,
    Scenario,
    SweepConfig,
    run_sweep,
    sustainable_range,
    surface_to_records,
)
from geogame.sweep import (
    STATUS_FAILED,
    STATUS_OK,
    STATUS_ZERO,
    solve_cell,
    unguarded_most_stable_agreement,
)


@pytest.fixture(scope="module")
def surfaces():
    return {z: run_sweep(SweepConfig(z=z)) for z in (1, 4, 7, 10)}


def test_default_grid_shape_and_order():
    cfg = SweepConfig()
    assert cfg.y_h_values == (0.0, -1.0, -2.0, -3.0, -4.0, -5.0, -6.0)
    assert cfg.y_c_values == (0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0)


def test_zero_cell_convention(surfaces):
    cell = surfaces[1].cells[0][0]
    assert (cell.y_star_h, cell.y_star_c) == (0.0, 0.0)
    assert (cell.y_tilde_opt, cell.delta_min_opt, cell.status) == (0.0, 0.0, STATUS_ZERO)


@pytest.mark.parametrize("z", [1, 4, 7, 10])
def test_no_failed_cells_and_inside_range(surfaces, z):
    for cell in surfaces[z]:
        assert cell.status != STATUS_FAILED
        if cell.status == STATUS_OK:
            r = sustainable_range(Scenario(cell.y_star_h, cell.y_star_c, z))
            assert r.lower <= cell.y_tilde_opt <= r.upper


def test_z1_flat_plane(surfaces):
    values = [c.delta_min_opt for c in surfaces[1].ok_cells()]
    assert len(values) == 48
    assert all(v == pytest.approx(0.2, abs=1e-5) for v in values)


def test_z7_matches_closed_form(surfaces):
    for c in surfaces[7].ok_cells():
        assert c.y_tilde_opt == pytest.approx((c.y_star_h + c.y_star_c) / 9, abs=1e-4)


@pytest.mark.parametrize("z", [1, 4, 7, 10])
def test_flatness_and_closed_form(surfaces, z):
    ok = surfaces[z].ok_cells()
    assert statistics.pstdev(c.delta_min_opt for c in ok) < 1e-5
    assert max(abs(c.y_tilde_opt - (c.y_star_h + c.y_star_c) / (z + 2)) for c in ok) < 1e-3


def test_single_cell_worked_example():
    surface = run_sweep(SweepConfig(y_h_values=[-2], y_c_values=[1], z=1))
    (cell,) = list(surface)
    assert cell.y_tilde_opt == pytest.approx(-1 / 3, abs=1e-4)
    assert cell.status == STATUS_OK


def test_records_flatten_in_loop_order():
    surface = run_sweep(SweepConfig(y_h_values=[0, -1], y_c_values=[0, 1], z=2))
    keys = [(r[0], r[1]) for r in surface_to_records(surface)]
    assert keys == [(0, 0), (0, 1), (-1, 0), (-1, 1)]


def test_record_counts(surfaces):
    assert len(surface_to_records(surfaces[4])) == 49
    one = run_sweep(SweepConfig(y_h_values=[-3], y_c_values=[2], z=4))
    assert len(surface_to_records(one)) == 1


def test_deterministic_regardless_of_workers():
    cfg = SweepConfig(z=4)
    serial = surface_to_records(run_sweep(cfg))
    again = surface_to_records(run_sweep(cfg))
    threaded = surface_to_records(run_sweep(cfg, workers=8))
    assert serial == again == threaded


def test_failure_is_recorded_not_raised():
    # the collapsed range of y_h == y_c makes the bracket empty in the unguarded sweep
    cell = solve_cell(2.0, 2.0, 1.0, guard=False)
    assert cell.status == STATUS_FAILED
    assert "DomainError" in cell.message


def test_unit_shrink_searches_raw_range():
    surface = run_sweep(SweepConfig(y_h_values=[-1], y_c_values=[0, 1], z=1, shrink=1.0))
    assert [c.status for c in surface] == [STATUS_OK, STATUS_OK]
    for c in surface:
        r = sustainable_range(Scenario(c.y_star_h, c.y_star_c, 1), shrink=1.0)
        assert (c.lower, c.upper) == (r.raw_lower, r.raw_upper)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"y_h_values": []},
        {"y_c_values": [float("nan")]},
        {"z": 0.0},
        {"tol": -1.0},
        {"shrink": 0.0},
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(DomainError):
        SweepConfig(**kwargs)


class TestSingularityRegression:
    def test_guarded_cell_finds_closed_form(self):
        cell = solve_cell(-2.0, 2.0, 4.0)
        assert cell.status == STATUS_OK
        assert cell.y_tilde_opt == pytest.approx(0.0, abs=1e-4)
        assert cell.delta_min_opt == pytest.approx(2 / 7, abs=1e-5)

    def test_unguarded_cell_lands_on_singularity(self):
        res = unguarded_most_stable_agreement(Scenario(-2, 2, 4))
        assert res.minimizer == pytest.approx(1.0, abs=1e-4)
        assert res.objective == pytest.approx(0.0625, abs=1e-4)

    def test_unguarded_sweep_differs_from_guarded(self):
        cfg = SweepConfig(z=4)
        bad = {(c.y_star_h, c.y_star_c): c for c in run_sweep(cfg, guard=False)}
        spurious = bad[(-2.0, 2.0)]
        assert spurious.y_tilde_opt == pytest.approx(1.0, abs=1e-4)
        assert spurious.delta_min_opt < 2 / 7
