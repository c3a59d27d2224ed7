import math

import numpy as np
import pytest

from polycap.analytic import cap_annulus
from polycap.bie import SolverOptions
from polycap.capacity import (
    CapacityRequest,
    capacity,
    compute_capacity,
    convergence_sweep,
    fit_order,
    lens_family,
    mobius_invariance_report,
    parse_grid,
)
from polycap.errors import InvalidParameter, ValidationFailed
from polycap.geometry import (
    PolycircularCondenser,
    make_circle,
    make_lens,
    make_mobius_e_condenser,
    mobius_e_candidates,
    unit_disk_condenser,
)


def test_request_validation(annulus):
    with pytest.raises(InvalidParameter):
        CapacityRequest(annulus, 255)
    with pytest.raises(InvalidParameter):
        CapacityRequest(annulus, 256, grading_p=1)


def test_annulus_result_fields(annulus):
    res = compute_capacity(CapacityRequest(annulus, 256))
    assert res.capacity == pytest.approx(cap_annulus(0.7), abs=1e-12)
    assert res.n == 256 and res.grading_p == 3
    assert res.h_dev < 1e-12 and res.seconds > 0
    assert res.diagnostics["solver"] == "dense"


def test_invalid_condenser_raises():
    bad = unit_disk_condenser([mobius_e_candidates()["literal"]], -0.3j, [0.3j])
    with pytest.raises(ValidationFailed) as info:
        capacity(bad, 64)
    assert any("not closed" in v for v in info.value.violations)


def test_alpha_override_is_validated(annulus):
    with pytest.raises(ValidationFailed):
        compute_capacity(CapacityRequest(annulus, 64, alpha=0.5))  # inside the hole


def test_default_points_are_filled():
    res = capacity(unit_disk_condenser([make_lens(0.4, 0.1)]), 512)
    assert res.alpha is not None and len(res.alpha_k) == 1
    assert res.capacity == pytest.approx(4.371029672008615, abs=1e-4)


def test_gmres_and_dense_agree(lens_condenser):
    d = capacity(lens_condenser, 512, solver=SolverOptions(method="dense")).capacity
    g = capacity(lens_condenser, 512, solver=SolverOptions(method="gmres")).capacity
    assert abs(d - g) < 1e-11


def test_capacity_increases_with_hole():
    c1 = capacity(unit_disk_condenser([make_lens(0.8, 0.2)], 0.9j, [0j]), 512).capacity
    c2 = capacity(unit_disk_condenser([make_lens(0.8, 0.4)], 0.9j, [0j]), 512).capacity
    assert c1 < c2


def test_two_disjoint_disks_symmetric():
    holes = [make_circle(0.4, 0.2, ccw=False), make_circle(-0.4, 0.2, ccw=False)]
    res = capacity(unit_disk_condenser(holes, 0.7j, [0.4, -0.4]), 256)
    assert abs(res.a[0] - res.a[1]) < 1e-12
    assert res.capacity == pytest.approx(2 * math.pi * res.a.sum())


def test_fit_order():
    n = np.array([100, 200, 400])
    assert fit_order(n, 3.0 * n**-2.5) == pytest.approx(-2.5)
    assert fit_order([100], [1e-3]) is None
    assert fit_order([100, 200], [0.0, 1e-3]) is None


def test_sweep_single_entry(annulus):
    table = convergence_sweep(annulus, [64])
    assert len(table.rows) == 1 and table.slope is None and table.rows[0].error is None


def test_sweep_with_reference(lens_condenser):
    table = convergence_sweep(lens_condenser, [128, 256, 512], reference=10.15585205509004)
    errs = [r.error for r in table.rows]
    assert errs[0] > errs[1] > errs[2]
    assert table.slope < -2


def test_sweep_without_reference_uses_largest(lens_condenser):
    table = convergence_sweep(lens_condenser, [128, 256, 512])
    assert table.reference_is_computed
    assert table.reference == table.rows[-1].capacity and table.rows[-1].error is None
    assert table.slope < -2


def test_sweep_requires_ascending(annulus):
    with pytest.raises(InvalidParameter):
        convergence_sweep(annulus, [128, 64])


def test_mobius_report_rows():
    rows = mobius_invariance_report(make_mobius_e_condenser(), [0, 0.5, 0.1 + 0.3j], 1024)
    assert [r.a for r in rows] == [0, 0.5, 0.1 + 0.3j]
    assert rows[0].deviation == 0.0
    assert max(r.deviation for r in rows) < 1e-10
    with pytest.raises(InvalidParameter):
        mobius_invariance_report(make_mobius_e_condenser(), [1.0], 64)


def test_mobius_report_rebuild_method_is_close():
    rows = mobius_invariance_report(make_mobius_e_condenser(), [0, 0.5], 512, method="rebuild")
    assert rows[1].deviation < 1e-6


def test_lens_family_rows():
    rows = lens_family(0.8, [0.3, 0.8], 256)
    assert rows[1].capacity == pytest.approx(28.157593038985901, abs=1e-8)
    for r in rows:
        assert r.lower <= r.capacity <= r.upper + 1e-9


def test_parse_grid():
    g = parse_grid("0.05:0.8:0.05")
    assert len(g) == 16 and g[0] == 0.05 and g[-1] == 0.8
    assert parse_grid("0.1,0.2") == [0.1, 0.2]
    with pytest.raises(InvalidParameter):
        parse_grid("0:1:0")
