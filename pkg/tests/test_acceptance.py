"""Acceptance criteria at their stated tolerances.

Every test records one PASS/FAIL line; the lines are printed together in the
"acceptance criteria" section at the end of the pytest run. Run alone with::

    pytest tests/test_acceptance.py -v
"""

import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from polycap.analytic import (
    bound_lower,
    bound_upper,
    cap_annulus,
    cap_disk_segment,
    ellip_K,
    mu_grotzsch,
)
from polycap.bie import KernelContext, SolverOptions, assemble_N, kernel_M_regular
from polycap.capacity import capacity, convergence_sweep, lens_family, mobius_invariance_report, parse_grid
from polycap.domainfile import load_domain
from polycap.geometry import make_circle
from polycap.parametrization import discretize_components

LENS_REF = 10.15585205509004
MOBIUS_A = [0, 0.1, 0.5, 0.1 + 0.3j, -0.2 + 0.5j, -0.3 - 0.5j]


def record(cid, ok, detail):
    ACCEPTANCE_LINES.append((str(cid), bool(ok), detail))
    print(f"criterion {cid}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def lens_sweep():
    t0 = time.perf_counter()
    table = convergence_sweep(load_domain("builtin:lens-0.8-0.3"), [2**8, 2**9, 2**10, 2**11, 2**12], LENS_REF)
    return table, time.perf_counter() - t0


def test_c01_annulus_smooth_exactness():
    t0 = time.perf_counter()
    res = capacity(load_domain("builtin:annulus-0.7"), 256, solver=SolverOptions(method="dense"))
    err = abs(res.capacity - 17.615998583457760)
    record(1, err < 1e-9 and abs(res.capacity - cap_annulus(0.7)) < 1e-9,
           f"annulus q=0.7 n=256: cap={res.capacity:.16g} err={err:.2e} (<1e-9) {time.perf_counter() - t0:.2f}s")


def test_c02_disk_fixture():
    t0 = time.perf_counter()
    res = capacity(load_domain("builtin:disk-0.8"), 256)
    err = abs(res.capacity - 28.157593038985901)
    record(2, err < 1e-9, f"disk r=0.8 n=256: cap={res.capacity:.16g} err={err:.2e} (<1e-9) {time.perf_counter() - t0:.2f}s")


def test_c03_lens_two_fifths():
    t0 = time.perf_counter()
    res = capacity(load_domain("builtin:lens-2/5-1/10"), 2**12, grading_p=3)
    err = abs(res.capacity - 4.371029672008615)
    record(3, err < 1e-6, f"lens(2/5,1/10) n=4096: cap={res.capacity:.16g} err={err:.2e} (<1e-6) "
                          f"{time.perf_counter() - t0:.1f}s")


def test_c04_lens_reference(lens_sweep):
    table, _ = lens_sweep
    row = table.rows[-1]
    err = abs(row.capacity - LENS_REF)
    record(4, row.n == 4096 and err < 1e-6, f"lens(0.8,0.3) n=4096: cap={row.capacity:.16g} err={err:.2e} (<1e-6)")


def test_c05_mobius_invariance():
    t0 = time.perf_counter()
    rows = mobius_invariance_report(load_domain("builtin:mobius-E"), MOBIUS_A, 2**12)
    dev = max(r.deviation for r in rows)
    base_err = abs(rows[0].capacity - 6.044918141954128)
    record(5, dev < 1e-10 and base_err < 1e-7,
           f"set E n=4096, 6 a-values: max deviation={dev:.2e} (<1e-10), cap(a=0) err={base_err:.2e} (<1e-7) "
           f"{time.perf_counter() - t0:.0f}s")


def test_c06_four_lens():
    t0 = time.perf_counter()
    res = capacity(load_domain("builtin:four-lens"), 1024)
    err = abs(res.capacity - 17.613666396960355)
    spread = float(np.max(res.a) - np.min(res.a))
    record(6, err < 1e-6 and spread < 1e-10,
           f"four lenses n=1024: cap={res.capacity:.16g} err={err:.2e} (<1e-6), a_k spread={spread:.1e} (<1e-10) "
           f"{time.perf_counter() - t0:.0f}s")


def test_c07_convergence_order(lens_sweep):
    table, seconds = lens_sweep
    errs = ", ".join(f"{r.error:.1e}" for r in table.rows)
    record(7, table.slope is not None and table.slope <= -2.0,
           f"lens(0.8,0.3) n=2^8..2^12: errors [{errs}] slope={table.slope:.2f} (<=-2) {seconds:.0f}s")


def test_c08_bound_sandwich():
    t0 = time.perf_counter()
    rows = lens_family(0.8, parse_grid("0.05:0.8:0.05"), 1024)
    sandwich = all(r.lower <= r.capacity <= r.upper for r in rows[:-1])
    last = rows[-1]
    # at s = r the set is a disk and UB is exact: compare within the stated gap
    gap = abs(last.upper - last.capacity)
    caps = [r.capacity for r in rows]
    increasing = all(b > a for a, b in zip(caps, caps[1:]))
    above_segment = min(caps) > cap_disk_segment(0.8)
    record(8, len(rows) == 16 and last.s == 0.8 and sandwich and gap < 1e-6 and increasing and above_segment,
           f"16 lenses n=1024: LB<=cap<=UB {sandwich}, UB gap at s=0.8 {gap:.1e} (<1e-6), increasing {increasing}, "
           f"min cap {min(caps):.6f} > 7.360222723821019 {time.perf_counter() - t0:.0f}s")


def test_c09_analytic_identities():
    grid = np.linspace(0.05, 0.95, 10)
    prod = max(abs(mu_grotzsch(r) * mu_grotzsch(math.sqrt(1 - r * r)) - math.pi**2 / 4) for r in grid)
    ub = max(abs(bound_upper(4 * math.pi * r / (1 - r * r)) - 2 * math.pi / math.log(1 / r)) / cap_annulus(r)
             for r in grid)
    lb = max(abs(bound_lower(8 * math.atanh(r)) - cap_disk_segment(r)) / cap_disk_segment(r) for r in grid)
    k0 = ellip_K(0.0) == math.pi / 2
    record(9, prod < 1e-12 and ub < 1e-12 and lb < 1e-12 and k0,
           f"mu(r)mu(r')-pi^2/4 {prod:.1e}, UB-disk {ub:.1e}, LB-segment {lb:.1e} (rel), K(0)=pi/2 {k0}")


def test_c10_kernel_oracle():
    n = 256
    ctx = KernelContext.build(discretize_components([make_circle()], n), 0j)
    n_err = float(np.max(np.abs(assemble_N(ctx) + 1.0 / n)))
    m1 = max(abs(kernel_M_regular(ctx, i, j)) for i in range(0, n, 7) for j in range(n))
    record(10, n_err < 1e-14 and m1 < 1e-13,
           f"unit circle alpha=0 n={n}: max|N_ij + 1/n|={n_err:.1e} (<1e-14), max|M1|={m1:.1e} (<1e-13)")


def test_c11_piecewise_constancy():
    res = capacity(load_domain("builtin:annulus-0.7"), 128)
    record(11, res.h_dev < 1e-10, f"annulus n=128: h_dev={res.h_dev:.1e} (<1e-10)")


@pytest.mark.slow
def test_c12_bart_simpson_conditional():
    t0 = time.perf_counter()
    res = capacity(load_domain("builtin:bart"), 9 * 2**11)
    err = abs(res.capacity - 7.26568246621964)
    fem = res.capacity - 7.265682491066263
    its = res.diagnostics["gmres_iterations"]
    record(12, err < 5e-7,
           f"Bart (best-effort reading) n=9*2^11: cap={res.capacity:.15g} err={err:.1e} (<5e-7), "
           f"vs hp-FEM {fem:+.1e}, {res.diagnostics['solver']} its={its} {time.perf_counter() - t0:.0f}s")


def test_c13_excluded_domains_documented():
    # no arc coordinates exist for the m = 1, 2, 5 domains; nothing to compute
    detail = "m=1,2,5 benchmark domains: arc coordinates unavailable, excluded (fixture slots in polycap.domainfile.BUILTIN)"
    ACCEPTANCE_LINES.append(("13", None, detail))
    pytest.skip(detail)
