"""End-to-end capacity computation and the experiments built on top of it."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .analytic import bound_lower, bound_upper, hyperbolic_perimeter
from .bie import SolverOptions, solve_bie
from .errors import InvalidParameter, ValidationFailed
from .geometry import (
    PolycircularCondenser,
    make_lens,
    mobius_apply,
    unit_disk_condenser,
    validate,
    with_default_points,
)
from .parametrization import discretize


@dataclass(frozen=True)
class CapacityRequest:
    condenser: PolycircularCondenser
    n: int
    grading_p: int = 3
    solver: SolverOptions = field(default_factory=SolverOptions)
    alpha: complex | None = None
    alpha_k: tuple | None = None

    def __post_init__(self):
        if self.n <= 0 or self.n % 2:
            raise InvalidParameter(f"n must be a positive even integer, got {self.n}")
        if self.grading_p < 2:
            raise InvalidParameter(f"grading_p must be >= 2, got {self.grading_p}")


@dataclass
class CapacityResult:
    capacity: float
    a: np.ndarray
    c: float
    h_dev: float
    n: int
    grading_p: int
    seconds: float
    alpha: complex
    alpha_k: tuple
    diagnostics: dict = field(default_factory=dict)


def prepare(request: CapacityRequest) -> PolycircularCondenser:
    """Apply point overrides and defaults, then validate strictly."""
    cond = request.condenser
    if request.alpha is not None:
        cond = replace(cond, alpha=complex(request.alpha))
    if request.alpha_k is not None:
        cond = replace(cond, alpha_k=tuple(complex(z) for z in request.alpha_k))
    violations = validate(cond)
    if violations:
        raise ValidationFailed(violations)
    cond = with_default_points(cond)
    violations = validate(cond)
    if violations:
        raise ValidationFailed(violations)
    return cond


def compute_capacity(request: CapacityRequest) -> CapacityResult:
    t0 = time.perf_counter()
    cond = prepare(request)
    boundary = discretize(cond, request.n, request.grading_p)
    sol = solve_bie(boundary, cond.alpha, cond.alpha_k, request.solver)
    return CapacityResult(
        capacity=sol.capacity,
        a=sol.a,
        c=sol.c,
        h_dev=float(np.max(sol.h_dev)),
        n=request.n,
        grading_p=request.grading_p,
        seconds=time.perf_counter() - t0,
        alpha=cond.alpha,
        alpha_k=cond.alpha_k,
        diagnostics=sol.diagnostics,
    )


def capacity(condenser: PolycircularCondenser, n: int, **kwargs) -> CapacityResult:
    """Shorthand for ``compute_capacity(CapacityRequest(condenser, n, **kwargs))``."""
    return compute_capacity(CapacityRequest(condenser, n, **kwargs))


def fit_order(n_values, errors) -> float | None:
    """Least-squares slope of ``log(error)`` against ``log(n)``; ``None`` with fewer than two usable points."""
    n_values = np.asarray(n_values, dtype=float)
    errors = np.asarray(errors, dtype=float)
    keep = np.isfinite(errors) & (errors > 0)
    if keep.sum() < 2:
        return None
    slope, _ = np.polyfit(np.log(n_values[keep]), np.log(errors[keep]), 1)
    return float(slope)


@dataclass
class SweepRow:
    n: int
    capacity: float
    error: float | None


@dataclass
class SweepTable:
    rows: list
    reference: float | None
    reference_is_computed: bool
    slope: float | None


def convergence_sweep(
    condenser: PolycircularCondenser,
    n_list: Sequence[int],
    reference: float | None = None,
    **kwargs,
) -> SweepTable:
    """Capacities over ``n_list`` with errors against ``reference``.

    Without a reference the largest-n capacity serves as one; that row then
    has no error and is left out of the slope fit.
    """
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise InvalidParameter("n_list is empty")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise InvalidParameter("n_list must be strictly ascending")
    caps = [capacity(condenser, n, **kwargs).capacity for n in n_list]
    computed = reference is None and len(caps) > 1
    ref = caps[-1] if computed else reference
    rows = []
    for i, (n, cap) in enumerate(zip(n_list, caps)):
        err = None
        if ref is not None and not (computed and i == len(caps) - 1):
            err = abs(cap - ref)
        rows.append(SweepRow(n, cap, err))
    usable = [r for r in rows if r.error is not None]
    slope = fit_order([r.n for r in usable], [r.error for r in usable]) if len(rows) > 1 else None
    return SweepTable(rows, ref, computed, slope)


@dataclass
class MobiusRow:
    a: complex
    capacity: float
    deviation: float


def mobius_invariance_report(
    condenser: PolycircularCondenser,
    a_list: Sequence[complex],
    n: int,
    method: str = "pushforward",
    **kwargs,
) -> list:
    """Capacity of ``T_a`` images of ``condenser`` and their deviation from the ``a = 0`` value.

    ``method`` is passed to :func:`mobius_apply`. The default keeps the exact
    composition with ``T_a``, for which the discrete problem is itself
    Moebius invariant; ``"rebuild"`` re-fits each piece as a canonical arc.
    """
    a_list = [complex(a) for a in a_list]
    for a in a_list:
        if not abs(a) < 1:
            raise InvalidParameter(f"Moebius parameter must satisfy |a| < 1, got {a}")
    base_cond = with_default_points(prepare(CapacityRequest(condenser, n, **kwargs)))
    base = capacity(base_cond, n, **kwargs).capacity
    rows = []
    for a in a_list:
        cap = base if a == 0 else capacity(mobius_apply(a, base_cond, method), n, **kwargs).capacity
        rows.append(MobiusRow(a, cap, abs(cap - base)))
    return rows


@dataclass
class LensRow:
    s: float
    hyp_perimeter: float
    capacity: float
    lower: float
    upper: float


def lens_family(r: float, s_list: Sequence[float], n: int, **kwargs) -> list:
    """Capacity of the lens ``(r, s)`` in the unit disk with the perimeter bounds, per ``s``."""
    rows = []
    for s in s_list:
        hole = make_lens(r, float(s))
        L = hyperbolic_perimeter(hole)
        cap = capacity(unit_disk_condenser([hole], alpha=0.5 * (1 + r) * 1j, alpha_k=[0j]), n, **kwargs).capacity
        rows.append(LensRow(float(s), L, cap, bound_lower(L), bound_upper(L)))
    return rows


def parse_grid(spec: str) -> list:
    """``"start:stop:step"`` (inclusive stop) or a comma list into floats."""
    if ":" in spec:
        start, stop, step = (float(x) for x in spec.split(":"))
        if step <= 0:
            raise InvalidParameter(f"grid step must be positive, got {step}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        # round so that e.g. 16 * 0.05 lands exactly on 0.8
        return [round(start + k * step, 12) for k in range(count)]
    return [float(x) for x in spec.split(",") if x.strip()]
