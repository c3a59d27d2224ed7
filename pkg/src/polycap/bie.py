"""Nystrom discretization of the integral equation with the generalized Neumann kernel.

For every hole ``k`` the density ``mu_k`` solves ``(I - N) mu_k = -M gamma_k``
with ``gamma_k = log|eta - alpha_k|``; the function
``h_k = (M mu_k - (I - N) gamma_k) / 2`` is then constant on each boundary
component, and those constants give the coefficients ``a_k`` and ``c``.

``N`` is discretized by the trapezoidal rule. ``M`` is split into a smooth
part plus ``-(1/2pi) cot((s - t)/2)`` on each component; the cotangent part
uses the alternate-point trapezoidal rule.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse
from scipy.sparse.linalg import LinearOperator, gmres

from .errors import GeometryDegenerate, SolverFailure
from .parametrization import FULL, GENERIC, LINEAR, DiscreteBoundary

BLOCK_ENTRIES = 1 << 22


@dataclass(frozen=True)
class SolverOptions:
    method: str = "auto"  # "auto", "dense" or "gmres"
    dense_threshold: int = 12288
    restart: int = 100
    tol: float = 1e-12
    maxit: int = 100
    engine: str = "auto"  # "auto", "numpy" or "numba"


@dataclass(frozen=True)
class KernelContext:
    boundary: DiscreteBoundary
    alpha: complex
    A: np.ndarray
    cache: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def build(cls, boundary: DiscreteBoundary, alpha: complex) -> "KernelContext":
        A = boundary.eta - complex(alpha)
        if np.any(A == 0):
            raise GeometryDegenerate("alpha coincides with a boundary node")
        if np.unique(boundary.eta).size < boundary.size:
            raise GeometryDegenerate("two boundary nodes coincide")
        return cls(boundary, complex(alpha), A)

    @property
    def size(self) -> int:
        return self.boundary.size

    @property
    def weight(self) -> float:
        return 2.0 * math.pi / self.boundary.n


def _diag_terms(ctx: KernelContext, idx):
    b = ctx.boundary
    return b.etapp[idx] / (2.0 * b.etap[idx]) - b.etap[idx] / ctx.A[idx]


NEAR = 0.05


def _is_near(dth, kind):
    # beyond this angle (or local parameter on a segment) plain subtraction is accurate enough
    a = np.abs(dth)
    return (kind != GENERIC) & ((a < NEAR) | ((kind == FULL) & (a > 2.0 * math.pi - NEAR)))


def half_phase(b: DiscreteBoundary) -> np.ndarray:
    """``exp(i theta / 2)`` at the nodes of circular pieces (angle ``theta = base + fac * loc``)."""
    return np.exp(0.5j * (b.base + b.fac * b.loc))


def _pair_diff(b: DiscreteBoundary, i, j) -> np.ndarray:
    """``eta[j] - eta[i]`` for broadcastable index arrays, cancellation-free for near pairs.

    Two nearby nodes on the same arc differ by ``2i r u_i u_j sin(dtheta/2)``
    with ``u = exp(i theta/2)``, two nearby nodes on the same segment by
    ``(b - a) dsigma``. Subtracting the points themselves instead loses about
    ``eps / |eta_j - eta_i|`` relative accuracy, which the nearly cancelling
    neighbour terms of the kernel pick up.
    """
    diff = np.asarray(b.eta[j] - b.eta[i], dtype=complex)
    if b.piece is None:
        return diff
    kind = np.broadcast_to(b.kind[i], diff.shape)
    dth = np.broadcast_to(b.fac[i] * (b.loc[j] - b.loc[i]), diff.shape)
    near = (b.piece[i] == b.piece[j]) & _is_near(dth, kind)
    if not near.any():
        return diff
    diff = diff.copy()
    scale = np.broadcast_to(b.scale[i], diff.shape)
    lin = near & (kind == LINEAR)
    diff[lin] = scale[lin] * np.broadcast_to(b.loc[j] - b.loc[i], diff.shape)[lin]
    circ = near & ~lin
    if circ.any():
        u = half_phase(b)
        uu = np.broadcast_to(u[i] * u[j], diff.shape)[circ]
        diff[circ] = 2j * scale[circ].real * uu * np.sin(0.5 * dth[circ])
    return diff


def node_differences(b: DiscreteBoundary, rows, cols=None) -> np.ndarray:
    """Outer difference ``eta[cols] - eta[rows]``, see :func:`_pair_diff`."""
    rows = np.atleast_1d(np.asarray(rows))
    cols = np.arange(b.size) if cols is None else np.atleast_1d(np.asarray(cols))
    return _pair_diff(b, rows[:, None], cols[None, :])


def near_windows(b: DiscreteBoundary):
    """Index windows holding every pair that :func:`node_differences` treats specially.

    Returns ``(ps, pl, klo, khi)``: node ``i`` has its candidates at
    ``i + k`` for ``klo[i] <= k <= khi[i]``, wrapped into ``[ps[i], ps[i] + pl[i])``,
    the index range of its piece.
    """
    size = b.size
    ps = np.zeros(size, np.int64)
    pl = np.ones(size, np.int64)
    klo = np.zeros(size, np.int64)
    khi = np.full(size, -1, np.int64)
    if b.piece is None:
        return ps, pl, klo, khi
    ids, first, counts = np.unique(b.piece, return_index=True, return_counts=True)
    for pid, start, count in zip(ids, first, counts):
        idx = np.arange(start, start + count)
        if not np.all(b.piece[idx] == pid):
            raise GeometryDegenerate(f"nodes of piece {pid} are not contiguous")
        ps[idx], pl[idx] = start, count
        kind, local = b.kind[start], idx - start
        if kind == FULL:
            h = 2.0 * math.pi / b.n
            reach = min(int(math.ceil(NEAR / (abs(b.fac[start]) * h))) + 1, (count - 1) // 2)
            klo[idx], khi[idx] = -reach, reach
        elif kind != GENERIC:
            loc = b.loc[idx]
            half = NEAR / abs(b.fac[start])
            lo = np.maximum(np.searchsorted(loc, loc - half) - 1, 0)
            hi = np.minimum(np.searchsorted(loc, loc + half, side="right"), count - 1)
            klo[idx], khi[idx] = lo - local, hi - local
    return ps, pl, klo, khi


def near_pairs(b: DiscreteBoundary):
    """Index arrays ``(i, j)``, ``i != j``, of every pair with a cancellation-free difference."""
    ps, pl, klo, khi = near_windows(b)
    counts = khi - klo + 1
    i = np.repeat(np.arange(b.size), counts)
    k = np.arange(i.size) - np.repeat(np.cumsum(counts) - counts, counts) + klo[i]
    j = ps[i] + (i - ps[i] + k) % pl[i]
    keep = j != i
    i, j = i[keep], j[keep]
    dth = b.fac[i] * (b.loc[j] - b.loc[i])
    keep = _is_near(dth, b.kind[i])
    return i[keep], j[keep]


def near_differences(ctx: KernelContext):
    """``(i, j, eta_j - eta_i)`` over :func:`near_pairs`, sorted by ``i``. Cached on ``ctx``."""
    if "near_diff" not in ctx.cache:
        i, j = near_pairs(ctx.boundary)
        ctx.cache["near_diff"] = (i, j, _pair_diff(ctx.boundary, i, j))
    return ctx.cache["near_diff"]


def near_corrections(ctx: KernelContext):
    """Sparse ``(C_N, C_M)`` and their row sums: weighted kernel entries, stable minus plain differences.

    The compiled matvec subtracts node positions directly; adding ``C x - (C 1) x``
    turns its result into the quadrature of :func:`kernel_blocks`. Cached on ``ctx``.
    """
    if "near" in ctx.cache:
        return ctx.cache["near"]
    b = ctx.boundary
    i, j, d = near_differences(ctx)
    q = ctx.A[i] * (b.etap[j] / ctx.A[j])
    dk = (q / d - q / (b.eta[j] - b.eta[i])) * (2.0 / b.n)
    shape = (b.size, b.size)
    cn = scipy.sparse.csr_matrix((dk.imag, (i, j)), shape=shape)
    cm = scipy.sparse.csr_matrix((dk.real, (i, j)), shape=shape)
    out = (cn, cm, np.asarray(cn.sum(axis=1)).ravel(), np.asarray(cm.sum(axis=1)).ravel())
    ctx.cache["near"] = out
    return out


def _raw_kernel(ctx: KernelContext, i, j):
    """Complex ``(A(s)/A(t)) eta'(t) / (eta(t) - eta(s))`` for scalar node indices ``i != j``."""
    b = ctx.boundary
    diff = node_differences(b, i, j)[0, 0]
    if diff == 0:
        raise GeometryDegenerate(f"nodes {i} and {j} coincide")
    return ctx.A[i] / ctx.A[j] * b.etap[j] / diff


def kernel_N(ctx: KernelContext, i: int, j: int) -> float:
    if i == j:
        return float(_diag_terms(ctx, i).imag / math.pi)
    return float(_raw_kernel(ctx, i, j).imag / math.pi)


def kernel_M(ctx: KernelContext, i: int, j: int) -> float:
    """Singular kernel ``M(s, t)`` off the diagonal."""
    return float(_raw_kernel(ctx, i, j).real / math.pi)


def kernel_M_regular(ctx: KernelContext, i: int, j: int) -> float:
    """``M`` plus ``cot((s - t)/2) / (2pi)`` on a shared component; ``M`` itself across components."""
    b = ctx.boundary
    if i == j:
        return float(_diag_terms(ctx, i).real / math.pi)
    val = kernel_M(ctx, i, j)
    if b.comp[i] == b.comp[j]:
        val += 1.0 / math.tan((b.t[i] - b.t[j]) / 2.0) / (2.0 * math.pi)
    return val


def kernel_blocks(ctx: KernelContext, want_n: bool = True, want_m: bool = True, block_rows: int | None = None):
    """Yield ``(rows, N_h[rows], M_h[rows])``: quadrature-weighted operator rows.

    ``N_h @ f`` approximates ``(N f)`` at the nodes, likewise for ``M_h``.
    Both use singularity subtraction, ``(K f)(s) = int K(s,t) (f(t) - f(s)) dt
    + f(s) int K(s,t) dt``, with the exact row integrals ``-1`` for ``N`` and
    ``0`` for ``M``; the diagonal entries therefore make every row of ``N_h``
    sum to ``-1`` and every row of the smooth part of ``M_h`` sum to ``0``.
    Blocks not requested are ``None``.
    """
    b = ctx.boundary
    size, n, w = b.size, b.n, ctx.weight
    if block_rows is None:
        block_rows = max(1, min(size, BLOCK_ENTRIES // size))
    src = b.etap / ctx.A
    ni, nj, nd = near_differences(ctx)
    jn = np.arange(n)
    for r0 in range(0, size, block_rows):
        r1 = min(size, r0 + block_rows)
        rows = np.arange(r0, r1)
        local = np.arange(r1 - r0)
        diff = b.eta[None, :] - b.eta[rows, None]
        lo, hi = np.searchsorted(ni, [r0, r1])
        diff[ni[lo:hi] - r0, nj[lo:hi]] = nd[lo:hi]
        diff[local, rows] = 1.0
        if np.any(diff == 0):
            bad = np.argwhere(diff == 0)[0]
            raise GeometryDegenerate(f"nodes {rows[bad[0]]} and {bad[1]} coincide")
        K = ctx.A[rows, None] * src[None, :] / diff
        del diff
        K[local, rows] = 0.0
        Nb = Mb = None
        if want_n:
            Nb = K.imag * (w / math.pi)
            Nb[local, rows] = -1.0 - Nb.sum(axis=1)
        if want_m:
            Mb = K.real * (w / math.pi)
            c = b.comp[rows]
            for j in np.unique(c):
                sel = np.nonzero(c == j)[0]
                cols = slice(j * n, (j + 1) * n)
                li = rows[sel] - j * n
                offset = li[:, None] - jn[None, :]
                same = offset == 0
                dt = b.t[rows[sel], None] - b.t[None, cols]
                dt[same] = 1.0
                cot = 1.0 / np.tan(dt / 2.0)
                cot[same] = 0.0
                # smooth remainder M + cot/(2pi), weighted by 2pi/n
                Mb[sel, cols] += cot / n
            Mb[local, rows] = -Mb.sum(axis=1)
            # alternate-point rule for -(1/2pi) cot((s - t)/2): weight 4pi/n on odd offsets
            for j in np.unique(c):
                sel = np.nonzero(c == j)[0]
                cols = slice(j * n, (j + 1) * n)
                li = rows[sel] - j * n
                offset = li[:, None] - jn[None, :]
                odd = (offset & 1).astype(bool)
                dt = b.t[rows[sel], None] - b.t[None, cols]
                dt[~odd] = 1.0
                Mb[sel, cols] -= np.where(odd, 2.0 / np.tan(dt / 2.0) / n, 0.0)
        del K
        yield slice(r0, r1), Nb, Mb


def assemble_N(ctx: KernelContext) -> np.ndarray:
    out = np.empty((ctx.size, ctx.size))
    for rows, Nb, _ in kernel_blocks(ctx, want_m=False):
        out[rows] = Nb
    return out


def assemble_M(ctx: KernelContext) -> np.ndarray:
    out = np.empty((ctx.size, ctx.size))
    for rows, _, Mb in kernel_blocks(ctx, want_n=False):
        out[rows] = Mb
    return out


def apply_operators(
    ctx: KernelContext, F: np.ndarray, want_n: bool = True, want_m: bool = True, engine: str = "numpy"
):
    """Matrix-free ``(N_h F, M_h F)`` for a vector or a column stack ``F``.

    ``engine="numba"`` evaluates the kernel in compiled loops instead of
    NumPy row blocks; both give the same quadrature.
    """
    F = np.asarray(F, dtype=float)
    if engine == "numba":
        return _apply_compiled(ctx, F, want_n, want_m)
    NF = np.zeros_like(F) if want_n else None
    MF = np.zeros_like(F) if want_m else None
    for rows, Nb, Mb in kernel_blocks(ctx, want_n, want_m):
        if want_n:
            NF[rows] = Nb @ F
        if want_m:
            MF[rows] = Mb @ F
    return NF, MF


def _apply_compiled(ctx: KernelContext, F: np.ndarray, want_n: bool, want_m: bool):
    from . import _kernels

    b = ctx.boundary
    src = b.etap / ctx.A
    args = (b.eta.real.copy(), b.eta.imag.copy(), ctx.A.real.copy(), ctx.A.imag.copy(), src.real.copy(), src.imag.copy())
    cn, cm, rn, rm = near_corrections(ctx)
    cols = F[:, None] if F.ndim == 1 else F
    NF = np.empty_like(cols) if want_n else None
    MF = np.empty_like(cols) if want_m else None
    for k in range(cols.shape[1]):
        x = np.ascontiguousarray(cols[:, k])
        if want_n:
            NF[:, k] = _kernels.apply_n_vec(*args, b.n, x) + cn @ x - rn * x
        if want_m:
            MF[:, k] = _kernels.apply_m_vec(*args, b.t, b.comp, b.n, x) + cm @ x - rm * x
    if F.ndim == 1:
        NF = None if NF is None else NF[:, 0]
        MF = None if MF is None else MF[:, 0]
    return NF, MF


def apply_M(ctx: KernelContext, f: np.ndarray) -> np.ndarray:
    return apply_operators(ctx, f, want_n=False)[1]


def apply_N(ctx: KernelContext, f: np.ndarray) -> np.ndarray:
    return apply_operators(ctx, f, want_m=False)[0]


def gamma_k(ctx: KernelContext, alpha_k: complex) -> np.ndarray:
    return np.log(np.abs(ctx.boundary.eta - complex(alpha_k)))


class DensitySolver:
    """Solves ``(I - N_h) mu = rhs`` for one or more right-hand sides."""

    def __init__(self, ctx: KernelContext, options: SolverOptions = SolverOptions()):
        self.ctx = ctx
        self.options = options
        method = options.method
        if method == "auto":
            method = "dense" if ctx.size <= options.dense_threshold else "gmres"
        if method not in ("dense", "gmres"):
            raise ValueError(f"unknown solver method {options.method!r}")
        self.method = method
        self.engine = options.engine if options.engine != "auto" else ("numba" if method == "gmres" else "numpy")
        self._lu = None
        self.iterations = []

    def _factor(self):
        if self._lu is None:
            mat = assemble_N(self.ctx)
            np.negative(mat, out=mat)
            mat[np.diag_indices_from(mat)] += 1.0
            self._lu = scipy.linalg.lu_factor(mat, overwrite_a=True, check_finite=False)
        return self._lu

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        rhs = np.asarray(rhs, dtype=float)
        if self.method == "dense":
            lu = self._factor()
            return scipy.linalg.lu_solve(lu, rhs, check_finite=False)
        cols = rhs[:, None] if rhs.ndim == 1 else rhs
        out = np.empty_like(cols)
        op = LinearOperator(
            (self.ctx.size, self.ctx.size),
            matvec=lambda x: x - apply_operators(self.ctx, np.ravel(x), want_m=False, engine=self.engine)[0],
            dtype=float,
        )
        for k in range(cols.shape[1]):
            count = [0]

            def cb(_res, count=count):
                count[0] += 1

            x, info = gmres(
                op,
                cols[:, k],
                rtol=self.options.tol,
                atol=0.0,
                restart=self.options.restart,
                maxiter=self.options.maxit,
                callback=cb,
                callback_type="pr_norm",
            )
            if info != 0:
                res = np.linalg.norm(op.matvec(x) - cols[:, k]) / max(np.linalg.norm(cols[:, k]), 1e-300)
                raise SolverFailure(f"GMRES did not converge (info={info}, relative residual {res:.3e})", res)
            self.iterations.append(count[0])
            out[:, k] = x
        return out[:, 0] if rhs.ndim == 1 else out


def solve_density(ctx: KernelContext, alpha_k: complex, options: SolverOptions = SolverOptions()) -> np.ndarray:
    """Density ``mu_k`` for the hole with auxiliary point ``alpha_k``."""
    g = gamma_k(ctx, alpha_k)
    return DensitySolver(ctx, options).solve(-apply_M(ctx, g))


def component_means(boundary: DiscreteBoundary, h: np.ndarray):
    """Per-component arithmetic means of ``h`` and max deviation from them."""
    blocks = np.reshape(h, (boundary.m_plus_1, boundary.n) + np.shape(h)[1:])
    means = blocks.mean(axis=1)
    dev = np.max(np.abs(blocks - means[:, None]), axis=1)
    return means, dev


def compute_h(ctx: KernelContext, mu: np.ndarray, gamma: np.ndarray):
    """``h = (M mu - (I - N) gamma) / 2`` at the nodes, with component means and deviations."""
    N_g = apply_N(ctx, gamma)
    M_mu = apply_M(ctx, mu)
    h = (M_mu - gamma + N_g) / 2.0
    means, dev = component_means(ctx.boundary, h)
    return h, means, dev


def solve_coefficients(H: np.ndarray):
    """Solve for ``(a_1..a_m, c)`` given the ``(m+1) x m`` matrix of component values.

    Returns ``(a, c, condition_number)``.
    """
    H = np.asarray(H, dtype=float)
    m1 = H.shape[0]
    if H.shape != (m1, m1 - 1):
        raise ValueError(f"expected an (m+1) x m matrix, got shape {H.shape}")
    if not np.all(np.isfinite(H)):
        raise SolverFailure("coefficient matrix has non-finite entries")
    mat = np.hstack([H, np.ones((m1, 1))])
    rhs = np.ones(m1)
    rhs[0] = 0.0
    cond = float(np.linalg.cond(mat))
    try:
        x = np.linalg.solve(mat, rhs)
    except np.linalg.LinAlgError as exc:
        raise SolverFailure(f"coefficient system is singular: {exc}") from exc
    if not np.isfinite(cond) or cond > 1e16:
        raise SolverFailure(f"coefficient system is numerically singular (cond {cond:.3e})")
    return x[:-1], float(x[-1]), cond


def capacity_from_coefficients(a) -> float:
    return 2.0 * math.pi * float(np.sum(a))


@dataclass
class BieSolution:
    mu: np.ndarray
    h: np.ndarray
    h_dev: np.ndarray
    a: np.ndarray
    c: float
    capacity: float
    diagnostics: dict = field(default_factory=dict)


def solve_bie(
    boundary: DiscreteBoundary,
    alpha: complex,
    alpha_k,
    options: SolverOptions = SolverOptions(),
) -> BieSolution:
    """Densities for every hole, the piecewise constants, and the capacity."""
    t0 = time.perf_counter()
    ctx = KernelContext.build(boundary, alpha)
    G = np.column_stack([gamma_k(ctx, ak) for ak in alpha_k])
    solver = DensitySolver(ctx, options)
    N_G, M_G = apply_operators(ctx, G, engine=solver.engine)
    mu = solver.solve(-M_G)
    N_mu, M_mu = apply_operators(ctx, mu, engine=solver.engine)
    residual = float(np.max(np.abs(mu - N_mu + M_G)))
    h = (M_mu - G + N_G) / 2.0
    means, dev = component_means(boundary, h)
    a, c, cond = solve_coefficients(means)
    return BieSolution(
        mu=mu,
        h=means,
        h_dev=dev.max(axis=0),
        a=a,
        c=c,
        capacity=capacity_from_coefficients(a),
        diagnostics={
            "solver": solver.method,
            "gmres_iterations": list(solver.iterations),
            "residual": residual,
            "condition": cond,
            "seconds": time.perf_counter() - t0,
        },
    )
