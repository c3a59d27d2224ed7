"""Corner-graded periodic parametrization of condenser boundaries.

Component ``j`` with ``l`` pieces is parametrized on ``[0, 2*pi]`` with piece
``i`` occupying ``[2*pi*i/l, 2*pi*(i+1)/l]``. On every such subinterval the
parameter is regraded by a Kress-type substitution whose derivative vanishes
to order ``p - 1`` at both ends, so quadrature nodes cluster at the corners.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter
from .geometry import TWO_PI, Arc, BoundaryComponent, FullCircle, PolycircularCondenser, Segment

# piece kinds for cancellation-free node differences
GENERIC, CIRCULAR, LINEAR, FULL = 0, 1, 2, 3


def _v(s, p):
    c = 1.0 / p - 0.5
    u = 1.0 - 2.0 * s
    return c * u**3 - u / p + 0.5, -6.0 * c * u**2 + 2.0 / p, 24.0 * c * u


def kress_substitution(s, p: int = 3):
    """Graded map ``w`` of ``[0, 1]`` onto itself with ``w'`` of order ``s**(p-1)`` at 0 and 1.

    Returns ``(w, w', w'')``.
    """
    s = np.asarray(s, dtype=float)
    v0, v1, v2 = _v(s, p)
    r0, r1, r2 = _v(1.0 - s, p)
    # a = v(s)^p, b = v(1-s)^p and their s-derivatives
    a = v0**p
    b = r0**p
    a1 = p * v0 ** (p - 1) * v1
    b1 = -p * r0 ** (p - 1) * r1
    a2 = p * (p - 1) * v0 ** (p - 2) * v1**2 + p * v0 ** (p - 1) * v2
    b2 = p * (p - 1) * r0 ** (p - 2) * r1**2 + p * r0 ** (p - 1) * r2
    d = a + b
    num = a1 * b - a * b1
    w = a / d
    w1 = num / d**2
    w2 = ((a2 * b - a * b2) * d - 2.0 * num * (a1 + b1)) / d**3
    return w, w1, w2


def grading_delta(t, corners, p: int = 3):
    """Graded reparametrization ``delta`` and its first two derivatives.

    ``corners`` are the sorted corner parameters in ``[0, 2*pi)``; an empty
    list gives the identity. Arguments are reduced mod ``2*pi``.
    """
    if p < 2:
        raise InvalidParameter(f"grading parameter must be >= 2, got {p}")
    t = np.mod(np.asarray(t, dtype=float), TWO_PI)
    corners = np.asarray(sorted(corners), dtype=float)
    if corners.size == 0:
        return t, np.ones_like(t), np.zeros_like(t)
    knots = np.concatenate([corners, [corners[0] + TWO_PI]])
    tt = np.where(t < corners[0], t + TWO_PI, t)
    idx = np.clip(np.searchsorted(knots, tt, side="right") - 1, 0, len(corners) - 1)
    lo = knots[idx]
    length = knots[idx + 1] - lo
    w, w1, w2 = kress_substitution((tt - lo) / length, p)
    delta = np.mod(lo + length * w, TWO_PI)
    return delta, w1, w2 / length


@dataclass(frozen=True)
class ComponentParametrization:
    component: BoundaryComponent

    @property
    def corner_params(self) -> np.ndarray:
        if self.component.is_smooth:
            return np.zeros(0)
        ell = len(self.component.arcs)
        return TWO_PI * np.arange(ell) / ell

    @property
    def smooth(self) -> bool:
        return self.component.is_smooth

    def zeta(self, t):
        """``zeta``, ``zeta'``, ``zeta''`` at parameters ``t`` (mod 2*pi).

        At a corner the left-sided derivative is returned.
        """
        t = np.mod(np.asarray(t, dtype=float), TWO_PI)
        arcs = self.component.arcs
        ell = len(arcs)
        scale = ell / TWO_PI
        x = t * scale
        idx = np.minimum(np.floor(x).astype(int), ell - 1)
        sigma = x - idx
        # left limit at corners
        at_corner = (sigma == 0) & (t > 0)
        idx = np.where(at_corner, idx - 1, idx)
        sigma = np.where(at_corner, 1.0, sigma)
        z = np.empty(t.shape, complex)
        z1 = np.empty(t.shape, complex)
        z2 = np.empty(t.shape, complex)
        for i, arc in enumerate(arcs):
            sel = idx == i
            if not sel.any():
                continue
            sg = sigma[sel]
            z[sel] = arc.eval(sg)
            z1[sel] = np.asarray(arc.deriv(sg)) * scale
            z2[sel] = np.asarray(arc.deriv2(sg)) * scale**2
        return z, z1, z2

    def eta(self, t, p: int = 3):
        """Graded parametrization ``eta = zeta(delta(t))`` and derivatives by the chain rule."""
        if self.smooth:
            return self.zeta(t)
        t = np.asarray(t, dtype=float)
        # same substitution as grading_delta, evaluated per piece on its local parameter
        arcs = self.component.arcs
        ell = len(arcs)
        scale = ell / TWO_PI
        tt = np.mod(t, TWO_PI)
        idx = np.minimum(np.floor(tt * scale).astype(int), ell - 1)
        s_local = tt * scale - idx
        w, w1, w2 = kress_substitution(s_local, p)
        z = np.empty(t.shape, complex)
        z1 = np.empty(t.shape, complex)
        z2 = np.empty(t.shape, complex)
        for i, arc in enumerate(arcs):
            sel = idx == i
            if not sel.any():
                continue
            ws, w1s, w2s = w[sel], w1[sel] * scale, w2[sel] * scale**2
            z[sel] = arc.eval(ws)
            dz = np.asarray(arc.deriv(ws))
            z1[sel] = dz * w1s
            z2[sel] = np.asarray(arc.deriv2(ws)) * w1s**2 + dz * w2s
        return z, z1, z2

    def local(self, t, p: int = 3):
        """Per-node piece data for differences of nearby nodes.

        Returns ``(piece, kind, loc, fac, base, scale)``. On a circular piece
        the node angle is ``base + fac * loc`` and ``scale`` is the radius; on a
        segment the node is ``a + scale * loc``. A full circle (kind ``FULL``)
        has ``loc = t`` itself, so angle differences reuse the parameter
        differences, and its nodes are adjacent across ``t = 0``.
        """
        t = np.asarray(t, dtype=float)
        arcs = self.component.arcs
        ell = len(arcs)
        size = t.shape
        kind = np.zeros(size, np.int64)
        fac = np.zeros(size)
        base = np.zeros(size)
        scale = np.zeros(size, complex)
        if self.smooth:
            arc = arcs[0]
            if isinstance(arc, FullCircle):
                kind[:] = FULL
                fac[:] = arc.sweep / TWO_PI
                scale[:] = arc.radius
            return np.zeros(size, np.int64), kind, t.copy(), fac, base, scale
        tt = np.mod(t, TWO_PI)
        idx = np.minimum(np.floor(tt * ell / TWO_PI).astype(int), ell - 1)
        loc = kress_substitution(tt * ell / TWO_PI - idx, p)[0]
        for i, arc in enumerate(arcs):
            sel = idx == i
            if isinstance(arc, Arc):
                kind[sel] = CIRCULAR
                fac[sel] = arc.sweep
                base[sel] = arc.theta_start
                scale[sel] = arc.radius
            elif isinstance(arc, Segment):
                kind[sel] = LINEAR
                fac[sel] = 1.0
                scale[sel] = arc.b - arc.a
        return idx.astype(np.int64), kind, loc, fac, base, scale


@dataclass(frozen=True)
class DiscreteBoundary:
    """Nodes of all components, ``n`` per component, stacked outer first."""

    n: int
    m_plus_1: int
    grading_p: int
    t: np.ndarray
    eta: np.ndarray
    etap: np.ndarray
    etapp: np.ndarray
    comp: np.ndarray
    # piece data per node, see ComponentParametrization.local
    piece: np.ndarray | None = None
    kind: np.ndarray | None = None
    loc: np.ndarray | None = None
    fac: np.ndarray | None = None
    base: np.ndarray | None = None
    scale: np.ndarray | None = None

    @property
    def size(self) -> int:
        return self.n * self.m_plus_1

    def block(self, j: int) -> slice:
        return slice(j * self.n, (j + 1) * self.n)


def node_params(n: int) -> np.ndarray:
    return (np.arange(n) + 0.5) * TWO_PI / n


def discretize(condenser: PolycircularCondenser, n: int, p: int = 3) -> DiscreteBoundary:
    """Graded nodes on every component of ``condenser``, outer first."""
    return discretize_components(condenser.components, n, p)


def discretize_components(components, n: int, p: int = 3) -> DiscreteBoundary:
    if n % 2 or n <= 0:
        raise InvalidParameter(f"n must be a positive even integer, got {n}")
    if p < 2:
        raise InvalidParameter(f"grading parameter must be >= 2, got {p}")
    max_corners = max(c.corner_count for c in components)
    if n < 4 * max_corners:
        raise InvalidParameter(f"n={n} is too small for {max_corners} corners (need n >= {4 * max_corners})")
    t = node_params(n)
    parts = [ComponentParametrization(c).eta(t, p) for c in components]
    eta = np.concatenate([q[0] for q in parts])
    etap = np.concatenate([q[1] for q in parts])
    etapp = np.concatenate([q[2] for q in parts])
    m1 = len(parts)
    pieces = [ComponentParametrization(c).local(t, p) for c in components]
    offsets = np.cumsum([0] + [len(c.arcs) for c in components])
    return DiscreteBoundary(
        n=n,
        m_plus_1=m1,
        grading_p=p,
        t=np.tile(t, m1),
        eta=eta,
        etap=etap,
        etapp=etapp,
        comp=np.repeat(np.arange(m1), n),
        piece=np.concatenate([q[0] + off for q, off in zip(pieces, offsets)]),
        kind=np.concatenate([q[1] for q in pieces]),
        loc=np.concatenate([q[2] for q in pieces]),
        fac=np.concatenate([q[3] for q in pieces]),
        base=np.concatenate([q[4] for q in pieces]),
        scale=np.concatenate([q[5] for q in pieces]),
    )


def corner_distance(n: int, corners) -> float:
    """Smallest parameter distance between a node and a corner."""
    if len(corners) == 0:
        return math.inf
    t = node_params(n)
    c = np.asarray(corners)
    d = np.abs(t[:, None] - c[None, :])
    return float(np.min(np.minimum(d, TWO_PI - d)))
