"""Polycircular condensers: arcs, boundary components, validation, Moebius maps.

Points are plain Python/NumPy complex numbers. Every boundary piece carries a
smooth local parametrization on sigma in [0, 1] with analytic first and second
derivatives, which the kernel evaluation downstream relies on.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Sequence, Union

import numpy as np

from .errors import InvalidGeometry, InvalidParameter, PointOnBoundary

TWO_PI = 2.0 * math.pi
CLOSURE_TOL = 1e-12
COLLINEAR_TOL = 1e-12


@dataclass(frozen=True)
class Arc:
    """Circular arc ``center + radius * exp(i*(theta_start + sigma*sweep))``."""

    center: complex
    radius: float
    theta_start: float
    theta_end: float
    # construction data (kind, points...) kept for exact re-serialization
    origin: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.radius > 0 or not math.isfinite(self.radius):
            raise InvalidGeometry(f"arc radius must be positive, got {self.radius}")
        sweep = self.sweep
        if not 0.0 < abs(sweep) < TWO_PI:
            raise InvalidGeometry(f"arc sweep must satisfy 0 < |sweep| < 2*pi, got {sweep}")

    @property
    def sweep(self) -> float:
        return self.theta_end - self.theta_start

    def eval(self, sigma):
        return self.center + self.radius * np.exp(1j * (self.theta_start + np.multiply(sigma, self.sweep)))

    def deriv(self, sigma):
        return 1j * self.sweep * (self.eval(sigma) - self.center)

    def deriv2(self, sigma):
        return -(self.sweep**2) * (self.eval(sigma) - self.center)

    @property
    def length(self) -> float:
        return self.radius * abs(self.sweep)


@dataclass(frozen=True)
class Segment:
    a: complex
    b: complex
    origin: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.a == self.b:
            raise InvalidGeometry("segment endpoints coincide")

    def eval(self, sigma):
        return self.a + np.multiply(sigma, self.b - self.a)

    def deriv(self, sigma):
        return np.full(np.shape(sigma), self.b - self.a, dtype=complex) if np.ndim(sigma) else complex(self.b - self.a)

    def deriv2(self, sigma):
        return np.zeros(np.shape(sigma), dtype=complex) if np.ndim(sigma) else 0j

    @property
    def length(self) -> float:
        return abs(self.b - self.a)


@dataclass(frozen=True)
class FullCircle:
    """Whole circle starting at angle 0; ``ccw`` selects the direction."""

    center: complex
    radius: float
    ccw: bool = True

    def __post_init__(self):
        if not self.radius > 0 or not math.isfinite(self.radius):
            raise InvalidGeometry(f"circle radius must be positive, got {self.radius}")

    @property
    def sweep(self) -> float:
        return TWO_PI if self.ccw else -TWO_PI

    def eval(self, sigma):
        return self.center + self.radius * np.exp(1j * np.multiply(sigma, self.sweep))

    def deriv(self, sigma):
        return 1j * self.sweep * (self.eval(sigma) - self.center)

    def deriv2(self, sigma):
        return -(self.sweep**2) * (self.eval(sigma) - self.center)

    @property
    def length(self) -> float:
        return TWO_PI * self.radius


def mobius(a: complex, z):
    """Disk automorphism ``T_a(z) = (z - a) / (1 - conj(a) z)``."""
    return (z - a) / (1.0 - np.conj(a) * z)


@dataclass(frozen=True)
class MobiusImage:
    """Image of ``base`` under ``T_a``, parametrized as ``T_a(base(sigma))``.

    Geometrically this is again an arc, segment or circle (see
    :meth:`as_canonical`), but the parametrization is carried over from
    ``base``, so a discretization of the image is the exact image of the
    discretization of ``base``.
    """

    base: object
    a: complex

    def eval(self, sigma):
        return mobius(self.a, self.base.eval(sigma))

    def _d(self, z):
        q = 1.0 - np.conj(self.a) * z
        k = 1.0 - abs(self.a) ** 2
        return k / q**2, 2.0 * np.conj(self.a) * k / q**3

    def deriv(self, sigma):
        d1, _ = self._d(self.base.eval(sigma))
        return d1 * self.base.deriv(sigma)

    def deriv2(self, sigma):
        d1, d2 = self._d(self.base.eval(sigma))
        b1 = self.base.deriv(sigma)
        return d2 * b1**2 + d1 * self.base.deriv2(sigma)

    @cached_property
    def canonical(self):
        return _mobius_rebuild(self.a, self.base)

    def as_canonical(self):
        return self.canonical

    @property
    def is_full(self) -> bool:
        return _is_full(self.base)

    @property
    def length(self) -> float:
        return self.canonical.length


CircularArc = Union[Arc, Segment, FullCircle, MobiusImage]


def _is_full(piece) -> bool:
    return isinstance(piece, FullCircle) or (isinstance(piece, MobiusImage) and piece.is_full)


def canonical_piece(piece):
    """Arc, Segment or FullCircle with the same point set (orientation kept)."""
    return piece.canonical if isinstance(piece, MobiusImage) else piece


def arc_start(arc: CircularArc) -> complex:
    if isinstance(arc, Segment):
        return arc.a
    return complex(arc.eval(0.0))


def arc_end(arc: CircularArc) -> complex:
    if isinstance(arc, Segment):
        return arc.b
    return complex(arc.eval(1.0))


def arc_eval(arc: CircularArc, sigma):
    return arc.eval(sigma)


def arc_deriv(arc: CircularArc, sigma):
    return arc.deriv(sigma)


def arc_deriv2(arc: CircularArc, sigma):
    return arc.deriv2(sigma)


def _sweep_between(theta_s: float, theta_e: float, ccw: bool) -> float:
    if ccw:
        return (theta_e - theta_s) % TWO_PI
    return -((theta_s - theta_e) % TWO_PI)


def circumcenter(z1: complex, z2: complex, z3: complex) -> complex:
    a, b = z2 - z1, z3 - z1
    den = a.conjugate() * b - a * b.conjugate()
    if den == 0:
        raise InvalidGeometry("points are collinear")
    return z1 + (abs(a) ** 2 * b - abs(b) ** 2 * a) / den


def arc_from_three_points(z1: complex, zmid: complex, z2: complex) -> CircularArc:
    """Arc from ``z1`` to ``z2`` passing through ``zmid``.

    Collinear input (``zmid`` within ``1e-12 * |z2 - z1|`` of the line) gives a
    :class:`Segment` from ``z1`` to ``z2``.
    """
    z1, zmid, z2 = complex(z1), complex(zmid), complex(z2)
    if z1 == zmid or z1 == z2 or zmid == z2:
        raise InvalidGeometry(f"coincident points in three-point arc: {z1}, {zmid}, {z2}")
    chord = z2 - z1
    cross = (chord.conjugate() * (zmid - z1)).imag
    origin = ("three_point", z1, zmid, z2)
    if abs(cross) / abs(chord) < COLLINEAR_TOL * abs(chord):
        along = ((zmid - z1) / chord).real
        if not 0.0 < along < 1.0:
            raise InvalidGeometry(f"collinear points with {zmid} outside the chord from {z1} to {z2}")
        return Segment(z1, z2, origin)
    c = circumcenter(z1, zmid, z2)
    radius = abs(z1 - c)
    # left turn z1 -> zmid -> z2 means the arc is traversed counterclockwise
    ccw = ((zmid - z1).conjugate() * (z2 - zmid)).imag > 0
    theta_s = cmath.phase(z1 - c)
    sweep = _sweep_between(theta_s, cmath.phase(z2 - c), ccw)
    return Arc(c, radius, theta_s, theta_s + sweep, origin)


def arc_from_endpoints_center(a: complex, b: complex, center: complex, ccw: bool) -> Arc:
    a, b, center = complex(a), complex(b), complex(center)
    ra, rb = abs(a - center), abs(b - center)
    if ra == 0 or rb == 0:
        raise InvalidGeometry("arc endpoint coincides with the center")
    if abs(ra - rb) > 1e-10 * max(ra, rb):
        raise InvalidGeometry(f"endpoints are not equidistant from the center ({ra} vs {rb})")
    if a == b:
        raise InvalidGeometry("arc endpoints coincide (zero sweep)")
    theta_s = cmath.phase(a - center)
    sweep = _sweep_between(theta_s, cmath.phase(b - center), ccw)
    if sweep == 0:
        raise InvalidGeometry("arc endpoints coincide (zero sweep)")
    return Arc(center, ra, theta_s, theta_s + sweep, ("endpoint_center", a, b, center, bool(ccw)))


@dataclass(frozen=True)
class BoundaryComponent:
    arcs: tuple

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))
        if not self.arcs:
            raise InvalidGeometry("a boundary component needs at least one arc")
        if any(_is_full(a) for a in self.arcs) and len(self.arcs) > 1:
            raise InvalidGeometry("a full circle must be the only piece of its component")

    @property
    def corner_count(self) -> int:
        return 0 if self.is_smooth else len(self.arcs)

    @property
    def is_smooth(self) -> bool:
        return len(self.arcs) == 1 and _is_full(self.arcs[0])

    def sample(self, per_arc: int = 64) -> np.ndarray:
        """Points along the component, each arc sampled at ``per_arc`` points (end excluded)."""
        sig = np.arange(per_arc) / per_arc
        return np.concatenate([np.asarray(a.eval(sig), dtype=complex) for a in self.arcs])

    def closure_gap(self) -> float:
        if self.is_smooth:
            return 0.0
        ends = [arc_end(a) for a in self.arcs]
        starts = [arc_start(a) for a in self.arcs]
        return max(abs(ends[i] - starts[(i + 1) % len(self.arcs)]) for i in range(len(self.arcs)))

    def signed_area(self) -> float:
        total = 0.0
        for arc in map(canonical_piece, self.arcs):
            if isinstance(arc, Segment):
                total += 0.5 * (arc.a.conjugate() * arc.b).imag
            else:
                c, r = arc.center, arc.radius
                th0 = arc.theta_start if isinstance(arc, Arc) else 0.0
                th1 = th0 + arc.sweep
                # (1/2) Im(conj(z) dz) integrated exactly over the arc
                chord = (cmath.exp(1j * th1) - cmath.exp(1j * th0)) / 1j
                total += 0.5 * r * ((c.conjugate() * chord).real + r * arc.sweep)
        return total

    def reversed(self) -> "BoundaryComponent":
        return BoundaryComponent(tuple(reverse_arc(a) for a in reversed(self.arcs)))

    def midpoints(self) -> np.ndarray:
        return np.array([complex(a.eval(0.5)) for a in self.arcs])

    def corner_angles(self) -> np.ndarray:
        """Angle on the left of each corner, measured from arc i into arc i+1."""
        if self.is_smooth:
            return np.zeros(0)
        out = []
        ell = len(self.arcs)
        for i in range(ell):
            d_in = complex(self.arcs[i].deriv(1.0))
            d_out = complex(self.arcs[(i + 1) % ell].deriv(0.0))
            turn = cmath.phase(d_out / d_in)
            out.append(math.pi - turn)
        return np.array(out)


def reverse_arc(arc: CircularArc) -> CircularArc:
    if isinstance(arc, MobiusImage):
        return MobiusImage(reverse_arc(arc.base), arc.a)
    if isinstance(arc, Segment):
        return Segment(arc.b, arc.a)
    if isinstance(arc, FullCircle):
        return FullCircle(arc.center, arc.radius, not arc.ccw)
    return Arc(arc.center, arc.radius, arc.theta_end, arc.theta_start)


def _distance_to_arc(arc: CircularArc, z: complex) -> float:
    arc = canonical_piece(arc)
    if isinstance(arc, Segment):
        d = arc.b - arc.a
        s = min(1.0, max(0.0, ((z - arc.a) * d.conjugate()).real / abs(d) ** 2))
        return abs(z - (arc.a + s * d))
    w = z - arc.center
    if isinstance(arc, FullCircle) or w == 0:
        return abs(abs(w) - arc.radius)
    lo, sw = arc.theta_start, arc.sweep
    frac = ((cmath.phase(w) - lo) * math.copysign(1.0, sw)) % TWO_PI
    if frac <= abs(sw):
        return abs(abs(w) - arc.radius)
    return min(abs(z - arc_start(arc)), abs(z - arc_end(arc)))


def distance_to_component(component: BoundaryComponent, z: complex) -> float:
    return min(_distance_to_arc(a, complex(z)) for a in component.arcs)


def winding_number(component: BoundaryComponent, z: complex, tol: float = 1e-12) -> int:
    """Winding number of ``component`` about ``z`` by summed angle increments.

    Each arc is sampled finely enough that consecutive chords subtend less
    than pi/2 as seen from ``z``, so the summed principal angles are exact.
    """
    z = complex(z)
    dist = distance_to_component(component, z)
    if dist < tol:
        raise PointOnBoundary(f"point {z} lies on the boundary (distance {dist:.3e})")
    total = 0.0
    for arc in component.arcs:
        k = int(min(1_000_000, math.ceil(2.0 * arc.length / dist))) + 2
        w = np.asarray(arc.eval(np.linspace(0.0, 1.0, k + 1)), dtype=complex) - z
        total += float(np.sum(np.angle(w[1:] / w[:-1])))
    return int(round(total / TWO_PI))


@dataclass(frozen=True)
class PolycircularCondenser:
    """Outer component (counterclockwise) and holes (clockwise).

    ``alpha`` is a point of the domain between them and ``alpha_k`` one point
    inside each hole. Either may be ``None``; :func:`with_default_points`
    fills them in.
    """

    outer: BoundaryComponent
    holes: tuple
    alpha: complex | None = None
    alpha_k: tuple | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "holes", tuple(self.holes))
        if not self.holes:
            raise InvalidGeometry("a condenser needs at least one hole")
        if self.alpha is not None:
            object.__setattr__(self, "alpha", complex(self.alpha))
        if self.alpha_k is not None:
            ak = tuple(complex(a) for a in self.alpha_k)
            if len(ak) != len(self.holes):
                raise InvalidGeometry(f"expected {len(self.holes)} alpha_k points, got {len(ak)}")
            object.__setattr__(self, "alpha_k", ak)

    @property
    def m(self) -> int:
        return len(self.holes)

    @property
    def components(self) -> tuple:
        return (self.outer,) + self.holes


def in_domain(condenser: PolycircularCondenser, z: complex) -> bool:
    """True iff ``z`` lies strictly inside the outer component and outside every hole."""
    try:
        if winding_number(condenser.outer, z) == 0:
            return False
        return all(winding_number(h, z) == 0 for h in condenser.holes)
    except PointOnBoundary:
        return False


def default_alpha_k(component: BoundaryComponent) -> complex:
    """Mean of the arc midpoints; raises if that point is not enclosed."""
    if component.is_smooth:
        return complex(canonical_piece(component.arcs[0]).center)
    guess = complex(np.mean(component.midpoints()))
    try:
        enclosed = winding_number(component, guess) != 0
    except PointOnBoundary:
        enclosed = False
    if not enclosed:
        raise InvalidGeometry(
            f"default auxiliary point {guess} is not enclosed by its component; supply alpha_k explicitly"
        )
    return guess


def default_alpha(condenser: PolycircularCondenser) -> complex:
    """Deterministic point of the domain, well separated from every component.

    Candidates are pulled from points of the outer boundary towards its
    centroid; the one farthest from the whole boundary wins.
    """
    ring = condenser.outer.sample(32)
    centroid = complex(np.mean(ring))
    best, best_d = None, -1.0
    for lam in (0.05, 0.1, 0.15, 0.2, 0.3, 0.4):
        for w in ring:
            z = complex(w + lam * (centroid - w))
            d = min(distance_to_component(c, z) for c in condenser.components)
            if d > best_d and in_domain(condenser, z):
                best, best_d = z, d
    if best is None:
        raise InvalidGeometry("could not find a default alpha inside the domain; supply it explicitly")
    return best


def with_default_points(condenser: PolycircularCondenser) -> PolycircularCondenser:
    alpha = condenser.alpha if condenser.alpha is not None else default_alpha(condenser)
    alpha_k = condenser.alpha_k
    if alpha_k is None:
        alpha_k = tuple(default_alpha_k(h) for h in condenser.holes)
    return replace(condenser, alpha=alpha, alpha_k=alpha_k)


def _segments_cross(p: np.ndarray, q: np.ndarray, skip_adjacent: bool) -> bool:
    """Whether any edge of closed polyline ``p`` properly crosses an edge of ``q``."""
    a0, a1 = p, np.roll(p, -1)
    b0, b1 = q, np.roll(q, -1)

    def orient(u, v, w):
        return ((v - u).conjugate() * (w - u)).imag

    A0, A1 = a0[:, None], a1[:, None]
    B0, B1 = b0[None, :], b1[None, :]
    d1 = orient(A0, A1, B0)
    d2 = orient(A0, A1, B1)
    d3 = orient(B0, B1, A0)
    d4 = orient(B0, B1, A1)
    hit = (d1 * d2 < 0) & (d3 * d4 < 0)
    if skip_adjacent:
        n = len(p)
        idx = np.arange(n)
        hit[idx, idx] = False
        hit[idx, (idx + 1) % n] = False
        hit[(idx + 1) % n, idx] = False
    return bool(hit.any())


def validate(
    condenser: PolycircularCondenser,
    min_corner_angle: float = math.radians(1.0),
    auto_repair: bool = False,
):
    """Check every condenser invariant.

    Returns ``violations`` (a list of strings, empty when valid). With
    ``auto_repair=True`` the return value is ``(violations, repaired)`` where
    components with only an orientation problem are flipped.
    """
    violations = []
    comps = condenser.components
    names = ["outer"] + [f"hole {k + 1}" for k in range(condenser.m)]
    orientation_only = True
    repaired = list(comps)

    for j, (comp, name) in enumerate(zip(comps, names)):
        gap = comp.closure_gap()
        if gap > CLOSURE_TOL:
            violations.append(f"{name}: not closed (endpoint gap {gap:.3e})")
            orientation_only = False
            continue
        angles = comp.corner_angles()
        for i, ang in enumerate(angles):
            if min(ang, TWO_PI - ang) < min_corner_angle:
                violations.append(f"{name}: cusp at corner {i} (angle {math.degrees(ang):.4f} deg)")
                orientation_only = False
        poly = comp.sample(64)
        if _segments_cross(poly, poly, skip_adjacent=True):
            violations.append(f"{name}: self-intersecting")
            orientation_only = False
        area = comp.signed_area()
        want_positive = j == 0
        if (area > 0) != want_positive:
            violations.append(f"{name}: wrong orientation (signed area {area:.6g})")
            repaired[j] = comp.reversed()

    if not violations or orientation_only:
        outer_poly = comps[0].sample(64)
        for k, hole in enumerate(condenser.holes):
            pts = hole.sample(16)
            try:
                inside = all(winding_number(comps[0], z) != 0 for z in pts)
            except PointOnBoundary:
                inside = False
            if not inside or _segments_cross(outer_poly, hole.sample(64), skip_adjacent=False):
                violations.append(f"hole {k + 1}: not strictly inside the outer component")
                orientation_only = False
        for k in range(condenser.m):
            for l in range(k + 1, condenser.m):
                hk, hl = condenser.holes[k], condenser.holes[l]
                overlap = _segments_cross(hk.sample(64), hl.sample(64), skip_adjacent=False)
                try:
                    overlap = overlap or winding_number(hl, arc_start(hk.arcs[0])) != 0
                    overlap = overlap or winding_number(hk, arc_start(hl.arcs[0])) != 0
                except PointOnBoundary:
                    overlap = True
                if overlap:
                    violations.append(f"holes {k + 1} and {l + 1} intersect or are nested")
                    orientation_only = False

    if not violations or orientation_only:
        if condenser.alpha_k is not None:
            for k, (hole, ak) in enumerate(zip(condenser.holes, condenser.alpha_k)):
                try:
                    w = winding_number(hole, ak)
                except PointOnBoundary:
                    w = 0
                if w == 0:
                    violations.append(f"alpha_k[{k}] = {ak} is not enclosed by hole {k + 1}")
                    orientation_only = False
        if condenser.alpha is not None and not in_domain(condenser, condenser.alpha):
            violations.append(f"alpha = {condenser.alpha} is not inside the domain")
            orientation_only = False

    if auto_repair:
        if violations and orientation_only:
            fixed = replace(condenser, outer=repaired[0], holes=tuple(repaired[1:]))
            return validate(fixed, min_corner_angle), fixed
        return violations, condenser
    return violations


def _mobius_rebuild(a: complex, arc: CircularArc) -> CircularArc:
    if _is_full(arc):
        w = [complex(mobius(a, arc.eval(s))) for s in (0.0, 1.0 / 3.0, 2.0 / 3.0)]
        c = circumcenter(*w)
        ccw = ((w[1] - w[0]).conjugate() * (w[2] - w[1])).imag > 0
        return FullCircle(c, abs(w[0] - c), ccw)
    z0, zm, z1 = arc_start(arc), complex(arc.eval(0.5)), arc_end(arc)
    return arc_from_three_points(mobius(a, z0), mobius(a, zm), mobius(a, z1))


def mobius_apply(a: complex, condenser: PolycircularCondenser, method: str = "rebuild") -> PolycircularCondenser:
    """Image of ``condenser`` under ``T_a``.

    ``method="rebuild"`` reconstructs every piece from the images of its two
    endpoints and midpoint, giving canonical arcs/segments/circles.
    ``method="pushforward"`` keeps ``T_a`` composed with the original
    parametrization (:class:`MobiusImage`).
    """
    a = complex(a)
    if not abs(a) < 1:
        raise InvalidParameter(f"Moebius parameter must satisfy |a| < 1, got {a}")
    if method not in ("rebuild", "pushforward"):
        raise InvalidParameter(f"unknown Moebius method {method!r}")
    if a == 0:
        return condenser

    def piece(arc):
        if method == "pushforward":
            return MobiusImage(arc, a)
        return _mobius_rebuild(a, arc)

    def comp(c):
        return BoundaryComponent(tuple(piece(arc) for arc in c.arcs))

    return replace(
        condenser,
        outer=comp(condenser.outer),
        holes=tuple(comp(h) for h in condenser.holes),
        alpha=None if condenser.alpha is None else complex(mobius(a, condenser.alpha)),
        alpha_k=None if condenser.alpha_k is None else tuple(complex(mobius(a, z)) for z in condenser.alpha_k),
    )


def make_circle(center: complex = 0j, radius: float = 1.0, ccw: bool = True) -> BoundaryComponent:
    return BoundaryComponent((FullCircle(complex(center), float(radius), ccw),))


def make_lens(r: float, s: float) -> BoundaryComponent:
    """Lens bounded by arcs through ``r, -is, -r`` and ``-r, is, r`` (clockwise, as a hole)."""
    if not 0 < s <= r < 1:
        raise InvalidParameter(f"lens needs 0 < s <= r < 1, got r={r}, s={s}")
    if s == r:
        return make_circle(0j, r, ccw=False)
    return BoundaryComponent(
        (
            arc_from_three_points(r, -1j * s, -r),
            arc_from_three_points(-r, 1j * s, r),
        )
    )


def make_four_lens() -> list:
    p1, p2, p3 = 0.01 + 0.7j, 0.7 * (1 + 1j) / math.sqrt(2), 0.7 + 0.01j
    q2 = 0.3 * (1 + 1j) / math.sqrt(2)
    out = []
    for rot in (1, 1j, -1, -1j):
        out.append(
            BoundaryComponent(
                (
                    arc_from_three_points(rot * p1, rot * p2, rot * p3),
                    arc_from_three_points(rot * p3, rot * q2, rot * p1),
                )
            )
        )
    return out


def unit_disk_condenser(holes: Sequence[BoundaryComponent], alpha=None, alpha_k=None, name="") -> PolycircularCondenser:
    return PolycircularCondenser(make_circle(0j, 1.0, True), tuple(holes), alpha, alpha_k, name)


def mobius_e_candidates() -> dict:
    """Both readings of the two-arc set ``E`` used in the Moebius experiment.

    ``"literal"`` takes the first arc through ``-2, 0.6i, 0.2`` as written,
    ``"typo"`` through ``-0.2, 0.6i, 0.2``. The second arc runs through
    ``0.2, 0.1i, -0.2`` in both. Only the ``"typo"`` reading yields a closed
    curve inside the disk; :func:`validate` rejects the literal one.
    """
    second = arc_from_three_points(0.2, 0.1j, -0.2)
    return {
        "literal": BoundaryComponent((arc_from_three_points(-2.0, 0.6j, 0.2), second)),
        "typo": BoundaryComponent((arc_from_three_points(-0.2, 0.6j, 0.2), second)),
    }


def make_mobius_e_condenser() -> PolycircularCondenser:
    return unit_disk_condenser([mobius_e_candidates()["typo"]], alpha=-0.3j, alpha_k=[0.3j], name="mobius-E")


# Best-effort reading of the Bart Simpson hole, in units of 1/9. Pieces are
# listed in traversal order (clockwise); "three_point" arcs pass through "via".
BART_SIMPSON_PIECES = (
    {"kind": "three_point", "a": (-3, 1), "via": (-2, 3), "b": (0, 4)},
    {"kind": "endpoint_center", "a": (0, 4), "b": (-1, 1), "center": (4, 1), "ccw": True},
    {"kind": "three_point", "a": (-1, 1), "via": (0, 3), "b": (2, 4)},
    {"kind": "endpoint_center", "a": (2, 4), "b": (1, 1), "center": (6, 1), "ccw": True},
    {"kind": "three_point", "a": (1, 1), "via": (2, 3), "b": (4, 4)},
    {"kind": "endpoint_center", "a": (4, 4), "b": (3, 1), "center": (8, 1), "ccw": True},
    {"kind": "segment", "a": (3, 1), "b": (3, -3)},
    {"kind": "segment", "a": (3, -3), "b": (-3, -3)},
    {"kind": "segment", "a": (-3, -3), "b": (-3, 1)},
)


def make_bart_simpson(pieces=BART_SIMPSON_PIECES, unit: float = 9.0) -> PolycircularCondenser:
    """Bart Simpson condenser in the unit disk from the piece table above."""

    def z(p):
        return complex(p[0], p[1]) / unit

    arcs = []
    for p in pieces:
        if p["kind"] == "three_point":
            arcs.append(arc_from_three_points(z(p["a"]), z(p["via"]), z(p["b"])))
        elif p["kind"] == "endpoint_center":
            arcs.append(arc_from_endpoints_center(z(p["a"]), z(p["b"]), z(p["center"]), p["ccw"]))
        elif p["kind"] == "segment":
            arcs.append(Segment(z(p["a"]), z(p["b"])))
        else:
            raise InvalidGeometry(f"unknown piece kind {p['kind']!r}")
    return unit_disk_condenser([BoundaryComponent(tuple(arcs))], alpha=-0.5j, alpha_k=[0j], name="bart")
