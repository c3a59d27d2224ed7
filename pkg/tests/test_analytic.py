import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from polycap.analytic import (
    EllipticModulus,
    agm,
    bound_lower,
    bound_upper,
    cap_annulus,
    cap_disk_segment,
    ellip_K,
    hyperbolic_perimeter,
    mu_grotzsch,
)
from polycap.errors import DomainError
from polycap.geometry import arc_deriv, arc_eval, make_circle, make_lens


def K_quad(r):
    # substitution x = sin(phi) removes the endpoint singularity
    val, _ = quad(lambda p: 1.0 / math.sqrt(1 - (r * math.sin(p)) ** 2), 0, math.pi / 2, epsabs=0, epsrel=1e-13, limit=200)
    return val


def test_K_zero_exact():
    assert ellip_K(0.0) == math.pi / 2


@pytest.mark.parametrize("r", [1 / math.sqrt(2), 0.1, 0.5, 0.9, 0.999])
def test_K_matches_quadrature(r):
    assert ellip_K(r) == pytest.approx(K_quad(r), rel=1e-13)


def test_K_defining_integral_form():
    r = 1 / math.sqrt(2)
    val, _ = quad(lambda x: 1 / math.sqrt((1 - x * x) * (1 - r * r * x * x)), 0, 1, epsabs=1e-13, limit=200)
    assert ellip_K(r) == pytest.approx(val, rel=1e-10)


def test_K_increasing():
    vals = [ellip_K(r) for r in np.arange(1, 10) / 10]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_K_domain():
    for r in (1.0, 1.5, -0.1):
        with pytest.raises(DomainError):
            ellip_K(r)


@pytest.mark.parametrize("r", [1e-8, 1e-3, 0.5, 1 - 1e-3, 1 - 1e-8])
def test_agm_iteration_bound(r):
    em = EllipticModulus.from_r(r)
    assert abs(em.r**2 + em.r_prime**2 - 1) < 1e-15
    for b in (em.r, em.r_prime):
        _, it = agm(1.0, b)
        assert it <= 10


def test_mu_symmetric_point():
    assert mu_grotzsch(1 / math.sqrt(2)) == pytest.approx(math.pi / 2, rel=1e-15)


def test_mu_segment_value():
    assert mu_grotzsch(2 * 0.8 / (1 + 0.8**2)) == pytest.approx(2 * math.pi / 7.360222723821019, rel=1e-14)


@pytest.mark.parametrize("r", [0.2, 0.5, 0.77])
def test_mu_product_identity(r):
    assert mu_grotzsch(r) * mu_grotzsch(math.sqrt(1 - r * r)) == pytest.approx(math.pi**2 / 4, abs=1e-12)


def test_mu_decreasing_and_domain():
    vals = [mu_grotzsch(r) for r in np.linspace(0.01, 0.99, 50)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    for r in (0.0, 1.0):
        with pytest.raises(DomainError):
            mu_grotzsch(r)


def test_mu_against_quadrature_oracle():
    r = 0.3
    rp = math.sqrt(1 - r * r)
    assert mu_grotzsch(r) == pytest.approx(math.pi / 2 * K_quad(rp) / K_quad(r), rel=1e-13)


def test_cap_annulus_values():
    assert cap_annulus(0.7) == pytest.approx(17.615998583457760, abs=1e-12)
    assert cap_annulus(0.8) == pytest.approx(28.157593038985901, abs=1e-12)
    assert cap_annulus(math.exp(-2 * math.pi)) == pytest.approx(1.0, rel=1e-15)
    with pytest.raises(DomainError):
        cap_annulus(1.0)


def test_cap_annulus_monotone():
    qs = np.linspace(0.05, 0.95, 30)
    caps = [cap_annulus(q) for q in qs]
    assert all(b > a for a, b in zip(caps, caps[1:]))


def test_cap_disk_segment():
    assert cap_disk_segment(0.8) == pytest.approx(7.360222723821019, abs=1e-13)
    assert cap_disk_segment(1e-6) < cap_disk_segment(1e-3) < 1.0
    for r in (0.5, 0.8):
        assert cap_disk_segment(r) < cap_annulus(r)
    with pytest.raises(DomainError):
        cap_disk_segment(0.0)


@settings(max_examples=100)
@given(st.floats(0.01, 0.99))
def test_upper_bound_sharp_for_disks(r):
    L = 4 * math.pi * r / (1 - r * r)
    assert bound_upper(L) == pytest.approx(cap_annulus(r), rel=1e-12)


@settings(max_examples=100)
@given(st.floats(0.01, 0.99))
def test_lower_bound_sharp_for_segments(r):
    L = 8 * math.atanh(r)
    assert bound_lower(L) == pytest.approx(cap_disk_segment(r), rel=1e-12)


def test_bounds_domain_and_order():
    with pytest.raises(DomainError):
        bound_upper(0.0)
    with pytest.raises(DomainError):
        bound_lower(-1.0)
    for L in (0.5, 5.0, 50.0):
        assert bound_lower(L) < bound_upper(L)


def test_upper_bound_at_disk_perimeter():
    L = 4 * math.pi * 0.8 / (1 - 0.64)
    assert L == pytest.approx(27.925268031909273, rel=1e-15)
    assert bound_upper(L) == pytest.approx(28.157593038985901, abs=1e-10)


def test_hyperbolic_perimeter_circle():
    for r in (0.8, 0.3):
        comp = make_circle(0j, r, ccw=False)
        assert hyperbolic_perimeter(comp) == pytest.approx(4 * math.pi * r / (1 - r * r), rel=1e-13)


def test_hyperbolic_perimeter_lens_quadrature_oracle():
    lens = make_lens(0.8, 0.3)
    total = 0.0
    for arc in lens.arcs:
        f = lambda s, arc=arc: 2 * abs(complex(arc_deriv(arc, s))) / (1 - abs(complex(arc_eval(arc, s))) ** 2)
        val, _ = quad(f, 0, 1, epsabs=1e-13, epsrel=1e-13, limit=200)
        total += val
    assert hyperbolic_perimeter(lens) == pytest.approx(total, rel=1e-12)


def test_hyperbolic_perimeter_euclidean_limit():
    # a tiny circle has hyperbolic length 4*pi*r/(1 - r^2): twice the
    # euclidean length up to the factor 1 + O(r^2)
    r = 1e-3
    L = hyperbolic_perimeter(make_circle(0j, r))
    assert L == pytest.approx(4 * math.pi * r / (1 - r * r), rel=1e-13)
    assert L / (4 * math.pi * r) - 1 == pytest.approx(r * r, rel=1e-6)


def test_hyperbolic_perimeter_outside_disk():
    with pytest.raises(DomainError):
        hyperbolic_perimeter(make_circle(0j, 1.0))
