import math

import pytest

from meanforge.contour import (
    ContourSpec,
    boundary_imag_closed,
    boundary_imag_numeric,
    boundary_jump_integral,
    cauchy_contour_eval,
    contour_pieces,
    h_complex,
)
from meanforge.errors import DomainError
from meanforge.quadrature import integrate_finite

EPS_SCHEDULE = (1e-2, 1e-3, 1e-4)
R_SCHEDULE = (1e2, 1e3, 1e4)


def test_boundary_closed_examples():
    assert boundary_imag_closed(0.3, 2.0) == 0.0
    assert boundary_imag_closed(0.5, 0.5) == pytest.approx(-1.0, rel=1e-15)
    assert boundary_imag_closed(1e-14, 0.3) == pytest.approx(0.0, abs=1e-13)
    with pytest.raises(DomainError):
        boundary_imag_closed(0.5, 0.0)


def test_boundary_numeric_limits():
    assert abs(boundary_imag_numeric(0.5, 0.5, 1e-4) + 1.0) <= 1e-3
    assert abs(boundary_imag_numeric(0.5, 2.0, 1e-4)) <= 1e-3
    for t in (0.3, 0.7, 1.5):
        assert boundary_imag_numeric(0.4, t, -1e-3) == -boundary_imag_numeric(0.4, t, 1e-3)


@pytest.mark.parametrize("alpha,t", [(0.5, 0.5), (0.3, 0.2), (-0.4, 0.6), (0.5, 2.0)])
def test_boundary_numeric_converges_at_rate_eps(alpha, t):
    errs = [abs(boundary_imag_numeric(alpha, t, e) - boundary_imag_closed(alpha, t))
            for e in EPS_SCHEDULE]
    assert errs[0] > errs[1] > errs[2]
    # at least first order; at (1/2, 1/2) the O(eps) term happens to vanish
    for a, b in zip(errs, errs[1:]):
        assert a / b > 5.0
        if (alpha, t) != (0.5, 0.5):
            assert a / b < 20.0


def test_reconstruction_example():
    r = cauchy_contour_eval(0.5, 1.0, ContourSpec(1e-3, 1e3))
    assert r.lhs == pytest.approx(math.sqrt(2), rel=1e-15)
    assert r.converged and r.rel_residual <= 1e-4 and r.passed
    # the contour encloses no singularity, so only quadrature error remains
    assert r.rel_residual <= 1e-12


@pytest.mark.parametrize("z", [0.5, 2.0, 1 + 1j, 3 - 2j, -2 + 0.5j])
@pytest.mark.parametrize("alpha", [-0.5, 0.3, 0.9])
def test_reconstruction_points(alpha, z):
    assert cauchy_contour_eval(alpha, z).rel_residual <= 1e-10


def test_residual_stays_small_along_schedule():
    for eps, r in zip(EPS_SCHEDULE, R_SCHEDULE):
        assert cauchy_contour_eval(0.5, 1.0, ContourSpec(eps, r)).rel_residual <= 1e-12


def test_small_arc_vanishes():
    mags = [abs(contour_pieces(0.5, 1.0, ContourSpec(e, 1e3)).small_arc) for e in EPS_SCHEDULE]
    assert mags[0] > mags[1] > mags[2]
    # |small arc| = O(eps**(1 - alpha))
    for a, b in zip(mags, mags[1:]):
        assert a / b == pytest.approx(math.sqrt(10), rel=0.1)


def test_large_arc_tends_to_one():
    gaps = [abs(contour_pieces(0.5, 1.0, ContourSpec(1e-3, r)).large_arc - 1.0) for r in R_SCHEDULE]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-3


def test_conjugate_points():
    a = cauchy_contour_eval(0.5, 1 + 2j)
    b = cauchy_contour_eval(0.5, 1 - 2j)
    assert abs(a.rhs - b.rhs.conjugate()) <= 2e-4 * abs(a.lhs)


def test_segments_match_boundary_jump():
    spec = ContourSpec(1e-4, 1e3)
    # for small alpha the small arc, O(eps**(1 - alpha)), is negligible
    pieces = contour_pieces(0.1, 1.0, spec)
    limit = boundary_jump_integral(0.1, 1.0, spec.r_eps)
    assert abs(pieces.segments - limit) <= 1e-3
    # at alpha = 1/2 the arc is ~eps**0.5 and the segments carry its mirror image
    pieces = contour_pieces(0.5, 1.0, spec)
    limit = boundary_jump_integral(0.5, 1.0, spec.r_eps)
    assert abs(pieces.segments + pieces.small_arc - limit) <= 1e-6


def test_boundary_jump_against_closed_integral():
    # (1/(2 pi i)) int_0^1 2i Im h(-t + i0)/(-t - z) dt equals h(z) - 1
    for alpha, z in ((0.5, 1.0), (0.3, 2 + 1j)):
        jump = boundary_jump_integral(alpha, z, 10.0)
        assert abs(jump - (h_complex(alpha, z) - 1.0)) <= 1e-10
    # a partial range integrates the closed boundary value directly
    part = boundary_jump_integral(0.5, 1.0, 0.5)
    direct = integrate_finite(lambda t: -((1 / t - 1) ** 0.5) / (-t - 1.0), 0.0, 0.5).value / math.pi
    assert part == pytest.approx(direct, rel=1e-10)


def test_domain_checks():
    with pytest.raises(DomainError):
        ContourSpec(1.0, 10.0)
    with pytest.raises(DomainError):
        cauchy_contour_eval(0.5, -1 + 5e-3j, ContourSpec(1e-3, 1e3))
    with pytest.raises(DomainError):
        cauchy_contour_eval(0.5, 2e3, ContourSpec(1e-3, 1e3))
    with pytest.raises(DomainError):
        cauchy_contour_eval(1.0, 1.0)
