"""
Cauchy-integral reconstruction of ``h_alpha(z) = (1 + 1/z)**alpha`` over a
keyhole contour around the negative real axis.

The positively oriented contour consists of

* the large arc ``|w| = r`` from angle ``-pi + asin(eps/r)`` to ``pi - asin(eps/r)``,
* the upper segment ``w = -t + i eps`` for t from ``r_eps = sqrt(r**2 - eps**2)`` to 0,
* the right half circle ``|w| = eps`` from ``i eps`` to ``-i eps``,
* the lower segment ``w = -t - i eps`` for t from 0 to ``r_eps``.

``h_alpha`` is analytic inside for every ``eps`` and ``r``, so the four
pieces sum to ``h_alpha(z)`` exactly and the reported residual measures
quadrature error alone.  The individual pieces carry the limiting behaviour:
the small arc is ``O(eps**(1 - alpha))``, the large arc tends to 1, and the
two segments tend to the Stieltjes integral of the boundary jump.

All piece values below are already divided by ``2 pi i``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .means import Number
from .quadrature import QuadConfig, integrate_finite
from .representations import ResidualReport

__all__ = [
    "ContourSpec",
    "ContourPieces",
    "boundary_imag_closed",
    "boundary_imag_numeric",
    "h_complex",
    "contour_pieces",
    "cauchy_contour_eval",
    "boundary_jump_integral",
]

_TWO_PI_I = 2j * math.pi


@dataclass(frozen=True)
class ContourSpec:
    epsilon: float = 1e-3
    r: float = 1e3

    def __post_init__(self):
        if not (0.0 < self.epsilon < 1.0 < self.r):
            raise DomainError("contour needs 0 < epsilon < 1 < r")

    @property
    def r_eps(self) -> float:
        """Real part magnitude of the corners where the arc meets the segments."""
        return math.sqrt(self.r * self.r - self.epsilon * self.epsilon)


@dataclass
class ContourPieces:
    small_arc: complex
    upper: complex
    lower: complex
    large_arc: complex
    err_estimate: float
    evals: int
    converged: bool

    @property
    def segments(self) -> complex:
        return self.upper + self.lower

    @property
    def total(self) -> complex:
        return self.large_arc + self.upper + self.small_arc + self.lower


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not -1.0 < alpha < 1.0:
        raise DomainError("alpha must lie in (-1, 1)")
    return alpha


def h_complex(alpha: float, w):
    """Principal ``(1 + 1/w)**alpha`` for scalar or array complex ``w``."""
    w = np.asarray(w, dtype=complex)
    return np.exp(alpha * np.log(1.0 + 1.0 / w))


def boundary_imag_closed(alpha: float, t: float) -> float:
    """Limit of ``Im h_alpha(-t + i eps)`` as eps -> 0+: zero for t >= 1."""
    alpha = _check_alpha(alpha)
    if not t > 0:
        raise DomainError("t must be positive")
    if t >= 1.0:
        return 0.0
    return -((1.0 / t - 1.0) ** alpha) * math.sin(alpha * math.pi)


def boundary_imag_numeric(alpha: float, t: float, epsilon: float) -> float:
    """``Im h_alpha(-t + i epsilon)`` on the principal branch; negative epsilon mirrors."""
    alpha = _check_alpha(alpha)
    w = complex(-t, epsilon)
    return cmath.exp(alpha * cmath.log(1.0 + 1.0 / w)).imag


def _segment_breaks(eps: float, end: float) -> list[float]:
    """Panel edges in t that resolve the eps-wide features at t = 0 and t = 1."""
    pts = {0.0, 1.0, end}
    d = eps
    while d < 0.5:
        pts.update((d, 1.0 - d, 1.0 + d))
        d *= 10.0
    p = 2.0
    while p < end:
        pts.add(p)
        p *= 10.0
    return sorted(v for v in pts if 0.0 <= v <= end)


def _panels(f, edges, cfg):
    value = 0j
    err = 0.0
    evals = 0
    converged = True
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi <= lo:
            continue
        res = integrate_finite(f, lo, hi, cfg=cfg)
        value += complex(res.value)
        err += res.err_estimate
        evals += res.evals
        converged &= res.converged
    return value, err, evals, converged


def contour_pieces(alpha: float, z: Number, spec: ContourSpec,
                   cfg: QuadConfig | None = None) -> ContourPieces:
    """Integrate ``h_alpha(w)/(w - z) dw / (2 pi i)`` over each contour piece."""
    alpha = _check_alpha(alpha)
    cfg = cfg or QuadConfig()
    z = complex(z)
    eps, r, r_eps = spec.epsilon, spec.r, spec.r_eps
    err = 0.0
    evals = 0
    ok = True

    def arc(radius):
        def f(theta):
            w = radius * np.exp(1j * theta)
            return h_complex(alpha, w) / (w - z) * (1j * w)
        return f

    # large arc, counterclockwise, split at the real axis crossing and +-pi/2
    delta = math.asin(eps / r)
    big, e, n, c = _panels(arc(r), [-math.pi + delta, -0.5 * math.pi, 0.0,
                                    0.5 * math.pi, math.pi - delta], cfg)
    err, evals, ok = err + e, evals + n, ok and c
    # small arc, clockwise from pi/2 to -pi/2
    small, e, n, c = _panels(arc(eps), [-0.5 * math.pi, 0.0, 0.5 * math.pi], cfg)
    small = -small
    err, evals, ok = err + e, evals + n, ok and c

    edges = _segment_breaks(eps, r_eps)

    # upper: w = -t + i eps, dw = -dt, t from r_eps down to 0
    def f_up(t):
        w = -t + 1j * eps
        return h_complex(alpha, w) / (w - z)

    up, e, n, c = _panels(f_up, edges, cfg)
    err, evals, ok = err + e, evals + n, ok and c

    # lower: w = -t - i eps, dw = -dt, t from 0 to r_eps
    def f_low(t):
        w = -t - 1j * eps
        return -h_complex(alpha, w) / (w - z)

    low, e, n, c = _panels(f_low, edges, cfg)
    err, evals, ok = err + e, evals + n, ok and c

    scale = 1.0 / (2.0 * math.pi)
    return ContourPieces(small / _TWO_PI_I, up / _TWO_PI_I, low / _TWO_PI_I,
                         big / _TWO_PI_I, err * scale, evals, ok)


def cauchy_contour_eval(alpha: float, z: Number, spec: ContourSpec = ContourSpec(),
                        cfg: QuadConfig | None = None) -> ResidualReport:
    """
    Reconstruct ``h_alpha(z)`` from the contour integral and report the residual
    against the direct principal-branch value.

    The pieces are attached as ``report.inputs["pieces"]``.

    Raises
    ------
    DomainError
        ``z`` lies within ``10 epsilon`` of the negative real axis, inside the
        small circle, or outside ``|w| < r`` with a margin of ``10 epsilon``.
    """
    alpha = _check_alpha(alpha)
    zc = complex(z)
    eps = spec.epsilon
    dist_cut = abs(zc.imag) if zc.real <= 0 else abs(zc)
    if dist_cut <= 10.0 * eps:
        raise DomainError(f"z = {z!r} is within 10*epsilon of the cut (-inf, 0]")
    if not (eps < abs(zc) < spec.r - 10.0 * eps):
        raise DomainError(f"z = {z!r} must satisfy epsilon < |z| < r")
    pieces = contour_pieces(alpha, zc, spec, cfg)
    lhs = complex(h_complex(alpha, zc))
    return ResidualReport("contour", lhs, pieces.total, pieces.err_estimate, pieces.converged,
                          {"alpha": alpha, "z": zc, "epsilon": eps, "r": spec.r,
                           "pieces": pieces}, pieces.evals)


def boundary_jump_integral(alpha: float, z: Number, upto: float,
                           cfg: QuadConfig | None = None) -> complex:
    """
    Limit of the two segment pieces as eps -> 0, divided by ``2 pi i``:
    ``(1/(2 pi i)) int_0^upto 2 i Im h(-t + i0) / (-t - z) dt``.

    Only ``t < 1`` contributes, where the closed boundary value is nonzero.
    """
    alpha = _check_alpha(alpha)
    z = complex(z)
    top = min(1.0, upto)

    def f(t, tl, tr):
        # tr is 1 - t exactly when the range ends at 1
        one_minus_t = tr if top == 1.0 else 1.0 - t
        b = -((one_minus_t / tl) ** alpha) * math.sin(alpha * math.pi)
        return 2j * b / (-t - z)

    res = integrate_finite(f, 0.0, top, cfg=cfg, distances=True)
    return complex(res.value) / _TWO_PI_I
