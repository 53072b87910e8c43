"""
Integral representations of the shifted means, evaluated as residuals.

Each function computes the closed-form left-hand side, evaluates the
right-hand side by quadrature, and returns a :class:`ResidualReport`.  When
the shift is zero the integral factor ``1 - exp(-s z)`` vanishes identically,
so the right-hand side is returned without touching the quadrature.

The Laplace-type representations converge only for ``Re z > -y``; points with
``Im z != 0`` and ``Re z <= -y`` are off the branch cut but outside that
half-plane and are rejected.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import DomainError
from .kernels import f_batch, p_batch, rho_batch
from .means import (
    MeanPair,
    Number,
    PositiveTuple,
    WeightedPair,
    _as_pair,
    _as_tuple,
    an,
    check_off_cut,
    gn,
    logarithmic_shift,
    mean,
    weighted_arithmetic,
    weighted_geometric,
)
from .quadrature import IntegralResult, QuadConfig, integrate_finite, integrate_semi_infinite

__all__ = [
    "ResidualReport",
    "TOLERANCES",
    "h_alpha_repr",
    "weighted_geometric_repr",
    "weighted_am_gm_diff",
    "log_mean_repr",
    "a_l_diff",
    "geometric_repr_rho",
    "harmonic_repr",
    "gn_repr",
    "identric_closed",
    "identric_forms",
    "log_mean_integral_form",
    "bernstein_structure",
]

_TINY = 1e-300

# (tolerance, metric) per identity: one, two or three nested integrals
TOLERANCES = {
    "h-alpha": (1e-8, "rel"),
    "harmonic": (1e-8, "rel"),
    "harmonic-a-h": (1e-10, "rel"),
    "harmonic-shift": (1e-8, "rel"),
    "log-integral": (1e-8, "rel"),
    "identric": (1e-12, "rel"),
    "weighted-geometric": (1e-6, "rel"),
    "am-gm": (1e-6, "abs"),
    "geometric-rho": (1e-6, "rel"),
    "gn": (1e-6, "rel"),
    "log-mean": (1e-5, "rel"),
    "a-l": (1e-5, "abs"),
    "contour": (1e-4, "rel"),
}


@dataclass
class ResidualReport:
    identity: str
    lhs: Number
    rhs: Number
    rhs_err_estimate: float
    converged: bool
    inputs: dict[str, Any] = field(default_factory=dict)
    evals: int = 0
    abs_residual: float = field(init=False)
    rel_residual: float = field(init=False)

    def __post_init__(self):
        self.abs_residual = abs(self.lhs - self.rhs)
        self.rel_residual = self.abs_residual / max(abs(self.lhs), _TINY)

    @property
    def tolerance(self) -> float:
        return TOLERANCES[self.identity][0]

    @property
    def passed(self) -> bool:
        tol, metric = TOLERANCES[self.identity]
        value = self.rel_residual if metric == "rel" else self.abs_residual
        return self.converged and value <= tol


def _phi_times_z(s: np.ndarray, z: Number) -> np.ndarray:
    """(1 - exp(-s z)) / s, with a 5-term series where |s z| < 1e-4."""
    w = s * z
    small = np.abs(w) < 1e-4
    out = np.empty(s.shape, dtype=complex if isinstance(z, complex) else float)
    ws = w[small]
    out[small] = z * (1 - ws / 2 + ws ** 2 / 6 - ws ** 3 / 24 + ws ** 4 / 120)
    big = ~small
    out[big] = -np.expm1(-w[big]) / s[big]
    return out


def _laplace_point(z: Number, y: float) -> tuple[Number, float]:
    """Validate z for a Laplace-type representation; return (z, decay rate)."""
    z = check_off_cut(z, -y)
    decay = y + min(0.0, complex(z).real)
    if not decay > 0:
        raise DomainError(f"representation needs Re z > {-y!r}; got z = {z!r}")
    return z, decay


def _normalized_weighted(w: WeightedPair) -> tuple[WeightedPair, bool]:
    if w.pair.x == w.pair.y:
        raise DomainError("representation needs x != y")
    if w.pair.x > w.pair.y:
        return w, False
    return w.swapped(), True


def _strict_pair(m) -> MeanPair:
    m = _as_pair(m)
    if not m.x > m.y:
        raise DomainError("representation needs x > y")
    return m


def _cut_to_value(res: IntegralResult):
    v = res.value
    return complex(v) if isinstance(v, complex) or np.iscomplexobj(v) else float(v)


def h_alpha_repr(alpha: float, z: Number, cfg: QuadConfig | None = None) -> ResidualReport:
    """
    Residual of ``(1 + 1/z)**alpha = 1 + sin(alpha pi)/pi int_0^1 (1/u - 1)**alpha du/(u + z)``.
    """
    alpha = float(alpha)
    if not (-1.0 < alpha < 1.0) or alpha == 0.0:
        raise DomainError("alpha must lie in (-1, 1) and be nonzero")
    z = check_off_cut(z, 0.0)
    if isinstance(z, complex):
        lhs = cmath.exp(alpha * cmath.log(1.0 + 1.0 / z))
    else:
        lhs = (1.0 + 1.0 / z) ** alpha

    def integrand(u, ul, ur):
        return (ur / ul) ** alpha / (ul + z)

    res = integrate_finite(integrand, 0.0, 1.0, cfg=cfg, distances=True)
    c = math.sin(alpha * math.pi) / math.pi
    return ResidualReport(
        "h-alpha", lhs, 1.0 + c * res.value, abs(c) * res.err_estimate, res.converged,
        {"alpha": alpha, "z": z}, res.evals,
    )


def weighted_geometric_repr(w: WeightedPair, z: Number,
                            cfg: QuadConfig | None = None) -> ResidualReport:
    """
    Residual of the Laplace-type representation of ``(x+z)**lam (y+z)**(1-lam)``.

    Pairs with ``y > x`` are rewritten as ``(y, x, 1 - lam)`` first, which
    leaves the mean unchanged.
    """
    w0 = w
    w, swapped = _normalized_weighted(w)
    x, y, lam = w.pair.x, w.pair.y, w.lam
    z, decay = _laplace_point(z, y)
    lhs = weighted_geometric(w0, z)
    base = x ** lam * y ** (1.0 - lam)
    inputs = {"x": w0.pair.x, "y": w0.pair.y, "lambda": w0.lam, "z": z}
    if swapped:
        inputs["normalized"] = True
    if z == 0:
        return ResidualReport("weighted-geometric", lhs, base, 0.0, True, inputs)
    cfg = cfg or QuadConfig()
    gap = x - y

    def integrand(s):
        vals, _, _ = f_batch(lam, gap * s, cfg)
        return vals * np.exp(-s * y) * _phi_times_z(s, z)

    res = integrate_semi_infinite(integrand, decay, cfg)
    c = math.sin(lam * math.pi) / math.pi * gap
    return ResidualReport(
        "weighted-geometric", lhs, base + z + c * _cut_to_value(res),
        c * res.err_estimate, res.converged, inputs, res.evals,
    )


def weighted_am_gm_diff(w: WeightedPair, cfg: QuadConfig | None = None) -> ResidualReport:
    """Residual of ``[lam x + (1-lam) y] - x**lam y**(1-lam)`` against its integral form."""
    w0 = w
    w, swapped = _normalized_weighted(w)
    x, y, lam = w.pair.x, w.pair.y, w.lam
    lhs = weighted_arithmetic(w) - x ** lam * y ** (1.0 - lam)
    cfg = cfg or QuadConfig()
    gap = x - y

    def integrand(s):
        vals, _, _ = f_batch(lam, gap * s, cfg)
        return vals / s * np.exp(-s * y)

    res = integrate_semi_infinite(integrand, y, cfg)
    c = math.sin(lam * math.pi) / math.pi * gap
    inputs = {"x": w0.pair.x, "y": w0.pair.y, "lambda": w0.lam}
    if swapped:
        inputs["normalized"] = True
    return ResidualReport("am-gm", lhs, c * res.value, c * res.err_estimate,
                          res.converged, inputs, res.evals)


def log_mean_repr(m: MeanPair, z: Number, cfg: QuadConfig | None = None,
                  mode: str = "fast") -> ResidualReport:
    """Residual of the representation of L(x + z, y + z) through P_{x,y}."""
    m = _strict_pair(m)
    x, y = m.x, m.y
    z, decay = _laplace_point(z, y)
    lhs = logarithmic_shift(m, z)
    base = mean("logarithmic", m)
    inputs = {"x": x, "y": y, "z": z}
    if z == 0:
        return ResidualReport("log-mean", lhs, base, 0.0, True, inputs)
    cfg = cfg or QuadConfig()
    gap = x - y

    def integrand(s):
        vals, _ = p_batch(gap * s, cfg, mode)
        return vals * np.exp(-s * y) * _phi_times_z(s, z)

    res = integrate_semi_infinite(integrand, decay, cfg)
    c = gap / math.pi
    return ResidualReport("log-mean", lhs, base + z + c * _cut_to_value(res),
                          c * res.err_estimate, res.converged, inputs, res.evals)


def a_l_diff(m: MeanPair, cfg: QuadConfig | None = None, mode: str = "fast") -> ResidualReport:
    """Residual of ``A(x, y) - L(x, y) = (x - y)/pi int_0^inf P_{x,y}(s)/s e^{-sy} ds``."""
    m = _strict_pair(m)
    x, y = m.x, m.y
    lhs = mean("arithmetic", m) - mean("logarithmic", m)
    cfg = cfg or QuadConfig()
    gap = x - y

    def integrand(s):
        vals, _ = p_batch(gap * s, cfg, mode)
        return vals / s * np.exp(-s * y)

    res = integrate_semi_infinite(integrand, y, cfg)
    c = gap / math.pi
    return ResidualReport("a-l", lhs, c * res.value, c * res.err_estimate,
                          res.converged, {"x": x, "y": y}, res.evals)


def geometric_repr_rho(m: MeanPair, z: Number, cfg: QuadConfig | None = None) -> ResidualReport:
    """
    Residual of ``sqrt((x+z)(y+z)) = G + z + (x-y)/(2 pi) int rho((x-y)s)/s e^{-ys}(1-e^{-sz}) ds``.

    The prefactor is ``(x - y)/(2 pi)``: the identity ``F(1/2, s) = rho(s)/2``
    reduces this to the weighted representation at ``lam = 1/2``, and it is
    the only power of ``x - y`` compatible with both sides scaling linearly
    under ``(x, y, z) -> (k x, k y, k z)``.
    """
    m = _strict_pair(m)
    x, y = m.x, m.y
    z, decay = _laplace_point(z, y)
    lhs = weighted_geometric(WeightedPair(m, 0.5), z)
    base = mean("geometric", m)
    inputs = {"x": x, "y": y, "z": z}
    if z == 0:
        return ResidualReport("geometric-rho", lhs, base, 0.0, True, inputs)
    cfg = cfg or QuadConfig()
    gap = x - y

    def integrand(s):
        vals, _ = rho_batch(gap * s, cfg)
        return vals * np.exp(-s * y) * _phi_times_z(s, z)

    res = integrate_semi_infinite(integrand, decay, cfg)
    c = gap / (2.0 * math.pi)
    return ResidualReport("geometric-rho", lhs, base + z + c * _cut_to_value(res),
                          c * res.err_estimate, res.converged, inputs, res.evals)


def harmonic_repr(m: MeanPair, s_shift: float, cfg: QuadConfig | None = None) -> list[ResidualReport]:
    """
    Residuals of the three harmonic-mean identities.

    1. ``H(x+s, y+s) = H(x,y) + s + (x-y)**2/4 int_0^inf (1 - e^{-su}) e^{-(x+y)u/2} du``
    2. ``H(x, y) = A(x, y) - (x-y)**2/2 int_0^inf e^{-(x+y)u} du``
    3. ``H(s, y+s) = s + y**2/4 int_0^inf (1 - e^{-su}) e^{-yu/2} du`` (only for s > 0)

    The second integral is ``1/(x+y)``, so identity 2 is the closed statement
    ``A - H = (x-y)**2 / (2 (x+y))``; it is still checked through quadrature.
    """
    m = _as_pair(m)
    x, y = m.x, m.y
    if x == y:
        raise DomainError("harmonic representation needs x != y")
    s = check_off_cut(s_shift, -m.lower)
    if isinstance(s, complex):
        raise DomainError("harmonic identities take a real shift")
    cfg = cfg or QuadConfig()
    reports = []

    lhs1 = mean("harmonic", MeanPair(x + s, y + s))
    h0 = mean("harmonic", m)
    if s == 0:
        reports.append(ResidualReport("harmonic", lhs1, h0, 0.0, True, {"x": x, "y": y, "s": s}))
    else:
        half = 0.5 * (x + y)
        r1 = integrate_semi_infinite(
            lambda u: -np.expm1(-s * u) * np.exp(-half * u), half + min(0.0, s), cfg)
        c1 = (x - y) ** 2 / 4.0
        reports.append(ResidualReport("harmonic", lhs1, h0 + s + c1 * r1.value,
                                      c1 * r1.err_estimate, r1.converged,
                                      {"x": x, "y": y, "s": s}, r1.evals))

    r2 = integrate_semi_infinite(lambda u: np.exp(-(x + y) * u), x + y, cfg)
    c2 = (x - y) ** 2 / 2.0
    reports.append(ResidualReport("harmonic-a-h", h0, mean("arithmetic", m) - c2 * r2.value,
                                  c2 * r2.err_estimate, r2.converged, {"x": x, "y": y}, r2.evals))

    if s > 0:
        lhs3 = mean("harmonic", MeanPair(s, y + s))
        r3 = integrate_semi_infinite(
            lambda u: -np.expm1(-s * u) * np.exp(-0.5 * y * u), 0.5 * y, cfg)
        c3 = y * y / 4.0
        reports.append(ResidualReport("harmonic-shift", lhs3, s + c3 * r3.value,
                                      c3 * r3.err_estimate, r3.converged,
                                      {"y": y, "s": s}, r3.evals))
    return reports


def _gn_segment_integrand(vals: tuple, ell: int, z: Number):
    """|prod_k (a_k - t)|**(1/n) / (t + z) on [a_ell, a_ell+1] (0-based ell)."""
    n = len(vals)
    lo, hi = vals[ell], vals[ell + 1]
    below = np.array([lo - v for v in vals[:ell + 1]])   # t - a_k = (lo - a_k) + dl
    above = np.array([v - hi for v in vals[ell + 1:]])   # a_k - t = (a_k - hi) + dr

    def f(t, dl, dr):
        logs = (np.log(below[:, None] + dl[None, :]).sum(axis=0)
                + np.log(above[:, None] + dr[None, :]).sum(axis=0))
        return np.exp(logs / n) / (t + z)

    return f


def gn_repr(a: PositiveTuple, z: Number, cfg: QuadConfig | None = None) -> ResidualReport:
    """
    Residual of the representation of G_n(a + z) as A_n(a) + z minus a sum of
    Stieltjes-type integrals over the gaps ``[a_l, a_{l+1}]``.

    Zero-length gaps contribute nothing.  For real ``z`` every term of the
    correction is nonnegative; the report's ``inputs["correction"]`` carries
    its value, whose sign at ``z = 0`` is the AM-GM inequality.
    """
    a = _as_tuple(a)
    z = check_off_cut(z, -a.lower)
    vals, n = a.values, a.n
    lhs = gn(a, z)
    correction = 0.0
    err = 0.0
    evals = 0
    converged = True
    for ell in range(n - 1):
        lo, hi = vals[ell], vals[ell + 1]
        if hi == lo:
            continue
        res = integrate_finite(_gn_segment_integrand(vals, ell, z), lo, hi,
                               cfg=cfg, distances=True)
        weight = math.sin((ell + 1) * math.pi / n) / math.pi
        correction = correction + weight * res.value
        err += weight * res.err_estimate
        evals += res.evals
        converged &= res.converged
    rhs = an(a) + z - correction
    return ResidualReport("gn", lhs, rhs, err, converged,
                          {"a": vals, "z": z, "correction": correction}, evals)


def identric_closed(m: MeanPair, t: float = 0.0) -> float:
    """I(x + t, y + t) = exp(((x+t) ln(x+t) - (y+t) ln(y+t)) / (x - y) - 1)."""
    m = _as_pair(m)
    t = check_off_cut(t, -m.lower)
    if isinstance(t, complex):
        raise DomainError("identric mean takes a real shift")
    if m.x == m.y:
        return m.x + t
    return mean("identric", MeanPair(m.x + t, m.y + t))


def identric_forms(m: MeanPair, t: float = 0.0, cfg: QuadConfig | None = None) -> ResidualReport:
    """Residual between the power form and ``exp(1/(y-x) int_x^y ln u du)`` of I(x+t, y+t)."""
    m = _as_pair(m)
    lhs = identric_closed(m, t)
    inputs = {"x": m.x, "y": m.y, "t": t}
    if m.x == m.y:
        return ResidualReport("identric", lhs, m.x + t, 0.0, True, inputs)
    lo, hi = sorted((m.x + t, m.y + t))
    res = integrate_finite(lambda u: np.log(u), lo, hi, cfg=cfg)
    rhs = math.exp(res.value / (hi - lo))
    return ResidualReport("identric", lhs, rhs, rhs * res.err_estimate / (hi - lo),
                          res.converged, inputs, res.evals)


def log_mean_integral_form(m: MeanPair, cfg: QuadConfig | None = None) -> ResidualReport:
    """Residual of ``L(x, y) = int_0^1 x**u y**(1-u) du``."""
    m = _as_pair(m)
    x, y = m.x, m.y
    lx, ly = math.log(x), math.log(y)
    res = integrate_finite(lambda u: np.exp(u * lx + (1.0 - u) * ly), 0.0, 1.0, cfg=cfg)
    return ResidualReport("log-integral", mean("logarithmic", m), res.value,
                          res.err_estimate, res.converged, {"x": x, "y": y}, res.evals)


def bernstein_structure(values, tol: float = 0.0) -> dict[str, bool]:
    """
    Finite-difference shape checks on samples of ``t -> rhs(t)`` over an
    equally spaced increasing grid: nonnegative, increasing, midpoint-concave.
    """
    v = np.asarray(values, dtype=float)
    d1 = np.diff(v)
    d2 = np.diff(v, 2)
    return {
        "nonnegative": bool(np.all(v >= -tol)),
        "increasing": bool(np.all(d1 >= -tol)),
        "concave": bool(np.all(d2 <= tol)),
    }
