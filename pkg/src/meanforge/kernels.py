"""
Densities that appear inside the integral representations.

``F(lam, s)`` is evaluated in its null-subtracted form

    F(lam, s) = int_0^1 (1/u - 1)**lam (1 - lam/(1 - u)) expm1(-u s) du,

which equals the defining integral because the same weight integrates to
zero over (0, 1).  The subtraction removes the ``u**-lam`` singularity at 0
and makes ``F(lam, 0) = 0`` exact.  The interval is split at ``u = 1 - lam``
where the weight changes sign; on the right piece the ``(1 - u)**(lam - 1)``
singularity is taken out exactly by ``1 - u = lam * w**(1/lam)``, which keeps
the piece well conditioned even when ``lam`` is close to 0.

``P_{x,y}(s)`` has two routes.  ``direct`` integrates ``sin(pi lam) F`` over
lam numerically.  ``fast`` swaps the order of integration: with
``c = 1/u - 1`` and ``L = ln c``,

    J0 = int_0^1 sin(pi lam) c**lam dlam     = pi (1 + c) / (pi**2 + L**2)
    J1 = int_0^1 lam sin(pi lam) c**lam dlam = dJ0/dL,

and ``J0 - J1/(1 - u) = 2 pi L / (u (1 - u) (pi**2 + L**2)**2)``.  After
``u = 1/(1 + exp(v))`` and ``v = pi tan(theta)`` the remaining integral is

    P(sigma) = (2/pi) int_0^{pi/2} sin(th) cos(th) exp(-sigma p)
               * (1 - exp(-sigma tanh(v/2))) dth,     p = 1/(1 + e**v),

a bounded, smooth, visibly nonnegative integrand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ModeDisagreementError, QuadratureError
from .means import MeanPair, _as_pair
from .quadrature import QuadConfig, integrate_finite

__all__ = [
    "KernelValue",
    "q_weight",
    "rho",
    "rho_batch",
    "f_kernel",
    "f_batch",
    "f_null_integral",
    "q_lambda",
    "lambda_sine_moments",
    "p_kernel",
    "p_batch",
    "h_density",
    "MODE_TOL",
]

MODE_TOL = 1e-8


@dataclass(frozen=True)
class KernelValue:
    value: float
    err_estimate: float

    def __post_init__(self):
        if not self.err_estimate >= 0:
            raise ValueError("err_estimate must be nonnegative")


def _open_unit(name: str, v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if np.any(~(arr > 0) | ~(arr < 1)):
        raise DomainError(f"{name} must lie in the open interval (0, 1)")
    return arr


def _scalar_or_array(arr: np.ndarray):
    return arr.item() if arr.ndim == 0 else arr


def _require(res, what: str):
    if not res.converged:
        raise QuadratureError(f"{what}: quadrature did not converge "
                              f"(estimate {res.value!r}, error {res.err_estimate:.3g})")
    return res


def q_weight(u):
    """q(u) = sqrt(1/u - 1) - 1/sqrt(1/u - 1), written as (1 - 2u)/sqrt(u(1 - u))."""
    u = _open_unit("u", u)
    v = 1.0 - u
    return _scalar_or_array((v - u) / np.sqrt(u * v))


# --- rho ----------------------------------------------------------------------

def _rho_first_integrand(s):
    def f(u, ul, ur):
        # ur = 1/2 - u, so 1 - 2u = 2 ur exactly
        q = 2.0 * ur / np.sqrt(ul * (1.0 - ul))
        return (q[:, None] * -np.expm1(-2.0 * np.outer(ur, s))
                * np.exp(-np.outer(ul, s)))
    return f


def _rho_second_integrand(s):
    def f(u, ul, ur):
        # q(1/2 - u) = 2u / sqrt((1/2 - u)(1/2 + u)),  1/2 - u = ur
        q = 2.0 * ul / np.sqrt(ur * (0.5 + ul))
        return (q[:, None] * np.exp(-np.outer(ur, s))
                * -np.expm1(-2.0 * np.outer(ul, s)))
    return f


def rho_batch(s, cfg: QuadConfig | None = None, form: str = "first"):
    """rho on an array of s > 0; returns ``(values, err_estimate)``."""
    cfg = cfg or QuadConfig()
    s = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any(~(s >= 0)):
        raise DomainError("rho needs s >= 0")
    integrand = {"first": _rho_first_integrand, "second": _rho_second_integrand}[form](s)
    res = _require(integrate_finite(integrand, 0.0, 0.5, cfg=cfg, distances=True),
                   "rho")
    return np.atleast_1d(res.value), res.err_estimate


def rho(s: float, cfg: QuadConfig | None = None, form: str = "first") -> KernelValue:
    """
    rho(s) = int_0^{1/2} q(u) [1 - exp(-(1 - 2u) s)] exp(-u s) du.

    ``form="second"`` evaluates the equivalent
    ``int_0^{1/2} q(1/2 - u) (e^{us} - e^{-us}) e^{-s/2} du`` instead, which
    shares no code path with the first form and serves as its cross-check.
    """
    if not s > 0:
        raise DomainError("rho needs s > 0")
    vals, err = rho_batch([s], cfg, form)
    return KernelValue(float(vals[0]), err)


# --- F(lam, s) -----------------------------------------------------------------

def _check_lam(lam: float) -> float:
    lam = float(lam)
    if not 0.0 < lam < 1.0:
        raise DomainError(f"lambda must lie in (0, 1), got {lam!r}")
    return lam


def _f_pieces(lam: float, lam_c: float, weight_factor):
    """Integrands of the two pieces of F, with ``weight_factor(u)`` in place of e^{-us}.

    ``lam_c`` is ``1 - lam`` supplied separately so it stays accurate near 1.
    """
    def left(u, ul, ur):
        v = ur + lam  # 1 - u, exact near the split point
        w = (v / ul) ** lam * (v - lam) / v
        return _times(w, weight_factor(ul))

    def right(w, wl, wr):
        v = lam * wl ** (1.0 / lam)
        # u = 1 - v = (1 - lam) + lam (1 - w**(1/lam)), accurate as w -> 1
        with np.errstate(divide="ignore"):
            u = lam_c - lam * np.expm1(np.log1p(-wr) / lam)
        g = lam ** (lam - 1.0) * u ** -lam * (v - lam)
        return _times(g, weight_factor(u))

    return left, right


def _times(w, factor):
    return w[:, None] * factor if np.ndim(factor) == 2 else w * factor


def f_batch(lam: float, s, cfg: QuadConfig | None = None, lam_c: float | None = None):
    """F(lam, s) on an array of s >= 0; returns ``(values, err_estimate, evals)``."""
    cfg = cfg or QuadConfig()
    lam_c = 1.0 - lam if lam_c is None else lam_c
    s = np.atleast_1d(np.asarray(s, dtype=float))
    left, right = _f_pieces(lam, lam_c, lambda u: np.expm1(-np.outer(u, s)))
    total = np.zeros(s.shape)
    err = 0.0
    evals = 0
    if lam_c > 1e-15:
        r1 = _require(integrate_finite(left, 0.0, lam_c, cfg=cfg, distances=True), "F")
        total += np.atleast_1d(r1.value)
        err += r1.err_estimate
        evals += r1.evals
    r2 = _require(integrate_finite(right, 0.0, 1.0, cfg=cfg, distances=True), "F")
    total += np.atleast_1d(r2.value)
    err += r2.err_estimate
    evals += r2.evals
    return total, err, evals


def f_kernel(lam: float, s: float, cfg: QuadConfig | None = None) -> KernelValue:
    """
    F(lam, s) = int_0^1 (1/u - 1)**lam (1 - lam/(1 - u)) exp(-u s) du.

    Positive for s > 0 and exactly 0 at s = 0.
    """
    lam = _check_lam(lam)
    if not s >= 0:
        raise DomainError("F needs s >= 0")
    if s == 0:
        return KernelValue(0.0, 0.0)
    vals, err, _ = f_batch(lam, [s], cfg)
    return KernelValue(float(vals[0]), err)


def f_null_integral(lam: float, cfg: QuadConfig | None = None) -> KernelValue:
    """int_0^1 (1/u - 1)**lam (1 - lam/(1 - u)) du, analytically zero."""
    lam = _check_lam(lam)
    lam_c = 1.0 - lam
    _, right = _f_pieces(lam, lam_c, lambda u: np.ones_like(u))

    def left(t, tl, tr):
        # u = lam_c t**(1/lam_c) absorbs the u**-lam singularity the e^{-us} factor no
        # longer cancels; what remains is bounded
        k = 1.0 / lam_c
        u = lam_c * tl ** k
        v = 1.0 - u
        with np.errstate(divide="ignore"):
            gap = -lam_c * np.expm1(k * np.log1p(-tr))  # lam_c - u
        return lam_c ** -lam * v ** lam * gap / v

    r1 = _require(integrate_finite(left, 0.0, 1.0, cfg=cfg, distances=True), "F null")
    r2 = _require(integrate_finite(right, 0.0, 1.0, cfg=cfg, distances=True), "F null")
    return KernelValue(r1.value + r2.value, r1.err_estimate + r2.err_estimate)


def q_lambda(lam: float, u):
    """Q_lam(u) = sin(lam pi)/(lam (1 - lam) pi) (1/u - 1)**lam (1 - lam/(1 - u))."""
    lam = _check_lam(lam)
    u = _open_unit("u", u)
    v = 1.0 - u
    c = math.sin(lam * math.pi) / (lam * (1.0 - lam) * math.pi)
    return _scalar_or_array(c * (v / u) ** lam * (v - lam) / v)


# --- P_{x,y}(s) -----------------------------------------------------------------

def lambda_sine_moments(log_c):
    """Closed forms of int_0^1 sin(pi l) c**l dl and int_0^1 l sin(pi l) c**l dl."""
    L = np.asarray(log_c, dtype=float)
    c = np.exp(L)
    d = math.pi ** 2 + L * L
    j0 = math.pi * (1.0 + c) / d
    j1 = math.pi * (c * d - 2.0 * L * (1.0 + c)) / (d * d)
    return _scalar_or_array(j0), _scalar_or_array(j1)


def _p_fast_integrand(sigma):
    def f(th, tl, tr):
        # pi*tan(theta), using the distance to pi/2 where tan blows up
        tau = np.where(tl < tr, math.pi * np.tan(tl), math.pi / np.tan(tr))
        e = np.exp(-tau)
        p = e / (1.0 + e)
        gap = np.tanh(0.5 * tau)  # (1 - p) - p
        sc = np.sin(th) * np.cos(th)
        return (sc[:, None] * np.exp(-np.outer(p, sigma))
                * -np.expm1(-np.outer(gap, sigma)))
    return f


def _p_fast(sigma, cfg):
    res = _require(integrate_finite(_p_fast_integrand(sigma), 0.0, 0.5 * math.pi,
                                    cfg=cfg, distances=True), "P (fast)")
    return (2.0 / math.pi) * np.atleast_1d(res.value), (2.0 / math.pi) * res.err_estimate


def _p_direct(sigma, cfg):
    errs = []

    def outer(lam, ll, lr):
        rows = []
        for a, ac in zip(ll, lr):
            vals, err, _ = f_batch(float(a), sigma, cfg, lam_c=float(ac))
            errs.append(err)
            rows.append(math.sin(math.pi * min(a, ac)) * vals)
        return np.array(rows)

    res = _require(integrate_finite(outer, 0.0, 1.0, cfg=cfg, distances=True), "P (direct)")
    return np.atleast_1d(res.value), res.err_estimate + max(errs)


def p_batch(sigma, cfg: QuadConfig | None = None, mode: str = "fast"):
    """P as a function of sigma = (x - y) s, on an array; returns ``(values, err)``."""
    cfg = cfg or QuadConfig()
    sigma = np.atleast_1d(np.asarray(sigma, dtype=float))
    if mode == "fast":
        return _p_fast(sigma, cfg)
    if mode == "direct":
        return _p_direct(sigma, cfg)
    if mode == "checked":
        fv, fe = _p_fast(sigma, cfg)
        dv, de = _p_direct(sigma, cfg)
        gap = float(np.max(np.abs(fv - dv)))
        if gap > MODE_TOL:
            raise ModeDisagreementError(f"P fast/direct disagree by {gap:.3g}")
        return fv, max(fe, gap)
    raise ValueError(f"unknown P mode {mode!r}")


def p_kernel(m: MeanPair, s: float, cfg: QuadConfig | None = None,
             mode: str = "fast") -> KernelValue:
    """
    P_{x,y}(s) = int_0^1 sin(lam pi) F(lam, (x - y) s) dlam for x > y.

    ``mode`` is ``"fast"`` (default), ``"direct"`` (nested quadrature), or
    ``"checked"`` (both; raises if they differ by more than ``MODE_TOL``).
    """
    m = _as_pair(m)
    if not m.x > m.y:
        raise DomainError("P_{x,y} needs x > y")
    if not s > 0:
        raise DomainError("P_{x,y} needs s > 0")
    vals, err = p_batch([(m.x - m.y) * s], cfg, mode)
    return KernelValue(float(vals[0]), err)


def h_density(alpha: float, u):
    """Stieltjes density (sin(alpha pi)/pi) (1/u - 1)**alpha of h_alpha on (0, 1)."""
    u = _open_unit("u", u)
    return _scalar_or_array(math.sin(alpha * math.pi) / math.pi * ((1.0 - u) / u) ** alpha)
