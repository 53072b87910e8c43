"""
Double-exponential quadrature for endpoint-singular and semi-infinite integrals.

Finite intervals use the tanh-sinh rule.  Abscissae are generated as offsets
from the nearest endpoint, so an integrand may ask for the exact distances
``x - a`` and ``b - x`` (``distances=True``) and stay accurate right up to an
endpoint singularity such as ``(1 - u)**(lam - 1)``.

Semi-infinite integrals are truncated at a point chosen from a caller-supplied
exponential decay rate, and the finite part is integrated on adaptively
bisected panels.

Integrands are vectorised: they receive a 1-D array of abscissae and return
an array of the same length, or a 2-D array ``(n_nodes, n_batch)`` to
integrate a whole batch of related integrands on one node set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import QuadratureError

__all__ = [
    "QuadConfig",
    "IntegralResult",
    "SingularityHint",
    "integrate_finite",
    "integrate_semi_infinite",
]

# Largest |t| of the tanh-sinh mesh; the nearest node sits ~1e-275 of the
# interval length away from the endpoint.
_T_MAX = 6.0
_MIN_LEVEL = 3
_PANEL_MAX_LEVEL = 8
_MAX_BISECTIONS = 40


@dataclass(frozen=True)
class QuadConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_depth: int = 12
    max_evals: int = 2_000_000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if self.max_evals < 1:
            raise ValueError("max_evals must be >= 1")

    def tolerance(self, value) -> float:
        return max(self.abs_tol, self.rel_tol * float(np.max(np.abs(value))))


@dataclass
class IntegralResult:
    """Value, error estimate and bookkeeping of one integration.

    For semi-infinite integrals ``truncation`` is the cut-off point and
    ``tail_bound`` the analytic bound on the discarded tail (already included
    in ``err_estimate``).
    """

    value: complex | float | np.ndarray
    err_estimate: float
    evals: int
    converged: bool
    truncation: float | None = None
    tail_bound: float = 0.0


@dataclass(frozen=True)
class SingularityHint:
    """Algebraic endpoint behaviour ``(x - a)**left`` / ``(b - x)**right``."""

    left_exponent: float | None = None
    right_exponent: float | None = None

    def __post_init__(self):
        for e in (self.left_exponent, self.right_exponent):
            if e is not None and not e > -1:
                raise ValueError("singularity exponents must exceed -1")


@lru_cache(maxsize=None)
def _level_nodes(level: int):
    """Canonical tanh-sinh nodes added at ``level`` (step ``2**-level``).

    Returns ``(side, d, w)``: side is -1/0/+1 for nodes nearer the left end,
    the midpoint, or the right end; ``d`` is the distance to that end and
    ``w`` the weight, both per unit interval length (``w`` includes the step).
    """
    h = 2.0 ** -level
    jmax = int(_T_MAX / h)
    if level == 0:
        j = np.arange(-jmax, jmax + 1)
    else:
        j = np.arange(-jmax, jmax + 1)
        j = j[j % 2 != 0]
    t = j * h
    u = 0.5 * math.pi * np.sinh(np.abs(t))
    e = np.exp(-2.0 * u)
    d = e / (1.0 + e)
    # 1/cosh(u)**2 written with exp(-2u) so it underflows instead of overflowing
    w = h * 0.5 * (0.5 * math.pi) * np.cosh(t) * 4.0 * e / (1.0 + e) ** 2
    side = np.sign(t).astype(int)
    d = np.where(side == 0, 0.5, d)
    for arr in (side, d, w):
        arr.setflags(write=False)
    return side, d, w


def _check_finite(vals: np.ndarray, x: np.ndarray) -> None:
    if not np.all(np.isfinite(vals)):
        bad = np.nonzero(~np.isfinite(vals))[0][0]
        raise QuadratureError(
            f"non-finite integrand value at x = {x[bad]!r}", abscissa=float(x[bad])
        )


def _tanh_sinh(f, a: float, b: float, cfg: QuadConfig, distances: bool,
               max_level: int, abs_tol: float | None = None) -> IntegralResult:
    length = b - a
    abs_tol = cfg.abs_tol if abs_tol is None else abs_tol
    total = None
    prev = None
    evals = 0
    err = math.inf
    converged = False
    for level in range(max_level + 1):
        side, d, w = _level_nodes(level)
        dist = length * d
        keep = dist > 0
        if not distances:
            x_try = np.where(side < 0, a + dist, b - dist)
            keep &= (x_try > a) & (x_try < b)
        side, dist, w = side[keep], dist[keep], w[keep]
        left = np.where(side < 0, dist, length - dist)
        right = np.where(side < 0, length - dist, dist)
        x = np.where(side < 0, a + dist, b - dist)
        x = np.where(side == 0, 0.5 * (a + b), x)
        vals = np.asarray(f(x, left, right) if distances else f(x))
        if vals.ndim == 0:
            vals = np.full(x.shape, vals)
        _check_finite(vals, x)
        evals += x.size
        contrib = length * np.tensordot(w, vals, axes=(0, 0))
        total = contrib if total is None else 0.5 * total + contrib
        if prev is not None:
            err = float(np.max(np.abs(total - prev)))
            tol = max(abs_tol, cfg.rel_tol * float(np.max(np.abs(total))))
            if level >= _MIN_LEVEL and err <= tol:
                converged = True
                break
        prev = total
        if evals >= cfg.max_evals:
            break
    value = total if np.ndim(total) else total.item()
    return IntegralResult(value=value, err_estimate=err, evals=evals, converged=converged)


_GL_ORDERS = (8, 16, 32, 64)


@lru_cache(maxsize=None)
def _gl_nodes(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    # map to (0, 1) and report distances from both ends
    left = 0.5 * (1.0 + x)
    right = 0.5 * (1.0 - x)
    return left, right, 0.5 * w


def _gauss_legendre(g, cfg: QuadConfig, abs_tol: float) -> IntegralResult:
    """Gauss-Legendre on (0, 1) at doubling orders; for integrands made smooth
    by a substitution.  ``converged`` is false if order 64 is not enough."""
    prev = None
    evals = 0
    err = math.inf
    for n in _GL_ORDERS:
        left, right, w = _gl_nodes(n)
        vals = np.asarray(g(left, left, right))
        _check_finite(vals, left)
        evals += n
        total = np.tensordot(w, vals, axes=(0, 0))
        if prev is not None:
            err = float(np.max(np.abs(total - prev)))
            if err <= max(abs_tol, cfg.rel_tol * float(np.max(np.abs(total)))):
                value = total if np.ndim(total) else total.item()
                return IntegralResult(value, err, evals, True)
        prev = total
    return IntegralResult(prev if np.ndim(prev) else prev.item(), err, evals, False)


def _substituted(f, a: float, b: float, exponent: float, at_left: bool,
                 distances: bool, full_length: float):
    """Integrand on w in (0, 1) after x - a = (b - a) * w**k, k = 1/(1+exponent).

    Distances handed to ``f`` refer to the original interval of length
    ``full_length`` whose left end is ``a`` (``at_left``) or right end is ``b``.
    """
    length = b - a
    k = 1.0 / (1.0 + exponent)

    def g(w, wl, wr):
        off = length * wl ** k
        jac = length * k * wl ** (k - 1.0)
        if at_left:
            x, left, right = a + off, off, full_length - off
        else:
            x, left, right = b - off, full_length - off, off
        ok = off > 0
        if not distances:
            ok &= x != (a if at_left else b)
        if not np.any(ok):
            return np.zeros(w.size)
        if distances:
            vals = np.asarray(f(x[ok], left[ok], right[ok]))
        else:
            vals = np.asarray(f(x[ok]))
        res = np.zeros((w.size,) + vals.shape[1:], dtype=vals.dtype)
        res[ok] = vals * (jac[ok] if vals.ndim == 1 else jac[ok][:, None])
        return res

    return g


def integrate_finite(
    f: Callable,
    a: float,
    b: float,
    hint: SingularityHint | None = None,
    cfg: QuadConfig | None = None,
    *,
    distances: bool = False,
) -> IntegralResult:
    """
    Integrate ``f`` over the open interval ``(a, b)``.

    Parameters
    ----------
    f : callable
        Vectorised integrand ``f(x)``, or ``f(x, x - a, b - x)`` when
        ``distances`` is true.  Endpoint values are never requested.
    hint : SingularityHint, optional
        Known algebraic endpoint exponents.  The plain tanh-sinh rule copes
        without it; given a hint, a power substitution removes the singularity
        first and Gauss-Legendre is tried on the now smooth integrand, falling
        back to tanh-sinh when it does not converge by order 64.
    cfg : QuadConfig, optional

    Returns
    -------
    IntegralResult
        ``converged`` is false when the depth or evaluation budget ran out;
        ``value`` is then the best available estimate.

    Raises
    ------
    QuadratureError
        The integrand returned a non-finite value at an interior abscissa.
    """
    cfg = cfg or QuadConfig()
    if not a < b:
        raise ValueError("integrate_finite requires a < b")
    if hint is None or (hint.left_exponent is None and hint.right_exponent is None):
        return _tanh_sinh(f, a, b, cfg, distances, cfg.max_depth)

    left_e, right_e = hint.left_exponent, hint.right_exponent
    if left_e is not None and right_e is not None:
        mid = 0.5 * (a + b)
        parts = [(a, mid, left_e, True), (mid, b, right_e, False)]
    elif left_e is not None:
        parts = [(a, b, left_e, True)]
    else:
        parts = [(a, b, right_e, False)]
    results = []
    for lo, hi, e, at_left in parts:
        g = _substituted(f, lo, hi, e, at_left, distances, b - a)
        share = cfg.abs_tol / len(parts)
        res = _gauss_legendre(g, cfg, share)
        if not res.converged:
            spent = res.evals
            res = _tanh_sinh(g, 0.0, 1.0, cfg, True, cfg.max_depth, abs_tol=share)
            res.evals += spent
        results.append(res)
    return IntegralResult(
        value=sum(r.value for r in results),
        err_estimate=sum(r.err_estimate for r in results),
        evals=sum(r.evals for r in results),
        converged=all(r.converged for r in results),
    )


def _probe_scale(f, decay: float, upto: float) -> float:
    s = np.unique(np.concatenate([
        np.geomspace(1e-6, 1.0, 7) / decay,
        np.linspace(1.0 / decay, upto, 41),
    ]))
    s = s[s <= upto]
    vals = np.abs(np.asarray(f(s)))
    _check_finite(vals, s)
    return float(np.max(vals * np.exp(decay * s)))


def integrate_semi_infinite(
    f: Callable,
    decay: float,
    cfg: QuadConfig | None = None,
    *,
    scale: float | None = None,
    truncation: float | None = None,
) -> IntegralResult:
    """
    Integrate ``f`` over ``(0, inf)`` assuming ``|f(s)| <= C exp(-decay s)``.

    The cut-off ``S`` makes the tail bound ``C exp(-decay S) / decay`` fall
    below ``abs_tol / 10``.  ``C`` is ``scale`` when given, otherwise the
    largest ``|f(s)| exp(decay s)`` seen on a probe grid reaching out to
    ``S`` (re-probed until ``S`` stops growing).  ``truncation`` overrides
    ``S``; the reported tail bound then uses the probed ``C``.
    """
    cfg = cfg or QuadConfig()
    if not decay > 0:
        raise ValueError("decay rate must be positive")

    def cutoff(c):
        # 1.001 keeps the bound strictly below abs_tol/10 despite rounding
        return max(math.log(max(10.01 * c / (cfg.abs_tol * decay), math.e)) / decay,
                   1.0 / decay)

    if scale is not None:
        c = float(scale)
        upper = cutoff(c)
    else:
        upper = 40.0 / decay
        c = _probe_scale(f, decay, upper)
        for _ in range(4):
            new_upper = cutoff(c)
            if new_upper <= upper:
                break
            upper = new_upper
            c = max(c, _probe_scale(f, decay, upper))
        upper = cutoff(c)
    if truncation is not None:
        upper = float(truncation)
    tail = c * math.exp(-decay * upper) / decay

    # adaptive panels share 0.9 abs_tol in proportion to width; the tail takes the rest
    edges = np.linspace(0.0, upper, 5)
    stack = [(lo, hi, 0) for lo, hi in zip(edges[:-1], edges[1:])]
    value = 0.0
    err = 0.0
    evals = 0
    converged = True
    while stack:
        lo, hi, depth = stack.pop()
        share = 0.9 * cfg.abs_tol * (hi - lo) / upper
        r = _tanh_sinh(f, lo, hi, cfg, False, min(cfg.max_depth, _PANEL_MAX_LEVEL),
                       abs_tol=share)
        evals += r.evals
        if r.converged or depth >= _MAX_BISECTIONS or evals >= cfg.max_evals:
            if not r.converged:
                converged = False
            value = value + r.value
            err += r.err_estimate
            continue
        mid = 0.5 * (lo + hi)
        stack.extend([(mid, hi, depth + 1), (lo, mid, depth + 1)])
    return IntegralResult(
        value=value,
        err_estimate=err + tail,
        evals=evals,
        converged=converged,
        truncation=upper,
        tail_bound=tail,
    )
