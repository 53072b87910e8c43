"""
Closed-form derivatives of ``h_alpha(t) = (1 + 1/t)**alpha`` and

    H_alpha(t) = h_alpha(t) / alpha - h_{alpha-1}(t) / (alpha - 1),

built from integer coefficient polynomials in alpha.

Polynomials are tuples of Python ints in ascending powers of alpha.  Every
coefficient is produced and evaluated in exact arithmetic (``Fraction``), and
only the final value is rounded to a float, so sign tests on high-order
derivatives are not polluted by cancellation in the alternating sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError
from .means import WeightedPair

__all__ = [
    "Poly",
    "CoeffTable",
    "a_coeff",
    "b_coeff",
    "poly_eval",
    "coeff_table",
    "RecurrenceResult",
    "a_recurrence_check",
    "h_alpha",
    "h_deriv",
    "big_h",
    "H_deriv",
    "g_prime",
    "fd_derivative",
    "fd_nested",
]

Poly = tuple  # ascending integer coefficients in alpha


def _poly_mul(p: Sequence[int], q: Sequence[int]) -> Poly:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return tuple(out)


def _poly_add(p: Sequence[int], q: Sequence[int]) -> Poly:
    n = max(len(p), len(q))
    return _trim(tuple((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                       for i in range(n)))


def _poly_scale(p: Sequence[int], c: int) -> Poly:
    return _trim(tuple(c * a for a in p))


def _trim(p: Sequence[int]) -> Poly:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p) if p else (0,)


def _rising(start: int, stop: int) -> Poly:
    """prod_{l=start}^{stop} (alpha + l); empty product is 1."""
    out: Poly = (1,)
    for ell in range(start, stop + 1):
        out = _poly_mul(out, (ell, 1))
    return out


def _check_index(m: int, k: int) -> None:
    if not (isinstance(m, int) and m >= 1):
        raise DomainError(f"order m must be a positive integer, got {m!r}")
    if not (isinstance(k, int) and 0 <= k <= m - 1):
        raise DomainError(f"index k must lie in 0..{m - 1}, got {k!r}")


@lru_cache(maxsize=None)
def a_coeff(m: int, k: int) -> Poly:
    """k! C(m, k) C(m-1, k) prod_{l=0}^{m-k-1} (alpha + l)."""
    _check_index(m, k)
    c = math.factorial(k) * math.comb(m, k) * math.comb(m - 1, k)
    return _poly_scale(_rising(0, m - k - 1), c)


@lru_cache(maxsize=None)
def b_coeff(m: int, k: int) -> Poly:
    """k! C(m+1, k) C(m-1, k) prod_{l=1}^{m-k-1} (alpha + l)."""
    _check_index(m, k)
    c = math.factorial(k) * math.comb(m + 1, k) * math.comb(m - 1, k)
    return _poly_scale(_rising(1, m - k - 1), c)


def poly_eval(p: Sequence[int], alpha) -> Fraction:
    """Exact Horner evaluation; ``alpha`` is converted to a Fraction."""
    a = Fraction(alpha)
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * a + c
    return acc


@dataclass(frozen=True)
class CoeffTable:
    """Coefficients indexed k = 0..m-1, exact polynomials or values at one alpha."""

    m: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.m:
            raise ValueError("table length must equal m")

    def at(self, alpha: float) -> tuple:
        return tuple(float(poly_eval(p, alpha)) for p in self.entries)


def coeff_table(kind: str, m: int) -> CoeffTable:
    fn = {"a": a_coeff, "b": b_coeff}.get(kind)
    if fn is None:
        raise DomainError("kind must be 'a' or 'b'")
    return CoeffTable(m, tuple(fn(m, k) for k in range(m)))


@dataclass(frozen=True)
class RecurrenceResult:
    ok: bool
    checked_up_to: int
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def a_recurrence_check(m_max: int,
                       coeff: Callable[[int, int], Poly] = a_coeff) -> RecurrenceResult:
    """
    Check ``a_{m+1,k} = (m + alpha - k) a_{m,k} + (2m - k + 1) a_{m,k-1}``
    as a polynomial identity for every ``m < m_max``.

    The edge cases ``k = 0`` and ``k = m`` drop the missing neighbour.
    ``coeff`` may be replaced to run the check against a perturbed table; the
    first failing ``(m + 1, k)`` is returned as the witness.
    """
    if m_max < 1:
        raise DomainError("m_max must be >= 1")
    for m in range(1, m_max):
        for k in range(m + 1):
            rhs: Poly = (0,)
            if k <= m - 1:
                rhs = _poly_add(rhs, _poly_mul((m - k, 1), coeff(m, k)))
            if k >= 1:
                rhs = _poly_add(rhs, _poly_scale(coeff(m, k - 1), 2 * m - k + 1))
            if _trim(coeff(m + 1, k)) != _trim(rhs):
                return RecurrenceResult(False, m_max, (m + 1, k))
    return RecurrenceResult(True, m_max)


def _check_t(t: float) -> Fraction:
    t = float(t)
    if not (math.isfinite(t) and t > 0):
        raise DomainError(f"t must be a positive finite number, got {t!r}")
    return Fraction(t)


def h_alpha(alpha: float, t: float) -> float:
    """(1 + 1/t)**alpha computed as exp(alpha log1p(1/t))."""
    _check_t(t)
    return math.exp(alpha * math.log1p(1.0 / t))


def h_deriv(alpha: float, m: int, t: float) -> float:
    """m-th derivative of ``h_alpha`` at ``t > 0``; alpha in (-1, 1)."""
    if not -1.0 < alpha < 1.0:
        raise DomainError("alpha must lie in (-1, 1)")
    if m < 0:
        raise DomainError("order must be nonnegative")
    tf = _check_t(t)
    if m == 0:
        return h_alpha(alpha, t)
    s = sum(poly_eval(a_coeff(m, k), alpha) * tf ** k for k in range(m))
    scale = s / (tf * (1 + tf)) ** m
    return (-1) ** m * float(scale) * h_alpha(alpha, t)


def big_h(alpha: float, t: float) -> float:
    """H_alpha(t) = h_alpha(t)/alpha - h_{alpha-1}(t)/(alpha-1)."""
    return h_alpha(alpha, t) / alpha - h_alpha(alpha - 1.0, t) / (alpha - 1.0)


def H_deriv(alpha: float, m: int, t: float) -> float:
    """m-th derivative of ``H_alpha`` at ``t > 0``; alpha in (0, 1)."""
    if not 0.0 < alpha < 1.0:
        raise DomainError("alpha must lie in (0, 1)")
    if m < 0:
        raise DomainError("order must be nonnegative")
    tf = _check_t(t)
    if m == 0:
        return big_h(alpha, t)
    s = sum(poly_eval(b_coeff(m, k), alpha) * tf ** k for k in range(m))
    scale = s / (tf ** m * (1 + tf) ** (m + 1))
    return (-1) ** m * float(scale) * h_alpha(alpha, t)


def g_prime(w: WeightedPair, t: float) -> float:
    """
    d/dt of ``(x + t)**lam (y + t)**(1 - lam)``, equal to
    ``lam (1 - lam) H_lam((y + t)/(x - y))`` for ``x > y`` and ``t > -y``.
    """
    x, y, lam = w.pair.x, w.pair.y, w.lam
    if not x > y:
        raise DomainError("g_prime needs x > y")
    t = float(t)
    if not t > -y:
        raise DomainError(f"t must exceed {-y!r}")
    return lam * (1.0 - lam) * big_h(lam, (y + t) / (x - y))


_EPS = float(np.finfo(float).eps)


def fd_derivative(f: Callable[[float], float], t: float, step: float | None = None,
                  lower: float = 0.0) -> float:
    """
    Central difference with step ``cbrt(eps) max(1, |t|)`` and one Richardson
    extrapolation; the step is shrunk so every node stays above ``lower``,
    the left end of the domain of ``f``.
    """
    h = step if step is not None else _EPS ** (1.0 / 3.0) * max(1.0, abs(t))
    if t > lower:
        h = min(h, 0.25 * (t - lower))

    def central(hh):
        return (f(t + hh) - f(t - hh)) / (2.0 * hh)

    return (4.0 * central(0.5 * h) - central(h)) / 3.0


def fd_nested(f: Callable[[float], float], t: float, m: int) -> float:
    """
    m-th derivative from the central m-th difference, Richardson-extrapolated
    once.  The step ``eps**(1/(m+4))`` times ``|t|`` (the distance to the
    singularity at 0, which sets the scale on which h and H vary) balances the
    O(h**4) truncation against amplified rounding.
    """
    if m == 0:
        return f(t)
    h = 2.0 * _EPS ** (1.0 / (m + 4)) * abs(t)
    weights = [(-1) ** j * math.comb(m, j) for j in range(m + 1)]

    def central(hh):
        total = math.fsum(c * f(t + (0.5 * m - j) * hh) for j, c in enumerate(weights))
        return total / hh ** m

    return (4.0 * central(0.5 * h) - central(h)) / 3.0
