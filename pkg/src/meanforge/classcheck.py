"""
Numerical membership tests for completely monotonic (CM), logarithmically
completely monotonic (LCM), Bernstein and Stieltjes functions.

Derivative conditions are replaced by the alternating forward-difference
criterion: a CM function satisfies ``(-1)**k Delta_h**k f(t) >= 0`` for every
step ``h > 0``, because ``Delta_h**k f(t)`` is an average of ``h**k f^(k)``
over ``[t, t + k h]``.  The raw differences are compared, not difference
quotients, so the test is valid for any step and rounding enters only as
``2**k eps max|f|``.

A margin is the tested quantity divided by the largest ``|f|`` on the
stencil.  A verdict fails when the worst margin is below ``-margin_tol``; it
is ``inconclusive`` instead when the violation is also within the rounding
floor of that order, which only happens with a margin tolerance tighter than
that floor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .calculus import h_alpha, h_deriv
from .errors import DomainError
from .means import (
    MeanPair,
    PositiveTuple,
    WeightedPair,
    gn,
    mean,
    weighted_geometric,
)

__all__ = [
    "FunctionHandle",
    "ClassVerdict",
    "MAX_ORDER",
    "DEFAULT_MARGIN_TOL",
    "cm_check",
    "bernstein_check",
    "lcm_check",
    "cm_order_check",
    "stieltjes_density_check",
    "h_alpha_claim_check",
    "Claim",
    "claims_corpus",
    "negative_controls",
    "run_claim",
    "named_function",
    "NAMED_FUNCTIONS",
]

MAX_ORDER = 8
DEFAULT_MARGIN_TOL = 1e-9
_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class FunctionHandle:
    """
    Real function on the open interval ``domain``.

    ``derivative(t, k)`` is optional and valid for ``k <= exact_order``.
    """

    evaluator: Callable[[float], float]
    domain: tuple[float, float] = (0.0, math.inf)
    derivative: Callable[[float, int], float] | None = None
    exact_order: int = 0
    name: str = ""

    def __call__(self, t: float) -> float:
        return self.evaluator(t)


@dataclass
class ClassVerdict:
    class_name: str
    order_tested: int
    grid: list
    passed: bool
    worst_margin: float
    witness: tuple[float, int] | None
    status: str = "pass"
    margin_tol: float = DEFAULT_MARGIN_TOL
    step: float | None = None
    details: dict = field(default_factory=dict)


def _default_grid(domain: tuple[float, float]) -> list[float]:
    lo, hi = domain
    base = 0.0 if not math.isfinite(lo) else lo
    offsets = (0.05, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0)
    pts = [base + d for d in offsets]
    return [t for t in pts if t < hi]


def _stencils(f: FunctionHandle, grid, step: float, order: int) -> np.ndarray:
    """Samples f(t + j h), j = 0..order, one row per grid point."""
    lo, hi = f.domain
    rows = []
    for t in grid:
        if not (lo < t and t + order * step < hi):
            raise DomainError(
                f"grid point {t!r} with {order} steps of {step!r} leaves {f.domain!r}")
        rows.append([f(t + j * step) for j in range(order + 1)])
    vals = np.array(rows, dtype=float)
    if not np.all(np.isfinite(vals)):
        raise DomainError("function is not finite on the stencil")
    return vals


def _alternating(vals: np.ndarray, k: int) -> np.ndarray:
    """(-1)**k Delta**k along the last axis, starting at column 0."""
    return (-1) ** k * np.diff(vals[:, :k + 1], n=k, axis=1)[:, 0] if k else vals[:, 0]


class _Tracker:
    def __init__(self, tol: float):
        self.tol = tol
        self.worst = math.inf
        self.witness: tuple[float, int] | None = None
        self.noise_at_worst = 0.0

    def update(self, grid, margins: np.ndarray, k: int, noise: float) -> None:
        i = int(np.argmin(margins))
        if margins[i] < self.worst:
            self.worst = float(margins[i])
            self.witness = (float(grid[i]), k)
            self.noise_at_worst = noise

    def verdict(self, name: str, order: int, grid, step, **details) -> ClassVerdict:
        if self.worst >= -self.tol:
            status = "pass"
        elif self.worst >= -self.noise_at_worst:
            status = "inconclusive"
        else:
            status = "fail"
        return ClassVerdict(name, order, list(grid), status == "pass", self.worst,
                            self.witness, status, self.tol, step, dict(details))


def _check_order(max_order: int) -> int:
    if not (0 <= max_order <= MAX_ORDER):
        raise DomainError(f"max_order must lie in 0..{MAX_ORDER} in double precision")
    return int(max_order)


def _run_differences(tracker: _Tracker, vals: np.ndarray, grid, orders, shift: int = 0):
    scale = np.maximum(np.max(np.abs(vals), axis=1), np.finfo(float).tiny)
    for k in orders:
        d = (-1) ** k * np.diff(vals[:, :k + shift + 1], n=k + shift, axis=1)[:, 0] \
            if k + shift else vals[:, 0]
        noise = 2.0 ** (k + shift + 2) * _EPS
        tracker.update(grid, d / scale, k, noise)


def cm_check(f: FunctionHandle, max_order: int = MAX_ORDER, grid: Sequence[float] | None = None,
             step: float = 1e-2, margin_tol: float = DEFAULT_MARGIN_TOL) -> ClassVerdict:
    """
    Test ``(-1)**k Delta_step**k f(t) >= -margin_tol * scale`` for
    ``k = 0..max_order`` at every grid point.

    When ``f`` carries exact derivatives, ``(-1)**k f^(k)(t)`` is tested as
    well up to ``min(max_order, f.exact_order)``.
    """
    max_order = _check_order(max_order)
    grid = list(grid) if grid is not None else _default_grid(f.domain)
    vals = _stencils(f, grid, step, max_order)
    tracker = _Tracker(margin_tol)
    _run_differences(tracker, vals, grid, range(max_order + 1))
    if f.derivative is not None:
        for k in range(min(max_order, f.exact_order) + 1):
            d = np.array([(-1) ** k * f.derivative(t, k) for t in grid])
            s = np.array([max(abs(f.derivative(t, k)), abs(f(t)), 1e-300) for t in grid])
            tracker.update(grid, d / s, k, 4 * _EPS)
    return tracker.verdict("completely monotonic", max_order, grid, step)


def bernstein_check(f: FunctionHandle, max_order: int = MAX_ORDER,
                    grid: Sequence[float] | None = None, step: float = 1e-2,
                    margin_tol: float = DEFAULT_MARGIN_TOL) -> ClassVerdict:
    """
    Test ``f >= 0`` and ``(-1)**k Delta**(k+1) f >= 0`` for ``k = 0..max_order``,
    the difference form of "f' is completely monotonic".

    The witness order is ``-1`` for a negative value of ``f`` itself and ``k``
    for a failure of the ``(k+1)``-th difference.
    """
    max_order = _check_order(max_order)
    grid = list(grid) if grid is not None else _default_grid(f.domain)
    vals = _stencils(f, grid, step, max_order + 1)
    tracker = _Tracker(margin_tol)
    scale = np.maximum(np.max(np.abs(vals), axis=1), np.finfo(float).tiny)
    tracker.update(grid, vals[:, 0] / scale, -1, 4 * _EPS)
    _run_differences(tracker, vals, grid, range(max_order + 1), shift=1)
    return tracker.verdict("Bernstein", max_order, grid, step)


def lcm_check(f: FunctionHandle, max_order: int = MAX_ORDER, grid: Sequence[float] | None = None,
              step: float = 1e-2, margin_tol: float = DEFAULT_MARGIN_TOL) -> ClassVerdict:
    """Test ``(-1)**k Delta**k ln f >= 0`` for ``k = 1..max_order``; needs ``f > 0``."""
    max_order = _check_order(max_order)
    grid = list(grid) if grid is not None else _default_grid(f.domain)
    vals = _stencils(f, grid, step, max_order)
    if np.any(vals <= 0):
        raise DomainError("logarithmic test needs a strictly positive function")
    logs = np.log(vals)
    # ln f may be near zero, so its rounding scale is at least 1
    scale = np.maximum(np.max(np.abs(logs), axis=1), 1.0)
    tracker = _Tracker(margin_tol)
    for k in range(1, max_order + 1):
        d = _alternating(logs, k)
        tracker.update(grid, d / scale, k, 2.0 ** (k + 2) * _EPS)
    return tracker.verdict("logarithmically completely monotonic", max_order, grid, step)


def cm_order_check(f: FunctionHandle, k: int, max_order: int = MAX_ORDER,
                   grid: Sequence[float] | None = None, step: float = 1e-2,
                   margin_tol: float = DEFAULT_MARGIN_TOL) -> ClassVerdict:
    """
    CM of ``k``-th order: the ``k``-th difference quotient is CM while the
    ``(k-1)``-th is not.

    ``passed`` reflects the first condition; ``details["lower_order_cm"]``
    reports whether the ``(k-1)``-th quotient also passed, in which case the
    order is not exactly ``k``.
    """
    if k < 0:
        raise DomainError("order must be nonnegative")

    def quotient(j: int) -> FunctionHandle:
        if j == 0:
            return f
        lo, hi = f.domain

        def g(t):
            vals = [f(t + i * step) for i in range(j + 1)]
            return float(np.diff(vals, n=j)[0]) / step ** j

        return FunctionHandle(g, (lo, hi - j * step), name=f"Delta^{j} {f.name}")

    v = cm_check(quotient(k), max_order, grid, step, margin_tol)
    v.class_name = f"completely monotonic of order {k}"
    if k >= 1:
        lower = cm_check(quotient(k - 1), max_order, grid, step, margin_tol)
        v.details["lower_order_cm"] = lower.passed
    return v


def stieltjes_density_check(alpha: float, n_density: int = 64,
                            points: Sequence[float] = (0.1, 0.5, 1.0, 2.0, 10.0),
                            cfg=None) -> ClassVerdict:
    """
    Check that ``h_alpha`` has the Stieltjes form ``1 + int_0^1 d(u) du/(u + t)``
    with density ``d(u) = sin(alpha pi)/pi (1/u - 1)**alpha``.

    Density nonnegativity is tested on a midpoint grid of (0, 1) and the
    representation residual at ``points`` must be within its tolerance.
    Only ``alpha`` in (0, 1) is accepted; negative alpha gives a Bernstein
    function, see :func:`h_alpha_claim_check`.
    """
    from .kernels import h_density
    from .representations import h_alpha_repr

    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise DomainError("Stieltjes density check needs alpha in (0, 1); "
                          "for alpha in (-1, 0) test the Bernstein property instead")
    u = (np.arange(n_density) + 0.5) / n_density
    dens = np.array([h_density(alpha, float(v)) for v in u])
    scale = float(np.max(np.abs(dens)))
    i = int(np.argmin(dens))
    margin = float(dens[i]) / scale
    reports = [h_alpha_repr(alpha, t, cfg) for t in points]
    worst_res = max(r.rel_residual for r in reports)
    ok = margin >= -DEFAULT_MARGIN_TOL and all(r.passed for r in reports)
    return ClassVerdict("Stieltjes", 0, list(points), ok, margin, (float(u[i]), 0),
                        "pass" if ok else "fail", DEFAULT_MARGIN_TOL, None,
                        {"max_rel_residual": worst_res, "alpha": alpha})


def h_alpha_claim_check(alpha: float, max_order: int = MAX_ORDER, step: float = 1e-2) -> ClassVerdict:
    """Stieltjes test for alpha in (0, 1), Bernstein test for alpha in (-1, 0)."""
    if 0.0 < alpha < 1.0:
        return stieltjes_density_check(alpha)
    if -1.0 < alpha < 0.0:
        return bernstein_check(_h_handle(alpha), max_order, step=step)
    raise DomainError("alpha must lie in (-1, 0) or (0, 1)")


# --- corpus ------------------------------------------------------------------

def _h_handle(alpha: float) -> FunctionHandle:
    return FunctionHandle(lambda t: h_alpha(alpha, t), (0.0, math.inf),
                          derivative=lambda t, k: h_deriv(alpha, k, t),
                          exact_order=MAX_ORDER, name=f"h_{alpha:g}")


def _shift_handle(name: str, fn: Callable[[float], float], lower: float) -> FunctionHandle:
    return FunctionHandle(fn, (-lower, math.inf), name=name)


def _shift_grid(lower: float) -> list[float]:
    return [-lower + d for d in (0.05, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0)]


@dataclass(frozen=True)
class Claim:
    """One corpus entry: ``expect`` is whether the function belongs to the class."""

    name: str
    klass: str  # cm | bernstein | lcm | cm-order-1 | stieltjes
    handle: FunctionHandle | None
    expect: bool
    grid: tuple | None = None
    alpha: float | None = None


def _pair_claims(pair: MeanPair) -> list[Claim]:
    x, y = pair.x, pair.y
    lo = pair.lower
    grid = tuple(_shift_grid(lo))

    def shifted(kind):
        return lambda t: mean(kind, MeanPair(x + t, y + t))

    tag = f"({x:g},{y:g})"
    return [
        Claim(f"A-shift{tag}", "bernstein", _shift_handle("A", shifted("arithmetic"), lo), True, grid),
        Claim(f"H-shift{tag}", "bernstein", _shift_handle("H", shifted("harmonic"), lo), True, grid),
        Claim(f"I-shift{tag}", "cm-order-1", _shift_handle("I", shifted("identric"), lo), True, grid),
        Claim(f"L-shift{tag}", "bernstein", _shift_handle("L", shifted("logarithmic"), lo), True, grid),
    ]


def claims_corpus() -> list[Claim]:
    """Functions claimed to belong to a class; every entry should pass."""
    claims: list[Claim] = [
        Claim("exp-neg", "cm", FunctionHandle(lambda t: math.exp(-t), (-math.inf, math.inf),
                                              name="exp(-t)"), True),
        Claim("h_0.5", "cm", _h_handle(0.5), True),
        Claim("h_-0.5", "bernstein", _h_handle(-0.5), True),
        Claim("recip-linear", "lcm", FunctionHandle(lambda t: 1.0 / (t + 1.0), (-1.0, math.inf),
                                                    name="1/(t+1)"), True),
    ]
    w = WeightedPair(MeanPair(2.0, 1.0), 1.0 / 3.0)
    claims.append(Claim("recip-weighted-geometric(2,1,1/3)", "lcm",
                        _shift_handle("1/G", lambda t: 1.0 / weighted_geometric(w, t), 1.0), True,
                        tuple(_shift_grid(1.0))))
    for pair in (MeanPair(2.0, 1.0), MeanPair(5.0, 1.0)):
        claims.extend(_pair_claims(pair))
    for lam in (0.25, 0.5, 0.75):
        wp = WeightedPair(MeanPair(3.0, 1.0), lam)
        claims.append(Claim(f"G-weighted-shift(3,1,{lam:g})", "bernstein",
                            _shift_handle("G", lambda t, wp=wp: weighted_geometric(wp, t), 1.0),
                            True, tuple(_shift_grid(1.0))))
    for vals in ((1.0, 4.0), (1.0, 2.0, 4.0), (1.0, 2.0, 3.0, 5.0)):
        a = PositiveTuple(vals)
        claims.append(Claim(f"Gn-shift{vals}", "bernstein",
                            _shift_handle("Gn", lambda t, a=a: gn(a, t), a.lower), True,
                            tuple(_shift_grid(a.lower))))
    for alpha in (0.5, 0.9):
        claims.append(Claim(f"stieltjes-h_{alpha:g}", "stieltjes", None, True, alpha=alpha))
    return claims


def negative_controls() -> list[Claim]:
    """Canonical non-members; every entry should fail with a witness."""
    return [
        Claim("identity", "cm", FunctionHandle(lambda t: t, (0.0, math.inf), name="t"), False),
        Claim("exp-neg", "bernstein", FunctionHandle(lambda t: math.exp(-t), (-math.inf, math.inf),
                                                     name="exp(-t)"), False),
        Claim("exp-pos", "lcm", FunctionHandle(lambda t: math.exp(t), (-math.inf, math.inf),
                                               name="exp(t)"), False),
        Claim("square", "cm-order-1", FunctionHandle(lambda t: t * t, (0.0, math.inf),
                                                     name="t^2"), False),
        Claim("h_0.5", "bernstein", _h_handle(0.5), False),
    ]


def run_claim(c: Claim, max_order: int = MAX_ORDER, step: float = 1e-2,
              margin_tol: float = DEFAULT_MARGIN_TOL) -> ClassVerdict:
    if c.klass == "stieltjes":
        return stieltjes_density_check(c.alpha)
    grid = list(c.grid) if c.grid is not None else None
    if c.klass == "cm":
        return cm_check(c.handle, max_order, grid, step, margin_tol)
    if c.klass == "bernstein":
        return bernstein_check(c.handle, max_order, grid, step, margin_tol)
    if c.klass == "lcm":
        return lcm_check(c.handle, max_order, grid, step, margin_tol)
    if c.klass == "cm-order-1":
        return cm_order_check(c.handle, 1, max_order, grid, step, margin_tol)
    raise DomainError(f"unknown class {c.klass!r}")


NAMED_FUNCTIONS = {
    "exp-neg": (lambda t: math.exp(-t), (-math.inf, math.inf)),
    "exp-pos": (lambda t: math.exp(t), (-math.inf, math.inf)),
    "identity": (lambda t: t, (0.0, math.inf)),
    "square": (lambda t: t * t, (0.0, math.inf)),
    "recip-linear": (lambda t: 1.0 / (t + 1.0), (-1.0, math.inf)),
    "sqrt": (math.sqrt, (0.0, math.inf)),
    "log1p": (math.log1p, (-1.0, math.inf)),
}


def named_function(name: str) -> FunctionHandle:
    """A handle from the small built-in table used by the command line."""
    if name.startswith("h:"):
        return _h_handle(float(name[2:]))
    try:
        fn, dom = NAMED_FUNCTIONS[name]
    except KeyError:
        raise DomainError(f"unknown function {name!r}; choose from "
                          f"{', '.join(sorted(NAMED_FUNCTIONS))} or h:<alpha>") from None
    return FunctionHandle(fn, dom, name=name)
