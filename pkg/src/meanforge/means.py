"""
Two-variable means of the Stolarsky family and the n-variable geometric mean.

All Stolarsky branches are evaluated through one formula.  With
``d = ln y - ln x`` and ``g(w) = ln(expm1(w) / w)``,

    ln E(r, s; x, y) = ln x + d * [g(s d) - g(r d)] / (s d - r d),

which reduces to the textbook quotient when ``r s (r - s) (x - y) != 0`` and
to its limits otherwise: ``r = 0`` or ``s = 0`` need nothing special because
``g`` is analytic at 0, and ``r = s`` is the derivative ``d g'(r d)``.  When
``|s d - r d|`` is small the difference quotient is replaced by its midpoint
expansion ``g'(m) + g'''(m) delta**2 / 24`` (odd terms vanish at the
midpoint), which is the x -> y and r -> s limit worked out once and for all:

    E(r, r; x, x) = x,   E(r, r; x, y) = x * exp(d * g'(r d)).

Complex shifts ``z`` use the principal branch factor by factor, so
``(x + z)**lam`` has its own cut ending at ``-x``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

from .errors import DomainError

Number = Union[float, complex]

__all__ = [
    "MeanPair",
    "StolarskyParams",
    "WeightedPair",
    "PositiveTuple",
    "check_off_cut",
    "stolarsky",
    "mean",
    "shifted_mean",
    "weighted_geometric",
    "weighted_arithmetic",
    "gn",
    "an",
    "logarithmic_shift",
    "MEAN_KINDS",
]

# |s d - r d| below which the divided difference switches to its midpoint
# series; balances series truncation (delta**4) against cancellation (eps/delta).
_DIVDIFF_SWITCH = 1e-3
_SMALL_W = 1e-2

MEAN_KINDS = ("arithmetic", "geometric", "harmonic", "logarithmic", "identric", "power")


def _positive(name: str, v: float) -> float:
    v = float(v)
    if not (math.isfinite(v) and v > 0):
        raise DomainError(f"{name} must be a positive finite number, got {v!r}")
    return v


@dataclass(frozen=True)
class MeanPair:
    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", _positive("x", self.x))
        object.__setattr__(self, "y", _positive("y", self.y))

    @property
    def lower(self) -> float:
        return min(self.x, self.y)

    def swapped(self) -> "MeanPair":
        return MeanPair(self.y, self.x)


@dataclass(frozen=True)
class StolarskyParams:
    r: float
    s: float

    def __post_init__(self):
        for name in ("r", "s"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError(f"Stolarsky parameter {name} must be finite")
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class WeightedPair:
    pair: MeanPair
    lam: float

    def __post_init__(self):
        lam = float(self.lam)
        if not 0.0 < lam < 1.0:
            raise DomainError(f"weight must lie in (0, 1), got {lam!r}")
        object.__setattr__(self, "lam", lam)

    def swapped(self) -> "WeightedPair":
        """The same mean written with the larger argument first."""
        return WeightedPair(self.pair.swapped(), 1.0 - self.lam)


@dataclass(frozen=True)
class PositiveTuple:
    values: tuple = field()

    def __init__(self, values: Sequence[float]):
        vals = tuple(sorted(_positive("tuple entry", v) for v in values))
        if len(vals) < 2:
            raise DomainError("need at least two entries")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def lower(self) -> float:
        return self.values[0]


def _as_pair(m) -> MeanPair:
    return m if isinstance(m, MeanPair) else MeanPair(*m)


def _as_tuple(a) -> PositiveTuple:
    return a if isinstance(a, PositiveTuple) else PositiveTuple(a)


def check_off_cut(z: Number, cut_end: float) -> Number:
    """Validate that ``z`` avoids the ray ``(-inf, cut_end]``.

    Returns ``z`` as a float when it is real, otherwise as a complex.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("evaluation point must be finite")
    if z.imag == 0.0:
        if z.real <= cut_end:
            raise DomainError(f"point {z.real!r} lies on the branch cut (-inf, {cut_end!r}]")
        return z.real
    return z


# --- the g(w) = ln(expm1(w)/w) family --------------------------------------

def _g(w: float) -> float:
    if abs(w) < _SMALL_W:
        return w / 2 + w * w / 24 - w ** 4 / 2880
    if w > 0:
        return w + math.log(-math.expm1(-w) / w)
    return math.log(math.expm1(w) / w)


def _g1(w: float) -> float:
    """g'(w) = 1/(1 - exp(-w)) - 1/w."""
    if abs(w) < _SMALL_W:
        w2 = w * w
        return 0.5 + w / 12 - w * w2 / 720 + w * w2 * w2 / 30240
    return 1.0 / -math.expm1(-w) - 1.0 / w


def _g3(w: float) -> float:
    # only ever multiplied by delta**2/24 < 5e-8, so a short series suffices
    if abs(w) < 0.5:
        return -w / 120 + w ** 3 / 1512
    b = 1.0 / -math.expm1(-w)
    return b * (b - 1.0) * (2.0 * b - 1.0) - 2.0 / w ** 3


def _divided_difference(a: float, b: float) -> float:
    """[g(b) - g(a)] / (b - a), with the a == b limit g'(a)."""
    delta = b - a
    if abs(delta) < _DIVDIFF_SWITCH:
        m = 0.5 * (a + b)
        return _g1(m) + _g3(m) * delta * delta / 24.0
    return (_g(b) - _g(a)) / delta


def stolarsky(p: StolarskyParams, m: MeanPair) -> float:
    """
    Extended (Stolarsky) mean E(r, s; x, y).

    Symmetric in (r, s) and in (x, y).  Degenerate parameter sets
    (r = 0, s = 0, r = s, x = y) are handled by the same evaluation without
    switching formulas; see the module docstring.
    """
    if not isinstance(p, StolarskyParams):
        p = StolarskyParams(*p)
    m = _as_pair(m)
    x, y = m.x, m.y
    if x == y:
        return x
    # expand around the smaller argument so d >= 0 and the result is symmetric
    if x > y:
        x, y = y, x
    d = math.log(y) - math.log(x)
    r, s = sorted((p.r, p.s))
    return x * math.exp(d * _divided_difference(r * d, s * d))


_KIND_PARAMS = {
    "arithmetic": (1.0, 2.0),
    "geometric": (0.0, 0.0),
    "harmonic": (-2.0, -1.0),
    "logarithmic": (0.0, 1.0),
    "identric": (1.0, 1.0),
}


def stolarsky_params_for(kind: str, r: float | None = None) -> StolarskyParams:
    """The (r, s) pair under which ``kind`` is a special case of E."""
    if kind == "power":
        if r is None:
            raise DomainError("power mean needs an exponent r")
        return StolarskyParams(r, 2 * r)
    try:
        return StolarskyParams(*_KIND_PARAMS[kind])
    except KeyError:
        raise DomainError(f"unknown mean kind {kind!r}") from None


def mean(kind: str, m: MeanPair, r: float | None = None) -> float:
    """Named two-variable mean; ``r`` is the exponent of the power mean."""
    m = _as_pair(m)
    x, y = m.x, m.y
    if kind == "arithmetic":
        return 0.5 * (x + y)
    if kind == "geometric":
        return math.sqrt(x) * math.sqrt(y)
    if kind == "harmonic":
        return 2.0 * x * y / (x + y)
    if kind == "logarithmic":
        if x == y:
            return x
        if y > x:
            x, y = y, x
        return (x - y) / math.log1p((x - y) / y)
    if kind == "identric":
        if x == y:
            return x
        return stolarsky(StolarskyParams(1.0, 1.0), m)
    if kind == "power":
        if r is None:
            raise DomainError("power mean needs an exponent r")
        if r == 0:
            return math.sqrt(x) * math.sqrt(y)
        hi, lo = max(x, y), min(x, y)
        return hi * (0.5 * (1.0 + (lo / hi) ** r)) ** (1.0 / r)
    raise DomainError(f"unknown mean kind {kind!r}")


def shifted_mean(kind: str, m: MeanPair, t: float, r: float | None = None) -> float:
    """M(x + t, y + t) for real t > -min(x, y)."""
    m = _as_pair(m)
    t = check_off_cut(t, -m.lower)
    return mean(kind, MeanPair(m.x + t, m.y + t), r)


def _principal_power(w: Number, lam: float) -> Number:
    if isinstance(w, complex):
        return cmath.exp(lam * cmath.log(w))
    return w ** lam


def weighted_geometric(w: WeightedPair, z: Number = 0.0) -> Number:
    """
    Weighted geometric mean (x + z)**lam * (y + z)**(1 - lam).

    Each factor takes its own principal branch.  Real ``z`` gives a positive
    float; complex ``z`` must avoid ``(-inf, -min(x, y)]``.
    """
    z = check_off_cut(z, -w.pair.lower)
    x, y, lam = w.pair.x, w.pair.y, w.lam
    if isinstance(z, complex):
        return cmath.exp(lam * cmath.log(x + z) + (1.0 - lam) * cmath.log(y + z))
    return (x + z) ** lam * (y + z) ** (1.0 - lam)


def weighted_arithmetic(w: WeightedPair) -> float:
    return w.lam * w.pair.x + (1.0 - w.lam) * w.pair.y


def gn(a: PositiveTuple, z: Number = 0.0) -> Number:
    """
    Geometric mean of ``a + z``.

    Computed as ``exp(mean(Log(a_k + z)))``, the continuation that is analytic
    off ``(-inf, -a_1]``; it equals the principal n-th root of the product
    whenever the arguments of the factors sum to less than pi in magnitude,
    in particular for every real shift.
    """
    a = _as_tuple(a)
    z = check_off_cut(z, -a.lower)
    if isinstance(z, complex):
        return cmath.exp(sum(cmath.log(v + z) for v in a.values) / a.n)
    return math.exp(math.fsum(math.log(v + z) for v in a.values) / a.n)


def an(a: PositiveTuple) -> float:
    a = _as_tuple(a)
    return math.fsum(a.values) / a.n


def logarithmic_shift(m: MeanPair, z: Number = 0.0) -> Number:
    """L(x + z, y + z) with principal logarithms; z off ``(-inf, -min(x, y)]``."""
    m = _as_pair(m)
    z = check_off_cut(z, -m.lower)
    if not isinstance(z, complex):
        return mean("logarithmic", MeanPair(m.x + z, m.y + z))
    if m.x == m.y:
        return m.x + z
    return (m.x - m.y) / (cmath.log(m.x + z) - cmath.log(m.y + z))

