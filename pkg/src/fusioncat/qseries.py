"""Truncated q-series with exact rational exponents.

Provides eta-power inverses (partition generating functions), lattice-coset
theta functions, characters of lattice-coset modules assembled from
(rank-1 coset, rank-2 coset) decomposition pieces, and the numerical
quantum-dimension ratio limit qdim = lim_{y -> 0+} ch_M(iy)/ch_V(iy),
evaluated at q = e^{-2 pi y} with a certified truncation-tail bound and
Richardson-style extrapolation in y.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .lattice import Coset, _search_box

__all__ = [
    "QSeries",
    "TailBoundError",
    "eta_inverse_power",
    "theta_coset",
    "theta_lattice_dual_sum",
    "character",
    "qdim_ratio",
    "qdim_ratio_extrapolated",
    "DEFAULT_CUTOFF",
    "DEFAULT_PROBE_YS",
]

DEFAULT_CUTOFF = Fraction(30)
DEFAULT_PROBE_YS = (0.04, 0.02, 0.01)
TAIL_RELATIVE_BOUND = 1e-12


class TailBoundError(ArithmeticError):
    """Truncation tail is not provably negligible at the requested y."""


@dataclass(frozen=True)
class QSeries:
    """Finite sum of c * q^e with rational exponents e < truncation_order."""

    coeffs: tuple[tuple[Fraction, int], ...]   # sorted by exponent
    truncation_order: Fraction

    @staticmethod
    def from_dict(data: dict[Fraction, int], cutoff: Fraction) -> "QSeries":
        cutoff = Fraction(cutoff)
        items = tuple(sorted((e, c) for e, c in data.items()
                             if c and e < cutoff))
        return QSeries(items, cutoff)

    @staticmethod
    def one(cutoff: Fraction) -> "QSeries":
        return QSeries.from_dict({Fraction(0): 1}, cutoff)

    @staticmethod
    def zero(cutoff: Fraction) -> "QSeries":
        return QSeries((), Fraction(cutoff))

    def as_dict(self) -> dict[Fraction, int]:
        return dict(self.coeffs)

    def coefficient(self, exponent: Fraction | int) -> int:
        target = Fraction(exponent)
        for e, c in self.coeffs:
            if e == target:
                return c
        return 0

    def leading_exponent(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero series has no leading exponent")
        return self.coeffs[0][0]

    def denom(self) -> int:
        """Common denominator of all exponents (1 for the zero series)."""
        out = 1
        for e, _ in self.coeffs:
            out = out * e.denominator // math.gcd(out, e.denominator)
        return out

    def shift(self, delta: Fraction) -> "QSeries":
        delta = Fraction(delta)
        return QSeries(tuple((e + delta, c) for e, c in self.coeffs),
                       self.truncation_order + delta)

    def __add__(self, other: "QSeries") -> "QSeries":
        cutoff = min(self.truncation_order, other.truncation_order)
        data: dict[Fraction, int] = {}
        for e, c in self.coeffs:
            data[e] = data.get(e, 0) + c
        for e, c in other.coeffs:
            data[e] = data.get(e, 0) + c
        return QSeries.from_dict(data, cutoff)

    def __mul__(self, other: "QSeries") -> "QSeries":
        lead_self = self.coeffs[0][0] if self.coeffs else Fraction(0)
        lead_other = other.coeffs[0][0] if other.coeffs else Fraction(0)
        cutoff = min(self.truncation_order + lead_other,
                     other.truncation_order + lead_self)
        data: dict[Fraction, int] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                e = e1 + e2
                if e < cutoff:
                    data[e] = data.get(e, 0) + c1 * c2
        return QSeries.from_dict(data, cutoff)

    def scale(self, factor: int) -> "QSeries":
        return QSeries(tuple((e, c * factor) for e, c in self.coeffs),
                       self.truncation_order)

    def evaluate(self, y: float) -> float:
        """Value at q = e^{-2 pi y} for real y > 0 (no tail check)."""
        if y <= 0:
            raise ValueError("y must be positive")
        return sum(c * math.exp(-2 * math.pi * y * float(e))
                   for e, c in self.coeffs)

    def dump_lines(self) -> list[str]:
        """CLI-facing `exponent coefficient` pairs, ascending exponents."""
        return [f"{e.numerator}/{e.denominator} {c}" if e.denominator != 1
                else f"{e.numerator} {c}"
                for e, c in self.coeffs]

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.coeffs[:8]:
            parts.append(f"{c}*q^({e})")
        tail = " + ..." if len(self.coeffs) > 8 else ""
        return " + ".join(parts) + tail


def _partitions_upto(n: int) -> list[int]:
    """p(0..n) via Euler's pentagonal-number recurrence."""
    p = [0] * (n + 1)
    p[0] = 1
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > m:
                break
            sign = -1 if k % 2 == 0 else 1
            total += sign * p[m - g1]
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p


def eta_inverse_power(r: int, cutoff: Fraction | int = DEFAULT_CUTOFF
                      ) -> QSeries:
    """q^{-r/24} * prod_{n>=1} (1 - q^n)^{-r}, truncated.

    The product part for r = 1 has partition-number coefficients; higher r
    is computed by repeated convolution of the integer product parts.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    cutoff = Fraction(cutoff)
    if r == 0:
        return QSeries.one(cutoff)
    n_max = max(0, math.ceil(cutoff + Fraction(r, 24)) + 1)
    base = _partitions_upto(n_max)
    coeffs = list(base)
    for _ in range(r - 1):
        nxt = [0] * (n_max + 1)
        for a in range(n_max + 1):
            ca = coeffs[a]
            if not ca:
                continue
            for b in range(n_max + 1 - a):
                nxt[a + b] += ca * base[b]
        coeffs = nxt
    shift = -Fraction(r, 24)
    return QSeries.from_dict(
        {Fraction(n) + shift: coeffs[n] for n in range(n_max + 1)}, cutoff)


def theta_coset(c: Coset, cutoff: Fraction | int = DEFAULT_CUTOFF) -> QSeries:
    """sum over coset vectors x with <x,x>/2 < cutoff of q^{<x,x>/2}."""
    cutoff = Fraction(cutoff)
    if cutoff <= 0:
        return QSeries.zero(cutoff)
    data: dict[Fraction, int] = {}
    lat = c.lattice
    box = _search_box(lat, 2 * cutoff)
    for offsets in itertools.product(range(-box, box + 1), repeat=lat.rank):
        x = tuple(r + o for r, o in zip(c.rep, offsets))
        half = lat.norm(x) / 2
        if half < cutoff:
            data[half] = data.get(half, 0) + 1
    return QSeries.from_dict(data, cutoff)


def theta_lattice_dual_sum(cosets: Iterable[Coset],
                           cutoff: Fraction | int = DEFAULT_CUTOFF) -> QSeries:
    """Coefficientwise sum of theta_coset over the given cosets."""
    cutoff = Fraction(cutoff)
    total = QSeries.zero(cutoff)
    for c in cosets:
        total = total + theta_coset(c, cutoff)
    return total


def character(pieces: Sequence[tuple[Coset, Coset]],
              c: Fraction | int,
              cutoff: Fraction | int = DEFAULT_CUTOFF) -> QSeries:
    """Character of a module decomposed into (rank-1, rank-2) coset pieces:
    q^{-c/24} * sum over pieces of theta_rank1 * theta_rank2 / eta^3."""
    cutoff = Fraction(cutoff)
    c = Fraction(c)
    eta3 = eta_inverse_power(3, cutoff)
    # eta_inverse_power already carries q^{-3/24}; adjust to q^{-c/24}.
    eta3 = eta3.shift(Fraction(3, 24) - c / 24)
    total = QSeries.zero(cutoff)
    for rank1, rank2 in pieces:
        term = theta_coset(rank1, cutoff) * theta_coset(rank2, cutoff)
        total = total + term * eta3
    return total


def _evaluate_with_tail_check(series: QSeries, y: float) -> float:
    value = series.evaluate(y)
    if not series.coeffs:
        return value
    # First-omitted-term estimate: the tail starting at the truncation order
    # is bounded by (max |coefficient|) * x^T / (1 - x) with x = e^{-2 pi y}
    # per unit exponent step; exponent steps are at least 1/denom apart, so
    # use the per-step ratio x^{1/denom}.
    x = math.exp(-2 * math.pi * y)
    step = x ** (1.0 / series.denom())
    if step >= 1.0:
        raise TailBoundError("y too small for any tail bound")
    max_coeff = max(abs(cf) for _, cf in series.coeffs)
    tail = max_coeff * (x ** float(series.truncation_order)) / (1.0 - step)
    if tail > TAIL_RELATIVE_BOUND * abs(value):
        raise TailBoundError(
            f"tail estimate {tail:.3e} exceeds {TAIL_RELATIVE_BOUND:g} of "
            f"value {value:.6e} at y={y}; raise the cutoff")
    return value


def qdim_ratio(numerator: QSeries, denominator: QSeries, y: float) -> float:
    """numerator(iy)/denominator(iy) at q = e^{-2 pi y}, tail-certified."""
    if numerator.truncation_order != denominator.truncation_order:
        raise ValueError("numerator and denominator cutoffs differ")
    num = _evaluate_with_tail_check(numerator, y)
    den = _evaluate_with_tail_check(denominator, y)
    if abs(den) < 1e-300:
        raise ZeroDivisionError("denominator evaluates below 1e-300")
    return num / den


def qdim_ratio_extrapolated(numerator: QSeries, denominator: QSeries,
                            ys: Sequence[float] = DEFAULT_PROBE_YS) -> float:
    """Neville extrapolation of the ratio to y = 0 over the probe points."""
    xs = list(ys)
    vals = [qdim_ratio(numerator, denominator, y) for y in xs]
    n = len(xs)
    for level in range(1, n):
        for i in range(n - level):
            vals[i] = ((0.0 - xs[i + level]) * vals[i]
                       - (0.0 - xs[i]) * vals[i + 1]) / (xs[i] - xs[i + level])
    return vals[0]
