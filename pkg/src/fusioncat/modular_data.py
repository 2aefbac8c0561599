"""Twists, quantum dimensions, and exact S/T matrices for a fusion ring.

Everything is computed in exact cyclotomic arithmetic: s-tilde from the
balancing formula, S = s-tilde / D with D the positive square root of the
global dimension, the Verlinde structure constants as exact integers, and
the full battery of consistency checks (symmetry, S^2 = C, unitarity,
Gauss sums).  A datum that fails verification is still fully computable;
verification failure is diagnostic, not fatal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .cyclotomic import (
    CycNum,
    DEFAULT_ORDER_CAP,
    cyc_rational,
    cyc_root_of_unity,
    cyc_sqrt_rational,
)
from .fusion_ring import FusionRing

__all__ = [
    "ModularDatum",
    "ModularReport",
    "VerlindeError",
    "stilde",
    "stilde_conjugate_form",
    "s_matrix",
    "verify_modular",
    "verlinde",
    "t_matrix",
]


class VerlindeError(ArithmeticError):
    """Verlinde formula produced a non-integer (inconsistent input datum)."""


@dataclass(frozen=True)
class ModularReport:
    """Exact check results for one modular datum."""

    symmetric: bool
    s_squared_is_charge_conjugation: bool
    dual_invariance: bool          # S_{i',j'} = S_{i,j}
    unitary: bool
    first_row_is_dims: bool        # S_{0,i} = d_i / D
    gauss_product_ok: bool         # p+ p- = D^2
    gauss_ratio_ok: bool | None    # p+/p- = e^{2 pi i c/4}; None if c unknown
    failures: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        checks = [self.symmetric, self.s_squared_is_charge_conjugation,
                  self.dual_invariance, self.unitary, self.first_row_is_dims,
                  self.gauss_product_ok]
        if self.gauss_ratio_ok is not None:
            checks.append(self.gauss_ratio_ok)
        return all(checks)

    def lines(self) -> list[str]:
        def mark(ok: bool | None) -> str:
            if ok is None:
                return "SKIP"
            return "PASS" if ok else "FAIL"
        return [
            f"S symmetric                 {mark(self.symmetric)}",
            f"S^2 = charge conjugation    {mark(self.s_squared_is_charge_conjugation)}",
            f"S dual-invariant            {mark(self.dual_invariance)}",
            f"S unitary                   {mark(self.unitary)}",
            f"first row = dims/D          {mark(self.first_row_is_dims)}",
            f"Gauss sums p+p- = D^2       {mark(self.gauss_product_ok)}",
            f"Gauss ratio e^(2 pi i c/4)  {mark(self.gauss_ratio_ok)}",
        ] + [f"  detail: {f}" for f in self.failures]


class ModularDatum:
    """Fusion ring plus twists and exact quantum dimensions."""

    def __init__(self, ring: FusionRing, twists: Mapping[int, Fraction],
                 dims: Mapping[int, CycNum | int],
                 central_charge: Fraction | int | None = None):
        ring.require_valid()
        self.ring = ring
        n = ring.rank
        if sorted(twists) != list(range(n)):
            raise ValueError("a twist is required for every label")
        if sorted(dims) != list(range(n)):
            raise ValueError("a dim is required for every label")
        self.twists = tuple(Fraction(twists[i]) % 1 for i in range(n))
        self.dims = tuple(
            d if isinstance(d, CycNum) else cyc_rational(Fraction(d))
            for d in (dims[i] for i in range(n)))
        self.central_charge = (None if central_charge is None
                               else Fraction(central_charge))
        self._cache: dict[str, object] = {}

    # -- scalar data --------------------------------------------------------

    def theta(self, i: int) -> CycNum:
        t = self.twists[i]
        return cyc_root_of_unity(t.numerator, t.denominator)

    def global_dimension(self) -> CycNum:
        """Sum of squared quantum dimensions (exact)."""
        total = cyc_rational(0)
        for d in self.dims:
            total = total + d * d
        return total

    @property
    def D(self) -> CycNum:
        """Positive square root of the global dimension."""
        if "D" not in self._cache:
            glob = self.global_dimension()
            if not glob.is_rational():
                raise ArithmeticError(
                    "global dimension is irrational; no square-root rule")
            self._cache["D"] = cyc_sqrt_rational(glob.as_rational(),
                                                 order_cap=DEFAULT_ORDER_CAP)
        return self._cache["D"]  # type: ignore[return-value]

    def gauss_sums(self) -> tuple[CycNum, CycNum]:
        """(p+, p-) with p± = sum d_i^2 theta_i^{±1}."""
        plus = cyc_rational(0)
        minus = cyc_rational(0)
        for i in range(self.ring.rank):
            sq = self.dims[i] * self.dims[i]
            th = self.theta(i)
            plus = plus + sq * th
            minus = minus + sq * th.conj()
        return plus, minus

    def infer_central_charge_mod8(self) -> Fraction | None:
        """c mod 8 from the exact identity p+ = D e^{2 pi i c/8}, if it holds."""
        plus, _ = self.gauss_sums()
        for m in range(8):
            if plus == self.D * cyc_root_of_unity(m, 8):
                return Fraction(m)
        return None

    # -- matrices -----------------------------------------------------------

    def stilde(self) -> list[list[CycNum]]:
        """Balancing matrix from the defining formula
        s~_{i,j} = sum_k N_{i',j}^k theta_k/(theta_i theta_j) d_k."""
        if "stilde" in self._cache:
            return self._cache["stilde"]  # type: ignore[return-value]
        n = self.ring.rank
        dual = self.ring.dual_vector()
        thetas = [self.theta(i) for i in range(n)]
        inv_thetas = [t.conj() for t in thetas]  # roots of unity
        tensor = self.ring.tensor
        rows: list[list[CycNum]] = []
        for i in range(n):
            row = []
            pref_i = inv_thetas[i]
            for j in range(n):
                acc = cyc_rational(0)
                for k in np.nonzero(tensor[dual[i], j])[0]:
                    k = int(k)
                    term = thetas[k] * self.dims[k] * tensor[dual[i], j, k]
                    acc = acc + term
                row.append(acc * pref_i * inv_thetas[j])
            rows.append(row)
        self._cache["stilde"] = rows
        return rows

    def stilde_conjugate_form(self) -> list[list[CycNum]]:
        """Same matrix through the conjugate identity
        s~_{i,j} = sum_k N_{i,j}^k theta_i theta_j/theta_k d_k."""
        n = self.ring.rank
        thetas = [self.theta(i) for i in range(n)]
        inv_thetas = [t.conj() for t in thetas]
        tensor = self.ring.tensor
        rows: list[list[CycNum]] = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = cyc_rational(0)
                for k in np.nonzero(tensor[i, j])[0]:
                    k = int(k)
                    acc = acc + inv_thetas[k] * self.dims[k] * tensor[i, j, k]
                row.append(acc * thetas[i] * thetas[j])
            rows.append(row)
        return rows

    def s_matrix(self) -> list[list[CycNum]]:
        """S = s~ / D, exact."""
        if "S" not in self._cache:
            d_inv = cyc_rational(1) / self.D
            self._cache["S"] = [[entry * d_inv for entry in row]
                                for row in self.stilde()]
        return self._cache["S"]  # type: ignore[return-value]

    def t_matrix(self) -> list[CycNum]:
        """Diagonal of T: e^{2 pi i (Delta_i - c/24)}."""
        if self.central_charge is None:
            raise ValueError("central charge not set")
        diag = []
        for i in range(self.ring.rank):
            phase = self.twists[i] - self.central_charge / 24
            diag.append(cyc_root_of_unity(phase.numerator, phase.denominator))
        return diag

    def st_relation_holds(self) -> bool:
        """Exact check of (ST)^3 = e^{2 pi i c/8} S^2."""
        if self.central_charge is None:
            raise ValueError("central charge not set")
        s = self.s_matrix()
        t = self.t_matrix()
        st = [[s[i][j] * t[j] for j in range(len(t))] for i in range(len(t))]
        cube = _mat_mul(_mat_mul(st, st), st)
        c8 = self.central_charge / 8
        phase = cyc_root_of_unity(c8.numerator, c8.denominator)
        rhs = [[entry * phase for entry in row] for row in _mat_mul(s, s)]
        return _mat_eq(cube, rhs)

    # -- verification -------------------------------------------------------

    def verify_modular(self) -> ModularReport:
        n = self.ring.rank
        s = self.s_matrix()
        dual = self.ring.dual_vector()
        failures: list[str] = []

        symmetric = True
        for i in range(n):
            for j in range(i + 1, n):
                if s[i][j] != s[j][i]:
                    symmetric = False
                    failures.append(f"S[{i}][{j}] != S[{j}][{i}]")
                    break
            if not symmetric:
                break

        s2 = _mat_mul(s, s)
        s2c = True
        for i in range(n):
            for j in range(n):
                expect = cyc_rational(1 if dual[i] == j else 0)
                if s2[i][j] != expect:
                    s2c = False
                    failures.append(f"(S^2)[{i}][{j}] != C[{i}][{j}]")
                    break
            if not s2c:
                break

        dual_inv = all(s[dual[i]][dual[j]] == s[i][j]
                       for i in range(n) for j in range(n))
        if not dual_inv:
            failures.append("S[i'][j'] != S[i][j] somewhere")

        unitary = True
        for i in range(n):
            for j in range(i, n):
                acc = cyc_rational(0)
                for m in range(n):
                    acc = acc + s[i][m] * s[j][m].conj()
                if acc != (1 if i == j else 0):
                    unitary = False
                    failures.append(f"(S S*)[{i}][{j}] = {acc}")
                    break
            if not unitary:
                break

        d_inv = cyc_rational(1) / self.D
        first_row = all(s[self.ring.unit][i] == self.dims[i] * d_inv
                        for i in range(n))
        if not first_row:
            failures.append("first row of S is not dims/D")

        plus, minus = self.gauss_sums()
        gauss_product = (plus * minus == self.global_dimension())
        if not gauss_product:
            failures.append("p+ p- != D^2")
        gauss_ratio: bool | None = None
        if self.central_charge is not None and not minus.is_zero():
            c4 = self.central_charge / 4
            target = cyc_root_of_unity(c4.numerator, c4.denominator)
            gauss_ratio = (plus == target * minus)
            if gauss_ratio is False:
                failures.append("p+/p- != e^{2 pi i c/4}")

        return ModularReport(symmetric, s2c, dual_inv, unitary, first_row,
                             gauss_product, gauss_ratio, tuple(failures))

    # -- Verlinde -----------------------------------------------------------

    def verlinde(self, *, require_verified: bool = True) -> np.ndarray:
        """Exact integer structure constants recovered from S.

        N_{i,j}^k = sum_m S_{i,m} S_{j,m} conj(S_{k,m}) / S_{0,m}, evaluated
        as (1/D^2) sum_m s~_{i,m} s~_{j,m} conj(s~_{k,m}) / d_m so all
        intermediate values stay in the working cyclotomic field.
        """
        if require_verified and not self.verify_modular().passed:
            raise VerlindeError("datum fails verify_modular; "
                                "pass require_verified=False to force")
        n = self.ring.rank
        st = self.stilde()
        glob = self.global_dimension().as_rational()
        u = [[st[k][m].conj() / self.dims[m] for m in range(n)]
             for k in range(n)]
        out = np.zeros((n, n, n), dtype=np.int64)
        for i in range(n):
            for j in range(i, n):
                pair = [st[i][m] * st[j][m] for m in range(n)]
                for k in range(n):
                    acc = cyc_rational(0)
                    for m in range(n):
                        acc = acc + pair[m] * u[k][m]
                    value = acc / glob
                    if not value.is_rational():
                        raise VerlindeError(
                            f"non-rational Verlinde value at ({i},{j},{k})")
                    rat = value.as_rational()
                    if rat.denominator != 1 or rat < 0:
                        raise VerlindeError(
                            f"non-integer Verlinde value {rat} at ({i},{j},{k})")
                    out[i, j, k] = out[j, i, k] = int(rat)
        return out

    def perturbed(self, index: int, delta: Fraction) -> "ModularDatum":
        """Copy with one twist shifted; used to exercise failure paths."""
        twists = {i: t for i, t in enumerate(self.twists)}
        twists[index] = twists[index] + delta
        return ModularDatum(self.ring, twists,
                            dict(enumerate(self.dims)), self.central_charge)


# -- small exact-matrix helpers ---------------------------------------------

def _mat_mul(a: Sequence[Sequence[CycNum]], b: Sequence[Sequence[CycNum]]
             ) -> list[list[CycNum]]:
    n, mid, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = cyc_rational(0)
            for k in range(mid):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def _mat_eq(a: Sequence[Sequence[CycNum]], b: Sequence[Sequence[CycNum]]) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


# Module-level functional aliases matching the operation names.

def stilde(md: ModularDatum) -> list[list[CycNum]]:
    return md.stilde()


def stilde_conjugate_form(md: ModularDatum) -> list[list[CycNum]]:
    return md.stilde_conjugate_form()


def s_matrix(md: ModularDatum) -> list[list[CycNum]]:
    return md.s_matrix()


def verify_modular(md: ModularDatum) -> ModularReport:
    return md.verify_modular()


def verlinde(md: ModularDatum, **kwargs) -> np.ndarray:
    return md.verlinde(**kwargs)


def t_matrix(md: ModularDatum) -> list[CycNum]:
    return md.t_matrix()
