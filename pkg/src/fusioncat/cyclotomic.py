"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Every number here is a Q-linear combination of powers of a primitive N-th
root of unity, stored in canonical reduced form modulo the N-th cyclotomic
polynomial.  Canonical form makes equality a coefficient comparison, so all
downstream matrix identities (S^2 = C, Verlinde integrality, ...) are exact.

Internally a value keeps an integer coefficient vector over the canonical
power basis zeta^0 .. zeta^{phi(N)-1} plus a common positive denominator.
Multiplication runs through an int64 numpy convolution fast path guarded by
an explicit overflow bound, falling back to big-int arithmetic when needed.
"""

from __future__ import annotations

import functools
import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "CycNum",
    "CycError",
    "OrderCapExceeded",
    "cyc_root_of_unity",
    "cyc_rational",
    "cyc_add",
    "cyc_sub",
    "cyc_mul",
    "cyc_neg",
    "cyc_conj",
    "cyc_div",
    "cyc_inv",
    "cyc_embed",
    "cyc_sqrt_rational",
    "parse_cyc",
    "format_cyc",
    "DEFAULT_ORDER",
    "DEFAULT_ORDER_CAP",
]

DEFAULT_ORDER = 72
DEFAULT_ORDER_CAP = 720

_INT64_SAFE = 2**62


class CycError(ArithmeticError):
    """Base error for cyclotomic arithmetic."""


class OrderCapExceeded(CycError):
    """A common-order promotion would exceed the configured order cap."""


# ---------------------------------------------------------------------------
# Integer polynomial helpers (dense, lowest degree first)
# ---------------------------------------------------------------------------

def _poly_trim(p: list[int]) -> list[int]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divexact(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials (remainder must vanish)."""
    a = list(a)
    db, lead = len(b) - 1, b[-1]
    out = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        q, r = divmod(a[i], lead)
        if r:
            raise CycError("non-exact polynomial division")
        out[i - db] = q
        if q:
            for j in range(db + 1):
                a[i - db + j] -= q * b[j]
    if any(a[:db]):
        raise CycError("non-exact polynomial division (remainder)")
    return _poly_trim(out)


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@functools.lru_cache(maxsize=None)
def _order_context(n: int) -> "_OrderContext":
    return _OrderContext(n)


class _OrderContext:
    """Cached reduction data for one cyclotomic order."""

    def __init__(self, n: int):
        self.order = n
        phi_poly = cyclotomic_polynomial(n)
        self.phi = len(phi_poly) - 1
        # Rows: canonical coefficients of x^k mod Phi_n for k up to the
        # largest exponent needed by multiplication (2*phi-2) and
        # conjugation/promotion (n-1).
        kmax = max(2 * self.phi - 1, n)
        rows: list[list[int]] = []
        cur = [0] * self.phi
        cur[0] = 1
        rows.append(list(cur))
        for _ in range(1, kmax):
            shifted = [0] + cur[:]
            lead = shifted.pop()
            if lead:
                # x^phi = -(phi_poly[:-1]) since Phi is monic
                for j in range(self.phi):
                    shifted[j] -= lead * phi_poly[j]
            cur = shifted
            rows.append(list(cur))
        self.pow_rows = rows
        self.pow_matrix = np.array(rows, dtype=np.int64)
        self.pow_max = int(np.abs(self.pow_matrix).max()) if rows else 1
        self.roots = np.exp(2j * np.pi * np.arange(self.phi) / n)


# ---------------------------------------------------------------------------
# Core value type
# ---------------------------------------------------------------------------

def _normalize(num: Iterable[int], den: int) -> tuple[tuple[int, ...], int]:
    num = tuple(int(x) for x in num)
    den = int(den)
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        num, den = tuple(-x for x in num), -den
    g = math.gcd(den, *(abs(x) for x in num)) if any(num) else den
    if g > 1:
        num, den = tuple(x // g for x in num), den // g
    if not any(num):
        den = 1
    return num, den


class CycNum:
    """Element of Q(zeta_N) in canonical reduced form; immutable."""

    __slots__ = ("order", "_num", "_den")

    def __init__(self, order: int, coeffs: Sequence[Fraction | int] | None = None,
                 *, _num: tuple[int, ...] | None = None, _den: int = 1):
        ctx = _order_context(order)
        self.order = order
        if _num is not None:
            if len(_num) != ctx.phi:
                raise ValueError("wrong canonical length")
            self._num, self._den = _normalize(_num, _den)
            return
        if coeffs is None:
            coeffs = ()
        fracs = [Fraction(c) for c in coeffs]
        if len(fracs) > ctx.phi:
            # Reduce higher powers through the precomputed rows.
            acc = [Fraction(0)] * ctx.phi
            for k, c in enumerate(fracs):
                if c:
                    row = ctx.pow_rows[k] if k < len(ctx.pow_rows) else None
                    if row is None:
                        raise ValueError("coefficient index out of range")
                    for j, r in enumerate(row):
                        if r:
                            acc[j] += c * r
            fracs = acc
        else:
            fracs = fracs + [Fraction(0)] * (ctx.phi - len(fracs))
        den = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
        num = tuple(int(f * den) for f in fracs)
        self._num, self._den = _normalize(num, den)

    # -- basic views --------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Canonical coefficients over the power basis zeta^0..zeta^{N-1}.

        Entries of index >= phi(N) are zero by canonicality.
        """
        phi = len(self._num)
        body = tuple(Fraction(x, self._den) for x in self._num)
        return body + (Fraction(0),) * (self.order - phi)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise CycError("value is not rational")
        return Fraction(self._num[0], self._den)

    def is_integer(self) -> bool:
        return self.is_rational() and self._den == 1

    # -- order handling -----------------------------------------------------

    def promote(self, order: int) -> "CycNum":
        """Re-express at a larger compatible order (order multiple of self.order)."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError("target order must be a multiple of current order")
        ctx = _order_context(order)
        step = order // self.order
        acc = [0] * ctx.phi
        for j, c in enumerate(self._num):
            if c:
                row = ctx.pow_rows[j * step]
                for t, r in enumerate(row):
                    if r:
                        acc[t] += c * r
        return CycNum(order, _num=tuple(acc), _den=self._den)

    # -- arithmetic ---------------------------------------------------------

    def _common(self, other: "CycNum", cap: int) -> tuple["CycNum", "CycNum"]:
        if self.order == other.order:
            return self, other
        m = math.lcm(self.order, other.order)
        if m > cap:
            raise OrderCapExceeded(
                f"promotion to order {m} exceeds cap {cap}")
        return self.promote(m), other.promote(m)

    def __add__(self, other):
        other = _coerce(other, self.order)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other, DEFAULT_ORDER_CAP)
        den = math.lcm(a._den, b._den)
        fa, fb = den // a._den, den // b._den
        num = tuple(x * fa + y * fb for x, y in zip(a._num, b._num))
        return CycNum(a.order, _num=num, _den=den)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return CycNum(self.order, _num=tuple(-x for x in self._num), _den=self._den)

    def __sub__(self, other):
        other = _coerce(other, self.order)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CycNum(self.order,
                          _num=tuple(x * f.numerator for x in self._num),
                          _den=self._den * f.denominator)
        other = _coerce(other, self.order)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other, DEFAULT_ORDER_CAP)
        ctx = _order_context(a.order)
        num = _mul_canonical(a._num, b._num, ctx)
        return CycNum(a.order, _num=num, _den=a._den * b._den)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if f == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / f)
        other = _coerce(other, self.order)
        if other is NotImplemented:
            return NotImplemented
        return self * cyc_inv(other)

    def __rtruediv__(self, other):
        return _coerce(other, self.order) * cyc_inv(self)

    def conj(self) -> "CycNum":
        """Complex conjugation, the automorphism zeta -> zeta^{-1}."""
        ctx = _order_context(self.order)
        acc = [0] * ctx.phi
        for j, c in enumerate(self._num):
            if c:
                row = ctx.pow_rows[(self.order - j) % self.order]
                for t, r in enumerate(row):
                    if r:
                        acc[t] += c * r
        return CycNum(self.order, _num=tuple(acc), _den=self._den)

    def embed(self) -> complex:
        """Double-precision complex embedding sum c_k e^{2 pi i k / N}."""
        ctx = _order_context(self.order)
        num = np.array(self._num, dtype=float)
        return complex(np.dot(num, ctx.roots) / self._den)

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.as_rational() == other
        if not isinstance(other, CycNum):
            return NotImplemented
        try:
            a, b = self._common(other, max(DEFAULT_ORDER_CAP,
                                           self.order * other.order))
        except OrderCapExceeded:  # pragma: no cover
            return False
        return a._num == b._num and a._den == b._den

    def __hash__(self):
        if self.is_rational():
            return hash(self.as_rational())
        # Hash at a canonical minimal order so equal values hash equally.
        m = _minimal_order(self)
        v = _try_demote(self, m) or self
        return hash((m, v._num, v._den))

    def __repr__(self):
        return f"CycNum({self.order}, {format_cyc(self)!r})"

    def __str__(self):
        return format_cyc(self)


def _coerce(x, order: int):
    if isinstance(x, CycNum):
        return x
    if isinstance(x, (int, Fraction)):
        return CycNum(order, [Fraction(x)])
    return NotImplemented


def _mul_canonical(a: tuple[int, ...], b: tuple[int, ...],
                   ctx: _OrderContext) -> tuple[int, ...]:
    phi = ctx.phi
    max_a = max((abs(x) for x in a), default=0)
    max_b = max((abs(x) for x in b), default=0)
    conv_bound = phi * max_a * max_b
    if conv_bound and conv_bound * (2 * phi) * ctx.pow_max < _INT64_SAFE:
        conv = np.convolve(np.array(a, dtype=np.int64),
                           np.array(b, dtype=np.int64))
        res = conv @ ctx.pow_matrix[: len(conv)]
        return tuple(int(x) for x in res)
    # Big-int fallback.
    conv = [0] * (2 * phi - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                conv[i + j] += ai * bj
    acc = [0] * phi
    for k, c in enumerate(conv):
        if c:
            row = ctx.pow_rows[k]
            for t, r in enumerate(row):
                if r:
                    acc[t] += c * r
    return tuple(acc)


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _try_demote(x: CycNum, d: int) -> CycNum | None:
    """Express x at divisor order d if possible, else None."""
    if x.order % d:
        return None
    phi_d = _order_context(d).phi
    # Solve by promoting the candidate basis of order d and matching.
    basis = [CycNum(d, [0] * j + [1]).promote(x.order) for j in range(phi_d)]
    rows = [b.coeffs[: _order_context(x.order).phi] for b in basis]
    target = x.coeffs[: _order_context(x.order).phi]
    sol = _solve_rational([list(col) for col in zip(*rows)], list(target))
    if sol is None:
        return None
    return CycNum(d, sol)


def _minimal_order(x: CycNum) -> int:
    for d in _divisors(x.order):
        if _try_demote(x, d) is not None:
            return d
    return x.order


def _solve_rational(a: list[list[Fraction]], b: list[Fraction]
                    ) -> list[Fraction] | None:
    """Solve the (possibly overdetermined) exact system A x = b, or None."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [list(map(Fraction, a[i])) + [Fraction(b[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    # Consistency of remaining rows.
    for i in range(r, rows):
        if m[i][cols]:
            return None
    sol = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        sol[c] = m[i][cols]
    return sol


# ---------------------------------------------------------------------------
# Public functional API
# ---------------------------------------------------------------------------

def cyc_root_of_unity(num: int, den: int) -> CycNum:
    """e^{2 pi i num/den} as an exact cyclotomic number."""
    if den < 1:
        raise ValueError("denominator must be positive")
    f = Fraction(num, den)
    f -= math.floor(f)
    q = f.denominator
    p = f.numerator
    ctx = _order_context(q)
    acc = [0] * ctx.phi
    for t, r in enumerate(ctx.pow_rows[p % q]):
        acc[t] += r
    return CycNum(q, _num=tuple(acc), _den=1)


def cyc_rational(r: Fraction | int, order: int = 1) -> CycNum:
    return CycNum(order, [Fraction(r)])


def cyc_add(a: CycNum, b: CycNum) -> CycNum:
    return a + b


def cyc_sub(a: CycNum, b: CycNum) -> CycNum:
    return a - b


def cyc_mul(a: CycNum, b: CycNum) -> CycNum:
    return a * b


def cyc_neg(a: CycNum) -> CycNum:
    return -a


def cyc_conj(a: CycNum) -> CycNum:
    return a.conj()


def cyc_inv(a: CycNum) -> CycNum:
    """Multiplicative inverse via an exact linear solve."""
    if a.is_zero():
        raise ZeroDivisionError("division by zero in Q(zeta)")
    if a.is_rational():
        return cyc_rational(1 / a.as_rational()).promote(a.order)
    ctx = _order_context(a.order)
    phi = ctx.phi
    cols = []
    cur = a
    shift = CycNum(a.order, [0, 1])
    for _ in range(phi):
        cols.append([Fraction(n, cur._den) for n in cur._num])
        cur = cur * shift
    mat = [[cols[j][i] for j in range(phi)] for i in range(phi)]
    rhs = [Fraction(1)] + [Fraction(0)] * (phi - 1)
    sol = _solve_rational(mat, rhs)
    if sol is None:  # pragma: no cover - fields have no zero divisors
        raise ZeroDivisionError("non-invertible element")
    return CycNum(a.order, sol)


def cyc_div(a: CycNum, b: CycNum) -> CycNum:
    return a / b


def cyc_embed(a: CycNum) -> complex:
    return a.embed()


def cyc_sqrt_rational(r: Fraction | int, *, order_cap: int = DEFAULT_ORDER_CAP
                      ) -> CycNum:
    """Exact square root of a rational inside a cyclotomic field.

    sqrt(2) lives at order 8, sqrt(p) for odd prime p at order p or 4p
    (through quadratic Gauss sums), and products combine through lcm of
    orders; exceeding the cap raises OrderCapExceeded.
    """
    r = Fraction(r)
    if r == 0:
        return cyc_rational(0)
    if r < 0:
        i_unit = cyc_root_of_unity(1, 4)
        return i_unit * cyc_sqrt_rational(-r, order_cap=order_cap)
    m = r.numerator * r.denominator
    square, squarefree = 1, 1
    n, p = m, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        square *= p ** (e // 2)
        if e % 2:
            squarefree *= p
        p += 1
    if n > 1:
        squarefree *= n
    result: CycNum = cyc_rational(Fraction(square, r.denominator))
    rem = squarefree
    if rem % 2 == 0:
        rem //= 2
        root2 = cyc_root_of_unity(1, 8) + cyc_root_of_unity(-1, 8)
        result = _mul_capped(result, root2, order_cap)
    q = 3
    while rem > 1:
        if rem % q == 0:
            rem //= q
            result = _mul_capped(result, _sqrt_odd_prime(q), order_cap)
        q += 2
    return result


def _sqrt_odd_prime(p: int) -> CycNum:
    gauss = cyc_rational(0)
    for k in range(1, p):
        legendre = pow(k, (p - 1) // 2, p)
        sign = 1 if legendre == 1 else -1
        gauss = gauss + sign * cyc_root_of_unity(k, p)
    if p % 4 == 1:
        return gauss
    return gauss * cyc_root_of_unity(-1, 4)


def _mul_capped(a: CycNum, b: CycNum, cap: int) -> CycNum:
    m = math.lcm(a.order, b.order)
    if m > cap:
        raise OrderCapExceeded(f"promotion to order {m} exceeds cap {cap}")
    return a.promote(m) * b.promote(m)


# ---------------------------------------------------------------------------
# Textual form: `2*e(-2/9)+2*e(1/9)` (exponents are multiples of 2 pi i)
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<sym>[-+*/()]|e))")


def _tokenize(text: str) -> list[str]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ValueError(f"bad character in expression at {text[pos:]!r}")
            break
        out.append(m.group("int") or m.group("sym"))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list[str]):
        self.toks = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, expect: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            raise ValueError(f"expected {expect!r}, found {tok!r}")
        self.pos += 1
        return tok

    def parse(self) -> CycNum:
        v = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing input {self.peek()!r}")
        return v

    def expr(self) -> CycNum:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        acc = self.term() * sign
        while self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
            acc = acc + self.term() * sign
        return acc

    def term(self) -> CycNum:
        acc = self.factor()
        while self.peek() == "*":
            self.take("*")
            acc = acc * self.factor()
        return acc

    def factor(self) -> CycNum:
        tok = self.peek()
        if tok == "-":
            self.take("-")
            return -self.factor()
        if tok == "e":
            self.take("e")
            self.take("(")
            frac = self.signed_rational()
            self.take(")")
            return cyc_root_of_unity(frac.numerator, frac.denominator)
        if tok == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        return cyc_rational(self.rational())

    def signed_rational(self) -> Fraction:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        return sign * self.rational()

    def rational(self) -> Fraction:
        num = int(self.take())
        if self.peek() == "/":
            self.take("/")
            return Fraction(num, int(self.take()))
        return Fraction(num)


def parse_cyc(text: str) -> CycNum:
    """Parse the textual form; exact round-trip partner of format_cyc."""
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty expression")
    return _Parser(tokens).parse()


def format_cyc(x: CycNum) -> str:
    """Canonical textual form `c*e(p/q)` terms joined by +/-."""
    parts: list[tuple[Fraction, Fraction]] = []  # (coeff, exponent fraction)
    phi = len(x._num)
    for j in range(phi):
        if x._num[j]:
            parts.append((Fraction(x._num[j], x._den), Fraction(j, x.order)))
    if not parts:
        return "0"
    chunks: list[str] = []
    for idx, (coeff, expo) in enumerate(parts):
        mag = abs(coeff)
        if expo == 0:
            body = _frac_str(mag)
        elif mag == 1:
            body = f"e({expo.numerator}/{expo.denominator})"
        else:
            body = f"{_frac_str(mag)}*e({expo.numerator}/{expo.denominator})"
        if idx == 0:
            chunks.append(body if coeff > 0 else "-" + body)
        else:
            chunks.append(("+" if coeff > 0 else "-") + body)
    return "".join(chunks)


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
