"""Finite fusion rings: labels, structure constants, duality, quantum dims.

A ring is a finite label set with nonnegative-integer structure constants
N[i][j][k], a distinguished unit, and the duality involution derived from
the unit row (a supplied involution is cross-checked, never trusted).
Quantum dimensions come from Perron-Frobenius power iteration on the fusion
matrices.  The module also owns the line-oriented FCAT v1 text format.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

import numpy as np

from .cyclotomic import CycNum, format_cyc, parse_cyc

__all__ = [
    "FusionRing",
    "RingElement",
    "ValidationReport",
    "FcatError",
    "FcatDocument",
    "parse_fcat",
    "emit_fcat",
    "validate",
    "fuse",
    "dual_of",
    "qdim_pf",
    "simple_currents",
]

PF_TOLERANCE = 1e-12
PF_MAX_ITERATIONS = 100_000


class FcatError(ValueError):
    """Malformed FCAT v1 input; message carries the offending line number."""


@dataclass(frozen=True)
class ValidationReport:
    """Per-axiom pass/fail with the first violating tuple on failure."""

    unit_ok: bool
    commutative_ok: bool
    duality_ok: bool
    associative_ok: bool
    failures: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return (self.unit_ok and self.commutative_ok and self.duality_ok
                and self.associative_ok)

    def lines(self) -> list[str]:
        def mark(ok: bool) -> str:
            return "PASS" if ok else "FAIL"
        out = [
            f"unit law            {mark(self.unit_ok)}",
            f"commutativity       {mark(self.commutative_ok)}",
            f"duality uniqueness  {mark(self.duality_ok)}",
            f"associativity       {mark(self.associative_ok)}",
        ]
        out.extend(f"  violation: {f}" for f in self.failures)
        return out


class FusionRing:
    """Immutable fusion ring over an ordered label list."""

    def __init__(self, labels: Sequence[str], unit: int,
                 structure_constants: Mapping[tuple[int, int, int], int],
                 supplied_dual: Mapping[int, int] | None = None):
        self.labels = tuple(labels)
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise ValueError("duplicate labels")
        if not (0 <= unit < n):
            raise ValueError("unit index out of range")
        self.unit = unit
        tensor = np.zeros((n, n, n), dtype=np.int64)
        for (i, j, k), m in structure_constants.items():
            if m < 0:
                raise ValueError("negative structure constant")
            if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
                raise ValueError(f"label index out of range in N[{i},{j},{k}]")
            tensor[i, j, k] = m
        tensor.setflags(write=False)
        self._tensor = tensor
        self.supplied_dual = dict(supplied_dual) if supplied_dual else None
        self._validation: ValidationReport | None = None
        self._qdim_cache: dict[int, float] = {}

    # -- basic access -------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def tensor(self) -> np.ndarray:
        """Dense (rank, rank, rank) int array of structure constants."""
        return self._tensor

    def N(self, i: int, j: int, k: int) -> int:
        return int(self._tensor[i, j, k])

    def label_index(self, name: str) -> int:
        try:
            return self.labels.index(name)
        except ValueError:
            raise KeyError(f"unknown label {name!r}") from None

    def nonzero(self) -> Iterator[tuple[int, int, int, int]]:
        for i, j, k in zip(*np.nonzero(self._tensor)):
            yield int(i), int(j), int(k), int(self._tensor[i, j, k])

    # -- axioms -------------------------------------------------------------

    def validate(self) -> ValidationReport:
        if self._validation is not None:
            return self._validation
        n = self.rank
        t = self._tensor
        failures: list[str] = []

        unit_ok = bool(np.array_equal(t[self.unit], np.eye(n, dtype=np.int64))
                       and np.array_equal(t[:, self.unit, :],
                                          np.eye(n, dtype=np.int64)))
        if not unit_ok:
            bad = np.argwhere(t[self.unit] != np.eye(n, dtype=np.int64))
            if len(bad):
                j, k = map(int, bad[0])
                failures.append(f"unit: N[unit,{j}]^{k} = {t[self.unit, j, k]}")

        comm = np.array_equal(t, t.transpose(1, 0, 2))
        if not comm:
            i, j, k = map(int, np.argwhere(t != t.transpose(1, 0, 2))[0])
            failures.append(f"commutativity: N[{i},{j}]^{k} != N[{j},{i}]^{k}")

        duality_ok = True
        for i in range(n):
            row = np.nonzero(t[i, :, self.unit])[0]
            if len(row) != 1 or t[i, row[0], self.unit] != 1:
                duality_ok = False
                failures.append(f"duality: label {i} has no unique dual")
                break
        if duality_ok and self.supplied_dual is not None:
            for i in range(n):
                derived = int(np.nonzero(t[i, :, self.unit])[0][0])
                if self.supplied_dual.get(i, derived) != derived:
                    duality_ok = False
                    failures.append(
                        f"duality: supplied dual({i}) disagrees with unit row")
                    break

        left = np.einsum("ijm,mkl->ijkl", t, t)
        right = np.einsum("jkm,iml->ijkl", t, t)
        assoc = np.array_equal(left, right)
        if not assoc:
            i, j, k, l = map(int, np.argwhere(left != right)[0])
            failures.append(
                f"associativity: quadruple ({i},{j},{k},{l}) "
                f"{left[i, j, k, l]} != {right[i, j, k, l]}")

        self._validation = ValidationReport(unit_ok, comm, duality_ok, assoc,
                                            tuple(failures))
        return self._validation

    def require_valid(self) -> None:
        report = self.validate()
        if not report.passed:
            raise ValueError("invalid fusion ring: " + "; ".join(report.failures))

    # -- operations ---------------------------------------------------------

    def dual_of(self, i: int) -> int:
        self.require_valid()
        return int(np.nonzero(self._tensor[i, :, self.unit])[0][0])

    def dual_vector(self) -> tuple[int, ...]:
        return tuple(self.dual_of(i) for i in range(self.rank))

    def element(self, coeffs: Mapping[int, int]) -> "RingElement":
        return RingElement(self, dict(coeffs))

    def basis_element(self, i: int) -> "RingElement":
        return RingElement(self, {i: 1})

    def fuse(self, a: "RingElement", b: "RingElement") -> "RingElement":
        self.require_valid()
        out: dict[int, int] = {}
        for i, ca in a.coefficients.items():
            if not (0 <= i < self.rank):
                raise KeyError(f"label index {i} out of range")
            for j, cb in b.coefficients.items():
                if not (0 <= j < self.rank):
                    raise KeyError(f"label index {j} out of range")
                row = self._tensor[i, j]
                for k in np.nonzero(row)[0]:
                    out[int(k)] = out.get(int(k), 0) + ca * cb * int(row[k])
        return RingElement(self, out)

    def qdim_pf(self, i: int) -> float:
        """Perron-Frobenius eigenvalue of the fusion matrix N_i."""
        self.require_valid()
        if i in self._qdim_cache:
            return self._qdim_cache[i]
        matrix = self._tensor[i].astype(float)
        vec = np.ones(self.rank)
        value = 1.0
        for _ in range(PF_MAX_ITERATIONS):
            nxt = matrix @ vec
            norm = float(np.linalg.norm(nxt))
            if norm == 0.0:
                raise ArithmeticError("fusion matrix annihilates the cone")
            nxt /= norm
            new_value = float(nxt @ (matrix @ nxt))
            if abs(new_value - value) <= PF_TOLERANCE:
                self._qdim_cache[i] = new_value
                return new_value
            value, vec = new_value, nxt
        raise ArithmeticError("power iteration did not converge "
                              f"for label {i} (malformed ring?)")

    def simple_currents(self) -> set[int]:
        """Labels of quantum dimension 1; fusing with them permutes labels."""
        self.require_valid()
        out = set()
        for i in range(self.rank):
            if abs(self.qdim_pf(i) - 1.0) < 1e-8:
                # Exact criterion: the fusion matrix is a permutation matrix.
                mat = self._tensor[i]
                if (mat.sum(axis=1) == 1).all() and (mat.sum(axis=0) == 1).all():
                    out.add(i)
        return out

    def __eq__(self, other):
        if not isinstance(other, FusionRing):
            return NotImplemented
        return (self.labels == other.labels and self.unit == other.unit
                and np.array_equal(self._tensor, other._tensor))

    def __repr__(self):
        return f"FusionRing(rank={self.rank}, unit={self.labels[self.unit]!r})"


@dataclass(frozen=True, eq=False)
class RingElement:
    """Finitely supported nonnegative-integer combination of labels."""

    ring: FusionRing
    coefficients: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {i: c for i, c in self.coefficients.items() if c}
        object.__setattr__(self, "coefficients", cleaned)

    def __add__(self, other: "RingElement") -> "RingElement":
        if self.ring is not other.ring:
            raise ValueError("elements of different rings")
        out = dict(self.coefficients)
        for i, c in other.coefficients.items():
            out[i] = out.get(i, 0) + c
        return RingElement(self.ring, out)

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return (self.ring == other.ring
                and self.coefficients == other.coefficients)

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for i in sorted(self.coefficients):
            c = self.coefficients[i]
            name = self.ring.labels[i]
            parts.append(name if c == 1 else f"{c}*{name}")
        return " + ".join(parts)


# Module-level functional aliases matching the operation names.

def validate(ring: FusionRing) -> ValidationReport:
    return ring.validate()


def fuse(ring: FusionRing, a: RingElement, b: RingElement) -> RingElement:
    return ring.fuse(a, b)


def dual_of(ring: FusionRing, i: int) -> int:
    return ring.dual_of(i)


def qdim_pf(ring: FusionRing, i: int) -> float:
    return ring.qdim_pf(i)


def simple_currents(ring: FusionRing) -> set[int]:
    return ring.simple_currents()


# ---------------------------------------------------------------------------
# FCAT v1 text format
# ---------------------------------------------------------------------------
#
# Line-oriented UTF-8.  Directives (exact grammar in docs/fcat.md):
#   category <name>
#   label <index> <string>
#   unit <index>
#   dual <i> <i'>            (optional; cross-checked against the unit row)
#   N <i> <j> <k> <mult>     (absent triples are zero)
#   twist <i> <p>/<q>        (optional)
#   dim <i> <expr>           (optional cyclotomic expression)
# '#' starts a comment; blank lines are ignored; unknown directives error.


@dataclass
class FcatDocument:
    """Parsed FCAT file: the ring plus optional twist/dim annotations."""

    name: str
    ring: FusionRing
    twists: dict[int, Fraction]
    dims: dict[int, CycNum]

    @property
    def has_modular_annotations(self) -> bool:
        n = self.ring.rank
        return (len(self.twists) == n and len(self.dims) == n)


def parse_fcat(text: str) -> FcatDocument:
    name = ""
    labels: dict[int, str] = {}
    unit: int | None = None
    duals: dict[int, int] = {}
    constants: dict[tuple[int, int, int], int] = {}
    twists: dict[int, Fraction] = {}
    dims_raw: dict[int, str] = {}

    def err(lineno: int, message: str) -> FcatError:
        return FcatError(f"line {lineno}: {message}")

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        directive, args = parts[0], parts[1:]
        try:
            if directive == "category":
                name = " ".join(args)
            elif directive == "label":
                labels[int(args[0])] = args[1]
            elif directive == "unit":
                unit = int(args[0])
            elif directive == "dual":
                duals[int(args[0])] = int(args[1])
            elif directive == "N":
                i, j, k, m = map(int, args)
                constants[(i, j, k)] = m
            elif directive == "twist":
                num, den = args[1].split("/")
                twists[int(args[0])] = Fraction(int(num), int(den))
            elif directive == "dim":
                dims_raw[int(args[0])] = " ".join(args[1:])
            else:
                raise err(lineno, f"unknown directive {directive!r}")
        except FcatError:
            raise
        except (ValueError, IndexError) as exc:
            raise err(lineno, f"malformed {directive!r} directive: {exc}") from exc

    if unit is None:
        raise FcatError("missing 'unit' directive")
    if sorted(labels) != list(range(len(labels))):
        raise FcatError("label indices must be 0..n-1 without gaps")
    ordered = [labels[i] for i in range(len(labels))]
    ring = FusionRing(ordered, unit, constants,
                      supplied_dual=duals if duals else None)
    dims = {}
    for i, expr in dims_raw.items():
        try:
            dims[i] = parse_cyc(expr)
        except ValueError as exc:
            raise FcatError(f"bad dim expression for label {i}: {exc}") from exc
    return FcatDocument(name, ring, twists, dims)


def emit_fcat(doc: FcatDocument) -> str:
    """Deterministic, byte-stable FCAT emission (sorted directives)."""
    ring = doc.ring
    out = [f"category {doc.name}" if doc.name else "category unnamed"]
    for i, label in enumerate(ring.labels):
        out.append(f"label {i} {label}")
    out.append(f"unit {ring.unit}")
    if ring.validate().passed:
        for i in range(ring.rank):
            out.append(f"dual {i} {ring.dual_of(i)}")
    for i in sorted(doc.twists):
        t = doc.twists[i]
        out.append(f"twist {i} {t.numerator}/{t.denominator}")
    for i in sorted(doc.dims):
        out.append(f"dim {i} {format_cyc(doc.dims[i])}")
    for i, j, k, m in sorted(doc.ring.nonzero()):
        out.append(f"N {i} {j} {k} {m}")
    return "\n".join(out) + "\n"


def fcat_checksum(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
