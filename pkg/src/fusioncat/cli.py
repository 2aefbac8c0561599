"""Command-line front end.

Subcommands: verify, fuse, qdim, smatrix, tmatrix, verlinde, catalog, char,
count.  Exit codes: 0 success, 1 verification failure, 2 parse/usage error.
Exact output is the default; `--format float` rounds at 10 significant
digits.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import cyclotomic
from .cyclotomic import format_cyc
from .fusion_ring import FcatDocument, FcatError, emit_fcat, parse_fcat
from .lattice import coset_L, coset_Zbeta1
from .modular_data import ModularDatum, VerlindeError
from .orbifold_catalog import build_U, build_VLtau, count_orbifold_irreducibles, resolve_label
from .qseries import character

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2


class CliError(Exception):
    """Usage-level error: printed as a single diagnostic line, exit 2."""


def _build_catalog(name: str) -> ModularDatum:
    key = name.strip().lower()
    if key == "u":
        return build_U()
    if key == "vltau":
        return build_VLtau()
    raise CliError(f"unknown catalog {name!r} (choose U or VLtau)")


def _load_datum(args) -> tuple[ModularDatum | None, FcatDocument | None]:
    """Datum from --catalog or an FCAT file ('-' reads stdin)."""
    if getattr(args, "catalog", None):
        return _build_catalog(args.catalog), None
    path = getattr(args, "input", None)
    if path is None:
        raise CliError("an input file or --catalog is required")
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    doc = parse_fcat(text)
    if doc.has_modular_annotations and doc.ring.validate().passed:
        md = ModularDatum(doc.ring, doc.twists, doc.dims)
        # FCAT carries no central charge; infer c mod 8 from the Gauss sums
        # so the ratio check and T matrix are available when possible.
        inferred = md.infer_central_charge_mod8()
        if inferred is not None:
            md = ModularDatum(doc.ring, doc.twists, doc.dims,
                              central_charge=inferred)
        return md, doc
    return None, doc


def _require_datum(args) -> ModularDatum:
    md, doc = _load_datum(args)
    if md is None:
        raise CliError("input lacks twist/dim annotations needed here")
    return md


def _float_str(x: float) -> str:
    return f"{x:.10g}"


# -- subcommand implementations ---------------------------------------------

def cmd_verify(args) -> int:
    md, doc = _load_datum(args)
    ring = md.ring if md is not None else doc.ring
    report = ring.validate()
    for line in report.lines():
        print(line)
    ok = report.passed
    if md is not None and ok:
        mrep = md.verify_modular()
        for line in mrep.lines():
            print(line)
        ok = mrep.passed
        if ok:
            try:
                import numpy as np
                verl_ok = bool(np.array_equal(md.verlinde(), ring.tensor))
            except VerlindeError:
                verl_ok = False
            print(f"Verlinde round-trip        "
                  f" {'PASS' if verl_ok else 'FAIL'}")
            ok = ok and verl_ok
    return EXIT_OK if ok else EXIT_VERIFY_FAIL


def cmd_fuse(args) -> int:
    md, doc = _load_datum(args)
    ring = md.ring if md is not None else doc.ring
    a = resolve_label(ring, args.a)
    b = resolve_label(ring, args.b)
    print(ring.fuse(ring.basis_element(a), ring.basis_element(b)))
    return EXIT_OK


def cmd_qdim(args) -> int:
    md, doc = _load_datum(args)
    ring = md.ring if md is not None else doc.ring
    if args.label:
        idx = resolve_label(ring, args.label)
        print(_float_str(ring.qdim_pf(idx)))
    else:
        for i, name in enumerate(ring.labels):
            print(f"{name} {_float_str(ring.qdim_pf(i))}")
    return EXIT_OK


def cmd_smatrix(args) -> int:
    md = _require_datum(args)
    s = md.stilde() if args.unnormalized else md.s_matrix()
    n = md.ring.rank
    for i in range(n):
        for j in range(n):
            entry = s[i][j]
            if args.format == "float":
                z = entry.embed()
                print(f"{i} {j} {_float_str(z.real)} {_float_str(z.imag)}")
            else:
                print(f"{i} {j} {format_cyc(entry)}")
    return EXIT_OK


def cmd_tmatrix(args) -> int:
    md = _require_datum(args)
    if md.central_charge is None:
        raise CliError("central charge required for the T matrix")
    for i, entry in enumerate(md.t_matrix()):
        if args.format == "float":
            z = entry.embed()
            print(f"{i} {_float_str(z.real)} {_float_str(z.imag)}")
        else:
            print(f"{i} {format_cyc(entry)}")
    return EXIT_OK


def cmd_verlinde(args) -> int:
    md = _require_datum(args)
    try:
        tensor = md.verlinde()
    except VerlindeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAIL
    n = md.ring.rank
    for i in range(n):
        for j in range(n):
            for k in range(n):
                m = int(tensor[i, j, k])
                if m:
                    print(f"N {i} {j} {k} {m}")
    return EXIT_OK


def cmd_catalog(args) -> int:
    md = _build_catalog(args.name)
    doc = FcatDocument(
        name=args.name,
        ring=md.ring,
        twists=dict(enumerate(md.twists)),
        dims=dict(enumerate(md.dims)),
    )
    sys.stdout.write(emit_fcat(doc))
    return EXIT_OK


_CHAR_PIECES = {
    "M^0": 0,
    "M^1": 1,
    "W6": 0,
    "W7": 1,
}


def cmd_char(args) -> int:
    if args.label not in _CHAR_PIECES:
        raise CliError(
            f"character not available for {args.label!r}: only the full-coset "
            "modules M^0 and M^1 have computable characters "
            "(eigenspace traces are out of scope)")
    i = _CHAR_PIECES[args.label]
    pieces = [
        (coset_Zbeta1(Fraction(i, 2)), coset_L("c", 0)),
        (coset_Zbeta1(Fraction(3 * i + 2, 6)), coset_L("c", 1)),
        (coset_Zbeta1(Fraction(3 * i + 4, 6)), coset_L("c", 2)),
    ]
    series = character(pieces, 3, Fraction(args.cutoff))
    for line in series.dump_lines():
        print(line)
    return EXIT_OK


def cmd_count(args) -> int:
    print(count_orbifold_irreducibles(args.n))
    return EXIT_OK


# -- argument parsing --------------------------------------------------------

def _add_source_args(p: argparse.ArgumentParser, with_input: bool = True):
    p.add_argument("--catalog", help="built-in catalog: U or VLtau")
    if with_input:
        p.add_argument("input", nargs="?",
                       help="FCAT v1 file path, or '-' for stdin")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fusioncat",
        description="Exact fusion-ring and modular-data toolkit")
    parser.add_argument("--order-cap", type=int, default=None,
                        help="cap on cyclotomic order promotion")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run all consistency checks")
    _add_source_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fuse", help="fusion product of two labels")
    p.add_argument("--catalog")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("input", nargs="?")
    p.set_defaults(func=cmd_fuse)

    p = sub.add_parser("qdim", help="Perron-Frobenius quantum dimensions")
    p.add_argument("--label", default=None)
    _add_source_args(p)
    p.set_defaults(func=cmd_qdim)

    p = sub.add_parser("smatrix", help="exact S matrix (grid lines)")
    p.add_argument("--format", choices=("grid", "float"), default="grid")
    p.add_argument("--unnormalized", action="store_true",
                   help="print s-tilde instead of S")
    _add_source_args(p)
    p.set_defaults(func=cmd_smatrix)

    p = sub.add_parser("tmatrix", help="exact T-matrix diagonal")
    p.add_argument("--format", choices=("grid", "float"), default="grid")
    _add_source_args(p)
    p.set_defaults(func=cmd_tmatrix)

    p = sub.add_parser("verlinde", help="structure constants recovered from S")
    _add_source_args(p)
    p.set_defaults(func=cmd_verlinde)

    p = sub.add_parser("catalog", help="emit a built-in catalog as FCAT v1")
    p.add_argument("name", help="U or VLtau")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("char", help="q-character of a full-coset module")
    p.add_argument("label")
    p.add_argument("--cutoff", type=int, default=30)
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("count", help="irreducible-module count for rank n")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_count)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.order_cap is not None:
        cyclotomic.DEFAULT_ORDER_CAP = args.order_cap
    try:
        return args.func(args)
    except (CliError, FcatError, KeyError, FileNotFoundError, ValueError) as exc:
        message = exc.args[0] if exc.args else str(exc)
        print(f"error: {message}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
