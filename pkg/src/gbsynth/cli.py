"""Command-line frontend.

Exit codes::

    0  success
    1  verification failed
    2  usage error
    3  parse error
    4  coprimality violation
    5  no polynomial form
    6  resource limit or enumeration cap
    7  table is not well defined (rows disagree)
"""

from __future__ import annotations

import argparse
import logging
import re
import sys
import time
from pathlib import Path

from .errors import (
    CoprimalityViolation,
    EnumerationCapExceeded,
    GbsynthError,
    MissingAssignment,
    NoForm,
    ParseError,
    ResourceLimit,
    UndeclaredVariable,
)
from .groebner import Limits
from .oracle import enumerate_domain, verify_form
from .polyring import IDENTIFIER, LEX, PolyRing, VariableTable, parse_polynomial
from .tablefile import load_document, order_from_name
from .tabletool import (
    PolynomialForm,
    check_coprime_rows,
    check_disjoint_inputs,
    synthesize,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_COPRIME = 4
EXIT_NO_FORM = 5
EXIT_RESOURCE = 6
EXIT_ILL_DEFINED = 7


def _load_table(args):
    doc = load_document(args.table)
    inputs = args.vars.replace(",", " ").split() if getattr(args, "vars", None) else None
    return doc, doc.table(args.output, inputs)


def cmd_synth(args) -> int:
    doc, table = _load_table(args)
    order = order_from_name(args.order or doc.options.get("order", "lex"), table.variables.k)
    limits = Limits(args.max_basis, args.max_terms)
    start = time.perf_counter()
    result = synthesize(table, order, limits=limits, verify=not args.no_verify)
    elapsed = time.perf_counter() - start
    form = result.form
    print(form)
    print(f"order: {order}")
    if result.excluded_rows:
        print("excluded rows (output unconstrained): " + " ".join(map(str, result.excluded_rows)))
    print(f"eliminated basis ({len(result.eliminated_basis)} elements):")
    for g in result.eliminated_basis:
        print(f"  {g}")
    print(f"terms: {len(form.rhs)}")
    print(f"xor gates: {form.xor_gates()}")
    print(f"and gates: {form.and_gates()}")
    if result.verified:
        print("verified: yes")
    if args.stats:
        s = result.stats
        print(f"full basis: {len(result.full_basis)} elements "
              f"({len(result.full_basis.boolean_elements())} besides field polynomials)")
        print(f"pairs: {s.pairs}, reductions: {s.reductions}, zero reductions: {s.zero_reductions}")
        print(f"coprimality: {s.coprimality}")
        print(f"time: {elapsed:.3f} s")
    return EXIT_OK


def _read_form_text(value: str) -> str:
    path = Path(value)
    if len(value) < 4096 and "\n" not in value and path.is_file():
        return path.read_text().strip().splitlines()[0]
    return value


def parse_form(text: str, ring: PolyRing):
    """``lhs = rhs`` or a bare polynomial, in the polynomial grammar."""
    if "=" in text:
        lhs, rhs = text.split("=", 1)
        return parse_polynomial(lhs, ring) + parse_polynomial(rhs, ring)
    return parse_polynomial(text, ring)


def cmd_verify(args) -> int:
    _, table = _load_table(args)
    report = enumerate_domain(table)
    if report.conflicts:
        bits, rows = report.conflicts[0]
        print(f"table is not well defined: rows {', '.join(map(str, rows))} disagree at "
              + ", ".join(f"{n}={b}" for n, b in zip(table.variables.inputs, bits)))
        return EXIT_ILL_DEFINED
    poly = parse_form(_read_form_text(args.form), table.ring)
    form = PolynomialForm(poly, table.output)
    result = verify_form(form, table)
    print(f"domain size: {report.size}")
    print(f"checked points: {result.checked}")
    if result.passed:
        print("pass")
        return EXIT_OK
    print("fail at " + ", ".join(f"{n}={v}" for n, v in result.first_failure.items()))
    return EXIT_VERIFY_FAILED


def _form_ring(text: str) -> PolyRing:
    names = []
    for name in re.findall(r"[A-Za-z_][A-Za-z0-9_]*", text):
        if name not in names:
            names.append(name)
    return PolyRing(VariableTable.plain(*names), LEX)


def _assignment(settings, ring: PolyRing) -> dict[str, int]:
    """``name=bit`` pairs; ``a=101`` sets ``a2, a1, a0`` when ``a`` itself is not a variable."""
    values = {}
    for item in settings:
        for part in item.split(","):
            part = part.strip()
            if not part:
                continue
            if "=" not in part:
                raise ParseError(f"expected name=value, got {part!r}")
            name, value = (s.strip() for s in part.split("=", 1))
            if not IDENTIFIER.match(name) or not re.fullmatch(r"[01]+", value):
                raise ParseError(f"bad assignment {part!r}")
            if name in ring.variables or len(value) == 1:
                values[name] = int(value)
            else:
                width = len(value)
                for pos, bit in enumerate(value):
                    values[f"{name}{width - 1 - pos}"] = int(bit)
    return {k: v for k, v in values.items() if k in ring.variables}


def cmd_eval(args) -> int:
    text = _read_form_text(args.form)
    ring = _form_ring(text)
    if "=" in text:
        poly = parse_polynomial(text.split("=", 1)[1], ring)
    else:
        poly = parse_polynomial(text, ring)
        # a bare form "z + rhs": a leading variable that occurs nowhere else is the output
        head, _, rest = text.partition("+")
        head = head.strip()
        if IDENTIFIER.match(head) and head not in re.findall(r"[A-Za-z_][A-Za-z0-9_]*", rest):
            poly = poly + ring.var(head)
    print(poly.evaluate(_assignment(args.set or [], ring)))
    return EXIT_OK


def cmd_check(args) -> int:
    _, table = _load_table(args)
    rows = table.constrained_indices()
    excluded = [i + 1 for i in range(len(table.rows)) if i not in rows]
    print(f"rows: {len(table.rows)}, constrained: {len(rows)}")
    if excluded:
        print("excluded rows (output unconstrained): " + " ".join(map(str, excluded)))
    report = check_disjoint_inputs(table, rows=rows)
    if report.skipped:
        print("disjoint inputs: skipped (too many inputs)")
    elif report.disjoint:
        print("disjoint inputs: yes")
    else:
        i, j, bits = report.witness
        print(f"disjoint inputs: no (rows {i} and {j} at "
              + ", ".join(f"{n}={b}" for n, b in zip(table.variables.inputs, bits)) + ")")
    if report.disjoint:
        print("coprime: yes (implied by disjoint inputs)")
        return EXIT_OK
    bad = check_coprime_rows(table, rows)
    if bad is None:
        print("coprime: yes")
        return EXIT_OK
    print(f"coprime: no (rows {bad[0]} and {bad[1]})")
    return EXIT_COPRIME


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gbsynth",
                                     description="Reed-Muller forms of truth tables via Gröbner bases")
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize the polynomial form of one output")
    p.add_argument("table")
    p.add_argument("--output", help="output variable (required when several are declared)")
    p.add_argument("--order", choices=("lex", "block"), help="monomial order (block is experimental)")
    p.add_argument("--vars", help="override the input order, e.g. 'b0,b1,a0,...'")
    p.add_argument("--stats", action="store_true", help="print basis size, pair counts and timing")
    p.add_argument("--no-verify", action="store_true", help="skip the brute-force check of the result")
    p.add_argument("--max-basis", type=int, default=Limits.max_basis_size)
    p.add_argument("--max-terms", type=int, default=Limits.max_terms)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="check a form against a table on every in-domain point")
    p.add_argument("table")
    p.add_argument("--form", required=True, help="form string or a file holding it")
    p.add_argument("--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eval", help="evaluate a form at one assignment")
    p.add_argument("--form", required=True)
    p.add_argument("--set", action="append", metavar="NAME=BITS")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", help="disjointness and coprimality report")
    p.add_argument("table")
    p.add_argument("--output")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (ParseError, UndeclaredVariable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CoprimalityViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COPRIME
    except NoForm as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_FORM
    except (ResourceLimit, EnumerationCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except MissingAssignment as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GbsynthError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
