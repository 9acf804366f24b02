"""Truth-table documents: a sectioned plain-text format and a JSON twin.

Text format::

    # comment
    [inputs]
    OP0 OP1 a2 a1 a0 b2 b1 b0
    [output]
    c2
    [intermediates]
    carry0 carry1
    [options]
    order = lex
    [row]
    OP0 = 1, OP1 = 1
    c2 = a2 + b2 + carry1

Each row line holds comma-separated equations ``lhs = rhs`` (a bare
expression means ``expr = 0``).  Equations use ``+``/``^`` for XOR,
``*``/``&`` for AND, ``|`` for OR, ``!``/``~`` for NOT, ``**`` for powers,
parentheses, and the constants 0 and 1.  ``[output]`` may list several
names; synthesis then picks one and drops equations that mention the others.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParseError, UndeclaredVariable
from .polyring import IDENTIFIER, LEX, MonomialOrder, PolyRing, VariableTable
from .tabletool import And, Const, Not, Or, Pow, Row, TruthTable, Var, Xor, bool_to_poly

_EQ_TOKEN = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<num>\d+)|(?P<op>\*\*|[-+^*&|!~()=,]))")

SECTIONS = ("inputs", "output", "outputs", "intermediates", "options", "row")


def _tokens(text: str, line: int | None, offset: int = 0):
    pos = 0
    out = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _EQ_TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, offset + pos + 1)
        kind = m.lastgroup
        out.append((kind, m.group(kind), offset + m.start(kind) + 1))
        pos = m.end()
    return out


class _ExprParser:
    """Recursive descent: ``|`` < ``+ ^`` < ``* &`` < ``! ~`` < ``**``."""

    def __init__(self, tokens, line, known):
        self.tokens = tokens
        self.pos = 0
        self.line = line
        self.known = known

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        end = self.tokens[-1][2] + len(self.tokens[-1][1]) if self.tokens else 1
        return (None, None, end)

    def error(self, message):
        raise ParseError(message, self.line, self.peek()[2])

    def take(self, value):
        if self.peek()[1] != value:
            self.error(f"expected {value!r}, found {self.peek()[1] or 'end of line'!r}")
        self.pos += 1

    def parse_or(self):
        args = [self.parse_xor()]
        while self.peek()[1] == "|":
            self.pos += 1
            args.append(self.parse_xor())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def parse_xor(self):
        args = [self.parse_and()]
        while self.peek()[1] in ("+", "^", "-"):
            self.pos += 1
            args.append(self.parse_and())
        return args[0] if len(args) == 1 else Xor(tuple(args))

    def parse_and(self):
        args = [self.parse_unary()]
        while self.peek()[1] in ("*", "&"):
            self.pos += 1
            args.append(self.parse_unary())
        return args[0] if len(args) == 1 else And(tuple(args))

    def parse_unary(self):
        if self.peek()[1] in ("!", "~"):
            self.pos += 1
            return Not(self.parse_unary())
        atom = self.parse_atom()
        if self.peek()[1] == "**":
            self.pos += 1
            kind, val, _ = self.peek()
            if kind != "num":
                self.error("expected an exponent after '**'")
            self.pos += 1
            atom = Pow(atom, int(val))
        return atom

    def parse_atom(self):
        kind, val, col = self.peek()
        if kind == "ident":
            if val not in self.known:
                raise ParseError(f"undeclared identifier {val!r}", self.line, col)
            self.pos += 1
            return Var(val)
        if kind == "num":
            if val not in ("0", "1"):
                self.error(f"constant must be 0 or 1, found {val}")
            self.pos += 1
            return Const(int(val))
        if val == "(":
            self.pos += 1
            inner = self.parse_or()
            self.take(")")
            return inner
        self.error(f"expected an operand, found {val or 'end of line'!r}")


def parse_equations(text: str, known, line: int | None = None):
    """Parse ``lhs = rhs, ...`` into a list of ``Xor(lhs, rhs)`` expression trees."""
    tokens = _tokens(text, line)
    groups, depth, current = [], 0, []
    for tok in tokens:
        if tok[1] == "(":
            depth += 1
        elif tok[1] == ")":
            depth -= 1
        if tok[1] == "," and depth == 0:
            groups.append(current)
            current = []
        else:
            current.append(tok)
    groups.append(current)
    result = []
    for group in groups:
        if not group:
            raise ParseError("empty equation", line, tokens[-1][2] if tokens else 1)
        sides = [[]]
        for tok in group:
            if tok[1] == "=":
                sides.append([])
            else:
                sides[-1].append(tok)
        if len(sides) > 2:
            raise ParseError("more than one '=' in an equation", line, group[0][2])
        exprs = []
        for side in sides:
            if not side:
                raise ParseError("missing side of an equation", line, group[0][2])
            p = _ExprParser(side, line, known)
            exprs.append(p.parse_or())
            if p.pos != len(side):
                p.error(f"unexpected {p.peek()[1]!r}")
        result.append(exprs[0] if len(exprs) == 1 else Xor(tuple(exprs)))
    return result


def _names(expr) -> set[str]:
    if isinstance(expr, Var):
        return {expr.name}
    if isinstance(expr, Const):
        return set()
    if isinstance(expr, Not):
        return _names(expr.arg)
    if isinstance(expr, Pow):
        return _names(expr.base)
    out = set()
    for a in expr.args:
        out |= _names(a)
    return out


@dataclass
class TableDocument:
    inputs: list[str]
    outputs: list[str]
    intermediates: list[str] = field(default_factory=list)
    rows: list[list] = field(default_factory=list)
    options: dict[str, str] = field(default_factory=dict)

    def order(self) -> MonomialOrder:
        return order_from_name(self.options.get("order", "lex"), len(self.intermediates))

    def table(self, output: str | None = None, inputs: list[str] | None = None) -> TruthTable:
        """Single-output table; equations that mention other outputs are dropped."""
        if output is None:
            if len(self.outputs) != 1:
                raise ValueError(f"choose one output among {', '.join(self.outputs)}")
            output = self.outputs[0]
        if output not in self.outputs:
            raise UndeclaredVariable(output)
        if inputs is not None:
            if sorted(inputs) != sorted(self.inputs):
                raise ValueError("input order override must list exactly the declared inputs")
        else:
            inputs = self.inputs
        vt = VariableTable.build(self.intermediates, output, inputs)
        ring = PolyRing(vt, LEX)
        others = set(self.outputs) - {output}
        rows = []
        for exprs in self.rows:
            kept = [e for e in exprs if not (_names(e) & others)]
            rows.append(Row(tuple(bool_to_poly(e, ring) for e in kept)))
        return TruthTable(vt, tuple(rows), ring)


def order_from_name(name: str, k: int) -> MonomialOrder:
    if name == "lex":
        return LEX
    if name == "block":
        return MonomialOrder.block(k + 1)
    if name == "grlex":
        return MonomialOrder.grlex()
    raise ValueError(f"unknown order {name!r}")


def _check_names(names, line):
    for name in names:
        if not IDENTIFIER.match(name):
            raise ParseError(f"invalid identifier {name!r}", line)


def _finish(inputs, outputs, intermediates, raw_rows, options) -> TableDocument:
    declared = {}
    for role, names in (("input", inputs), ("output", outputs), ("intermediate", intermediates)):
        for name, line in names:
            if name in declared:
                raise ParseError(f"duplicate declaration of {name!r}", line)
            declared[name] = role
    if not outputs:
        raise ParseError("no output declared")
    rows = []
    for equations in raw_rows:
        exprs = []
        for text, line in equations:
            exprs.extend(parse_equations(text, declared, line))
        rows.append(exprs)
    if not rows:
        raise ParseError("no rows")
    return TableDocument([n for n, _ in inputs], [n for n, _ in outputs],
                         [n for n, _ in intermediates], rows, options)


def parse_document(text: str) -> TableDocument:
    inputs, outputs, intermediates = [], [], []
    raw_rows: list[list[tuple[str, int]]] = []
    options: dict[str, str] = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ParseError("unterminated section header", lineno, len(raw))
            section = line[1:-1].strip().lower()
            if section not in SECTIONS:
                raise ParseError(f"unknown section [{section}]", lineno, 1)
            if section == "row":
                raw_rows.append([])
            continue
        if section is None:
            raise ParseError("content before the first section", lineno, 1)
        if section in ("inputs", "output", "outputs", "intermediates"):
            names = line.replace(",", " ").split()
            _check_names(names, lineno)
            target = {"inputs": inputs, "intermediates": intermediates}.get(section, outputs)
            target.extend((name, lineno) for name in names)
        elif section == "options":
            if "=" not in line:
                raise ParseError("options take the form key = value", lineno, 1)
            key, value = (part.strip() for part in line.split("=", 1))
            options[key] = value
        else:
            raw_rows[-1].append((line, lineno))
    return _finish(inputs, outputs, intermediates, raw_rows, options)


def parse_json_document(text: str) -> TableDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    outputs = data.get("outputs", data.get("output", []))
    if isinstance(outputs, str):
        outputs = [outputs]
    decl = lambda names: [(str(n), None) for n in names]  # noqa: E731
    for names in (data.get("inputs", []), outputs, data.get("intermediates", [])):
        _check_names(names, None)
    raw_rows = []
    for row in data.get("rows", []):
        eqs = row["equations"] if isinstance(row, dict) else row
        raw_rows.append([(eq, None) for eq in eqs])
    options = {str(k): str(v) for k, v in data.get("options", {}).items()}
    return _finish(decl(data.get("inputs", [])), decl(outputs), decl(data.get("intermediates", [])),
                   raw_rows, options)


def load_document(path) -> TableDocument:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        return parse_json_document(text)
    return parse_document(text)


def parse_table(text: str, output: str | None = None) -> TruthTable:
    return parse_document(text).table(output)


def _equation_text(poly) -> str:
    return str(poly).replace("^", "**")


def format_table(table: TruthTable) -> str:
    """Text document that parses back to an equal table."""
    vt = table.variables
    lines = ["[inputs]", " ".join(vt.inputs), "[output]", vt.output]
    if vt.intermediates:
        lines += ["[intermediates]", " ".join(vt.intermediates)]
    for row in table.rows:
        lines.append("[row]")
        for f in row.equations:
            lines.append(f"{_equation_text(f)} = 0")
    return "\n".join(lines) + "\n"
