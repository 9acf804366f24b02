"""Truth tables to Reed-Muller forms.

Each constrained row becomes the ideal of its equations plus every field
polynomial ``x^2 + x``.  The rows' ideals are multiplied two at a time, each
intermediate product replaced by its reduced Gröbner basis, and the single
basis element whose leading term is the output variable is the polynomial
form.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Sequence

from . import cube
from .errors import AmbiguousForm, CoprimalityViolation, GbsynthError, NoForm, UndeclaredVariable
from .groebner import (
    BuchbergerStats,
    GroebnerBasis,
    Ideal,
    Limits,
    buchberger,
    ideal_product,
    is_coprime,
    reduce_basis,
)
from .polyring import LEX, Monomial, MonomialOrder, Polynomial, PolyRing, VariableTable

log = logging.getLogger(__name__)

DEFAULT_INPUT_CAP = 24


# -- Boolean expressions ------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Not:
    arg: object


@dataclass(frozen=True)
class And:
    args: tuple


@dataclass(frozen=True)
class Or:
    args: tuple


@dataclass(frozen=True)
class Xor:
    args: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


def bool_to_poly(expr, ring: PolyRing) -> Polynomial:
    """Rewrite a Boolean expression as a GF(2) polynomial.

    ``!x -> x + 1`` and ``x | y -> x + y + x*y``; AND is the product and XOR
    the sum.
    """
    if isinstance(expr, Var):
        if expr.name not in ring.variables:
            raise UndeclaredVariable(expr.name)
        return ring.var(expr.name)
    if isinstance(expr, Const):
        return ring.one() if expr.value & 1 else ring.zero()
    if isinstance(expr, Not):
        return bool_to_poly(expr.arg, ring) + 1
    if isinstance(expr, And):
        result = ring.one()
        for a in expr.args:
            result = result * bool_to_poly(a, ring)
        return result
    if isinstance(expr, Xor):
        result = ring.zero()
        for a in expr.args:
            result = result + bool_to_poly(a, ring)
        return result
    if isinstance(expr, Or):
        result = ring.zero()
        for a in expr.args:
            p = bool_to_poly(a, ring)
            result = result + p + result * p
        return result
    if isinstance(expr, Pow):
        return bool_to_poly(expr.base, ring) ** expr.exponent
    raise TypeError(f"not a Boolean expression node: {expr!r}")


# -- table model ----------------------------------------------------------------

@dataclass(frozen=True)
class Row:
    """Left-hand sides of the row's equations ``f = 0``."""

    equations: tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(self.equations))

    def mentions(self, name: str) -> bool:
        return any(name in f.variables() for f in self.equations)


@dataclass(frozen=True)
class TruthTable:
    variables: VariableTable
    rows: tuple[Row, ...]
    ring: PolyRing = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        self.variables.require_output()
        object.__setattr__(self, "rows", tuple(self.rows))
        if not self.rows:
            raise ValueError("a truth table needs at least one row")
        ring = self.ring if self.ring is not None else PolyRing(self.variables, LEX)
        if ring.variables != self.variables:
            raise ValueError("ring variables differ from the table's")
        object.__setattr__(self, "ring", ring)
        for row in self.rows:
            for f in row.equations:
                if f.ring.variables != self.variables:
                    raise ValueError(f"equation {f} is not over the table variables")

    @property
    def output(self) -> str:
        return self.variables.output

    def is_constrained(self, index: int) -> bool:
        """A row constrains the output only if some equation mentions it."""
        return self.rows[index].mentions(self.output)

    def constrained_indices(self) -> list[int]:
        return [i for i in range(len(self.rows)) if self.is_constrained(i)]

    @property
    def s(self) -> int:
        return len(self.constrained_indices())

    def reordered(self, permutation: Sequence[int]) -> TruthTable:
        return TruthTable(self.variables, tuple(self.rows[i] for i in permutation), self.ring)


@dataclass(frozen=True)
class PolynomialForm:
    """``poly = 0`` with leading term the output; solved, ``output = rhs``."""

    poly: Polynomial
    output_var: str

    def __post_init__(self):
        vt = self.poly.ring.variables
        if self.poly.uses_any(vt.intermediates):
            raise ValueError("a polynomial form may not mention intermediate variables")

    @property
    def rhs(self) -> Polynomial:
        return self.poly + self.poly.ring.var(self.output_var)

    def multidegree(self) -> Monomial | None:
        """Leading monomial of the input side, ``None`` when that side is 0."""
        rhs = self.rhs
        return rhs.leading_term() if rhs else None

    def is_multilinear(self) -> bool:
        return self.poly.is_multilinear()

    def xor_gates(self) -> int:
        return max(0, len(self.rhs) - 1)

    def and_gates(self) -> int:
        return sum(max(0, sum(1 for e in m.exponents if e) - 1) for m in self.rhs.monomials())

    def __str__(self):
        return f"{self.output_var} = {self.rhs}"


@dataclass
class SynthesisStats:
    pairs: int = 0
    reductions: int = 0
    zero_reductions: int = 0
    wall_time: float = 0.0
    coprimality: str = ""


@dataclass
class SynthesisResult:
    form: PolynomialForm
    full_basis: GroebnerBasis
    eliminated_basis: tuple[Polynomial, ...]
    stats: SynthesisStats
    excluded_rows: tuple[int, ...] = ()
    verified: bool | None = None


# -- ideals ---------------------------------------------------------------------

def row_ideal(row: Row, variables: VariableTable, ring: PolyRing | None = None) -> Ideal:
    ring = ring or PolyRing(variables, LEX)
    fields = [ring.field_polynomial(name) for name in variables.names]
    return Ideal([ring.convert(f) for f in row.equations] + fields, ring=ring)


@dataclass
class DisjointReport:
    disjoint: bool
    witness: tuple[int, int, tuple[int, ...]] | None = None
    skipped: bool = False


def row_input_sets(table: TruthTable) -> list[int]:
    """Input points (as bitsets over the l-cube) satisfying each row."""
    vt = table.variables
    n, l = vt.n, vt.l
    result = []
    for row in table.rows:
        points = cube.variety(row.equations, n)
        projected = 0
        for _, piece in cube.chunks(points, n, l):
            projected |= piece
        result.append(projected)
    return result


def check_disjoint_inputs(table: TruthTable, *, max_inputs: int = DEFAULT_INPUT_CAP,
                          rows: Sequence[int] | None = None) -> DisjointReport:
    """Report the first pair of rows whose satisfying input sets overlap.

    Row indices in the witness are 1-based, in table order.
    """
    if table.variables.l > max_inputs:
        return DisjointReport(False, None, skipped=True)
    indices = list(range(len(table.rows))) if rows is None else list(rows)
    sets = row_input_sets(table)
    l = table.variables.l
    for a in range(len(indices)):
        for b in range(a + 1, len(indices)):
            i, j = indices[a], indices[b]
            common = sets[i] & sets[j]
            if common:
                point = cube.first_point(common)
                return DisjointReport(False, (i + 1, j + 1, cube.index_to_bits(point, l)))
    return DisjointReport(True)


def check_coprime_rows(table: TruthTable, rows: Sequence[int], order: MonomialOrder = LEX, *,
                       limits: Limits | None = None) -> tuple[int, int] | None:
    """First pair of rows (1-based) whose ideals are not coprime, or None."""
    ideals = {i: row_ideal(table.rows[i], table.variables, table.ring) for i in rows}
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            if not is_coprime(ideals[rows[a]], ideals[rows[b]], order, limits=limits):
                return rows[a] + 1, rows[b] + 1
    return None


def ensure_coprime(table: TruthTable, rows: Sequence[int], order: MonomialOrder = LEX, *,
                   max_inputs: int = DEFAULT_INPUT_CAP, limits: Limits | None = None) -> str:
    """Disjoint inputs suffice; otherwise fall back to pairwise Gröbner checks."""
    report = check_disjoint_inputs(table, max_inputs=max_inputs, rows=rows)
    if report.disjoint:
        return "disjoint-inputs"
    bad = check_coprime_rows(table, rows, order, limits=limits)
    if bad is not None:
        assignment = None
        if report.witness and report.witness[:2] == bad:
            assignment = report.witness[2]
        raise CoprimalityViolation(f"row ideals {bad[0]} and {bad[1]} are not coprime",
                                   rows=bad, assignment=assignment)
    return "groebner"


def assemble_ideal(table: TruthTable, order: MonomialOrder = LEX, *, limits: Limits | None = None,
                   stats: BuchbergerStats | None = None, strategy: str = "normal",
                   check: bool = True, max_inputs: int = DEFAULT_INPUT_CAP) -> GroebnerBasis:
    """Reduced Gröbner basis of the product of the constrained rows' ideals.

    The product is folded left to right, reducing each partial product to
    its reduced Gröbner basis before multiplying in the next row.
    """
    rows = table.constrained_indices()
    for i in range(len(table.rows)):
        if i not in rows:
            log.info("row %d leaves the output unconstrained; excluded from the product", i + 1)
    if not rows:
        raise NoForm("no row constrains the output variable")
    if check:
        ensure_coprime(table, rows, order, max_inputs=max_inputs, limits=limits)
    ring = table.ring.with_order(order)
    acc: GroebnerBasis | None = None
    for i in rows:
        ideal = row_ideal(table.rows[i], table.variables, ring)
        if acc is not None:
            ideal = ideal_product(acc.as_ideal(), ideal)
        acc = reduce_basis(buchberger(ideal, order, limits=limits, stats=stats, strategy=strategy))
    return acc


def eliminated_basis(G: GroebnerBasis, variables: VariableTable) -> tuple[Polynomial, ...]:
    """Elements of G free of intermediate variables."""
    inter = variables.intermediates
    return tuple(g for g in G.elements if not g.uses_any(inter))


def extract_polynomial_form(G: GroebnerBasis, variables: VariableTable) -> PolynomialForm:
    output = variables.require_output()
    ring = G.ring
    target = ring.var(output).terms[0]
    candidates = [g for g in eliminated_basis(G, variables) if g.terms[0] == target]
    if not candidates:
        raise NoForm(f"no basis element has leading term {output}; the table does not determine it")
    if len(candidates) > 1:
        raise AmbiguousForm(f"{len(candidates)} basis elements lead with {output}")
    return PolynomialForm(candidates[0], output)


def synthesize(table: TruthTable, order: MonomialOrder = LEX, *, limits: Limits | None = None,
               strategy: str = "normal", verify: bool = True,
               max_inputs: int = DEFAULT_INPUT_CAP) -> SynthesisResult:
    start = time.perf_counter()
    rows = table.constrained_indices()
    excluded = tuple(i + 1 for i in range(len(table.rows)) if i not in rows)
    if not rows:
        raise NoForm("no row constrains the output variable")
    how = ensure_coprime(table, rows, order, max_inputs=max_inputs, limits=limits)
    bstats = BuchbergerStats()
    G = assemble_ideal(table, order, limits=limits, stats=bstats, strategy=strategy, check=False)
    form = extract_polynomial_form(G, table.variables)
    stats = SynthesisStats(pairs=bstats.pairs, reductions=bstats.reductions,
                           zero_reductions=bstats.zero_reductions, coprimality=how)
    result = SynthesisResult(form, G, eliminated_basis(G, table.variables), stats, excluded)
    if verify and table.variables.l <= max_inputs:
        from .oracle import verify_form

        report = verify_form(form, table)
        if not report.passed:
            raise GbsynthError(f"synthesized form fails on the table at {report.first_failure}")
        result.verified = True
    stats.wall_time = time.perf_counter() - start
    return result
