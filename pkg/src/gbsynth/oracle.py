"""Brute-force checks that never touch the Gröbner engine.

Row semantics are enumerated over the whole Boolean cube, forms are checked
point by point, algebraic normal forms come from the Möbius transform, and
the minimality claim is checked by sweeping every completion of the don't
cares.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import cube
from .errors import EnumerationCapExceeded
from .groebner import GroebnerBasis, satisfies_buchberger_criterion
from .polyring import LEX, Monomial, MonomialOrder, Polynomial, PolyRing, VariableTable, monomial_key
from .tabletool import PolynomialForm, TruthTable

DEFAULT_INPUT_CAP = 24
DEFAULT_DONT_CARE_CAP = 12


@dataclass
class DomainReport:
    """Domain S of a table, its function tau, and any points where rows disagree.

    Points are indices into the input cube (first input most significant);
    ``defined`` and ``ones`` are bitsets over those indices.
    """

    inputs: tuple[str, ...]
    defined: int
    ones: int
    conflicts: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)

    @property
    def size(self) -> int:
        return self.defined.bit_count()

    @property
    def domain(self) -> frozenset[tuple[int, ...]]:
        l = len(self.inputs)
        return frozenset(cube.index_to_bits(p, l) for p in cube.iter_points(self.defined))

    @property
    def tau(self) -> dict[tuple[int, ...], int]:
        l = len(self.inputs)
        return {cube.index_to_bits(p, l): (self.ones >> p) & 1 for p in cube.iter_points(self.defined)}

    @property
    def well_defined(self) -> bool:
        return not self.conflicts

    def dont_cares(self) -> list[int]:
        l = len(self.inputs)
        missing = cube.full_set(l) & ~self.defined
        return list(cube.iter_points(missing))


def _row_output_sets(table: TruthTable):
    """For each row, the input points where it allows output 0 and output 1."""
    vt = table.variables
    n, l = vt.n, vt.l
    result = []
    for row in table.rows:
        points = cube.variety(row.equations, n)
        zero = one = 0
        for hi, piece in cube.chunks(points, n, l):
            if hi & 1:
                one |= piece
            else:
                zero |= piece
        result.append((zero, one))
    return result


def enumerate_domain(table: TruthTable, *, max_inputs: int = DEFAULT_INPUT_CAP) -> DomainReport:
    vt = table.variables
    if vt.l > max_inputs:
        raise EnumerationCapExceeded(f"{vt.l} inputs exceeds the enumeration cap {max_inputs}")
    l = vt.l
    rows = [i for i in range(len(table.rows)) if table.is_constrained(i)]
    per_row = _row_output_sets(table)
    zeros = ones = 0
    for i in rows:
        zeros |= per_row[i][0]
        ones |= per_row[i][1]
    conflicts = []
    for p in cube.iter_points(zeros & ones):
        involved = tuple(i + 1 for i in rows if ((per_row[i][0] | per_row[i][1]) >> p) & 1)
        conflicts.append((cube.index_to_bits(p, l), involved))
    return DomainReport(vt.inputs, zeros | ones, ones & ~zeros, conflicts)


@dataclass
class VerifyReport:
    passed: bool
    checked: int
    first_failure: dict[str, int] | None = None


def _form_values(poly: Polynomial, variables: VariableTable) -> tuple[int, int]:
    """Input-cube bitsets where ``poly`` is nonzero with output 0, and with output 1.

    Intermediates are held at 0; a form must not depend on them.
    """
    n, l = variables.n, variables.l
    nonzero = cube.full_set(n) & ~cube.zero_set(poly, n)
    width = 1 << l
    mask = (1 << width) - 1
    return nonzero & mask, (nonzero >> width) & mask


def verify_form(form: PolynomialForm, table: TruthTable, *,
                max_inputs: int = DEFAULT_INPUT_CAP) -> VerifyReport:
    """Check that the form vanishes at (tau(s), s) for every s in the domain."""
    vt = table.variables
    report = enumerate_domain(table, max_inputs=max_inputs)
    poly = form.poly
    if poly.ring.variables != vt:
        poly = _transplant(poly, vt)
    if poly.uses_any(vt.intermediates):
        return VerifyReport(False, 0, None)
    at_zero, at_one = _form_values(poly, vt)
    ones = report.ones
    zeros = report.defined & ~ones
    failures = (zeros & at_zero) | (ones & at_one)
    first = cube.first_point(failures)
    witness = None
    if first is not None:
        bits = cube.index_to_bits(first, vt.l)
        witness = dict(zip(vt.inputs, bits))
        witness[vt.output] = (ones >> first) & 1
    return VerifyReport(not failures, report.size, witness)


def _transplant(poly: Polynomial, variables: VariableTable) -> Polynomial:
    """Move a polynomial into the table's ring, matching variables by name."""
    ring = PolyRing(variables, poly.ring.order)
    src = poly.ring.names
    monos = []
    for mono in poly.monomials():
        exps = [0] * variables.n
        for name, e in zip(src, mono.exponents):
            if e:
                exps[ring.index(name)] = e
        monos.append(exps)
    return ring.from_monomials(monos)


def anf_of_total_function(values, ring: PolyRing | None = None,
                          inputs: Sequence[str] | None = None) -> Polynomial:
    """Multilinear interpolant of a total function via the Möbius transform.

    ``values`` is either a sequence of ``2^l`` bits indexed by input point
    (first input most significant) or a mapping from bit tuples to bits.
    ``inputs`` names the ring variables the function reads, in order.
    """
    if isinstance(values, Mapping):
        if not values:
            raise ValueError("empty function")
        l = len(next(iter(values)))
        table = [0] * (1 << l)
        for bits, v in values.items():
            table[cube.bits_to_index(bits)] = int(v) & 1
        if len(values) != 1 << l:
            raise ValueError("function is not total")
    else:
        table = [int(v) & 1 for v in values]
        l = max(len(table) - 1, 0).bit_length()
        if len(table) != 1 << l:
            raise ValueError("function table length must be a power of two")
    if ring is None:
        ring = PolyRing(VariableTable.plain(*(inputs or [f"y{j}" for j in range(l)])), LEX)
    if inputs is None:
        inputs = ring.names[-l:] if l else ()
    if len(inputs) != l:
        raise ValueError(f"{len(inputs)} input names for a function of {l} inputs")
    idx = [ring.index(name) for name in inputs]
    coeffs = list(table)
    step = 1
    while step < len(coeffs):
        for p in range(len(coeffs)):
            if p & step:
                coeffs[p] ^= coeffs[p ^ step]
        step <<= 1
    monos = []
    for p, c in enumerate(coeffs):
        if c:
            exps = [0] * ring.n
            for j, bit in enumerate(cube.index_to_bits(p, l)):
                if bit:
                    exps[idx[j]] = 1
            monos.append(exps)
    return ring.from_monomials(monos)


@dataclass
class CompletionSweep:
    completions: int
    min_multidegree: Monomial | None
    min_polynomial: Polynomial


def _leading(poly: Polynomial, key) -> Monomial | None:
    monos = poly.monomials()
    return max(monos, key=key) if monos else None


def sweep_completions(table: TruthTable, order: MonomialOrder = LEX, *,
                      max_dont_cares: int = DEFAULT_DONT_CARE_CAP,
                      max_inputs: int = DEFAULT_INPUT_CAP) -> CompletionSweep:
    """Try every resolution of the don't cares; keep the smallest ANF.

    Two notions of smallest are tracked: the ordering-maximal monomial, and
    the whole term list compared from the top down.
    """
    report = enumerate_domain(table, max_inputs=max_inputs)
    if report.conflicts:
        raise ValueError("table is not well defined")
    free = report.dont_cares()
    if len(free) > max_dont_cares:
        raise EnumerationCapExceeded(f"{len(free)} don't-care points exceeds cap {max_dont_cares}")
    vt = table.variables
    ring = PolyRing(vt, order)
    key = monomial_key(order, vt.n)
    l = vt.l
    base = [(report.ones >> p) & 1 for p in range(1 << l)]
    best_lead = None
    best_poly = None
    best_terms = None
    count = 0
    for choice in itertools.product((0, 1), repeat=len(free)):
        values = list(base)
        for p, v in zip(free, choice):
            values[p] = v
        anf = anf_of_total_function(values, ring, vt.inputs)
        count += 1
        lead = _leading(anf, key)
        if count == 1 or _lt(lead, best_lead, key):
            best_lead = lead
        terms = anf.terms
        if best_terms is None or terms < best_terms:
            best_terms, best_poly = terms, anf
    return CompletionSweep(count, best_lead, best_poly)


def _lt(a, b, key) -> bool:
    if a is None:
        return b is not None
    if b is None:
        return False
    return key(a) < key(b)


def minimal_completion_multidegree(table: TruthTable, order: MonomialOrder = LEX, **caps) -> Monomial | None:
    """Smallest leading input monomial over all completions (None: the zero function wins)."""
    return sweep_completions(table, order, **caps).min_multidegree


@dataclass
class BasisReport:
    s_pair_failures: list[tuple[int, int]] = field(default_factory=list)
    reducedness: list[str] = field(default_factory=list)
    field_squares: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.s_pair_failures or self.reducedness or self.field_squares)


def check_basis_properties(G: GroebnerBasis, variables: VariableTable | None = None) -> BasisReport:
    """Buchberger criterion, reducedness, and squares of variables as leading terms.

    The square check applies when every field polynomial lies in the ideal:
    each ``x^2`` must then be divisible by some leading term, and when roles
    are known each input's square by a leading term of an element free of
    intermediates and of the output.
    """
    report = BasisReport()
    ring = G.ring
    report.s_pair_failures = satisfies_buchberger_criterion(G)
    elems = [g.terms for g in G.elements]
    for a, g in enumerate(elems):
        for b, h in enumerate(elems):
            if a == b:
                continue
            if g[0] == h[0]:
                if a < b:
                    report.reducedness.append(f"elements {a} and {b} share a leading term")
                continue
            for m in g:
                if ring.divides(h[0], m):
                    report.reducedness.append(
                        f"monomial {ring.format_monomial(m)} of element {a} divisible by "
                        f"leading term of element {b}")
                    break
    if G.is_unit():
        return report
    fields = [ring.field_polynomial(name) for name in ring.names]
    if all(G.contains(f) for f in fields):
        leads = [g[0] for g in elems]
        for f, name in zip(fields, ring.names):
            if not any(ring.divides(lt, f.terms[0]) for lt in leads):
                report.field_squares.append(f"{name}^2 not in the leading-term ideal")
        if variables is not None and variables.output is not None:
            skip = variables.intermediates + (variables.output,)
            rest = [g.terms[0] for g in G.elements if not g.uses_any(skip)]
            for name in variables.inputs:
                sq = ring.field_polynomial(name).terms[0]
                if not any(ring.divides(lt, sq) for lt in rest):
                    report.field_squares.append(f"{name}^2 not led by an input-only element")
    return report
