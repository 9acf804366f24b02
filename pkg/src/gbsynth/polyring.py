"""Multivariate polynomials over GF(2).

Monomials are packed into Python integers.  Each variable owns a fixed-width
bit field (variable 0 in the most significant position) and graded orders add
a total-degree field above the variables they grade.  With this layout the
integer ordering of packed monomials *is* the monomial ordering, monomial
multiplication is integer addition, and divisibility is a borrow test on the
per-field guard bits.  Exponent overflow sets a guard bit and is reported as
:class:`ExponentOverflow`.

Polynomials store their packed terms sorted in descending order; GF(2)
coefficients are implicit, so addition is a symmetric difference.
"""

from __future__ import annotations

import enum
import functools
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    DimensionMismatch,
    ExponentOverflow,
    MissingAssignment,
    ParseError,
    UndeclaredVariable,
    ZeroPolynomialError,
)

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# bits per variable field; the top bit of each field is a guard bit
FIELD_BITS = 8
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1
DEGREE_BITS = 16
MAX_DEGREE = (1 << (DEGREE_BITS - 1)) - 1


class Role(enum.Enum):
    INTERMEDIATE = "intermediate"
    OUTPUT = "output"
    INPUT = "input"


_ROLE_RANK = {Role.INTERMEDIATE: 0, Role.OUTPUT: 1, Role.INPUT: 2}


@dataclass(frozen=True)
class VariableTable:
    """Ordered roster of variables: intermediates, then the output, then inputs.

    Tables built for pure algebra may omit the output; synthesis calls
    :meth:`require_output`.
    """

    entries: tuple[tuple[str, Role], ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple((str(n), Role(r)) for n, r in self.entries))
        seen = set()
        rank = 0
        for name, role in self.entries:
            if not IDENTIFIER.match(name):
                raise ValueError(f"invalid variable name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate variable {name!r}")
            seen.add(name)
            if _ROLE_RANK[role] < rank:
                raise ValueError("variables must be ordered intermediates, output, inputs")
            rank = _ROLE_RANK[role]
        if sum(role is Role.OUTPUT for _, role in self.entries) > 1:
            raise ValueError("at most one output variable is allowed")

    @classmethod
    def build(cls, intermediates: Iterable[str] = (), output: str | None = None,
              inputs: Iterable[str] = ()) -> VariableTable:
        entries = [(name, Role.INTERMEDIATE) for name in intermediates]
        if output is not None:
            entries.append((output, Role.OUTPUT))
        entries.extend((name, Role.INPUT) for name in inputs)
        return cls(tuple(entries))

    @classmethod
    def plain(cls, *names: str) -> VariableTable:
        """Variables with no synthesis role, for standalone algebra."""
        return cls(tuple((name, Role.INPUT) for name in names))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def k(self) -> int:
        return sum(role is Role.INTERMEDIATE for _, role in self.entries)

    @property
    def l(self) -> int:  # noqa: E743
        return sum(role is Role.INPUT for _, role in self.entries)

    @property
    def output(self) -> str | None:
        for name, role in self.entries:
            if role is Role.OUTPUT:
                return name
        return None

    @property
    def intermediates(self) -> tuple[str, ...]:
        return tuple(n for n, r in self.entries if r is Role.INTERMEDIATE)

    @property
    def inputs(self) -> tuple[str, ...]:
        return tuple(n for n, r in self.entries if r is Role.INPUT)

    def require_output(self) -> str:
        if self.output is None:
            raise ValueError("variable table declares no output")
        return self.output

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UndeclaredVariable(name) from None

    def __contains__(self, name) -> bool:
        return name in self.names

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class MonomialOrder:
    """``lex``, ``grlex``, or ``block``.

    ``block`` compares positions ``[0, split)`` lexicographically and breaks
    ties on positions ``[split, n)`` by graded lex.
    """

    kind: str = "lex"
    split: int | None = None

    def __post_init__(self):
        if self.kind not in ("lex", "grlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if (self.kind == "block") != (self.split is not None):
            raise ValueError("block order needs a split index; other orders take none")
        if self.split is not None and self.split < 0:
            raise ValueError("negative block split")

    @classmethod
    def lex(cls) -> MonomialOrder:
        return cls("lex")

    @classmethod
    def grlex(cls) -> MonomialOrder:
        return cls("grlex")

    @classmethod
    def block(cls, split: int) -> MonomialOrder:
        return cls("block", split)

    def __str__(self):
        return self.kind if self.split is None else f"block({self.split})"


LEX = MonomialOrder.lex()
GRLEX = MonomialOrder.grlex()


class _Layout:
    """Bit layout of packed monomials for ``n`` variables under one order."""

    def __init__(self, n: int, order: MonomialOrder):
        if order.kind == "lex":
            groups = [(0, n, False)]
        elif order.kind == "grlex":
            groups = [(0, n, True)]
        else:
            if order.split > n:
                raise DimensionMismatch(f"block split {order.split} exceeds {n} variables")
            groups = [(0, order.split, False), (order.split, n, True)]
        self.n = n
        self.shifts = [0] * n
        self.degree_fields: list[tuple[int, int, int]] = []
        pos = 0
        for lo, hi, graded in reversed(groups):
            for i in reversed(range(lo, hi)):
                self.shifts[i] = pos
                pos += FIELD_BITS
            if graded and hi > lo:
                self.degree_fields.append((pos, lo, hi))
                pos += DEGREE_BITS
        self.guard = 0
        for s in self.shifts:
            self.guard |= 1 << (s + FIELD_BITS - 1)
        for s, _, _ in self.degree_fields:
            self.guard |= 1 << (s + DEGREE_BITS - 1)
        self.field_mask = (1 << FIELD_BITS) - 1
        self.var_masks = [self.field_mask << s for s in self.shifts]

    def encode(self, exps: Sequence[int]) -> int:
        if len(exps) != self.n:
            raise DimensionMismatch(f"expected {self.n} exponents, got {len(exps)}")
        m = 0
        for e, s in zip(exps, self.shifts):
            if e < 0:
                raise ValueError("negative exponent")
            if e > MAX_EXPONENT:
                raise ExponentOverflow(f"exponent {e} exceeds {MAX_EXPONENT}")
            m |= e << s
        for s, lo, hi in self.degree_fields:
            d = sum(exps[lo:hi])
            if d > MAX_DEGREE:
                raise ExponentOverflow(f"degree {d} exceeds {MAX_DEGREE}")
            m |= d << s
        return m

    def decode(self, m: int) -> tuple[int, ...]:
        mask = self.field_mask
        return tuple((m >> s) & mask for s in self.shifts)


@functools.lru_cache(maxsize=None)
def _layout(n: int, order: MonomialOrder) -> _Layout:
    return _Layout(n, order)


@dataclass(frozen=True, order=False)
class Monomial:
    """Exponent vector indexed by variable-table position."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if any(e < 0 for e in self.exponents):
            raise ValueError("negative exponent")

    @classmethod
    def one(cls, n: int) -> Monomial:
        return cls((0,) * n)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def __len__(self):
        return len(self.exponents)

    def __mul__(self, other: Monomial) -> Monomial:
        _check_dims(self, other)
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def divides(self, other: Monomial) -> bool:
        _check_dims(self, other)
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def lcm(self, other: Monomial) -> Monomial:
        _check_dims(self, other)
        return Monomial(tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)))

    def is_multilinear(self) -> bool:
        return all(e <= 1 for e in self.exponents)


def _check_dims(a, b):
    if len(a) != len(b):
        raise DimensionMismatch(f"monomials over {len(a)} and {len(b)} variables")


def compare(a: Monomial, b: Monomial, order: MonomialOrder = LEX) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to, or greater than ``b``."""
    _check_dims(a, b)
    lay = _layout(len(a), order)
    x, y = lay.encode(a.exponents), lay.encode(b.exponents)
    return (x > y) - (x < y)


def monomial_key(order: MonomialOrder, n: int):
    """Sort key for :class:`Monomial` objects under ``order``."""
    lay = _layout(n, order)
    return lambda m: lay.encode(m.exponents)


class PolyRing:
    """GF(2)[x_1..x_n] over a variable table, with a fixed monomial order."""

    def __init__(self, variables: VariableTable, order: MonomialOrder = LEX):
        if not isinstance(variables, VariableTable):
            variables = VariableTable.plain(*variables)
        self.variables = variables
        self.order = order
        self.n = variables.n
        self._layout = _layout(self.n, order)
        self.guard = self._layout.guard
        self._names = variables.names
        self._index = {name: i for i, name in enumerate(self._names)}

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.variables == other.variables
                and self.order == other.order)

    def __hash__(self):
        return hash((self.variables, self.order))

    def __repr__(self):
        return f"PolyRing({', '.join(self._names)}; {self.order})"

    @property
    def names(self) -> tuple[str, ...]:
        return self._names

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UndeclaredVariable(name) from None

    def with_order(self, order: MonomialOrder) -> PolyRing:
        if order == self.order:
            return self
        return PolyRing(self.variables, order)

    # -- packed monomials -------------------------------------------------
    def encode(self, exps: Sequence[int]) -> int:
        return self._layout.encode(exps)

    def decode(self, m: int) -> tuple[int, ...]:
        return self._layout.decode(m)

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a: int, b: int) -> int:
        dec = self._layout.decode
        return self._layout.encode([max(x, y) for x, y in zip(dec(a), dec(b))])

    def check_overflow(self, terms: Iterable[int]):
        g = self.guard
        for m in terms:
            if m & g:
                raise ExponentOverflow(f"exponent overflow in {self}")

    def var_mask(self, i: int) -> int:
        return self._layout.var_masks[i]

    def support_mask(self, indices: Iterable[int]) -> int:
        mask = 0
        for i in indices:
            mask |= self._layout.var_masks[i]
        return mask

    def format_monomial(self, m: int) -> str:
        parts = []
        for name, e in zip(self._names, self.decode(m)):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    # -- polynomial constructors ------------------------------------------
    def zero(self) -> Polynomial:
        return Polynomial(self, ())

    def one(self) -> Polynomial:
        return Polynomial(self, (0,))

    def var(self, name: str) -> Polynomial:
        exps = [0] * self.n
        exps[self.index(name)] = 1
        return Polynomial(self, (self.encode(exps),))

    def gens(self) -> tuple[Polynomial, ...]:
        return tuple(self.var(name) for name in self._names)

    def field_polynomial(self, name: str) -> Polynomial:
        """``x^2 + x``, which vanishes on all of GF(2)."""
        i = self.index(name)
        exps = [0] * self.n
        exps[i] = 1
        lin = self.encode(exps)
        exps[i] = 2
        return Polynomial(self, (self.encode(exps), lin))

    def from_monomials(self, monomials: Iterable) -> Polynomial:
        """Sum of the given monomials (Monomial objects or exponent tuples)."""
        acc: set[int] = set()
        for mon in monomials:
            exps = mon.exponents if isinstance(mon, Monomial) else tuple(mon)
            acc ^= {self.encode(exps)}
        return Polynomial.from_terms(self, acc)

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self)

    def convert(self, p: Polynomial) -> Polynomial:
        """Re-express ``p`` in this ring (same variables, possibly other order)."""
        if p.ring == self:
            return p
        if p.ring.variables != self.variables:
            raise DimensionMismatch(f"cannot convert from {p.ring} to {self}")
        dec = p.ring.decode
        return Polynomial.from_terms(self, {self.encode(dec(m)) for m in p.terms})


class Polynomial:
    """Immutable GF(2) polynomial: a duplicate-free descending tuple of packed terms."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: tuple[int, ...]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    @classmethod
    def from_terms(cls, ring: PolyRing, terms: Iterable[int]) -> Polynomial:
        """Build from a collection of *distinct* packed terms."""
        return cls(ring, tuple(sorted(terms, reverse=True)))

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring == self.ring:
                return other
            if other.ring.variables != self.ring.variables:
                raise DimensionMismatch(f"{other.ring} vs {self.ring}")
            return self.ring.convert(other)
        if isinstance(other, int):
            return self.ring.one() if int(other) % 2 else self.ring.zero()
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial.from_terms(self.ring, set(self.terms).symmetric_difference(other.terms))

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: set[int] = set()
        for a in self.terms:
            acc ^= {a + b for b in other.terms}
        self.ring.check_overflow(acc)
        return Polynomial.from_terms(self.ring, acc)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def _key(self):
        dec = self.ring.decode
        return frozenset(dec(m) for m in self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ring == self.ring:
            return self.terms == other.terms
        if other.ring.variables != self.ring.variables:
            return False
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, self._key()))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        fmt = self.ring.format_monomial
        return " + ".join(fmt(m) for m in self.terms)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    # -- inspection ---------------------------------------------------------
    def monomials(self) -> list[Monomial]:
        dec = self.ring.decode
        return [Monomial(dec(m)) for m in self.terms]

    def leading_term(self) -> Monomial:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        return Monomial(self.ring.decode(self.terms[0]))

    @property
    def lt(self) -> int:
        """Packed leading term."""
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        return self.terms[0]

    def degree(self) -> int:
        return max((sum(self.ring.decode(m)) for m in self.terms), default=-1)

    def variables(self) -> set[str]:
        used = 0
        for m in self.terms:
            used |= m
        return {name for i, name in enumerate(self.ring.names) if used & self.ring.var_mask(i)}

    def uses_any(self, names: Iterable[str]) -> bool:
        mask = self.ring.support_mask(self.ring.index(v) for v in names)
        return any(m & mask for m in self.terms)

    def is_multilinear(self) -> bool:
        return all(max(self.ring.decode(m), default=0) <= 1 for m in self.terms)

    def is_one(self) -> bool:
        return self.terms == (0,)

    def evaluate(self, point) -> int:
        return evaluate(self, point)

    def with_order(self, order: MonomialOrder) -> Polynomial:
        return self.ring.with_order(order).convert(self)


def _same_ring(p: Polynomial, q: Polynomial):
    if p.ring.variables != q.ring.variables:
        raise DimensionMismatch(f"{p.ring} vs {q.ring}")


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    _same_ring(p, q)
    return p + q


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    _same_ring(p, q)
    return p * q


def leading_term(f: Polynomial, order: MonomialOrder | None = None) -> Monomial:
    if order is not None:
        f = f.with_order(order)
    return f.leading_term()


def reduce_terms(ring: PolyRing, terms: Iterable[int], divisors: Sequence[tuple[int, ...]]) -> list[int]:
    """Fully reduce packed ``terms`` by packed divisor term tuples.

    Always reduces by the first divisor whose leading term divides the current
    term.  Returns the remainder's terms in descending order.
    """
    f = set(terms)
    remainder = []
    g = ring.guard
    leads = [d[0] for d in divisors]
    while f:
        m = max(f)
        mg = m | g
        for lt, d in zip(leads, divisors):
            if (mg - lt) & g == g:
                q = m - lt
                new = {q + t for t in d}
                for t in new:
                    if t & g:
                        raise ExponentOverflow(f"exponent overflow in {ring}")
                f ^= new
                break
        else:
            remainder.append(m)
            f.remove(m)
    return remainder


def normal_form(f: Polynomial, divisors: Sequence[Polynomial], order: MonomialOrder | None = None) -> Polynomial:
    """Remainder of ``f`` on full division by ``divisors`` (list order decides ties)."""
    ring = f.ring.with_order(order) if order is not None else f.ring
    f = ring.convert(f)
    divs = []
    for d in divisors:
        _same_ring(f, d)
        if not d:
            raise ZeroPolynomialError("division by the zero polynomial")
        divs.append(ring.convert(d).terms)
    return Polynomial(ring, tuple(reduce_terms(ring, f.terms, divs)))


def _point_values(ring: PolyRing, point) -> list:
    if isinstance(point, Mapping):
        values = [None] * ring.n
        for name, v in point.items():
            values[ring.index(name)] = int(v) & 1
        return values
    values = [int(v) & 1 for v in point]
    if len(values) != ring.n:
        raise DimensionMismatch(f"point has {len(values)} coordinates, ring has {ring.n}")
    return values


def evaluate(f: Polynomial, point) -> int:
    """Value of ``f`` in GF(2) at ``point`` (mapping name -> bit, or a bit sequence).

    Every variable occurring in ``f`` must be assigned.
    """
    ring = f.ring
    values = _point_values(ring, point)
    total = 0
    for m in f.terms:
        exps = ring.decode(m)
        bit = 1
        for i, e in enumerate(exps):
            if e:
                v = values[i]
                if v is None:
                    raise MissingAssignment(ring.names[i])
                if not v:
                    bit = 0
        total ^= bit
    return total


# -- text grammar -------------------------------------------------------------
_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<num>\d+)|(?P<op>[+*^]))")


def tokenize(text: str, pattern=_TOKEN):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = pattern.match(text, pos)
        if not m or m.end() == pos:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", column=col)
        kind = m.lastgroup
        yield kind, m.group(kind), m.start(kind) + 1
        pos = m.end()


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``term ('+' term)*`` where ``term := factor ('*' factor)*`` and
    ``factor := '1' | '0' | ident ('^' uint)?``."""
    tokens = list(tokenize(text))
    if not tokens:
        raise ParseError("empty polynomial", column=1)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, len(text) + 1)

    acc: set[int] = set()
    while True:
        exps = [0] * ring.n
        zero = False
        while True:
            kind, val, col = peek()
            if kind == "ident":
                pos += 1
                i = ring.index(val)
                power = 1
                if peek()[1] == "^":
                    pos += 1
                    k2, v2, c2 = peek()
                    if k2 != "num":
                        raise ParseError("expected exponent after '^'", column=c2)
                    pos += 1
                    power = int(v2)
                exps[i] += power
            elif kind == "num" and val in ("0", "1"):
                pos += 1
                zero = zero or val == "0"
            else:
                raise ParseError(f"expected a factor, found {val or 'end of input'!r}", column=col)
            if peek()[1] == "*":
                pos += 1
                continue
            break
        if not zero:
            acc ^= {ring.encode(exps)}
        kind, val, col = peek()
        if kind is None:
            break
        if val != "+":
            raise ParseError(f"expected '+', found {val!r}", column=col)
        pos += 1
    return Polynomial.from_terms(ring, acc)
