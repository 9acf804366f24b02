"""Buchberger's algorithm, reduced Gröbner bases, and ideal arithmetic over GF(2)."""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DimensionMismatch, ResourceLimit, ZeroPolynomialError
from .polyring import MonomialOrder, Polynomial, PolyRing, reduce_terms

STRATEGIES = ("normal", "fifo")


@dataclass
class Limits:
    """Caps that abort a runaway computation with :class:`ResourceLimit`."""

    max_basis_size: int = 20000
    max_terms: int = 500000


@dataclass
class BuchbergerStats:
    pairs: int = 0
    pairs_coprime: int = 0
    pairs_chain: int = 0
    reductions: int = 0
    zero_reductions: int = 0
    elapsed: float = 0.0

    def merge(self, other: BuchbergerStats):
        self.pairs += other.pairs
        self.pairs_coprime += other.pairs_coprime
        self.pairs_chain += other.pairs_chain
        self.reductions += other.reductions
        self.zero_reductions += other.zero_reductions
        self.elapsed += other.elapsed


class Ideal:
    """Finite list of nonzero generators in one ring; zeros and duplicates dropped."""

    def __init__(self, generators: Iterable[Polynomial], ring: PolyRing | None = None):
        gens: list[Polynomial] = []
        seen = set()
        for g in generators:
            if ring is None:
                ring = g.ring
            elif g.ring.variables != ring.variables:
                raise DimensionMismatch(f"generator in {g.ring}, ideal in {ring}")
            if not g:
                continue
            g = ring.convert(g)
            if g.terms not in seen:
                seen.add(g.terms)
                gens.append(g)
        if ring is None:
            raise ValueError("an ideal needs at least one generator or an explicit ring")
        if not gens:
            raise ValueError("the zero ideal is not supported; give a nonzero generator")
        self.ring = ring
        self.generators = tuple(gens)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self):
        return f"Ideal<{', '.join(map(str, self.generators))}>"


@dataclass(frozen=True)
class GroebnerBasis:
    elements: tuple[Polynomial, ...]
    order: MonomialOrder
    reduced: bool = False
    stats: BuchbergerStats = field(default_factory=BuchbergerStats, compare=False, repr=False)

    @property
    def ring(self) -> PolyRing:
        return self.elements[0].ring

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def as_ideal(self) -> Ideal:
        return Ideal(self.elements)

    def is_unit(self) -> bool:
        return any(g.is_one() for g in self.elements)

    def leading_terms(self) -> list[int]:
        return [g.terms[0] for g in self.elements]

    def field_polynomials(self) -> list[Polynomial]:
        """Elements of the exact shape ``x^2 + x``."""
        ring = self.ring
        fps = {ring.field_polynomial(name).terms for name in ring.names}
        return [g for g in self.elements if g.terms in fps]

    def boolean_elements(self) -> list[Polynomial]:
        """Elements other than field polynomials.

        When the ideal contains every ``x^2 + x``, these are exactly the
        reduced basis of the ideal's image in the Boolean quotient ring.
        """
        fps = {g.terms for g in self.field_polynomials()}
        return [g for g in self.elements if g.terms not in fps]

    def contains(self, f: Polynomial) -> bool:
        return contains(self, f)


def _check_nonzero(*polys: Polynomial):
    for p in polys:
        if not p:
            raise ZeroPolynomialError("S-polynomial of the zero polynomial")


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    _check_nonzero(f, g)
    if f.ring.variables != g.ring.variables:
        raise DimensionMismatch(f"{f.ring} vs {g.ring}")
    ring = f.ring.with_order(order) if order is not None else f.ring
    f, g = ring.convert(f), ring.convert(g)
    return Polynomial.from_terms(ring, _s_terms(ring, f.terms, g.terms))


def _s_terms(ring: PolyRing, f: tuple[int, ...], g: tuple[int, ...]) -> set[int]:
    lcm = ring.lcm(f[0], g[0])
    qf, qg = lcm - f[0], lcm - g[0]
    s = {qf + t for t in f[1:]}
    s.symmetric_difference_update(qg + t for t in g[1:])
    ring.check_overflow(s)
    return s


def _buchberger_terms(ring: PolyRing, generators: Sequence[tuple[int, ...]], *,
                      strategy: str = "normal", limits: Limits | None = None,
                      stats: BuchbergerStats | None = None, stop_on_unit: bool = False,
                      chain: bool = True) -> list[tuple[int, ...]]:
    """Core loop on packed term tuples.

    Input generators are queued alongside S-pairs; under the normal strategy
    everything is processed in increasing order of its leading monomial (the
    lcm for pairs), under ``fifo`` in insertion order.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown pair selection strategy {strategy!r}")
    limits = limits or Limits()
    stats = stats if stats is not None else BuchbergerStats()
    guard = ring.guard
    basis: list[tuple[int, ...]] = []
    leads: list[int] = []
    pending: set[tuple[int, int]] = set()
    queue: list = []
    counter = itertools.count()
    normal = strategy == "normal"

    for i, gen in enumerate(generators):
        key = gen[0] if normal else 0
        heapq.heappush(queue, (key, next(counter), -1, i))

    def insert(h: list[int]):
        h = tuple(h)
        if len(h) > limits.max_terms:
            raise ResourceLimit(f"polynomial with {len(h)} terms exceeds cap {limits.max_terms}")
        j = len(basis)
        if j >= limits.max_basis_size:
            raise ResourceLimit(f"basis size exceeds cap {limits.max_basis_size}")
        basis.append(h)
        leads.append(h[0])
        for i in range(j):
            pending.add((i, j))
            key = ring.lcm(leads[i], h[0]) if normal else 1
            heapq.heappush(queue, (key, next(counter), i, j))

    while queue:
        _, _, i, j = heapq.heappop(queue)
        if i < 0:
            terms = generators[j]
        else:
            pending.discard((i, j))
            stats.pairs += 1
            li, lj = leads[i], leads[j]
            lcm = ring.lcm(li, lj)
            if lcm == li + lj:
                stats.pairs_coprime += 1
                continue
            if chain:
                lg = lcm | guard
                skip = False
                for k, lk in enumerate(leads):
                    if k == i or k == j or (lg - lk) & guard != guard:
                        continue
                    if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                        skip = True
                        break
                if skip:
                    stats.pairs_chain += 1
                    continue
            terms = _s_terms(ring, basis[i], basis[j])
            if len(terms) > limits.max_terms:
                raise ResourceLimit(f"S-polynomial with {len(terms)} terms exceeds cap")
        stats.reductions += 1
        h = reduce_terms(ring, terms, basis)
        if not h:
            stats.zero_reductions += 1
            continue
        if stop_on_unit and h == [0]:
            return [(0,)]
        insert(h)
    return basis


def buchberger(ideal: Ideal, order: MonomialOrder | None = None, *, strategy: str = "normal",
               limits: Limits | None = None, stats: BuchbergerStats | None = None,
               chain: bool = True) -> GroebnerBasis:
    """Gröbner basis (not yet reduced) of ``ideal`` under ``order``."""
    ring = ideal.ring.with_order(order) if order is not None else ideal.ring
    gens = [ring.convert(g).terms for g in ideal.generators]
    own = BuchbergerStats()
    start = time.perf_counter()
    basis = _buchberger_terms(ring, gens, strategy=strategy, limits=limits, stats=own, chain=chain)
    own.elapsed = time.perf_counter() - start
    if stats is not None:
        stats.merge(own)
    return GroebnerBasis(tuple(Polynomial(ring, t) for t in basis), ring.order, False, own)


def _reduce_terms_basis(ring: PolyRing, basis: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Interreduce: no monomial of any element divisible by another element's leading term."""
    if any(t == (0,) for t in basis):
        return [(0,)]
    guard = ring.guard
    todo = [(t[0], n, t) for n, t in enumerate(basis)]
    heapq.heapify(todo)
    counter = itertools.count(len(todo))
    result: list[tuple[int, ...]] = []
    while todo:
        _, _, p = heapq.heappop(todo)
        r = reduce_terms(ring, p, result)
        if not r:
            continue
        if r == [0]:
            return [(0,)]
        lr = r[0]
        keep = []
        for q in result:
            if ((q[0] | guard) - lr) & guard == guard:
                heapq.heappush(todo, (q[0], next(counter), q))
            else:
                keep.append(q)
        keep.append(tuple(r))
        result = keep
    reduced = []
    for idx, g in enumerate(result):
        others = result[:idx] + result[idx + 1:]
        reduced.append(tuple(reduce_terms(ring, g, others)))
    reduced.sort(key=lambda t: t[0], reverse=True)
    return reduced


def reduce_basis(G: GroebnerBasis) -> GroebnerBasis:
    """The unique reduced basis of a Gröbner basis.

    Any generator list is accepted and interreduced; only for genuine bases is
    the result the (unique) reduced Gröbner basis.
    """
    if G.reduced:
        return G
    ring = G.ring
    terms = _reduce_terms_basis(ring, [g.terms for g in G.elements])
    return GroebnerBasis(tuple(Polynomial(ring, t) for t in terms), G.order, True, G.stats)


def groebner_basis(ideal: Ideal, order: MonomialOrder | None = None, **kwargs) -> GroebnerBasis:
    """Reduced Gröbner basis in one call."""
    return reduce_basis(buchberger(ideal, order, **kwargs))


def ideal_product(A: Ideal, B: Ideal) -> Ideal:
    if A.ring.variables != B.ring.variables:
        raise DimensionMismatch(f"{A.ring} vs {B.ring}")
    return Ideal((a * b for a in A.generators for b in B.generators), ring=A.ring)


def ideal_sum(A: Ideal, B: Ideal) -> Ideal:
    if A.ring.variables != B.ring.variables:
        raise DimensionMismatch(f"{A.ring} vs {B.ring}")
    return Ideal(list(A.generators) + list(B.generators), ring=A.ring)


def is_coprime(A: Ideal, B: Ideal, order: MonomialOrder | None = None, *,
               limits: Limits | None = None) -> bool:
    """True iff ``A + B`` is the whole ring (its reduced basis is ``{1}``)."""
    S = ideal_sum(A, B)
    ring = S.ring.with_order(order) if order is not None else S.ring
    gens = [ring.convert(g).terms for g in S.generators]
    basis = _buchberger_terms(ring, gens, limits=limits, stop_on_unit=True)
    return _reduce_terms_basis(ring, basis) == [(0,)]


def contains(G: GroebnerBasis, f: Polynomial) -> bool:
    """Ideal membership: ``f`` reduces to zero modulo the basis."""
    if not f:
        return True
    ring = G.ring
    f = ring.convert(f)
    return not reduce_terms(ring, f.terms, [g.terms for g in G.elements])


def satisfies_buchberger_criterion(G: GroebnerBasis) -> list[tuple[int, int]]:
    """Index pairs whose S-polynomial does not reduce to zero (empty when G is a basis)."""
    ring = G.ring
    elems = [g.terms for g in G.elements]
    bad = []
    for i, j in itertools.combinations(range(len(elems)), 2):
        if reduce_terms(ring, _s_terms(ring, elems[i], elems[j]), elems):
            bad.append((i, j))
    return bad
