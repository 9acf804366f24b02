import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gbsynth import (
    LEX,
    GroebnerBasis,
    Ideal,
    Limits,
    MonomialOrder,
    PolyRing,
    ResourceLimit,
    VariableTable,
    buchberger,
    contains,
    evaluate,
    groebner_basis,
    ideal_product,
    ideal_sum,
    is_coprime,
    normal_form,
    reduce_basis,
    s_polynomial,
)
from gbsynth.errors import ZeroPolynomialError
from gbsynth.groebner import satisfies_buchberger_criterion
from gbsynth.oracle import check_basis_properties

R = PolyRing(VariableTable.plain("x", "y", "z"))
x, y, z = R.gens()
FIELD = [R.field_polynomial(n) for n in R.names]
ORDERS = [LEX, MonomialOrder.grlex(), MonomialOrder.block(1)]


def elements(G):
    return {str(g) for g in G}


# -- S-polynomials ---------------------------------------------------------------

def test_s_polynomial_examples():
    f = x * y + z
    assert s_polynomial(f, f) == R.zero()
    assert s_polynomial(x + 1, y + 1) == x + y
    assert s_polynomial(x * y + x, y * y + y) == R.zero()


def test_s_polynomial_zero_input():
    with pytest.raises(ZeroPolynomialError):
        s_polynomial(x, R.zero())


# -- Buchberger -----------------------------------------------------------------

def test_buchberger_single_generator():
    G = groebner_basis(Ideal([x * x + x]))
    assert elements(G) == {"x^2 + x"}


def test_buchberger_already_a_basis():
    G = groebner_basis(Ideal([x + y, y * y + y]))
    assert elements(G) == {"x + y", "y^2 + y"}


def test_buchberger_inconsistent_system():
    G = buchberger(Ideal([x, x + 1]))
    assert any(g.is_one() for g in G)
    assert elements(reduce_basis(G)) == {"1"}


def test_buchberger_textbook_example():
    # by hand: S(x^2+y, xy+z) adds xz+y^2, S(xy+z, xz+y^2) adds y^3+z^2,
    # every other pair reduces to 0 or has coprime leading terms
    G = groebner_basis(Ideal([x * x + y, x * y + z]))
    assert elements(G) == {"x^2 + y", "x*y + z", "x*z + y^2", "y^3 + z^2"}
    assert not satisfies_buchberger_criterion(G)
    assert all(contains(G, g) for g in (x * x + y, x * y + z))


def test_resource_limit():
    ideal = Ideal([x ** 3 + y * z, y ** 3 + x * z, z ** 3 + x * y])
    with pytest.raises(ResourceLimit):
        buchberger(ideal, limits=Limits(max_basis_size=3))


# -- reduced bases ---------------------------------------------------------------

def test_reduce_basis_interreduces():
    G = reduce_basis(GroebnerBasis((x + y, x), LEX))
    assert elements(G) == {"x", "y"}
    assert G.reduced


def test_reduce_basis_is_idempotent():
    G = groebner_basis(Ideal([x * y + z, y * y + y, x * x + x]))
    again = reduce_basis(GroebnerBasis(G.elements, G.order))
    assert again.elements == G.elements


def test_reduce_basis_with_unit():
    G = reduce_basis(GroebnerBasis((x + y, R.one(), z * z), LEX))
    assert elements(G) == {"1"}


small_polys = st.sets(st.tuples(*[st.integers(0, 2)] * 3), min_size=1, max_size=4).map(R.from_monomials)


@settings(max_examples=60, deadline=None)
@given(st.lists(small_polys, min_size=1, max_size=3), st.sampled_from(ORDERS), st.booleans())
def test_reduced_basis_is_unique_across_strategies(gens, order, with_fields):
    gens = [g for g in gens if g]
    if with_fields:
        gens = gens + FIELD
    if not gens:
        return
    ideal = Ideal(gens)
    normal = groebner_basis(ideal, order, strategy="normal")
    fifo = groebner_basis(ideal, order, strategy="fifo")
    plain = groebner_basis(ideal, order, chain=False)
    assert normal.elements == fifo.elements == plain.elements
    report = check_basis_properties(normal)
    assert not report.s_pair_failures and not report.reducedness
    for g in gens:
        assert contains(normal, g)


def _variety(gens):
    return [pt for pt in itertools.product((0, 1), repeat=3)
            if all(evaluate(g, pt) == 0 for g in gens)]


@settings(max_examples=60, deadline=None)
@given(st.lists(small_polys, min_size=1, max_size=3), small_polys)
def test_membership_matches_vanishing_on_the_variety(gens, f):
    # with all field polynomials present the ideal is radical: members are exactly
    # the polynomials vanishing on its finite variety
    G = groebner_basis(Ideal(gens + FIELD))
    vanishes = all(evaluate(f, pt) == 0 for pt in _variety(gens))
    assert contains(G, f) == vanishes


# -- ideal algebra ---------------------------------------------------------------

def test_ideal_drops_zero_and_duplicates():
    I = Ideal([x, R.zero(), x, y])
    assert [str(g) for g in I] == ["x", "y"]


def test_ideal_product_examples():
    assert [str(g) for g in ideal_product(Ideal([x]), Ideal([y + 1]))] == ["x*y + x"]
    assert {str(g) for g in ideal_product(Ideal([x, y]), Ideal([z]))} == {"x*z", "y*z"}


def test_ideal_product_cardinality():
    names = [f"v{i}" for i in range(17)]
    ring = PolyRing(VariableTable.plain(*names))
    gens = ring.gens()
    A = Ideal(gens)
    B = Ideal(gens[:16])
    P = ideal_product(A, B)
    assert len(A) * len(B) == 272
    assert len(P) <= 272
    # v_i*v_j = v_j*v_i collapses duplicates
    assert len(P) == len({frozenset((i, j)) for i in range(17) for j in range(16)})


def test_ideal_sum_examples():
    assert [str(g) for g in ideal_sum(Ideal([x]), Ideal([x]))] == ["x"]
    assert elements(groebner_basis(ideal_sum(Ideal([x]), Ideal([x + 1])))) == {"1"}
    assert [str(g) for g in ideal_sum(Ideal([x]), Ideal([y]))] == ["x", "y"]


def test_is_coprime_examples():
    assert is_coprime(Ideal([x] + FIELD), Ideal([x + 1] + FIELD))
    assert not is_coprime(Ideal([x]), Ideal([x]))


@settings(max_examples=40, deadline=None)
@given(st.lists(small_polys, min_size=1, max_size=2), st.lists(small_polys, min_size=1, max_size=2))
def test_coprimality_is_symmetric_and_matches_disjoint_varieties(a, b):
    A, B = Ideal(a + FIELD), Ideal(b + FIELD)
    assert is_coprime(A, B) == is_coprime(B, A)
    assert is_coprime(A, B) == (not set(_variety(a)) & set(_variety(b)))


def test_contains_examples():
    G = groebner_basis(Ideal([x * x + x]))
    assert contains(G, R.zero())
    # x^4 + x = (x^2 + x)(x^2 + x + 1)
    assert (x * x + x) * (x * x + x + 1) == x ** 4 + x
    assert contains(G, x ** 4 + x)
    assert normal_form(x ** 4 + x, [x * x + x]) == R.zero()
    assert not contains(groebner_basis(Ideal([x])), x + 1)
