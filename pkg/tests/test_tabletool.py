import random

import pytest

from alu import ALU_PATH, C2_FORM, monomial_set
from randtables import random_table
from gbsynth import (
    LEX,
    CoprimalityViolation,
    MonomialOrder,
    NoForm,
    PolyRing,
    Row,
    TruthTable,
    VariableTable,
    assemble_ideal,
    bool_to_poly,
    check_disjoint_inputs,
    extract_polynomial_form,
    load_document,
    row_ideal,
    synthesize,
)
from gbsynth.errors import UndeclaredVariable
from gbsynth.oracle import check_basis_properties, verify_form
from gbsynth.tabletool import And, Const, Not, Or, Var, Xor, eliminated_basis

ALU_FIELDS = [f"{v}^2 + {v}" for v in
              ("carry0", "carry1", "c2", "OP0", "OP1", "a2", "a1", "a0", "b2", "b1", "b0")]


@pytest.fixture(scope="module")
def alu():
    return load_document(ALU_PATH).table("c2")


@pytest.fixture(scope="module")
def alu_result(alu):
    return synthesize(alu)


def terms(poly):
    return monomial_set(str(poly).split(" + "))


# -- Boolean rewriting -----------------------------------------------------------

R = PolyRing(VariableTable.build([], "z", ["x", "y", "w"]))


def test_bool_to_poly_examples():
    assert str(bool_to_poly(Not(Var("x")), R)) == "x + 1"
    assert str(bool_to_poly(Or((Var("x"), Var("y"))), R)) == "x*y + x + y"
    three = bool_to_poly(Or((Var("x"), Var("y"), Var("w"))), R)
    assert three == R.parse("x + y + w + x*y + x*w + y*w + x*y*w")


def test_bool_to_poly_and_xor_constants():
    assert bool_to_poly(And((Var("x"), Not(Var("y")))), R) == R.parse("x*y + x")
    assert bool_to_poly(Xor((Var("x"), Const(1), Var("x"))), R) == R.one()


def test_bool_to_poly_matches_truth_tables():
    expr = Or((And((Var("x"), Not(Var("y")))), Xor((Var("y"), Var("w")))))
    p = bool_to_poly(expr, R)
    for x in (0, 1):
        for y in (0, 1):
            for w in (0, 1):
                want = (x and not y) or (y ^ w)
                assert p.evaluate({"x": x, "y": y, "w": w}) == int(bool(want))


def test_bool_to_poly_undeclared():
    with pytest.raises(UndeclaredVariable):
        bool_to_poly(Var("q"), R)


# -- row ideals ------------------------------------------------------------------

def test_row_ideal_equal_operands_row(alu):
    gens = {str(g) for g in row_ideal(alu.rows[14], alu.variables, alu.ring)}
    assert gens == {"OP0 + 1", "OP1", "a2 + b2", "a1 + b1", "a0 + b0", "c2 + a2", *ALU_FIELDS}
    assert len(gens) == 17


def test_row_ideal_largest_row(alu):
    gens = {str(g) for g in row_ideal(alu.rows[1], alu.variables, alu.ring)}
    assert gens == {"OP0", "OP1 + 1", "a2 + 1", "b2", "c2 + a2", *ALU_FIELDS}


def test_row_ideal_sum_row(alu):
    ring = alu.ring
    expected = [ring.parse(t) for t in ("OP0 + 1", "OP1 + 1", "c2 + a2 + b2 + carry1", "carry0 + a0*b0")]
    carry1 = (ring.var("carry1") + ring.parse("a1*b1*carry0")
              + (ring.parse("a1*b1*carry0 + 1")) * ring.parse("a1*b1 + a1*carry0 + b1*carry0"))
    expected.append(carry1)
    gens = set(row_ideal(alu.rows[0], alu.variables, ring))
    assert gens == set(expected) | {ring.parse(f) for f in ALU_FIELDS}


def test_row_ideal_without_equations():
    vt = VariableTable.build([], "z", ["x"])
    gens = {str(g) for g in row_ideal(Row(()), vt)}
    assert gens == {"z^2 + z", "x^2 + x"}


# -- assembly and extraction -------------------------------------------------------

def single_row():
    vt = VariableTable.build([], "z", ["x"])
    ring = PolyRing(vt)
    return TruthTable(vt, (Row((ring.parse("z + x"),)),), ring)


def test_assemble_single_row():
    G = assemble_ideal(single_row())
    assert [str(g) for g in G] == ["z + x", "x^2 + x"]
    form = extract_polynomial_form(G, single_row().variables)
    assert str(form) == "z = x"


def test_assemble_rejects_rows_sharing_a_point():
    vt = VariableTable.build([], "z", ["x"])
    ring = PolyRing(vt)
    table = TruthTable(vt, (Row((ring.parse("z + x"),)),
                            Row((ring.parse("x"), ring.parse("z")))), ring)
    with pytest.raises(CoprimalityViolation) as err:
        assemble_ideal(table)
    assert err.value.rows == (1, 2)
    assert err.value.assignment == (0,)


def test_contradictory_rows_are_coprime_but_have_no_form():
    # varieties are disjoint in the full space, so the ideals are coprime,
    # yet the output is not a function of the inputs
    vt = VariableTable.build([], "z", ["x"])
    ring = PolyRing(vt)
    table = TruthTable(vt, (Row((ring.parse("x"), ring.parse("z"))),
                            Row((ring.parse("x"), ring.parse("z + 1")))), ring)
    with pytest.raises(NoForm):
        synthesize(table)


def test_alu_basis_shape(alu_result, alu):
    G = alu_result.full_basis
    assert len(G.boolean_elements()) == 4
    inputs = alu.variables.inputs
    assert {str(g) for g in G.field_polynomials()} >= {f"{v}^2 + {v}" for v in inputs}
    Gk = [g for g in alu_result.eliminated_basis if g not in G.field_polynomials()]
    assert len(Gk) == 2
    assert "OP0*OP1 + OP0 + OP1 + 1" in {str(g) for g in Gk}


def test_alu_form(alu_result):
    form = alu_result.form
    assert terms(form.rhs) == monomial_set(C2_FORM)
    assert form.is_multilinear()
    assert form.poly.leading_term() == alu_result.form.poly.ring.var("c2").leading_term()
    assert form.xor_gates() == 12
    assert alu_result.excluded_rows == (16,)
    assert alu_result.verified


def test_form_is_in_the_eliminated_basis(alu_result, alu):
    assert alu_result.form.poly in alu_result.eliminated_basis
    inter = alu.variables.intermediates
    assert all(not g.uses_any(inter) for g in alu_result.eliminated_basis)
    assert set(alu_result.eliminated_basis) <= set(alu_result.full_basis.elements)


def test_extract_no_form():
    vt = VariableTable.build([], "z", ["x"])
    ring = PolyRing(vt)
    G = assemble_ideal(TruthTable(vt, (Row((ring.parse("z*x + z"),)),), ring), check=False)
    with pytest.raises(NoForm):
        extract_polynomial_form(G, vt)


def test_synthesize_all_rows_unconstrained():
    vt = VariableTable.build([], "z", ["x"])
    ring = PolyRing(vt)
    with pytest.raises(NoForm):
        synthesize(TruthTable(vt, (Row((ring.parse("x"),)),), ring))


def _point_rows(ring, names, f):
    rows = []
    for p in range(1 << len(names)):
        bits = [(p >> (len(names) - 1 - j)) & 1 for j in range(len(names))]
        eqs = [ring.var(n) + b for n, b in zip(names, bits)]
        eqs.append(ring.var("z") + f(*bits))
        rows.append(Row(tuple(eqs)))
    return rows


def test_synthesize_xor():
    vt = VariableTable.build([], "z", ["x", "y"])
    ring = PolyRing(vt)
    table = TruthTable(vt, tuple(_point_rows(ring, ["x", "y"], lambda a, b: a ^ b)), ring)
    assert str(synthesize(table).form) == "z = x + y"


def test_synthesize_constant_one():
    vt = VariableTable.build([], "z", ["x", "y"])
    ring = PolyRing(vt)
    table = TruthTable(vt, tuple(_point_rows(ring, ["x", "y"], lambda a, b: 1)), ring)
    result = synthesize(table)
    assert str(result.form.poly) == "z + 1"
    assert result.form.poly.leading_term() == ring.var("z").leading_term()


def test_synthesize_eliminates_intermediates():
    vt = VariableTable.build(["t"], "z", ["x", "y"])
    ring = PolyRing(vt)
    row = Row((ring.parse("t + x*y"), ring.parse("z + t + x")))
    result = synthesize(TruthTable(vt, (row,), ring))
    assert str(result.form) == "z = x*y + x"


def test_block_order_alu(alu):
    order = MonomialOrder.block(alu.variables.k + 1)
    result = synthesize(alu, order)
    assert verify_form(result.form, alu).passed
    assert result.form.is_multilinear()
    assert check_basis_properties(result.full_basis, alu.variables).ok


# -- disjointness ------------------------------------------------------------------

def test_disjoint_alu(alu):
    assert check_disjoint_inputs(alu).disjoint


def test_disjoint_duplicate_rows():
    vt = VariableTable.build([], "z", ["x"])
    ring = PolyRing(vt)
    row = Row((ring.parse("z + x"),))
    report = check_disjoint_inputs(TruthTable(vt, (row, row), ring))
    assert not report.disjoint
    assert report.witness[:2] == (1, 2)
    assert report.witness[2] in {(0,), (1,)}


def test_disjoint_guarded_rows():
    vt = VariableTable.build([], "z", ["x"])
    ring = PolyRing(vt)
    table = TruthTable(vt, (Row((ring.parse("x"), ring.parse("z"))),
                            Row((ring.parse("x + 1"), ring.parse("z")))), ring)
    assert check_disjoint_inputs(table).disjoint


def test_disjoint_cap_skips():
    vt = VariableTable.build([], "z", ["x"])
    ring = PolyRing(vt)
    table = TruthTable(vt, (Row((ring.parse("z + x"),)),), ring)
    assert check_disjoint_inputs(table, max_inputs=0).skipped


def test_overlapping_but_coprime_rows_fall_back_to_groebner():
    # inputs overlap, but the intermediate separates the varieties
    vt = VariableTable.build(["t"], "z", ["x"])
    ring = PolyRing(vt)
    table = TruthTable(vt, (Row((ring.parse("t"), ring.parse("z + x"))),
                            Row((ring.parse("t + 1"), ring.parse("z + x")))), ring)
    assert not check_disjoint_inputs(table).disjoint
    result = synthesize(table)
    assert result.stats.coprimality == "groebner"
    assert str(result.form) == "z = x"


# -- invariants --------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(25))
def test_fold_order_independence(seed):
    rng = random.Random(seed)
    table, _ = random_table(rng, rng.randint(1, 4), max_dont_cares=3, intermediate=seed % 2 == 0)
    base = synthesize(table)
    perm = list(range(len(table.rows)))
    rng.shuffle(perm)
    shuffled = synthesize(table.reordered(perm))
    assert shuffled.full_basis.elements == base.full_basis.elements
    assert str(shuffled.form) == str(base.form)


def test_determinism(alu):
    first = synthesize(alu)
    second = synthesize(alu)
    assert str(first.form) == str(second.form)
    assert first.full_basis.elements == second.full_basis.elements


def test_eliminated_basis_drops_intermediates(alu_result, alu):
    Gk = eliminated_basis(alu_result.full_basis, alu.variables)
    assert len(Gk) == len(alu_result.eliminated_basis)
    assert len(alu_result.full_basis) > len(Gk)


def test_lex_default(alu_result):
    assert alu_result.full_basis.order == LEX
