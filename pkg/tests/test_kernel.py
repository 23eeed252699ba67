import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

import oracles
from weakunits import models
from weakunits.errors import BoundaryError, BudgetExceeded, StructuralError
from weakunits.kernel import (
    Equation,
    Limits,
    TwoCategoryModel,
    check,
    check_equation,
    eval2,
    expr_from_json,
    expr_to_json,
    not_recording,
    recording,
    validate_model,
)

ALL = ["m3", "z2p", "zg", "chp", "euz"]

# Single-entry faults in ZG and the family each must be named under.
FAULTS = [
    ("vcomp", (0, 0), 1, "vcomp-assoc"),
    ("hcomp", (1, 1), 1, "interchange"),
    ("tensor2", (1, 1), 1, "tensor-functor"),
    ("tensor2", (0, 0), 1, "tensor-assoc"),
]


@pytest.mark.parametrize("name", ALL)
def test_generators_validate_and_agree_with_oracle(name):
    m = models.GENERATORS[name]()
    assert validate_model(m).ok
    assert oracles.full_axiom_check(m) == set()


def test_generator_sizes():
    sizes = {k: (m.n_objects, m.n_one, m.n_two) for k, m in models.shipped().items()}
    # hom(I,I) in Z2P has two 1-cells with identity 2-cells; ZG has 2 labels per pair.
    assert sizes == {"M3": (3, 3, 3), "Z2P": (2, 3, 3), "ZG": (2, 3, 9), "CHP": (2, 3, 5)}


def test_discretize_keeps_identities(zg):
    d = models.discretize(zg)
    assert d.n_two == d.n_one
    assert validate_model(d).ok


@pytest.mark.parametrize("table,key,value,family", FAULTS)
def test_injected_fault_is_named(zg, table, key, value, family):
    bad = models.with_entry(zg, table, key, value)
    rep = validate_model(bad)
    assert not rep.structural
    assert family in rep.axioms()
    assert family in oracles.full_axiom_check(bad)


def test_non_associative_monoid_table():
    m = models.monoid_model([[0, 1, 2], [1, 2, 0], [2, 0, 0]], "bad")
    assert validate_model(m).axioms() == {"tensor-assoc"}


def test_boundary_fault_is_structural(zg):
    # e=>e:0 composed with itself redirected to a cell e=>u.
    bad = models.with_entry(zg, "vcomp", (0, 0), 2)
    rep = validate_model(bad)
    assert [i.axiom for i in rep.structural] and rep.structural[0].axiom == "boundary"
    assert not rep.violations


def test_missing_and_spurious_entries(z2p):
    arr = z2p.vcomp_table.copy()
    arr[0, 0] = -1
    rep = validate_model(_replace(z2p, vcomp=arr))
    assert "missing-entry" in rep.axioms()
    arr = z2p.vcomp_table.copy()
    arr[0, 1] = 0  # cells 0 and 1 are not composable
    rep = validate_model(_replace(z2p, vcomp=arr))
    assert "spurious-entry" in rep.axioms()


def test_dangling_ids():
    m = TwoCategoryModel(
        objects=1, one_cells=[(0, 0)], id1=[0], comp1={(0, 0): 0},
        two_cells=[(0, 0)], id2=[0], vcomp={(0, 0): 0, (5, 0): 0}, hcomp={(0, 0): 0},
        tensor_obj={(0, 0): 0}, tensor1={(0, 0): 0}, tensor2={(0, 0): 0},
    )
    assert "dangling-id" in validate_model(m).axioms()
    m = TwoCategoryModel(
        objects=1, one_cells=[(0, 3)], id1=[0], comp1={(0, 0): 0},
        two_cells=[(0, 0)], id2=[0], vcomp={(0, 0): 0}, hcomp={(0, 0): 0},
        tensor_obj={(0, 0): 0}, tensor1={(0, 0): 0}, tensor2={(0, 0): 0},
    )
    assert "dangling-id" in validate_model(m).axioms()


def test_limits():
    with pytest.raises(BudgetExceeded):
        TwoCategoryModel(
            objects=3, one_cells=[(0, 0), (1, 1), (2, 2)], id1=[0, 1, 2], comp1={}, two_cells=[], id2=[0, 1, 2],
            vcomp={}, hcomp={}, tensor_obj={}, tensor1={}, tensor2={}, limits=Limits(objects=2),
        )


def _replace(m, **tables):
    arrays = {t: getattr(m, f"{t}_table") for t in models.TABLES}
    arrays.update(tables)
    return TwoCategoryModel(
        objects=m.n_objects, one_cells=list(zip(m.one_src.tolist(), m.one_dst.tolist())), id1=m.id1_table,
        two_cells=list(zip(m.two_src.tolist(), m.two_dst.tolist())), id2=m.id2_table, limits=None, **arrays,
    )


def test_tables_are_read_only(zg):
    with pytest.raises(ValueError):
        zg.vcomp_table[0, 0] = 1


def test_absent_lookup_raises(zg):
    with pytest.raises(StructuralError):
        zg.vcomp(0, 4)  # e=>e then u=>e: not composable


def test_inverse_and_hom_indexes(zg):
    # In ZG every 2-cell between e's and u's is invertible; inverses negate labels.
    lab = zg.labels["two_cells"]
    assert lab[zg.inverse(lab.index("e=>u:1"))] == "u=>e:1"
    assert zg.hom2(0, 1) == (2, 3)
    assert zg.hom1(0, 0) == (0, 1)
    assert len(zg.invertible_cells(0, 1)) == 2


def test_term_boundary_errors(zg):
    e, u = zg.one(0), zg.one(1)
    with pytest.raises(BoundaryError):
        zg.two(0) >> zg.two(4)
    with pytest.raises(BoundaryError):
        zg.one(2) * e  # idX then e: X is not I
    assert (e * u).value == 1
    assert (zg.two(2) >> zg.two(4)).value == zg.labels["two_cells"].index("e=>e:0")


def test_check_rejects_non_parallel_sides(zg):
    with pytest.raises(BoundaryError):
        check("bad", zg.two(0), zg.two(2))


def test_recording_and_not_recording(zg):
    with recording() as recs:
        check("a", zg.two(0), zg.two(0))
        with not_recording():
            check("hidden", zg.two(0), zg.two(1))
        check("b", zg.two(0), zg.two(1))
    assert [(r.equation.name, r.result) for r in recs] == [("a", True), ("b", False)]


# ---------------------------------------------------------------------------
# Properties


def cells(m):
    return st.integers(0, m.n_two - 1)


MODELS = {k: models.GENERATORS[k]() for k in ALL}


@st.composite
def model_and_expr(draw, depth=3):
    """A random well-typed 2-cell term."""
    m = MODELS[draw(st.sampled_from(ALL))]
    return m, draw(_expr(m, depth))


def _expr(m, depth):
    @st.composite
    def go(draw, d):
        if d == 0 or draw(st.booleans()):
            if draw(st.booleans()):
                return m.two(draw(cells(m)))
            return m.one(draw(st.integers(0, m.n_one - 1))).as2()
        t = draw(go(d - 1))
        op = draw(st.sampled_from(["v", "h", "t"]))
        if op == "t":
            return t @ draw(go(d - 1))
        if op == "v":
            options = [c for c in range(m.n_two) if m.src2(c) == t.dst]
            return t >> m.two(draw(st.sampled_from(options)))
        options = [c for c in range(m.n_two) if m.src1(m.src2(c)) == m.dst1(t.src)]
        return t * m.two(draw(st.sampled_from(options)))

    return go(depth)


@settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(model_and_expr())
def test_eval_agrees_with_term_and_json_round_trip(me):
    m, t = me
    assert eval2(m, t.expr) == t.value
    data = expr_to_json(t.expr)
    assert expr_from_json(data) == t.expr
    assert check_equation(m, Equation(t.expr, expr_from_json(data)))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["zg", "chp", "z2p"]), st.data())
def test_interchange_and_tensor_functoriality_hold(name, data):
    m = MODELS[name]
    a = data.draw(cells(m))
    b = data.draw(st.sampled_from([c for c in range(m.n_two) if m.src2(c) == m.dst2(a)]))
    c = data.draw(st.sampled_from([c for c in range(m.n_two) if m.src1(m.src2(c)) == m.dst1(m.src2(a))]))
    d = data.draw(st.sampled_from([x for x in range(m.n_two) if m.src2(x) == m.dst2(c)]))
    A, B, C, D = (m.two(x) for x in (a, b, c, d))
    assert check("interchange", (A >> B) * (C >> D), (A * C) >> (B * D))
    assert check("tensor functor", (A >> B) @ (C >> D), (A @ C) >> (B @ D))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["z2p", "zg", "chp", "euz"]), st.sampled_from(models.TABLES), st.data())
def test_random_single_fault_validator_agrees_with_oracle(name, table, data):
    m = MODELS[name]
    arr = getattr(m, f"{table}_table")
    keys = list(zip(*np.nonzero(arr >= 0)))
    a, b = data.draw(st.sampled_from(keys))
    n = {"tensor_obj": m.n_objects, "comp1": m.n_one, "tensor1": m.n_one}.get(table, m.n_two)
    v = data.draw(st.integers(0, n - 1))
    bad = models.with_entry(m, table, (int(a), int(b)), v)
    rep = validate_model(bad)
    if rep.structural:
        return
    assert rep.ok == (oracles.full_axiom_check(bad) == set())
