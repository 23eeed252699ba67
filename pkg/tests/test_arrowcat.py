from itertools import product

import pytest

import oracles
from weakunits import models
from weakunits.arrowcat import build_arrow_model, lift_unit, verify_theorem_B
from weakunits.errors import BudgetExceeded, CertificationError, StructuralError
from weakunits.kernel import validate_model
from weakunits.units import (
    UnitMorphism,
    construct_unit_morphism,
    find_unit_objects,
    identity_morphism,
    synth_constraints,
)

SIZES = {"m3": (3, 3, 3), "z2p": (3, 9, 9), "zg": (3, 33, 513), "chp": (3, 17, 65)}


@pytest.fixture(scope="module")
def arrows():
    return {k: build_arrow_model(models.GENERATORS[k]()) for k in SIZES}


def naive_counts(m):
    """Squares and cylinders counted straight from the definitions."""
    sq = []
    for x, y in product(range(m.n_one), repeat=2):
        for f0, f1 in product(range(m.n_one), repeat=2):
            if (m.src1(f0), m.dst1(f0), m.src1(f1), m.dst1(f1)) != (m.src1(x), m.src1(y), m.dst1(x), m.dst1(y)):
                continue
            for F in range(m.n_two):
                if m.src2(F) == m.comp1(x, f1) and m.dst2(F) == m.comp1(f0, y):
                    sq.append((x, y, f0, f1, F))
    cyl = 0
    for (x, y, f0, f1, F), (x2, y2, g0, g1, G) in product(sq, repeat=2):
        if (x, y) != (x2, y2):
            continue
        for a, b in product(range(m.n_two), repeat=2):
            if (m.src2(a), m.dst2(a), m.src2(b), m.dst2(b)) != (f0, g0, f1, g1):
                continue
            if m.vcomp(F, m.hcomp(a, m.id2(y))) == m.vcomp(m.hcomp(m.id2(x), b), G):
                cyl += 1
    return len(sq), cyl


@pytest.mark.parametrize("name", SIZES)
def test_sizes_frozen_and_naive(arrows, name):
    am = arrows[name].model
    assert (am.n_objects, am.n_one, am.n_two) == SIZES[name]
    if name != "zg":
        assert naive_counts(models.GENERATORS[name]()) == SIZES[name][1:]


@pytest.mark.parametrize("name", SIZES)
def test_arrow_models_validate(arrows, name):
    assert validate_model(arrows[name].model).ok


def test_small_arrow_model_passes_oracle(arrows):
    assert oracles.full_axiom_check(arrows["z2p"].model) == set()


def test_square_lookup(arrows):
    am = arrows["zg"]
    s = am.squares[5]
    assert am.square_id(*s) == 5
    with pytest.raises(StructuralError):
        am.square_id(0, 0, 0, 0, 99)
    assert am.provenance()["construction"] == "arrow"


def test_budget():
    with pytest.raises(BudgetExceeded):
        build_arrow_model(models.zg(), budget=100)


def test_identity_morphism_lifts_to_strict_unit(arrows):
    m = models.m3()
    (U,) = find_unit_objects(m)
    lifted, rep = lift_unit(m, arrows["m3"], identity_morphism(m, U))
    assert rep.ok
    am = arrows["m3"]
    assert lifted.I == m.id1(0)
    assert am.components(am.model.id2(lifted.alpha)) == (0, 0)


def test_non_morphism_rejected(arrows):
    m = models.absorbing_endo()
    U = find_unit_objects(m)[0]
    z = m.labels["one_cells"].index("z")
    with pytest.raises(CertificationError):
        lift_unit(m, build_arrow_model(m), UnitMorphism(U, U, z, m.id2(m.comp1(U.alpha, z))))


@pytest.mark.parametrize("name", SIZES)
def test_theorem_B_all_pairs(arrows, name):
    m = models.GENERATORS[name]()
    us = find_unit_objects(m)
    packs = {U: synth_constraints(m, U) for U in us}
    for UI in us:
        for UJ in us:
            mor = construct_unit_morphism(m, UI, UJ, packs[UI], packs[UJ]).morphism
            rep = verify_theorem_B(m, mor, packs[UI], packs[UJ], am=arrows[name])
            assert rep.ok, rep.failures()
            assert rep.details["direct"] and rep.details["arrow"]


def test_theorem_B_negative_control(arrows):
    # Replacing the target associator by its twin breaks both routes, and they agree.
    m = models.zg()
    e, u = find_unit_objects(m)
    p, q = synth_constraints(m, e), synth_constraints(m, u)
    mor = construct_unit_morphism(m, e, u, p, q).morphism
    (other,) = [c for c in m.hom2(m.src2(q.A), m.dst2(q.A)) if c != q.A]
    rep = verify_theorem_B(m, mor, p, q, am=arrows["zg"], A1=other)
    assert not rep.details["direct"] and not rep.details["arrow"]
    assert ("routes agree", True, {"direct": False, "arrow": False}) in rep.checks
