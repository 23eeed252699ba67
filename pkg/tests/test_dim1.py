import pytest

from weakunits import dim1, models
from weakunits.errors import NoPreimage
from weakunits.units import find_unit_objects, synth_constraints


@pytest.mark.parametrize("name", ["m3", "z2p", "euz"])
def test_kelly_axioms_and_agreement(name):
    m = models.GENERATORS[name]()
    units = dim1.find_units_1(m)
    assert units == [(U.I, U.alpha) for U in find_unit_objects(m)]
    for I, a in units:
        u = dim1.construct_lr_1(m, I, a)
        rep = dim1.verify_kelly_1(m, u)
        assert rep.ok, rep.failures
        assert dim1.verify_assoc_1(m, u)
        p = synth_constraints(m, [U for U in find_unit_objects(m) if U.alpha == a][0])
        assert (u.lam, u.rho) == (p.lam, p.rho)


def test_units_of_m3_and_z2p():
    assert dim1.find_units_1(models.m3()) == [(0, 0)]
    assert dim1.find_units_1(models.z2p()) == [(0, 0), (0, 1)]


def test_discretized_zg_matches_z2p():
    d = models.discretize(models.zg())
    assert dim1.find_units_1(d) == dim1.find_units_1(models.z2p())


def test_non_discrete_model_rejected():
    with pytest.raises(ValueError):
        dim1.find_units_1(models.zg())


def test_cyclic_monoid_unit_isos():
    m = models.monoid_model(models.cyclic_table(4), "Z4")
    assert dim1.find_units_1(m) == [(0, 0)]
    u = dim1.construct_lr_1(m, 0, 0)
    assert dim1.unit_isos_1(m, u, u) == [0]
    assert dim1.canonical_unit_iso_1(m, u, u) == 0


def test_cross_unit_iso_in_z2p():
    m = models.z2p()
    e = dim1.construct_lr_1(m, 0, 0)
    u = dim1.construct_lr_1(m, 0, 1)
    # alpha # f = (f f) # beta forces f = u between the two units.
    assert dim1.unit_isos_1(m, e, u) == [1]
    assert dim1.canonical_unit_iso_1(m, e, u) == 1


def test_wrong_lambda_detected():
    m = models.z2p()
    u = dim1.construct_lr_1(m, 0, 1)
    bad = dim1.Unit1(0, 1, {**u.lam, 0: 0}, u.rho)
    rep = dim1.verify_kelly_1(m, bad)
    assert not rep.ok and ("axiom L", (0,)) in rep.failures


def test_lambda_for_a_non_unit_is_reported():
    # In the two-element meet semilattice only 1 is a unit; 0 @ 1 = 0 has no map to 1.
    m = models.monoid_model([[0, 0], [0, 1]], "and")
    assert dim1.find_units_1(m) == [(1, 1)]
    with pytest.raises(NoPreimage):
        dim1.construct_lr_1(m, 0, 0)
