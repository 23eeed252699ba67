"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line.  Certificates
written along the way (through the CLI verbs) are collected in a shared
directory and rechecked by the last criterion.
"""

import contextlib
import json

import pytest

from weakunits import dim1, models
from weakunits.arrowcat import build_arrow_model, lift_unit, verify_theorem_B
from weakunits.certificate import build_certificate, load_certificate, recheck, save_certificate
from weakunits.cli import main
from weakunits.equivalence import is_cancellable, is_equi_arrow
from weakunits.gps import ci_to_gps, gps_to_ci, synth_U_from_gps_morphism, verify_theorem_E
from weakunits.kernel import recording, validate_model
from weakunits.modelio import save_model
from weakunits.units import (
    construct_unit_morphism,
    enumerate_constraint_packs,
    enumerate_unit_morphisms,
    find_unit_objects,
    synth_constraints,
    synth_unit_morphism_cells,
    verify_independence,
    verify_theorem_A,
    verify_theorem_C,
)

SHIPPED = ["m3", "z2p", "zg", "chp"]
MODELS = {k: models.GENERATORS[k]() for k in SHIPPED}
FAULTS = [
    ("vcomp", (0, 0), 1, "vcomp-assoc"),
    ("hcomp", (1, 1), 1, "interchange"),
    ("tensor2", (1, 1), 1, "tensor-functor"),
    ("tensor2", (0, 0), 1, "tensor-assoc"),
]


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    d = tmp_path_factory.mktemp("acceptance")
    for k, m in MODELS.items():
        save_model(m, d / f"{k}.json")
    (d / "certs").mkdir()
    return d


@contextlib.contextmanager
def criterion(request, n, text):
    ok = False
    try:
        yield
        ok = True
    finally:
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({text})"
        tr = request.config.pluginmanager.getplugin("terminalreporter")
        if tr is not None:
            tr.write_line("")
            tr.write_line(line)
        else:
            print(line)


def cli(workdir, *argv, cert=None):
    args = list(argv)
    if cert:
        args += ["--out", str(workdir / "certs" / f"{cert}.json")]
    return main(args)


def twin(m, c):
    (other,) = [d for d in m.hom2(m.src2(c), m.dst2(c)) if d != c]
    return other


def test_criterion_1_validation(request, workdir):
    with criterion(request, 1, "generators valid, injected faults named"):
        for k, m in MODELS.items():
            rep = validate_model(m)
            assert rep.ok and not rep.violations and not rep.structural, k
            assert cli(workdir, "validate", str(workdir / f"{k}.json"), cert=f"1-{k}") == 0
        for table, key, value, family in FAULTS:
            bad = models.with_entry(MODELS["zg"], table, key, value)
            rep = validate_model(bad)
            assert not rep.structural and family in rep.axioms(), (table, rep.axioms())
            path = workdir / f"fault-{family}.json"
            save_model(bad, path)
            assert cli(workdir, "validate", str(path), cert=f"1-fault-{family}") == 1


def test_criterion_2_theorem_A(request, workdir):
    with criterion(request, 2, "pentagon for every unit, twisted associator fails"):
        for k, m in MODELS.items():
            for U in find_unit_objects(m):
                rep = verify_theorem_A(m, U, synth_constraints(m, U))
                assert rep.ok, (k, rep.failures())
                names = {c[0] for c in rep.checks}
                assert {"short pentagon", "full pentagon"} <= names
            assert cli(workdir, "verify", str(workdir / f"{k}.json"), "A", cert=f"2-{k}") == 0
        m = MODELS["zg"]
        for U in find_unit_objects(m):
            p = synth_constraints(m, U)
            with recording() as recs:
                rep = verify_theorem_A(m, U, p, A=twin(m, p.A))
            failed = {name for name, _ in rep.failures()}
            assert {"short pentagon", "full pentagon"} <= failed
            save_certificate(
                build_certificate("A", m, recs, rep, {"A": twin(m, p.A)}),
                workdir / "certs" / f"2-zg-twisted-{U.alpha}.json",
            )


def test_criterion_3_independence(request, workdir):
    with criterion(request, 3, "every constraint choice in ZG gives the same associator"):
        m = MODELS["zg"]
        U = [U for U in find_unit_objects(m) if m.label(1, U.alpha) == "u"][0]
        packs = list(enumerate_constraint_packs(m, U))
        assert len({p.choice() for p in packs}) == len(packs) >= 2
        assert len({p.A for p in packs}) == 1
        rep = verify_independence(m, U, seeds=range(8))
        assert rep.ok
        assert rep.details["seed_choices"] >= 2
        assert rep.details["seed_associators"] == [packs[0].A]
        assert cli(
            workdir, "verify", str(workdir / "zg.json"), "A", "--all-choices", "--unit", f"{U.I},{U.alpha}",
            cert="3-zg-all-choices",
        ) == 0


def test_criterion_4_dimension_agreement(request, workdir):
    with criterion(request, 4, "1-dimensional constraints agree with the 2-dimensional ones"):
        for k in ("m3", "z2p"):
            m = MODELS[k]
            dim1.require_discrete(m)
            units = find_unit_objects(m)
            assert dim1.find_units_1(m) == [(U.I, U.alpha) for U in units]
            for U in units:
                p = synth_constraints(m, U)
                u = dim1.construct_lr_1(m, U.I, U.alpha)
                assert (u.lam, u.rho) == (p.lam, p.rho)
                rep = dim1.verify_kelly_1(m, u)
                assert rep.ok, rep.failures
            assert cli(workdir, "verify", str(workdir / f"{k}.json"), "dim1", cert=f"4-{k}") == 0


def test_criterion_5_theorem_B(request, workdir):
    with criterion(request, 5, "cross-unit morphism is a semi-monoid map by both routes"):
        for k in ("zg", "z2p"):
            m = MODELS[k]
            e, u = find_unit_objects(m)
            p, q = synth_constraints(m, e), synth_constraints(m, u)
            mor = construct_unit_morphism(m, e, u, p, q).morphism
            am = build_arrow_model(m)
            assert validate_model(am.model).ok
            rep = verify_theorem_B(m, mor, p, q, am=am)
            assert rep.ok, rep.failures()
            assert rep.details["direct"] is rep.details["arrow"] is True
            lifted, lrep = lift_unit(m, am, mor)
            assert lrep.ok
            assert is_cancellable(am.model, lifted.I) and is_equi_arrow(am.model, lifted.alpha)
            assert cli(workdir, "verify", str(workdir / f"{k}.json"), "B", cert=f"5-{k}") == 0


def test_criterion_6_theorem_C(request, workdir):
    with criterion(request, 6, "the 2-category of units is contractible"):
        for k, m in MODELS.items():
            rep = verify_theorem_C(m)
            assert rep.ok, (k, rep.failures())
            for counts in rep.details["counts"].values():
                assert counts["morphisms"] >= 1
                assert counts["unique"] == counts["parallel_pairs"]
            assert cli(workdir, "verify", str(workdir / f"{k}.json"), "C", cert=f"6-{k}") == 0
        # In ZG the unique 2-morphism is picked out of two parallel 2-cells.
        m = MODELS["zg"]
        U = find_unit_objects(m)[1]
        mors = enumerate_unit_morphisms(m, U, U)
        assert all(len(m.hom2(x.u, y.u)) == 2 for x in mors for y in mors)


def test_criterion_7_theorem_E(request, workdir):
    with criterion(request, 7, "unit objects and GPS units agree"):
        for k, m in MODELS.items():
            us = find_unit_objects(m)
            ps = {U: synth_constraints(m, U) for U in us}
            for U, p in ps.items():
                g, rep = ci_to_gps(m, U, p)
                assert rep.ok, (k, rep.failures())
                assert rep.details["TA2"] == rep.details["TA3"]
                U2, p2, rep2 = gps_to_ci(m, g)
                assert rep2.ok
                assert ci_to_gps(m, U2, p2)[0].K == g.K
            for UI in us:
                for UJ in us:
                    for mor in enumerate_unit_morphisms(m, UI, UJ):
                        Ul, Ur = synth_unit_morphism_cells(m, mor, ps[UI], ps[UJ])
                        Uw, wrep = synth_U_from_gps_morphism(m, ps[UI], ps[UJ], mor.u, Ul, Ur)
                        assert wrep.ok and Uw == mor.U
            rep = verify_theorem_E(m)
            assert rep.ok, (k, rep.failures()[:5])
            assert all(a == b == c for a, b, c in rep.details["counts"]["morphisms (U, E, G) per pair"])
            assert cli(workdir, "verify", str(workdir / f"{k}.json"), "E", cert=f"7-{k}") == 0


def test_criterion_8_certificates_recheck(request, workdir):
    with criterion(request, 8, "every certificate rechecks bit-exactly"):
        certs = sorted((workdir / "certs").glob("*.json"))
        prefixes = {c.name.split("-")[0] for c in certs}
        assert prefixes == {str(n) for n in range(1, 8)}, "criteria 1-7 must run first"
        equations = 0
        for path in certs:
            assert main(["report", str(path), "--recheck"]) == 0, path.name
            cert = load_certificate(path)
            res = recheck(cert)
            assert res.ok and res.checked == len(cert["checked_equations"])
            equations += res.checked
        assert equations > 0
        # Negative control: a flipped value is caught.
        cert = load_certificate(workdir / "certs" / "2-zg.json")
        cert["checked_equations"][0]["values"] = [v + 1 for v in cert["checked_equations"][0]["values"]]
        assert not recheck(cert).ok
        print(json.dumps({"certificates": len(certs), "equations": equations}))
