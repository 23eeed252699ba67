"""Command-line front end.

Exit codes: 0 when the claim holds, 1 when it fails mathematically (the
certificate then holds the counterexample), 2 when the input is broken.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import dim1, models
from .certificate import build_certificate, cell, load_certificate, recheck, save_certificate
from .errors import BoundaryError, CertificationError, DivisionError, StructuralError, WeakUnitsError
from .kernel import TwoCategoryModel, recording, validate_model
from .modelio import dumps, load_model, model_to_json
from .reports import Report

OK, FAIL, BROKEN = 0, 1, 2


class Broken(Exception):
    """Input problem that should end the command with exit code 2."""


def _emit(args, cert: dict | None, lines: list[str]) -> None:
    for line in lines:
        print(line)
    if cert is not None and getattr(args, "out", None):
        save_certificate(cert, args.out)


def _load(args) -> TwoCategoryModel:
    try:
        m = load_model(args.model)
    except (OSError, StructuralError) as exc:
        raise Broken(str(exc)) from exc
    if m.load_issues:
        raise Broken(f"{args.model}: {len(m.load_issues)} table entries keyed on unknown ids")
    return m


def _gate(args, m: TwoCategoryModel):
    """Validate before running a theorem; returns a failing certificate or None."""
    rep = validate_model(m)
    if rep.structural:
        raise Broken(f"{m.name}: structural problems: {[i.message for i in rep.structural[:3]]}")
    if rep.violations and not args.allow_invalid:
        r = Report("model is valid")
        for v in rep.violations:
            r.need(v.axiom, False, v.to_json())
        return build_certificate("validate", m, [], r)
    return None


def _units(m, args):
    from .units import find_unit_objects

    units = find_unit_objects(m)
    if getattr(args, "unit", None):
        try:
            I, a = (int(v) for v in args.unit.split(","))
        except ValueError as exc:
            raise Broken(f"--unit wants I,alpha, got {args.unit!r}") from exc
        units = [U for U in units if (U.I, U.alpha) == (I, a)]
        if not units:
            raise Broken(f"({I}, {a}) is not a unit object")
    return units


def pack_witnesses(m, p, prefix: str = "") -> dict:
    w = {}
    for X in sorted(p.lam):
        w[f"{prefix}lambda[{X}]"] = cell(1, p.lam[X])
        w[f"{prefix}L[{X}]"] = cell(2, p.L[X], "L")
        w[f"{prefix}rho[{X}]"] = cell(1, p.rho[X])
        w[f"{prefix}R[{X}]"] = cell(2, p.R[X], "R")
    for f in sorted(p.lam_nat):
        w[f"{prefix}lambda_nat[{f}]"] = cell(2, p.lam_nat[f], "lambda naturality square")
        w[f"{prefix}rho_nat[{f}]"] = cell(2, p.rho_nat[f], "rho naturality square")
    w[f"{prefix}alpha"] = cell(1, p.unit.alpha)
    w[f"{prefix}A"] = cell(2, p.A, "associator")
    w[f"{prefix}D"] = cell(2, p.D, "D")
    w[f"{prefix}E"] = cell(2, p.E, "E")
    return w


# ---------------------------------------------------------------------------
# Verbs


def cmd_gen(args) -> int:
    kind = args.kind
    if kind.startswith("monoid:"):
        try:
            table = [[int(v) for v in row.split(",")] for row in kind[len("monoid:"):].split(";")]
            m = models.monoid_model(table, name="monoid")
        except (ValueError, IndexError, WeakUnitsError) as exc:
            raise Broken(f"bad monoid table {kind!r}: {exc}") from exc
    elif kind in models.GENERATORS:
        m = models.GENERATORS[kind]()
    else:
        raise Broken(f"unknown model kind {kind!r}; known: {', '.join(models.GENERATORS)}, monoid:TABLE")
    rep = validate_model(m)
    if not rep.ok:
        print(f"generated model {m.name} fails validation: {rep.axioms()}", file=sys.stderr)
        return FAIL
    text = dumps(model_to_json(m))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"{m.name}: {m.n_objects}/{m.n_one}/{m.n_two} written to {args.out}")
    else:
        sys.stdout.write(text)
    return OK


def cmd_validate(args) -> int:
    m = _load(args)
    rep = validate_model(m)
    r = Report("model is valid")
    for v in rep.structural:
        r.need(v.axiom, False, v.to_json())
    for v in rep.violations:
        r.need(v.axiom, False, v.to_json())
    r.details["counts"] = rep.counts
    cert = build_certificate("validate", m, [], r)
    lines = [f"{m.name}: " + ("valid" if rep.ok else f"invalid: {', '.join(sorted(rep.axioms()))}")]
    _emit(args, cert, lines)
    if rep.structural:
        return BROKEN
    return OK if rep.ok else FAIL


def cmd_find_units(args) -> int:
    m = _load(args)
    gate = _gate(args, m)
    if gate is not None:
        _emit(args, gate, [f"{m.name}: model is invalid"])
        return FAIL
    units = _units(m, args)
    out = [{"I": U.I, "alpha": U.alpha, "labels": [m.label(0, U.I), m.label(1, U.alpha)]} for U in units]
    print(json.dumps(out))
    if args.out:
        Path(args.out).write_text(json.dumps(out) + "\n", encoding="utf-8")
    return OK


def cmd_synth(args) -> int:
    from .units import certify_pack, enumerate_constraint_packs, synth_constraints

    m = _load(args)
    gate = _gate(args, m)
    if gate is not None:
        _emit(args, gate, [f"{m.name}: model is invalid"])
        return FAIL
    rep = Report("constraint synthesis")
    witnesses = {}
    with recording() as recs:
        for U in _units(m, args):
            tag = f"{U.I}:{U.alpha}"
            try:
                packs = (
                    list(enumerate_constraint_packs(m, U, args.budget))
                    if args.all_choices else [synth_constraints(m, U, args.seed)]
                )
            except (DivisionError, CertificationError) as exc:
                rep.need("synthesis", False, {"unit": tag, "error": str(exc)})
                continue
            for k, p in enumerate(packs):
                rep.merge(certify_pack(m, p), f"unit {tag}: ")
                witnesses.update(pack_witnesses(m, p, f"{tag}#{k}/"))
    cert = build_certificate("synth", m, recs, rep, witnesses, args.seed)
    _emit(args, cert, [rep.summary()])
    return OK if rep.ok else FAIL


def _verify_A(m, args, recs):
    from .units import certify_pack, enumerate_constraint_packs, synth_constraints, verify_independence, verify_theorem_A

    rep = Report("pentagon for every unit")
    witnesses = {}
    for U in _units(m, args):
        tag = f"{U.I}:{U.alpha}"
        packs = (
            list(enumerate_constraint_packs(m, U, args.budget))
            if args.all_choices else [synth_constraints(m, U, args.seed)]
        )
        for k, p in enumerate(packs):
            rep.merge(certify_pack(m, p, naturality=False), f"unit {tag}: ")
            rep.merge(verify_theorem_A(m, U, p), f"unit {tag}: ")
            witnesses.update(pack_witnesses(m, p, f"{tag}#{k}/"))
        if args.all_choices:
            ind = verify_independence(m, U, limit=args.budget)
            rep.merge(ind, f"unit {tag}: ")
            rep.details[f"independence {tag}"] = ind.details
    rep.need("units exist", bool(witnesses))
    return rep, witnesses, None


def _verify_B(m, args, recs):
    from .arrowcat import build_arrow_model, verify_theorem_B
    from .units import construct_unit_morphism, synth_constraints

    rep = Report("unit morphisms are semi-monoid maps")
    am = build_arrow_model(m, budget=args.budget)
    units = _units(m, args)
    packs = {U: synth_constraints(m, U, args.seed) for U in units}
    witnesses = {}
    for UI in units:
        for UJ in units:
            tag = f"{UI.I}:{UI.alpha}->{UJ.I}:{UJ.alpha}"
            mor = construct_unit_morphism(m, UI, UJ, packs[UI], packs[UJ]).morphism
            r = verify_theorem_B(m, mor, packs[UI], packs[UJ], am=am, seed=args.seed)
            rep.merge(r, f"{tag}: ")
            rep.details[tag] = r.details
            witnesses[f"{tag}/u"] = cell(1, mor.u)
            witnesses[f"{tag}/U"] = cell(2, mor.U, "unit morphism cell")
    rep.need("units exist", bool(units))
    return rep, witnesses, am.model


def _verify_C(m, args, recs):
    from .units import verify_theorem_C

    return verify_theorem_C(m, budget=args.budget), {}, None


def _verify_E(m, args, recs):
    from .gps import verify_theorem_E

    return verify_theorem_E(m, budget=args.budget), {}, None


def _verify_dim1(m, args, recs):
    from .units import find_unit_objects, synth_constraints

    rep = Report("constraints of a discrete model")
    try:
        dim1.require_discrete(m)
    except ValueError as exc:
        raise Broken(str(exc)) from exc
    units = find_unit_objects(m)
    found = dim1.find_units_1(m)
    rep.need("same units", found == [(U.I, U.alpha) for U in units], found)
    witnesses = {}
    for U in units:
        u = dim1.construct_lr_1(m, U.I, U.alpha)
        k = dim1.verify_kelly_1(m, u)
        rep.need("Kelly axioms", k.ok, k.failures)
        rep.need("alpha associative", dim1.verify_assoc_1(m, u))
        p = synth_constraints(m, U, args.seed)
        rep.need("lambda agrees with 2-dimensional synthesis", u.lam == p.lam)
        rep.need("rho agrees with 2-dimensional synthesis", u.rho == p.rho)
        for X in sorted(u.lam):
            witnesses[f"{U.I}:{U.alpha}/lambda[{X}]"] = cell(1, u.lam[X], "axiom L")
            witnesses[f"{U.I}:{U.alpha}/rho[{X}]"] = cell(1, u.rho[X], "axiom R")
    return rep, witnesses, None


def _verify_actions(m, args, recs):
    from .units import synth_constraints, verify_action_pentagons

    rep = Report("action pentagons")
    witnesses = {}
    for U in _units(m, args):
        p = synth_constraints(m, U, args.seed)
        rep.merge(verify_action_pentagons(m, U, p), f"unit {U.I}:{U.alpha}: ")
        witnesses.update(pack_witnesses(m, p, f"{U.I}:{U.alpha}/"))
    return rep, witnesses, None


VERIFIERS = {
    "A": _verify_A,
    "B": _verify_B,
    "C": _verify_C,
    "E": _verify_E,
    "dim1": _verify_dim1,
    "actions": _verify_actions,
}


def cmd_verify(args) -> int:
    m = _load(args)
    gate = _gate(args, m)
    if gate is not None:
        _emit(args, gate, [f"{m.name}: model is invalid, not checking {args.theorem}"])
        return FAIL
    with recording() as recs:
        try:
            rep, witnesses, arrow = VERIFIERS[args.theorem](m, args, recs)
        except (DivisionError, CertificationError) as exc:
            # A construction the theorem promises is impossible on this model.
            rep = Report(f"theorem {args.theorem}")
            rep.need(type(exc).__name__, False, {"error": str(exc), "equation": getattr(exc, "equation", None)})
            witnesses, arrow = {}, None
    cert = build_certificate(
        args.theorem, m, recs, rep, witnesses, args.seed, arrow=arrow, dimension=1 if args.theorem == "dim1" else 2
    )
    lines = [f"{m.name}: {rep.summary()}"]
    for name, detail in rep.failures()[:5]:
        lines.append(f"  counterexample: {name} {json.dumps(detail, default=repr)[:200]}")
    _emit(args, cert, lines)
    return OK if rep.ok else FAIL


def cmd_report(args) -> int:
    try:
        cert = load_certificate(args.certificate)
        claim = cert["claim"]
        print(f"{cert['model']['name']}: {claim['tag']} ({claim['statement']}): {'pass' if cert['ok'] else 'FAIL'}, "
              f"{len(cert['checked_equations'])} equations, seed {cert.get('seed')}")
    except (OSError, KeyError, TypeError, StructuralError) as exc:
        raise Broken(f"unreadable certificate: {exc}") from exc
    if not args.recheck:
        return OK if cert["ok"] else FAIL
    res = recheck(cert)
    if res.structural:
        for p in res.problems[:5]:
            print(f"  problem: {p}")
        return BROKEN
    if res.mismatches:
        for mm in res.mismatches[:5]:
            print(f"  mismatch: {mm}")
        print(f"recheck: {len(res.mismatches)} of {res.checked} equations differ")
        return FAIL
    print(f"recheck: all {res.checked} equations reproduced")
    return OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="weakunits", description="Weak units in finite semi-monoidal 2-categories.")
    sub = ap.add_subparsers(dest="verb", required=True)

    def common(p, model=True):
        if model:
            p.add_argument("model", help="model JSON file")
        p.add_argument("--out", help="write the certificate (or model) here")
        p.add_argument("--seed", type=int, default=0, help="constraint choice seed")
        p.add_argument("--budget", type=int, default=4096, help="size cap for enumerations")
        p.add_argument("--allow-invalid", action="store_true", help="run even if the model fails validation")
        p.add_argument("--all-choices", action="store_true", help="enumerate every constraint choice")
        p.add_argument("--unit", help="restrict to the unit I,alpha")

    p = sub.add_parser("gen", help="write a built-in model")
    p.add_argument("kind", help=f"{'|'.join(models.GENERATORS)} or monoid:ROW;ROW (rows comma-separated)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    for name, func, help_ in (
        ("validate", cmd_validate, "check the axioms"),
        ("find-units", cmd_find_units, "list unit objects"),
        ("synth", cmd_synth, "synthesize and certify constraints"),
    ):
        p = sub.add_parser(name, help=help_)
        common(p)
        p.set_defaults(func=func)
    p = sub.add_parser("verify", help="check a theorem on a model")
    common(p)
    p.add_argument("theorem", choices=sorted(VERIFIERS))
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("report", help="summarize a certificate")
    p.add_argument("certificate")
    p.add_argument("--recheck", action="store_true", help="re-evaluate every equation with the kernel")
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Broken as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BROKEN
    except (StructuralError, BoundaryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BROKEN


if __name__ == "__main__":
    sys.exit(main())
