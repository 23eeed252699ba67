"""Self-verifying certificates.

A certificate embeds the model it talks about, the witnesses a claim rests
on and every equation that was evaluated while checking it.  ``recheck``
needs only the kernel: it reloads the model, evaluates each equation again
and compares both values and the verdict.  Equations about the arrow model
are tagged ``"arrow"``; the arrow model is rebuilt from the embedded base
and its hash compared with the recorded one before they are evaluated.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .errors import BoundaryError, StructuralError, WeakUnitsError
from .kernel import CheckRecord, TwoCategoryModel, eval1, eval2, expr_from_json, expr_to_json
from .modelio import canonical_hash, model_from_json, model_hash, model_to_json
from .reports import Report, _jsonable

CERT_VERSION = 1

CLAIMS = {
    "validate": "the model satisfies every axiom of a semi-monoidal 2-category",
    "synth": "chosen constraints and their derived cells satisfy their defining equations",
    "A": "the associator of a unit object satisfies the pentagon",
    "B": "unit morphisms are semi-monoid maps",
    "C": "the 2-category of units is contractible",
    "E": "unit objects and GPS units give equivalent 2-categories",
    "dim1": "in a discrete model the constraints satisfy the Kelly axioms",
    "actions": "the constraints satisfy the action pentagons",
}


def _record_json(rec: CheckRecord, key: str) -> dict:
    return {
        "name": rec.equation.name,
        "model": key,
        "dim": rec.equation.dim,
        "lhs": expr_to_json(rec.equation.lhs),
        "rhs": expr_to_json(rec.equation.rhs),
        "result": rec.result,
        "values": [rec.lhs_value, rec.rhs_value],
    }


def build_certificate(
    claim: str,
    base: TwoCategoryModel,
    records: list[CheckRecord],
    report: Report | None = None,
    witnesses: dict[str, Any] | None = None,
    seed: int | None = None,
    arrow: TwoCategoryModel | None = None,
    dimension: int = 2,
    extra: dict | None = None,
) -> dict:
    keys = {id(base): "base"}
    if arrow is not None:
        keys[id(arrow)] = "arrow"
    eqs = []
    for rec in records:
        key = keys.get(id(rec.model))
        if key is None:
            raise WeakUnitsError(f"equation {rec.equation.name!r} is about an unregistered model")
        eqs.append(_record_json(rec, key))
    cert = {
        "schema_version": CERT_VERSION,
        "claim": {"tag": claim, "statement": CLAIMS.get(claim, claim)},
        "dimension": dimension,
        "ok": report.ok if report is not None else all(e["result"] for e in eqs),
        "seed": seed,
        "model_hash": model_hash(base),
        "model": model_to_json(base),
        "arrow_hash": model_hash(arrow) if arrow is not None else None,
        "witnesses": _jsonable(witnesses or {}),
        "checked_equations": eqs,
        "report": report.to_json() if report is not None else None,
    }
    if extra:
        cert.update(_jsonable(extra))
    return cert


def cell(dim: int, id_: int, equation: str | None = None) -> dict:
    """A witness entry: a cell id and the tag of the equation defining it."""
    out = {"dim": dim, "id": int(id_)}
    if equation:
        out["equation"] = equation
    return out


@dataclass
class RecheckResult:
    ok: bool
    checked: int = 0
    mismatches: list[dict] = field(default_factory=list)
    problems: list[str] = field(default_factory=list)

    @property
    def structural(self) -> bool:
        return bool(self.problems)


def recheck(cert: dict) -> RecheckResult:
    """Re-evaluate every recorded equation and compare with the certificate."""
    res = RecheckResult(True)
    try:
        if cert.get("schema_version") != CERT_VERSION:
            raise StructuralError(f"unsupported certificate version {cert.get('schema_version')!r}")
        doc = cert["model"]
        if canonical_hash(doc) != cert["model_hash"]:
            raise StructuralError("embedded model does not match model_hash")
        models = {"base": model_from_json(doc)}
        eqs = cert["checked_equations"]
        if any(e["model"] == "arrow" for e in eqs):
            # Late import: only needed for certificates about the arrow model.
            from .arrowcat import build_arrow_model

            am = build_arrow_model(models["base"]).model
            if model_hash(am) != cert.get("arrow_hash"):
                raise StructuralError("rebuilt arrow model does not match arrow_hash")
            models["arrow"] = am
    except (KeyError, TypeError) as exc:
        res.ok = False
        res.problems.append(f"malformed certificate: {exc!r}")
        return res
    except WeakUnitsError as exc:
        res.ok = False
        res.problems.append(str(exc))
        return res

    for k, e in enumerate(eqs):
        try:
            m = models[e["model"]]
            ev = eval1 if e.get("dim", 2) == 1 else eval2
            a = ev(m, expr_from_json(e["lhs"]))
            b = ev(m, expr_from_json(e["rhs"]))
        except (BoundaryError, StructuralError, KeyError, ValueError, TypeError) as exc:
            res.ok = False
            res.problems.append(f"equation {k} ({e.get('name')}): {exc}")
            continue
        res.checked += 1
        if [a, b] != list(e["values"]) or (a == b) != e["result"]:
            res.ok = False
            res.mismatches.append({"index": k, "name": e["name"], "recorded": e["values"], "recomputed": [a, b]})
    return res


def save_certificate(cert: dict, path) -> None:
    Path(path).write_text(json.dumps(cert, ensure_ascii=False, separators=(",", ":")) + "\n", encoding="utf-8")


def load_certificate(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise StructuralError(f"{path}: not JSON ({exc})") from exc
