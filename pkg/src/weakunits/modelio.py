"""JSON model files.

A model file is one JSON object::

    {"schema_version": 1, "name": ..., "objects": n,
     "one_cells": [{"src": x, "dst": y}, ...], "id1": [...],
     "comp1": [[f, g, fg], ...],
     "two_cells": [{"src": f, "dst": g}, ...], "id2": [...],
     "vcomp": [...], "hcomp": [...],
     "tensor_obj": [[a, b, ab], ...], "tensor1": [...], "tensor2": [...],
     "labels": {...}, "meta": {...}}

Binary tables list only defined entries, in row-major order.  Writing is
deterministic, so the same model always gives the same bytes.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .errors import StructuralError
from .kernel import TwoCategoryModel

SCHEMA_VERSION = 1
TABLES = ("comp1", "vcomp", "hcomp", "tensor_obj", "tensor1", "tensor2")


def _triples(arr: np.ndarray) -> list[list[int]]:
    a, b = np.nonzero(arr >= 0)
    return [[int(x), int(y), int(arr[x, y])] for x, y in zip(a, b)]


def model_to_json(m: TwoCategoryModel) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "name": m.name,
        "objects": m.n_objects,
        "one_cells": [{"src": int(s), "dst": int(d)} for s, d in zip(m.one_src, m.one_dst)],
        "id1": m.id1_table.tolist(),
        "two_cells": [{"src": int(s), "dst": int(d)} for s, d in zip(m.two_src, m.two_dst)],
        "id2": m.id2_table.tolist(),
    }
    for t in TABLES:
        doc[t] = _triples(getattr(m, f"{t}_table"))
    doc["labels"] = m.labels
    doc["meta"] = m.meta
    return doc


def model_from_json(doc: dict, limits=None) -> TwoCategoryModel:
    """Parse a model document.  Malformed documents raise :class:`StructuralError`."""
    if not isinstance(doc, dict):
        raise StructuralError("model file must hold a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise StructuralError(f"unsupported schema_version {version!r}")
    missing = [k for k in ("objects", "one_cells", "id1", "two_cells", "id2", *TABLES) if k not in doc]
    if missing:
        raise StructuralError(f"model file lacks {', '.join(missing)}")
    try:
        kw = {t: [tuple(int(v) for v in row) for row in doc[t]] for t in TABLES}
        for t, rows in kw.items():
            if any(len(r) != 3 for r in rows):
                raise StructuralError(f"{t}: entries must be [a, b, result]")
        return TwoCategoryModel(
            objects=int(doc["objects"]),
            one_cells=[(int(c["src"]), int(c["dst"])) for c in doc["one_cells"]],
            id1=[int(v) for v in doc["id1"]],
            two_cells=[(int(c["src"]), int(c["dst"])) for c in doc["two_cells"]],
            id2=[int(v) for v in doc["id2"]],
            name=str(doc.get("name", "")),
            meta=doc.get("meta") or {},
            labels=doc.get("labels") or {},
            limits=limits,
            **kw,
        )
    except (TypeError, KeyError, ValueError) as exc:
        raise StructuralError(f"malformed model file: {exc}") from exc


def dumps(doc: dict) -> str:
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":")) + "\n"


def canonical_hash(doc: dict) -> str:
    data = json.dumps(doc, ensure_ascii=False, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(data.encode("utf-8")).hexdigest()


def model_hash(m: TwoCategoryModel) -> str:
    return canonical_hash(model_to_json(m))


def save_model(m: TwoCategoryModel, path) -> None:
    Path(path).write_text(dumps(model_to_json(m)), encoding="utf-8")


def load_model(path, limits=None) -> TwoCategoryModel:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise StructuralError(f"{path}: not JSON ({exc})") from exc
    return model_from_json(doc, limits)
