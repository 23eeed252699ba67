"""Finite strict 2-categories with a strict tensor, given by tables.

Cells are small integers.  Composition of 1-cells is written ``f # g`` and
read left to right (first ``f``, then ``g``); the same symbol is used for
horizontal composition of 2-cells.  Vertical composition ``a >> b`` means
first ``a`` then ``b``.

Every table is stored densely as a numpy array.  Partial tables (``comp1``,
``vcomp``, ``hcomp``) hold ``-1`` where the pair is not composable; looking up
such an entry raises :class:`StructuralError`, so ``-1`` never escapes as a
cell id.
"""

from __future__ import annotations

import contextlib
import contextvars
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterator, Mapping, Sequence

import numpy as np

from .errors import BoundaryError, BudgetExceeded, StructuralError

ABSENT = -1


@dataclass(frozen=True)
class Limits:
    """Soft size limits for a model (desk scale by default)."""

    objects: int = 64
    one_cells: int = 512
    two_cells: int = 512


DEFAULT_LIMITS = Limits()


def _dense(table, shape, what: str, issues: list) -> np.ndarray:
    """Turn a mapping, a list of triples, or an array into a dense id table."""
    if isinstance(table, np.ndarray):
        arr = np.asarray(table, dtype=np.int64)
        if arr.shape != shape:
            raise StructuralError(f"{what}: expected shape {shape}, got {arr.shape}")
        return arr.copy()
    arr = np.full(shape, ABSENT, dtype=np.int64)
    if isinstance(table, Mapping):
        items = ((k[0], k[1], v) for k, v in table.items())
    else:
        items = (tuple(t) for t in table)
    for a, b, r in items:
        if 0 <= a < shape[0] and 0 <= b < shape[1]:
            arr[a, b] = r
        else:
            issues.append(ValidationIssue("dangling-id", (int(a), int(b)), f"{what} entry keyed on an unknown id"))
    return arr


def _vector(values, n: int, what: str) -> np.ndarray:
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=np.int64)
    if arr.shape != (n,):
        raise StructuralError(f"{what}: expected {n} entries, got {arr.shape[0] if arr.ndim else 0}")
    return arr.copy()


class TwoCategoryModel:
    """A finite strict 2-category with a strictly associative tensor.

    ``one_cells`` and ``two_cells`` are sequences of ``(src, dst)`` pairs.
    Binary tables may be given as mappings ``{(a, b): r}``, as lists of
    ``(a, b, r)`` triples or as dense arrays with ``-1`` for absent entries.
    The constructor does not validate the axioms; call :func:`validate_model`.
    """

    def __init__(
        self,
        *,
        objects: int,
        one_cells: Sequence[tuple[int, int]],
        id1: Sequence[int],
        comp1,
        two_cells: Sequence[tuple[int, int]],
        id2: Sequence[int],
        vcomp,
        hcomp,
        tensor_obj,
        tensor1,
        tensor2,
        name: str = "",
        meta: Mapping[str, Any] | None = None,
        labels: Mapping[str, Sequence[str]] | None = None,
        limits: Limits | None = DEFAULT_LIMITS,
    ):
        n0, n1, n2 = int(objects), len(one_cells), len(two_cells)
        if limits is not None and (n0 > limits.objects or n1 > limits.one_cells or n2 > limits.two_cells):
            raise BudgetExceeded(
                f"model has {n0}/{n1}/{n2} cells, limits are "
                f"{limits.objects}/{limits.one_cells}/{limits.two_cells}"
            )
        self.name = name
        self.meta = dict(meta or {})
        self.labels = {k: list(v) for k, v in (labels or {}).items()}
        self.n_objects, self.n_one, self.n_two = n0, n1, n2
        self.load_issues: list[ValidationIssue] = []

        ones = np.asarray(one_cells, dtype=np.int64).reshape(n1, 2)
        twos = np.asarray(two_cells, dtype=np.int64).reshape(n2, 2)
        self.one_src, self.one_dst = ones[:, 0].copy(), ones[:, 1].copy()
        self.two_src, self.two_dst = twos[:, 0].copy(), twos[:, 1].copy()
        self.id1_table = _vector(id1, n0, "id1")
        self.id2_table = _vector(id2, n1, "id2")
        issues = self.load_issues
        self.comp1_table = _dense(comp1, (n1, n1), "comp1", issues)
        self.vcomp_table = _dense(vcomp, (n2, n2), "vcomp", issues)
        self.hcomp_table = _dense(hcomp, (n2, n2), "hcomp", issues)
        self.tensor_obj_table = _dense(tensor_obj, (n0, n0), "tensor_obj", issues)
        self.tensor1_table = _dense(tensor1, (n1, n1), "tensor1", issues)
        self.tensor2_table = _dense(tensor2, (n2, n2), "tensor2", issues)
        for arr in self._arrays():
            arr.setflags(write=False)

        # Plain nested lists are much faster than numpy for scalar lookups.
        self._os, self._od = self.one_src.tolist(), self.one_dst.tolist()
        self._ts, self._td = self.two_src.tolist(), self.two_dst.tolist()
        self._i1, self._i2 = self.id1_table.tolist(), self.id2_table.tolist()
        self._c1 = self.comp1_table.tolist()
        self._v = self.vcomp_table.tolist()
        self._h = self.hcomp_table.tolist()
        self._t0 = self.tensor_obj_table.tolist()
        self._t1 = self.tensor1_table.tolist()
        self._t2 = self.tensor2_table.tolist()

    def _arrays(self):
        return (
            self.one_src, self.one_dst, self.two_src, self.two_dst, self.id1_table,
            self.id2_table, self.comp1_table, self.vcomp_table, self.hcomp_table,
            self.tensor_obj_table, self.tensor1_table, self.tensor2_table,
        )

    def __repr__(self) -> str:
        return f"<TwoCategoryModel {self.name!r}: {self.n_objects}/{self.n_one}/{self.n_two}>"

    # -- naming ---------------------------------------------------------------

    def label(self, dim: int, i: int) -> str:
        key = ("objects", "one_cells", "two_cells")[dim]
        names = self.labels.get(key)
        if names and 0 <= i < len(names):
            return names[i]
        return f"{'xfc'[dim]}{i}"

    # -- table access ---------------------------------------------------------

    @staticmethod
    def _get(table, a: int, b: int, what: str) -> int:
        try:
            r = table[a][b]
        except (IndexError, TypeError):
            raise StructuralError(f"{what}({a}, {b}): unknown id") from None
        if r < 0 or a < 0 or b < 0:
            raise StructuralError(f"{what}({a}, {b}): no table entry")
        return r

    def src1(self, f: int) -> int:
        return self._os[f]

    def dst1(self, f: int) -> int:
        return self._od[f]

    def src2(self, c: int) -> int:
        return self._ts[c]

    def dst2(self, c: int) -> int:
        return self._td[c]

    def id1(self, x: int) -> int:
        return self._i1[x]

    def id2(self, f: int) -> int:
        return self._i2[f]

    def unit2(self, x: int) -> int:
        """Identity 2-cell on the identity 1-cell of an object."""
        return self._i2[self._i1[x]]

    def comp1(self, f: int, g: int) -> int:
        return self._get(self._c1, f, g, "comp1")

    def vcomp(self, a: int, b: int) -> int:
        return self._get(self._v, a, b, "vcomp")

    def hcomp(self, a: int, b: int) -> int:
        return self._get(self._h, a, b, "hcomp")

    def tensor_obj(self, x: int, y: int) -> int:
        return self._get(self._t0, x, y, "tensor_obj")

    def tensor1(self, f: int, g: int) -> int:
        return self._get(self._t1, f, g, "tensor1")

    def tensor2(self, a: int, b: int) -> int:
        return self._get(self._t2, a, b, "tensor2")

    # -- derived indices ------------------------------------------------------

    @cached_property
    def _hom1_index(self) -> dict[tuple[int, int], tuple[int, ...]]:
        idx: dict[tuple[int, int], list[int]] = defaultdict(list)
        for f, (s, d) in enumerate(zip(self._os, self._od)):
            idx[s, d].append(f)
        return {k: tuple(v) for k, v in idx.items()}

    @cached_property
    def _hom2_index(self) -> dict[tuple[int, int], tuple[int, ...]]:
        idx: dict[tuple[int, int], list[int]] = defaultdict(list)
        for c, (s, d) in enumerate(zip(self._ts, self._td)):
            idx[s, d].append(c)
        return {k: tuple(v) for k, v in idx.items()}

    def hom1(self, x: int, y: int) -> tuple[int, ...]:
        """1-cells ``x -> y`` in increasing id order."""
        return self._hom1_index.get((x, y), ())

    def hom2(self, f: int, g: int) -> tuple[int, ...]:
        """2-cells ``f => g`` in increasing id order."""
        return self._hom2_index.get((f, g), ())

    @cached_property
    def _inverse_table(self) -> list[int]:
        n2 = self.n_two
        if n2 == 0:
            return []
        v = self.vcomp_table
        ids_src = self.id2_table[self.two_src]
        ids_dst = self.id2_table[self.two_dst]
        mask = (v == ids_src[:, None]) & (v.T == ids_dst[:, None])
        has = mask.any(axis=1)
        first = mask.argmax(axis=1)
        return np.where(has, first, ABSENT).tolist()

    def inverse(self, c: int) -> int | None:
        """The vertical inverse of ``c``, or ``None`` if ``c`` is not invertible."""
        r = self._inverse_table[c]
        return None if r < 0 else r

    def is_invertible(self, c: int) -> bool:
        return self._inverse_table[c] >= 0

    def invertible_cells(self, f: int, g: int) -> list[int]:
        inv = self._inverse_table
        return [c for c in self.hom2(f, g) if inv[c] >= 0]

    # -- pasting --------------------------------------------------------------

    def obj(self, x: int) -> Term:
        if not 0 <= x < self.n_objects:
            raise BoundaryError(f"unknown object {x}")
        return Term(self, Id1(x), 1, self._i1[x])

    def one(self, f: int) -> Term:
        if not 0 <= f < self.n_one:
            raise BoundaryError(f"unknown 1-cell {f}")
        return Term(self, Lit1(f), 1, f)

    def two(self, c: int) -> Term:
        if not 0 <= c < self.n_two:
            raise BoundaryError(f"unknown 2-cell {c}")
        return Term(self, Lit2(c), 2, c)

    def inv(self, c: int) -> Term:
        """The stored inverse of ``c`` as a literal term."""
        r = self.inverse(c)
        if r is None:
            raise StructuralError(f"2-cell {self.label(2, c)} is not invertible")
        return self.two(r)


# ---------------------------------------------------------------------------
# Validation


@dataclass(frozen=True)
class ValidationIssue:
    axiom: str
    ids: tuple[int, ...]
    message: str

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "ids": [int(i) for i in self.ids], "message": self.message}


@dataclass
class ValidationReport:
    structural: list[ValidationIssue] = field(default_factory=list)
    violations: list[ValidationIssue] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.structural and not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations} | {v.axiom for v in self.structural}

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "structural": [v.to_json() for v in self.structural],
            "violations": [v.to_json() for v in self.violations],
            "counts": dict(self.counts),
        }


class _Collector:
    def __init__(self, report: ValidationReport, limit: int):
        self.report = report
        self.limit = limit

    def add(self, bucket: list, axiom: str, bad: np.ndarray, ids: Sequence[np.ndarray], message: str):
        """Record every position where ``bad`` is true; ``ids`` are broadcast to it."""
        bad = np.asarray(bad, dtype=bool)
        if not bad.any():
            return
        where = np.nonzero(bad)
        n = len(where[0])
        self.report.counts[axiom] = self.report.counts.get(axiom, 0) + n
        cols = [np.broadcast_to(np.asarray(a), bad.shape)[where] for a in ids]
        already = sum(1 for v in bucket if v.axiom == axiom)
        for k in range(min(n, max(0, self.limit - already))):
            bucket.append(ValidationIssue(axiom, tuple(int(c[k]) for c in cols), message))

    def structural(self, axiom, bad, ids, message):
        self.add(self.report.structural, axiom, bad, ids, message)

    def violation(self, axiom, bad, ids, message):
        self.add(self.report.violations, axiom, bad, ids, message)


def validate_model(m: TwoCategoryModel, limit: int = 25) -> ValidationReport:
    """Check the axioms of a strict 2-category with strict tensor.

    Structural problems (dangling ids, missing or spurious entries, results
    with the wrong boundary) are reported separately; when any are present the
    axiom checks are skipped because they would index garbage.

    The axiom checks are complete but not naive: the interchange law,
    associativity of horizontal composition and the functoriality and
    associativity of the tensor on 2-cells are reduced to instances where
    all but one argument is an identity, which together with the remaining
    checks imply the general laws.  ``limit`` caps the number of instances
    listed per axiom; ``counts`` holds the full totals.
    """
    report = ValidationReport()
    col = _Collector(report, limit)
    report.structural.extend(m.load_issues)
    _check_structure(m, col)
    if report.structural:
        return report
    _check_axioms(m, col)
    return report


def _check_structure(m: TwoCategoryModel, col: _Collector) -> None:
    n0, n1, n2 = m.n_objects, m.n_one, m.n_two
    S = col.structural

    def dangling(arr, n, what, partial=False):
        lo = -1 if partial else 0
        bad = (arr < lo) | (arr >= n)
        if arr.ndim == 1:
            S("dangling-id", bad, [np.arange(arr.shape[0])], f"{what} refers to an unknown id")
        else:
            i, j = np.indices(arr.shape)
            if not partial:
                S("missing-entry", arr == ABSENT, [i, j], f"{what} has no entry for this pair")
                bad = bad & (arr != ABSENT)
            S("dangling-id", bad, [i, j], f"{what} refers to an unknown id")

    dangling(m.one_src, n0, "1-cell source")
    dangling(m.one_dst, n0, "1-cell target")
    dangling(m.id1_table, n1, "id1")
    dangling(m.two_src, n1, "2-cell source")
    dangling(m.two_dst, n1, "2-cell target")
    dangling(m.id2_table, n2, "id2")
    dangling(m.comp1_table, n1, "comp1", partial=True)
    dangling(m.vcomp_table, n2, "vcomp", partial=True)
    dangling(m.hcomp_table, n2, "hcomp", partial=True)
    dangling(m.tensor_obj_table, n0, "tensor_obj")
    dangling(m.tensor1_table, n1, "tensor1")
    dangling(m.tensor2_table, n2, "tensor2")
    if col.report.structural:
        return

    os_, od = m.one_src, m.one_dst
    ts, td = m.two_src, m.two_dst
    i1, i2 = m.id1_table, m.id2_table
    obj = np.arange(n0)
    ones = np.arange(n1)
    twos = np.arange(n2)
    S("boundary", (os_[i1] != obj) | (od[i1] != obj), [obj], "id1 has the wrong boundary")
    S("boundary", (os_[ts] != os_[td]) | (od[ts] != od[td]), [twos], "2-cell between non-parallel 1-cells")
    S("boundary", (ts[i2] != ones) | (td[i2] != ones), [ones], "id2 has the wrong boundary")
    if col.report.structural:
        return

    def partial(table, composable, what, src_ok, dst_ok, n):
        i, j = np.indices(table.shape)
        present = table != ABSENT
        S("missing-entry", composable & ~present, [i, j], f"{what} has no entry for a composable pair")
        S("spurious-entry", ~composable & present, [i, j], f"{what} has an entry for a non-composable pair")
        ok = present & composable
        r = np.where(ok, table, 0)
        S("boundary", ok & ~(src_ok(r, i, j) & dst_ok(r, i, j)), [i, j], f"{what} result has the wrong boundary")

    C = m.comp1_table
    partial(
        C, od[:, None] == os_[None, :], "comp1",
        lambda r, i, j: os_[r] == os_[i], lambda r, i, j: od[r] == od[j], n1,
    )
    partial(
        m.vcomp_table, td[:, None] == ts[None, :], "vcomp",
        lambda r, i, j: ts[r] == ts[i], lambda r, i, j: td[r] == td[j], n2,
    )
    if col.report.structural:
        return
    Cs = np.where(C >= 0, C, 0)
    partial(
        m.hcomp_table, od[ts][:, None] == os_[ts][None, :], "hcomp",
        lambda r, i, j: ts[r] == Cs[ts[i], ts[j]], lambda r, i, j: td[r] == Cs[td[i], td[j]], n2,
    )
    T0, T1, T2 = m.tensor_obj_table, m.tensor1_table, m.tensor2_table
    i, j = np.indices(T1.shape)
    S(
        "boundary", (os_[T1] != T0[os_[i], os_[j]]) | (od[T1] != T0[od[i], od[j]]), [i, j],
        "tensor1 result has the wrong boundary",
    )
    i, j = np.indices(T2.shape)
    S(
        "boundary", (ts[T2] != T1[ts[i], ts[j]]) | (td[T2] != T1[td[i], td[j]]), [i, j],
        "tensor2 result has the wrong boundary",
    )


def _check_axioms(m: TwoCategoryModel, col: _Collector) -> None:
    V = col.violation
    n0, n1, n2 = m.n_objects, m.n_one, m.n_two
    os_, od, ts, td = m.one_src, m.one_dst, m.two_src, m.two_dst
    i1, i2 = m.id1_table, m.id2_table
    C, Vc, H = m.comp1_table, m.vcomp_table, m.hcomp_table
    T0, T1, T2 = m.tensor_obj_table, m.tensor1_table, m.tensor2_table
    ones, twos = np.arange(n1), np.arange(n2)
    src0 = os_[ts]  # 0-source of a 2-cell
    dst0 = od[ts]

    # 1-cells: units and associativity.
    V("comp1-unit", (C[i1[os_], ones] != ones) | (C[ones, i1[od]] != ones), [ones],
      "identity 1-cell is not a unit for comp1")
    into = [np.nonzero(od == x)[0] for x in range(n0)]
    outof = [np.nonzero(os_ == x)[0] for x in range(n0)]
    for g in range(n1):
        fs, hs = into[os_[g]], outof[od[g]]
        if len(fs) == 0 or len(hs) == 0:
            continue
        lhs = C[C[fs, g][:, None], hs[None, :]]
        rhs = C[fs[:, None], C[g, hs][None, :]]
        V("comp1-assoc", lhs != rhs, [fs[:, None], g, hs[None, :]], "(f#g)#h != f#(g#h)")

    # Hom categories.
    V("vcomp-unit", (Vc[i2[ts], twos] != twos) | (Vc[twos, i2[td]] != twos), [twos],
      "identity 2-cell is not a unit for vertical composition")
    vin = defaultdict(list)
    vout = defaultdict(list)
    for c in range(n2):
        vin[int(td[c])].append(c)
        vout[int(ts[c])].append(c)
    vin = {k: np.array(v) for k, v in vin.items()}
    vout = {k: np.array(v) for k, v in vout.items()}
    for b in range(n2):
        As, Ds = vin.get(int(ts[b])), vout.get(int(td[b]))
        if As is None or Ds is None:
            continue
        lhs = Vc[Vc[As, b][:, None], Ds[None, :]]
        rhs = Vc[As[:, None], Vc[b, Ds][None, :]]
        V("vcomp-assoc", lhs != rhs, [As[:, None], b, Ds[None, :]], "(a>>b)>>c != a>>(b>>c)")

    # Horizontal composition: units, identities, interchange, associativity.
    V("hcomp-unit", (H[i2[i1[src0]], twos] != twos) | (H[twos, i2[i1[dst0]]] != twos), [twos],
      "identity of an identity 1-cell is not a unit for hcomp")
    pf, pg = np.nonzero(C >= 0)
    V("hcomp-unit", H[i2[pf], i2[pg]] != i2[C[pf, pg]], [pf, pg], "id2(f)#id2(g) != id2(f#g)")

    ha, hc = np.nonzero(H >= 0)
    lhs = H[ha, hc]
    r1 = Vc[H[ha, i2[ts[hc]]], H[i2[td[ha]], hc]]
    r2 = Vc[H[i2[ts[ha]], hc], H[ha, i2[td[hc]]]]
    V("interchange", (lhs != r1) | (lhs != r2), [ha, hc], "a#c differs from a whiskered composite")
    va, vb = np.nonzero(Vc >= 0)
    vab = Vc[va, vb]
    for g in range(n1):
        ig = i2[g]
        sel = dst0[va] == os_[g]
        a, b, ab = va[sel], vb[sel], vab[sel]
        if len(a):
            V("interchange", H[ab, ig] != Vc[H[a, ig], H[b, ig]], [a, b, g],
              "whiskering on the right does not preserve vertical composition")
        sel = src0[va] == od[g]
        a, b, ab = va[sel], vb[sel], vab[sel]
        if len(a):
            V("interchange", H[ig, ab] != Vc[H[ig, a], H[ig, b]], [g, a, b],
              "whiskering on the left does not preserve vertical composition")
    for a in range(n2):
        t = dst0[a]
        sel = os_[pf] == t
        g, h = pf[sel], pg[sel]
        if len(g):
            V("hcomp-assoc", H[H[a, i2[g]], i2[h]] != H[a, i2[C[g, h]]], [a, g, h],
              "(a#g)#h != a#(g#h)")
        fs, hs = into[src0[a]], outof[t]
        if len(fs) and len(hs):
            lhs = H[H[i2[fs], a][:, None], i2[hs][None, :]]
            rhs = H[i2[fs][:, None], H[a, i2[hs]][None, :]]
            V("hcomp-assoc", lhs != rhs, [fs[:, None], a, hs[None, :]], "(f#a)#h != f#(a#h)")
        sel = od[pg] == src0[a]
        f, g = pf[sel], pg[sel]
        if len(f):
            V("hcomp-assoc", H[i2[C[f, g]], a] != H[i2[f], H[i2[g], a]], [f, g, a],
              "(f#g)#a != f#(g#a)")

    # Tensor: functoriality.
    ob = np.arange(n0)
    V("tensor-functor", T1[i1[ob][:, None], i1[ob][None, :]] != i1[T0], [ob[:, None], ob[None, :]],
      "tensor1 does not preserve identity 1-cells")
    V("tensor-functor", T2[i2[ones][:, None], i2[ones][None, :]] != i2[T1], [ones[:, None], ones[None, :]],
      "tensor2 does not preserve identity 2-cells")
    pr = C[pf, pg]
    lhs = T1[pr[:, None], pr[None, :]]
    rhs = C[T1[pf[:, None], pf[None, :]], T1[pg[:, None], pg[None, :]]]
    k = np.arange(len(pf))
    V("tensor-functor", lhs != rhs, [k[:, None], k[None, :]],
      "tensor1 does not preserve comp1 (ids index composable pairs)")
    for g in range(n1):
        ig = i2[g]
        V("tensor-functor", T2[vab, ig] != Vc[T2[va, ig], T2[vb, ig]], [va, vb, g],
          "tensoring on the right does not preserve vertical composition")
        V("tensor-functor", T2[ig, vab] != Vc[T2[ig, va], T2[ig, vb]], [g, va, vb],
          "tensoring on the left does not preserve vertical composition")
    a, c = np.indices((n2, n2))
    lhs = T2
    r1 = Vc[T2[a, i2[ts[c]]], T2[i2[td[a]], c]]
    r2 = Vc[T2[i2[ts[a]], c], T2[a, i2[td[c]]]]
    V("tensor-functor", (lhs != r1) | (lhs != r2), [a, c], "tensor2 is not a bifunctor")
    gh_id = i2[C[pf, pg]]
    for a in range(n2):
        F2 = outof[dst0[a]]
        F1 = into[src0[a]]
        if len(F2):
            l1 = T2[H[a, i2[F2]][:, None], gh_id[None, :]]
            r1 = H[T2[a, i2[pf]][None, :], i2[T1[F2[:, None], pg[None, :]]]]
            V("tensor-functor", l1 != r1, [a, F2[:, None], pf[None, :], pg[None, :]],
              "(a#f)@(g#h) != (a@g)#(f@h)")
            l3 = T2[gh_id[None, :], H[a, i2[F2]][:, None]]
            r3 = H[T2[i2[pf], a][None, :], i2[T1[pg[None, :], F2[:, None]]]]
            V("tensor-functor", l3 != r3, [a, F2[:, None], pf[None, :], pg[None, :]],
              "(g#h)@(a#f) != (g@a)#(h@f)")
        if len(F1):
            l2 = T2[H[i2[F1], a][:, None], gh_id[None, :]]
            r2 = H[i2[T1[F1[:, None], pf[None, :]]], T2[a, i2[pg]][None, :]]
            V("tensor-functor", l2 != r2, [F1[:, None], a, pf[None, :], pg[None, :]],
              "(f#a)@(g#h) != (f@g)#(a@h)")
            l4 = T2[gh_id[None, :], H[i2[F1], a][:, None]]
            r4 = H[i2[T1[pf[None, :], F1[:, None]]], T2[i2[pg], a][None, :]]
            V("tensor-functor", l4 != r4, [F1[:, None], a, pf[None, :], pg[None, :]],
              "(g#h)@(f#a) != (g@f)#(h@a)")

    # Tensor: strict associativity.
    x, y, z = np.indices((n0, n0, n0))
    V("tensor-assoc", T0[T0[x, y], z] != T0[x, T0[y, z]], [x, y, z], "(XY)Z != X(YZ)")
    for f in range(n1):
        row = T1[f]
        V("tensor-assoc", T1[row] != row[T1], [f, ones[:, None], ones[None, :]], "(fg)h != f(gh)")
    G, Hh = np.indices((n1, n1))
    iG, iH, iGH = i2[G], i2[Hh], i2[T1]
    for a in range(n2):
        V("tensor-assoc", T2[T2[a, iG], iH] != T2[a, iGH], [a, G, Hh], "(a g)h != a(gh)")
        V("tensor-assoc", T2[T2[iG, a], iH] != T2[iG, T2[a, iH]], [G, a, Hh], "(f a)h != f(a h)")
        V("tensor-assoc", T2[iGH, a] != T2[iG, T2[iH, a]], [G, Hh, a], "(fg)a != f(ga)")


# ---------------------------------------------------------------------------
# Pasting expressions


class Expr:
    __slots__ = ()


class Expr1(Expr):
    __slots__ = ()


class Expr2(Expr):
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Id1(Expr1):
    obj: int

    def __str__(self):
        return f"X{self.obj}"


@dataclass(frozen=True, slots=True)
class Lit1(Expr1):
    cell: int

    def __str__(self):
        return f"f{self.cell}"


@dataclass(frozen=True, slots=True)
class Comp1(Expr1):
    left: Expr1
    right: Expr1

    def __str__(self):
        return f"({self.left} # {self.right})"


@dataclass(frozen=True, slots=True)
class Tensor1(Expr1):
    left: Expr1
    right: Expr1

    def __str__(self):
        return f"({self.left} @ {self.right})"


@dataclass(frozen=True, slots=True)
class Id2(Expr2):
    e1: Expr1

    def __str__(self):
        return str(self.e1)


@dataclass(frozen=True, slots=True)
class Lit2(Expr2):
    cell: int

    def __str__(self):
        return f"c{self.cell}"


@dataclass(frozen=True, slots=True)
class VComp(Expr2):
    top: Expr2
    bottom: Expr2

    def __str__(self):
        return f"({self.top} >> {self.bottom})"


@dataclass(frozen=True, slots=True)
class HComp(Expr2):
    left: Expr2
    right: Expr2

    def __str__(self):
        return f"({self.left} # {self.right})"


@dataclass(frozen=True, slots=True)
class Tensor2(Expr2):
    left: Expr2
    right: Expr2

    def __str__(self):
        return f"({self.left} @ {self.right})"


def eval1(m: TwoCategoryModel, e: Expr1) -> int:
    """Evaluate a 1-cell expression, checking boundaries at every node."""
    if isinstance(e, Lit1):
        if not 0 <= e.cell < m.n_one:
            raise BoundaryError(f"unknown 1-cell at {e}")
        return e.cell
    if isinstance(e, Id1):
        if not 0 <= e.obj < m.n_objects:
            raise BoundaryError(f"unknown object at {e}")
        return m.id1(e.obj)
    if isinstance(e, Comp1):
        f, g = eval1(m, e.left), eval1(m, e.right)
        if m.dst1(f) != m.src1(g):
            raise BoundaryError(f"ill-typed composite at {e}: target of left is not source of right")
        return m.comp1(f, g)
    if isinstance(e, Tensor1):
        return m.tensor1(eval1(m, e.left), eval1(m, e.right))
    raise BoundaryError(f"not a 1-cell expression: {e!r}")


def eval2(m: TwoCategoryModel, e: Expr2) -> int:
    """Evaluate a 2-cell expression, checking boundaries at every node."""
    if isinstance(e, Lit2):
        if not 0 <= e.cell < m.n_two:
            raise BoundaryError(f"unknown 2-cell at {e}")
        return e.cell
    if isinstance(e, Id2):
        return m.id2(eval1(m, e.e1))
    if isinstance(e, VComp):
        a, b = eval2(m, e.top), eval2(m, e.bottom)
        if m.dst2(a) != m.src2(b):
            raise BoundaryError(f"ill-typed vertical composite at {e}")
        return m.vcomp(a, b)
    if isinstance(e, HComp):
        a, b = eval2(m, e.left), eval2(m, e.right)
        if m.dst1(m.src2(a)) != m.src1(m.src2(b)):
            raise BoundaryError(f"ill-typed horizontal composite at {e}")
        return m.hcomp(a, b)
    if isinstance(e, Tensor2):
        return m.tensor2(eval2(m, e.left), eval2(m, e.right))
    if isinstance(e, Expr1):
        return m.id2(eval1(m, e))
    raise BoundaryError(f"not a 2-cell expression: {e!r}")


def expr_to_json(e: Expr) -> list:
    if isinstance(e, Id1):
        return ["id1", e.obj]
    if isinstance(e, Lit1):
        return ["c1", e.cell]
    if isinstance(e, Comp1):
        return ["comp1", expr_to_json(e.left), expr_to_json(e.right)]
    if isinstance(e, Tensor1):
        return ["t1", expr_to_json(e.left), expr_to_json(e.right)]
    if isinstance(e, Id2):
        return ["id2", expr_to_json(e.e1)]
    if isinstance(e, Lit2):
        return ["c2", e.cell]
    if isinstance(e, VComp):
        return ["v", expr_to_json(e.top), expr_to_json(e.bottom)]
    if isinstance(e, HComp):
        return ["h", expr_to_json(e.left), expr_to_json(e.right)]
    if isinstance(e, Tensor2):
        return ["t2", expr_to_json(e.left), expr_to_json(e.right)]
    raise TypeError(f"not an expression: {e!r}")


_JSON_NODES = {
    "comp1": Comp1, "t1": Tensor1, "v": VComp, "h": HComp, "t2": Tensor2,
}


def expr_from_json(data) -> Expr:
    tag = data[0]
    if tag == "id1":
        return Id1(int(data[1]))
    if tag == "c1":
        return Lit1(int(data[1]))
    if tag == "c2":
        return Lit2(int(data[1]))
    if tag == "id2":
        return Id2(expr_from_json(data[1]))
    if tag in _JSON_NODES:
        return _JSON_NODES[tag](expr_from_json(data[1]), expr_from_json(data[2]))
    raise ValueError(f"unknown expression tag {tag!r}")


class Term:
    """An expression bound to a model, type-checked as it is built.

    ``a >> b`` is vertical composition (first ``a``), ``a * b`` is ``#``
    (composition of 1-cells or horizontal composition of 2-cells) and
    ``a @ b`` is the tensor.  1-cell terms are promoted to identity 2-cells
    whenever they meet a 2-cell term.
    """

    __slots__ = ("model", "expr", "dim", "value")

    def __init__(self, model: TwoCategoryModel, expr: Expr, dim: int, value: int):
        self.model = model
        self.expr = expr
        self.dim = dim
        self.value = value

    def __repr__(self) -> str:
        return f"Term({self.expr}, value={self.value})"

    def as2(self) -> Term:
        if self.dim == 2:
            return self
        return Term(self.model, Id2(self.expr), 2, self.model.id2(self.value))

    @property
    def src(self) -> int:
        """Source 1-cell (for 2-cells) or source object (for 1-cells)."""
        m = self.model
        return m.src2(self.value) if self.dim == 2 else m.src1(self.value)

    @property
    def dst(self) -> int:
        m = self.model
        return m.dst2(self.value) if self.dim == 2 else m.dst1(self.value)

    def __rshift__(self, other: Term) -> Term:
        a, b = self.as2(), other.as2()
        m = self.model
        if m.dst2(a.value) != m.src2(b.value):
            raise BoundaryError(
                f"ill-typed vertical composite ({a.expr}) >> ({b.expr}): "
                f"{m.label(1, m.dst2(a.value))} vs {m.label(1, m.src2(b.value))}"
            )
        return Term(m, VComp(a.expr, b.expr), 2, m.vcomp(a.value, b.value))

    def __mul__(self, other: Term) -> Term:
        m = self.model
        if self.dim == 1 and other.dim == 1:
            if m.dst1(self.value) != m.src1(other.value):
                raise BoundaryError(f"ill-typed composite ({self.expr}) # ({other.expr})")
            return Term(m, Comp1(self.expr, other.expr), 1, m.comp1(self.value, other.value))
        a, b = self.as2(), other.as2()
        if m.dst1(m.src2(a.value)) != m.src1(m.src2(b.value)):
            raise BoundaryError(f"ill-typed horizontal composite ({a.expr}) # ({b.expr})")
        return Term(m, HComp(a.expr, b.expr), 2, m.hcomp(a.value, b.value))

    def __matmul__(self, other: Term) -> Term:
        m = self.model
        if self.dim == 1 and other.dim == 1:
            return Term(m, Tensor1(self.expr, other.expr), 1, m.tensor1(self.value, other.value))
        a, b = self.as2(), other.as2()
        return Term(m, Tensor2(a.expr, b.expr), 2, m.tensor2(a.value, b.value))


def vchain(*terms: Term) -> Term:
    out = terms[0]
    for t in terms[1:]:
        out = out >> t
    return out


# ---------------------------------------------------------------------------
# Equations


@dataclass(frozen=True)
class Equation:
    """Two expressions claimed equal.  ``dim`` 1 compares 1-cells."""

    lhs: Expr
    rhs: Expr
    name: str = ""
    dim: int = 2

    @staticmethod
    def of(name: str, lhs: Term, rhs: Term) -> Equation:
        if lhs.dim == 1 and rhs.dim == 1:
            return Equation(lhs.expr, rhs.expr, name, 1)
        return Equation(lhs.as2().expr, rhs.as2().expr, name)


@dataclass(frozen=True)
class CheckRecord:
    model: TwoCategoryModel
    equation: Equation
    lhs_value: int
    rhs_value: int

    @property
    def result(self) -> bool:
        return self.lhs_value == self.rhs_value


_recorder: contextvars.ContextVar[list | None] = contextvars.ContextVar("weakunits_recorder", default=None)


@contextlib.contextmanager
def recording() -> Iterator[list[CheckRecord]]:
    """Collect every equation passed to :func:`check_equation` in this context."""
    records: list[CheckRecord] = []
    token = _recorder.set(records)
    try:
        yield records
    finally:
        _recorder.reset(token)


@contextlib.contextmanager
def not_recording() -> Iterator[None]:
    token = _recorder.set(None)
    try:
        yield
    finally:
        _recorder.reset(token)


def check_equation(m: TwoCategoryModel, eq: Equation) -> bool:
    """Evaluate both sides; true iff they are the same cell.

    Raises :class:`BoundaryError` if either side is ill-typed or the two
    sides are not parallel.
    """
    if eq.dim == 1:
        a, b = eval1(m, eq.lhs), eval1(m, eq.rhs)
        parallel = m.src1(a) == m.src1(b) and m.dst1(a) == m.dst1(b)
    else:
        a, b = eval2(m, eq.lhs), eval2(m, eq.rhs)
        parallel = m.src2(a) == m.src2(b) and m.dst2(a) == m.dst2(b)
    if not parallel:
        raise BoundaryError(f"sides of {eq.name or 'equation'} are not parallel")
    rec = _recorder.get()
    if rec is not None:
        rec.append(CheckRecord(m, eq, a, b))
    return a == b


def check(name: str, lhs: Term, rhs: Term) -> bool:
    """Shorthand for checking an equation between two terms."""
    return check_equation(lhs.model, Equation.of(name, lhs, rhs))
