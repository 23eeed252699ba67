"""Built-in finite models.

All generators go through :func:`tabulate`, which takes cells as hashable
labels plus the structure maps as Python functions on labels and produces the
dense tables.  The generators are deterministic: the same arguments always
give the same ids.
"""

from __future__ import annotations

from itertools import product
from typing import Callable, Hashable, Sequence

from .kernel import Limits, TwoCategoryModel, DEFAULT_LIMITS

Label = Hashable


def tabulate(
    name: str,
    objects: Sequence[Label],
    one_cells: Sequence[tuple[Label, Label, Label]],
    two_cells: Sequence[tuple[Label, Label, Label]],
    *,
    id1: Callable[[Label], Label],
    comp1: Callable[[Label, Label], Label],
    id2: Callable[[Label], Label],
    vcomp: Callable[[Label, Label], Label],
    hcomp: Callable[[Label, Label], Label],
    tensor_obj: Callable[[Label, Label], Label],
    tensor1: Callable[[Label, Label], Label],
    tensor2: Callable[[Label, Label], Label],
    meta: dict | None = None,
    limits: Limits | None = DEFAULT_LIMITS,
) -> TwoCategoryModel:
    """Build a model from labelled cells.

    ``one_cells`` and ``two_cells`` are ``(label, src, dst)`` triples whose
    boundaries are labels of the previous dimension.  Composites are only
    requested for composable pairs.
    """
    oi = {x: i for i, x in enumerate(objects)}
    fi = {f: i for i, (f, _, _) in enumerate(one_cells)}
    ci = {c: i for i, (c, _, _) in enumerate(two_cells)}
    f_src = [oi[s] for _, s, _ in one_cells]
    f_dst = [oi[d] for _, _, d in one_cells]
    c_src = [fi[s] for _, s, _ in two_cells]
    c_dst = [fi[d] for _, _, d in two_cells]
    fl = [f for f, _, _ in one_cells]
    cl = [c for c, _, _ in two_cells]

    comp1_t = {}
    for a, b in product(range(len(fl)), repeat=2):
        if f_dst[a] == f_src[b]:
            comp1_t[a, b] = fi[comp1(fl[a], fl[b])]
    vcomp_t, hcomp_t = {}, {}
    for a, b in product(range(len(cl)), repeat=2):
        if c_dst[a] == c_src[b]:
            vcomp_t[a, b] = ci[vcomp(cl[a], cl[b])]
        if f_dst[c_src[a]] == f_src[c_src[b]]:
            hcomp_t[a, b] = ci[hcomp(cl[a], cl[b])]
    return TwoCategoryModel(
        objects=len(objects),
        one_cells=list(zip(f_src, f_dst)),
        id1=[fi[id1(x)] for x in objects],
        comp1=comp1_t,
        two_cells=list(zip(c_src, c_dst)),
        id2=[ci[id2(f)] for f in fl],
        vcomp=vcomp_t,
        hcomp=hcomp_t,
        tensor_obj={(a, b): oi[tensor_obj(x, y)] for (a, x), (b, y) in product(enumerate(objects), repeat=2)},
        tensor1={(a, b): fi[tensor1(f, g)] for (a, f), (b, g) in product(enumerate(fl), repeat=2)},
        tensor2={(a, b): ci[tensor2(c, d)] for (a, c), (b, d) in product(enumerate(cl), repeat=2)},
        name=name,
        meta=meta,
        labels={
            "objects": [str(x) for x in objects],
            "one_cells": [_show(f) for f in fl],
            "two_cells": [_show(c) for c in cl],
        },
        limits=limits,
    )


def _show(label) -> str:
    if isinstance(label, tuple):
        return ":".join(_show(x) for x in label)
    return str(label)


def cyclic_table(n: int) -> list[list[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def monoid_model(table: Sequence[Sequence[int]], name: str = "monoid") -> TwoCategoryModel:
    """Discrete monoidal model: objects are monoid elements, tensor is the product.

    Only identity 1-cells and 2-cells.  The table is not checked here; a
    non-associative table shows up as a ``tensor-assoc`` violation.
    """
    n = len(table)
    elems = list(range(n))
    ones = [(("id", x), x, x) for x in elems]
    twos = [(("id", f), f, f) for f, _, _ in ones]
    mul = lambda x, y: table[x][y]
    return tabulate(
        name, elems, ones, twos,
        id1=lambda x: ("id", x),
        comp1=lambda f, g: f,
        id2=lambda f: ("id", f),
        vcomp=lambda a, b: a,
        hcomp=lambda a, b: a,
        tensor_obj=mul,
        tensor1=lambda f, g: ("id", mul(f[1], g[1])),
        tensor2=lambda a, b: ("id", ("id", mul(a[1][1], b[1][1]))),
        meta={"generator": "monoid", "table": [list(r) for r in table]},
    )


def m3() -> TwoCategoryModel:
    """Z/3 under addition, as a discrete strict monoidal model (unit 0)."""
    m = monoid_model(cyclic_table(3), name="M3")
    m.meta["generator"] = "m3"
    return m


def puff(
    elements: Sequence[str],
    table: Sequence[Sequence[int]],
    labels: int = 0,
    name: str = "puff",
    with_x: bool = True,
) -> TwoCategoryModel:
    """One object ``I`` whose endo-hom is a commutative monoid, plus an absorbing ``X``.

    The 1-cells ``I -> I`` are the monoid elements; composition and tensor
    of such 1-cells are both the monoid product.  ``X`` satisfies
    ``IX = XI = XX = X`` and has only its identity; tensoring anything with
    a cell on ``X`` collapses to that identity.

    ``labels = 0`` gives only identity 2-cells.  ``labels = n >= 1`` puts
    ``n`` 2-cells ``g => h`` (labelled by Z/n) between every pair of monoid
    elements; all three compositions of 2-cells add labels.
    """
    objs = ["I", "X"] if with_x else ["I"]
    k = len(elements)
    mul = lambda a, b: table[a][b]
    ones = [(a, "I", "I") for a in range(k)]
    if with_x:
        ones.append(("idX", "X", "X"))
    if labels <= 0:
        twos = [((a, a, 0), a, a) for a in range(k)]
        n = 1
    else:
        n = labels
        twos = [((a, b, l), a, b) for a in range(k) for b in range(k) for l in range(n)]
    if with_x:
        twos.append((("idX", "idX", 0), "idX", "idX"))

    def on_x(*cells):
        return any(c == "idX" or (isinstance(c, tuple) and c[0] == "idX") for c in cells)

    def comp(c, d):
        if on_x(c, d):
            return ("idX", "idX", 0)
        return (mul(c[0], d[0]), mul(c[1], d[1]), (c[2] + d[2]) % n)

    one_name = lambda a: a if a == "idX" else elements[a]
    m = tabulate(
        name, objs, ones, twos,
        id1=lambda x: 0 if x == "I" else "idX",
        comp1=lambda f, g: "idX" if on_x(f, g) else mul(f, g),
        id2=lambda f: ("idX", "idX", 0) if f == "idX" else (f, f, 0),
        vcomp=lambda a, b: a if on_x(a) else (a[0], b[1], (a[2] + b[2]) % n),
        hcomp=comp,
        tensor_obj=lambda x, y: "I" if (x, y) == ("I", "I") else "X",
        tensor1=lambda f, g: "idX" if on_x(f, g) else mul(f, g),
        tensor2=comp,
        meta={"generator": "puff", "elements": list(elements), "table": [list(r) for r in table],
              "labels": labels, "with_x": with_x},
    )
    m.labels["one_cells"] = [one_name(f) for f, _, _ in ones]
    m.labels["two_cells"] = [
        "idX" if c[0] == "idX" else f"{elements[c[0]]}=>{elements[c[1]]}:{c[2]}" for c, _, _ in twos
    ]
    return m


Z2 = (["e", "u"], [[0, 1], [1, 0]])


def z2p() -> TwoCategoryModel:
    """Puffed unit: hom(I,I) = {e, u} with u # u = e, identity 2-cells only."""
    m = puff(*Z2, labels=0, name="Z2P")
    m.meta["generator"] = "z2p"
    return m


def zg() -> TwoCategoryModel:
    """Z/2-graded puff: every hom-set in hom(I,I) is a copy of Z/2."""
    m = puff(*Z2, labels=2, name="ZG")
    m.meta["generator"] = "zg"
    return m


def chp() -> TwoCategoryModel:
    """Chaotic puff: exactly one 2-cell between any two 1-cells I -> I."""
    m = puff(*Z2, labels=1, name="CHP")
    m.meta["generator"] = "chp"
    return m


def absorbing_endo() -> TwoCategoryModel:
    """One object with hom(I,I) = {e, u, z}: u an involution, z absorbing.

    ``z`` is a 1-cell that is compatible with the pseudo-idempotent
    structure but is not an equi-arrow; used as a fault case.
    """
    table = [[0, 1, 2], [1, 0, 2], [2, 2, 2]]
    m = puff(["e", "u", "z"], table, labels=0, name="EUZ", with_x=False)
    m.meta["generator"] = "euz"
    return m


def discretize(m: TwoCategoryModel) -> TwoCategoryModel:
    """Keep the objects and 1-cells of ``m`` and only its identity 2-cells."""
    keep = [int(m.id2(f)) for f in range(m.n_one)]
    new = {c: i for i, c in enumerate(keep)}
    twos = [(f, f) for f in range(m.n_one)]

    def restrict(table):
        return {
            (new[a], new[b]): new[int(table[a, b])]
            for a in keep for b in keep if table[a, b] >= 0
        }

    out = TwoCategoryModel(
        objects=m.n_objects,
        one_cells=list(zip(m.one_src.tolist(), m.one_dst.tolist())),
        id1=m.id1_table.tolist(),
        comp1=m.comp1_table,
        two_cells=twos,
        id2=list(range(m.n_one)),
        vcomp=restrict(m.vcomp_table),
        hcomp=restrict(m.hcomp_table),
        tensor_obj=m.tensor_obj_table,
        tensor1=m.tensor1_table,
        tensor2=restrict(m.tensor2_table),
        name=f"{m.name}-discrete",
        meta={**m.meta, "discretized": True},
        labels={
            "objects": m.labels.get("objects", []),
            "one_cells": m.labels.get("one_cells", []),
            "two_cells": [f"id:{m.label(1, f)}" for f in range(m.n_one)],
        },
    )
    return out


GENERATORS: dict[str, Callable[[], TwoCategoryModel]] = {
    "m3": m3,
    "z2p": z2p,
    "zg": zg,
    "chp": chp,
    "euz": absorbing_endo,
}


def shipped() -> dict[str, TwoCategoryModel]:
    """The four models the acceptance suite quantifies over."""
    return {"M3": m3(), "Z2P": z2p(), "ZG": zg(), "CHP": chp()}


TABLES = ("comp1", "vcomp", "hcomp", "tensor_obj", "tensor1", "tensor2")


def with_entry(m: TwoCategoryModel, table: str, key: tuple[int, int], value: int, name: str | None = None):
    """Copy of ``m`` with one table entry overwritten (fault injection)."""
    if table not in TABLES:
        raise ValueError(f"unknown table {table!r}")
    arrays = {t: getattr(m, f"{t}_table").copy() for t in TABLES}
    arrays[table][key] = value
    return TwoCategoryModel(
        objects=m.n_objects,
        one_cells=list(zip(m.one_src.tolist(), m.one_dst.tolist())),
        id1=m.id1_table,
        two_cells=list(zip(m.two_src.tolist(), m.two_dst.tolist())),
        id2=m.id2_table,
        name=name or f"{m.name}+fault",
        meta={**m.meta, "fault": {"table": table, "key": list(key), "value": value}},
        labels=m.labels,
        limits=None,
        **arrays,
    )
