"""The arrow 2-category of a finite model, and transport of units into it.

Objects of the arrow model are the 1-cells ``x: X0 -> X1`` of the base.  A
1-cell ``x -> y`` is a square ``(f0, f1, F)`` with ``f0: X0 -> Y0``,
``f1: X1 -> Y1`` and ``F: x # f1 => f0 # y``.  A 2-cell between parallel
squares is a pair ``(m0, m1)`` of base 2-cells satisfying the cylinder
equation ``F >> (m0 # y) == (x # m1) >> G``.  Everything is materialized;
ids are assigned in lexicographic order of the base ids.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, CertificationError, StructuralError
from .kernel import Limits, TwoCategoryModel, check, validate_model
from .reports import Report
from .units import (
    ConstraintPack,
    UnitMorphism,
    UnitObject,
    certify_pack,
    check_semimonoid_map,
    check_unit_morphism,
    make_unit,
    semimonoid_of,
    short_cube_terms,
    synth_constraints,
)
from .equivalence import check_witness


@dataclass
class ArrowModel:
    model: TwoCategoryModel
    base: TwoCategoryModel
    squares: list[tuple[int, int, int, int, int]]  # (x, y, f0, f1, F)
    cylinders: list[tuple[int, int, int, int]]  # (src square, dst square, m0, m1)

    def square_id(self, x: int, y: int, f0: int, f1: int, F: int) -> int:
        try:
            return self._square_index[x, y, f0, f1, F]
        except KeyError:
            raise StructuralError(f"({x}, {y}, {f0}, {f1}, {F}) is not a square") from None

    def components(self, c: int) -> tuple[int, int]:
        """The two base 2-cells of an arrow-model 2-cell."""
        _, _, m0, m1 = self.cylinders[c]
        return m0, m1

    def __post_init__(self):
        self._square_index = {s: i for i, s in enumerate(self.squares)}

    def provenance(self) -> dict:
        return {
            "construction": "arrow",
            "objects": list(range(self.base.n_one)),
            "one_cells": [list(s) for s in self.squares],
            "two_cells": [list(c) for c in self.cylinders],
        }


def _lookup(keys_sorted: np.ndarray, order: np.ndarray, query: np.ndarray) -> np.ndarray:
    pos = np.searchsorted(keys_sorted, query)
    pos = np.clip(pos, 0, len(keys_sorted) - 1)
    found = keys_sorted[pos] == query
    return np.where(found, order[pos], -1)


def build_arrow_model(m: TwoCategoryModel, budget: int = 4096) -> ArrowModel:
    """Tabulate the arrow 2-category of ``m``."""
    B1, B2 = m.n_one, m.n_two
    os_, od = m.one_src, m.one_dst
    C, V, H = m.comp1_table, m.vcomp_table, m.hcomp_table
    T1, T2 = m.tensor1_table, m.tensor2_table
    i2 = m.id2_table

    squares = []
    for x in range(B1):
        for y in range(B1):
            for f0 in m.hom1(int(os_[x]), int(os_[y])):
                for f1 in m.hom1(int(od[x]), int(od[y])):
                    for F in m.hom2(m.comp1(x, f1), m.comp1(f0, y)):
                        squares.append((x, y, f0, f1, F))
                        if len(squares) > budget:
                            raise BudgetExceeded(f"arrow model has more than {budget} 1-cells")
    NS = len(squares)
    sq = np.array(squares, dtype=np.int64).reshape(NS, 5)
    sx, sy, s0, s1, sF = sq.T

    by_hom: dict[tuple[int, int], list[int]] = {}
    for k, (x, y, *_rest) in enumerate(squares):
        by_hom.setdefault((x, y), []).append(k)
    cylinders = []
    for (x, y), ks in by_hom.items():
        idx, idy = m.id2(x), m.id2(y)
        for a in ks:
            _, _, f0, f1, F = squares[a]
            for b in ks:
                _, _, g0, g1, G = squares[b]
                for m0 in m.hom2(f0, g0):
                    left = m.vcomp(F, m.hcomp(m0, idy))
                    for m1 in m.hom2(f1, g1):
                        if left == m.vcomp(m.hcomp(idx, m1), G):
                            cylinders.append((a, b, m0, m1))
                            if len(cylinders) > budget:
                                raise BudgetExceeded(f"arrow model has more than {budget} 2-cells")
    cylinders.sort()
    NC = len(cylinders)
    cy = np.array(cylinders, dtype=np.int64).reshape(NC, 4)
    cs, cd, c0, c1 = cy.T

    def sq_key(x, y, f0, f1, F):
        return (((x * B1 + y) * B1 + f0) * B1 + f1) * B2 + F

    skeys = sq_key(sx, sy, s0, s1, sF)
    sorder = np.argsort(skeys)
    skeys_sorted = skeys[sorder]

    def find_square(x, y, f0, f1, F):
        return _lookup(skeys_sorted, sorder, sq_key(x, y, f0, f1, F))

    def cy_key(s, d, m0, m1):
        return ((s * NS + d) * B2 + m0) * B2 + m1

    ckeys = cy_key(cs, cd, c0, c1)
    corder = np.argsort(ckeys)
    ckeys_sorted = ckeys[corder]

    def find_cyl(s, d, m0, m1):
        return _lookup(ckeys_sorted, corder, cy_key(s, d, m0, m1))

    # id1: the square (x, x, id, id, id2(x)).
    xs = np.arange(B1)
    id1 = find_square(xs, xs, m.id1_table[os_], m.id1_table[od], i2)

    # comp1 of squares.
    comp1 = np.full((NS, NS), -1, dtype=np.int64)
    a, b = np.nonzero(sy[:, None] == sx[None, :])
    if len(a):
        F_new = V[H[sF[a], i2[s1[b]]], H[i2[s0[a]], sF[b]]]
        comp1[a, b] = find_square(sx[a], sy[b], C[s0[a], s0[b]], C[s1[a], s1[b]], F_new)

    # 2-cells.
    ks = np.arange(NS)
    id2 = find_cyl(ks, ks, i2[s0], i2[s1])
    vcomp = np.full((NC, NC), -1, dtype=np.int64)
    a, b = np.nonzero(cd[:, None] == cs[None, :])
    if len(a):
        vcomp[a, b] = find_cyl(cs[a], cd[b], V[c0[a], c0[b]], V[c1[a], c1[b]])
    hcomp = np.full((NC, NC), -1, dtype=np.int64)
    a, b = np.nonzero(sy[cs][:, None] == sx[cs][None, :])
    if len(a):
        hcomp[a, b] = find_cyl(comp1[cs[a], cs[b]], comp1[cd[a], cd[b]], H[c0[a], c0[b]], H[c1[a], c1[b]])

    tensor_obj = T1.copy()
    P, Q = np.indices((NS, NS))
    tensor1 = find_square(T1[sx[P], sx[Q]], T1[sy[P], sy[Q]], T1[s0[P], s0[Q]], T1[s1[P], s1[Q]], T2[sF[P], sF[Q]])
    P, Q = np.indices((NC, NC))
    tensor2 = find_cyl(tensor1[cs[P], cs[Q]], tensor1[cd[P], cd[Q]], T2[c0[P], c0[Q]], T2[c1[P], c1[Q]])

    model = TwoCategoryModel(
        objects=B1,
        one_cells=list(zip(sx.tolist(), sy.tolist())),
        id1=id1,
        comp1=comp1,
        two_cells=list(zip(cs.tolist(), cd.tolist())),
        id2=id2,
        vcomp=vcomp,
        hcomp=hcomp,
        tensor_obj=tensor_obj,
        tensor1=tensor1,
        tensor2=tensor2,
        name=f"{m.name}^2",
        meta={"construction": "arrow", "base": m.name},
        labels={
            "objects": [m.label(1, x) for x in range(B1)],
            "one_cells": [f"[{m.label(1, f0)},{m.label(1, f1)};{m.label(2, F)}]" for (_, _, f0, f1, F) in squares],
            "two_cells": [f"({m.label(2, a0)},{m.label(2, a1)})" for (_, _, a0, a1) in cylinders],
        },
        limits=Limits(objects=max(B1, 1), one_cells=budget, two_cells=budget),
    )
    return ArrowModel(model, m, squares, cylinders)


def lift_unit(m: TwoCategoryModel, am: ArrowModel, mor: UnitMorphism) -> tuple[UnitObject, Report]:
    """The object ``u`` of the arrow model with structure square ``(alpha0, alpha1, U^-1)``.

    The returned unit is certified inside the arrow model: cancellability
    and the equi-arrow property are searched for there, not assumed.
    """
    rep = Report("lifted unit")
    if not rep.need("base morphism is a unit morphism", check_unit_morphism(m, mor)):
        raise CertificationError("not a unit morphism")
    u = mor.u
    Uinv = m.inverse(mor.U)
    sq = am.square_id(m.tensor1(u, u), u, mor.src.alpha, mor.dst.alpha, Uinv)
    lifted = make_unit(am.model, u, sq)
    rep.need("structure map witness", check_witness(am.model, lifted.witness))
    return lifted, rep


def verify_theorem_B(
    m: TwoCategoryModel,
    mor: UnitMorphism,
    p0: ConstraintPack,
    p1: ConstraintPack,
    am: ArrowModel | None = None,
    seed: int = 0,
    A1: int | None = None,
) -> Report:
    """A unit morphism is a semi-monoid map, checked two ways.

    Directly, by evaluating the cube (and its short form) with the two
    associators; and through the arrow model, by synthesizing the associator
    of the lifted unit and comparing its two ends with the base
    associators.  ``A1`` replaces the target associator (negative control).
    """
    rep = Report("unit morphisms are semi-monoid maps")
    A0 = p0.A
    A1 = p1.A if A1 is None else A1
    s0, s1 = semimonoid_of(m, p0), semimonoid_of(m, p1)
    s1 = type(s1)(s1.X, s1.alpha, m.hcomp(A1, m.id2(s1.alpha)), A1)
    direct = check_semimonoid_map(m, s0, s1, mor.u, mor.U)
    rep.merge(direct, "direct: ")
    rep.details["direct"] = direct.ok

    if am is None:
        am = build_arrow_model(m)
    val = validate_model(am.model)
    rep.need("arrow model validates", val.ok, val.to_json() if not val.ok else None)
    lifted, lrep = lift_unit(m, am, mor)
    rep.merge(lrep)
    pa = synth_constraints(am.model, lifted, seed)
    rep.merge(certify_pack(am.model, pa, naturality=True), "lifted pack: ")
    B0, B1 = am.components(pa.A)
    rep.details["lifted associator"] = {"B0": B0, "B1": B1, "A0": A0, "A1": A1}
    arrow = (B0 == A0) and (B1 == A1)
    rep.details["arrow"] = arrow
    # The lifted associator is a cylinder by construction; its cylinder
    # equation with the base associators substituted is the short cube.
    arrow_eq = check("lifted short cube", *short_cube_terms(m, B0, B1, mor.u, mor.U))
    rep.need("lifted associator cylinder", arrow_eq)
    rep.need("routes agree", direct.ok == arrow, {"direct": direct.ok, "arrow": arrow})
    rep.need("direct route", direct.ok)
    rep.need("arrow route", arrow)
    return rep
