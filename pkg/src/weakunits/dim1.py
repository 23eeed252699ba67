"""Units in monoidal 1-categories.

These functions work on models whose 2-cells are all identities, where the
2-dimensional story collapses to equalities of 1-cells.  They serve as an
independent check of the 2-dimensional synthesis in :mod:`weakunits.units`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import MultiplePreimages, NoPreimage
from .kernel import TwoCategoryModel, check


@dataclass(frozen=True)
class Unit1:
    I: int
    alpha: int
    lam: dict[int, int]
    rho: dict[int, int]


@dataclass
class Dim1Report:
    ok: bool
    failures: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)
    checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


def require_discrete(m: TwoCategoryModel) -> None:
    if m.n_two != m.n_one or sorted(m.id2_table.tolist()) != list(range(m.n_two)):
        raise ValueError(f"{m.name}: 1-dimensional operations need a model with only identity 2-cells")


def inverse_1(m: TwoCategoryModel, f: int) -> int | None:
    a, b = m.src1(f), m.dst1(f)
    for g in m.hom1(b, a):
        if m.comp1(f, g) == m.id1(a) and m.comp1(g, f) == m.id1(b):
            return g
    return None


def is_cancellable_1(m: TwoCategoryModel, obj: int) -> bool:
    """Tensoring with ``obj`` on either side is bijective on every hom-set."""
    e = m.id1(obj)
    for x in range(m.n_objects):
        for y in range(m.n_objects):
            src = m.hom1(x, y)
            left = {m.tensor1(e, f) for f in src}
            right = {m.tensor1(f, e) for f in src}
            lt = m.hom1(m.tensor_obj(obj, x), m.tensor_obj(obj, y))
            rt = m.hom1(m.tensor_obj(x, obj), m.tensor_obj(y, obj))
            if len(left) != len(src) or len(left) != len(lt):
                return False
            if len(right) != len(src) or len(right) != len(rt):
                return False
    return True


def find_units_1(m: TwoCategoryModel) -> list[tuple[int, int]]:
    """All ``(I, alpha)`` with ``I`` cancellable and ``alpha: II -> I`` invertible."""
    require_discrete(m)
    out = []
    for i in range(m.n_objects):
        if not is_cancellable_1(m, i):
            continue
        for a in m.hom1(m.tensor_obj(i, i), i):
            if inverse_1(m, a) is not None:
                out.append((i, a))
    return out


def _solve(m: TwoCategoryModel, candidates, test, what: str) -> int:
    found = [f for f in candidates if test(f)]
    if not found:
        raise NoPreimage(f"{what}: no solution")
    if len(found) > 1:
        raise MultiplePreimages(f"{what}: {len(found)} solutions", tuple(found))
    return found[0]


def construct_lr_1(m: TwoCategoryModel, I: int, alpha: int) -> Unit1:
    """The unique ``lambda_X``, ``rho_X`` with ``I lambda_X = alpha X`` and ``rho_X I = X alpha``."""
    require_discrete(m)
    t1 = m.tensor1
    iI = m.id1(I)
    lam, rho = {}, {}
    for x in range(m.n_objects):
        ix = m.id1(x)
        lam[x] = _solve(
            m, m.hom1(m.tensor_obj(I, x), x),
            lambda f: t1(iI, f) == t1(alpha, ix), f"lambda at object {x}",
        )
        rho[x] = _solve(
            m, m.hom1(m.tensor_obj(x, I), x),
            lambda f: t1(f, iI) == t1(ix, alpha), f"rho at object {x}",
        )
    return Unit1(I, alpha, lam, rho)


def verify_kelly_1(m: TwoCategoryModel, u: Unit1) -> Dim1Report:
    """Check the defining axioms, the Kelly axiom and the consequences derived from it.

    Each check is an equation of 1-cells evaluated by the kernel, so the
    checks are recorded like any other.
    """
    rep = Dim1Report(True)
    I, lam, rho = u.I, u.lam, u.rho
    i, a = m.obj(I), m.one(u.alpha)
    L, R = (lambda x: m.one(lam[x])), (lambda x: m.one(rho[x]))

    def need(name, lhs, rhs, *ids):
        rep.checked += 1
        if not check(name, lhs, rhs):
            rep.ok = False
            rep.failures.append((name, ids))

    n = m.n_objects
    for x in range(n):
        X = m.obj(x)
        need("axiom L", i @ L(x), a @ X, x)
        need("axiom R", R(x) @ i, X @ a, x)
        need("lambda_IX = I lambda_X", L(m.tensor_obj(I, x)), i @ L(x), x)
        need("rho_XI = rho_X I", R(m.tensor_obj(x, I)), R(x) @ i, x)
        for y in range(n):
            Y = m.obj(y)
            xy = m.tensor_obj(x, y)
            need("kelly", X @ L(y), R(x) @ Y, x, y)
            need("lambda_XY = lambda_X Y", L(xy), L(x) @ Y, x, y)
            need("rho_XY = X rho_Y", R(xy), X @ R(y), x, y)
    need("lambda_I = rho_I", L(I), R(I), I)
    for f in range(m.n_one):
        x, y = m.src1(f), m.dst1(f)
        F = m.one(f)
        need("lambda natural", (i @ F) * L(y), L(x) * F, f)
        need("rho natural", (F @ i) * R(y), R(x) * F, f)
    return rep


def verify_assoc_1(m: TwoCategoryModel, u: Unit1) -> bool:
    """``I alpha = alpha I``, hence ``alpha`` is associative."""
    iI = m.id1(u.I)
    a = u.alpha
    return m.tensor1(iI, a) == m.tensor1(a, iI) and m.comp1(m.tensor1(iI, a), a) == m.comp1(m.tensor1(a, iI), a)


def canonical_unit_iso_1(m: TwoCategoryModel, u: Unit1, v: Unit1) -> int:
    """``I -> IJ -> J``: the inverse of ``v``'s ``rho_I`` followed by ``u``'s ``lambda_J``."""
    r = inverse_1(m, v.rho[u.I])
    if r is None:
        raise NoPreimage("rho_I is not invertible")
    return m.comp1(r, u.lam[v.I])


def unit_isos_1(m: TwoCategoryModel, u: Unit1, v: Unit1) -> list[int]:
    """All isomorphisms ``f: I -> J`` with ``alpha # f = (f f) # beta``."""
    return [
        f for f in m.hom1(u.I, v.I)
        if inverse_1(m, f) is not None
        and m.comp1(u.alpha, f) == m.comp1(m.tensor1(f, f), v.alpha)
    ]
