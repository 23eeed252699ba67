"""Equi-arrows, cancellable objects and the unique-division steps.

An equi-arrow ``f: A -> B`` is a 1-cell with a pseudo-inverse ``g`` and
invertible cells ``eta: id_A => f # g``, ``eps: g # f => id_B`` satisfying
the triangle equations.  Division is how every "there is a unique 2-cell"
step is carried out: search the whole relevant hom-set, and fail loudly on
zero or several solutions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import CertificationError, MultiplePreimages, NoPreimage
from .kernel import TwoCategoryModel, check


@dataclass(frozen=True)
class AdjointEquivalenceWitness:
    """``eta: id => f # g`` and ``eps: g # f => id``."""

    f: int
    g: int
    eta: int
    eps: int


def _triangles(m: TwoCategoryModel, f: int, g: int, eta: int, eps: int) -> bool:
    idf, idg = m.id2(f), m.id2(g)
    t1 = m.vcomp(m.hcomp(eta, idf), m.hcomp(idf, eps))
    if t1 != idf:
        return False
    return m.vcomp(m.hcomp(idg, eta), m.hcomp(eps, idg)) == idg


def find_pseudo_inverse(m: TwoCategoryModel, f: int) -> AdjointEquivalenceWitness | None:
    """Smallest ``(g, eta, eps)`` making ``f`` an adjoint equivalence, if any."""
    a, b = m.src1(f), m.dst1(f)
    for g in m.hom1(b, a):
        etas = m.invertible_cells(m.id1(a), m.comp1(f, g))
        if not etas:
            continue
        epss = m.invertible_cells(m.comp1(g, f), m.id1(b))
        for eta in etas:
            for eps in epss:
                if _triangles(m, f, g, eta, eps):
                    return AdjointEquivalenceWitness(f, g, eta, eps)
    return None


def is_equi_arrow(m: TwoCategoryModel, f: int) -> bool:
    return find_pseudo_inverse(m, f) is not None


def check_witness(m: TwoCategoryModel, w: AdjointEquivalenceWitness) -> bool:
    """Re-check the two triangle equations as recorded equations."""
    f, g = m.one(w.f), m.one(w.g)
    eta, eps = m.two(w.eta), m.two(w.eps)
    ok = m.is_invertible(w.eta) and m.is_invertible(w.eps)
    ok &= check("triangle f", (eta * f) >> (f * eps), f)
    ok &= check("triangle g", (g * eta) >> (eps * g), g)
    return bool(ok)


# ---------------------------------------------------------------------------
# Functors between hom-categories


@dataclass
class HomFunctorTable:
    """A functor between two hom-categories of the same model, as tables."""

    model: TwoCategoryModel
    source: tuple[int, int]
    target: tuple[int, int]
    objects: dict[int, int]
    arrows: dict[int, int]
    name: str = ""

    def source_objects(self) -> tuple[int, ...]:
        return self.model.hom1(*self.source)

    def target_objects(self) -> tuple[int, ...]:
        return self.model.hom1(*self.target)


def whisker_functor(m: TwoCategoryModel, e: int, side: str, x: int, y: int) -> HomFunctorTable:
    """``f |-> e @ f`` (side ``left``) or ``f |-> f @ e`` on hom(x, y).

    ``e`` is a 1-cell; tensoring with an object is the case ``e = id1(I)``.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    t1, t2 = m.tensor1, m.tensor2
    ide = m.id2(e)
    objs, arrows = {}, {}
    for f in m.hom1(x, y):
        objs[f] = t1(e, f) if side == "left" else t1(f, e)
    for f in objs:
        for g in objs:
            for c in m.hom2(f, g):
                arrows[c] = t2(ide, c) if side == "left" else t2(c, ide)
    es, et = m.src1(e), m.dst1(e)
    if side == "left":
        src = (m.tensor_obj(es, x), m.tensor_obj(es, y))
        dst = (m.tensor_obj(et, x), m.tensor_obj(et, y))
    else:
        src = (m.tensor_obj(x, es), m.tensor_obj(y, es))
        dst = (m.tensor_obj(x, et), m.tensor_obj(y, et))
    # A 1-cell e: s -> t sends hom(x, y) to hom(s x, t y).
    return HomFunctorTable(m, (x, y), (src[0], dst[1]), objs, arrows, f"{side}:{m.label(1, e)}")


def tensor_hom_functor(m: TwoCategoryModel, obj: int, side: str, x: int, y: int) -> HomFunctorTable:
    """``hom(x, y) -> hom(obj x, obj y)`` (or ``x obj, y obj`` on the right)."""
    return whisker_functor(m, m.id1(obj), side, x, y)


def is_functor(F: HomFunctorTable) -> bool:
    m = F.model
    for f, Ff in F.objects.items():
        if F.arrows[m.id2(f)] != m.id2(Ff):
            return False
    for a, Fa in F.arrows.items():
        if m.src2(Fa) != F.objects[m.src2(a)] or m.dst2(Fa) != F.objects[m.dst2(a)]:
            return False
    for a, Fa in F.arrows.items():
        g = m.dst2(a)
        for h in F.objects:
            for b in m.hom2(g, h):
                if F.arrows[m.vcomp(a, b)] != m.vcomp(Fa, F.arrows[b]):
                    return False
    return True


def is_fully_faithful(F: HomFunctorTable) -> bool:
    """Bijective on every set of 2-cells ``f => g``."""
    m = F.model
    for f, Ff in F.objects.items():
        for g, Fg in F.objects.items():
            image = [F.arrows[c] for c in m.hom2(f, g)]
            if len(set(image)) != len(image) or len(image) != len(m.hom2(Ff, Fg)):
                return False
    return True


def is_essentially_surjective(F: HomFunctorTable) -> bool:
    m = F.model
    image = set(F.objects.values())
    for h in F.target_objects():
        if not any(m.invertible_cells(h, k) for k in image):
            return False
    return True


def is_equivalence(F: HomFunctorTable) -> bool:
    return is_fully_faithful(F) and is_essentially_surjective(F)


@dataclass
class CancellabilityReport:
    """Outcome of checking that tensoring with an object is an equivalence on homs."""

    obj: int
    ok: bool
    failures: list[tuple[str, int, int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def cancellability(m: TwoCategoryModel, obj: int, e: int | None = None) -> CancellabilityReport:
    """Check that ``e @ -`` and ``- @ e`` are equivalences on every hom-category.

    With ``e`` omitted this is cancellability of the object ``obj``.  Full
    faithfulness alone is not enough for the divisions used later (a
    missing 1-cell in the image leaves some 2-cell equations unsolvable),
    so essential surjectivity is required as well.
    """
    cell = m.id1(obj) if e is None else e
    failures = []
    for x in range(m.n_objects):
        for y in range(m.n_objects):
            for side in ("left", "right"):
                if not is_equivalence(whisker_functor(m, cell, side, x, y)):
                    failures.append((side, x, y))
    return CancellabilityReport(obj, not failures, failures)


def is_cancellable(m: TwoCategoryModel, obj: int) -> bool:
    return cancellability(m, obj).ok


# ---------------------------------------------------------------------------
# Division


@lru_cache(maxsize=4096)
def _tensor_preimages(m: TwoCategoryModel, e: int, side: str) -> dict[int, tuple[int, ...]]:
    ide = m.id2(e)
    row = m.tensor2_table[ide, :] if side == "left" else m.tensor2_table[:, ide]
    out: dict[int, list[int]] = {}
    for d, c in enumerate(row.tolist()):
        out.setdefault(c, []).append(d)
    return {k: tuple(v) for k, v in out.items()}


@lru_cache(maxsize=4096)
def _whisker_preimages(m: TwoCategoryModel, e: int, side: str) -> dict[int, tuple[int, ...]]:
    ide = m.id2(e)
    row = m.hcomp_table[ide, :] if side == "pre" else m.hcomp_table[:, ide]
    out: dict[int, list[int]] = {}
    for d, c in enumerate(row.tolist()):
        if c >= 0:
            out.setdefault(c, []).append(d)
    return {k: tuple(v) for k, v in out.items()}


def _unique(found: tuple[int, ...], what: str) -> int:
    if not found:
        raise NoPreimage(f"{what}: no preimage")
    if len(found) > 1:
        raise MultiplePreimages(f"{what}: {len(found)} preimages", found)
    return found[0]


def divide_tensor_by(m: TwoCategoryModel, e: int, side: str, c: int) -> int:
    """The unique ``d`` with ``e @ d == c`` (``left``) or ``d @ e == c`` (``right``).

    ``e`` is a 1-cell; the identity of an object gives ordinary division
    by that object.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    found = _tensor_preimages(m, e, side).get(c, ())
    return _unique(found, f"dividing {m.label(2, c)} by {m.label(1, e)} on the {side}")


def divide_tensor(m: TwoCategoryModel, obj: int, side: str, c: int) -> int:
    """The unique ``d`` with ``obj @ d == c`` (or ``d @ obj == c``)."""
    return divide_tensor_by(m, m.id1(obj), side, c)


def divide_whisker(m: TwoCategoryModel, e: int, side: str, c: int) -> int:
    """The unique ``d`` with ``e # d == c`` (``pre``) or ``d # e == c`` (``post``)."""
    if side not in ("pre", "post"):
        raise ValueError(f"side must be 'pre' or 'post', not {side!r}")
    found = _whisker_preimages(m, e, side).get(c, ())
    return _unique(found, f"dividing {m.label(2, c)} by whiskering with {m.label(1, e)} ({side})")


# ---------------------------------------------------------------------------
# Mates


def mate(m: TwoCategoryModel, w: AdjointEquivalenceWitness, F: int, alpha: int, beta: int) -> int:
    """Transport a square ``F: alpha # f => (f @ f) # beta`` along ``f``'s inverse.

    Returns ``G: beta # g => (g @ g) # alpha``, obtained by pasting ``F``'s
    inverse with the inverses of ``eps @ eps`` and ``eta``.  ``F`` must be
    invertible.
    """
    f, g = w.f, w.g
    if m.src2(F) != m.comp1(alpha, f) or m.dst2(F) != m.comp1(m.tensor1(f, f), beta):
        raise CertificationError("mate: F does not have the expected boundary")
    gg = m.one(g) @ m.one(g)
    ee = m.tensor2(w.eps, w.eps)
    G = (
        (m.inv(ee) * m.one(beta) * m.one(g))
        >> (gg * m.inv(F) * m.one(g))
        >> (gg * m.one(alpha) * m.inv(w.eta))
    )
    return G.value


def mate_term(m: TwoCategoryModel, w: AdjointEquivalenceWitness, F: int, alpha: int, beta: int):
    """Same as :func:`mate` but returns the pasting term (for certificates)."""
    g = w.g
    gg = m.one(g) @ m.one(g)
    return (
        (m.inv(m.tensor2(w.eps, w.eps)) * m.one(beta) * m.one(g))
        >> (gg * m.inv(F) * m.one(g))
        >> (gg * m.one(alpha) * m.inv(w.eta))
    )
