"""Categories enriched in a finite quantaloid, with functors and distributors.

A category A over a base Q assigns to every object a type (an object of Q)
and to every ordered pair of objects a hom-arrow ``A.hom[a1][a0]`` in
Q(type(a0), type(a1)), read as "the arrow from a0 to a1".  The two axioms,
checked by ``verify_category``, are that units sit below endo-homs and that
composites of homs sit below the direct hom.

A functor is a type-preserving object map that weakly increases homs.  A
matrix from A to B is a Q-valued block ``entries[b][a]``; a distributor is a
matrix that additionally absorbs the action of both categories.  Matrices
and distributors are kept as distinct types with an explicit inclusion
(``QDistributor.as_matrix`` / ``distributor_from_matrix``).

Empty categories and empty fibers are first class everywhere; joins over an
empty index set are bottoms, and the unique functor out of the empty
category exists for every target.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .lattice import FiniteLattice, MalformedInput
from .quantaloid import NonComposable, QArrow, Quantaloid
from .report import Violation


@dataclass(frozen=True)
class QCategory:
    base: Quantaloid
    objects: tuple[str, ...]
    types: tuple[str, ...]
    hom: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.objects)
        if len(self.types) != n or len(self.hom) != n or any(len(r) != n for r in self.hom):
            raise MalformedInput("category tables have inconsistent sizes")
        homs = self.base.homs
        for t in self.types:
            if t not in self.base.objects:
                raise MalformedInput(f"unknown type {t!r}")
        for i in range(n):
            row = self.hom[i]
            ti = self.types[i]
            for j in range(n):
                if not (0 <= row[j] < len(homs[(self.types[j], ti)].leq)):
                    raise MalformedInput(f"hom entry ({i},{j}) out of range")

    @property
    def n(self) -> int:
        return len(self.objects)

    def hom_lat(self, tgt: int, src: int) -> FiniteLattice:
        """The lattice that hom[tgt][src] lives in: Q(type(src), type(tgt))."""
        return self.base.homs[(self.types[src], self.types[tgt])]


@dataclass(frozen=True)
class QFunctor:
    dom: QCategory
    cod: QCategory
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.mapping) != self.dom.n:
            raise MalformedInput("functor mapping has wrong length")
        for v in self.mapping:
            if not (0 <= v < self.cod.n):
                raise MalformedInput(f"functor image {v} out of range")

    def __call__(self, i: int) -> int:
        return self.mapping[i]


@dataclass(frozen=True)
class QMatrix:
    """A Q-valued block from dom to cod: entries[j][i] in Q(type dom_i, type cod_j)."""

    dom: QCategory
    cod: QCategory
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.cod.n or any(len(r) != self.dom.n for r in self.entries):
            raise MalformedInput("matrix has wrong shape")
        for j in range(self.cod.n):
            for i in range(self.dom.n):
                if not (0 <= self.entries[j][i] < self.entry_lat(j, i).n):
                    raise MalformedInput(f"matrix entry ({j},{i}) out of range")

    def entry_lat(self, j: int, i: int) -> FiniteLattice:
        return self.dom.base.hom(self.dom.types[i], self.cod.types[j])


@dataclass(frozen=True)
class QDistributor:
    """A matrix that absorbs both categories' actions; same entry layout."""

    dom: QCategory
    cod: QCategory
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        QMatrix(self.dom, self.cod, self.entries)  # shape check only

    def entry_lat(self, j: int, i: int) -> FiniteLattice:
        return self.dom.base.hom(self.dom.types[i], self.cod.types[j])

    def as_matrix(self) -> QMatrix:
        return QMatrix(self.dom, self.cod, self.entries)


def distributor_from_matrix(m: QMatrix) -> QDistributor:
    """Tag a matrix as a distributor after checking the action inequalities."""
    d = QDistributor(m.dom, m.cod, m.entries)
    bad = verify_distributor(d)
    if bad:
        raise MalformedInput(f"matrix is not a distributor: {bad[0]}")
    return d


def verify_category(a: QCategory) -> list[Violation]:
    """Violated identity/composition inequalities; empty iff a is a category."""
    out: list[Violation] = []
    q = a.base
    for i in range(a.n):
        lat = a.hom_lat(i, i)
        if not lat.le(q.unit(a.types[i]), a.hom[i][i]):
            out.append(Violation("identity-below-hom", (i,),
                                 f"1 is not below hom({a.objects[i]},{a.objects[i]})"))
    for k in range(a.n):
        for j in range(a.n):
            for i in range(a.n):
                comp = q.compose_elem(a.types[i], a.types[j], a.types[k],
                                      a.hom[k][j], a.hom[j][i])
                if not a.hom_lat(k, i).le(comp, a.hom[k][i]):
                    out.append(Violation("composition-below-hom", (k, j, i),
                                         "hom(k,j) o hom(j,i) is not below hom(k,i)"))
    return out


def category_table_ok(q: Quantaloid, types: tuple[str, ...],
                      hom: tuple[tuple[int, ...], ...]) -> bool:
    """The category axioms as a bare boolean with early exit (hot path)."""
    n = len(types)
    homs = q.homs
    units = q.units
    comp = q.compose_table
    for i in range(n):
        ti = types[i]
        if not homs[(ti, ti)].leq[units[ti]][hom[i][i]]:
            return False
    for k in range(n):
        tk = types[k]
        row_k = hom[k]
        for j in range(n):
            tj = types[j]
            gkj = row_k[j]
            row_j = hom[j]
            for i in range(n):
                ti = types[i]
                c = comp[(ti, tj, tk)][gkj][row_j[i]]
                if not homs[(ti, tk)].leq[c][row_k[i]]:
                    return False
    return True


def functor_ok(f: QFunctor) -> bool:
    """The functor axioms as a bare boolean with early exit (hot path)."""
    a, b = f.dom, f.cod
    if a.base is not b.base and a.base != b.base:
        return False
    m = f.mapping
    homs = a.base.homs
    n = a.n
    bh = b.hom
    for i in range(n):
        if a.types[i] != b.types[m[i]]:
            return False
    for j in range(n):
        tj = a.types[j]
        row = a.hom[j]
        brow = bh[m[j]]
        for i in range(n):
            if not homs[(a.types[i], tj)].leq[row[i]][brow[m[i]]]:
                return False
    return True


def verify_functor(f: QFunctor) -> list[Violation]:
    out: list[Violation] = []
    a, b = f.dom, f.cod
    if a.base != b.base:
        return [Violation("base-mismatch", (), "functor endpoints over different bases")]
    for i in range(a.n):
        if a.types[i] != b.types[f(i)]:
            out.append(Violation("type-mismatch", (i,),
                                 f"object {a.objects[i]} changes type"))
    if out:
        return out
    for j in range(a.n):
        for i in range(a.n):
            if not a.hom_lat(j, i).le(a.hom[j][i], b.hom[f(j)][f(i)]):
                out.append(Violation("hom-not-increased", (j, i),
                                     "hom(j,i) is not below hom(Fj,Fi)"))
    return out


def verify_distributor(d: QDistributor) -> list[Violation]:
    """Violations of the two action inequalities."""
    out: list[Violation] = []
    a, b = d.dom, d.cod
    q = a.base
    for j in range(b.n):
        for i1 in range(a.n):
            for i in range(a.n):
                acted = q.compose_elem(a.types[i], a.types[i1], b.types[j],
                                       d.entries[j][i1], a.hom[i1][i])
                if not d.entry_lat(j, i).le(acted, d.entries[j][i]):
                    out.append(Violation("right-action", (j, i1, i),
                                         "entry(j,i1) o hom(i1,i) not below entry(j,i)"))
    for j in range(b.n):
        for j1 in range(b.n):
            for i in range(a.n):
                acted = q.compose_elem(a.types[i], b.types[j1], b.types[j],
                                       b.hom[j][j1], d.entries[j1][i])
                if not d.entry_lat(j, i).le(acted, d.entries[j][i]):
                    out.append(Violation("left-action", (j, j1, i),
                                         "hom(j,j1) o entry(j1,i) not below entry(j,i)"))
    return out


def identity_functor(a: QCategory) -> QFunctor:
    return QFunctor(a, a, tuple(range(a.n)))


def compose_functors(g: QFunctor, f: QFunctor) -> QFunctor:
    if g.dom != f.cod:
        raise NonComposable("functor composition with mismatched endpoints")
    return QFunctor(f.dom, g.cod, tuple(g(f(i)) for i in range(f.dom.n)))


def identity_distributor(a: QCategory) -> QDistributor:
    """The hom-arrows of a as a distributor from a to a (the unit for tensor)."""
    return QDistributor(a, a, a.hom)


def terminal(q: Quantaloid) -> QCategory:
    """One object per base object, every hom the top element."""
    objs = q.objects
    hom = tuple(
        tuple(q.top(x, y) for x in objs)
        for y in objs
    )
    return QCategory(q, objs, objs, hom)


def to_terminal(a: QCategory) -> QFunctor:
    """The unique functor into the terminal category."""
    t = terminal(a.base)
    ix = {x: i for i, x in enumerate(t.objects)}
    return QFunctor(a, t, tuple(ix[tp] for tp in a.types))


def one_object(q: Quantaloid, x: str) -> QCategory:
    """The one-object category at x whose endo-hom is the unit."""
    if x not in q.objects:
        raise MalformedInput(f"unknown base object {x!r}")
    return QCategory(q, (x,), (x,), ((q.unit(x),),))


def point(b: QCategory, i: int) -> QFunctor:
    """The functor from the one-object category at type(i) that picks out object i."""
    if not (0 <= i < b.n):
        raise MalformedInput(f"object index {i} out of range")
    return QFunctor(one_object(b.base, b.types[i]), b, (i,))


def pullback(f: QFunctor, g: QFunctor) -> tuple[QCategory, QFunctor, QFunctor]:
    """The pullback of two functors with common codomain.

    Objects are pairs (i, j) with f(i) = g(j), ordered lexicographically;
    homs are the pairwise meets.  Returns (P, proj_left, proj_right).
    """
    if f.cod != g.cod:
        raise NonComposable("pullback needs a common codomain")
    a, b = f.dom, g.dom
    fm, gm = f.mapping, g.mapping
    pairs = [(i, j) for i in range(a.n) for j in range(b.n) if fm[i] == gm[j]]
    names = tuple(f"({a.objects[i]},{b.objects[j]})" for i, j in pairs)
    types = tuple(a.types[i] for i, _ in pairs)
    homs = a.base.homs
    ah, bh = a.hom, b.hom
    hom = []
    for i1, j1 in pairs:
        t1 = a.types[i1]
        ah1, bh1 = ah[i1], bh[j1]
        row = []
        for i0, j0 in pairs:
            meet = homs[(a.types[i0], t1)].meet_table
            row.append(meet[ah1[i0]][bh1[j0]])
        hom.append(tuple(row))
    p = QCategory(a.base, names, types, tuple(hom))
    proj_a = QFunctor(p, a, tuple(i for i, _ in pairs))
    proj_b = QFunctor(p, b, tuple(j for _, j in pairs))
    return p, proj_a, proj_b


def fiber(f: QFunctor, b: int) -> QCategory:
    """The sub-category of the domain over object b of the codomain.

    Objects are the preimages of b (possibly none); each hom is the meet of
    the unit with the domain hom.  Coincides with the pullback of the point
    at b along f, object for object.
    """
    if not (0 <= b < f.cod.n):
        raise MalformedInput(f"object index {b} out of range")
    a = f.dom
    members = [i for i in range(a.n) if f(i) == b]
    tb = f.cod.types[b]
    unit = a.base.unit(tb)
    hom = tuple(
        tuple(a.hom_lat(i1, i0).meet2(unit, a.hom[i1][i0]) for i0 in members)
        for i1 in members
    )
    return QCategory(a.base, tuple(a.objects[i] for i in members),
                     tuple(tb for _ in members), hom)


def fiber_objects(f: QFunctor, b: int) -> tuple[int, ...]:
    """Indices in the domain of the objects lying over b, in order."""
    return tuple(i for i in range(f.dom.n) if f(i) == b)


def compose_distributors(psi: QDistributor, phi: QDistributor) -> QDistributor:
    """Tensor of distributors: entries are joins of composites over the middle.

    An empty middle category yields the all-bottom distributor.
    """
    if phi.cod != psi.dom:
        raise NonComposable("distributor tensor with mismatched middle")
    a, b, c = phi.dom, phi.cod, psi.cod
    q = a.base
    entries = tuple(
        tuple(
            q.hom(a.types[i], c.types[k]).join(
                q.compose_elem(a.types[i], b.types[j], c.types[k],
                               psi.entries[k][j], phi.entries[j][i])
                for j in range(b.n)
            )
            for i in range(a.n)
        )
        for k in range(c.n)
    )
    return QDistributor(a, c, entries)


def distributor_le(d1: QDistributor, d2: QDistributor) -> bool:
    """Elementwise order on parallel distributors."""
    if d1.dom != d2.dom or d1.cod != d2.cod:
        raise NonComposable("comparing non-parallel distributors")
    return all(
        d1.entry_lat(j, i).le(d1.entries[j][i], d2.entries[j][i])
        for j in range(d1.cod.n)
        for i in range(d1.dom.n)
    )


def cospan_distributor(s: QFunctor, t: QFunctor) -> QDistributor:
    """The distributor carved out of a co-span: entry (y, x) is hom(t y, s x)."""
    if s.cod != t.cod:
        raise NonComposable("co-span needs a common codomain")
    c = s.cod
    entries = tuple(
        tuple(c.hom[t(y)][s(x)] for x in range(s.dom.n))
        for y in range(t.dom.n)
    )
    return QDistributor(s.dom, t.dom, entries)


def collage(phi: QDistributor) -> tuple[QCategory, QFunctor, QFunctor]:
    """Glue dom and cod along phi: cross-homs are phi one way and bottom the other.

    Returns the glued category with the two full embeddings; feeding those
    back into ``cospan_distributor`` recovers phi exactly.
    """
    x, y = phi.dom, phi.cod
    q = x.base
    objects = tuple(f"l:{nm}" for nm in x.objects) + tuple(f"r:{nm}" for nm in y.objects)
    types = x.types + y.types
    n, m = x.n, y.n
    hom = []
    for j in range(n + m):
        row = []
        for i in range(n + m):
            if j < n and i < n:
                row.append(x.hom[j][i])
            elif j >= n and i >= n:
                row.append(y.hom[j - n][i - n])
            elif j >= n and i < n:
                row.append(phi.entries[j - n][i])
            else:
                row.append(q.bottom(types[i], types[j]))
        hom.append(tuple(row))
    c = QCategory(q, objects, types, tuple(hom))
    emb_x = QFunctor(x, c, tuple(range(n)))
    emb_y = QFunctor(y, c, tuple(range(n, n + m)))
    return c, emb_x, emb_y


def arrow_category(q: Quantaloid, f: QArrow) -> QCategory:
    """The two-object category generated by a single arrow.

    Objects "s" and "t" of types f.src and f.tgt; the hom from s to t is f,
    endo-homs are units, the hom back is bottom.
    """
    if f.src not in q.objects or f.tgt not in q.objects:
        raise MalformedInput("arrow endpoints are not base objects")
    if not (0 <= f.elem < q.hom(f.src, f.tgt).n):
        raise MalformedInput("arrow element out of range")
    hom = (
        (q.unit(f.src), q.bottom(f.tgt, f.src)),
        (f.elem, q.unit(f.tgt)),
    )
    return QCategory(q, ("s", "t"), (f.src, f.tgt), hom)


def triple_collage(phi: QDistributor, psi: QDistributor) -> tuple[QCategory, QFunctor, QFunctor, QFunctor]:
    """Glue three categories along phi, psi, and their tensor.

    Cross-homs from the first block to the second are phi, from the second
    to the third psi, from the first to the third the tensor of the two;
    every other cross-hom is bottom.  The three embedding co-spans represent
    phi, psi and the tensor respectively.
    """
    if phi.cod != psi.dom:
        raise NonComposable("triple collage needs composable distributors")
    u, v, w = phi.dom, phi.cod, psi.cod
    q = u.base
    comp = compose_distributors(psi, phi)
    objects = (
        tuple(f"a:{nm}" for nm in u.objects)
        + tuple(f"b:{nm}" for nm in v.objects)
        + tuple(f"c:{nm}" for nm in w.objects)
    )
    types = u.types + v.types + w.types
    nu, nv, nw = u.n, v.n, w.n

    def block(i: int) -> int:
        return 0 if i < nu else (1 if i < nu + nv else 2)

    def local(i: int) -> int:
        return i - (0 if i < nu else (nu if i < nu + nv else nu + nv))

    blocks = {(0, 0): u.hom, (1, 1): v.hom, (2, 2): w.hom,
              (1, 0): phi.entries, (2, 1): psi.entries, (2, 0): comp.entries}
    hom = []
    for j in range(nu + nv + nw):
        row = []
        for i in range(nu + nv + nw):
            data = blocks.get((block(j), block(i)))
            if data is None:
                row.append(q.bottom(types[i], types[j]))
            else:
                row.append(data[local(j)][local(i)])
        hom.append(tuple(row))
    c = QCategory(q, objects, types, tuple(hom))
    emb_u = QFunctor(u, c, tuple(range(nu)))
    emb_v = QFunctor(v, c, tuple(range(nu, nu + nv)))
    emb_w = QFunctor(w, c, tuple(range(nu + nv, nu + nv + nw)))
    return c, emb_u, emb_v, emb_w


def functor_maps(a: QCategory, b: QCategory) -> Iterator[tuple[int, ...]]:
    """Object maps of all functors a -> b, in lexicographic order.

    Depth-first with pruning: a partial assignment is abandoned as soon as a
    type or hom inequality fails, which is sound because each constraint
    mentions at most two objects.  The empty domain yields one empty map.
    """
    n, m = a.n, b.n
    if n == 0:
        yield ()
        return
    bh = b.hom
    # allowed[i][i0] is the row of codomain elements lying above hom(i, i0)
    allowed = [
        [a.hom_lat(i, i0).leq[a.hom[i][i0]] for i0 in range(n)]
        for i in range(n)
    ]
    type_ok = [
        [a.types[i] == b.types[j] for j in range(m)]
        for i in range(n)
    ]
    assign: list[int] = [0] * n

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(assign)
            return
        row_i = allowed[i]
        for j in range(m):
            if not type_ok[i][j] or not row_i[i][bh[j][j]]:
                continue
            bh_j = bh[j]
            for i0 in range(i):
                j0 = assign[i0]
                if not (row_i[i0][bh_j[j0]] and allowed[i0][i][bh[j0][j]]):
                    break
            else:
                assign[i] = j
                yield from rec(i + 1)

    yield from rec(0)


def enumerate_functors(a: QCategory, b: QCategory) -> Iterator[QFunctor]:
    """All functors a -> b in lexicographic order of their object maps."""
    if a.base != b.base:
        raise NonComposable("functors need a common base")
    for m in functor_maps(a, b):
        yield QFunctor(a, b, m)


def enumerate_matrices(x: QCategory, y: QCategory) -> Iterator[QMatrix]:
    """All matrices from x to y, entries varying in row-major order."""
    lats = [[x.base.hom(x.types[i], y.types[j]) for i in range(x.n)] for j in range(y.n)]
    ranges = [range(lats[j][i].n) for j in range(y.n) for i in range(x.n)]
    for flat in itertools.product(*ranges):
        entries = tuple(
            tuple(flat[j * x.n + i] for i in range(x.n))
            for j in range(y.n)
        )
        yield QMatrix(x, y, entries)


def enumerate_distributors(x: QCategory, y: QCategory) -> Iterator[QDistributor]:
    """All distributors from x to y (matrices passing the action inequalities)."""
    for m in enumerate_matrices(x, y):
        d = QDistributor(x, y, m.entries)
        if not verify_distributor(d):
            yield d


def count_matrices(x: QCategory, y: QCategory) -> int:
    """Size of the full matrix space from x to y."""
    total = 1
    for j in range(y.n):
        for i in range(x.n):
            total *= x.base.hom(x.types[i], y.types[j]).n
    return total
