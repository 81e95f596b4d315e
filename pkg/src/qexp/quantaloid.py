"""Finite quantaloids: hom-lattices, join-preserving composition, residuation.

A quantaloid here is a small category whose hom-sets are finite complete
lattices and whose composition preserves joins in each variable separately.
Composition is stored densely, one table per object triple: ``table[g][f]``
is the composite of g in hom(Y,Z) after f in hom(X,Y), landing in hom(X,Z).

Construction checks shapes only; the algebraic axioms are checked by
``verify_quantaloid``, which reports every violated instance instead of
raising, so that deliberately broken structures can be inspected in tests
and by the command line validator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .lattice import FiniteLattice, MalformedInput, MonotoneMap, right_adjoint_of, chain_lattice, powerset_lattice
from .report import Violation


class NonComposable(ValueError):
    """Arrow composition with mismatched endpoints."""


@dataclass(frozen=True, eq=True)
class Quantaloid:
    objects: tuple[str, ...]
    homs: Mapping[tuple[str, str], FiniteLattice]
    compose_table: Mapping[tuple[str, str, str], tuple[tuple[int, ...], ...]]
    units: Mapping[str, int]

    def __post_init__(self) -> None:
        if len(set(self.objects)) != len(self.objects):
            raise MalformedInput("duplicate quantaloid object names")
        for pair in itertools.product(self.objects, repeat=2):
            if pair not in self.homs:
                raise MalformedInput(f"missing hom lattice for {pair}")
        for x, y, z in itertools.product(self.objects, repeat=3):
            table = self.compose_table.get((x, y, z))
            if table is None:
                raise MalformedInput(f"missing composition table for {(x, y, z)}")
            rows, cols = self.homs[(y, z)].n, self.homs[(x, y)].n
            out = self.homs[(x, z)].n
            if len(table) != rows or any(len(r) != cols for r in table):
                raise MalformedInput(f"composition table for {(x, y, z)} has wrong shape")
            if any(not (0 <= v < out) for r in table for v in r):
                raise MalformedInput(f"composition table for {(x, y, z)} has bad entries")
        for x in self.objects:
            u = self.units.get(x)
            if u is None or not (0 <= u < self.homs[(x, x)].n):
                raise MalformedInput(f"missing or bad unit for {x}")

    def hom(self, x: str, y: str) -> FiniteLattice:
        """The lattice of arrows from x to y."""
        try:
            return self.homs[(x, y)]
        except KeyError:
            raise MalformedInput(f"no hom lattice for {(x, y)}") from None

    def compose_elem(self, x: str, y: str, z: str, g: int, f: int) -> int:
        """Composite of g in hom(y,z) after f in hom(x,y)."""
        return self.compose_table[(x, y, z)][g][f]

    def unit(self, x: str) -> int:
        return self.units[x]

    def bottom(self, x: str, y: str) -> int:
        return self.hom(x, y).bottom

    def top(self, x: str, y: str) -> int:
        return self.hom(x, y).top


@dataclass(frozen=True)
class QArrow:
    """A single arrow: an element of hom(src, tgt)."""

    src: str
    tgt: str
    elem: int


def compose(q: Quantaloid, g: QArrow, f: QArrow) -> QArrow:
    """g after f; raises NonComposable on a type mismatch."""
    if g.src != f.tgt:
        raise NonComposable(f"cannot compose {g.tgt}<-{g.src} after {f.tgt}<-{f.src}")
    return QArrow(f.src, g.tgt, q.compose_elem(f.src, f.tgt, g.tgt, g.elem, f.elem))


def all_arrows(q: Quantaloid) -> list[QArrow]:
    """Every arrow of the quantaloid, in (src, tgt, element) order."""
    return [
        QArrow(x, y, e)
        for x in q.objects
        for y in q.objects
        for e in range(q.hom(x, y).n)
    ]


def verify_quantaloid(q: Quantaloid) -> list[Violation]:
    """All violated axiom instances; empty iff q is a quantaloid.

    Checks unit laws, associativity, and preservation of joins in each
    variable of the composition.  Join preservation is checked for binary
    and empty joins only, which is complete for finite lattices.
    """
    out: list[Violation] = []
    for x, y in itertools.product(q.objects, repeat=2):
        lat = q.hom(x, y)
        for f in range(lat.n):
            left = q.compose_elem(x, y, y, q.unit(y), f)
            if left != f:
                out.append(Violation("unit-left", (x, y, f),
                                     f"1_{y} o {lat.names[f]} = {lat.names[left]}"))
            right = q.compose_elem(x, x, y, f, q.unit(x))
            if right != f:
                out.append(Violation("unit-right", (x, y, f),
                                     f"{lat.names[f]} o 1_{x} = {lat.names[right]}"))
    for x, y, z, w in itertools.product(q.objects, repeat=4):
        for h in range(q.hom(z, w).n):
            for g in range(q.hom(y, z).n):
                hg = q.compose_elem(y, z, w, h, g)
                for f in range(q.hom(x, y).n):
                    gf = q.compose_elem(x, y, z, g, f)
                    if q.compose_elem(x, z, w, h, gf) != q.compose_elem(x, y, w, hg, f):
                        out.append(Violation("assoc", (x, y, z, w, h, g, f),
                                             "h o (g o f) != (h o g) o f"))
    for x, y, z in itertools.product(q.objects, repeat=3):
        src, mid, tgt = q.hom(x, y), q.hom(y, z), q.hom(x, z)
        for g in range(mid.n):
            if q.compose_elem(x, y, z, g, src.bottom) != tgt.bottom:
                out.append(Violation("zero-right", (x, y, z, g), "g o 0 != 0"))
            for f1 in range(src.n):
                for f2 in range(f1 + 1, src.n):
                    joined = q.compose_elem(x, y, z, g, src.join2(f1, f2))
                    split = tgt.join2(q.compose_elem(x, y, z, g, f1),
                                      q.compose_elem(x, y, z, g, f2))
                    if joined != split:
                        out.append(Violation("join-right", (x, y, z, g, f1, f2),
                                             "g o (f1 v f2) != (g o f1) v (g o f2)"))
        for f in range(src.n):
            if q.compose_elem(x, y, z, mid.bottom, f) != tgt.bottom:
                out.append(Violation("zero-left", (x, y, z, f), "0 o f != 0"))
            for g1 in range(mid.n):
                for g2 in range(g1 + 1, mid.n):
                    joined = q.compose_elem(x, y, z, mid.join2(g1, g2), f)
                    split = tgt.join2(q.compose_elem(x, y, z, g1, f),
                                      q.compose_elem(x, y, z, g2, f))
                    if joined != split:
                        out.append(Violation("join-left", (x, y, z, f, g1, g2),
                                             "(g1 v g2) o f != (g1 o f) v (g2 o f)"))
    return out


def extension(q: Quantaloid, g: QArrow, h: QArrow) -> QArrow:
    """The largest k with k o g <= h, for g: X->Y and h: X->Z (k: Y->Z).

    Convention used throughout: ``extension`` is the right adjoint to
    precomposition ``k |-> k o g`` and ``lifting`` the right adjoint to
    postcomposition ``k |-> g o k``.  These always exist in a quantaloid
    because composition preserves joins in each variable.
    """
    if g.src != h.src:
        raise NonComposable("extension needs arrows with a common source")
    x, y, z = g.src, g.tgt, h.tgt
    pre = MonotoneMap(q.hom(y, z), q.hom(x, z),
                      tuple(q.compose_elem(x, y, z, k, g.elem) for k in range(q.hom(y, z).n)))
    return QArrow(y, z, right_adjoint_of(pre)(h.elem))


def lifting(q: Quantaloid, g: QArrow, h: QArrow) -> QArrow:
    """The largest k with g o k <= h, for g: Y->Z and h: X->Z (k: X->Y)."""
    if g.tgt != h.tgt:
        raise NonComposable("lifting needs arrows with a common target")
    x, y, z = h.src, g.src, g.tgt
    post = MonotoneMap(q.hom(x, y), q.hom(x, z),
                       tuple(q.compose_elem(x, y, z, g.elem, k) for k in range(q.hom(x, y).n)))
    return QArrow(x, y, right_adjoint_of(post)(h.elem))


# Builders.  Each returns a structure that verify_quantaloid accepts; they
# raise RuntimeError if that self-check ever fails (a bug, not bad input).

def _checked(q: Quantaloid) -> Quantaloid:
    bad = verify_quantaloid(q)
    if bad:
        raise RuntimeError(f"builder produced an invalid quantaloid: {bad[0]}")
    return q


def one_object_quantale(lat: FiniteLattice, table: tuple[tuple[int, ...], ...], unit: int,
                        obj: str = "*") -> Quantaloid:
    return Quantaloid(
        objects=(obj,),
        homs={(obj, obj): lat},
        compose_table={(obj, obj, obj): table},
        units={obj: unit},
    )


def boolean_quantale() -> Quantaloid:
    """Two truth values with composition = meet; its categories are preorders."""
    lat = chain_lattice(2, ("0", "1"))
    table = tuple(tuple(lat.meet2(g, f) for f in range(2)) for g in range(2))
    return _checked(one_object_quantale(lat, table, unit=1))


def chain_quantale(n: int) -> Quantaloid:
    """Truncated addition on {0, 1, ..., n}, with the order reversed.

    Element k means "cost k", n is the ceiling; lattice order is reversed
    so that cost 0 is the top (and the unit) and the ceiling is the bottom.
    Composition adds costs and caps at n.
    """
    if n < 1:
        raise MalformedInput("chain quantale needs n >= 1")
    size = n + 1
    names = tuple(str(i) for i in range(size))
    leq = tuple(tuple(x >= y for y in range(size)) for x in range(size))
    lat = FiniteLattice(leq, names)
    table = tuple(tuple(min(g + f, n) for f in range(size)) for g in range(size))
    return _checked(one_object_quantale(lat, table, unit=0))


@dataclass(frozen=True)
class Monoid:
    """A finite monoid: element names, multiplication table, unit index."""

    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    unit: int

    def __post_init__(self) -> None:
        n = len(self.names)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise MalformedInput("monoid table has wrong shape")
        if any(not (0 <= v < n) for r in self.table for v in r):
            raise MalformedInput("monoid table has bad entries")
        if not (0 <= self.unit < n):
            raise MalformedInput("monoid unit out of range")
        for a in range(n):
            if self.table[self.unit][a] != a or self.table[a][self.unit] != a:
                raise MalformedInput(f"monoid unit law fails at {a}")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise MalformedInput(f"monoid not associative at ({a},{b},{c})")


def cyclic_monoid(n: int) -> Monoid:
    """Addition mod n."""
    return Monoid(
        names=tuple(f"g{i}" for i in range(n)),
        table=tuple(tuple((a + b) % n for b in range(n)) for a in range(n)),
        unit=0,
    )


def powerset_monoid_quantale(m: Monoid) -> Quantaloid:
    """Subsets of a finite monoid under elementwise product; a locale-hommed quantale."""
    lat = powerset_lattice(m.names)
    size = lat.n
    k = len(m.names)

    def mul(s: int, t: int) -> int:
        out = 0
        for a in range(k):
            if s >> a & 1:
                for b in range(k):
                    if t >> b & 1:
                        out |= 1 << m.table[a][b]
        return out

    table = tuple(tuple(mul(s, t) for t in range(size)) for s in range(size))
    return _checked(one_object_quantale(lat, table, unit=1 << m.unit))


def free_quantaloid_on_graph(nodes: Iterable[str],
                             edges: Iterable[tuple[str, str]]) -> Quantaloid:
    """Path sets in a finite acyclic graph, with union as join.

    hom(X, Y) is the powerset of the set of directed paths from X to Y;
    composition concatenates paths pointwise; the unit at X is the set
    containing only the empty path.  The graph must be acyclic, otherwise
    some path sets would be infinite.
    """
    nodes = tuple(nodes)
    edge_list = [tuple(e) for e in edges]
    for a, b in edge_list:
        if a not in nodes or b not in nodes:
            raise MalformedInput(f"edge ({a},{b}) mentions an unknown node")

    # Paths from x to y as tuples of edge indices, lexicographic order.
    def paths(x: str, y: str, seen: frozenset[str]) -> list[tuple[int, ...]]:
        out = [()] if x == y else []
        for idx, (a, b) in enumerate(edge_list):
            if a == x:
                if b in seen:
                    raise MalformedInput("graph has a cycle; free quantaloid would be infinite")
                for rest in paths(b, y, seen | {b}):
                    out.append((idx,) + rest)
        return sorted(out)

    path_ix: dict[tuple[str, str], list[tuple[int, ...]]] = {}
    for x in nodes:
        for y in nodes:
            path_ix[(x, y)] = paths(x, y, frozenset({x}))

    homs = {
        (x, y): powerset_lattice(tuple("." .join(map(str, p)) or "id" for p in path_ix[(x, y)]))
        for x in nodes
        for y in nodes
    }

    def concat_sets(x: str, y: str, z: str, g: int, f: int) -> int:
        ps_xy, ps_yz, ps_xz = path_ix[(x, y)], path_ix[(y, z)], path_ix[(x, z)]
        out = 0
        for i, p in enumerate(ps_xy):
            if f >> i & 1:
                for j, r in enumerate(ps_yz):
                    if g >> j & 1:
                        out |= 1 << ps_xz.index(p + r)
        return out

    compose_table = {
        (x, y, z): tuple(
            tuple(concat_sets(x, y, z, g, f) for f in range(homs[(x, y)].n))
            for g in range(homs[(y, z)].n)
        )
        for x in nodes
        for y in nodes
        for z in nodes
    }
    units = {x: 1 << path_ix[(x, x)].index(()) for x in nodes}
    return _checked(Quantaloid(nodes, homs, compose_table, units))


def sup_endomaps(lat: FiniteLattice) -> list[tuple[int, ...]]:
    """All sup-preserving self-maps of a lattice, as tables, in lex order."""
    out = []
    for table in itertools.product(range(lat.n), repeat=lat.n):
        if table[lat.bottom] != lat.bottom:
            continue
        if all(table[lat.join2(x, y)] == lat.join2(table[x], table[y])
               for x in range(lat.n) for y in range(x + 1, lat.n)):
            out.append(table)
    return out


def endo_quantale(lat: FiniteLattice) -> Quantaloid:
    """Sup-preserving endomaps of a lattice under composition.

    The hom-lattice is ordered pointwise; it is a complete lattice because
    pointwise joins of sup-preserving maps are sup-preserving.  For a
    non-distributive input like M3 the hom-lattice is itself
    non-distributive, which is what gives the join/meet distributivity
    condition on functors genuine content.
    """
    maps = sup_endomaps(lat)
    index = {m: i for i, m in enumerate(maps)}
    size = len(maps)
    leq = tuple(
        tuple(all(lat.le(f[x], g[x]) for x in range(lat.n)) for g in maps)
        for f in maps
    )
    names = tuple("[" + ",".join(lat.names[v] for v in m) + "]" for m in maps)
    hom = FiniteLattice(leq, names)
    table = tuple(
        tuple(index[tuple(g[f[x]] for x in range(lat.n))] for f in maps)
        for g in maps
    )
    unit = index[tuple(range(lat.n))]
    return _checked(one_object_quantale(hom, table, unit))
