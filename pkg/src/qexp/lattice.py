"""Finite complete lattices, monotone maps, and Galois right adjoints.

Elements are canonical integer indices 0..n-1.  The order relation is given
in full (reflexive and transitively closed); the constructor validates it and
rejects rather than repairs bad input.  Binary join and meet tables, bottom
and top are computed eagerly, so every later operation can assume it is
working inside a genuine complete lattice.

A monotone map between finite complete lattices has a right adjoint exactly
when it preserves all suprema; by finiteness this reduces to preserving the
empty join (bottom) and binary joins, and the adjoint is

    g(y) = join of { x | f(x) <= y }.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable


class MalformedInput(ValueError):
    """Structurally invalid data: bad indices, shapes, or order axioms."""


class NotSupPreserving(ValueError):
    """A right adjoint was requested for a map that does not preserve sups.

    ``witness`` is ``("bottom",)`` if the bottom is not preserved, or
    ``("join", x, y)`` for a pair whose join is not preserved.
    """

    def __init__(self, witness: tuple):
        self.witness = witness
        super().__init__(f"map does not preserve suprema, witness {witness!r}")


@dataclass(frozen=True)
class FiniteLattice:
    """A finite complete lattice presented by its full order matrix.

    ``leq[x][y]`` holds iff x <= y.  Construction fails with MalformedInput
    unless the relation is a partial order in which every pair of elements
    has a least upper bound and a greatest lower bound (bottom and top then
    exist automatically, n >= 1 required).
    """

    leq: tuple[tuple[bool, ...], ...]
    names: tuple[str, ...] = ()
    bottom: int = field(init=False, compare=False, repr=False)
    top: int = field(init=False, compare=False, repr=False)
    join_table: tuple[tuple[int, ...], ...] = field(init=False, compare=False, repr=False)
    meet_table: tuple[tuple[int, ...], ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        n = len(self.leq)
        if n == 0:
            raise MalformedInput("a complete lattice needs at least one element")
        if any(len(row) != n for row in self.leq):
            raise MalformedInput("order matrix is not square")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"e{i}" for i in range(n)))
        if len(self.names) != n:
            raise MalformedInput("names do not match element count")
        self._validate_order(n)
        joins, meets = self._build_tables(n)
        object.__setattr__(self, "join_table", joins)
        object.__setattr__(self, "meet_table", meets)
        bottom = next(i for i in range(n) if all(self.leq[i][j] for j in range(n)))
        top = next(i for i in range(n) if all(self.leq[j][i] for j in range(n)))
        object.__setattr__(self, "bottom", bottom)
        object.__setattr__(self, "top", top)

    def _validate_order(self, n: int) -> None:
        leq = self.leq
        for x in range(n):
            if not leq[x][x]:
                raise MalformedInput(f"order not reflexive at {x}")
        for x in range(n):
            for y in range(n):
                if x != y and leq[x][y] and leq[y][x]:
                    raise MalformedInput(f"order not antisymmetric at ({x},{y})")
                if leq[x][y]:
                    for z in range(n):
                        if leq[y][z] and not leq[x][z]:
                            raise MalformedInput(
                                f"order not transitive at ({x},{y},{z})"
                            )

    def _build_tables(self, n: int):
        leq = self.leq
        joins = []
        meets = []
        for x in range(n):
            jrow = []
            mrow = []
            for y in range(n):
                ub = [z for z in range(n) if leq[x][z] and leq[y][z]]
                least = [u for u in ub if all(leq[u][v] for v in ub)]
                if len(least) != 1:
                    raise MalformedInput(f"no least upper bound for ({x},{y})")
                jrow.append(least[0])
                lb = [z for z in range(n) if leq[z][x] and leq[z][y]]
                greatest = [u for u in lb if all(leq[v][u] for v in lb)]
                if len(greatest) != 1:
                    raise MalformedInput(f"no greatest lower bound for ({x},{y})")
                mrow.append(greatest[0])
            joins.append(tuple(jrow))
            meets.append(tuple(mrow))
        return tuple(joins), tuple(meets)

    @classmethod
    def from_pairs(cls, names: Iterable[str], pairs: Iterable[tuple[int, int]]) -> "FiniteLattice":
        """Build from a list of (i, j) pairs meaning i <= j (reflexive pairs included)."""
        names = tuple(names)
        n = len(names)
        matrix = [[False] * n for _ in range(n)]
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise MalformedInput(f"leq pair ({i},{j}) out of range")
            matrix[i][j] = True
        return cls(tuple(tuple(row) for row in matrix), names)

    @property
    def n(self) -> int:
        return len(self.leq)

    def elements(self) -> range:
        return range(self.n)

    def le(self, x: int, y: int) -> bool:
        return self.leq[x][y]

    def _check(self, x: int) -> None:
        if not (0 <= x < self.n):
            raise MalformedInput(f"element {x} out of range 0..{self.n - 1}")

    def join2(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def meet2(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    def join(self, xs: Iterable[int]) -> int:
        """Least upper bound of a set of elements; join of nothing is bottom."""
        out = self.bottom
        for x in xs:
            self._check(x)
            out = self.join_table[out][x]
        return out

    def meet(self, xs: Iterable[int]) -> int:
        """Greatest lower bound of a set of elements; meet of nothing is top."""
        out = self.top
        for x in xs:
            self._check(x)
            out = self.meet_table[out][x]
        return out

    def downset(self, b: int) -> tuple[int, ...]:
        """Elements <= b, in increasing index order."""
        self._check(b)
        return tuple(x for x in range(self.n) if self.leq[x][b])

    def downset_lattice(self, b: int) -> "FiniteLattice":
        """The lattice of elements <= b with the induced order.

        Element i of the result is ``downset(b)[i]`` in the parent; the
        result's top is b and its bottom is the parent bottom.  Names are
        inherited from the parent.
        """
        members = self.downset(b)
        sub = tuple(
            tuple(self.leq[x][y] for y in members) for x in members
        )
        return FiniteLattice(sub, tuple(self.names[x] for x in members))


@dataclass(frozen=True)
class MonotoneMap:
    """An order-preserving map between finite lattices, given by its table."""

    source: FiniteLattice
    target: FiniteLattice
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.table) != self.source.n:
            raise MalformedInput("table length does not match source size")
        for v in self.table:
            if not (0 <= v < self.target.n):
                raise MalformedInput(f"table value {v} out of range")
        for x in range(self.source.n):
            for y in range(self.source.n):
                if self.source.le(x, y) and not self.target.le(self.table[x], self.table[y]):
                    raise MalformedInput(f"map not monotone at ({x},{y})")

    def __call__(self, x: int) -> int:
        return self.table[x]


def identity_map(lattice: FiniteLattice) -> MonotoneMap:
    return MonotoneMap(lattice, lattice, tuple(range(lattice.n)))


def sup_preservation_witness(f: MonotoneMap) -> tuple | None:
    """None if f preserves all suprema, else a witness.

    Binary plus empty joins suffice on finite lattices: any finite join is a
    fold of binary ones over the empty join.
    """
    if f.table[f.source.bottom] != f.target.bottom:
        return ("bottom",)
    src, tgt = f.source, f.target
    for x in range(src.n):
        for y in range(x + 1, src.n):
            if f.table[src.join2(x, y)] != tgt.join2(f.table[x], f.table[y]):
                return ("join", x, y)
    return None


def is_sup_preserving(f: MonotoneMap) -> bool:
    return sup_preservation_witness(f) is None


def right_adjoint_of(f: MonotoneMap) -> MonotoneMap:
    """The right adjoint g of a sup-preserving f: f(x) <= y iff x <= g(y).

    g(y) is the join of ``{ x | f(x) <= y }``.  Raises NotSupPreserving
    (with a witness) when no adjoint exists.
    """
    witness = sup_preservation_witness(f)
    if witness is not None:
        raise NotSupPreserving(witness)
    src, tgt = f.source, f.target
    table = tuple(
        src.join(x for x in range(src.n) if tgt.le(f.table[x], y))
        for y in range(tgt.n)
    )
    return MonotoneMap(tgt, src, table)


# Stock lattices, used by builders and tests.

def chain_lattice(n: int, names: tuple[str, ...] = ()) -> FiniteLattice:
    """The n-element chain 0 <= 1 <= ... <= n-1."""
    if n < 1:
        raise MalformedInput("chain needs at least one element")
    leq = tuple(tuple(x <= y for y in range(n)) for x in range(n))
    return FiniteLattice(leq, names or tuple(str(i) for i in range(n)))


def m3_lattice() -> FiniteLattice:
    """The diamond M3: bottom, three incomparable atoms, top.  Not distributive."""
    names = ("bot", "x", "y", "z", "top")
    pairs = [(i, i) for i in range(5)]
    pairs += [(0, i) for i in range(1, 5)]
    pairs += [(i, 4) for i in range(1, 4)]
    return FiniteLattice.from_pairs(names, pairs)


def n5_lattice() -> FiniteLattice:
    """The pentagon N5: bottom, a < c, b, top.  Not modular."""
    names = ("bot", "a", "b", "c", "top")
    pairs = [(i, i) for i in range(5)]
    pairs += [(0, 1), (0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (2, 4), (3, 4)]
    return FiniteLattice.from_pairs(names, pairs)


def powerset_lattice(base_names: Iterable[str]) -> FiniteLattice:
    """The powerset of a finite set, ordered by inclusion, elements as bitmasks."""
    base = tuple(base_names)
    size = 1 << len(base)
    names = tuple(
        "{" + ",".join(base[i] for i in range(len(base)) if s >> i & 1) + "}"
        for s in range(size)
    )
    leq = tuple(tuple(s & t == s for t in range(size)) for s in range(size))
    return FiniteLattice(leq, names)
