"""Shared constructions for the test suite.

Builders for preorders over the boolean base, a deterministic corpus of
functor instances across several bases (all hom-lattices of at most eight
elements), and the exhaustive isomorphism search used to compare constructed
categories: a bijection on objects preserving types and homs exactly.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from qexp import (
    QCategory,
    QFunctor,
    boolean_quantale,
    chain_quantale,
    cyclic_monoid,
    chain_lattice,
    endo_quantale,
    free_quantaloid_on_graph,
    identity_functor,
    powerset_monoid_quantale,
)
from qexp.category import enumerate_functors, functor_maps
from qexp.oracle import enumerate_qcategories

BOOL = boolean_quantale()


def closure(n, pairs):
    rel = [[i == j for j in range(n)] for i in range(n)]
    for i, j in pairs:
        rel[i][j] = True
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if rel[i][k] and rel[k][j]:
                    rel[i][j] = True
    return rel


def preorder(names, pairs) -> QCategory:
    """A preorder as a category over the boolean base; pairs are closed off."""
    n = len(names)
    rel = closure(n, pairs)
    hom = tuple(tuple(1 if rel[i][j] else 0 for i in range(n)) for j in range(n))
    return QCategory(BOOL, tuple(names), tuple("*" for _ in names), hom)


def chain_preorder(n: int, prefix: str = "c") -> QCategory:
    return preorder(tuple(f"{prefix}{i}" for i in range(n)),
                    [(i, i + 1) for i in range(n - 1)])


def discrete_preorder(n: int, prefix: str = "d") -> QCategory:
    return preorder(tuple(f"{prefix}{i}" for i in range(n)), [])


def skip_middle_functor() -> QFunctor:
    """Two related stages mapped onto the ends of a three-stage chain."""
    a = preorder(("a0", "a2"), [(0, 1)])
    b = chain_preorder(3, "b")
    return QFunctor(a, b, (0, 2))


def find_isomorphism(x: QCategory, y: QCategory):
    """An object bijection matching types and homs exactly, or None."""
    if x.base != y.base or x.n != y.n:
        return None
    used = [False] * y.n
    assign = [-1] * x.n

    def rec(i: int) -> bool:
        if i == x.n:
            return True
        for j in range(y.n):
            if used[j] or x.types[i] != y.types[j]:
                continue
            if x.hom[i][i] != y.hom[j][j]:
                continue
            ok = True
            for i0 in range(i):
                j0 = assign[i0]
                if x.hom[i][i0] != y.hom[j][j0] or x.hom[i0][i] != y.hom[j0][j]:
                    ok = False
                    break
            if ok:
                assign[i] = j
                used[j] = True
                if rec(i + 1):
                    return True
                used[j] = False
        return False

    return tuple(assign) if rec(0) else None


@lru_cache(maxsize=None)
def small_bases():
    """Bases with hom-lattices of at most eight elements."""
    return (
        ("boolean", BOOL),
        ("chain2", chain_quantale(2)),
        ("chain3", chain_quantale(3)),
        ("powerset-z2", powerset_monoid_quantale(cyclic_monoid(2))),
        ("powerset-z3", powerset_monoid_quantale(cyclic_monoid(3))),
        ("free-edge", free_quantaloid_on_graph(("x", "y"), (("x", "y"),))),
        ("endo-chain3", endo_quantale(chain_lattice(3))),
    )


@lru_cache(maxsize=None)
def adjunction_corpus():
    """Deterministic functor instances across the small bases.

    Per base: the first few categories with at most two objects, and the
    first few functors between each ordered pair of them, identities always
    included.  Every hom-lattice involved has at most eight elements.
    """
    out = []
    for base_name, q in small_bases():
        cats = list(itertools.islice(enumerate_qcategories(q, max_objects=2), 12))
        for a in cats:
            out.append((f"{base_name}:id", identity_functor(a)))
        for a in cats[:8]:
            for b in cats[:8]:
                for func in itertools.islice(enumerate_functors(a, b), 3):
                    out.append((f"{base_name}:map", func))
    seen = set()
    unique = []
    for name, func in out:
        key = (id(func.dom.base), func.dom.hom, func.dom.types,
               func.cod.hom, func.cod.types, func.mapping)
        if key not in seen:
            seen.add(key)
            unique.append((name, func))
    return tuple(unique)


@lru_cache(maxsize=None)
def preorder_functor_corpus(max_objects: int = 2):
    """Every functor between preorders with at most the given object count."""
    cats = list(enumerate_qcategories(BOOL, max_objects=max_objects))
    return tuple(
        QFunctor(a, b, m)
        for a in cats
        for b in cats
        for m in functor_maps(a, b)
    )
