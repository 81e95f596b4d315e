"""Deciding exponentiability of enriched functors, and building the witnesses.

A functor F: A -> B over a base quantaloid is exponentiable exactly when two
elementary equalities hold in the base:

  (1) for all objects a, a' of A, meeting with A(a',a) distributes over
      joins taken inside the downset of B(Fa',Fa); and

  (2) for all a, a'' of A and every b' of B, every composite g o f with
      f below B(b',Fa) and g below B(Fa'',b') localizes over the fiber:
      (g o f) ∧ A(a'',a) is the join over a' in the fiber of b' of
      (g ∧ A(a'',a')) o (f ∧ A(a',a)).

Both conditions are checked by finite reduction (binary plus empty joins),
which is complete here because everything is finite.  An empty fiber makes
the right side of (2) an empty join, i.e. bottom; that is exactly how the
classic "skipped stage" functors get rejected.

Condition (1) is equivalent to the existence of right adjoints to the
"widening" maps f |-> (f ∧ A(a',a))_(a,a'), called ``hat`` here, pointwise
per fiber pair.  The right adjoint, called ``sharp``, sends a distributor
between two fibers to the largest arrow of the base whose widening sits
below it.  ``sharp`` is computed two independent ways on every query, by
downset search and by a meet of pointwise right adjoints, and disagreement
is a hard internal error.

When both conditions hold, the partial product of F with any category C
exists: its objects are pairs (b, H) of an object of B and a functor from
the fiber over b into C, and its homs are sharp of the induced distributor
between fibers.  ``partial_product`` refuses to build anything when the
conditions fail, because the hom formula is only meaningful under them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .lattice import FiniteLattice, MalformedInput, MonotoneMap, NotSupPreserving, right_adjoint_of
from .category import (
    QCategory,
    QDistributor,
    QFunctor,
    compose_distributors,
    count_matrices,
    distributor_le,
    enumerate_distributors,
    fiber,
    fiber_objects,
    functor_maps,
    pullback,
    verify_distributor,
    verify_functor,
)


class OutOfDownset(ValueError):
    """An arrow was expected below a given hom and is not."""


class AdjointMissing(Exception):
    """sharp was queried where the widening map has no right adjoint.

    ``site`` is (b, b1, a, a1), ``witness`` the sup-preservation witness.
    """

    def __init__(self, site: tuple, witness: tuple):
        self.site = site
        self.witness = witness
        super().__init__(f"no right adjoint at {site}, witness {witness!r}")


class ConditionViolated(Exception):
    """A construction was refused because the functor is not exponentiable."""

    def __init__(self, report: "ConditionReport"):
        self.report = report
        super().__init__(f"functor is not exponentiable ({len(report.witnesses)} witnesses)")


@dataclass(frozen=True)
class JoinMeetWitness:
    """Condition (1) failure: (f1 v f2) ∧ alpha differs from the join of meets."""

    src: int
    tgt: int
    f1: int
    f2: int
    lhs: int
    rhs: int

    def as_tuple(self) -> tuple:
        return ("join-meet", self.src, self.tgt, self.f1, self.f2, self.lhs, self.rhs)


@dataclass(frozen=True)
class FactorizationWitness:
    """Condition (2) failure: a composite through ``via`` does not localize."""

    src: int
    tgt: int
    via: int
    f: int
    g: int
    lhs: int
    rhs: int

    def as_tuple(self) -> tuple:
        return ("factorization", self.src, self.tgt, self.via, self.f, self.g, self.lhs, self.rhs)


@dataclass(frozen=True)
class ConditionReport:
    verdict: bool
    witnesses: tuple

    def __bool__(self) -> bool:
        return self.verdict


def _require_valid(f: QFunctor) -> None:
    bad = verify_functor(f)
    if bad:
        raise MalformedInput(f"invalid functor: {bad[0]}")


def check_condition_one(f: QFunctor) -> ConditionReport:
    """Distributivity of meets with domain homs over joins below codomain homs.

    For each pair of domain objects the joins range over the downset of the
    codomain hom; binary joins plus the empty join are checked, which is
    complete by finiteness.  (The empty-join case, bottom ∧ alpha = bottom,
    holds in any lattice and is asserted rather than searched.)
    """
    _require_valid(f)
    a, b = f.dom, f.cod
    witnesses = []
    for src in range(a.n):
        for tgt in range(a.n):
            lat = a.hom_lat(tgt, src)
            beta = b.hom[f(tgt)][f(src)]
            alpha = a.hom[tgt][src]
            assert lat.meet2(lat.bottom, alpha) == lat.bottom
            down = lat.downset(beta)
            for i, f1 in enumerate(down):
                for f2 in down[i + 1:]:
                    lhs = lat.meet2(lat.join2(f1, f2), alpha)
                    rhs = lat.join2(lat.meet2(f1, alpha), lat.meet2(f2, alpha))
                    if lhs != rhs:
                        witnesses.append(JoinMeetWitness(src, tgt, f1, f2, lhs, rhs))
    return ConditionReport(not witnesses, tuple(witnesses))


def check_condition_two(f: QFunctor) -> ConditionReport:
    """Localization of composites over fibers.

    The intermediate object ranges over all of the codomain; an empty fiber
    turns the right side into the empty join, the bottom element.
    """
    _require_valid(f)
    a, b = f.dom, f.cod
    q = a.base
    fibers = [fiber_objects(f, j) for j in range(b.n)]
    witnesses = []
    for src in range(a.n):
        for tgt in range(a.n):
            alpha = a.hom[tgt][src]
            lat = a.hom_lat(tgt, src)
            for via in range(b.n):
                tv = b.types[via]
                lat_f = q.hom(a.types[src], tv)
                lat_g = q.hom(tv, a.types[tgt])
                down_f = lat_f.downset(b.hom[via][f(src)])
                down_g = lat_g.downset(b.hom[f(tgt)][via])
                for ff in down_f:
                    for gg in down_g:
                        comp = q.compose_elem(a.types[src], tv, a.types[tgt], gg, ff)
                        lhs = lat.meet2(comp, alpha)
                        rhs = lat.bottom
                        for mid in fibers[via]:
                            left = lat_g.meet2(gg, a.hom[tgt][mid])
                            right = lat_f.meet2(ff, a.hom[mid][src])
                            rhs = lat.join2(rhs, q.compose_elem(
                                a.types[src], tv, a.types[tgt], left, right))
                        if lhs != rhs:
                            witnesses.append(FactorizationWitness(
                                src, tgt, via, ff, gg, lhs, rhs))
    return ConditionReport(not witnesses, tuple(witnesses))


def is_exponentiable(f: QFunctor) -> ConditionReport:
    """Conjunction of the two conditions, witnesses merged in order."""
    one = check_condition_one(f)
    two = check_condition_two(f)
    return ConditionReport(one.verdict and two.verdict, one.witnesses + two.witnesses)


def hat(f: QFunctor, b: int, b1: int, elem: int) -> QDistributor:
    """Widen an arrow below B(b1, b) into a distributor between the fibers.

    Entry (a1, a) is elem ∧ A(a1, a); the action inequalities hold for any
    elem, so the result is always a distributor.
    """
    a, cod = f.dom, f.cod
    lat = cod.base.hom(cod.types[b], cod.types[b1])
    if not lat.le(elem, cod.hom[b1][b]):
        raise OutOfDownset(f"element {elem} is not below hom({b1},{b})")
    fib0, fib1 = fiber(f, b), fiber(f, b1)
    objs0, objs1 = fiber_objects(f, b), fiber_objects(f, b1)
    entries = tuple(
        tuple(lat.meet2(elem, a.hom[i1][i0]) for i0 in objs0)
        for i1 in objs1
    )
    return QDistributor(fib0, fib1, entries)


@lru_cache(maxsize=None)
def _pointwise_adjoint(lat: FiniteLattice, beta: int, alpha: int):
    """Right adjoint of f |-> f ∧ alpha on the downset of beta, if it exists.

    Returns ("adjoint", table) with table[y] the largest f <= beta such that
    f ∧ alpha <= y, or ("witness", w) when the map fails to preserve sups
    (w uses downset positions translated back to lattice elements).
    """
    down = lat.downset(beta)
    sub = lat.downset_lattice(beta)
    m = MonotoneMap(sub, lat, tuple(lat.meet2(e, alpha) for e in down))
    try:
        adj = right_adjoint_of(m)
    except NotSupPreserving as exc:
        w = exc.witness
        if w[0] == "join":
            return ("witness", ("join", down[w[1]], down[w[2]]))
        return ("witness", w)
    return ("adjoint", tuple(down[adj(y)] for y in range(lat.n)))


def _sharp_value(a: QCategory, lat: FiniteLattice, beta: int,
                 objs0: tuple[int, ...], objs1: tuple[int, ...],
                 entries, site: tuple) -> int:
    """sharp by two routes: meet of pointwise adjoints, and downset search."""
    value = beta
    for p1, i1 in enumerate(objs1):
        for p0, i0 in enumerate(objs0):
            alpha = a.hom[i1][i0]
            kind, data = _pointwise_adjoint(lat, beta, alpha)
            if kind == "witness":
                raise AdjointMissing(site + (i0, i1), data)
            value = lat.meet2(value, data[entries[p1][p0]])
    best = lat.join(
        f for f in lat.downset(beta)
        if all(lat.le(lat.meet2(f, a.hom[i1][i0]), entries[p1][p0])
               for p1, i1 in enumerate(objs1) for p0, i0 in enumerate(objs0))
    )
    if best != value:
        raise RuntimeError(
            f"sharp disagreement at {site}: downset search {best}, adjoint meet {value}")
    return value


def sharp(f: QFunctor, b: int, b1: int, phi: QDistributor) -> int:
    """The largest arrow below B(b1, b) whose widening sits below phi.

    This is the value of the right adjoint to ``hat`` at phi.  Requires the
    distributivity condition (1) to hold for the fiber pair, otherwise
    AdjointMissing is raised with a witness.  Over an empty fiber pair the
    answer is B(b1, b) itself, the top of the downset.
    """
    a, cod = f.dom, f.cod
    lat = cod.base.hom(cod.types[b], cod.types[b1])
    beta = cod.hom[b1][b]
    objs0, objs1 = fiber_objects(f, b), fiber_objects(f, b1)
    if phi.dom != fiber(f, b) or phi.cod != fiber(f, b1):
        raise MalformedInput("distributor endpoints are not the expected fibers")
    return _sharp_value(a, lat, beta, objs0, objs1, phi.entries, (b, b1))


def check_hat_lax(f: QFunctor, b: int, b1: int, b2: int) -> bool:
    """Lax commutation of widening with composition, one triple at a time.

    True iff for all ff below B(b1,b) and gg below B(b2,b1) the widening of
    gg o ff sits below the tensor of the widenings.  The reverse inequality
    holds for every functor and is not checked here (property tests assert
    it separately).  Empty outer fibers make the comparison vacuous.
    """
    cod = f.cod
    q = cod.base
    t0, t1, t2 = cod.types[b], cod.types[b1], cod.types[b2]
    down_f = q.hom(t0, t1).downset(cod.hom[b1][b])
    down_g = q.hom(t1, t2).downset(cod.hom[b2][b1])
    for ff in down_f:
        hat_f = hat(f, b, b1, ff)
        for gg in down_g:
            comp = q.compose_elem(t0, t1, t2, gg, ff)
            lhs = hat(f, b, b2, comp)
            rhs = compose_distributors(hat(f, b1, b2, gg), hat_f)
            if not distributor_le(lhs, rhs):
                return False
    return True


@dataclass(frozen=True)
class LaxSquareReport:
    """Outcome of a sharp lax-square check, with the quantification record."""

    ok: bool
    exhaustive: bool
    checked: int
    budget: int

    def __bool__(self) -> bool:
        return self.ok


def _sample_distributors(x: QCategory, y: QCategory, count: int,
                         rng: random.Random) -> list[QDistributor]:
    lats = [[x.base.hom(x.types[i], y.types[j]) for i in range(x.n)] for j in range(y.n)]
    out = []
    attempts = 0
    while len(out) < count and attempts < count * 40:
        attempts += 1
        entries = tuple(
            tuple(rng.randrange(lats[j][i].n) for i in range(x.n))
            for j in range(y.n)
        )
        d = QDistributor(x, y, entries)
        if not verify_distributor(d):
            out.append(d)
    return out


def check_sharp_lax(f: QFunctor, b: int, b1: int, b2: int,
                    budget: int = 4096, seed: int = 0) -> LaxSquareReport:
    """Lax commutation of sharp with tensor: sharp(psi) o sharp(phi) <= sharp(psi (x) phi).

    Quantifies over distributor pairs between the fibers; exhaustive when the
    matrix space fits in the budget, otherwise a seeded sample (the report
    records which).  Pairs of widened arrows are always included: a failure
    of the hat square at (ff, gg) forces a failure here at the widened pair,
    so sampling never hides one.  Propagates AdjointMissing when condition
    (1) fails.
    """
    cod = f.cod
    q = cod.base
    t0, t1, t2 = cod.types[b], cod.types[b1], cod.types[b2]
    fib0, fib1, fib2 = fiber(f, b), fiber(f, b1), fiber(f, b2)
    pairs = [
        (hat(f, b, b1, ff), hat(f, b1, b2, gg))
        for ff in q.hom(t0, t1).downset(cod.hom[b1][b])
        for gg in q.hom(t1, t2).downset(cod.hom[b2][b1])
    ]
    space = count_matrices(fib0, fib1) * count_matrices(fib1, fib2)
    exhaustive = space <= budget
    if exhaustive:
        phis = list(enumerate_distributors(fib0, fib1))
        psis = list(enumerate_distributors(fib1, fib2))
        pairs += [(p, s) for p in phis for s in psis]
    else:
        rng = random.Random(seed)
        side = max(1, int(budget ** 0.5))
        phis = _sample_distributors(fib0, fib1, side, rng)
        psis = _sample_distributors(fib1, fib2, side, rng)
        pairs += [(p, s) for p in phis for s in psis]
    checked = 0
    ok = True
    for phi, psi in pairs:
        checked += 1
        sp = sharp(f, b, b1, phi)
        ss = sharp(f, b1, b2, psi)
        st = sharp(f, b, b2, compose_distributors(psi, phi))
        comp = q.compose_elem(t0, t1, t2, ss, sp)
        if not q.hom(t0, t2).le(comp, st):
            ok = False
            break
    return LaxSquareReport(ok, exhaustive, checked, budget)


@dataclass(frozen=True)
class PartialProduct:
    """The couniversal (P, proj, ev) for a functor and a target category.

    Objects of P are pairs (b, H) of a codomain object and a functor from
    the fiber over b into the target, identified by H's object-map tuple in
    enumeration order; ``pairs`` records them and ``object_index`` finds
    them.  Every hom of P is a sharp value, so proj lands in the downsets
    and ev is forced below the target homs.
    """

    functor: QFunctor
    target: QCategory
    category: QCategory
    proj: QFunctor
    ev: QFunctor
    pairs: tuple[tuple[int, tuple[int, ...]], ...]
    index: dict = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "index",
                           {pair: i for i, pair in enumerate(self.pairs)})

    def object_index(self, b: int, hmap: tuple[int, ...]) -> int:
        try:
            return self.index[(b, hmap)]
        except KeyError:
            raise MalformedInput(f"no product object for ({b}, {hmap})") from None


def partial_product_objects(f: QFunctor, c: QCategory) -> list[tuple[int, tuple[int, ...]]]:
    """The forced object set: (b, H) with H a functor from the fiber over b to c.

    Ordered by b first, then by H's object map lexicographically.
    """
    return [
        (b, hmap)
        for b in range(f.cod.n)
        for hmap in functor_maps(fiber(f, b), c)
    ]


def _pair_name(f: QFunctor, c: QCategory, b: int, hmap: tuple[int, ...]) -> str:
    return f"({f.cod.objects[b]};{','.join(c.objects[h] for h in hmap)})"


def partial_product(f: QFunctor, c: QCategory) -> PartialProduct:
    """Build the partial product of f with c, or refuse with the witnesses.

    Raises ConditionViolated when f is not exponentiable: under a failed
    condition the hom formula would not produce a universal object, so
    nothing is emitted at all.
    """
    _require_valid(f)
    if c.base != f.dom.base:
        raise MalformedInput("target category lives over a different base")
    report = is_exponentiable(f)
    if not report.verdict:
        raise ConditionViolated(report)
    a, b_cat = f.dom, f.cod
    q = a.base
    pairs = partial_product_objects(f, c)
    fibs = [fiber_objects(f, b) for b in range(b_cat.n)]
    names = tuple(_pair_name(f, c, b, hmap) for b, hmap in pairs)
    types = tuple(b_cat.types[b] for b, _ in pairs)
    hom_rows = []
    for b1, h1 in pairs:
        row = []
        for b0, h0 in pairs:
            lat = q.hom(b_cat.types[b0], b_cat.types[b1])
            entries = tuple(
                tuple(c.hom[h1[p1]][h0[p0]] for p0 in range(len(fibs[b0])))
                for p1 in range(len(fibs[b1]))
            )
            row.append(_sharp_value(a, lat, b_cat.hom[b1][b0],
                                    fibs[b0], fibs[b1], entries, (b0, b1)))
        hom_rows.append(tuple(row))
    p = QCategory(q, names, types, tuple(hom_rows))
    proj = QFunctor(p, b_cat, tuple(b for b, _ in pairs))
    pb, _, _ = pullback(proj, f)
    fib_pos = [{i: pos for pos, i in enumerate(fibs[b])} for b in range(b_cat.n)]
    # pullback objects are (p_obj, a_obj) pairs in lexicographic order
    ev_map = [
        hmap[fib_pos[b0][a_obj]]
        for (b0, hmap) in pairs
        for a_obj in fibs[b0]
    ]
    ev = QFunctor(pb, c, tuple(ev_map))
    return PartialProduct(f, c, p, proj, ev, tuple(pairs))


def mediating(pp: PartialProduct, pm: QFunctor, ev: QFunctor) -> QFunctor:
    """The unique comparison functor from another cone into the partial product.

    ``pm`` maps a category P' into the codomain of the functor; ``ev`` must
    be a functor from the pullback of pm with the functor (as built by
    ``pullback``) into the target.  The object map is forced: x goes to the
    pair (pm(x), restriction of ev to the fiber); the result is checked to
    be a functor satisfying both commutation equations.
    """
    f = pp.functor
    if pm.cod != f.cod:
        raise MalformedInput("cone leg does not land in the right codomain")
    pb, _, _ = pullback(pm, f)
    if ev.dom != pb or ev.cod != pp.target:
        raise MalformedInput("evaluation leg has the wrong endpoints")
    _require_valid(pm)
    _require_valid(ev)
    fibs = [fiber_objects(f, b) for b in range(f.cod.n)]
    pb_index = {}
    k = 0
    for x in range(pm.dom.n):
        for a_obj in range(f.dom.n):
            if pm(x) == f(a_obj):
                pb_index[(x, a_obj)] = k
                k += 1
    kmap = []
    for x in range(pm.dom.n):
        b = pm(x)
        hmap = tuple(ev(pb_index[(x, a_obj)]) for a_obj in fibs[b])
        kmap.append(pp.object_index(b, hmap))
    kf = QFunctor(pm.dom, pp.category, tuple(kmap))
    bad = verify_functor(kf)
    if bad:
        raise MalformedInput(f"cone does not factor: comparison map is not a functor ({bad[0]})")
    if tuple(pp.proj(kf(x)) for x in range(pm.dom.n)) != pm.mapping:
        raise MalformedInput("comparison map does not commute with the projections")
    pp_pb_index = {}
    k = 0
    for p_obj in range(pp.category.n):
        for a_obj in range(f.dom.n):
            if pp.proj(p_obj) == f(a_obj):
                pp_pb_index[(p_obj, a_obj)] = k
                k += 1
    for (x, a_obj), i in pb_index.items():
        if pp.ev(pp_pb_index[(kf(x), a_obj)]) != ev(i):
            raise MalformedInput("comparison map does not commute with evaluation")
    return kf


@dataclass(frozen=True)
class SliceExponential:
    """An exponential object in the slice over the functor's codomain.

    Objects are pairs (b, H) where H maps the fiber over b into the target
    and lands inside the target's own fiber over b; homs are sharp values.
    The construction is a derived formula and is only trusted after the
    oracle's adjunction bijection has checked it.
    """

    functor: QFunctor
    over: QFunctor
    category: QCategory
    to_base: QFunctor
    pairs: tuple[tuple[int, tuple[int, ...]], ...]
    index: dict = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "index",
                           {pair: i for i, pair in enumerate(self.pairs)})

    def object_index(self, b: int, hmap: tuple[int, ...]) -> int:
        try:
            return self.index[(b, hmap)]
        except KeyError:
            raise MalformedInput(f"no exponential object for ({b}, {hmap})") from None


def slice_exponential(f: QFunctor, g: QFunctor) -> SliceExponential:
    """The exponential of g: C -> B by f: A -> B in the slice over B.

    Objects over b are the functors from the fiber of f over b into C whose
    composite with g is constant at b; homs are the same sharp values as in
    the partial product of f with C (of which this is the full substructure
    on the fiberwise objects).  Raises ConditionViolated when f is not
    exponentiable.
    """
    _require_valid(f)
    _require_valid(g)
    if g.cod != f.cod:
        raise MalformedInput("exponent and base must share a codomain")
    report = is_exponentiable(f)
    if not report.verdict:
        raise ConditionViolated(report)
    a, b_cat, c = f.dom, f.cod, g.dom
    q = a.base
    pairs = [
        (b, hmap)
        for b in range(b_cat.n)
        for hmap in functor_maps(fiber(f, b), c)
        if all(g(h) == b for h in hmap)
    ]
    fibs = [fiber_objects(f, b) for b in range(b_cat.n)]
    names = tuple(_pair_name(f, c, b, hmap) for b, hmap in pairs)
    types = tuple(b_cat.types[b] for b, _ in pairs)
    hom_rows = []
    for b1, h1 in pairs:
        row = []
        for b0, h0 in pairs:
            lat = q.hom(b_cat.types[b0], b_cat.types[b1])
            entries = tuple(
                tuple(c.hom[h1[p1]][h0[p0]] for p0 in range(len(fibs[b0])))
                for p1 in range(len(fibs[b1]))
            )
            row.append(_sharp_value(a, lat, b_cat.hom[b1][b0],
                                    fibs[b0], fibs[b1], entries, (b0, b1)))
        hom_rows.append(tuple(row))
    e = QCategory(q, names, types, tuple(hom_rows))
    to_base = QFunctor(e, b_cat, tuple(b for b, _ in pairs))
    return SliceExponential(f, g, e, to_base, tuple(pairs))
