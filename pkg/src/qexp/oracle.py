"""Independent brute-force verification of universal properties.

Nothing in this module trusts the condition checkers or the sharp formula:
candidate structures are found by scanning hom assignments against cones,
and constructed objects are validated by searching for mediators directly.
Agreement between this module and the analytic construction is the main
empirical claim of the test suite.

Probe families follow the shape of the necessity argument: one-object
categories pin down object sets, single-arrow categories pin down homs.
Verdicts are deterministic for fixed seeds, and budgets are explicit; when
a budget runs out the verdict says Inconclusive rather than truncating
silently.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass

import numpy as np

from .lattice import MalformedInput
from .quantaloid import QArrow, Quantaloid, all_arrows, boolean_quantale
from .category import (
    QCategory,
    QDistributor,
    QFunctor,
    arrow_category,
    category_table_ok,
    collage,
    enumerate_distributors,
    count_matrices,
    fiber,
    fiber_objects,
    functor_maps,
    functor_ok,
    one_object,
    pullback,
    terminal,
    triple_collage,
    verify_category,
    verify_functor,
)
from .exponentiable import PartialProduct, SliceExponential

NO_MEDIATOR = "NoMediator"
NON_UNIQUE_MEDIATOR = "NonUniqueMediator"
EQUATION_FAILS = "EquationFails"


@dataclass(frozen=True)
class ProbeFamily:
    """Points, single-arrow categories, and optional extra probe categories."""

    points: tuple[QCategory, ...]
    arrows: tuple[QCategory, ...]
    extras: tuple[QCategory, ...] = ()

    def all(self) -> tuple[QCategory, ...]:
        return self.points + self.arrows + self.extras


def default_probes(q: Quantaloid, max_arrow_hom: int = 64,
                   extras: tuple[QCategory, ...] = ()) -> ProbeFamily:
    """One point per base object and one arrow probe per base arrow.

    Arrow probes from hom-lattices larger than ``max_arrow_hom`` are
    dropped (the family stays finite and cheap); pass extras for more.
    """
    points = tuple(one_object(q, x) for x in q.objects)
    arrows = tuple(
        arrow_category(q, arr)
        for arr in all_arrows(q)
        if q.hom(arr.src, arr.tgt).n <= max_arrow_hom
    )
    return ProbeFamily(points, arrows, tuple(extras))


@dataclass(frozen=True)
class ConeFailure:
    """A replayable record: the probe and cone legs that broke, and why."""

    probe_name: str
    leg_to_base: tuple[int, ...]
    leg_to_target: tuple[int, ...]
    reason: str
    detail: str = ""
    probe: QCategory | None = None


@dataclass(frozen=True)
class OracleVerdict:
    passed: bool
    failures: tuple[ConeFailure, ...]
    inconclusive: bool = False
    checked: int = 0
    budget: int = 0

    def __bool__(self) -> bool:
        return self.passed


def _prevalidate(pp: PartialProduct, f: QFunctor, c: QCategory) -> list[ConeFailure]:
    out = []
    for v in verify_category(pp.category):
        out.append(ConeFailure("", (), (), EQUATION_FAILS, f"product category invalid: {v}"))
    for v in verify_functor(pp.proj):
        out.append(ConeFailure("", (), (), EQUATION_FAILS, f"projection invalid: {v}"))
    for v in verify_functor(pp.ev):
        out.append(ConeFailure("", (), (), EQUATION_FAILS, f"evaluation invalid: {v}"))
    if pp.ev.dom != pullback(pp.proj, f)[0] or pp.ev.cod != c:
        out.append(ConeFailure("", (), (), EQUATION_FAILS,
                               "evaluation endpoints are not the expected pullback"))
    if len(set(pp.pairs)) != len(pp.pairs):
        out.append(ConeFailure("", (), (), NON_UNIQUE_MEDIATOR,
                               "duplicate product objects"))
    return out


def _pullback_pairs(pm: QFunctor, f: QFunctor) -> list[tuple[int, int]]:
    return [(x, a) for x in range(pm.dom.n) for a in range(f.dom.n) if pm(x) == f(a)]


def cone_mediators(pp: PartialProduct, f: QFunctor, pm_map: tuple[int, ...],
                   ev_map: tuple[int, ...], probe: QCategory) -> list[tuple[int, ...]]:
    """All object maps of functors K into the product satisfying both equations.

    The equations act objectwise: the projection equation restricts K(x) to
    objects over pm(x), and the evaluation equation pins the whole fiber
    behaviour of K(x), so candidates are looked up by their (b, H) key.
    """
    fibs = [fiber_objects(f, b) for b in range(f.cod.n)]
    pairs = _pullback_pairs(QFunctor(probe, f.cod, pm_map), f)
    pos = {pa: k for k, pa in enumerate(pairs)}
    kmap = []
    for x in range(probe.n):
        b = pm_map[x]
        hmap = tuple(ev_map[pos[(x, a)]] for a in fibs[b])
        cand = pp.index.get((b, hmap))
        if cand is None:
            return []
        kmap.append(cand)
    kf = tuple(kmap)
    p = pp.category
    for j in range(probe.n):
        for i in range(probe.n):
            if not probe.hom_lat(j, i).le(probe.hom[j][i], p.hom[kf[j]][kf[i]]):
                return []
    return [kf]


def verify_universal_property(f: QFunctor, c: QCategory, pp: PartialProduct,
                              probes: ProbeFamily | None = None,
                              budget: int = 1_000_000,
                              _pre_validated: bool = False) -> OracleVerdict:
    """Search every cone from the probe family for its unique mediator.

    A cone is a pair of functors (probe -> codomain, pullback -> target);
    the verdict fails on the first cone with no or several mediators, and
    collects every such cone.  Runs the structural validations first, so a
    tampered product shows up as EquationFails before any cone is tried.

    The mediator search applies the two commutation equations objectwise:
    the projection equation narrows candidates to objects over pm(x), the
    evaluation equation pins the fiber behaviour, so each probe object has
    at most one candidate, looked up by its (b, H) key; what remains is the
    functor condition.
    """
    if probes is None:
        probes = default_probes(f.dom.base)
    failures = [] if _pre_validated else _prevalidate(pp, f, c)
    if failures:
        return OracleVerdict(False, tuple(failures), checked=0, budget=budget)
    b_cat = f.cod
    fibs = [fiber_objects(f, b) for b in range(b_cat.n)]
    index = pp.index
    phom = pp.category.hom
    checked = 0
    for probe in probes.all():
        pn = probe.n
        # allowed[j][i] is the leq row of the probe hom, for the functor check
        allowed = [
            [probe.hom_lat(j, i).leq[probe.hom[j][i]] for i in range(pn)]
            for j in range(pn)
        ]
        for pm_map in functor_maps(probe, b_cat):
            pm = QFunctor(probe, b_cat, pm_map)
            pb, _, _ = pullback(pm, f)
            slots = []
            k = 0
            for x in range(pn):
                width = len(fibs[pm_map[x]])
                slots.append(range(k, k + width))
                k += width
            for ev_map in functor_maps(pb, c):
                checked += 1
                if checked > budget:
                    return OracleVerdict(False, tuple(failures), inconclusive=True,
                                         checked=checked - 1, budget=budget)
                kmap = []
                for x in range(pn):
                    cand = index.get((pm_map[x], tuple(ev_map[s] for s in slots[x])))
                    if cand is None:
                        break
                    kmap.append(cand)
                else:
                    for j in range(pn):
                        row = allowed[j]
                        pr = phom[kmap[j]]
                        if not all(row[i][pr[kmap[i]]] for i in range(pn)):
                            break
                    else:
                        continue
                failures.append(ConeFailure(
                    _probe_name(probe), pm_map, ev_map, NO_MEDIATOR,
                    "0 mediators", probe))
    return OracleVerdict(not failures, tuple(failures), checked=checked, budget=budget)


def _probe_name(probe: QCategory) -> str:
    return f"probe[{','.join(probe.objects)};{','.join(probe.types)};{probe.hom}]"


def replay_cone(f: QFunctor, c: QCategory, pp: PartialProduct,
                probe: QCategory, pm_map: tuple[int, ...],
                ev_map: tuple[int, ...]) -> str | None:
    """Re-run one recorded cone; the reason string again, or None if it passes."""
    ks = cone_mediators(pp, f, pm_map, ev_map, probe)
    if len(ks) == 1:
        return None
    return NO_MEDIATOR if not ks else NON_UNIQUE_MEDIATOR


# Brute-force exponentiability: search for partial-product structures
# against a deterministic corpus of target categories.

@dataclass(frozen=True)
class BruteForceResult:
    ok: bool
    inconclusive: bool
    evidence: str
    targets_checked: int

    def __bool__(self) -> bool:
        if self.inconclusive:
            raise ValueError("inconclusive brute-force result has no truth value")
        return self.ok


def _dedup_key(c: QCategory) -> tuple:
    return (c.types, c.hom)


def _hat_matrix(f: QFunctor, b0: int, b1: int, elem: int) -> QDistributor:
    # The widening of an arrow to a fiber matrix, written out locally so the
    # corpus construction stays independent of the analytic module.
    a = f.dom
    lat = f.cod.base.hom(f.cod.types[b0], f.cod.types[b1])
    objs0, objs1 = fiber_objects(f, b0), fiber_objects(f, b1)
    entries = tuple(
        tuple(lat.meet2(elem, a.hom[i1][i0]) for i0 in objs0)
        for i1 in objs1
    )
    return QDistributor(fiber(f, b0), fiber(f, b1), entries)


def default_target_corpus(f: QFunctor, seed: int = 0, pair_cap: int = 16,
                          pair_samples: int = 2, triple_samples: int = 2,
                          ) -> list[tuple[str, QCategory]]:
    """Deterministic targets: terminal, arrow categories, fiber collages.

    Pairwise collages take every distributor between two fibers when the
    matrix space is at most ``pair_cap``, otherwise a seeded sample.  Triple
    collages are built from widened arrows (for every pair of downset
    elements) plus a seeded sample of distributor pairs; over the boolean
    base the triples with a repeated outer stage are skipped, since there a
    composite through a stage carrying one of its own endpoints always
    localizes.  Duplicates are collapsed.
    """
    b_cat = f.cod
    q = f.dom.base
    rng = random.Random(seed)
    boolean_base = q == _BOOLEAN
    out: list[tuple[str, QCategory]] = [("terminal", terminal(q))]
    for arr in all_arrows(q):
        if q.hom(arr.src, arr.tgt).n <= pair_cap:
            out.append((f"arrow:{arr.src}->{arr.tgt}:{arr.elem}", arrow_category(q, arr)))
    fibs = [fiber(f, b) for b in range(b_cat.n)]
    for b0 in range(b_cat.n):
        for b1 in range(b_cat.n):
            space = count_matrices(fibs[b0], fibs[b1])
            if space <= pair_cap:
                dists = list(enumerate_distributors(fibs[b0], fibs[b1]))
            else:
                dists = _sample_dists(fibs[b0], fibs[b1], pair_samples, rng)
            for k, phi in enumerate(dists):
                out.append((f"collage:{b0},{b1}:{k}", collage(phi)[0]))
    for b0 in range(b_cat.n):
        for b1 in range(b_cat.n):
            for b2 in range(b_cat.n):
                if boolean_base and b1 in (b0, b2):
                    continue
                lat01 = q.hom(b_cat.types[b0], b_cat.types[b1])
                lat12 = q.hom(b_cat.types[b1], b_cat.types[b2])
                for ff in lat01.downset(b_cat.hom[b1][b0]):
                    for gg in lat12.downset(b_cat.hom[b2][b1]):
                        phi = _hat_matrix(f, b0, b1, ff)
                        psi = _hat_matrix(f, b1, b2, gg)
                        name = f"triple:{b0},{b1},{b2}:{ff},{gg}"
                        out.append((name, triple_collage(phi, psi)[0]))
                sampled = zip(_sample_dists(fibs[b0], fibs[b1], triple_samples, rng),
                              _sample_dists(fibs[b1], fibs[b2], triple_samples, rng))
                for k, (phi, psi) in enumerate(sampled):
                    out.append((f"triple:{b0},{b1},{b2}:rand{k}",
                                triple_collage(phi, psi)[0]))
    seen = set()
    unique = []
    for name, cat in out:
        key = _dedup_key(cat)
        if key not in seen:
            seen.add(key)
            unique.append((name, cat))
    return unique


def _sample_dists(x: QCategory, y: QCategory, count: int,
                  rng: random.Random) -> list[QDistributor]:
    from .category import verify_distributor
    lats = [[x.base.hom(x.types[i], y.types[j]) for i in range(x.n)] for j in range(y.n)]
    out = []
    seen = set()
    attempts = 0
    while len(out) < count and attempts < count * 40 + 10:
        attempts += 1
        entries = tuple(
            tuple(rng.randrange(lats[j][i].n) for i in range(x.n))
            for j in range(y.n)
        )
        if entries in seen:
            continue
        d = QDistributor(x, y, entries)
        if not verify_distributor(d):
            seen.add(entries)
            out.append(d)
    return out


_BOOLEAN = boolean_quantale()


def candidate_homs(f: QFunctor, c: QCategory, pairs: list[tuple[int, tuple[int, ...]]],
                   ) -> tuple[list[list[list[int]]], tuple | None]:
    """Admissible hom values per ordered pair of candidate objects.

    A value p for the pair ((b1,H1),(b0,H0)) must itself admit the arrow
    cone it induces (p /\\ hom(a1,a0) below the target hom for every fiber
    pair, so the evaluation leg is a functor) and must dominate every arrow
    whose cone exists, or no mediator could be found for that cone.  The
    result per pair is therefore the greatest such arrow, or nothing; the
    second component reports the first pair with no admissible value.
    """
    a, b_cat = f.dom, f.cod
    q = a.base
    n = len(pairs)
    fibs = [fiber_objects(f, b) for b in range(b_cat.n)]
    ch = c.hom
    table: list[list[list[int]]] = [[None] * n for _ in range(n)]  # type: ignore[list-item]
    # group by codomain object so lattice data is fetched once per block
    by_b: dict[int, list[int]] = {}
    for k, (b, _) in enumerate(pairs):
        by_b.setdefault(b, []).append(k)
    for b1, idxs1 in by_b.items():
        for b0, idxs0 in by_b.items():
            lat = q.homs[(b_cat.types[b0], b_cat.types[b1])]
            down = lat.downset(b_cat.hom[b1][b0])
            leq = lat.leq
            meet = lat.meet_table
            crossings = [
                (p1, p0, a.hom[a1][a0])
                for p1, a1 in enumerate(fibs[b1])
                for p0, a0 in enumerate(fibs[b0])
            ]
            for j in idxs1:
                h1 = pairs[j][1]
                row = table[j]
                for i in idxs0:
                    h0 = pairs[i][1]
                    good = [
                        p for p in down
                        if all(leq[meet[p][alpha]][ch[h1[p1]][h0[p0]]]
                               for p1, p0, alpha in crossings)
                    ]
                    admissible = [p for p in good if all(leq[g][p] for g in good)]
                    if not admissible:
                        return table, (j, i, tuple(good))
                    row[i] = admissible
    return table, None


def assemble_candidate(f: QFunctor, c: QCategory,
                       pairs: list[tuple[int, tuple[int, ...]]],
                       hom_rows: tuple[tuple[int, ...], ...]) -> PartialProduct:
    """Package an object list and hom table as a candidate product structure."""
    b_cat = f.cod
    fibs = [fiber_objects(f, b) for b in range(b_cat.n)]
    names = tuple(f"({b_cat.objects[b]};{','.join(c.objects[h] for h in hmap)})"
                  for b, hmap in pairs)
    types = tuple(b_cat.types[b] for b, _ in pairs)
    p = QCategory(f.dom.base, names, types, hom_rows)
    proj = QFunctor(p, b_cat, tuple(b for b, _ in pairs))
    pb, _, _ = pullback(proj, f)
    fib_pos = [{i: pos for pos, i in enumerate(fibs[b])} for b in range(b_cat.n)]
    ev_map = [hmap[fib_pos[b][a_obj]] for (b, hmap) in pairs for a_obj in fibs[b]]
    ev = QFunctor(pb, c, tuple(ev_map))
    return PartialProduct(f, c, p, proj, ev, tuple(pairs))


def _search_structure_generic(f: QFunctor, c: QCategory, budget: int,
                              ) -> tuple[bool, str, int]:
    """(found, detail, work): exhaustive search over admissible hom tables."""
    pairs = [
        (b, hmap)
        for b in range(f.cod.n)
        for hmap in functor_maps(fiber(f, b), c)
    ]
    n = len(pairs)
    table, blocked = candidate_homs(f, c, pairs)
    if blocked is not None:
        j, i, good = blocked
        return False, f"no admissible hom for pair ({j},{i}); cone arrows {good}", n * n
    work = n * n
    types = tuple(f.cod.types[b] for b, _ in pairs)
    for flat in itertools.product(*[table[j][i] for j in range(n) for i in range(n)]):
        work += n * n
        if work > budget:
            return False, "budget", work
        hom_rows = tuple(tuple(flat[j * n + i] for i in range(n)) for j in range(n))
        if not category_table_ok(f.dom.base, types, hom_rows):
            continue
        cand = assemble_candidate(f, c, pairs, hom_rows)
        if not functor_ok(cand.proj) or not functor_ok(cand.ev):
            continue
        verdict = verify_universal_property(f, c, cand, budget=max(1, budget - work),
                                            _pre_validated=True)
        work += verdict.checked
        if verdict.inconclusive:
            return False, "budget", work
        if verdict.passed:
            return True, "", work
    return False, "no hom table satisfies the universal property", work


def _search_structure_boolean(f: QFunctor, c: QCategory) -> tuple[bool, str, int]:
    """Vectorized forced-structure search over the boolean base.

    Over the boolean base the admissible value per pair always exists (0 is
    always admissible and is dominated by 1 whenever 1 is), so the structure
    is unique and the whole question reduces to its identity and
    transitivity checks; arrow cones are then satisfied by construction.
    The generic path is the reference; tests keep the two in agreement.
    """
    a, b_cat = f.dom, f.cod
    ah = np.array(a.hom, dtype=bool).reshape(a.n, a.n)
    bh = np.array(b_cat.hom, dtype=bool).reshape(b_cat.n, b_cat.n)
    ch = np.array(c.hom, dtype=bool).reshape(c.n, c.n)
    fibs = [fiber_objects(f, b) for b in range(b_cat.n)]
    hmaps = [list(functor_maps(fiber(f, b), c)) for b in range(b_cat.n)]
    harr = [np.array(hs, dtype=int).reshape(len(hs), len(fibs[b]))
            for b, hs in enumerate(hmaps)]
    counts = [len(hs) for hs in hmaps]
    offsets = np.concatenate(([0], np.cumsum(counts)))
    total = int(offsets[-1])
    phom = np.zeros((total, total), dtype=bool)
    work = total * total
    for b1 in range(b_cat.n):
        for b0 in range(b_cat.n):
            if not bh[b1, b0]:
                continue
            block = np.ones((counts[b1], counts[b0]), dtype=bool)
            for p1, a1 in enumerate(fibs[b1]):
                for p0, a0 in enumerate(fibs[b0]):
                    if ah[a1, a0]:
                        block &= ch[np.ix_(harr[b1][:, p1], harr[b0][:, p0])]
            phom[offsets[b1]:offsets[b1 + 1], offsets[b0]:offsets[b0 + 1]] = block
    if not phom.diagonal().all():
        k = int(np.flatnonzero(~phom.diagonal())[0])
        return False, f"identity fails at forced object {k}", work
    r = phom.astype(np.uint8)
    closure = (r @ r) > 0
    bad = closure & ~phom
    if bad.any():
        j, i = map(int, np.argwhere(bad)[0])
        return False, f"composition fails at forced pair ({j},{i})", work
    return True, "", work


def brute_force_exponentiable(f: QFunctor, budget: int = 10_000_000,
                              seed: int = 0, fast_threshold: int = 10,
                              ) -> BruteForceResult:
    """Does every corpus target admit a partial-product structure over f?

    Searches hom assignments for each target in ``default_target_corpus``;
    the answer is False with the failing target as evidence as soon as one
    target admits none, and Inconclusive if the budget runs out first.
    Over the boolean base, large searches take a vectorized path.
    """
    bad = verify_functor(f)
    if bad:
        raise MalformedInput(f"invalid functor: {bad[0]}")
    corpus = default_target_corpus(f, seed=seed)
    boolean_base = f.dom.base == _BOOLEAN
    work = 0
    checked = 0
    for name, c in corpus:
        checked += 1
        if boolean_base:
            size = sum(1 for b in range(f.cod.n) for _ in functor_maps(fiber(f, b), c))
            if size > fast_threshold:
                found, detail, cost = _search_structure_boolean(f, c)
            else:
                found, detail, cost = _search_structure_generic(f, c, budget - work)
        else:
            found, detail, cost = _search_structure_generic(f, c, budget - work)
        work += cost
        if detail == "budget" or work > budget:
            return BruteForceResult(False, True, f"budget exhausted at target {name}", checked)
        if not found:
            return BruteForceResult(False, False, f"target {name}: {detail}", checked)
    return BruteForceResult(True, False, "", checked)


# Slice-exponential adjunction: the hom bijection, checked by round-trips.

def check_adjunction_bijection(f: QFunctor, g: QFunctor, exp: SliceExponential,
                               probes: ProbeFamily | None = None,
                               budget: int = 1_000_000) -> OracleVerdict:
    """Currying between slice homs into g and slice homs into the exponential.

    For each probe functor R: X -> B, every functor from the pullback of R
    with f into C lying over B is curried to a functor X -> E over B, and
    vice versa; the verdict fails unless both round-trips are identities
    pointwise (which makes the two finite hom-sets biject).
    """
    if probes is None:
        probes = default_probes(f.dom.base)
    failures: list[ConeFailure] = []
    for v in verify_category(exp.category):
        failures.append(ConeFailure("", (), (), EQUATION_FAILS, f"exponential invalid: {v}"))
    for v in verify_functor(exp.to_base):
        failures.append(ConeFailure("", (), (), EQUATION_FAILS, f"structure map invalid: {v}"))
    if failures:
        return OracleVerdict(False, tuple(failures), checked=0, budget=budget)
    b_cat, c = f.cod, g.dom
    fibs = [fiber_objects(f, b) for b in range(b_cat.n)]
    checked = 0
    for probe in probes.all():
        for r_map in functor_maps(probe, b_cat):
            r = QFunctor(probe, b_cat, r_map)
            pb, _, _ = pullback(r, f)
            pb_pairs = _pullback_pairs(r, f)
            pos = {pa: k for k, pa in enumerate(pb_pairs)}

            def curry(m_map):
                n_map = []
                for x in range(probe.n):
                    b = r_map[x]
                    hmap = tuple(m_map[pos[(x, a)]] for a in fibs[b])
                    idx = exp.index.get((b, hmap))
                    if idx is None:
                        return None
                    n_map.append(idx)
                return tuple(n_map)

            def uncurry(n_map):
                m_map = []
                for (x, a) in pb_pairs:
                    b, hmap = exp.pairs[n_map[x]]
                    fib_pos = {i: p for p, i in enumerate(fibs[b])}
                    m_map.append(hmap[fib_pos[a]])
                return tuple(m_map)

            ms = [m for m in functor_maps(pb, c)
                  if all(g(m[k]) == r_map[x] for k, (x, a) in enumerate(pb_pairs))]
            ns = [n for n in functor_maps(probe, exp.category)
                  if all(exp.to_base(n[x]) == r_map[x] for x in range(probe.n))]
            checked += len(ms) + len(ns)
            if checked > budget:
                return OracleVerdict(False, tuple(failures), inconclusive=True,
                                     checked=checked, budget=budget)
            n_set = set(ns)
            m_set = set(ms)
            for m in ms:
                n = curry(m)
                if n is None or n not in n_set:
                    failures.append(ConeFailure(_probe_name(probe), r_map, m,
                                                NO_MEDIATOR, "transpose not over the base", probe))
                elif uncurry(n) != m:
                    failures.append(ConeFailure(_probe_name(probe), r_map, m,
                                                EQUATION_FAILS, "round-trip differs", probe))
            for n in ns:
                m = uncurry(n)
                if m not in m_set:
                    failures.append(ConeFailure(_probe_name(probe), r_map, n,
                                                NO_MEDIATOR, "co-transpose not a slice map", probe))
                elif curry(m) != n:
                    failures.append(ConeFailure(_probe_name(probe), r_map, n,
                                                EQUATION_FAILS, "round-trip differs", probe))
    return OracleVerdict(not failures, tuple(failures), checked=checked, budget=budget)


def enumerate_qcategories(q: Quantaloid, max_objects: int | None = None,
                          types: tuple[str, ...] | None = None):
    """All categories over q with the given typed objects, or all up to a size.

    Hom entries vary in row-major order and only tables passing the category
    axioms are yielded, so the stream is deterministic and restartable.
    """
    if types is not None:
        vectors = [types]
    elif max_objects is not None:
        vectors = [
            tv
            for k in range(max_objects + 1)
            for tv in itertools.product(q.objects, repeat=k)
        ]
    else:
        raise MalformedInput("need either a type vector or a size bound")
    for tv in vectors:
        n = len(tv)
        ranges = [range(q.hom(tv[i], tv[j]).n) for j in range(n) for i in range(n)]
        for flat in itertools.product(*ranges):
            hom = tuple(tuple(flat[j * n + i] for i in range(n)) for j in range(n))
            cat = QCategory(q, tuple(f"o{i}" for i in range(n)), tv, hom)
            if not verify_category(cat):
                yield cat


# The flagship experiment: full agreement between the analytic checker and
# the brute-force search over all small preorder instances.

def all_preorders(max_objects: int) -> list[QCategory]:
    """Every category over the boolean base with up to the given object count."""
    return list(enumerate_qcategories(_BOOLEAN, max_objects=max_objects))


@dataclass(frozen=True)
class ExperimentResult:
    total: int
    agreements: int
    disagreements: tuple[str, ...]
    inconclusive: tuple[str, ...]
    elapsed: float

    @property
    def passed(self) -> bool:
        return self.total == self.agreements and not self.inconclusive


def preorder_equivalence_experiment(max_objects: int = 3, budget: int = 10_000_000,
                                    seed: int = 0) -> ExperimentResult:
    """Compare is_exponentiable with brute force on every small preorder functor."""
    from .exponentiable import is_exponentiable
    cats = all_preorders(max_objects)
    total = 0
    agree = 0
    disagreements = []
    inconclusive = []
    start = time.monotonic()
    for a in cats:
        for b in cats:
            for m in functor_maps(a, b):
                total += 1
                func = QFunctor(a, b, m)
                analytic = is_exponentiable(func).verdict
                brute = brute_force_exponentiable(func, budget=budget, seed=seed)
                tag = f"A={a.hom} B={b.hom} F={m}"
                if brute.inconclusive:
                    inconclusive.append(tag)
                elif brute.ok == analytic:
                    agree += 1
                else:
                    disagreements.append(tag + f" analytic={analytic} brute={brute.ok}")
    return ExperimentResult(total, agree, tuple(disagreements),
                            tuple(inconclusive), time.monotonic() - start)
