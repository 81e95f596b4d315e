import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qexp.lattice import (
    FiniteLattice,
    MalformedInput,
    MonotoneMap,
    NotSupPreserving,
    chain_lattice,
    identity_map,
    is_sup_preserving,
    m3_lattice,
    n5_lattice,
    powerset_lattice,
    right_adjoint_of,
    sup_preservation_witness,
)

M3 = m3_lattice()
FAMILY = [
    chain_lattice(1),
    chain_lattice(2),
    chain_lattice(3),
    chain_lattice(4),
    powerset_lattice(("p", "q")),
    M3,
    n5_lattice(),
]


def brute_lub(lat, xs):
    """Independent oracle: the unique minimal common upper bound."""
    ub = [z for z in range(lat.n) if all(lat.le(x, z) for x in xs)]
    least = [u for u in ub if all(lat.le(u, v) for v in ub)]
    assert len(least) == 1
    return least[0]


def brute_glb(lat, xs):
    lb = [z for z in range(lat.n) if all(lat.le(z, x) for x in xs)]
    greatest = [u for u in lb if all(lat.le(v, u) for v in lb)]
    assert len(greatest) == 1
    return greatest[0]


class TestConstruction:
    def test_rejects_non_reflexive(self):
        with pytest.raises(MalformedInput, match="reflexive"):
            FiniteLattice(((False, True), (False, True)))

    def test_rejects_non_antisymmetric(self):
        with pytest.raises(MalformedInput, match="antisymmetric"):
            FiniteLattice(((True, True), (True, True)))

    def test_rejects_non_transitive(self):
        leq = [[i == j for j in range(3)] for i in range(3)]
        leq[0][1] = leq[1][2] = True
        with pytest.raises(MalformedInput, match="transitive"):
            FiniteLattice(tuple(tuple(r) for r in leq))

    def test_rejects_missing_bounds(self):
        # two incomparable points: no join
        leq = ((True, False), (False, True))
        with pytest.raises(MalformedInput, match="least upper bound"):
            FiniteLattice(leq)

    def test_rejects_empty(self):
        with pytest.raises(MalformedInput):
            FiniteLattice(())

    def test_from_pairs_range_check(self):
        with pytest.raises(MalformedInput, match="out of range"):
            FiniteLattice.from_pairs(("a",), [(0, 1)])

    def test_equality_and_hash(self):
        assert chain_lattice(3) == chain_lattice(3)
        assert hash(chain_lattice(3)) == hash(chain_lattice(3))
        assert chain_lattice(3) != chain_lattice(2)


class TestJoinMeet:
    def test_chain_top_absorbs(self):
        c2 = chain_lattice(2)
        assert c2.join([0, 1]) == 1
        assert c2.meet([0, 1]) == 0

    def test_empty_join_is_bottom_and_meet_is_top(self):
        for lat in FAMILY:
            assert lat.join([]) == lat.bottom
            assert lat.meet([]) == lat.top

    def test_m3_atoms(self):
        # frozen from the brute-force minimal-upper-bound scan: x v y = top
        assert brute_lub(M3, [1, 2]) == 4
        assert M3.join([1, 2]) == 4
        assert brute_glb(M3, [1, 2]) == 0
        assert M3.meet([1, 2]) == 0

    def test_tables_match_brute_force(self):
        for lat in FAMILY:
            for x in range(lat.n):
                for y in range(lat.n):
                    assert lat.join2(x, y) == brute_lub(lat, [x, y])
                    assert lat.meet2(x, y) == brute_glb(lat, [x, y])

    def test_out_of_range(self):
        with pytest.raises(MalformedInput):
            chain_lattice(2).join([5])

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, len(FAMILY) - 1), st.data())
    def test_join_of_union_splits(self, which, data):
        lat = FAMILY[which]
        xs = data.draw(st.lists(st.integers(0, lat.n - 1), max_size=4))
        ys = data.draw(st.lists(st.integers(0, lat.n - 1), max_size=4))
        assert lat.join(xs + ys) == lat.join([lat.join(xs), lat.join(ys)])
        assert lat.meet(xs + ys) == lat.meet([lat.meet(xs), lat.meet(ys)])

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, len(FAMILY) - 1), st.data())
    def test_join_commutative_idempotent(self, which, data):
        lat = FAMILY[which]
        x = data.draw(st.integers(0, lat.n - 1))
        y = data.draw(st.integers(0, lat.n - 1))
        assert lat.join2(x, y) == lat.join2(y, x)
        assert lat.join2(x, x) == x


def monotone_endomaps(lat):
    for table in itertools.product(range(lat.n), repeat=lat.n):
        if all(lat.le(table[x], table[y])
               for x in range(lat.n) for y in range(lat.n) if lat.le(x, y)):
            yield MonotoneMap(lat, lat, table)


def preserves_all_subsets(f):
    """Direct verification over every subset, the finite-reduction oracle."""
    src, tgt = f.source, f.target
    for r in range(src.n + 1):
        for subset in itertools.combinations(range(src.n), r):
            if f.table[src.join(subset)] != tgt.join(f.table[x] for x in subset):
                return False
    return True


class TestSupPreservation:
    def test_identity(self):
        for lat in FAMILY:
            assert is_sup_preserving(identity_map(lat))

    def test_constant_top_fails_on_bottom(self):
        c2 = chain_lattice(2)
        f = MonotoneMap(c2, c2, (1, 1))
        assert not is_sup_preserving(f)
        assert sup_preservation_witness(f) == ("bottom",)

    def test_collapse_is_sup_preserving(self):
        f = MonotoneMap(chain_lattice(3), chain_lattice(2), (0, 0, 1))
        assert is_sup_preserving(f)
        assert preserves_all_subsets(f)

    def test_monotonicity_enforced(self):
        with pytest.raises(MalformedInput, match="monotone"):
            MonotoneMap(chain_lattice(2), chain_lattice(2), (1, 0))

    def test_finite_reduction_sound(self):
        # binary + empty joins decide preservation of arbitrary joins,
        # exhaustively over all monotone endomaps of the small family
        for lat in FAMILY:
            if lat.n > 5:
                continue
            for f in monotone_endomaps(lat):
                assert is_sup_preserving(f) == preserves_all_subsets(f)


class TestRightAdjoint:
    def test_identity(self):
        for lat in FAMILY:
            g = right_adjoint_of(identity_map(lat))
            assert g.table == tuple(range(lat.n))

    def test_collapse_adjoint_frozen(self):
        # oracle: g(y) is the join of the preimage downset; computed values frozen
        f = MonotoneMap(chain_lattice(3), chain_lattice(2), (0, 0, 1))
        assert right_adjoint_of(f).table == (1, 2)

    def test_embedding_adjoint_frozen(self):
        f = MonotoneMap(chain_lattice(2), chain_lattice(3), (0, 2))
        assert right_adjoint_of(f).table == (0, 0, 1)

    def test_not_sup_preserving_raises_with_witness(self):
        # meet-with-an-atom on M3 joins two other atoms to the top
        f = MonotoneMap(M3, M3, tuple(M3.meet2(x, 1) for x in range(5)))
        with pytest.raises(NotSupPreserving) as exc:
            right_adjoint_of(f)
        kind, *rest = exc.value.witness
        assert kind == "join"
        x, y = rest
        assert f.table[M3.join2(x, y)] != M3.join2(f.table[x], f.table[y])

    def test_galois_law_exhaustive(self):
        for lat in FAMILY:
            if lat.n > 5:
                continue
            for f in monotone_endomaps(lat):
                if not is_sup_preserving(f):
                    continue
                g = right_adjoint_of(f)
                for x in range(lat.n):
                    for y in range(lat.n):
                        assert lat.le(f.table[x], y) == lat.le(x, g.table[y])

    def test_right_adjoints_preserve_meets_and_top(self):
        for lat in FAMILY:
            if lat.n > 5:
                continue
            for f in monotone_endomaps(lat):
                if not is_sup_preserving(f):
                    continue
                g = right_adjoint_of(f)
                assert g.table[lat.top] == lat.top
                for y1 in range(lat.n):
                    for y2 in range(lat.n):
                        assert g.table[lat.meet2(y1, y2)] == lat.meet2(g.table[y1], g.table[y2])


class TestDownset:
    def test_downset_of_top_is_everything(self):
        for lat in FAMILY:
            sub = lat.downset_lattice(lat.top)
            assert sub.leq == lat.leq
            assert sub.names == lat.names

    def test_downset_of_bottom_is_singleton(self):
        for lat in FAMILY:
            assert lat.downset_lattice(lat.bottom).n == 1

    def test_m3_atom_downset_is_two_chain(self):
        sub = M3.downset_lattice(1)
        assert sub.n == 2
        assert sub.leq == chain_lattice(2).leq
        assert sub.names == ("bot", "x")

    def test_induced_order_matches_filter_oracle(self):
        for lat in FAMILY:
            for b in range(lat.n):
                members = [x for x in range(lat.n) if lat.le(x, b)]
                sub = lat.downset_lattice(b)
                assert sub.n == len(members)
                assert sub.top == members.index(b)
                for i, x in enumerate(members):
                    for j, y in enumerate(members):
                        assert sub.le(i, j) == lat.le(x, y)
