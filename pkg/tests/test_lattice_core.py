import random
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from conftest import fam, families, family_pairs
from crosssperner import bounds
from crosssperner.lattice_core import (
    CrossPair,
    Family,
    SetWord,
    canonical_form,
    canonical_pair,
    canonical_tuple,
    comparable,
    complement_family,
    difference_family,
    incomparables,
    is_convex,
    is_cross_sperner,
    is_downward_closed,
    is_sperner,
    join_family,
    meet_family,
    neighborhood,
    permute_family,
    shadow,
)


def sw(n, *elems):
    return SetWord.of(elems, n)


# naive reference implementations over explicit masks


def naive_comparable(a, b):
    return a & b in (a, b)


def naive_incomparables(F):
    return {v for v in range(1 << F.n) if not any(naive_comparable(v, u) for u in F)}


def naive_neighborhood(U):
    members = set(U)
    return {v for v in range(1 << U.n) if v not in members and any(naive_comparable(v, u) for u in U)}


class TestSetWord:
    def test_bit_layout(self):
        assert sw(3, 1).mask == 1
        assert sw(3, 3).mask == 4
        assert sw(3, 1, 3).elements == (1, 3)
        assert sw(4, 1, 2).complement() == sw(4, 3, 4)

    def test_limits(self):
        with pytest.raises(ValueError):
            SetWord(8, 3)
        with pytest.raises(ValueError):
            SetWord.of([4], 3)
        with pytest.raises(ValueError):
            SetWord(0, 25)
        SetWord((1 << 24) - 1, 24)


class TestComparable:
    def test_examples(self):
        assert comparable(sw(2, 1), sw(2, 1, 2))
        assert not comparable(sw(2, 1), sw(2, 2))
        assert not comparable(sw(3, 1, 3), sw(3, 2, 3))

    def test_equal_sets_are_comparable(self):
        assert comparable(sw(3, 2), sw(3, 2))

    def test_mismatched_n(self):
        with pytest.raises(ValueError):
            comparable(sw(2, 1), sw(3, 1))


class TestFamilyBasics:
    def test_size_is_popcount(self):
        F = fam(3, [1], [2], [1, 2])
        assert F.size() == len(F) == 3
        assert F.bits.bit_count() == 3

    def test_rejects_oversized_bitset(self):
        with pytest.raises(ValueError):
            Family(2, 1 << 4)
        with pytest.raises(ValueError):
            Family(21, 0)

    def test_sets_sorted(self):
        F = fam(3, [3, 1], [2], [])
        assert F.sets() == [[], [1, 3], [2]]

    def test_json_schema(self):
        F = fam(3, [3, 1], [2])
        assert F.to_json() == {"n": 3, "sets": [[1, 3], [2]]}

    def test_hex_nibble_order(self):
        # mask 0 and mask 5 present at n=3: bits 0 and 5 -> nibbles "1", "2" little-endian
        F = Family.from_masks(3, [0, 5])
        assert F.to_hex() == "12"
        assert Family.from_hex(3, "12") == F

    @given(families(max_n=6))
    def test_round_trips(self, F):
        assert Family.from_json(F.to_json()) == F
        assert Family.from_hex(F.n, F.to_hex()) == F
        assert F.to_hex() == F.to_hex().lower()


class TestNeighborhood:
    def test_examples(self):
        assert neighborhood(fam(3, [1])) == fam(3, [], [1, 2], [1, 3], [1, 2, 3])
        assert neighborhood(fam(2, [1])) == fam(2, [], [1, 2])
        assert neighborhood(Family.full(3)).size() == 0

    @given(families())
    def test_matches_naive(self, U):
        assert set(neighborhood(U)) == naive_neighborhood(U)

    @given(families())
    def test_partition_of_lattice(self, U):
        assert neighborhood(U).size() + U.size() + incomparables(U).size() == 1 << U.n

    @pytest.mark.parametrize("n", range(1, 11))
    def test_single_set_formula(self, n):
        for s in range(n + 1):
            U = Family.from_masks(n, [(1 << s) - 1])
            assert neighborhood(U).size() == 2**s + 2 ** (n - s) - 2
            assert neighborhood(U).size() == bounds.neighborhood_size(n, s)


class TestIncomparables:
    def test_examples(self):
        assert incomparables(fam(3, [1, 2])) == fam(3, [3], [1, 3], [2, 3])
        assert incomparables(Family.empty(3)) == Family.full(3)
        assert incomparables(fam(2, [1])) == fam(2, [2])

    @given(families())
    def test_matches_naive(self, F):
        assert set(incomparables(F)) == naive_incomparables(F)

    @given(families(), st.data())
    def test_unique_maximal_partner(self, F, data):
        G = incomparables(F)
        assert is_cross_sperner(F, G)
        outside = [v for v in range(1 << F.n) if v not in G]
        if outside and F.size():
            v = data.draw(st.sampled_from(outside))
            assert not is_cross_sperner(F, G | Family.from_masks(F.n, [v]))


class TestMeetJoin:
    def test_examples(self):
        A, B = fam(3, [1]), fam(3, [2])
        assert meet_family(A, B) == fam(3, [])
        assert join_family(A, B) == fam(3, [1, 2])
        F, G = fam(3, [1], [1, 2]), fam(3, [3], [2, 3])
        assert meet_family(F, G) == fam(3, [], [2])
        assert join_family(F, G) == fam(3, [1, 3], [1, 2, 3])
        E = fam(3, [])
        assert meet_family(E, E) == E == join_family(E, E)

    def test_empty_input(self):
        assert meet_family(Family.empty(3), fam(3, [1])).size() == 0
        assert join_family(fam(3, [1]), Family.empty(3)).size() == 0

    @given(family_pairs())
    def test_matches_naive(self, pair):
        A, B = pair
        assert set(meet_family(A, B)) == {a & b for a in A for b in B}
        assert set(join_family(A, B)) == {a | b for a in A for b in B}

    @given(family_pairs())
    def test_size_bounds(self, pair):
        A, B = pair
        assert meet_family(A, B).size() <= A.size() * B.size()
        assert join_family(A, B).size() <= A.size() * B.size()

    @given(families())
    def test_intersection_closed_idempotent(self, A):
        # close A under intersection and check A ∧ A ⊇ A
        closed = A
        while True:
            nxt = closed | meet_family(closed, closed)
            if nxt == closed:
                break
            closed = nxt
        assert (meet_family(closed, closed) & closed) == closed


class TestShadow:
    def test_examples(self):
        assert shadow(fam(3, [1, 2])) == fam(3, [1], [2])
        assert shadow(fam(3, [1, 2], [1, 3], [2, 3]), 2) == fam(3, [1], [2], [3])
        assert shadow(fam(3, [1, 2, 3]), 3) == fam(3, [1, 2], [1, 3], [2, 3])

    def test_nonuniform_rejected(self):
        with pytest.raises(ValueError):
            shadow(fam(3, [1], [1, 2]))
        with pytest.raises(ValueError):
            shadow(fam(3, [1, 2]), 3)

    def test_k_zero_rejected(self):
        with pytest.raises(ValueError):
            shadow(fam(3, []), 0)

    @given(st.integers(1, 6), st.data())
    def test_matches_naive(self, n, data):
        k = data.draw(st.integers(1, n))
        level = Family.level(n, k).masks()
        chosen = data.draw(st.lists(st.sampled_from(level), min_size=1, unique=True))
        F = Family.from_masks(n, chosen)
        expect = {m & ~(1 << i) for m in chosen for i in range(n) if m >> i & 1}
        assert set(shadow(F, k)) == expect


class TestComplement:
    def test_examples(self):
        assert complement_family(fam(3, [1])) == fam(3, [2, 3])
        assert complement_family(fam(3, [1], [1, 2])) == fam(3, [2, 3], [3])
        assert complement_family(Family.empty(3)) == Family.empty(3)

    @given(families())
    def test_involution(self, F):
        assert complement_family(complement_family(F)) == F

    @given(family_pairs())
    def test_duality(self, pair):
        F, G = pair
        assert is_cross_sperner(F, G) == is_cross_sperner(complement_family(F), complement_family(G))


class TestPredicates:
    def test_examples(self):
        assert is_cross_sperner(fam(3, [1], [1, 2]), fam(3, [3], [2, 3]))
        assert not is_cross_sperner(fam(3, [1]), fam(3, [1, 2]))
        assert is_downward_closed(fam(3, [], [1], [2]))
        assert not is_convex(fam(2, [], [1, 2]))

    def test_cross_sperner_forces_disjoint(self):
        assert not is_cross_sperner(fam(3, [1]), fam(3, [1]))

    @given(family_pairs())
    def test_cross_sperner_matches_naive(self, pair):
        F, G = pair
        assert is_cross_sperner(F, G) == (not any(naive_comparable(a, b) for a in F for b in G))

    @given(families())
    def test_sperner_matches_naive(self, F):
        ms = list(F)
        expect = not any(a != b and naive_comparable(a, b) for a in ms for b in ms)
        assert is_sperner(F) == expect

    @given(families())
    def test_downward_closed_matches_naive(self, F):
        members = set(F)
        expect = all((m & ~(1 << i)) in members for m in members for i in range(F.n))
        assert is_downward_closed(F) == expect

    @given(families(max_n=4))
    def test_convex_matches_naive(self, F):
        members = set(F)
        expect = all(
            v in members
            for a in members
            for b in members
            if a & b == a
            for v in range(1 << F.n)
            if v & a == a and v & b == v
        )
        assert is_convex(F) == expect


class TestDifferenceFamily:
    def test_examples(self):
        assert difference_family(fam(3, [1], [1, 2])) == fam(3, [], [2])
        assert difference_family(fam(3, [1])) == fam(3, [])
        assert difference_family(fam(3, [1], [2])) == fam(3, [], [1], [2])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            difference_family(Family.empty(3))

    @given(families())
    def test_matches_naive(self, C):
        if C.size() == 0:
            return
        assert set(difference_family(C)) == {a & ~b for a in C for b in C}


class TestCrossPair:
    def test_validated(self):
        CrossPair.of(fam(2, [1]), fam(2, [2]))
        with pytest.raises(ValueError):
            CrossPair.of(fam(2, [1]), fam(2, [1]))
        with pytest.raises(ValueError):
            CrossPair.of(fam(2, [1]), fam(3, [2]))

    def test_json(self):
        p = CrossPair.of(fam(3, [1], [1, 2]), fam(3, [3], [2, 3]))
        assert CrossPair.from_json(p.to_json()) == p
        assert p.sum == 4 and p.product == 4


class TestCanonical:
    def test_relabeling_example(self):
        assert canonical_form(fam(3, [2])) == fam(3, [1])

    @given(families(max_n=5), st.randoms(use_true_random=False))
    def test_orbit_invariant(self, F, rnd):
        perm = list(range(F.n))
        rnd.shuffle(perm)
        c = canonical_form(F)
        assert canonical_form(permute_family(F, perm)) == c
        assert canonical_form(complement_family(F)) == c
        assert canonical_form(c) == c

    def test_is_orbit_minimum(self):
        rnd = random.Random(3)
        for _ in range(30):
            n = rnd.randint(1, 4)
            F = Family(n, rnd.getrandbits(1 << n))
            images = set()
            for perm in permutations(range(n)):
                img = permute_family(F, perm)
                images.update((img.bits, complement_family(img).bits))
            assert canonical_form(F).bits == min(images)

    @given(family_pairs(max_n=4))
    def test_pair_swap(self, pair):
        F, G = pair
        assert canonical_pair(F, G) == canonical_pair(G, F)
        assert canonical_pair(*canonical_pair(F, G)) == canonical_pair(F, G)

    def test_tuple_is_order_free(self):
        fs = [fam(3, [1]), fam(3, [2, 3]), fam(3, [1, 2])]
        assert canonical_tuple(fs) == canonical_tuple(fs[::-1])

    def test_too_large(self):
        with pytest.raises(ValueError):
            canonical_form(Family.from_masks(13, [1]))
