from itertools import combinations
from math import comb

import pytest

from conftest import fam
from crosssperner import bounds
from crosssperner.constructions import (
    KTuple,
    b_sets,
    ktuple_construction,
    l_of_k,
    sperner_middle_layer,
    theorem1_extremal,
    theorem2_extremal,
)
from crosssperner.lattice_core import Family, SetWord, is_cross_sperner, is_sperner


class TestTheorem1:
    def test_examples(self):
        assert theorem1_extremal(4, 2).G.size() == 9
        p = theorem1_extremal(2, 1)
        assert p.F == fam(2, [1]) and p.G == fam(2, [2])
        assert theorem1_extremal(3, 2).G.size() == 3

    def test_default_s_is_ceiling(self):
        assert theorem1_extremal(5).F == fam(5, [1, 2, 3])

    @pytest.mark.parametrize("s", [0, 4])
    def test_rejects_trivial_s(self, s):
        with pytest.raises(ValueError):
            theorem1_extremal(4, s)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_sum_value_and_optimal_s(self, n):
        p = theorem1_extremal(n)
        assert p.sum == 1 + bounds.f_n1(n) == bounds.sum_bound(n)
        sums = {s: theorem1_extremal(n, s).sum for s in range(1, n)}
        best = max(sums.values())
        assert {s for s, v in sums.items() if v == best} == {n // 2, (n + 1) // 2}


class TestTheorem2:
    def test_examples(self):
        p = theorem2_extremal(2)
        assert (p.F, p.G, p.product) == (fam(2, [1]), fam(2, [2]), 1)
        p = theorem2_extremal(3)
        assert p.F == fam(3, [1], [1, 2]) and p.G == fam(3, [3], [2, 3]) and p.product == 4
        p = theorem2_extremal(5)
        assert p.F.size() == p.G.size() == 8 and p.product == 64

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            theorem2_extremal(1)

    @pytest.mark.parametrize("n", range(2, 11))
    def test_attains_product_bound(self, n):
        assert theorem2_extremal(n).product == bounds.product_bound(n)


class TestKTuples:
    def test_l_of_k(self):
        assert [l_of_k(k) for k in (1, 2, 3, 4, 6, 7)] == [1, 2, 3, 4, 4, 5]

    def test_l_is_minimal(self):
        for k in range(1, 40):
            l = l_of_k(k)
            assert comb(l, l // 2) >= k
            assert l == 1 or comb(l - 1, (l - 1) // 2) < k

    def test_middle_layer(self):
        assert sperner_middle_layer(3, 3) == fam(3, [1], [2], [3])
        assert sperner_middle_layer(2, 2) == fam(2, [1], [2])
        assert sperner_middle_layer(4, 4) == fam(4, [1, 2], [1, 3], [1, 4], [2, 3])
        with pytest.raises(ValueError):
            sperner_middle_layer(3, 4)

    def test_examples(self):
        t = ktuple_construction(4, 3)
        assert t.sizes == [2, 2, 2] and t.product == 8
        t = ktuple_construction(3, 3)
        assert t.product == 1
        for n in range(2, 7):
            assert ktuple_construction(n, 2).product == theorem2_extremal(n).product

    def test_too_small_n(self):
        with pytest.raises(ValueError):
            ktuple_construction(3, 4)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_products_and_validity(self, n):
        for k in range(2, 7):
            l = l_of_k(k)
            if n < l:
                continue
            t = ktuple_construction(n, k)
            assert all(is_cross_sperner(a, b) for a, b in combinations(t.families, 2))
            assert t.product == 2 ** (k * (n - l)) == bounds.ktuple_conjectured(n, k)
            assert t.product <= bounds.ktuple_upper(n, k)

    def test_ktuple_validation(self):
        with pytest.raises(ValueError):
            KTuple.of([fam(3, [1]), fam(3, [1, 2])])
        t = ktuple_construction(4, 3)
        assert KTuple.from_json(t.to_json()) == t


class TestBSets:
    def test_examples(self):
        assert b_sets(SetWord.of([1, 2], 3), SetWord.of([1, 2, 3], 3)) == fam(3, [3])
        assert b_sets(SetWord.of([1], 2), SetWord.of([1, 2], 2)).size() == 0

    def test_requires_proper_subset(self):
        with pytest.raises(ValueError):
            b_sets(SetWord.of([1, 3], 3), SetWord.of([1, 2], 3))
        with pytest.raises(ValueError):
            b_sets(SetWord.of([1], 3), SetWord.of([1], 3))

    @pytest.mark.parametrize("n", range(1, 11))
    def test_size_formula(self, n):
        full = (1 << n) - 1
        for f0 in range(1 << n):
            # one representative superset per excess size keeps n=10 quick
            rest = full & ~f0
            low_bits = [1 << i for i in range(n) if rest >> i & 1]
            extra = 0
            for bit in low_bits:
                extra |= bit
                got = b_sets(SetWord(f0, n), SetWord(f0 | extra, n)).size()
                assert got == bounds.b_set_size(f0.bit_count(), extra.bit_count())

    def test_size_formula_all_supersets(self):
        n = 6
        for f0 in range(1 << n):
            sup = (1 << n) - 1
            while True:
                s = sup | f0
                if s != f0:
                    got = b_sets(SetWord(f0, n), SetWord(s, n)).size()
                    assert got == bounds.b_set_size(f0.bit_count(), (s & ~f0).bit_count())
                if sup == 0:
                    break
                sup = (sup - 1) & ~f0 & ((1 << n) - 1)

    def test_disjoint_for_distinct_supersets(self):
        n = 5
        for f0 in range(1 << n):
            supers = [s for s in range(1 << n) if s & f0 == f0 and s != f0]
            fams = {s: b_sets(SetWord(f0, n), SetWord(s, n)) for s in supers}
            for a, b in combinations(supers, 2):
                assert (fams[a] & fams[b]).size() == 0
