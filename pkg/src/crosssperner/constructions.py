"""Explicit cross-Sperner constructions used as lower-bound witnesses and fixtures."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb, prod

from .lattice_core import (
    CrossPair,
    Family,
    SetWord,
    incomparables,
    is_cross_sperner,
)


@dataclass(frozen=True, slots=True)
class KTuple:
    """Families ``F_1, ..., F_k`` that are pairwise cross-Sperner."""

    n: int
    k: int
    families: tuple[Family, ...]

    def __post_init__(self) -> None:
        if len(self.families) != self.k:
            raise ValueError(f"expected {self.k} families, got {len(self.families)}")
        for f in self.families:
            if f.n != self.n:
                raise ValueError("tuple families must share the ground-set size")
        for i, j in combinations(range(self.k), 2):
            if not is_cross_sperner(self.families[i], self.families[j]):
                raise ValueError(f"families {i + 1} and {j + 1} are not cross-Sperner")

    @classmethod
    def of(cls, families) -> "KTuple":
        families = tuple(families)
        return cls(families[0].n, len(families), families)

    @property
    def sizes(self) -> list[int]:
        return [f.size() for f in self.families]

    @property
    def product(self) -> int:
        return prod(self.sizes)

    @property
    def sum(self) -> int:
        return sum(self.sizes)

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "families": [f.to_json() for f in self.families]}

    @classmethod
    def from_json(cls, obj: dict) -> "KTuple":
        return cls(int(obj["n"]), int(obj["k"]), tuple(Family.from_json(f) for f in obj["families"]))


def theorem1_extremal(n: int, s: int | None = None) -> CrossPair:
    """The single set ``S = {1..s}`` paired with everything incomparable to it.

    ``s`` defaults to ``ceil(n/2)``, the size maximizing ``|F| + |G|``.
    """
    if s is None:
        s = (n + 1) // 2
    if not 1 <= s <= n - 1:
        raise ValueError(f"need 1 <= s <= n-1 for a nonempty partner, got s={s}, n={n}")
    F = Family.from_masks(n, [(1 << s) - 1])
    return CrossPair(n, F, incomparables(F))


def theorem2_extremal(n: int) -> CrossPair:
    """``F = {1 in X, n not in X}``, ``G = {n in X, 1 not in X}``; product ``2**(2n-4)``."""
    if n < 2:
        raise ValueError(f"theorem2_extremal needs n >= 2, got {n}")
    first, last = 1, 1 << (n - 1)
    F = Family.from_masks(n, (x for x in range(1 << n) if x & first and not x & last))
    G = Family.from_masks(n, (x for x in range(1 << n) if x & last and not x & first))
    return CrossPair(n, F, G)


def l_of_k(k: int) -> int:
    """Least positive ``l`` whose middle binomial coefficient is at least ``k``."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    l = 1
    while comb(l, l // 2) < k:
        l += 1
    return l


def _middle_layer_masks(l: int, k: int) -> list[int]:
    if k > comb(l, l // 2):
        raise ValueError(f"only {comb(l, l // 2)} middle-layer sets exist in [{l}], asked for {k}")
    chosen = []
    for c in combinations(range(l), l // 2):
        if len(chosen) == k:
            break
        chosen.append(sum(1 << i for i in c))
    return chosen


def sperner_middle_layer(l: int, k: int) -> Family:
    """The ``k`` lexicographically first ``floor(l/2)``-subsets of ``[l]``."""
    return Family.from_masks(l, _middle_layer_masks(l, k))


def ktuple_construction(n: int, k: int) -> KTuple:
    """``F_i = {X : X & [l] = S_i}`` for a lex-first middle-layer Sperner family ``S_1..S_k``."""
    l = l_of_k(k)
    if n < l:
        raise ValueError(f"ktuple_construction needs n >= l(k) = {l}, got n={n}")
    low = (1 << l) - 1
    traces = _middle_layer_masks(l, k)
    families = tuple(
        Family.from_masks(n, (x for x in range(1 << n) if x & low == t)) for t in traces
    )
    return KTuple(n, k, families)


def b_sets(F0: SetWord, Fstar: SetWord) -> Family:
    """Sets of size below ``|F0|`` obtained by deleting part of ``F0`` from ``Fstar``."""
    if F0.n != Fstar.n:
        raise ValueError("sets over different ground sets")
    if F0.mask & ~Fstar.mask or F0.mask == Fstar.mask:
        raise ValueError("b_sets needs F0 to be a proper subset of Fstar")
    m = len(F0)
    out = []
    sub = F0.mask
    while True:
        image = Fstar.mask & ~sub
        if image.bit_count() < m:
            out.append(image)
        if sub == 0:
            break
        sub = (sub - 1) & F0.mask
    return Family.from_masks(F0.n, out)
