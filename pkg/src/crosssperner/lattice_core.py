"""Subsets of [n] as bitmasks and families of subsets as characteristic bitsets.

Element ``i`` of ``[n] = {1, ..., n}`` is bit ``i - 1`` of a subset mask.  A
family over ``[n]`` is a Python integer with ``2**n`` significant bits: bit
``j`` is set iff the subset with mask ``j`` is a member.  All lattice
operators below (up/down closure, shadows, meets, coordinate permutations)
are computed as a handful of shift-and-mask steps on that integer.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_SET_N = 24
MAX_FAMILY_N = 20
MAX_CANON_N = 12


# -- raw bitset machinery ----------------------------------------------------


@lru_cache(maxsize=None)
def _low_masks(n: int) -> tuple[int, ...]:
    """Per coordinate ``i``, the family of all subsets not containing ``i``."""
    size = 1 << n
    out = []
    for i in range(n):
        width = 2 << i
        mask = (1 << (1 << i)) - 1
        while width < size:
            mask |= mask << width
            width *= 2
        out.append(mask)
    return tuple(out)


def _full(n: int) -> int:
    return (1 << (1 << n)) - 1


def _up(bits: int, n: int) -> int:
    for i, low in enumerate(_low_masks(n)):
        bits |= (bits & low) << (1 << i)
    return bits


def _down(bits: int, n: int) -> int:
    for i, low in enumerate(_low_masks(n)):
        bits |= (bits & ~low) >> (1 << i)
    return bits


def _comparables(bits: int, n: int) -> int:
    return _up(bits, n) | _down(bits, n)


def _incomparables(bits: int, n: int) -> int:
    return _full(n) & ~_comparables(bits, n)


def _strict_up(bits: int, n: int) -> int:
    step = 0
    for i, low in enumerate(_low_masks(n)):
        step |= (bits & low) << (1 << i)
    return _up(step, n)


def _clear_coords(bits: int, coords: int, n: int) -> int:
    """Image of a family under ``x -> x & ~coords``."""
    for i, low in enumerate(_low_masks(n)):
        if coords >> i & 1:
            bits = (bits & low) | ((bits & ~low) >> (1 << i))
    return bits


def _set_coords(bits: int, coords: int, n: int) -> int:
    """Image of a family under ``x -> x | coords``."""
    for i, low in enumerate(_low_masks(n)):
        if coords >> i & 1:
            bits = (bits & ~low) | ((bits & low) << (1 << i))
    return bits


def _flip_all(bits: int, n: int) -> int:
    for i, low in enumerate(_low_masks(n)):
        s = 1 << i
        bits = ((bits & low) << s) | ((bits >> s) & low)
    return bits


@lru_cache(maxsize=None)
def _swap_mask(n: int, i: int, j: int) -> tuple[int, int]:
    lows = _low_masks(n)
    a = ~lows[i] & lows[j] & _full(n)
    return a, (1 << j) - (1 << i)


def _swap_coords(bits: int, n: int, i: int, j: int) -> int:
    """Exchange coordinates ``i < j`` of every member (delta swap)."""
    a, d = _swap_mask(n, i, j)
    t = ((bits >> d) ^ bits) & a
    return bits ^ t ^ (t << d)


def _iter_bits(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def _heap_swaps(n: int) -> Iterator[tuple[int, int]]:
    """Transpositions visiting all ``n!`` permutations (Heap's algorithm)."""
    c = [0] * n
    i = 1
    while i < n:
        if c[i] < i:
            a, b = (0, i) if i % 2 == 0 else (c[i], i)
            yield (a, b) if a < b else (b, a)
            c[i] += 1
            i = 1
        else:
            c[i] = 0
            i += 1


@lru_cache(maxsize=16)
def _heap_swaps_cached(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(_heap_swaps(n))


def _swap_sequence(n: int) -> Iterable[tuple[int, int]]:
    return _heap_swaps_cached(n) if n <= 8 else _heap_swaps(n)


def _check_n(n: int, limit: int) -> None:
    if not isinstance(n, int) or n < 0 or n > limit:
        raise ValueError(f"ground-set size must be in [0, {limit}], got {n!r}")


# -- value types -------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SetWord:
    """One subset of ``[n]``; element ``i`` lives in bit ``i - 1``."""

    mask: int
    n: int

    def __post_init__(self) -> None:
        _check_n(self.n, MAX_SET_N)
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} does not fit in n={self.n} bits")

    @classmethod
    def of(cls, elements: Iterable[int], n: int) -> "SetWord":
        mask = 0
        for e in elements:
            if not 1 <= e <= n:
                raise ValueError(f"element {e} outside [1, {n}]")
            mask |= 1 << (e - 1)
        return cls(mask, n)

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in _iter_bits(self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def complement(self) -> "SetWord":
        return SetWord(self.mask ^ ((1 << self.n) - 1), self.n)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


@dataclass(frozen=True, slots=True)
class Family:
    """A family of subsets of ``[n]`` stored as a ``2**n``-bit characteristic bitset."""

    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        _check_n(self.n, MAX_FAMILY_N)
        if self.bits < 0 or self.bits >> (1 << self.n):
            raise ValueError(f"bitset does not fit in 2**{self.n} positions")

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "Family":
        bits = 0
        for m in masks:
            if m < 0 or m >> n:
                raise ValueError(f"mask {m:#x} does not fit in n={n} bits")
            bits |= 1 << m
        return cls(n, bits)

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "Family":
        return cls.from_masks(n, (SetWord.of(s, n).mask for s in sets))

    @classmethod
    def empty(cls, n: int) -> "Family":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "Family":
        return cls(n, _full(n))

    @classmethod
    def level(cls, n: int, k: int) -> "Family":
        """All ``k``-subsets of ``[n]``."""
        return cls.from_masks(n, (sum(1 << i for i in c) for c in combinations(range(n), k)))

    def size(self) -> int:
        return self.bits.bit_count()

    __len__ = size

    def __iter__(self) -> Iterator[int]:
        return _iter_bits(self.bits)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, SetWord):
            if item.n != self.n:
                return False
            item = item.mask
        if not isinstance(item, int) or item < 0 or item >> self.n:
            return False
        return bool(self.bits >> item & 1)

    def __bool__(self) -> bool:
        return self.bits != 0

    def _same(self, other: "Family") -> None:
        if other.n != self.n:
            raise ValueError(f"families over different ground sets: n={self.n} vs n={other.n}")

    def __or__(self, other: "Family") -> "Family":
        self._same(other)
        return Family(self.n, self.bits | other.bits)

    def __and__(self, other: "Family") -> "Family":
        self._same(other)
        return Family(self.n, self.bits & other.bits)

    def __sub__(self, other: "Family") -> "Family":
        self._same(other)
        return Family(self.n, self.bits & ~other.bits)

    def masks(self) -> list[int]:
        return list(self)

    def setwords(self) -> list[SetWord]:
        return [SetWord(m, self.n) for m in self]

    def sets(self) -> list[list[int]]:
        """Members as sorted element lists, in lexicographic order."""
        return sorted([i + 1 for i in _iter_bits(m)] for m in self)

    def level_counts(self) -> list[int]:
        counts = [0] * (self.n + 1)
        for m in self:
            counts[m.bit_count()] += 1
        return counts

    # serialization

    def to_json(self) -> dict:
        return {"n": self.n, "sets": self.sets()}

    @classmethod
    def from_json(cls, obj: dict | str) -> "Family":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls.from_sets(int(obj["n"]), obj["sets"])

    def to_hex(self) -> str:
        """Nibble-little-endian hex: character ``i`` holds membership bits ``4i..4i+3``."""
        width = max(1, (1 << self.n) // 4)
        return format(self.bits, f"0{width}x")[::-1]

    @classmethod
    def from_hex(cls, n: int, text: str) -> "Family":
        width = max(1, (1 << n) // 4)
        if len(text) != width:
            raise ValueError(f"expected {width} hex digits for n={n}, got {len(text)}")
        return cls(n, int(text[::-1], 16))

    def digest(self) -> str:
        """Hash of the sorted member list; not invariant under relabeling."""
        payload = json.dumps(self.to_json(), separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()

    def __repr__(self) -> str:
        inner = ",".join("{" + ",".join(map(str, s)) + "}" for s in self.sets())
        return f"Family(n={self.n}, [{inner}])"


@dataclass(frozen=True, slots=True)
class CrossPair:
    """A validated cross-Sperner pair: no member of F is comparable to a member of G."""

    n: int
    F: Family
    G: Family

    def __post_init__(self) -> None:
        if self.F.n != self.n or self.G.n != self.n:
            raise ValueError("pair families must share the ground-set size")
        if not is_cross_sperner(self.F, self.G):
            raise ValueError("families are not cross-Sperner")

    @classmethod
    def of(cls, F: Family, G: Family) -> "CrossPair":
        return cls(F.n, F, G)

    @property
    def sum(self) -> int:
        return self.F.size() + self.G.size()

    @property
    def product(self) -> int:
        return self.F.size() * self.G.size()

    def swapped(self) -> "CrossPair":
        return CrossPair(self.n, self.G, self.F)

    def to_json(self) -> dict:
        return {"n": self.n, "F": self.F.to_json(), "G": self.G.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "CrossPair":
        return cls(int(obj["n"]), Family.from_json(obj["F"]), Family.from_json(obj["G"]))


# -- operations --------------------------------------------------------------


def comparable(a: SetWord, b: SetWord) -> bool:
    """True iff one set contains the other (equal sets count as comparable)."""
    if a.n != b.n:
        raise ValueError(f"sets over different ground sets: n={a.n} vs n={b.n}")
    both = a.mask & b.mask
    return both == a.mask or both == b.mask


def neighborhood(U: Family) -> Family:
    """Sets outside ``U`` that are a strict subset or superset of some member."""
    return Family(U.n, _comparables(U.bits, U.n) & ~U.bits)


def incomparables(F: Family) -> Family:
    """The largest family ``G`` such that ``(F, G)`` is cross-Sperner."""
    return Family(F.n, _incomparables(F.bits, F.n))


def up_closure(F: Family) -> Family:
    return Family(F.n, _up(F.bits, F.n))


def down_closure(F: Family) -> Family:
    return Family(F.n, _down(F.bits, F.n))


def meet_family(A: Family, B: Family) -> Family:
    """``{a & b : a in A, b in B}``."""
    A._same(B)
    if A.size() > B.size():
        A, B = B, A
    n, full = A.n, (1 << A.n) - 1
    bits = 0
    for a in A:
        bits |= _clear_coords(B.bits, full & ~a, n)
    return Family(n, bits)


def join_family(A: Family, B: Family) -> Family:
    """``{a | b : a in A, b in B}``."""
    A._same(B)
    if A.size() > B.size():
        A, B = B, A
    bits = 0
    for a in A:
        bits |= _set_coords(B.bits, a, A.n)
    return Family(A.n, bits)


def shadow(F: Family, k: int | None = None) -> Family:
    """All ``(k-1)``-subsets contained in a member of the ``k``-uniform family ``F``."""
    sizes = {m.bit_count() for m in F}
    if k is None:
        if not sizes:
            return Family.empty(F.n)
        if len(sizes) != 1:
            raise ValueError("shadow needs a uniform family")
        (k,) = sizes
    if k < 1:
        raise ValueError(f"shadow needs k >= 1, got {k}")
    if sizes - {k}:
        raise ValueError(f"family is not {k}-uniform")
    bits = 0
    for i, low in enumerate(_low_masks(F.n)):
        bits |= (F.bits & ~low) >> (1 << i)
    return Family(F.n, bits)


def complement_family(F: Family) -> Family:
    return Family(F.n, _flip_all(F.bits, F.n))


def is_cross_sperner(F: Family, G: Family) -> bool:
    F._same(G)
    return G.bits & _comparables(F.bits, F.n) == 0


def is_sperner(F: Family) -> bool:
    return F.bits & _strict_up(F.bits, F.n) == 0


def is_downward_closed(F: Family) -> bool:
    return _down(F.bits, F.n) == F.bits


def is_convex(F: Family) -> bool:
    return _up(F.bits, F.n) & _down(F.bits, F.n) == F.bits


def difference_family(C: Family) -> Family:
    """``{c - c' : c, c' in C}``, including the empty set from ``c == c'``."""
    if not C:
        raise ValueError("difference family of an empty family is undefined")
    bits = 0
    for c in C:
        bits |= _clear_coords(C.bits, c, C.n)
    return Family(C.n, bits)


# -- symmetry ----------------------------------------------------------------


def permute_family(F: Family, perm: Sequence[int]) -> Family:
    """Relabel coordinates: element ``i + 1`` is sent to ``perm[i] + 1`` (0-based perm)."""
    n = F.n
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation of the ground set")
    bits = 0
    for m in F:
        image = 0
        for i in _iter_bits(m):
            image |= 1 << perm[i]
        bits |= 1 << image
    return Family(n, bits)


def _orbit_bits(families: Sequence[int], n: int) -> Iterator[tuple[int, ...]]:
    """Images of a tuple of family bitsets under all coordinate permutations and complementation."""
    for start in (tuple(families), tuple(_flip_all(b, n) for b in families)):
        cur = list(start)
        yield tuple(cur)
        for i, j in _swap_sequence(n):
            cur = [_swap_coords(b, n, i, j) for b in cur]
            yield tuple(cur)


def _canonical_tuple_bits(families: Sequence[int], n: int) -> tuple[int, ...]:
    _check_canon(n)
    if len(families) == 1:
        only = families[0]
        return (min(img[0] for img in _orbit_bits((only,), n)),)
    return min(tuple(sorted(img)) for img in _orbit_bits(families, n))


def _check_canon(n: int) -> None:
    if n > MAX_CANON_N:
        raise ValueError(f"orbit canonicalization refused for n={n} > {MAX_CANON_N}; use Family.digest")


def canonical_form(F: Family) -> Family:
    """Least image of ``F`` under relabeling and complementation.

    Families are ordered by their characteristic bitset read as an integer.
    """
    return Family(F.n, _canonical_tuple_bits((F.bits,), F.n)[0])


def canonical_pair(F: Family, G: Family) -> tuple[Family, Family]:
    """Least image of ``(F, G)`` under relabeling, complementation and swapping."""
    F._same(G)
    a, b = _canonical_tuple_bits((F.bits, G.bits), F.n)
    return Family(F.n, a), Family(F.n, b)


def canonical_tuple(families: Sequence[Family]) -> tuple[Family, ...]:
    """Least image of an unordered tuple of families; the result is sorted."""
    if not families:
        return ()
    n = families[0].n
    for f in families:
        families[0]._same(f)
    return tuple(Family(n, b) for b in _canonical_tuple_bits([f.bits for f in families], n))
