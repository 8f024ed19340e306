"""Closed-form bounds and the arithmetic behind the shadow/level-weight argument.

Every integer-valued bound is computed with Python integers, never floats.
The only real-valued quantities are generalized binomials (and the things
derived from them) and the exponential base ``stirling_ratio``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from typing import Callable

from .constructions import l_of_k
from .lattice_core import Family

LOVASZ_RTOL = 1e-12
LOVASZ_MAX_ITER = 200


@dataclass(frozen=True)
class LevelProfile:
    """Per-cardinality counts ``(a_0, ..., a_n')`` of a family over ``[n']``."""

    nprime: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != self.nprime + 1:
            raise ValueError(f"profile needs {self.nprime + 1} counts, got {len(self.counts)}")
        for j, a in enumerate(self.counts):
            if not 0 <= a <= comb(self.nprime, j):
                raise ValueError(f"a_{j} = {a} outside [0, C({self.nprime}, {j})]")

    @classmethod
    def of_family(cls, A: Family) -> "LevelProfile":
        return cls(A.n, tuple(A.level_counts()))

    @classmethod
    def full(cls, nprime: int) -> "LevelProfile":
        return cls(nprime, tuple(comb(nprime, j) for j in range(nprime + 1)))

    @property
    def size(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class BoundRecord:
    name: str
    params: dict
    value: int | float
    degenerate: bool = False
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"name": self.name, "params": dict(self.params), "value": _decimal(self.value)}
        if self.degenerate:
            out["degenerate"] = True
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _decimal(value: int | float) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def _need_n2(n: int, what: str) -> None:
    if n < 2:
        raise ValueError(f"{what} needs n >= 2, got {n}")


def neighborhood_size(n: int, s: int) -> int:
    """Number of sets strictly comparable to one fixed ``s``-set of ``[n]``."""
    if not 0 <= s <= n:
        raise ValueError(f"need 0 <= s <= n, got s={s}, n={n}")
    return 2**s + 2 ** (n - s) - 2


def f_n1(n: int) -> int:
    _need_n2(n, "f_n1")
    return 2**n - 2 ** ((n + 1) // 2) - 2 ** (n // 2) + 1


def sum_bound(n: int) -> int:
    return f_n1(n) + 1


def product_bound(n: int) -> int:
    _need_n2(n, "product_bound")
    return 2 ** (2 * n - 4)


def _ktuple_params(n: int, k: int) -> int:
    if k < 2:
        raise ValueError(f"k-tuple bounds need k >= 2, got {k}")
    l = l_of_k(k)
    if n < l:
        raise ValueError(f"need n >= l(k) = {l}, got n={n}")
    return l


def ktuple_upper(n: int, k: int) -> int:
    _ktuple_params(n, k)
    return 2 ** (k * n - 2 * k)


def ktuple_conjectured(n: int, k: int) -> int:
    l = _ktuple_params(n, k)
    return 2 ** (k * (n - l))


def b_set_size(m: int, outside: int) -> int:
    """``sum_{i=outside+1}^{m} C(m, i)``: predicted size of a deletion family in ``b_sets``."""
    return sum(comb(m, i) for i in range(outside + 1, m + 1))


# -- generalized binomials and the shadow bound --------------------------------


def gen_binomial(x: float, k: int) -> float:
    """``x (x-1) ... (x-k+1) / k!`` on the increasing branch ``x >= k-1``."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if x < k - 1:
        raise ValueError(f"gen_binomial domain is x >= k-1, got x={x}, k={k}")
    if isinstance(x, int):
        return float(comb(x, k)) if x >= k else 0.0
    out = 1.0
    for i in range(k):
        out *= (x - i) / (i + 1)
    return out


def lovasz_x(m: int, k: int) -> float:
    """The real ``x >= k-1`` with ``C(x, k) = m``, by bisection."""
    if m < 0 or k < 1:
        raise ValueError(f"need m >= 0 and k >= 1, got m={m}, k={k}")
    lo = float(k - 1)
    if m == 0:
        return lo
    hi = float(max(k, 1))
    while gen_binomial(hi, k) < m:
        hi *= 2
    # run past LOVASZ_RTOL to float resolution: C(x, k) is steep near x = k-1
    for _ in range(LOVASZ_MAX_ITER):
        mid = (lo + hi) / 2
        if not lo < mid < hi:
            break
        if gen_binomial(mid, k) < m:
            lo = mid
        else:
            hi = mid
    x = (lo + hi) / 2
    t = round(x)
    if t >= k and comb(t, k) == m:
        return float(t)
    return x


def lovasz_shadow_bound(m: int, k: int) -> float:
    """Lower bound ``C(x, k-1)`` on the shadow of ``m`` sets of size ``k``."""
    x = lovasz_x(m, k)
    t = round(x)
    if x == t and t >= k - 1:
        return float(comb(t, k - 1))
    return gen_binomial(x, k - 1)


def lovasz_record(m: int, k: int) -> BoundRecord:
    x = lovasz_x(m, k)
    notes = ["empty family: shadow bound meaningless"] if m == 0 else []
    return BoundRecord(
        "lovasz_shadow_bound",
        {"m": m, "k": k, "x": repr(x)},
        lovasz_shadow_bound(m, k),
        degenerate=m == 0,
        notes=notes,
    )


# -- level weights ---------------------------------------------------------------


def w(j: int, k: int) -> int:
    """``sum_{i=j+1}^{k} C(k, i)``."""
    if j < 0:
        raise ValueError(f"j must be non-negative, got {j}")
    return sum(comb(k, i) for i in range(j + 1, k + 1))


def lemma4_sides(profile: LevelProfile, k: int) -> tuple[int, int]:
    """``(sum_j a_j, sum_j a_j w(j, k))``; the strict inequality is the caller's call."""
    lhs = sum(profile.counts)
    rhs = sum(a * w(j, k) for j, a in enumerate(profile.counts) if a)
    return lhs, rhs


def stirling_ratio(alpha: float) -> float:
    """Exponential growth base of ``C(n, alpha n) C(n/3, alpha n + 1)``."""
    if not 0 < alpha < 1 / 3:
        raise ValueError(f"alpha must lie in (0, 1/3), got {alpha}")
    third = 1 / 3
    denom = (
        alpha ** (2 * alpha)
        * (1 - alpha) ** (1 - alpha)
        * 3**third
        * (third - alpha) ** (third - alpha)
    )
    return 1 / denom


# -- named registry (CLI) --------------------------------------------------------

_REGISTRY: dict[str, tuple[Callable, tuple[str, ...]]] = {
    "neighborhood_size": (neighborhood_size, ("n", "s")),
    "f_n1": (f_n1, ("n",)),
    "sum_bound": (sum_bound, ("n",)),
    "product_bound": (product_bound, ("n",)),
    "ktuple_upper": (ktuple_upper, ("n", "k")),
    "ktuple_conjectured": (ktuple_conjectured, ("n", "k")),
    "gen_binomial": (gen_binomial, ("x", "k")),
    "lovasz_x": (lovasz_x, ("m", "k")),
    "w": (w, ("j", "k")),
    "stirling_ratio": (stirling_ratio, ("alpha",)),
    "b_set_size": (b_set_size, ("m", "outside")),
}

BOUND_NAMES = tuple(sorted([*_REGISTRY, "lovasz_shadow_bound"]))


def bound_record(name: str, **params) -> BoundRecord:
    """Evaluate a named bound; missing parameters raise ``ValueError``."""
    if name == "lovasz_shadow_bound":
        return lovasz_record(params["m"], params["k"])
    if name not in _REGISTRY:
        raise ValueError(f"unknown bound {name!r}; choose from {', '.join(BOUND_NAMES)}")
    fn, needed = _REGISTRY[name]
    missing = [p for p in needed if params.get(p) is None]
    if missing:
        raise ValueError(f"bound {name} needs parameter(s): {', '.join(missing)}")
    args = {p: params[p] for p in needed}
    return BoundRecord(name, args, fn(**args))
