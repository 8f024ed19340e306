"""Instance checkers for the supporting inequalities, random instance generators,
seeded suite runners, and a naive brute force used to audit the solver.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import product as iproduct
from math import ceil
from typing import Iterator

from . import bounds
from .lattice_core import (
    CrossPair,
    Family,
    difference_family,
    down_closure,
    incomparables,
    is_downward_closed,
    join_family,
    meet_family,
    shadow,
    up_closure,
)

LOVASZ_SLACK = 1e-9
MAX_RANDOM_N = 12
MAX_RETRIES = 64


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    applicable: bool = True

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "details": self.details}
        if not self.applicable:
            out["applicable"] = False
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def check_four_functions(A: Family, B: Family) -> CheckResult:
    meet, join = meet_family(A, B), join_family(A, B)
    lhs = A.size() * B.size()
    rhs = meet.size() * join.size()
    return CheckResult(
        "four-functions",
        lhs <= rhs,
        {"lhs": lhs, "rhs": rhs, "A": A.to_json(), "B": B.to_json()},
    )


def check_partition_lemma(pair: CrossPair) -> CheckResult:
    parts = {
        "F": pair.F,
        "G": pair.G,
        "meet": meet_family(pair.F, pair.G),
        "join": join_family(pair.F, pair.G),
    }
    names = list(parts)
    overlaps = {}
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            common = parts[a] & parts[b]
            if common:
                overlaps[f"{a}&{b}"] = common.sets()
    details = {name: fam.to_json() for name, fam in parts.items()}
    details["overlaps"] = overlaps
    return CheckResult("partition", not overlaps, details)


def check_marica_schonheim(C: Family) -> CheckResult:
    D = difference_family(C)
    return CheckResult(
        "marica",
        D.size() >= C.size(),
        {"differences": D.size(), "size": C.size(), "C": C.to_json()},
    )


def check_lovasz(F: Family, k: int | None = None) -> CheckResult:
    if not F:
        raise ValueError("shadow bound check needs a nonempty family")
    sh = shadow(F, k)
    k = next(iter(F)).bit_count()
    bound = bounds.lovasz_shadow_bound(F.size(), k)
    return CheckResult(
        "lovasz",
        sh.size() >= bound - LOVASZ_SLACK,
        {
            "shadow": sh.size(),
            "bound": bound,
            "x": bounds.lovasz_x(F.size(), k),
            "m": F.size(),
            "k": k,
            "F": F.to_json(),
        },
    )


def check_lemma4(A: Family | bounds.LevelProfile, k: int) -> CheckResult:
    """Strict level-weight inequality on a downward-closed family (or its profile).

    A profile is accepted as is; callers passing one vouch for downward closure.
    """
    if isinstance(A, Family):
        if not A:
            raise ValueError("lemma check needs a nonempty family")
        if not is_downward_closed(A):
            raise ValueError("lemma check needs a downward-closed family")
        profile = bounds.LevelProfile.of_family(A)
        witness = A.to_json()
    else:
        profile = A
        if profile.size == 0 or profile.counts[0] != 1:
            raise ValueError("profile of a nonempty downward-closed family must contain the empty set")
        witness = {"nprime": profile.nprime, "counts": list(profile.counts)}
    if 3 * k < profile.nprime:
        raise ValueError(f"hypothesis needs 3k >= n' (k={k}, n'={profile.nprime})")
    lhs, rhs = bounds.lemma4_sides(profile, k)
    return CheckResult(
        "lemma4",
        lhs < rhs,
        {"lhs": lhs, "rhs": rhs, "nprime": profile.nprime, "k": k, "A": witness},
    )


def check_proposition5(pair: CrossPair) -> CheckResult:
    if not pair.F or not pair.G:
        raise ValueError("small-minimum check needs both families nonempty")
    n = pair.n
    f0 = min(m.bit_count() for m in pair.F)
    g0 = min(m.bit_count() for m in pair.G)
    threshold = (n + 1) // 2 - 1
    details = {"F0": f0, "G0": g0, "threshold": threshold, "sum": pair.sum, "pair": pair.to_json()}
    if f0 + g0 >= threshold:
        return CheckResult("proposition5", True, details, applicable=False)
    limit = bounds.f_n1(n)
    details["f_n1"] = limit
    return CheckResult("proposition5", pair.sum < limit, details)


# -- random instances ------------------------------------------------------------

FILTERS = ("any", "downward-closed", "uniform", "sperner", "convex")


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _random_bits(n: int, rng: random.Random, positions=None) -> int:
    positions = range(1 << n) if positions is None else positions
    p = rng.choice((0.1, 0.25, 0.5, 0.75))
    bits = 0
    for j in positions:
        if rng.random() < p:
            bits |= 1 << j
    return bits


def random_family(n: int, seed, filter: str = "any", k: int | None = None) -> Family:
    """A seeded random nonempty family satisfying ``filter``.

    ``downward-closed`` and ``convex`` close a sparse random seed family;
    ``sperner`` inserts random sets greedily; ``uniform`` samples ``k``-sets.
    """
    if n > MAX_RANDOM_N:
        raise ValueError(f"random generation supports n <= {MAX_RANDOM_N}, got {n}")
    if filter not in FILTERS:
        raise ValueError(f"unknown filter {filter!r}; choose from {', '.join(FILTERS)}")
    rng = _rng(seed)
    size = 1 << n
    for _ in range(MAX_RETRIES):
        if filter == "any":
            bits = _random_bits(n, rng)
        elif filter == "uniform":
            if k is None or not 0 <= k <= n:
                raise ValueError(f"uniform filter needs 0 <= k <= n, got k={k}")
            level = [j for j in range(size) if j.bit_count() == k]
            bits = _random_bits(n, rng, level)
        elif filter == "downward-closed":
            gens = rng.randint(1, 4)
            bits = down_closure(Family.from_masks(n, (rng.randrange(size) for _ in range(gens)))).bits
        elif filter == "convex":
            seed_fam = Family.from_masks(n, (rng.randrange(size) for _ in range(rng.randint(1, 4))))
            bits = (up_closure(seed_fam) & down_closure(seed_fam)).bits
        else:
            bits = region = 0
            order = list(range(size))
            rng.shuffle(order)
            for j in order[: rng.randint(1, size)]:
                if not region >> j & 1:
                    bits |= 1 << j
                    region |= _comparable_region(n, j).bits
        if bits:
            return Family(n, bits)
    raise RuntimeError(f"could not generate a nonempty {filter} family at n={n}")


def _comparable_region(n: int, mask: int) -> Family:
    single = Family.from_masks(n, [mask])
    return up_closure(single) | down_closure(single)


def random_cross_sperner_pair(n: int, seed) -> CrossPair:
    """Random nonempty ``F`` with a random nonempty subfamily of its incomparables."""
    if n < 2:
        raise ValueError(f"no cross-Sperner pair of nonempty families exists at n={n}")
    rng = _rng(seed)
    for _ in range(MAX_RETRIES):
        F = random_family(n, rng)
        if F.size() > 4 and rng.random() < 0.7:
            masks = F.masks()
            F = Family.from_masks(n, rng.sample(masks, rng.randint(1, min(4, len(masks)))))
        inc = incomparables(F)
        if not inc:
            continue
        chosen = [m for m in inc if rng.random() < 0.6]
        if not chosen:
            chosen = [rng.choice(inc.masks())]
        return CrossPair(n, F, Family.from_masks(n, chosen))
    raise RuntimeError(f"could not generate a cross-Sperner pair at n={n}")


# -- seeded suites -----------------------------------------------------------------

SUITES = ("four-functions", "partition", "marica", "lovasz", "proposition5", "lemma4")


def instance_rng(suite: str, seed: int, index: int) -> random.Random:
    """Per-instance generator derived only from (suite, seed, index)."""
    return random.Random(f"{suite}:{seed}:{index}")


def _suite_n(index: int, lo: int, hi: int, n: int | None) -> int:
    return n if n is not None else lo + index % (hi - lo + 1)


def run_suite(suite: str, trials: int, seed: int = 0, n: int | None = None, k: int | None = None) -> Iterator[CheckResult]:
    """Yield one result per instance, in index order.

    With ``n`` unset the ground-set size cycles over the suite's range
    (2..6 for four-functions/partition, 1..8 for marica, up to 12 for lovasz).
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    for index in range(trials):
        rng = instance_rng(suite, seed, index)
        if suite == "four-functions":
            size = _suite_n(index, 2, 6, n)
            A = random_family(size, rng)
            B = random_family(size, rng)
            res = check_four_functions(A, B)
        elif suite == "partition":
            res = check_partition_lemma(random_cross_sperner_pair(_suite_n(index, 2, 6, n), rng))
        elif suite == "marica":
            res = check_marica_schonheim(random_family(_suite_n(index, 1, 8, n), rng))
        elif suite == "lovasz":
            kk = k if k is not None else 1 + index % 6
            size = n if n is not None else rng.randint(max(kk, 2), MAX_RANDOM_N)
            res = check_lovasz(random_family(size, rng, "uniform", kk), kk)
        elif suite == "proposition5":
            res = check_proposition5(random_cross_sperner_pair(_suite_n(index, 2, 8, n), rng))
        else:
            nprime = n if n is not None else 1 + index % 10
            kk = k if k is not None else rng.randint(ceil(nprime / 3), nprime)
            res = check_lemma4(random_family(nprime, rng, "downward-closed"), kk)
        res.details["index"] = index
        res.details["seed"] = seed
        yield res


def explore_lemma4(nprime: int, k: int, trials: int = 1000, seed: int = 0) -> dict:
    """Pass rate of the strict level-weight inequality on random downward-closed families.

    The whole lattice and the single empty set are always included as fixed
    instances, so boundary failures show up regardless of sampling.
    """
    if 3 * k < nprime:
        raise ValueError(f"hypothesis needs 3k >= n' (k={k}, n'={nprime})")
    failures: dict[tuple[int, ...], dict] = {}
    passed = 0
    total = 0

    def record(res: CheckResult, family: Family | None) -> None:
        nonlocal passed, total
        total += 1
        if res.passed:
            passed += 1
            return
        key = (res.details["lhs"], res.details["rhs"], *(family.masks() if family else ()))
        failures.setdefault(
            key,
            {"lhs": res.details["lhs"], "rhs": res.details["rhs"], "A": res.details["A"]},
        )

    fixed = [Family.full(nprime), Family.from_masks(nprime, [0])] if nprime <= MAX_RANDOM_N else []
    for fam in fixed:
        record(check_lemma4(fam, k), fam)
    if nprime > MAX_RANDOM_N:
        record(check_lemma4(bounds.LevelProfile.full(nprime), k), None)
    else:
        for index in range(trials):
            fam = random_family(nprime, instance_rng("lemma4", seed, index), "downward-closed")
            record(check_lemma4(fam, k), fam)
    ordered = sorted(failures.values(), key=lambda f: (f["lhs"], -f["rhs"], json.dumps(f["A"])))
    return {
        "nprime": nprime,
        "k": k,
        "instances": total,
        "passed": passed,
        "pass_rate": passed / total if total else 1.0,
        "failures": ordered,
    }


def lemma4_threshold(ratio: float, max_nprime: int = 12, trials: int = 1000, seed: int = 0) -> int | None:
    """Smallest ``n'`` from which every sampled instance passes at ``k = ceil(ratio n')``, up to ``max_nprime``."""
    threshold = None
    for nprime in range(1, max_nprime + 1):
        k = max(1, ceil(ratio * nprime - 1e-12))
        report = explore_lemma4(nprime, k, trials, seed)
        if report["failures"]:
            threshold = None
        elif threshold is None:
            threshold = nprime
    return threshold


# -- brute force audit -----------------------------------------------------------


def _naive_comparable(a: int, b: int) -> bool:
    c = a & b
    return c == a or c == b


def brute_force_pairs(n: int) -> dict:
    """Exhaustive optima over all pairs of families, by direct pairwise inclusion tests.

    Returns ``max_sum`` (both nonempty), ``max_product``, ``fnm[m]`` and
    ``fstar[m]`` (``None`` where no antichain of size ``m`` exists).
    """
    if n > 3:
        raise ValueError("brute force over all family pairs is limited to n <= 3")
    size = 1 << n
    total = 1 << size
    members = [[v for v in range(size) if fam >> v & 1] for fam in range(total)]
    partner = []
    for fam in range(total):
        ok = 0
        for v in range(size):
            if not any(_naive_comparable(v, f) for f in members[fam]):
                ok |= 1 << v
        partner.append(ok)
    sperner = [
        all(not _naive_comparable(a, b) for i, a in enumerate(ms) for b in ms[i + 1 :]) for ms in members
    ]
    best_sum = best_prod = 0
    fnm = [0] * (size + 1)
    fstar: list[int | None] = [None] * (size + 1)
    for F in range(total):
        fsize = len(members[F])
        allowed = partner[F]
        g_best = 0
        for G in range(total):
            if G & ~allowed:
                continue
            gsize = len(members[G])
            g_best = max(g_best, gsize)
            if fsize and gsize:
                best_sum = max(best_sum, fsize + gsize)
                best_prod = max(best_prod, fsize * gsize)
        fnm[fsize] = max(fnm[fsize], g_best)
        if sperner[F]:
            fstar[fsize] = max(fstar[fsize] or 0, g_best)
    return {"max_sum": best_sum, "max_product": best_prod, "fnm": fnm, "fstar": fstar}


def brute_force_ktuple(n: int, k: int) -> dict:
    """Max product and sum over all-nonempty pairwise cross-Sperner ``k``-tuples, by labeling every set."""
    if n > 3 or k > 4:
        raise ValueError("k-tuple brute force is limited to n <= 3, k <= 4")
    size = 1 << n
    comparable_pairs = [(a, b) for a in range(size) for b in range(a + 1, size) if _naive_comparable(a, b)]
    best_prod = best_sum = 0
    for labels in iproduct(range(k + 1), repeat=size):
        if any(labels[a] and labels[b] and labels[a] != labels[b] for a, b in comparable_pairs):
            continue
        counts = [0] * (k + 1)
        for lab in labels:
            counts[lab] += 1
        if min(counts[1:]) == 0:
            continue
        prod_ = 1
        for c in counts[1:]:
            prod_ *= c
        best_prod = max(best_prod, prod_)
        best_sum = max(best_sum, sum(counts[1:]))
    return {"max_product": best_prod, "max_sum": best_sum}

