"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from itertools import combinations

from . import bounds, constructions, oracles, solver
from .cache import ENV_VAR, ResultCache
from .lattice_core import MAX_FAMILY_N, is_cross_sperner, is_sperner

FORMATS = ("table", "json", "jsonl", "csv")
OBJECTIVES = ("sum", "product", "ktuple", "ktuple-sum", "fstar")
CONSTRUCTIONS = ("theorem1", "theorem2", "ktuple", "middle-layer")
CHECK_SUITES = (*oracles.SUITES, "connectivity")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    m: int | None = None
    k: int | None = None
    s: int | None = None
    seed: int = 0
    budget: int = solver.DEFAULT_BUDGET
    trials: int = 1000
    format: str = "table"
    cache_dir: str | None = None
    workers: int = 1

    def validate(self) -> None:
        if self.n is not None and not 0 <= self.n <= MAX_FAMILY_N:
            raise UsageError(f"--n must be in [0, {MAX_FAMILY_N}]")
        for name in ("k", "trials", "budget", "workers"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise UsageError(f"--{name} must be positive")
        for name in ("m", "s"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise UsageError(f"--{name} must be non-negative")
        if self.format not in FORMATS:
            raise UsageError(f"--format must be one of {', '.join(FORMATS)}")


# -- rendering ----------------------------------------------------------------------


def _render(payload: dict, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt == "jsonl":
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)
    if not rows:
        return ""
    columns = list(dict.fromkeys(key for r in rows for key in r))
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({c: _cell(r.get(c, "")) for c in columns})
        return buf.getvalue()
    cells = [[_cell(r.get(c, "")) for c in columns] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def _cell(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def _sets_text(sets: list[list[int]]) -> str:
    return "[" + ",".join("{" + ",".join(map(str, s)) + "}" for s in sets) + "]"


# -- commands ------------------------------------------------------------------------


def cmd_construct(cfg: RunConfig, name: str) -> tuple[dict, list[dict], int]:
    n = _need(cfg.n, "--n")
    if name == "theorem1":
        pair = constructions.theorem1_extremal(n, cfg.s)
        families = [pair.F, pair.G]
    elif name == "theorem2":
        pair = constructions.theorem2_extremal(n)
        families = [pair.F, pair.G]
    elif name == "ktuple":
        families = list(constructions.ktuple_construction(n, _need(cfg.k, "--k")).families)
    elif name == "middle-layer":
        families = [constructions.sperner_middle_layer(n, _need(cfg.k, "--k"))]
    else:
        raise UsageError(f"unknown construction {name!r}")
    sizes = [f.size() for f in families]
    product = 1
    for size in sizes:
        product *= size
    if len(families) == 1:
        valid = is_sperner(families[0])
    else:
        valid = all(is_cross_sperner(a, b) for a, b in combinations(families, 2))
    payload = {
        "construction": name,
        "n": n,
        "families": [f.to_json() for f in families],
        "sizes": sizes,
        "sum": str(sum(sizes)),
        "product": str(product),
        "valid": valid,
    }
    rows = [
        {"family": i + 1, "size": f.size(), "sets": _sets_text(f.sets())} for i, f in enumerate(families)
    ]
    rows.append({"family": "total", "size": f"sum={sum(sizes)} product={product}", "sets": ""})
    return payload, rows, 0


def cmd_bound(cfg: RunConfig, name: str, extra: dict) -> tuple[dict, list[dict], int]:
    params = {"n": cfg.n, "k": cfg.k, "m": cfg.m, "s": cfg.s, **extra}
    record = bounds.bound_record(name, **{k: v for k, v in params.items() if v is not None})
    payload = record.to_json()
    row = {"name": record.name, **record.params, "value": payload["value"]}
    if record.degenerate:
        row["degenerate"] = True
    return payload, [row], 0


def cmd_check(cfg: RunConfig, suite: str) -> tuple[dict, list[dict], int]:
    if suite == "connectivity":
        results = [solver.connectivity_check(_need(cfg.n, "--n"))]
    else:
        results = list(oracles.run_suite(suite, cfg.trials, cfg.seed, n=cfg.n, k=cfg.k))
    passed = sum(r.passed for r in results)
    failed = [r.to_json() for r in results if not r.passed]
    payload = {
        "suite": suite,
        "trials": len(results),
        "seed": cfg.seed,
        "passed": passed,
        "failed": len(failed),
        "failures": failed[:20],
    }
    if cfg.format == "jsonl":
        rows = [r.to_json() for r in results]
    else:
        rows = [{"suite": suite, "passed": f"{passed}/{len(results)}", "seed": cfg.seed, "failed": len(failed)}]
    return payload, rows, 0 if not failed else 1


def _cached(cfg: RunConfig, objective: str, params: dict, compute) -> dict:
    cache = ResultCache.resolve(cfg.cache_dir)
    if cache is not None:
        hit = cache.load(objective, params)
        if hit is not None:
            print(f"cache hit: {cache.path(objective, params)}", file=sys.stderr)
            return json.loads(hit)
    payload = compute()
    if cache is not None:
        try:
            cache.store(objective, params, json.dumps(payload, sort_keys=True))
        except OSError as exc:
            print(f"warning: could not write cache: {exc}", file=sys.stderr)
    return payload


def _report_row(obj: dict) -> dict:
    row = {
        "objective": obj["objective"],
        "n": obj["n"],
        **{k: v for k, v in obj["params"].items() if k != "budget"},
        "value": obj["value"],
        "exact": obj["exact"],
        "nodes": obj["nodes_explored"],
    }
    for key in ("sum_bound", "product_bound", "equals_sum_bound", "upper_bound", "conjectured", "beats_conjecture"):
        if key in obj["info"]:
            row[key] = obj["info"][key]
    for i, fam in enumerate(obj["witnesses"][0] if obj["witnesses"] else []):
        row[f"witness{i + 1}"] = _sets_text(fam["sets"])
    return row


def cmd_solve(cfg: RunConfig, objective: str) -> tuple[dict, list[dict], int]:
    n = _need(cfg.n, "--n")
    if objective == "sum":
        fn, params = (lambda: solver.max_sum(n, cfg.budget, cfg.workers)), {"n": n}
    elif objective == "product":
        fn, params = (lambda: solver.max_product(n, cfg.budget, cfg.workers)), {"n": n}
    elif objective in ("ktuple", "ktuple-sum"):
        k = _need(cfg.k, "--k")
        search = solver.max_product_ktuple if objective == "ktuple" else solver.max_sum_ktuple
        fn, params = (lambda: search(n, k, cfg.budget, cfg.workers)), {"n": n, "k": k}
    elif objective == "fstar":
        m = _need(cfg.m, "--m")
        fn, params = (lambda: solver.f_star(n, m, cfg.budget, cfg.workers)), {"n": n, "m": m}
    else:
        raise UsageError(f"unknown objective {objective!r}; choose from {', '.join(OBJECTIVES)}")
    params["budget"] = cfg.budget

    def compute() -> dict:
        report = fn()
        solver.validate_report(report)
        return report.to_json()

    payload = _cached(cfg, f"solve-{objective}", params, compute)
    return payload, [_report_row(payload)], 0


def cmd_fnm(cfg: RunConfig, method: str) -> tuple[dict, list[dict], int]:
    n = _need(cfg.n, "--n")
    ms = [cfg.m] if cfg.m is not None else list(range(1, (1 << n) + 1))
    results = []
    for m in ms:
        params = {"n": n, "m": m, "budget": cfg.budget, "method": method}
        results.append(
            _cached(cfg, "fnm", params, lambda m=m: solver.f_nm(n, m, cfg.budget, cfg.workers, method).to_json())
        )
    payload = {"n": n, "results": results}
    rows = [
        {
            "n": r["n"],
            "m": r["m"],
            "fnm": r["fnm"],
            "neighborhood": r["neighborhood"],
            "exact": r["exact"],
            "minimizer": _sets_text(r["minimizer"]["sets"]),
        }
        for r in results
    ]
    return payload, rows, 0


def cmd_explore_lemma4(cfg: RunConfig, nprime: int) -> tuple[dict, list[dict], int]:
    ks = [cfg.k] if cfg.k is not None else list(range(max(1, -(-nprime // 3)), nprime + 1))
    reports = [oracles.explore_lemma4(nprime, k, cfg.trials, cfg.seed) for k in ks]
    rows = []
    for rep in reports:
        first = rep["failures"][0] if rep["failures"] else None
        rows.append(
            {
                "nprime": rep["nprime"],
                "k": rep["k"],
                "passed": f"{rep['passed']}/{rep['instances']}",
                "failures": len(rep["failures"]),
                "worst": f"{first['lhs']} vs {first['rhs']}" if first else "",
            }
        )
        for fail in rep["failures"]:
            rows.append(
                {
                    "nprime": rep["nprime"],
                    "k": rep["k"],
                    "passed": "",
                    "failures": "",
                    "worst": f"sides=({fail['lhs']},{fail['rhs']}) A={_sets_text(fail['A']['sets'])}",
                }
            )
    return {"nprime": nprime, "reports": reports}, rows, 0


def cmd_report(cfg: RunConfig) -> tuple[dict, list[dict], int]:
    nmax = cfg.n if cfg.n is not None else 4
    rows = []
    for n in range(2, nmax + 1):
        s = solver.max_sum(n, cfg.budget, cfg.workers)
        p = solver.max_product(n, cfg.budget, cfg.workers)
        rows.append(
            {
                "n": n,
                "max_sum": s.value,
                "sum_bound": bounds.sum_bound(n),
                "sum_exact": s.exact,
                "max_product": p.value,
                "product_bound": bounds.product_bound(n),
                "product_exact": p.exact,
                "f_n1": bounds.f_n1(n),
                "corollary": solver.f_nm(n, 1 << (n - 2), cfg.budget, cfg.workers).fnm,
            }
        )
    as_json = [{k: v if isinstance(v, bool) else str(v) for k, v in r.items()} for r in rows]
    return {"rows": as_json}, rows, 0


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


# -- parser ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", default="table", choices=FORMATS)
    p.add_argument("--n", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crosssperner", description="Cross-Sperner family laboratory.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit an explicit construction")
    p.add_argument("name", choices=CONSTRUCTIONS)
    _common(p)
    p.add_argument("--s", type=int)
    p.add_argument("--k", type=int)

    p = sub.add_parser("bound", help="evaluate a closed-form bound")
    p.add_argument("name", choices=bounds.BOUND_NAMES)
    _common(p)
    for flag in ("k", "m", "s", "j", "outside"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--x", type=float)
    p.add_argument("--alpha", type=float)

    p = sub.add_parser("check", help="run a seeded oracle suite")
    p.add_argument("suite", choices=CHECK_SUITES)
    _common(p)
    p.add_argument("--k", type=int)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    for name, helptext in (("solve", "exact/heuristic search"), ("fnm", "isoperimetric values F(n, m)")):
        p = sub.add_parser(name, help=helptext)
        if name == "solve":
            p.add_argument("objective", choices=OBJECTIVES)
            p.add_argument("--k", type=int)
        else:
            p.add_argument("--method", default="auto", choices=("auto", "exact", "heuristic"))
        _common(p)
        p.add_argument("--m", type=int)
        p.add_argument("--budget", type=int, default=solver.DEFAULT_BUDGET)
        p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
        p.add_argument("--cache-dir", help=f"result cache root (default: ${ENV_VAR})")

    p = sub.add_parser("explore-lemma4", help="sweep the level-weight inequality")
    p.add_argument("--nprime", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", default="table", choices=FORMATS)

    p = sub.add_parser("report", help="bounds versus exact optima for small n")
    _common(p)
    p.add_argument("--budget", type=int, default=solver.DEFAULT_BUDGET)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fields = {f: getattr(args, f) for f in RunConfig.__dataclass_fields__ if hasattr(args, f)}
    cfg = RunConfig(**fields)
    try:
        cfg.validate()
        if args.command == "construct":
            out = cmd_construct(cfg, args.name)
        elif args.command == "bound":
            out = cmd_bound(cfg, args.name, {"j": args.j, "x": args.x, "alpha": args.alpha, "outside": args.outside})
        elif args.command == "check":
            out = cmd_check(cfg, args.suite)
        elif args.command == "solve":
            out = cmd_solve(cfg, args.objective)
        elif args.command == "fnm":
            out = cmd_fnm(cfg, args.method)
        elif args.command == "explore-lemma4":
            if args.nprime < 1:
                raise UsageError("--nprime must be positive")
            out = cmd_explore_lemma4(cfg, args.nprime)
        else:
            out = cmd_report(cfg)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload, rows, code = out
    sys.stdout.write(_render(payload, rows, cfg.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
