"""``operad-forge`` command line front end."""

import argparse
import csv
import io
import json
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__, kernels
from .adjoint import (
    MonoidM,
    Z2Set,
    finiteness_obstruction_witness,
    product_trunc2,
    ru_nonclosure_check,
)
from .complex import DEFAULT_SIMPLEX_BUDGET, BudgetExceeded
from .cubes import (
    CubeN,
    CubesOperad,
    cells_suite,
    config,
    counterexample_c2,
    cube_compose,
    decompose,
    random_config,
    random_tuple,
    reconstruct,
)
from .graphs import (
    DEFAULT_ENUM_BUDGET,
    KHatOperad,
    k_enumerate_by_orders,
    khat_poset,
)
from .homology import nerve_homology
from .operad import DEFAULT_SEED, EXHAUSTIVE_LIMIT, verify_poset_operad
from .perm import Perm
from .recognize import FAMILIES, config_space_poincare, family_operad, recognize
from .tensor import (
    c2_interchange_failure,
    axis_split_interchange_suite,
    gtensor_suite,
    cl_interchange_suite,
    cl_representative_suite,
)

SCHEMA = "operad-forge/report/v1"
SUITES = ("enumerate", "axioms", "homology", "recognize", "counterexample", "roundtrip", "cells", "gtensor",
          "obstruction", "interchange")


@dataclass
class RunConfig:
    suite: str
    params: dict = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    samples: Optional[int] = None
    fmt: str = "json"
    budgets: dict = field(default_factory=dict)

    def budget(self, key: str, default: int) -> int:
        return int(self.budgets.get(key, default))


@dataclass
class Report:
    suite: str
    params: dict
    seed: int
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    table: Optional[list] = None
    timings: dict = field(default_factory=dict)

    def add(self, name: str, passed: Optional[bool], witness=None, **info):
        status = "skipped" if passed is None else ("pass" if passed else "fail")
        entry = {"name": name, "status": status, **info}
        if witness is not None:
            entry["witness"] = witness
        elif passed is False:
            entry["witness"] = {"check": name, "params": self.params}
        self.checks.append(entry)

    @property
    def passed(self) -> bool:
        return all(c["status"] != "fail" for c in self.checks)

    def to_json(self, timings: bool = True) -> dict:
        out = {
            "schema": SCHEMA,
            "tool_version": __version__,
            "suite": self.suite,
            "params": self.params,
            "seed": self.seed,
            "status": "pass" if self.passed else "fail",
            "checks": self.checks,
            "data": self.data,
        }
        if timings:
            out["timings"] = self.timings
        return out


def _jsonable(obj):
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, Perm):
        return list(obj.one_based())
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


# ---------------------------------------------------------------------------
# suites


def _monoid(spec: Optional[str]) -> MonoidM:
    if spec is None or spec in ("z2", "Z2"):
        return MonoidM.cyclic(2)
    if spec in ("z3", "Z3"):
        return MonoidM.cyclic(3)
    if spec in ("idem", "idempotent"):
        return MonoidM.idempotent()
    return MonoidM.from_csv(Path(spec))


def suite_enumerate(cfg: RunConfig, rep: Report):
    fam, n, k = cfg.params["family"], cfg.params["n"], cfg.params["k"]
    if fam not in ("khat", "k"):
        raise ValueError("enumerate supports the khat and k families")
    op = KHatOperad(n, total=fam == "k", budget=cfg.budget("enum_budget", DEFAULT_ENUM_BUDGET))
    elems = op.elements(k)
    rep.data["count"] = len(elems)
    if fam == "k":
        from math import comb, factorial
        expected = factorial(k) * n ** comb(k, 2)
        rep.add("count_matches_orders_times_colourings", len(elems) == expected,
                None if len(elems) == expected else {"count": len(elems)}, expected=expected)
        rep.add("matches_independent_enumeration", elems == k_enumerate_by_orders(n, k))
    if k == 2:
        rep.add("arity_two_count", len(elems) == (2 * n if fam == "k" else 2 * n + 1))
    khat_poset(elems)   # raises unless the order is a partial order
    rep.add("order_is_partial_order", True)
    rep.data["elements"] = [x.to_json() for x in elems] if cfg.params.get("list", True) else None
    rep.table = [["index", "edges"]] + [[i, " ".join(f"{s + 1}>{t + 1}:{c}" for s, t, c in x.edges())]
                                        for i, x in enumerate(elems)]


def suite_axioms(cfg: RunConfig, rep: Report):
    fam = cfg.params["family"]
    op = family_operad(fam, cfg.params.get("n", 2), _monoid(cfg.params.get("monoid")) if fam == "r1" else None)
    res = verify_poset_operad(
        op,
        cfg.params.get("max_arity", 3),
        exhaustive_limit=cfg.budget("exhaustive_limit", EXHAUSTIVE_LIMIT),
        samples=cfg.samples or 10_000,
        seed=cfg.seed,
        sample_arity=cfg.params.get("sample_arity"),
    )
    rep.data["operad"] = op.name
    for c in res.checks:
        rep.add(c.name, c.passed, _jsonable(c.witness) if c.witness is not None else None, mode=c.mode, cases=c.cases)
    rep.table = [["check", "mode", "cases", "status"]] + [[c.name, c.mode, c.cases, "pass" if c.passed else "fail"]
                                                         for c in res.checks]


def suite_homology(cfg: RunConfig, rep: Report):
    fam, n, k = cfg.params["family"], cfg.params["n"], cfg.params["k"]
    op = family_operad(fam, n)
    P = op.carrier(k)
    h = nerve_homology(P, budget=cfg.budget("simplex_budget", DEFAULT_SIMPLEX_BUDGET))
    rep.data.update({"operad": op.name, "elements": P.size, "homology": h.to_json(), "route": h.route})
    if fam == "k":
        expected = config_space_poincare(n, k)
        ok = tuple(h.betti) == expected and not h.has_torsion
        rep.add("matches_configuration_space", ok, None if ok else h.to_json(), expected=list(expected))
    elif fam == "khat":
        rep.add("acyclic", h.is_acyclic(), None if h.is_acyclic() else h.to_json())
    rep.table = [["dim", "betti", "torsion"]] + [[d, b, " ".join(map(str, t))]
                                                for d, (b, t) in enumerate(zip(h.betti, h.torsion))]


def suite_recognize(cfg: RunConfig, rep: Report):
    fam, n, k = cfg.params["family"], cfg.params["n"], cfg.params["k"]
    ev = recognize(fam, n, k, budget=cfg.budget("simplex_budget", DEFAULT_SIMPLEX_BUDGET),
                   monoid=_monoid(cfg.params.get("monoid")) if fam == "r1" else None)
    rep.data.update(_jsonable(ev))
    rep.add("action_on_components_well_defined", ev["sigma_on_components"]["well_defined"])
    rep.table = [["key", "value"]] + [[key, json.dumps(_jsonable(v))] for key, v in ev.items()
                                      if key not in ("greatest_element",)]


def suite_counterexample(cfg: RunConfig, rep: Report):
    target = cfg.params.get("target", "ru-c2")
    if target != "ru-c2":
        raise ValueError("only --target ru-c2 is available")
    op = CubesOperad(2)
    a, b, g = counterexample_c2()
    res = ru_nonclosure_check(op, a, [b, g])
    comp = cube_compose(a, [b, g])
    rep.data.update({"alpha": a.to_json(), "beta": b.to_json(), "gamma": g.to_json(),
                     "composite": comp.to_json(), "chase": res.to_json()})
    e12 = (0, 1)
    quarter = config(CubeN.parse("1/2", "1", "0", "1/2"), CubeN.parse("1/2", "1", "1/2", "1"))
    rep.add("diagram_does_not_commute", not res.equal)
    rep.add("edge_12_is_quarter_squares_vs_beta", res.lhs.labels[0] == quarter and res.rhs.labels[0] == b
            and e12 in res.differing_edges)
    # composition with constants is compatible
    point = op.point()
    res2 = ru_nonclosure_check(op, a, [point, point])
    rep.add("constants_commute", res2.equal)
    rep.table = [["edge", "lhs", "rhs", "equal"]] + [
        [f"{{{p + 1},{q + 1}}}", str(f), str(h), f == h]
        for (p, q), f, h in zip([(0, 1), (0, 2), (1, 2)], res.lhs.labels, res.rhs.labels)]


def suite_roundtrip(cfg: RunConfig, rep: Report):
    n, k = cfg.params["n"], cfg.params["k"]
    samples = cfg.samples or 1000
    rng = random.Random(cfg.seed)
    bad = None
    for s in range(samples):
        c = random_config(n, k, rng)
        if reconstruct(decompose(c), n) != c:
            bad = bad or {"config": c.to_json()}
    rep.add("reconstruct_after_decompose", bad is None, bad, samples=samples)
    bad, hits = None, 0
    for s in range(samples):
        c = random_tuple(n, k, rng)
        el = decompose(c)
        back = reconstruct(el, n)
        if back is None:
            if c.is_disjoint():
                bad = bad or {"rejected_valid": c.to_json()}
            continue
        hits += 1
        if decompose(back) != el:
            bad = bad or {"element": el.to_json()}
    rep.add("decompose_after_reconstruct", bad is None, bad, samples=samples, in_domain=hits)


def suite_cells(cfg: RunConfig, rep: Report):
    n, k = cfg.params["n"], cfg.params["k"]
    for name, ok, w, info in cells_suite(n, k, cfg.samples or 100, cfg.seed):
        rep.add(name, ok, w, **info)


def suite_gtensor(cfg: RunConfig, rep: Report):
    m, n, k = cfg.params["m"], cfg.params["n"], cfg.params["k"]
    r = gtensor_suite(m, n, k, cfg.samples or 10_000, cfg.seed)
    for name, count in r["checks"].items():
        rep.add(name, count == r["samples"], r["first_failure"] if count != r["samples"] else None, passes=count)


def suite_obstruction(cfg: RunConfig, rep: Report):
    M = _monoid(cfg.params.get("monoid") or "idem")
    t = product_trunc2(M)
    viol = t.validate()
    rep.add("trunc2_clauses", not viol, viol[:3] or None)
    ws = [finiteness_obstruction_witness(t, c) for c in t.A2]
    rep.add("images_equal_for_every_c", all(w.images_equal for w in ws), samples=len(ws))
    rep.add("fixed_point_when_injective", all(w.fixed_point for w in ws if w.d_injective))
    chosen = cfg.params.get("c")
    if chosen:
        c = tuple(s.strip() for s in chosen.split(","))
    else:
        c = (M.elements[1] if len(M) > 1 else M.unit, M.unit)
    rep.data["monoid"] = M.to_csv()
    rep.data["witness"] = finiteness_obstruction_witness(t, c).to_json()
    rep.data["all"] = [w.to_json() for w in ws]


def suite_interchange(cfg: RunConfig, rep: Report):
    case = cfg.params.get("case", "dunn")
    samples = cfg.samples or 1000
    if case == "dunn":
        r = axis_split_interchange_suite(samples, cfg.seed)
        rep.add("axis_split_interchange", r["passed"], r.get("witness"), samples=r["samples"])
    elif case == "c2-fail":
        w = c2_interchange_failure(cfg.seed)
        rep.add("failure_exhibited", w is not None, None)
        rep.data["failure"] = w
    elif case == "labelled":
        X = Z2Set.s0()
        r = cl_representative_suite(1, X, samples, cfg.seed)
        rep.add("representative_independence", r["passed"], None if r["passed"] else r, samples=r["samples"])
        r = cl_interchange_suite(1, X, samples, cfg.seed)
        rep.add("suboperad_interchange", r["passed"], None if r["passed"] else r, samples=r["samples"])
    else:
        raise ValueError("case must be dunn, c2-fail or labelled")


RUNNERS = {
    "enumerate": suite_enumerate,
    "axioms": suite_axioms,
    "homology": suite_homology,
    "recognize": suite_recognize,
    "counterexample": suite_counterexample,
    "roundtrip": suite_roundtrip,
    "cells": suite_cells,
    "gtensor": suite_gtensor,
    "obstruction": suite_obstruction,
    "interchange": suite_interchange,
}


def run_suite(cfg: RunConfig) -> Report:
    if cfg.suite not in RUNNERS:
        raise ValueError(f"unknown suite {cfg.suite!r}")
    params = {k: v for k, v in sorted(cfg.params.items()) if v is not None}
    rep = Report(cfg.suite, params, cfg.seed)
    t0 = time.perf_counter()
    try:
        RUNNERS[cfg.suite](cfg, rep)
    except BudgetExceeded as exc:
        rep.add("budget", False, {"error": str(exc)})
    rep.timings = {"seconds": round(time.perf_counter() - t0, 3), "kernel_backend": kernels.BACKEND}
    return rep


# ---------------------------------------------------------------------------
# output


def render(rep: Report, fmt: str, timings: bool = True) -> str:
    if fmt == "json":
        return json.dumps(_jsonable(rep.to_json(timings)), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        rows = rep.table or ([["check", "status"]] + [[c["name"], c["status"]] for c in rep.checks])
        for row in rows:
            w.writerow(row)
        return buf.getvalue()
    lines = [f"operad-forge {__version__}  suite={rep.suite}  seed={rep.seed}"]
    lines.append("params: " + ", ".join(f"{k}={v}" for k, v in rep.params.items()))
    for c in rep.checks:
        extra = {k: v for k, v in c.items() if k not in ("name", "status", "witness")}
        tail = ("  " + json.dumps(_jsonable(extra))) if extra else ""
        lines.append(f"  [{c['status'].upper():4}] {c['name']}{tail}")
        if "witness" in c:
            lines.append("         witness: " + json.dumps(_jsonable(c["witness"]))[:2000])
    for key in ("count", "homology", "verdict", "operad"):
        if key in rep.data:
            lines.append(f"{key}: {json.dumps(_jsonable(rep.data[key]))}")
    lines.append(f"status: {'PASS' if rep.passed else 'FAIL'}")
    if timings and rep.timings:
        lines.append(f"time: {rep.timings['seconds']}s ({rep.timings['kernel_backend']})")
    return "\n".join(lines) + "\n"


def read_config_file(path: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment; section headers are ignored."""
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("["):
            continue
        if "=" not in line:
            raise ValueError(f"bad config line: {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = val.strip("\"'")
    return out


def _int(s: str) -> int:
    return int(s, 0)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "csv"), default=None)
    common.add_argument("--seed", type=_int, default=None)
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--config", default=None, help="key=value file with budgets and defaults")
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--no-timings", action="store_true", help="omit timing fields (byte-stable output)")
    for b in ("simplex-budget", "enum-budget", "exhaustive-limit"):
        common.add_argument(f"--{b}", type=int, default=None)

    p = argparse.ArgumentParser(prog="operad-forge", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="suite", required=True)

    def fam(sp, default_k=3):
        sp.add_argument("--family", choices=FAMILIES, default="k")
        sp.add_argument("--n", type=int, default=2)
        sp.add_argument("--k", type=int, default=default_k)
        sp.add_argument("--monoid", default=None, help="z2, z3, idem or a Cayley-table CSV (r1 family)")

    sp = sub.add_parser("enumerate", parents=[common], help="list the elements of one arity")
    fam(sp)
    sp = sub.add_parser("axioms", parents=[common], help="brute-force operad axiom check")
    sp.add_argument("--family", choices=FAMILIES, default="k")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--max-arity", type=int, default=3)
    sp.add_argument("--sample-arity", type=int, default=None)
    sp.add_argument("--monoid", default=None)
    sp = sub.add_parser("homology", parents=[common], help="integer homology of a carrier's nerve")
    fam(sp)
    sp = sub.add_parser("recognize", parents=[common], help="recognition-principle evidence")
    fam(sp)
    sp = sub.add_parser("counterexample", parents=[common], help="A -> RUA is not an operad map for C_2")
    sp.add_argument("--target", default="ru-c2")
    sp = sub.add_parser("roundtrip", parents=[common], help="2-cogeneration of little cubes")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--k", type=int, default=3)
    sp = sub.add_parser("cells", parents=[common], help="cell predicates over the augmented graph operad")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--k", type=int, default=3)
    sp = sub.add_parser("gtensor", parents=[common], help="generalized tensor product of cube operads")
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--k", type=int, default=3)
    sp = sub.add_parser("obstruction", parents=[common], help="finiteness obstruction witness")
    sp.add_argument("--monoid", default=None)
    sp.add_argument("--c", default=None, help="element of A(2) = M x M, e.g. 'a,1'")
    sp = sub.add_parser("interchange", parents=[common], help="interchange diagram checks")
    sp.add_argument("--case", choices=("dunn", "c2-fail", "labelled"), default="dunn")
    return p


_COMMON = {"format", "seed", "out", "config", "samples", "no_timings", "simplex_budget", "enum_budget",
           "exhaustive_limit", "suite"}


def config_from_args(args) -> RunConfig:
    file_cfg = read_config_file(args.config) if args.config else {}
    budgets = {k: int(file_cfg[k]) for k in ("simplex_budget", "enum_budget", "exhaustive_limit") if k in file_cfg}
    for k in ("simplex_budget", "enum_budget", "exhaustive_limit"):
        if getattr(args, k) is not None:
            budgets[k] = getattr(args, k)
    seed = args.seed if args.seed is not None else int(file_cfg.get("seed", str(DEFAULT_SEED)), 0)
    samples = args.samples if args.samples is not None else (int(file_cfg["samples"]) if "samples" in file_cfg
                                                             else None)
    fmt = args.format or file_cfg.get("format", "json")
    params = {k: v for k, v in vars(args).items() if k not in _COMMON}
    return RunConfig(args.suite, params, seed, samples, fmt, budgets)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        rep = run_suite(cfg)
    except (ValueError, OSError) as exc:
        print(f"operad-forge: error: {exc}", file=sys.stderr)
        return 2
    text = render(rep, cfg.fmt, timings=not args.no_timings)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
