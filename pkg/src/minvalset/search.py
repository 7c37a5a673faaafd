"""Exhaustive MVSP enumeration over small fields.

Candidates of one degree are evaluated in numpy batches: row i of the value
matrix holds the values of candidate i at every field element. Shards split
candidates by index modulo the shard count, so any partition of the shards
reproduces the unsharded result.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import BudgetExceeded, MvspError
from .gf import FieldContext, divisors, make_field
from .linearized import SubspaceBasis, annihilator
from .mvsp import (
    _degree_window,
    conjecture_params,
    conjecture_rhs,
    millsbor_check,
    mills_decompose,
    w_elements,
)
from .polyring import Poly, compose, format_poly, nth_root
from .valueset import _subfield, decompose_structure, is_mvsp, value_set

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 1 << 31
BATCH = 1 << 15
SCHEMA = 1


def default_budget() -> int:
    env = os.environ.get("MVSP_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


# -- vectorized candidate evaluation ----------------------------------------------


def _term_tables(ctx: FieldContext, degree: int) -> list[np.ndarray]:
    """tables[j][c] = values of c*x^j at every element."""
    xs = np.arange(ctx.q, dtype=np.int64)
    cs = np.arange(ctx.q, dtype=np.int64)
    tables = []
    pw = np.ones(ctx.q, dtype=np.int64)
    for j in range(degree + 1):
        if j:
            pw = ctx.vec_mul(pw, xs)
        tables.append(ctx.vec_mul(cs[:, None], pw[None, :]))
    return tables


def _decode(ctx: FieldContext, degree: int, idx: np.ndarray) -> np.ndarray:
    """Coefficient rows (ascending) for candidate indices of one degree."""
    q = ctx.q
    coeffs = np.empty((len(idx), degree + 1), dtype=np.int64)
    rest = idx.copy()
    for j in range(degree):
        coeffs[:, j] = rest % q
        rest //= q
    coeffs[:, degree] = rest + 1
    return coeffs


def num_candidates(q: int, degree: int) -> int:
    return (q - 1) * q**degree


def iter_batches(ctx: FieldContext, degree: int, shard=(0, 1), batch: int = BATCH):
    """Yield (coeffs, values) over this shard's candidates of the given degree."""
    index, total = shard
    tables = _term_tables(ctx, degree)
    count = num_candidates(ctx.q, degree)
    step = batch * total
    for start in range(index, count, step):
        idx = np.arange(start, min(count, start + step), total, dtype=np.int64)
        coeffs = _decode(ctx, degree, idx)
        vals = tables[0][coeffs[:, 0]]
        for j in range(1, degree + 1):
            vals = ctx.vec_add(vals, tables[j][coeffs[:, j]])
        yield coeffs, vals


def distinct_counts(vals: np.ndarray) -> np.ndarray:
    s = np.sort(vals, axis=1)
    return 1 + np.count_nonzero(np.diff(s, axis=1), axis=1)


def scan_value_set(ctx: FieldContext, target, budget: int | None = None):
    """Every MVSP whose value set is exactly ``target`` (exhaustive)."""
    target = np.array(sorted(target), dtype=np.int64)
    window = _degree_window(ctx.q, len(target))
    total = sum(num_candidates(ctx.q, d) for d in window)
    if budget is not None and total > budget:
        raise BudgetExceeded(f"{total} candidates exceed budget {budget}")
    for d in window:
        for coeffs, vals in iter_batches(ctx, d):
            ok = (distinct_counts(vals) == len(target)) & np.isin(vals, target).all(axis=1)
            for row in coeffs[ok]:
                yield Poly(ctx, row.tolist())


# -- tasks and reports ------------------------------------------------------------


@dataclass
class SearchTask:
    ctx: FieldContext
    lo: int
    hi: int
    shard: tuple = (0, 1)
    monic_only: bool = False
    min_value_set_size: int = 0
    budget: int = field(default_factory=default_budget)

    def __post_init__(self):
        if not (1 <= self.lo <= self.hi <= self.ctx.q - 1):
            raise ValueError(f"degree range [{self.lo}, {self.hi}] outside 1..{self.ctx.q - 1}")
        index, total = self.shard
        if not (total >= 1 and 0 <= index < total):
            raise ValueError(f"bad shard {index}/{total}")
        self.shard = (index, total)

    def candidates(self) -> int:
        per = (lambda d: self.ctx.q**d) if self.monic_only else (lambda d: num_candidates(self.ctx.q, d))
        return sum(per(d) for d in range(self.lo, self.hi + 1))

    def to_json(self) -> dict:
        return {"field": self.ctx.to_dict(), "degree_range": [self.lo, self.hi],
                "shard": list(self.shard), "monic_only": self.monic_only,
                "min_value_set_size": self.min_value_set_size}


@dataclass
class SearchReport:
    task: dict
    hits: list
    counts: dict
    violations: list
    millsbor_checked: int = 0

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "task": self.task, "counts": self.counts,
                "violations": self.violations, "millsbor_checked": self.millsbor_checked,
                "hits": self.hits}


def _hit_record(ctx: FieldContext, coeffs: list[int], violations: list) -> dict:
    F = Poly(ctx, coeffs)
    V = value_set(F)
    rec = {"degree": F.degree, "coeffs": list(F.coeffs), "poly": format_poly(F),
           "value_set": V, "certificate": None, "witness": None}
    if len(V) > 2:
        try:
            rec["certificate"] = mills_decompose(F).to_json()
        except MvspError as exc:
            violations.append({"coeffs": rec["coeffs"], "kind": "certificate", "error": repr(exc)})
        wit = decompose_structure(ctx, V)
        if wit is None:
            violations.append({"coeffs": rec["coeffs"], "kind": "no_structure"})
        else:
            rec["witness"] = wit.to_json()
    return rec


def _deriv_degree(coeffs: np.ndarray, p: int) -> np.ndarray:
    """deg F' per row (-1 when F' = 0)."""
    d = coeffs.shape[1] - 1
    live = (coeffs != 0) & ((np.arange(d + 1) % p) != 0)
    has = live.any(axis=1)
    top = d - np.argmax(live[:, ::-1], axis=1)
    return np.where(has, top - 1, -1)


def _scan_shard(task: SearchTask) -> SearchReport:
    ctx = task.ctx
    q, p = ctx.q, ctx.p
    hits, violations = [], []
    counts = {}
    checked = 0
    for d in range(task.lo, task.hi + 1):
        n_cand = n_hit = 0
        minimal = (q - 1) // d + 1
        for coeffs, vals in iter_batches(ctx, d, task.shard):
            if task.monic_only:
                keep = coeffs[:, d] == 1
                coeffs, vals = coeffs[keep], vals[keep]
            n_cand += len(coeffs)
            nv = distinct_counts(vals)
            # the Mills-Borges degree gate: #V * deg F must equal q + deg F'
            gate = (nv * d == q + _deriv_degree(coeffs, p)) & (nv > 2)
            checked += int(np.count_nonzero(nv > 2))
            for row in coeffs[gate & (nv != minimal)]:
                F = Poly(ctx, row.tolist())
                if millsbor_check(F) is not None:
                    violations.append({"coeffs": list(F.coeffs), "kind": "millsbor_without_mvsp"})
            hit = nv == minimal
            if task.min_value_set_size:
                hit &= nv >= task.min_value_set_size
            for row in coeffs[hit & (nv > 2) & ~gate]:
                violations.append({"coeffs": row.tolist(), "kind": "mvsp_fails_degree_gate"})
            for row in coeffs[hit]:
                hits.append(_hit_record(ctx, row.tolist(), violations))
                n_hit += 1
        counts[str(d)] = {"candidates": n_cand, "mvsps": n_hit}
    hits.sort(key=lambda h: (h["degree"], h["coeffs"]))
    return SearchReport(task.to_json(), hits, counts, violations, checked)


def merge_reports(reports: list[SearchReport], task: dict | None = None) -> SearchReport:
    hits = sorted((h for r in reports for h in r.hits), key=lambda h: (h["degree"], h["coeffs"]))
    counts: dict = {}
    for r in reports:
        for d, c in r.counts.items():
            acc = counts.setdefault(d, {"candidates": 0, "mvsps": 0})
            acc["candidates"] += c["candidates"]
            acc["mvsps"] += c["mvsps"]
    counts = dict(sorted(counts.items(), key=lambda kv: int(kv[0])))
    violations = [v for r in reports for v in r.violations]
    return SearchReport(task if task is not None else reports[0].task, hits, counts, violations,
                        sum(r.millsbor_checked for r in reports))


def _run_subshard(args):
    p, n, modulus, lo, hi, shard, monic_only, min_size = args
    ctx = make_field(p, n, modulus)
    return _scan_shard(SearchTask(ctx, lo, hi, shard, monic_only, min_size, budget=1 << 62))


def enumerate_mvsps(task: SearchTask, workers: int = 1) -> SearchReport:
    """Scan every candidate of the task's shard and certify the MVSP hits."""
    n_cand = task.candidates()
    if n_cand > task.budget:
        raise BudgetExceeded(f"{n_cand} candidates exceed budget {task.budget}")
    if workers <= 1:
        return _scan_shard(task)
    index, total = task.shard
    ctx = task.ctx
    subs = [(ctx.p, ctx.n, ctx.modulus, task.lo, task.hi, (index + total * j, total * workers),
             task.monic_only, task.min_value_set_size) for j in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_run_subshard, subs))
    return merge_reports(parts, task.to_json())


# -- persistence ------------------------------------------------------------------


def shard_filename(index: int, total: int) -> str:
    return f"shard-{index}-of-{total}.jsonl"


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def write_jsonl(report: SearchReport, path: Path) -> None:
    with open(path, "w") as fh:
        for h in report.hits:
            fh.write(json.dumps(h, sort_keys=True) + "\n")


def read_jsonl(path: Path, ctx: FieldContext | None = None) -> list[dict]:
    """Load hit records; with ctx given, each one is re-checked with is_mvsp."""
    hits = []
    with open(path) as fh:
        for line in fh:
            if not line.strip():
                continue
            h = json.loads(line)
            if ctx is not None and not is_mvsp(Poly(ctx, h["coeffs"])):
                raise ValueError(f"record {h['coeffs']} is not an MVSP")
            hits.append(h)
    return hits


def run_to_dir(task: SearchTask, out_dir, workers: int = 1) -> tuple[SearchReport, bool]:
    """Write the shard's JSONL and update the manifest. Returns (report, resumed).

    A shard whose manifest entry matches the task and the file hash is not recomputed.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    index, total = task.shard
    path = out / shard_filename(index, total)
    mpath = out / "manifest.json"
    manifest = json.loads(mpath.read_text()) if mpath.exists() else {"schema": SCHEMA, "shards": {}}
    params = dict(task.to_json())
    params.pop("shard")
    entry = manifest["shards"].get(path.name)
    if (entry and manifest.get("params") == params and path.exists()
            and entry.get("sha256") == _sha256(path) and entry.get("complete")):
        log.info("shard %s already complete; skipping", path.name)
        hits = read_jsonl(path)
        report = SearchReport(task.to_json(), hits, entry["counts"], entry["violations"],
                              entry.get("millsbor_checked", 0))
        return report, True
    report = enumerate_mvsps(task, workers)
    write_jsonl(report, path)
    manifest["params"] = params
    manifest["shards"][path.name] = {
        "complete": True,
        "sha256": _sha256(path),
        "counts": report.counts,
        "violations": report.violations,
        "millsbor_checked": report.millsbor_checked,
        "hits": len(report.hits),
    }
    manifest["shards"] = dict(sorted(manifest["shards"].items()))
    mpath.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return report, False


# -- affine classes ---------------------------------------------------------------


def affine_classes(ctx: FieldContext, hits: list[dict]) -> list[dict]:
    """Group hits under a*F(u*x + w) + b; the representative is the smallest member."""
    keys = [tuple(h["coeffs"]) for h in hits]
    pos = {k: i for i, k in enumerate(keys)}
    parent = list(range(len(keys)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    g = ctx.generator
    adds = [ctx.p**t for t in range(ctx.n)]
    for i, key in enumerate(keys):
        F = Poly(ctx, key)
        images = [compose(F, Poly(ctx, (0, g))), F.scale(g)]
        images += [compose(F, Poly(ctx, (w, 1))) for w in adds]
        images += [F + Poly.const(ctx, w) for w in adds]
        for G in images:
            j = pos.get(G.coeffs)
            if j is not None:
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups: dict = {}
    for i in range(len(keys)):
        groups.setdefault(find(i), []).append(i)
    out = []
    for members in groups.values():
        rep = min(members, key=lambda i: (hits[i]["degree"], keys[i]))
        out.append({"representative": hits[rep]["poly"], "coeffs": list(keys[rep]),
                    "degree": hits[rep]["degree"], "size": len(members)})
    out.sort(key=lambda c: (c["degree"], c["coeffs"]))
    return out


# -- conjecture --------------------------------------------------------------------


def verify_conjecture(ctx: FieldContext, U: SubspaceBasis, v: int, budget: int | None = None,
                      mode: str = "auto") -> dict:
    """Compare all MVSPs with value set U^v against the predicted power forms."""
    budget = default_budget() if budget is None else budget
    info = conjecture_params(U, v)
    target = info["target"]
    window = _degree_window(ctx.q, len(target))
    exhaustive_cost = sum(num_candidates(ctx.q, d) for d in window)
    if mode == "auto":
        if exhaustive_cost <= budget:
            mode = "exhaustive"
        elif v == 1:
            mode = "linear"
        else:
            raise BudgetExceeded(f"{exhaustive_cost} candidates exceed budget {budget}; "
                                 "no complete structured mode for v > 1")
    if mode == "exhaustive":
        lhs = {F.coeffs for F in scan_value_set(ctx, target, budget)}
        assumption = None
    elif mode == "linear":
        if v != 1:
            raise ValueError("linear mode needs v = 1")
        A = annihilator(U)
        lhs = set()
        for F in w_elements(A, max(window), budget):
            if F.degree in window and value_set(F) == target:
                lhs.add(F.coeffs)
        assumption = ("every F with value set U solves A(F) = -a_0 (x^q - x) F', "
                      "so the solution space of that identity (degree-bounded) is complete")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    rhs = {F.coeffs for F in conjecture_rhs(U, v, budget)}
    fmt = lambda keys: sorted(format_poly(Poly(ctx, k)) for k in keys)
    return {
        "schema": SCHEMA,
        "field": ctx.to_dict(),
        "basis": list(U.basis), "k": U.k, "m": U.m, "v": v,
        "branch": "field" if info["is_field"] else "subspace",
        "e": info.get("e"), "t": info.get("t"),
        "mode": mode, "assumption": assumption,
        "lhs_count": len(lhs), "rhs_count": len(rhs),
        "equal": lhs == rhs,
        "lhs": fmt(lhs), "rhs": fmt(rhs),
        "lhs_only": fmt(lhs - rhs), "rhs_only": fmt(rhs - lhs),
    }


def admissible_pairs(ctx: FieldContext):
    """Every (U, v) with 1 in U, v | p^k - 1 and #U^v > 2, one basis per subspace."""
    p = ctx.p
    from .gf import divisors

    for k in divisors(ctx.n):
        seen = set()
        for U in _subspaces_containing_one(ctx, k):
            key = tuple(U.span())
            if key in seen:
                continue
            seen.add(key)
            for v in divisors(p**k - 1):
                if (U.size - 1) // v + 1 > 2:
                    yield U, v


def _subspaces_containing_one(ctx: FieldContext, k: int):
    """All F_{p^k}-subspaces of F_q that contain 1, via greedy extension."""
    frontier = {tuple(SubspaceBasis(ctx, k, (1,)).span()): SubspaceBasis(ctx, k, (1,))}
    while frontier:
        nxt = {}
        for span, U in frontier.items():
            yield U
            members = set(span)
            for b in range(ctx.q):
                if b in members:
                    continue
                W = SubspaceBasis(ctx, k, U.basis + (b,))
                key = tuple(W.span())
                if key not in nxt:
                    nxt[key] = W
        frontier = nxt


# -- degree bounds for powers of subspaces ----------------------------------------


def degree_bound_audit(report: SearchReport | dict | list) -> dict:
    """Check the degree lower bound on hits outside the predicted power forms."""
    hits = report.hits if isinstance(report, SearchReport) else (
        report["hits"] if isinstance(report, dict) else report)
    task = report.task if isinstance(report, SearchReport) else (
        report.get("task") if isinstance(report, dict) else None)
    out = {"checked": 0, "in_family": 0, "out_of_family": 0, "violations": [], "vacuous": True}
    if not hits:
        return out
    fd = task["field"]
    ctx = make_field(fd["p"], fd["n"], fd["modulus"])
    p, n = ctx.p, ctx.n
    half = p ** (n / 2)
    for h in hits:
        if len(h["value_set"]) <= 2:
            continue
        F = Poly(ctx, h["coeffs"])
        for wit in decompose_structure(ctx, h["value_set"], all_witnesses=True):
            if wit.v == 1:
                continue
            out["checked"] += 1
            G = (F - Poly.const(ctx, wit.b)).scale(ctx.inv(wit.a))
            span = wit.U.span()
            info = conjecture_params(wit.U, wit.v)
            if info["is_field"]:
                e, t = info["e"], info["t"]
                f = nth_root(G, t)
                inside = f is not None and _is_onto(f, _subfield(ctx, e))
                bound, strict = (half + 1) * p**e, False
            else:
                f = nth_root(G, wit.v)
                inside = f is not None and _is_onto(f, span)
                bound, strict = (half + 1) * p ** (wit.m * wit.k), True
            if inside:
                out["in_family"] += 1
                continue
            out["out_of_family"] += 1
            ok = F.degree > bound if strict else F.degree >= bound
            if not ok:
                out["violations"].append({"coeffs": h["coeffs"], "witness": wit.to_json(),
                                          "degree": F.degree, "bound": bound})
    out["vacuous"] = out["out_of_family"] == 0
    return out


def _is_onto(f: Poly, target: list[int]) -> bool:
    q = f.ctx.q
    if f.is_constant() or f.degree > q - 1:
        return False
    return value_set(f) == list(target) and is_mvsp(f)
