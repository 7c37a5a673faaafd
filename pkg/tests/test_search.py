import itertools
import json

import pytest

from minvalset.errors import BudgetExceeded
from minvalset.gf import make_field
from minvalset.linearized import SubspaceBasis
from minvalset.polyring import Poly
from minvalset.search import (
    SearchTask,
    admissible_pairs,
    affine_classes,
    degree_bound_audit,
    enumerate_mvsps,
    merge_reports,
    num_candidates,
    read_jsonl,
    run_to_dir,
    scan_value_set,
    shard_filename,
    verify_conjecture,
)
from minvalset.valueset import is_mvsp, value_set

F4 = make_field(2, 2)
F5 = make_field(5, 1)
F8 = make_field(2, 3)
F9 = make_field(3, 2)
F81 = make_field(3, 4)


def _brute_force(ctx, lo, hi):
    out = set()
    for d in range(lo, hi + 1):
        for low in itertools.product(range(ctx.q), repeat=d):
            for lead in range(1, ctx.q):
                f = Poly(ctx, list(low) + [lead])
                if is_mvsp(f):
                    out.add(f.coeffs)
    return out


@pytest.mark.parametrize("ctx,hi", [(F4, 3), (F5, 3), (F8, 3)])
def test_enumeration_matches_brute_force(ctx, hi):
    report = enumerate_mvsps(SearchTask(ctx, 1, hi))
    assert {tuple(h["coeffs"]) for h in report.hits} == _brute_force(ctx, 1, hi)
    assert report.violations == []
    for d in range(1, hi + 1):
        assert report.counts[str(d)]["candidates"] == num_candidates(ctx.q, d)


def test_hit_records():
    report = enumerate_mvsps(SearchTask(F9, 2, 2))
    assert len(report.hits) == 8 * 81
    h = report.hits[0]
    assert h["degree"] == 2 and len(h["value_set"]) == 5
    assert "certificate" in h


def test_shard_invariance():
    full = enumerate_mvsps(SearchTask(F9, 1, 4))
    parts = [enumerate_mvsps(SearchTask(F9, 1, 4, (i, 3))) for i in range(3)]
    merged = merge_reports(parts)
    assert merged.hits == full.hits
    assert merged.counts == full.counts
    parallel = enumerate_mvsps(SearchTask(F9, 1, 4), workers=2)
    assert parallel.hits == full.hits and parallel.counts == full.counts


def test_monic_subset():
    full = enumerate_mvsps(SearchTask(F9, 1, 3))
    monic = enumerate_mvsps(SearchTask(F9, 1, 3, monic_only=True))
    assert [h for h in full.hits if h["coeffs"][-1] == 1] == monic.hits


def test_task_validation():
    with pytest.raises(ValueError):
        SearchTask(F9, 0, 3)
    with pytest.raises(ValueError):
        SearchTask(F9, 1, 9)
    with pytest.raises(ValueError):
        SearchTask(F9, 1, 3, (3, 3))
    with pytest.raises(BudgetExceeded):
        enumerate_mvsps(SearchTask(F9, 1, 4, budget=100))
    with pytest.raises(BudgetExceeded):
        list(scan_value_set(F81, [0, 1, 2], budget=1000))


def test_run_to_dir_resume(tmp_path):
    task = SearchTask(F8, 1, 4, (1, 2))
    r1, resumed1 = run_to_dir(task, tmp_path)
    r2, resumed2 = run_to_dir(task, tmp_path)
    assert not resumed1 and resumed2
    assert r1.hits == r2.hits and r1.counts == r2.counts
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["shards"][shard_filename(1, 2)]["complete"]
    assert read_jsonl(tmp_path / shard_filename(1, 2), F8) == r1.hits
    # a corrupted shard file is recomputed
    path = tmp_path / shard_filename(1, 2)
    path.write_text(path.read_text()[:-10])
    r3, resumed3 = run_to_dir(task, tmp_path)
    assert not resumed3 and r3.hits == r1.hits


def test_read_jsonl_rechecks(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text(json.dumps({"coeffs": [0, 1, 0, 0, 1]}) + "\n")  # x^4 + x over F_9
    with pytest.raises(ValueError):
        read_jsonl(path, F9)


def test_affine_classes():
    report = enumerate_mvsps(SearchTask(F9, 1, 4))
    classes = affine_classes(F9, report.hits)
    assert sum(c["size"] for c in classes) == len(report.hits)
    by_degree = {}
    for c in classes:
        by_degree.setdefault(c["degree"], []).append(c)
    # every linear and every quadratic polynomial is affine-equivalent to x or x^2
    assert [c["representative"] for c in by_degree[1]] == ["x"]
    assert [c["representative"] for c in by_degree[2]] == ["x^2"]


def test_conjecture_q9_all_pairs():
    pairs = list(admissible_pairs(F9))
    assert len(pairs) == 6
    for U, v in pairs:
        res = verify_conjecture(F9, U, v)
        assert res["mode"] == "exhaustive"
        assert res["equal"], (U.basis, v, res["lhs_only"], res["rhs_only"])


def test_conjecture_q9_squares():
    U = SubspaceBasis(F9, 1, (1, F9.generator))
    res = verify_conjecture(F9, U, 2)
    assert res["equal"] and res["lhs_count"] == 36


def test_conjecture_q81_linear():
    g = F81.generator
    res = verify_conjecture(F81, SubspaceBasis(F81, 1, (1, g)), 1, budget=10**6)
    assert res["mode"] == "linear" and res["branch"] == "subspace"
    assert res["equal"] and res["lhs_count"] == 720
    with pytest.raises(BudgetExceeded):
        verify_conjecture(F81, SubspaceBasis(F81, 1, (1, g)), 2, budget=10**6)


def test_degree_bound_audit():
    report = enumerate_mvsps(SearchTask(F9, 1, 4))
    audit = degree_bound_audit(report)
    assert audit["violations"] == []
    assert audit["checked"] == audit["in_family"] + audit["out_of_family"]
    assert degree_bound_audit([])["vacuous"]
