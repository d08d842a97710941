"""The ten acceptance criteria, one test each.  Every test prints a PASS/FAIL line."""
import time

import pytest

from descentcalc.localfield import LocalFieldDesc, hilbert_symbol, square_classes
from descentcalc.verify import FAMILIES, run_suite
from oracles import enumerate_square_classes, hilbert_oracle, real_hilbert_oracle

SEED = 20240


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
        return ok
    return emit


def _messages(rep, limit=3):
    return "; ".join(f"[{v['family']} seed={v['seed']}] {v['message']}" for v in rep.violations[:limit])


def test_criterion_01_hilbert_oracle(report):
    t0 = time.time()
    bad, pairs = [], 0
    for p in (2, 3, 5, 7):
        F = LocalFieldDesc.qp(p)
        reps = [c.rep for c in square_classes(F)] + enumerate_square_classes(p)
        for a in reps:
            for b in reps:
                pairs += 1
                if hilbert_symbol(F, F.cls(a), F.cls(b)) != hilbert_oracle(a, b, p):
                    bad.append((p, a, b))
    R = LocalFieldDesc.real()
    for a in (1, -1, 3, -7):
        for b in (1, -1, 5, -2):
            pairs += 1
            if hilbert_symbol(R, R.cls(a), R.cls(b)) != real_hilbert_oracle(a, b):
                bad.append(("R", a, b))
    dt = time.time() - t0
    ok = not bad and dt < 10
    assert report(1, ok, f"{pairs} symbol pairs, {len(bad)} mismatches, {dt:.2f}s (< 10s)"), bad[:5]


def test_criterion_02_component_group_sizing(report):
    rep = run_suite("component-group", 500, SEED)
    ok = rep.ok and rep.wall_time < 30
    assert report(2, ok, f"{rep.cases} parameters over {len(FAMILIES)} families, "
                         f"{len(rep.violations)} violations, {rep.wall_time:.1f}s (< 30s)"), _messages(rep)


def test_criterion_03_contragredient(report):
    rep = run_suite("contragredient", 500, SEED)
    assert report(3, rep.ok, f"{rep.cases} enhanced parameters, {len(rep.violations)} violations"), _messages(rep)


def test_criterion_04_distinguished_pair(report):
    rep = run_suite("distinguished", 200, SEED)
    checked = rep.stats.get("checked", 0)
    ok = rep.ok and checked >= 200
    assert report(4, ok, f"{checked} triples (phi, psi, z), {len(rep.violations)} violations"), _messages(rep)


def test_criterion_05_tower(report):
    rep = run_suite("tower", 200 * len(FAMILIES), SEED)
    pairs = rep.stats.get("pairs", 0)
    ok = rep.ok and rep.wall_time < 300 and pairs > 0
    assert report(5, ok, f"{rep.cases} cases (200 per family), {pairs} padded witnesses, "
                         f"{len(rep.violations)} violations, {rep.wall_time:.1f}s (< 300s)"), _messages(rep)


def test_criterion_06_discreteness(report):
    rep = run_suite("discreteness", 200, SEED)
    members = rep.stats.get("members", 0)
    ok = rep.ok and members > 0
    assert report(6, ok, f"{rep.cases} cases, {members} first-descent members, "
                         f"{len(rep.violations)} violations"), _messages(rep)


@pytest.fixture(scope="module")
def first_occurrence_runs():
    """Batches of the first-occurrence suite until at least 100 cases have a finite first occurrence."""
    t0 = time.time()
    reps = []
    found = 0
    batch = 0
    while found < 100 and batch < 10:
        rep = run_suite("first-occurrence", 40, SEED + batch)
        reps.append(rep)
        found += rep.stats.get("found", 0)
        batch += 1
    return reps, found, time.time() - t0


def test_criterion_07_fs_equals_fa(report, first_occurrence_runs):
    reps, found, dt = first_occurrence_runs
    viol = [v for r in reps for v in r.violations if "first spectrum" not in v["message"]]
    cases = sum(r.cases for r in reps)
    ok = not viol and found >= 100 and dt < 600
    assert report(7, ok, f"{cases} cases, {found} with finite first occurrence, "
                         f"{len(viol)} mismatches, {dt:.1f}s (< 600s)"), viol[:3]


def test_criterion_08_first_descent_spectrum(report, first_occurrence_runs):
    reps, found, _ = first_occurrence_runs
    viol = [v for r in reps for v in r.violations if "f_a =" not in v["message"]]
    ok = not viol and found >= 100
    assert report(8, ok, f"{found} first spectra compared with the contragredient first descents, "
                         f"{len(viol)} differences"), viol[:3]


def test_criterion_09_gl_padding(report):
    rep = run_suite("gl-padding", 600, SEED)
    checked, ones = rep.stats.get("checked", 0), rep.stats.get("ones", 0)
    ok = rep.ok and checked >= 500 and 0 < ones < checked
    assert report(9, ok, f"{checked} padded pairs ({ones} with m = 1), "
                         f"{len(rep.violations)} violations"), _messages(rep)


def test_criterion_10_spaces(report):
    rep = run_suite("spaces", 0, SEED)
    assert report(10, rep.ok, f"{rep.cases} spaces over Q2, Q3, Q5, Q7 with n <= 12, "
                              f"{len(rep.violations)} violations, {rep.wall_time:.1f}s"), _messages(rep)
