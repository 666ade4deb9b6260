import time
from collections import defaultdict

import pytest

from qdlab import contour, opalg, qcluster, wavefun
from qdlab.qdilog import QdContext


def _report(n, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")


@pytest.fixture(scope="module")
def wave_checks():
    t0 = time.perf_counter()
    checks = wavefun.wavefun_suite(QdContext(b=0.79, tau=0.1), seed=0, points=10)
    by = defaultdict(list)
    for c in checks:
        by[(c.group, c.name)].append(c)
    return by, time.perf_counter() - t0


def _group(by, group, prefix=""):
    return [c for (g, n), cs in by.items() if g == group and n.startswith(prefix) for c in cs]


def test_criterion_1_identity_suite():
    t0 = time.perf_counter()
    reports = contour.appendix_suite(draws=25, seed=0, tol=1e-8, b_range=(0.6, 0.95))
    dt = time.perf_counter() - t0
    counts = defaultdict(int)
    for r in reports:
        counts[r.identity] += 1
    worst = max(r.rel_err for r in reports)
    ok = all(r.passed for r in reports) and len(counts) == 12 and min(counts.values()) >= 25 and dt <= 600
    _report(1, ok, f"{len(reports)} checks, {len(counts)} identities, max rel err {worst:.2e}, {dt:.1f}s")
    assert ok


def test_criterion_2_gg_equals_mb(wave_checks):
    by, _ = wave_checks
    gm = by[("representations", "gg_equals_mb")]
    cross = by[("representations", "star_cross_identity")]
    worst = max(c.residual for c in gm + cross)
    ok = len(gm) >= 20 and len(cross) >= 10 and all(c.residual <= 1e-8 for c in gm + cross)
    _report(2, ok, f"{len(gm)} GG/MB points, {len(cross)} cross points, max rel diff {worst:.2e}")
    assert ok


def test_criterion_3_eigen_equations(wave_checks):
    by, _ = wave_checks
    names = ("toda_H1", "toda_H2", "macdonald_M1", "macdonald_M2")
    ok = True
    worst = 0.0
    for n in names:
        cs = by[("eigen", n)]
        ok &= len(cs) >= 10 and all(c.residual <= 1e-6 for c in cs)
        worst = max([worst] + [c.residual for c in cs])
    _report(3, ok, f"max relative residual {worst:.2e}")
    assert ok


def test_criterion_4_symmetries(wave_checks):
    by, _ = wave_checks
    cs = _group(by, "symmetry")
    kinds = {c.name for c in cs}
    per_kind = min(len(by[("symmetry", k)]) for k in kinds)
    worst = max(c.residual for c in cs)
    ok = len(kinds) >= 8 and per_kind >= 10 and worst <= 1e-8
    _report(4, ok, f"{len(kinds)} relations x {per_kind} points, max rel {worst:.2e}")
    assert ok


def test_criterion_5_lattice_polynomials(wave_checks):
    by, _ = wave_checks
    w = by[("lattice", "whittaker_lattice_value")]
    m = by[("lattice", "macdonald_lattice_value")]
    expected = len(wavefun.lattice_pairs(2, 1))
    worst = max(c.residual for c in w + m)
    ok = len(w) == expected and len(m) == expected and worst <= 1e-4
    _report(5, ok, f"{len(w)}+{len(m)} lattice pairs, max rel {worst:.2e}")
    assert ok


def test_criterion_6_harish_chandra(wave_checks):
    by, _ = wave_checks
    cs = _group(by, "harish_chandra")
    numeric = [c for c in cs if c.name.endswith(("terms", "plus", "minus"))]
    exact = [c for c in cs if c.name.endswith("_exact")]
    trunc = by[("harish_chandra", "macdonald_truncation")]
    ok = (len(numeric) == 3 and all(c.residual <= 1e-8 for c in numeric)
          and len(exact) == 2 and all(c.residual == 0 for c in exact)
          and len(trunc) == 4 and all(c.passed for c in trunc))
    worst = max(c.residual for c in numeric)
    _report(6, ok, f"numeric max rel {worst:.2e}, exact {sum(c.passed for c in exact)}/2, "
                   f"truncation {sum(c.passed for c in trunc)}/4")
    assert ok


def test_criterion_7_cluster_suite():
    t0 = time.perf_counter()
    reports = qcluster.cluster_suite(depth=4)
    dt = time.perf_counter() - t0
    failed = [r.name for r in reports if not r.passed]
    ok = not failed and dt <= 120
    _report(7, ok, f"{len(reports)} exact checks, failed {failed}, {dt:.1f}s")
    assert ok


def test_criterion_8_operator_suite():
    reports = opalg.operator_suite(pairs=50, seed=0)
    failed = [r.name for r in reports if not r.passed]
    ok = bool(reports) and not failed
    _report(8, ok, f"{len(reports)} exact identities, failed {failed}")
    assert ok
