import cmath
import json
import math

import numpy as np
import pytest

from qdlab.contour import (QdIntegrand, appendix_suite, build_contour, integrate, integrate_path,
                           random_identity_params, residue_sum, small_circle_residue, verify_identity,
                           verify_pointwise, POINTWISE)
from qdlab.errors import HigherOrderPole, NoDecaySector, PinchedContour
from qdlab.qdilog import QdContext, phib

PI = math.pi


def test_gaussian_smoke():
    r = integrate(QdIntegrand(c2=-PI), None, QdContext(b=0.8), tol=1e-12)
    assert abs(r.value - 1) < 1e-12
    assert r.error < 1e-10


def test_pure_phase_gaussian_tails():
    f = QdIntegrand(c2=1j * PI)
    ctx = QdContext(b=0.8)
    path = build_contour(f, ctx)
    assert path.theta_right == pytest.approx(PI / 4)
    assert path.theta_left % (2 * PI) == pytest.approx(5 * PI / 4)
    assert abs(integrate(f, path, ctx).value - cmath.exp(0.25j * PI)) < 1e-10


def test_no_decay_sector():
    with pytest.raises(NoDecaySector):
        build_contour(QdIntegrand(), QdContext(b=0.8))


def test_fourier1_example():
    rep = verify_identity("fourier1", {"w": 0.2j}, QdContext(b=0.8), tol=1e-10)
    assert rep.passed, rep.rel_err


def test_fourier2_example():
    rep = verify_identity("fourier2", {"w": -0.1j}, QdContext(b=0.8), tol=1e-10)
    assert rep.passed, rep.rel_err


def test_saalschutz_example():
    p = {"u1": 0.1 + 0.2j, "u2": -0.15 + 0.1j, "v": 0.3j}
    rep = verify_identity("saalschutz", p, QdContext(b=0.75), tol=1e-10)
    assert rep.passed, rep.rel_err


def test_saalschutz_confluent():
    p = {"u1": 0.1 + 0.2j, "u2": 0.1 + 0.2j, "v": 0.05j}
    ctx = QdContext(b=0.75)
    a = verify_identity("saalschutz", p, ctx, tol=1e-8)
    b = verify_identity("saalschutz", p, ctx, tol=1e-6)
    assert a.passed and b.passed
    assert abs(a.lhs - b.lhs) < 1e-9 * abs(a.rhs)


def test_beta_closed_forms_agree():
    rng = np.random.default_rng(3)
    ctx = QdContext(b=0.7)
    for _ in range(3):
        rep = verify_identity("pentagon_kernel", random_identity_params("beta1", rng), ctx)
        assert rep.passed, rep.rel_err


def test_contour_independence():
    ctx = QdContext(b=0.8)
    f = QdIntegrand(num=(-0.1 - 0.1j,), den=(0.2 + 0.05j,), c1=2j * PI * (0.1 - 0.2j))
    a = integrate(f, build_contour(f, ctx), ctx, tol=1e-12).value
    b = integrate(f, build_contour(f, ctx, h=-0.3, theta_offset=0.2), ctx, tol=1e-12).value
    assert abs(a - b) <= 1e-10 * abs(a)


@pytest.mark.parametrize("h, crossed", [(-0.4, 1), (-1.0, 2), (-1.4, 3)])
def test_residue_consistency(h, crossed):
    # descending poles of the Fourier-1 integrand sit at -i(m b + n/b): 0, -0.8i, -1.25i, ...
    ctx = QdContext(b=0.8)
    f = QdIntegrand(den=(ctx.c_b,), c1=2j * PI * (0.2j - ctx.c_b))
    top = integrate(f, None, ctx, tol=1e-12).value
    low = build_contour(f, ctx, h=h)
    low.corrections = []
    val, _, _ = integrate_path(lambda t: f(t, ctx), low.pieces(), 1e-12)
    poles = [0j, -0.8j, -1.25j][:crossed]
    assert abs(val - (top + residue_sum(f, poles, ctx))) <= 1e-9 * abs(top)


def test_residue_sum_matches_small_circle():
    ctx = QdContext(b=0.8)
    f = QdIntegrand(den=(ctx.c_b,))
    oracle = 2j * PI * small_circle_residue(lambda t: f(t, ctx), 0j, 0.2)
    assert abs(residue_sum(f, [0j], ctx) - oracle) < 1e-12
    assert residue_sum(f, [0j], ctx) == pytest.approx(-ctx.zeta)


def test_residue_sum_empty_and_regular_points():
    ctx = QdContext(b=0.8)
    f = QdIntegrand(den=(ctx.c_b,))
    assert residue_sum(f, [], ctx) == 0
    assert residue_sum(f, [0.3 + 0.1j], ctx) == 0


def test_higher_order_pole():
    ctx = QdContext(b=0.8)
    f = QdIntegrand(den=(ctx.c_b, ctx.c_b))
    with pytest.raises(HigherOrderPole):
        residue_sum(f, [0j], ctx)


def test_pinched_contour():
    ctx = QdContext(b=0.8)
    f = QdIntegrand(num=(0j,), den=(2 * ctx.c_b + 0.8j,), c2=-PI)
    with pytest.raises(PinchedContour):
        build_contour(f, ctx)


def test_deterministic_path():
    ctx = QdContext(b=0.8)
    f = QdIntegrand(num=(0.1j,), den=(0.2,), c1=-0.3j)
    assert build_contour(f, ctx).to_json() == build_contour(f, ctx).to_json()


@pytest.mark.parametrize("name", POINTWISE)
def test_pointwise_identities(name):
    rep = verify_pointwise(name, 0.3 - 0.1j, QdContext(b=0.77), tol=1e-9)
    assert rep.passed, (name, rep.rel_err)


def test_appendix_suite_small_and_serializable():
    reps = appendix_suite(draws=1, seed=5)
    assert len(reps) == 12 and all(r.passed for r in reps)
    blob = json.loads(json.dumps([r.to_json() for r in reps]))
    assert set(blob[0]) == {"identity", "params", "lhs", "rhs", "abs_err", "rel_err", "pass"}


def test_integrand_evaluation():
    ctx = QdContext(b=0.8)
    f = QdIntegrand(num=(0.1,), den=(-0.2,), c1=0.5, const=2.0)
    t = 0.3 - 0.05j
    expected = 2.0 * phib(t - 0.1, ctx) / phib(t + 0.2, ctx) * cmath.exp(0.5 * t)
    assert abs(complex(f(np.array([t]), ctx)[0]) - expected) < 1e-13
