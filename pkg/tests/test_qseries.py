import cmath
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qdlab.errors import DegenerateParameter
from qdlab.laurent import QRational, var
from qdlab.qseries import (GeneralizedPartition2 as G, SpecialPoint, hc_macdonald_coefficients,
                           hc_macdonald_series, hc_macdonald_step, hc_whittaker_coefficients,
                           hc_whittaker_series, hc_whittaker_step, heine_rhs, macdonald_coefficients,
                           macdonald_poly, qbinom, qbinomial_theorem_rhs, qpoch, qpoch_inf, two_psi_one,
                           whittaker_poly)

q, t, x1, x2, z1, z2, M = (var(s) for s in ("q", "t", "x1", "x2", "z1", "z2", "M"))
ONE = var("q") ** 0


def brute_qbinom(n, k):
    # count k-subsets of range(n) weighted by q^(inversions)
    total = 0 * q
    for sub in itertools.combinations(range(n), k):
        inv = sum(s - i for i, s in enumerate(sub))
        total = total + q ** inv
    return total


def test_qpoch_examples():
    assert qpoch(var("X"), q, 0) == ONE
    assert qpoch(q, q, 2) == (1 - q) * (1 - q ** 2)
    assert qpoch(q ** -3, q, 4).is_zero()
    assert qpoch(0.5, 0.5, 0) == 1


def test_qpoch_inf_matches_long_product():
    v = qpoch_inf(0.3 + 0.1j, 0.6)
    assert abs(v - qpoch(0.3 + 0.1j, 0.6, 200)) < 1e-14


def test_qbinom_examples():
    assert qbinom(2, 1) == 1 + q
    assert qbinom(5, 0) == ONE
    assert qbinom(4, 2) == 1 + q + 2 * q ** 2 + q ** 3 + q ** 4
    with pytest.raises(IndexError):
        qbinom(3, 4)


@pytest.mark.parametrize("n", range(7))
def test_qbinom_brute_force_and_symmetry(n):
    for k in range(n + 1):
        assert qbinom(n, k) == brute_qbinom(n, k)
        assert qbinom(n, k) == qbinom(n, n - k)
        p = qbinom(n, k)
        assert p.is_polynomial() and all(c > 0 for c in p.num.terms.values())


def test_whittaker_poly_examples():
    assert whittaker_poly(G(0, 0), z1, z2, q) == ONE
    assert whittaker_poly(G(0, 1), z1, z2, q) == z1 + z2
    assert whittaker_poly(G(0, 2), z1, z2, q) == z2 ** 2 + (1 + q) * z1 * z2 + z1 ** 2
    assert whittaker_poly(G(-1, 1), z1, z2, q) == (z1 * z2) ** -1 * whittaker_poly(G(0, 2), z1, z2, q)


def test_partition_validation():
    with pytest.raises(ValueError):
        G(2, 1)
    assert G(-1, 2).width == 3


def test_macdonald_examples():
    assert QRational.coerce(macdonald_poly(G(0, 0), x1, x2, t, q)) == QRational(1)
    assert QRational.coerce(macdonald_poly(G(0, 1), x1, x2, t, q)) == QRational(x1 + x2)


@pytest.mark.parametrize("n", [G(0, 2), G(0, 3), G(-1, 2)])
def test_macdonald_symmetric(n):
    p = QRational.coerce(macdonald_poly(n, x1, x2, t, q))
    swapped = QRational.coerce(macdonald_poly(n, x2, x1, t, q))
    assert p == swapped


def test_macdonald_width_two_direct():
    # c_1 = (1 - q^2)(1 - t) / ((1 - q t)(1 - q))
    c = macdonald_coefficients(2, t, q)
    assert c[1] == QRational((1 + q) * (1 - t), 1 - q * t)
    assert c[0] == QRational(1) and c[2] == QRational(1)


def test_macdonald_degenerate():
    with pytest.raises(DegenerateParameter):
        macdonald_coefficients(2, 1 / 0.5, 0.5)


def test_special_point():
    b = 0.8
    cb = 0.5j * (b + 1 / b)
    assert SpecialPoint(2, 1, -1).value(b) == pytest.approx(-cb / 2 - 2j * b - 1j / b)


def test_two_psi_one_trivial():
    assert two_psi_one(0.3, 0.2, 0.5, 0.1, 0.4, 0).value == 1


def test_heine_convergent_point():
    a, b, c, qq = 0.3, 0.2, 0.05, 0.4
    res = two_psi_one(a, b, c, c / (a * b), qq, 400)
    assert not res.nonconvergent
    assert abs(res.value - heine_rhs(a, b, c, qq)) < 1e-12


@pytest.mark.parametrize("n", [1, 3, 5])
def test_termination_and_chu_vandermonde(n):
    a, c, qq = 0.3 + 0.2j, 0.45, 0.6
    bb = qq ** -n
    res = two_psi_one(a, bb, c, c / (a * bb), qq, 50)
    assert res.terminated and res.terms == n + 1
    assert abs(res.value - qpoch(c / a, qq, n) / qpoch(c, qq, n)) < 1e-10


@settings(max_examples=20, deadline=None)
@given(st.complex_numbers(max_magnitude=2), st.floats(0.05, 0.7), st.floats(0.0, 6.3), st.floats(0.05, 0.9))
def test_qbinomial_theorem(a, zr, zarg, qq):
    z = zr * cmath.exp(1j * zarg)
    res = two_psi_one(a, 0.0, 0.0, z, qq, 600)
    assert abs(res.value - qbinomial_theorem_rhs(a, z, qq)) < 1e-10 * max(1, abs(res.value))


def test_hc_whittaker_series():
    r0 = hc_whittaker_series(-0.2, 0.3, 0.1, 0.4, 0.8, 0)
    assert abs(r0.value - cmath.exp(2j * cmath.pi * (-0.2 * 0.1 + 0.3 * 0.4))) < 1e-15
    qq = cmath.exp(1j * cmath.pi * 0.64)
    X = qq ** -4
    c = hc_whittaker_coefficients(6, X, qq)
    assert abs(c[2]) > 1e-3 and all(abs(v) < 1e-12 for v in c[3:])


def test_hc_steps_match_coefficients():
    X = var("X")
    c = hc_whittaker_coefficients(5, X, q)
    for r in range(1, 6):
        num, den = hc_whittaker_step(r, X, q)
        assert c[r] * QRational(den) == c[r - 1] * QRational(num)
    c = hc_macdonald_coefficients(4, M, q, t)
    for r in range(1, 5):
        num, den = hc_macdonald_step(r, M, q, t)
        assert c[r] * QRational(den) == c[r - 1] * QRational(num)


def test_hc_macdonald_series():
    assert hc_macdonald_series(0.3, 0.7, 0.5, 0.4, 0).value == 1
    L, Mv, qq, tt = 0.3 + 0.1j, 0.7, 0.5 + 0.2j, 0.4
    brute = 0
    for r in range(9):
        term = L ** r
        for k in range(r):
            term *= (1 - Mv * qq ** (-2 * k) / tt ** 2) * (1 - tt ** 2 * qq ** (2 * k))
            term /= (1 - Mv * qq ** (-2 * k - 2)) * (1 - qq ** (2 * k + 2))
        brute += term
    assert abs(hc_macdonald_series(L, Mv, qq, tt, 8).value - brute) < 1e-13


def test_hc_macdonald_truncation():
    # t^2 = q^-2w stops the (t^2; q^2)_r factor after r = w
    qq, w = 0.5 + 0.3j, 2
    c = hc_macdonald_coefficients(6, 0.37, qq, qq ** -w)
    assert abs(c[w]) > 1e-6 and all(abs(v) < 1e-12 for v in c[w + 1:])
