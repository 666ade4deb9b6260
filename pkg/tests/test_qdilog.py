import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from qdlab.contour import inv_phi_zero_residue, phi_pole_residue
from qdlab.errors import ConfigError, NonConvergent, PoleHit
from qdlab.qdilog import (QdContext, double_sine, double_sine_via_phib, log_phib, log_phib_mp, phi_poles,
                          phi_zeros, phib, psi_q_compact, psi_q_compact_with_bound, shift_ratio)

# Frozen from log_phib_mp(z, b, dps=30, direct=True), the defining integral at 30 digits.
LOG_PHI0_B07 = 0.3312830824589033076465948j
LOG_PHI_B08 = {
    0.3 - 0.2j: 0.44557318578167648773 + 0.673402012866892683j,
    -0.4 + 0.3j: -0.059376228062172028596 + 0.014722756654238764836j,
}

bs = st.floats(0.6, 0.95)
reals = st.floats(-1.5, 1.5)
band = st.floats(-0.25, 0.25)


def close(a, b, tol=1e-10):
    return abs(a - b) <= tol * max(1.0, abs(b))


def test_context_constants():
    c = QdContext(b=0.8)
    assert abs(abs(c.q) - 1) < 1e-15 and abs(abs(c.qtilde) - 1) < 1e-15
    assert c.c_b.real == 0 and c.c_b.imag > 0
    assert close(c.zeta_inv, c.zeta ** -2 * cmath.exp(-1j * math.pi * c.c_b ** 2), 1e-14)
    assert close(cmath.exp(c.log_zeta_inv), c.zeta_inv, 1e-14)


@pytest.mark.parametrize("bad", [0.0, -0.3, 1.0, float("nan")])
def test_context_rejects_bad_b(bad):
    with pytest.raises(ConfigError):
        QdContext(b=bad)


def test_golden_phi_zero():
    c = QdContext(b=0.7)
    assert close(log_phib(0, c), LOG_PHI0_B07, 1e-13)
    assert close(phib(0, c) ** 2, c.zeta_inv, 1e-13)


@pytest.mark.parametrize("z", list(LOG_PHI_B08))
def test_golden_off_axis(z):
    assert close(log_phib(z, QdContext(b=0.8)), LOG_PHI_B08[z], 1e-12)


def test_mp_route_agrees_with_double_route():
    z, c = 0.7 + 0.9j, QdContext(b=0.75)
    assert close(complex(log_phib_mp(z, 0.75, dps=20)), log_phib(z, c), 1e-11)


def test_pole_at_c_b():
    c = QdContext(b=0.8)
    with pytest.raises(PoleHit):
        phib(c.c_b, c)


def test_unit_modulus_on_real_line():
    c = QdContext(b=0.8)
    assert abs(abs(phib(0.3, c)) - 1) < 1e-13
    assert abs(log_phib(0.3, c).real) < 1e-13


def test_asymptotics():
    c = QdContext(b=0.8)
    assert abs(log_phib(-5, c)) < 1e-8
    assert abs(log_phib(5, c) - (c.log_zeta_inv + 25j * math.pi)) < 1e-8


@settings(max_examples=30, deadline=None)
@given(bs, reals, band)
def test_unitarity(b, x, y):
    c = QdContext(b=b)
    z = complex(x, y)
    assert close(phib(z, c).conjugate() * phib(z.conjugate(), c), 1.0)


@settings(max_examples=30, deadline=None)
@given(bs, reals, band)
def test_inversion(b, x, y):
    c = QdContext(b=b)
    z = complex(x, y)
    assert close(phib(z, c) * phib(-z, c), c.zeta_inv * cmath.exp(1j * math.pi * z * z))


@settings(max_examples=30, deadline=None)
@given(bs, reals, band, st.sampled_from(["b", "binv"]))
def test_functional_equations(b, x, y, step):
    c = QdContext(b=b)
    bb = b if step == "b" else 1 / b
    z = complex(x, y)
    lhs = phib(z - 0.5j * bb, c) / phib(z + 0.5j * bb, c)
    assert close(lhs, 1 + cmath.exp(2 * math.pi * bb * z), 1e-9)


@settings(max_examples=20, deadline=None)
@given(bs, reals, band)
def test_b_duality(b, x, y):
    z = complex(x, y)
    assert close(phib(z, QdContext(b=b)), phib(z, QdContext(b=1 / b)), 1e-9)


@pytest.mark.parametrize("r", [-3, -1, 0, 2, 4])
def test_shift_ratio(r):
    c = QdContext(b=0.8)
    w = 0.2 - 0.1j
    assert close(shift_ratio(w, r, c), phib(w + 1j * r * c.b, c) / phib(w, c), 1e-10)


def test_residue_law():
    c = QdContext(b=0.8)
    est_pole = [phib(z + c.c_b, c) * 2j * math.pi * z for z in (1e-5, 2e-5)]
    est_zero = [phib(z - c.c_b, c) / (2j * math.pi * z) for z in (1e-5, 2e-5)]
    # the error is linear in z, so one Richardson step removes it
    assert close(2 * est_pole[0] - est_pole[1], 1 / c.zeta, 1e-7)
    assert close(2 * est_zero[0] - est_zero[1], -1 / c.zeta, 1e-7)


def test_lattice_residues():
    # near every pole of phi and every zero, phi * d (resp. d / phi) is the lattice residue
    c = QdContext(b=0.8)
    d = 1e-7
    for m in range(5):
        for n in range(5 - m):
            assert close(phib(phi_poles(c).point(m, n) + d, c) * d, phi_pole_residue(m, n, c), 1e-5)
            assert close(d / phib(phi_zeros(c).point(m, n) + d, c), inv_phi_zero_residue(m, n, c), 1e-5)


def test_lattice_order():
    c = QdContext(b=0.8)
    lat = phi_poles(c)
    assert lat.order_at(lat.point(1, 2)) == 1
    assert lat.order_at(c.c_b - 1j) == 0


def test_double_sine_midpoint_and_reflection():
    w1, w2 = 0.9, 1 / 0.9
    assert close(double_sine((w1 + w2) / 2, w1, w2), 1.0, 1e-12)
    z = 0.4 - 0.1j
    assert close(double_sine(z, w1, w2) * double_sine(w1 + w2 - z, w1, w2), 1.0, 1e-10)


def test_double_sine_matches_phib_relation():
    z, c = 0.4 - 0.1j, QdContext(b=0.9)
    assert close(double_sine(z, 0.9, 1 / 0.9), double_sine_via_phib(z, c), 1e-10)


def test_double_sine_pole():
    with pytest.raises(PoleHit):
        double_sine(0.0, 0.8, 1.25)


def test_psi_q_examples():
    assert psi_q_compact(0, 0.5) == 1
    X, q = 0.3, 0.5
    assert close(psi_q_compact(q * X, q) / psi_q_compact(X / q, q), 1 + X, 1e-13)
    v, bound = psi_q_compact_with_bound(1, 0.5)
    coarse, cbound = psi_q_compact_with_bound(1, 0.5, tol=1e-6)
    assert bound < 1e-13 and abs(v - coarse) <= abs(v) * cbound * 1.01
    # (-1/2; 1/4)_inf^-1 from mpmath.qp
    assert close(v, 0.568698946265428505954976737074, 1e-13)


def test_psi_q_errors():
    with pytest.raises(NonConvergent):
        psi_q_compact(0.2, 1.0)
    with pytest.raises(PoleHit):
        psi_q_compact(-1 / 0.5, 0.5)
