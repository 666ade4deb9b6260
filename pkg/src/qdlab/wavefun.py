"""Whittaker and Hallnäs–Ruijsenaars wavefunctions, difference operators and
the eigenvalue, symmetry and lattice-specialization checks built on them.

Every evaluation builds a fresh contour for its own parameters, including the
complex-shifted arguments produced by difference operators.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from . import qseries
from .contour import QdIntegrand, integrate, residue_sum
from .errors import CoefficientPole
from .laurent import QRational, as_exact, var
from .qdilog import QdContext, double_sine_via_phib, log_phib

PI = math.pi
EPS_OFFSETS = (1e-3, 5e-4, 2.5e-4)


@dataclass(frozen=True)
class SpectralPoint:
    lambda1: complex
    lambda2: complex

    @property
    def underline(self) -> complex:
        return self.lambda1 + self.lambda2

    @property
    def half(self) -> complex:
        return (self.lambda1 - self.lambda2) / 2

    def swapped(self) -> "SpectralPoint":
        return SpectralPoint(self.lambda2, self.lambda1)

    def star(self) -> "SpectralPoint":
        """v* = (-v2, -v1)."""
        return SpectralPoint(-self.lambda2, -self.lambda1)

    def shifted(self, s1: complex, s2: complex) -> "SpectralPoint":
        return SpectralPoint(self.lambda1 + s1, self.lambda2 + s2)


@dataclass(frozen=True)
class PositionPoint:
    x1: complex
    x2: complex

    def swapped(self) -> "PositionPoint":
        return PositionPoint(self.x2, self.x1)

    def star(self) -> "PositionPoint":
        return PositionPoint(-self.x2, -self.x1)

    def shifted(self, s1: complex, s2: complex) -> "PositionPoint":
        return PositionPoint(self.x1 + s1, self.x2 + s2)


def _pair(v) -> Tuple[complex, complex]:
    if isinstance(v, (SpectralPoint,)):
        return v.lambda1, v.lambda2
    if isinstance(v, PositionPoint):
        return v.x1, v.x2
    a, b = v
    return complex(a), complex(b)


def _lp(z, ctx):
    return log_phib(z, ctx)


def _scaled(pref: complex, res, with_error: bool):
    v = pref * res.value
    return (v, abs(pref) * res.error) if with_error else v


# ---------------------------------------------------------------------------
# Whittaker functions
# ---------------------------------------------------------------------------

def gg_integrand(lam, x, ctx: QdContext) -> QdIntegrand:
    """Integrand of the Gauss–Givental form, with 1/phi(x2 - r) rewritten by inversion."""
    l1, l2 = _pair(lam)
    x1, x2 = _pair(x)
    return QdIntegrand(num=(x2,), den=(x1 + ctx.c_b,), c2=-1j * PI,
                       c1=2j * PI * x2 + 2j * PI * (l1 - l2),
                       c0=-1j * PI * x2 * x2 - ctx.log_zeta_inv)


def whittaker_gg(lam, x, ctx: QdContext, tol: float = 1e-11, with_error: bool = False):
    """Psi_lambda(x) from the Gauss–Givental integral; ``with_error`` adds the quadrature estimate."""
    l1, l2 = _pair(lam)
    x1, x2 = _pair(x)
    pref = cmath.exp(1j * PI * ctx.c_b * (l2 - l1) + 2j * PI * l2 * (x1 + x2)) / ctx.zeta
    return _scaled(pref, integrate(gg_integrand(lam, x, ctx), None, ctx, tol), with_error)


def mb_integrand(lam, x, ctx: QdContext) -> QdIntegrand:
    l1, l2 = _pair(lam)
    x1, x2 = _pair(x)
    cb = ctx.c_b
    return QdIntegrand(num=(l1 - cb, l2 - cb), c1=2j * PI * (x1 - x2 - cb))


def whittaker_mb(lam, x, ctx: QdContext, tol: float = 1e-11, with_error: bool = False):
    """Psi_lambda(x) from the Mellin–Barnes integral."""
    l1, l2 = _pair(lam)
    x1, x2 = _pair(x)
    pref = ctx.zeta * cmath.exp(1j * PI * (l1 + l2) * (2 * x2 + ctx.c_b))
    return _scaled(pref, integrate(mb_integrand(lam, x, ctx), None, ctx, tol), with_error)


def tilde_integrand(lam, x, ctx: QdContext) -> QdIntegrand:
    """t-integrand of the entire renormalization, 1/phi(x21 - t) rewritten by inversion."""
    l1, l2 = _pair(lam)
    x1, x2 = _pair(x)
    x21 = x2 - x1
    return QdIntegrand(num=(x21,), den=(ctx.c_b,), c2=-1j * PI,
                       c1=2j * PI * x21 + 2j * PI * (l1 - l2),
                       c0=-1j * PI * x21 * x21 - ctx.log_zeta_inv)


def tilde_prefactor(lam, x, ctx: QdContext) -> complex:
    """zeta^-1 e^{pi i c_b (l2 - l1)} e^{2 pi i (l1 x1 + l2 x2)} phi(x2 - x1).

    No leading minus sign: with it the lattice values come out as -W_n W_nt.
    """
    l1, l2 = _pair(lam)
    x1, x2 = _pair(x)
    return cmath.exp(1j * PI * ctx.c_b * (l2 - l1) + 2j * PI * (l1 * x1 + l2 * x2)
                      + _lp(x2 - x1, ctx)) / ctx.zeta


def whittaker_tilde(lam, x, ctx: QdContext, tol: float = 1e-11, with_error: bool = False):
    """The entire function phi(x2 - x1) Psi_lambda(x), from its own integral."""
    return _scaled(tilde_prefactor(lam, x, ctx), integrate(tilde_integrand(lam, x, ctx), None, ctx, tol), with_error)


def richardson(values: Sequence[complex], eps: Sequence[float]) -> complex:
    """Value at eps = 0 of the interpolating polynomial through (eps_i, values_i)."""
    eps = np.asarray(eps, dtype=float)
    vals = np.asarray(values, dtype=complex)
    # Neville's scheme evaluated at 0
    p = list(vals)
    n = len(p)
    for k in range(1, n):
        for i in range(n - k):
            p[i] = (eps[i + k] * p[i] - eps[i] * p[i + 1]) / (eps[i + k] - eps[i])
    return complex(p[0])


def whittaker_lattice_point(n: qseries.GeneralizedPartition2, nt: qseries.GeneralizedPartition2,
                            ctx: QdContext, eps: float = 0.0) -> PositionPoint:
    """x = (c+_{n1, nt1}, c-_{n2, nt2} - eps)."""
    b = ctx.b
    x1 = qseries.SpecialPoint(n.n1, nt.n1, +1).value(b)
    x2 = qseries.SpecialPoint(n.n2, nt.n2, -1).value(b)
    return PositionPoint(x1, x2 - eps)


def whittaker_tilde_extrapolated(lam, n, nt, ctx: QdContext, offsets=EPS_OFFSETS, tol: float = 1e-12):
    """Limit of the entire Whittaker function at a lattice point via offsets and extrapolation."""
    vals = [whittaker_tilde(lam, whittaker_lattice_point(n, nt, ctx, e), ctx, tol) for e in offsets]
    return richardson(vals, offsets), vals


def whittaker_polynomial_value(lam, n, nt, ctx: QdContext) -> complex:
    """W_n(e^{2 pi b l}; q^-2) W_nt(e^{2 pi l / b}; qtilde^-2)."""
    l1, l2 = _pair(lam)
    b = ctx.b
    w1 = qseries.whittaker_poly(n, cmath.exp(2 * PI * b * l1), cmath.exp(2 * PI * b * l2), ctx.q ** -2)
    w2 = qseries.whittaker_poly(nt, cmath.exp(2 * PI * l1 / b), cmath.exp(2 * PI * l2 / b), ctx.qtilde ** -2)
    return complex(w1 * w2)


# ---------------------------------------------------------------------------
# Hallnäs–Ruijsenaars functions
# ---------------------------------------------------------------------------

def tau_minus(ctx: QdContext, tau=None) -> complex:
    return ctx.c_b / 2 - (ctx.tau if tau is None else tau)


def hr_integrand(mu, lam, ctx: QdContext, tau=None) -> QdIntegrand:
    m1, m2 = _pair(mu)
    l1, l2 = _pair(lam)
    m = (m1 - m2) / 2
    l = (l1 - l2) / 2
    tm = tau_minus(ctx, tau)
    return QdIntegrand(num=(-m - tm, m - tm), den=(-m + tm, m + tm), c1=-4j * PI * (l + tm))


def hr_prefactor(mu, lam, ctx: QdContext, tau=None) -> complex:
    m1, m2 = _pair(mu)
    l1, l2 = _pair(lam)
    tau = ctx.tau if tau is None else tau
    return cmath.exp(_lp(2 * tau, ctx) - 1j * PI * (l1 + l2) * (m1 + m2))


def hr_wavefunction(mu, lam, ctx: QdContext, tol: float = 1e-11, tau=None, with_error: bool = False):
    """P^tau_mu(lambda); ``tau`` overrides ctx.tau (it may be complex)."""
    f = hr_integrand(mu, lam, ctx, tau)
    return _scaled(hr_prefactor(mu, lam, ctx, tau), integrate(f, None, ctx, tol), with_error)


def hr_renorm_prefactor(mu, ctx: QdContext, tau=None) -> complex:
    m1, m2 = _pair(mu)
    m = (m1 - m2) / 2
    tau = ctx.tau if tau is None else tau
    tm = tau_minus(ctx, tau)
    return ctx.zeta * cmath.exp(-4j * PI * m * tm + _lp(-2 * m - ctx.c_b, ctx) - _lp(-2 * m - 2 * tau, ctx))


def hr_renormalized(mu, lam, ctx: QdContext, tol: float = 1e-11) -> complex:
    """zeta e^{-4 pi i mu tau_-} phi(-2mu - c_b)/phi(-2mu - 2tau) P^tau_mu(lambda)."""
    return hr_renorm_prefactor(mu, ctx) * hr_wavefunction(mu, lam, ctx, tol)


def mc_constant(ctx: QdContext, tau=None) -> complex:
    tau = ctx.tau if tau is None else tau
    return ctx.zeta_s / ctx.zeta * cmath.exp(-2j * PI * tau * tau)


def phi_matrix_coeff(mu, lam, ctx: QdContext, tol: float = 1e-11, tau=None) -> complex:
    """Phi^tau_mu(lambda) = zeta^-1 zeta_s e^{-2 pi i tau^2} P^tau_mu(lambda)."""
    return mc_constant(ctx, tau) * hr_wavefunction(mu, lam, ctx, tol, tau)


def macdonald_lattice_point(n, nt, ctx: QdContext, eps: float = 0.0) -> SpectralPoint:
    """mu = (-tau - c+_{n1, nt1} - eps, tau - c-_{n2, nt2} + eps)."""
    b = ctx.b
    cp = qseries.SpecialPoint(n.n1, nt.n1, +1).value(b)
    cm = qseries.SpecialPoint(n.n2, nt.n2, -1).value(b)
    return SpectralPoint(-ctx.tau - cp - eps, ctx.tau - cm + eps)


def hr_renormalized_extrapolated(lam, n, nt, ctx: QdContext, offsets=EPS_OFFSETS, tol: float = 1e-12):
    vals = [hr_renormalized(macdonald_lattice_point(n, nt, ctx, e), lam, ctx, tol) for e in offsets]
    return richardson(vals, offsets), vals


def macdonald_polynomial_value(lam, n, nt, ctx: QdContext) -> complex:
    """P_n(e^{2 pi b l}; e^{2 pi b(2tau + c_b)}, e^{2 pi i b^2}) times its b -> 1/b partner."""
    l1, l2 = _pair(lam)
    b = ctx.b
    tau = ctx.tau
    cb = ctx.c_b
    p1 = qseries.macdonald_poly(n, cmath.exp(2 * PI * b * l1), cmath.exp(2 * PI * b * l2),
                                cmath.exp(2 * PI * b * (2 * tau + cb)), cmath.exp(2j * PI * b * b))
    p2 = qseries.macdonald_poly(nt, cmath.exp(2 * PI * l1 / b), cmath.exp(2 * PI * l2 / b),
                                cmath.exp(2 * PI * (2 * tau + cb) / b), cmath.exp(2j * PI / (b * b)))
    return complex(p1 * p2)


# ---------------------------------------------------------------------------
# difference operators
# ---------------------------------------------------------------------------

@dataclass
class DifferenceOperator:
    """sum_k coeff_k(v) f(v + shift_k) for functions of two complex variables."""

    terms: List[Tuple[Callable[[complex, complex], complex], Tuple[complex, complex]]]
    name: str = ""

    def apply(self, f: Callable[[complex, complex], complex], v1: complex, v2: complex) -> complex:
        total = 0j
        for coeff, (s1, s2) in self.terms:
            c = coeff(v1, v2)
            if c != 0:
                total += c * f(v1 + s1, v2 + s2)
        return total

    @property
    def shifts(self):
        return [s for _, s in self.terms]


def _Lam(ctx, v):
    return cmath.exp(2 * PI * ctx.b * v)


def macdonald_operator(j: int, ctx: QdContext) -> DifferenceOperator:
    """M^tau_j in the spectral variables; T shifts lambda_j by i b."""
    ib = 1j * ctx.b
    t = ctx.t
    if j == 2:
        return DifferenceOperator([(lambda a, b_: 1.0, (ib, ib))], "M2")
    if j != 1:
        raise ValueError("j must be 1 or 2")

    def c1(l1, l2):
        L1, L2 = _Lam(ctx, l1), _Lam(ctx, l2)
        if abs(L1 - L2) < 1e-14 * abs(L1):
            raise CoefficientPole("Lambda_1 = Lambda_2")
        return (t * L1 - L2 / t) / (L1 - L2)

    def c2(l1, l2):
        L1, L2 = _Lam(ctx, l1), _Lam(ctx, l2)
        if abs(L1 - L2) < 1e-14 * abs(L1):
            raise CoefficientPole("Lambda_1 = Lambda_2")
        return (t * L2 - L1 / t) / (L2 - L1)

    return DifferenceOperator([(c1, (ib, 0)), (c2, (0, ib))], "M1")


def toda_hamiltonian(j: int, ctx: QdContext) -> DifferenceOperator:
    """Open Toda Hamiltonians in normal-ordered shift form (shifts by -i b)."""
    ib = 1j * ctx.b
    if j == 2:
        return DifferenceOperator([(lambda x1, x2: 1.0, (-ib, -ib))], "H2")
    if j != 1:
        raise ValueError("j must be 1 or 2")
    # scalar of the mixed term, fixed by the Weyl relation (see opalg.normal_order)
    from .opalg import toda_mixed_term_scalar
    k = toda_mixed_term_scalar()
    qk = ctx.q ** k
    return DifferenceOperator([
        (lambda x1, x2: 1.0, (0, -ib)),
        (lambda x1, x2: qk * cmath.exp(2 * PI * ctx.b * (x2 - x1)), (0, -ib)),
        (lambda x1, x2: 1.0, (-ib, 0)),
    ], "H1")


def dual_toda(j: int, n_twist: int, ctx: QdContext) -> DifferenceOperator:
    """Twisted dual Toda operator in the spectral variables."""
    ib = 1j * ctx.b
    q = ctx.q
    if j == 2:
        return macdonald_operator(2, ctx)
    if j != 1:
        raise ValueError("j must be 1 or 2")

    def c1(l1, l2):
        L1, L2 = _Lam(ctx, l1), _Lam(ctx, l2)
        if abs(L1 - L2) < 1e-14 * abs(L1):
            raise CoefficientPole("Lambda_1 = Lambda_2")
        return q ** n_twist * L1 ** n_twist / (1 - L1 / L2)

    def c2(l1, l2):
        L1, L2 = _Lam(ctx, l1), _Lam(ctx, l2)
        if abs(L1 - L2) < 1e-14 * abs(L1):
            raise CoefficientPole("Lambda_1 = Lambda_2")
        return q ** n_twist * L2 ** n_twist / (1 - L2 / L1)

    return DifferenceOperator([(c1, (ib, 0)), (c2, (0, ib))], f"H1,{n_twist}")


def e_sym(j: int, v, ctx: QdContext) -> complex:
    v1, v2 = _pair(v)
    L1, L2 = _Lam(ctx, v1), _Lam(ctx, v2)
    return L1 + L2 if j == 1 else L1 * L2


def toda_eigen_residual(j: int, lam, x, ctx: QdContext, rep: str = "mb", tol: float = 1e-11) -> float:
    """|H_j Psi - e_j Psi| / |e_j Psi|, every shifted value from a freshly built contour."""
    fn = whittaker_mb if rep == "mb" else whittaker_gg
    H = toda_hamiltonian(j, ctx)
    f = lambda a, b: fn(lam, (a, b), ctx, tol)
    x1, x2 = _pair(x)
    lhs = H.apply(f, x1, x2)
    rhs = e_sym(j, lam, ctx) * f(x1, x2)
    return abs(lhs - rhs) / abs(rhs)


def macdonald_eigen_residual(j: int, mu, lam, ctx: QdContext, tol: float = 1e-11) -> float:
    M = macdonald_operator(j, ctx)
    f = lambda a, b: phi_matrix_coeff(mu, (a, b), ctx, tol)
    l1, l2 = _pair(lam)
    lhs = M.apply(f, l1, l2)
    rhs = e_sym(j, mu, ctx) * f(l1, l2)
    return abs(lhs - rhs) / abs(rhs)


# ---------------------------------------------------------------------------
# measures
# ---------------------------------------------------------------------------

def sklyanin_measure(lam, ctx: QdContext) -> float:
    """2 sh(b (l1 - l2)) sh((l1 - l2)/b)."""
    l1, l2 = _pair(lam)
    d = (l1 - l2).real if isinstance(l1 - l2, complex) else l1 - l2
    b = ctx.b
    return 2 * math.sinh(b * d) * math.sinh(d / b)


def mr_measure(lam, g: complex, ctx: QdContext) -> complex:
    """S_2(i(l1 - l2)) S_2(i(l2 - l1) + g) with periods (b, 1/b)."""
    l1, l2 = _pair(lam)
    return double_sine_via_phib(1j * (l1 - l2), ctx) * double_sine_via_phib(1j * (l2 - l1) + g, ctx)


def coupling(ctx: QdContext) -> complex:
    """g = -i (c_b + 2 tau)."""
    return -1j * (ctx.c_b + 2 * ctx.tau)


# ---------------------------------------------------------------------------
# Harish-Chandra residue sums
# ---------------------------------------------------------------------------

@dataclass
class HCReport:
    side: str
    terms_residue: List[complex]
    terms_series: List[complex]
    max_rel_err: float
    truncation_ok: Optional[bool] = None

    def to_json(self):
        enc = lambda z: [complex(z).real, complex(z).imag]
        return {"side": self.side, "residue_terms": [enc(z) for z in self.terms_residue],
                "series_terms": [enc(z) for z in self.terms_series], "max_rel_err": self.max_rel_err,
                "truncation_ok": self.truncation_ok}


def whittaker_hc_terms(lam, x, ctx: QdContext, R: int):
    """(residue-route terms, series-route terms) for r = 0..R.

    A residue-route term is the contribution -2 pi i Res of the pole t_{r,0}
    to the entire Whittaker function when the contour is closed downwards.
    """
    l1, l2 = _pair(lam)
    x1, x2 = _pair(x)
    f = tilde_integrand(lam, x, ctx)
    pref = tilde_prefactor(lam, x, ctx)
    res_terms = [-pref * residue_sum(f, [-1j * r * ctx.b], ctx) for r in range(R + 1)]
    x1p = x1 - ctx.c_b / 2
    x2p = x2 + ctx.c_b / 2
    q = ctx.q
    L12 = cmath.exp(2 * PI * ctx.b * (l1 - l2))
    X = cmath.exp(2 * PI * ctx.b * (x2p - x1p))
    spref = cmath.exp(2j * PI * (l1 * x1p + l2 * x2p))
    coeffs = qseries.hc_whittaker_coefficients(R, X, q)
    ser_terms = [spref * c * L12 ** r for r, c in enumerate(coeffs)]
    return res_terms, ser_terms


def macdonald_hc_terms(mu, lam, ctx: QdContext, R: int, sign: int = +1):
    """Contributions -2 pi i Res of the poles x^{+-}_{r,0}, r = 0..R, with the prefactor."""
    m1, m2 = _pair(mu)
    m = (m1 - m2) / 2
    tm = tau_minus(ctx)
    f = hr_integrand(mu, lam, ctx)
    pref = hr_prefactor(mu, lam, ctx)
    base = sign * m + tm - ctx.c_b
    return [-pref * residue_sum(f, [base - 1j * r * ctx.b], ctx) for r in range(R + 1)]


def _macdonald_hc_core(mu, lam, ctx: QdContext, R: int, sign: int):
    """Series terms of the x^{+-}_{r,0} contribution without the phi ratio in front."""
    m1, m2 = _pair(mu)
    if sign < 0:
        m1, m2 = m2, m1
    l1, l2 = _pair(lam)
    b = ctx.b
    tau = ctx.tau
    tm = tau_minus(ctx)
    tp = ctx.c_b / 2 + tau
    mp1, mp2 = m1 - tp, m2 + tp
    L21 = cmath.exp(2 * PI * b * (l2 - l1))
    M12 = cmath.exp(2 * PI * b * (m1 - m2))
    lead = (ctx.zeta * ctx.zeta_inv * cmath.exp(4j * PI * tau * tau + 2j * PI * tm * (mp2 - mp1))
            * cmath.exp(-2j * PI * (l1 * mp1 + l2 * mp2)))
    coeffs = qseries.hc_macdonald_coefficients(R, M12, ctx.q, ctx.t)
    return [lead * c * L21 ** r for r, c in enumerate(coeffs)], m1 - m2


def macdonald_hc_series_terms(mu, lam, ctx: QdContext, R: int, sign: int = +1):
    """Series route for the contribution of x^{+-}_{r,0}; ``sign=-1`` swaps mu1 and mu2."""
    core, d = _macdonald_hc_core(mu, lam, ctx, R, sign)
    ratio = cmath.exp(_lp(d - 2 * ctx.tau, ctx) - _lp(d - ctx.c_b, ctx))
    return [ratio * c for c in core]


def macdonald_hc_renormalized_minus(mu, lam, ctx: QdContext, R: int) -> complex:
    """Renormalized contribution of the x^-_{r,0} poles, summed to order R.

    The phi ratio of the series cancels the one in the renormalization, so
    this stays finite on the lattice where each factor alone is singular.
    """
    m1, m2 = _pair(mu)
    m = (m1 - m2) / 2
    core, _ = _macdonald_hc_core(mu, lam, ctx, R, -1)
    return ctx.zeta * cmath.exp(-4j * PI * m * tau_minus(ctx)) * sum(core)


def _shift_factor(z):
    """phi(w)/phi(w + i b) = 1 + q e^{2 pi b w}, with z standing for q e^{2 pi b w}."""
    return 1 + z


def whittaker_chain_ratio(r: int, q, X, L):
    """(num, den) of the ratio of the t_{r,0} and t_{r-1,0} contributions.

    Read off the integrand with phi(w)/phi(w + i b) = 1 + q e^{2 pi b w};
    ``X`` = e^{2 pi b (x2 - x1)}, ``L`` = Lambda_{1,2}. Works on symbols and
    on exact rationals alike.
    """
    num = _shift_factor(q ** (1 - 2 * r) / X)  # phi(t - x21)
    den = _shift_factor(-q ** (-2 * r))  # the pinching phi(t - c_b)
    return L * X * q ** (2 * r - 1) * num, den


def macdonald_chain_ratio(r: int, q, t, M, L):
    """(num, den) of the ratio of the x^+_{r,0} and x^+_{r-1,0} contributions.

    ``M`` = e^{2 pi b (mu1 - mu2)}, ``L`` = Lambda_{2,1}.
    """
    n1 = _shift_factor(-M * q ** (2 - 2 * r) / t ** 2)
    n2 = _shift_factor(-q ** (2 - 2 * r) / t ** 2)
    d1 = _shift_factor(-M * q ** (-2 * r))
    d2 = _shift_factor(-q ** (-2 * r))
    return L * t ** 2 * n1 * n2, q ** 2 * d1 * d2


def _chain(ratio: Callable[[int], Tuple[object, object]], R: int) -> list:
    num, den = as_exact(1), as_exact(1)
    out = [QRational(num, den)]
    for r in range(1, R + 1):
        a, d = ratio(r)
        num, den = num * a, den * d
        out.append(QRational(num, den, reduce=False))
    return out


@dataclass
class HCExactReport:
    side: str
    R: int
    steps_ok: bool
    full_R: int
    full_ok: bool
    points_ok: bool

    @property
    def ok(self) -> bool:
        return self.steps_ok and self.full_ok and self.points_ok

    def to_json(self):
        return {"side": self.side, "R": self.R, "steps_ok": self.steps_ok, "full_R": self.full_R,
                "full_ok": self.full_ok, "points_ok": self.points_ok, "ok": self.ok}


HC_EXACT_POINTS = ((2, 3, 5, 7), (3, -2, 7, 11), (5, 7, -3, 2))


def harish_chandra_exact_check(side: str, R: int = 12, full_R: int = 6,
                               points=HC_EXACT_POINTS) -> HCExactReport:
    """Exact comparison of residue-chain and series coefficients.

    Three exact routes: the ratio of consecutive terms for every r <= R as
    rational functions (with c_0 = 1 on both sides this fixes every term),
    whole coefficients as rational functions for r <= full_R, and whole
    coefficients at exact rational specializations for r <= R.
    """
    if side == "whittaker":
        ratio = whittaker_chain_ratio

        def step(r, q, X, L):
            n, d = qseries.hc_whittaker_step(r, -q * X, q)
            return L * n, d

        def coeffs(n, q, X, L):
            return [c * L ** r for r, c in enumerate(qseries.hc_whittaker_coefficients(n, -q * X, q))]

        names = ("q", "X", "L")
    elif side == "macdonald":
        ratio = macdonald_chain_ratio

        def step(r, q, t, M, L):
            n, d = qseries.hc_macdonald_step(r, M, q, t)
            return L * n, d

        def coeffs(n, q, t, M, L):
            return [c * L ** r for r, c in enumerate(qseries.hc_macdonald_coefficients(n, M, q, t))]

        names = ("q", "t", "M", "L")
    else:
        raise ValueError("side must be 'whittaker' or 'macdonald'")
    syms = [var(n) for n in names]
    steps_ok = True
    for r in range(1, R + 1):
        sn, sd = step(r, *syms)
        steps_ok &= QRational(*ratio(r, *syms)) == QRational.coerce(sn) / sd
    chain = _chain(lambda r: ratio(r, *syms), full_R)
    full_ok = all(a == b for a, b in zip(chain, coeffs(full_R, *syms)))
    points_ok = True
    for pt in points:
        vals = [Fraction(v) for v in pt[:len(names)]]
        chain = _chain(lambda r: ratio(r, *vals), R)
        points_ok &= all(a == b for a, b in zip(chain, coeffs(R, *vals)))
    return HCExactReport(side, R, steps_ok, full_R, full_ok, points_ok)


def macdonald_truncation_exact(width: int, R: int) -> bool:
    """At M = t^2 q^{2 width} the series coefficients vanish exactly past r = width."""
    q, t = var("q"), var("t")
    co = qseries.hc_macdonald_coefficients(R, t ** 2 * q ** (2 * width), q, t)
    return (all(not QRational.coerce(c).is_zero() for c in co[:width + 1])
            and all(QRational.coerce(c).is_zero() for c in co[width + 1:]))


def harish_chandra_residue_check(side: str, params: dict, ctx: QdContext, R: int = 12) -> HCReport:
    """Compare closed-form residue sums with the Harish-Chandra series term by term."""
    if side == "whittaker":
        res, ser = whittaker_hc_terms(params["lambda"], params["x"], ctx, R)
    elif side == "macdonald":
        res = macdonald_hc_terms(params["mu"], params["lambda"], ctx, R, params.get("sign", +1))
        ser = macdonald_hc_series_terms(params["mu"], params["lambda"], ctx, R, params.get("sign", +1))
    else:
        raise ValueError("side must be 'whittaker' or 'macdonald'")
    scale = max(abs(z) for z in ser) or 1.0
    err = max(abs(a - b) for a, b in zip(res, ser)) / scale
    return HCReport(side, res, ser, err)


# ---------------------------------------------------------------------------
# suite
# ---------------------------------------------------------------------------

@dataclass
class WaveCheck:
    group: str
    name: str
    params: dict
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tol)

    def to_json(self):
        def enc(v):
            if isinstance(v, (complex, float, int)) and not isinstance(v, bool):
                v = complex(v)
                return [v.real, v.imag]
            if isinstance(v, (tuple, list)):
                return [enc(u) for u in v]
            return v
        return {"group": self.group, "check": self.name,
                "params": {k: enc(v) for k, v in self.params.items()},
                "residual": self.residual, "tol": self.tol, "pass": self.passed}


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / abs(b)


def _real_pair(rng, lo=-0.5, hi=0.5):
    return (float(rng.uniform(lo, hi)), float(rng.uniform(lo, hi)))


def symmetry_residuals(mu, lam, ctx: QdContext, tol: float = 1e-11) -> dict:
    """Relative residuals of the symmetry and duality laws of P and Phi at real (mu, lam)."""
    tau = ctx.tau
    st = lambda v: (-v[1], -v[0])
    P = hr_wavefunction(mu, lam, ctx, tol)
    F = mc_constant(ctx) * P
    out = {
        "P_swap_lambda": _rel(hr_wavefunction(mu, lam[::-1], ctx, tol), P),
        "P_swap_mu": _rel(hr_wavefunction(mu[::-1], lam, ctx, tol), P),
        "P_bispectral": _rel(hr_wavefunction(lam, mu, ctx, tol, tau=-tau), P),
    }
    Pc = hr_wavefunction(mu, st(lam), ctx, tol, tau=-tau)
    out["P_conjugation"] = _rel(P.conjugate(), Pc / ctx.zeta_inv * cmath.exp(-4j * PI * tau * tau))
    out["Phi_duality"] = _rel(phi_matrix_coeff(lam, mu, ctx, tol, tau=-tau), F)
    out["Phi_conjugation"] = _rel(F.conjugate(), mc_constant(ctx, -tau) * Pc)
    return out


def imaginary_tau_residual(mu, lam, tau: complex, ctx: QdContext, tol: float = 1e-11) -> float:
    """P^tau_mu(-lam) = zeta_inv e^{4 pi i tau^2} conj(P^tau_mu(lam)) for imaginary tau."""
    P = hr_wavefunction(mu, lam, ctx, tol, tau=tau)
    Pm = hr_wavefunction(mu, (-lam[0], -lam[1]), ctx, tol, tau=tau)
    return _rel(Pm, ctx.zeta_inv * cmath.exp(4j * PI * tau * tau) * P.conjugate())


def lattice_pairs(max_width: int, max_width_tilde: int, offsets=(0, -1)):
    """(n, nt) with n2 - n1 <= max_width and nt2 - nt1 <= max_width_tilde."""
    G = qseries.GeneralizedPartition2
    out = []
    for n1 in offsets:
        for w in range(max_width + 1):
            for wt in range(max_width_tilde + 1):
                out.append((G(n1, n1 + w), G(0, wt)))
    return out


def wavefun_suite(ctx: Optional[QdContext] = None, seed: int = 0, points: int = 10,
                  quick: bool = False) -> List[WaveCheck]:
    """All wavefunction checks: representations, eigen-equations, symmetries,
    lattice values and Harish-Chandra sums, at seeded random real points."""
    ctx = ctx or QdContext(b=0.8, tau=0.13)
    rng = np.random.default_rng(seed)
    npts = 3 if quick else points
    out: List[WaveCheck] = []

    for _ in range(2 if quick else 20):
        lam, x = _real_pair(rng), _real_pair(rng)
        out.append(WaveCheck("representations", "gg_equals_mb", {"lambda": lam, "x": x},
                             _rel(whittaker_gg(lam, x, ctx), whittaker_mb(lam, x, ctx)), 1e-8))
    st = lambda v: (-v[1], -v[0])
    for _ in range(npts):
        lam, x = _real_pair(rng), _real_pair(rng)
        out.append(WaveCheck("representations", "star_cross_identity", {"lambda": lam, "x": x},
                             _rel(whittaker_gg(st(lam), x, ctx), whittaker_mb(lam, st(x), ctx)), 1e-8))

    for _ in range(npts):
        lam, x = _real_pair(rng), _real_pair(rng)
        for j in (1, 2):
            out.append(WaveCheck("eigen", f"toda_H{j}", {"lambda": lam, "x": x},
                                 toda_eigen_residual(j, lam, x, ctx), 1e-6))
    for _ in range(npts):
        mu, lam = _real_pair(rng), _real_pair(rng)
        for j in (1, 2):
            out.append(WaveCheck("eigen", f"macdonald_M{j}", {"mu": mu, "lambda": lam},
                                 macdonald_eigen_residual(j, mu, lam, ctx), 1e-6))

    for _ in range(npts):
        mu, lam = _real_pair(rng), _real_pair(rng)
        for name, res in symmetry_residuals(mu, lam, ctx).items():
            out.append(WaveCheck("symmetry", name, {"mu": mu, "lambda": lam}, res, 1e-8))
        out.append(WaveCheck("symmetry", "macdonald_eigenvalue_e1", {"mu": mu, "lambda": lam},
                             macdonald_eigen_residual(1, mu, lam, ctx), 1e-8))
        tau = 1j * float(rng.uniform(0.05, 0.3))
        out.append(WaveCheck("symmetry", "imaginary_tau_conjugation", {"mu": mu, "lambda": lam, "tau": tau},
                             imaginary_tau_residual(mu, lam, tau, ctx), 1e-8))

    lam = (0.3, -0.2)
    pairs = lattice_pairs(1, 0, (0,)) if quick else lattice_pairs(2, 1)
    for n, nt in pairs:
        p = {"lambda": lam, "n": (n.n1, n.n2), "nt": (nt.n1, nt.n2)}
        v, _ = whittaker_tilde_extrapolated(lam, n, nt, ctx)
        out.append(WaveCheck("lattice", "whittaker_lattice_value", p,
                             _rel(v, whittaker_polynomial_value(lam, n, nt, ctx)), 1e-4))
        v, _ = hr_renormalized_extrapolated(lam, n, nt, ctx)
        out.append(WaveCheck("lattice", "macdonald_lattice_value", p,
                             _rel(v, macdonald_polynomial_value(lam, n, nt, ctx)), 1e-4))

    R = 12
    x = (0.1, 0.4)
    mu = (0.25 + 0.02j, -0.1)
    rep = harish_chandra_residue_check("whittaker", {"lambda": (-0.2, 0.3), "x": x}, ctx, R)
    out.append(WaveCheck("harish_chandra", "whittaker_terms", {"R": R}, rep.max_rel_err, 1e-8))
    for sign in (+1, -1):
        rep = harish_chandra_residue_check("macdonald", {"mu": mu, "lambda": (0.3, -0.2), "sign": sign}, ctx, R)
        out.append(WaveCheck("harish_chandra", f"macdonald_terms_{'plus' if sign > 0 else 'minus'}",
                             {"R": R}, rep.max_rel_err, 1e-8))
    for side in ("whittaker", "macdonald"):
        ex = harish_chandra_exact_check(side, R)
        out.append(WaveCheck("harish_chandra", f"{side}_exact", {"R": R}, 0.0 if ex.ok else 1.0, 0.0))
    G = qseries.GeneralizedPartition2
    for w in range(4):
        ok = macdonald_truncation_exact(w, R)
        n, z = G(0, w), G(0, 0)
        num = macdonald_hc_renormalized_minus(macdonald_lattice_point(n, z, ctx), lam, ctx, R)
        out.append(WaveCheck("harish_chandra", "macdonald_truncation", {"width": w},
                             _rel(num, macdonald_polynomial_value(lam, n, z, ctx)) if ok else 1.0, 1e-8))
    return out
