"""q-Pochhammer symbols, q-binomials, GL(2) Whittaker and Macdonald polynomials,
basic hypergeometric partial sums and Harish-Chandra series truncations.

Functions accept either exact values (``int``, ``Fraction``, ``LaurentPoly``,
``QRational``) or floating/complex numbers; arithmetic is written once and
stays exact whenever the inputs are exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DegenerateParameter, NonConvergent
from .laurent import LaurentPoly, QRational, is_exact

Q = LaurentPoly.gen("q")


@dataclass(frozen=True)
class GeneralizedPartition2:
    n1: int
    n2: int

    def __post_init__(self):
        if not (isinstance(self.n1, int) and isinstance(self.n2, int)):
            raise TypeError("partition parts must be integers")
        if self.n1 > self.n2:
            raise ValueError(f"need n1 <= n2, got {self.n1} > {self.n2}")

    @property
    def width(self) -> int:
        return self.n2 - self.n1


@dataclass(frozen=True)
class SpecialPoint:
    """c^{+-}_{r,s} = +-c_b/2 - i r b - i s/b."""

    r: int
    s: int
    sign: int

    def value(self, b: float) -> complex:
        cb = 0.5j * (b + 1 / b)
        return self.sign * cb / 2 - 1j * self.r * b - 1j * self.s / b


def _is_zero(x) -> bool:
    if isinstance(x, (LaurentPoly, QRational)):
        return x.is_zero()
    return x == 0


def _is_tiny(x, scale=1.0) -> bool:
    if is_exact(x):
        return _is_zero(x)
    return abs(x) <= 1e-13 * max(1.0, abs(scale))


def _ipow(x, k: int):
    """x**k that stays exact: negative powers of non-monomials become QRational."""
    if k >= 0:
        return x ** k if k else (LaurentPoly.const(1) if is_exact(x) else 1.0)
    if isinstance(x, LaurentPoly) and not x.is_monomial():
        return QRational(LaurentPoly.const(1), x ** (-k))
    if isinstance(x, int):
        return Fraction(1, x ** (-k))
    return x ** k


def qpoch(X, q, n: int):
    """(X; q)_n = prod_{k<n} (1 - q^k X)."""
    if n < 0:
        raise ValueError("qpoch needs n >= 0")
    out = LaurentPoly.const(1) if (is_exact(X) and is_exact(q)) else 1.0
    qk = LaurentPoly.const(1) if is_exact(q) else 1.0
    for _ in range(n):
        out = out * (1 - qk * X)
        qk = qk * q
    return out


def qpoch_inf(X, q, tol: float = 1e-16, max_terms: int = 200000):
    """(X; q)_infinity for |q| < 1 (floating point)."""
    q = complex(q)
    X = complex(X)
    if abs(q) >= 1:
        raise NonConvergent("(X;q)_inf needs |q| < 1")
    out = 1.0 + 0j
    qk = 1.0 + 0j
    for _ in range(max_terms):
        term = qk * X
        out *= 1 - term
        qk *= q
        if abs(qk * X) < tol * 1e-2 and abs(qk) < 0.5:
            return out
    raise NonConvergent("(X;q)_inf did not converge")


@lru_cache(maxsize=None)
def _qbinom_poly(n: int, k: int) -> LaurentPoly:
    if k == 0 or k == n:
        return LaurentPoly.const(1)
    return _qbinom_poly(n - 1, k - 1) + Q ** k * _qbinom_poly(n - 1, k)


def qbinom(n: int, k: int, q=None):
    """Gaussian binomial coefficient.

    Without ``q`` (or with the symbol q) the exact polynomial is returned as a
    QRational; otherwise the polynomial is evaluated at ``q``.
    """
    if not (isinstance(n, int) and isinstance(k, int)) or not (0 <= k <= n):
        raise IndexError(f"qbinom needs 0 <= k <= n, got n={n}, k={k}")
    p = _qbinom_poly(n, k)
    if q is None or (isinstance(q, LaurentPoly) and q == Q):
        return QRational(p)
    if is_exact(q):
        return QRational.coerce(p.subs({"q": q}))
    return p.evaluate({"q": q})


def whittaker_poly(n: GeneralizedPartition2, z1, z2, q):
    """W_n(z; q) = sum_k binom(n2-n1, k)_q z1^(n1+k) z2^(n2-k)."""
    w = n.width
    total = 0
    for k in range(w + 1):
        total = total + qbinom(w, k, q) * _ipow(z1, n.n1 + k) * _ipow(z2, n.n2 - k)
    return total


def macdonald_coefficients(width: int, t, q) -> list:
    """Coefficients c_r, r = 0..width, of x1^(n1+r) x2^(n2-r) in P_n(x; t, q)."""
    qi = _ipow(q, -1)
    out = []
    for r in range(width + 1):
        num = qpoch(_ipow(q, width), qi, r) * qpoch(t, q, r)
        den = qpoch(_ipow(q, width - 1) * t, qi, r) * qpoch(q, q, r)
        if _is_tiny(den):
            raise DegenerateParameter(f"Macdonald coefficient r={r} has a vanishing denominator")
        if is_exact(num) and is_exact(den):
            out.append(QRational.coerce(num) / QRational.coerce(den))
        else:
            out.append(num / den)
    return out


def macdonald_poly(n: GeneralizedPartition2, x1, x2, t, q):
    """Symmetric GL(2) Macdonald polynomial P_n(x; t, q)."""
    total = 0
    for r, c in enumerate(macdonald_coefficients(n.width, t, q)):
        total = total + c * _ipow(x1, n.n1 + r) * _ipow(x2, n.n2 - r)
    return total


@dataclass
class SeriesResult:
    value: complex
    tail: float
    terms: int
    terminated: bool = False
    nonconvergent: bool = False


def two_psi_one(a, b, c, z, q, N: int) -> SeriesResult:
    """Partial sum over n <= N of (a;q)_n (b;q)_n / ((c;q)_n (q;q)_n) z^n.

    The series stops early when a numerator Pochhammer vanishes (terminating
    case).  The tail estimate assumes a geometric tail with the last term ratio;
    ``nonconvergent`` is set when that ratio is not below 1.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    term = 1.0 + 0j
    total = term
    count = 1
    last_ratio = 0.0
    terminated = False
    for n in range(N):
        num = (1 - a * q ** n) * (1 - b * q ** n)
        den = (1 - c * q ** n) * (1 - q ** (n + 1))
        if abs(num) < 1e-15:
            terminated = True
            break
        if abs(den) < 1e-300:
            raise DegenerateParameter("2psi1 denominator vanishes")
        ratio = num / den * z
        term = term * ratio
        total += term
        count += 1
        last_ratio = abs(ratio)
    if not terminated and N > 0:
        an = a * q ** N
        bn = b * q ** N
        num = (1 - an) * (1 - bn)
        if abs(num) < 1e-15:
            terminated = True
    if terminated:
        return SeriesResult(complex(total), 0.0, count, terminated=True)
    if N == 0:
        return SeriesResult(complex(total), float("nan"), 1)
    nonconv = last_ratio >= 1
    tail = float("inf") if nonconv else abs(term) * last_ratio / (1 - last_ratio)
    return SeriesResult(complex(total), tail, count, nonconvergent=nonconv)


def heine_rhs(a, b, c, q):
    """Product side of Heine's summation at z = c/(ab)."""
    return (qpoch_inf(c / a, q) * qpoch_inf(c / b, q)) / (qpoch_inf(c, q) * qpoch_inf(c / (a * b), q))


def qbinomial_theorem_rhs(a, z, q):
    return qpoch_inf(a * z, q) / qpoch_inf(z, q)


# ---------------------------------------------------------------------------
# Harish-Chandra series
# ---------------------------------------------------------------------------

def hc_whittaker_coefficients(R: int, X, q) -> list:
    """c_r = (X; q^2)_r / (q^{-2r}; q^2)_r for r = 0..R."""
    q2 = q * q
    out = []
    for r in range(R + 1):
        num = qpoch(X, q2, r)
        den = qpoch(_ipow(q, -2 * r), q2, r) if r else (LaurentPoly.const(1) if is_exact(q) else 1.0)
        if _is_tiny(den):
            raise DegenerateParameter(f"(q^-2r; q^2)_r vanishes at r={r}")
        if is_exact(num) and is_exact(den):
            out.append(QRational.coerce(num) / QRational.coerce(den))
        else:
            out.append(num / den)
    return out


def hc_whittaker_step(r: int, X, q):
    """(num, den) with c_r / c_{r-1} = num / den, read off the Pochhammer factors."""
    if r < 1:
        raise ValueError("step needs r >= 1")
    return 1 - _ipow(q, 2 * (r - 1)) * X, 1 - _ipow(q, -2 * r)


def hc_whittaker_series(lam1: complex, lam2: complex, x1p: complex, x2p: complex, b: float, R: int) -> SeriesResult:
    """Lambda_1^{i x1'/b} Lambda_2^{i x2'/b} sum_{r<=R} Lambda_12^r (X'_21; q^2)_r / (q^{-2r}; q^2)_r.

    With Lambda_j = exp(2 pi b lambda_j) the prefactor is exp(2 pi i (lambda_1 x1' + lambda_2 x2')).
    """
    q = cmath.exp(1j * math.pi * b * b)
    L12 = cmath.exp(2 * math.pi * b * (lam1 - lam2))
    X = cmath.exp(2 * math.pi * b * (x2p - x1p))
    pref = cmath.exp(2j * math.pi * (lam1 * x1p + lam2 * x2p))
    coeffs = hc_whittaker_coefficients(R, X, q)
    terms = [c * L12 ** r for r, c in enumerate(coeffs)]
    total = sum(terms)
    terminated = R >= 1 and any(abs(qpoch(X, q * q, r)) < 1e-13 for r in range(1, R + 1))
    tail = 0.0 if terminated else (abs(terms[-1]) * abs(L12) / max(1e-300, 1 - abs(L12)) if abs(L12) < 1 else float("inf"))
    return SeriesResult(pref * total, abs(pref) * tail, R + 1, terminated=terminated)


def hc_macdonald_coefficients(R: int, M, q, t) -> list:
    """c_r = (t^-2 M; q^-2)_r (t^2; q^2)_r / ((q^-2 M; q^-2)_r (q^2; q^2)_r)."""
    q2 = q * q
    qm2 = _ipow(q, -2)
    tm2 = _ipow(t, -2)
    t2 = t * t
    out = []
    for r in range(R + 1):
        num = qpoch(tm2 * M, qm2, r) * qpoch(t2, q2, r)
        den = qpoch(qm2 * M, qm2, r) * qpoch(q2, q2, r)
        if _is_tiny(den):
            raise DegenerateParameter(f"Harish-Chandra denominator vanishes at r={r}")
        if is_exact(num) and is_exact(den):
            out.append(QRational.coerce(num) / QRational.coerce(den))
        else:
            out.append(num / den)
    return out


def hc_macdonald_step(r: int, M, q, t):
    """(num, den) with c_r / c_{r-1} = num / den for the Macdonald-side coefficients."""
    if r < 1:
        raise ValueError("step needs r >= 1")
    k = r - 1
    num = (1 - _ipow(t, -2) * M * _ipow(q, -2 * k)) * (1 - t * t * _ipow(q, 2 * k))
    den = (1 - M * _ipow(q, -2 * r)) * (1 - _ipow(q, 2 * r))
    return num, den


def hc_macdonald_series(Lambda, M, q, t, R: int) -> SeriesResult:
    """P_{q,t}(Lambda | M) truncated at order R."""
    coeffs = hc_macdonald_coefficients(R, M, q, t)
    terms = [c * Lambda ** r for r, c in enumerate(coeffs)]
    total = sum(terms)
    aL = abs(Lambda)
    tail = abs(terms[-1]) * aL / (1 - aL) if aL < 1 else float("inf")
    return SeriesResult(complex(total), tail, R + 1)
