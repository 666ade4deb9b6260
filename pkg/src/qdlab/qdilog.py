"""Non-compact quantum dilogarithm, Barnes double sine and compact dilogarithm.

``log_phib`` evaluates the defining integral

    log phi_b(z) = 1/4 * int_C exp(-2izt) / (sh(bt) sh(t/b)) dt / t

directly whenever |Im z| <= b/2 and Re z <= 0.  Every other argument is
reduced to that region first: points with Re z > 0 use the inversion relation
phi(z) phi(-z) = zeta_inv exp(pi i z^2), and points outside the band are walked
into it with the functional equation, one step of i*b at a time.

The contour C runs along two rays and a small semicircle over the origin.  The
rays are rotated off the real axis by pi/4 so that the oscillating factor
exp(-2izt) decays instead of oscillating; with Re z <= 0 both rays turn into
the upper half plane, which contains no singularities with Re t != 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

import mpmath
import numpy as np

from .errors import AccuracyLoss, ConfigError, NonConvergent, PoleHit

PI = math.pi
THETA = PI / 4
MAX_SHIFTS = 64
POLE_GUARD = 1e-8
_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)
_FAR_LEFT = -40.0
_CHUNK = 256


@dataclass(frozen=True)
class QdContext:
    """Immutable bundle of the modular parameter b and derived constants.

    ``b`` must be positive and different from 1.  Values above 1 are accepted
    so that the b <-> 1/b symmetry can be exercised with a genuinely different
    shift chain.
    """

    b: float
    tau: float = 0.0
    rel_tol: float = 1e-12
    precision: str = "double"

    def __post_init__(self):
        b = self.b
        if not isinstance(b, (int, float)) or not math.isfinite(b) or b <= 0:
            raise ConfigError(f"b must be a positive real number, got {b!r}")
        if abs(b - 1.0) < 1e-9:
            raise ConfigError("b = 1 gives double poles and is not supported")
        if not math.isfinite(self.tau):
            raise ConfigError("tau must be finite")
        if not (0 < self.rel_tol < 1):
            raise ConfigError("rel_tol must lie in (0, 1)")
        if self.precision not in ("double", "extended"):
            raise ConfigError("precision must be 'double' or 'extended'")

    def replace(self, **kw) -> "QdContext":
        d = dict(b=self.b, tau=self.tau, rel_tol=self.rel_tol, precision=self.precision)
        d.update(kw)
        return QdContext(**d)

    @property
    def q(self) -> complex:
        return cmath.exp(1j * PI * self.b ** 2)

    @property
    def qtilde(self) -> complex:
        return cmath.exp(1j * PI / self.b ** 2)

    @property
    def c_b(self) -> complex:
        return 0.5j * (self.b + 1.0 / self.b)

    @property
    def zeta(self) -> complex:
        return cmath.exp(1j * PI * (1 - 4 * self.c_b ** 2) / 12)

    @property
    def zeta_s(self) -> complex:
        return cmath.exp(1j * PI * (1 - self.c_b ** 2) / 6)

    @property
    def zeta_inv(self) -> complex:
        return self.zeta ** -2 * cmath.exp(-1j * PI * self.c_b ** 2)

    @property
    def log_zeta_inv(self) -> complex:
        # zeta^-2 exp(-pi i c_b^2) collapses to exp(pi i (b^2 + b^-2) / 12)
        return 1j * PI * (self.b ** 2 + self.b ** -2) / 12

    @property
    def t(self) -> complex:
        return cmath.exp(PI * self.b * (2 * self.tau + self.c_b))

    @property
    def pole_guard(self) -> float:
        return POLE_GUARD * self.c_b.imag


@dataclass(frozen=True)
class PoleZeroLattice:
    """Points apex + sign*(i b m + i n / b), m, n >= 0.

    Poles of phi(z - a) ascend from a + c_b (sign = +1); zeros of phi(z - a),
    equivalently poles of 1/phi(z - a), descend from a - c_b (sign = -1).
    """

    kind: str
    apex: complex
    b: float

    @property
    def sign(self) -> int:
        return 1 if self.kind == "pole" else -1

    def point(self, m: int, n: int) -> complex:
        return self.apex + self.sign * 1j * (self.b * m + n / self.b)

    def points(self, max_height: float) -> List[Tuple[complex, int, int]]:
        """All lattice points within vertical distance ``max_height`` of the apex."""
        out = []
        b = self.b
        mmax = int(max_height / b) + 1
        for m in range(mmax + 1):
            nmax = int((max_height - b * m) * b) + 1
            for n in range(max(nmax, 0) + 1):
                h = b * m + n / b
                if h <= max_height + 1e-12:
                    out.append((self.point(m, n), m, n))
        out.sort(key=lambda p: (self.sign * p[0].imag))
        return out

    def order_at(self, z: complex, guard: float = 1e-9) -> int:
        """Number of (m, n) representations of z (its multiplicity)."""
        d = (z - self.apex) * self.sign
        if abs(d.real) > guard or d.imag < -guard:
            return 0
        v = d.imag
        count = 0
        b = self.b
        for m in range(int(v / b + 1e-9) + 1):
            n = round((v - b * m) * b)
            if n >= 0 and abs(v - b * m - n / b) < guard:
                count += 1
        return count


def phi_poles(ctx: QdContext) -> PoleZeroLattice:
    return PoleZeroLattice("pole", ctx.c_b, ctx.b)


def phi_zeros(ctx: QdContext) -> PoleZeroLattice:
    return PoleZeroLattice("zero", -ctx.c_b, ctx.b)


def near_pole(z: complex, ctx: QdContext) -> bool:
    return phi_poles(ctx).order_at(z, ctx.pole_guard) > 0


# ---------------------------------------------------------------------------
# double precision quadrature of the defining integral
# ---------------------------------------------------------------------------

def _log1p_safe(X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=complex)
    out = np.empty_like(X)
    a = np.abs(X)
    small = a < 0.5
    big = a > 1e8
    mid = ~(small | big)
    out[small] = np.log1p(X[small])
    out[mid] = np.log(1 + X[mid])
    with np.errstate(divide="ignore"):
        out[big] = np.log(X[big]) + np.log1p(1 / X[big])
    return out


def _cosech_pair(t: np.ndarray, b: float) -> np.ndarray:
    """1/(t sh(bt) sh(t/b)) evaluated without overflow."""
    s = np.where(t.real >= 0, 1.0, -1.0)
    u = s * t
    bb = b + 1.0 / b
    return 4.0 * np.exp(-bb * u) / (t * (-np.expm1(-2 * b * u)) * (-np.expm1(-2 * u / b)))


def _ray_panels(r0: float, S: float, h: float) -> np.ndarray:
    edges = [0.0]
    w = r0 / 2
    while edges[-1] < S and w < h:
        edges.append(edges[-1] + w)
        w *= 2
    while edges[-1] < S:
        edges.append(edges[-1] + h)
    return np.array(edges)


def _gl_on_edges(edges: np.ndarray):
    a, b = edges[:-1], edges[1:]
    half = (b - a)[:, None] / 2
    mid = (a + b)[:, None] / 2
    x = (mid + half * _GL_X[None, :]).ravel()
    w = (half * _GL_W[None, :]).ravel()
    return x, w


@lru_cache(maxsize=256)
def _nodes(b: float, S: float, h: float):
    """Nodes and weights (including 1/4 and the cosech kernel) for the path."""
    r0 = min(b, 1.0 / b) / 4
    e = cmath.exp(1j * THETA)
    ec = cmath.exp(-1j * THETA)
    s, ws = _gl_on_edges(_ray_panels(r0, S, h))
    t_right = r0 + s * e
    w_right = ws * e
    t_left = -r0 - s * ec
    w_left = ws * ec
    alpha, wa = _gl_on_edges(np.linspace(0.0, PI, 4))
    t_arc = r0 * np.exp(1j * alpha)
    # arc runs from alpha = pi to 0
    w_arc = -wa * 1j * t_arc
    t = np.concatenate([t_left, t_arc, t_right])
    w = np.concatenate([w_left, w_arc, w_right])
    w = 0.25 * w * _cosech_pair(t, b)
    return t, w


def _band_log_phib(w: np.ndarray, b: float) -> np.ndarray:
    """Quadrature for |Im w| <= b/2 (band of the smaller step) and Re w <= 0."""
    out = np.zeros(w.shape, dtype=complex)
    bs = min(b, 1.0 / b)
    bb = b + 1.0 / b
    x = w.real
    y = w.imag
    far = 2 * PI * bs * x < _FAR_LEFT
    todo = ~far
    if not np.any(todo):
        return out
    c = math.cos(THETA)
    sn = math.sin(THETA)
    rate = (bb - 2 * np.abs(y)) * c + 2 * np.abs(x) * sn
    phase = 2 * np.abs(x) * c + (2 * np.abs(y) + bb) * sn
    r0 = bs / 4
    budget = 37.0 + 3 * math.log(1 / r0)
    # bucket by phase rate so that each bucket shares a node set
    key = np.floor(np.log2(1 + phase)).astype(int)
    for k in np.unique(key[todo]):
        sel = np.nonzero(todo & (key == k))[0]
        S = float(budget / rate[sel].min())
        S = math.ceil(S * 4) / 4
        h = min(1.0, 2.5 / float(2 ** (k + 1)))
        t, wt = _nodes(b, S, h)
        for i0 in range(0, len(sel), _CHUNK):
            idx = sel[i0:i0 + _CHUNK]
            E = np.exp(-2j * np.outer(w[idx], t))
            out[idx] = E @ wt
    return out


def log_phib_array(z, ctx: QdContext) -> np.ndarray:
    """Vectorized ``log_phib`` for an array of arguments (double precision)."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    b = float(ctx.b)
    q = ctx.q
    lzi = ctx.log_zeta_inv
    guard = ctx.pole_guard
    poles = phi_poles(ctx)
    for zz in z.ravel():
        if poles.order_at(complex(zz), guard):
            raise PoleHit(f"phi_b has a pole at {complex(zz)!r}")
    flip = z.real > 0
    w = np.where(flip, -z, z)
    acc = np.zeros(z.shape, dtype=complex)
    half = b / 2
    # far to the left phi is 1 to double precision whatever Im w is: every
    # shift factor and the band integral are O(exp(2 pi min(b, 1/b) Re w))
    far = 2 * PI * min(b, 1 / b) * w.real < _FAR_LEFT
    w = np.where(far, 0.0, w)
    ups = np.where(w.imag < -half, np.ceil((-w.imag - half) / b), 0).astype(int)
    downs = np.where(w.imag > half, np.ceil((w.imag - half) / b), 0).astype(int)
    if max(ups.max(initial=0), downs.max(initial=0)) > MAX_SHIFTS:
        raise AccuracyLoss("functional-equation chain longer than max_shifts", achieved_error=float("inf"))
    # phi(w) = (1 + q e^{2 pi b w}) phi(w + ib)
    for j in range(ups.max(initial=0)):
        m = ups > j
        ww = w[m]
        acc[m] += _log1p_safe(q * np.exp(2 * PI * b * ww))
        w[m] = ww + 1j * b
    # phi(w) = phi(w - ib) / (1 + q^-1 e^{2 pi b w})
    for j in range(downs.max(initial=0)):
        m = downs > j
        ww = w[m]
        acc[m] -= _log1p_safe(np.exp(2 * PI * b * ww) / q)
        w[m] = ww - 1j * b
    base = np.where(far, 0.0, _band_log_phib(w, b) + acc)
    return np.where(flip, lzi + 1j * PI * z * z - base, base)


# ---------------------------------------------------------------------------
# extended precision route (mpmath); also the oracle for the double route
# ---------------------------------------------------------------------------

def log_phib_mp(z, b, dps: int = 30, direct: bool = False):
    """Defining integral evaluated with mpmath at ``dps`` digits.

    Uses the same reductions as the double route (inversion, ib-shifts), but
    integrates each piece with tanh-sinh quadrature to infinity.  With
    ``direct=True`` the inversion step is skipped and points with Re z > 0 are
    integrated on rays turned into the lower half plane, which makes this an
    independent check of the inversion relation.
    """
    with mpmath.workdps(dps + 5):
        z = mpmath.mpc(z)
        b = mpmath.mpf(b)
        bs = min(b, 1 / b)
        q = mpmath.expjpi(b * b)
        lzi = 1j * mpmath.pi * (b * b + 1 / (b * b)) / 12
        flip = z.real > 0 and not direct
        w = -z if flip else z
        acc = mpmath.mpc(0)
        n = 0
        while w.imag < -b / 2:
            acc += mpmath.log(1 + q * mpmath.exp(2 * mpmath.pi * b * w))
            w += 1j * b
            n += 1
        while w.imag > b / 2:
            acc -= mpmath.log(1 + mpmath.exp(2 * mpmath.pi * b * w) / q)
            w -= 1j * b
            n += 1
        if n > MAX_SHIFTS:
            raise AccuracyLoss("functional-equation chain longer than max_shifts")
        r0 = bs / 4
        th = -mpmath.pi / 4 if w.real > 0 else mpmath.pi / 4
        e = mpmath.expj(th)
        ec = mpmath.expj(-th)

        def kern(t):
            return mpmath.exp(-2j * w * t) / (t * mpmath.sinh(b * t) * mpmath.sinh(t / b))

        right = mpmath.quad(lambda s: kern(r0 + s * e) * e, [0, r0, 4 * r0, 1, 4, mpmath.inf])
        left = mpmath.quad(lambda s: kern(-r0 - s * ec) * ec, [0, r0, 4 * r0, 1, 4, mpmath.inf])
        arc = -mpmath.quad(lambda a: kern(r0 * mpmath.expj(a)) * 1j * r0 * mpmath.expj(a), [0, mpmath.pi / 2, mpmath.pi])
        base = (left + right + arc) / 4 + acc
        res = lzi + 1j * mpmath.pi * z * z - base if flip else base
        return res


# ---------------------------------------------------------------------------
# public scalar API
# ---------------------------------------------------------------------------

def log_phib(z: complex, ctx: QdContext) -> complex:
    """Logarithm of phi_b(z); overflow safe, principal value of each piece."""
    if ctx.precision == "extended":
        z = complex(z)
        if near_pole(z, ctx):
            raise PoleHit(f"phi_b has a pole at {z!r}")
        return complex(log_phib_mp(z, ctx.b))
    return complex(log_phib_array([z], ctx)[0])


def phib(z: complex, ctx: QdContext) -> complex:
    """The non-compact quantum dilogarithm phi_b(z)."""
    return cmath.exp(log_phib(z, ctx))


def phib_array(z, ctx: QdContext) -> np.ndarray:
    if ctx.precision == "extended":
        z = np.asarray(z, dtype=complex)
        return np.vectorize(lambda v: phib(v, ctx), otypes=[complex])(z)
    return np.exp(log_phib_array(z, ctx))


def phib_mp(z, b, dps: int = 30):
    with mpmath.workdps(dps):
        return mpmath.exp(log_phib_mp(z, b, dps))


def phi_zero_value(ctx: QdContext) -> complex:
    """phi_b(0) = exp(pi i (b^2 + b^-2) / 24), the root of zeta_inv picked by quadrature."""
    return cmath.exp(1j * PI * (ctx.b ** 2 + ctx.b ** -2) / 24)


def shift_ratio(w: complex, r: int, ctx: QdContext, *, step: str = "b") -> complex:
    """phi(w + i r b) / phi(w) for integer r (either sign), as a finite product.

    With ``step='binv'`` the step is i/b and q is replaced by qtilde.
    """
    bb = ctx.b if step == "b" else 1.0 / ctx.b
    qq = cmath.exp(1j * PI * bb * bb)
    W = cmath.exp(2 * PI * bb * w)
    out = 1.0 + 0j
    if r >= 0:
        for j in range(r):
            out /= 1 + qq ** (2 * j + 1) * W
    else:
        for j in range(-r):
            out *= 1 + qq ** (-(2 * j + 1)) * W
    return out


# ---------------------------------------------------------------------------
# Barnes double sine
# ---------------------------------------------------------------------------

def _double_sine_strip(z: complex, w1: float, w2: float, tol: float) -> complex:
    # the subtraction at small t cancels badly in double precision, so the
    # integral is done in mpmath with a comfortable digit margin
    dps = max(20, int(-math.log10(tol)) + 10)
    with mpmath.workdps(dps):
        w1m, w2m = mpmath.mpf(w1), mpmath.mpf(w2)
        a = 2 * mpmath.mpc(z) - (w1m + w2m)

        def f(t):
            return (mpmath.sinh(a * t) / (mpmath.sinh(w1m * t) * mpmath.sinh(w2m * t))
                    - a / (w1m * w2m * t)) / (2 * t)

        # the subtracted 1/t^2 piece has a slow tail, integrated in closed form;
        # the hyperbolic piece is negligible beyond T
        gap = (w1m + w2m) - abs(a.real)
        T = mpmath.mpf(dps * 2.4 + 10) / gap
        pts = [0] + [T * mpmath.mpf(2) ** (k - 12) for k in range(13)]
        val = mpmath.quad(f, pts, method="gauss-legendre")
        val += -a / (2 * w1m * w2m * T)
        return complex(mpmath.exp(val))


def double_sine(z: complex, omega1: float = None, omega2: float = None, *, ctx: QdContext = None,
                tol: float = 1e-12) -> complex:
    """Barnes double sine S_2(z | omega1, omega2).

    Inside the strip 0 < Re z < omega1 + omega2 the defining integral is used.
    Outside it, and only for omega1 * omega2 = 1, the value is continued through
    ``double_sine_via_phib``.
    """
    if ctx is not None:
        omega1, omega2 = ctx.b, 1.0 / ctx.b
    if omega1 is None or omega2 is None or omega1 <= 0 or omega2 <= 0:
        raise ConfigError("double_sine needs positive real periods")
    z = complex(z)
    om = omega1 + omega2
    # poles/zeros: z = -(m w1 + n w2) (poles) and om + m w1 + n w2 (zeros)
    if abs(z.imag) < 1e-12:
        for sgn, base in ((1, 0.0), (-1, om)):
            v = (base - z.real) * sgn
            if v >= -1e-12:
                for m in range(int(v / omega1) + 2):
                    n = round((v - m * omega1) / omega2)
                    if n >= 0 and abs(v - m * omega1 - n * omega2) < 1e-9:
                        raise PoleHit(f"S_2 has a pole or zero at {z!r}")
    if 0 < z.real < om:
        return _double_sine_strip(z, omega1, omega2, tol)
    if abs(omega1 * omega2 - 1) > 1e-12:
        raise ConfigError("outside the strip only omega1*omega2 = 1 is supported")
    return double_sine_via_phib(z, QdContext(b=omega1) if abs(omega1 - 1) > 1e-9 else None)


def double_sine_via_phib(z: complex, ctx: QdContext) -> complex:
    """S_2(z | b, 1/b) = phi(iz - c_b) exp(-pi i (iz - c_b)^2 / 2) / phi(0).

    The constant 1/phi(0) is fixed by S_2 = 1 at the midpoint (b + 1/b)/2.
    """
    if ctx is None:
        raise ConfigError("b = 1 is not supported")
    u = 1j * complex(z) - ctx.c_b
    return cmath.exp(log_phib(u, ctx) - 0.5j * PI * u * u) / phi_zero_value(ctx)


def double_sine_relation_rhs(z: complex, ctx: QdContext) -> complex:
    """Right-hand side phi(iz - c_b) exp(-pi i (iz - c_b)^2 / 2) with no normalization."""
    u = 1j * complex(z) - ctx.c_b
    return cmath.exp(log_phib(u, ctx) - 0.5j * PI * u * u)


# ---------------------------------------------------------------------------
# compact quantum dilogarithm
# ---------------------------------------------------------------------------

def psi_q_compact_with_bound(X: complex, q: complex, tol: float = 1e-14) -> Tuple[complex, float]:
    """Psi_q(X) = prod_{n>=0} 1/(1 + X q^(2n+1)) and a bound on the truncated tail.

    The bound is on |log(tail)|, which also bounds the relative error.
    """
    X = complex(X)
    q = complex(q)
    aq = abs(q)
    if aq >= 1:
        raise NonConvergent("Psi_q needs |q| < 1")
    if X == 0:
        return 1.0 + 0j, 0.0
    # pole check: X = -q^-(2n+1)
    lx = abs(X)
    nmax = int(math.log(max(lx, 1e-300)) / (-2 * math.log(aq))) + 2 if lx > 1 else 1
    for n in range(max(nmax, 1) + 1):
        if abs(1 + X * q ** (2 * n + 1)) < 1e-14 * max(1.0, lx * aq ** (2 * n + 1)):
            raise PoleHit(f"Psi_q has a pole at X = {X!r}")
    val = 1.0 + 0j
    n = 0
    while True:
        term = X * q ** (2 * n + 1)
        val /= 1 + term
        n += 1
        rest = lx * aq ** (2 * n + 1)
        if rest < 0.5:
            bound = 2 * rest / (1 - aq * aq)
            if bound < tol:
                return val, bound
        if n > 100000:
            raise NonConvergent("Psi_q product did not converge")


def psi_q_compact(X: complex, q: complex, tol: float = 1e-14) -> complex:
    return psi_q_compact_with_bound(X, q, tol)[0]
