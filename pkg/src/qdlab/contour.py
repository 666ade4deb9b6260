"""Pole-aware contours and adaptive quadrature for dilogarithm-ratio integrands.

An integrand here has the shape

    const * prod_j phi(t - a_j) / prod_k phi(t - b_k) * exp(c2 t^2 + c1 t + c0).

The factor phi(t - a_j) has an ascending column of poles starting at a_j + c_b;
1/phi(t - b_k) has a descending column starting at b_k - c_b.  The contour must
keep every ascending pole above it and every descending pole below it.

The path built here is a horizontal segment plus two straight tails rotated
into the sector where the integrand decays like a Gaussian (or exponentially,
when the quadratic part cancels).  If the columns interleave so that no
horizontal line separates them, the line is placed where it stays far from all
poles and the poles it leaves on the wrong side are added back as residues.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import HigherOrderPole, NoDecaySector, PinchedContour, PoleHit, ToleranceNotMet
from .qdilog import PoleZeroLattice, QdContext, double_sine, double_sine_via_phib, log_phib, log_phib_array

PI = math.pi
PINCH = 1e-4
TAIL_MARGIN = 0.25
RESIDUE_NODES = 64

_XGK = np.array([0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                 0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                 0.207784955007898467600689403773245, 0.0])
_WGK = np.array([0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                 0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                 0.204432940075298892414161999234649, 0.209482141084727828012999174891714])
_WG = np.array([0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                0.381830050505118944950369775488975, 0.417959183673469387755102040816327])
GK_X = np.concatenate([-_XGK[:-1], [0.0], _XGK[:-1][::-1]])
GK_WK = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[:-1][::-1]])
GK_WG = np.zeros(15)
# Gauss nodes are the odd-indexed Kronrod nodes
for _i, _w in zip([1, 3, 5], _WG[:3]):
    GK_WG[_i] = _w
    GK_WG[14 - _i] = _w
GK_WG[7] = _WG[3]


@dataclass(frozen=True)
class QdIntegrand:
    """const * prod phi(t - a_j) / prod phi(t - b_k) * exp(c2 t^2 + c1 t + c0)."""

    num: Tuple[complex, ...] = ()
    den: Tuple[complex, ...] = ()
    c2: complex = 0.0
    c1: complex = 0.0
    c0: complex = 0.0
    const: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "num", tuple(complex(a) for a in self.num))
        object.__setattr__(self, "den", tuple(complex(b) for b in self.den))

    def log_eval(self, t, ctx: QdContext) -> np.ndarray:
        t = np.asarray(t, dtype=complex)
        out = self.c2 * t * t + self.c1 * t + self.c0 + cmath.log(self.const)
        if ctx.precision == "extended":
            lp = np.vectorize(lambda z: log_phib(z, ctx), otypes=[complex])
        else:
            lp = lambda z: log_phib_array(z, ctx)
        for a in self.num:
            out = out + lp(t - a)
        for b in self.den:
            out = out - lp(t - b)
        return out

    def __call__(self, t, ctx: QdContext):
        return np.exp(self.log_eval(t, ctx))

    def asymptotics(self) -> Dict[str, Tuple[complex, complex]]:
        """Quadratic and linear coefficients of log|integrand| at each end."""
        n, d = len(self.num), len(self.den)
        AR = 1j * PI * (n - d) + self.c2
        BR = -2j * PI * (sum(self.num) - sum(self.den)) + self.c1
        return {"right": (AR, BR), "left": (complex(self.c2), complex(self.c1))}

    def ascending(self, ctx: QdContext) -> List[PoleZeroLattice]:
        return [PoleZeroLattice("pole", a + ctx.c_b, ctx.b) for a in self.num]

    def descending(self, ctx: QdContext) -> List[PoleZeroLattice]:
        return [PoleZeroLattice("zero", b - ctx.c_b, ctx.b) for b in self.den]


@dataclass
class ContourPath:
    """Horizontal segment at height ``h`` from ``x_left`` to ``x_right`` plus two rays.

    The left ray arrives at x_left + ih from infinity along angle ``theta_left``;
    the right ray leaves x_right + ih along ``theta_right``.  ``corrections``
    lists (pole, sign) pairs whose residues (times 2 pi i * sign) are added to
    the path integral to recover the separating contour.
    """

    h: float
    x_left: float
    x_right: float
    theta_left: float
    theta_right: float
    len_left: float
    len_right: float
    corrections: List[Tuple[complex, int]] = field(default_factory=list)
    residue_radius: Dict[complex, float] = field(default_factory=dict)

    @property
    def nodes(self) -> List[complex]:
        a = complex(self.x_left, self.h)
        c = complex(self.x_right, self.h)
        return [a + self.len_left * cmath.exp(1j * self.theta_left), a, c,
                c + self.len_right * cmath.exp(1j * self.theta_right)]

    def pieces(self):
        """Parametrized pieces (start, direction, length), oriented left to right."""
        a = complex(self.x_left, self.h)
        c = complex(self.x_right, self.h)
        el = cmath.exp(1j * self.theta_left)
        er = cmath.exp(1j * self.theta_right)
        return [
            (a + self.len_left * el, -el, self.len_left),
            (a, 1.0 + 0j, self.x_right - self.x_left),
            (c, er, self.len_right),
        ]

    def to_json(self):
        return {
            "nodes": [[z.real, z.imag] for z in self.nodes],
            "h": self.h,
            "theta": [self.theta_left, self.theta_right],
            "corrections": [[[p.real, p.imag], s] for p, s in self.corrections],
        }


@dataclass
class IntegrationResult:
    value: complex
    error: float
    evaluations: int
    path: Optional[ContourPath] = None

    def __complex__(self):
        return complex(self.value)


# ---------------------------------------------------------------------------
# contour construction
# ---------------------------------------------------------------------------

def _tail_angle(A: complex, B: complex, side: str, offset: float = 0.0) -> float:
    """Direction of steepest certified decay for exp(A r^2 e^{2i th} + B r e^{i th})."""
    if side == "right":
        lo_w, hi_w = -PI / 2, PI / 2
    else:
        lo_w, hi_w = PI / 2, 3 * PI / 2
    if abs(A) > 1e-12:
        centre = (PI - cmath.phase(A)) / 2
        half = PI / 4
    elif abs(B) > 1e-12:
        centre = PI - cmath.phase(B)
        half = PI / 2
    else:
        raise NoDecaySector(f"integrand has no decaying direction on the {side}")
    best = None
    for k in range(-3, 4):
        c = centre + k * (PI if half == PI / 4 else 2 * PI)
        lo = max(c - half, lo_w)
        hi = min(c + half, hi_w)
        if hi - lo > 1e-9:
            width = hi - lo
            if best is None or width > best[0]:
                best = (width, lo, hi)
    if best is None:
        raise NoDecaySector(f"integrand has no decaying direction on the {side}")
    _, lo, hi = best
    # bisect the decay sector, then keep the ray away from the vertical
    th = min(max(0.5 * (lo + hi), lo_w + TAIL_MARGIN), hi_w - TAIL_MARGIN) + offset
    if not (lo < th < hi):
        raise NoDecaySector("requested tail rotation leaves the decay sector")
    # a purely linear exponent must actually decay along the chosen direction
    if abs(A) <= 1e-12 and (B * cmath.exp(1j * th)).real >= 0:
        raise NoDecaySector(f"integrand has no decaying direction on the {side}")
    return th


def _lattice_heights(lat: PoleZeroLattice, lo: float, hi: float) -> List[complex]:
    """Lattice points whose imaginary part lies in [lo, hi]."""
    ap = lat.apex.imag
    if lat.sign > 0:
        span = hi - ap
        pts = lat.points(max(span, -1.0)) if span >= 0 else []
    else:
        span = ap - lo
        pts = lat.points(max(span, -1.0)) if span >= 0 else []
    return [p for p, _, _ in pts if lo - 1e-12 <= p.imag <= hi + 1e-12]


def _pinch_check(asc, desc, ctx, lo, hi):
    tol = PINCH * ctx.c_b.imag
    for A in asc:
        for D in desc:
            if abs(A.apex.real - D.apex.real) > tol:
                continue
            if D.apex.imag < A.apex.imag - tol:
                continue
            pa = _lattice_heights(A, lo, hi)
            pd = _lattice_heights(D, lo, hi)
            for x in pa:
                for y in pd:
                    if abs(x - y) < tol:
                        raise PinchedContour(
                            f"ascending pole {x:.6g} and descending pole {y:.6g} collide")


def _choose_height(asc, desc, ctx) -> Tuple[float, List[complex], List[complex]]:
    bs = min(ctx.b, 1 / ctx.b)
    alpha = min((A.apex.imag for A in asc), default=None)
    delta = max((D.apex.imag for D in desc), default=None)
    if alpha is None and delta is None:
        return 0.0, [], []
    if alpha is None:
        return delta + bs / 2, [], []
    if delta is None:
        return alpha - bs / 2, [], []
    if alpha - delta > 1e-9:
        m = min(bs / 2, (alpha - delta) / 2)
        h = min(max(0.0, delta + m), alpha - m)
        return h, [], []
    # interleaved columns: scan for the line that stays farthest from all poles
    lo, hi = alpha - bs, delta + bs
    wlo, whi = lo - 1.0, hi + 1.0
    pa = [p for A in asc for p in _lattice_heights(A, wlo, whi)]
    pd = [p for D in desc for p in _lattice_heights(D, wlo, whi)]
    heights = np.array([p.imag for p in pa + pd])
    grid = np.linspace(lo, hi, 801)
    dist = np.min(np.abs(grid[:, None] - heights[None, :]), axis=1)
    n_wrong = np.array([sum(p.imag < g for p in pa) + sum(p.imag > g for p in pd) for g in grid])
    score = np.minimum(dist, bs / 3) - 1e-3 * n_wrong
    h = float(grid[int(np.argmax(score))])
    wrong_a = [p for p in pa if p.imag < h]
    wrong_d = [p for p in pd if p.imag > h]
    return h, wrong_a, wrong_d


def _ray_length(f_log, start: complex, theta: float, tol: float) -> float:
    e = cmath.exp(1j * theta)
    ref = float(np.real(f_log(np.array([start])))[0])
    target = math.log(tol * 1e-3)
    r = 0.5
    prev = None
    while r < 2048:
        val = float(np.real(f_log(np.array([start + r * e])))[0])
        if val - ref < target and (prev is None or val < prev):
            return r
        prev = val
        r *= 1.5
    raise NoDecaySector("tail does not decay within the search radius")


def _all_poles(integrand: QdIntegrand, ctx: QdContext, lo: float, hi: float) -> List[complex]:
    pts = []
    for A in integrand.ascending(ctx):
        pts += _lattice_heights(A, lo, hi)
    for D in integrand.descending(ctx):
        pts += _lattice_heights(D, lo, hi)
    return pts


def build_contour(integrand: QdIntegrand, ctx: QdContext, *, h: Optional[float] = None,
                  theta_offset: float = 0.0, tol: float = 1e-10) -> ContourPath:
    """Admissible path for ``integrand``; deterministic for identical inputs.

    ``h`` forces the height of the horizontal segment and ``theta_offset``
    rotates both tails inside their decay sectors; both are for checking that
    the result does not depend on the path.
    """
    asc = integrand.ascending(ctx)
    desc = integrand.descending(ctx)
    heights = [L.apex.imag for L in asc + desc] + [0.0]
    wlo, whi = min(heights) - 3.0, max(heights) + 3.0
    _pinch_check(asc, desc, ctx, wlo, whi)
    if h is None:
        h, wrong_a, wrong_d = _choose_height(asc, desc, ctx)
    else:
        pa = [p for A in asc for p in _lattice_heights(A, wlo - 10, h)]
        pd = [p for D in desc for p in _lattice_heights(D, h, whi + 10)]
        wrong_a = [p for p in pa if p.imag < h]
        wrong_d = [p for p in pd if p.imag > h]
        guard = 1e-6 * ctx.c_b.imag
        for L in asc + desc:
            for p in _lattice_heights(L, h - guard, h + guard):
                raise PoleHit(f"requested contour height {h} runs through the pole {p}")
    reals = [L.apex.real for L in asc + desc] + [0.0]
    xl, xr = min(reals) - 1.0, max(reals) + 1.0
    asym = integrand.asymptotics()
    thr = _tail_angle(*asym["right"], "right", theta_offset)
    thl = _tail_angle(*asym["left"], "left", -theta_offset)
    f_log = lambda t: integrand.log_eval(t, ctx)
    Lr = _ray_length(f_log, complex(xr, h), thr, tol)
    Ll = _ray_length(f_log, complex(xl, h), thl, tol)
    corr = [(p, +1) for p in wrong_a] + [(p, -1) for p in wrong_d]
    path = ContourPath(h, xl, xr, thl, thr, Ll, Lr, corr)
    if corr:
        allp = _all_poles(integrand, ctx, wlo - 10, whi + 10)
        bs = min(ctx.b, 1 / ctx.b)
        for p, _ in corr:
            others = [abs(p - o) for o in allp if abs(p - o) > 1e-9]
            d = min(others) if others else bs
            path.residue_radius[p] = min(0.45 * d, bs / 4)
    return path


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

def _gk_batch(f, starts, dirs, a, b):
    """Gauss-Kronrod 15/7 on many parameter intervals at once."""
    mid = (a + b) / 2
    half = (b - a) / 2
    s = mid[:, None] + half[:, None] * GK_X[None, :]
    t = starts[:, None] + dirs[:, None] * s
    vals = f(t.ravel()).reshape(t.shape) * dirs[:, None]
    k = (vals * GK_WK[None, :]).sum(axis=1) * half
    g = (vals * GK_WG[None, :]).sum(axis=1) * half
    l1 = (np.abs(vals) * GK_WK[None, :]).sum(axis=1) * half
    return k, np.abs(k - g), l1


def integrate_path(f, pieces, tol: float, *, max_rounds: int = 60, init_width: float = 0.5):
    """Adaptive GK15 over parametrized straight pieces (start, direction, length)."""
    starts, dirs, a, b = [], [], [], []
    for st, d, L in pieces:
        n = max(1, int(math.ceil(L / init_width)))
        edges = np.linspace(0.0, L, n + 1)
        for lo, hi in zip(edges[:-1], edges[1:]):
            starts.append(st)
            dirs.append(d)
            a.append(lo)
            b.append(hi)
    starts = np.array(starts, dtype=complex)
    dirs = np.array(dirs, dtype=complex)
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    val, err, l1 = _gk_batch(f, starts, dirs, a, b)
    nev = 15 * len(a)
    eps = np.finfo(float).eps
    for _ in range(max_rounds):
        total = val.sum()
        etot = err.sum()
        L1 = l1.sum()
        target = max(tol * abs(total), 1e-15, 50 * eps * L1)
        if etot <= target:
            return complex(total), float(etot), nev
        # refine the intervals that carry most of the error
        order = np.argsort(err)[::-1]
        cum = np.cumsum(err[order])
        k = int(np.searchsorted(cum, etot - 0.5 * target)) + 1
        sel = order[:max(1, k)]
        keep = np.ones(len(a), bool)
        keep[sel] = False
        m = (a[sel] + b[sel]) / 2
        na = np.concatenate([a[sel], m])
        nb = np.concatenate([m, b[sel]])
        ns = np.concatenate([starts[sel], starts[sel]])
        nd = np.concatenate([dirs[sel], dirs[sel]])
        v2, e2, l2 = _gk_batch(f, ns, nd, na, nb)
        nev += 15 * len(na)
        starts = np.concatenate([starts[keep], ns])
        dirs = np.concatenate([dirs[keep], nd])
        a = np.concatenate([a[keep], na])
        b = np.concatenate([b[keep], nb])
        val = np.concatenate([val[keep], v2])
        err = np.concatenate([err[keep], e2])
        l1 = np.concatenate([l1[keep], l2])
    total = val.sum()
    raise ToleranceNotMet("adaptive quadrature did not converge", value=complex(total), error=float(err.sum()))


def small_circle_residue(f, p: complex, radius: float, n: int = RESIDUE_NODES) -> complex:
    """(1/2 pi i) times the integral of f over the circle |t - p| = radius (trapezoid rule)."""
    th = 2 * PI * np.arange(n) / n
    e = np.exp(1j * th)
    vals = f(p + radius * e)
    return complex(radius * np.mean(vals * e))


def integrate(integrand: QdIntegrand, path: Optional[ContourPath], ctx: QdContext,
              tol: float = 1e-10) -> IntegrationResult:
    """Integral over the separating contour with an error estimate."""
    if path is None:
        path = build_contour(integrand, ctx, tol=tol)
    f = lambda t: integrand(t, ctx)
    val, err, nev = integrate_path(f, path.pieces(), tol)
    for p, sgn in path.corrections:
        r = path.residue_radius.get(p, min(ctx.b, 1 / ctx.b) / 4)
        res = small_circle_residue(f, p, r)
        nev += RESIDUE_NODES
        val += sgn * 2j * PI * res
    return IntegrationResult(val, err, nev, path)


def contour_integral(integrand: QdIntegrand, ctx: QdContext, tol: float = 1e-10, **kw) -> complex:
    path = build_contour(integrand, ctx, tol=tol, **kw)
    return integrate(integrand, path, ctx, tol).value


# ---------------------------------------------------------------------------
# closed-form residues
# ---------------------------------------------------------------------------

def _qpoch_num(x: complex, q: complex, n: int) -> complex:
    out = 1.0 + 0j
    for k in range(n):
        out *= 1 - x * q ** k
    return out


def phi_pole_residue(m: int, n: int, ctx: QdContext) -> complex:
    """Residue of phi at c_b + i m b + i n / b."""
    q2 = ctx.q ** 2
    qt2 = ctx.qtilde ** 2
    return 1 / (ctx.zeta * 2j * PI * _qpoch_num(q2, q2, m) * _qpoch_num(qt2, qt2, n))


def inv_phi_zero_residue(m: int, n: int, ctx: QdContext) -> complex:
    """Residue of 1/phi at -c_b - i m b - i n / b."""
    qm2 = ctx.q ** -2
    qtm2 = ctx.qtilde ** -2
    return -ctx.zeta / (2j * PI * _qpoch_num(qm2, qm2, m) * _qpoch_num(qtm2, qtm2, n))


def _lattice_index(d: complex, b: float, guard: float):
    """All (m, n) with d = i(b m + n / b), m, n >= 0."""
    if abs(d.real) > guard or d.imag < -guard:
        return []
    v = d.imag
    out = []
    for m in range(int(v / b + 1e-9) + 1):
        n = round((v - b * m) * b)
        if n >= 0 and abs(v - b * m - n / b) < guard:
            out.append((m, n))
    return out


def residue_sum(integrand: QdIntegrand, poles: Sequence[complex], ctx: QdContext) -> complex:
    """2 pi i times the sum of residues of ``integrand`` at ``poles`` (closed form)."""
    guard = 1e-9 * max(1.0, ctx.c_b.imag)
    total = 0j
    for p in poles:
        p = complex(p)
        sing = []
        for j, a in enumerate(integrand.num):
            for mn in _lattice_index(p - a - ctx.c_b, ctx.b, guard):
                sing.append(("num", j, mn))
        for k, bk in enumerate(integrand.den):
            for mn in _lattice_index(-(p - bk + ctx.c_b), ctx.b, guard):
                sing.append(("den", k, mn))
        if not sing:
            continue
        if len(sing) > 1:
            raise HigherOrderPole(f"pole of order {len(sing)} at {p!r}")
        kind, idx, (m, n) = sing[0]
        if kind == "num":
            rest = QdIntegrand(integrand.num[:idx] + integrand.num[idx + 1:], integrand.den,
                               integrand.c2, integrand.c1, integrand.c0, integrand.const)
            r = phi_pole_residue(m, n, ctx)
        else:
            rest = QdIntegrand(integrand.num, integrand.den[:idx] + integrand.den[idx + 1:],
                               integrand.c2, integrand.c1, integrand.c0, integrand.const)
            r = inv_phi_zero_residue(m, n, ctx)
        total += r * complex(rest(np.array([p]), ctx)[0])
    return 2j * PI * total


# ---------------------------------------------------------------------------
# integral identities of the quantum dilogarithm
# ---------------------------------------------------------------------------

IDENTITIES = ("fourier1", "fourier2", "beta1", "beta2", "saalschutz", "pentagon_kernel")


@dataclass
class IdentityReport:
    identity: str
    params: Dict[str, complex]
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    passed: bool

    def to_json(self):
        def enc(v):
            v = complex(v)
            return [v.real, v.imag]
        return {
            "identity": self.identity,
            "params": {k: enc(v) if isinstance(v, complex) else v for k, v in self.params.items()},
            "lhs": enc(self.lhs),
            "rhs": enc(self.rhs),
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "pass": self.passed,
        }


def _phi(z, ctx):
    return cmath.exp(log_phib(z, ctx))


def identity_sides(name: str, params: Dict[str, complex], ctx: QdContext, tol: float = 1e-11):
    """(integrand, closed-form right-hand side) for one identity."""
    cb = ctx.c_b
    z = ctx.zeta
    lp = lambda v: log_phib(v, ctx)
    if name == "fourier1":
        w = complex(params["w"])
        f = QdIntegrand(den=(cb,), c1=2j * PI * (w - cb))
        return f, z * _phi(w, ctx)
    if name == "fourier2":
        w = complex(params["w"])
        f = QdIntegrand(num=(-cb,), c1=-2j * PI * (w + cb))
        return f, 1 / (z * _phi(w, ctx))
    if name in ("beta1", "beta2"):
        u, v, w = (complex(params[k]) for k in ("u", "v", "w"))
        f = QdIntegrand(num=(-u,), den=(-v,), c1=2j * PI * w)
        if name == "beta1":
            rhs = z * cmath.exp(-2j * PI * w * (v + cb) + lp(u - v - cb) + lp(w + cb) - lp(u - v + w - cb))
        else:
            rhs = cmath.exp(-2j * PI * w * (u - cb) + lp(v - u - w + cb) - lp(v - u + cb) - lp(-w - cb)) / z
        return f, rhs
    if name == "saalschutz":
        u1, u2, v = (complex(params[k]) for k in ("u1", "u2", "v"))
        f = QdIntegrand(num=(-u1, -u2), den=(cb - v, cb), c1=-4j * PI * cb)
        rhs = z ** 3 * cmath.exp(1j * PI * v * (2 * cb - v) + lp(u1) + lp(u2) + lp(u1 - v) + lp(u2 - v)
                                 - lp(u1 + u2 - v - cb))
        return f, rhs
    raise ValueError(f"unknown identity {name!r}")


def verify_identity(name: str, params: Dict[str, complex], ctx: QdContext, tol: float = 1e-8) -> IdentityReport:
    """Evaluate both sides of an identity; pass means rel_err <= tol.

    ``pentagon_kernel`` compares the two closed forms of the Fourier transform
    of phi(x+u)/phi(x+v) with each other and with the integral.
    """
    if name == "pentagon_kernel":
        f, r1 = identity_sides("beta1", params, ctx)
        _, r2 = identity_sides("beta2", params, ctx)
        lhs = integrate(f, None, ctx, tol=min(tol, 1e-10) * 1e-2).value
        err = max(abs(r1 - r2) / abs(r2), abs(lhs - r2) / abs(r2))
        return IdentityReport(name, dict(params), r1, r2, abs(r1 - r2), err, err <= tol)
    f, rhs = identity_sides(name, params, ctx)
    lhs = integrate(f, None, ctx, tol=min(tol, 1e-10) * 1e-2).value
    ae = abs(lhs - rhs)
    re = ae / abs(rhs) if rhs != 0 else ae
    return IdentityReport(name, dict(params), lhs, rhs, ae, re, re <= tol)


def random_identity_params(name: str, rng: np.random.Generator, margin: float = 0.1) -> Dict[str, complex]:
    """A random parameter set inside the documented validity region.

    fourier1: Im w < Im c_b; fourier2: Im w > -Im c_b (drawn from |Im w| <= 0.4).
    beta1/beta2/pentagon_kernel: Im w < 0 and Im(u - v + w) > 0.
    saalschutz: Im(u1 + u2 - v) > 0.
    All real parts lie in [-0.5, 0.5] and the margins keep tails decaying.
    """
    def c(re_lo, re_hi, im_lo, im_hi):
        return complex(rng.uniform(re_lo, re_hi), rng.uniform(im_lo, im_hi))

    if name in ("fourier1", "fourier2"):
        return {"w": c(-0.5, 0.5, -0.4, 0.4)}
    if name in ("beta1", "beta2", "pentagon_kernel"):
        while True:
            u = c(-0.5, 0.5, -0.3, 0.3)
            v = c(-0.5, 0.5, -0.3, 0.3)
            w = c(-0.5, 0.5, -0.4, -margin)
            if (u - v + w).imag > margin:
                return {"u": u, "v": v, "w": w}
    if name == "saalschutz":
        while True:
            u1 = c(-0.5, 0.5, -0.3, 0.3)
            u2 = c(-0.5, 0.5, -0.3, 0.3)
            v = c(-0.5, 0.5, -0.3, 0.3)
            if (u1 + u2 - v).imag > margin:
                return {"u1": u1, "u2": u2, "v": v}
    raise ValueError(f"unknown identity {name!r}")


# ---------------------------------------------------------------------------
# pointwise identities and the full appendix suite
# ---------------------------------------------------------------------------

POINTWISE = ("unitarity", "inversion", "func_b", "func_binv", "b_duality", "barnes")


def pointwise_sides(name: str, z: complex, ctx: QdContext) -> Tuple[complex, complex]:
    """Two independently evaluated sides of a pointwise identity of phi at z."""
    z = complex(z)
    lp = lambda v, c=ctx: log_phib(v, c)
    if name == "unitarity":
        return complex(cmath.exp(lp(z)).conjugate() * cmath.exp(lp(z.conjugate()))), 1.0 + 0j
    if name == "inversion":
        return cmath.exp(lp(z) + lp(-z)), cmath.exp(ctx.log_zeta_inv + 1j * PI * z * z)
    if name in ("func_b", "func_binv"):
        w = ctx.b if name == "func_b" else 1.0 / ctx.b
        lhs = cmath.exp(lp(z - 0.5j * w))
        return lhs, (1 + cmath.exp(2 * PI * w * z)) * cmath.exp(lp(z + 0.5j * w))
    if name == "b_duality":
        return cmath.exp(lp(z)), cmath.exp(lp(z, ctx.replace(b=1.0 / ctx.b)))
    if name == "barnes":
        return double_sine(z, ctx.b, 1.0 / ctx.b), double_sine_via_phib(z, ctx)
    raise ValueError(f"unknown pointwise identity {name!r}")


def random_pointwise_arg(name: str, rng: np.random.Generator, ctx: QdContext) -> complex:
    """A random argument; barnes draws inside the strip of the defining integral."""
    if name == "barnes":
        om = ctx.b + 1.0 / ctx.b
        return complex(rng.uniform(0.15, om - 0.15), rng.uniform(-0.4, 0.4))
    return complex(rng.uniform(-2.0, 2.0), rng.uniform(-1.5, 1.5))


def verify_pointwise(name: str, z: complex, ctx: QdContext, tol: float = 1e-8) -> IdentityReport:
    lhs, rhs = pointwise_sides(name, z, ctx)
    ae = abs(lhs - rhs)
    re = ae / abs(rhs)
    return IdentityReport(name, {"z": complex(z), "b": ctx.b}, lhs, rhs, ae, re, re <= tol)


def appendix_suite(draws: int = 25, seed: int = 0, tol: float = 1e-8,
                   b_range: Tuple[float, float] = (0.6, 0.95)) -> List[IdentityReport]:
    """Every pointwise and integral identity at ``draws`` random parameter sets.

    Each draw picks its own b from ``b_range``; the generator is numpy's PCG64
    seeded with ``seed``, so the report is reproducible.
    """
    rng = np.random.default_rng(seed)
    out: List[IdentityReport] = []
    for name in POINTWISE:
        for _ in range(draws):
            ctx = QdContext(b=float(rng.uniform(*b_range)))
            z = random_pointwise_arg(name, rng, ctx)
            out.append(_guarded(lambda: verify_pointwise(name, z, ctx, tol), name, {"z": z, "b": ctx.b}))
    for name in IDENTITIES:
        for _ in range(draws):
            ctx = QdContext(b=float(rng.uniform(*b_range)))
            params = random_identity_params(name, rng)
            rep = _guarded(lambda: verify_identity(name, params, ctx, tol), name, params)
            rep.params = dict(rep.params, b=ctx.b)
            out.append(rep)
    return out


def _guarded(fn, name, params) -> IdentityReport:
    # a draw landing on a pole counts as a failed check rather than a crash
    try:
        return fn()
    except (PoleHit, PinchedContour, ToleranceNotMet, NoDecaySector) as exc:
        nan = complex(float("nan"), float("nan"))
        rep = IdentityReport(name, dict(params), nan, nan, float("inf"), float("inf"), False)
        rep.params["error"] = type(exc).__name__
        return rep
