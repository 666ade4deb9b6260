"""Exact quantum cluster algebra of the punctured-torus quiver.

Lattice vectors are 5-tuples of integers in the basis of the current seed.
Quantum torus relation: q^{(l, m)} Y_l Y_m = Y_{l+m}, i.e. Y_l Y_m = q^{-(l, m)} Y_{l+m}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

from .errors import FrozenDirection, Mismatch, NotLaurent, UnsupportedCurve
from .laurent import LaurentPoly

Q = LaurentPoly.gen("q")
Vec = Tuple[int, ...]
N = 5
FROZEN = (4, 5)


def qpow(e: int) -> LaurentPoly:
    return LaurentPoly.monomial({"q": e}) if e else LaurentPoly.const(1)


def unit(i: int) -> Vec:
    return tuple(1 if j == i - 1 else 0 for j in range(N))


def vec(*pairs) -> Vec:
    """vec((1, 2), (4, 1)) = 2 e_1 + e_4; indices are 1-based."""
    v = [0] * N
    for i, c in pairs:
        v[i - 1] += c
    return tuple(v)


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vscale(c: int, v: Vec) -> Vec:
    return tuple(c * a for a in v)


# ---------------------------------------------------------------------------
# seeds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Seed:
    epsilon: Tuple[Tuple[int, ...], ...]
    frozen: Tuple[int, ...] = FROZEN
    label: str = "Q"

    def __post_init__(self):
        e = self.epsilon
        for i in range(N):
            for j in range(N):
                if e[i][j] != -e[j][i]:
                    raise ValueError("epsilon must be skew-symmetric")

    def pairing(self, u: Sequence[int], v: Sequence[int]) -> int:
        e = self.epsilon
        return sum(u[i] * e[i][j] * v[j] for i in range(N) for j in range(N) if u[i] and v[j])

    def mutable_block(self):
        idx = [i for i in range(N) if i + 1 not in self.frozen]
        return tuple(tuple(self.epsilon[i][j] for j in idx) for i in idx)

    def kernel_contains(self, v: Vec) -> bool:
        return all(self.pairing(unit(i + 1), v) == 0 for i in range(N))

    def to_json(self):
        return {"label": self.label, "epsilon": [list(r) for r in self.epsilon], "frozen": list(self.frozen),
                "kernel_vector": list(KERNEL_VECTOR), "central_character": "2*tau"}


def _skew_from_arrows(arrows: Mapping[Tuple[int, int], int]) -> Tuple[Tuple[int, ...], ...]:
    e = [[0] * N for _ in range(N)]
    for (i, j), n in arrows.items():
        e[i - 1][j - 1] += n
        e[j - 1][i - 1] -= n
    return tuple(tuple(r) for r in e)


# arrows i -> j with multiplicity, read off the quiver drawing
QUIVER_ARROWS = {(3, 2): 2, (1, 3): 2, (2, 1): 2, (1, 4): 1, (4, 2): 1, (3, 5): 1, (5, 1): 1}
KERNEL_VECTOR: Vec = (-1, -1, -1, 0, 0)


def standard_seed() -> Seed:
    return Seed(_skew_from_arrows(QUIVER_ARROWS))


def _mutation_rows(s: Seed, k: int) -> List[List[int]]:
    """Rows B_i with e_i = sum_j B_ij e'_j; the same matrix also gives e'_i in terms of e."""
    rows = []
    for i in range(N):
        r = [1 if j == i else 0 for j in range(N)]
        if i == k - 1:
            r[i] = -1
        else:
            r[k - 1] += max(s.epsilon[i][k - 1], 0)
        rows.append(r)
    return rows


def _check_mutable(s: Seed, k: int):
    if k in s.frozen:
        raise FrozenDirection(f"direction {k} is frozen")
    if not 1 <= k <= N:
        raise ValueError(f"no direction {k}")


def mutate_seed(s: Seed, k: int) -> Seed:
    _check_mutable(s, k)
    B = _mutation_rows(s, k)
    # e'_i = sum_j B_ij e_j as well, since B is an involution
    new = [[s.pairing(B[i], B[j]) for j in range(N)] for i in range(N)]
    return Seed(tuple(tuple(r) for r in new), s.frozen, f"mu{k}({s.label})")


def mutation_map(s: Seed, k: int, v: Vec) -> Vec:
    """Coordinates in the mutated seed of the vector with coordinates v."""
    B = _mutation_rows(s, k)
    return tuple(sum(v[i] * B[i][j] for i in range(N)) for j in range(N))


def mutation_map_inverse(s: Seed, k: int, v: Vec) -> Vec:
    # B squared is the identity
    return mutation_map(s, k, v)


# ---------------------------------------------------------------------------
# Laurent elements
# ---------------------------------------------------------------------------

class LaurentElement:
    """Finite sum of Y_v with coefficients in Z[q^{+-1}], multiplied with the seed's form."""

    __slots__ = ("terms", "seed")

    def __init__(self, terms: Mapping[Vec, object] | None = None, seed: Seed | None = None):
        self.seed = seed or standard_seed()
        self.terms: Dict[Vec, LaurentPoly] = {}
        for v, c in (terms or {}).items():
            c = LaurentPoly.coerce(c)
            v = tuple(int(a) for a in v)
            if v in self.terms:
                c = self.terms[v] + c
            if c.is_zero():
                self.terms.pop(v, None)
            else:
                self.terms[v] = c

    @staticmethod
    def monomial(v: Vec, seed: Seed | None = None, coeff=1) -> "LaurentElement":
        return LaurentElement({tuple(v): coeff}, seed)

    def _same(self, other):
        if self.seed.epsilon != other.seed.epsilon:
            raise ValueError("elements live in different quantum tori")

    def __add__(self, other):
        if not isinstance(other, LaurentElement):
            other = LaurentElement({(0,) * N: other}, self.seed)
        self._same(other)
        t = dict(self.terms)
        for v, c in other.terms.items():
            t[v] = t[v] + c if v in t else c
        return LaurentElement(t, self.seed)

    __radd__ = __add__

    def scale(self, c) -> "LaurentElement":
        c = LaurentPoly.coerce(c)
        return LaurentElement({v: x * c for v, x in self.terms.items()}, self.seed)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentElement):
            return self.scale(other)
        self._same(other)
        out: Dict[Vec, LaurentPoly] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = vadd(u, v)
                val = a * b * qpow(-self.seed.pairing(u, v))
                out[w] = out[w] + val if w in out else val
        return LaurentElement(out, self.seed)

    def __rmul__(self, c):
        return self.scale(c)

    def inverse_monomial(self) -> "LaurentElement":
        if len(self.terms) != 1:
            raise ValueError("only monomials are invertible here")
        (v, c), = self.terms.items()
        if not c.is_monomial():
            raise ValueError("coefficient is not a unit")
        return LaurentElement({vscale(-1, v): c ** -1}, self.seed)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, LaurentElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def with_seed(self, seed: Seed) -> "LaurentElement":
        return LaurentElement(self.terms, seed)

    def __repr__(self):
        parts = []
        for v, c in sorted(self.terms.items()):
            parts.append(f"({c})Y{list(v)}")
        return " + ".join(parts) or "0"

    def to_json(self):
        return {"seed": self.seed.label,
                "terms": [{"vector": list(v), "coeff": c.to_json()} for v, c in sorted(self.terms.items())]}


def commutator(a: LaurentElement, b: LaurentElement) -> LaurentElement:
    return a * b - b * a


# ---------------------------------------------------------------------------
# quantum mutation
# ---------------------------------------------------------------------------

def _y_poly_mul_linear(P: Dict[int, LaurentPoly], c: LaurentPoly) -> Dict[int, LaurentPoly]:
    """P(y) (1 + c y)."""
    out: Dict[int, LaurentPoly] = {}
    for a, x in P.items():
        out[a] = out.get(a, LaurentPoly()) + x
        out[a + 1] = out.get(a + 1, LaurentPoly()) + x * c
    return {a: x for a, x in out.items() if not x.is_zero()}


def _y_poly_div_linear(P: Dict[int, LaurentPoly], c: LaurentPoly):
    """P(y) / (1 + c y) if exact, else None."""
    if not P:
        return {}
    lo, hi = min(P), max(P)
    Qd: Dict[int, LaurentPoly] = {}
    prev = LaurentPoly()
    for a in range(lo, hi):
        cur = P.get(a, LaurentPoly()) - c * prev
        Qd[a] = cur
        prev = cur
    if P.get(hi, LaurentPoly()) - c * prev != LaurentPoly():
        return None
    return {a: x for a, x in Qd.items() if not x.is_zero()}


class RightFraction:
    """num * den^{-1} with den a polynomial in a single generator (exact, never divided out)."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentElement, den: LaurentElement):
        num._same(den)
        self.num, self.den = num, den

    @property
    def seed(self):
        return self.num.seed

    def equals(self, target: LaurentElement) -> bool:
        return (self.num - target.with_seed(self.num.seed) * self.den).is_zero()

    def __repr__(self):
        return f"({self.num}) * ({self.den})^-1"


def _conjugate(elem: LaurentElement, k: int, inverse: bool, allow_fraction: bool = False):
    """Psi_q(Y_k) f Psi_q(Y_k)^{-1} (or the inverse conjugation) in elem's seed.

    Terms are grouped as Y_nu P_nu(Y_k) with nu_k = 0; since
    f(Y_k) Y_nu = Y_nu f(q^{-2m} Y_k) with m = (e_k, nu), each class picks up
    Psi(q^{-2m} y)/Psi(y), a finite product or the inverse of one.  When an
    exact division fails the result is NotLaurent, or with ``allow_fraction``
    a RightFraction over the common denominator.
    """
    s = elem.seed
    ek = unit(k)
    classes: Dict[Vec, Dict[int, LaurentPoly]] = {}
    for v, c in elem.terms.items():
        a = v[k - 1]
        nu = tuple(0 if i == k - 1 else x for i, x in enumerate(v))
        # Y_v = q^{a (nu, e_k)} Y_nu Y_k^a
        coeff = c * qpow(a * s.pairing(nu, ek))
        P = classes.setdefault(nu, {})
        P[a] = P.get(a, LaurentPoly()) + coeff
    plan = []
    longest: List[LaurentPoly] = []
    for nu, P in classes.items():
        m = s.pairing(ek, nu)
        P = {a: x for a, x in P.items() if not x.is_zero()}
        # forward factor F_m(y) = Psi(q^{-2m} y)/Psi(y); the inverse conjugation uses 1/F_m
        if m < 0:
            factors = [qpow(2 * j - 1) for j in range(1, -m + 1)]
            divide = inverse
        else:
            factors = [qpow(-(2 * j - 1)) for j in range(1, m + 1)]
            divide = not inverse
        mult, div = ([], factors) if divide else (factors, [])
        for c in mult:
            P = _y_poly_mul_linear(P, c)
        plan.append((nu, P, div))
        if len(div) > len(longest):
            longest = div

    def assemble(items):
        out: Dict[Vec, LaurentPoly] = {}
        for nu, P in items:
            for a, x in P.items():
                v = tuple(a if i == k - 1 else y for i, y in enumerate(nu))
                val = x * qpow(-a * s.pairing(nu, ek))
                out[v] = out[v] + val if v in out else val
        return LaurentElement(out, s)

    done = []
    failed = None
    for nu, P, div in plan:
        for c in div:
            R = _y_poly_div_linear(P, c)
            if R is None:
                failed = nu
                break
            P = R
        if failed is not None:
            break
        done.append((nu, P))
    if failed is None:
        return assemble(done)
    if not allow_fraction:
        raise NotLaurent(f"conjugation by Psi_q(Y_{k}) leaves a denominator on class {list(failed)}")
    # divisor lists are nested prefixes of ``longest``
    items = []
    for nu, P, div in plan:
        for c in longest[len(div):]:
            P = _y_poly_mul_linear(P, c)
        items.append((nu, P))
    D = {0: LaurentPoly.const(1)}
    for c in longest:
        D = _y_poly_mul_linear(D, c)
    zero = (0,) * N
    return RightFraction(assemble(items), assemble([(zero, D)]))


# True: Psi_q(Y'_k) f Psi_q(Y'_k)^{-1}; False: the opposite conjugation.
# Fixed by requiring sigma_+ to fix L_{(1,0)}.
PSI_LEFT = True


def _relabel(e, fn, seed):
    if isinstance(e, RightFraction):
        return RightFraction(_relabel(e.num, fn, seed), _relabel(e.den, fn, seed))
    return LaurentElement({fn(v): c for v, c in e.terms.items()}, seed)


def quantum_mutate(e: LaurentElement, k: int, s: Seed | None = None, allow_fraction: bool = False):
    """Psi_q(Y'_k) mu'_k(e) Psi_q(Y'_k)^{-1}, landing in the torus of mu_k(s)."""
    s = s or e.seed
    _check_mutable(s, k)
    s2 = mutate_seed(s, k)
    moved = _relabel(e, lambda v: mutation_map(s, k, v), s2)
    return _conjugate(moved, k, inverse=not PSI_LEFT, allow_fraction=allow_fraction)


def quantum_mutate_inverse(e: LaurentElement, k: int, s: Seed, allow_fraction: bool = False):
    """Inverse of quantum_mutate(., k, s); ``e`` lives in the torus of mu_k(s)."""
    s2 = mutate_seed(s, k)
    back = _conjugate(e.with_seed(s2), k, inverse=PSI_LEFT, allow_fraction=allow_fraction)
    return _relabel(back, lambda v: mutation_map_inverse(s, k, v), s)


# ---------------------------------------------------------------------------
# generalized permutations and the SL(2, Z) action
# ---------------------------------------------------------------------------

# images of e'_1..e'_5 in the standard basis
M_PLUS = (unit(2), unit(1), unit(3), unit(4), vec((1, 1), (4, 1), (5, 1)))
M_MINUS = (unit(3), unit(2), unit(1), vec((1, -1), (3, -1), (4, 1), (5, -1)), unit(5))
SIGMA_PERM = (unit(3), unit(1), unit(2), vec((1, -1), (3, -1), (5, -1)), vec((1, 1), (4, 1), (5, 1)))


def _apply_linear(images: Sequence[Vec], v: Vec) -> Vec:
    out = (0,) * N
    for c, img in zip(v, images):
        if c:
            out = vadd(out, vscale(c, img))
    return out


def _inverse_images(images: Sequence[Vec]) -> Tuple[Vec, ...]:
    """Integer inverse of a unimodular map given by the images of basis vectors."""
    from fractions import Fraction as F

    A = [[F(images[j][i]) for j in range(N)] for i in range(N)]  # columns are images
    I = [[F(int(i == j)) for j in range(N)] for i in range(N)]
    for col in range(N):
        piv = next(r for r in range(col, N) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        I[col], I[piv] = I[piv], I[col]
        p = A[col][col]
        A[col] = [x / p for x in A[col]]
        I[col] = [x / p for x in I[col]]
        for r in range(N):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
                I[r] = [x - f * y for x, y in zip(I[r], I[col])]
    cols = []
    for j in range(N):
        col = tuple(I[i][j] for i in range(N))
        if any(x.denominator != 1 for x in col):
            raise ValueError("map is not unimodular")
        cols.append(tuple(int(x) for x in col))
    return tuple(cols)


def monomial_map(images: Sequence[Vec], e, target: Seed):
    return _relabel(e, lambda v: _apply_linear(images, v), target)


def is_isometry(images: Sequence[Vec], source: Seed, target: Seed) -> bool:
    return all(target.pairing(images[i], images[j]) == source.epsilon[i][j] for i in range(N) for j in range(N))


def _sigma_plus_inv(e, frac=False):
    s = standard_seed()
    return monomial_map(M_PLUS, quantum_mutate(e, 1, s, frac), s)


def _sigma_plus(e, frac=False):
    s = standard_seed()
    s1 = mutate_seed(s, 1)
    return quantum_mutate_inverse(monomial_map(_inverse_images(M_PLUS), e, s1), 1, s, frac)


def _sigma_minus(e, frac=False):
    s = standard_seed()
    return monomial_map(M_MINUS, quantum_mutate(e, 3, s, frac), s)


def _sigma_minus_inv(e, frac=False):
    s = standard_seed()
    s3 = mutate_seed(s, 3)
    return quantum_mutate_inverse(monomial_map(_inverse_images(M_MINUS), e, s3), 3, s, frac)


GENERATORS = {"s+": _sigma_plus, "s+^-1": _sigma_plus_inv, "s-": _sigma_minus, "s-^-1": _sigma_minus_inv}
MATRICES = {"s+": ((1, 1), (0, 1)), "s+^-1": ((1, -1), (0, 1)), "s-": ((1, 0), (1, 1)), "s-^-1": ((1, 0), (-1, 1))}
WORD_S = ("s+^-1", "s-", "s+^-1")
WORD_SIGMA = ("s+^-1", "s-")


def act(word: Sequence[str], e: LaurentElement, allow_fraction: bool = False):
    """Image of e under the group element g_1 g_2 ... g_n; the rightmost letter acts first.

    With ``allow_fraction`` an intermediate non-Laurent image is carried as a
    RightFraction; numerator and denominator are then mapped separately and
    must stay Laurent.
    """
    for g in reversed(list(word)):
        if g not in GENERATORS:
            raise ValueError(f"unknown generator {g!r}")
        f = GENERATORS[g]
        if isinstance(e, RightFraction):
            num, den = f(e.num), f(e.den)
            e = RightFraction(num, den)
        else:
            e = f(e, allow_fraction)
    return e


def word_matrix(word: Sequence[str]):
    m = ((1, 0), (0, 1))
    for g in word:
        a = MATRICES[g]
        m = tuple(tuple(sum(m[i][k] * a[k][j] for k in range(2)) for j in range(2)) for i in range(2))
    return m


# ---------------------------------------------------------------------------
# loop elements
# ---------------------------------------------------------------------------

def _Y(*pairs, inverse=False) -> LaurentElement:
    v = vec(*pairs)
    return LaurentElement.monomial(vscale(-1, v) if inverse else v)


def loop_element(curve: Tuple[int, int], kind: str) -> LaurentElement:
    """Hard-coded trace (``L``) and determinant (``D``) elements."""
    curve = tuple(curve)
    kind = {"Delta": "D", "Δ": "D"}.get(kind, kind)
    if kind not in ("L", "D"):
        raise ValueError("kind must be 'L' or 'D'")
    if curve == (1, 0):
        if kind == "L":
            return _Y((4, 1)) + _Y((2, 1), (4, 1)) + _Y((1, 1), (2, 1), (4, 1))
        return _Y((1, 1), (2, 1), (4, 2))
    if curve == (0, 1):
        if kind == "L":
            return _Y((5, 1), inverse=True) + _Y((3, 1), (5, 1), inverse=True) + _Y((1, 1), (3, 1), (5, 1), inverse=True)
        return _Y((1, 1), (3, 1), (5, 2), inverse=True)
    if curve == (0, -1):
        if kind == "L":
            return _Y((5, 1)) + _Y((1, 1), (5, 1)) + _Y((1, 1), (3, 1), (5, 1))
        return _Y((1, 1), (3, 1), (5, 2))
    if curve == (1, -1):
        if kind == "L":
            return (_Y((1, 1), (4, 1), (5, 1)) + _Y((1, 1), (3, 1), (4, 1), (5, 1))
                    + _Y((1, 1), (2, 1), (3, 1), (4, 1), (5, 1)))
        return _Y((1, 2), (2, 1), (3, 1), (4, 2), (5, 2))
    raise UnsupportedCurve(f"no hard-coded element for curve {curve}; use act()")


# ---------------------------------------------------------------------------
# network monodromy
# ---------------------------------------------------------------------------

# paths of the directed network (source, sink) -> faces lying below the path.
# The side face 2 is counted when it lies below the path at the source end.
NETWORK_PATHS = {
    (1, 1): [(1, 2, 4), (2, 4)],
    (1, 2): [(2, 4)],
    (2, 1): [(4,)],
    (2, 2): [(4,)],
}
NETWORK_FACES = (0, 1, 2, 4)


def network_monodromy():
    """2x2 matrix M_ij = sum over paths i -> j of Y_{wt(p)}."""
    M = [[LaurentElement(), LaurentElement()], [LaurentElement(), LaurentElement()]]
    for (i, j), paths in NETWORK_PATHS.items():
        for faces in paths:
            if 0 in faces:
                raise Mismatch("face 0 must not enter any path weight")
            M[i - 1][j - 1] = M[i - 1][j - 1] + _Y(*[(f, 1) for f in faces])
    return M


def network_trace_det():
    M = network_monodromy()
    tr = M[0][0] + M[1][1]
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    return tr, det


def sl2_specialize(v: Vec) -> Tuple[Fraction, Fraction, Fraction]:
    """Exponents of (y1, y2, y3) after y4 = -(y1 + y2)/2, dropping y5."""
    return (Fraction(v[0]) - Fraction(v[3], 2), Fraction(v[1]) - Fraction(v[3], 2), Fraction(v[2]))


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

@dataclass
class CheckReport:
    name: str
    passed: bool
    diff: object = None
    detail: str = ""

    def to_json(self):
        d = self.diff
        if hasattr(d, "to_json"):
            d = d.to_json()
        elif d is not None:
            d = str(d)
        return {"identity": self.name, "pass": self.passed, "diff": d, "detail": self.detail}


def _eq_report(name: str, a: LaurentElement, b: LaurentElement, detail: str = "") -> CheckReport:
    d = a - b
    return CheckReport(name, d.is_zero(), None if d.is_zero() else d, detail)


def commutator_check(a_curve=(1, 0), b_curve=(0, 1), translate: Sequence[str] = ()) -> Dict[str, object]:
    """[L_a, L_b] against (q^-1 - q) times each candidate labeling of the sum curve.

    Candidates are L_{a+b} and L_{a-b}, each obtained from L_{(1,0)} by act().
    The report records which candidate matches exactly.
    """
    La = _curve_L(a_curve)
    Lb = _curve_L(b_curve)
    lhs = commutator(La, Lb)
    fac = qpow(-1) - qpow(1)
    cands = {}
    for name, c in (("sum", (a_curve[0] + b_curve[0], a_curve[1] + b_curve[1])),
                    ("difference", (a_curve[0] - b_curve[0], a_curve[1] - b_curve[1])),
                    ("reverse difference", (b_curve[0] - a_curve[0], b_curve[1] - a_curve[1]))):
        try:
            cands[name] = (c, _curve_L(c))
        except UnsupportedCurve:
            continue
    matches = []
    for name, (c, L) in cands.items():
        if translate:
            ok = (act(translate, lhs) - act(translate, L.scale(fac))).is_zero()
        else:
            ok = (lhs - L.scale(fac)).is_zero()
        if ok:
            matches.append((name, c))
    return {"a": a_curve, "b": b_curve, "translate": list(translate), "matches": matches, "lhs": lhs}


_CURVE_WORDS = {
    (1, 0): (), (0, 1): WORD_S, (1, 1): ("s-",), (1, -1): ("s-^-1",), (-1, 1): ("s-^-1", "s+^-1", "s+^-1"),
    (0, -1): ("s+^-1", "s-", "s+^-1", "s+^-1", "s-", "s+^-1"), (-1, 0): WORD_S * 2,
    (-1, -1): ("s-",) + WORD_S * 2, (1, 2): ("s-", "s-"), (2, 1): ("s+", "s-"),
}


def curve_word(curve: Tuple[int, int]) -> Tuple[str, ...]:
    w = _CURVE_WORDS.get(tuple(curve))
    if w is None or word_matrix(w)[0][0] != curve[0] or word_matrix(w)[1][0] != curve[1]:
        w = _search_word(tuple(curve))
    return w


def _search_word(curve, max_len: int = 8):
    letters = tuple(GENERATORS)
    for n in range(max_len + 1):
        for w in itertools.product(letters, repeat=n):
            m = word_matrix(w)
            if (m[0][0], m[1][0]) == curve:
                return w
    raise UnsupportedCurve(f"no word of length <= {max_len} for {curve}")


def _curve_L(curve) -> LaurentElement:
    return act(curve_word(curve), loop_element((1, 0), "L"))


def _curve_D(curve) -> LaurentElement:
    return act(curve_word(curve), loop_element((1, 0), "D"))


def universal_laurent_sample(e: LaurentElement, depth: int = 4, directions=(1, 2, 3)) -> Dict[str, object]:
    """Apply every mutation word of length <= depth; record Laurent or not per word."""
    if depth > 6:
        raise ValueError("depth must be <= 6")
    results = {}
    for n in range(1, depth + 1):
        for w in itertools.product(directions, repeat=n):
            cur = e
            seed = e.seed
            ok = True
            for k in w:
                try:
                    cur = quantum_mutate(cur, k, seed)
                except NotLaurent:
                    ok = False
                    break
                seed = cur.seed
            results[w] = ok
    failures = [list(w) for w, ok in results.items() if not ok]
    return {"words": len(results), "failures": failures, "all_laurent": not failures}


def cluster_suite(depth: int = 4) -> List[CheckReport]:
    s = standard_seed()
    out: List[CheckReport] = []
    # seeds
    for k in (1, 2, 3):
        back = mutate_seed(mutate_seed(s, k), k)
        out.append(CheckReport(f"mu{k} involutive", back.epsilon == s.epsilon))
        s2 = mutate_seed(s, k)
        iso = all(s2.pairing(mutation_map(s, k, unit(i)), mutation_map(s, k, unit(j))) == s.epsilon[i - 1][j - 1]
                  for i in range(1, N + 1) for j in range(1, N + 1))
        out.append(CheckReport(f"mu{k} isometry", iso))
    out.append(CheckReport("kernel vector", s.kernel_contains(KERNEL_VECTOR)))
    out.append(CheckReport("m+ isometry", is_isometry(M_PLUS, mutate_seed(s, 1), s)))
    out.append(CheckReport("m- isometry", is_isometry(M_MINUS, mutate_seed(s, 3), s)))
    L10, D10 = loop_element((1, 0), "L"), loop_element((1, 0), "D")
    L01, D01 = loop_element((0, 1), "L"), loop_element((0, 1), "D")
    out.append(_eq_report("sigma+ fixes L10", act(("s+",), L10), L10))
    out.append(_eq_report("sigma+ fixes D10", act(("s+",), D10), D10))
    out.append(_eq_report("S(L10) = L01", act(WORD_S, L10), L01))
    out.append(_eq_report("S(D10) = D01", act(WORD_S, D10), D01))
    for i in range(1, N + 1):
        y = LaurentElement.monomial(unit(i))
        img = act(WORD_SIGMA, y, allow_fraction=True)
        target = LaurentElement.monomial(SIGMA_PERM[i - 1])
        if isinstance(img, RightFraction):
            out.append(CheckReport(f"sigma = listed permutation on Y_{i}", img.equals(target), None, "via fraction"))
        else:
            out.append(_eq_report(f"sigma = listed permutation on Y_{i}", img, target))
        six = y
        for _ in range(6):
            six = monomial_map(SIGMA_PERM, six, s)
        out.append(_eq_report(f"sigma^6 Y_{i} = Y_{i}", six, y))
    for c in ((0, -1), (1, -1)):
        out.append(_eq_report(f"L{c} via act", _curve_L(c), loop_element(c, "L")))
        out.append(_eq_report(f"D{c} via act", _curve_D(c), loop_element(c, "D")))
    for c in ((1, 0), (0, 1), (1, 1), (1, -1)):
        neg = (-c[0], -c[1])
        D, Dn = _curve_D(c), _curve_D(neg)
        one = LaurentElement.monomial((0,) * N)
        out.append(_eq_report(f"D{c} D{neg} = 1", D * Dn, one))
        out.append(_eq_report(f"L{neg} = D{c}^-1 L{c}", _curve_L(neg), D.inverse_monomial() * _curve_L(c)))
    base = commutator_check((1, 0), (0, 1))
    out.append(CheckReport("commutator [L10, L01]", bool(base["matches"]), None, f"matches {base['matches']}"))
    for name, el in (("L10", L10), ("D10", D10)):
        rep = universal_laurent_sample(el, depth)
        out.append(CheckReport(f"{name} universally Laurent to depth {depth}", rep["all_laurent"], None,
                               f"{rep['words']} words"))
    tr, det = network_trace_det()
    out.append(_eq_report("network trace = L10", tr, L10))
    out.append(_eq_report("network det = D10", det, D10))
    return out
