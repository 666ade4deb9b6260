"""Exact Weyl-exponential and difference-operator algebra.

Scalars are Laurent polynomials in ``q`` (half-integer exponents allowed) and
the central symbol ``T = e^{2 pi b tau}`` is carried as an exponent, so every
check here is an exact equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Tuple

from .errors import Mismatch
from .laurent import LaurentPoly, QRational

Q = LaurentPoly.gen("q")
L1 = LaurentPoly.gen("L1")
L2 = LaurentPoly.gen("L2")
TT = LaurentPoly.gen("t")

Vec2 = Tuple[Fraction, Fraction]


def _vec(v) -> Vec2:
    a, b = v
    return (Fraction(a), Fraction(b))


def _dot(u: Vec2, v: Vec2) -> Fraction:
    return u[0] * v[0] + u[1] * v[1]


def qpow(e) -> LaurentPoly:
    e = Fraction(e)
    return LaurentPoly.monomial({"q": e}) if e else LaurentPoly.const(1)


# ---------------------------------------------------------------------------
# Weyl exponentials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeylExponent:
    """q^phase * exp(2 pi b (alpha.p + beta.x + tau_deg * tau)), with [p_j, x_k] = delta_jk / (2 pi i)."""

    alpha: Vec2 = (Fraction(0), Fraction(0))
    beta: Vec2 = (Fraction(0), Fraction(0))
    tau_deg: Fraction = Fraction(0)
    phase: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "alpha", _vec(self.alpha))
        object.__setattr__(self, "beta", _vec(self.beta))
        object.__setattr__(self, "tau_deg", Fraction(self.tau_deg))
        object.__setattr__(self, "phase", Fraction(self.phase))

    @property
    def key(self):
        return (self.alpha, self.beta, self.tau_deg)

    def pairing(self, other: "WeylExponent") -> Fraction:
        """alpha.beta' - alpha'.beta; the product picks up q^{-pairing}."""
        return _dot(self.alpha, other.beta) - _dot(other.alpha, self.beta)

    def __mul__(self, other: "WeylExponent") -> "WeylExponent":
        a = (self.alpha[0] + other.alpha[0], self.alpha[1] + other.alpha[1])
        b = (self.beta[0] + other.beta[0], self.beta[1] + other.beta[1])
        return WeylExponent(a, b, self.tau_deg + other.tau_deg,
                            self.phase + other.phase - self.pairing(other))

    def inverse(self) -> "WeylExponent":
        return WeylExponent((-self.alpha[0], -self.alpha[1]), (-self.beta[0], -self.beta[1]),
                            -self.tau_deg, -self.phase)

    def bare(self) -> "WeylExponent":
        return WeylExponent(self.alpha, self.beta, self.tau_deg)

    def to_element(self) -> "WeylElement":
        return WeylElement({self.key: qpow(self.phase)})


class WeylElement:
    """Finite sum of exp(2 pi b (alpha.p + beta.x + tau_deg tau)) with coefficients in Z[q^{+-1/2}]."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, LaurentPoly] | None = None):
        self.terms: Dict[tuple, LaurentPoly] = {}
        for k, c in (terms or {}).items():
            c = LaurentPoly.coerce(c)
            if not c.is_zero():
                self.terms[k] = self.terms.get(k, LaurentPoly()) + c
                if self.terms[k].is_zero():
                    del self.terms[k]

    @staticmethod
    def one() -> "WeylElement":
        return WeylExponent().to_element()

    def __add__(self, other: "WeylElement") -> "WeylElement":
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, LaurentPoly()) + c
        return WeylElement(t)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "WeylElement":
        c = LaurentPoly.coerce(c)
        return WeylElement({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        out: Dict[tuple, LaurentPoly] = {}
        for k1, c1 in self.terms.items():
            e1 = WeylExponent(*k1)
            for k2, c2 in other.terms.items():
                e = e1 * WeylExponent(*k2)
                out[e.key] = out.get(e.key, LaurentPoly()) + c1 * c2 * qpow(e.phase)
        return WeylElement(out)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        return " + ".join(f"({c})*E{k}" for k, c in sorted(self.terms.items(), key=str)) or "0"

    def to_json(self):
        return [{"alpha": [str(a) for a in k[0]], "beta": [str(b) for b in k[1]], "tau_deg": str(k[2]),
                 "coeff": c.to_json()} for k, c in sorted(self.terms.items(), key=str)]

    def shift_terms(self) -> List[Tuple[LaurentPoly, Vec2, Fraction, Vec2]]:
        """Normal-ordered terms (scalar, beta, tau_deg, alpha): scalar e^{2 pi b (beta.x + tau_deg tau)} e^{2 pi b alpha.p}.

        Acting on f(x), e^{2 pi b alpha.p} is the shift x -> x - i b alpha.
        """
        out = []
        for (a, b_, td), c in sorted(self.terms.items(), key=str):
            s, _ = normal_order(WeylExponent(a, b_, td))
            out.append((c * s, b_, td, a))
        return out


def normal_order(e: WeylExponent) -> Tuple[LaurentPoly, Tuple[WeylExponent, WeylExponent]]:
    """Split e = scalar * exp(2 pi b beta.x) exp(2 pi b alpha.p), positions to the left."""
    xpart = WeylExponent((0, 0), e.beta, e.tau_deg)
    ppart = WeylExponent(e.alpha, (0, 0))
    prod = xpart * ppart
    scalar_exp = e.phase - prod.phase
    if prod.bare() != e.bare():
        raise Mismatch("normal ordering round trip failed")
    return qpow(scalar_exp), (xpart, ppart)


def toda_mixed_term_scalar() -> int:
    """q-exponent k in e^{2 pi b (p2 + x2 - x1)} = q^k e^{2 pi b (x2 - x1)} e^{2 pi b p2}."""
    s, _ = normal_order(WeylExponent((0, 1), (-1, 1)))
    (mono, coeff), = s.terms.items()
    assert coeff == 1
    exps = dict(mono)
    k = exps.get("q", 0)
    if Fraction(k).denominator != 1:
        raise Mismatch("non-integer normal ordering exponent")
    return int(k)


# ---------------------------------------------------------------------------
# polarization of the punctured-torus quiver
# ---------------------------------------------------------------------------

# images of y_1..y_5 as (alpha, beta, tau coefficient)
POLARIZATION = (
    ((1, -1), (1, -1), 0),
    ((0, 0), (-1, 1), 0),
    ((-1, 1), (0, 0), -2),
    ((0, 1), (0, 0), 0),
    ((0, 0), (-1, 0), 1),
)


def polarize_exponent(v: Iterable[int]) -> WeylExponent:
    v = list(v)
    if len(v) != 5:
        raise ValueError("need a vector in Z^5")
    a = [Fraction(0), Fraction(0)]
    b = [Fraction(0), Fraction(0)]
    td = Fraction(0)
    for c, (al, be, t) in zip(v, POLARIZATION):
        a[0] += c * al[0]
        a[1] += c * al[1]
        b[0] += c * be[0]
        b[1] += c * be[1]
        td += c * t
    return WeylExponent(tuple(a), tuple(b), td)


def polarize(v: Iterable[int], ctx=None) -> WeylElement:
    """Image of Y_v = e^{2 pi b y_v}; ``ctx`` is accepted for interface symmetry and unused."""
    return polarize_exponent(v).to_element()


def polarized_pairing(u, v) -> Fraction:
    return polarize_exponent(u).pairing(polarize_exponent(v))


def polarize_laurent(elem) -> WeylElement:
    """Polarize a qcluster LaurentElement term by term."""
    out = WeylElement()
    for vec, c in elem.terms.items():
        out = out + polarize(vec).scale(c)
    return out


def holonomy_operators() -> Dict[str, WeylElement]:
    """The four displayed operator images, written directly as Weyl exponentials."""
    E = lambda a, b, t=0: WeylExponent(a, b, t).to_element()
    return {
        "L10": E((0, 1), (0, 0)) + E((0, 1), (-1, 1)) + E((1, 0), (0, 0)),
        "D10": E((1, 1), (0, 0)),
        "L01": E((0, 0), (1, 0), -1) + E((1, -1), (1, 0), 1) + E((0, 0), (0, 1), 1),
        "D01": E((0, 0), (1, 1)),
    }


@dataclass
class IdentityReport:
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


def check_holonomy_images(raise_on_fail: bool = False) -> List[IdentityReport]:
    from . import qcluster

    targets = holonomy_operators()
    sources = {
        "L10": qcluster.loop_element((1, 0), "L"),
        "D10": qcluster.loop_element((1, 0), "D"),
        "L01": qcluster.loop_element((0, 1), "L"),
        "D01": qcluster.loop_element((0, 1), "D"),
    }
    out = []
    for name, elem in sources.items():
        diff = polarize_laurent(elem) - targets[name]
        rep = IdentityReport(f"holonomy image {name}", diff.is_zero(), None if diff.is_zero() else diff)
        if raise_on_fail and not rep.passed:
            raise Mismatch(rep.name, diff)
        out.append(rep)
    # the determinant images q-commute; the exponent must match the quiver pairing
    d10, d01 = targets["D10"], targets["D01"]
    pair = qcluster.standard_seed().pairing(next(iter(sources["D10"].terms)), next(iter(sources["D01"].terms)))
    comm = d10 * d01 - (d01 * d10).scale(qpow(-2 * pair))
    out.append(IdentityReport("Delta10 Delta01 q-commutation", comm.is_zero(), None if comm.is_zero() else comm,
                              f"Delta10 Delta01 = q^{-2 * pair} Delta01 Delta10"))
    return out


# ---------------------------------------------------------------------------
# difference operators in the spectral variables
# ---------------------------------------------------------------------------

def _coerce_rat(c) -> QRational:
    return c if isinstance(c, QRational) else QRational(LaurentPoly.coerce(c))


class LambdaDiffOp:
    """sum_s c_s(L1, L2, t, q) T1^{s1} T2^{s2}, shifts kept on the right; T_j: L_j -> q^2 L_j."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Tuple[int, int], object] | None = None):
        self.terms: Dict[Tuple[int, int], QRational] = {}
        for s, c in (terms or {}).items():
            c = _coerce_rat(c)
            if s in self.terms:
                c = self.terms[s] + c
            if c.is_zero():
                self.terms.pop(s, None)
            else:
                self.terms[s] = c

    @staticmethod
    def shift(a: int = 0, b: int = 0) -> "LambdaDiffOp":
        return LambdaDiffOp({(a, b): 1})

    @staticmethod
    def mult(c) -> "LambdaDiffOp":
        return LambdaDiffOp({(0, 0): c})

    def __add__(self, other: "LambdaDiffOp") -> "LambdaDiffOp":
        t = dict(self.terms)
        for s, c in other.terms.items():
            t[s] = t[s] + c if s in t else c
        return LambdaDiffOp(t)

    def __neg__(self):
        return LambdaDiffOp({s: -c for s, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LambdaDiffOp):
            return LambdaDiffOp({s: c * _coerce_rat(other) for s, c in self.terms.items()})
        out: Dict[Tuple[int, int], QRational] = {}
        for (a, b), c1 in self.terms.items():
            sub = {"L1": Q ** (2 * a) * L1, "L2": Q ** (2 * b) * L2}
            for (a2, b2), c2 in other.terms.items():
                moved = _coerce_rat(c2.subs(sub))
                key = (a + a2, b + b2)
                val = c1 * moved
                out[key] = out[key] + val if key in out else val
        return LambdaDiffOp(out)

    def __rmul__(self, scalar):
        return LambdaDiffOp({s: _coerce_rat(scalar) * c for s, c in self.terms.items()})

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.terms.values())

    def __eq__(self, other):
        return isinstance(other, LambdaDiffOp) and (self - other).is_zero()

    __hash__ = None

    def subs(self, mapping) -> "LambdaDiffOp":
        return LambdaDiffOp({s: _coerce_rat(c.subs(mapping)) for s, c in self.terms.items()})

    def __repr__(self):
        return " + ".join(f"[{c}]T{s}" for s, c in sorted(self.terms.items())) or "0"

    def to_json(self):
        return {f"{s[0]},{s[1]}": {"num": c.num.to_json(), "den": c.den.to_json()} for s, c in sorted(self.terms.items())}


def macdonald_op(j: int) -> LambdaDiffOp:
    if j == 2:
        return LambdaDiffOp.shift(1, 1)
    c1 = (TT * L1 - TT ** -1 * L2) / (L1 - L2)
    c2 = (TT * L2 - TT ** -1 * L1) / (L2 - L1)
    return LambdaDiffOp({(1, 0): c1, (0, 1): c2})


def dual_toda_closed(n: int) -> LambdaDiffOp:
    """q^n (L1^n / (1 - L1/L2) T1 + L2^n / (1 - L2/L1) T2)."""
    c1 = Q ** n * L1 ** n * L2 / (L2 - L1)
    c2 = Q ** n * L2 ** n * L1 / (L1 - L2)
    return LambdaDiffOp({(1, 0): c1, (0, 1): c2})


def gamma_twist(op: LambdaDiffOp, n: int = 1) -> LambdaDiffOp:
    """Conjugation by gamma, applied n times, via gamma T_j gamma^-1 = q L_j T_j."""
    rule = {1: LambdaDiffOp({(1, 0): Q * L1}), 2: LambdaDiffOp({(0, 1): Q * L2})}
    for _ in range(n):
        new = LambdaDiffOp()
        for (a, b), c in op.terms.items():
            if a < 0 or b < 0:
                raise ValueError("twist rule implemented for non-negative shifts")
            term = LambdaDiffOp.mult(c)
            for _ in range(a):
                term = term * rule[1]
            for _ in range(b):
                term = term * rule[2]
            new = new + term
        op = new
    return op


def lambda_op_identity_suite(raise_on_fail: bool = False) -> List[IdentityReport]:
    M1, M2 = macdonald_op(1), macdonald_op(2)
    H10 = dual_toda_closed(0)
    H12 = dual_toda_closed(2)
    checks = []
    # (i) the t -> 0 limit of t M1
    tm1 = (M1 * TT).subs({"t": 0})
    checks.append(("H_{1,0} = (t M_1)|_{t=0}", tm1 - H10))
    # (ii) twist rule against the closed form
    for n in (1, 2, 3):
        checks.append((f"twist n={n}", gamma_twist(H10, n) - dual_toda_closed(n)))
    # (iii) expansion of M1 in twisted dual Toda operators
    rhs = LambdaDiffOp.mult(TT ** -1) * H10 - LambdaDiffOp.mult(Q ** -2 * TT / (L1 * L2)) * H12
    checks.append(("M_1 = t^-1 H_{1,0} - q^-2 t/(L1 L2) H_{1,2}", M1 - rhs))
    # (iv) commutativity
    checks.append(("[M_1, M_2] = 0", M1 * M2 - M2 * M1))
    out = []
    for name, diff in checks:
        ok = diff.is_zero()
        if raise_on_fail and not ok:
            raise Mismatch(name, diff)
        out.append(IdentityReport(name, ok, None if ok else diff))
    return out


def homomorphism_defect(u, v) -> WeylElement:
    """polarize(u) polarize(v) q^{(u,v)} - polarize(u + v), which vanishes identically."""
    from .qcluster import standard_seed

    eps = standard_seed().pairing(u, v)
    lhs = (polarize(u) * polarize(v)).scale(qpow(eps))
    w = [a + b for a, b in zip(u, v)]
    return lhs - polarize(w)


def operator_suite(pairs: int = 50, seed: int = 0) -> List[IdentityReport]:
    """Holonomy images, spectral-operator identities and the polarization
    homomorphism on ``pairs`` seeded random lattice vector pairs."""
    import random

    out = check_holonomy_images() + lambda_op_identity_suite()
    rng = random.Random(seed)
    bad = 0
    for _ in range(pairs):
        u = [rng.randint(-3, 3) for _ in range(5)]
        v = [rng.randint(-3, 3) for _ in range(5)]
        if not homomorphism_defect(u, v).is_zero():
            bad += 1
    out.append(IdentityReport("polarization_homomorphism", bad == 0, None,
                              f"{bad} defects over {pairs} pairs"))
    return out
