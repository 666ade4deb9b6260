"""Exact multivariate Laurent polynomials and their quotients.

Monomials are keyed by sorted tuples of ``(variable, exponent)`` pairs; exponents
may be :class:`fractions.Fraction` so that half-integer powers of ``q`` can be
carried around without special casing. Coefficients are ``int`` or ``Fraction``.

Equality of :class:`QRational` values is decided by cross multiplication, so no
multivariate gcd is ever needed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Mapping, Tuple, Union

Monomial = Tuple[Tuple[str, Union[int, Fraction]], ...]
Scalar = Union[int, Fraction]

ONE_MONO: Monomial = ()


def _norm_exp(e):
    if isinstance(e, Fraction) and e.denominator == 1:
        return int(e)
    return e


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _mono_key(m: Monomial, order):
    d = dict(m)
    return tuple(d.get(v, 0) for v in order)


def _low_exps(p: "LaurentPoly", order):
    lo = {}
    for m in p._terms:
        d = dict(m)
        for v in order:
            e = d.get(v, 0)
            if v not in lo or e < lo[v]:
                lo[v] = e
    return lo


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        ne = d.get(v, 0) + e
        if ne:
            d[v] = _norm_exp(ne)
        else:
            d.pop(v, None)
    return tuple(sorted(d.items()))


def mono_pow(a: Monomial, k) -> Monomial:
    if k == 0:
        return ONE_MONO
    return tuple((v, _norm_exp(e * k)) for v, e in a)


class LaurentPoly:
    """A finite sum of coefficient * monomial with exact coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        t: Dict[Monomial, Scalar] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    t[m] = _norm_coeff(c)
        self._terms = t

    # construction -----------------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "LaurentPoly":
        return cls({ONE_MONO: c})

    @classmethod
    def gen(cls, name: str, exp=1) -> "LaurentPoly":
        exp = _norm_exp(Fraction(exp)) if not isinstance(exp, int) else exp
        if exp == 0:
            return cls.const(1)
        return cls({((name, exp),): 1})

    @classmethod
    def monomial(cls, exps: Mapping[str, Scalar], coeff: Scalar = 1) -> "LaurentPoly":
        m = tuple(sorted((v, _norm_exp(e)) for v, e in exps.items() if e))
        return cls({m: coeff})

    @staticmethod
    def coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPoly.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # inspection -------------------------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, Scalar]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def variables(self) -> set:
        return {v for m in self._terms for v, _ in m}

    def degree_range(self, var: str):
        exps = [dict(m).get(var, 0) for m in self._terms]
        if not exps:
            return (0, 0)
        return (min(exps), max(exps))

    def coefficients_in(self, var: str) -> Dict[Scalar, "LaurentPoly"]:
        """Group terms by the exponent of ``var``."""
        out: Dict[Scalar, Dict[Monomial, Scalar]] = {}
        for m, c in self._terms.items():
            d = dict(m)
            e = d.pop(var, 0)
            out.setdefault(e, {})[tuple(sorted(d.items()))] = c
        return {e: LaurentPoly(t) for e, t in out.items()}

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            if isinstance(c, Fraction):
                return 1
            g = gcd(g, c)
        return g or 1

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        t = dict(self._terms)
        for m, c in other._terms.items():
            nc = t.get(m, 0) + c
            if nc:
                t[m] = nc
            else:
                t.pop(m, None)
        return LaurentPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, QRational):
            return NotImplemented
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        t: Dict[Monomial, Scalar] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                nc = t.get(m, 0) + c1 * c2
                if nc:
                    t[m] = nc
                else:
                    t.pop(m, None)
        return LaurentPoly(t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (m, c), = self._terms.items()
            c = Fraction(1, 1) / c
            return LaurentPoly({mono_pow(m, k): c ** (-k)})
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({m: Fraction(c) / other for m, c in self._terms.items()})
        other = LaurentPoly.coerce(other)
        if other.is_monomial():
            return self * other ** -1
        return QRational(self, other)

    def __rtruediv__(self, other):
        return QRational(LaurentPoly.coerce(other), self)

    def __eq__(self, other):
        if isinstance(other, QRational):
            return other == self
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # exact division -----------------------------------------------------------
    def _lead(self, order):
        m = max(self._terms, key=lambda mo: _mono_key(mo, order))
        return m, self._terms[m]

    def divide_exact(self, other: "LaurentPoly"):
        """Return self/other if it is a Laurent polynomial, else None.

        Lexicographic long division; monomials may carry negative exponents
        because leading terms are simply divided off.
        """
        other = LaurentPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        order = sorted(self.variables() | other.variables())
        lo_d = _low_exps(other, order)
        lo_n = _low_exps(self, order)
        dm, dc = other._lead(order)
        rem = self
        quot = LaurentPoly()
        # the quotient's exponent in each variable is bounded below by lo_n - lo_d
        floor = {v: lo_n.get(v, 0) - lo_d.get(v, 0) for v in order}
        steps = 0
        while not rem.is_zero():
            rm, rc = rem._lead(order)
            qm = mono_mul(rm, mono_pow(dm, -1))
            qd = dict(qm)
            if any(qd.get(v, 0) < floor[v] for v in order):
                return None
            qc = Fraction(rc) / dc
            t = LaurentPoly({qm: qc})
            quot = quot + t
            rem = rem - t * other
            steps += 1
            if steps > 100000:
                return None
        return quot

    # substitution / evaluation ----------------------------------------------
    def subs(self, mapping: Mapping[str, object]):
        """Substitute variables by Laurent polynomials, rationals, or numbers.

        Negative exponents require the substituted value to be invertible
        (a monomial, a nonzero number, or a QRational).
        """
        result = LaurentPoly()
        rational = False
        acc = []
        for m, c in self._terms.items():
            term = LaurentPoly.const(c)
            rest = []
            for v, e in m:
                if v in mapping:
                    val = mapping[v]
                    if isinstance(e, Fraction):
                        raise ValueError("cannot substitute into a fractional power")
                    if isinstance(val, QRational):
                        rational = True
                        term = (term if isinstance(term, QRational) else QRational(term)) * val ** e
                    elif isinstance(val, LaurentPoly):
                        if e < 0 and not val.is_monomial():
                            rational = True
                            term = QRational(term) / val ** (-e)
                        else:
                            term = term * val ** e
                    else:
                        if isinstance(val, (int, Fraction)):
                            if e < 0:
                                term = term * LaurentPoly.const(Fraction(1) / Fraction(val) ** (-e))
                            else:
                                term = term * (val ** e)
                        else:
                            raise TypeError("substitute exact values only; use evaluate() for floats")
                else:
                    rest.append((v, e))
            term = term * LaurentPoly({tuple(rest): 1})
            acc.append(term)
        if rational:
            out = QRational(LaurentPoly())
            for t in acc:
                out = out + t
            return out
        for t in acc:
            result = result + t
        return result

    def evaluate(self, values: Mapping[str, complex]) -> complex:
        total = 0j
        for m, c in self._terms.items():
            v = complex(c)
            for name, e in m:
                v *= complex(values[name]) ** float(e) if isinstance(e, Fraction) else complex(values[name]) ** e
            total += v
        return total

    # display ----------------------------------------------------------------
    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in sorted(self._terms.items(), key=lambda mc: str(mc[0])):
            mon = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{c}*{mon}")
        return " + ".join(parts)

    def to_json(self):
        return [[[list(p) for p in m], str(c)] for m, c in sorted(self._terms.items(), key=lambda mc: str(mc[0]))]


class QRational:
    """Quotient of two Laurent polynomials; equality by cross multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, reduce: bool = True):
        num = LaurentPoly.coerce(num)
        den = LaurentPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("QRational with zero denominator")
        if den.is_monomial():
            num = num * den ** -1
            den = LaurentPoly.const(1)
        elif reduce and not num.is_zero():
            qt = num.divide_exact(den)
            if qt is not None:
                num, den = qt, LaurentPoly.const(1)
        if not den.is_monomial():
            g = gcd(num.content(), den.content()) if not num.is_zero() else den.content()
            # keep a positive leading coefficient in the denominator
            lead = max(den._terms.items(), key=lambda mc: str(mc[0]))[1]
            if lead < 0:
                g = -g
            if g not in (0, 1):
                num = LaurentPoly({m: _norm_coeff(Fraction(c) / g) for m, c in num._terms.items()})
                den = LaurentPoly({m: _norm_coeff(Fraction(c) / g) for m, c in den._terms.items()})
        self.num = num
        self.den = den

    @staticmethod
    def coerce(x) -> "QRational":
        if isinstance(x, QRational):
            return x
        return QRational(LaurentPoly.coerce(x))

    def is_polynomial(self) -> bool:
        return self.den == LaurentPoly.const(1)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        try:
            o = QRational.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return QRational(self.num + o.num, self.den)
        return QRational(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return QRational(-self.num, self.den)

    def __sub__(self, other):
        return self + (-QRational.coerce(other))

    def __rsub__(self, other):
        return QRational.coerce(other) - self

    def __mul__(self, other):
        try:
            o = QRational.coerce(other)
        except TypeError:
            return NotImplemented
        return QRational(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QRational.coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero QRational")
        return QRational(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return QRational.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return QRational(self.den ** (-k), self.num ** (-k))
        return QRational(self.num ** k, self.den ** k)

    def __eq__(self, other):
        try:
            o = QRational.coerce(other)
        except TypeError:
            return NotImplemented
        return (self.num * o.den - o.num * self.den).is_zero()

    __hash__ = None

    def subs(self, mapping):
        n = self.num.subs(mapping)
        d = self.den.subs(mapping)
        return QRational.coerce(n) / QRational.coerce(d)

    def evaluate(self, values) -> complex:
        d = self.den.evaluate(values)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return self.num.evaluate(values) / d

    def __repr__(self):
        if self.is_polynomial():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def var(name: str) -> LaurentPoly:
    return LaurentPoly.gen(name)


def as_exact(x):
    """Wrap ints/Fractions so mixed arithmetic lands in the exact ring."""
    if isinstance(x, (LaurentPoly, QRational)):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    return x


def is_exact(x) -> bool:
    return isinstance(x, (LaurentPoly, QRational, int, Fraction))
