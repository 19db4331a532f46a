"""Rigorous brackets for the growth constant of the d = 2 families.

Every irrational quantity (logarithms) is evaluated in MPFR with the
rounding direction fixed per endpoint: lower endpoints round toward
-inf, upper endpoints toward +inf. All rational ingredients (ratios, the
polynomial corrections, c(m), d(m)) are exact ``mpq`` values and are rounded
only once, in the same direction as the endpoint they feed. Every bound
formula below is a sum of terms with positive weights, except the one
subtracted term in the improved lower bound, which is folded into an exact
rational before rounding.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import gmpy2
from gmpy2 import mpq, mpz

from .partitions import Shape
from .sequences import ratios

METHODS = ("lemma6", "improved", "sg23", "sg24")
METHOD_FAMILY = {"lemma6": 2, "improved": 2, "sg23": 3, "sg24": 4}

_F, _G = Shape((3,)), Shape((2, 1))


def _bits(precision: int) -> int:
    return int(precision * 3.33) + 16


class _Directed:
    """MPFR arithmetic with one fixed rounding direction."""

    def __init__(self, precision: int, upward: bool):
        mode = gmpy2.RoundUp if upward else gmpy2.RoundDown
        self.ctx = gmpy2.context(precision=_bits(precision), round=mode)

    def ln(self, x):
        # conversion of a big integer or rational is itself directed
        with self.ctx:
            return gmpy2.log(gmpy2.mpfr(x))

    def num(self, q):
        with self.ctx:
            return gmpy2.mpfr(q)

    def add(self, *xs):
        with self.ctx:
            total = gmpy2.mpfr(0)
            for x in xs:
                total = total + x
            return total

    def mul(self, x, y):
        with self.ctx:
            return x * y

    def div(self, x, y):
        with self.ctx:
            return x / y


@dataclass(frozen=True)
class BoundsReport:
    d: int
    b: int
    m: int
    lower: object  # mpfr, rounded down
    upper: object  # mpfr, rounded up
    method: str
    precision: int = 50

    @property
    def width(self):
        with gmpy2.context(precision=_bits(self.precision), round=gmpy2.RoundUp):
            return self.upper - self.lower

    def contains(self, x) -> bool:
        x = gmpy2.mpfr(x) if isinstance(x, str) else x
        return self.lower <= x <= self.upper

    def as_row(self, digits: int | None = None) -> dict:
        digits = digits or self.precision
        return {
            "m": self.m,
            "lower": _fmt(self.lower, digits, gmpy2.RoundDown),
            "upper": _fmt(self.upper, digits, gmpy2.RoundUp),
            "width": _fmt(self.width, 6, gmpy2.RoundUp),
            "method": self.method,
        }

    def to_json(self) -> str:
        return json.dumps({"d": self.d, "b": self.b, **self.as_row()})


def _fmt(x, digits: int, mode) -> str:
    with gmpy2.context(precision=_bits(digits), round=mode):
        return gmpy2.mpfr(x).__format__(f".{digits}g")


def _stage(vectors, m):
    for v in vectors:
        if v.stage == m:
            return v
    raise ValueError(f"stage {m} not among the computed vectors")


def _log_fg(r: _Directed, v, weights=(1, 1)):
    wf, wg = weights
    return r.add(r.mul(r.ln(mpz(v.counts[_F])), wf), r.mul(r.ln(mpz(v.counts[_G])), wg))


def bounds_lemma6(m: int, vectors, precision: int = 50) -> BoundsReport:
    """ [ln(f g) + ln(60)/2] / 3^{m+1}  <=  z  <=  [ln(f g) + ln(A B)/2] / 3^{m+1}

    with A = 6 + alpha and B = 7 + alpha + alpha/beta at stage m.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    v = _stage(vectors, m)
    a, bb = ratios([v]).at(m)
    scale = mpz(3) ** (m + 1)
    lo, hi = _Directed(precision, False), _Directed(precision, True)
    lower = lo.div(lo.add(_log_fg(lo, v), lo.div(lo.ln(mpz(60)), 2)), scale)
    ab = (6 + a) * (7 + a + a / bb)
    upper = hi.div(hi.add(_log_fg(hi, v), hi.div(hi.ln(ab), 2)), scale)
    return BoundsReport(2, 2, m, lower, upper, "lemma6", precision)


def c_of(a, b):
    return (6 + a) / (10 + a)


def d_of(a, b):
    return 6 * b / (a + 7 * b)


def bounds_improved(m: int, vectors, precision: int = 50) -> BoundsReport:
    """Sharper bracket using the geometric decay factors c(m) and d(m)."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    v = _stage(vectors, m)
    a, b = ratios([v]).at(m)
    c, dd = c_of(a, b), d_of(a, b)
    scale = mpz(3) ** (m + 1)
    lo, hi = _Directed(precision, False), _Directed(precision, True)
    upper_rational = a / (3 - c) * (mpq(1, 6) + b / (7 * b + a))
    upper = hi.div(
        hi.add(_log_fg(hi, v), hi.div(hi.ln(42 + 6 * a / b), 2), hi.num(upper_rational)),
        scale,
    )
    lower_rational = 4 * a / (15 * (3 - dd)) - 17 * a * a / (900 * (3 - dd * dd))
    lower = lo.div(
        lo.add(_log_fg(lo, v), lo.div(lo.ln(mpz(60)), 2), lo.num(lower_rational)),
        scale,
    )
    return BoundsReport(2, 2, m, lower, upper, "improved", precision)


def p23(a, b):
    return 142 + 18 * a / b + 78 * a + 3 * a**2 / b + 15 * a**2 + a**3


def q23(a, b):
    return (171 + 77 * a / b + 2 * a**2 / b**2 + 89 * a + 18 * a**2 / b
            + 16 * a**2 + a**3 / b + a**3)


def p24(a, b):
    r = a / b
    return (11354 + 5856 * r + 516 * r**2 + 2 * r**3 + 13626 * a + 4140 * a * r
            + 174 * a * r**2 + 6936 * a**2 + 1140 * a**2 * r + 15 * a**2 * r**2
            + 1928 * a**3 + 144 * a**3 * r + 309 * a**4 + 7 * a**4 * r
            + 27 * a**5 + a**6)


def q24(a, b):
    r = a / b
    return (13732 + 14480 * r + 2786 * r**2 + 82 * r**3 + 16250 * a
            + 10609 * a * r + 1095 * a * r**2 + 12 * a * r**3 + 8015 * a**2
            + 3130 * a**2 * r + 142 * a**2 * r**2 + 2148 * a**3 + 462 * a**3 * r
            + 6 * a**3 * r**2 + 332 * a**4 + 34 * a**4 * r + 28 * a**5
            + a**5 * r + a**6)


def _bounds_generalized(m, vectors, precision, *, method, b, weights, denom,
                        corr_denom, p, q, p_limit, q_limit):
    if m < 1:
        raise ValueError("m must be a positive integer")
    v = _stage(vectors, m)
    a, bb = ratios([v]).at(m)
    wf, wg = weights
    lo, hi = _Directed(precision, False), _Directed(precision, True)

    def endpoint(r, pv, qv):
        main = r.div(_log_fg(r, v, weights), denom)
        corr = r.div(r.add(r.mul(r.ln(pv), wf), r.mul(r.ln(qv), wg)), corr_denom)
        return r.add(main, corr)

    lower = endpoint(lo, mpz(p_limit), mpz(q_limit))
    upper = endpoint(hi, p(a, bb), q(a, bb))
    return BoundsReport(2, b, m, lower, upper, method, precision)


def bounds_sg23(m: int, vectors, precision: int = 50) -> BoundsReport:
    """[2 ln f + 3 ln g]/(7*6^m) + [2 ln P + 3 ln Q]/(35*6^m), P,Q -> 196, 420 below."""
    return _bounds_generalized(
        m, vectors, precision, method="sg23", b=3, weights=(2, 3),
        denom=7 * mpz(6) ** m, corr_denom=35 * mpz(6) ** m,
        p=p23, q=q23, p_limit=196, q_limit=420,
    )


def bounds_sg24(m: int, vectors, precision: int = 50) -> BoundsReport:
    """[ln f + 2 ln g]/(4*10^m) + [ln P + 2 ln Q]/(36*10^m), P,Q -> 33620, 84460 below."""
    return _bounds_generalized(
        m, vectors, precision, method="sg24", b=4, weights=(1, 2),
        denom=4 * mpz(10) ** m, corr_denom=36 * mpz(10) ** m,
        p=p24, q=q24, p_limit=33620, q_limit=84460,
    )


_DISPATCH = {
    "lemma6": bounds_lemma6,
    "improved": bounds_improved,
    "sg23": bounds_sg23,
    "sg24": bounds_sg24,
}


def compute_bounds(method: str, m: int, vectors, precision: int = 50) -> BoundsReport:
    try:
        fn = _DISPATCH[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}") from None
    return fn(m, vectors, precision)
