"""Exact arithmetic in the ring Q + Q*alpha for a fixed real quadratic irrational alpha.

Every value ``a + b*alpha`` is stored as a pair of fractions, so equality is
structural and every sign decision terminates: ``a + b*alpha == 0`` only when
``a == b == 0``.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Tuple, Union

Rational = Union[int, Fraction]

# width of the cached isolating interval used for quick sign decisions
_CACHE_BITS = 64


def _sgn(n) -> int:
    return (n > 0) - (n < 0)


class Alpha:
    """A real quadratic irrational in (0, 1).

    Given by an integer minimal polynomial ``c2*x**2 + c1*x + c0`` and a
    rational isolating interval ``(lo, hi)`` holding exactly one of its roots.
    An eventually periodic continued fraction ``(preperiod, period)`` may be
    attached; it is checked exactly against the root.
    """

    __slots__ = ("c2", "c1", "c0", "disc", "lo", "hi", "_upper", "_fast",
                 "_sign_lo", "preperiod", "period", "name")

    def __init__(self, poly: Sequence[int], iso: Tuple[Rational, Rational],
                 cf: Optional[Tuple[Sequence[int], Sequence[int]]] = None,
                 name: Optional[str] = None):
        c2, c1, c0 = (int(c) for c in poly)
        if c2 == 0:
            raise ValueError("minimal polynomial must have degree exactly 2")
        if c2 < 0:
            c2, c1, c0 = -c2, -c1, -c0
        g = math.gcd(math.gcd(c2, c1), c0)
        c2, c1, c0 = c2 // g, c1 // g, c0 // g
        disc = c1 * c1 - 4 * c2 * c0
        if disc < 0:
            raise ValueError("polynomial has no real roots")
        if math.isqrt(disc) ** 2 == disc:
            raise ValueError("polynomial is reducible over Q (square discriminant)")
        self.c2, self.c1, self.c0, self.disc = c2, c1, c0, disc

        lo, hi = Fraction(iso[0]), Fraction(iso[1])
        if not 0 <= lo < hi <= 1:
            raise ValueError("isolating interval must satisfy 0 <= lo < hi <= 1")
        s_lo, s_hi = self._poly_sign(lo), self._poly_sign(hi)
        if s_lo * s_hi >= 0:
            raise ValueError("isolating interval must contain exactly one root")
        self.lo, self.hi = lo, hi
        self._sign_lo = s_lo
        # which root: the larger one iff it exceeds the vertex -c1/(2 c2)
        self._fast = (lo, hi)
        self._upper = self.cmp_rational(-c1, 2 * c2) > 0
        # just left of the upper root the polynomial is negative, of the lower positive
        self._sign_lo = -1 if self._upper else 1
        self._fast = self.interval(_CACHE_BITS + c2.bit_length())

        self.name = name
        self.preperiod: Tuple[int, ...] = ()
        self.period: Tuple[int, ...] = ()
        if cf is not None:
            self._check_cf(tuple(cf[0]), tuple(cf[1]))
            self.preperiod, self.period = tuple(cf[0]), tuple(cf[1])

    # -- construction helpers -------------------------------------------------

    @staticmethod
    @functools.lru_cache(maxsize=None)
    def named(name: str) -> "Alpha":
        """``golden`` is (sqrt(5)-1)/2, ``sqrt2m1`` is sqrt(2)-1."""
        if name == "golden":
            return Alpha((1, 1, -1), (Fraction(1, 2), 1), cf=((0,), (1,)), name=name)
        if name == "sqrt2m1":
            return Alpha((1, 2, -1), (0, Fraction(1, 2)), cf=((0,), (2,)), name=name)
        raise KeyError(name)

    # -- root location --------------------------------------------------------

    def _poly_sign(self, t: Fraction) -> int:
        n, d = t.numerator, t.denominator
        return _sgn((self.c2 * n + self.c1 * d) * n + self.c0 * d * d)

    def cmp_rational(self, n: int, d: int) -> int:
        """Return sign(alpha - n/d); requires d > 0."""
        lo, hi = self._fast
        if n * lo.denominator <= lo.numerator * d:
            return 1
        if n * hi.denominator >= hi.numerator * d:
            return -1
        v = (self.c2 * n + self.c1 * d) * n + self.c0 * d * d
        return 1 if _sgn(v) == self._sign_lo else -1

    def interval(self, bits: int) -> Tuple[Fraction, Fraction]:
        """Certified rational enclosure of alpha of width at most 2**-bits."""
        # alpha = (-c1 +/- sqrt(disc)) / (2 c2); enclose sqrt(disc) with isqrt
        k = max(bits, 0) + 1
        s = math.isqrt(self.disc << (2 * k))
        den = 2 * self.c2 << k
        base = -self.c1 << k
        if self._upper:
            return Fraction(base + s, den), Fraction(base + s + 1, den)
        return Fraction(base - s - 1, den), Fraction(base - s, den)

    @property
    def conjugate_sum(self) -> Fraction:
        return Fraction(-self.c1, self.c2)

    @property
    def norm(self) -> Fraction:
        return Fraction(self.c0, self.c2)

    def _key(self):
        return (self.c2, self.c1, self.c0, self._upper)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Alpha):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.name:
            return f"Alpha({self.name!r})"
        return f"Alpha(poly=({self.c2}, {self.c1}, {self.c0}), iso=({self.lo}, {self.hi}))"

    def spec(self) -> str:
        """Text form accepted by :func:`parse_alpha`."""
        if self.name:
            return self.name
        text = f"poly:{self.c2},{self.c1},{self.c0};iso:{self.lo},{self.hi}"
        if self.period:
            pre = ",".join(map(str, self.preperiod[1:]))
            text += f";cf:{self.preperiod[0]};{pre}({','.join(map(str, self.period))})"
        return text

    # -- values ---------------------------------------------------------------

    def qa(self, value=0, b: Rational = 0) -> "QuadraticAffine":
        """Coerce ``value`` (QuadraticAffine, int or Fraction) into this ring."""
        if isinstance(value, QuadraticAffine):
            if b:
                raise TypeError("b given together with a QuadraticAffine value")
            value._check(self)
            return value
        return QuadraticAffine(value, b, self)

    @property
    def value(self) -> "QuadraticAffine":
        return QuadraticAffine(0, 1, self)

    # -- continued fractions --------------------------------------------------

    def partial_quotients(self) -> Iterator[int]:
        """Partial quotients of alpha, from the attached description or exactly."""
        if self.period:
            yield from self.preperiod
            while True:
                yield from self.period
        else:
            yield from _exact_partial_quotients(self.value)

    def _check_cf(self, pre: Tuple[int, ...], per: Tuple[int, ...]):
        if not pre or not per or any(a <= 0 for a in per) or any(a <= 0 for a in pre[1:]):
            raise ValueError("continued fraction needs a0; positive partial quotients; nonempty period")
        x = self.value
        complete = []
        for expected in pre + per:
            complete.append(x)
            a = x.floor()
            if a != expected:
                raise ValueError("continued fraction does not describe the isolated root")
            x = (x - a).inverse()
        if x != complete[len(pre)]:
            raise ValueError("continued fraction period does not close up at the isolated root")


def _exact_partial_quotients(x: "QuadraticAffine") -> Iterator[int]:
    while True:
        a = x.floor()
        yield a
        x = (x - a).inverse()


def _sign(a: Fraction, b: Fraction, alpha: Alpha) -> int:
    """sign(a + b*alpha)."""
    if not b:
        return _sgn(a)
    # a + b alpha has the sign of b * (alpha - t), t = -a/b
    n = -a.numerator * b.denominator
    d = a.denominator * b.numerator
    if d < 0:
        n, d = -n, -d
    s = alpha.cmp_rational(n, d)
    return s if b > 0 else -s


class QuadraticAffine:
    """The exact real ``a + b*alpha``; immutable by convention."""

    __slots__ = ("a", "b", "alpha")

    def __init__(self, a: Rational = 0, b: Rational = 0, alpha: Optional[Alpha] = None):
        if alpha is None:
            raise TypeError("QuadraticAffine needs an Alpha")
        self.a = a if type(a) is Fraction else Fraction(a)
        self.b = b if type(b) is Fraction else Fraction(b)
        self.alpha = alpha

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, alpha: Alpha) -> "QuadraticAffine":
        v = cls.__new__(cls)
        v.a, v.b, v.alpha = a, b, alpha
        return v

    def _check(self, alpha: Alpha):
        if self.alpha is not alpha and self.alpha != alpha:
            raise ValueError("values over different quadratic fields cannot be mixed")

    def _coerce(self, other) -> Optional["QuadraticAffine"]:
        if isinstance(other, QuadraticAffine):
            other._check(self.alpha)
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticAffine._raw(Fraction(other), Fraction(0), self.alpha)
        return None

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticAffine._raw(self.a + o.a, self.b + o.b, self.alpha)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticAffine._raw(self.a - o.a, self.b - o.b, self.alpha)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticAffine._raw(o.a - self.a, o.b - self.b, self.alpha)

    def __neg__(self):
        return QuadraticAffine._raw(-self.a, -self.b, self.alpha)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadraticAffine._raw(self.a * other, self.b * other, self.alpha)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        al = self.alpha
        bd = self.b * o.b
        # alpha**2 = -(c1 alpha + c0) / c2
        return QuadraticAffine._raw(
            self.a * o.a - bd * al.norm,
            self.a * o.b + self.b * o.a + bd * al.conjugate_sum,
            al,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticAffine":
        if not self.a and not self.b:
            raise ZeroDivisionError("inverse of zero")
        al = self.alpha
        # (a + b alpha)(a + b alpha') with alpha' the conjugate root
        conj_a = self.a + self.b * al.conjugate_sum
        norm = self.a * conj_a + self.b * self.b * al.norm
        return QuadraticAffine._raw(conj_a / norm, -self.b / norm, al)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadraticAffine._raw(self.a / other, self.b / other, self.alpha)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- order ----------------------------------------------------------------

    def sign(self) -> int:
        return _sign(self.a, self.b, self.alpha)

    def _cmp(self, other) -> int:
        if isinstance(other, QuadraticAffine):
            other._check(self.alpha)
            return _sign(self.a - other.a, self.b - other.b, self.alpha)
        if isinstance(other, (int, Fraction)):
            return _sign(self.a - other, self.b, self.alpha)
        raise TypeError(f"cannot compare QuadraticAffine with {type(other).__name__}")

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, QuadraticAffine):
            return self.a == other.a and self.b == other.b and (
                self.alpha is other.alpha or self.alpha == other.alpha)
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash(self.a) if not self.b else hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    # -- integer part ---------------------------------------------------------

    def floor(self) -> int:
        if not self.b:
            return math.floor(self.a)
        lo, hi = self.alpha._fast
        k = math.floor(self.a + self.b * (lo if self.b > 0 else hi))
        while _sign(self.a - k, self.b, self.alpha) < 0:
            k -= 1
        while _sign(self.a - k - 1, self.b, self.alpha) >= 0:
            k += 1
        return k

    def mod1(self) -> "QuadraticAffine":
        k = self.floor()
        if k == 0:
            return self
        return QuadraticAffine._raw(self.a - k, self.b, self.alpha)

    @property
    def is_rational(self) -> bool:
        return not self.b

    # -- export ---------------------------------------------------------------

    def to_interval(self, eps: Rational) -> Tuple[Fraction, Fraction]:
        """Certified rational interval of width <= eps containing the value."""
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("eps must be positive")
        if not self.b:
            return self.a, self.a
        # need |b| * 2**-bits <= eps
        ratio = abs(self.b) / eps
        bits = max(0, math.ceil(math.log2(ratio.numerator) - math.log2(ratio.denominator)) + 1)
        while abs(self.b) > eps * (1 << bits):
            bits += 1
        lo, hi = self.alpha.interval(bits)
        x, y = self.a + self.b * lo, self.a + self.b * hi
        return (x, y) if x <= y else (y, x)

    def __float__(self):
        lo, hi = self.to_interval(Fraction(1, 1 << 60))
        return float((lo + hi) / 2)

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b)}

    def __str__(self):
        if not self.b:
            return str(self.a)
        b = "" if self.b == 1 else ("-" if self.b == -1 else f"{self.b}*")
        if not self.a:
            return f"{b}a"
        if self.b > 0:
            return f"{self.a}+{b}a"
        return f"{self.a}-{str(-self.b) + '*' if self.b != -1 else ''}a"

    def __repr__(self):
        return f"QuadraticAffine({self.a}, {self.b})"


@dataclass(frozen=True)
class RotationNumber:
    """A rotation amount in [0, 1); rational exactly when its alpha part is zero."""

    value: QuadraticAffine

    def __post_init__(self):
        object.__setattr__(self, "value", self.value.mod1())

    @classmethod
    def of(cls, value, alpha: Alpha) -> "RotationNumber":
        return cls(alpha.qa(value))

    @property
    def alpha(self) -> Alpha:
        return self.value.alpha

    @property
    def is_rational(self) -> bool:
        return not self.value.b

    @property
    def fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("irrational rotation number has no p/q form")
        return self.value.a

    def __str__(self):
        return str(self.value)


# -- operation-style entry points ----------------------------------------------

def qa_sign(v: QuadraticAffine) -> int:
    return v.sign()


def qa_mod1(v: QuadraticAffine) -> QuadraticAffine:
    return v.mod1()


def qa_to_interval(v: QuadraticAffine, eps: Rational) -> Tuple[Fraction, Fraction]:
    return v.to_interval(eps)


def alpha_convergents(alpha: Alpha, k: int) -> list:
    """First ``k`` continued-fraction convergents of alpha, as Fractions."""
    if k < 1:
        raise ValueError("k must be >= 1")
    out = []
    p0, q0, p1, q1 = 0, 1, 1, 0
    for i, a in enumerate(alpha.partial_quotients()):
        if i == k:
            break
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append(Fraction(p1, q1))
    return out


# -- text formats ---------------------------------------------------------------

_ALPHA_RE = re.compile(r"^poly:([^;]+);iso:([^;]+)(?:;cf:(.+))?$")
_CF_RE = re.compile(r"^(-?\d+);([\d,]*)\(([\d,]+)\)$")


def parse_alpha(text: str) -> Alpha:
    """Parse ``golden``, ``sqrt2m1`` or ``poly:c2,c1,c0;iso:lo,hi[;cf:a0;a1,...(p1,...)]``."""
    text = text.strip().replace(" ", "")
    try:
        return Alpha.named(text)
    except KeyError:
        pass
    m = _ALPHA_RE.match(text)
    if not m:
        raise ValueError(f"bad alpha spec: {text!r}")
    poly = [int(c) for c in m.group(1).split(",")]
    iso = [Fraction(c) for c in m.group(2).split(",")]
    if len(poly) != 3 or len(iso) != 2:
        raise ValueError(f"bad alpha spec: {text!r}")
    cf = None
    if m.group(3):
        cm = _CF_RE.match(m.group(3))
        if not cm:
            raise ValueError(f"bad continued fraction: {m.group(3)!r}")
        pre = [int(cm.group(1))] + [int(c) for c in cm.group(2).split(",") if c]
        cf = (pre, [int(c) for c in cm.group(3).split(",")])
    return Alpha(poly, (iso[0], iso[1]), cf=cf)


_TERM_RE = re.compile(r"([+-])?(?:(\d+(?:/\d+)?)(\*a)?|(a))")


def parse_point(text: str, alpha: Alpha) -> QuadraticAffine:
    """Parse sums of terms like ``1/2``, ``-3/4*a``, ``a``: e.g. ``1/3+1/10*a``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty point")
    a = b = Fraction(0)
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos or (pos > 0 and not m.group(1)):
            raise ValueError(f"bad point: {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        if m.group(4):
            b += sign
        elif m.group(3):
            b += sign * Fraction(m.group(2))
        else:
            a += sign * Fraction(m.group(2))
        pos = m.end()
    return QuadraticAffine(a, b, alpha)
