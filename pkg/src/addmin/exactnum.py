"""Exact rational, polynomial and rational-function arithmetic.

Scalars are :class:`fractions.Fraction`.  Polynomials live in one variable,
the eigenvalue parameter ``λ``, with rational coefficients.  Real roots are
isolated with Sturm sequences; rational roots are always returned exactly and
irrational ones as :class:`AlgebraicNumber` (a squarefree integer polynomial
together with an open isolating interval), which compares exactly against
rationals and against other algebraic numbers.

:class:`LambdaSet` is a finite union of disjoint intervals/points of ``λ``
whose endpoints are either exact rationals or algebraic numbers.
"""
from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache, reduce
from typing import Iterable, Sequence, Union

#: Default width to which irrational roots are refined on creation.
DEFAULT_ROOT_WIDTH = Fraction(1, 10**12)


def to_rat(value) -> Fraction:
    """Convert ``value`` (str, int, Fraction, float) to an exact Fraction.

    Floats go through their shortest ``repr`` so ``0.1`` becomes ``1/10``.

    >>> to_rat("0.4")
    Fraction(2, 5)
    >>> to_rat("2/3")
    Fraction(2, 3)
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


class Poly:
    """Polynomial in λ with Fraction coefficients, ascending degree.

    Instances are immutable; trailing zero coefficients are stripped so the
    zero polynomial has ``coeffs == ()`` and degree -1.
    """

    __slots__ = ("coeffs", "_ints")

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, Fraction) else to_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "_ints", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        return (Poly, (self.coeffs,))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def lam(cls) -> "Poly":
        """The identity polynomial ``λ``."""
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __repr__(self):
        return f"Poly({self.pretty()})"

    def pretty(self, var: str = "λ") -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = str(abs(c)) + (("*" + mono) if mono else "")
            terms.append(("-" if c < 0 else "+", body))
        sign, first = terms[0]
        out = ("-" if sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(other)

    def __add__(self, other):
        o = self._coerce(other).coeffs
        s = self.coeffs
        if len(s) < len(o):
            s, o = o, s
        return Poly([a + b for a, b in zip(s, o)] + list(s[len(o):]))

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = to_rat(other)
            return Poly([c * a for a in self.coeffs])
        if self.is_zero or other.is_zero:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "Poly"):
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        if len(rem) - 1 < dd:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - dd)
        inv_lead = 1 / other.lead
        for k in range(len(rem) - 1 - dd, -1, -1):
            c = rem[k + dd] * inv_lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(quot), Poly(rem[:dd])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ArithmeticError(f"{self!r} is not divisible by {other!r}")
        return q

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Fraction) -> int:
        """Sign of ``self(x)`` computed in integer arithmetic."""
        ints = self._ints
        if ints is None:
            den = reduce(math.lcm, (c.denominator for c in self.coeffs), 1)
            ints = tuple(c.numerator * (den // c.denominator) for c in self.coeffs)
            object.__setattr__(self, "_ints", ints)
        if not ints:
            return 0
        p, q = x.numerator, x.denominator
        acc = ints[-1]
        qpow = 1
        for c in reversed(ints[:-1]):
            qpow *= q
            acc = acc * p + c * qpow
        return (acc > 0) - (acc < 0)

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self * (1 / self.lead)

    def primitive(self) -> "Poly":
        """Integer-coefficient multiple with coprime coefficients and positive lead."""
        if self.is_zero:
            return self
        den = reduce(math.lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(math.gcd, ints, 0)
        if ints[-1] < 0:
            g = -g
        return Poly([Fraction(i // g) for i in ints])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero only if both inputs are zero)."""
    while not b.is_zero:
        a, b = b, (a % b).monic()
    return a.monic()


def squarefree(p: Poly) -> Poly:
    """Primitive squarefree part of ``p`` (same distinct roots)."""
    if p.degree <= 0:
        return p.primitive()
    g = poly_gcd(p, p.derivative())
    return (p // g).primitive()


def sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero:
        r = chain[-2] % chain[-1]
        if r.is_zero:
            break
        # positive rescaling keeps signs and coefficient size in check
        chain.append(r * (-1 / abs(r.lead)))
    return [c for c in chain if not c.is_zero]


def sign_variations(chain: Sequence[Poly], x: Fraction) -> int:
    prev = 0
    count = 0
    for p in chain:
        s = p.sign_at(x)
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def count_roots_open(p: Poly, a: Fraction, b: Fraction, chain=None) -> int:
    """Number of distinct real roots of nonzero ``p`` in the open interval (a, b)."""
    if a >= b or p.degree <= 0:
        return 0
    q = squarefree(p) if chain is None else p
    chain = sturm_chain(q) if chain is None else chain
    n = sign_variations(chain, a) - sign_variations(chain, b)
    return n - (1 if q.sign_at(b) == 0 else 0)


def _sgn(v: Fraction) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True, eq=False)
class AlgebraicNumber:
    """A real root of ``poly`` known to be the unique root in ``(lo, hi)``.

    ``poly`` is squarefree and primitive; ``lo`` and ``hi`` are not roots, so
    ``poly`` changes sign across the interval.
    """

    poly: Poly
    lo: Fraction
    hi: Fraction

    approx = True

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self):
        x = self.refined(Fraction(1, 2**60)) if self.width > Fraction(1, 2**60) else self
        return float(x.midpoint)

    def __repr__(self):
        return f"AlgebraicNumber(≈{float(self):.12g}, root of {self.poly.pretty()})"

    def bisect(self) -> Union["AlgebraicNumber", Fraction]:
        m = self.midpoint
        sm = self.poly.sign_at(m)
        if sm == 0:
            return m
        if sm == self.poly.sign_at(self.lo):
            return AlgebraicNumber(self.poly, m, self.hi)
        return AlgebraicNumber(self.poly, self.lo, m)

    def refined(self, width=DEFAULT_ROOT_WIDTH) -> "AlgebraicNumber":
        x = self
        while x.width > width:
            x = x.bisect()
            if isinstance(x, Fraction):  # pragma: no cover - rational roots are split off earlier
                raise ArithmeticError("algebraic number turned out rational")
        return x

    def _cmp_rational(self, r: Fraction) -> int:
        if r <= self.lo:
            return 1
        if r >= self.hi:
            return -1
        s = self.poly.sign_at(r)
        if s == 0:
            return 0
        # same sign as at lo means the root lies in (r, hi)
        return 1 if s == self.poly.sign_at(self.lo) else -1

    def _cmp_algebraic(self, other: "AlgebraicNumber") -> int:
        if self.hi <= other.lo:
            return -1
        if other.hi <= self.lo:
            return 1
        # distinct roots usually separate after a few halvings
        x, y = self, other
        for _ in range(8):
            x, y = x.bisect(), y.bisect()
            if isinstance(x, Fraction) or isinstance(y, Fraction):
                return compare(x, y)
            if x.hi <= y.lo:
                return -1
            if y.hi <= x.lo:
                return 1
        self, other = x, y
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        g = self.poly.monic() if self.poly == other.poly else poly_gcd(self.poly, other.poly)
        if g.degree >= 1 and count_roots_open(g, lo, hi) >= 1:
            return 0
        x, y = self, other
        while True:
            x, y = x.bisect(), y.bisect()
            if isinstance(x, Fraction) or isinstance(y, Fraction):
                return compare(x, y)
            if x.hi <= y.lo:
                return -1
            if y.hi <= x.lo:
                return 1

    def __eq__(self, other):
        if isinstance(other, (AlgebraicNumber, Fraction, int)):
            return compare(self, other) == 0
        return NotImplemented

    __hash__ = None

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0


Endpoint = Union[Fraction, AlgebraicNumber]


def compare(a, b) -> int:
    """Exact three-way comparison of rationals and algebraic numbers."""
    if a is b:
        return 0
    if isinstance(a, AlgebraicNumber):
        if isinstance(b, AlgebraicNumber):
            return a._cmp_algebraic(b)
        return a._cmp_rational(Fraction(b))
    if isinstance(b, AlgebraicNumber):
        return -b._cmp_rational(Fraction(a))
    return (a > b) - (a < b)


def is_exact(e: Endpoint) -> bool:
    return not isinstance(e, AlgebraicNumber)


def lower_rational(e: Endpoint) -> Fraction:
    return e.lo if isinstance(e, AlgebraicNumber) else e


def upper_rational(e: Endpoint) -> Fraction:
    return e.hi if isinstance(e, AlgebraicNumber) else e


def rational_between(a: Endpoint, b: Endpoint) -> Fraction:
    """A rational strictly between ``a < b``."""
    while True:
        ua, lb = upper_rational(a), lower_rational(b)
        if ua < lb:
            return (ua + lb) / 2
        if is_exact(a) and is_exact(b):
            raise ValueError("rational_between needs a < b")
        if isinstance(a, AlgebraicNumber):
            a = a.bisect()
        if isinstance(b, AlgebraicNumber):
            b = b.bisect()


def is_root_of(p: Poly, e: Endpoint) -> bool:
    """Exactly decide ``p(e) == 0``."""
    if p.is_zero:
        return True
    if isinstance(e, AlgebraicNumber):
        g = poly_gcd(p, e.poly)
        return g.degree >= 1 and count_roots_open(g, e.lo, e.hi) >= 1
    return p.sign_at(Fraction(e)) == 0


def isolate_real_roots(p: Poly, lo, hi, width=DEFAULT_ROOT_WIDTH) -> list[Endpoint]:
    """All distinct real roots of ``p`` in the closed interval ``[lo, hi]``, ascending.

    Rational roots come back as exact Fractions.  Irrational roots come back as
    :class:`AlgebraicNumber` refined to ``width`` (``None`` leaves them at
    whatever isolating interval was found; comparisons refine on demand).

    >>> isolate_real_roots(Poly([0, -2, 1]), 0, 2)
    [Fraction(0, 1), Fraction(2, 1)]
    """
    if p.is_zero:
        raise ValueError("indeterminate root set")
    lo, hi = to_rat(lo), to_rat(hi)
    if lo > hi:
        return []
    q, chain = _sqf_chain(p)
    if q.degree <= 0:
        return []
    out: list[Endpoint] = []
    if q.sign_at(lo) == 0:
        out.append(lo)
    if lo < hi:
        for item in _isolate_open(q, chain, lo, hi):
            out.append(_settle(q, item, width))
        if q.sign_at(hi) == 0:
            out.append(hi)
    return out


@lru_cache(maxsize=4096)
def _sqf_chain(p: Poly):
    q = squarefree(p)
    return q, (sturm_chain(q) if q.degree > 0 else [])


def _isolate_open(q: Poly, chain, a: Fraction, b: Fraction) -> list:
    count = sign_variations(chain, a) - sign_variations(chain, b) - (1 if q.sign_at(b) == 0 else 0)
    if count == 0:
        return []
    if count == 1 and q.sign_at(a) != 0 and q.sign_at(b) != 0:
        return [(a, b)]
    m = (a + b) / 2
    res = _isolate_open(q, chain, a, m)
    if q.sign_at(m) == 0:
        res.append(m)
    res.extend(_isolate_open(q, chain, m, b))
    return res


def _settle(q: Poly, item, width) -> Endpoint:
    """Turn an isolating interval into an exact rational or a refined algebraic number."""
    if isinstance(item, Fraction):
        return item
    lead = q.lead  # q primitive, so lead * root is an integer for rational roots
    x: Endpoint = AlgebraicNumber(q, item[0], item[1])
    while isinstance(x, AlgebraicNumber) and x.width * lead >= 1:
        x = x.bisect()
    if isinstance(x, Fraction):
        return x
    m = math.floor(x.lo * lead) + 1
    if m < x.hi * lead:
        cand = Fraction(m) / lead
        if q.sign_at(cand) == 0:
            return cand
    return x if width is None else x.refined(width)


class RatFun:
    """Reduced ratio ``num/den`` of polynomials; ``den`` monic and nonzero."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Poly) else Poly.const(num)
        den = Poly.const(1) if den is None else (den if isinstance(den, Poly) else Poly.const(den))
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            num, den = Poly(), Poly.const(1)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            s = 1 / den.lead
            num, den = num * s, den * s
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    def __reduce__(self):
        return (RatFun, (self.num, self.den))

    def __call__(self, x: Fraction) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    def __eq__(self, other):
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.degree == 0:
            return f"RatFun({self.num.pretty()})"
        return f"RatFun(({self.num.pretty()}) / ({self.den.pretty()}))"


# ---------------------------------------------------------------------------
# λ-sets


@dataclass(frozen=True)
class Piece:
    """One interval (or point) of a :class:`LambdaSet`."""

    lo: Endpoint
    hi: Endpoint
    lo_closed: bool = True
    hi_closed: bool = True

    @property
    def is_point(self) -> bool:
        return compare(self.lo, self.hi) == 0

    @property
    def exact(self) -> bool:
        return is_exact(self.lo) and is_exact(self.hi)

    def contains(self, x) -> bool:
        c_lo = compare(x, self.lo)
        c_hi = compare(x, self.hi)
        return (c_lo > 0 or (c_lo == 0 and self.lo_closed)) and (
            c_hi < 0 or (c_hi == 0 and self.hi_closed)
        )

    def is_empty(self) -> bool:
        c = compare(self.lo, self.hi)
        return c > 0 or (c == 0 and not (self.lo_closed and self.hi_closed))

    def intersect(self, other: "Piece") -> "Piece | None":
        c = compare(self.lo, other.lo)
        if c > 0:
            lo, lo_closed = self.lo, self.lo_closed
        elif c < 0:
            lo, lo_closed = other.lo, other.lo_closed
        else:
            lo, lo_closed = self.lo, self.lo_closed and other.lo_closed
        c = compare(self.hi, other.hi)
        if c < 0:
            hi, hi_closed = self.hi, self.hi_closed
        elif c > 0:
            hi, hi_closed = other.hi, other.hi_closed
        else:
            hi, hi_closed = self.hi, self.hi_closed and other.hi_closed
        p = Piece(lo, hi, lo_closed, hi_closed)
        return None if p.is_empty() else p

    def __str__(self):
        if self.is_point and self.lo_closed:
            return "{" + fmt_endpoint(self.lo) + "}"
        return (
            ("[" if self.lo_closed else "(")
            + fmt_endpoint(self.lo)
            + ", "
            + fmt_endpoint(self.hi)
            + ("]" if self.hi_closed else ")")
        )


def _piece_order(a: Piece, b: Piece) -> int:
    c = compare(a.lo, b.lo)
    if c:
        return c
    return (b.lo_closed - a.lo_closed)


@dataclass(frozen=True)
class LambdaSet:
    """Finite union of pairwise disjoint pieces, sorted ascending."""

    pieces: tuple[Piece, ...] = ()

    @classmethod
    def from_pieces(cls, pieces: Iterable[Piece]) -> "LambdaSet":
        ps = sorted((p for p in pieces if not p.is_empty()), key=cmp_to_key(_piece_order))
        if not ps:
            return cls(())
        merged = []
        cur = ps[0]
        for p in ps[1:]:
            c = compare(cur.hi, p.lo)
            if c > 0 or (c == 0 and (cur.hi_closed or p.lo_closed)):
                ch = compare(cur.hi, p.hi)
                if ch < 0:
                    cur = Piece(cur.lo, p.hi, cur.lo_closed, p.hi_closed)
                elif ch == 0 and p.hi_closed and not cur.hi_closed:
                    cur = Piece(cur.lo, cur.hi, cur.lo_closed, True)
            else:
                merged.append(cur)
                cur = p
        merged.append(cur)
        return cls(tuple(merged))

    @classmethod
    def interval(cls, lo, hi, lo_closed=True, hi_closed=True) -> "LambdaSet":
        lo = lo if isinstance(lo, AlgebraicNumber) else to_rat(lo)
        hi = hi if isinstance(hi, AlgebraicNumber) else to_rat(hi)
        return cls.from_pieces([Piece(lo, hi, lo_closed, hi_closed)])

    @classmethod
    def point(cls, x) -> "LambdaSet":
        return cls.interval(x, x)

    @classmethod
    def empty(cls) -> "LambdaSet":
        return cls(())

    def is_empty(self) -> bool:
        return not self.pieces

    def __bool__(self):
        return bool(self.pieces)

    @property
    def exact(self) -> bool:
        return all(p.exact for p in self.pieces)

    def contains(self, x) -> bool:
        return any(p.contains(x) for p in self.pieces)

    __contains__ = contains

    def union(self, *others: "LambdaSet") -> "LambdaSet":
        return LambdaSet.from_pieces([p for s in (self, *others) for p in s.pieces])

    def intersect(self, other: "LambdaSet") -> "LambdaSet":
        out = []
        for a in self.pieces:
            for b in other.pieces:
                p = a.intersect(b)
                if p is not None:
                    out.append(p)
        return LambdaSet.from_pieces(out)

    __or__ = union
    __and__ = intersect

    def issubset(self, other: "LambdaSet") -> bool:
        return self.union(other) == other

    def __str__(self):
        if not self.pieces:
            return "∅"
        return " ∪ ".join(str(p) for p in self.pieces)


def union_lambda(sets: Iterable[LambdaSet]) -> LambdaSet:
    return LambdaSet.from_pieces([p for s in sets for p in s.pieces])


def intersect_lambda(sets: Iterable[LambdaSet]) -> LambdaSet:
    sets = list(sets)
    if not sets:
        raise ValueError("intersection of no sets")
    return reduce(LambdaSet.intersect, sets)


_RELATIONS = {
    ">=": operator.ge, "≥": operator.ge,
    "<=": operator.le, "≤": operator.le,
    "=": operator.eq, "==": operator.eq,
    ">": operator.gt, "<": operator.lt,
    "!=": operator.ne, "≠": operator.ne,
}
_NONSTRICT = {operator.ge, operator.le, operator.eq}


def sign_set(f: RatFun, relation: str, bound, domain: Piece) -> LambdaSet:
    """Exactly ``{λ ∈ domain : f(λ) relation bound}``; poles are always excluded.

    ``domain`` must have rational endpoints.
    """
    op = _RELATIONS[relation]
    bound = to_rat(bound)
    lo, hi = domain.lo, domain.hi
    num, den = f.num, f.den
    g = num - den * bound
    if g.is_zero:
        if op not in _NONSTRICT:
            return LambdaSet.empty()
        return LambdaSet.from_pieces([domain]).intersect(nonvanishing_set(den, domain))

    def holds_at(e: Endpoint) -> bool:
        if is_root_of(den, e):
            return False
        if isinstance(e, AlgebraicNumber):
            # critical points that are not poles are roots of g
            return op in _NONSTRICT
        return op(f(e), bound)

    roots = isolate_real_roots(g, lo, hi, width=None) if g.degree > 0 else []
    if den.degree > 0:
        roots = _merge_roots(roots, isolate_real_roots(den, lo, hi, width=None))
    interior = [r for r in roots if compare(r, lo) > 0 and compare(r, hi) < 0]
    pieces = []
    if domain.lo_closed and holds_at(lo):
        pieces.append(Piece(lo, lo))
    if domain.hi_closed and holds_at(hi):
        pieces.append(Piece(hi, hi))
    for r in interior:
        if holds_at(r):
            pieces.append(Piece(r, r))
    marks = [lo, *interior, hi]
    for a, b in zip(marks, marks[1:]):
        if compare(a, b) >= 0:
            continue
        s = rational_between(a, b)
        if op(f(s), bound):
            pieces.append(Piece(a, b, False, False))
    return LambdaSet.from_pieces(pieces)


def _merge_roots(a: list, b: list) -> list:
    out = sorted(a + b, key=cmp_to_key(compare))
    merged = out[:1]
    for r in out[1:]:
        if compare(r, merged[-1]) != 0:
            merged.append(r)
    return merged


def restrict(current: LambdaSet, f: RatFun, relation: str, bound) -> LambdaSet:
    """``{λ ∈ current : f(λ) relation bound}``.

    Each piece is handled over its rational hull, so roots are only isolated
    where they still matter.
    """
    out = []
    for p in current.pieces:
        hull = Piece(lower_rational(p.lo), upper_rational(p.hi))
        out.extend(sign_set(f, relation, bound, hull).intersect(LambdaSet((p,))).pieces)
    return LambdaSet.from_pieces(out)


def refine_endpoints(ls: LambdaSet, width=DEFAULT_ROOT_WIDTH) -> LambdaSet:
    """Same set, with every irrational endpoint narrowed to ``width``."""
    def r(e):
        return e.refined(width) if isinstance(e, AlgebraicNumber) else e
    return LambdaSet(tuple(Piece(r(p.lo), r(p.hi), p.lo_closed, p.hi_closed) for p in ls.pieces))


def nonvanishing_set(p: Poly, domain: Piece) -> LambdaSet:
    """``domain`` with the real roots of ``p`` removed."""
    return sign_set(RatFun(p), "!=", 0, domain)


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with the smallest denominator in the closed interval [lo, hi].

    Continued-fraction (Stern–Brocot) descent.

    >>> simplest_between(Fraction(66, 100), Fraction(67, 100))
    Fraction(2, 3)
    """
    if lo > hi:
        raise ValueError("empty interval")
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_between(-hi, -lo)
    fl = math.floor(lo)
    if fl == lo:
        return Fraction(fl)
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    # lo, hi share integer part; recurse on reciprocals of fractional parts
    return fl + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl))


def fmt_rat(r: Fraction) -> str:
    """Decimal string when the expansion terminates, else ``p/q``."""
    r = Fraction(r)
    d = r.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{r.numerator}/{r.denominator}"
    if r.denominator == 1:
        return str(r.numerator)
    digits = max(twos, fives)
    scaled = abs(r.numerator) * 10**digits // r.denominator
    s = str(scaled).rjust(digits + 1, "0")
    s = s[:-digits] + "." + s[-digits:]
    return ("-" if r < 0 else "") + s


def fmt_endpoint(e: Endpoint, digits: int = 10) -> str:
    if isinstance(e, AlgebraicNumber):
        return f"≈{float(e):.{digits}g}"
    return fmt_rat(e)
