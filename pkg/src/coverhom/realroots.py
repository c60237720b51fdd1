"""Exact univariate real roots: Sturm chains, counting, isolation, signs at roots.

Polynomials have rational coefficients stored lowest degree first.  Intervals
passed to :func:`count_roots` are half-open ``[a, b)``: a root at ``a`` is
counted and a root at ``b`` is not, which suits a left-to-right sweep.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import InvalidInput

Rational = Fraction


def _norm(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"polynomial coefficients must be int or Fraction, got {type(x).__name__}")
    return x


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class RationalPolynomial:
    """Immutable polynomial over Q; ``coefficients[i]`` multiplies ``x**i``."""

    __slots__ = ("_c",)

    def __init__(self, coefficients: Iterable = ()):
        c = [_norm(v) for v in coefficients]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def x(cls) -> "RationalPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, v) -> "RationalPolynomial":
        return cls((v,))

    @classmethod
    def from_roots(cls, roots: Sequence, leading=1) -> "RationalPolynomial":
        p = cls((leading,))
        for r in roots:
            p = p * cls((-Fraction(r), 1))
        return p

    @property
    def coefficients(self) -> Tuple:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self._c) - 1

    @property
    def leading(self):
        return self._c[-1] if self._c else 0

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalPolynomial((other,))
        return isinstance(other, RationalPolynomial) and self._c == other._c

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        return f"RationalPolynomial({[str(c) for c in self._c]})"

    def __call__(self, x):
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return _norm(acc) if isinstance(acc, (int, Fraction)) else acc

    def sign_at(self, x) -> int:
        return _sign(self(x))

    def sign_at_infinity(self, direction: int) -> int:
        """Sign for ``x -> +inf`` (``direction = 1``) or ``x -> -inf`` (``-1``)."""
        if not self._c:
            return 0
        s = _sign(self.leading)
        return s if direction > 0 or self.degree % 2 == 0 else -s

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(-c for c in self._c)

    def __add__(self, other) -> "RationalPolynomial":
        other = _coerce(other)
        n = max(len(self._c), len(other._c))
        a = self._c + (0,) * (n - len(self._c))
        b = other._c + (0,) * (n - len(other._c))
        return RationalPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other) -> "RationalPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "RationalPolynomial":
        return _coerce(other) - self

    def __mul__(self, other) -> "RationalPolynomial":
        other = _coerce(other)
        if not self._c or not other._c:
            return RationalPolynomial()
        out = [0] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "RationalPolynomial":
        out = RationalPolynomial((1,))
        for _ in range(e):
            out = out * self
        return out

    def divmod(self, other: "RationalPolynomial") -> Tuple["RationalPolynomial", "RationalPolynomial"]:
        if not other._c:
            raise ZeroDivisionError("division by the zero polynomial")
        r = [Fraction(c) for c in self._c]
        d = other.degree
        lc = Fraction(other.leading)
        q = [Fraction(0)] * max(0, len(r) - d)
        for i in range(len(r) - 1, d - 1, -1):
            coef = r[i] / lc
            if coef:
                q[i - d] = coef
                for j, b in enumerate(other._c):
                    r[i - d + j] -= coef * b
        return RationalPolynomial(q), RationalPolynomial(r[:d] if d > 0 else [])

    def __mod__(self, other) -> "RationalPolynomial":
        return self.divmod(other)[1]

    def __floordiv__(self, other) -> "RationalPolynomial":
        return self.divmod(other)[0]

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(i * c for i, c in enumerate(self._c) if i)

    def reflect(self) -> "RationalPolynomial":
        """``p(-x)``."""
        return RationalPolynomial(-c if i % 2 else c for i, c in enumerate(self._c))

    def monic(self) -> "RationalPolynomial":
        if not self._c:
            return self
        lc = Fraction(self.leading)
        return RationalPolynomial(Fraction(c) / lc for c in self._c)

    def primitive(self) -> "RationalPolynomial":
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self._c:
            return self
        den = 1
        for c in self._c:
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self._c]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return RationalPolynomial(v // g for v in ints)

    def gcd(self, other: "RationalPolynomial") -> "RationalPolynomial":
        """Monic gcd (zero if both are zero)."""
        a, b = self.primitive(), other.primitive()
        while b:
            a, b = b, (a % b).primitive()
        return a.monic()

    def squarefree(self) -> "RationalPolynomial":
        """Primitive squarefree part."""
        if self.degree <= 0:
            return RationalPolynomial((1,)) if self._c else self
        g = self.gcd(self.derivative())
        return (self // g).primitive()

    def yun(self) -> List["RationalPolynomial"]:
        """``[f_1, f_2, ...]`` squarefree, pairwise coprime, with ``p = c · Π f_i^i``."""
        if self.degree <= 0:
            return []
        f = self.monic()
        fp = f.derivative()
        a = f.gcd(fp)
        b = f // a
        c = fp // a
        d = c - b.derivative()
        out = []
        while b.degree > 0:
            a = b.gcd(d)
            out.append(a)
            b = b // a
            c = d // a
            d = c - b.derivative()
        while out and out[-1].degree == 0:
            out.pop()
        return out


def _coerce(x) -> RationalPolynomial:
    if isinstance(x, RationalPolynomial):
        return x
    return RationalPolynomial((x,))


def sturm_sequence(p: RationalPolynomial) -> List[RationalPolynomial]:
    """``p, p', -rem(p, p'), ...`` until the remainder vanishes."""
    if p.is_zero():
        raise InvalidInput("Sturm sequence of the zero polynomial is undefined")
    chain = [p]
    q = p.derivative()
    while q:
        chain.append(q)
        q = -(chain[-2] % q)
    return chain


def _strip_content(p: RationalPolynomial) -> RationalPolynomial:
    # primitive() normalizes the leading sign; undo that so only a positive factor is removed
    if not p:
        return p
    q = p.primitive()
    return -q if p.leading < 0 else q


def _primitive_chain(p: RationalPolynomial) -> List[RationalPolynomial]:
    # positive rescaling keeps every sign, so content can be stripped at each step
    chain = [_strip_content(p)]
    q = _strip_content(chain[0].derivative())
    while q:
        chain.append(q)
        q = _strip_content(-(chain[-2] % q))
    return chain


def _variations(signs: Iterable[int]) -> int:
    v, last = 0, 0
    for s in signs:
        if s:
            if last and s != last:
                v += 1
            last = s
    return v


def _var_at(chain: Sequence[RationalPolynomial], x: Optional[Fraction], direction: int = 1) -> int:
    if x is None:
        return _variations(c.sign_at_infinity(direction) for c in chain)
    return _variations(c.sign_at(x) for c in chain)


def _as_q(x) -> Optional[Fraction]:
    if x is None:
        return None
    if isinstance(x, float):
        raise TypeError("interval endpoints must be exact rationals")
    return Fraction(x)


def count_roots(p: RationalPolynomial, a=None, b=None) -> int:
    """Number of distinct real roots in ``[a, b)``; ``None`` stands for ``-inf`` / ``+inf``."""
    if p.is_zero():
        raise InvalidInput("the zero polynomial has infinitely many roots")
    a, b = _as_q(a), _as_q(b)
    if a is not None and b is not None and a >= b:
        raise InvalidInput(f"degenerate interval [{a}, {b})")
    if p.degree == 0:
        return 0
    q = p.squarefree()
    chain = _primitive_chain(q)
    # on a squarefree chain, V(a) - V(b) counts roots in (a, b] even at root endpoints
    n = _var_at(chain, a, -1) - _var_at(chain, b, 1)
    if a is not None and q(a) == 0:
        n += 1
    if b is not None and q(b) == 0:
        n -= 1
    return n


def cauchy_bound(p: RationalPolynomial) -> Fraction:
    """Every real root has absolute value below this bound."""
    lc = abs(Fraction(p.leading))
    return 1 + max((abs(Fraction(c)) / lc for c in p.coefficients[:-1]), default=Fraction(0))


class RealAlgebraic:
    """A real root of a squarefree primitive polynomial, located by a rational interval.

    Either ``lo == hi`` and the root is that rational, or ``lo < hi``, neither
    endpoint is a root and the root is the only one strictly between them.
    Refinement narrows the interval in place; the value never changes.
    """

    __slots__ = ("poly", "lo", "hi")

    def __init__(self, poly: RationalPolynomial, lo: Fraction, hi: Fraction):
        self.poly = poly
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)

    @classmethod
    def rational(cls, r) -> "RealAlgebraic":
        r = Fraction(r)
        return cls(RationalPolynomial((-r, 1)).primitive(), r, r)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Fraction:
        if not self.is_exact:
            raise ValueError("root is not known to be rational")
        return self.lo

    def __repr__(self) -> str:
        if self.is_exact:
            return f"RealAlgebraic({self.lo})"
        return f"RealAlgebraic(root of {list(map(str, self.poly.coefficients))} in ({self.lo}, {self.hi}))"

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)

    def width(self) -> Fraction:
        return self.hi - self.lo

    def _split(self, m: Fraction) -> None:
        s = self.poly.sign_at(m)
        if s == 0:
            self.lo = self.hi = m
        elif s == self.poly.sign_at(self.lo):
            self.lo = m
        else:
            self.hi = m

    def refine(self) -> None:
        if not self.is_exact:
            self._split((self.lo + self.hi) / 2)

    def refine_to(self, width: Fraction) -> None:
        while not self.is_exact and self.hi - self.lo >= width:
            self.refine()

    def try_rational(self) -> bool:
        """Collapse the interval if the root is rational; returns ``is_exact``."""
        if self.is_exact:
            return True
        L = abs(self.poly.primitive().leading)
        # distinct rationals with denominators dividing L are at least 1/L^2 apart
        self.refine_to(Fraction(1, L * L))
        if self.is_exact:
            return True
        cand = ((self.lo + self.hi) / 2).limit_denominator(L)
        if self.lo < cand < self.hi and self.poly(cand) == 0:
            self.lo = self.hi = cand
        return self.is_exact

    def compare(self, m) -> int:
        """Sign of ``self - m`` for a rational ``m``."""
        m = Fraction(m)
        while True:
            if self.is_exact:
                return _sign(self.lo - m)
            if m <= self.lo:
                return 1
            if m >= self.hi:
                return -1
            self._split(m)

    def sign_of(self, g: RationalPolynomial) -> int:
        """Sign of ``g`` at this root."""
        if g.is_zero():
            return 0
        if self.is_exact:
            return g.sign_at(self.lo)
        h = self.poly.gcd(g)
        if h.degree > 0 and count_roots(h, self.lo, self.hi) > 0:
            return 0
        while True:
            if self.is_exact:
                return g.sign_at(self.lo)
            if g(self.hi) != 0 and count_roots(g, self.lo, self.hi) == 0:
                return g.sign_at(self.hi)
            self.refine()


def rational_between(x: RealAlgebraic, y: RealAlgebraic) -> Fraction:
    """A rational strictly between ``x < y``."""
    while True:
        m = ((x.hi if not x.is_exact else x.lo) + (y.lo if not y.is_exact else y.hi)) / 2
        if x.compare(m) < 0 and y.compare(m) > 0:
            return m
        x.refine()
        y.refine()


def isolate_roots(p: RationalPolynomial, a=None, b=None, exact_rationals: bool = True) -> List[RealAlgebraic]:
    """Isolating intervals for the distinct roots in ``[a, b)``, in increasing order.

    Rational roots collapse to point intervals when ``exact_rationals`` is set.
    """
    if p.is_zero():
        raise InvalidInput("the zero polynomial has infinitely many roots")
    if p.degree <= 0:
        return []
    q = p.squarefree()
    B = cauchy_bound(q)
    lo = -B if a is None else max(Fraction(a), -B - 1)
    hi = B if b is None else min(Fraction(b), B + 1)
    if a is not None and b is not None and Fraction(a) >= Fraction(b):
        raise InvalidInput(f"degenerate interval [{a}, {b})")
    out: List[RealAlgebraic] = []
    if lo >= hi:
        return out
    chain = _primitive_chain(q)
    if q(lo) == 0 and (a is not None and lo == Fraction(a)):
        out.append(RealAlgebraic(q, lo, lo))

    def var(x):
        return _var_at(chain, x)

    # roots in (l, r]
    stack = [(lo, hi, var(lo), var(hi))]
    found = []
    while stack:
        l, r, vl, vr = stack.pop()
        c = vl - vr
        if c == 0:
            continue
        if c == 1:
            if q(r) == 0:
                found.append(RealAlgebraic(q, r, r))
                continue
            if q(l) != 0:
                found.append(RealAlgebraic(q, l, r))
                continue
        m = (l + r) / 2
        vm = var(m)
        stack.append((m, r, vm, vr))
        stack.append((l, m, vl, vm))
    found.sort(key=lambda z: z.lo)
    for z in found:
        if b is not None and z.is_exact and z.lo == Fraction(b):
            continue
        out.append(z)
    if exact_rationals:
        for z in out:
            z.try_rational()
    return out


def real_rooted_sign_counts(coefficient_signs: Sequence[int]) -> Tuple[int, int, int]:
    """``(positive, negative, zero)`` root counts of a real-rooted polynomial from its coefficient signs.

    Descartes' rule of signs is exact for polynomials with only real roots.
    """
    signs = [_sign(s) for s in coefficient_signs]
    while signs and signs[-1] == 0:
        signs.pop()
    if not signs:
        raise InvalidInput("zero polynomial")
    zero = 0
    while signs[zero] == 0:
        zero += 1
    rest = signs[zero:]
    pos = _variations(rest)
    neg = _variations(s if i % 2 == 0 else -s for i, s in enumerate(rest))
    return pos, neg, zero
