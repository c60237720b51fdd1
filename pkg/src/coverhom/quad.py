"""Quadratic forms on the unit sphere: index, sphere types and Euler characteristics.

A form ``Q(x) = <Mx, x>`` on ``R^{k+1}`` is given by a symmetric rational
``(k+1) x (k+1)`` matrix.  For ``s <= 2`` forms the combinations
``ωQ = Σ ω_i Q_i`` with ``ω_i <= 0`` are parametrized by the segment
``ω(t) = (-(1-t), -t)``, ``t in [0, 1]``.  Positive rescaling of ``ω`` does
not change eigenvalue signs, so the unnormalized segment carries the same
index stratification as the arc ``|ω| = 1``.

Strata are computed from the characteristic polynomial of ``ω(t)·M``, whose
coefficients are polynomials in ``t``.  The index can only change where the
multiplicity of the zero eigenvalue jumps above its generic value, i.e. at
roots of the lowest coefficient that is not identically zero (this is
``det`` whenever the pencil is not everywhere singular).

Only homogeneous forms are handled; an affine quadric must be homogenized by
the caller.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .complexes import SimplicialComplex, betti, cochain_complex
from .errors import InvalidInput, Unsupported
from .realroots import (
    RationalPolynomial,
    RealAlgebraic,
    count_roots,
    isolate_roots,
    rational_between,
    real_rooted_sign_counts,
)

Matrix = Tuple[Tuple[Fraction, ...], ...]


def _q(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise InvalidInput(f"form entries must be exact rationals, got {x!r}")
    if isinstance(x, (int, Fraction, str)):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            raise InvalidInput(f"not a rational number: {x!r}") from None
    raise InvalidInput(f"form entries must be exact rationals, got {x!r}")


@dataclass(frozen=True)
class QuadraticForm:
    """Symmetric rational matrix of a homogeneous quadratic form in ``k + 1`` variables."""

    matrix: Matrix

    def __post_init__(self):
        rows = [tuple(_q(v) for v in row) for row in self.matrix]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise InvalidInput("form matrix must be square and nonempty")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise InvalidInput(f"form matrix is not symmetric: entry ({i},{j}) = {rows[i][j]} but ({j},{i}) = {rows[j][i]}")
        object.__setattr__(self, "matrix", tuple(rows))

    @classmethod
    def diagonal(cls, entries: Sequence) -> "QuadraticForm":
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def identity(cls, n: int) -> "QuadraticForm":
        return cls.diagonal([1] * n)

    @property
    def size(self) -> int:
        return len(self.matrix)

    @property
    def k(self) -> int:
        """Dimension of the sphere the form lives on."""
        return self.size - 1

    def __neg__(self) -> "QuadraticForm":
        return QuadraticForm(tuple(tuple(-v for v in r) for r in self.matrix))

    def scale(self, c) -> "QuadraticForm":
        c = _q(c)
        return QuadraticForm(tuple(tuple(c * v for v in r) for r in self.matrix))

    def __add__(self, other: "QuadraticForm") -> "QuadraticForm":
        if other.size != self.size:
            raise InvalidInput("forms must have the same number of variables")
        return QuadraticForm(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix)))

    def __call__(self, x: Sequence) -> Fraction:
        M = self.matrix
        n = self.size
        return sum(M[i][j] * x[i] * x[j] for i in range(n) for j in range(n) if M[i][j])


def _combo(forms: Sequence[QuadraticForm], weights: Sequence[Fraction]) -> QuadraticForm:
    n = forms[0].size
    return QuadraticForm(tuple(
        tuple(sum(w * f.matrix[i][j] for w, f in zip(weights, forms)) for j in range(n)) for i in range(n)
    ))


# -- index ------------------------------------------------------------------------


def inertia(Q: QuadraticForm) -> Tuple[int, int, int]:
    """``(positive, negative, zero)`` eigenvalue counts by congruence elimination."""
    A = [list(r) for r in Q.matrix]
    pos = neg = 0
    while A:
        n = len(A)
        p = next((i for i in range(n) if A[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if A[i][j] != 0), None)
            if pair is None:
                return pos, neg, n
            i, j = pair
            # x_i <- x_i + x_j makes the (i, i) entry 2 A[i][j] while keeping congruence
            for c in range(n):
                A[i][c] += A[j][c]
            for r in range(n):
                A[r][i] += A[r][j]
            p = i
        d = A[p][p]
        if d > 0:
            pos += 1
        else:
            neg += 1
        rest = [r for r in range(n) if r != p]
        A = [[A[r][c] - A[r][p] * A[p][c] / d for c in rest] for r in rest]
    return pos, neg, 0


def index_by_signature(Q: QuadraticForm) -> int:
    return inertia(Q)[1]


def charpoly(M: Sequence[Sequence[Fraction]]) -> RationalPolynomial:
    """``det(λI - M)`` by the Faddeev-LeVerrier recursion."""
    n = len(M)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    N = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        B = [[N[i][j] + (c_prev if i == j else 0) for j in range(n)] for i in range(n)]
        N = [[sum(M[i][l] * B[l][j] for l in range(n) if M[i][l]) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -Fraction(sum(N[i][i] for i in range(n)), k)
    return RationalPolynomial(coeffs)


def index_by_sturm(Q: QuadraticForm) -> int:
    """Negative roots of the characteristic polynomial with multiplicity."""
    chi = charpoly(Q.matrix)
    total = 0
    for mult, f in enumerate(chi.yun(), start=1):
        if f.degree > 0:
            total += mult * count_roots(f, None, 0)
    return total


def index(Q: QuadraticForm) -> int:
    """Number of negative eigenvalues; both methods run and must agree."""
    a = index_by_signature(Q)
    b = index_by_sturm(Q)
    if a != b:
        raise AssertionError(f"index mismatch: signature gives {a}, Sturm count gives {b}")
    return a


def homotopy_sphere_dim(Q: QuadraticForm) -> Union[int, str]:
    """``{Q >= 0}`` on ``S^k`` is homotopy equivalent to ``S^{k - index}``, or empty."""
    j = index(Q)
    return "empty" if j == Q.k + 1 else Q.k - j


def sphere_euler(dim: Union[int, str]) -> int:
    if dim == "empty":
        return 0
    return 1 + (-1) ** dim


# -- stratification -----------------------------------------------------------------


def _check_forms(forms: Sequence[QuadraticForm]) -> List[QuadraticForm]:
    forms = [f if isinstance(f, QuadraticForm) else QuadraticForm(f) for f in forms]
    if not forms:
        raise InvalidInput("at least one form is required")
    if len(forms) > 2:
        raise Unsupported(f"exact stratification is implemented for at most 2 forms, got {len(forms)}")
    if len({f.size for f in forms}) != 1:
        raise InvalidInput("all forms must have the same number of variables")
    return forms


def _lagrange(xs: Sequence[int], ys: Sequence[Fraction]) -> RationalPolynomial:
    out = RationalPolynomial()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        term = RationalPolynomial((yi,))
        for j, xj in enumerate(xs):
            if j != i:
                term = term * RationalPolynomial((Fraction(-xj, xi - xj), Fraction(1, xi - xj)))
        out = out + term
    return out


@dataclass(frozen=True)
class Pencil:
    """``ω(t)·M = -(1-t) M_1 - t M_2`` together with its characteristic data in ``t``."""

    forms: Tuple[QuadraticForm, QuadraticForm]
    # coefficient of λ^i in det(λI - ω(t)M), as a polynomial in t
    charpoly_coefficients: Tuple[RationalPolynomial, ...]
    generic_nullity: int

    @classmethod
    def build(cls, Q1: QuadraticForm, Q2: QuadraticForm) -> "Pencil":
        n = Q1.size
        ts = list(range(n + 1))
        samples = [charpoly(cls.at(Q1, Q2, Fraction(t)).matrix).coefficients for t in ts]
        coeffs = []
        for i in range(n + 1):
            coeffs.append(_lagrange(ts, [s[i] if i < len(s) else 0 for s in samples]))
        r0 = next(i for i, c in enumerate(coeffs) if not c.is_zero())
        return cls((Q1, Q2), tuple(coeffs), r0)

    @staticmethod
    def at(Q1: QuadraticForm, Q2: QuadraticForm, t: Fraction) -> QuadraticForm:
        return _combo([Q1, Q2], [t - 1, -t])

    def form_at(self, t: Fraction) -> QuadraticForm:
        return self.at(self.forms[0], self.forms[1], t)

    @property
    def critical_polynomial(self) -> RationalPolynomial:
        return self.charpoly_coefficients[self.generic_nullity]

    def index_at(self, t: RealAlgebraic) -> int:
        if t.is_exact:
            return index(self.form_at(t.value))
        # the characteristic polynomial of a symmetric matrix is real-rooted
        signs = [t.sign_of(c) for c in self.charpoly_coefficients]
        return real_rooted_sign_counts(signs)[1]


@dataclass(frozen=True)
class Stratum:
    """Maximal piece of the parameter segment on which the index is constant."""

    lo: RealAlgebraic
    hi: RealAlgebraic
    lo_closed: bool
    hi_closed: bool
    index: int

    @property
    def kind(self) -> str:
        if self.lo is self.hi:
            return "point"
        if self.lo_closed and self.hi_closed:
            return "closed"
        if not self.lo_closed and not self.hi_closed:
            return "open"
        return "half-open"

    @property
    def borel_moore_euler(self) -> int:
        return {"point": 1, "closed": 1, "open": -1, "half-open": 0}[self.kind]

    def length(self) -> float:
        return float(self.hi) - float(self.lo) if self.lo is not self.hi else 0.0


@dataclass(frozen=True)
class OmegaStratification:
    """For one form, ``strata`` is the single point ``ω = -1``; for two, the strata of ``t in [0, 1]``."""

    s: int
    k: int
    strata: Tuple[Stratum, ...]
    boundary_points: Tuple[RealAlgebraic, ...] = ()

    def index_values(self) -> List[int]:
        return [st.index for st in self.strata]


def _point(t) -> RealAlgebraic:
    return RealAlgebraic.rational(t)


def omega_stratify(forms: Sequence[QuadraticForm]) -> OmegaStratification:
    forms = _check_forms(forms)
    k = forms[0].k
    if len(forms) == 1:
        p = _point(-1)
        return OmegaStratification(1, k, (Stratum(p, p, True, True, index(-forms[0])),))
    pencil = Pencil.build(forms[0], forms[1])
    crit = pencil.critical_polynomial
    roots = [] if crit.degree <= 0 else [r for r in isolate_roots(crit, 0, 1)]
    pts = [_point(0)] + [r for r in roots if not (r.is_exact and r.value == 0)] + [_point(1)]
    # pieces alternate: point, open interval, point, ..., point
    pieces = []
    for i, p in enumerate(pts):
        pieces.append(("pt", p, p, pencil.index_at(p)))
        if i + 1 < len(pts):
            m = rational_between(p, pts[i + 1])
            pieces.append(("open", p, pts[i + 1], index(pencil.form_at(m))))
    strata = []
    run = [pieces[0]]
    for piece in pieces[1:]:
        if piece[3] == run[-1][3]:
            run.append(piece)
        else:
            strata.append(_merge(run))
            run = [piece]
    strata.append(_merge(run))
    interior = tuple(p for p in pts[1:-1])
    return OmegaStratification(2, k, tuple(strata), interior)


def _merge(run) -> Stratum:
    first, last = run[0], run[-1]
    if len(run) == 1 and first[0] == "pt":
        return Stratum(first[1], first[1], True, True, first[3])
    return Stratum(first[1], last[2], first[0] == "pt", last[0] == "pt", first[3])


# -- Euler characteristics -----------------------------------------------------------


def euler_char_union(forms: Sequence[QuadraticForm], k: Optional[int] = None) -> int:
    """``χ`` of ``T = ∪ {Q_i <= 0}`` on ``S^k`` from the index stratification."""
    forms = _check_forms(forms)
    if k is None:
        k = forms[0].k
    if forms[0].k != k:
        raise InvalidInput(f"forms in {forms[0].size} variables do not live on S^{k}")
    strat = omega_stratify(forms)
    return sum(st.borel_moore_euler * (2 if (k - st.index) % 2 == 0 else 0) for st in strat.strata)


def euler_char_intersection(forms: Sequence[QuadraticForm], k: Optional[int] = None) -> int:
    """``χ`` of ``∩ {Q_i <= 0}`` by inclusion-exclusion over unions."""
    forms = _check_forms(forms)
    if len(forms) == 1:
        return euler_char_union(forms, k)
    a = euler_char_union([forms[0]], k)
    b = euler_char_union([forms[1]], k)
    return a + b - euler_char_union(forms, k)


# -- mesh oracle ---------------------------------------------------------------------

# Icosahedron (0, ±1, ±φ) and cyclic shifts with φ replaced by 21/13; any
# polyhedron star-shaped about the origin works since form signs only depend on rays.
_PHI_NUM, _PHI_DEN = 21, 13


def icosphere(depth: int) -> Tuple[List[Tuple[int, int, int]], List[Tuple[int, int, int]]]:
    """Vertices (integer, not normalized) and triangles of a subdivided icosahedron."""
    if depth < 0:
        raise InvalidInput("depth must be nonnegative")
    a, b = _PHI_DEN, _PHI_NUM
    verts = []
    for s1 in (1, -1):
        for s2 in (1, -1):
            verts += [(0, s1 * a, s2 * b), (s1 * a, s2 * b, 0), (s2 * b, 0, s1 * a)]

    def d2(u, v):
        return sum((x - y) ** 2 for x, y in zip(u, v))

    edge = min(d2(u, v) for i, u in enumerate(verts) for v in verts[i + 1:])
    adj = {i: {j for j in range(12) if j != i and d2(verts[i], verts[j]) < edge * 3 // 2} for i in range(12)}
    tris = sorted({tuple(sorted((i, j, l))) for i in range(12) for j in adj[i] for l in adj[i] & adj[j]})
    for _ in range(depth):
        new = [(2 * x, 2 * y, 2 * z) for x, y, z in verts]
        mids = {}

        def mid(i, j):
            key = (min(i, j), max(i, j))
            if key not in mids:
                mids[key] = len(new)
                new.append(tuple(p + q for p, q in zip(verts[i], verts[j])))
            return mids[key]

        out = []
        for i, j, l in tris:
            ij, jl, li = mid(i, j), mid(j, l), mid(l, i)
            out += [(i, ij, li), (j, jl, ij), (l, li, jl), (ij, jl, li)]
        verts, tris = new, out
    return verts, tris


def _satisfies(Q: QuadraticForm, sign: str, x) -> bool:
    v = Q(x)
    if sign == ">=0":
        return v >= 0
    if sign == "<=0":
        return v <= 0
    raise InvalidInput(f"unknown sign {sign!r}; use '<=0' or '>=0'")


def mesh_subcomplex(constraints: Sequence[Tuple[QuadraticForm, str]], depth: int) -> SimplicialComplex:
    for Q, sign in constraints:
        if Q.k != 2:
            raise Unsupported(f"the mesh oracle only triangulates S^2; got a form on S^{Q.k}")
        _satisfies(Q, sign, (0, 0, 0))
    verts, tris = icosphere(depth)
    ok = [all(_satisfies(Q, s, x) for Q, s in constraints) for x in verts]
    simps = set()
    for t in tris:
        t = tuple(sorted(t))
        good = [v for v in t if ok[v]]
        if len(good) == 3:
            simps.add(t)
        for i in range(3):
            for j in range(i + 1, 3):
                if ok[t[i]] and ok[t[j]]:
                    simps.add((t[i], t[j]))
    simps.update((v,) for v in range(len(verts)) if ok[v])
    return SimplicialComplex._trusted(len(verts), frozenset(simps))


def mesh_betti_on_sphere(constraints: Sequence[Tuple[QuadraticForm, str]], depth: int = 4, threads: int = 1) -> Tuple[int, int, int]:
    """Betti numbers of the full subcomplex of an icosphere cut out by sign constraints.

    An approximation that is only as good as the mesh resolves the set.
    """
    K = mesh_subcomplex(constraints, depth)
    if not K.simplices:
        return (0, 0, 0)
    b = betti(cochain_complex(K), threads=threads)
    return tuple((b + [0, 0, 0])[:3])
