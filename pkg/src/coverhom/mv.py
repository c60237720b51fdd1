"""Mayer-Vietoris double complexes, total complexes and spectral-sequence pages.

Storage convention: the horizontal (restriction) and vertical (coboundary)
differentials are stored so that they *commute*.  The total differential on
``N^{p,q}`` is then ``delta + (-1)^p d``, which squares to zero.

Pages are computed from the filtered total complex.  For a decreasing
filtration ``F^p`` of ``Tot``, with
``Z_r^p = F^p ∩ D^{-1}(F^{p+r})`` and ``Z_{-1}^p = F^p``,

    E_r^p = Z_r^p / (Z_{r-1}^{p+1} + D Z_{r-1}^{p-r+1}),

and only dimensions are reported.  ``filtration="first"`` filters by the
column index p (``E_1 = H_d``, ``E_2 = H_delta H_d``); ``"second"`` filters
by the row index q (``E_1 = H_delta``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from .complexes import CochainComplex, Simplex, SimplicialComplex, faces
from .errors import InvalidInput
from .qlinalg import RationalSparseMatrix, block_matrix, kernel_basis, span_dim

Bidegree = Tuple[int, int]


@dataclass(frozen=True)
class DoubleComplex:
    """First-quadrant double complex with commuting differentials.

    ``horizontal[(p, q)]``: ``(p, q) -> (p + 1, q)``; ``vertical[(p, q)]``:
    ``(p, q) -> (p, q + 1)``.  Absent keys are zero maps / zero spaces.
    """

    dims: Dict[Bidegree, int]
    horizontal: Dict[Bidegree, RationalSparseMatrix]
    vertical: Dict[Bidegree, RationalSparseMatrix]
    basis: Dict[Bidegree, Tuple] = field(default_factory=dict, compare=False, repr=False)
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "dims", {k: v for k, v in self.dims.items() if v})
        if self.validate:
            self.check()

    def dim(self, p: int, q: int) -> int:
        return self.dims.get((p, q), 0)

    def h(self, p: int, q: int) -> RationalSparseMatrix:
        M = self.horizontal.get((p, q))
        return M if M is not None else RationalSparseMatrix.zeros(self.dim(p + 1, q), self.dim(p, q))

    def v(self, p: int, q: int) -> RationalSparseMatrix:
        M = self.vertical.get((p, q))
        return M if M is not None else RationalSparseMatrix.zeros(self.dim(p, q + 1), self.dim(p, q))

    @property
    def p_max(self) -> int:
        return max((p for p, _ in self.dims), default=-1)

    @property
    def q_max(self) -> int:
        return max((q for _, q in self.dims), default=-1)

    @property
    def degree_max(self) -> int:
        return max((p + q for p, q in self.dims), default=-1)

    def check(self) -> None:
        for (p, q), M in self.horizontal.items():
            if M.shape != (self.dim(p + 1, q), self.dim(p, q)):
                raise InvalidInput(f"horizontal map at {(p, q)} has shape {M.shape}")
        for (p, q), M in self.vertical.items():
            if M.shape != (self.dim(p, q + 1), self.dim(p, q)):
                raise InvalidInput(f"vertical map at {(p, q)} has shape {M.shape}")
        for (p, q) in self.dims:
            if not (self.h(p + 1, q) @ self.h(p, q)).is_zero():
                raise InvalidInput(f"horizontal differentials do not square to zero at {(p, q)}")
            if not (self.v(p, q + 1) @ self.v(p, q)).is_zero():
                raise InvalidInput(f"vertical differentials do not square to zero at {(p, q)}")
            if self.h(p, q + 1) @ self.v(p, q) != self.v(p + 1, q) @ self.h(p, q):
                raise InvalidInput(f"horizontal and vertical differentials do not commute at {(p, q)}")

    def column_lengths(self) -> Dict[int, int]:
        """Number of nonzero terms in each column p."""
        out: Dict[int, int] = {}
        for p, _ in self.dims:
            out[p] = out.get(p, 0) + 1
        return out


def _complex_coboundary(rows_simplices: Sequence[Simplex], cols_index: Dict[Simplex, int]) -> Dict[int, Dict[int, int]]:
    data = {}
    for r, s in enumerate(rows_simplices):
        row = {}
        for i, f in enumerate(faces(s)):
            c = cols_index.get(f)
            if c is not None:
                row[c] = -1 if i % 2 else 1
        if row:
            data[r] = row
    return data


def mv_double_complex(ambient: SimplicialComplex, members: Sequence[SimplicialComplex], truncate: int) -> DoubleComplex:
    """``N_t^{p,q} = ⊕_{alpha_0<...<alpha_p} C^q(A_alpha)`` for ``p + q <= truncate``."""
    if truncate < 0:
        raise InvalidInput("truncation must be nonnegative")
    covered = frozenset().union(*(m.simplices for m in members)) if members else frozenset()
    if covered != ambient.simplices:
        extra = covered - ambient.simplices
        if extra:
            raise InvalidInput(f"cover property violated: {list(min(extra))} is not an ambient simplex")
        raise InvalidInput(f"cover property violated: ambient simplex {list(min(ambient.simplices - covered))} lies in no member")
    n = len(members)
    qtop = ambient.dim

    inter: Dict[Tuple[int, ...], frozenset] = {}
    for size in range(1, min(n, truncate + 1) + 1):
        for alpha in combinations(range(n), size):
            simps = members[alpha[0]].simplices if size == 1 else inter[alpha[:-1]] & members[alpha[-1]].simplices
            inter[alpha] = simps

    # basis[(p, q)] = list of (alpha, q-simplex), tuples lexicographic then simplices sorted
    basis: Dict[Bidegree, List[Tuple[Tuple[int, ...], Simplex]]] = {}
    for (p, q) in ((p, q) for p in range(truncate + 1) for q in range(truncate + 1 - p)):
        if p >= n or q > qtop:
            continue
        items = []
        for alpha in combinations(range(n), p + 1):
            simps = sorted(s for s in inter[alpha] if len(s) == q + 1)
            items.extend((alpha, s) for s in simps)
        if items:
            basis[(p, q)] = items
    pos = {k: {b: i for i, b in enumerate(v)} for k, v in basis.items()}
    dims = {k: len(v) for k, v in basis.items()}

    horizontal = {}
    vertical = {}
    for (p, q), items in basis.items():
        if (p + 1, q) in basis:
            target = basis[(p + 1, q)]
            src = pos[(p, q)]
            data = {}
            for r, (beta, s) in enumerate(target):
                row = {}
                for j in range(len(beta)):
                    row[src[(beta[:j] + beta[j + 1:], s)]] = -1 if j % 2 else 1
                data[r] = row
            horizontal[(p, q)] = RationalSparseMatrix._trusted(len(target), len(items), data)
        if (p, q + 1) in basis:
            target = basis[(p, q + 1)]
            src = pos[(p, q)]
            data = {}
            for r, (alpha, s) in enumerate(target):
                row = {}
                for i, f in enumerate(faces(s)):
                    row[src[(alpha, f)]] = -1 if i % 2 else 1
                data[r] = row
            vertical[(p, q)] = RationalSparseMatrix._trusted(len(target), len(items), data)
    return DoubleComplex(dims, horizontal, vertical, basis={k: tuple(v) for k, v in basis.items()})


# -- total complex ----------------------------------------------------------------

def _tot_layout(D: DoubleComplex, n: int) -> List[Bidegree]:
    return [(p, n - p) for p in range(n + 1) if D.dim(p, n - p)]


def total_complex(D: DoubleComplex) -> CochainComplex:
    """``Tot^n = ⊕_{p+q=n} N^{p,q}`` (blocks ordered by p) with ``delta + (-1)^p d``."""
    top = D.degree_max
    dims = []
    mats = []
    layouts = [_tot_layout(D, n) for n in range(top + 1)]
    for n in range(top + 1):
        dims.append(sum(D.dim(*b) for b in layouts[n]))
    for n in range(top):
        src, dst = layouts[n], layouts[n + 1]
        blocks = {}
        for j, (p, q) in enumerate(src):
            for i, (pp, qq) in enumerate(dst):
                if (pp, qq) == (p + 1, q) and (p, q) in D.horizontal:
                    blocks[(i, j)] = D.horizontal[(p, q)]
                elif (pp, qq) == (p, q + 1) and (p, q) in D.vertical:
                    M = D.vertical[(p, q)]
                    blocks[(i, j)] = -M if p % 2 else M
        mats.append(block_matrix([D.dim(*b) for b in dst], [D.dim(*b) for b in src], blocks))
    return CochainComplex(tuple(dims), tuple(mats))


# -- spectral sequences -----------------------------------------------------------

@dataclass(frozen=True)
class SpectralPage:
    r: int
    dims: Dict[Bidegree, int]
    filtration: str

    def total(self, n: int) -> int:
        """``Σ_{p+q=n} dim E_r^{p,q}``."""
        return sum(v for (p, q), v in self.dims.items() if p + q == n)

    def table(self) -> List[List[int]]:
        """Rows indexed by q (top row = largest q), columns by p."""
        if not self.dims:
            return []
        P = max(p for p, _ in self.dims) + 1
        Q = max(q for _, q in self.dims) + 1
        return [[self.dims.get((p, q), 0) for p in range(P)] for q in reversed(range(Q))]


class _FilteredTot:
    """Total complex with each basis vector tagged by its bidegree."""

    def __init__(self, D: DoubleComplex, filtration: str):
        if filtration not in ("first", "second"):
            raise InvalidInput(f"unknown filtration {filtration!r}; use 'first' or 'second'")
        self.tot = total_complex(D)
        self.top = D.degree_max
        self.layout = [_tot_layout(D, n) for n in range(self.top + 1)]
        self.filt: List[List[int]] = []
        self.bideg: List[List[Bidegree]] = []
        for n in range(self.top + 1):
            tags, bd = [], []
            for (p, q) in self.layout[n]:
                f = p if filtration == "first" else q
                tags.extend([f] * D.dim(p, q))
                bd.extend([(p, q)] * D.dim(p, q))
            self.filt.append(tags)
            self.bideg.append(bd)

    def dim(self, n: int) -> int:
        return self.tot.dims[n] if 0 <= n <= self.top else 0

    def F(self, n: int, p: int) -> List[List[int]]:
        """Standard basis of ``F^p Tot^n`` as coordinate vectors."""
        out = []
        for i, f in enumerate(self.filt[n] if 0 <= n <= self.top else []):
            if f >= p:
                v = [0] * self.dim(n)
                v[i] = 1
                out.append(v)
        return out

    def Z(self, n: int, p: int, r: int) -> List[list]:
        """Basis of ``Z_r^p`` in degree n."""
        if r < 0:
            return self.F(n, p)
        if not 0 <= n <= self.top:
            return []
        cols = [i for i, f in enumerate(self.filt[n]) if f >= p]
        if n + 1 > self.top:
            rows: List[int] = []
        else:
            rows = [i for i, f in enumerate(self.filt[n + 1]) if f < p + r]
        if not cols:
            return []
        Dn = self.tot.differential(n)
        sub = Dn.submatrix(rows, cols) if rows else RationalSparseMatrix.zeros(0, len(cols))
        out = []
        for kv in kernel_basis(sub):
            v = [0] * self.dim(n)
            for j, c in enumerate(cols):
                v[c] = kv[j]
            out.append(v)
        return out

    def image(self, n: int, vectors: List[list]) -> List[list]:
        """``D`` applied to vectors of degree ``n - 1``."""
        if n - 1 < 0 or not vectors:
            return []
        Dm = self.tot.differential(n - 1)
        return [Dm.apply(v) for v in vectors]

    def page_dim(self, n: int, p: int, r: int) -> int:
        num = self.Z(n, p, r)
        if not num:
            return 0
        den = self.Z(n, p + 1, r - 1) + self.image(n, self.Z(n - 1, p - r + 1, r - 1))
        return span_dim(num, self.dim(n)) - span_dim(den, self.dim(n))


def spectral_page(D: DoubleComplex, r: int, filtration: str = "first") -> SpectralPage:
    """Dimensions of ``E_r^{p,q}`` for the chosen filtration."""
    if r < 0:
        raise InvalidInput("page number must be nonnegative")
    ft = _FilteredTot(D, filtration)
    dims: Dict[Bidegree, int] = {}
    for n in range(ft.top + 1):
        for (p, q) in ft.layout[n]:
            f = p if filtration == "first" else q
            d = ft.page_dim(n, f, r)
            if d:
                dims[(p, q)] = d
    return SpectralPage(r, dims, filtration)
