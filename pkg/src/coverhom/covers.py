"""Covers by subcomplexes, nerve complexes and their truncations.

The degree-p term of the nerve complex has one basis vector per connected
component of each nonempty ``(p+1)``-fold intersection.  Differentials are
the alternating sums of restriction maps; a component of a deeper
intersection restricts to the unique component of the shallower one that
contains any of its vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from .complexes import (
    CochainComplex,
    SimplicialComplex,
    betti,
    cochain_complex,
)
from .errors import InvalidInput
from .qlinalg import RationalSparseMatrix, rank

IndexTuple = Tuple[int, ...]


@dataclass(frozen=True)
class Cover:
    """An ambient complex together with subcomplexes whose union is all of it."""

    ambient: SimplicialComplex
    members: Tuple[SimplicialComplex, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise InvalidInput("a cover needs at least one member")
        covered = set()
        for i, m in enumerate(self.members):
            if not m.is_subcomplex_of(self.ambient):
                extra = min(m.simplices - self.ambient.simplices)
                raise InvalidInput(f"member {i} contains {list(extra)}, which is not in the ambient complex")
            covered |= m.simplices
        missing = self.ambient.simplices - covered
        if missing:
            raise InvalidInput(f"cover property violated: ambient simplex {list(min(missing))} lies in no member")

    @classmethod
    def from_members(cls, members: Sequence[SimplicialComplex]) -> "Cover":
        """Cover of the union of the given members."""
        n = max(m.vertex_count for m in members)
        simps = frozenset().union(*(m.simplices for m in members))
        return cls(SimplicialComplex._trusted(n, simps), tuple(members))

    def __len__(self) -> int:
        return len(self.members)


class ComponentLabeling(dict):
    """``vertex -> component label``; labels are ``0..count-1`` ordered by smallest vertex."""

    @property
    def count(self) -> int:
        return len(set(self.values()))


def connected_components(K: SimplicialComplex) -> ComponentLabeling:
    """Union-find over the 1-skeleton of ``K``."""
    parent = {v: v for v in K.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for s in K.simplices:
        if len(s) == 2:
            a, b = find(s[0]), find(s[1])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    roots: Dict[int, int] = {}
    out = ComponentLabeling()
    for v in sorted(parent):
        r = find(v)
        if r not in roots:
            roots[r] = len(roots)
        out[v] = roots[r]
    return out


def intersection(cover: Cover, alpha: IndexTuple) -> SimplicialComplex:
    """``S_{alpha_0} ∩ ... ∩ S_{alpha_p}``."""
    alpha = tuple(alpha)
    if not alpha:
        raise InvalidInput("index tuple must be nonempty")
    if any(a >= b for a, b in zip(alpha, alpha[1:])):
        raise InvalidInput(f"index tuple {alpha} is not strictly increasing")
    for a in alpha:
        if not 0 <= a < len(cover.members):
            raise IndexError(f"member index {a} out of range 0..{len(cover.members) - 1}")
    simps = cover.members[alpha[0]].simplices
    for a in alpha[1:]:
        simps = simps & cover.members[a].simplices
    return SimplicialComplex._trusted(cover.ambient.vertex_count, simps)


class _IntersectionCache:
    """Lazily computed intersections and their component labelings."""

    def __init__(self, cover: Cover):
        self.cover = cover
        self._simps: Dict[IndexTuple, frozenset] = {}
        self._labels: Dict[IndexTuple, ComponentLabeling] = {}

    def simplices(self, alpha: IndexTuple) -> frozenset:
        got = self._simps.get(alpha)
        if got is None:
            if len(alpha) == 1:
                got = self.cover.members[alpha[0]].simplices
            else:
                got = self.simplices(alpha[:-1]) & self.cover.members[alpha[-1]].simplices
            self._simps[alpha] = got
        return got

    def complex(self, alpha: IndexTuple) -> SimplicialComplex:
        return SimplicialComplex._trusted(self.cover.ambient.vertex_count, self.simplices(alpha))

    def labels(self, alpha: IndexTuple) -> ComponentLabeling:
        got = self._labels.get(alpha)
        if got is None:
            got = connected_components(self.complex(alpha))
            self._labels[alpha] = got
        return got


@dataclass(frozen=True)
class NerveComplex:
    """Truncated nerve complex with its basis: ``basis[p][i] = (alpha, component)``."""

    complex: CochainComplex
    basis: Tuple[Tuple[Tuple[IndexTuple, int], ...], ...]

    @property
    def dims(self) -> Tuple[int, ...]:
        return self.complex.dims

    def betti(self) -> List[int]:
        return betti(self.complex)


def nerve_complex(cover: Cover, truncate: int) -> NerveComplex:
    """Nerve complex ``L^p`` for ``0 <= p <= truncate`` (higher terms are zero)."""
    if truncate < 0:
        raise InvalidInput("truncation must be nonnegative")
    n = len(cover.members)
    cache = _IntersectionCache(cover)
    basis: List[List[Tuple[IndexTuple, int]]] = []
    position: List[Dict[Tuple[IndexTuple, int], int]] = []
    for p in range(truncate + 1):
        level = []
        for alpha in combinations(range(n), p + 1):
            if not cache.simplices(alpha):
                continue
            for c in range(cache.labels(alpha).count):
                level.append((alpha, c))
        basis.append(level)
        position.append({b: i for i, b in enumerate(level)})

    mats = []
    for p in range(truncate):
        rows = {}
        for r, (beta, comp) in enumerate(basis[p + 1]):
            labels = cache.labels(beta)
            vertex = min(v for v, lab in labels.items() if lab == comp)
            row: Dict[int, int] = {}
            for i in range(len(beta)):
                alpha = beta[:i] + beta[i + 1:]
                src = position[p][(alpha, cache.labels(alpha)[vertex])]
                row[src] = row.get(src, 0) + (-1 if i % 2 else 1)
            row = {c: v for c, v in row.items() if v}
            if row:
                rows[r] = row
        mats.append(RationalSparseMatrix.from_rows(len(basis[p + 1]), len(basis[p]), rows))
    C = CochainComplex(tuple(len(b) for b in basis), tuple(mats))
    return NerveComplex(C, tuple(tuple(b) for b in basis))


def betti01_from_cover(cover: Cover) -> Tuple[int, int]:
    """``(b_0, b_1)`` of the union from the nerve truncated after degree 2.

    Contract: every member is contractible.  This is not checked.
    """
    N = nerve_complex(cover, 2)
    dims = N.dims + (0, 0)
    ranks = [rank(D) for D in N.complex.differentials] + [0, 0]
    b0 = dims[0] - ranks[0]
    b1 = dims[1] - ranks[1] - ranks[0]
    return b0, b1


@dataclass(frozen=True)
class NerveFailureReport:
    nerve_betti: Tuple[int, ...]
    union_betti: Tuple[int, ...]

    @property
    def nerve_h2(self) -> int:
        return self.nerve_betti[2] if len(self.nerve_betti) > 2 else 0

    @property
    def union_b2(self) -> int:
        return self.union_betti[2] if len(self.union_betti) > 2 else 0


def nerve_failure_demo(cover: Cover) -> NerveFailureReport:
    """Compare ``H^2`` of the nerve truncated after degree 3 with ``b_2`` of the union."""
    N = nerve_complex(cover, 3)
    return NerveFailureReport(tuple(N.betti()), tuple(betti(cochain_complex(cover.ambient))))


def all_intersections_acyclic(cover: Cover) -> bool:
    """True if every nonempty multi-way intersection has Betti vector ``(1, 0, ..., 0)``."""
    cache = _IntersectionCache(cover)
    n = len(cover.members)
    for size in range(1, n + 1):
        for alpha in combinations(range(n), size):
            if not cache.simplices(alpha):
                continue
            b = betti(cochain_complex(cache.complex(alpha)))
            if b[0] != 1 or any(b[1:]):
                return False
    return True
