"""Simplicial and regular cell complexes and their cochain complexes.

Simplices are strictly increasing vertex tuples; the only source of signs is
the alternating face formula, so no orientation data is stored.  A pair
``(K, L)`` is handled through cochains vanishing on ``L``, i.e. the ambient
coboundary restricted to the simplices of ``K`` outside ``L``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Hashable, Iterable, List, Mapping, Sequence, Tuple

from .errors import InvalidInput
from .qlinalg import RationalSparseMatrix, rank

Simplex = Tuple[int, ...]


def faces(simplex: Simplex) -> List[Simplex]:
    """Codimension-one faces; face ``i`` omits vertex ``i``."""
    return [simplex[:i] + simplex[i + 1:] for i in range(len(simplex))]


def closure(simplices: Iterable[Sequence[int]]) -> FrozenSet[Simplex]:
    """All nonempty faces of the given simplices."""
    out = set()
    for s in simplices:
        s = tuple(sorted(set(s)))
        if not s:
            continue
        if s in out:
            continue
        for k in range(1, len(s) + 1):
            out.update(combinations(s, k))
    return frozenset(out)


class SimplicialComplex:
    """Finite abstract simplicial complex on vertices ``0..vertex_count-1``.

    The constructor validates closure under faces; use :meth:`from_maximal`
    to close a list of generating simplices.
    """

    def __init__(self, vertex_count: int, simplices: Iterable[Sequence[int]]):
        simps = set()
        for s in simplices:
            t = tuple(s)
            if not t:
                continue
            if any(t[i] >= t[i + 1] for i in range(len(t) - 1)):
                raise InvalidInput(f"simplex {list(s)} is not a strictly increasing vertex tuple")
            if t[0] < 0 or t[-1] >= vertex_count:
                raise InvalidInput(f"simplex {list(s)} uses a vertex outside 0..{vertex_count - 1}")
            simps.add(t)
        for t in simps:
            if len(t) > 1:
                for f in faces(t):
                    if f not in simps:
                        raise InvalidInput(f"not closed under faces: {list(f)} of {list(t)} is missing")
        self.vertex_count = vertex_count
        self.simplices: FrozenSet[Simplex] = frozenset(simps)

    @classmethod
    def from_maximal(cls, vertex_count: int, maximal: Iterable[Sequence[int]]) -> "SimplicialComplex":
        maximal = list(maximal)
        for s in maximal:
            if any(v < 0 or v >= vertex_count for v in s):
                raise InvalidInput(f"simplex {list(s)} uses a vertex outside 0..{vertex_count - 1}")
        return cls._trusted(vertex_count, closure(maximal))

    @classmethod
    def _trusted(cls, vertex_count: int, simplices: FrozenSet[Simplex]) -> "SimplicialComplex":
        K = cls.__new__(cls)
        K.vertex_count = vertex_count
        K.simplices = frozenset(simplices)
        return K

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.simplices == other.simplices

    def __hash__(self):
        return hash((self.vertex_count, self.simplices))

    def __len__(self) -> int:
        return len(self.simplices)

    def __contains__(self, simplex) -> bool:
        return tuple(simplex) in self.simplices

    def __repr__(self) -> str:
        return f"SimplicialComplex(vertices={self.vertex_count}, f={self.f_vector})"

    @property
    def dim(self) -> int:
        if not self.simplices:
            return -1
        return max(len(s) for s in self.simplices) - 1

    @cached_property
    def by_dim(self) -> Tuple[Tuple[Simplex, ...], ...]:
        """Simplices grouped by dimension, each group sorted lexicographically."""
        groups: List[List[Simplex]] = [[] for _ in range(self.dim + 1)]
        for s in self.simplices:
            groups[len(s) - 1].append(s)
        return tuple(tuple(sorted(g)) for g in groups)

    @cached_property
    def index(self) -> Tuple[Dict[Simplex, int], ...]:
        return tuple({s: i for i, s in enumerate(g)} for g in self.by_dim)

    @property
    def f_vector(self) -> Tuple[int, ...]:
        return tuple(len(g) for g in self.by_dim)

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(s[0] for s in self.by_dim[0]) if self.simplices else ()

    def maximal_simplices(self) -> List[Simplex]:
        covered = set()
        for s in self.simplices:
            if len(s) > 1:
                covered.update(faces(s))
        return sorted((s for s in self.simplices if s not in covered), key=lambda s: (len(s), s))

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self.simplices <= other.simplices

    def restrict(self, simplices: Iterable[Simplex]) -> "SimplicialComplex":
        """Subcomplex on a set of simplices already known to be closed."""
        return SimplicialComplex._trusted(self.vertex_count, frozenset(simplices))

    def intersection(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex._trusted(max(self.vertex_count, other.vertex_count), self.simplices & other.simplices)

    def union(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex._trusted(max(self.vertex_count, other.vertex_count), self.simplices | other.simplices)


@dataclass(frozen=True)
class RegularCellComplex:
    """Cells with signed incidences to their codimension-one faces.

    ``incidence[cell] = {face: +-1}``; cells without an entry have empty boundary.
    """

    cells: Tuple[Tuple[Hashable, int], ...]
    incidence: Mapping[Hashable, Mapping[Hashable, int]]
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple((cid, int(d)) for cid, d in self.cells))
        if self.validate:
            self.check()

    @cached_property
    def dimension_of(self) -> Dict[Hashable, int]:
        return dict(self.cells)

    @cached_property
    def by_dim(self) -> Tuple[Tuple[Hashable, ...], ...]:
        top = max((d for _, d in self.cells), default=-1)
        groups: List[List[Hashable]] = [[] for _ in range(top + 1)]
        for cid, d in self.cells:
            groups[d].append(cid)
        return tuple(tuple(g) for g in groups)

    def check(self) -> None:
        dim_of = {}
        for cid, d in self.cells:
            if cid in dim_of:
                raise InvalidInput(f"duplicate cell id {cid!r}")
            if d < 0:
                raise InvalidInput(f"cell {cid!r} has negative dimension")
            dim_of[cid] = d
        for cid, bd in self.incidence.items():
            if cid not in dim_of:
                raise InvalidInput(f"incidence given for unknown cell {cid!r}")
            for face, coeff in bd.items():
                if face not in dim_of:
                    raise InvalidInput(f"cell {cid!r} has unknown face {face!r}")
                if dim_of[face] != dim_of[cid] - 1:
                    raise InvalidInput(f"face {face!r} of {cid!r} does not have dimension {dim_of[cid] - 1}")
                if coeff not in (1, -1):
                    raise InvalidInput(f"incidence coefficient of {face!r} in {cid!r} is {coeff}, not +-1")
        for cid, bd in self.incidence.items():
            acc: Dict[Hashable, int] = {}
            for face, c1 in bd.items():
                for ff, c2 in self.incidence.get(face, {}).items():
                    acc[ff] = acc.get(ff, 0) + c1 * c2
            bad = [ff for ff, v in acc.items() if v]
            if bad:
                raise InvalidInput(f"boundary of boundary of {cid!r} is nonzero on {bad[0]!r}")


@dataclass(frozen=True)
class CochainComplex:
    """Graded dimensions with coboundaries ``differentials[p]: degree p -> p+1``."""

    dims: Tuple[int, ...]
    differentials: Tuple[RationalSparseMatrix, ...]
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "differentials", tuple(self.differentials))
        if self.validate:
            self.check()

    def check(self) -> None:
        if len(self.differentials) != max(len(self.dims) - 1, 0):
            raise InvalidInput(f"{len(self.dims)} degrees need {max(len(self.dims) - 1, 0)} differentials")
        for p, D in enumerate(self.differentials):
            if D.shape != (self.dims[p + 1], self.dims[p]):
                raise InvalidInput(f"differential {p} has shape {D.shape}, expected {(self.dims[p + 1], self.dims[p])}")
        for p in range(len(self.differentials) - 1):
            if not (self.differentials[p + 1] @ self.differentials[p]).is_zero():
                raise InvalidInput(f"differential {p + 1} composed with differential {p} is not zero")

    def differential(self, p: int) -> RationalSparseMatrix:
        """``delta^p``, zero outside the stored range."""
        if 0 <= p < len(self.differentials):
            return self.differentials[p]
        rows = self.dims[p + 1] if 0 <= p + 1 < len(self.dims) else 0
        cols = self.dims[p] if 0 <= p < len(self.dims) else 0
        return RationalSparseMatrix.zeros(rows, cols)

    def ranks(self, threads: int = 1) -> Tuple[int, ...]:
        if threads > 1 and len(self.differentials) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                return tuple(pool.map(rank, self.differentials))
        return tuple(rank(D) for D in self.differentials)

    def truncated(self, top: int) -> "CochainComplex":
        """Keep degrees ``0..top`` only."""
        n = max(0, min(top + 1, len(self.dims)))
        return CochainComplex(self.dims[:n], self.differentials[:max(n - 1, 0)], validate=False)


@dataclass(frozen=True)
class SubcomplexPair:
    """A simplicial complex with a subcomplex (given as a set of its simplices)."""

    ambient: SimplicialComplex
    sub: FrozenSet[Simplex]

    def __post_init__(self):
        sub = frozenset(tuple(s) for s in self.sub)
        object.__setattr__(self, "sub", sub)
        missing = sub - self.ambient.simplices
        if missing:
            raise InvalidInput(f"sub contains {list(min(missing))}, which is not a simplex of the ambient complex")
        for s in sub:
            if len(s) > 1:
                for f in faces(s):
                    if f not in sub:
                        raise InvalidInput(f"sub is not closed under faces: {list(f)} of {list(s)} is missing")

    @property
    def sub_complex(self) -> SimplicialComplex:
        return SimplicialComplex._trusted(self.ambient.vertex_count, self.sub)


# -- cochain complexes ----------------------------------------------------------

def _coboundaries(by_dim: Sequence[Sequence[Simplex]]) -> List[RationalSparseMatrix]:
    index = [{s: i for i, s in enumerate(g)} for g in by_dim]
    mats = []
    for p in range(len(by_dim) - 1):
        rows = {}
        below = index[p]
        for r, s in enumerate(by_dim[p + 1]):
            row = {}
            for i, f in enumerate(faces(s)):
                c = below.get(f)
                if c is not None:
                    row[c] = -1 if i % 2 else 1
            if row:
                rows[r] = row
        mats.append(RationalSparseMatrix._trusted(len(by_dim[p + 1]), len(by_dim[p]), rows))
    return mats


def cochain_complex(K: SimplicialComplex) -> CochainComplex:
    """Simplicial cochain complex; entry of ``delta^p`` at (s, face i of s) is ``(-1)^i``."""
    groups = K.by_dim
    return CochainComplex(tuple(len(g) for g in groups), tuple(_coboundaries(groups)), validate=False)


def relative_cochain_complex(P: SubcomplexPair) -> CochainComplex:
    """Cochains of ``K`` vanishing on ``L``: simplices of ``K`` not in ``L`` as basis."""
    groups = [tuple(s for s in g if s not in P.sub) for g in P.ambient.by_dim]
    return CochainComplex(tuple(len(g) for g in groups), tuple(_coboundaries(groups)), validate=False)


def cellular_cochain_complex(C: RegularCellComplex, max_dim: int | None = None) -> CochainComplex:
    """Cochain complex of a regular cell complex; ``delta^p`` is the transposed incidence.

    ``max_dim`` keeps only degrees ``0..max_dim`` (the cells above are ignored).
    """
    groups = C.by_dim
    if max_dim is not None:
        groups = groups[:max_dim + 1]
    index = [{cid: i for i, cid in enumerate(g)} for g in groups]
    mats = []
    for p in range(len(groups) - 1):
        rows = {}
        below = index[p]
        for r, cid in enumerate(groups[p + 1]):
            bd = C.incidence.get(cid)
            if bd:
                rows[r] = {below[f]: v for f, v in bd.items()}
        mats.append(RationalSparseMatrix._trusted(len(groups[p + 1]), len(groups[p]), rows))
    return CochainComplex(tuple(len(g) for g in groups), tuple(mats), validate=False)


# -- invariants -----------------------------------------------------------------

def betti_from_ranks(dims: Sequence[int], ranks: Sequence[int]) -> List[int]:
    out = []
    for p, d in enumerate(dims):
        r_out = ranks[p] if p < len(ranks) else 0
        r_in = ranks[p - 1] if p >= 1 else 0
        out.append(d - r_out - r_in)
    return out


def betti(C: CochainComplex, threads: int = 1) -> List[int]:
    """Betti numbers in degrees ``0..len(C.dims)-1`` (trailing zeros kept)."""
    return betti_from_ranks(C.dims, C.ranks(threads))


def euler_characteristic(C: CochainComplex) -> int:
    return sum((-1) ** p * b for p, b in enumerate(betti(C)))


def euler_from_dims(C: CochainComplex) -> int:
    return sum((-1) ** p * d for p, d in enumerate(C.dims))


def borel_moore_euler(P: SubcomplexPair) -> int:
    """Borel-Moore Euler characteristic of the locally closed set ``|K| \\ |L|``."""
    return euler_characteristic(relative_cochain_complex(P))


def euler_inclusion_exclusion(subcomplexes: Sequence[SimplicialComplex]) -> int:
    """Euler characteristic of the union via alternating sums over all intersections."""
    n = len(subcomplexes)
    total = 0
    for size in range(1, n + 1):
        sign = 1 if size % 2 else -1
        for I in combinations(range(n), size):
            simps = subcomplexes[I[0]].simplices
            for i in I[1:]:
                simps = simps & subcomplexes[i].simplices
            if simps:
                K = SimplicialComplex._trusted(subcomplexes[0].vertex_count, simps)
                total += sign * euler_characteristic(cochain_complex(K))
    return total


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """One round of barycentric subdivision; new vertices are the simplices of ``K``."""
    order = sorted(K.simplices, key=lambda s: (len(s), s))
    vid = {s: i for i, s in enumerate(order)}
    chains = []
    for top in order:
        stack = [(top,)]
        while stack:
            flag = stack.pop()
            chains.append(tuple(sorted(vid[s] for s in flag)))
            low = flag[-1]
            for k in range(1, len(low)):
                for f in combinations(low, k):
                    stack.append(flag + (f,))
    return SimplicialComplex._trusted(len(order), frozenset(chains))


# -- standard models ------------------------------------------------------------

def full_simplex(n: int) -> SimplicialComplex:
    """``Delta_n`` on vertices ``0..n``."""
    return SimplicialComplex.from_maximal(n + 1, [tuple(range(n + 1))])


def simplex_boundary(n: int) -> SimplicialComplex:
    """``boundary Delta_n``: all proper faces of the n-simplex."""
    return SimplicialComplex.from_maximal(n + 1, list(combinations(range(n + 1), n)))


def octahedron() -> SimplicialComplex:
    """Octahedral 2-sphere; vertices 0..5 are +x, -x, +y, -y, +z, -z."""
    tris = [tuple(sorted((x, y, z))) for x in (0, 1) for y in (2, 3) for z in (4, 5)]
    return SimplicialComplex.from_maximal(6, tris)


def octahedron_hemispheres() -> Tuple[SimplicialComplex, SimplicialComplex]:
    """Closed upper (+z) and lower (-z) hemispheres of :func:`octahedron`."""
    upper = [tuple(sorted((x, y, 4))) for x in (0, 1) for y in (2, 3)]
    lower = [tuple(sorted((x, y, 5))) for x in (0, 1) for y in (2, 3)]
    return SimplicialComplex.from_maximal(6, upper), SimplicialComplex.from_maximal(6, lower)


def sphere_cell_complex(k: int) -> RegularCellComplex:
    """The cells ``c_j^+-`` (``0 <= j <= k``, dimension ``k - j``) of the k-sphere.

    ``c_j^+-`` is the closed half ``+-X_j >= 0`` of ``{X_0 = ... = X_{j-1} = 0}``;
    the structure has ``2(k + 1)`` cells.
    """
    cells = []
    incidence = {}
    for j in range(k + 1):
        for eps in "+-":
            cells.append((f"c{j}{eps}", k - j))
    for j in range(k):
        # edges need endpoint differences; above that the two halves add up to a cycle
        sign = -1 if j + 1 == k else 1
        incidence[f"c{j}+"] = {f"c{j + 1}+": 1, f"c{j + 1}-": sign}
        incidence[f"c{j}-"] = {f"c{j + 1}+": -1, f"c{j + 1}-": -sign}
    cells.sort(key=lambda c: c[1])
    return RegularCellComplex(tuple(cells), incidence)
