"""Truncated homotopy colimits of arrangements of subcomplexes.

Cells of ``hocolim_{<=l}`` are products ``Delta_I x sigma`` with
``1 <= #I <= l + 2`` and ``sigma`` a simplex of ``A_I = ∩_{i in I} S_i``.
With ``a = Delta_I`` the boundary is

    ∂(a x sigma) = ∂a x sigma + (-1)^{dim a} a x ∂sigma,

where the face of ``Delta_I`` dropping the element in position ``j`` of ``I``
carries ``(-1)^j``.  Since every set already is a subcomplex of one ambient
complex, the identity triangulation is adaptive for every ``l`` and the cell
complex can be assembled directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, List, NamedTuple, Sequence, Tuple

from .complexes import (
    RegularCellComplex,
    Simplex,
    SimplicialComplex,
    betti,
    cellular_cochain_complex,
    faces,
)
from .errors import InvalidInput


class HocolimCell(NamedTuple):
    I: Tuple[int, ...]
    sigma: Simplex

    @property
    def dim(self) -> int:
        return len(self.I) - 1 + len(self.sigma) - 1


@dataclass(frozen=True)
class Arrangement:
    """``n >= 1`` subcomplexes ``S_1..S_n`` of one ambient complex (indexed from 0)."""

    ambient: SimplicialComplex
    sets: Tuple[SimplicialComplex, ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(self.sets))
        if not self.sets:
            raise InvalidInput("an arrangement needs at least one set")
        for i, S in enumerate(self.sets):
            if not S.is_subcomplex_of(self.ambient):
                raise InvalidInput(f"set {i} is not a subcomplex of the ambient complex")

    @property
    def n(self) -> int:
        return len(self.sets)

    def union(self) -> SimplicialComplex:
        return SimplicialComplex._trusted(self.ambient.vertex_count, frozenset().union(*(S.simplices for S in self.sets)))

    def memberships(self) -> Dict[Simplex, Tuple[int, ...]]:
        """``sigma -> indices of the sets containing sigma`` for every simplex of the union."""
        out: Dict[Simplex, List[int]] = {}
        for i, S in enumerate(self.sets):
            for s in S.simplices:
                out.setdefault(s, []).append(i)
        return {s: tuple(v) for s, v in out.items()}


def _cells(arr: Arrangement, ell: int, max_dim: int | None) -> List[HocolimCell]:
    if ell < 0:
        raise InvalidInput("ell must be nonnegative")
    cells = []
    for sigma, mem in arr.memberships().items():
        ds = len(sigma) - 1
        top = min(len(mem), ell + 2)
        if max_dim is not None:
            top = min(top, max_dim - ds + 1)
        for size in range(1, top + 1):
            for I in combinations(mem, size):
                cells.append(HocolimCell(I, sigma))
    cells.sort(key=lambda c: (c.dim, c.I, c.sigma))
    return cells


def _boundary(cell: HocolimCell) -> Dict[HocolimCell, int]:
    I, sigma = cell
    out = {}
    if len(I) > 1:
        for j in range(len(I)):
            out[HocolimCell(I[:j] + I[j + 1:], sigma)] = -1 if j % 2 else 1
    if len(sigma) > 1:
        sign = -1 if (len(I) - 1) % 2 else 1
        for j, tau in enumerate(faces(sigma)):
            out[HocolimCell(I, tau)] = sign * (-1 if j % 2 else 1)
    return out


def hocolim_complex(arr: Arrangement, ell: int, max_dim: int | None = None, validate: bool = True) -> RegularCellComplex:
    """Blow-up cell complex of ``hocolim_{<=ell}``; ``max_dim`` keeps only a skeleton."""
    cells = _cells(arr, ell, max_dim)
    incidence = {c: _boundary(c) for c in cells if c.dim > 0}
    return RegularCellComplex(tuple((c, c.dim) for c in cells), incidence, validate=validate)


def cell_count_profile(arr: Arrangement, ell: int) -> Dict[int, int]:
    """Number of hocolim cells with ``#I = j`` for ``j = 1..ell+2``."""
    if ell < 0:
        raise InvalidInput("ell must be nonnegative")
    prof = {j: 0 for j in range(1, ell + 3)}
    for mem in arr.memberships().values():
        for j in prof:
            prof[j] += comb(len(mem), j)
    return prof


def cell_count_bound(arr: Arrangement, ell: int) -> int:
    """``Σ_{j=1}^{ell+2} C(n, j) · #cells(ambient)``."""
    return sum(comb(arr.n, j) for j in range(1, ell + 3)) * len(arr.ambient.simplices)


@dataclass(frozen=True)
class ArrangementBetti:
    betti: Tuple[int, ...]
    cell_count: int
    profile: Dict[int, int]
    bound: int


def arrangement_betti(arr: Arrangement, ell: int, threads: int = 1) -> ArrangementBetti:
    """``b_0..b_ell`` of the union of the arrangement from ``hocolim_{<=ell}``.

    Only the ``(ell + 1)``-skeleton is assembled; that is all ``b_0..b_ell`` need.
    """
    K = hocolim_complex(arr, ell, max_dim=ell + 1)
    C = cellular_cochain_complex(K, max_dim=ell + 1)
    b = betti(C, threads=threads)
    b = (b + [0] * (ell + 2))[:ell + 1]
    profile = cell_count_profile(arr, ell)
    total = sum(profile.values())
    bound = cell_count_bound(arr, ell)
    if total > bound:
        raise AssertionError(f"cell count {total} exceeds the combinatorial bound {bound}")
    return ArrangementBetti(tuple(b), total, profile, bound)


def arrangement_from_members(members: Sequence[SimplicialComplex], ambient: SimplicialComplex | None = None) -> Arrangement:
    if ambient is None:
        n = max(m.vertex_count for m in members)
        ambient = SimplicialComplex._trusted(n, frozenset().union(*(m.simplices for m in members)))
    return Arrangement(ambient, tuple(members))
