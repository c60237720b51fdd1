"""Turn a scene of simple primitives into an arrangement of grid subcomplexes.

The bounding box is cut into a regular grid (``resolution`` cells per unit
length, at least one per axis) and each cube is split into ``k!`` simplices
by the Freudenthal/Kuhn rule.  A primitive becomes the subcomplex of
simplices all of whose vertices satisfy its inequalities.  This is an
approximation: the homotopy type is right only when the grid resolves the
primitive, which :func:`stable_arrangement_betti` probes by refinement.

All coordinates are exact rationals; JSON numbers are read through their
decimal string.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import ceil
from typing import Callable, Dict, List, Sequence, Tuple

from .complexes import SimplicialComplex
from .errors import InvalidInput
from .hocolim import Arrangement, arrangement_betti

Point = Tuple[Fraction, ...]


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InvalidInput("booleans are not numbers")
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    raise InvalidInput(f"expected a number, got {x!r}")


def _sign_ok(value: Fraction, sign: str) -> bool:
    if sign == "<=0":
        return value <= 0
    if sign == ">=0":
        return value >= 0
    raise InvalidInput(f"unknown sign {sign!r}; use '<=0' or '>=0'")


@dataclass(frozen=True)
class Primitive:
    """A closed set given as ``kind`` plus its parameters (see :func:`parse_primitive`)."""

    kind: str
    predicate: Callable[[Point], bool] = field(repr=False, compare=False)


def _quadric_predicate(matrix, sign: str, k: int) -> Callable[[Point], bool]:
    M = [[_q(v) for v in row] for row in matrix]
    m = len(M)
    if any(len(row) != m for row in M):
        raise InvalidInput("quadric matrix must be square")
    if m not in (k, k + 1):
        raise InvalidInput(f"quadric matrix in R^{k} must be {k}x{k} (form in x) or {k + 1}x{k + 1} (form in (1, x))")
    if any(M[i][j] != M[j][i] for i in range(m) for j in range(m)):
        raise InvalidInput("quadric matrix must be symmetric")
    _sign_ok(Fraction(0), sign)

    def pred(x: Point) -> bool:
        y = x if m == k else (Fraction(1),) + tuple(x)
        val = sum(M[i][j] * y[i] * y[j] for i in range(m) for j in range(m) if M[i][j])
        return _sign_ok(val, sign)

    return pred


def parse_primitive(spec: dict, k: int) -> Primitive:
    """Primitive from its JSON description.

    * ``{"type": "ball", "center": [...], "radius": r}``: closed ball;
    * ``{"type": "box", "lo": [...], "hi": [...]}``: closed axis-aligned box;
    * ``{"type": "quadric", "matrix": M, "sign": "<=0" | ">=0"}``: ``M`` is
      ``k x k`` (evaluated at ``x``) or ``(k+1) x (k+1)`` (evaluated at ``(1, x)``);
    * ``{"type": "intersection", "parts": [...]}``: all parts at once.
    """
    if not isinstance(spec, dict) or "type" not in spec:
        raise InvalidInput(f"primitive must be an object with a 'type': {spec!r}")
    kind = spec["type"]
    if kind == "ball":
        c = tuple(_q(v) for v in spec["center"])
        r = _q(spec["radius"])
        if len(c) != k:
            raise InvalidInput(f"ball center must have {k} coordinates")
        if r < 0:
            raise InvalidInput("ball radius must be nonnegative")
        r2 = r * r
        return Primitive(kind, lambda x: sum((a - b) ** 2 for a, b in zip(x, c)) <= r2)
    if kind == "box":
        lo = tuple(_q(v) for v in spec["lo"])
        hi = tuple(_q(v) for v in spec["hi"])
        if len(lo) != k or len(hi) != k:
            raise InvalidInput(f"box corners must have {k} coordinates")
        return Primitive(kind, lambda x: all(a <= v <= b for v, a, b in zip(x, lo, hi)))
    if kind == "quadric":
        return Primitive(kind, _quadric_predicate(spec["matrix"], spec.get("sign", "<=0"), k))
    if kind == "intersection":
        parts = [parse_primitive(p, k) for p in spec["parts"]]
        if not parts:
            raise InvalidInput("intersection needs at least one part")
        return Primitive(kind, lambda x: all(p.predicate(x) for p in parts))
    raise InvalidInput(f"unsupported primitive type {kind!r}")


@dataclass(frozen=True)
class Scene:
    dim: int
    lo: Point
    hi: Point
    primitives: Tuple[Primitive, ...]

    @classmethod
    def from_json(cls, data: dict) -> "Scene":
        try:
            k = int(data["dim"])
            bbox = data["bbox"]
            prims = data["primitives"]
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"scene needs 'dim', 'bbox' and 'primitives': missing {exc}") from None
        if not 1 <= k <= 3:
            raise InvalidInput("scene dimension must be 1, 2 or 3")
        if len(bbox) == 2 and all(isinstance(b, list) for b in bbox):
            lo, hi = bbox
        elif len(bbox) == 2 * k:
            lo, hi = bbox[:k], bbox[k:]
        else:
            raise InvalidInput("bbox must be [[lo...], [hi...]] or a flat list of 2k numbers")
        lo = tuple(_q(v) for v in lo)
        hi = tuple(_q(v) for v in hi)
        if len(lo) != k or any(a >= b for a, b in zip(lo, hi)):
            raise InvalidInput("bbox must have lo < hi on every axis")
        return cls(k, lo, hi, tuple(parse_primitive(p, k) for p in prims))


@dataclass(frozen=True)
class Grid:
    """Freudenthal triangulation of a box; vertex ids are row-major grid indices."""

    lo: Point
    steps: Tuple[Fraction, ...]
    shape: Tuple[int, ...]

    @property
    def vertex_count(self) -> int:
        n = 1
        for s in self.shape:
            n *= s + 1
        return n

    def vid(self, idx: Sequence[int]) -> int:
        v = 0
        for i, s in zip(idx, self.shape):
            v = v * (s + 1) + i
        return v

    def coordinates(self) -> List[Point]:
        out = []
        for idx in product(*(range(s + 1) for s in self.shape)):
            out.append(tuple(a + i * h for a, i, h in zip(self.lo, idx, self.steps)))
        return out

    def top_simplices(self) -> List[Tuple[int, ...]]:
        k = len(self.shape)
        out = []
        for base in product(*(range(s) for s in self.shape)):
            for perm in permutations(range(k)):
                cur = list(base)
                verts = [self.vid(cur)]
                for axis in perm:
                    cur[axis] += 1
                    verts.append(self.vid(cur))
                out.append(tuple(sorted(verts)))
        return out


def make_grid(lo: Point, hi: Point, resolution: int) -> Grid:
    if resolution <= 0:
        raise InvalidInput("resolution must be a positive number of grid cells per unit")
    shape = tuple(max(1, ceil((b - a) * resolution)) for a, b in zip(lo, hi))
    steps = tuple((b - a) / s for a, b, s in zip(lo, hi, shape))
    return Grid(lo, steps, shape)


def ingest_geometric(scene: Scene, resolution: int) -> Tuple[Arrangement, Grid]:
    """Arrangement of one subcomplex per primitive inside the triangulated bounding box."""
    grid = make_grid(scene.lo, scene.hi, resolution)
    coords = grid.coordinates()
    ambient = SimplicialComplex.from_maximal(grid.vertex_count, grid.top_simplices())
    sets = []
    for prim in scene.primitives:
        inside = [prim.predicate(x) for x in coords]
        simps = frozenset(s for s in ambient.simplices if all(inside[v] for v in s))
        sets.append(SimplicialComplex._trusted(grid.vertex_count, simps))
    return Arrangement(ambient, tuple(sets)), grid


def stable_arrangement_betti(scene: Scene, ell: int, resolution: int = 4, max_resolution: int = 256) -> Tuple[Tuple[int, ...], int]:
    """Double the resolution until the Betti vector repeats twice in a row.

    Heuristic only; returns ``(betti, resolution)`` at the first stable value,
    or the last value computed when ``max_resolution`` is reached.
    """
    history: List[Tuple[int, ...]] = []
    res = resolution
    while True:
        arr, _ = ingest_geometric(scene, res)
        history.append(arrangement_betti(arr, ell).betti)
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            return history[-1], res
        if res * 2 > max_resolution:
            return history[-1], res
        res *= 2


def betti_by_resolution(scene: Scene, ell: int, resolutions: Sequence[int]) -> Dict[int, Tuple[int, ...]]:
    out = {}
    for r in resolutions:
        arr, _ = ingest_geometric(scene, r)
        out[r] = arrangement_betti(arr, ell).betti
    return out
