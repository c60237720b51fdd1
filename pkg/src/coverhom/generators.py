"""Seeded random inputs: small complexes, covers, arrangements and scenes."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .complexes import SimplicialComplex, closure
from .covers import Cover, all_intersections_acyclic
from .hocolim import Arrangement
from .ingest import Scene, parse_primitive
from .quad import QuadraticForm


@dataclass(frozen=True)
class ComplexConfig:
    max_vertices: int = 8
    max_facets: int = 6
    max_facet_dim: int = 3


@dataclass(frozen=True)
class CoverConfig:
    complex: ComplexConfig = ComplexConfig()
    max_members: int = 4


@dataclass(frozen=True)
class BallSceneConfig:
    balls: int = 50
    min_radius: Fraction = Fraction(1, 20)
    max_radius: Fraction = Fraction(3, 20)
    denominator: int = 100


def random_complex(rng: random.Random, cfg: ComplexConfig = ComplexConfig()) -> SimplicialComplex:
    n = rng.randint(2, cfg.max_vertices)
    facets = []
    for _ in range(rng.randint(1, cfg.max_facets)):
        size = rng.randint(1, min(n, cfg.max_facet_dim + 1))
        facets.append(tuple(sorted(rng.sample(range(n), size))))
    return SimplicialComplex.from_maximal(n, facets)


def random_uniform_complex(rng: random.Random, n: int, size: int, p: float) -> SimplicialComplex:
    """Each ``size``-subset of ``n`` vertices is a facet with probability ``p`` (at least one is)."""
    from itertools import combinations

    facets = [c for c in combinations(range(n), size) if rng.random() < p]
    if not facets:
        facets = [tuple(range(size))]
    return SimplicialComplex.from_maximal(n, facets)


def random_subcomplex(rng: random.Random, K: SimplicialComplex, keep: float = 0.5) -> SimplicialComplex:
    """Closure of a random subset of the simplices of ``K``."""
    chosen = [s for s in sorted(K.simplices) if rng.random() < keep]
    return SimplicialComplex._trusted(K.vertex_count, closure(chosen))


def random_cover(rng: random.Random, cfg: CoverConfig = CoverConfig()) -> Cover:
    """Each maximal simplex goes to a random nonempty set of members."""
    K = random_complex(rng, cfg.complex)
    facets = K.maximal_simplices()
    m = rng.randint(1, cfg.max_members)
    groups: List[List[tuple]] = [[] for _ in range(m)]
    for i, f in enumerate(facets):
        owners = {i % m} if i < m else set()
        owners |= {j for j in range(m) if rng.random() < 0.3}
        if not owners:
            owners = {rng.randrange(m)}
        for j in owners:
            groups[j].append(f)
    # members without a facet get a random one, so every member is nonempty
    for g in groups:
        if not g:
            g.append(rng.choice(facets))
    # lower faces of other facets are sometimes added to make overlaps richer
    members = []
    for g in groups:
        extra = [s for s in sorted(K.simplices) if len(s) <= 2 and rng.random() < 0.15]
        members.append(SimplicialComplex._trusted(K.vertex_count, closure(g + extra)))
    return Cover(K, tuple(members))


def random_simplex_cover(rng: random.Random, cfg: ComplexConfig = ComplexConfig()) -> Cover:
    """Cover by the closed maximal simplices; every nonempty intersection is a simplex."""
    K = random_complex(rng, cfg)
    members = [SimplicialComplex.from_maximal(K.vertex_count, [f]) for f in K.maximal_simplices()]
    return Cover(K, tuple(members))


def _cone(L: SimplicialComplex, apex: int, n: int) -> SimplicialComplex:
    simps = set(L.simplices) | {(apex,)}
    simps |= {tuple(sorted(s + (apex,))) for s in L.simplices}
    return SimplicialComplex._trusted(n, frozenset(simps))


def random_cone_cover(rng: random.Random, cfg: ComplexConfig = ComplexConfig(), attempts: int = 200) -> Cover:
    """Cover by cones over unions of one or two facets, resampled until every intersection is acyclic.

    Each facet of a random complex is the base of some member.  Apexes are
    mostly fresh, occasionally shared, and every member is contractible.
    """
    for _ in range(attempts):
        if rng.random() < 0.5:
            K = random_complex(rng, cfg)
        else:
            K = random_uniform_complex(rng, rng.randint(3, min(6, cfg.max_vertices)), rng.choice((2, 3)), rng.choice((0.4, 0.6, 0.8)))
        facets = K.maximal_simplices()
        n = K.vertex_count
        bases = []
        for f in facets:
            base = [f]
            if len(facets) > 1 and rng.random() < 0.1:
                base.append(rng.choice([g for g in facets if g != f]))
            bases.append(base)
        apexes = []
        for _ in bases:
            if apexes and rng.random() < 0.1:
                apexes.append(rng.choice(apexes))
            else:
                apexes.append(n + len(set(apexes)))
        total = n + len(set(apexes))
        members = [_cone(SimplicialComplex.from_maximal(total, b), a, total) for b, a in zip(bases, apexes)]
        cover = Cover.from_members(members)
        if all_intersections_acyclic(cover):
            return cover
    raise RuntimeError("no acyclic cone cover found; loosen the configuration")


def random_arrangement(rng: random.Random, max_sets: int = 5, cfg: ComplexConfig = ComplexConfig()) -> Arrangement:
    K = random_complex(rng, cfg)
    sets = [random_subcomplex(rng, K, keep=rng.choice((0.3, 0.5, 0.8))) for _ in range(rng.randint(1, max_sets))]
    return Arrangement(K, tuple(sets))


def random_form(rng: random.Random, size: int, lo: int = -4, hi: int = 4, rank_drop: bool = False) -> QuadraticForm:
    """Symmetric integer matrix; with ``rank_drop`` it is ``B^T D B`` for a thin ``B``."""
    if rank_drop and size > 1:
        r = rng.randint(1, size - 1)
        B = [[rng.randint(-2, 2) for _ in range(size)] for _ in range(r)]
        d = [rng.choice((-2, -1, 1, 2)) for _ in range(r)]
        return QuadraticForm(tuple(tuple(sum(B[t][i] * d[t] * B[t][j] for t in range(r)) for j in range(size)) for i in range(size)))
    M = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            M[i][j] = M[j][i] = rng.randint(lo, hi)
    return QuadraticForm(tuple(tuple(r) for r in M))


def random_ball_scene(rng: random.Random, cfg: BallSceneConfig = BallSceneConfig()) -> Scene:
    """Balls with rational centers and radii in the unit square."""
    den = cfg.denominator
    lo_r, hi_r = int(cfg.min_radius * den), int(cfg.max_radius * den)
    prims = []
    for _ in range(cfg.balls):
        c = [Fraction(rng.randint(0, den), den) for _ in range(2)]
        r = Fraction(rng.randint(lo_r, hi_r), den)
        prims.append(parse_primitive({"type": "ball", "center": c, "radius": r}, 2))
    return Scene(2, (Fraction(0), Fraction(0)), (Fraction(1), Fraction(1)), tuple(prims))


def ball_scene_json(rng: random.Random, cfg: BallSceneConfig = BallSceneConfig()) -> dict:
    den = cfg.denominator
    lo_r, hi_r = int(cfg.min_radius * den), int(cfg.max_radius * den)
    prims = []
    for _ in range(cfg.balls):
        prims.append({
            "type": "ball",
            "center": [f"{rng.randint(0, den)}/{den}" for _ in range(2)],
            "radius": f"{rng.randint(lo_r, hi_r)}/{den}",
        })
    return {"dim": 2, "bbox": [[0, 0], [1, 1]], "primitives": prims}


def seeds(base: int, count: int) -> Tuple[int, ...]:
    return tuple(base * 100003 + i for i in range(count))
