"""Randomized cross-checks against a dense Gaussian-elimination oracle.

Covers three pipelines: truncated MV total complexes, acyclic cone covers and
truncated homotopy colimits.  Prints mismatch counts; exits 1 if any.
"""

import argparse
import random
import sys
from fractions import Fraction

from coverhom.complexes import betti
from coverhom.covers import nerve_complex
from coverhom.generators import random_arrangement, random_cone_cover, random_cover, seeds
from coverhom.hocolim import arrangement_betti
from coverhom.mv import mv_double_complex, total_complex


def dense_rank(rows):
    A = [[Fraction(v) for v in r] for r in rows]
    r = 0
    for c in range(len(A[0]) if A else 0):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, len(A)):
            f = A[i][c] / A[r][c]
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
    return r


def union_betti(simplices):
    by_dim = {}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(s)
    top = max(by_dim, default=-1)
    index = {d: {s: i for i, s in enumerate(sorted(by_dim.get(d, [])))} for d in range(top + 2)}
    ranks = []
    for d in range(top + 1):
        rows = []
        for s in sorted(by_dim.get(d, [])):
            row = [0] * len(index[d + 1])
            for t, j in index[d + 1].items():
                if set(s) <= set(t):
                    k = next(p for p, v in enumerate(t) if v not in s)
                    row[j] = -1 if k % 2 else 1
            rows.append(row)
        ranks.append(dense_rank(rows) if rows and rows[0] else 0)
    return [len(index[d]) - ranks[d] - (ranks[d - 1] if d else 0) for d in range(top + 1)]


def pad(v, n):
    return (list(v) + [0] * n)[:n]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--base", type=int, default=1)
    args = ap.parse_args()
    bad = {"mv": 0, "nerve": 0, "hocolim": 0}
    for s in seeds(args.base, args.count):
        cover = random_cover(random.Random(s))
        ub = union_betti(cover.ambient.simplices)
        for t in (1, 2, 3):
            tb = betti(total_complex(mv_double_complex(cover.ambient, cover.members, t)))
            bad["mv"] += pad(tb, t) != pad(ub, t)

        cone = random_cone_cover(random.Random(s))
        N = nerve_complex(cone, len(cone.members))
        cb = union_betti(cone.ambient.simplices)
        n = max(len(cb), len(N.dims))
        bad["nerve"] += pad(N.betti(), n) != pad(cb, n)

        arr = random_arrangement(random.Random(s))
        ab = union_betti(arr.union().simplices)
        for ell in (0, 1, 2):
            bad["hocolim"] += list(arrangement_betti(arr, ell).betti) != pad(ab, ell + 1)
    for k, v in bad.items():
        print(f"{k}: {v} mismatches over {args.count} instances")
    sys.exit(1 if any(bad.values()) else 0)


if __name__ == "__main__":
    main()
