"""Time ingest plus arrangement_betti on a random scene of balls."""

import argparse
import random
import time

from coverhom.generators import BallSceneConfig, random_ball_scene
from coverhom.hocolim import arrangement_betti
from coverhom.ingest import ingest_geometric


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--balls", type=int, default=50)
    ap.add_argument("--res", type=int, default=32)
    ap.add_argument("--ell", type=int, default=1)
    ap.add_argument("--seed", type=int, default=10)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    scene = random_ball_scene(random.Random(args.seed), BallSceneConfig(balls=args.balls))
    t0 = time.perf_counter()
    arr, grid = ingest_geometric(scene, args.res)
    t1 = time.perf_counter()
    r = arrangement_betti(arr, args.ell, threads=args.threads)
    t2 = time.perf_counter()
    print(f"grid {grid.shape}, {len(arr.ambient.simplices)} ambient simplices, {arr.n} sets")
    print(f"betti {r.betti}")
    print(f"hocolim cells {r.cell_count} (bound {r.bound}), by #I: {r.profile}")
    print(f"ingest {t1 - t0:.2f}s, betti {t2 - t1:.2f}s")


if __name__ == "__main__":
    main()
