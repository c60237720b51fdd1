"""Betti numbers of an ingested scene as the grid resolution grows."""

import argparse
import json

from coverhom import io
from coverhom.ingest import Scene, betti_by_resolution, stable_arrangement_betti


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("scene")
    ap.add_argument("--ell", type=int, default=1)
    ap.add_argument("--resolutions", default="4,8,16,32")
    args = ap.parse_args()
    scene = Scene.from_json(io.load(args.scene))
    table = betti_by_resolution(scene, args.ell, [int(r) for r in args.resolutions.split(",")])
    for r, b in table.items():
        print(f"res {r:4d}: {list(b)}")
    b, r = stable_arrangement_betti(scene, args.ell)
    print(json.dumps({"stable_betti": list(b), "at_resolution": r}))


if __name__ == "__main__":
    main()
