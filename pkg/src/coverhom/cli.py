"""``coverhom`` command line.

Exit codes: 0 success, 1 a demo assertion failed, 2 invalid input,
64 unknown subcommand, 65 malformed JSON.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Callable, Dict, List, Optional, Sequence

from . import io
from .complexes import (
    SimplicialComplex,
    SubcomplexPair,
    betti,
    cellular_cochain_complex,
    cochain_complex,
    relative_cochain_complex,
    sphere_cell_complex,
)
from .covers import betti01_from_cover, nerve_complex, nerve_failure_demo
from .errors import InvalidInput, Unsupported
from .hocolim import arrangement_betti
from .ingest import Scene, ingest_geometric
from .mv import mv_double_complex, spectral_page, total_complex
from .qlinalg import rank
from .quad import (
    euler_char_intersection,
    euler_char_union,
    homotopy_sphere_dim,
    index,
    inertia,
    mesh_betti_on_sphere,
    omega_stratify,
)

EXIT_OK, EXIT_DEMO_FAILED, EXIT_INVALID, EXIT_USAGE, EXIT_DATAERR = 0, 1, 2, 64, 65

COMMANDS = ("betti", "nerve", "mv", "arrangement", "ingest", "quad-index", "quad-euler", "quad-mesh", "demo")


@dataclass
class Report:
    command: List[str]
    inputs: Dict[str, Any] = field(default_factory=dict)
    results: Dict[str, Any] = field(default_factory=dict)
    assertions: List[Dict[str, Any]] = field(default_factory=list)
    timing: Optional[float] = None

    def check(self, name: str, expected: Any, actual: Any) -> bool:
        ok = expected == actual
        self.assertions.append({"name": name, "expected": expected, "actual": actual, "ok": ok})
        return ok

    @property
    def ok(self) -> bool:
        return all(a["ok"] for a in self.assertions)

    def as_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"command": self.command, "input": self.inputs, "results": self.results}
        if self.assertions:
            out["assertions"] = self.assertions
        if self.timing is not None:
            out["timing_seconds"] = round(self.timing, 3)
        return out

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return io.dumps(_plain(self.as_dict()))
        lines: List[str] = []
        _text(_plain(self.as_dict()), "", lines)
        return "\n".join(lines) + "\n"


def _plain(o: Any) -> Any:
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, dict):
        return {str(k): _plain(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_plain(v) for v in o]
    return o


def _scalar(o: Any) -> bool:
    return not isinstance(o, (dict, list)) or (isinstance(o, list) and all(not isinstance(v, (dict, list)) for v in o))


def _fmt(o: Any) -> str:
    if isinstance(o, list):
        return "(" + ", ".join(_fmt(v) for v in o) + ")"
    if isinstance(o, bool):
        return "yes" if o else "no"
    return str(o)


def _text(o: Any, indent: str, lines: List[str]) -> None:
    if isinstance(o, dict):
        for k, v in o.items():
            if _scalar(v):
                lines.append(f"{indent}{k}: {_fmt(v)}")
            else:
                lines.append(f"{indent}{k}:")
                _text(v, indent + "  ", lines)
    else:
        for v in o:
            if _scalar(v):
                lines.append(f"{indent}- {_fmt(v)}")
            else:
                lines.append(f"{indent}-")
                _text(v, indent + "  ", lines)


# -- subcommands ----------------------------------------------------------------


def _load_complexish(data: Any):
    if isinstance(data, dict) and "cells" in data:
        return "cell complex", io.cell_complex_from_json(data)
    if isinstance(data, dict) and "complex" in data:
        return "pair", io.pair_from_json(data)
    return "simplicial complex", io.complex_from_json(data)


def cmd_betti(args, rep: Report) -> None:
    kind, obj = _load_complexish(io.load(args.file))
    rep.inputs["kind"] = kind
    if isinstance(obj, SimplicialComplex):
        C = cochain_complex(obj)
    elif isinstance(obj, SubcomplexPair):
        C = relative_cochain_complex(obj)
    else:
        C = cellular_cochain_complex(obj)
    rep.inputs["dims"] = list(C.dims)
    b = betti(C, threads=args.threads)
    rep.results["betti"] = b
    rep.results["euler"] = sum((-1) ** i * v for i, v in enumerate(b))


def cmd_nerve(args, rep: Report) -> None:
    cover = io.cover_from_json(io.load(args.file))
    rep.inputs.update(members=len(cover.members), truncate=args.truncate)
    N = nerve_complex(cover, args.truncate)
    rep.results["dims"] = list(N.dims)
    rep.results["ranks"] = [rank(D) for D in N.complex.differentials]
    b = N.betti()
    rep.results["nerve_betti"] = b
    if args.truncate >= 2:
        b0, b1 = betti01_from_cover(cover)
        rep.results["b0"] = b0
        rep.results["b1"] = b1


def cmd_mv(args, rep: Report) -> None:
    cover = io.cover_from_json(io.load(args.file))
    rep.inputs.update(members=len(cover.members), truncate=args.truncate, page=args.page, filtration=args.filtration)
    D = mv_double_complex(cover.ambient, cover.members, args.truncate)
    tot = total_complex(D)
    b = betti(tot, threads=args.threads)
    rep.results["total_dims"] = list(tot.dims)
    rep.results["total_betti"] = b
    rep.results["valid_degrees"] = list(range(args.truncate))
    pages = {}
    for r in range(args.page + 1):
        P = spectral_page(D, r, args.filtration)
        pages[f"E{r}"] = {
            "nonzero": {f"{p},{q}": v for (p, q), v in sorted(P.dims.items())},
            "rows_top_q_first": P.table(),
        }
    rep.results["pages"] = pages


def cmd_arrangement(args, rep: Report) -> None:
    arr = io.arrangement_from_json(io.load(args.file))
    rep.inputs.update(sets=arr.n, ell=args.ell, ambient_cells=len(arr.ambient.simplices))
    res = arrangement_betti(arr, args.ell, threads=args.threads)
    rep.results["betti"] = list(res.betti)
    rep.results["cell_count"] = res.cell_count
    rep.results["profile"] = {str(j): v for j, v in res.profile.items()}
    rep.results["bound"] = res.bound
    rep.check("cell count within bound", True, res.cell_count <= res.bound)


def cmd_ingest(args, rep: Report) -> None:
    scene = Scene.from_json(io.load(args.scene))
    rep.inputs.update(dim=scene.dim, primitives=len(scene.primitives), resolution=args.res)
    arr, grid = ingest_geometric(scene, args.res)
    rep.results["grid_shape"] = list(grid.shape)
    rep.results["vertices"] = grid.vertex_count
    rep.results["ambient_cells"] = len(arr.ambient.simplices)
    rep.results["member_cells"] = [len(S.simplices) for S in arr.sets]
    out = io.dumps(io.arrangement_to_json(arr, grid.coordinates() if args.coordinates else None))
    if args.output_file:
        with open(args.output_file, "w") as fh:
            fh.write(out)
        rep.results["written"] = args.output_file
    if args.ell is not None:
        res = arrangement_betti(arr, args.ell, threads=args.threads)
        rep.results["betti"] = list(res.betti)
        rep.results["cell_count"] = res.cell_count


def cmd_quad_index(args, rep: Report) -> None:
    k, forms, _ = io.forms_from_json(io.load(args.file))
    rep.inputs.update(k=k, forms=len(forms))
    rows = []
    for Q in forms:
        p, n, z = inertia(Q)
        rows.append({"index": index(Q), "inertia": [p, n, z], "sphere_of_nonnegative_set": homotopy_sphere_dim(Q)})
    rep.results["forms"] = rows


def _oriented(forms, signs):
    # {Q >= 0} is {-Q <= 0}
    return [Q if s == "<=0" else -Q for Q, s in zip(forms, signs)]


def _stratum_json(st) -> Dict[str, Any]:
    def pt(x):
        if x.is_exact:
            return str(x.value)
        return {"root_of": [str(c) for c in x.poly.coefficients], "in": [str(x.lo), str(x.hi)]}

    return {"from": pt(st.lo), "to": pt(st.hi), "kind": st.kind, "index": st.index}


def cmd_quad_euler(args, rep: Report) -> None:
    k, forms, signs = io.forms_from_json(io.load(args.file))
    rep.inputs.update(k=k, forms=len(forms), signs=signs)
    forms = _oriented(forms, signs)
    strat = omega_stratify(forms)
    rep.results["strata"] = [_stratum_json(st) for st in strat.strata]
    rep.results["chi_union"] = euler_char_union(forms, k)
    rep.results["chi_intersection"] = euler_char_intersection(forms, k)


def cmd_quad_mesh(args, rep: Report) -> None:
    k, forms, signs = io.forms_from_json(io.load(args.file))
    rep.inputs.update(k=k, forms=len(forms), signs=signs, depth=args.depth)
    if args.each:
        rep.results["betti"] = [list(mesh_betti_on_sphere([(Q, s)], args.depth, args.threads)) for Q, s in zip(forms, signs)]
    else:
        rep.results["betti"] = list(mesh_betti_on_sphere(list(zip(forms, signs)), args.depth, args.threads))


# -- demos ----------------------------------------------------------------------


def _fixture(name: str) -> Any:
    return io.loads(resources.files("coverhom").joinpath("demos", name).read_text())


def demo_three_edges(rep: Report, threads: int) -> None:
    cover = io.cover_from_json(_fixture("three-edges.json"))
    N = nerve_complex(cover, 2)
    r0, r1 = (rank(D) for D in N.complex.differentials)
    rep.check("dims", [3, 6, 2], list(N.dims))
    rep.check("rank M_0", 2, r0)
    rep.check("rank M_1", 2, r1)
    rep.check("(b0, b1)", [1, 2], list(betti01_from_cover(cover)))


def demo_hemispheres(rep: Report, threads: int) -> None:
    cover = io.cover_from_json(_fixture("hemispheres.json"))
    r = nerve_failure_demo(cover)
    rep.check("truncated nerve H^2", 0, r.nerve_h2)
    rep.check("direct b_2", 1, r.union_b2)


def demo_sphere_cells(rep: Report, threads: int) -> None:
    C = io.cell_complex_from_json(_fixture("sphere-cells.json"))
    rep.check("Betti of the fixture (k = 2)", [1, 0, 1], betti(cellular_cochain_complex(C), threads=threads))
    for k in range(5):
        expected = [2] if k == 0 else [1] + [0] * (k - 1) + [1]
        rep.check(f"Betti of the cell sphere S^{k}", expected, betti(cellular_cochain_complex(sphere_cell_complex(k)), threads=threads))


def demo_two_quadrics(rep: Report, threads: int) -> None:
    k, forms, signs = io.forms_from_json(_fixture("two-quadrics.json"))
    rep.check("chi(T)", 2, euler_char_union(_oriented(forms, signs), k))


def demo_quad_indices(rep: Report, threads: int) -> None:
    k, forms, signs = io.forms_from_json(_fixture("quad-indices.json"))
    rep.check("indices", [0, 1, 2], [index(Q) for Q in forms])
    rep.check("mesh Betti at depth 4", [[1, 0, 1], [1, 1, 0], [2, 0, 0]],
              [list(mesh_betti_on_sphere([(Q, s)], 4, threads)) for Q, s in zip(forms, signs)])


DEMOS: Dict[str, Callable[[Report, int], None]] = {
    "three-edges": demo_three_edges,
    "hemispheres": demo_hemispheres,
    "sphere-cells": demo_sphere_cells,
    "two-quadrics": demo_two_quadrics,
    "quad-indices": demo_quad_indices,
}


def cmd_demo(args, rep: Report) -> None:
    if args.all == (args.name is not None):
        raise InvalidInput("give exactly one demo name or --all")
    names = list(DEMOS) if args.all else [args.name]
    for n in names:
        if n not in DEMOS:
            raise InvalidInput(f"unknown demo {n!r}; choose from {', '.join(DEMOS)}")
    for n in names:
        sub = Report([n])
        DEMOS[n](sub, args.threads)
        rep.assertions += [dict(a, name=f"{n}: {a['name']}") for a in sub.assertions]
    rep.results["demos"] = names
    rep.results["passed"] = rep.ok


# -- entry point ----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "text"), default="text")
    common.add_argument("--threads", type=int, default=1, help="worker threads for rank computations")
    common.add_argument("--timing", action="store_true", help="include wall-clock time in the report")

    p = _Parser(prog="coverhom", description="Exact Betti numbers and Euler characteristics of covers, arrangements and quadric sets.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("betti", parents=[common], help="Betti numbers of a complex, pair or cell complex")
    s.add_argument("file")
    s.set_defaults(func=cmd_betti)

    s = sub.add_parser("nerve", parents=[common], help="truncated nerve complex of a cover")
    s.add_argument("file")
    s.add_argument("--truncate", type=int, default=2)
    s.set_defaults(func=cmd_nerve)

    s = sub.add_parser("mv", parents=[common], help="truncated Mayer-Vietoris double complex of a cover")
    s.add_argument("file")
    s.add_argument("--truncate", type=int, default=2)
    s.add_argument("--page", type=int, default=2)
    s.add_argument("--filtration", choices=("first", "second"), default="first")
    s.set_defaults(func=cmd_mv)

    s = sub.add_parser("arrangement", parents=[common], help="low Betti numbers of an arrangement union")
    s.add_argument("file")
    s.add_argument("--ell", type=int, default=1)
    s.set_defaults(func=cmd_arrangement)

    s = sub.add_parser("ingest", parents=[common], help="grid-triangulate a scene of primitives")
    s.add_argument("--scene", required=True)
    s.add_argument("--res", type=int, default=8, help="grid cells per unit length")
    s.add_argument("-o", dest="output_file", help="write the arrangement JSON here")
    s.add_argument("--coordinates", action="store_true", help="include vertex coordinates in the arrangement JSON")
    s.add_argument("--ell", type=int, help="also compute Betti numbers up to this degree")
    s.set_defaults(func=cmd_ingest)

    s = sub.add_parser("quad-index", parents=[common], help="index of each quadratic form")
    s.add_argument("file")
    s.set_defaults(func=cmd_quad_index)

    s = sub.add_parser("quad-euler", parents=[common], help="Euler characteristic of a union of quadric sign sets")
    s.add_argument("file")
    s.set_defaults(func=cmd_quad_euler)

    s = sub.add_parser("quad-mesh", parents=[common], help="Betti numbers of quadric sign sets on an icosphere")
    s.add_argument("file")
    s.add_argument("--depth", type=int, default=4)
    s.add_argument("--each", action="store_true", help="one Betti vector per form instead of their intersection")
    s.set_defaults(func=cmd_quad_mesh)

    s = sub.add_parser("demo", parents=[common], help="run a shipped example and check its values")
    s.add_argument("name", nargs="?")
    s.add_argument("--all", action="store_true")
    s.set_defaults(func=cmd_demo)
    return p


def run(argv: Sequence[str], out=None, err=None) -> tuple:
    """Run one command; returns ``(exit_code, report_or_None)``."""
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(argv)
    cmd = argv[0] if argv else None
    if cmd not in COMMANDS:
        print(f"coverhom: unknown subcommand {cmd!r}; expected one of {', '.join(COMMANDS)}", file=err)
        return EXIT_USAGE, None
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    if args.threads < 1:
        print("coverhom: --threads must be at least 1", file=err)
        return EXIT_INVALID, None
    rep = Report(argv)
    start = time.perf_counter()
    try:
        args.func(args, rep)
    except io.MalformedJSON as exc:
        print(f"coverhom: {exc}", file=err)
        return EXIT_DATAERR, None
    except (InvalidInput, Unsupported) as exc:
        print(f"coverhom: invalid input: {exc}", file=err)
        return EXIT_INVALID, None
    if args.timing:
        rep.timing = time.perf_counter() - start
    out.write(rep.render(args.output))
    return (EXIT_OK if rep.ok else EXIT_DEMO_FAILED), rep


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, _ = run(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
