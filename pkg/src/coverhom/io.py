"""JSON readers and writers for complexes, covers, arrangements, scenes and forms.

Numbers are read exactly: JSON decimals become ``Fraction`` and strings such
as ``"3/4"`` are accepted wherever a rational is expected.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple, Union

from .complexes import RegularCellComplex, SimplicialComplex, SubcomplexPair
from .covers import Cover
from .errors import InvalidInput
from .hocolim import Arrangement
from .quad import QuadraticForm


class MalformedJSON(ValueError):
    pass


def loads(text: str) -> Any:
    try:
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise MalformedJSON(f"malformed JSON: {exc}") from None


def load(path: Union[str, Path]) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, default=_default) + "\n"


def _require(data: Any, keys: Sequence[str], what: str) -> None:
    if not isinstance(data, dict):
        raise InvalidInput(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise InvalidInput(f"{what} is missing key(s): {', '.join(missing)}")


def _simplex_list(raw: Any, what: str) -> List[Tuple[int, ...]]:
    if not isinstance(raw, list):
        raise InvalidInput(f"{what} must be a list of simplices")
    out = []
    for s in raw:
        if not isinstance(s, list) or not s or not all(isinstance(v, int) and not isinstance(v, bool) for v in s):
            raise InvalidInput(f"{what}: {s!r} is not a nonempty list of vertex ids")
        if len(set(s)) != len(s):
            raise InvalidInput(f"{what}: simplex {s} repeats a vertex")
        out.append(tuple(sorted(s)))
    return out


def complex_from_json(data: Any) -> SimplicialComplex:
    _require(data, ["vertices", "simplices"], "simplicial complex")
    n = data["vertices"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InvalidInput("'vertices' must be a nonnegative integer")
    simps = _simplex_list(data["simplices"], "simplicial complex")
    for s in simps:
        if s[-1] >= n or s[0] < 0:
            raise InvalidInput(f"simplex {list(s)} uses a vertex outside 0..{n - 1}")
    return SimplicialComplex.from_maximal(n, simps)


def complex_to_json(K: SimplicialComplex) -> Dict[str, Any]:
    return {"vertices": K.vertex_count, "simplices": [list(s) for s in sorted(K.maximal_simplices())]}


def pair_from_json(data: Any) -> SubcomplexPair:
    _require(data, ["complex", "sub"], "pair")
    K = complex_from_json(data["complex"])
    sub = data["sub"]
    L = complex_from_json(sub) if isinstance(sub, dict) else complex_from_json({"vertices": K.vertex_count, "simplices": sub})
    return SubcomplexPair(K, L.simplices)


def cell_complex_from_json(data: Any) -> RegularCellComplex:
    """``{"cells": [[id, dim], ...], "incidence": [[cell, face, ±1], ...]}``."""
    _require(data, ["cells"], "cell complex")
    cells = []
    for c in data["cells"]:
        if not isinstance(c, list) or len(c) != 2 or not isinstance(c[1], int):
            raise InvalidInput(f"cell entry {c!r} must be [id, dim]")
        cells.append((str(c[0]), c[1]))
    incidence: Dict[str, Dict[str, int]] = {}
    for e in data.get("incidence", []):
        if not isinstance(e, list) or len(e) != 3 or not isinstance(e[2], int):
            raise InvalidInput(f"incidence entry {e!r} must be [cell, face, coefficient]")
        incidence.setdefault(str(e[0]), {})[str(e[1])] = e[2]
    return RegularCellComplex(tuple(cells), incidence)


def cell_complex_to_json(C: RegularCellComplex) -> Dict[str, Any]:
    return {
        "cells": [[str(c), d] for c, d in C.cells],
        "incidence": [[str(c), str(f), v] for c, _ in C.cells for f, v in C.incidence.get(c, {}).items()],
    }


def _members(data: Any, n: int) -> List[SimplicialComplex]:
    raw = data["members"]
    if not isinstance(raw, list) or not raw:
        raise InvalidInput("'members' must be a nonempty list")
    out = []
    for i, m in enumerate(raw):
        simps = _simplex_list(m, f"member {i}")
        for s in simps:
            if s[-1] >= n or s[0] < 0:
                raise InvalidInput(f"member {i}: simplex {list(s)} uses a vertex outside 0..{n - 1}")
        out.append(SimplicialComplex.from_maximal(n, simps))
    return out


def cover_from_json(data: Any) -> Cover:
    _require(data, ["ambient", "members"], "cover")
    K = complex_from_json(data["ambient"])
    return Cover(K, tuple(_members(data, K.vertex_count)))


def arrangement_from_json(data: Any) -> Arrangement:
    _require(data, ["ambient", "members"], "arrangement")
    K = complex_from_json(data["ambient"])
    return Arrangement(K, tuple(_members(data, K.vertex_count)))


def arrangement_to_json(arr: Arrangement, coordinates=None) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "ambient": complex_to_json(arr.ambient),
        "members": [[list(s) for s in sorted(S.maximal_simplices())] for S in arr.sets],
    }
    if coordinates is not None:
        out["coordinates"] = [[str(v) for v in x] for x in coordinates]
    return out


def forms_from_json(data: Any) -> Tuple[int, List[QuadraticForm], List[str]]:
    """``(k, forms, signs)``; signs default to ``"<=0"`` for every form."""
    _require(data, ["forms"], "quadratic-form input")
    forms = []
    for i, f in enumerate(data["forms"]):
        m = f.get("matrix") if isinstance(f, dict) else f
        if not isinstance(m, list):
            raise InvalidInput(f"form {i} needs a 'matrix'")
        forms.append(QuadraticForm(tuple(tuple(row) for row in m)))
    if not forms:
        raise InvalidInput("at least one form is required")
    k = data.get("k", forms[0].k)
    if not isinstance(k, int) or isinstance(k, bool):
        raise InvalidInput("'k' must be an integer")
    for i, f in enumerate(forms):
        if f.size != k + 1:
            raise InvalidInput(f"form {i} is {f.size}x{f.size} but S^{k} needs {k + 1}x{k + 1}")
    signs = data.get("signs", ["<=0"] * len(forms))
    if len(signs) != len(forms) or any(s not in ("<=0", ">=0") for s in signs):
        raise InvalidInput("'signs' must list '<=0' or '>=0' once per form")
    return k, forms, list(signs)


def forms_to_json(k: int, forms: Sequence[QuadraticForm], signs: Sequence[str] | None = None) -> Dict[str, Any]:
    out: Dict[str, Any] = {"k": k, "forms": [{"matrix": [[str(v) if isinstance(v, Fraction) and v.denominator != 1 else int(v) for v in r] for r in f.matrix]} for f in forms]}
    if signs is not None:
        out["signs"] = list(signs)
    return out
