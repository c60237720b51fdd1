"""Exact sparse linear algebra over the rationals.

Entries are Python ``int`` or :class:`fractions.Fraction`; integral fractions
are normalised to ``int`` so the common case of +-1 incidence matrices never
touches ``Fraction`` arithmetic.  Ranks are computed by fraction-free integer
elimination with a Markowitz-style pivot order (sparsest column first,
shortest row inside it), which keeps fill-in low on coboundary matrices.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

Rational = Union[int, Fraction]
Vector = List[Fraction]


def _norm(value) -> Rational:
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return _norm(Fraction(value))
    if isinstance(value, float):
        raise TypeError("floating-point entries are not accepted; pass Fraction or int")
    return _norm(Fraction(value))


class RationalSparseMatrix:
    """Immutable ``rows x cols`` sparse matrix with rational entries.

    Storage is row-major (``row -> {col: value}``); no zero is ever stored.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Mapping[Tuple[int, int], object] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix shape must be nonnegative")
        data: Dict[int, Dict[int, Rational]] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            v = _norm(v)
            if v:
                data.setdefault(r, {})[c] = v
        self.rows = rows
        self.cols = cols
        self._data = data

    # -- constructors -------------------------------------------------------

    @classmethod
    def _trusted(cls, rows: int, cols: int, data: Dict[int, Dict[int, Rational]]) -> "RationalSparseMatrix":
        m = cls.__new__(cls)
        m.rows, m.cols, m._data = rows, cols, data
        return m

    @classmethod
    def from_rows(cls, rows: int, cols: int, data: Mapping[int, Mapping[int, object]]) -> "RationalSparseMatrix":
        out: Dict[int, Dict[int, Rational]] = {}
        for r, row in data.items():
            if not 0 <= r < rows:
                raise IndexError(f"row {r} outside {rows}")
            clean = {}
            for c, v in row.items():
                if not 0 <= c < cols:
                    raise IndexError(f"column {c} outside {cols}")
                v = _norm(v)
                if v:
                    clean[c] = v
            if clean:
                out[r] = clean
        return cls._trusted(rows, cols, out)

    @classmethod
    def from_columns(cls, rows: int, cols: int, columns: Mapping[int, Mapping[int, object]]) -> "RationalSparseMatrix":
        """Build from ``col -> {row: value}``, the layout used for coboundaries."""
        out: Dict[int, Dict[int, Rational]] = {}
        for c, col in columns.items():
            if not 0 <= c < cols:
                raise IndexError(f"column {c} outside {cols}")
            for r, v in col.items():
                if not 0 <= r < rows:
                    raise IndexError(f"row {r} outside {rows}")
                v = _norm(v)
                if v:
                    row = out.setdefault(r, {})
                    v = row.get(c, 0) + v
                    if v:
                        row[c] = v
                    else:
                        del row[c]
        return cls._trusted(rows, cols, {r: row for r, row in out.items() if row})

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[object]], cols: int | None = None) -> "RationalSparseMatrix":
        nrows = len(dense)
        ncols = cols if cols is not None else (len(dense[0]) if nrows else 0)
        entries = {}
        for r, row in enumerate(dense):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            for c, v in enumerate(row):
                entries[(r, c)] = v
        return cls(nrows, ncols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalSparseMatrix":
        return cls._trusted(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "RationalSparseMatrix":
        return cls._trusted(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence[object]], length: int) -> "RationalSparseMatrix":
        """Matrix whose rows are the given vectors."""
        data = {}
        for r, vec in enumerate(vectors):
            row = {c: _norm(v) for c, v in enumerate(vec) if v}
            if row:
                data[r] = row
        return cls._trusted(len(vectors), length, data)

    # -- access -------------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> Dict[Tuple[int, int], Rational]:
        return {(r, c): v for r, row in self._data.items() for c, v in row.items()}

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._data.values())

    def __getitem__(self, rc: Tuple[int, int]) -> Rational:
        r, c = rc
        return self._data.get(r, {}).get(c, 0)

    def row(self, r: int) -> Dict[int, Rational]:
        return dict(self._data.get(r, {}))

    def iter_rows(self) -> Iterable[Tuple[int, Dict[int, Rational]]]:
        return iter(self._data.items())

    def to_dense(self) -> List[List[Rational]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, row in self._data.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def is_zero(self) -> bool:
        return not self._data

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalSparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self) -> str:
        return f"RationalSparseMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    # -- algebra ------------------------------------------------------------

    def transpose(self) -> "RationalSparseMatrix":
        out: Dict[int, Dict[int, Rational]] = {}
        for r, row in self._data.items():
            for c, v in row.items():
                out.setdefault(c, {})[r] = v
        return self._trusted(self.cols, self.rows, out)

    @property
    def T(self) -> "RationalSparseMatrix":
        return self.transpose()

    def __neg__(self) -> "RationalSparseMatrix":
        return self._trusted(self.rows, self.cols, {r: {c: -v for c, v in row.items()} for r, row in self._data.items()})

    def scale(self, factor) -> "RationalSparseMatrix":
        factor = _norm(factor)
        if not factor:
            return self.zeros(self.rows, self.cols)
        return self._trusted(
            self.rows, self.cols,
            {r: {c: _norm(v * factor) for c, v in row.items()} for r, row in self._data.items()},
        )

    def __matmul__(self, other: "RationalSparseMatrix") -> "RationalSparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out: Dict[int, Dict[int, Rational]] = {}
        odata = other._data
        for r, row in self._data.items():
            acc: Dict[int, Rational] = {}
            for k, v in row.items():
                orow = odata.get(k)
                if not orow:
                    continue
                for c, w in orow.items():
                    acc[c] = acc.get(c, 0) + v * w
            acc = {c: _norm(v) for c, v in acc.items() if v}
            if acc:
                out[r] = acc
        return self._trusted(self.rows, other.cols, out)

    def apply(self, vector: Sequence[object]) -> Vector:
        """Matrix-vector product with a dense vector."""
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        out = [Fraction(0)] * self.rows
        for r, row in self._data.items():
            s = Fraction(0)
            for c, v in row.items():
                if vector[c]:
                    s += v * vector[c]
            out[r] = s
        return out

    def submatrix(self, row_index: Sequence[int], col_index: Sequence[int]) -> "RationalSparseMatrix":
        """Restrict to the listed rows and columns, renumbered in list order."""
        rpos = {r: i for i, r in enumerate(row_index)}
        cpos = {c: j for j, c in enumerate(col_index)}
        out: Dict[int, Dict[int, Rational]] = {}
        for r, row in self._data.items():
            i = rpos.get(r)
            if i is None:
                continue
            new = {cpos[c]: v for c, v in row.items() if c in cpos}
            if new:
                out[i] = new
        return self._trusted(len(row_index), len(col_index), out)


def block_matrix(row_sizes: Sequence[int], col_sizes: Sequence[int],
                 blocks: Mapping[Tuple[int, int], RationalSparseMatrix]) -> RationalSparseMatrix:
    """Assemble a block matrix; missing blocks are zero."""
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    out: Dict[int, Dict[int, Rational]] = {}
    for (i, j), blk in blocks.items():
        if blk.shape != (row_sizes[i], col_sizes[j]):
            raise ValueError(f"block ({i}, {j}) has shape {blk.shape}, expected {(row_sizes[i], col_sizes[j])}")
        for r, row in blk.iter_rows():
            tgt = out.setdefault(roff[i] + r, {})
            for c, v in row.items():
                tgt[coff[j] + c] = v
    return RationalSparseMatrix._trusted(roff[-1], coff[-1], out)


# -- rank ---------------------------------------------------------------------

def _integer_rows(M: RationalSparseMatrix) -> Dict[int, Dict[int, int]]:
    rows: Dict[int, Dict[int, int]] = {}
    for r, row in M.iter_rows():
        dens = [v.denominator for v in row.values() if isinstance(v, Fraction)]
        if dens:
            scale = lcm(*dens)
            rows[r] = {c: int(v * scale) for c, v in row.items()}
        else:
            rows[r] = dict(row)
    return rows


def _reduce_content(row: Dict[int, int]) -> None:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for k in row:
            row[k] //= g


def _markowitz_rank(rows: Dict[int, Dict[int, int]]) -> int:
    colrows: Dict[int, set] = {}
    for r, row in rows.items():
        for c in row:
            colrows.setdefault(c, set()).add(r)
    heap = [(len(s), c) for c, s in colrows.items()]
    heapq.heapify(heap)
    rank = 0
    while heap:
        cnt, c = heapq.heappop(heap)
        members = colrows.get(c)
        if not members:
            continue
        if len(members) != cnt:
            heapq.heappush(heap, (len(members), c))
            continue
        piv = min(members, key=lambda r: (len(rows[r]), abs(rows[r][c]) != 1, r))
        prow = rows.pop(piv)
        for k in prow:
            colrows[k].discard(piv)
        others = colrows.pop(c)
        pv = prow[c]
        for r in others:
            row = rows[r]
            rv = row.pop(c)
            g = gcd(pv, rv)
            a, b = pv // g, rv // g
            if a == -1:
                for k in row:
                    row[k] = -row[k]
            elif a != 1:
                for k in row:
                    row[k] *= a
            for k, v in prow.items():
                if k == c:
                    continue
                nv = row.get(k, 0) - b * v
                if nv:
                    if k not in row:
                        colrows[k].add(r)
                    row[k] = nv
                elif k in row:
                    del row[k]
                    colrows[k].discard(r)
            if not row:
                del rows[r]
            elif a not in (1, -1):
                _reduce_content(row)
        for k in prow:
            if k != c:
                s = colrows[k]
                if s:
                    heapq.heappush(heap, (len(s), k))
        rank += 1
    return rank


def rank(M: RationalSparseMatrix) -> int:
    """Exact rank of ``M`` over Q."""
    if M.is_zero():
        return 0
    return _markowitz_rank(_integer_rows(M))


def kernel_dim(M: RationalSparseMatrix) -> int:
    return M.cols - rank(M)


# -- bases --------------------------------------------------------------------

def _rref(M: RationalSparseMatrix) -> Tuple[List[Dict[int, Fraction]], List[int]]:
    """Reduced row echelon form (natural column order), as sparse rows + pivot columns."""
    rows = [{c: Fraction(v) for c, v in row.items()} for _, row in sorted(M.iter_rows())]
    pivots: List[Tuple[int, int]] = []
    active = list(range(len(rows)))
    for c in range(M.cols):
        cand = [i for i in active if c in rows[i]]
        if not cand:
            continue
        piv = min(cand, key=lambda i: len(rows[i]))
        active.remove(piv)
        prow = rows[piv]
        inv = 1 / prow[c]
        for k in prow:
            prow[k] *= inv
        for i in range(len(rows)):
            if i == piv or c not in rows[i]:
                continue
            row = rows[i]
            f = row[c]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        pivots.append((piv, c))
    reduced = [rows[i] for i, _ in pivots]
    return reduced, [c for _, c in pivots]


def column_space_basis(M: RationalSparseMatrix) -> List[Vector]:
    """Basis of the column space: the original columns at the RREF pivot positions."""
    _, pivcols = _rref(M)
    Mt = M.transpose()
    out = []
    for c in pivcols:
        vec = [Fraction(0)] * M.rows
        for r, v in Mt.row(c).items():
            vec[r] = Fraction(v)
        out.append(vec)
    return out


def kernel_basis(M: RationalSparseMatrix) -> List[Vector]:
    """Basis of ``{x : Mx = 0}``, one vector per free column."""
    reduced, pivcols = _rref(M)
    pivset = set(pivcols)
    out = []
    for f in range(M.cols):
        if f in pivset:
            continue
        vec = [Fraction(0)] * M.cols
        vec[f] = Fraction(1)
        for row, pc in zip(reduced, pivcols):
            v = row.get(f)
            if v:
                vec[pc] = -v
        out.append(vec)
    return out


def span_dim(vectors: Sequence[Sequence[object]], length: int) -> int:
    """Dimension of the span of a list of vectors of the given length."""
    if not vectors:
        return 0
    return rank(RationalSparseMatrix.from_vectors(vectors, length))
