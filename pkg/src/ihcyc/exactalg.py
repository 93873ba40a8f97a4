"""Exact rational linear algebra and homology of finite graded complexes.

Everything here works over ``fractions.Fraction`` (or plain ``int`` when the
input is integral). No floating point is used anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

Vector = Dict[int, Fraction]

DENSE_LIMIT = 64


class ComplexError(ValueError):
    """Raised for malformed graded complexes (d o d != 0, shape mismatch)."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


class RationalMatrix:
    """Sparse matrix with exact rational entries.

    Entries are stored row-wise as ``{row: {col: Fraction}}``; absent entries
    are zero. Instances are treated as immutable.
    """

    __slots__ = ("rows", "cols", "_data", "_cols")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping] = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix shape")
        self.rows = rows
        self.cols = cols
        data: Dict[int, Dict[int, Fraction]] = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
                v = _as_fraction(v)
                if v:
                    data.setdefault(i, {})[j] = v
        self._data = data
        self._cols = None

    @classmethod
    def _from_rows(cls, rows: int, cols: int, data: Dict[int, Dict[int, Fraction]]) -> "RationalMatrix":
        m = cls.__new__(cls)
        m.rows, m.cols = rows, cols
        m._data = {i: r for i, r in data.items() if r}
        m._cols = None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls._from_rows(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != nc:
                raise ValueError("ragged dense matrix")
            for j, v in enumerate(row):
                if v:
                    entries[i, j] = v
        return cls(nr, nc, entries)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, Fraction]]) -> "RationalMatrix":
        data: Dict[int, Dict[int, Fraction]] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    data.setdefault(i, {})[j] = _as_fraction(v)
        return cls._from_rows(rows, len(columns), data)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        return self._data.get(i, {}).get(j, Fraction(0))

    def items(self):
        for i in sorted(self._data):
            row = self._data[i]
            for j in sorted(row):
                yield (i, j), row[j]

    def nnz(self) -> int:
        return sum(len(r) for r in self._data.values())

    def row(self, i: int) -> Vector:
        return dict(self._data.get(i, {}))

    def row_dicts(self) -> Dict[int, Dict[int, Fraction]]:
        return self._data

    def column(self, j: int) -> Vector:
        return dict(self._column_dicts()[j])

    def _column_dicts(self) -> List[Vector]:
        if self._cols is None:
            cols: List[Vector] = [dict() for _ in range(self.cols)]
            for i, r in self._data.items():
                for j, v in r.items():
                    cols[j][i] = v
            self._cols = cols
        return self._cols

    def columns(self) -> List[Vector]:
        return [dict(c) for c in self._column_dicts()]

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for i, r in self._data.items():
            for j, v in r.items():
                out[i][j] = v
        return out

    def is_zero(self) -> bool:
        return not self._data

    def transpose(self) -> "RationalMatrix":
        data: Dict[int, Dict[int, Fraction]] = {}
        for i, r in self._data.items():
            for j, v in r.items():
                data.setdefault(j, {})[i] = v
        return RationalMatrix._from_rows(self.cols, self.rows, data)

    T = property(transpose)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        odata = other._data
        data: Dict[int, Dict[int, Fraction]] = {}
        for i, r in self._data.items():
            acc: Dict[int, Fraction] = {}
            for k, v in r.items():
                orow = odata.get(k)
                if not orow:
                    continue
                for j, w in orow.items():
                    acc[j] = acc.get(j, 0) + v * w
            acc = {j: x for j, x in acc.items() if x}
            if acc:
                data[i] = acc
        return RationalMatrix._from_rows(self.rows, other.cols, data)

    def apply(self, vec: Mapping[int, Fraction]) -> Vector:
        """Matrix-vector product on a sparse vector ``{index: value}``."""
        out: Vector = {}
        cols = self._column_dicts()
        for j, v in vec.items():
            for i, w in cols[j].items():
                out[i] = out.get(i, 0) + v * w
        return {i: x for i, x in out.items() if x}

    def _combine(self, other: "RationalMatrix", sign: int) -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        data = {i: dict(r) for i, r in self._data.items()}
        for i, r in other._data.items():
            row = data.setdefault(i, {})
            for j, v in r.items():
                x = row.get(j, 0) + sign * v
                if x:
                    row[j] = x
                else:
                    row.pop(j, None)
        return RationalMatrix._from_rows(self.rows, self.cols, data)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self._combine(other, -1)

    def __neg__(self) -> "RationalMatrix":
        return self.scale(-1)

    def scale(self, c) -> "RationalMatrix":
        c = _as_fraction(c)
        if not c:
            return RationalMatrix.zeros(self.rows, self.cols)
        return RationalMatrix._from_rows(
            self.rows, self.cols, {i: {j: c * v for j, v in r.items()} for i, r in self._data.items()}
        )

    def select_columns(self, idx: Sequence[int]) -> "RationalMatrix":
        pos = {j: k for k, j in enumerate(idx)}
        data = {}
        for i, r in self._data.items():
            nr = {pos[j]: v for j, v in r.items() if j in pos}
            if nr:
                data[i] = nr
        return RationalMatrix._from_rows(self.rows, len(idx), data)

    def select_rows(self, idx: Sequence[int]) -> "RationalMatrix":
        data = {k: dict(self._data[i]) for k, i in enumerate(idx) if i in self._data}
        return RationalMatrix._from_rows(len(idx), self.cols, data)

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        data = {i: dict(r) for i, r in self._data.items()}
        off = self.cols
        for i, r in other._data.items():
            row = data.setdefault(i, {})
            for j, v in r.items():
                row[j + off] = v
        return RationalMatrix._from_rows(self.rows, self.cols + other.cols, data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.items())))

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def block_matrix(row_sizes: Sequence[int], col_sizes: Sequence[int],
                 blocks: Mapping[Tuple[int, int], RationalMatrix]) -> RationalMatrix:
    """Assemble a matrix from blocks keyed by (block_row, block_col)."""
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    data: Dict[int, Dict[int, Fraction]] = {}
    for (bi, bj), m in blocks.items():
        if m.shape != (row_sizes[bi], col_sizes[bj]):
            raise ValueError(f"block ({bi}, {bj}) has shape {m.shape}")
        for i, r in m.row_dicts().items():
            row = data.setdefault(roff[bi] + i, {})
            for j, v in r.items():
                x = row.get(coff[bj] + j, 0) + v
                if x:
                    row[coff[bj] + j] = x
                else:
                    row.pop(coff[bj] + j, None)
    return RationalMatrix._from_rows(roff[-1], coff[-1], data)


# ---------------------------------------------------------------------------
# elimination


def _integral_rows(M: RationalMatrix) -> List[Dict[int, int]]:
    """Scale each row by the lcm of its denominators (rank-preserving)."""
    out = []
    for i in sorted(M.row_dicts()):
        r = M.row_dicts()[i]
        den = 1
        for v in r.values():
            den = lcm(den, v.denominator)
        out.append({j: int(v * den) for j, v in r.items()})
    return out


def _bareiss_rank(rows: List[List[int]], ncols: int) -> int:
    """Fraction-free elimination on a dense integer matrix; returns the rank.

    Column-by-column, pivoting on the least nonzero magnitude in the column
    (ties to the lowest row index). Every intermediate entry is a minor of
    the input, hence integral.
    """
    A = [list(r) for r in rows]
    m = len(A)
    r = 0
    prev = 1
    for c in range(ncols):
        if r == m:
            break
        best = None
        for i in range(r, m):
            v = A[i][c]
            if v and (best is None or abs(v) < abs(A[best][c])):
                best = i
        if best is None:
            continue
        A[r], A[best] = A[best], A[r]
        p = A[r][c]
        pr = A[r]
        for i in range(r + 1, m):
            ri = A[i]
            f = ri[c]
            for k in range(c + 1, ncols):
                ri[k] = (p * ri[k] - f * pr[k]) // prev
            ri[c] = 0
        prev = p
        r += 1
    return r


def _sparse_rank(rows: List[Dict[int, int]]) -> int:
    """Fraction-free sparse elimination with row-content normalisation."""
    rows = [dict(r) for r in rows if r]
    col_rows: Dict[int, set] = {}
    for ri, r in enumerate(rows):
        for c in r:
            col_rows.setdefault(c, set()).add(ri)
    active = set(range(len(rows)))
    rank = 0
    for c in sorted(col_rows):
        cand = [ri for ri in col_rows[c] if ri in active]
        if not cand:
            continue
        piv = min(cand, key=lambda ri: (abs(rows[ri][c]), len(rows[ri]), ri))
        active.discard(piv)
        rank += 1
        prow = rows[piv]
        a = prow[c]
        for ri in cand:
            if ri == piv:
                continue
            row = rows[ri]
            b = row[c]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            old = set(row)
            if fa != 1:
                for k in row:
                    row[k] *= fa
            for k, v in prow.items():
                x = row.get(k, 0) - fb * v
                if x:
                    row[k] = x
                else:
                    row.pop(k, None)
            cont = 0
            for v in row.values():
                cont = gcd(cont, v)
                if cont == 1:
                    break
            if cont > 1:
                for k in row:
                    row[k] //= cont
            new = set(row)
            for k in old - new:
                col_rows[k].discard(ri)
            for k in new - old:
                col_rows.setdefault(k, set()).add(ri)
            if not row:
                active.discard(ri)
    return rank


def rank(M: RationalMatrix) -> int:
    """Rank over the rationals.

    Dense fraction-free (Bareiss) elimination below ``DENSE_LIMIT`` in both
    dimensions, sparse fraction-free elimination above.
    """
    if M.is_zero():
        return 0
    rows = _integral_rows(M)
    if M.rows < DENSE_LIMIT and M.cols < DENSE_LIMIT:
        dense = [[r.get(j, 0) for j in range(M.cols)] for r in rows]
        return _bareiss_rank(dense, M.cols)
    # eliminate along the shorter side
    if M.cols > M.rows:
        return _sparse_rank(rows)
    return _sparse_rank(_integral_rows(M.transpose()))


def rref(M: RationalMatrix) -> Tuple[List[Vector], List[int]]:
    """Reduced row echelon form over Q.

    Returns ``(rows, pivots)`` where ``rows[k]`` is the k-th nonzero RREF row
    (sparse) with leading 1 in column ``pivots[k]``. The elimination itself is
    fraction-free on integer rows; division happens once per row at the end.
    """
    work = _integral_rows(M)
    col_rows: Dict[int, set] = {}
    for ri, r in enumerate(work):
        for c in r:
            col_rows.setdefault(c, set()).add(ri)
    pivots: List[int] = []
    prow_ids: List[int] = []
    used = set()
    for c in sorted(col_rows):
        cand = [ri for ri in col_rows[c] if ri not in used]
        if not cand:
            continue
        piv = min(cand, key=lambda ri: (abs(work[ri][c]), len(work[ri]), ri))
        used.add(piv)
        prow = work[piv]
        a = prow[c]
        for ri in list(col_rows[c]):
            if ri == piv:
                continue
            row = work[ri]
            b = row[c]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            old = set(row)
            if fa != 1:
                for k in row:
                    row[k] *= fa
            for k, v in prow.items():
                x = row.get(k, 0) - fb * v
                if x:
                    row[k] = x
                else:
                    row.pop(k, None)
            cont = 0
            for v in row.values():
                cont = gcd(cont, v)
                if cont == 1:
                    break
            if cont > 1:
                for k in row:
                    row[k] //= cont
            new = set(row)
            for k in old - new:
                col_rows[k].discard(ri)
            for k in new - old:
                col_rows.setdefault(k, set()).add(ri)
        pivots.append(c)
        prow_ids.append(piv)
    out = []
    for ri, c in zip(prow_ids, pivots):
        row = work[ri]
        a = row[c]
        out.append({k: Fraction(v, a) for k, v in row.items()})
    return out, pivots


def kernel_basis(M: RationalMatrix) -> List[Vector]:
    """Basis of the right kernel of ``M`` as sparse column vectors.

    The k-th vector has a 1 in its own free column and 0 in every other free
    column, so coordinates with respect to the basis can be read off directly
    (see :class:`Subspace`).
    """
    rows, pivots = rref(M)
    pivset = set(pivots)
    free = [j for j in range(M.cols) if j not in pivset]
    basis = []
    for f in free:
        v: Vector = {f: Fraction(1)}
        for r, p in zip(rows, pivots):
            x = r.get(f)
            if x:
                v[p] = -x
        basis.append(v)
    return basis


def image_basis(M: RationalMatrix) -> List[Vector]:
    """Basis of the column space of ``M`` (independent columns of ``M``)."""
    _, pivots = rref(M)
    cols = M.columns()
    return [cols[j] for j in pivots]


def solve(M: RationalMatrix, rhs: Mapping[int, Fraction]) -> Optional[Vector]:
    """One exact solution ``x`` of ``M x = rhs`` or ``None`` if inconsistent."""
    aug = M.hstack(RationalMatrix.from_columns(M.rows, [dict(rhs)]))
    rows, pivots = rref(aug)
    if pivots and pivots[-1] == M.cols:
        return None
    x: Vector = {}
    for r, p in zip(rows, pivots):
        v = r.get(M.cols)
        if v:
            x[p] = v
    return x


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient with a basis in reduced position.

    ``basis[k]`` has entry 1 at ``positions[k]`` and entry 0 at every other
    position, so ``coordinates`` is a coordinate read-off plus a check.
    """

    ambient: int
    basis: Tuple[Tuple[Tuple[int, Fraction], ...], ...]
    positions: Tuple[int, ...]

    @classmethod
    def from_vectors(cls, ambient: int, vectors: Iterable[Mapping[int, Fraction]]) -> "Subspace":
        vectors = [dict(v) for v in vectors]
        if not vectors:
            return cls(ambient, (), ())
        # rows = vectors; RREF gives a reduced spanning set
        m = RationalMatrix._from_rows(
            len(vectors), ambient, {i: {j: _as_fraction(x) for j, x in v.items() if x} for i, v in enumerate(vectors)}
        )
        rows, pivots = rref(m)
        basis = tuple(tuple(sorted(r.items())) for r in rows)
        return cls(ambient, basis, tuple(pivots))

    @classmethod
    def kernel(cls, M: RationalMatrix) -> "Subspace":
        rows, pivots = rref(M)
        pivset = set(pivots)
        free = [j for j in range(M.cols) if j not in pivset]
        basis = []
        for f in free:
            v = {f: Fraction(1)}
            for r, p in zip(rows, pivots):
                x = r.get(f)
                if x:
                    v[p] = -x
            basis.append(tuple(sorted(v.items())))
        return cls(M.cols, tuple(basis), tuple(free))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> List[Vector]:
        return [dict(b) for b in self.basis]

    def matrix(self) -> RationalMatrix:
        """Ambient x dim matrix whose columns are the basis vectors."""
        return RationalMatrix.from_columns(self.ambient, self.vectors())

    def coordinates(self, vec: Mapping[int, Fraction]) -> Optional[List[Fraction]]:
        """Coordinates of ``vec`` in this basis, or ``None`` if not contained."""
        coords = [Fraction(vec.get(p, 0)) for p in self.positions]
        recon: Dict[int, Fraction] = {}
        for c, b in zip(coords, self.basis):
            if c:
                for j, x in b:
                    recon[j] = recon.get(j, 0) + c * x
        recon = {j: x for j, x in recon.items() if x}
        target = {j: Fraction(x) for j, x in vec.items() if x}
        return coords if recon == target else None

    def contains(self, vec: Mapping[int, Fraction]) -> bool:
        return self.coordinates(vec) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(dict(b)) for b in other.basis)


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(M) -> Tuple[int, ...]:
    """Elementary divisors ``d_1 | d_2 | ...`` (nonzero ones, positive) of an
    integer matrix, given as a :class:`RationalMatrix` or nested lists."""
    if isinstance(M, RationalMatrix):
        for (i, j), v in M.items():
            if v.denominator != 1:
                raise ValueError(f"non-integral entry at ({i}, {j})")
        A = [[int(x) for x in row] for row in M.to_dense()]
    else:
        A = [[int(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    divisors = []
    for t in range(min(m, n)):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
            rest = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
            rest += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            if rest:
                # a remainder smaller than the pivot: bring it to (t, t)
                _, i, j = min(rest)
                A[t], A[i] = A[i], A[t]
                for row in A:
                    row[t], row[j] = row[j], row[t]
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
        divisors.append(abs(A[t][t]))
    return tuple(divisors)


# ---------------------------------------------------------------------------
# graded complexes


@dataclass(frozen=True)
class GradedComplex:
    """A finite chain or cochain complex of Q-vector spaces.

    ``dims[k]`` is the dimension in degree k (for ``lo <= k <= hi``).
    ``differentials[k]`` is the map *out of* degree k: shape
    ``(dims[k-1], dims[k])`` for chain complexes and ``(dims[k+1], dims[k])``
    for cochain complexes. Missing differentials are zero.
    """

    dims: Mapping[int, int]
    differentials: Mapping[int, RationalMatrix] = field(default_factory=dict)
    direction: str = "chain"

    def __post_init__(self):
        if self.direction not in ("chain", "cochain"):
            raise ValueError("direction must be 'chain' or 'cochain'")
        if self.dims:
            lo, hi = min(self.dims), max(self.dims)
            if sorted(self.dims) != list(range(lo, hi + 1)):
                raise ComplexError("degrees must form a contiguous range")
        step = -1 if self.direction == "chain" else 1
        for k, d in self.differentials.items():
            tgt = k + step
            if k not in self.dims or tgt not in self.dims:
                if not d.is_zero():
                    raise ComplexError(f"differential out of degree {k} leaves the complex")
                continue
            if d.shape != (self.dims[tgt], self.dims[k]):
                raise ComplexError(
                    f"differential out of degree {k} has shape {d.shape}, "
                    f"expected {(self.dims[tgt], self.dims[k])}"
                )

    @property
    def lo(self) -> int:
        return min(self.dims)

    @property
    def hi(self) -> int:
        return max(self.dims)

    @property
    def step(self) -> int:
        return -1 if self.direction == "chain" else 1

    def d(self, k: int) -> RationalMatrix:
        """The differential out of degree k (zero matrix when absent)."""
        if k in self.differentials:
            return self.differentials[k]
        src = self.dims.get(k, 0)
        tgt = self.dims.get(k + self.step, 0)
        return RationalMatrix.zeros(tgt, src)

    def check(self) -> None:
        """Raise :class:`ComplexError` unless consecutive differentials compose to zero."""
        for k in self.dims:
            nxt = k + self.step
            if nxt not in self.dims:
                continue
            if not (self.d(nxt) @ self.d(k)).is_zero():
                raise ComplexError(f"d o d != 0 starting in degree {k}")

    def ranks(self) -> Dict[int, int]:
        return {k: rank(self.d(k)) for k in self.dims}

    def betti(self, check: bool = True) -> Dict[int, int]:
        if check:
            self.check()
        r = self.ranks()
        out = {}
        for k, dim in sorted(self.dims.items()):
            incoming = r.get(k - self.step, 0)
            out[k] = dim - r[k] - incoming
        return out

    def dual(self) -> "GradedComplex":
        """Transpose every differential (chain <-> cochain)."""
        direction = "cochain" if self.direction == "chain" else "chain"
        diffs = {}
        for k, m in self.differentials.items():
            diffs[k + self.step] = m.transpose()
        return GradedComplex(dict(self.dims), diffs, direction)


def betti(C: GradedComplex) -> Dict[int, int]:
    """Betti numbers of a graded complex; rejects complexes with d o d != 0."""
    return C.betti()


def induced_rank(f: RationalMatrix, cycles: Sequence[Mapping[int, Fraction]],
                 boundaries: RationalMatrix) -> int:
    """Rank of the map induced on homology by a chain map ``f``.

    ``cycles`` spans the source cycles and ``boundaries`` has the target
    boundaries as columns: rank f_* = rank[f(Z) | B] - rank B.
    """
    fz = RationalMatrix.from_columns(f.rows, [f.apply(z) for z in cycles]) if cycles else \
        RationalMatrix.zeros(f.rows, 0)
    return rank(fz.hstack(boundaries)) - rank(boundaries)
