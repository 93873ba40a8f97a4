"""Hochschild, cyclic and periodic cyclic homology of finite-dimensional algebras.

Hochschild chains ``C_k = A^{(k+1)}`` use the tensor basis ``e_{i_0} (x) ... (x)
e_{i_k}`` in lexicographic order. All complexes are truncated at a degree K;
Hochschild and cyclic homology are exact in degrees ``<= K - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exactalg import (
    GradedComplex,
    RationalMatrix,
    Subspace,
    block_matrix,
    induced_rank,
    kernel_basis,
    rank,
    solve,
)

DEFAULT_MAX_DEGREE = 5

Tensor = Tuple[int, ...]


class AlgebraError(ValueError):
    pass


class MixedComplexError(AssertionError):
    """An operator identity failed; indicates a construction bug."""


class FiniteAlgebra:
    """A finite-dimensional unital associative algebra over Q.

    ``structure[i][j]`` is the coordinate vector of ``e_i * e_j``. The unit
    must be one of the basis vectors; by convention it is the first.
    """

    def __init__(self, structure: Sequence[Sequence[Sequence]], labels: Optional[Sequence[str]] = None,
                 unit: int = 0, name: str = ""):
        d = len(structure)
        if d == 0:
            raise AlgebraError("zero-dimensional algebra")
        self.dim = d
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(d))
        if len(self.labels) != d:
            raise AlgebraError(f"{len(self.labels)} labels for dimension {d}")
        self.name = name
        mult: List[List[Tuple[Tuple[int, Fraction], ...]]] = []
        for i, row in enumerate(structure):
            if len(row) != d:
                raise AlgebraError(f"row {i} of the structure table has {len(row)} entries")
            mrow = []
            for j, vec in enumerate(row):
                if len(vec) != d:
                    raise AlgebraError(f"product ({self.labels[i]}, {self.labels[j]}) has {len(vec)} coordinates")
                mrow.append(tuple((k, Fraction(c)) for k, c in enumerate(vec) if Fraction(c)))
            mult.append(mrow)
        self.mult = mult
        if not 0 <= unit < d:
            raise AlgebraError(f"unit index {unit} out of range")
        self.unit = unit
        self._check()

    # -- arithmetic ------------------------------------------------------

    def multiply(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.mult[i][j]:
                    out[k] = out.get(k, 0) + a * b * c
        return {k: v for k, v in out.items() if v}

    def basis_vector(self, i: int) -> Dict[int, Fraction]:
        return {i: Fraction(1)}

    def structure_table(self) -> List[List[List[Fraction]]]:
        d = self.dim
        out = []
        for i in range(d):
            row = []
            for j in range(d):
                v = [Fraction(0)] * d
                for k, c in self.mult[i][j]:
                    v[k] = c
                row.append(v)
            out.append(row)
        return out

    def is_commutative(self) -> bool:
        return all(self.mult[i][j] == self.mult[j][i] for i in range(self.dim) for j in range(self.dim))

    def _check(self) -> None:
        d = self.dim
        u = self.unit
        for i in range(d):
            e = {i: Fraction(1)}
            if self.multiply({u: Fraction(1)}, e) != e or self.multiply(e, {u: Fraction(1)}) != e:
                raise AlgebraError(
                    f"basis element {self.labels[u]} is not a two-sided unit (fails on {self.labels[i]})"
                )
        for i in range(d):
            for j in range(d):
                ij = dict(self.mult[i][j])
                for k in range(d):
                    left = self.multiply(ij, {k: Fraction(1)})
                    right = self.multiply({i: Fraction(1)}, dict(self.mult[j][k]))
                    if left != right:
                        raise AlgebraError(
                            "not associative on basis triple "
                            f"({self.labels[i]}, {self.labels[j]}, {self.labels[k]}), indices ({i}, {j}, {k})"
                        )

    def __repr__(self):
        return f"FiniteAlgebra({self.name or 'dim=' + str(self.dim)})"


def matrix_algebra(basis: Sequence[Sequence[Sequence]], labels: Optional[Sequence[str]] = None,
                   name: str = "") -> FiniteAlgebra:
    """Subalgebra of a matrix algebra spanned by the given matrices.

    The first matrix must be the identity. Structure constants are found by
    exact solves; a product leaving the span raises :class:`AlgebraError`.
    """
    mats = [[[Fraction(x) for x in row] for row in m] for m in basis]
    size = len(mats[0])

    def flat(m):
        return {r * size + c: x for r in range(size) for c, x in enumerate(m[r]) if x}

    span = RationalMatrix.from_columns(size * size, [flat(m) for m in mats])
    if rank(span) != len(mats):
        raise AlgebraError("matrix basis is linearly dependent")

    def matmul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(size)) for j in range(size)] for i in range(size)]

    d = len(mats)
    table = []
    for i in range(d):
        row = []
        for j in range(d):
            x = solve(span, flat(matmul(mats[i], mats[j])))
            if x is None:
                raise AlgebraError(f"product of basis elements {i}, {j} leaves the span")
            row.append([x.get(k, Fraction(0)) for k in range(d)])
        table.append(row)
    return FiniteAlgebra(table, labels, unit=0, name=name)


def ground_field() -> FiniteAlgebra:
    return FiniteAlgebra([[[1]]], ["1"], name="Q")


def product_qq() -> FiniteAlgebra:
    """Q x Q with basis 1 = (1, 1), e = (1, 0)."""
    return matrix_algebra([[[1, 0], [0, 1]], [[1, 0], [0, 0]]], ["1", "e"], name="QxQ")


def dual_numbers() -> FiniteAlgebra:
    """Q[x]/(x^2)."""
    return FiniteAlgebra([[[1, 0], [0, 1]], [[0, 1], [0, 0]]], ["1", "x"], name="Q[x]/(x^2)")


def matrix_m2() -> FiniteAlgebra:
    E = lambda r, c: [[1 if (i, j) == (r, c) else 0 for j in range(2)] for i in range(2)]
    return matrix_algebra([[[1, 0], [0, 1]], E(0, 0), E(0, 1), E(1, 0)], ["1", "E11", "E12", "E21"], name="M2(Q)")


def upper_triangular() -> FiniteAlgebra:
    E = lambda r, c: [[1 if (i, j) == (r, c) else 0 for j in range(2)] for i in range(2)]
    return matrix_algebra([[[1, 0], [0, 1]], E(0, 0), E(0, 1)], ["1", "E11", "E12"], name="T2(Q)")


def bundled_algebras() -> Dict[str, FiniteAlgebra]:
    algs = [ground_field(), product_qq(), dual_numbers(), matrix_m2(), upper_triangular()]
    return {a.name: a for a in algs}


# ---------------------------------------------------------------------------
# Hochschild complex


class _TensorBasis:
    def __init__(self, d: int, k: int, unit: Optional[int] = None):
        if unit is None:
            self.tensors = list(product(range(d), repeat=k + 1))
        else:
            rest = [i for i in range(d) if i != unit]
            self.tensors = [(a,) + t for a in range(d) for t in product(rest, repeat=k)]
        self.index = {t: i for i, t in enumerate(self.tensors)}

    def __len__(self):
        return len(self.tensors)


class HochschildComplex:
    """Hochschild chains of ``A`` in degrees ``0..K``, full or reduced.

    The reduced complex is the quotient by tensors having the unit in some
    position ``>= 1``; its basis is the tensors with no such factor.
    """

    def __init__(self, A: FiniteAlgebra, K: int = DEFAULT_MAX_DEGREE, reduced: bool = False):
        if K < 1:
            raise ValueError("truncation degree must be >= 1")
        self.A = A
        self.K = K
        self.reduced = reduced
        self._bases: Dict[int, _TensorBasis] = {}
        self._b: Dict[int, RationalMatrix] = {}
        self._B: Dict[int, RationalMatrix] = {}

    def basis(self, k: int) -> _TensorBasis:
        if k not in self._bases:
            self._bases[k] = _TensorBasis(self.A.dim, k, self.A.unit if self.reduced else None)
        return self._bases[k]

    def dim(self, k: int) -> int:
        return len(self.basis(k))

    def _check_degree(self, k: int, lo: int, hi: int, what: str):
        if not lo <= k <= hi:
            raise ValueError(f"{what} degree {k} outside {lo}..{hi}")

    def b(self, k: int) -> RationalMatrix:
        """Hochschild boundary ``C_k -> C_{k-1}``."""
        self._check_degree(k, 1, self.K, "boundary")
        if k in self._b:
            return self._b[k]
        mult = self.A.mult
        src, tgt = self.basis(k), self.basis(k - 1).index
        entries: Dict[Tuple[int, int], Fraction] = {}

        def add(t, col, c):
            row = tgt.get(t)
            if row is None:  # degenerate in the reduced quotient
                return
            key = (row, col)
            x = entries.get(key, 0) + c
            if x:
                entries[key] = x
            else:
                entries.pop(key, None)

        for col, t in enumerate(src.tensors):
            for j in range(k):
                sign = -1 if j % 2 else 1
                for m, c in mult[t[j]][t[j + 1]]:
                    add(t[:j] + (m,) + t[j + 2:], col, sign * c)
            sign = -1 if k % 2 else 1
            for m, c in mult[t[k]][t[0]]:
                add((m,) + t[1:k], col, sign * c)
        M = RationalMatrix(len(self.basis(k - 1)), len(src), entries)
        self._b[k] = M
        return M

    def tau(self, k: int) -> RationalMatrix:
        """Cyclic operator ``a_0..a_k -> (-1)^k a_k a_0 .. a_{k-1}`` (full complex only)."""
        if self.reduced:
            raise ValueError("the cyclic operator does not preserve the reduced basis")
        self._check_degree(k, 0, self.K, "cyclic operator")
        src = self.basis(k)
        sign = -1 if k % 2 else 1
        entries = {(src.index[(t[k],) + t[:k]], col): sign for col, t in enumerate(src.tensors)}
        return RationalMatrix(len(src), len(src), entries)

    def B(self, k: int) -> RationalMatrix:
        """Connes' operator ``C_k -> C_{k+1}``.

        Full complex: ``(1 - tau) s N`` with ``N`` the signed sum of rotations
        and ``s(x) = 1 (x) x``. Reduced complex: the normalised form ``s N``.
        """
        self._check_degree(k, 0, self.K - 1, "B")
        if k in self._B:
            return self._B[k]
        u = self.A.unit
        src, tgt = self.basis(k), self.basis(k + 1).index
        entries: Dict[Tuple[int, int], int] = {}

        def add(t, col, c):
            row = tgt.get(t)
            if row is None:
                return
            x = entries.get((row, col), 0) + c
            if x:
                entries[(row, col)] = x
            else:
                entries.pop((row, col), None)

        tsign = -1 if (k + 1) % 2 else 1  # sign of tau on C_{k+1}
        for col, t in enumerate(src.tensors):
            rot = t
            for m in range(k + 1):
                sign = -1 if (k * m) % 2 else 1
                add((u,) + rot, col, sign)
                if not self.reduced:
                    # tau(1, r_0, .., r_k) = (-1)^{k+1} (r_k, 1, r_0, .., r_{k-1})
                    add((rot[-1], u) + rot[:-1], col, -sign * tsign)
                rot = (rot[-1],) + rot[:-1]
        M = RationalMatrix(len(self.basis(k + 1)), len(src), entries)
        self._B[k] = M
        return M

    def graded(self, top: Optional[int] = None) -> GradedComplex:
        top = self.K if top is None else top
        dims = {k: self.dim(k) for k in range(top + 1)}
        return GradedComplex(dims, {k: self.b(k) for k in range(1, top + 1)}, "chain")

    def betti(self) -> Dict[int, int]:
        """Hochschild betti numbers in the reliable degrees ``0..K-1``."""
        full = self.graded().betti()
        return {k: full[k] for k in range(self.K)}

    def top_lower_bound(self) -> int:
        """``dim ker b_K``-based lower bound... reported as dim H_K of the truncation.

        The truncated complex has no ``b_{K+1}``, so this over-counts the true
        ``HH_K``; it bounds it from above, and ``0`` bounds it from below.
        """
        return self.graded().betti()[self.K]


def hochschild_boundary(A: FiniteAlgebra, k: int, K: Optional[int] = None) -> RationalMatrix:
    return HochschildComplex(A, max(k, K or k)).b(k)


def cyclic_operator(A: FiniteAlgebra, k: int) -> RationalMatrix:
    return HochschildComplex(A, max(k, 1)).tau(k)


def connes_B(A: FiniteAlgebra, k: int, reduced: bool = False) -> RationalMatrix:
    return HochschildComplex(A, k + 1, reduced=reduced).B(k)


def hh_betti(A: FiniteAlgebra, K: int = DEFAULT_MAX_DEGREE) -> Dict[int, int]:
    if K < 2:
        raise ValueError("hh_betti needs K >= 2")
    return HochschildComplex(A, K).betti()


def reduced_complex(A: FiniteAlgebra, K: int = DEFAULT_MAX_DEGREE) -> HochschildComplex:
    return HochschildComplex(A, K, reduced=True)


# ---------------------------------------------------------------------------
# mixed complexes


@dataclass
class MixedComplex:
    """Graded spaces with ``b`` (degree -1) and ``B`` (degree +1).

    ``dims`` covers degrees ``0..top``. When ``truncated`` is true the
    complex continues above ``top`` but is unknown there; otherwise it is
    zero above ``top``.
    """

    dims: Dict[int, int]
    b: Dict[int, RationalMatrix]
    B: Dict[int, RationalMatrix]
    truncated: bool = True
    label: str = ""
    _cache: Dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def top(self) -> int:
        return max(self.dims)

    def dim(self, k: int) -> int:
        return self.dims.get(k, 0) if k >= 0 else 0

    def b_at(self, k: int) -> RationalMatrix:
        if k in self.b:
            return self.b[k]
        return RationalMatrix.zeros(self.dim(k - 1), self.dim(k))

    def B_at(self, k: int) -> RationalMatrix:
        if k in self.B:
            return self.B[k]
        return RationalMatrix.zeros(self.dim(k + 1), self.dim(k))

    def identity_failures(self) -> List[str]:
        """Names of violated identities among b^2 = 0, B^2 = 0, bB + Bb = 0."""
        bad = []
        top = self.top
        for k in range(2, top + 1):
            if not (self.b_at(k - 1) @ self.b_at(k)).is_zero():
                bad.append(f"b^2 != 0 on C_{k}")
        for k in range(0, top - 1):
            if not (self.B_at(k + 1) @ self.B_at(k)).is_zero():
                bad.append(f"B^2 != 0 on C_{k}")
        for k in range(0, top):
            lhs = self.b_at(k + 1) @ self.B_at(k)
            if k >= 1:
                lhs = lhs + self.B_at(k - 1) @ self.b_at(k)
            if not lhs.is_zero():
                bad.append(f"bB + Bb != 0 on C_{k}")
        return bad

    def validate(self) -> "MixedComplex":
        bad = self.identity_failures()
        if bad:
            raise MixedComplexError("; ".join(bad))
        return self

    def _limit(self, K: int) -> None:
        if self.truncated and K > self.top:
            raise ValueError(f"degree {K} exceeds the truncation {self.top}")

    # -- Hochschild side ---------------------------------------------------

    def hochschild_betti(self, K: Optional[int] = None) -> Dict[int, int]:
        K = self.top if K is None else K
        self._limit(K)
        return {k: self.dim(k) - rank(self.b_at(k)) - rank(self.b_at(k + 1)) for k in range(K)}

    # -- total complex of M[u] ---------------------------------------------

    def blocks(self, n: int) -> List[Tuple[int, int]]:
        """Blocks ``(k, p)`` of total degree n: ``M_k u^p`` with ``k + 2p = n``."""
        return [(n - 2 * p, p) for p in range(n // 2 + 1) if 0 <= n - 2 * p <= self.top]

    def tot_dim(self, n: int) -> int:
        return sum(self.dim(k) for k, _ in self.blocks(n)) if n >= 0 else 0

    def tot_d(self, n: int) -> RationalMatrix:
        """Differential ``b + B`` of the total complex, ``Tot_n -> Tot_{n-1}``."""
        key = ("d", n)
        if key in self._cache:
            return self._cache[key]
        self._limit(n)
        src = self.blocks(n)
        tgt = self.blocks(n - 1) if n >= 1 else []
        tpos = {blk: i for i, blk in enumerate(tgt)}
        parts = {}
        for j, (k, p) in enumerate(src):
            if k >= 1 and (k - 1, p) in tpos:
                parts[(tpos[(k - 1, p)], j)] = self.b_at(k)
            if p >= 1 and (k + 1, p - 1) in tpos:
                parts[(tpos[(k + 1, p - 1)], j)] = self.B_at(k)
        M = block_matrix([self.dim(k) for k, _ in tgt], [self.dim(k) for k, _ in src], parts)
        self._cache[key] = M
        return M

    def total_complex(self, K: int) -> GradedComplex:
        self._limit(K)
        dims = {n: self.tot_dim(n) for n in range(K + 1)}
        return GradedComplex(dims, {n: self.tot_d(n) for n in range(1, K + 1)}, "chain")

    def cyclic_betti(self, K: int) -> Dict[int, int]:
        """Cyclic homology ``H(M[u], b + B)`` in the reliable degrees ``0..K-1``."""
        C = self.total_complex(K)
        full = C.betti()
        return {n: full[n] for n in range(K)}

    def S_map(self, n: int) -> RationalMatrix:
        """Periodicity ``Tot_n -> Tot_{n-2}``: drop the u^0 column, lower u."""
        src = self.blocks(n)
        tgt = self.blocks(n - 2) if n >= 2 else []
        tpos = {blk: i for i, blk in enumerate(tgt)}
        parts = {}
        for j, (k, p) in enumerate(src):
            if p >= 1:
                parts[(tpos[(k, p - 1)], j)] = RationalMatrix.identity(self.dim(k))
        return block_matrix([self.dim(k) for k, _ in tgt], [self.dim(k) for k, _ in src], parts)

    def I_map(self, n: int) -> RationalMatrix:
        """Inclusion of the u^0 column ``M_n -> Tot_n``."""
        src_dim = self.dim(n)
        tgt = self.blocks(n)
        parts = {}
        if tgt and tgt[0] == (n, 0):
            parts[(0, 0)] = RationalMatrix.identity(src_dim)
        return block_matrix([self.dim(k) for k, _ in tgt], [src_dim], parts)

    def connecting_map(self, n: int) -> RationalMatrix:
        """``Tot_n -> M_{n+1}``: apply B to the u^0 component."""
        src = self.blocks(n)
        parts = {}
        for j, (k, p) in enumerate(src):
            if p == 0:
                parts[(0, j)] = self.B_at(k)
        return block_matrix([self.dim(n + 1)], [self.dim(k) for k, _ in src], parts)

    # -- homology data ---------------------------------------------------------

    def _hh_data(self, n: int):
        key = ("hh", n)
        if key not in self._cache:
            if n < 0:
                self._cache[key] = ([], RationalMatrix.zeros(0, 0), 0)
            else:
                Z = kernel_basis(self.b_at(n))
                Bd = self.b_at(n + 1)
                self._cache[key] = (Z, Bd, len(Z) - rank(Bd))
        return self._cache[key]

    def _hc_data(self, n: int):
        key = ("hc", n)
        if key not in self._cache:
            if n < 0:
                self._cache[key] = ([], RationalMatrix.zeros(0, 0), 0)
            else:
                Z = kernel_basis(self.tot_d(n)) if n >= 1 else [{i: Fraction(1)} for i in range(self.tot_dim(0))]
                Bd = self.tot_d(n + 1)
                self._cache[key] = (Z, Bd, len(Z) - rank(Bd))
        return self._cache[key]


def mixed_from_hochschild(C: HochschildComplex, validate: bool = True) -> MixedComplex:
    K = C.K
    M = MixedComplex(
        dims={k: C.dim(k) for k in range(K + 1)},
        b={k: C.b(k) for k in range(1, K + 1)},
        B={k: C.B(k) for k in range(K)},
        truncated=True,
        label=f"{'reduced ' if C.reduced else ''}Hochschild({C.A.name})",
    )
    return M.validate() if validate else M


def mixed_from_algebra(A: FiniteAlgebra, K: int = DEFAULT_MAX_DEGREE, reduced: bool = False) -> MixedComplex:
    if K < 2:
        raise ValueError("mixed_from_algebra needs K >= 2")
    return mixed_from_hochschild(HochschildComplex(A, K, reduced=reduced))


def mixed_from_cochain(omega: GradedComplex) -> MixedComplex:
    """De Rham-type mixed complex: ``b = 0`` and ``B`` the cochain differential."""
    if omega.direction != "cochain":
        raise ValueError("mixed_from_cochain needs a cochain complex")
    if omega.lo < 0:
        raise ValueError("cochain complex must start in degree >= 0")
    top = omega.hi
    dims = {k: omega.dims.get(k, 0) for k in range(top + 1)}
    B = {k: omega.d(k) for k in range(top) if k in omega.dims and k + 1 in omega.dims}
    return MixedComplex(dims, {}, B, truncated=False, label="de Rham").validate()


def cyclic_betti(M: MixedComplex, K: int = DEFAULT_MAX_DEGREE) -> Dict[int, int]:
    return M.cyclic_betti(K)


@dataclass
class PeriodicResult:
    even: int
    odd: int
    stabilized_even: bool
    stabilized_odd: bool
    cyclic: Dict[int, int]
    s_ranks: Dict[int, int]

    @property
    def stabilized(self) -> bool:
        return self.stabilized_even and self.stabilized_odd

    def as_tuple(self) -> Tuple[int, int]:
        return self.even, self.odd


def periodic_betti(M: MixedComplex, K: int = 6) -> PeriodicResult:
    """Periodic cyclic ranks read off at the top of the reliable window.

    For each parity the top reliable degree ``n`` is used; the parity is
    stabilized when ``S: HC_n -> HC_{n-2}`` is an isomorphism, i.e. two
    successive terms of the inverse system agree through S.
    """
    hc = M.cyclic_betti(K)
    s_ranks: Dict[int, int] = {}
    res = {}
    for parity in (0, 1):
        n = K - 1 if (K - 1) % 2 == parity else K - 2
        if n - 2 < 0:
            res[parity] = (hc.get(n, 0), False)
            continue
        Z, _, _ = M._hc_data(n)
        _, Bd, _ = M._hc_data(n - 2)
        r = induced_rank(M.S_map(n), Z, Bd)
        s_ranks[n] = r
        res[parity] = (r, r == hc[n] == hc[n - 2])
    return PeriodicResult(res[0][0], res[1][0], res[0][1], res[1][1], hc, s_ranks)


# ---------------------------------------------------------------------------
# Connes' exact sequence


@dataclass
class SBINode:
    node: str
    degree: int
    dim: int
    rank_in: int
    rank_out: int
    composite_zero: bool

    @property
    def exact(self) -> bool:
        return self.composite_zero and self.rank_in + self.rank_out == self.dim


@dataclass
class SBIReport:
    label: str
    K: int
    nodes: List[SBINode]

    @property
    def exact(self) -> bool:
        return all(n.exact for n in self.nodes)


def _composite_zero(f: RationalMatrix, g: RationalMatrix, Z, Bd: RationalMatrix) -> bool:
    """g o f sends every cycle in Z to a boundary."""
    if not Z:
        return True
    imgs = [g.apply(f.apply(z)) for z in Z]
    if all(not v for v in imgs):
        return True
    G = RationalMatrix.from_columns(g.rows, imgs)
    return rank(G.hstack(Bd)) == rank(Bd)


def sbi_check(M: MixedComplex, K: Optional[int] = None) -> SBIReport:
    """Rank-exactness of ``HH_n -I-> HC_n -S-> HC_{n-2} -B-> HH_{n-1}`` for ``n <= K-2``."""
    K = M.top if K is None else K
    if K < 3:
        raise ValueError("sbi_check needs K >= 3")
    M._limit(K)
    nodes: List[SBINode] = []

    def I_rank(n):
        Z, _, _ = M._hh_data(n)
        _, Bd, _ = M._hc_data(n)
        return induced_rank(M.I_map(n), Z, Bd) if n >= 0 else 0

    def S_rank(n):
        if n < 2:
            return 0
        Z, _, _ = M._hc_data(n)
        _, Bd, _ = M._hc_data(n - 2)
        return induced_rank(M.S_map(n), Z, Bd)

    def conn_rank(n):  # HC_n -> HH_{n+1}
        if n < 0:
            return 0
        Z, _, _ = M._hc_data(n)
        _, Bd, _ = M._hh_data(n + 1)
        return induced_rank(M.connecting_map(n), Z, Bd)

    for n in range(0, K - 1):
        # node HH_n: in from HC_{n-1}, out to HC_n
        Zc, _, _ = M._hc_data(n - 1)
        _, Bd_hc, _ = M._hc_data(n)
        cz = True
        if n >= 1:
            cz = _composite_zero(M.connecting_map(n - 1), M.I_map(n), Zc, Bd_hc)
        nodes.append(SBINode("HH", n, M._hh_data(n)[2], conn_rank(n - 1), I_rank(n), cz))
        # node HC_n: in from HH_n, out to HC_{n-2}
        Zh, _, _ = M._hh_data(n)
        cz = True
        if n >= 2:
            cz = _composite_zero(M.I_map(n), M.S_map(n), Zh, M._hc_data(n - 2)[1])
        nodes.append(SBINode("HC", n, M._hc_data(n)[2], I_rank(n), S_rank(n), cz))
        # node HC_{n-2} between S and B: in from HC_n, out to HH_{n-1}
        if n >= 2:
            Zs, _, _ = M._hc_data(n)
            cz = _composite_zero(M.S_map(n), M.connecting_map(n - 2), Zs, M._hh_data(n - 1)[1])
            nodes.append(SBINode("HC'", n - 2, M._hc_data(n - 2)[2], S_rank(n), conn_rank(n - 2), cz))
    return SBIReport(M.label, K, nodes)


# ---------------------------------------------------------------------------
# Connes' quotient complex C / (1 - tau)


class ConnesQuotient:
    """The complex ``(C_*(A)/(1 - tau), b)`` with an orbit basis.

    ``e_{rot t} = (-1)^k e_t`` in the quotient, so each rotation orbit gives
    one basis vector unless its stabiliser acts by -1.
    """

    def __init__(self, A: FiniteAlgebra, K: int = DEFAULT_MAX_DEGREE):
        self.A = A
        self.K = K
        self.hoch = HochschildComplex(A, K)
        self._classes: Dict[int, Tuple[Dict[Tensor, Tuple[int, int]], List[Tensor]]] = {}

    def classes(self, k: int):
        """``(class_of, reps)``: class_of[t] = (orbit index, sign) or absent if zero."""
        if k in self._classes:
            return self._classes[k]
        class_of: Dict[Tensor, Tuple[int, int]] = {}
        reps: List[Tensor] = []
        seen = set()
        for t in self.hoch.basis(k).tensors:
            if t in seen:
                continue
            orbit = []
            x, sign, dead = t, 1, False
            while True:
                seen.add(x)
                orbit.append((x, sign))
                x = (x[-1],) + x[:-1]
                sign = sign * (-1 if k % 2 else 1)
                if x == t:
                    dead = sign == -1
                    break
            if dead:
                continue
            idx = len(reps)
            reps.append(t)
            for y, s in orbit:
                class_of[y] = (idx, s)
        self._classes[k] = (class_of, reps)
        return self._classes[k]

    def dim(self, k: int) -> int:
        return len(self.classes(k)[1])

    def b(self, k: int) -> RationalMatrix:
        full = self.hoch.b(k)
        tensors = self.hoch.basis(k - 1).tensors
        class_of, _ = self.classes(k - 1)
        _, reps = self.classes(k)
        idx = self.hoch.basis(k).index
        cols = full.columns()
        out = []
        for t in reps:
            v: Dict[int, Fraction] = {}
            for row, c in cols[idx[t]].items():
                cls = class_of.get(tensors[row])
                if cls is None:
                    continue
                o, s = cls
                v[o] = v.get(o, 0) + s * c
            out.append({o: c for o, c in v.items() if c})
        return RationalMatrix.from_columns(self.dim(k - 1), out)

    def graded(self) -> GradedComplex:
        dims = {k: self.dim(k) for k in range(self.K + 1)}
        return GradedComplex(dims, {k: self.b(k) for k in range(1, self.K + 1)}, "chain")

    def betti(self) -> Dict[int, int]:
        full = self.graded().betti()
        return {k: full[k] for k in range(self.K)}


def connes_quotient_cyclic(A: FiniteAlgebra, K: int = DEFAULT_MAX_DEGREE) -> Dict[int, int]:
    return ConnesQuotient(A, K).betti()
