"""Perversities, filtered complexes and intersection homology.

An i-chain is allowable for a perversity p when, for every codimension
``2 <= j <= n``, the closure of its support meets the skeleton ``X_{n-j}`` in
dimension at most ``i - j + p_j``. The intersection chain complex in degree i
consists of the allowable i-chains whose boundary is an allowable
(i-1)-chain.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exactalg import GradedComplex, RationalMatrix, Subspace
from .simplicial import Simplex, SimplicialComplex, faces

NEG_INF = float("-inf")


class PerversityError(ValueError):
    pass


class FiltrationError(ValueError):
    pass


@dataclass(frozen=True, order=False)
class Perversity:
    """A Goresky-MacPherson perversity ``(p_0, ..., p_n)``."""

    values: Tuple[int, ...]

    def __post_init__(self):
        v = tuple(int(x) for x in self.values)
        object.__setattr__(self, "values", v)
        if not v:
            raise PerversityError("a perversity needs at least p_0")
        for j in range(min(3, len(v))):
            if v[j] != 0:
                raise PerversityError(f"p_{j} must be 0, got {v[j]}")
        for j in range(2, len(v) - 1):
            if not v[j] <= v[j + 1] <= v[j] + 1:
                raise PerversityError(
                    f"growth condition fails at j={j}: p_{j}={v[j]}, p_{j + 1}={v[j + 1]}"
                )

    @property
    def n(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, j: int) -> int:
        return self.values[j]

    def __le__(self, other: "Perversity") -> bool:
        return self.n == other.n and all(a <= b for a, b in zip(self.values, other.values))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.values)) + ")"

    @classmethod
    def parse(cls, text: str) -> "Perversity":
        try:
            return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x != ""))
        except ValueError as exc:
            if isinstance(exc, PerversityError):
                raise
            raise PerversityError(f"cannot parse perversity {text!r}") from exc


def zero_perversity(n: int) -> Perversity:
    return Perversity((0,) * (n + 1))


def total_perversity(n: int) -> Perversity:
    if n < 2:
        raise PerversityError("the total perversity needs n >= 2")
    return Perversity(tuple(max(j - 2, 0) for j in range(n + 1)))


def complement(p: Perversity) -> Perversity:
    """The complementary perversity ``t - p``."""
    t = total_perversity(p.n)
    for j, (a, b) in enumerate(zip(p.values, t.values)):
        if a > b:
            raise PerversityError(f"p_{j}={a} exceeds t_{j}={b}")
    return Perversity(tuple(b - a for a, b in zip(p.values, t.values)))


def all_perversities(n: int) -> List[Perversity]:
    """Every GM perversity in ambient dimension n, in lexicographic order."""
    if n < 3:
        return [zero_perversity(n)]
    out = []
    for steps in range(2 ** (n - 2)):
        v = [0, 0, 0]
        for j in range(n - 2):
            v.append(v[-1] + ((steps >> (n - 3 - j)) & 1))
        out.append(Perversity(tuple(v)))
    return sorted(out, key=lambda p: p.values)


def _values(p) -> Tuple[int, ...]:
    return p.values if isinstance(p, Perversity) else tuple(int(x) for x in p)


class FilteredComplex:
    """A simplicial complex with a filtration by closed subcomplexes.

    ``skeleta[i]`` is ``X_i`` for ``0 <= i <= n``; ``X_n`` is the ambient
    complex and ``X_{n-1}`` is the singular set.
    """

    def __init__(self, ambient: SimplicialComplex, skeleta: Sequence[SimplicialComplex]):
        n = ambient.dimension
        if n < 0:
            raise FiltrationError("empty complex")
        skeleta = list(skeleta)
        if len(skeleta) == n:
            skeleta.append(ambient)
        if len(skeleta) != n + 1:
            raise FiltrationError(f"need skeleta X_0..X_{n}, got {len(skeleta)}")
        if skeleta[n] != ambient:
            raise FiltrationError(f"X_{n} must be the ambient complex")
        for i, X in enumerate(skeleta):
            if X.dimension > i:
                raise FiltrationError(f"X_{i} has dimension {X.dimension} > {i}")
            if not X.is_subcomplex_of(ambient):
                bad = next(s for s in X if s not in ambient)
                raise FiltrationError(f"X_{i} contains {list(bad)} which is not in the complex")
            if i > 0 and not skeleta[i - 1].is_subcomplex_of(X):
                bad = next(s for s in skeleta[i - 1] if s not in X)
                raise FiltrationError(f"X_{i - 1} is not contained in X_{i}: {list(bad)}")
        self.ambient = ambient
        self.skeleta = tuple(skeleta)
        self._sets = tuple(frozenset(X.simplices()) for X in skeleta)
        self._meet_cache: Dict[Simplex, Tuple[float, ...]] = {}

    @classmethod
    def from_strata(cls, ambient: SimplicialComplex,
                    listed: Mapping[int, Iterable[Iterable[Hashable]]]) -> "FilteredComplex":
        """Build from maximal simplices of the listed skeleta.

        An unlisted ``X_i`` (i < n) equals ``X_{i-1}``; ``X_{-1}`` is empty.
        """
        n = ambient.dimension
        sk = []
        prev = SimplicialComplex()
        for i in range(n):
            if i in listed:
                X = SimplicialComplex(list(prev.simplices()) + [tuple(s) for s in listed[i]])
            else:
                X = prev
            sk.append(X)
            prev = X
        for i in listed:
            if not 0 <= i < n:
                raise FiltrationError(f"skeleton index {i} outside 0..{n - 1}")
        sk.append(ambient)
        return cls(ambient, sk)

    @classmethod
    def trivial(cls, ambient: SimplicialComplex) -> "FilteredComplex":
        return cls.from_strata(ambient, {})

    @property
    def n(self) -> int:
        return self.ambient.dimension

    @property
    def singular_set(self) -> SimplicialComplex:
        return self.skeleta[self.n - 1] if self.n >= 1 else SimplicialComplex()

    def listed_strata(self) -> Dict[int, Tuple[Simplex, ...]]:
        """Canonical description: facets of X_i wherever X_i differs from X_{i-1}."""
        out = {}
        prev = frozenset()
        for i in range(self.n):
            cur = self._sets[i]
            if cur != prev:
                out[i] = self.skeleta[i].facets()
            prev = cur
        return out

    def meet_dimensions(self, s: Simplex) -> Tuple[float, ...]:
        """``dim(closure(s) & X_k)`` for k = 0..n (``-inf`` for empty)."""
        hit = self._meet_cache.get(s)
        if hit is None:
            fs = faces(s)
            hit = tuple(
                max((len(f) - 1 for f in fs if f in X), default=NEG_INF) for X in self._sets
            )
            self._meet_cache[s] = hit
        return hit

    def __eq__(self, other):
        return isinstance(other, FilteredComplex) and self.ambient == other.ambient and self._sets == other._sets

    def __repr__(self):
        return f"FilteredComplex(n={self.n}, strata={ {i: len(v) for i, v in self.listed_strata().items()} })"


def cone_filtration(link: SimplicialComplex, apex: Optional[Hashable] = None) -> FilteredComplex:
    """Cone over ``link`` filtered with the apex as its only singular point."""
    K = link.cone(apex)
    a = next(v for v in K.vertices if v not in set(link.vertices))
    return FilteredComplex.from_strata(K, {0: [(a,)]})


def suspension_filtration(link: SimplicialComplex) -> FilteredComplex:
    """Suspension over ``link`` with the two suspension points as singular set."""
    K = link.suspension()
    apexes = [v for v in K.vertices if v not in set(link.vertices)]
    return FilteredComplex.from_strata(K, {0: [(a,) for a in apexes]})


def simplex_allowable(s: Simplex, i: int, p, F: FilteredComplex) -> bool:
    """Whether the closed simplex ``s`` may carry an allowable i-chain."""
    if s not in F.ambient:
        raise FiltrationError(f"{list(s)} is not in the complex")
    p = _values(p)
    n = F.n
    meets = F.meet_dimensions(s)
    for j in range(2, n + 1):
        if meets[n - j] > i - j + p[j]:
            return False
    return True


def chain_allowable(coeffs: Mapping[Simplex, object], i: int, p, F: FilteredComplex) -> bool:
    """Allowability of a chain, computed from the closure of its support."""
    supp = [tuple(s) for s, v in coeffs.items() if v]
    if not supp:
        return True
    closure = SimplicialComplex(supp)
    p = _values(p)
    n = F.n
    for j in range(2, n + 1):
        X = F._sets[n - j]
        d = max((len(f) - 1 for f in closure if f in X), default=NEG_INF)
        if d > i - j + p[j]:
            return False
    return True


@dataclass
class IntersectionComplex:
    """The intersection chain complex of a filtered complex."""

    perversity: Tuple[int, ...]
    filtered: FilteredComplex
    allowable: Dict[int, Tuple[Simplex, ...]]
    spaces: Dict[int, Subspace]

    @property
    def n(self) -> int:
        return self.filtered.n

    def dim(self, i: int) -> int:
        return self.spaces[i].dim

    @cached_property
    def graded(self) -> GradedComplex:
        """The complex in its own bases, with induced boundary matrices."""
        K = self.filtered.ambient
        dims = {i: self.spaces[i].dim for i in range(self.n + 1)}
        diffs = {}
        for i in range(1, self.n + 1):
            d = K.boundary_matrix(i)
            cols = []
            for v in self.spaces[i].vectors():
                w = d.apply(v)
                c = self.spaces[i - 1].coordinates(w)
                if c is None:
                    raise AssertionError(f"boundary leaves IC_{i - 1}")
                cols.append({k: x for k, x in enumerate(c) if x})
            diffs[i] = RationalMatrix.from_columns(dims[i - 1], cols)
        return GradedComplex(dims, diffs, "chain")

    def betti(self) -> Dict[int, int]:
        return self.graded.betti()


def intersection_chain_complex(F: FilteredComplex, p, *, strict: bool = True) -> IntersectionComplex:
    """Compute ``IC^p_*`` as subspaces of the simplicial chain groups.

    With ``strict=False`` any integer sequence is accepted in place of a GM
    perversity; the allowability inequalities are evaluated as written.
    """
    if strict:
        if not isinstance(p, Perversity):
            p = Perversity(tuple(p))
        if p.n != F.n:
            raise PerversityError(f"perversity has n={p.n}, complex has n={F.n}")
    vals = _values(p)
    if len(vals) != F.n + 1:
        raise PerversityError(f"need {F.n + 1} perversity values, got {len(vals)}")
    K = F.ambient
    n = F.n
    allowable = {
        i: tuple(s for s in K.simplices(i) if simplex_allowable(s, i, vals, F)) for i in range(n + 1)
    }
    spaces: Dict[int, Subspace] = {}
    for i in range(n + 1):
        cols = [K.index(s) for s in allowable[i]]
        dim_i = len(K.simplices(i))
        if i == 0:
            vecs = [{c: Fraction(1)} for c in cols]
            spaces[i] = Subspace.from_vectors(dim_i, vecs)
            continue
        okrows = {K.index(s) for s in allowable[i - 1]}
        bad = [r for r in range(len(K.simplices(i - 1))) if r not in okrows]
        d = K.boundary_matrix(i).select_columns(cols).select_rows(bad)
        kern = Subspace.kernel(d)
        vecs = [{cols[k]: x for k, x in v.items()} for v in kern.vectors()]
        spaces[i] = Subspace.from_vectors(dim_i, vecs)
    return IntersectionComplex(vals, F, allowable, spaces)


def intersection_betti(F: FilteredComplex, p, *, strict: bool = True) -> Dict[int, int]:
    return intersection_chain_complex(F, p, strict=strict).betti()


def cone_formula_expected(link_betti: Mapping[int, int], n: int, p_n: int) -> Dict[int, int]:
    """Local intersection homology of a cone: H_i(L) below ``n - p_n - 1``, 0 above."""
    cut = n - p_n - 1
    return {i: (link_betti.get(i, 0) if i < cut else 0) for i in range(n + 1)}


@dataclass
class DualityReport:
    perversity: Tuple[int, ...]
    complement: Tuple[int, ...]
    betti_p: Dict[int, int]
    betti_q: Dict[int, int]
    pseudomanifold: bool
    diagnostics: List[str]

    @property
    def symmetric(self) -> Optional[bool]:
        if not self.pseudomanifold:
            return None
        n = len(self.perversity) - 1
        return all(self.betti_p[i] == self.betti_q[n - i] for i in range(n + 1))

    def rows(self) -> List[Tuple[int, int, int]]:
        n = len(self.perversity) - 1
        return [(i, self.betti_p.get(i, 0), self.betti_q.get(n - i, 0)) for i in range(n + 1)]


def duality_rank_check(F: FilteredComplex, p: Perversity) -> DualityReport:
    """Compare rank IH^p_i with rank IH^q_{n-i} for the complementary q."""
    ok, diag = F.ambient.is_pseudomanifold()
    q = complement(p)
    if not ok:
        return DualityReport(p.values, q.values, {}, {}, False, diag)
    return DualityReport(p.values, q.values, intersection_betti(F, p), intersection_betti(F, q), True, [])


def chain_containment(F: FilteredComplex, p: Perversity, p2: Perversity) -> bool:
    """``IC^p_i`` contained in ``IC^p2_i`` in every degree (basis containment)."""
    a = intersection_chain_complex(F, p)
    b = intersection_chain_complex(F, p2)
    return all(b.spaces[i].contains_subspace(a.spaces[i]) for i in range(F.n + 1))
