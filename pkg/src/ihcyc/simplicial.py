"""Finite simplicial complexes, chains and the standard constructions."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exactalg import GradedComplex, RationalMatrix, rank, smith_normal_form

Simplex = Tuple[Hashable, ...]


class SimplicialError(ValueError):
    pass


def simplex(vertices: Iterable[Hashable]) -> Simplex:
    """Normalise a vertex collection to a canonical simplex (sorted tuple)."""
    vs = tuple(sorted(vertices))
    if not vs:
        raise SimplicialError("a simplex needs at least one vertex")
    if len(set(vs)) != len(vs):
        raise SimplicialError(f"repeated vertex in {vs}")
    return vs


def faces(s: Simplex) -> List[Simplex]:
    """All nonempty faces of ``s`` (including ``s``)."""
    return [f for k in range(1, len(s) + 1) for f in combinations(s, k)]


def boundary_faces(s: Simplex) -> List[Tuple[int, Simplex]]:
    """Codimension-one faces with their incidence signs."""
    return [((-1) ** i, s[:i] + s[i + 1:]) for i in range(len(s))] if len(s) > 1 else []


class SimplicialComplex:
    """A face-closed finite set of simplices.

    Simplices of each dimension are kept in lexicographic order; that order
    fixes the bases of all chain groups.
    """

    def __init__(self, simplices: Iterable[Iterable[Hashable]] = (), *, closed: bool = False):
        sset = {simplex(s) for s in simplices}
        if not closed:
            sset = {f for s in sset for f in faces(s)}
        else:
            for s in sset:
                for _, f in boundary_faces(s):
                    if f not in sset:
                        raise SimplicialError(f"face {f} of {s} is missing")
        by_dim: Dict[int, List[Simplex]] = {}
        for s in sset:
            by_dim.setdefault(len(s) - 1, []).append(s)
        self._by_dim = {d: tuple(sorted(v)) for d, v in sorted(by_dim.items())}
        self._index = {d: {s: i for i, s in enumerate(v)} for d, v in self._by_dim.items()}
        self._all = frozenset(sset)

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[Hashable]]) -> "SimplicialComplex":
        return cls(facets)

    # -- basic queries -----------------------------------------------------

    @property
    def dimension(self) -> int:
        return max(self._by_dim) if self._by_dim else -1

    @property
    def vertices(self) -> Tuple[Hashable, ...]:
        return tuple(s[0] for s in self._by_dim.get(0, ()))

    def simplices(self, dim: Optional[int] = None) -> Tuple[Simplex, ...]:
        if dim is None:
            return tuple(s for d in sorted(self._by_dim) for s in self._by_dim[d])
        return self._by_dim.get(dim, ())

    def index(self, s: Simplex) -> int:
        return self._index[len(s) - 1][s]

    def facets(self) -> Tuple[Simplex, ...]:
        cofaced = set()
        for s in self._all:
            for _, f in boundary_faces(s):
                cofaced.add(f)
        return tuple(sorted((s for s in self._all if s not in cofaced), key=lambda s: (len(s), s)))

    def f_vector(self) -> Tuple[int, ...]:
        return tuple(len(self._by_dim.get(d, ())) for d in range(self.dimension + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector()))

    def is_empty(self) -> bool:
        return not self._all

    def __contains__(self, s) -> bool:
        return tuple(s) in self._all

    def __iter__(self):
        return iter(self.simplices())

    def __len__(self) -> int:
        return len(self._all)

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self._all == other._all

    def __hash__(self):
        return hash(self._all)

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dimension}, f={self.f_vector()})"

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self._all <= other._all

    # -- chains ------------------------------------------------------------

    def boundary_matrix(self, i: int) -> RationalMatrix:
        """Matrix of the boundary map C_i -> C_{i-1} in lexicographic bases."""
        if not 1 <= i <= self.dimension:
            raise SimplicialError(f"boundary degree {i} outside 1..{self.dimension}")
        rows = self._index[i - 1]
        entries = {}
        for j, s in enumerate(self._by_dim[i]):
            for sign, f in boundary_faces(s):
                entries[rows[f], j] = sign
        return RationalMatrix(len(self._by_dim[i - 1]), len(self._by_dim[i]), entries)

    def chain_complex(self) -> GradedComplex:
        n = self.dimension
        if n < 0:
            return GradedComplex({0: 0})
        dims = {d: len(self._by_dim.get(d, ())) for d in range(n + 1)}
        diffs = {i: self.boundary_matrix(i) for i in range(1, n + 1)}
        return GradedComplex(dims, diffs, "chain")

    def cochain_complex(self) -> GradedComplex:
        return self.chain_complex().dual()

    def betti(self) -> Dict[int, int]:
        return self.chain_complex().betti()

    def torsion(self) -> Dict[int, Tuple[int, ...]]:
        """Torsion coefficients of integral homology (elementary divisors > 1)."""
        out = {}
        for i in range(self.dimension + 1):
            if i + 1 <= self.dimension:
                out[i] = tuple(d for d in smith_normal_form(self.boundary_matrix(i + 1)) if d > 1)
            else:
                out[i] = ()
        return out

    # -- constructions -----------------------------------------------------

    def _fresh_apex(self, taken=()) -> Hashable:
        vs = set(self.vertices) | set(taken)
        if all(isinstance(v, int) for v in vs):
            return max(vs, default=-1) + 1
        k = 0
        while f"a{k}" in vs:
            k += 1
        return f"a{k}"

    def cone(self, apex: Optional[Hashable] = None) -> "SimplicialComplex":
        """Cone with the given apex; the apex must be a new vertex."""
        if apex is None:
            apex = self._fresh_apex()
        if apex in set(self.vertices):
            raise SimplicialError(f"apex {apex!r} is already a vertex")
        new = [s for s in self._all] + [s + (apex,) for s in self._all] + [(apex,)]
        return SimplicialComplex(new, closed=True)

    def suspension(self, apexes: Optional[Tuple[Hashable, Hashable]] = None) -> "SimplicialComplex":
        """Union of two cones over ``self`` glued along ``self``."""
        if apexes is None:
            a = self._fresh_apex()
            b = self._fresh_apex(taken=(a,))
            apexes = (a, b)
        a, b = apexes
        if a == b:
            raise SimplicialError("suspension apexes must differ")
        taken = set(self.vertices)
        for x in apexes:
            if x in taken:
                raise SimplicialError(f"apex {x!r} is already a vertex")
        new = list(self._all) + [(a,), (b,)]
        new += [s + (a,) for s in self._all] + [s + (b,) for s in self._all]
        return SimplicialComplex(new, closed=True)

    def barycentric_subdivision(self) -> Tuple["SimplicialComplex", Dict[Simplex, Simplex]]:
        """First barycentric subdivision and the carrier map.

        New vertices are the simplices of ``self``; simplices are chains of
        faces. The carrier map sends each new vertex to its simplex.
        """
        order = sorted(self._all, key=lambda s: (len(s), s))
        chains: List[Tuple[Simplex, ...]] = []

        def extend(chain):
            chains.append(chain)
            top = chain[-1]
            for s in order:
                if len(s) > len(top) and set(top) <= set(s):
                    extend(chain + (s,))

        for s in order:
            extend((s,))
        sd = SimplicialComplex(chains, closed=True)
        carrier = {v[0]: v[0] for v in sd.simplices(0)}
        return sd, carrier

    def is_pseudomanifold(self) -> Tuple[bool, List[str]]:
        """Homogeneity and the two-cofaces condition, with diagnostics."""
        n = self.dimension
        diag = []
        if n < 0:
            return False, ["empty complex"]
        top = self._by_dim[n]
        covered = {f for s in top for f in faces(s)}
        for s in self.simplices():
            if s not in covered:
                diag.append(f"simplex {list(s)} is not a face of any {n}-simplex")
        if n >= 1:
            count: Dict[Simplex, int] = {}
            for s in top:
                for _, f in boundary_faces(s):
                    count[f] = count.get(f, 0) + 1
            for f in self._by_dim[n - 1]:
                c = count.get(f, 0)
                if c != 2:
                    diag.append(f"{n - 1}-simplex {list(f)} has {c} cofaces (need 2)")
        return not diag, diag


class Chain:
    """A finitely supported rational chain on a complex."""

    def __init__(self, complex: SimplicialComplex, degree: int, coeffs: Mapping[Sequence, object]):
        self.complex = complex
        self.degree = degree
        c = {}
        for s, v in coeffs.items():
            s = simplex(s)
            if len(s) - 1 != degree:
                raise SimplicialError(f"{s} has dimension {len(s) - 1}, not {degree}")
            if s not in complex:
                raise SimplicialError(f"{s} is not in the complex")
            v = Fraction(v)
            if v:
                c[s] = c.get(s, 0) + v
        self.coeffs = {s: v for s, v in c.items() if v}

    def boundary(self) -> "Chain":
        out: Dict[Simplex, Fraction] = {}
        for s, v in self.coeffs.items():
            for sign, f in boundary_faces(s):
                out[f] = out.get(f, 0) + sign * v
        return Chain(self.complex, self.degree - 1, out) if self.degree > 0 else Chain(self.complex, -1, {})

    def support(self) -> SimplicialComplex:
        """Closure of the simplices carrying nonzero coefficients."""
        return SimplicialComplex(self.coeffs)

    def vector(self) -> Dict[int, Fraction]:
        return {self.complex.index(s): v for s, v in self.coeffs.items()}

    def __eq__(self, other):
        return isinstance(other, Chain) and self.degree == other.degree and self.coeffs == other.coeffs

    def __repr__(self):
        terms = " + ".join(f"{v}*{list(s)}" for s, v in sorted(self.coeffs.items()))
        return f"Chain[{self.degree}]({terms or '0'})"


# -- standard spaces ---------------------------------------------------------


def point() -> SimplicialComplex:
    return SimplicialComplex([(0,)])


def full_simplex(n: int) -> SimplicialComplex:
    return SimplicialComplex([tuple(range(n + 1))])


def simplex_boundary(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex, a triangulated (n-1)-sphere."""
    return SimplicialComplex(combinations(range(n + 1), n))


def hollow_triangle() -> SimplicialComplex:
    return simplex_boundary(2)


def polygon(k: int, offset: int = 0) -> SimplicialComplex:
    """A k-gon circle on vertices offset..offset+k-1."""
    return SimplicialComplex((offset + i, offset + (i + 1) % k) for i in range(k))


def hexagon() -> SimplicialComplex:
    return polygon(6)


def two_hexagons() -> SimplicialComplex:
    return SimplicialComplex(list(polygon(6).facets()) + list(polygon(6, offset=6).facets()))


def torus7() -> SimplicialComplex:
    """The 7-vertex (Moebius-Csaszar) triangulation of the torus."""
    tris = []
    for i in range(7):
        tris.append((i, (i + 1) % 7, (i + 3) % 7))
        tris.append((i, (i + 2) % 7, (i + 3) % 7))
    return SimplicialComplex(tris)


def sphere2() -> SimplicialComplex:
    return simplex_boundary(3)


def sphere3() -> SimplicialComplex:
    return simplex_boundary(4)
