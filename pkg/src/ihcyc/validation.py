"""Input coercion helpers shared by the estimator layer and the CLI."""
from __future__ import annotations

from typing import Iterable, List, Sequence, Union

from .cyclic import FiniteAlgebra
from .simplicial import SimplicialComplex
from .stratified import FilteredComplex, Perversity, PerversityError


def check_perversity(p: Union[Perversity, Sequence[int], str], n: int) -> Perversity:
    """Coerce ``p`` (a Perversity, an int sequence, or ``"p0,p1,..."``) and check its length."""
    if isinstance(p, str):
        p = tuple(int(t) for t in p.split(","))
    if not isinstance(p, Perversity):
        p = Perversity(tuple(int(v) for v in p))
    if p.n != n:
        raise PerversityError(f"perversity has n = {p.n}, expected {n}")
    return p


def check_filtered_complex(F) -> FilteredComplex:
    if isinstance(F, FilteredComplex):
        return F
    if isinstance(F, SimplicialComplex):
        return FilteredComplex.trivial(F)
    raise TypeError(f"expected FilteredComplex or SimplicialComplex, got {type(F).__name__}")


def check_algebra(A) -> FiniteAlgebra:
    if not isinstance(A, FiniteAlgebra):
        raise TypeError(f"expected FiniteAlgebra, got {type(A).__name__}")
    return A


def check_batch(X, check) -> List:
    """Accept one object or an iterable of them; always return a list."""
    if isinstance(X, (FilteredComplex, SimplicialComplex, FiniteAlgebra)):
        X = [X]
    if not isinstance(X, Iterable):
        raise TypeError("expected an object or an iterable of objects")
    out = [check(x) for x in X]
    if not out:
        raise ValueError("empty batch")
    return out
