"""Pole/pinching control parameters, perversities, and truncated cone models.

A stratum of codimension j carries a pinching number ``alpha_j`` and a control
number ``beta_j``. The pole exponent ``floor(beta_j / alpha_j)`` determines the
perversity ``p_j = j - 2 - floor(beta_j / alpha_j)``. On a cone over a closed
manifold L the controlled complex has the cohomology of L up to a cutoff and
zero above; this module models it by canonical truncation of the cochains of
L and compares it against chain-level intersection homology of the cone.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Dict, List, Mapping, Optional, Tuple, Union

from .cyclic import PeriodicResult, mixed_from_cochain, periodic_betti
from .exactalg import GradedComplex, RationalMatrix, Subspace
from .simplicial import SimplicialComplex
from .stratified import Perversity, PerversityError, cone_filtration, intersection_betti

CONVENTIONS = ("m-1", "m")


class ControlError(ValueError):
    pass


def exact_rational(x) -> Fraction:
    """Coerce to Fraction; floats are refused so near-integer ratios stay decidable."""
    if isinstance(x, bool):
        raise ControlError("booleans are not rationals")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if any(ch in s for ch in ".eE"):
            raise ControlError(f"{x!r} is not an exact fraction (use p/q)")
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ControlError(f"cannot parse rational {x!r}") from exc
    raise ControlError(f"exact rational required, got {type(x).__name__}")


def floor_ratio(alpha, beta) -> int:
    """``floor(beta / alpha)``; refuses integral ratios."""
    alpha, beta = exact_rational(alpha), exact_rational(beta)
    if alpha <= 0 or beta <= 0:
        raise ControlError("alpha and beta must be positive")
    r = beta / alpha
    if r.denominator == 1:
        raise ControlError(f"beta/alpha = {r} is an integer; the pole order must be non-integral")
    return floor(r)


@dataclass(frozen=True)
class ControlParams:
    """Per-codimension pinching (alpha) and control (beta) numbers.

    Only codimensions listed in ``alpha`` are active (carry a nonempty stratum).
    """

    n: int
    alpha: Mapping[int, Fraction]
    beta: Mapping[int, Fraction]

    def __post_init__(self):
        a = {int(j): exact_rational(v) for j, v in dict(self.alpha).items()}
        b = {int(j): exact_rational(v) for j, v in dict(self.beta).items()}
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        if set(a) != set(b):
            raise ControlError(f"alpha and beta must cover the same codimensions: {sorted(a)} vs {sorted(b)}")
        for j in a:
            if not 1 <= j <= self.n:
                raise ControlError(f"codimension {j} outside 1..{self.n}")
            try:
                floor_ratio(a[j], b[j])
            except ControlError as exc:
                raise ControlError(f"codimension {j}: {exc}") from None

    @property
    def active(self) -> Tuple[int, ...]:
        return tuple(sorted(self.alpha))

    @classmethod
    def single(cls, n: int, alpha, beta) -> "ControlParams":
        return cls(n, {n: alpha}, {n: beta})

    @classmethod
    def for_exponent(cls, n: int, m: int) -> "ControlParams":
        """Codimension-n parameters with pole exponent m (alpha = 1, beta = m + 1/2)."""
        return cls.single(n, 1, Fraction(2 * m + 1, 2))


def pole_exponent(params: ControlParams, j: int) -> int:
    if j not in params.alpha:
        raise ControlError(f"codimension {j} is not active")
    return floor_ratio(params.alpha[j], params.beta[j])


def perversity_from_control(params: ControlParams) -> Perversity:
    """``p_j = j - 2 - floor(beta_j/alpha_j)`` on active codimensions.

    Consecutive active codimensions must satisfy the floor condition
    ``m_j <= m_{j'} <= m_j + (j' - j)``. Inactive codimensions are filled with
    the smallest values compatible with the growth axioms.
    """
    n = params.n
    act = params.active
    m = {j: pole_exponent(params, j) for j in act}
    for a, b in zip(act, act[1:]):
        if not m[a] <= m[b] <= m[a] + (b - a):
            raise ControlError(
                f"floor condition violated at j={b}: [beta/alpha] goes from {m[a]} (j={a}) to {m[b]}"
            )
    p = {j: j - 2 - m[j] for j in act}
    for j in act:
        if p[j] < 0:
            raise ControlError(f"over-controlled at j={j}: p_{j} = {p[j]} < 0")
    vals = [0] * (n + 1)
    for j in range(3, n + 1):
        if j in p:
            vals[j] = p[j]
            continue
        nxt = next((b for b in act if b > j), None)
        vals[j] = vals[j - 1] if nxt is None else max(vals[j - 1], p[nxt] - (nxt - j))
    for j in (1, 2):
        if j in p and p[j] != 0:
            raise ControlError(f"over-controlled at j={j}: p_{j} = {p[j]}")
    # the floor condition is exactly the GM growth condition; Perversity re-checks it
    return Perversity(tuple(vals))


def truncate_cochain(omega: GradedComplex, t: int) -> GradedComplex:
    """Canonical truncation: unchanged below t, ``ker d^t`` in degree t, zero above."""
    if omega.direction != "cochain":
        raise ValueError("truncate_cochain needs a cochain complex")
    lo, hi = omega.lo, omega.hi
    if t >= hi:
        return omega
    dims = {k: 0 for k in range(lo, hi + 1)}
    diffs: Dict[int, RationalMatrix] = {}
    if t < lo:
        return GradedComplex(dims, {}, "cochain")
    for k in range(lo, t):
        dims[k] = omega.dims[k]
    ker = Subspace.kernel(omega.d(t))
    dims[t] = ker.dim
    for k in range(lo, t - 1):
        diffs[k] = omega.d(k)
    if t - 1 >= lo:
        d = omega.d(t - 1)
        cols = []
        for j in range(d.cols):
            c = ker.coordinates(d.column(j))
            if c is None:
                raise AssertionError("image of d^{t-1} not inside ker d^t")
            cols.append({i: x for i, x in enumerate(c) if x})
        diffs[t - 1] = RationalMatrix.from_columns(ker.dim, cols)
    return GradedComplex(dims, diffs, "cochain")


@dataclass
class TruncatedConeModel:
    """Finite model of the controlled complex of a cone: truncated link cochains."""

    link_cochains: GradedComplex
    cutoff: int
    truncated: GradedComplex = field(init=False)

    def __post_init__(self):
        self.truncated = truncate_cochain(self.link_cochains, self.cutoff)

    @classmethod
    def for_link(cls, link: SimplicialComplex, cutoff: int) -> "TruncatedConeModel":
        return cls(link.cochain_complex(), cutoff)

    def betti(self) -> Dict[int, int]:
        return self.truncated.betti()


def cutoff_for(convention: str, m: int) -> int:
    if convention == "m-1":
        return m - 1
    if convention == "m":
        return m
    raise ValueError(f"unknown cutoff convention {convention!r}; use one of {CONVENTIONS}")


def cone_perversity_values(n: int, p_n: int) -> Tuple[int, ...]:
    """Values for a cone with one singular point; only p_n is effective there.

    Lower entries are the smallest GM-compatible ones; ``p_n`` itself is
    kept as given even when it falls outside the GM range.
    """
    vals = [max(0, p_n - (n - j)) if j >= 2 else 0 for j in range(n + 1)]
    if n >= 0:
        vals[n] = p_n if n >= 2 else 0
    return tuple(vals)


def cone_intersection_betti(link: SimplicialComplex, p_n: int) -> Dict[int, int]:
    """Chain-level IH of the cone over ``link`` for the given top perversity value."""
    F = cone_filtration(link)
    vals = cone_perversity_values(F.n, p_n)
    try:
        Perversity(vals)
        strict = True
    except PerversityError:
        strict = False
    return intersection_betti(F, vals, strict=strict)


def _pad(b: Mapping[int, int], n: int) -> Dict[int, int]:
    return {i: b.get(i, 0) for i in range(n + 1)}


def _as_params(link: SimplicialComplex, params: Union[ControlParams, int]) -> ControlParams:
    n = link.dimension + 1
    if isinstance(params, ControlParams):
        if params.n != n or params.active != (n,):
            raise ControlError(f"single-codimension parameters at j={n} expected")
        return params
    return ControlParams.for_exponent(n, int(params))


@dataclass
class Theorem0Report:
    n: int
    m: int
    p_n: int
    gm_valid: bool
    ih: Dict[int, int]
    truncations: Dict[str, Dict[int, int]]

    @property
    def matches(self) -> Dict[str, bool]:
        return {c: self.truncations[c] == self.ih for c in self.truncations}

    @property
    def matching(self) -> List[str]:
        return [c for c, ok in self.matches.items() if ok]

    @property
    def decisive(self) -> bool:
        return len(self.matching) == 1


def theorem0_crosscheck(link: SimplicialComplex, params: Union[ControlParams, int],
                        cutoff_convention: str = "both") -> Theorem0Report:
    """Compare truncated link cohomology against chain-level IH of the cone."""
    params = _as_params(link, params)
    n = params.n
    m = pole_exponent(params, n)
    p_n = n - 2 - m
    ih = _pad(cone_intersection_betti(link, p_n), n)
    convs = CONVENTIONS if cutoff_convention == "both" else (cutoff_convention,)
    omega = link.cochain_complex()
    truncs = {c: _pad(truncate_cochain(omega, cutoff_for(c, m)).betti(), n) for c in convs}
    return Theorem0Report(n, m, p_n, 0 <= p_n <= max(n - 2, 0), ih, truncs)


@dataclass
class Theorem3Report:
    n: int
    m: int
    convention: str
    model: PeriodicResult
    ih_p: Dict[int, int]
    ih_q: Dict[int, int]

    @staticmethod
    def parity_sums(b: Mapping[int, int]) -> Tuple[int, int]:
        return (sum(v for k, v in b.items() if k % 2 == 0), sum(v for k, v in b.items() if k % 2 == 1))

    @property
    def sums_p(self) -> Tuple[int, int]:
        return self.parity_sums(self.ih_p)

    @property
    def sums_q(self) -> Tuple[int, int]:
        return self.parity_sums(self.ih_q)

    @property
    def agrees_p(self) -> bool:
        return self.model.stabilized and self.model.as_tuple() == self.sums_p

    @property
    def agrees_q(self) -> bool:
        return self.model.stabilized and self.model.as_tuple() == self.sums_q


def theorem3_crosscheck(link: SimplicialComplex, params: Union[ControlParams, int],
                        convention: str = "m") -> Theorem3Report:
    """Periodic cyclic ranks of the truncated de Rham model vs parity sums of cone IH.

    Compared against IH for ``p_n = n - 2 - m`` and for ``q_n = m - 1``.
    """
    params = _as_params(link, params)
    n = params.n
    m = pole_exponent(params, n)
    model = TruncatedConeModel.for_link(link, cutoff_for(convention, m))
    K = max(6, link.dimension + 4)
    hp = periodic_betti(mixed_from_cochain(model.truncated), K)
    ih_p = _pad(cone_intersection_betti(link, n - 2 - m), n)
    ih_q = _pad(cone_intersection_betti(link, m - 1), n)
    return Theorem3Report(n, m, convention, hp, ih_p, ih_q)
