"""Built-in cross-check suites.

Each suite returns a list of :class:`Check` records. A failing check is
data, not an exception.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Dict, List

from . import control, cyclic, simplicial, stratified
from .stratified import FilteredComplex


@dataclass
class Check:
    suite: str
    check: str
    expected: Any
    actual: Any
    passed: bool

    def record(self) -> Dict[str, Any]:
        return {"record": "check", "suite": self.suite, "check": self.check,
                "expected": self.expected, "actual": self.actual, "passed": self.passed}


def bundled_links() -> Dict[str, simplicial.SimplicialComplex]:
    return {
        "hexagon": simplicial.hexagon(),
        "two_hexagons": simplicial.two_hexagons(),
        "torus7": simplicial.torus7(),
    }


def bundled_filtered() -> Dict[str, FilteredComplex]:
    out = {f"cone({k})": stratified.cone_filtration(L) for k, L in bundled_links().items()}
    out["cone(sphere3)"] = stratified.cone_filtration(simplicial.sphere3())
    out["susp(hexagon)"] = stratified.suspension_filtration(simplicial.hexagon())
    out["susp(torus7)"] = stratified.suspension_filtration(simplicial.torus7())
    out["torus7"] = FilteredComplex.trivial(simplicial.torus7())
    return out


def bundled_cochains():
    return {
        "point": simplicial.point().cochain_complex(),
        "circle": simplicial.hexagon().cochain_complex(),
        "torus": simplicial.torus7().cochain_complex(),
        "sphere2": simplicial.sphere2().cochain_complex(),
    }


def _deg(b: Dict[int, int]) -> List[int]:
    return [b[k] for k in sorted(b)]


def suite_cone(K: int) -> List[Check]:
    out = []
    for name, L in {**bundled_links(), "sphere3": simplicial.sphere3()}.items():
        n = L.dimension + 1
        F = stratified.cone_filtration(L)
        for p in stratified.all_perversities(n):
            got = stratified.intersection_betti(F, p)
            want = stratified.cone_formula_expected(L.betti(), n, p[n])
            out.append(Check("cone", f"cone({name}) p={p}", _deg(want), _deg(got), got == want))
    return out


def suite_duality(K: int) -> List[Check]:
    out = []
    for name, F in bundled_filtered().items():
        if not F.ambient.is_pseudomanifold()[0]:
            continue
        for p in stratified.all_perversities(F.n):
            r = stratified.duality_rank_check(F, p)
            n = F.n
            out.append(Check("duality", f"{name} p={p} q={stratified.Perversity(r.complement)}",
                             [r.betti_q[n - i] for i in range(n + 1)], _deg(r.betti_p), bool(r.symmetric)))
    return out


def suite_factorization(K: int) -> List[Check]:
    out = []
    for name, F in bundled_filtered().items():
        ps = stratified.all_perversities(F.n)
        for p in ps:
            for p2 in ps:
                if p <= p2:
                    ok = stratified.chain_containment(F, p, p2)
                    out.append(Check("factorization", f"{name} IC^{p} in IC^{p2}", True, ok, ok))
    return out


def suite_mixed(K: int) -> List[Check]:
    out = []
    for name, A in cyclic.bundled_algebras().items():
        C = cyclic.HochschildComplex(A, K)
        bad = []
        for k in range(K + 1):
            t = C.tau(k)
            P = t
            for _ in range(k):
                P = P @ t
            if P != cyclic.RationalMatrix.identity(C.dim(k)):
                bad.append(f"tau^{k + 1} != id")
        M = cyclic.mixed_from_hochschild(C, validate=False)
        bad += M.identity_failures()
        out.append(Check("mixed", f"{name} K={K} tau/b/B identities", [], bad, not bad))
    for name, om in bundled_cochains().items():
        M = cyclic.mixed_from_cochain(om)
        bad = M.identity_failures()
        out.append(Check("mixed", f"deRham({name}) identities", [], bad, not bad))
    return out


HH_ORACLE = {
    "Q": [1, 0, 0, 0, 0],
    "QxQ": [2, 0, 0, 0],
    "Q[x]/(x^2)": [2, 1, 1, 1],
    "M2(Q)": [1, 0, 0, 0],
}


def suite_hochschild(K: int) -> List[Check]:
    out = []
    for name, want in HH_ORACLE.items():
        A = cyclic.bundled_algebras()[name]
        got = cyclic.hh_betti(A, max(K, len(want)))
        got = [got[k] for k in range(len(want))]
        out.append(Check("hochschild", f"HH({name})", want, got, got == want))
    return out


def suite_reduced(K: int) -> List[Check]:
    out = []
    for name, A in cyclic.bundled_algebras().items():
        full = cyclic.HochschildComplex(A, K).betti()
        red = cyclic.reduced_complex(A, K).betti()
        out.append(Check("reduced", f"{name} reduced vs full K={K}", _deg(full), _deg(red), full == red))
    return out


def suite_connes(K: int) -> List[Check]:
    out = []
    for name, A in cyclic.bundled_algebras().items():
        a = cyclic.cyclic_betti(cyclic.mixed_from_algebra(A, K), K)
        b = cyclic.connes_quotient_cyclic(A, K)
        a = [a[k] for k in range(K - 1)]
        b = [b[k] for k in range(K - 1)]
        out.append(Check("connes", f"{name} HC bicomplex vs C/(1-tau) K={K}", a, b, a == b))
    return out


def suite_sbi(K: int) -> List[Check]:
    out = []
    Ms = {name: cyclic.mixed_from_algebra(A, K) for name, A in cyclic.bundled_algebras().items()}
    Ms.update({f"deRham({k})": cyclic.mixed_from_cochain(om) for k, om in bundled_cochains().items()})
    for name, M in Ms.items():
        rep = cyclic.sbi_check(M, K)
        bad = [f"{n.node}_{n.degree}" for n in rep.nodes if not n.exact]
        out.append(Check("sbi", f"{name} exact through degree {K - 2}", [], bad, rep.exact))
    return out


def suite_periodic(K: int) -> List[Check]:
    out = []
    K = max(K, 6)
    for name, om in bundled_cochains().items():
        b = om.betti()
        want = [sum(v for k, v in b.items() if k % 2 == 0), sum(v for k, v in b.items() if k % 2 == 1)]
        res = cyclic.periodic_betti(cyclic.mixed_from_cochain(om), K)
        got = list(res.as_tuple())
        out.append(Check("periodic", f"HP(deRham({name})) K={K}", want, got, res.stabilized and got == want))
    return out


def suite_theorem0(K: int, convention: str = "both") -> List[Check]:
    out = []
    reports = []
    for name, L in bundled_links().items():
        for m in (1, 2):
            r = control.theorem0_crosscheck(L, m, convention)
            reports.append(r)
            out.append(Check("theorem0", f"{name} m={m} p_n={r.p_n} matching conventions",
                             "exactly one", r.matching, r.decisive))
    decided = {c for r in reports if r.decisive for c in r.matching}
    resolved = sorted(decided)[0] if len(decided) == 1 else None
    out.append(Check("theorem0", "single convention across cases", "one", sorted(decided),
                     resolved is not None and all(resolved in r.matching for r in reports)))
    return out


def resolved_convention() -> str:
    decided = set()
    for L in bundled_links().values():
        for m in (1, 2):
            r = control.theorem0_crosscheck(L, m)
            if r.decisive:
                decided.update(r.matching)
    if len(decided) != 1:
        raise RuntimeError(f"no single cutoff convention: {sorted(decided)}")
    return decided.pop()


def suite_theorem3(K: int, convention: str = "both") -> List[Check]:
    conv = resolved_convention() if convention == "both" else convention
    out = []
    for name, L in bundled_links().items():
        for m in (1, 2):
            r = control.theorem3_crosscheck(L, m, conv)
            out.append(Check("theorem3", f"{name} m={m} convention={conv} HP vs sum IH^p",
                             list(r.sums_p), list(r.model.as_tuple()), r.agrees_p))
    return out


SUITES: Dict[str, Callable[..., List[Check]]] = {
    "cone": suite_cone,
    "duality": suite_duality,
    "factorization": suite_factorization,
    "mixed": suite_mixed,
    "hochschild": suite_hochschild,
    "reduced": suite_reduced,
    "connes": suite_connes,
    "sbi": suite_sbi,
    "periodic": suite_periodic,
    "theorem0": suite_theorem0,
    "theorem3": suite_theorem3,
}


def run_suite(name: str, K: int = cyclic.DEFAULT_MAX_DEGREE, convention: str = "both") -> List[Check]:
    if name == "all":
        out = []
        for key in SUITES:
            out += run_suite(key, K, convention)
        return out
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; available: all, {', '.join(SUITES)}")
    fn = SUITES[name]
    if name in ("theorem0", "theorem3"):
        return fn(K, convention)
    return fn(K)
