"""Acceptance criteria, one marked group per criterion.

The terminal summary prints one PASS/FAIL line per criterion.
"""
import io
from contextlib import redirect_stdout
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ihcyc import cli, control, cyclic, simplicial, stratified, verify
from ihcyc.control import ControlError, ControlParams
from ihcyc.stratified import Perversity, PerversityError

ALGEBRAS = cyclic.bundled_algebras()
LINKS = verify.bundled_links()
COCHAINS = verify.bundled_cochains()


def crit(n, title):
    return pytest.mark.criterion(n, title)


# 1 ---------------------------------------------------------------------------

C1 = crit(1, "cone formula on hexagon, two hexagons, T^2 for every GM p_n")


@C1
@pytest.mark.parametrize("name", sorted(LINKS))
def test_cone_formula(name):
    L = LINKS[name]
    n = L.dimension + 1
    F = stratified.cone_filtration(L)
    seen = set()
    for p in stratified.all_perversities(n):
        seen.add(p[n])
        got = stratified.intersection_betti(F, p)
        assert got == stratified.cone_formula_expected(L.betti(), n, p[n]), p
    assert seen == set(range(0, n - 1))


# 2 ---------------------------------------------------------------------------

C2 = crit(2, "perversity axioms, t = p + q, control-derived perversities are GM")


@C2
@pytest.mark.parametrize("n", range(2, 7))
def test_perversity_arithmetic(n):
    t = stratified.total_perversity(n)
    z = stratified.zero_perversity(n)
    assert t.values == tuple(max(j - 2, 0) for j in range(n + 1))
    assert stratified.complement(z) == t and stratified.complement(t) == z
    ps = stratified.all_perversities(n)
    assert len(ps) == 2 ** max(n - 2, 0)
    for p in ps:
        q = stratified.complement(p)
        assert all(p[j] + q[j] == t[j] for j in range(n + 1))
        assert stratified.complement(q) == p
        assert z <= p <= t
        assert p[0] == p[1] == p[2] == 0
        assert all(p[j] <= p[j + 1] <= p[j] + 1 for j in range(2, n))


def _floor_condition(n, m):
    act = sorted(m)
    if any(not m[a] <= m[b] <= m[a] + (b - a) for a, b in zip(act, act[1:])):
        return False
    if any(j - 2 - m[j] < 0 for j in act):
        return False
    return not any(j in m and j - 2 - m[j] != 0 for j in (1, 2))


@st.composite
def control_params(draw):
    n = draw(st.integers(2, 6))
    active = draw(st.sets(st.integers(1, n), min_size=1))
    alpha, beta, m = {}, {}, {}
    for j in sorted(active):
        a = draw(st.fractions(min_value=Fraction(1, 20), max_value=20, max_denominator=30))
        mj = draw(st.integers(0, n))
        f = draw(st.fractions(min_value=0, max_value=1, max_denominator=30).filter(lambda x: 0 < x < 1))
        alpha[j], beta[j], m[j] = a, a * (mj + f), mj
    return n, alpha, beta, m


@C2
@settings(max_examples=1200, deadline=None)
@given(control_params())
def test_control_perversity_random(data):
    n, alpha, beta, m = data
    params = ControlParams(n, alpha, beta)
    assert {j: control.pole_exponent(params, j) for j in params.active} == m
    if _floor_condition(n, m):
        p = control.perversity_from_control(params)
        assert isinstance(p, Perversity) and p.n == n
        for j in m:
            assert p[j] == j - 2 - m[j]
    else:
        with pytest.raises(ControlError):
            control.perversity_from_control(params)


@C2
@settings(max_examples=300, deadline=None)
@given(st.integers(1, 40), st.integers(1, 40))
def test_integral_ratio_rejected(a, k):
    with pytest.raises(ControlError):
        control.floor_ratio(a, a * k)


# 3 ---------------------------------------------------------------------------

C3 = crit(3, "duality rank symmetry on suspensions of hexagon and T^2")


@C3
@pytest.mark.parametrize("name", ["hexagon", "torus7"])
def test_duality_symmetry(name):
    F = stratified.suspension_filtration(LINKS[name])
    assert F.n == LINKS[name].dimension + 1
    for p in stratified.all_perversities(F.n):
        r = stratified.duality_rank_check(F, p)
        assert r.pseudomanifold
        for i, a, b in r.rows():
            assert a == b, (p, i)


# 4 ---------------------------------------------------------------------------

C4 = crit(4, "IC^p contained in IC^p' for p <= p' on all bundled filtered complexes")


@C4
@pytest.mark.parametrize("name", sorted(verify.bundled_filtered()))
def test_factorization(name):
    F = verify.bundled_filtered()[name]
    ps = stratified.all_perversities(F.n)
    for p in ps:
        for p2 in ps:
            if p <= p2:
                assert stratified.chain_containment(F, p, p2), (p, p2)


# 5 ---------------------------------------------------------------------------

C5 = crit(5, "tau^(k+1) = id, b^2 = B^2 = bB + Bb = 0 for k <= 5")


@C5
@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_operator_identities(name):
    C = cyclic.HochschildComplex(ALGEBRAS[name], 5)
    for k in range(6):
        t = C.tau(k)
        P = cyclic.RationalMatrix.identity(C.dim(k))
        for _ in range(k + 1):
            P = t @ P
        assert P == cyclic.RationalMatrix.identity(C.dim(k)), k
    M = cyclic.mixed_from_hochschild(C, validate=False)
    assert M.identity_failures() == []


# 6 ---------------------------------------------------------------------------

C6 = crit(6, "Hochschild betti against independent oracles")


@C6
@pytest.mark.parametrize("name,want", sorted(verify.HH_ORACLE.items()))
def test_hochschild_values(name, want):
    got = cyclic.hh_betti(ALGEBRAS[name], 5)
    assert [got[k] for k in range(len(want))] == want


# 7 ---------------------------------------------------------------------------

C7 = crit(7, "reduced and full Hochschild complexes have equal betti (K=5)")


@C7
@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_reduced_equals_full(name):
    A = ALGEBRAS[name]
    assert cyclic.reduced_complex(A, 5).betti() == cyclic.HochschildComplex(A, 5).betti()


# 8 ---------------------------------------------------------------------------

C8 = crit(8, "HC via C/(1-tau) equals HC via the (b,B) bicomplex")


@C8
@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_two_cyclic_definitions(name):
    K = 5
    A = ALGEBRAS[name]
    a = cyclic.cyclic_betti(cyclic.mixed_from_algebra(A, K), K)
    b = cyclic.connes_quotient_cyclic(A, K)
    assert all(a[k] == b[k] for k in range(K - 1))


# 9 ---------------------------------------------------------------------------

C9 = crit(9, "SBI sequence rank-exact in degrees <= K-2")


@C9
@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_sbi_algebras(name):
    rep = cyclic.sbi_check(cyclic.mixed_from_algebra(ALGEBRAS[name], 5), 5)
    assert rep.nodes and rep.exact


@C9
@pytest.mark.parametrize("name", sorted(COCHAINS))
def test_sbi_de_rham(name):
    rep = cyclic.sbi_check(cyclic.mixed_from_cochain(COCHAINS[name]), 5)
    assert rep.nodes and rep.exact


# 10 --------------------------------------------------------------------------

C10 = crit(10, "periodic cyclic of de Rham mixed complex is (sum even, sum odd)")


@C10
@pytest.mark.parametrize("name,want", [("point", (1, 0)), ("circle", (1, 1)), ("torus", (2, 2)), ("sphere2", (2, 0))])
def test_periodic_de_rham(name, want):
    res = cyclic.periodic_betti(cyclic.mixed_from_cochain(COCHAINS[name]), 6)
    assert res.stabilized
    assert res.as_tuple() == want


# 11 --------------------------------------------------------------------------

C11 = crit(11, "exactly one cutoff convention matches chain-level IH, the same in every case")


@C11
def test_theorem0_single_convention():
    matching = {}
    for name, L in sorted(LINKS.items()):
        for m in (1, 2):
            matching[(name, m)] = control.theorem0_crosscheck(L, m, "both").matching
    report = "; ".join(f"{k[0]} m={k[1]}: {v}" for k, v in matching.items())
    assert all(len(v) == 1 for v in matching.values()), report
    assert len({v[0] for v in matching.values()}) == 1, report


# 12 --------------------------------------------------------------------------

C12 = crit(12, "HP of truncated-cone model equals parity sums of cone IH")


@C12
@pytest.mark.parametrize("name", sorted(LINKS))
@pytest.mark.parametrize("m", [1, 2])
def test_theorem3(name, m):
    conv = verify.resolved_convention()
    r = control.theorem3_crosscheck(LINKS[name], m, conv)
    assert r.model.stabilized
    assert r.model.as_tuple() == r.sums_p


# 13 --------------------------------------------------------------------------

C13 = crit(13, "verify reports are byte-identical across runs")


def _run(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        rc = cli.main(argv)
    return rc, buf.getvalue().encode("utf-8")


@C13
def test_verify_deterministic():
    rc1, a = _run(["verify", "all", "--format", "records"])
    rc2, b = _run(["verify", "all", "--format", "records"])
    assert rc1 == rc2 == 0
    assert a == b and len(a) > 0
