import pytest
from hypothesis import given, settings, strategies as st

from ihcyc import simplicial as sc
from ihcyc.simplicial import Chain, SimplicialComplex, SimplicialError


@pytest.mark.parametrize(
    "K,want",
    [
        (sc.point(), {0: 1}),
        (sc.hollow_triangle(), {0: 1, 1: 1}),
        (sc.hexagon(), {0: 1, 1: 1}),
        (sc.two_hexagons(), {0: 2, 1: 2}),
        (sc.torus7(), {0: 1, 1: 2, 2: 1}),
        (sc.sphere2(), {0: 1, 1: 0, 2: 1}),
        (sc.sphere3(), {0: 1, 1: 0, 2: 0, 3: 1}),
        (sc.full_simplex(3), {0: 1, 1: 0, 2: 0, 3: 0}),
    ],
)
def test_betti(K, want):
    assert K.betti() == want


def test_torus7_shape():
    T = sc.torus7()
    assert T.f_vector() == (7, 21, 14)
    assert T.euler_characteristic() == 0
    assert T.is_pseudomanifold()[0]
    assert all(t == () for t in T.torsion().values())


def test_face_closure_and_closed_flag():
    K = SimplicialComplex([(0, 1, 2)])
    assert len(K.simplices(1)) == 3
    with pytest.raises(SimplicialError):
        SimplicialComplex([(0, 1, 2)], closed=True)


def test_boundary_matrix_range():
    with pytest.raises(SimplicialError):
        sc.hexagon().boundary_matrix(5)


def test_boundary_squares_to_zero():
    T = sc.torus7()
    assert (T.boundary_matrix(1) @ T.boundary_matrix(2)).is_zero()


def test_cone_and_suspension():
    L = sc.torus7()
    C = L.cone()
    assert all(v == 0 for k, v in C.betti().items() if k > 0)
    S = L.suspension()
    assert S.betti() == {0: 1, 1: 0, 2: 2, 3: 1}
    assert sc.hexagon().suspension().betti() == sc.sphere2().betti()


def test_barycentric_subdivision_preserves_homology():
    K = sc.hollow_triangle()
    B, carrier = K.barycentric_subdivision()
    assert B.betti() == K.betti()
    assert len(B.simplices(0)) == len(K.simplices())
    assert set(carrier.values()) <= set(K.simplices())


def test_pseudomanifold_diagnostics():
    ok, diag = SimplicialComplex([(0, 1, 2), (0, 1, 3), (0, 1, 4)]).is_pseudomanifold()
    assert not ok and diag


def test_chain_boundary():
    c = Chain(sc.full_simplex(2), 2, {(0, 1, 2): 1})
    assert c.boundary().boundary().vector() == {}


@settings(max_examples=40, deadline=None)
@given(st.permutations(list(range(7))))
def test_betti_invariant_under_relabelling(perm):
    T = sc.torus7()
    relabelled = SimplicialComplex([tuple(perm[v] for v in s) for s in T.facets()])
    assert relabelled.betti() == T.betti()
