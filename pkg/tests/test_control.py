from fractions import Fraction

import pytest

from ihcyc import control, simplicial as sc
from ihcyc.control import ControlError, ControlParams


def test_floor_ratio_exact():
    assert control.floor_ratio(1, Fraction(3, 2)) == 1
    assert control.floor_ratio("2", "7/3") == 1
    with pytest.raises(ControlError):
        control.floor_ratio(1, 2)
    with pytest.raises(ControlError):
        control.floor_ratio(1, "1.5")
    with pytest.raises(ControlError):
        control.floor_ratio(1.0, 2)
    with pytest.raises(ControlError):
        control.floor_ratio(0, Fraction(1, 2))


def test_single_codimension_perversity():
    p = control.perversity_from_control(ControlParams.for_exponent(4, 1))
    assert p.values == (0, 0, 0, 0, 1)
    p = control.perversity_from_control(ControlParams(2, {2: 1}, {2: Fraction(1, 2)}))
    assert p.values == (0, 0, 0)


def test_floor_condition_violation():
    params = ControlParams(5, {3: 1, 5: 1}, {3: Fraction(1, 2), 5: Fraction(7, 2)})
    with pytest.raises(ControlError, match="floor condition"):
        control.perversity_from_control(params)


def test_over_controlled():
    with pytest.raises(ControlError, match="over-controlled"):
        control.perversity_from_control(ControlParams.for_exponent(3, 2))
    with pytest.raises(ControlError, match="over-controlled"):
        control.perversity_from_control(ControlParams(3, {1: 1}, {1: Fraction(1, 2)}))


def test_gap_fill():
    params = ControlParams(6, {3: 1, 6: 1}, {3: Fraction(1, 2), 6: Fraction(3, 2)})
    assert control.perversity_from_control(params).values == (0, 0, 0, 1, 1, 2, 3)


def test_params_reject_integral_ratio():
    with pytest.raises(ControlError, match="codimension 3"):
        ControlParams(3, {3: 1}, {3: 2})
    with pytest.raises(ControlError):
        ControlParams(3, {3: 1}, {2: Fraction(1, 2)})


def test_truncation():
    omega = sc.torus7().cochain_complex()
    assert control.truncate_cochain(omega, 0).betti() == {0: 1, 1: 0, 2: 0}
    assert control.truncate_cochain(omega, 1).betti() == {0: 1, 1: 2, 2: 0}
    assert control.truncate_cochain(omega, 5).betti() == omega.betti()
    assert control.truncate_cochain(omega, -1).betti() == {0: 0, 1: 0, 2: 0}


def test_cutoff_conventions():
    assert control.cutoff_for("m-1", 3) == 2
    assert control.cutoff_for("m", 3) == 3
    with pytest.raises(ValueError):
        control.cutoff_for("m+1", 3)


def test_theorem0_decisive_torus():
    r = control.theorem0_crosscheck(sc.torus7(), 1)
    assert r.p_n == 0 and r.gm_valid
    assert r.ih == {0: 1, 1: 2, 2: 0, 3: 0}
    assert r.matching == ["m"]


def test_theorem0_degenerate_when_link_is_small():
    # dim L < m: both truncations are the whole link cohomology
    r = control.theorem0_crosscheck(sc.hexagon(), 2)
    assert r.truncations["m-1"] == r.truncations["m"]
    assert not r.decisive


def test_no_mixed_outcome_among_decisive_cases():
    seen = set()
    for L in (sc.hexagon(), sc.two_hexagons(), sc.torus7()):
        for m in (1, 2):
            r = control.theorem0_crosscheck(L, m)
            assert r.matching, (L, m)
            if r.decisive:
                seen.update(r.matching)
    assert seen == {"m"}


def test_theorem3_circle_link():
    r = control.theorem3_crosscheck(sc.hollow_triangle(), 1)
    assert r.model.as_tuple() == r.sums_p == (1, 1)
