from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polycat.polygon import (
    Colour, Diagonal, PolygonSpec, SpecError, TreeShape, build_diagonal_set, crosses, in_first_slice,
    parse_diagonal, rho, sigma, tau, tau_inverse,
)

E6 = PolygonSpec(7, TreeShape(1, 2, 2))
D4 = PolygonSpec(6, TreeShape(1, 1, 1))
E6_SET = build_diagonal_set(E6)


def P(text, m=7):
    return parse_diagonal(text, m)


@pytest.mark.parametrize("m,shape,n", [
    (7, (1, 2, 2), 42), (10, (1, 2, 3), 70), (16, (1, 2, 4), 128), (6, (1, 1, 1), 24), (5, (1, 0, 0), 10),
])
def test_cardinality(m, shape, n):
    ds = build_diagonal_set(PolygonSpec(m, TreeShape(*shape)))
    assert len(ds) == n == sum(shape, 1) * m
    for i in range(1, m + 1):
        assert len(ds.slice(i)) == sum(shape, 1)


def test_first_slice_of_e6():
    first = [str(d) for d in E6_SET if in_first_slice(d)]
    assert first == ["[1,3]P", "[1,4]P", "[1,5]R", "[5,1]B", "[1,6]R", "[6,1]B"]


def test_too_small_polygon_rejected():
    with pytest.raises(SpecError):
        PolygonSpec(6, TreeShape(1, 2, 2))
    with pytest.raises(SpecError):
        TreeShape(-1, 2, 2)


def test_boundary_segment_detected():
    assert Diagonal.of(5, 6, "P", 7).is_boundary
    assert not any(d.is_boundary for d in E6_SET)


@pytest.mark.parametrize("text", ["[1,3]P", "[5,1]B", "[1,6]R", "[7,2]P"])
def test_parse_round_trip(text):
    assert str(P(text)) == text


@pytest.mark.parametrize("text", ["[1,3]X", "1,3P", "[0,3]P", "[1,9]R"])
def test_parse_rejects_garbage(text):
    with pytest.raises(SpecError):
        P(text)


def test_crosses_examples():
    assert crosses(P("[1,3]P"), P("[2,5]R"))
    assert not crosses(P("[1,3]P"), P("[3,6]B"))
    assert crosses(P("[1,4]R"), P("[2,6]B"))


def test_rho_examples():
    assert rho(P("[1,6]R")) == P("[6,1]B")
    assert rho(P("[1,3]P")) == P("[1,3]P")
    assert rho(rho(P("[2,7]B"))) == P("[2,7]B")


def test_tau_plain_rotation_off_first_slice():
    assert tau(P("[2,6]R"), E6) == P("[1,5]R")
    assert tau(P("[3,5]P"), E6) == P("[2,4]P")


def test_tau_flips_on_first_slice():
    assert tau(P("[1,5]R"), E6) == P("[4,7]B")
    assert tau(P("[6,1]B"), E6) == P("[7,5]R")


def test_tau_even_polygon_never_flips():
    assert tau(P("[1,5]R", 6), D4) == P("[6,4]R", 6)


@pytest.mark.parametrize("text,spec", [("[2,5]R", E6), ("[1,4]R", D4)])
def test_red_reach_three_is_outside_these_sets(text, spec):
    # a red diagonal of reach 3 is not a vertex for shapes (1,2,2) and (1,1,1)
    with pytest.raises(SpecError):
        tau(P(text, spec.m), spec)


def test_tau_rejects_foreign_diagonal():
    with pytest.raises(SpecError):
        tau(P("[1,3]R"), E6)


def test_tau_orbit_lengths_on_moebius_strip():
    for d in E6_SET:
        x, n = tau(d, E6), 1
        while x != d:
            x, n = tau(x, E6), n + 1
        assert n == (7 if d.colour is Colour.PAIRED else 14)


def test_tau_is_a_permutation_with_inverse():
    image = {tau(d, E6) for d in E6_SET}
    assert image == set(E6_SET)
    assert all(tau_inverse(tau(d, E6), E6) == d for d in E6_SET)


def test_rho_preserves_symmetric_set():
    assert {rho(d) for d in E6_SET} == set(E6_SET)


def test_sigma6_on_57_red_is_the_special_case():
    # [5,7] joins the two neighbours of 6, so sigma_6 acts as rho there
    assert sigma(6, P("[5,7]R")) == P("[7,5]B")


def test_sigma6_reflects_generic_diagonal():
    # vertex map v -> 12 - v (mod 7), then source and target swap
    assert sigma(6, P("[1,4]P")) == P("[1,4]P")
    assert sigma(6, P("[2,5]P")) == P("[7,3]P")


def test_sigma_special_case_uses_rho():
    assert sigma(6, P("[7,5]R")) == P("[5,7]B")


def test_sigma_needs_heptagon():
    with pytest.raises(SpecError):
        sigma(1, P("[1,4]R", 8))


diagonals = st.builds(
    lambda i, reach, c: Diagonal(i, reach, c, 7),
    st.integers(1, 7), st.integers(2, 5), st.sampled_from(list(Colour)),
)
members = st.sampled_from(list(E6_SET))


@given(diagonals, diagonals)
def test_crosses_symmetric_and_irreflexive(a, b):
    assert crosses(a, b) == crosses(b, a)
    assert not crosses(a, a)
    assert crosses(a, b) == crosses(rho(a), b)


@given(diagonals)
def test_rho_involution(d):
    assert rho(rho(d)) == d
    assert rho(d).chord == d.chord


@given(st.integers(1, 7), diagonals)
def test_sigma_involution(i, d):
    assert sigma(i, sigma(i, d)) == d


@given(members)
def test_tau_commutes_with_rho(d):
    assert rho(tau(d, E6)) == tau(rho(d), E6)


@given(members)
def test_parse_round_trip_property(d):
    assert parse_diagonal(str(d), 7) == d
