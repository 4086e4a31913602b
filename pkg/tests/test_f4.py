from __future__ import annotations

from collections import Counter

import networkx as nx
import pytest

from polycat import f4
from polycat.oracles import brute_force_triangulations, chord_crosses
from polycat.polygon import Colour, rho


@pytest.fixture(scope="module")
def sym(e6_model):
    return f4.rho_symmetric_configs(e6_model)


@pytest.fixture(scope="module")
def moves(e6_model, sym):
    return f4.all_moves(e6_model, sym)


def test_census(sym):
    assert len(sym) == 105
    assert Counter(sc.kind for sc in sym) == {"T": 84, "C": 14, "L": 7}


def test_shape_two_paired_two_single_orbits(sym):
    for sc in sym:
        assert len(sc.paired) == 2 and len(sc.single_orbits) == 2
        assert all(len(o) == 2 for o in sc.single_orbits)
        assert sc.config.map(rho) == sc.config
        assert len(sc.slots) == 4


def test_type_t_covers_triangulations_twice(sym):
    proj = f4.triangulation_projection(sym)
    assert set(proj) == set(brute_force_triangulations(7))
    assert set(proj.values()) == {2}


def test_kind_from_chords(sym):
    for sc in sym:
        n = len(f4.chords(sc.config))
        assert sc.kind == {4: "T", 3: "C", 2: "L"}[n]
        if sc.kind == "T":
            assert f4.is_triangulation(f4.chords(sc.config))


def test_orbit_mutation_closes_and_is_involutive(e6_model, sym):
    index = {sc.config for sc in sym}
    for sc in sym:
        for k in range(4):
            new = f4.orbit_mutate(e6_model, sc, k)
            assert new.config in index
            d, e = f4.exchanged(e6_model, sc, k)
            assert (d.colour is Colour.PAIRED) == (e.colour is Colour.PAIRED)
            back = f4.orbit_mutate(e6_model, new, e)
            assert back.config == sc.config


def test_orbit_mutation_rejects_non_member(e6_model, sym):
    sc = sym[0]
    outsider = next(v for v in e6_model.q.vertices if v not in sc.config)
    with pytest.raises(f4.F4Error):
        f4.orbit_mutate(e6_model, sc, outsider)


def test_move_table(moves):
    assert f4.move_table(moves) == {"C-T": 28, "L-C": 28, "T-T": 154}


def test_every_move_matches_a_stated_pattern(moves):
    assert all(mv.pattern_ok for mv in moves)
    by = Counter((mv.label, mv.pattern) for mv in moves)
    assert by[("L-C", "direct")] == by[("L-C", "mirror")] == 28
    assert by[("C-T", "direct")] == by[("C-T", "mirror")] == 28


def test_l_type_moves(moves):
    ls = [mv for mv in moves if mv.source.kind == "L"]
    assert len(ls) == 28 and all(mv.label == "L-C" for mv in ls)


def test_tt_moves_are_heptagon_flips(moves):
    for mv in moves:
        if mv.label == "T-T":
            assert chord_crosses(mv.old.chord, mv.new.chord)
            before, after = set(f4.chords(mv.source.config)), set(f4.chords(mv.target.config))
            assert before - {mv.old.chord} == after - {mv.new.chord}
    assert f4.tt_flip_violations(moves) == []


def test_move_labels_symmetric_along_edges(moves):
    label = {(mv.source.config, mv.target.config): mv.label for mv in moves}
    assert all(label[(b, a)] == lab for (a, b), lab in label.items())


def test_exchange_graph(e6_model, sym):
    g = f4.f4_exchange_graph(e6_model, sym)
    assert len(g.vertices) == 105 and len(g.edges) == 210
    assert g.degrees() == {4} and g.is_connected()
    ref = nx.Graph((i, j) for i, j, _ in g.edges)
    assert nx.is_connected(ref) and ref.number_of_edges() == 210
    assert g.to_dot().count(" -- ") == 210


def test_rho_orbit_counts(e6):
    counts = f4.orbit_counts(e6)
    assert counts["orbits"] == 28 and counts["paired"] == 14 and counts["single"] == 14
