import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conjstab import errors
from conjstab.coxgraph import catalog, from_name, induced
from conjstab.ribbons import (
    Ribbon,
    SubsetMap,
    W0Conj,
    apply_chain,
    chain_element,
    is_adjacent,
    moves_from_json,
    moves_to_json,
    reachable_maps,
    ribbon_map,
    w0_map,
)

import oracles


def test_subset_map_basics():
    m = SubsetMap({"a": "b", "b": "c"})
    assert m.source == {"a", "b"} and m.target == {"b", "c"}
    assert m.then({"b": "x", "c": "y"}).as_dict() == {"a": "x", "b": "y"}
    assert m.image_word(["a", "b", "a"]) == ("b", "c", "b")
    assert not m.is_identity() and SubsetMap.identity("ab").is_identity()
    assert m == SubsetMap({"b": "c", "a": "b"}) and hash(m) == hash(SubsetMap({"b": "c", "a": "b"}))
    with pytest.raises(ValueError):
        SubsetMap({"a": "c", "b": "c"})


def test_w0_maps_table_values():
    e6 = from_name("E6")
    assert w0_map(e6, e6.vertices, e6.vertices).as_dict() == \
        {"s1": "s6", "s2": "s2", "s3": "s5", "s4": "s4", "s5": "s3", "s6": "s1"}
    # a vertex commuting with Z is fixed
    assert w0_map(e6, {"s2", "s4", "s5"}, {"s1", "s2"}).as_dict() == {"s1": "s1", "s2": "s5"}
    with pytest.raises(errors.NotContained):
        w0_map(e6, {"s2", "s4"}, {"s3"})


def test_ribbon_errors():
    g = from_name("A4")
    with pytest.raises(errors.VertexInSubset):
        ribbon_map(g, "s1", {"s1", "s2"})
    with pytest.raises(errors.UnknownVertex):
        ribbon_map(g, "s9", {"s1"})


def test_ribbon_examples():
    e6 = from_name("E6")
    # first move of the D5-in-E6 chain
    assert ribbon_map(e6, "s1", {"s2", "s3", "s4"}).as_dict() == {"s2": "s4", "s3": "s1", "s4": "s3"}
    # non-adjacent ribbons act trivially
    assert ribbon_map(e6, "s6", {"s1", "s2"}).is_identity()
    assert not is_adjacent(e6, "s6", {"s1", "s2"}) and is_adjacent(e6, "s4", {"s2"})
    # A2 ribbon r(s2, {s1}) sends s1 to s2
    assert ribbon_map(from_name("A2"), "s2", {"s1"}).as_dict() == {"s1": "s2"}


@pytest.mark.parametrize("name", ["A4", "B3", "H3", "D4", "I2(5)", "F4"])
def test_ribbons_match_float_model(name):
    """Each ribbon letter map equals conjugation by w0(Z) w0(Z+t) in the matrix model."""
    g = from_name(name)
    fc = oracles.FloatCoxeter.of(g)
    longest = {}

    def w0(Z):
        key = frozenset(Z)
        if key not in longest:
            longest[key] = oracles.float_longest(fc, g.sort(Z))
        return longest[key]

    for k in range(1, g.rank):
        for Z in itertools.combinations(g.vertices, k):
            for t in g.vertices:
                if t in Z:
                    continue
                M = w0(Z) @ w0(set(Z) | {t})
                want = {z: fc.simple_conjugate(M, z) for z in Z}
                assert ribbon_map(g, t, Z).as_dict() == want


def test_apply_chain_and_mismatch():
    e6 = from_name("E6")
    Y = {"s2", "s3", "s4"}
    chain = apply_chain(e6, Y, [Ribbon("s1", Y), Ribbon("s5", {"s1", "s3", "s4"})])
    assert chain.composite.as_dict() == {"s2": "s5", "s3": "s3", "s4": "s4"}
    assert chain.image_word(["s2", "s4", "s3"]) == ("s5", "s4", "s3")
    with pytest.raises(errors.ChainMismatch) as exc:
        apply_chain(e6, Y, [Ribbon("s1", Y), Ribbon("s5", Y)])
    assert exc.value.index == 1
    with pytest.raises(errors.ChainMismatch) as exc:
        apply_chain(e6, Y, [W0Conj({"s1", "s3"})])
    assert exc.value.index == 0


def test_h4_five_move_chain():
    h4 = from_name("H4")
    moves = [Ribbon("s4", {"s1", "s3"}), Ribbon("s2", {"s1", "s4"}), W0Conj({"s2", "s3", "s4"}),
             Ribbon("s1", {"s2", "s4"}), Ribbon("s3", {"s1", "s4"})]
    chain = apply_chain(h4, {"s1", "s3"}, moves)
    assert chain.composite.as_dict() == {"s1": "s3", "s3": "s1"}
    w = chain_element(h4, moves)
    assert w.simple_conjugate("s1") == "s3" and w.simple_conjugate("s3") == "s1"


def test_flips_are_needed():
    """Ribbons alone miss realized maps; component flips restore them."""
    a3 = from_name("A3")
    Y = {"s1", "s2"}
    without = reachable_maps(a3, Y, flips=False).maps()
    with_flips = reachable_maps(a3, Y).maps()
    fc = oracles.FloatCoxeter.of(a3)
    truth = {SubsetMap(dict(m)) for m in fc.realized_maps(sorted(Y))}
    assert with_flips == truth
    assert without < truth
    assert SubsetMap({"s1": "s2", "s2": "s1"}) in truth - without


def test_e7_picture():
    e7 = from_name("E7")
    Y = frozenset({"s1", "s3", "s4", "s5", "s6"})
    Y2 = frozenset({"s3", "s4", "s5", "s6", "s7"})
    reach = reachable_maps(e7, Y, adjacent_only=True)
    assert reach.targets() == {Y, Y2}
    assert reach.ribbon_edges() == {(Y, "s7", Y2), (Y2, "s1", Y), (Y2, "s2", Y2), (Y, "s2", Y)}


def test_adjacent_only_edges_are_adjacent():
    g = from_name("D5")
    reach = reachable_maps(g, {"s1", "s3"}, adjacent_only=True)
    for Z, t, _ in reach.ribbon_edges():
        assert is_adjacent(g, t, Z)


@pytest.mark.parametrize("name", [t.name for t in catalog(4, 8)])
def test_witness_chains_are_sound(name):
    g = from_name(name)
    for k in range(1, g.rank):
        for Y in itertools.combinations(g.vertices, k):
            reach = reachable_maps(g, Y)
            for m in reach.maps():
                chain = reach.chain(m)
                assert chain.composite == m
                w = chain_element(g, chain.moves)
                assert all(w.simple_conjugate(y) == m(y) for y in Y)


@pytest.mark.parametrize("name", ["A4", "B4", "D4", "H3", "F4", "I2(7)"])
def test_reachable_maps_match_float_oracle(name):
    g = from_name(name)
    fc = oracles.FloatCoxeter.of(g)
    elements = fc.elements()
    for k in range(1, g.rank):
        for Y in itertools.combinations(g.vertices, k):
            truth = {SubsetMap(dict(m)) for m in fc.realized_maps(Y, elements)}
            assert reachable_maps(g, Y).maps() == truth


def test_reachable_maps_are_graph_isomorphisms():
    g = from_name("E6")
    for Y in [("s1", "s2", "s3"), ("s2", "s4", "s5"), ("s1", "s6")]:
        for m in reachable_maps(g, Y).maps():
            assert m.is_graph_isomorphism(g)


moves_strategy = st.lists(st.one_of(
    st.builds(Ribbon, st.sampled_from(["s1", "s2", "s3"]), st.sets(st.sampled_from(["s4", "s5", "s6"]))),
    st.builds(W0Conj, st.sets(st.sampled_from(["s1", "s2", "s3", "s4"]))),
), max_size=6)


@given(moves_strategy)
def test_moves_json_round_trip(moves):
    assert moves_from_json(moves_to_json(moves)) == moves


def test_reachability_in_subgraph_uses_subgraph_only():
    e6 = from_name("E6")
    gx = induced(e6, ["s2", "s3", "s4", "s5", "s6"])
    reach = reachable_maps(gx, {"s2", "s3", "s4"}, adjacent_only=True)
    assert reach.targets() == {frozenset({"s2", "s3", "s4"})}
