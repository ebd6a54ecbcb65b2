import itertools
import json

import numpy as np
import pytest

from coloursym.graphs import (
    ColouredGraph,
    PartialIso,
    WitnessMissingError,
    WitnessQuery,
    check_no_fpf_colour_involution,
    embed,
    extend_iso,
    find_witness,
    graph_from_edges,
    is_colour_consistent,
    random_graph,
    recolour,
    saturate,
    validate_partial_iso,
    witness_queries,
)
from coloursym.perms import (
    apply,
    compose,
    enumerate_sym,
    fixed_points,
    identity,
    inverse,
    is_involution,
    transposition,
)

from helpers import all_two_colourings


def single_edge(c: int, m: int = 2) -> ColouredGraph:
    return graph_from_edges(m, 2, [[0, 1, c]])


# -- random generation ------------------------------------------------------


def test_random_graph_empty():
    G = random_graph(0, 3, 0)
    assert G.n == 0 and list(G.pairs()) == []


def test_random_graph_single_edge():
    G = random_graph(2, 5, 123)
    assert 1 <= G.colour_of(0, 1) <= 5
    assert G.colour_of(0, 1) == G.colour_of(1, 0)


def test_random_graph_deterministic():
    assert random_graph(10, 3, 42) == random_graph(10, 3, 42)
    assert random_graph(10, 3, 42) != random_graph(10, 3, 43)


def test_random_graph_rejects_tiny_palette():
    with pytest.raises(ValueError):
        random_graph(3, 1, 0)


def test_random_graph_colour_frequencies():
    # 100 seeds x C(60,2) edges; each colour frequency within 5% of 1/3
    counts = {1: 0, 2: 0, 3: 0}
    for seed in range(100):
        G = random_graph(60, 3, seed)
        values, freq = np.unique(G.colours[np.triu_indices(60, k=1)], return_counts=True)
        for v, f in zip(values, freq):
            counts[int(v)] += int(f)
    total = sum(counts.values())
    assert total == 100 * 60 * 59 // 2
    for c in (1, 2, 3):
        assert abs(counts[c] / total - 1 / 3) < 0.05 / 3


# -- recolouring ------------------------------------------------------------


def test_recolour_identity():
    G = random_graph(6, 3, 1)
    assert recolour(G, identity(3)) == G


def test_recolour_single_edge():
    G = single_edge(1)
    assert recolour(G, (2, 1)).colour_of(0, 1) == 2


def test_recolour_inverse_law():
    for seed in range(5):
        G = random_graph(7, 4, seed)
        for pi in enumerate_sym(4)[:8]:
            assert recolour(recolour(G, pi), inverse(pi)) == G


def test_recolour_is_group_action():
    G = random_graph(6, 3, 9)
    for p in enumerate_sym(3):
        for q in enumerate_sym(3):
            assert recolour(G, compose(p, q)) == recolour(recolour(G, p), q)


def test_recolour_degree_mismatch():
    with pytest.raises(ValueError):
        recolour(single_edge(1), (2, 1, 3))


# -- colour consistency ------------------------------------------------------


def test_consistency_identity_pair():
    G = random_graph(5, 3, 2)
    assert is_colour_consistent(G, identity(5), identity(3))


def test_consistency_two_cycle_keeps_edge_colour():
    # swapping the ends of an edge fixes its colour, so a colour involution
    # moving that colour can never be induced
    G = single_edge(1)
    swap = transposition(2, 1, 2)
    assert not is_colour_consistent(G, swap, (2, 1))
    assert is_colour_consistent(G, swap, identity(2))


def test_consistency_degree_checks():
    G = single_edge(1)
    with pytest.raises(ValueError):
        is_colour_consistent(G, identity(3), identity(2))
    with pytest.raises(ValueError):
        is_colour_consistent(G, identity(2), identity(3))


def test_consistent_pairs_closed_under_composition():
    # exhaustive oracle on a small graph: collect every consistent
    # (vertex perm, colour perm) pair and check pairwise products
    G = random_graph(4, 2, 5)
    consistent = [
        (s, pi)
        for s in enumerate_sym(4)
        for pi in enumerate_sym(2)
        if is_colour_consistent(G, s, pi)
    ]
    assert (identity(4), identity(2)) in consistent
    for (s1, p1), (s2, p2) in itertools.product(consistent, repeat=2):
        assert is_colour_consistent(G, compose(s1, s2), compose(p1, p2))


# -- the even-palette obstruction ---------------------------------------------


def test_obstruction_m2_single_edge():
    report = check_no_fpf_colour_involution(single_edge(1))
    assert report.vertex_perm_count == 1
    assert report.colour_involution_count == 1
    assert report.pairs_checked == 1
    assert report.passed
    citation = report.citations[0]
    assert citation.edge == (0, 1)
    assert citation.image_colour != citation.colour


def test_obstruction_m4_random():
    report = check_no_fpf_colour_involution(random_graph(4, 4, 7))
    assert report.colour_involution_count == 3  # the double transpositions of S4
    assert report.passed
    assert len(report.citations) == report.pairs_checked


def test_obstruction_vacuous_small_n():
    for n in (0, 1):
        G = ColouredGraph(m=2, n=n, colours=np.zeros((n, n), dtype=np.int32))
        report = check_no_fpf_colour_involution(G)
        assert report.pairs_checked == 0
        assert report.passed


def test_obstruction_rejects_odd_palette():
    with pytest.raises(ValueError):
        check_no_fpf_colour_involution(random_graph(3, 3, 0))


def test_obstruction_guard():
    with pytest.raises(ValueError):
        check_no_fpf_colour_involution(random_graph(8, 2, 0))


def test_obstruction_all_two_colourings_up_to_n4():
    for n in range(5):
        for G in all_two_colourings(n):
            assert check_no_fpf_colour_involution(G).passed


def test_obstruction_n6_random_graphs():
    for m in (2, 4):
        for seed in range(3):
            assert check_no_fpf_colour_involution(random_graph(6, m, seed)).passed


def test_obstruction_citations_name_moved_colours():
    report = check_no_fpf_colour_involution(random_graph(5, 2, 3))
    for citation in report.citations:
        u, v = citation.edge
        # the cited edge joins a 2-cycle of s and its colour moves under pi
        assert apply(citation.vertex_perm, u + 1) == v + 1
        assert apply(citation.colour_perm, citation.colour) == citation.image_colour
        assert citation.image_colour != citation.colour


# -- witness queries -----------------------------------------------------------


def test_witness_query_validation():
    q = WitnessQuery([{0, 1}, {2}])
    assert q.total_size == 3
    assert q.vertices() == {0, 1, 2}
    with pytest.raises(ValueError):
        WitnessQuery([{0}, {0}])
    with pytest.raises(ValueError):
        WitnessQuery([{-1}, set()])


def test_find_witness_vacuous_query():
    G = random_graph(4, 2, 0)
    assert find_witness(G, WitnessQuery([set(), set()])) == 0


def test_find_witness_absent():
    G = single_edge(1)
    assert find_witness(G, WitnessQuery([{0}, {1}])) is None


def test_find_witness_picks_smallest():
    # path: 0-1 colour 1, 0-2 colour 1, 1-2 colour 2
    G = graph_from_edges(2, 3, [[0, 1, 1], [0, 2, 1], [1, 2, 2]])
    assert find_witness(G, WitnessQuery([{0}, set()])) == 1


def test_find_witness_rejects_bad_query():
    G = random_graph(3, 2, 0)
    with pytest.raises(ValueError):
        find_witness(G, WitnessQuery([{5}, set()]))
    with pytest.raises(ValueError):
        find_witness(G, WitnessQuery([{0}]))


def test_witness_queries_enumeration_order_and_count():
    qs = list(witness_queries(3, 2, 2))
    # sizes 0,1,2: 1 + 3*2 + 3*4 = 19
    assert len(qs) == 19
    assert qs[0] == WitnessQuery([set(), set()])
    sizes = [q.total_size for q in qs]
    assert sizes == sorted(sizes)
    assert len(set(qs)) == len(qs)


# -- saturation ----------------------------------------------------------------


def test_saturate_fixpoint_returns_same_graph():
    H, achieved = saturate(random_graph(3, 3, 0), 2, 0)
    assert achieved
    H2, achieved2 = saturate(H, 2, 999)
    assert achieved2 and H2 is H


def test_saturate_small_start_adds_witnesses():
    G = random_graph(1, 2, 0)
    H, achieved = saturate(G, 1, 0)
    assert achieved
    assert H.n >= 3  # vertex 0 needs neighbours of both colours
    for q in witness_queries(H.n, 2, 1):
        assert find_witness(H, q) is not None


def test_saturate_reaches_fixpoint_and_sweep_passes():
    H, achieved = saturate(random_graph(3, 3, 11), 2, 11, rounds=8)
    assert achieved
    assert all(find_witness(H, q) is not None for q in witness_queries(H.n, 3, 2))


def test_saturate_deterministic():
    H1, a1 = saturate(random_graph(3, 3, 4), 2, 77)
    H2, a2 = saturate(random_graph(3, 3, 4), 2, 77)
    assert a1 == a2 and H1 == H2


def test_saturate_honest_rounds_cap():
    H, achieved = saturate(random_graph(2, 3, 0), 3, 0, rounds=1)
    assert not achieved
    assert H.n > 2


def test_saturate_preserves_original_colours():
    G = random_graph(4, 3, 8)
    H, _ = saturate(G, 2, 8)
    assert np.array_equal(H.colours[:4, :4], G.colours)


def test_saturate_input_validation():
    G = random_graph(2, 2, 0)
    with pytest.raises(ValueError):
        saturate(G, 0, 0)
    with pytest.raises(ValueError):
        saturate(G, 1, 0, rounds=0)


# -- embedding and partial isomorphisms ----------------------------------------


@pytest.fixture(scope="module")
def saturated_pair():
    A, ok_a = saturate(random_graph(3, 3, 21), 2, 21)
    B, ok_b = saturate(random_graph(3, 3, 22), 2, 22)
    assert ok_a and ok_b
    return A, B


def test_embed_empty(saturated_pair):
    A, _ = saturated_pair
    empty = ColouredGraph(m=3, n=0, colours=np.zeros((0, 0), dtype=np.int32))
    assert embed(empty, A) == ()


def test_embed_single_edge(saturated_pair):
    A, _ = saturated_pair
    for c in (1, 2, 3):
        H = graph_from_edges(3, 2, [[0, 1, c]])
        u, v = embed(H, A)
        assert A.colour_of(u, v) == c


def test_embed_triangle(saturated_pair):
    A, _ = saturated_pair
    H = graph_from_edges(3, 3, [[0, 1, 1], [0, 2, 2], [1, 2, 3]])
    images = embed(H, A)
    assert len(set(images)) == 3
    for u, v, c in H.pairs():
        assert A.colour_of(images[u], images[v]) == c


def test_embed_raises_when_unsaturated():
    target = single_edge(1, m=2)
    H = graph_from_edges(2, 3, [[0, 1, 1], [0, 2, 2], [1, 2, 2]])
    with pytest.raises(WitnessMissingError):
        embed(H, target)


def test_partial_iso_validation():
    with pytest.raises(ValueError):
        PartialIso(((0, 1), (0, 2)))
    with pytest.raises(ValueError):
        PartialIso(((0, 1), (2, 1)))
    p = PartialIso(((2, 5), (0, 3)))
    assert p.pairs == ((0, 3), (2, 5))
    assert p.inverse().pairs == ((3, 0), (5, 2))


def test_validate_partial_iso_checks_colours():
    A = graph_from_edges(2, 2, [[0, 1, 1]])
    B = graph_from_edges(2, 2, [[0, 1, 2]])
    with pytest.raises(ValueError):
        validate_partial_iso(A, B, PartialIso(((0, 0), (1, 1))))


def test_extend_iso_empty_map_hits_smallest_vertex(saturated_pair):
    A, B = saturated_pair
    p = extend_iso(A, B, PartialIso(), 5)
    assert p.as_dict() == {5: 0}


def test_extend_iso_respects_colours(saturated_pair):
    A, B = saturated_pair
    p = extend_iso(A, B, PartialIso(((0, 0),)), 1)
    w = p.as_dict()[1]
    assert B.colour_of(0, w) == A.colour_of(0, 1)


def test_extend_iso_rejects_mapped_vertex(saturated_pair):
    A, B = saturated_pair
    with pytest.raises(ValueError):
        extend_iso(A, B, PartialIso(((0, 0),)), 0)


# -- serialization ---------------------------------------------------------------


def test_json_roundtrip_identity():
    G = random_graph(6, 4, 3)
    assert ColouredGraph.from_json(G.to_json()) == G
    d = G.to_json_dict()
    assert ColouredGraph.from_json_dict(d).to_json_dict() == d


def test_json_deterministic():
    a = random_graph(5, 3, 9).to_json()
    b = random_graph(5, 3, 9).to_json()
    assert a == b


def test_json_reader_rejects_missing_pair():
    with pytest.raises(ValueError):
        graph_from_edges(2, 3, [[0, 1, 1], [0, 2, 1]])


def test_json_reader_rejects_duplicate_pair():
    with pytest.raises(ValueError):
        graph_from_edges(2, 2, [[0, 1, 1], [1, 0, 2]])


def test_json_reader_rejects_bad_colour():
    with pytest.raises(ValueError):
        graph_from_edges(2, 2, [[0, 1, 3]])
    with pytest.raises(ValueError):
        graph_from_edges(2, 2, [[0, 1, 0]])


def test_json_reader_rejects_self_loop_and_range():
    with pytest.raises(ValueError):
        graph_from_edges(2, 2, [[0, 0, 1]])
    with pytest.raises(ValueError):
        graph_from_edges(2, 2, [[0, 2, 1]])


def test_json_reader_rejects_malformed_document():
    with pytest.raises(ValueError):
        ColouredGraph.from_json("[1, 2, 3]")
    with pytest.raises(ValueError):
        ColouredGraph.from_json(json.dumps({"m": 2, "n": 1}))


def test_dot_export():
    G = graph_from_edges(3, 3, [[0, 1, 2], [0, 2, 1], [1, 2, 3]])
    dot = G.to_dot()
    assert dot.startswith("graph coloured {")
    assert "0 -- 1 [color_index=2];" in dot
    assert "1 -- 2 [color_index=3];" in dot
    empty = ColouredGraph(m=2, n=0, colours=np.zeros((0, 0), dtype=np.int32))
    assert empty.to_dot() == "graph coloured {\n}\n"


def test_graph_constructor_validation():
    with pytest.raises(ValueError):
        ColouredGraph(m=2, n=2, colours=np.array([[0, 1], [2, 0]], dtype=np.int32))
    with pytest.raises(ValueError):
        ColouredGraph(m=2, n=2, colours=np.array([[1, 1], [1, 1]], dtype=np.int32))
    with pytest.raises(ValueError):
        ColouredGraph(m=2, n=2, colours=np.array([[0, 3], [3, 0]], dtype=np.int32))
