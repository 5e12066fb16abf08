"""Tight components: blocks, odd-clique tests, essential counting."""
from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import naive_tight_report, naive_underlying, naive_blocks
from judipart import (
    blocks,
    essential_tight_components,
    from_arc_list,
    gen_eulerian_complete,
    gen_random_minout,
    gen_tight_union,
    is_tight,
    underlying_adjacency,
    underlying_components,
)


def test_single_vertex_is_tight():
    D = from_arc_list(3, [(1, 2)])
    rep = essential_tight_components(D, [0, 1, 2])
    assert rep.components == ((0,), (1, 2))
    assert rep.tight_flags == (True, False)  # a lone edge is an even clique
    assert rep.tau == 1


def test_triangle_variants():
    tri = [(0, 1), (1, 2), (2, 0)]
    D = from_arc_list(3, tri)
    assert is_tight(D, (0, 1, 2))
    rep = essential_tight_components(D, range(3))
    assert rep.tight_flags == (True,) and rep.essential_flags == (True,)

    # anti-parallel pair collapses in the underlying graph: still tight,
    # no longer essential
    E = from_arc_list(3, tri + [(1, 0)])
    adj = underlying_adjacency(E, range(3))
    assert sorted(adj[0]) == [1, 2]
    rep2 = essential_tight_components(E, range(3))
    assert rep2.tight_flags == (True,) and rep2.essential_flags == (False,)
    assert rep2.tau == 0


def test_four_cycle_and_pendant_are_not_tight():
    C4 = from_arc_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert not is_tight(C4, (0, 1, 2, 3))
    pend = from_arc_list(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
    assert not is_tight(pend, (0, 1, 2, 3))
    assert sorted(map(sorted, blocks(pend, (0, 1, 2, 3)))) == [[0, 1, 2], [2, 3]]


def test_two_triangles_sharing_a_vertex():
    D = from_arc_list(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
    bl = sorted(map(sorted, blocks(D, (0, 1, 2, 3, 4))))
    assert bl == [[0, 1, 2], [2, 3, 4]]
    assert is_tight(D, (0, 1, 2, 3, 4))


def test_odd_cliques_are_tight():
    for q in (5, 7):
        D = gen_eulerian_complete(q)
        assert is_tight(D, tuple(range(q)))


def test_tight_union_component_census():
    D = gen_tight_union(4, copies=3)
    comps = underlying_components(D, range(D.n))
    assert len(comps) == 4  # three small cliques and one big one
    rep = essential_tight_components(D, range(D.n))
    assert all(rep.tight_flags)
    assert all(rep.essential_flags)
    assert rep.tau == 4


def test_tau_drops_by_one_with_an_anti_parallel_arc():
    D = from_arc_list(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    rep = essential_tight_components(D, range(6))
    assert rep.tau == 2
    E = from_arc_list(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (1, 0)])
    rep2 = essential_tight_components(E, range(6))
    assert rep2.tau == 1
    assert rep2.tight_flags == (True, True)


def test_restriction_to_y_subset():
    # arcs leaving Y are invisible to the component structure
    D = from_arc_list(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 3)])
    rep = essential_tight_components(D, [0, 1, 2])
    assert rep.components == ((0, 1, 2),)
    assert rep.tau == 1


def test_agrees_with_naive_checker_on_randoms():
    rng = random.Random(77)
    for i in range(60):
        n = rng.randint(3, 10)
        D = gen_random_minout(n, 1, extra=rng.randint(0, n), seed=600 + i)
        if i % 2:
            ys = sorted(rng.sample(range(n), rng.randint(1, n)))
        else:
            ys = list(range(n))
        rep = essential_tight_components(D, ys)
        comps, tight, essential, tau = naive_tight_report(D, ys)
        assert rep.components == tuple(comps)
        assert rep.tight_flags == tight
        assert rep.essential_flags == essential
        assert rep.tau == tau


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_blocks_partition_the_edges(seed):
    D = gen_random_minout(9, 1, extra=seed % 8, seed=seed)
    ys = list(range(9))
    adj = naive_underlying(D, ys)
    total_edges = sum(len(v) for v in adj.values()) // 2
    rep = essential_tight_components(D, ys)
    got = 0
    for comp in rep.components:
        for verts, ecount in naive_blocks(adj, comp):
            got += ecount
        bl = blocks(D, comp)
        naive_sets = sorted(tuple(v) for v, _ in naive_blocks(adj, comp))
        assert sorted(tuple(sorted(b)) for b in bl) == naive_sets
    assert got == total_edges
