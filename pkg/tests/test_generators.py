"""Instance generators: arc counts, degree contracts, determinism."""
from __future__ import annotations

import pytest

from judipart import (
    EvenOrderError,
    InfeasibleParamsError,
    TooSmallError,
    FAMILIES,
    e_between,
    gen_eulerian_complete,
    gen_random_minout,
    gen_skew_d4,
    gen_skew_d6,
    gen_star_triangle,
    gen_tight_union,
    min_outdegree,
    vertex_stats,
)


def test_eulerian_complete():
    for q in (3, 5, 9):
        D = gen_eulerian_complete(q)
        assert D.n == q and D.m == q * (q - 1) // 2
        assert all(s.dplus == s.dminus == (q - 1) // 2
                   for s in vertex_stats(D).values())
        # exactly one arc per unordered pair
        codes = D.arc_codes()
        assert all((u * q + v in codes) != (v * q + u in codes)
                   for u in range(q) for v in range(u + 1, q))
    with pytest.raises(TooSmallError):
        gen_eulerian_complete(1)
    with pytest.raises(EvenOrderError):
        gen_eulerian_complete(6)


def test_tight_union_counts_and_augment():
    d, copies = 4, 3
    small, big = 2 * d - 1, 2 * d + 1
    D = gen_tight_union(d, copies)
    assert D.n == copies * small + big
    assert D.m == copies * small * (small - 1) // 2 + big * (big - 1) // 2
    assert min_outdegree(D) == d - 1  # the small cliques cap it
    A = gen_tight_union(d, copies, augment=True)
    assert A.m == D.m + copies * small
    assert min_outdegree(A) == d
    with pytest.raises(InfeasibleParamsError):
        gen_tight_union(0, 1)
    with pytest.raises(InfeasibleParamsError):
        gen_tight_union(3, -1)


def test_star_triangle():
    for n in (4, 7, 30):
        D = gen_star_triangle(n)
        assert D.n == n and D.m == n
        assert min_outdegree(D) == 1
        st = vertex_stats(D)
        assert st[0].degree == n - 1
        assert max(s.degree for v, s in st.items() if v >= 3) <= 2
    with pytest.raises(TooSmallError):
        gen_star_triangle(3)


def test_skew_d4():
    for n in (10, 20, 41):
        D = gen_skew_d4(n)
        assert D.m == 5 * n - 5
        assert min_outdegree(D) == 4
        st = vertex_stats(D)
        assert st[0].dplus == n - 1          # broadcaster reaches everyone
        assert all(st[v].dminus == n - 1 for v in range(1, 5))
        assert e_between(D, range(5, n), range(5, n)) == 0
    with pytest.raises(TooSmallError):
        gen_skew_d4(9)


def test_skew_d6():
    D = gen_skew_d6(60, seed=4)
    assert D.n == 60 and D.m == 6 * 60
    assert min_outdegree(D) == 6
    assert e_between(D, range(3), range(3)) == 0
    E = gen_skew_d6(60, seed=4)
    assert E.arc_codes() == D.arc_codes()
    F = gen_skew_d6(60, seed=5)
    assert F.arc_codes() != D.arc_codes()
    with pytest.raises(TooSmallError):
        gen_skew_d6(20)


def test_random_minout():
    D = gen_random_minout(50, 3, extra=20, seed=1)
    assert D.n == 50 and D.m == 50 * 3 + 20
    assert min_outdegree(D) >= 3
    assert gen_random_minout(50, 3, extra=20, seed=1).arc_codes() == D.arc_codes()
    assert gen_random_minout(50, 3, extra=20, seed=2).arc_codes() != D.arc_codes()
    with pytest.raises(InfeasibleParamsError):
        gen_random_minout(4, 4)
    with pytest.raises(InfeasibleParamsError):
        gen_random_minout(3, 1, extra=10)
    with pytest.raises(InfeasibleParamsError):
        gen_random_minout(3, 1, extra=-1)


def test_family_registry():
    assert set(FAMILIES) == {
        "eulerian", "tight-union", "star-triangle", "skew-d4", "skew-d6", "random",
    }
    for fn, params in FAMILIES.values():
        assert callable(fn)
        assert all(isinstance(p, str) for p in params)
