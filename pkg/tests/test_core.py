import random

import pytest
from helpers import chain, chains_game, sample_poset
from hypothesis import given, settings
from hypothesis import strategies as st

from posetgames.core import (
    Color,
    Convention,
    Game,
    Outcome,
    Player,
    Position,
    available_moves,
    build_poset,
    chain_decomposition,
    color_of,
    normalize,
    p_value,
    poset_stats,
)
from posetgames.errors import (
    ConventionMismatch,
    CycleDetected,
    DuplicateVertex,
    NotChainPoset,
    UnknownVertex,
)
from posetgames.io import GenSpec, random_game
from posetgames.oracle import solve_mb, solve_position


def test_sample_poset_order_queries():
    p = sample_poset()
    assert p.leq("e", "i") and p.leq("e", "d")
    assert not p.comparable("b", "i")


def test_singleton_poset_is_minimal_and_maximal():
    p = build_poset(["x"], [])
    stats = poset_stats(p)
    assert stats.minimal == stats.maximal == frozenset({"x"})


def test_cycle_rejected():
    with pytest.raises(CycleDetected):
        build_poset(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(CycleDetected):
        build_poset(["a"], [("a", "a")])


def test_bad_identifiers():
    with pytest.raises(UnknownVertex):
        build_poset(["a"], [("a", "z")])
    with pytest.raises(DuplicateVertex):
        build_poset(["a", "a"], [])
    with pytest.raises(UnknownVertex):
        Game.build(["a"], [], [{"q"}])


def test_non_cover_relations_are_reduced():
    p = build_poset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    assert p.covers == frozenset({("a", "b"), ("b", "c")})


def test_sample_poset_height_and_width():
    stats = poset_stats(sample_poset())
    assert stats.height == 4
    assert stats.width == 4


def test_antichain_stats():
    stats = poset_stats(build_poset(list("abcde"), []))
    assert (stats.height, stats.width) == (1, 5)


def test_available_moves_examples():
    g = Game.build(["a", "b", "c"], chain("a", "b", "c"))
    assert available_moves(Position(g)) == {"a"}
    f = Game(sample_poset())
    assert available_moves(Position(f)) == {"a", "b", "e"}
    done = Position(g, {"a", "c"}, {"b"})
    assert available_moves(done) == frozenset()


def test_position_legality():
    g = Game.build(["a", "b"], chain("a", "b"))
    with pytest.raises(ValueError):
        Position(g, {"b"}, set())
    with pytest.raises(ValueError):
        Position(g, {"a"}, {"a"})


def test_p_value_examples():
    p = sample_poset()
    assert p_value(p, "d") == 8
    assert p_value(p, "e") == 3
    assert p_value(build_poset(["x"], []), "x") == 0
    with pytest.raises(UnknownVertex):
        p_value(p, "zz")


def test_normalize_examples():
    g = Game.build(["a", "b", "c"], chain("a", "b", "c"), [{"b", "c"}])
    n = normalize(Position(g, {"a"}, set(), Player.BREAKER))
    assert n.vertices == ("b", "c") and n.winsets == (frozenset({"b", "c"}),)
    g2 = g.with_winsets([{"a", "c"}])
    assert normalize(Position(g2, {"a"}, set(), Player.BREAKER)).winsets == (frozenset({"c"}),)
    g3 = g.with_winsets([{"a"}])
    assert normalize(Position(g3, set(), {"a"}, Player.MAKER)).winsets == ()


def test_normalize_rejects_maker_maker():
    g = Game.build(["a"], [], [{"a"}], Convention.MAKER_MAKER)
    with pytest.raises(ConventionMismatch):
        normalize(Position(g))


def test_normalize_preserves_winner_on_random_positions():
    rng = random.Random(5)
    for seed in range(60):
        n = rng.randint(1, 8)
        g = random_game(GenSpec(n=n, w=rng.randint(1, n), m=rng.randint(1, 3), s=rng.randint(1, min(3, n)), seed=seed))
        pos = Position(g)
        for _ in range(rng.randint(0, n - 1)):
            avail = sorted(available_moves(pos))
            if not avail:
                break
            pos = pos.play(rng.choice(avail))
        assert solve_mb(normalize(pos), pos.to_move) is solve_position(pos)


def test_coloring_examples():
    g = chains_game([3], [])
    assert [color_of(g.poset, v) for v in ("x11", "x12", "x13")] == [Color.WHITE, Color.BLACK, Color.WHITE]
    g = chains_game([2, 2], [])
    assert color_of(g.poset, "x11") is Color.BLACK and color_of(g.poset, "x12") is Color.WHITE
    with pytest.raises(NotChainPoset):
        color_of(sample_poset(), "a")
    assert chain_decomposition(sample_poset()) is None


def test_outcome_from_winners():
    M, B = Player.MAKER, Player.BREAKER
    assert Outcome.from_winners(M, M) is Outcome.M
    assert Outcome.from_winners(M, B) is Outcome.N
    assert Outcome.from_winners(B, M) is Outcome.P
    assert Outcome.from_winners(B, B) is Outcome.B


@st.composite
def posets(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    names = [f"v{i}" for i in range(n)]
    pairs = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=12)) if pairs else []
    return build_poset(names, chosen)


@settings(max_examples=80, deadline=None)
@given(posets())
def test_poset_invariants(p):
    stats = poset_stats(p)
    assert stats.height * stats.width >= len(p)
    for a in p.vertices:
        for b in p.vertices:
            if p.leq(a, b):
                assert p_value(p, a) <= p_value(p, b)
    assert p.is_antichain(p.minimal_mask())
    assert p.minimal_mask().bit_count() <= stats.width


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=4))
def test_maximal_chain_elements_share_color(lengths):
    g = chains_game(lengths, [])
    colors = {color_of(g.poset, v) for v in g.poset.names(g.poset.maximal_mask())}
    assert colors == {Color.WHITE if g.size % 2 else Color.BLACK}
