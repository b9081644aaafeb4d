import random

import pytest
from helpers import chains_game, random_chain_game

from posetgames.chain_dp import (
    ChainDP,
    find_reduction_h2,
    find_winning_pattern,
    reduce_black_singleton,
    reduce_to_fixpoint,
    solve_chains_h2_ws2,
    solve_chains_ws2,
)
from posetgames.core import Color, Game, Player, color_of
from posetgames.errors import PreconditionViolated
from posetgames.oracle import solve_mb
from posetgames.poly_solvers import solve_chains_ws1

MAKER, BREAKER = Player.MAKER, Player.BREAKER


def reduc_game():
    return chains_game([7, 6], [{"x16"}, {"x13", "x23"}, {"x14", "x22"}, {"x17", "x24"}])


def test_black_singleton_reduction_example():
    g = reduc_game()
    r = reduce_black_singleton(g, 1, 6)
    assert frozenset({"x23"}) in r.winsets
    assert "x14" not in r.vertices
    assert not any("x22" in s for s in r.winsets)
    assert color_of(r.poset, "x23") is Color.WHITE
    assert solve_mb(g) is solve_mb(r) is MAKER


def test_black_singleton_reduction_preserves_colors():
    rng = random.Random(1)
    done = 0
    while done < 40:
        lengths = [rng.randint(3, 7), rng.randint(1, 5)]
        parity = sum(lengths) % 2
        js = [j for j in range(3, lengths[0]) if j % 2 != parity]
        if not js:
            continue
        j = rng.choice(js)
        g = chains_game(lengths, [{f"x1{j}"}])
        r = reduce_black_singleton(g, 1, j)
        assert (g.size - r.size) % 2 == 0
        for v in r.vertices:
            assert color_of(r.poset, v) is color_of(g.poset, v)
        done += 1


def test_black_singleton_preconditions():
    g = reduc_game()
    with pytest.raises(PreconditionViolated):
        reduce_black_singleton(g, 1, 3)  # not a winning set
    with pytest.raises(PreconditionViolated):
        reduce_black_singleton(chains_game([5, 2], [{"x15"}]), 1, 5)  # minimal
    with pytest.raises(PreconditionViolated):
        reduce_black_singleton(chains_game([6, 1], [{"x13"}]), 1, 3)  # white
    with pytest.raises(PreconditionViolated):
        reduce_black_singleton(chains_game([6, 1], [{"x14"}, {"x11", "x13"}]), 1, 4)  # white pair above


def test_ws2_worked_instance():
    assert solve_chains_ws2(reduc_game()) is MAKER


def test_ws2_two_top_pair_matches_oracle():
    g = chains_game([2, 2], [{"x11", "x21"}])
    assert solve_chains_ws2(g) is solve_mb(g)


def test_ws2_random_against_oracle():
    rng = random.Random(31)
    for _ in range(500):
        g = random_chain_game(rng)
        assert solve_chains_ws2(g) is solve_mb(g), [sorted(s) for s in g.winsets]


def test_ws2_agrees_with_ws1_on_singletons():
    rng = random.Random(32)
    for _ in range(200):
        g = random_chain_game(rng, max_size=1, max_sets=4)
        assert solve_chains_ws2(g) is solve_chains_ws1(g).winner


def test_ws2_pending_singletons_one_per_chain():
    rng = random.Random(33)
    for _ in range(100):
        g = random_chain_game(rng)
        dp = ChainDP(g)
        dp.solve()
        for st in dp.memo:
            assert len(st.W) == len(dp.board.chains)
            for i, s in enumerate(st.W):
                assert s == 0 or (not dp.board.white(s) and s <= st.K[i])


def test_ws2_rejects_big_sets_and_non_chains():
    with pytest.raises(PreconditionViolated):
        solve_chains_ws2(chains_game([3], [{"x11", "x12", "x13"}]))
    with pytest.raises(PreconditionViolated):
        solve_chains_ws2(Game.build(["a", "b", "c"], [("a", "c"), ("b", "c")], [{"c"}]))


def bottoms_tops(pairs, singles=0):
    """``pairs`` chains x_i < y_i, then ``singles`` isolated bottoms z_k."""
    vertices, covers = [], []
    for i in range(1, pairs + 1):
        vertices += [f"x{i}", f"y{i}"]
        covers.append((f"x{i}", f"y{i}"))
    vertices += [f"z{k}" for k in range(1, singles + 1)]
    return vertices, covers


def test_r1_on_isolated_bottoms():
    g = Game.build(["x1", "x2"], [], [{"x1", "x2"}])
    red = find_reduction_h2(g)
    assert red.kind == "R1"
    reduced, _ = reduce_to_fixpoint(g)
    assert reduced.winsets == ()
    assert solve_chains_h2_ws2(g) is BREAKER is solve_mb(g)


def test_r2_on_own_top():
    v, c = bottoms_tops(1, 2)
    g = Game.build(v, c, [{"x1", "y1"}])
    red = find_reduction_h2(g)
    assert red.kind == "R2" and red.index_set == {"x1"}
    assert solve_mb(g) is BREAKER


def test_no_reduction_without_sets():
    assert find_reduction_h2(Game.build(["a", "b"], [])) is None


def test_reduction_needs_even_board():
    with pytest.raises(PreconditionViolated):
        find_reduction_h2(Game.build(["a"], [], [{"a"}]))


def test_winning_pattern_length_three():
    v, c = bottoms_tops(3, 2)
    g = Game.build(v, c, [{"x1", "x2"}, {"x2", "y3"}, {"x3", "z1"}])
    pat = find_winning_pattern(g)
    assert pat is not None and len(pat.bottoms) == 3 and pat.z == "z1"
    assert solve_mb(g) is MAKER
    assert set(pat.winsets()) <= set(g.winsets)


def test_winning_pattern_absent_with_only_own_tops():
    v, c = bottoms_tops(3)
    g = Game.build(v, c, [{"x1", "y1"}, {"x2", "y2"}])
    assert find_winning_pattern(g) is None


def test_winning_pattern_length_four():
    v, c = bottoms_tops(4, 2)
    sets = [{"x1", "x2"}, {"x2", "y3"}, {"x3", "y4"}, {"x4", "z1"}]
    g = Game.build(v, c, sets)
    pat = find_winning_pattern(g)
    assert pat is not None and solve_mb(g) is MAKER


def test_h2_odd_cross_set():
    v, c = bottoms_tops(2, 1)
    g = Game.build(v, c, [{"x1", "y2"}])
    assert solve_chains_h2_ws2(g) is MAKER is solve_mb(g)


def test_h2_equals_ws2():
    rng = random.Random(44)
    for _ in range(300):
        g = random_chain_game(rng, max_height=2, max_width=6, max_sets=4)
        assert solve_chains_h2_ws2(g) is solve_chains_ws2(g)


def test_reduction_loop_terminates_and_shrinks():
    rng = random.Random(45)
    for _ in range(200):
        g = random_chain_game(rng, max_height=2, max_width=6, max_sets=5)
        if g.size % 2:
            continue
        reduced, steps = reduce_to_fixpoint(g)
        assert len(steps) <= g.size
        assert reduced.size == g.size - sum(2 if s.kind == "R1" else len(s.vertices) for s in steps)
