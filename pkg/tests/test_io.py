import pytest

from posetgames.core import Convention, Game, Outcome
from posetgames.errors import (
    CycleDetected,
    DuplicateVertex,
    InfeasibleSpec,
    InstanceSyntaxError,
    UnknownVertex,
)
from posetgames.io import GenSpec, parse_instance, random_game, write_instance
from posetgames.oracle import outcome4

from helpers import sample_poset

EN1 = """\
ppg v1
# two incomparable vertices, one of them winning
convention: maker-breaker
vertex a
vertex b
winset a
"""


def test_parse_small_instance():
    g = parse_instance(EN1)
    assert g.vertices == ("a", "b")
    assert g.winsets == (frozenset({"a"}),)
    assert g.convention is Convention.MAKER_BREAKER
    assert outcome4(g) is Outcome.N


def test_round_trip_sample_poset():
    g = Game(sample_poset(), (frozenset({"d"}), frozenset({"h", "i"})))
    text = write_instance(g, ("sample poset",))
    back = parse_instance(text)
    assert back.poset == g.poset
    assert set(back.winsets) == set(g.winsets)
    assert write_instance(back, ("sample poset",)) == text


def test_round_trip_maker_maker_and_empty_set():
    g = Game.build(["x", "y"], [("x", "y")], [[]], convention=Convention.MAKER_MAKER)
    back = parse_instance(write_instance(g))
    assert back.convention is Convention.MAKER_MAKER
    assert back.winsets == (frozenset(),)


def test_cycle_rejected():
    with pytest.raises(CycleDetected):
        parse_instance("ppg v1\nvertex a\ncover a a\n")


@pytest.mark.parametrize(
    "text,error,line",
    [
        ("ppg v1\nvertex a\nfrobnicate a\n", InstanceSyntaxError, 3),
        ("ppg v2\n", InstanceSyntaxError, 1),
        ("ppg v1\nvertex a\nconvention: maker-breaker\n", InstanceSyntaxError, 3),
        ("ppg v1\nconvention: sideways\n", InstanceSyntaxError, 2),
        ("ppg v1\nvertex a b\n", InstanceSyntaxError, 2),
    ],
)
def test_syntax_errors_carry_line(text, error, line):
    with pytest.raises(error) as err:
        parse_instance(text)
    assert err.value.line == line


def test_name_errors():
    with pytest.raises(DuplicateVertex, match="line 3"):
        parse_instance("ppg v1\nvertex a\nvertex a\n")
    with pytest.raises(UnknownVertex, match="line 3"):
        parse_instance("ppg v1\nvertex a\nwinset a z\n")
    with pytest.raises(InstanceSyntaxError):
        parse_instance("")


def test_random_game_deterministic():
    spec = GenSpec(n=10, w=3, m=4, s=2, seed=7)
    assert write_instance(random_game(spec)) == write_instance(random_game(spec))
    other = random_game(GenSpec(n=10, w=3, m=4, s=2, seed=8))
    assert write_instance(other) != write_instance(random_game(spec))


@pytest.mark.parametrize("seed", range(10))
def test_random_game_respects_width(seed):
    g = random_game(GenSpec(n=9, w=3, m=3, s=2, seed=seed, density=0.4))
    assert g.poset.width() <= 3
    assert len(g.winsets) == 3 and all(len(s) == 2 for s in g.winsets)


def test_random_single_chain():
    g = random_game(GenSpec(n=6, w=1, m=1, s=1, seed=3))
    assert g.poset.width() == 1 and g.poset.height() == 6


@pytest.mark.parametrize(
    "spec",
    [GenSpec(n=3, w=4, m=1, s=1), GenSpec(n=3, w=1, m=1, s=5), GenSpec(n=3, w=0, m=0, s=0),
     GenSpec(n=3, w=1, m=1, s=1, density=1.5)],
)
def test_infeasible_specs(spec):
    with pytest.raises(InfeasibleSpec):
        random_game(spec)
