"""Disjoint unions and the outcome calculus for them.

Outcomes of a union depend on more than the outcomes of its parts: the
parity of each board matters too.  ``UNION_TABLE`` lists, for every pair of
parities and outcomes, which outcomes the union can take, and the witness
catalog contains small games realizing every cell.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import Game, Outcome, Poset
from .errors import ConventionMismatch

EVEN, ODD = "even", "odd"


def parity_of(g: Game) -> str:
    return ODD if g.size % 2 else EVEN


def disjoint_union(g1: Game, g2: Game, prefixes: tuple[str, str] = ("L.", "R.")) -> Game:
    """Side-by-side union; vertex names get a per-component prefix."""
    if g1.convention is not g2.convention:
        raise ConventionMismatch("cannot unite games with different conventions")
    vertices, covers, sets = [], [], []
    for g, pre in zip((g1, g2), prefixes):
        vertices += [pre + v for v in g.vertices]
        covers += [(pre + a, pre + b) for a, b in g.poset.sorted_covers()]
        sets += [frozenset(pre + v for v in s) for s in g.winsets]
    return Game(Poset(vertices, covers), tuple(sets), g1.convention)


def components(g: Game) -> list[list[str]]:
    """Connected components under comparability and shared winning sets."""
    parent = {v: v for v in g.vertices}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def join(a: str, b: str) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for a, b in g.poset.covers:
        join(a, b)
    for s in g.winsets:
        first, *rest = sorted(s) or [None]
        for v in rest:
            join(first, v)
    groups: dict[str, list[str]] = {}
    for v in g.vertices:
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def simplify_empty_component(g: Game) -> Game:
    """Drop components that carry no winning-set vertex.

    If the dropped vertices are odd in number one of them stays behind as
    an isolated vertex, so the parity of the board is unchanged.
    """
    used = set().union(*g.winsets) if g.winsets else set()
    idle = [v for comp in components(g) if not used.intersection(comp) for v in comp]
    if not idle:
        return g
    order = {v: i for i, v in enumerate(g.vertices)}
    idle.sort(key=order.__getitem__)
    keep = [v for v in g.vertices if v not in set(idle)]
    if len(idle) % 2:
        keep.append(idle[0])
        keep.sort(key=order.__getitem__)
    return g.restrict(keep)


# -- the possibility tables -------------------------------------------------

_ORDER = (Outcome.M, Outcome.N, Outcome.P, Outcome.B)

# Rows are the outcome of the first game, columns the second, in M N P B
# order.  For the mixed table the first game is the even one.
_RAW = {
    (EVEN, EVEN): (
        ("M", "M", "M", "M"),
        ("M", "MN", "M", "MN"),
        ("M", "M", "P", "P"),
        ("M", "MN", "P", "PB"),
    ),
    (EVEN, ODD): (
        ("M", "MN", "M", "MN"),
        ("M", "MN", "M", "MNPB"),
        ("M", "N", "M", "N"),
        ("M", "N", "MP", "NB"),
    ),
    (ODD, ODD): (
        ("M", "M", "M", "MN"),
        ("M", "MP", "MN", "MNPB"),
        ("M", "MN", "M", "MN"),
        ("MN", "MNPB", "MN", "MNPB"),
    ),
}


def _build_table() -> dict[tuple[str, str, Outcome, Outcome], frozenset[Outcome]]:
    table = {}
    for (p1, p2), rows in _RAW.items():
        for o1, row in zip(_ORDER, rows):
            for o2, cell in zip(_ORDER, row):
                value = frozenset(Outcome(c) for c in cell)
                table[(p1, p2, o1, o2)] = value
                table[(p2, p1, o2, o1)] = value
    return table


UNION_TABLE = _build_table()


def union_table_lookup(p1: str, p2: str, o1: Outcome, o2: Outcome) -> frozenset[Outcome]:
    """Possible outcomes of a union of games with these parities and outcomes."""
    if p1 not in (EVEN, ODD) or p2 not in (EVEN, ODD):
        raise ValueError(f"parity must be {EVEN!r} or {ODD!r}")
    return UNION_TABLE[(p1, p2, Outcome(o1), Outcome(o2))]


# -- witness games ----------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    name: str
    game: Game
    outcome: Outcome

    @property
    def parity(self) -> str:
        return parity_of(self.game)


def _chain(n: int) -> tuple[list[str], list[tuple[str, str]]]:
    vs = [f"u{i}" for i in range(1, n + 1)]
    return vs, list(zip(vs, vs[1:]))


def _w(name: str, vertices: list[str], covers: Iterable[tuple[str, str]], sets, outcome: str) -> Witness:
    return Witness(name, Game.build(vertices, covers, sets), Outcome(outcome))


def witness_catalog() -> dict[str, Witness]:
    """The fifteen small games used to realize every cell of the tables."""
    c1, c2, c3, c4, c5 = (_chain(n) for n in range(1, 6))
    fork = ["u1", "u2", "u3", "u4"], [("u1", "u3"), ("u2", "u3"), ("u3", "u4")]
    fork5 = ["u1", "u2", "u3", "u4", "u5"], [("u1", "u3"), ("u2", "u3"), ("u3", "u4"), ("u4", "u5")]
    diamond = (
        ["u0", "u1", "u2", "u3", "u4"],
        [("u0", "u1"), ("u0", "u2"), ("u1", "u3"), ("u2", "u3"), ("u3", "u4")],
    )
    broom = ["u1", "u2", "u3", "u4", "u5"], [("u1", "u2"), ("u2", "u3"), ("u3", "u4"), ("u3", "u5")]
    entries = [
        _w("EM", *c4, [{"u1"}, {"u4"}], "M"),
        _w("EN1", *c2, [{"u1"}], "N"),
        _w("EN2", *c4, [{"u3"}], "N"),
        _w("EN3", *c4, [{"u1", "u3"}], "N"),
        _w("EB1", *c2, [{"u1", "u2"}], "B"),
        _w("EB2", *fork, [{"u1", "u2"}, {"u1", "u4"}], "B"),
        _w("OM", *broom, [{"u1"}, {"u5"}], "M"),
        _w("ON1", *c1, [{"u1"}], "N"),
        _w("ON2", *c3, [{"u3"}], "N"),
        _w("ON3", *c3, [{"u1", "u3"}], "N"),
        _w("OP", *c3, [{"u2"}], "P"),
        _w("OB1", *c3, [{"u1", "u2", "u3"}], "B"),
        _w("OB2", *c5, [{"u1", "u4"}, {"u2", "u5"}], "B"),
        _w("OB3", *fork5, [{"u1", "u2"}, {"u1", "u4"}], "B"),
        _w("OB4", *diamond, [{"u1", "u2"}, {"u1", "u4"}], "B"),
    ]
    return {w.name: w for w in entries}


# Pairs of witnesses whose union realizes each cell value, with the outcome
# the union must have.
COMPLETENESS_PAIRS: tuple[tuple[str, str, str], ...] = (
    ("EN1", "EN1", "M"), ("EN1", "EN2", "N"), ("EN1", "EB1", "N"), ("EN1", "EB2", "M"),
    ("EB1", "EB1", "B"), ("EB2", "EB2", "P"),
    ("EM", "ON1", "M"), ("EM", "ON2", "N"), ("EN1", "ON1", "M"), ("EN1", "ON2", "N"),
    ("EB2", "OP", "M"), ("EB1", "OP", "P"),
    ("EM", "OB3", "M"), ("EM", "OB1", "N"),
    ("EN1", "OB3", "M"), ("EN1", "OB1", "N"), ("EN2", "OB1", "P"), ("EN3", "OB1", "B"),
    ("EB2", "OB1", "N"), ("EB1", "OB1", "B"),
    ("OM", "OB3", "M"), ("OM", "OB1", "N"),
    ("ON1", "ON1", "M"), ("ON2", "ON2", "P"), ("ON2", "OP", "M"), ("ON1", "OP", "N"),
    ("ON2", "OB2", "M"), ("ON1", "OB1", "N"), ("ON2", "OB1", "P"), ("ON3", "OB1", "B"),
    ("OP", "OB2", "M"), ("OP", "OB1", "N"),
    ("OB2", "OB2", "M"), ("OB1", "OB3", "N"), ("OB4", "OB4", "P"), ("OB1", "OB1", "B"),
)
