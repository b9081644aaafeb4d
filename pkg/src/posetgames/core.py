"""Posets, winning-set families, games and positions.

Vertices are opaque string identifiers at the interface.  Internally each
vertex gets a dense index in declaration order and every vertex set is an
``int`` bitmask, which is what the solvers operate on.
"""

from __future__ import annotations

import enum
import graphlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

from .errors import (
    ConventionMismatch,
    CycleDetected,
    DuplicateVertex,
    NotChainPoset,
    UnknownVertex,
)


class Player(enum.Enum):
    MAKER = "maker"
    BREAKER = "breaker"

    @property
    def other(self) -> "Player":
        return Player.BREAKER if self is Player.MAKER else Player.MAKER

    def __str__(self) -> str:
        return self.value.capitalize()


class Convention(enum.Enum):
    MAKER_BREAKER = "maker-breaker"
    MAKER_MAKER = "maker-maker"


class Outcome(enum.Enum):
    """Outcome class of a Maker-Breaker game when the starter is unspecified."""

    M = "M"  # Maker wins whoever starts
    N = "N"  # the next (first) player wins
    P = "P"  # the previous (second) player wins
    B = "B"  # Breaker wins whoever starts

    @classmethod
    def from_winners(cls, maker_first: Player, breaker_first: Player) -> "Outcome":
        if maker_first is Player.MAKER:
            return cls.M if breaker_first is Player.MAKER else cls.N
        return cls.P if breaker_first is Player.MAKER else cls.B

    def __str__(self) -> str:
        return self.value


class Color(enum.Enum):
    BLACK = "black"
    WHITE = "white"


def bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """A finite partial order given by (not necessarily covering) relations.

    ``relations`` are pairs ``(a, b)`` meaning ``a < b``.  The transitive
    closure is computed eagerly; ``covers`` holds the Hasse edges.
    """

    __slots__ = ("vertices", "_index", "below", "above", "preds", "succs", "_topo")

    def __init__(self, vertices: Sequence[str], relations: Iterable[tuple[str, str]] = ()):
        vertices = tuple(vertices)
        index: dict[str, int] = {}
        for v in vertices:
            if v in index:
                raise DuplicateVertex(f"duplicate vertex {v!r}")
            index[v] = len(index)
        n = len(vertices)
        lower: list[set[int]] = [set() for _ in range(n)]
        for a, b in relations:
            for v in (a, b):
                if v not in index:
                    raise UnknownVertex(f"unknown vertex {v!r}")
            if a == b:
                raise CycleDetected(f"relation {a} < {a} is cyclic")
            lower[index[b]].add(index[a])
        sorter = graphlib.TopologicalSorter({i: lower[i] for i in range(n)})
        try:
            topo = tuple(sorter.static_order())
        except graphlib.CycleError as exc:
            cycle = [vertices[i] for i in exc.args[1]]
            raise CycleDetected("cycle through " + " < ".join(cycle)) from None

        below = [0] * n
        for v in topo:
            m = 0
            for u in lower[v]:
                m |= below[u] | (1 << u)
            below[v] = m
        above = [0] * n
        for v in range(n):
            for u in bits(below[v]):
                above[u] |= 1 << v
        # a < b is a cover iff nothing lies strictly between them
        preds = [0] * n
        succs = [0] * n
        for b in range(n):
            for a in bits(below[b]):
                if not (above[a] & below[b]):
                    preds[b] |= 1 << a
                    succs[a] |= 1 << b

        self.vertices = vertices
        self._index = index
        self.below = tuple(below)
        self.above = tuple(above)
        self.preds = tuple(preds)
        self.succs = tuple(succs)
        self._topo = topo

    # -- identifiers ------------------------------------------------------
    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.vertices == other.vertices and self.covers == other.covers

    def __hash__(self) -> int:
        return hash((self.vertices, self.covers))

    def __repr__(self) -> str:
        return f"Poset({len(self)} vertices, {len(self.covers)} covers)"

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {v!r}") from None

    def mask(self, vs: Iterable[str]) -> int:
        m = 0
        for v in vs:
            m |= 1 << self.index(v)
        return m

    def names(self, mask: int) -> list[str]:
        return [self.vertices[i] for i in bits(mask)]

    @property
    def full_mask(self) -> int:
        return (1 << len(self.vertices)) - 1

    @property
    def covers(self) -> frozenset[tuple[str, str]]:
        return frozenset(
            (self.vertices[a], self.vertices[b])
            for b in range(len(self.vertices))
            for a in bits(self.preds[b])
        )

    def sorted_covers(self) -> list[tuple[str, str]]:
        """Covers ordered by (lower index, upper index)."""
        out = []
        for a in range(len(self.vertices)):
            for b in bits(self.succs[a]):
                out.append((self.vertices[a], self.vertices[b]))
        return out

    # -- order queries ----------------------------------------------------
    def leq(self, a: str, b: str) -> bool:
        ia, ib = self.index(a), self.index(b)
        return ia == ib or bool(self.below[ib] >> ia & 1)

    def less(self, a: str, b: str) -> bool:
        ia, ib = self.index(a), self.index(b)
        return bool(self.below[ib] >> ia & 1)

    def comparable(self, a: str, b: str) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def minimal_mask(self, among: int | None = None) -> int:
        """Minimal elements of the sub-poset induced on ``among``."""
        if among is None:
            among = self.full_mask
        m = 0
        for v in bits(among):
            if not self.below[v] & among:
                m |= 1 << v
        return m

    def maximal_mask(self, among: int | None = None) -> int:
        if among is None:
            among = self.full_mask
        m = 0
        for v in bits(among):
            if not self.above[v] & among:
                m |= 1 << v
        return m

    def available_mask(self, claimed: int) -> int:
        """Unclaimed vertices all of whose smaller elements are claimed."""
        m = 0
        for v in range(len(self.vertices)):
            if not claimed >> v & 1 and self.below[v] & ~claimed == 0:
                m |= 1 << v
        return m

    def up_closure(self, mask: int) -> int:
        m = mask
        for v in bits(mask):
            m |= self.above[v]
        return m

    def is_antichain(self, mask: int) -> bool:
        return all(not (self.below[v] & mask) for v in bits(mask))

    def height(self) -> int:
        longest = [0] * len(self.vertices)
        for v in self._topo:
            longest[v] = 1 + max((longest[u] for u in bits(self.preds[v])), default=0)
        return max(longest, default=0)

    def width(self) -> int:
        """Largest antichain size, via Dilworth / bipartite matching."""
        n = len(self.vertices)
        if n == 0:
            return 0
        graph = nx.Graph()
        left = [("L", i) for i in range(n)]
        graph.add_nodes_from(left)
        graph.add_nodes_from(("R", i) for i in range(n))
        for b in range(n):
            for a in bits(self.below[b]):
                graph.add_edge(("L", a), ("R", b))
        matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=left)
        return n - len(matching) // 2

    def restrict(self, keep: Iterable[str]) -> "Poset":
        """Induced sub-poset, keeping declaration order."""
        keep_mask = self.mask(keep)
        kept = [v for i, v in enumerate(self.vertices) if keep_mask >> i & 1]
        rel = [
            (self.vertices[a], self.vertices[b])
            for b in bits(keep_mask)
            for a in bits(self.below[b] & keep_mask)
        ]
        return Poset(kept, rel)


def build_poset(vertices: Sequence[str], covers: Iterable[tuple[str, str]]) -> Poset:
    return Poset(vertices, covers)


@dataclass(frozen=True)
class PosetStats:
    height: int
    width: int
    minimal: frozenset[str]
    maximal: frozenset[str]


def poset_stats(p: Poset) -> PosetStats:
    return PosetStats(
        height=p.height(),
        width=p.width(),
        minimal=frozenset(p.names(p.minimal_mask())),
        maximal=frozenset(p.names(p.maximal_mask())),
    )


@dataclass(frozen=True)
class Game:
    poset: Poset
    winsets: tuple[frozenset[str], ...] = ()
    convention: Convention = Convention.MAKER_BREAKER

    def __post_init__(self):
        sets = tuple(frozenset(s) for s in self.winsets)
        object.__setattr__(self, "winsets", sets)
        for s in sets:
            for v in s:
                if v not in self.poset:
                    raise UnknownVertex(f"winning set mentions unknown vertex {v!r}")

    @classmethod
    def build(
        cls,
        vertices: Sequence[str],
        covers: Iterable[tuple[str, str]] = (),
        winsets: Iterable[Iterable[str]] = (),
        convention: Convention = Convention.MAKER_BREAKER,
    ) -> "Game":
        return cls(Poset(vertices, covers), tuple(frozenset(s) for s in winsets), convention)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.poset.vertices

    @property
    def size(self) -> int:
        return len(self.poset)

    @cached_property
    def win_masks(self) -> tuple[int, ...]:
        return tuple(self.poset.mask(s) for s in self.winsets)

    def with_winsets(self, winsets: Iterable[Iterable[str]]) -> "Game":
        return Game(self.poset, tuple(frozenset(s) for s in winsets), self.convention)

    def restrict(self, keep: Iterable[str]) -> "Game":
        """Sub-game on ``keep``; winning sets are intersected with it."""
        keep = set(keep)
        poset = self.poset.restrict(keep)
        return Game(poset, tuple(s & keep for s in self.winsets), self.convention)

    def remove(self, drop: Iterable[str], *, drop_touching: bool = False) -> "Game":
        """Delete vertices; sets meeting them are dropped or shrunk."""
        drop = set(drop)
        keep = [v for v in self.vertices if v not in drop]
        poset = self.poset.restrict(keep)
        if drop_touching:
            sets = tuple(s for s in self.winsets if not s & drop)
        else:
            sets = tuple(s - drop for s in self.winsets)
        return Game(poset, sets, self.convention)

    def __repr__(self) -> str:
        return (
            f"Game({self.size} vertices, {len(self.winsets)} winning sets, "
            f"{self.convention.value})"
        )


@dataclass(frozen=True)
class Position:
    """A game with some vertices already claimed and a player to move."""

    game: Game
    maker_claimed: frozenset[str] = field(default_factory=frozenset)
    breaker_claimed: frozenset[str] = field(default_factory=frozenset)
    to_move: Player = Player.MAKER

    def __post_init__(self):
        object.__setattr__(self, "maker_claimed", frozenset(self.maker_claimed))
        object.__setattr__(self, "breaker_claimed", frozenset(self.breaker_claimed))
        poset = self.game.poset
        mk, bk = self.masks
        if mk & bk:
            raise ValueError("a vertex is claimed by both players")
        claimed = mk | bk
        for v in bits(claimed):
            if poset.below[v] & ~claimed:
                raise ValueError(
                    f"{poset.vertices[v]!r} is claimed before all smaller vertices"
                )

    @property
    def masks(self) -> tuple[int, int]:
        poset = self.game.poset
        return poset.mask(self.maker_claimed), poset.mask(self.breaker_claimed)

    @property
    def claimed(self) -> frozenset[str]:
        return self.maker_claimed | self.breaker_claimed

    def play(self, v: str) -> "Position":
        if v not in available_moves(self):
            raise ValueError(f"{v!r} is not an available move")
        if self.to_move is Player.MAKER:
            return Position(self.game, self.maker_claimed | {v}, self.breaker_claimed, Player.BREAKER)
        return Position(self.game, self.maker_claimed, self.breaker_claimed | {v}, Player.MAKER)


def available_moves(pos: Position) -> frozenset[str]:
    mk, bk = pos.masks
    poset = pos.game.poset
    return frozenset(poset.names(poset.available_mask(mk | bk)))


def p_value(g: Game | Poset, x: str) -> int:
    """Number of vertices not greater than or equal to ``x``."""
    poset = g.poset if isinstance(g, Game) else g
    i = poset.index(x)
    return len(poset) - 1 - poset.above[i].bit_count()


def normalize(pos: Position) -> Game:
    """Fold pre-played moves into an equivalent game with nothing claimed.

    Claimed vertices leave the board, sets hit by Breaker are dropped and
    sets touched by Maker shrink to their unclaimed part.  The player to
    move stays ``pos.to_move``.
    """
    g = pos.game
    if g.convention is not Convention.MAKER_BREAKER:
        raise ConventionMismatch("normalization is defined for Maker-Breaker games only")
    keep = [v for v in g.vertices if v not in pos.claimed]
    poset = g.poset.restrict(keep)
    sets = tuple(s - pos.maker_claimed for s in g.winsets if not s & pos.breaker_claimed)
    return Game(poset, sets, g.convention)


def chain_decomposition(p: Poset) -> list[list[str]] | None:
    """Chains listed top to bottom, or None if ``p`` is not disjoint chains.

    Chains are ordered by the declaration index of their bottom vertex.
    """
    n = len(p)
    for v in range(n):
        if p.preds[v].bit_count() > 1 or p.succs[v].bit_count() > 1:
            return None
    chains = []
    for v in range(n):
        if p.preds[v]:
            continue
        chain = [v]
        while p.succs[chain[-1]]:
            chain.append(p.succs[chain[-1]].bit_length() - 1)
        chains.append([p.vertices[i] for i in reversed(chain)])
    return chains


def chain_coordinates(p: Poset) -> dict[str, tuple[int, int]]:
    """Map each vertex to its 1-based (chain, depth-from-top) coordinates."""
    chains = chain_decomposition(p)
    if chains is None:
        raise NotChainPoset("poset is not a disjoint union of chains")
    return {v: (i, j) for i, ch in enumerate(chains, 1) for j, v in enumerate(ch, 1)}


def color_of(p: Poset, x: str) -> Color:
    p.index(x)
    _, j = chain_coordinates(p)[x]
    return Color.WHITE if j % 2 == len(p) % 2 else Color.BLACK
