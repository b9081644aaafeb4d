"""Exhaustive game-tree search used as ground truth for every other solver."""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass

from .core import Convention, Game, Outcome, Player, Position, bits
from .errors import BoardTooLarge, ConventionMismatch, GameOver, PreconditionViolated

DEFAULT_MAX_VERTICES = 24
HARD_MAX_VERTICES = 64

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))


class MMResult(enum.Enum):
    FIRST_WIN = "FirstWin"
    SECOND_WIN = "SecondWin"
    DRAW = "Draw"

    def __str__(self) -> str:
        return self.value


@dataclass
class SearchStats:
    nodes: int = 0
    states: int = 0


def _check_size(game: Game, max_vertices: int) -> None:
    cap = min(max_vertices, HARD_MAX_VERTICES)
    if game.size > cap:
        raise BoardTooLarge(f"{game.size} vertices exceeds the oracle cap of {cap}")


class MakerBreakerSearch:
    """Minimax over Maker-Breaker positions.

    Positions are memoized on the claimed set, the side to move and the
    family of live winning sets reduced by Maker's claims; two histories
    with equal keys have identical futures.
    """

    def __init__(self, game: Game, *, memo: bool = True, max_vertices: int = DEFAULT_MAX_VERTICES):
        if game.convention is not Convention.MAKER_BREAKER:
            raise ConventionMismatch("Maker-Breaker search on a Maker-Maker game")
        _check_size(game, max_vertices)
        self.game = game
        self.below = game.poset.below
        self.n = game.size
        self.wins = game.win_masks
        self.memo: dict | None = {} if memo else None
        self.stats = SearchStats()

    def _available(self, claimed: int) -> int:
        below = self.below
        m = 0
        free = ~claimed
        for v in range(self.n):
            if free >> v & 1 and not below[v] & free:
                m |= 1 << v
        return m

    def maker_wins(self, maker: int, breaker: int, maker_to_move: bool) -> bool:
        self.stats.nodes += 1
        live = []
        for w in self.wins:
            if not w & breaker:
                r = w & ~maker
                if not r:
                    return True
                live.append(r)
        if not live:
            return False
        claimed = maker | breaker
        avail = self._available(claimed)
        if not avail:
            return False
        if maker_to_move:
            for r in live:
                if r & (r - 1) == 0 and r & avail:
                    return True
        key = None
        if self.memo is not None:
            key = (claimed, maker_to_move, frozenset(live))
            hit = self.memo.get(key)
            if hit is not None:
                return hit
        hot = 0
        for r in live:
            hot |= r
        # moves inside live sets first, they decide most positions quickly
        order = list(bits(avail & hot)) + list(bits(avail & ~hot))
        if maker_to_move:
            result = any(self.maker_wins(maker | 1 << v, breaker, False) for v in order)
        else:
            result = all(self.maker_wins(maker, breaker | 1 << v, True) for v in order)
        if key is not None:
            self.memo[key] = result
            self.stats.states += 1
        return result


def _winner(maker_wins: bool) -> Player:
    return Player.MAKER if maker_wins else Player.BREAKER


def solve_mb(
    g: Game,
    first: Player = Player.MAKER,
    *,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    memo: bool = True,
    stats: SearchStats | None = None,
) -> Player:
    """Winner of a Maker-Breaker game under optimal play."""
    search = MakerBreakerSearch(g, memo=memo, max_vertices=max_vertices)
    result = search.maker_wins(0, 0, first is Player.MAKER)
    if stats is not None:
        stats.nodes += search.stats.nodes
        stats.states += search.stats.states
    return _winner(result)


def solve_position(
    pos: Position, *, max_vertices: int = DEFAULT_MAX_VERTICES, memo: bool = True
) -> Player:
    search = MakerBreakerSearch(pos.game, memo=memo, max_vertices=max_vertices)
    mk, bk = pos.masks
    return _winner(search.maker_wins(mk, bk, pos.to_move is Player.MAKER))


def outcome4(
    g: Game, *, max_vertices: int = DEFAULT_MAX_VERTICES, stats: SearchStats | None = None
) -> Outcome:
    search = MakerBreakerSearch(g, max_vertices=max_vertices)
    maker_first = _winner(search.maker_wins(0, 0, True))
    breaker_first = _winner(search.maker_wins(0, 0, False))
    if stats is not None:
        stats.nodes += search.stats.nodes
        stats.states += search.stats.states
    return Outcome.from_winners(maker_first, breaker_first)


class MakerMakerSearch:
    """Negamax for the strong game: the first player to fill a set wins."""

    def __init__(self, game: Game, *, max_vertices: int = DEFAULT_MAX_VERTICES):
        if game.convention is not Convention.MAKER_MAKER:
            raise ConventionMismatch("Maker-Maker search on a Maker-Breaker game")
        _check_size(game, max_vertices)
        if any(w == 0 for w in game.win_masks):
            raise PreconditionViolated("empty winning set in a Maker-Maker game")
        self.game = game
        self.below = game.poset.below
        self.n = game.size
        self.wins = game.win_masks
        self.memo: dict[tuple[int, int], int] = {}
        self.stats = SearchStats()

    def value(self, me: int, opp: int) -> int:
        """+1 / 0 / -1 for the player to move, owner of ``me``."""
        self.stats.nodes += 1
        key = (me, opp)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        claimed = me | opp
        free = ~claimed
        avail = 0
        for v in range(self.n):
            if free >> v & 1 and not self.below[v] & free:
                avail |= 1 << v
        result = 0
        if avail:
            mine = [w & ~me for w in self.wins if not w & opp]
            theirs = [w for w in self.wins if not w & me]
            if any(r & (r - 1) == 0 and r & avail for r in mine):
                result = 1
            elif mine or theirs:
                result = -1
                for v in bits(avail):
                    val = -self.value(opp, me | 1 << v)
                    if val > result:
                        result = val
                        if result == 1:
                            break
        self.memo[key] = result
        self.stats.states += 1
        return result


_MM_FROM_VALUE = {1: MMResult.FIRST_WIN, 0: MMResult.DRAW, -1: MMResult.SECOND_WIN}


def solve_mm(
    g: Game,
    first: Player = Player.MAKER,
    *,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    stats: SearchStats | None = None,
) -> MMResult:
    """Result of the strong game for a fixed first mover.

    The convention is symmetric, so ``first`` only names who "first" is.
    """
    search = MakerMakerSearch(g, max_vertices=max_vertices)
    result = _MM_FROM_VALUE[search.value(0, 0)]
    if stats is not None:
        stats.nodes += search.stats.nodes
        stats.states += search.stats.states
    return result


def is_over(pos: Position) -> bool:
    mk, bk = pos.masks
    g = pos.game
    claimed = mk | bk
    if claimed == g.poset.full_mask:
        return True
    if g.convention is Convention.MAKER_BREAKER:
        return any(w & ~mk == 0 for w in g.win_masks if not w & bk)
    return any(w and (w & ~mk == 0 or w & ~bk == 0) for w in g.win_masks)


def winner_of_finished(pos: Position) -> Player | None:
    """Winner of a finished position; None for a Maker-Maker draw."""
    mk, bk = pos.masks
    g = pos.game
    if any(w & ~mk == 0 for w in g.win_masks):
        return Player.MAKER
    if g.convention is Convention.MAKER_MAKER and any(w and w & ~bk == 0 for w in g.win_masks):
        return Player.BREAKER
    if g.convention is Convention.MAKER_MAKER:
        return None
    return Player.BREAKER


def best_move(pos: Position, *, max_vertices: int = DEFAULT_MAX_VERTICES) -> str:
    """A value-preserving move for the side to move, lowest index on ties."""
    if is_over(pos):
        raise GameOver("the game is already decided")
    g = pos.game
    mk, bk = pos.masks
    avail = list(bits(g.poset.available_mask(mk | bk)))
    if not avail:
        raise GameOver("no moves left")
    names = g.vertices
    if g.convention is Convention.MAKER_BREAKER:
        search = MakerBreakerSearch(g, max_vertices=max_vertices)
        maker_moving = pos.to_move is Player.MAKER
        for v in avail:
            if maker_moving:
                if search.maker_wins(mk | 1 << v, bk, False):
                    return names[v]
            elif not search.maker_wins(mk, bk | 1 << v, True):
                return names[v]
        return names[avail[0]]
    search = MakerMakerSearch(g, max_vertices=max_vertices)
    me, opp = (mk, bk) if pos.to_move is Player.MAKER else (bk, mk)
    best, best_val = avail[0], -2
    for v in avail:
        mine = me | 1 << v
        if any(w & ~mine == 0 for w in g.win_masks if not w & opp):
            return names[v]
        val = -search.value(opp, mine)
        if val > best_val:
            best, best_val = v, val
    return names[best]
