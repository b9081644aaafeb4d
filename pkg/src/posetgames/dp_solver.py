"""Dynamic program over (available antichain, winning-set liveness) states.

A state is the antichain ``Y`` of available vertices together with a
vector ``B`` telling which winning sets are still untouched by Breaker.
Everything unclaimed is exactly the up-closure of ``Y``, so the pair
determines the residual game.  Runs in O(|X|^w 2^m w^4).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Convention, Game, Player, bits
from .errors import ConventionMismatch, PreconditionViolated
from .oracle import MMResult


@dataclass
class DPStats:
    states: int = 0
    keys: set = field(default_factory=set, repr=False)


@dataclass(frozen=True)
class DPState:
    Y: tuple[int, ...]
    B: int


class _AntichainDP:
    def __init__(self, game: Game):
        self.game = game
        poset = game.poset
        self.below = poset.below
        self.above = poset.above
        self.sets = game.win_masks
        self.m = len(self.sets)
        # for each vertex, the bitmask of winning sets containing it
        self.touch = [0] * game.size
        for i, s in enumerate(self.sets):
            for v in bits(s):
                self.touch[v] |= 1 << i

    def minimal(self, unclaimed: int) -> int:
        y = 0
        for v in bits(unclaimed):
            if not self.below[v] & unclaimed:
                y |= 1 << v
        return y


class MakerBreakerDP(_AntichainDP):
    def __init__(self, game: Game):
        super().__init__(game)
        self.memo: dict[DPState, bool] = {}
        self.stats = DPStats()

    def solve(self) -> bool:
        full = self.game.poset.full_mask
        return self.maker_wins(full, (1 << self.m) - 1)

    def maker_wins(self, unclaimed: int, live: int) -> bool:
        y = self.minimal(unclaimed)
        # rule 1: a live set reduced to nothing, or to one available vertex
        for i in bits(live):
            r = self.sets[i] & unclaimed
            if r == 0 or (r & (r - 1) == 0 and r & y):
                return True
        # rule 2: every set already hit by Breaker
        if not live:
            return False
        key = DPState(tuple(bits(y)), live)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.stats.states += 1
        result = False
        for u in bits(y):
            after_u = unclaimed & ~(1 << u)
            replies = self.minimal(after_u)
            if not replies:
                # Maker took the last vertex without filling a set
                continue
            for v in bits(replies):
                live_uv = live & ~self.touch[v]
                assert live_uv & ~live == 0, "a dead winning set came back to life"
                if not self.maker_wins(after_u & ~(1 << v), live_uv):
                    break
            else:
                result = True
                break
        self.memo[key] = result
        return result


def solve_dp(g: Game, stats: DPStats | None = None) -> Player:
    """Winner of a Maker-Breaker game with Maker moving first."""
    if g.convention is not Convention.MAKER_BREAKER:
        raise ConventionMismatch("solve_dp expects a Maker-Breaker game")
    dp = MakerBreakerDP(g)
    result = dp.solve()
    if stats is not None:
        stats.states += dp.stats.states
        stats.keys |= set(dp.memo)
    return Player.MAKER if result else Player.BREAKER


# Per-set status in the Maker-Maker variant.  "Untouched" is not stored
# separately: a set with status FIRST and no claimed element is untouched.
FIRST, SECOND, BOTH = 0, 1, 2


class MakerMakerDP(_AntichainDP):
    def __init__(self, game: Game):
        super().__init__(game)
        if any(s == 0 for s in self.sets):
            raise PreconditionViolated("empty winning set in a Maker-Maker game")
        self.n = game.size
        self.memo: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
        self.stats = DPStats()

    def solve(self) -> MMResult:
        value = self.value(self.game.poset.full_mask, (FIRST,) * self.m)
        return {1: MMResult.FIRST_WIN, 0: MMResult.DRAW, -1: MMResult.SECOND_WIN}[value]

    def value(self, unclaimed: int, status: tuple[int, ...]) -> int:
        """Game value for the first player."""
        y = self.minimal(unclaimed)
        if not y:
            return 0
        claimed_count = self.n - unclaimed.bit_count()
        first_to_move = claimed_count % 2 == 0
        claimed = ~unclaimed
        live_first = []
        live_second = []
        for i, s in enumerate(status):
            r = self.sets[i] & unclaimed
            if s == FIRST:
                live_first.append(r)
                if not self.sets[i] & claimed:
                    live_second.append(r)
            elif s == SECOND:
                live_second.append(r)
        if not live_first and not live_second:
            return 0
        mover_live = live_first if first_to_move else live_second
        sign = 1 if first_to_move else -1
        if any(r & (r - 1) == 0 and r & y for r in mover_live):
            return sign
        key = (tuple(bits(y)), status)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.stats.states += 1
        best = -1
        for u in bits(y):
            new_status = list(status)
            for i in bits(self.touch[u]):
                s = status[i]
                if first_to_move:
                    if s == SECOND:
                        new_status[i] = BOTH
                elif s == FIRST:
                    untouched = not self.sets[i] & claimed
                    new_status[i] = SECOND if untouched else BOTH
            val = sign * self.value(unclaimed & ~(1 << u), tuple(new_status))
            if val > best:
                best = val
                if best == 1:
                    break
        result = sign * best
        self.memo[key] = result
        return result


def solve_dp_mm(g: Game, stats: DPStats | None = None) -> MMResult:
    """Result of a Maker-Maker game for the first player, via the ternary DP."""
    if g.convention is not Convention.MAKER_MAKER:
        raise ConventionMismatch("solve_dp_mm expects a Maker-Maker game")
    dp = MakerMakerDP(g)
    result = dp.solve()
    if stats is not None:
        stats.states += dp.stats.states
    return result
