"""Games on disjoint chains with winning sets of size at most two.

Chain coordinates follow the usual convention: chain ``i`` is listed from
its top ``x[i,1]`` down to its bottom ``x[i,len]``, and ``x[i,j]`` is white
when ``j`` has the parity of the board size, black otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Game, Player, chain_decomposition
from .errors import PreconditionViolated

Coord = tuple[int, int]


class ChainBoard:
    """Coordinate view of a game whose poset is a disjoint union of chains."""

    def __init__(self, game: Game):
        chains = chain_decomposition(game.poset)
        if chains is None:
            raise PreconditionViolated("poset is not a disjoint union of chains")
        self.game = game
        self.chains = chains
        self.lengths = tuple(len(c) for c in chains)
        self.parity = game.size % 2
        self.coord: dict[str, Coord] = {
            v: (i, j) for i, ch in enumerate(chains) for j, v in enumerate(ch, 1)
        }

    def vertex(self, i: int, j: int) -> str:
        return self.chains[i][j - 1]

    def white(self, j: int) -> bool:
        return j % 2 == self.parity

    def family(self) -> list[tuple[Coord, ...]]:
        seen = set()
        out = []
        for s in self.game.winsets:
            key = tuple(sorted(self.coord[v] for v in s))
            if key not in seen:
                seen.add(key)
                out.append(key)
        return out


# -- black singleton reduction ----------------------------------------------

def reduce_black_singleton(g: Game, i: int, j: int) -> Game:
    """Cut the top of chain ``i`` above the black singleton ``{x[i,j]}``.

    ``i`` and ``j`` are 1-based.  An even number of vertices is removed, so
    every surviving vertex keeps its color.
    """
    board = ChainBoard(g)
    if not 1 <= i <= len(board.chains) or not 1 <= j <= board.lengths[i - 1]:
        raise PreconditionViolated(f"no vertex x[{i},{j}]")
    ci = i - 1
    target = board.vertex(ci, j)
    if frozenset({target}) not in g.winsets:
        raise PreconditionViolated(f"{{{target}}} is not a winning set")
    if board.white(j):
        raise PreconditionViolated(f"{target} is white")
    if j == board.lengths[ci]:
        raise PreconditionViolated(f"{target} is minimal")
    if j < 3:
        raise PreconditionViolated("the reduction needs j >= 3")
    for s in g.winsets:
        coords = [board.coord[v] for v in s]
        if coords and all(c[0] == ci and c[1] < j and board.white(c[1]) for c in coords):
            raise PreconditionViolated(
                f"winning set {sorted(s)} has only white vertices above {target}"
            )
    cut = j - 1 if board.parity == 0 else j - 2
    removed = {board.vertex(ci, jj) for jj in range(1, cut + 1)}
    sets = []
    for s in g.winsets:
        hit = s & removed
        if any(not board.white(board.coord[v][1]) for v in hit):
            continue
        sets.append(s - hit)
    keep = [v for v in g.vertices if v not in removed]
    return Game(g.poset.restrict(keep), tuple(sets), g.convention)


# -- the (K, W) dynamic program ---------------------------------------------

@dataclass(frozen=True)
class ChainState:
    """Sub-position of the chain DP.

    ``K[i]`` is the index of the lowest unclaimed vertex of chain ``i``,
    ``W[i]`` the index of a pending black singleton (0 for none) and
    ``top[i]`` the index of the highest vertex still on the board; the
    region above it was cut by black singleton reductions.
    """

    K: tuple[int, ...]
    W: tuple[int, ...]
    top: tuple[int, ...]


class ChainDP:
    def __init__(self, game: Game):
        board = ChainBoard(game)
        fam = board.family()
        if any(len(s) > 2 for s in fam):
            raise PreconditionViolated("winning sets must have size at most 2")
        self.board = board
        self.sets = [tuple((i, j) for i, j in s) for s in fam]
        self.w = len(board.chains)
        self.memo: dict[ChainState, bool] = {}

    def initial(self) -> ChainState:
        return ChainState(self.board.lengths, (0,) * self.w, (1,) * self.w)

    def solve(self) -> bool:
        return self.maker_wins(self.initial())

    def family(self, st: ChainState) -> set[tuple[Coord, ...]]:
        white = self.board.white
        fam = set()
        for s in self.sets:
            if any(j > st.K[i] for i, j in s):
                continue
            if any(j < st.top[i] and not white(j) for i, j in s):
                continue
            fam.add(tuple(c for c in s if c[1] >= st.top[c[0]]))
        for i, s in enumerate(st.W):
            if s:
                fam.add(((i, s),))
        return fam

    def screen(self, st: ChainState, fam: set) -> bool | None:
        """Positions decided without search, or None."""
        if not fam:
            return False
        white = self.board.white
        black_chains = set()
        for s in fam:
            if len(s) == 0:
                return True
            if len(s) == 1:
                i, j = s[0]
                if white(j) or j == st.K[i]:
                    return True
                black_chains.add(i)
            elif s[0][0] == s[1][0] and white(s[0][1]) and white(s[1][1]):
                return True
        if self.board.parity == 1 and len(black_chains) >= 2:
            return True
        return None

    def maker_wins(self, st: ChainState) -> bool:
        hit = self.memo.get(st)
        if hit is not None:
            return hit
        fam = self.family(st)
        result = self.screen(st, fam)
        if result is None:
            result = self._search(st, fam)
        self.memo[st] = result
        return result

    def _search(self, st: ChainState, fam: set) -> bool:
        white = self.board.white
        odd = self.board.parity == 1
        partners: dict[Coord, list[Coord]] = {}
        for s in fam:
            if len(s) == 2:
                a, b = s
                partners.setdefault(a, []).append(b)
                partners.setdefault(b, []).append(a)
        for i in range(self.w):
            if st.K[i] < st.top[i]:
                continue
            u = (i, st.K[i])
            k1 = list(st.K)
            k1[i] -= 1
            replies = [ii for ii in range(self.w) if k1[ii] >= st.top[ii]]
            if not replies:
                continue
            for ii in replies:
                v = (ii, k1[ii])
                k2 = list(k1)
                k2[ii] -= 1
                created = [c for c in partners.get(u, ()) if c != v]
                if any(white(j) for _, j in created):
                    continue  # Maker now owns a white singleton
                w2 = list(st.W)
                top2 = list(st.top)
                if w2[ii] == v[1]:
                    w2[ii] = 0
                for ci, cj in created:
                    if cj > w2[ci]:
                        w2[ci] = cj
                        top2[ci] = max(top2[ci], cj if not odd else cj - 1)
                nxt = ChainState(tuple(k2), tuple(w2), tuple(top2))
                if not self.maker_wins(nxt):
                    break
            else:
                return True
        return False


def solve_chains_ws2(g: Game) -> Player:
    """Winner with Maker first; disjoint chains, winning sets of size <= 2."""
    dp = ChainDP(g)
    return Player.MAKER if dp.solve() else Player.BREAKER


# -- chains of height at most two -------------------------------------------

class _HeightTwo:
    """Bottom/top view of a disjoint union of chains of height <= 2."""

    def __init__(self, game: Game):
        chains = chain_decomposition(game.poset)
        if chains is None:
            raise PreconditionViolated("poset is not a disjoint union of chains")
        if any(len(c) > 2 for c in chains):
            raise PreconditionViolated("chains must have height at most 2")
        fam = set(game.winsets)
        if any(len(s) > 2 for s in fam):
            raise PreconditionViolated("winning sets must have size at most 2")
        self.game = game
        self.family = fam
        self.top_of: dict[str, str | None] = {}
        self.bottom_of: dict[str, str] = {}
        for ch in chains:
            if len(ch) == 2:
                self.top_of[ch[1]] = ch[0]
                self.bottom_of[ch[0]] = ch[1]
            else:
                self.top_of[ch[0]] = None
        self.bottoms = [v for v in game.vertices if v in self.top_of]
        self.paired = [v for v in self.bottoms if self.top_of[v] is not None]

    def is_bottom(self, v: str) -> bool:
        return v in self.top_of

    def bottom_pairs(self) -> list[frozenset[str]]:
        return [s for s in self.family if len(s) == 2 and all(self.is_bottom(v) for v in s)]


@dataclass(frozen=True)
class Reduction:
    kind: str  # "R1" or "R2"
    vertices: frozenset[str]  # R1: the two bottoms; R2: all vertices of the index set
    index_set: frozenset[str] = frozenset()  # R2: bottoms x_i, i in I


def find_reduction_h2(g: Game) -> Reduction | None:
    """An outcome-neutral reduction of an even game, or None."""
    view = _HeightTwo(g)
    if g.size % 2:
        raise PreconditionViolated("reductions R1/R2 need an even board")
    return _find_reduction(view)


def _find_reduction(view: _HeightTwo) -> Reduction | None:
    fam = view.family
    for s in sorted(view.bottom_pairs(), key=sorted):
        if all(not (t & s) for t in fam if t != s):
            return Reduction("R1", s)
    for seed in view.paired:
        index = {seed}
        frontier = [seed]
        while frontier:
            x = frontier.pop()
            for t in fam:
                if x in t and len(t) == 2:
                    (other,) = t - {x}
                    if other in view.bottom_of:
                        nb = view.bottom_of[other]
                        if nb not in index:
                            index.add(nb)
                            frontier.append(nb)
        tops = {view.top_of[x] for x in index}
        if all(t & tops for t in fam if t & index):
            return Reduction("R2", frozenset(index | tops), frozenset(index))
    return None


def apply_reduction(g: Game, red: Reduction) -> Game:
    if red.kind == "R1":
        sets = [s for s in g.winsets if s != red.vertices]
        keep = [v for v in g.vertices if v not in red.vertices]
        return Game(g.poset.restrict(keep), tuple(sets), g.convention)
    return g.remove(red.vertices, drop_touching=True)


def reduce_to_fixpoint(g: Game) -> tuple[Game, list[Reduction]]:
    applied = []
    while True:
        red = find_reduction_h2(g)
        if red is None:
            return g, applied
        g = apply_reduction(g, red)
        applied.append(red)


@dataclass(frozen=True)
class Pattern:
    """A good or winning pattern.

    ``bottoms`` is ``x[i1], ..., x[il]``; the pattern sets are
    ``{x[i1], x[i2]}`` followed by ``{x[ik], y[ik+1]}``.  A winning pattern
    closes with ``{x[il], z}``.
    """

    kind: str
    bottoms: tuple[str, ...]
    tops: tuple[str, ...]  # y[i3], ..., y[il]
    z: str | None = None

    def winsets(self) -> list[frozenset[str]]:
        xs = self.bottoms
        out = [frozenset(xs[:2])]
        out += [frozenset({xs[k], y}) for k, y in zip(range(1, len(xs) - 1), self.tops)]
        if self.z is not None:
            out.append(frozenset({xs[-1], self.z}))
        return out


def find_winning_pattern(g: Game) -> Pattern | None:
    """Search for a winning pattern; Maker wins whenever one exists."""
    view = _HeightTwo(g)
    fam = view.family
    pairs_of: dict[str, list[str]] = {}
    for s in fam:
        if len(s) == 2:
            a, b = sorted(s)
            pairs_of.setdefault(a, []).append(b)
            pairs_of.setdefault(b, []).append(a)

    def closing(path: list[str], tops: list[str]) -> str | None:
        last = path[-1]
        used = set(path) | set(tops)
        allowed_tops = {view.top_of[path[0]], view.top_of[path[1]]} - {None}
        for z in sorted(pairs_of.get(last, ())):
            if z in path[1:-1] or z in allowed_tops:
                return z
            if view.is_bottom(z) and z not in used:
                return z
        return None

    def extend(path: list[str], tops: list[str]) -> Pattern | None:
        if len(path) >= 3:
            z = closing(path, tops)
            if z is not None:
                return Pattern("winning", tuple(path), tuple(tops), z)
        for y in sorted(pairs_of.get(path[-1], ())):
            x = view.bottom_of.get(y)
            if x is None or x in path:
                continue
            found = extend(path + [x], tops + [y])
            if found:
                return found
        return None

    for s in sorted(view.bottom_pairs(), key=sorted):
        a, b = sorted(s)
        for first, second in ((a, b), (b, a)):
            found = extend([first, second], [])
            if found:
                return found
    return None


def _odd_case(view: _HeightTwo) -> str | None:
    """Name of the condition under which Maker wins an odd board, or None."""
    fam = view.family
    bottom_pairs = view.bottom_pairs()
    for s in fam:
        if not s:
            return "empty winning set"
        if len(s) == 1 and view.is_bottom(next(iter(s))):
            return f"bottom singleton {sorted(s)}"
    for s in bottom_pairs:
        for t in bottom_pairs:
            if s != t and s & t:
                return f"bottom pairs {sorted(s)} and {sorted(t)} share a vertex"
    for s in bottom_pairs:
        for x in s:
            y = view.top_of[x]
            if y is not None and frozenset({x, y}) in fam:
                return f"bottom pair {sorted(s)} with chain set {{{x}, {y}}}"
    for s in fam:
        if len(s) == 2:
            a, b = sorted(s, key=view.is_bottom)
            if view.is_bottom(b) and not view.is_bottom(a) and view.top_of[b] != a:
                return f"cross set {{{b}, {a}}}"
    for s in fam:
        if all(not view.is_bottom(v) for v in s):
            return f"all-top set {sorted(s)}"
    return None


def solve_chains_h2_ws2(g: Game) -> Player:
    """Winner with Maker first on height-2 chains with sets of size <= 2."""
    return explain_chains_h2_ws2(g)[0]


def explain_chains_h2_ws2(g: Game) -> tuple[Player, str]:
    """Winner with Maker first, plus a one-line justification."""
    view = _HeightTwo(g)
    if g.size % 2:
        reason = _odd_case(view)
        if reason:
            return Player.MAKER, f"odd board, {reason}"
        return Player.BREAKER, "odd board, no Maker condition holds"
    reduced, applied = g, []
    while True:
        red = _find_reduction(_HeightTwo(reduced))
        if red is None:
            break
        reduced = apply_reduction(reduced, red)
        applied.append(red)
    steps = ", ".join(r.kind for r in applied) or "none"
    if reduced.winsets:
        return Player.MAKER, f"even board, reductions {steps}, winning sets remain"
    return Player.BREAKER, f"even board, reductions {steps}, no winning set remains"
