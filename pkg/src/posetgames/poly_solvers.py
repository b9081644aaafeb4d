"""Polynomial special cases and a dispatcher that picks the cheapest solver."""

from __future__ import annotations

from dataclasses import dataclass

from . import chain_dp
from .core import Color, Convention, Game, Player, bits, chain_decomposition, color_of, p_value
from .dp_solver import solve_dp
from .errors import ConventionMismatch, NoSolverApplicable, PreconditionViolated
from .oracle import DEFAULT_MAX_VERTICES, solve_mb


@dataclass(frozen=True)
class SolverVerdict:
    """Winner with Maker moving first, and a short human-readable witness."""

    winner: Player
    certificate: str
    solver: str = ""

    def __str__(self) -> str:
        return f"{self.winner} ({self.solver}: {self.certificate})"


def _require_mb(g: Game) -> None:
    if g.convention is not Convention.MAKER_BREAKER:
        raise ConventionMismatch("this solver handles Maker-Breaker games only")


def _fmt(vs) -> str:
    return "{" + ", ".join(sorted(vs)) + "}"


def solve_height2_single_ws1(g: Game) -> SolverVerdict:
    """Height at most 2 with a single winning set ``{x}``.

    If ``x`` is not minimal, each predecessor ``y`` is classed by the parity
    of ``p(y)``: even ones are bad for Maker (claiming the last of them
    hands ``x`` to Breaker) and odd ones are good.
    """
    _require_mb(g)
    sets = set(g.winsets)
    if g.poset.height() > 2:
        raise PreconditionViolated("poset height exceeds 2")
    if len(sets) != 1 or len(next(iter(sets))) != 1:
        raise PreconditionViolated("expected exactly one winning set of size 1")
    (x,) = next(iter(sets))
    poset = g.poset
    xi = poset.index(x)
    if not poset.below[xi]:
        return SolverVerdict(Player.MAKER, f"{x} is minimal", "height2_single_ws1")
    preds = poset.names(poset.below[xi])
    even = [y for y in preds if p_value(poset, y) % 2 == 0]
    odd = [y for y in preds if p_value(poset, y) % 2 == 1]
    winner = Player.MAKER if len(even) <= len(odd) else Player.BREAKER
    rel = "<=" if winner is Player.MAKER else ">"
    return SolverVerdict(winner, f"|M|={len(even)} {rel} |B|={len(odd)}", "height2_single_ws1")


def solve_height2_all_tops(g: Game) -> SolverVerdict:
    """Height at most 2, winning sets are exactly the nonminimal singletons."""
    _require_mb(g)
    poset = g.poset
    if poset.height() > 2:
        raise PreconditionViolated("poset height exceeds 2")
    tops = [v for i, v in enumerate(poset.vertices) if poset.below[i]]
    if set(g.winsets) != {frozenset({t}) for t in tops}:
        raise PreconditionViolated("winning sets must be the singletons of all nonminimal vertices")
    name = "height2_all_tops"
    if not tops:
        return SolverVerdict(Player.BREAKER, "no nonminimal vertex, no winning set", name)
    if g.size % 2:
        return SolverVerdict(Player.MAKER, f"|X|={g.size} is odd", name)
    for t in tops:
        ti = poset.index(t)
        private = sum(1 for b in bits(poset.below[ti]) if poset.above[b] == 1 << ti)
        shared = poset.below[ti].bit_count() - private
        if private <= shared:
            return SolverVerdict(
                Player.MAKER, f"{t} has {private} private <= {shared} non-private predecessors", name
            )
    return SolverVerdict(Player.BREAKER, "every top has more private than non-private predecessors", name)


def solve_chains_ws1(g: Game) -> SolverVerdict:
    """Disjoint chains with singleton winning sets, decided by vertex colors."""
    _require_mb(g)
    chains = chain_decomposition(g.poset)
    if chains is None:
        raise PreconditionViolated("poset is not a disjoint union of chains")
    if any(len(s) != 1 for s in g.winsets):
        raise PreconditionViolated("all winning sets must have size 1")
    name = "chains_ws1"
    targets = sorted({v for s in g.winsets for v in s}, key=g.poset.index)
    if not targets:
        return SolverVerdict(Player.BREAKER, "no winning set", name)
    poset = g.poset
    for v in targets:
        if not poset.below[poset.index(v)]:
            return SolverVerdict(Player.MAKER, f"winning set {{{v}}} is minimal", name)
    for v in targets:
        if color_of(poset, v) is Color.WHITE:
            return SolverVerdict(Player.MAKER, f"white winning set {{{v}}}", name)
    if g.size % 2:
        chain_of = {v: i for i, ch in enumerate(chains) for v in ch}
        for a in targets:
            for b in targets:
                if chain_of[a] < chain_of[b]:
                    return SolverVerdict(
                        Player.MAKER, f"black winning sets {{{a}}}, {{{b}}} on different chains", name
                    )
    return SolverVerdict(Player.BREAKER, "all winning sets black and nonminimal on one chain or even board", name)


def solve_connect_k_known(k: int, w: int, h: int) -> SolverVerdict | None:
    """Verdict for Connect-k on a w x h board when a known result covers it."""
    if min(k, w, h) < 1:
        raise PreconditionViolated("k, w and h must be positive")
    if k > w and k > h:
        return SolverVerdict(Player.BREAKER, f"no alignment of {k} fits a {w}x{h} board", "connect_k")
    if 3 <= k <= w and h > 1 and w % 2 and h % 2:
        return SolverVerdict(Player.MAKER, f"odd board {w}x{h} with 3 <= k <= w", "connect_k")
    return None


def solve_bounded_chains(g: Game, m_cap: int = 8, s_cap: int = 3) -> SolverVerdict:
    """Disjoint chains with few small winning sets.

    Chains carrying no winning-set vertex are removed; an odd total of
    removed vertices is replaced by one isolated vertex.  The rest has width
    at most ``m*s + 1`` and goes to the antichain DP.
    """
    _require_mb(g)
    chains = chain_decomposition(g.poset)
    if chains is None:
        raise PreconditionViolated("poset is not a disjoint union of chains")
    sets = set(g.winsets)
    if len(sets) > m_cap or any(len(s) > s_cap for s in sets):
        raise PreconditionViolated(f"needs at most {m_cap} winning sets of size at most {s_cap}")
    name = "bounded_chains"
    if not sets:
        return SolverVerdict(Player.BREAKER, "no winning set", name)
    used = set().union(*sets)
    idle = [v for ch in chains if not used.intersection(ch) for v in ch]
    residual = g.remove(idle)
    if len(idle) % 2:
        pad = "_pad"
        while pad in g.poset:
            pad += "_"
        residual = Game.build(
            residual.vertices + (pad,), residual.poset.covers, residual.winsets, g.convention
        )
    winner = solve_dp(residual)
    return SolverVerdict(
        winner, f"removed {len(idle)} idle chain vertices, width {residual.poset.width()} DP", name
    )


# Caps that keep each general-purpose solver at desk scale.
CHAIN_DP_MAX_WIDTH = 6
BOUNDED_CHAINS_M_CAP = 12
BOUNDED_CHAINS_S_CAP = 4
DP_MAX_WIDTH = 5
DP_MAX_SETS = 16


def auto_dispatch(g: Game, *, oracle_cap: int = DEFAULT_MAX_VERTICES) -> SolverVerdict:
    """Route a Maker-Breaker game to the first applicable solver."""
    _require_mb(g)
    sets = set(g.winsets)
    if not sets:
        return SolverVerdict(Player.BREAKER, "no winning set", "trivial")
    if frozenset() in sets:
        return SolverVerdict(Player.MAKER, "empty winning set", "trivial")
    poset = g.poset
    chains = chain_decomposition(poset)
    height = poset.height()
    max_size = max(len(s) for s in sets)
    if chains is not None and max_size == 1:
        return solve_chains_ws1(g)
    if height <= 2 and len(sets) == 1 and max_size == 1:
        return solve_height2_single_ws1(g)
    tops = {frozenset({v}) for i, v in enumerate(poset.vertices) if poset.below[i]}
    if height <= 2 and tops and sets == tops:
        return solve_height2_all_tops(g)
    if chains is not None and max_size <= 2:
        if height <= 2:
            winner, why = chain_dp.explain_chains_h2_ws2(g)
            return SolverVerdict(winner, why, "chains_h2_ws2")
        if len(chains) <= CHAIN_DP_MAX_WIDTH:
            winner = chain_dp.solve_chains_ws2(g)
            return SolverVerdict(winner, f"chain DP over {len(chains)} chains", "chains_ws2")
    if chains is not None and len(sets) <= BOUNDED_CHAINS_M_CAP and max_size <= BOUNDED_CHAINS_S_CAP:
        return solve_bounded_chains(g, BOUNDED_CHAINS_M_CAP, BOUNDED_CHAINS_S_CAP)
    width = poset.width()
    if width <= DP_MAX_WIDTH and len(sets) <= DP_MAX_SETS:
        return SolverVerdict(solve_dp(g), f"antichain DP, width {width}, {len(sets)} sets", "dp")
    if g.size <= oracle_cap:
        return SolverVerdict(
            solve_mb(g, max_vertices=oracle_cap), f"exhaustive search on {g.size} vertices", "oracle"
        )
    raise NoSolverApplicable(
        f"{g.size} vertices, width {width}, {len(sets)} sets: beyond every solver cap"
    )
