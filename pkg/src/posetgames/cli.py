"""Command-line interface: ``ppg solve|outcome|union|gen|verify|play``."""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
import time
from dataclasses import dataclass
from typing import Callable, TextIO

from . import chain_dp, poly_solvers
from .core import Convention, Game, Outcome, Player, Position, normalize
from .dp_solver import DPStats, solve_dp, solve_dp_mm
from .enumeration import chain_posets, games_with_sets, height2_posets
from .errors import NoSolverApplicable, PosetGameError, PreconditionViolated
from .io import GenSpec, load_instance, random_game, read_source, write_instance
from .oracle import (
    DEFAULT_MAX_VERTICES,
    SearchStats,
    best_move,
    is_over,
    outcome4,
    solve_mb,
    solve_mm,
    winner_of_finished,
)
from .reductions import (
    from_3qbf,
    from_3sat,
    from_avoid_true,
    from_setcover,
    gen_connect_k,
    parse_avoid_true,
    parse_dimacs,
    parse_qdimacs,
    parse_setcover,
)
from .union import (
    COMPLETENESS_PAIRS,
    disjoint_union,
    parity_of,
    union_table_lookup,
    witness_catalog,
)

PLAYERS = {"maker": Player.MAKER, "breaker": Player.BREAKER}


@dataclass
class Report:
    winner: str | None = None
    outcome: str | None = None
    solver: str = ""
    certificate: str = ""
    nodes: int = 0


# -- solving ----------------------------------------------------------------

def _maker_first(g: Game, algo: str, report: Report, max_vertices: int) -> Player:
    if algo == "oracle":
        stats = SearchStats()
        winner = solve_mb(g, max_vertices=max_vertices, stats=stats)
        report.nodes += stats.nodes
        report.solver = "oracle"
        return winner
    if algo == "dp":
        stats = DPStats()
        winner = solve_dp(g, stats)
        report.nodes += stats.states
        report.solver = "dp"
        return winner
    if algo == "poly":
        verdict = _poly_only(g)
    else:
        verdict = poly_solvers.auto_dispatch(g, oracle_cap=max_vertices)
    report.solver = verdict.solver
    report.certificate = verdict.certificate
    return verdict.winner


def _poly_only(g: Game) -> poly_solvers.SolverVerdict:
    attempts: list[Callable[[Game], poly_solvers.SolverVerdict]] = [
        poly_solvers.solve_chains_ws1,
        poly_solvers.solve_height2_single_ws1,
        poly_solvers.solve_height2_all_tops,
    ]
    for solver in attempts:
        try:
            return solver(g)
        except PreconditionViolated:
            continue
    try:
        winner, why = chain_dp.explain_chains_h2_ws2(g)
        return poly_solvers.SolverVerdict(winner, why, "chains_h2_ws2")
    except PreconditionViolated:
        pass
    try:
        winner = chain_dp.solve_chains_ws2(g)
        return poly_solvers.SolverVerdict(winner, "chain DP", "chains_ws2")
    except PreconditionViolated:
        pass
    raise NoSolverApplicable("no polynomial-time solver covers this game")


def winner_for(g: Game, first: Player, algo: str, report: Report, max_vertices: int) -> Player:
    """Maker-Breaker winner with ``first`` to move, using ``algo``."""
    if first is Player.MAKER or algo == "oracle":
        if algo == "oracle":
            stats = SearchStats()
            winner = solve_mb(g, first, max_vertices=max_vertices, stats=stats)
            report.nodes += stats.nodes
            report.solver = "oracle"
            return winner
        return _maker_first(g, algo, report, max_vertices)
    # Breaker first: try each opening and solve the rest with Maker to move.
    start = Position(g, to_move=Player.BREAKER)
    for v in sorted(g.poset.names(g.poset.minimal_mask()), key=g.poset.index):
        rest = normalize(start.play(v))
        if _maker_first(rest, algo, report, max_vertices) is Player.BREAKER:
            return Player.BREAKER
    if not g.vertices:
        return Player.MAKER if frozenset() in g.winsets else Player.BREAKER
    return Player.MAKER


def mm_result(g: Game, algo: str, report: Report, max_vertices: int):
    if algo == "dp":
        stats = DPStats()
        result = solve_dp_mm(g, stats)
        report.nodes += stats.states
        report.solver = "dp"
        return result
    if algo == "poly":
        raise NoSolverApplicable("no polynomial-time solver for Maker-Maker games")
    stats = SearchStats()
    result = solve_mm(g, max_vertices=max_vertices, stats=stats)
    report.nodes += stats.nodes
    report.solver = "oracle"
    return result


# -- output -------------------------------------------------------------------

def _emit(args, report: Report, text: str, out: TextIO, elapsed: float) -> None:
    if getattr(args, "json", False):
        payload = {
            "winner": report.winner,
            "outcome": report.outcome,
            "solver": report.solver,
            "certificate": report.certificate,
            "nodes": report.nodes,
            "time": round(elapsed, 6),
        }
        out.write(json.dumps(payload) + "\n")
    else:
        out.write(text + "\n")
        if getattr(args, "verbose", False) and report.solver:
            detail = f"{report.solver}: {report.certificate}" if report.certificate else report.solver
            out.write(f"# {detail}, {report.nodes} nodes, {elapsed:.3f}s\n")


# -- subcommands --------------------------------------------------------------

def cmd_solve(args, out: TextIO) -> int:
    g = load_instance(args.file)
    report = Report()
    t0 = time.perf_counter()
    if g.convention is Convention.MAKER_MAKER:
        result = mm_result(g, args.algo, report, args.max_vertices)
        report.winner = str(result)
        text = str(result)
    elif args.first == "both":
        mf = winner_for(g, Player.MAKER, args.algo, report, args.max_vertices)
        bf = winner_for(g, Player.BREAKER, args.algo, report, args.max_vertices)
        report.winner = f"{mf}/{bf}"
        report.outcome = str(Outcome.from_winners(mf, bf))
        text = f"maker first: {mf}\nbreaker first: {bf}"
    else:
        winner = winner_for(g, PLAYERS[args.first], args.algo, report, args.max_vertices)
        report.winner = str(winner)
        text = str(winner)
    _emit(args, report, text, out, time.perf_counter() - t0)
    return 0


def _outcome(g: Game, algo: str, report: Report, max_vertices: int) -> Outcome:
    if algo == "oracle":
        stats = SearchStats()
        result = outcome4(g, max_vertices=max_vertices, stats=stats)
        report.nodes += stats.nodes
        report.solver = "oracle"
        return result
    mf = winner_for(g, Player.MAKER, algo, report, max_vertices)
    bf = winner_for(g, Player.BREAKER, algo, report, max_vertices)
    return Outcome.from_winners(mf, bf)


def cmd_outcome(args, out: TextIO) -> int:
    g = load_instance(args.file)
    if g.convention is not Convention.MAKER_BREAKER:
        raise PreconditionViolated("outcome classes are defined for Maker-Breaker games")
    report = Report()
    t0 = time.perf_counter()
    result = _outcome(g, args.algo, report, args.max_vertices)
    report.outcome = str(result)
    _emit(args, report, str(result), out, time.perf_counter() - t0)
    return 0


def cmd_union(args, out: TextIO) -> int:
    g1, g2 = load_instance(args.file1), load_instance(args.file2)
    u = disjoint_union(g1, g2)
    report = Report()
    t0 = time.perf_counter()
    o1 = _outcome(g1, args.algo, report, args.max_vertices)
    o2 = _outcome(g2, args.algo, report, args.max_vertices)
    ou = _outcome(u, args.algo, report, args.max_vertices)
    report.outcome = str(ou)
    lines = [str(ou)]
    status = 0
    if args.check_table:
        cell = union_table_lookup(parity_of(g1), parity_of(g2), o1, o2)
        names = "".join(o.value for o in sorted(cell, key=lambda o: "MNPB".index(o.value)))
        ok = ou in cell
        report.certificate = f"{parity_of(g1)} {o1} + {parity_of(g2)} {o2} -> {{{names}}}"
        lines.append(f"table cell {report.certificate}: {'ok' if ok else 'VIOLATION'}")
        status = 0 if ok else 1
    _emit(args, report, "\n".join(lines), out, time.perf_counter() - t0)
    return status


def cmd_gen(args, out: TextIO) -> int:
    kind = args.kind
    comments: tuple[str, ...] = ()
    if kind == "connectk":
        g = gen_connect_k(args.k, args.w, args.h)
        comments = (f"connect-{args.k} on {args.w} columns of height {args.h}",)
    elif kind == "sat":
        g = from_3sat(parse_dimacs(read_source(args.file)))
    elif kind == "qbf":
        g = from_3qbf(parse_qdimacs(read_source(args.file)))
    elif kind == "setcover":
        g = from_setcover(parse_setcover(read_source(args.file), args.k))
    elif kind == "avoidtrue":
        g = from_avoid_true(parse_avoid_true(read_source(args.file)))
    else:
        conv = Convention(args.convention)
        spec = GenSpec(args.n, args.width, args.winsets, args.size, args.seed, args.density, conv)
        g = random_game(spec)
        comments = (f"random n={spec.n} w={spec.w} m={spec.m} s={spec.s} seed={spec.seed}",
                    f"measured width {g.poset.width()}")
    out.write(write_instance(g, comments))
    return 0


def _verify_union_table(args, out: TextIO) -> int:
    rng = random.Random(args.seed)
    violations = 0
    for i in range(args.samples):
        parts = []
        for _ in range(2):
            n = rng.randint(1, args.max_n)
            spec = GenSpec(
                n=n,
                w=rng.randint(1, n),
                m=rng.randint(0, 3),
                s=rng.randint(1, min(3, n)),
                seed=rng.randrange(2**31),
                density=rng.choice((0.0, 0.2, 0.4)),
            )
            parts.append(random_game(spec))
        g1, g2 = parts
        o1, o2 = outcome4(g1), outcome4(g2)
        ou = outcome4(disjoint_union(g1, g2))
        if ou not in union_table_lookup(parity_of(g1), parity_of(g2), o1, o2):
            violations += 1
            out.write(f"violation in sample {i}: {o1} + {o2} gave {ou}\n")
    out.write(f"union-table: {args.samples} samples, {violations} violations\n")
    return 1 if violations else 0


def _verify_witnesses(args, out: TextIO) -> int:
    cat = witness_catalog()
    bad = 0
    for name, w in cat.items():
        got = outcome4(w.game)
        mark = "ok" if got is w.outcome else "MISMATCH"
        bad += got is not w.outcome
        out.write(f"{name:4} {w.parity:4} expected {w.outcome} got {got} {mark}\n")
    for a, b, expected in COMPLETENESS_PAIRS:
        got = outcome4(disjoint_union(cat[a].game, cat[b].game))
        if got.value != expected:
            bad += 1
            out.write(f"{a} + {b}: expected {expected} got {got} MISMATCH\n")
    out.write(f"witnesses: {len(cat)} games, {len(COMPLETENESS_PAIRS)} unions, {bad} mismatches\n")
    return 1 if bad else 0


def _solver_family(name: str, max_n: int):
    """Instances and the solver under test for ``verify solvers``."""
    if name == "h2-single":
        games = (
            Game(p, (frozenset({x}),))
            for n in range(1, max_n + 1)
            for p in height2_posets(n)
            for x in p.vertices
        )
        return games, lambda g: poly_solvers.solve_height2_single_ws1(g).winner
    if name == "all-tops":
        def tops(p):
            return tuple(frozenset({v}) for i, v in enumerate(p.vertices) if p.below[i])
        games = (Game(p, tops(p)) for n in range(1, max_n + 1) for p in height2_posets(n))
        return games, lambda g: poly_solvers.solve_height2_all_tops(g).winner
    if name == "chains-ws1":
        games = (
            Game(p, tuple(frozenset({v}) for v in subset))
            for n in range(1, max_n + 1)
            for p in chain_posets(n)
            for r in range(n + 1)
            for subset in itertools.combinations(p.vertices, r)
        )
        return games, lambda g: poly_solvers.solve_chains_ws1(g).winner
    if name in ("chains-h2-ws2", "chains-ws2"):
        height = 2 if name == "chains-h2-ws2" else None

        def family():
            for n in range(1, max_n + 1):
                for p in chain_posets(n, max_height=height):
                    cand = [frozenset(c) for r in (1, 2) for c in itertools.combinations(p.vertices, r)]
                    yield from games_with_sets(p, cand, 3)

        solver = chain_dp.solve_chains_h2_ws2 if height else chain_dp.solve_chains_ws2
        return family(), solver
    raise PreconditionViolated(f"unknown family {name!r}")


SOLVER_FAMILIES = ("h2-single", "all-tops", "chains-ws1", "chains-h2-ws2", "chains-ws2")


def _verify_solvers(args, out: TextIO) -> int:
    games, solver = _solver_family(args.family, args.max_n)
    count = bad = 0
    for g in games:
        count += 1
        if solver(g) is not solve_mb(g):
            bad += 1
            out.write(f"disagreement: {write_instance(g)}")
    out.write(f"{args.family}: {count} games, {bad} disagreements\n")
    return 1 if bad else 0


def cmd_verify(args, out: TextIO) -> int:
    if args.what == "union-table":
        return _verify_union_table(args, out)
    if args.what == "witnesses":
        return _verify_witnesses(args, out)
    return _verify_solvers(args, out)


def cmd_play(args, out: TextIO, inp: TextIO) -> int:
    g = load_instance(args.file)
    human = PLAYERS[args.as_]
    pos = Position(g, to_move=PLAYERS[args.first])
    names = {Player.MAKER: "Maker", Player.BREAKER: "Breaker"}
    if g.convention is Convention.MAKER_MAKER:
        out.write("Maker-Maker game: 'Maker' moves first unless --first breaker\n")
    while not is_over(pos):
        avail = sorted(g.poset.names(g.poset.available_mask(pos.masks[0] | pos.masks[1])), key=g.poset.index)
        out.write(f"Maker: {sorted(pos.maker_claimed)}  Breaker: {sorted(pos.breaker_claimed)}\n")
        out.write(f"available: {' '.join(avail)}\n")
        if pos.to_move is human:
            out.write(f"{names[human]}> ")
            out.flush()
            line = inp.readline()
            if not line:
                out.write("\nend of input, leaving\n")
                return 0
            move = line.strip()
            if move in ("quit", "exit"):
                return 0
            if move not in avail:
                out.write(f"illegal move {move!r}; legal moves: {' '.join(avail)}\n")
                continue
        else:
            move = best_move(pos, max_vertices=args.max_vertices)
            out.write(f"{names[pos.to_move]} plays {move}\n")
        pos = pos.play(move)
    winner = winner_of_finished(pos)
    out.write("draw\n" if winner is None else f"{names[winner]} wins\n")
    return 0


# -- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ppg", description="Solve positional games on posets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def query(p: argparse.ArgumentParser) -> None:
        p.add_argument("--algo", choices=("auto", "oracle", "dp", "poly"), default="auto")
        p.add_argument("--json", action="store_true", help="print a JSON envelope")
        p.add_argument("-v", "--verbose", action="store_true", help="also print the solver used")
        p.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES,
                       help="oracle size cap (default %(default)s)")

    p = sub.add_parser("solve", help="winner under optimal play")
    p.add_argument("file", help="instance file, or - for stdin")
    p.add_argument("--first", choices=("maker", "breaker", "both"), default="maker")
    query(p)

    p = sub.add_parser("outcome", help="outcome class M, N, P or B")
    p.add_argument("file")
    query(p)
    p.set_defaults(algo="oracle")

    p = sub.add_parser("union", help="outcome of a disjoint union")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--check-table", action="store_true", help="check the result against the union tables")
    query(p)
    p.set_defaults(algo="oracle")

    p = sub.add_parser("gen", help="write a generated instance to stdout")
    gen = p.add_subparsers(dest="kind", required=True)
    g = gen.add_parser("connectk")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--w", type=int, required=True)
    g.add_argument("--h", type=int, required=True)
    for kind, help_text in (("sat", "DIMACS CNF file"), ("qbf", "QDIMACS file"), ("avoidtrue", "var/clause file")):
        g = gen.add_parser(kind)
        g.add_argument("file", help=help_text)
    g = gen.add_parser("setcover")
    g.add_argument("file", help="element/edge file")
    g.add_argument("--k", type=int, required=True)
    g = gen.add_parser("random")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--width", type=int, required=True)
    g.add_argument("--winsets", type=int, required=True)
    g.add_argument("--size", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--density", type=float, default=0.15)
    g.add_argument("--convention", choices=[c.value for c in Convention], default="maker-breaker")

    p = sub.add_parser("verify", help="run a verification harness")
    ver = p.add_subparsers(dest="what", required=True)
    v = ver.add_parser("union-table")
    v.add_argument("--max-n", type=int, default=8)
    v.add_argument("--samples", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    ver.add_parser("witnesses")
    v = ver.add_parser("solvers")
    v.add_argument("--family", choices=SOLVER_FAMILIES, required=True)
    v.add_argument("--max-n", type=int, default=6)

    p = sub.add_parser("play", help="play against the engine")
    p.add_argument("file")
    p.add_argument("--as", dest="as_", choices=("maker", "breaker"), default="maker")
    p.add_argument("--first", choices=("maker", "breaker"), default="maker")
    p.add_argument("--engine", choices=("oracle",), default="oracle")
    p.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    return parser


def main(argv: list[str] | None = None, out: TextIO | None = None, inp: TextIO | None = None) -> int:
    out = out or sys.stdout
    inp = inp or sys.stdin
    args = build_parser().parse_args(argv)
    handlers = {
        "solve": cmd_solve,
        "outcome": cmd_outcome,
        "union": cmd_union,
        "gen": cmd_gen,
        "verify": cmd_verify,
    }
    try:
        if args.command == "play":
            return cmd_play(args, out, inp)
        return handlers[args.command](args, out)
    except (PosetGameError, OSError) as exc:
        print(f"ppg: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
