"""Instance files and seeded random instances.

The text format is line oriented::

    ppg v1
    convention: maker-breaker
    vertex a
    vertex b
    cover a b        # a < b
    winset a

Blank lines and ``#`` comments are ignored.  A ``winset`` line with no
identifiers declares the empty winning set.
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass

from .core import Convention, Game, Poset
from .errors import DuplicateVertex, InfeasibleSpec, InstanceSyntaxError, UnknownVertex

HEADER = "ppg v1"


def parse_instance(text: str) -> Game:
    vertices: list[str] = []
    known: set[str] = set()
    covers: list[tuple[str, str]] = []
    sets: list[frozenset[str]] = []
    convention = Convention.MAKER_BREAKER
    seen_header = False
    seen_convention = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line.split() != HEADER.split():
                raise InstanceSyntaxError(f"expected header {HEADER!r}", lineno)
            seen_header = True
            continue
        if line.startswith("convention:"):
            if seen_convention or vertices:
                raise InstanceSyntaxError("convention must appear once, before any vertex", lineno)
            value = line[len("convention:"):].strip()
            try:
                convention = Convention(value)
            except ValueError:
                raise InstanceSyntaxError(f"unknown convention {value!r}", lineno) from None
            seen_convention = True
            continue
        head, *args = line.split()
        if head == "vertex":
            if len(args) != 1:
                raise InstanceSyntaxError("'vertex' takes exactly one identifier", lineno)
            if args[0] in known:
                raise DuplicateVertex(f"line {lineno}: vertex {args[0]!r} declared twice")
            vertices.append(args[0])
            known.add(args[0])
        elif head in ("cover", "winset"):
            for v in args:
                if v not in known:
                    raise UnknownVertex(f"line {lineno}: unknown vertex {v!r}")
            if head == "cover":
                if len(args) != 2:
                    raise InstanceSyntaxError("'cover' takes exactly two identifiers", lineno)
                covers.append((args[0], args[1]))
            else:
                sets.append(frozenset(args))
        else:
            raise InstanceSyntaxError(f"unknown directive {head!r}", lineno)
    if not seen_header:
        raise InstanceSyntaxError(f"empty input, expected header {HEADER!r}")
    return Game(Poset(vertices, covers), tuple(sets), convention)


def write_instance(g: Game, comments: tuple[str, ...] = ()) -> str:
    lines = [HEADER]
    lines += [f"# {c}" for c in comments]
    lines.append(f"convention: {g.convention.value}")
    lines += [f"vertex {v}" for v in g.vertices]
    lines += [f"cover {a} {b}" for a, b in g.poset.sorted_covers()]
    order = g.poset.index
    for s in g.winsets:
        lines.append(" ".join(["winset", *sorted(s, key=order)]))
    return "\n".join(lines) + "\n"


def read_source(path: str) -> str:
    """File contents, or standard input when ``path`` is ``-``."""
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_instance(path: str) -> Game:
    return parse_instance(read_source(path))


@dataclass(frozen=True)
class GenSpec:
    n: int
    w: int
    m: int
    s: int
    seed: int = 0
    density: float = 0.15
    convention: Convention = Convention.MAKER_BREAKER


def random_game(spec: GenSpec) -> Game:
    """A random game whose poset is covered by ``spec.w`` chains.

    Vertices get a random topological order and a chain label; chains
    follow that order, and extra relations are only added forward in it,
    so the width never exceeds ``w``.
    """
    n, w, m, s = spec.n, spec.w, spec.m, spec.s
    if min(n, w, m, s) < 0:
        raise InfeasibleSpec("counts must be nonnegative")
    if w > n or s > n or (n > 0 and w == 0):
        raise InfeasibleSpec(f"need 1 <= w <= n and s <= n (n={n}, w={w}, s={s})")
    if not 0 <= spec.density <= 1:
        raise InfeasibleSpec("density must lie in [0, 1]")
    rng = random.Random(spec.seed)
    names = [f"v{i}" for i in range(1, n + 1)]
    order = names[:]
    rng.shuffle(order)
    labels = list(range(w)) + [rng.randrange(w) for _ in range(n - w)] if n else []
    rng.shuffle(labels)
    covers = []
    last: dict[int, str] = {}
    for v, lab in zip(order, labels):
        if lab in last:
            covers.append((last[lab], v))
        last[lab] = v
    for i in range(n):
        for j in range(i + 1, n):
            if labels[i] != labels[j] and rng.random() < spec.density:
                covers.append((order[i], order[j]))
    sets = tuple(frozenset(rng.sample(names, s)) for _ in range(m))
    return Game(Poset(names, covers), sets, spec.convention)
