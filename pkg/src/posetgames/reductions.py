"""Instance generators from classic hard problems, plus brute-force referees.

Each ``from_*`` function builds a poset game whose winner encodes the answer
to the source instance.  The referees (``satisfiable``, ``is_true``,
``has_cover``, ``avoid_true_winner``) answer the source question directly, so
the two can be compared on small inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .core import Convention, Game, Poset
from .errors import InstanceSyntaxError, InvalidBudget, PreconditionViolated


# -- CNF and QBF ------------------------------------------------------------

@dataclass(frozen=True)
class CnfFormula:
    """Clauses are tuples of nonzero signed variable indices (1-based)."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.num_vars < 0:
            raise PreconditionViolated("negative variable count")
        norm = []
        for c in self.clauses:
            lits = tuple(dict.fromkeys(int(l) for l in c))
            if not lits:
                raise PreconditionViolated("empty clause")
            for l in lits:
                if l == 0 or abs(l) > self.num_vars:
                    raise PreconditionViolated(f"literal {l} out of range 1..{self.num_vars}")
            if len(lits) > 3:
                raise PreconditionViolated(f"clause {c} has more than 3 literals")
            norm.append(lits)
        object.__setattr__(self, "clauses", tuple(norm))

    def evaluate(self, assignment: dict[int, bool] | tuple[bool, ...]) -> bool:
        value = (lambda i: assignment[i - 1]) if isinstance(assignment, tuple) else assignment.__getitem__
        return all(any(value(abs(l)) == (l > 0) for l in c) for c in self.clauses)

    def satisfiable(self) -> bool:
        return any(
            self.evaluate(bits) for bits in itertools.product((False, True), repeat=self.num_vars)
        )


@dataclass(frozen=True)
class QbfFormula:
    """``forall x1 exists x2 ... forall x(2n-1) exists x(2n)`` applied to ``matrix``."""

    matrix: CnfFormula

    def __post_init__(self):
        if self.matrix.num_vars % 2 or self.matrix.num_vars == 0:
            raise PreconditionViolated("the prefix needs a positive even number of variables")

    @property
    def n(self) -> int:
        return self.matrix.num_vars // 2

    def is_true(self) -> bool:
        total = self.matrix.num_vars

        @lru_cache(maxsize=None)
        def value(prefix: tuple[bool, ...]) -> bool:
            if len(prefix) == total:
                return self.matrix.evaluate(prefix)
            branches = (value(prefix + (b,)) for b in (False, True))
            return all(branches) if len(prefix) % 2 == 0 else any(branches)

        return value(())


def _lit_vertex(l: int) -> str:
    return f"v{l}" if l > 0 else f"nv{-l}"


def from_3sat(f: CnfFormula) -> Game:
    """Height-2 game that Breaker wins iff ``f`` is satisfiable."""
    vertices, covers = [], []
    for i in range(1, f.num_vars + 1):
        vertices += [f"u{i}", f"v{i}", f"nv{i}", f"tv{i}"]
        covers += [(f"u{i}", f"v{i}"), (f"u{i}", f"nv{i}"), (f"u{i}", f"tv{i}")]
    sets = [frozenset(_lit_vertex(l) for l in c) for c in f.clauses]
    return Game(Poset(vertices, covers), tuple(sets))


def from_3qbf(q: QbfFormula) -> Game:
    """Width-2 game that Maker wins iff the falsifying player wins ``q``."""
    total = q.matrix.num_vars
    vertices, covers = [], []
    for i in range(1, total + 1):
        vertices += [f"v{i}", f"nv{i}"]
        if i < total:
            vertices.append(f"u{i}")
            covers += [(f"v{i}", f"u{i}"), (f"nv{i}", f"u{i}")]
            covers += [(f"u{i}", f"v{i + 1}"), (f"u{i}", f"nv{i + 1}")]
    sets = [frozenset(_lit_vertex(l) for l in c) for c in q.matrix.clauses]
    return Game(Poset(vertices, covers), tuple(sets))


# -- Set Cover --------------------------------------------------------------

@dataclass(frozen=True)
class CoverInstance:
    elements: tuple[str, ...]
    edges: tuple[frozenset[str], ...]
    k: int

    def __post_init__(self):
        edges = tuple(frozenset(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        universe = set(self.elements)
        if len(universe) != len(self.elements):
            raise PreconditionViolated("duplicate element")
        for e in edges:
            if not e <= universe:
                raise PreconditionViolated(f"edge {sorted(e)} mentions unknown elements")
        covered = set().union(*edges) if edges else set()
        if covered != universe:
            missing = sorted(universe - covered)
            raise PreconditionViolated(f"elements {missing} lie in no edge")

    def has_cover(self) -> bool:
        """Whether some ``k`` edges cover every element."""
        universe = set(self.elements)
        if self.k < 0 or self.k > len(self.edges):
            return False
        return any(
            set().union(*combo) == universe if combo else not universe
            for combo in itertools.combinations(self.edges, self.k)
        )


def from_setcover(c: CoverInstance) -> Game:
    """Height-3 game with winning set ``{x}``; Breaker wins iff a k-cover exists."""
    n, m, k = len(c.elements), len(c.edges), c.k
    if k < 0 or k > m or k > n:
        raise InvalidBudget(f"budget k={k} must satisfy 0 <= k <= min(m={m}, n={n})")
    xv = [f"xv_{e}" for e in c.elements]
    xe = [f"xe_{j}" for j in range(1, m + 1)]
    xm = [f"xm_{j}" for j in range(1, m - k + 1)]
    xb = [f"xb_{j}" for j in range(1, n - k + 1)]
    vertices = xm + xe + xv + xb + ["x", "y"]
    covers = [(a, b) for a in xm for b in xv]
    vname = dict(zip(c.elements, xv))
    covers += [(xe[j], vname[el]) for j, edge in enumerate(c.edges) for el in sorted(edge)]
    covers += [(a, b) for a in xe for b in xb]
    covers += [(a, "x") for a in xv + xb]
    covers += [(a, "y") for a in xb]
    return Game(Poset(vertices, covers), (frozenset({"x"}),))


# -- Avoid True -------------------------------------------------------------

@dataclass(frozen=True)
class PosDnf:
    """Positive DNF: a disjunction of conjunctions of at most two variables."""

    variables: tuple[str, ...]
    clauses: tuple[frozenset[str], ...]

    def __post_init__(self):
        clauses = tuple(frozenset(c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        known = set(self.variables)
        if len(known) != len(self.variables):
            raise PreconditionViolated("duplicate variable")
        for c in clauses:
            if not c or len(c) > 2:
                raise PreconditionViolated("clauses must have one or two variables")
            if not c <= known:
                raise PreconditionViolated(f"clause {sorted(c)} mentions unknown variables")


def avoid_true_winner(d: PosDnf) -> str | None:
    """Brute-force Avoid True: "first", "second", or None when no clause exists.

    Players alternately set an unset variable to True; whoever first makes
    some clause true loses.
    """
    if not d.clauses:
        return None
    index = {v: i for i, v in enumerate(d.variables)}
    masks = [sum(1 << index[v] for v in c) for c in d.clauses]

    @lru_cache(maxsize=None)
    def mover_wins(chosen: int) -> bool:
        moves = [i for i in range(len(d.variables)) if not chosen >> i & 1]
        for i in moves:
            nxt = chosen | 1 << i
            if any(m & nxt == m for m in masks):
                continue  # this move satisfies a clause and loses
            if not mover_wins(nxt):
                return True
        return False

    return "first" if mover_wins(0) else "second"


def from_avoid_true(d: PosDnf) -> Game:
    """Maker-Maker game whose first player wins iff the first player wins ``d``."""
    vertices = [f"v_{x}" for x in d.variables]
    covers = []
    sets = []
    for j, c in enumerate(d.clauses, 1):
        vertices.append(f"u_{j}")
        covers += [(f"v_{x}", f"u_{j}") for x in sorted(c)]
        sets.append(frozenset({f"u_{j}"}))
    return Game(Poset(vertices, covers), tuple(sets), Convention.MAKER_MAKER)


# -- Connect-k ----------------------------------------------------------------

def connect_k_cell(col: int, row: int) -> str:
    return f"c{col}r{row}"


def gen_connect_k(k: int, w: int, h: int) -> Game:
    """Connect-k on ``w`` columns of height ``h``; row 1 is the bottom."""
    if min(k, w, h) < 1:
        raise PreconditionViolated("k, w and h must be positive")
    vertices = [connect_k_cell(c, r) for c in range(1, w + 1) for r in range(1, h + 1)]
    covers = [
        (connect_k_cell(c, r), connect_k_cell(c, r + 1)) for c in range(1, w + 1) for r in range(1, h)
    ]
    sets = []
    for dc, dr in ((1, 0), (0, 1), (1, 1), (1, -1)):
        for c in range(1, w + 1):
            for r in range(1, h + 1):
                cells = [(c + t * dc, r + t * dr) for t in range(k)]
                if all(1 <= cc <= w and 1 <= rr <= h for cc, rr in cells):
                    sets.append(frozenset(connect_k_cell(cc, rr) for cc, rr in cells))
    return Game(Poset(vertices, covers), tuple(sets))


# -- parsers ----------------------------------------------------------------

def _dimacs_body(text: str, allow_prefix: bool):
    num_vars = None
    prefix: list[tuple[str, int]] = []
    clauses: list[tuple[int, ...]] = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "cnf":
                raise InstanceSyntaxError("expected 'p cnf VARS CLAUSES'", lineno)
            try:
                num_vars = int(parts[2])
            except ValueError:
                raise InstanceSyntaxError("bad variable count", lineno) from None
            continue
        if num_vars is None:
            raise InstanceSyntaxError("missing 'p cnf' header", lineno)
        if parts[0] in ("a", "e"):
            if not allow_prefix:
                raise InstanceSyntaxError("quantifier line in a plain CNF file", lineno)
            if clauses or pending:
                raise InstanceSyntaxError("quantifier line after clauses", lineno)
            try:
                nums = [int(t) for t in parts[1:]]
            except ValueError:
                raise InstanceSyntaxError("non-integer token", lineno) from None
            if not nums or nums[-1] != 0:
                raise InstanceSyntaxError("quantifier line must end with 0", lineno)
            prefix += [(parts[0], v) for v in nums[:-1]]
            continue
        try:
            nums = [int(t) for t in parts]
        except ValueError:
            raise InstanceSyntaxError(f"unexpected token in {line!r}", lineno) from None
        for t in nums:
            if t == 0:
                if not pending:
                    raise InstanceSyntaxError("empty clause", lineno)
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(t)
    if num_vars is None:
        raise InstanceSyntaxError("missing 'p cnf' header")
    if pending:
        clauses.append(tuple(pending))
    return num_vars, prefix, clauses


def parse_dimacs(text: str) -> CnfFormula:
    num_vars, _, clauses = _dimacs_body(text, allow_prefix=False)
    return CnfFormula(num_vars, tuple(clauses))


def parse_qdimacs(text: str) -> QbfFormula:
    """Read a QDIMACS file whose prefix alternates forall/exists, one variable each.

    Variables are renumbered in prefix order.
    """
    num_vars, prefix, clauses = _dimacs_body(text, allow_prefix=True)
    if not prefix:
        raise PreconditionViolated("missing quantifier prefix")
    for pos, (quant, _) in enumerate(prefix):
        if quant != ("a" if pos % 2 == 0 else "e"):
            raise PreconditionViolated("prefix must alternate forall/exists starting with forall")
    if len(prefix) % 2:
        raise PreconditionViolated("prefix must end with an existential variable")
    order = {v: i for i, (_, v) in enumerate(prefix, 1)}
    if len(order) != len(prefix):
        raise PreconditionViolated("variable quantified twice")
    free = {abs(l) for c in clauses for l in c} - set(order)
    if free:
        raise PreconditionViolated(f"free variables {sorted(free)}")
    renamed = tuple(tuple(order[abs(l)] * (1 if l > 0 else -1) for l in c) for c in clauses)
    return QbfFormula(CnfFormula(len(prefix), renamed))


def _line_format(text: str, item: str, group: str):
    items: list[str] = []
    groups: list[list[str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == item:
            if len(rest) != 1:
                raise InstanceSyntaxError(f"'{item}' takes exactly one identifier", lineno)
            items.append(rest[0])
        elif head == group:
            if not rest:
                raise InstanceSyntaxError(f"'{group}' needs at least one identifier", lineno)
            groups.append(rest)
        else:
            raise InstanceSyntaxError(f"unknown directive {head!r}", lineno)
    return items, groups


def parse_setcover(text: str, k: int) -> CoverInstance:
    """``element ID`` and ``edge ID [ID ...]`` lines."""
    elements, edges = _line_format(text, "element", "edge")
    return CoverInstance(tuple(elements), tuple(frozenset(e) for e in edges), k)


def parse_avoid_true(text: str) -> PosDnf:
    """``var ID`` and ``clause ID [ID]`` lines."""
    variables, clauses = _line_format(text, "var", "clause")
    return PosDnf(tuple(variables), tuple(frozenset(c) for c in clauses))
