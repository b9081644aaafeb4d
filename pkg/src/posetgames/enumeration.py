"""Exhaustive generators of small instance classes for equivalence checks."""

from __future__ import annotations

import itertools
from typing import Iterator

from .core import Game, Poset
from .reductions import CoverInstance


def integer_partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` into non-increasing parts of size at most ``largest``."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - first, first):
            yield (first,) + rest


def chain_poset(lengths: tuple[int, ...]) -> Poset:
    """Disjoint chains; chain ``i`` has vertices ``a{i}_1 < a{i}_2 < ...``."""
    vertices, covers = [], []
    for i, length in enumerate(lengths, 1):
        chain = [f"a{i}_{j}" for j in range(1, length + 1)]
        vertices += chain
        covers += list(zip(chain, chain[1:]))
    return Poset(vertices, covers)


def chain_posets(n: int, max_height: int | None = None) -> Iterator[Poset]:
    """Every disjoint-chain poset on ``n`` vertices, one per chain-length multiset."""
    for lengths in integer_partitions(n):
        if max_height is None or lengths[0] <= max_height:
            yield chain_poset(lengths)


def height2_posets(n: int) -> Iterator[Poset]:
    """Every poset of height at most 2 on ``n`` vertices, up to renaming tops.

    Bottoms are ``b1..``; each top ``t`` gets a nonempty predecessor set and
    tops are generated as a multiset of such sets.
    """
    for tops in range(0, n):
        bottoms = n - tops
        if tops and not bottoms:
            continue
        bnames = [f"b{i}" for i in range(1, bottoms + 1)]
        pred_sets = range(1, 1 << bottoms)
        for combo in itertools.combinations_with_replacement(pred_sets, tops):
            tnames = [f"t{i}" for i in range(1, tops + 1)]
            covers = [
                (bnames[b], t) for t, mask in zip(tnames, combo) for b in range(bottoms) if mask >> b & 1
            ]
            yield Poset(bnames + tnames, covers)


def games_with_sets(poset: Poset, candidates: list[frozenset[str]], max_sets: int) -> Iterator[Game]:
    for m in range(max_sets + 1):
        for combo in itertools.combinations(candidates, m):
            yield Game(poset, combo)


# -- hypergraphs up to isomorphism ------------------------------------------

def _hypergraph_classes(n: int, max_edges: int) -> dict[int, list[tuple[int, ...]]]:
    """Distinct-edge hypergraphs on ``n`` labelled points, one per isomorphism class.

    Edges are nonempty subsets encoded as bitmasks; the result maps an edge
    count to canonical edge tuples.
    """
    subsets = list(range(1, 1 << n))
    images = []
    for perm in itertools.permutations(range(n)):
        table = {}
        for s in subsets:
            t = 0
            for i in range(n):
                if s >> i & 1:
                    t |= 1 << perm[i]
            table[s] = t
        images.append(table)

    def canon(edges: tuple[int, ...]) -> tuple[int, ...]:
        return min(tuple(sorted(img[e] for e in edges)) for img in images)

    levels = {0: [()]}
    for m in range(1, max_edges + 1):
        seen = set()
        for base in levels[m - 1]:
            for e in subsets:
                if e not in base:
                    seen.add(canon(base + (e,)))
        levels[m] = sorted(seen)
    return levels


def cover_instances(max_size: int = 6) -> Iterator[CoverInstance]:
    """All Set Cover instances with ``n + m - k + 1 <= max_size`` and ``k >= 1``.

    Hypergraphs have distinct nonempty edges covering every element and are
    taken up to isomorphism.
    """
    bound = max_size - 1  # n + m - k <= bound
    for n in range(1, bound + 1):
        max_edges = min(bound, (1 << n) - 1)
        levels = _hypergraph_classes(n, max_edges)
        full = (1 << n) - 1
        names = [f"p{i}" for i in range(1, n + 1)]
        for m in range(1, max_edges + 1):
            ks = [k for k in range(1, min(n, m) + 1) if n + m - k <= bound]
            if not ks:
                continue
            for edges in levels[m]:
                union = 0
                for e in edges:
                    union |= e
                if union != full:
                    continue
                fam = tuple(frozenset(names[i] for i in range(n) if e >> i & 1) for e in edges)
                for k in ks:
                    yield CoverInstance(tuple(names), fam, k)
