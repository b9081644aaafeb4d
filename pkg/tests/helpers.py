"""Small builders shared by the test modules."""

import random

from posetgames.core import Game, Poset


def chain(*names):
    """Covers for a chain listed bottom to top."""
    return list(zip(names, names[1:]))


def chains_game(lengths, sets, convention=None):
    """Disjoint chains; chain i (1-based) has ``x{i}{j}`` with j=1 the top.

    ``sets`` lists winning sets as iterables of vertex names.
    """
    vertices, covers = [], []
    for i, length in enumerate(lengths, 1):
        names = [f"x{i}{j}" for j in range(1, length + 1)]
        vertices += names
        covers += [(names[j + 1], names[j]) for j in range(length - 1)]
    kwargs = {} if convention is None else {"convention": convention}
    return Game.build(vertices, covers, sets, **kwargs)


def random_chain_game(rng: random.Random, max_width=3, max_height=5, max_sets=4, max_size=2, max_n=12):
    while True:
        w = rng.randint(1, max_width)
        lengths = [rng.randint(1, max_height) for _ in range(w)]
        if sum(lengths) <= max_n:
            break
    vertices = [f"x{i}{j}" for i, length in enumerate(lengths, 1) for j in range(1, length + 1)]
    sets = [
        rng.sample(vertices, rng.randint(1, min(max_size, len(vertices))))
        for _ in range(rng.randint(0, max_sets))
    ]
    return chains_game(lengths, sets)


def sample_poset():
    covers = [("a", "c"), ("b", "c"), ("c", "d"), ("e", "f"), ("f", "g"), ("g", "h"), ("g", "i"), ("e", "d")]
    return Poset(list("abcdefghi"), covers)
