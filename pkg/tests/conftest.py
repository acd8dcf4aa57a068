import random

import pytest

from treechild import Network, construct_network, parse_enewick


def build_cherry(x="x", y="y"):
    """root -> t -> {x, y}"""
    return Network([(0, 1), (1, 2), (1, 3)], {2: x, 3: y})


def build_reticulated_cherry(x="x", y="y"):
    """Binary reticulated cherry (x, y): x below the reticulation."""
    return Network(
        [(0, 1), (1, 2), (1, 3), (2, 4), (2, 3), (3, 5)],
        {4: y, 5: x},
    )


def random_tree(taxa, seed):
    """A uniform-ish random rooted binary tree via a random cherry sequence."""
    rng = random.Random(seed)
    labels = list(taxa)
    rng.shuffle(labels)
    pairs = []
    while len(labels) > 1:
        x = labels.pop(rng.randrange(len(labels)))
        y = rng.choice(labels)
        pairs.append((x, y))
    return construct_network(pairs)


@pytest.fixture
def cherry():
    return build_cherry()


@pytest.fixture
def ret_cherry():
    return build_reticulated_cherry()


@pytest.fixture
def three_taxon_trees():
    return parse_enewick("((1,2),3);"), parse_enewick("((1,3),2);")
