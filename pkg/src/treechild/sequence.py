"""Tree-child sequences: validation, weight, reduction and construction.

A tree-child sequence (TCS) is an ordered list of leaf pairs such that

1. the second coordinate of each pair occurs as a first coordinate later in
   the sequence, or equals the second coordinate of the last pair, and
2. no first coordinate appears as a second coordinate later on.

Reducing a network by a sequence folds :func:`~treechild.network.reduce_pair`
over the pairs; building a network from a sequence folds
:func:`~treechild.network.add_pair` from the last pair backwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .network import (
    Network,
    Taxon,
    add_pair,
    reduce_pair,
    single_leaf,
)

Pair = tuple[Taxon, Taxon]


def _as_pairs(pairs: Iterable[Pair] | "TCSequence") -> list[Pair]:
    if isinstance(pairs, TCSequence):
        return list(pairs.pairs)
    return [(p[0], p[1]) for p in pairs]


def is_tcs(pairs: Iterable[Pair], taxa: Iterable[Taxon] | None = None) -> bool:
    """Check both tree-child sequence conditions.

    With ``taxa`` given, pair coordinates outside the universe raise
    ValueError (a precondition violation, not a False).
    """
    seq = _as_pairs(pairs)
    if taxa is not None:
        universe = set(taxa)
        for x, y in seq:
            if x not in universe or y not in universe:
                raise ValueError(f"pair ({x!r}, {y!r}) uses a taxon outside the universe")
    if not seq:
        return True
    if any(x == y for x, y in seq):
        return False
    last_second = seq[-1][1]
    firsts_after: set[Taxon] = set()
    seconds_after: set[Taxon] = set()
    for x, y in reversed(seq):
        if x in seconds_after:
            return False
        if y != last_second and y not in firsts_after:
            return False
        firsts_after.add(x)
        seconds_after.add(y)
    return True


def weight(pairs: Iterable[Pair] | "TCSequence") -> int:
    """|S| - |leaves involved in S| + 1; the empty sequence has weight 0."""
    seq = _as_pairs(pairs)
    if not seq:
        return 0
    leaves = {t for p in seq for t in p}
    return len(seq) - len(leaves) + 1


def forbidden(pairs: Iterable[Pair] | "TCSequence") -> frozenset[Taxon]:
    """The first coordinates of a prefix; they may not recur as second coordinates."""
    return frozenset(x for x, _ in _as_pairs(pairs))


def is_extendable(pairs: Iterable[Pair] | "TCSequence", taxa: Iterable[Taxon]) -> bool:
    """True iff the prefix extends to a full TCS over the given taxa.

    Exactly when condition 2 holds within the prefix, no pair repeats a
    coordinate, and some taxon is still unforbidden: appending (y, u) for
    each second coordinate y that never recurs, with u a fixed unforbidden
    taxon, completes the prefix.
    """
    seq = _as_pairs(pairs)
    if any(x == y for x, y in seq):
        return False
    seconds_after: set[Taxon] = set()
    for x, y in reversed(seq):
        if x in seconds_after:
            return False
        seconds_after.add(y)
    used = forbidden(seq)
    return any(t not in used for t in taxa)


@dataclass(frozen=True)
class TCSequence:
    """A validated tree-child sequence (raises ValueError otherwise)."""

    pairs: tuple[Pair, ...]

    def __post_init__(self):
        normalized = tuple((p[0], p[1]) for p in self.pairs)
        object.__setattr__(self, "pairs", normalized)
        if not is_tcs(normalized):
            raise ValueError(f"not a tree-child sequence: {normalized}")

    @property
    def leaves(self) -> frozenset[Taxon]:
        return frozenset(t for p in self.pairs for t in p)

    @property
    def weight(self) -> int:
        return weight(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __getitem__(self, i):
        return self.pairs[i]

    def as_text(self) -> str:
        return format_pairs(self.pairs)

    @classmethod
    def from_text(cls, text: str) -> "TCSequence":
        return cls(tuple(parse_pairs(text)))


def reduce_by_sequence(n: Network, pairs: Iterable[Pair] | TCSequence) -> Network:
    """Left-fold of reduce_pair; pairs not reducible at their turn are no-ops."""
    for pair in _as_pairs(pairs):
        n = reduce_pair(n, pair)
    return n


def _is_single_leaf(n: Network) -> Taxon | None:
    if len(n.nodes) == 2 and len(n.leaf_labels) == 1:
        return next(iter(n.leaf_labels.values()))
    return None


def reduces_set(networks: Iterable[Network], pairs: Iterable[Pair] | TCSequence) -> bool:
    """True iff the sequence reduces every network to the same single leaf."""
    seq = _as_pairs(pairs)
    final: Taxon | None = None
    for net in networks:
        leaf = _is_single_leaf(reduce_by_sequence(net, seq))
        if leaf is None:
            return False
        if final is None:
            final = leaf
        elif leaf != final:
            return False
    return True


def construct_network(pairs: Iterable[Pair] | TCSequence) -> Network:
    """Build the network a TCS reduces, processing pairs from last to first.

    Starts from the single-leaf tree on the last pair's second coordinate and
    adds each earlier pair in turn.  The result is stack-free and tree-child,
    with reticulation number equal to the sequence weight.
    """
    seq = _as_pairs(pairs)
    if not is_tcs(seq):
        raise ValueError("construct_network requires a valid tree-child sequence")
    if not seq:
        raise ValueError("cannot construct a network from an empty sequence")
    net = single_leaf(seq[-1][1])
    for pair in reversed(seq):
        net = add_pair(net, pair)
    return net


def format_pairs(pairs: Iterable[Pair] | TCSequence) -> str:
    """One 'first,second' line per pair."""
    seq = _as_pairs(pairs)
    for x, y in seq:
        for t in (x, y):
            if "," in t or "\n" in t or not t:
                raise ValueError(f"taxon {t!r} cannot be written in pair-per-line form")
    return "".join(f"{x},{y}\n" for x, y in seq)


def parse_pairs(text: str) -> list[Pair]:
    """Parse the pair-per-line text form; '#' lines are comments."""
    out: list[Pair] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(",")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise ValueError(f"sequence line {lineno}: expected 'first,second', got {raw!r}")
        out.append((parts[0].strip(), parts[1].strip()))
    return out
