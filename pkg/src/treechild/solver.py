"""Branching search for a minimum-weight tree-child sequence.

The search appends trivial pairs for free, fails on cherries whose leaves
are both forbidden and on reticulated cherries whose second coordinate is
forbidden, and otherwise branches over every reducible pair whose second
coordinate is not forbidden.  Two prunes bound the tree: at most 8k
reducible pairs may remain at any branch point of a budget-k search, and
the running weight may never reach the budget before branching.

``solve`` wraps the bounded search in iterative deepening.  A bounded run
that failed without ever hitting a budget or width prune explored the whole
structural search space, so its failure proves the instance incompatible at
every budget; symmetrically, a prune-free success is optimal even when the
trivial-pair loop pushed the weight past the nominal budget.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .network import (
    Network,
    PairKind,
    Taxon,
    is_tree_child,
    reduce_pair,
    reducible_pairs,
    reticulation_number,
    single_leaf,
    validate,
)
from .sequence import (
    Pair,
    TCSequence,
    construct_network,
    forbidden,
    is_extendable,
    reduce_by_sequence,
    weight,
)

FAIL_FORBIDDEN_PAIR = "forbidden_pair"
FAIL_BRANCH_WIDTH = "branch_width"
FAIL_BUDGET = "budget"
FAIL_BEST_SO_FAR = "best_so_far"
FAIL_NO_BRANCH = "no_viable_branch"

_INCOMPLETENESS_REASONS = (FAIL_BUDGET, FAIL_BRANCH_WIDTH)


@dataclass(frozen=True)
class Instance:
    """A set of valid tree-child networks on one common taxon set."""

    networks: tuple[Network, ...]
    taxa: frozenset[Taxon]

    def __post_init__(self):
        object.__setattr__(self, "networks", tuple(self.networks))
        if not self.networks:
            raise ValueError("an instance needs at least one network")
        for i, net in enumerate(self.networks):
            diags = validate(net)
            if diags:
                raise ValueError(f"network {i} is not valid: {diags[0]}")
            if not is_tree_child(net):
                raise ValueError(f"network {i} is not tree-child")
            if net.taxa != self.taxa:
                raise ValueError(
                    f"network {i} is on taxa {sorted(net.taxa)}, expected {sorted(self.taxa)}"
                )

    @classmethod
    def from_networks(cls, networks: Iterable[Network]) -> "Instance":
        nets = tuple(networks)
        if not nets:
            raise ValueError("an instance needs at least one network")
        return cls(nets, nets[0].taxa)


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    trivial_reductions: int = 0
    max_branch_width: int = 0
    failures_by_reason: dict[str, int] = field(default_factory=dict)

    def record_failure(self, reason: str) -> None:
        self.failures_by_reason[reason] = self.failures_by_reason.get(reason, 0) + 1

    @property
    def complete(self) -> bool:
        """True when no budget-dependent prune fired, i.e. the search space
        was explored exhaustively for the given budget."""
        return not any(self.failures_by_reason.get(r) for r in _INCOMPLETENESS_REASONS)


@dataclass(frozen=True)
class IncompatibilityWitness:
    """Reticulated cherries (x, y) and (y, x) in two input networks."""

    pair: Pair
    network_a: int
    network_b: int

    def __str__(self) -> str:
        x, y = self.pair
        return (
            f"reticulated cherry ({x},{y}) in network {self.network_a + 1} conflicts "
            f"with ({y},{x}) in network {self.network_b + 1}"
        )


@dataclass(frozen=True)
class SolveResult:
    sequence: TCSequence
    network: Network
    weight: int
    stats: SearchStats


class BudgetExceededError(Exception):
    """k_max exhausted without a solution or a proof of incompatibility."""

    def __init__(self, k_max: int):
        self.k_max = k_max
        super().__init__(f"no tree-child sequence of weight <= {k_max} found; result inconclusive")


def trivial_pairs(networks: Iterable[Network]) -> set[Pair]:
    """Ordered pairs (x, y) reducible in every network that still has leaf x,
    with at least one network actually containing the pair."""
    nets = list(networks)
    per_net = [{rp.ordered for rp in reducible_pairs(n)} for n in nets]
    candidates = {p for pairs in per_net for p in pairs}
    out: set[Pair] = set()
    for x, y in candidates:
        if all((x, y) in pairs or x not in net.taxa for net, pairs in zip(nets, per_net)):
            out.add((x, y))
    return out


def quick_incompatibility(inst: Instance) -> IncompatibilityWitness | None:
    """Scan for conflicting reticulated cherries; None does not certify
    compatibility."""
    retic_pairs = [
        {rp.ordered for rp in reducible_pairs(net) if rp.kind is PairKind.RETICULATED_CHERRY}
        for net in inst.networks
    ]
    for i in range(len(retic_pairs)):
        for j in range(i + 1, len(retic_pairs)):
            for x, y in sorted(retic_pairs[i]):
                if (y, x) in retic_pairs[j]:
                    return IncompatibilityWitness((x, y), i, j)
    return None


def _sequence_key(seq: Sequence[Pair]) -> tuple[int, tuple[Pair, ...]]:
    return (weight(seq), tuple(seq))


class _Search:
    def __init__(
        self,
        taxa: frozenset[Taxon],
        k: int,
        stats: SearchStats,
        prune: bool,
        rng: random.Random | None,
        trivial_loop: bool,
    ):
        self.taxa = taxa
        self.k = k
        self.stats = stats
        self.prune = prune
        self.rng = rng
        self.trivial_loop = trivial_loop
        self.best_weight: int | None = None

    def _fail(self, reason: str) -> None:
        self.stats.record_failure(reason)
        return None

    def _least_trivial(self, nets: list[Network], forb: set[Taxon]) -> Pair | None:
        usable = (p for p in trivial_pairs(nets) if p[1] not in forb)
        return min(usable, default=None)

    def run(self, nets: list[Network], seq: list[Pair], forb: set[Taxon]) -> list[Pair] | None:
        self.stats.nodes_expanded += 1
        if self.trivial_loop:
            while True:
                pair = self._least_trivial(nets, forb)
                if pair is None:
                    break
                nets = [reduce_pair(n, pair) for n in nets]
                seq = seq + [pair]
                forb = forb | {pair[0]}
                self.stats.trivial_reductions += 1

        per_net = [reducible_pairs(n) for n in nets]
        for pairs in per_net:
            for rp in pairs:
                if rp.kind is PairKind.CHERRY:
                    if rp.first in forb and rp.second in forb:
                        return self._fail(FAIL_FORBIDDEN_PAIR)
                elif rp.second in forb:
                    return self._fail(FAIL_FORBIDDEN_PAIR)

        candidates = sorted({rp.ordered for pairs in per_net for rp in pairs})
        if not candidates:
            return seq
        if len(candidates) > 8 * self.k:
            return self._fail(FAIL_BRANCH_WIDTH)
        self.stats.max_branch_width = max(self.stats.max_branch_width, len(candidates))

        surviving = set().union(*(n.taxa for n in nets))
        k_now = len(seq) - len(self.taxa) + len(surviving)
        if k_now >= self.k:
            return self._fail(FAIL_BUDGET)
        if self.prune and self.best_weight is not None and k_now > self.best_weight:
            return self._fail(FAIL_BEST_SO_FAR)

        branchable = [p for p in candidates if p[1] not in forb]
        if self.rng is not None:
            self.rng.shuffle(branchable)
        best_local: list[Pair] | None = None
        for pair in branchable:
            sub = self.run(
                [reduce_pair(n, pair) for n in nets],
                seq + [pair],
                forb | {pair[0]},
            )
            if sub is not None:
                if best_local is None or _sequence_key(sub) < _sequence_key(best_local):
                    best_local = sub
                w = weight(sub)
                if self.best_weight is None or w < self.best_weight:
                    self.best_weight = w
        if best_local is None:
            return self._fail(FAIL_NO_BRANCH)
        return best_local


def tree_child_sequence(
    inst: Instance,
    prefix: Iterable[Pair] | TCSequence = (),
    k: int = 0,
    *,
    prune: bool = False,
    stats: SearchStats | None = None,
    rng: random.Random | None = None,
    _trivial_loop: bool = True,
) -> TCSequence | None:
    """Minimum-weight TCS with the given prefix reducing the instance, or None.

    Faithful to the branching procedure: a failure means no sequence of
    weight at most the budget k completes the prefix, while a success found
    by the trivial-pair loop alone may exceed k (it is still optimal for the
    prefix).  ``prune`` additionally abandons states whose running weight
    already exceeds the best success seen, which never changes the result.
    """
    if k < 0:
        raise ValueError("budget k must be non-negative")
    prefix_pairs = [(p[0], p[1]) for p in prefix]
    for x, y in prefix_pairs:
        if x not in inst.taxa or y not in inst.taxa:
            raise ValueError(f"prefix pair ({x!r}, {y!r}) uses a taxon outside the instance")
    if not is_extendable(prefix_pairs, inst.taxa):
        raise ValueError("prefix is not extendable to a tree-child sequence")
    if stats is None:
        stats = SearchStats()
    nets = [reduce_by_sequence(n, prefix_pairs) for n in inst.networks]
    search = _Search(inst.taxa, k, stats, prune, rng, _trivial_loop)
    found = search.run(nets, prefix_pairs, set(forbidden(prefix_pairs)))
    if found is None:
        return None
    try:
        return TCSequence(tuple(found))
    except ValueError as exc:
        # Only reachable with a prefix whose dangling second coordinates are
        # never picked up by the remaining reduction.
        raise ValueError(
            "search completed, but the prefix does not head a tree-child sequence"
        ) from exc


def tree_child_network(
    inst: Instance,
    k: int,
    *,
    prune: bool = False,
    stats: SearchStats | None = None,
    rng: random.Random | None = None,
) -> Network | None:
    """The network built from the budget-k sequence search, or None on failure."""
    seq = tree_child_sequence(inst, (), k, prune=prune, stats=stats, rng=rng)
    if seq is None:
        return None
    if not seq.pairs:
        # Only the one-taxon instance reduces by the empty sequence.
        (taxon,) = inst.taxa
        return single_leaf(taxon)
    return construct_network(seq)


def solve(
    inst: Instance,
    k_max: int | None = None,
    *,
    prune: bool = False,
    rng: random.Random | None = None,
) -> SolveResult | None:
    """Iterative deepening over the budget: the optimal solution, or None when
    the instance is tree-child incompatible.

    A result is accepted once its weight fits the budget, or sooner when the
    bounded search ran without budget or width prunes (then it explored
    everything and the result is already optimal).  The same completeness
    argument turns a prune-free failure into a proof of incompatibility, so
    the deepening terminates even without ``k_max``.  If ``k_max`` is hit
    first, BudgetExceededError reports the inconclusive outcome, distinct
    from a witnessed or proven incompatibility.
    """
    witness = quick_incompatibility(inst)
    if witness is not None:
        return None
    if len(inst.taxa) == 1:
        (taxon,) = inst.taxa
        return SolveResult(TCSequence(()), single_leaf(taxon), 0, SearchStats())
    k = 0
    while k_max is None or k <= k_max:
        stats = SearchStats()
        seq = tree_child_sequence(inst, (), k, prune=prune, stats=stats, rng=rng)
        if seq is None:
            if stats.complete:
                return None
        elif seq.weight <= k or stats.complete:
            network = construct_network(seq)
            assert reticulation_number(network) == seq.weight
            return SolveResult(seq, network, seq.weight, stats)
        k += 1
    raise BudgetExceededError(k_max)
