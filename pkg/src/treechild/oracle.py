"""Brute-force oracles and a seeded instance generator.

The oracles deliberately avoid the solver's shortcuts: the exhaustive
minimum-weight search branches over every reducible pair at every state with
no trivial-pair loop and no branch-width cutoff, and the display check
enumerates reticulation-edge deletions and edge contractions directly from
the definitions.  They exist to cross-validate the solver, so sharing its
pruning rules would defeat the purpose.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from string import ascii_lowercase

from .network import (
    Network,
    Taxon,
    _digraph_isomorphic,
    _parent_map,
    _suppress,
    is_binary,
    isomorphic,
    reduce_pair,
    reducible_pairs,
    single_leaf,
    validate,
)
from .sequence import Pair, TCSequence, construct_network
from .solver import Instance


class OracleLimitError(RuntimeError):
    """Exploration ceiling hit; the answer is inconclusive (not 'no solution')."""


@dataclass(frozen=True)
class OracleReport:
    min_weight: int | None
    witness_sequence: TCSequence | None
    states_explored: int


@dataclass(frozen=True)
class GeneratorConfig:
    """Desk-scale knobs for the seeded random generator."""

    taxa_count: int
    target_weight: int
    seed: int
    subnetwork_count: int = 2

    def __post_init__(self):
        if not 1 <= self.taxa_count <= 12:
            raise ValueError("taxa_count must be between 1 and 12")
        if not 0 <= self.target_weight <= 6:
            raise ValueError("target_weight must be between 0 and 6")
        if self.subnetwork_count < 1:
            raise ValueError("subnetwork_count must be at least 1")
        if self.taxa_count == 1 and self.target_weight > 0:
            raise ValueError("a single taxon admits only weight 0")


def _is_single_leaf(n: Network) -> Taxon | None:
    if len(n.nodes) == 2 and len(n.leaf_labels) == 1:
        return next(iter(n.leaf_labels.values()))
    return None


def brute_force_min_tcs(
    inst: Instance, k_max: int, *, max_states: int = 1_000_000
) -> OracleReport:
    """Exhaustive minimum-weight search over all reducible pairs.

    Only condition 2 (no forbidden second coordinates) and the weight budget
    restrict the depth-first enumeration.  Returns the true minimum weight
    up to k_max, or absence; raises OracleLimitError past max_states.
    """
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    taxa = inst.taxa
    best: tuple[int, tuple[Pair, ...]] | None = None
    states = 0

    def rec(nets: list[Network], forb: frozenset[Taxon], seq: list[Pair]) -> None:
        nonlocal best, states
        states += 1
        if states > max_states:
            raise OracleLimitError(f"more than {max_states} states explored; inconclusive")
        finals = [_is_single_leaf(n) for n in nets]
        if all(f is not None for f in finals) and len(set(finals)) == 1:
            candidate = (len(seq) - len(taxa) + 1, tuple(seq))
            if best is None or candidate < best:
                best = candidate
            return
        surviving = set().union(*(n.taxa for n in nets))
        if len(seq) - len(taxa) + len(surviving) > k_max:
            return
        for pair in sorted({rp.ordered for n in nets for rp in reducible_pairs(n)}):
            if pair[1] in forb:
                continue
            rec(
                [reduce_pair(n, pair) for n in nets],
                forb | {pair[0]},
                seq + [pair],
            )

    rec(list(inst.networks), frozenset(), [])
    if best is None:
        return OracleReport(None, None, states)
    return OracleReport(best[0], TCSequence(best[1]), states)


# -- display checking ----------------------------------------------------------


def _subnetwork_after_deletion(
    host: Network, deleted: set[tuple[int, int]], keep_taxa: frozenset[Taxon]
) -> Network | None:
    """Delete the given reticulation edges, drop leaves outside keep_taxa,
    tidy up, and return the resulting network (None if degenerate)."""
    children = {v: [c for c in host.children(v)] for v in host.nodes}
    for u, v in deleted:
        children[u].remove(v)
    labels = {v: lab for v, lab in host.leaf_labels.items() if lab in keep_taxa}
    root = host.root

    # Drop leaves outside the kept taxa, then cascade away unlabelled nodes
    # left without children or without parents, and suppress what remains.
    for v in list(children):
        if host.is_leaf_node(v) and v not in labels:
            for u in children:
                children[u] = [c for c in children[u] if c != v]
            del children[v]
    while True:
        parents = _parent_map(children)
        doomed = [
            v
            for v in children
            if v != root
            and v not in labels
            and (not children[v] or not parents[v])
        ]
        if not doomed:
            break
        for v in doomed:
            for u in children:
                children[u] = [c for c in children[u] if c != v]
            del children[v]
    _suppress(children, root, labels)
    if root not in children or len(children[root]) != 1:
        return None
    net = Network(
        [(u, v) for u, cs in children.items() for v in cs], labels, extra_nodes=children.keys()
    )
    if validate(net):
        return None
    return net


def _contraction_reachable(candidate: Network, guest: Network, budget: list[int]) -> bool:
    """Can the candidate be turned into the guest by contracting edges
    between unlabelled nodes?  Searches one-edge contractions; merged nodes
    keep the smaller id so permuted contraction orders collapse to one state."""
    target = len(guest.nodes)
    start = frozenset(candidate.edges)
    labels = candidate.leaf_labels
    guest_edges = frozenset(guest.edges)
    guest_labels = guest.leaf_labels
    labelled = set(labels)

    def node_count(edges: frozenset[tuple[int, int]]) -> int:
        return len({v for e in edges for v in e} | labelled)

    seen = {start}
    queue = [start]
    while queue:
        edges = queue.pop()
        budget[0] -= 1
        if budget[0] < 0:
            raise OracleLimitError("contraction search ceiling hit; inconclusive")
        count = node_count(edges)
        if count == target:
            if _digraph_isomorphic(edges, labels, guest_edges, guest_labels):
                return True
            continue
        if count < target:
            continue
        for u, v in edges:
            if u in labelled or v in labelled:
                continue
            keep, gone = (u, v) if u < v else (v, u)
            merged = frozenset(
                (keep if a == gone else a, keep if b == gone else b)
                for a, b in edges
                if (a, b) != (u, v)
            )
            merged = frozenset((a, b) for a, b in merged if a != b)
            if merged not in seen:
                seen.add(merged)
                queue.append(merged)
    return False


def displays_bruteforce(
    host: Network, guest: Network, *, max_states: int = 200_000
) -> bool:
    """Decide display by enumeration, straight from the definition.

    Every way of deleting reticulation edges (each surviving reticulation
    keeps at least one incoming edge) yields a subnetwork candidate after
    removing off-taxa leaves and suppressing degree-2 nodes; the guest must
    arise from some candidate by contracting edges.  Binary guest against
    binary candidate needs no contraction beyond isomorphism.
    """
    if not guest.taxa <= host.taxa:
        return False
    retics = sorted(v for v in host.nodes if host.indegree(v) >= 2)
    in_edges = [[(p, r) for p in sorted(host.parents(r))] for r in retics]
    keep_options = []
    for edges in in_edges:
        options = []
        for size in range(1, len(edges) + 1):
            options.extend(itertools.combinations(edges, size))
        keep_options.append(options)
    budget = [max_states]
    for kept in itertools.product(*keep_options):
        kept_edges = {e for group in kept for e in group}
        deleted = {e for group in in_edges for e in group} - kept_edges
        candidate = _subnetwork_after_deletion(host, deleted, guest.taxa)
        if candidate is None:
            continue
        if len(candidate.nodes) == len(guest.nodes):
            if isomorphic(candidate, guest):
                return True
            continue
        if is_binary(candidate) and is_binary(guest):
            continue
        if len(candidate.nodes) < len(guest.nodes):
            continue
        if _contraction_reachable(candidate, guest, budget):
            return True
    return False


# -- random generation ---------------------------------------------------------


def random_tcs(cfg: GeneratorConfig) -> TCSequence:
    """A seeded tree-child sequence of exactly the target weight.

    Built backwards the way construction consumes it: each step either
    introduces a fresh leaf or spends one weight unit on a repeated one,
    keeping both sequence conditions true throughout.
    """
    rng = random.Random(cfg.seed)
    n, w = cfg.taxa_count, cfg.target_weight
    labels = list(ascii_lowercase[:n])
    rng.shuffle(labels)
    if n == 1:
        return TCSequence(())
    available = [labels[0]]
    first_used: set[Taxon] = set()
    next_new = 1
    remaining_new = n - 1
    remaining_weight = w
    reversed_pairs: list[Pair] = []
    for _ in range(w + n - 1):
        eligible = [t for t in available if t not in first_used]
        options: list[tuple] = []
        if remaining_new > 0:
            options.extend(("new", y) for y in eligible)
        if remaining_weight > 0 and len(available) >= 2:
            options.extend(
                ("old", x, y) for y in eligible for x in available if x != y
            )
        choice = options[rng.randrange(len(options))]
        if choice[0] == "new":
            x, y = labels[next_new], choice[1]
            next_new += 1
            available.append(x)
            remaining_new -= 1
        else:
            _, x, y = choice
            remaining_weight -= 1
        first_used.add(x)
        reversed_pairs.append((x, y))
    return TCSequence(tuple(reversed(reversed_pairs)))


def generate_instance(cfg: GeneratorConfig) -> Instance:
    """Seeded tree-child-compatible instance with optimum at most the target.

    A host network is built from a random sequence, and each instance member
    deletes a random nonempty set of its reticulation edges (every
    reticulation keeps an incoming edge, so no leaf is lost).  Every member
    is therefore tree-child and displayed by the host.
    """
    if cfg.taxa_count == 1:
        net = single_leaf(ascii_lowercase[0])
        return Instance.from_networks([net] * cfg.subnetwork_count)
    host = construct_network(random_tcs(cfg))
    rng = random.Random(f"{cfg.seed}:subnetworks")
    retics = sorted(v for v in host.nodes if host.indegree(v) >= 2)
    in_edges = [[(p, r) for p in sorted(host.parents(r))] for r in retics]
    nets = []
    for _ in range(cfg.subnetwork_count):
        if not retics:  # the host is a tree: nothing to delete
            nets.append(host)
            continue
        while True:
            deleted: set[tuple[int, int]] = set()
            for edges in in_edges:
                kept = rng.sample(edges, rng.randint(1, len(edges)))
                deleted.update(set(edges) - set(kept))
            if deleted:
                break
        derived = _subnetwork_after_deletion(host, deleted, host.taxa)
        assert derived is not None
        nets.append(derived)
    return Instance.from_networks(nets)
