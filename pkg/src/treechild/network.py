"""Rooted phylogenetic networks and cherry-type pair operations on them.

A network is a rooted DAG with one indegree-0/outdegree-1 root, leaves
labelled bijectively by taxa, outdegree-2 tree nodes and indegree >= 2
reticulations.  ``Network`` values are immutable: every operation here is a
pure function returning a new value, so networks can be shared freely.

Node ids are opaque integers.  Two networks are never compared by id;
equality of structure is :func:`isomorphic`, which fixes leaf labels.
Parallel edges cannot be represented (edges form a set); the eNewick parser
rejects them explicitly and the reduction operations never create them.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, NamedTuple

Taxon = str


class NodeKind(Enum):
    ROOT = "root"
    LEAF = "leaf"
    TREE_NODE = "tree-node"
    RETICULATION = "reticulation"


class PairKind(Enum):
    CHERRY = "cherry"
    RETICULATED_CHERRY = "reticulated-cherry"


class ReduciblePair(NamedTuple):
    """An ordered leaf pair that can be reduced, tagged with its kind."""

    first: Taxon
    second: Taxon
    kind: PairKind

    @property
    def ordered(self) -> tuple[Taxon, Taxon]:
        return (self.first, self.second)


@dataclass(frozen=True)
class Diagnostic:
    """One violated structural invariant with the offending node ids."""

    invariant: str
    nodes: tuple[int, ...]
    message: str

    def __str__(self) -> str:
        return self.message


class Network:
    """Immutable rooted DAG with integer node ids and labelled leaves.

    ``edges`` is an iterable of ``(parent, child)`` id pairs and
    ``leaf_labels`` maps the labelled node ids to their taxa.  Structural
    invariants are not enforced at construction; :func:`validate` reports
    them as diagnostics.
    """

    __slots__ = ("_children", "_parents", "_labels", "_by_label", "_taxa", "_canon", "_pairs")

    def __init__(
        self,
        edges: Iterable[tuple[int, int]],
        leaf_labels: Mapping[int, Taxon],
        extra_nodes: Iterable[int] = (),
    ):
        children: dict[int, list[int]] = {}
        parents: dict[int, list[int]] = {}

        def ensure(v: int) -> None:
            if v not in children:
                children[v] = []
                parents[v] = []

        for v in extra_nodes:
            ensure(v)
        for v in leaf_labels:
            ensure(v)
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if (u, v) in seen:
                continue
            seen.add((u, v))
            ensure(u)
            ensure(v)
            children[u].append(v)
            parents[v].append(u)

        self._children = {v: tuple(sorted(cs)) for v, cs in children.items()}
        self._parents = {v: tuple(sorted(ps)) for v, ps in parents.items()}
        self._labels = dict(leaf_labels)
        self._by_label = {lab: v for v, lab in self._labels.items()}
        self._taxa = frozenset(self._labels.values())
        self._canon = None
        self._pairs = None

    # -- structure accessors -------------------------------------------------

    @property
    def nodes(self) -> frozenset[int]:
        return frozenset(self._children)

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, cs in self._children.items() for v in cs)

    @property
    def leaf_labels(self) -> dict[int, Taxon]:
        return dict(self._labels)

    @property
    def taxa(self) -> frozenset[Taxon]:
        return self._taxa

    @property
    def leaves(self) -> tuple[int, ...]:
        return tuple(sorted(self._labels))

    @property
    def root(self) -> int:
        """The unique indegree-0 node; raises ValueError if not unique."""
        roots = [v for v, ps in self._parents.items() if not ps]
        if len(roots) != 1:
            raise ValueError(f"network has {len(roots)} indegree-0 nodes")
        return roots[0]

    def __contains__(self, v: int) -> bool:
        return v in self._children

    def children(self, v: int) -> tuple[int, ...]:
        return self._children[v]

    def parents(self, v: int) -> tuple[int, ...]:
        return self._parents[v]

    def indegree(self, v: int) -> int:
        return len(self._parents[v])

    def outdegree(self, v: int) -> int:
        return len(self._children[v])

    def label_of(self, v: int) -> Taxon | None:
        return self._labels.get(v)

    def node_with_label(self, label: Taxon) -> int:
        return self._by_label[label]

    def is_leaf_node(self, v: int) -> bool:
        return v in self._labels

    def __repr__(self) -> str:
        taxa = ",".join(sorted(self._taxa))
        return f"<Network {len(self._children)} nodes, {sum(map(len, self._children.values()))} edges, taxa={{{taxa}}}>"


def single_leaf(label: Taxon) -> Network:
    """The minimal network: a root above one labelled leaf."""
    return Network([(0, 1)], {1: label})


# -- validation and classification -------------------------------------------


def validate(n: Network) -> list[Diagnostic]:
    """Check every structural invariant; an empty list means the network is valid."""
    diags: list[Diagnostic] = []
    nodes = sorted(n.nodes)
    if not nodes:
        return [Diagnostic("nonempty", (), "network has no nodes")]

    for u, v in sorted(n.edges):
        if u == v:
            diags.append(Diagnostic("acyclic", (u,), f"self-loop at node {u}"))

    seen_labels: dict[Taxon, int] = {}
    for v in nodes:
        lab = n.label_of(v)
        if lab is None:
            continue
        if lab == "":
            diags.append(Diagnostic("nonempty-label", (v,), f"node {v} has an empty label"))
        if lab in seen_labels:
            diags.append(
                Diagnostic(
                    "bijective-labels",
                    (seen_labels[lab], v),
                    f"label {lab!r} used by nodes {seen_labels[lab]} and {v}",
                )
            )
        else:
            seen_labels[lab] = v

    roots = [v for v in nodes if n.indegree(v) == 0]
    if len(roots) != 1:
        diags.append(
            Diagnostic(
                "single-root",
                tuple(roots),
                f"expected exactly one indegree-0 node, found {len(roots)}",
            )
        )
    for v in nodes:
        ind, outd = n.indegree(v), n.outdegree(v)
        labelled = n.is_leaf_node(v)
        if ind == 0:
            if labelled:
                diags.append(Diagnostic("leaf-degree", (v,), f"labelled node {v} has indegree 0"))
            elif outd != 1:
                diags.append(
                    Diagnostic("root-degree", (v,), f"root {v} has outdegree {outd}, expected 1")
                )
        elif labelled:
            if (ind, outd) != (1, 0):
                diags.append(
                    Diagnostic(
                        "leaf-degree",
                        (v,),
                        f"labelled node {v} has indegree {ind} and outdegree {outd}, expected 1 and 0",
                    )
                )
        elif (ind, outd) == (1, 0):
            diags.append(Diagnostic("labelled-leaves", (v,), f"indegree-1/outdegree-0 node {v} is unlabelled"))
        elif not ((ind == 1 and outd == 2) or (ind >= 2 and outd == 1)):
            diags.append(
                Diagnostic(
                    "node-degrees",
                    (v,),
                    f"node {v} has indegree {ind} and outdegree {outd}; "
                    "not a tree node, reticulation, leaf or root",
                )
            )

    # Kahn's algorithm; whatever cannot be peeled off lies on a cycle.
    indeg = {v: n.indegree(v) for v in nodes}
    queue = [v for v in nodes if indeg[v] == 0]
    peeled = 0
    while queue:
        v = queue.pop()
        peeled += 1
        for c in n.children(v):
            indeg[c] -= 1
            if indeg[c] == 0:
                queue.append(c)
    if peeled != len(nodes):
        cyclic = tuple(sorted(v for v in nodes if indeg[v] > 0))
        diags.append(Diagnostic("acyclic", cyclic, f"cycle through nodes {list(cyclic)}"))

    diags.sort(key=lambda d: (d.invariant, d.nodes))
    return diags


def node_kind(n: Network, v: int) -> NodeKind:
    """Classify a node of a valid network by its degrees."""
    if v not in n:
        raise KeyError(f"unknown node id {v}")
    ind, outd = n.indegree(v), n.outdegree(v)
    if ind == 0:
        return NodeKind.ROOT
    if (ind, outd) == (1, 0):
        return NodeKind.LEAF
    if (ind, outd) == (1, 2):
        return NodeKind.TREE_NODE
    if ind >= 2 and outd == 1:
        return NodeKind.RETICULATION
    raise ValueError(f"node {v} has degrees ({ind}, {outd}); network is not valid")


def _reticulations(n: Network) -> list[int]:
    return [v for v in n.nodes if n.indegree(v) >= 2]


def reticulation_number(n: Network) -> int:
    """Reticulation edges minus reticulation nodes."""
    return sum(n.indegree(v) - 1 for v in _reticulations(n))


def is_binary(n: Network) -> bool:
    """True iff every reticulation has indegree exactly 2."""
    return all(n.indegree(v) == 2 for v in _reticulations(n))


def is_stack_free(n: Network) -> bool:
    """True iff no reticulation has a reticulation child."""
    return all(
        all(n.indegree(c) < 2 for c in n.children(v)) for v in _reticulations(n)
    )


def is_tree_child(n: Network) -> bool:
    """True iff every non-leaf node has at least one non-reticulation child."""
    if not is_stack_free(n):
        return False
    for v in n.nodes:
        if n.indegree(v) == 1 and n.outdegree(v) == 2:
            if all(n.indegree(c) >= 2 for c in n.children(v)):
                return False
    return True


# -- reducible pairs and their reductions ------------------------------------


def reducible_pairs(n: Network) -> frozenset[ReduciblePair]:
    """All reducible ordered pairs: both orders of each cherry, plus every
    reticulated cherry (x, y) with x below the reticulation."""
    if n._pairs is not None:
        return n._pairs
    out: set[ReduciblePair] = set()
    for xn in n.leaves:
        x = n.label_of(xn)
        p = n.parents(xn)[0] if n.parents(xn) else None
        if p is None:
            continue
        if n.indegree(p) >= 2:
            for g in n.parents(p):
                for c in n.children(g):
                    if c != p and n.is_leaf_node(c):
                        out.add(ReduciblePair(x, n.label_of(c), PairKind.RETICULATED_CHERRY))
        else:
            for c in n.children(p):
                if c != xn and n.is_leaf_node(c):
                    out.add(ReduciblePair(x, n.label_of(c), PairKind.CHERRY))
    n._pairs = frozenset(out)
    return n._pairs


def _adjacency(n: Network) -> dict[int, list[int]]:
    return {v: list(n.children(v)) for v in n.nodes}


def _parent_map(children: dict[int, list[int]]) -> dict[int, list[int]]:
    parents: dict[int, list[int]] = {v: [] for v in children}
    for u, cs in children.items():
        for c in cs:
            parents[c].append(u)
    return parents


def _suppress(children: dict[int, list[int]], root: int, labels: dict[int, Taxon]) -> None:
    """Splice out indegree-1/outdegree-1 nodes until none remain.

    Runs in place.  Child lists are deduplicated first, so a splice that
    would create a parallel edge collapses it instead (cannot happen during
    pair reduction, but the display machinery reuses this helper).
    """
    while True:
        for u, cs in children.items():
            if len(cs) != len(set(cs)):
                deduped: list[int] = []
                for c in cs:
                    if c not in deduped:
                        deduped.append(c)
                children[u] = deduped
        parents = _parent_map(children)
        for v in list(children):
            if v == root or v in labels:
                continue
            if len(parents[v]) == 1 and len(children[v]) == 1:
                p, c = parents[v][0], children[v][0]
                children[p] = [c if w == v else w for w in children[p]]
                del children[v]
                break
        else:
            return


def _rebuild(children: dict[int, list[int]], labels: dict[int, Taxon]) -> Network:
    edges = [(u, v) for u, cs in children.items() for v in cs]
    return Network(edges, labels, extra_nodes=children.keys())


def reduce_pair(n: Network, pair: tuple[Taxon, Taxon]) -> Network:
    """Reduce a cherry or reticulated cherry; any other pair is a no-op.

    Reducing the cherry {x, y} deletes leaf x, reducing the reticulated
    cherry (x, y) deletes the reticulation edge between the parents of y and
    x; emergent degree-2 nodes are suppressed.  The input network is
    returned unchanged when (x, y) is not reducible in it.
    """
    x, y = pair
    try:
        xn = n.node_with_label(x)
        yn = n.node_with_label(y)
    except KeyError:
        return n
    if xn == yn:
        return n
    px = n.parents(xn)[0]
    py = n.parents(yn)[0]
    root = n.root
    if px == py:
        children = _adjacency(n)
        labels = n.leaf_labels
        children[px].remove(xn)
        del children[xn]
        del labels[xn]
        _suppress(children, root, labels)
        return _rebuild(children, labels)
    if n.indegree(px) >= 2 and py in n.parents(px):
        children = _adjacency(n)
        labels = n.leaf_labels
        children[py].remove(px)
        _suppress(children, root, labels)
        return _rebuild(children, labels)
    return n


def add_pair(n: Network, pair: tuple[Taxon, Taxon]) -> Network:
    """Add the ordered pair (x, y) above leaf y, inverting :func:`reduce_pair`.

    When x is present and its parent is already a reticulation, the new
    reticulation edge is attached to it (which keeps outputs stack-free);
    when x is present under a tree node a fresh reticulation is inserted
    above x; when x is absent it is added as a new leaf beside y.
    """
    x, y = pair
    if x == y:
        raise ValueError("pair coordinates must differ")
    try:
        yn = n.node_with_label(y)
    except KeyError:
        raise ValueError(f"second coordinate {y!r} is not a leaf of the network") from None
    children = _adjacency(n)
    labels = n.leaf_labels
    fresh = max(children) + 1

    def subdivide(v: int) -> int:
        nonlocal fresh
        parents = _parent_map(children)
        p = parents[v][0]
        w = fresh
        fresh += 1
        children[p] = [w if u == v else u for u in children[p]]
        children[w] = [v]
        return w

    if x in n.taxa:
        xn = n.node_with_label(x)
        px = n.parents(xn)[0]
        if n.indegree(px) >= 2:
            q = subdivide(yn)
            children[q].append(px)
        else:
            p = subdivide(xn)
            q = subdivide(yn)
            children[q].append(p)
    else:
        q = subdivide(yn)
        xnew = fresh
        fresh += 1
        labels[xnew] = x
        children[xnew] = []
        children[q].append(xnew)
    return _rebuild(children, labels)


# -- canonical forms and isomorphism ------------------------------------------


def _topological_bottom_up(n: Network) -> list[int]:
    """Nodes ordered so every child precedes its parents."""
    remaining = {v: n.outdegree(v) for v in n.nodes}
    queue = sorted(v for v, d in remaining.items() if d == 0)
    order: list[int] = []
    while queue:
        v = queue.pop()
        order.append(v)
        for p in n.parents(v):
            remaining[p] -= 1
            if remaining[p] == 0:
                queue.append(p)
    if len(order) != len(n.nodes):
        raise ValueError("network contains a cycle")
    return order


def _node_forms(n: Network) -> dict[int, tuple]:
    """Bottom-up structural form of every node.

    Leaves carry their label, reticulations their single child's form, tree
    nodes the sorted forms of their children.  On tree-child networks the
    form is injective over nodes, so the root form identifies the network up
    to label-preserving isomorphism.
    """
    forms: dict[int, tuple] = {}
    for v in _topological_bottom_up(n):
        lab = n.label_of(v)
        if lab is not None:
            forms[v] = ("L", lab)
        elif n.indegree(v) >= 2:
            forms[v] = ("R", forms[n.children(v)[0]])
        elif n.indegree(v) == 0:
            forms[v] = ("N", tuple(sorted(forms[c] for c in n.children(v))))
        else:
            forms[v] = ("T", tuple(sorted(forms[c] for c in n.children(v))))
    return forms


def canonical_form(n: Network) -> tuple:
    """A hashable invariant of the isomorphism class (complete on tree-child
    networks)."""
    if n._canon is None:
        n._canon = _node_forms(n)[n.root]
    return n._canon


def _digraph_isomorphic(
    edges_a: frozenset[tuple[int, int]],
    labels_a: dict[int, Taxon],
    edges_b: frozenset[tuple[int, int]],
    labels_b: dict[int, Taxon],
) -> bool:
    """Backtracking isomorphism test for labelled digraphs.

    Labelled nodes must map by label; unlabelled nodes are matched by degree
    signature with incremental edge-consistency pruning.  Exponential in the
    worst case; used only as a fallback and on desk-scale graphs.
    """
    nodes_a = {v for e in edges_a for v in e} | set(labels_a)
    nodes_b = {v for e in edges_b for v in e} | set(labels_b)
    if len(nodes_a) != len(nodes_b) or len(edges_a) != len(edges_b):
        return False
    if sorted(labels_a.values()) != sorted(labels_b.values()):
        return False

    def adj(edges, nodes):
        outs = {v: set() for v in nodes}
        ins = {v: set() for v in nodes}
        for u, v in edges:
            outs[u].add(v)
            ins[v].add(u)
        return outs, ins

    outs_a, ins_a = adj(edges_a, nodes_a)
    outs_b, ins_b = adj(edges_b, nodes_b)
    by_label_b = {lab: v for v, lab in labels_b.items()}
    mapping: dict[int, int] = {}
    used: set[int] = set()
    for v, lab in labels_a.items():
        mapping[v] = by_label_b[lab]
        used.add(by_label_b[lab])

    def signature(v, ins, outs, labels):
        return (len(ins[v]), len(outs[v]), labels.get(v) is not None)

    free_a = [v for v in nodes_a if v not in mapping]
    # Match nodes close to already-matched ones first for early pruning.
    anchored = set(mapping)
    ordered: list[int] = []
    frontier = list(free_a)
    while frontier:
        frontier.sort(
            key=lambda v: (
                -len((ins_a[v] | outs_a[v]) & anchored),
                len(ins_a[v]),
                len(outs_a[v]),
                v,
            )
        )
        v = frontier.pop(0)
        ordered.append(v)
        anchored.add(v)

    def consistent(va, vb):
        for u in ins_a[va]:
            if u in mapping and mapping[u] not in ins_b[vb]:
                return False
        for u in outs_a[va]:
            if u in mapping and mapping[u] not in outs_b[vb]:
                return False
        # Reverse direction: every matched neighbour of vb must correspond.
        inv = {w: v for v, w in mapping.items()}
        for u in ins_b[vb]:
            if u in inv and inv[u] not in ins_a[va]:
                return False
        for u in outs_b[vb]:
            if u in inv and inv[u] not in outs_a[va]:
                return False
        return True

    def backtrack(i: int) -> bool:
        if i == len(ordered):
            return True
        va = ordered[i]
        sig = signature(va, ins_a, outs_a, labels_a)
        for vb in nodes_b:
            if vb in used or signature(vb, ins_b, outs_b, labels_b) != sig:
                continue
            if not consistent(va, vb):
                continue
            mapping[va] = vb
            used.add(vb)
            if backtrack(i + 1):
                return True
            del mapping[va]
            used.discard(vb)
        return False

    return backtrack(0)


def isomorphic(a: Network, b: Network) -> bool:
    """True iff there is a graph isomorphism between a and b fixing leaf labels."""
    if a is b:
        return True
    if a.taxa != b.taxa or len(a.nodes) != len(b.nodes) or len(a.edges) != len(b.edges):
        return False
    if canonical_form(a) != canonical_form(b):
        return False
    tc_a, tc_b = is_tree_child(a), is_tree_child(b)
    if tc_a != tc_b:
        return False
    if tc_a:
        return True
    return _digraph_isomorphic(a.edges, a.leaf_labels, b.edges, b.leaf_labels)
