"""Extended-Newick reading and writing for rooted phylogenetic networks.

The dialect: standard Newick plus reticulation tags ``#H<id>``.  All
occurrences of one tag denote a single reticulation node; exactly one
occurrence carries the subtree below it, the others are bare references that
add incoming edges.  Internal labels and ``:``-prefixed numeric fields are
tolerated and dropped.  Other tag flavours (``#LGT``, ``#R``, bare ``#1``)
are rejected rather than guessed.

An extra root edge is inserted above the top-level element on parsing, so
the root has outdegree 1; writing elides it again.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .network import Network, Taxon, _node_forms, validate

_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_LABEL_CHARS = re.compile(r"[^\s(),;:#'\"\[\]]+")
_TAG = re.compile(r"H\w+$")


class ENewickError(ValueError):
    """Parse or validation failure with a 1-based source position."""

    def __init__(self, message: str, line: int, column: int, expected: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.expected = expected
        text = f"line {line}, column {column}: {message}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)


@dataclass(frozen=True)
class ENewickDocument:
    """Networks parsed from a file, with their 1-based source lines."""

    networks: tuple[Network, ...]
    lines: tuple[int, ...]


class _Scanner:
    def __init__(self, text: str, line: int = 1, column: int = 1):
        self.text = text
        self.pos = 0
        self.line = line
        self.column = column

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def advance(self) -> str:
        ch = self.text[self.pos]
        self.pos += 1
        if ch == "\n":
            self.line += 1
            self.column = 1
        else:
            self.column += 1
        return ch

    def skip_ws(self) -> None:
        while not self.at_end() and self.peek().isspace():
            self.advance()

    def error(self, message: str, expected: str | None = None) -> ENewickError:
        return ENewickError(message, self.line, self.column, expected)

    def take_label(self) -> str:
        m = _LABEL_CHARS.match(self.text, self.pos)
        if not m:
            return ""
        label = m.group(0)
        for _ in label:
            self.advance()
        return label


class _Builder:
    def __init__(self, scanner: _Scanner):
        self.sc = scanner
        self.next_id = 0
        self.children: dict[int, list[int]] = {}
        self.labels: dict[int, Taxon] = {}
        self.label_pos: dict[Taxon, tuple[int, int]] = {}
        self.hybrids: dict[str, int] = {}
        self.hybrid_defined: dict[str, bool] = {}
        self.hybrid_first_pos: dict[str, tuple[int, int]] = {}

    def fresh(self) -> int:
        v = self.next_id
        self.next_id += 1
        self.children[v] = []
        return v

    def attach(self, parent: int, child: int) -> None:
        if child in self.children[parent]:
            raise self.sc.error("parallel edge into the same reticulation")
        self.children[parent].append(child)


def _parse_suffix(sc: _Scanner) -> tuple[str | None, str | None, tuple[int, int]]:
    """[label] ['#'tag] [':'number]... after a subtree or at a terminal."""
    label = sc.take_label() or None
    tag = None
    tag_pos = (sc.line, sc.column)
    if sc.peek() == "#":
        sc.advance()
        raw = sc.take_label()
        if not _TAG.match(raw):
            raise ENewickError(
                f"unsupported reticulation tag '#{raw}'",
                tag_pos[0],
                tag_pos[1],
                expected="#H<id>",
            )
        tag = raw
    while True:
        sc.skip_ws()
        if sc.peek() != ":":
            break
        sc.advance()
        sc.skip_ws()
        m = _NUMBER.match(sc.text, sc.pos)
        if not m:
            raise sc.error("expected a number after ':'")
        for _ in m.group(0):
            sc.advance()
    return label, tag, tag_pos


def _parse_node(sc: _Scanner, b: _Builder) -> int:
    sc.skip_ws()
    if sc.peek() == "(":
        sc.advance()
        kids = [_parse_node(sc, b)]
        sc.skip_ws()
        while sc.peek() == ",":
            sc.advance()
            kids.append(_parse_node(sc, b))
            sc.skip_ws()
        if sc.peek() != ")":
            raise sc.error("unbalanced parentheses", expected="')' or ','")
        sc.advance()
        _, tag, tag_pos = _parse_suffix(sc)
        if tag is not None:
            node = _hybrid_node(b, tag, tag_pos)
            if b.hybrid_defined[tag]:
                raise ENewickError(
                    f"reticulation tag '#{tag}' has multiple child-bearing occurrences",
                    tag_pos[0],
                    tag_pos[1],
                )
            b.hybrid_defined[tag] = True
        else:
            node = b.fresh()
        for kid in kids:
            b.attach(node, kid)
        return node
    start = (sc.line, sc.column)
    label, tag, tag_pos = _parse_suffix(sc)
    if tag is not None:
        return _hybrid_node(b, tag, tag_pos)
    if label is None:
        raise ENewickError(
            "expected a taxon label, '(' or a '#H' tag", start[0], start[1]
        )
    if label in b.label_pos:
        raise ENewickError(f"duplicate leaf label {label!r}", start[0], start[1])
    node = b.fresh()
    b.labels[node] = label
    b.label_pos[label] = start
    return node


def _hybrid_node(b: _Builder, tag: str, pos: tuple[int, int]) -> int:
    if tag not in b.hybrids:
        b.hybrids[tag] = b.fresh()
        b.hybrid_defined[tag] = False
        b.hybrid_first_pos[tag] = pos
    return b.hybrids[tag]


def parse_enewick(text: str, first_line: int = 1) -> Network:
    """Parse one ';'-terminated extended-Newick string into a valid network."""
    sc = _Scanner(text, line=first_line)
    b = _Builder(sc)
    sc.skip_ws()
    if sc.at_end():
        raise sc.error("empty input")
    top = _parse_node(sc, b)
    sc.skip_ws()
    if sc.peek() != ";":
        raise sc.error("expected ';'")
    sc.advance()
    sc.skip_ws()
    if not sc.at_end():
        raise sc.error("unexpected content after ';'")

    parents = {v: 0 for v in b.children}
    for cs in b.children.values():
        for c in cs:
            parents[c] += 1
    for tag, node in sorted(b.hybrids.items()):
        line, col = b.hybrid_first_pos[tag]
        if not b.hybrid_defined[tag]:
            raise ENewickError(
                f"reticulation tag '#{tag}' has no child-bearing occurrence", line, col
            )
        if parents[node] < 2:
            raise ENewickError(
                f"reticulation '#{tag}' has indegree {parents[node]}, needs at least 2",
                line,
                col,
            )
    root = b.fresh()
    b.attach(root, top)
    net = Network(
        [(u, v) for u, cs in b.children.items() for v in cs],
        b.labels,
        extra_nodes=b.children.keys(),
    )
    diags = validate(net)
    if diags:
        raise ENewickError(f"not a valid network: {diags[0]}", first_line, 1)
    return net


def _min_leaf_labels(n: Network) -> dict[int, Taxon]:
    out: dict[int, Taxon] = {}
    remaining = {v: n.outdegree(v) for v in n.nodes}
    queue = [v for v, d in remaining.items() if d == 0]
    while queue:
        v = queue.pop()
        lab = n.label_of(v)
        out[v] = lab if lab is not None else min(out[c] for c in n.children(v))
        for p in n.parents(v):
            remaining[p] -= 1
            if remaining[p] == 0:
                queue.append(p)
    return out


def write_enewick(n: Network) -> str:
    """Serialize a valid network; deterministic on tree-child networks.

    Children are ordered by the least leaf label below them (ties broken by
    the structural form), and reticulation tags are numbered in the order
    the serialization first meets them, so isomorphic tree-child networks
    produce identical text.
    """
    for label in n.taxa:
        if not label or _LABEL_CHARS.fullmatch(label) is None:
            raise ValueError(f"taxon {label!r} cannot be written as an eNewick label")
    forms = _node_forms(n)
    minlab = _min_leaf_labels(n)
    tags: dict[int, int] = {}

    def render(v: int) -> str:
        lab = n.label_of(v)
        if lab is not None:
            return lab
        if n.indegree(v) >= 2:
            if v in tags:
                return f"#H{tags[v]}"
            tags[v] = len(tags) + 1
            return f"({render(n.children(v)[0])})#H{tags[v]}"
        kids = sorted(n.children(v), key=lambda c: (minlab[c], forms[c]))
        return "(" + ",".join(render(c) for c in kids) + ")"

    return render(n.children(n.root)[0]) + ";"


def parse_document(text: str) -> ENewickDocument:
    """One network per non-empty, non-comment line; '#' starts a comment."""
    networks: list[Network] = []
    lines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        networks.append(parse_enewick(raw, first_line=lineno))
        lines.append(lineno)
    return ENewickDocument(tuple(networks), tuple(lines))
