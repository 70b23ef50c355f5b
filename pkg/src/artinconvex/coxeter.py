"""Coxeter systems.

A :class:`CoxeterGraph` holds the generators and the labels ``m(s, t)``.
Group elements are :class:`CoxeterElement` values carrying their ShortLex
normal form: the lexicographically least reduced word, with generators
ordered as declared.

The word problem is solved by a lazily grown, memoized piece of the Cayley
graph.  Every node knows its full right descent set together with the
neighbour reached through each descent.  Multiplying a node ``g`` by a
non-descent ``s`` only needs the rank two parabolic pieces of ``g``: the
product ``gs`` acquires an extra right descent ``d`` exactly when ``g``
ends with an alternating ``d, s`` tail of length ``m(s, d) - 1``.  All
recursion is on strictly shorter elements, so the construction is exact for
every Coxeter graph, finite or not.
"""

from __future__ import annotations

import math
import re
import sys
import threading
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import ElementBoundError, GraphParseError, InfiniteGroupError, WordParseError

INF = math.inf
DEFAULT_MAX_ELEMENTS = 200_000

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")

if sys.getrecursionlimit() < 20_000:
    sys.setrecursionlimit(20_000)


def _check_label(label) -> int | float:
    if label == INF:
        return INF
    if isinstance(label, bool) or not isinstance(label, int):
        raise GraphParseError(f"label must be an integer >= 2 or inf, got {label!r}")
    if label < 2:
        raise GraphParseError(f"label must be >= 2, got {label}")
    return label


@dataclass(frozen=True)
class CoxeterGraph:
    """Generators ``names`` and the non-default labels ``edges``.

    ``edges`` holds triples ``(i, j, m)`` over generator indices with
    ``i < j``.  Pairs that are not listed have label 2; ``INF`` marks a pair
    with no relation.
    """

    names: tuple[str, ...]
    edges: tuple[tuple[int, int, int | float], ...] = ()

    def __post_init__(self):
        names = tuple(self.names)
        if len(set(names)) != len(names):
            dup = next(n for n, c in Counter(names).items() if c > 1)
            raise GraphParseError(f"duplicate generator name {dup!r}")
        for name in names:
            if not _NAME_RE.match(name):
                raise GraphParseError(f"invalid generator name {name!r}")
        n = len(names)
        labels: dict[tuple[int, int], int | float] = {}
        for i, j, m in self.edges:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise GraphParseError(f"bad edge ({i}, {j})")
            key = (min(i, j), max(i, j))
            m = _check_label(m)
            if labels.get(key, m) != m:
                raise GraphParseError(f"conflicting labels for {names[key[0]]}, {names[key[1]]}")
            labels[key] = m
        matrix = [[2] * n for _ in range(n)]
        for i in range(n):
            matrix[i][i] = 1
        for (i, j), m in labels.items():
            matrix[i][j] = matrix[j][i] = m
        object.__setattr__(self, "names", names)
        object.__setattr__(
            self, "edges", tuple(sorted((i, j, m) for (i, j), m in labels.items() if m != 2))
        )
        object.__setattr__(self, "_matrix", tuple(tuple(row) for row in matrix))
        object.__setattr__(self, "_index", {name: k for k, name in enumerate(names)})

    @classmethod
    def from_edges(cls, names: Iterable[str], edges: Iterable[tuple[str, str, int | float]] = ()):
        names = tuple(names)
        index = {name: k for k, name in enumerate(names)}
        triples = []
        for a, b, m in edges:
            if a not in index or b not in index:
                raise GraphParseError(f"edge references undeclared generator: {a} {b}")
            triples.append((index[a], index[b], m))
        return cls(names, tuple(triples))

    @property
    def rank(self) -> int:
        return len(self.names)

    @property
    def generators(self) -> frozenset[int]:
        return frozenset(range(self.rank))

    def m(self, i: int, j: int) -> int | float:
        return self._matrix[i][j]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise WordParseError(f"unknown generator {name!r}") from None

    def subset(self, names: Iterable[str] | str) -> frozenset[int]:
        """Generator set from names (an iterable or a comma/space separated string)."""
        if isinstance(names, str):
            names = [tok for tok in re.split(r"[,\s]+", names) if tok]
        return frozenset(self.index(name) for name in names)

    def parse_word(self, text: str) -> tuple[int, ...]:
        return tuple(self.index(tok) for tok in text.split())

    def format_word(self, word: Sequence[int]) -> str:
        return " ".join(self.names[i] for i in word)

    def format_set(self, gens: Iterable[int]) -> str:
        return "{" + ",".join(self.names[i] for i in sorted(gens)) + "}"

    def subgraph(self, gens: Iterable[int]) -> CoxeterGraph:
        """Full subgraph on ``gens``, keeping names and declaration order."""
        keep = sorted(set(gens))
        pos = {g: k for k, g in enumerate(keep)}
        return CoxeterGraph(
            tuple(self.names[g] for g in keep),
            tuple((pos[i], pos[j], m) for i, j, m in self.edges if i in pos and j in pos),
        )

    def to_text(self) -> str:
        lines = ["gens: " + " ".join(self.names)]
        for i, j, m in self.edges:
            label = "inf" if m == INF else str(m)
            lines.append(f"edge: {self.names[i]} {self.names[j]} {label}")
        return "\n".join(lines) + "\n"


def parse_graph(text: str) -> CoxeterGraph:
    """Parse the line-based graph format.

    ``gens: a b c`` must appear exactly once, before any ``edge: a b m``
    line.  ``m`` is an integer or ``inf``; ``#`` starts a comment.
    """
    names: tuple[str, ...] | None = None
    edges: list[tuple[str, str, int | float]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise GraphParseError(f"line {lineno}: expected 'gens:' or 'edge:'")
        toks = rest.split()
        if key == "gens":
            if names is not None:
                raise GraphParseError(f"line {lineno}: 'gens:' given twice")
            names = tuple(toks)
            if len(set(names)) != len(names):
                dup = next(n for n, c in Counter(names).items() if c > 1)
                raise GraphParseError(f"line {lineno}: duplicate generator name {dup!r}")
        elif key == "edge":
            if names is None:
                raise GraphParseError(f"line {lineno}: 'edge:' before 'gens:'")
            if len(toks) != 3:
                raise GraphParseError(f"line {lineno}: expected 'edge: <name> <name> <label>'")
            a, b, lab = toks
            for name in (a, b):
                if name not in names:
                    raise GraphParseError(f"line {lineno}: undeclared generator {name!r}")
            if a == b:
                raise GraphParseError(f"line {lineno}: edge from {a!r} to itself")
            if lab.lower() in ("inf", "infinity", "oo"):
                label: int | float = INF
            else:
                try:
                    label = int(lab)
                except ValueError:
                    raise GraphParseError(f"line {lineno}: bad label {lab!r}") from None
                if label < 2:
                    raise GraphParseError(f"line {lineno}: label must be >= 2, got {label}")
            edges.append((a, b, label))
        else:
            raise GraphParseError(f"line {lineno}: unknown key {key!r}")
    if names is None:
        raise GraphParseError("missing 'gens:' line")
    return CoxeterGraph.from_edges(names, edges)


_TYPE_RE = re.compile(r"^\s*([A-HIa-hi])\s*(\d+)\s*(?:\(\s*(\d+|inf)\s*\))?\s*$")


def coxeter_type(name: str) -> CoxeterGraph:
    """Graph of a standard type, e.g. ``"A3"``, ``"B4"``, ``"H3"``, ``"I2(5)"``.

    Generators are ``s1 .. sn`` along the diagram, except for ``I2(m)``
    whose generators are ``s`` and ``t``.
    """
    match = _TYPE_RE.match(name)
    if not match:
        raise GraphParseError(f"unknown type {name!r}")
    kind, n, label = match.group(1).upper(), int(match.group(2)), match.group(3)
    if kind == "I":
        if n != 2 or label is None:
            raise GraphParseError("dihedral type is written I2(m)")
        m: int | float = INF if label == "inf" else int(label)
        return CoxeterGraph(("s", "t"), ((0, 1, m),))
    if label is not None or n < 1:
        raise GraphParseError(f"unknown type {name!r}")
    names = tuple(f"s{k}" for k in range(1, n + 1))
    path = [(k, k + 1, 3) for k in range(n - 1)]
    if kind == "A":
        return CoxeterGraph(names, tuple(path))
    if kind in "BC" and n >= 2:
        path[0] = (0, 1, 4)
        return CoxeterGraph(names, tuple(path))
    if kind == "D" and n >= 4:
        return CoxeterGraph(names, tuple(path[:-1]) + ((n - 3, n - 1, 3),))
    if kind == "E" and 6 <= n <= 8:
        # s1 - s3 - s4 - s5 - ... with s2 attached to s4 (Bourbaki numbering)
        edges = [(0, 2, 3), (1, 3, 3)] + [(k, k + 1, 3) for k in range(2, n - 1)]
        return CoxeterGraph(names, tuple(edges))
    if kind == "F" and n == 4:
        return CoxeterGraph(names, ((0, 1, 3), (1, 2, 4), (2, 3, 3)))
    if kind == "H" and n in (3, 4):
        path[0] = (0, 1, 5)
        return CoxeterGraph(names, tuple(path))
    raise GraphParseError(f"unknown type {name!r}")


def alternating_word(a: int, b: int, m: int) -> tuple[int, ...]:
    """The word ``a b a b ...`` of length ``m``."""
    if a == b:
        raise ValueError("alternating word needs two distinct letters")
    if m < 0:
        raise ValueError("length must be non-negative")
    return tuple(a if k % 2 == 0 else b for k in range(m))


# -- word problem -----------------------------------------------------------


class _Node:
    __slots__ = ("word", "down", "up", "inverse", "__weakref__")

    def __init__(self, word: tuple[int, ...], down: dict[int, _Node]):
        self.word = word
        self.down = down  # right descent -> self * descent
        self.up: dict[int, _Node] = {}
        self.inverse: _Node | None = None


class _Engine:
    """Memoized Cayley graph piece for one Coxeter graph."""

    def __init__(self, graph: CoxeterGraph):
        self.graph = graph
        self.identity = _Node((), {})
        self.identity.inverse = self.identity
        self.nodes: dict[tuple[int, ...], _Node] = {(): self.identity}
        self.lock = threading.RLock()

    def mul_gen(self, g: _Node, s: int) -> _Node:
        h = g.down.get(s) or g.up.get(s)
        if h is not None:
            return h
        with self.lock:
            h = g.up.get(s)
            if h is None:
                h = self._ascend(g, s)
        return h

    def climb(self, g: _Node, word: Iterable[int]) -> _Node:
        for s in word:
            g = self.mul_gen(g, s)
        return g

    def _ascend(self, g: _Node, s: int) -> _Node:
        # s is not a right descent of g, so gs is one longer than g
        matrix = self.graph._matrix
        down = {s: g}
        for d in list(g.down):
            m = matrix[s][d]
            if m == INF:
                continue
            z, cur, k = g, d, 0
            while k < m - 1 and cur in z.down:
                z = z.down[cur]
                cur = s if cur == d else d
                k += 1
            if k == m - 1:
                # gs = z * w0(s, d); the other reduced word of w0 ends in d
                other = tuple(s if (m - 2 - j) % 2 == 0 else d for j in range(m - 1))
                down[d] = self.climb(z, other)
        word = min(h.word + (d,) for d, h in down.items())
        node = self.nodes.get(word)
        if node is None:
            node = _Node(word, down)
            self.nodes[word] = node
        for d, h in down.items():
            h.up[d] = node
        return node

    def invert(self, g: _Node) -> _Node:
        if g.inverse is None:
            inv = self.climb(self.identity, reversed(g.word))
            g.inverse = inv
            inv.inverse = g
        return g.inverse

    def node(self, word: tuple[int, ...]) -> _Node:
        found = self.nodes.get(word)
        return found if found is not None else self.climb(self.identity, word)


_engines: dict[CoxeterGraph, _Engine] = {}
_engines_lock = threading.Lock()


def _engine(graph: CoxeterGraph) -> _Engine:
    eng = _engines.get(graph)
    if eng is None:
        with _engines_lock:
            eng = _engines.setdefault(graph, _Engine(graph))
    return eng


@dataclass(frozen=True)
class CoxeterElement:
    """An element of ``W`` stored by its ShortLex normal form."""

    graph: CoxeterGraph
    word: tuple[int, ...]
    _node: _Node = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.word)

    def __mul__(self, other: CoxeterElement) -> CoxeterElement:
        return multiply(self, other)

    def __str__(self) -> str:
        return self.graph.format_word(self.word) if self.word else "1"

    @property
    def is_identity(self) -> bool:
        return not self.word

    def letters(self) -> frozenset[int]:
        return frozenset(self.word)


def _wrap(graph: CoxeterGraph, node: _Node) -> CoxeterElement:
    return CoxeterElement(graph, node.word, node)


def identity(graph: CoxeterGraph) -> CoxeterElement:
    return _wrap(graph, _engine(graph).identity)


def generator(graph: CoxeterGraph, s: int | str) -> CoxeterElement:
    if isinstance(s, str):
        s = graph.index(s)
    return normalize(graph, (s,))


def normalize(graph: CoxeterGraph, word: Sequence[int] | str) -> CoxeterElement:
    """Canonical element represented by ``word`` (indices or a name string)."""
    if isinstance(word, str):
        word = graph.parse_word(word)
    word = tuple(word)
    for s in word:
        if not 0 <= s < graph.rank:
            raise WordParseError(f"generator index {s} out of range")
    return _wrap(graph, _engine(graph).node(word))


def _same_graph(e1: CoxeterElement, e2: CoxeterElement) -> None:
    if e1.graph != e2.graph:
        raise ValueError("elements belong to different Coxeter graphs")


def multiply(e1: CoxeterElement, e2: CoxeterElement) -> CoxeterElement:
    _same_graph(e1, e2)
    return _wrap(e1.graph, _engine(e1.graph).climb(e1._node, e2.word))


def multiply_generator(e: CoxeterElement, s: int) -> CoxeterElement:
    """``e * s``."""
    return _wrap(e.graph, _engine(e.graph).mul_gen(e._node, s))


def left_multiply_generator(s: int, e: CoxeterElement) -> CoxeterElement:
    """``s * e``."""
    eng = _engine(e.graph)
    return _wrap(e.graph, eng.invert(eng.mul_gen(eng.invert(e._node), s)))


def invert(e: CoxeterElement) -> CoxeterElement:
    return _wrap(e.graph, _engine(e.graph).invert(e._node))


def length(e: CoxeterElement) -> int:
    return len(e.word)


def right_descents(e: CoxeterElement) -> frozenset[int]:
    return frozenset(e._node.down)


def left_descents(e: CoxeterElement) -> frozenset[int]:
    return frozenset(_engine(e.graph).invert(e._node).down)


def in_parabolic(e: CoxeterElement, gens: Iterable[int]) -> bool:
    """Whether ``e`` lies in ``W_T``; reduced words of such elements only use ``T``."""
    return e.letters() <= frozenset(gens)


def parabolic_decompose(
    e: CoxeterElement, gens: Iterable[int]
) -> tuple[CoxeterElement, CoxeterElement]:
    """Split ``e = u0 * u1`` with ``u0`` in ``W_T`` and ``u1`` minimal in ``W_T u1``."""
    gens = frozenset(gens)
    eng = _engine(e.graph)
    prefix: list[int] = []
    inv = eng.invert(e._node)  # inverse of the running u1
    while True:
        ts = gens.intersection(inv.down)
        if not ts:
            break
        t = min(ts)
        prefix.append(t)
        inv = inv.down[t]
    u1 = eng.invert(inv)
    return normalize(e.graph, prefix), _wrap(e.graph, u1)


def is_double_coset_minimal(e: CoxeterElement, left: Iterable[int], right: Iterable[int]) -> bool:
    return not (left_descents(e) & frozenset(left)) and not (right_descents(e) & frozenset(right))


def double_coset_minimal_rep(
    e: CoxeterElement, left: Iterable[int], right: Iterable[int]
) -> CoxeterElement:
    """Shortest element of ``W_X e W_Y``, found by stripping descents greedily."""
    left, right = frozenset(left), frozenset(right)
    eng = _engine(e.graph)
    node = e._node
    while True:
        rs = right.intersection(node.down)
        if rs:
            node = node.down[min(rs)]
            continue
        ls = left.intersection(eng.invert(node).down)
        if ls:
            node = eng.invert(eng.invert(node).down[min(ls)])
            continue
        return _wrap(e.graph, node)


def conjugate(u: CoxeterElement, s: int) -> CoxeterElement:
    """``u s u^-1``."""
    eng = _engine(u.graph)
    return _wrap(u.graph, eng.climb(eng.mul_gen(u._node, s), reversed(u.word)))


def conjugate_into_generators(u: CoxeterElement, s: int) -> int | None:
    """The generator equal to ``u s u^-1``, or ``None`` if it is not a generator."""
    c = conjugate(u, s)
    return c.word[0] if len(c.word) == 1 else None


# -- finiteness and enumeration ---------------------------------------------


def components(graph: CoxeterGraph, gens: Iterable[int]) -> list[list[int]]:
    """Connected components of the subgraph spanned by ``gens`` (edges have m >= 3)."""
    gens = sorted(set(gens))
    seen: set[int] = set()
    comps = []
    for start in gens:
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in gens:
                if w not in seen and graph.m(v, w) >= 3:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _component_is_finite(graph: CoxeterGraph, comp: list[int]) -> bool:
    k = len(comp)
    if k == 1:
        return True
    edges = [(i, j, graph.m(i, j)) for i, j in combinations(comp, 2) if graph.m(i, j) >= 3]
    if any(m == INF for _, _, m in edges):
        return False
    if k == 2:
        return True
    if len(edges) != k - 1:
        return False
    deg = Counter()
    nbrs: dict[int, list[int]] = {v: [] for v in comp}
    for i, j, _ in edges:
        deg[i] += 1
        deg[j] += 1
        nbrs[i].append(j)
        nbrs[j].append(i)
    heavy = [e for e in edges if e[2] >= 4]
    branch = [v for v in comp if deg[v] >= 3]
    if any(deg[v] > 3 for v in comp) or len(branch) > 1:
        return False
    if branch:
        if heavy:
            return False
        center = branch[0]
        arms = []
        for start in nbrs[center]:
            prev, cur, size = center, start, 1
            while deg[cur] == 2:
                prev, cur = cur, next(w for w in nbrs[cur] if w != prev)
                size += 1
            arms.append(size)
        return sum(Fraction(1, a + 1) for a in arms) > 1
    if not heavy:
        return True
    if len(heavy) > 1:
        return False
    i, j, m = heavy[0]
    at_end = deg[i] == 1 or deg[j] == 1
    if m == 4:
        return at_end or k == 4
    if m == 5:
        return at_end and k <= 4
    return False


def is_finite_type(graph: CoxeterGraph, gens: Iterable[int] | None = None) -> bool:
    """Whether ``W_X`` is finite, by matching each component against the finite list."""
    if gens is None:
        gens = graph.generators
    return all(_component_is_finite(graph, comp) for comp in components(graph, gens))


def spherical_subsets(graph: CoxeterGraph, within: Iterable[int] | None = None) -> list[frozenset[int]]:
    """All ``X`` (inside ``within``) with ``W_X`` finite, by size then lexicographically."""
    pool = sorted(graph.generators if within is None else set(within))
    out = []
    for size in range(len(pool) + 1):
        for combo in combinations(pool, size):
            if is_finite_type(graph, combo):
                out.append(frozenset(combo))
    return out


def iter_parabolic(
    graph: CoxeterGraph, gens: Iterable[int], max_elements: int = DEFAULT_MAX_ELEMENTS
) -> Iterator[CoxeterElement]:
    """Breadth-first walk of ``W_X`` from the identity."""
    gens = sorted(set(gens))
    eng = _engine(graph)
    seen = {eng.identity.word}
    queue = deque([eng.identity])
    while queue:
        g = queue.popleft()
        yield _wrap(graph, g)
        for s in gens:
            h = eng.mul_gen(g, s)
            if h.word not in seen:
                if len(seen) >= max_elements:
                    raise ElementBoundError(f"more than {max_elements} elements")
                seen.add(h.word)
                queue.append(h)


def parabolic_elements(
    graph: CoxeterGraph, gens: Iterable[int], max_elements: int = DEFAULT_MAX_ELEMENTS
) -> list[CoxeterElement]:
    gens = frozenset(gens)
    if not is_finite_type(graph, gens):
        raise InfiniteGroupError(f"W_{graph.format_set(gens)} is infinite")
    return list(iter_parabolic(graph, gens, max_elements))


def enumerate_group(
    graph: CoxeterGraph, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> list[CoxeterElement]:
    """All elements of a finite ``W`` in breadth-first order from the identity."""
    return parabolic_elements(graph, graph.generators, max_elements)


def longest_element(graph: CoxeterGraph, gens: Iterable[int] | None = None) -> CoxeterElement:
    elements = parabolic_elements(graph, graph.generators if gens is None else gens)
    return elements[-1]
