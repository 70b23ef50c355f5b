"""The Salvetti poset ``W x S^f`` and the retraction onto a parabolic piece.

Cells are identified by their defining data: the vertex ``x(u)`` by ``u``,
the edge ``a(u, s)`` by ``(u, s)`` (oriented from ``u`` to ``us``), and the
cell ``B(u, X)`` by the poset node ``(u, X)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, TextIO

from .coxeter import (
    INF,
    CoxeterElement,
    CoxeterGraph,
    alternating_word,
    conjugate_into_generators,
    enumerate_group,
    identity,
    in_parabolic,
    invert,
    is_finite_type,
    iter_parabolic,
    multiply,
    multiply_generator,
    normalize,
    parabolic_decompose,
    parabolic_elements,
    right_descents,
    spherical_subsets,
)
from .errors import InfiniteGroupError, PreconditionError


@dataclass(frozen=True)
class PosetNode:
    u: CoxeterElement
    X: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "X", frozenset(self.X))
        if not is_finite_type(self.u.graph, self.X):
            raise PreconditionError(f"W_X is infinite for X = {self.u.graph.format_set(self.X)}")

    @property
    def graph(self) -> CoxeterGraph:
        return self.u.graph

    @property
    def dim(self) -> int:
        return len(self.X)

    def __str__(self) -> str:
        return f"({self.u}, {self.graph.format_set(self.X)})"


@dataclass(frozen=True)
class Vertex:
    u: CoxeterElement


@dataclass(frozen=True)
class OrientedEdge:
    """The edge ``a(u, s)`` from ``x(u)`` to ``x(us)``."""

    u: CoxeterElement
    s: int

    @property
    def source(self) -> CoxeterElement:
        return self.u

    @property
    def target(self) -> CoxeterElement:
        return multiply_generator(self.u, self.s)


BoundaryLoop = tuple[tuple[OrientedEdge, int], ...]


def leq(a: PosetNode, b: PosetNode) -> bool:
    """``(u, X) <= (v, Y)``: ``X`` in ``Y``, ``v^-1 u`` in ``W_Y`` with no right descent in ``X``."""
    if a.graph != b.graph:
        raise ValueError("nodes belong to different graphs")
    if not a.X <= b.X:
        return False
    d = multiply(invert(b.u), a.u)
    return in_parabolic(d, b.X) and not (right_descents(d) & a.X)


def lower_set(node: PosetNode) -> set[PosetNode]:
    """All nodes below ``node``: the cell ``B(u, X)`` with its faces."""
    graph = node.graph
    out = set()
    for w in parabolic_elements(graph, node.X):
        uw = multiply(node.u, w)
        desc = right_descents(w)
        for size in range(len(node.X) + 1):
            for Y in combinations(sorted(node.X), size):
                if not desc.intersection(Y):
                    out.add(PosetNode(uw, frozenset(Y)))
    return out


def two_cell_boundary(u: CoxeterElement, s: int, t: int) -> BoundaryLoop:
    """Boundary loop of ``B(u, {s, t})``, starting along ``a(u, s)``."""
    graph = u.graph
    m = graph.m(s, t)
    if s == t:
        raise PreconditionError("two distinct generators needed")
    if m == INF:
        raise PreconditionError("m(s, t) is infinite: {s, t} spans no 2-cell")
    loop: list[tuple[OrientedEdge, int]] = []
    forward = alternating_word(s, t, m)
    for k in range(m):
        loop.append((OrientedEdge(multiply(u, normalize(graph, forward[:k])), forward[k]), 1))
    backward = alternating_word(t, s, m)
    for k in range(m - 1, -1, -1):
        loop.append((OrientedEdge(multiply(u, normalize(graph, backward[:k])), backward[k]), -1))
    return tuple(loop)


def loop_closes(loop: BoundaryLoop) -> bool:
    if not loop:
        return True
    ends = [(e.source, e.target) if sign == 1 else (e.target, e.source) for e, sign in loop]
    return all(ends[k][1] == ends[k + 1][0] for k in range(len(ends) - 1)) and ends[-1][1] == ends[0][0]


def loop_spelling(loop: BoundaryLoop) -> tuple[tuple[int, int], ...]:
    """The loop read as a signed word: edge ``a(v, r)`` gives the letter ``r``."""
    return tuple((e.s, sign) for e, sign in loop)


# -- whole complex ----------------------------------------------------------


@dataclass(frozen=True)
class ComplexSummary:
    counts: tuple[int, ...]  # cells per dimension
    radius: int | None = None

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.counts))

    @property
    def vertices(self) -> int:
        return self.counts[0]

    @property
    def edges(self) -> int:
        return self.counts[1] if len(self.counts) > 1 else 0

    @property
    def faces(self) -> int:
        return self.counts[2] if len(self.counts) > 2 else 0


def _elements(graph: CoxeterGraph, radius: int | None) -> Iterator[CoxeterElement]:
    if radius is None:
        if not is_finite_type(graph):
            raise InfiniteGroupError("W is infinite: give a radius bound")
        yield from enumerate_group(graph)
        return
    for e in iter_parabolic(graph, graph.generators):
        if len(e) > radius:
            return
        yield e


def build_complex(graph: CoxeterGraph, radius: int | None = None) -> ComplexSummary:
    """Cell census: one cell of dimension ``|X|`` per ``(u, X)``.

    For infinite ``W`` only the cells ``(u, X)`` with ``lg(u) <= radius`` are
    counted.
    """
    spherical = spherical_subsets(graph)
    top = max(len(X) for X in spherical)
    per_dim = [0] * (top + 1)
    for X in spherical:
        per_dim[len(X)] += 1
    n = sum(1 for _ in _elements(graph, radius))
    return ComplexSummary(tuple(c * n for c in per_dim), radius)


def write_one_skeleton(graph: CoxeterGraph, out: TextIO, radius: int | None = None) -> int:
    """Write the edges ``u s us`` one per line; words are dot-joined, ``1`` is the identity."""

    def token(e: CoxeterElement) -> str:
        return ".".join(graph.names[i] for i in e.word) or "1"

    count = 0
    for u in _elements(graph, radius):
        for s in range(graph.rank):
            out.write(f"{token(u)} {graph.names[s]} {token(multiply_generator(u, s))}\n")
            count += 1
    return count


def poset_nodes(graph: CoxeterGraph, within: Iterable[int] | None = None) -> list[PosetNode]:
    """All of ``W_T x S_T^f`` for finite ``W_T`` (default ``T = S``)."""
    gens = graph.generators if within is None else frozenset(within)
    elements = parabolic_elements(graph, gens)
    return [PosetNode(u, X) for u in elements for X in spherical_subsets(graph, gens)]


# -- inclusion and retraction -----------------------------------------------


def include_node(node: PosetNode, ambient: CoxeterGraph, target: Iterable[int] | None = None) -> PosetNode:
    """Re-read a node of ``Sal(Gamma_T)`` as a node of ``Sal(Gamma)``.

    ``target`` names ``T`` as generator indices of ``node.graph`` (default:
    all of them); the node must only involve generators of ``T``, and
    ``node.graph`` restricted to ``T`` must be a full subgraph of ``ambient``.
    """
    sub = node.graph
    gens = sub.generators if target is None else frozenset(target)
    if not (node.X <= gens and node.u.letters() <= gens):
        raise PreconditionError(f"node {node} involves generators outside T")
    try:
        mapping = {g: ambient.index(sub.names[g]) for g in gens}
    except Exception:
        raise PreconditionError("T is not a set of generators of the ambient graph") from None
    for a, b in combinations(sorted(gens), 2):
        if sub.m(a, b) != ambient.m(mapping[a], mapping[b]):
            raise PreconditionError("labels differ: not a full subgraph")
    u = normalize(ambient, [mapping[g] for g in node.u.word])
    return PosetNode(u, frozenset(mapping[g] for g in node.X))


def restrict_node(node: PosetNode, target: Iterable[int]) -> PosetNode:
    """Re-read a node lying over ``T`` as a node of ``Sal(Gamma_T)``."""
    target = frozenset(target)
    if not (node.X <= target and node.u.letters() <= target):
        raise PreconditionError(f"node {node} involves generators outside T")
    sub = node.graph.subgraph(target)
    pos = {g: sub.index(node.graph.names[g]) for g in target}
    return PosetNode(normalize(sub, [pos[g] for g in node.u.word]), frozenset(pos[g] for g in node.X))


def project_node(node: PosetNode, target: Iterable[int]) -> PosetNode:
    """``pi_T(u, X) = (u0, X0)`` where ``u = u0 u1`` and ``X0 = T & u1 W_X u1^-1``.

    Reading ``X0`` as the generators of ``T`` conjugated into ``W_X`` (rather
    than conjugates of single letters of ``X``) is what makes ``pi_T``
    order-preserving; on edges both readings agree.
    """
    target = frozenset(target)
    graph = node.graph
    u0, u1 = parabolic_decompose(node.u, target)
    u1_inv = invert(u1)
    X0 = frozenset(
        t for t in target if in_parabolic(multiply(multiply(u1_inv, normalize(graph, (t,))), u1), node.X)
    )
    return PosetNode(u0, X0)


def project_edge(u: CoxeterElement, s: int, target: Iterable[int]) -> OrientedEdge | Vertex:
    """Image of ``a(u, s)``: an edge ``a(u0, t)`` or the vertex ``x(u0)``."""
    target = frozenset(target)
    u0, u1 = parabolic_decompose(u, target)
    t = conjugate_into_generators(u1, s)
    if t is not None and t in target:
        return OrientedEdge(u0, t)
    return Vertex(u0)


def edge_cell(u: CoxeterElement, s: int) -> PosetNode:
    return PosetNode(u, frozenset({s}))


def vertex_cell(u: CoxeterElement) -> PosetNode:
    return PosetNode(u, frozenset())


def base_vertex(graph: CoxeterGraph) -> PosetNode:
    return vertex_cell(identity(graph))
