"""Artin words, the map to ``W``, and projection of words onto ``A_T``.

A word is a tuple of ``(generator, sign)`` letters with sign ``+1`` or
``-1``.  There is no canonical form: equality in ``A`` is only decided
through an equality oracle (free reduction when every label is infinite,
Garside normal forms for braid groups).
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import braid
from .coxeter import (
    INF,
    CoxeterElement,
    CoxeterGraph,
    alternating_word,
    components,
    conjugate_into_generators,
    identity,
    in_parabolic,
    multiply_generator,
    parabolic_decompose,
)
from .errors import OracleUnavailableError, WordParseError

Letter = tuple[int, int]
ArtinWord = tuple[Letter, ...]
EqualityOracle = Callable[[ArtinWord, ArtinWord], bool]

_TOKEN_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(\^-1|\^\+?1)?$")


def parse_artin_word(graph: CoxeterGraph, text: str) -> ArtinWord:
    """Parse ``"s t^-1 s"``."""
    letters = []
    for tok in text.split():
        match = _TOKEN_RE.match(tok)
        if not match:
            raise WordParseError(f"bad token {tok!r}")
        letters.append((graph.index(match.group(1)), -1 if match.group(2) == "^-1" else 1))
    return tuple(letters)


def format_artin_word(graph: CoxeterGraph, word: Iterable[Letter]) -> str:
    return " ".join(graph.names[s] if e == 1 else f"{graph.names[s]}^-1" for s, e in word)


def inverse_word(word: Sequence[Letter]) -> ArtinWord:
    return tuple((s, -e) for s, e in reversed(word))


def theta(graph: CoxeterGraph, word: Iterable[Letter]) -> CoxeterElement:
    e = identity(graph)
    for s, _ in word:
        e = multiply_generator(e, s)
    return e


def free_reduce(word: Iterable[Letter]) -> ArtinWord:
    out: list[Letter] = []
    for s, e in word:
        if out and out[-1] == (s, -e):
            out.pop()
        else:
            out.append((s, e))
    return tuple(out)


def odd_components(graph: CoxeterGraph) -> list[list[int]]:
    """Classes of generators joined by paths of odd labels."""
    parent = list(range(graph.rank))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j, m in graph.edges:
        if m != INF and m % 2 == 1:
            parent[find(i)] = find(j)
    classes: dict[int, list[int]] = {}
    for s in range(graph.rank):
        classes.setdefault(find(s), []).append(s)
    return sorted(classes.values())


def abelianized_image(graph: CoxeterGraph, word: Iterable[Letter]) -> tuple[int, ...]:
    """Exponent sums per odd component: the image of the word in ``H_1(A)``."""
    comps = odd_components(graph)
    where = {s: k for k, comp in enumerate(comps) for s in comp}
    vec = [0] * len(comps)
    for s, e in word:
        vec[where[s]] += e
    return tuple(vec)


# -- projection onto A_T ----------------------------------------------------


@dataclass(frozen=True)
class TraceStep:
    index: int
    letter: Letter
    prefix: CoxeterElement  # u_i
    parabolic: CoxeterElement  # v_i, in W_T
    minimal: CoxeterElement  # w_i, minimal in its coset W_T w_i
    conjugate: int | None  # t_i when it is a generator
    emitted: Letter | None


def project_word(
    graph: CoxeterGraph, word: Sequence[Letter], target: Iterable[int]
) -> tuple[ArtinWord, list[TraceStep]]:
    """Project a word over all of ``Sigma`` to a word over ``Sigma_T``.

    Along the prefixes ``u_i`` (images in ``W``) with ``u_i = v_i w_i``, the
    letter ``s_i^e`` contributes ``t_i^e`` where ``t_i`` is ``w_{i-1} s_i
    w_{i-1}^-1`` for ``e = +1`` and ``w_i s_i w_i^-1`` for ``e = -1``, or
    nothing when ``t_i`` is not in ``T``.
    """
    target = frozenset(target)
    u = identity(graph)
    w_prev = u
    out: list[Letter] = []
    trace: list[TraceStep] = []
    for i, (s, e) in enumerate(word, 1):
        u = multiply_generator(u, s)
        v, w = parabolic_decompose(u, target)
        t = conjugate_into_generators(w_prev if e == 1 else w, s)
        emitted = (t, e) if t is not None and t in target else None
        if emitted is not None:
            out.append(emitted)
        trace.append(TraceStep(i, (s, e), u, v, w, t, emitted))
        w_prev = w
    return tuple(out), trace


def in_sigma_t(word: Iterable[Letter], target: Iterable[int]) -> bool:
    target = frozenset(target)
    return all(s in target for s, _ in word)


# -- test word generation ---------------------------------------------------


def _relation_moves(graph: CoxeterGraph, word: ArtinWord) -> list[tuple[int, ArtinWord]]:
    moves = []
    n = graph.rank
    for a in range(n):
        for b in range(n):
            m = graph.m(a, b)
            if a == b or m == INF or m > len(word):
                continue
            src, dst = alternating_word(a, b, m), alternating_word(b, a, m)
            for sign in (1, -1):
                pattern = tuple((x, sign) for x in src)
                repl = tuple((x, sign) for x in dst)
                for pos in range(len(word) - m + 1):
                    if word[pos : pos + m] == pattern:
                        moves.append((pos, repl))
    return moves


def scramble(graph: CoxeterGraph, word: Sequence[Letter], steps: int, seed: int = 0) -> ArtinWord:
    """Apply ``steps`` random moves that preserve the element of ``A``.

    Each step picks a move kind uniformly among the applicable ones
    (insert an inverse pair, delete an inverse pair, swap the two sides of a
    defining relation) and then a uniform instance of that kind.
    """
    rng = random.Random(seed)
    w = tuple(word)
    for _ in range(steps):
        deletions = [k for k in range(len(w) - 1) if w[k + 1] == (w[k][0], -w[k][1])]
        relations = _relation_moves(graph, w)
        kinds = ["insert"] + (["delete"] if deletions else []) + (["relation"] if relations else [])
        kind = rng.choice(kinds)
        if kind == "insert":
            pos = rng.randrange(len(w) + 1)
            s = rng.randrange(graph.rank)
            e = rng.choice((1, -1))
            w = w[:pos] + ((s, e), (s, -e)) + w[pos:]
        elif kind == "delete":
            pos = rng.choice(deletions)
            w = w[:pos] + w[pos + 2 :]
        else:
            pos, repl = rng.choice(relations)
            w = w[:pos] + repl + w[pos + len(repl) :]
    return w


def random_word(
    rng: random.Random, gens: Sequence[int], max_len: int, min_len: int = 0
) -> ArtinWord:
    gens = sorted(gens)
    ell = rng.randint(min_len, max_len)
    return tuple((rng.choice(gens), rng.choice((1, -1))) for _ in range(ell))


# -- equality oracles -------------------------------------------------------


def is_free(graph: CoxeterGraph) -> bool:
    """Every pair of distinct generators has label infinity."""
    return all(graph.m(i, j) == INF for i in range(graph.rank) for j in range(i + 1, graph.rank))


def type_a_order(graph: CoxeterGraph) -> list[int] | None:
    """Generators along the path if the graph is of type ``A_n``, else ``None``."""
    if graph.rank == 0 or len(components(graph, graph.generators)) != 1:
        return None
    if any(m != 3 for _, _, m in graph.edges) or len(graph.edges) != graph.rank - 1:
        return None
    nbrs: dict[int, list[int]] = {s: [] for s in range(graph.rank)}
    for i, j, _ in graph.edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    if any(len(v) > 2 for v in nbrs.values()):
        return None
    start = min(s for s in nbrs if len(nbrs[s]) <= 1)
    order, prev = [start], None
    while True:
        nxt = [x for x in nbrs[order[-1]] if x != prev]
        if not nxt:
            return order
        prev = order[-1]
        order.append(nxt[0])


def to_braid(graph: CoxeterGraph, word: Iterable[Letter]) -> braid.BraidWord:
    order = type_a_order(graph)
    if order is None:
        raise OracleUnavailableError("graph is not of type A")
    position = {s: k + 1 for k, s in enumerate(order)}
    return braid.BraidWord(graph.rank + 1, tuple((position[s], e) for s, e in word))


@dataclass(frozen=True)
class Oracle:
    name: str
    equal: EqualityOracle = field(repr=False)

    def __call__(self, w1: ArtinWord, w2: ArtinWord) -> bool:
        return self.equal(w1, w2)


def equality_oracle(graph: CoxeterGraph) -> Oracle | None:
    """Best exact equality test known for ``A``, or ``None``."""
    if is_free(graph):
        return Oracle("free_reduce", lambda a, b: free_reduce(a) == free_reduce(b))
    if type_a_order(graph) is not None:
        return Oracle(
            "garside",
            lambda a, b: braid.words_equal(to_braid(graph, a), to_braid(graph, b)),
        )
    return None


# -- convexity report -------------------------------------------------------


@dataclass
class ConvexityReport:
    word: ArtinWord
    target: frozenset[int]
    projected: ArtinWord
    trace: list[TraceStep] = field(repr=False)
    lengths_equal: bool
    word_in_sigma_t: bool
    # equal lengths force every letter into Sigma_T
    length_rigid: bool
    theta_in_wt: bool
    oracle: str | None = None
    # the word equals the known Sigma_T reference (sanity of the input)
    reference_equal: bool | None = None
    # projection equals the word in A; None when not checked
    projection_equal: bool | None = None
    theta_preserved: bool | None = None
    abelian_preserved: bool | None = None
    # whether the word lies in A_T: known, decided by the oracle, or None
    in_subgroup: bool | None = None

    @property
    def ok(self) -> bool:
        checks = [self.length_rigid, len(self.projected) <= len(self.word)]
        for flag in (self.projection_equal, self.theta_preserved, self.abelian_preserved):
            if flag is not None:
                checks.append(flag)
        return all(checks)


def check_convexity(
    graph: CoxeterGraph,
    word: Sequence[Letter],
    target: Iterable[int],
    oracle: EqualityOracle | None = None,
    reference: Sequence[Letter] | None = None,
    require_oracle: bool = False,
) -> ConvexityReport:
    """Project ``word`` onto ``A_T`` and check the length and equality claims.

    ``reference`` is a word over ``Sigma_T`` known to represent the same
    element as ``word``; it (or ``word`` itself lying in ``Sigma_T``)
    establishes membership in ``A_T``.  Without membership the projection is
    only compared with ``word`` by the oracle when ``theta(word)`` lies in
    ``W_T``, and the outcome then decides membership rather than testing it.
    """
    target = frozenset(target)
    word = tuple(word)
    if require_oracle and oracle is None:
        raise OracleUnavailableError("no equality oracle for this graph")
    projected, trace = project_word(graph, word, target)
    lengths_equal = len(projected) == len(word)
    word_in_t = in_sigma_t(word, target)
    theta_w = theta(graph, word)
    report = ConvexityReport(
        word=word,
        target=target,
        projected=projected,
        trace=trace,
        lengths_equal=lengths_equal,
        word_in_sigma_t=word_in_t,
        length_rigid=(not lengths_equal) or word_in_t,
        theta_in_wt=in_parabolic(theta_w, target),
        oracle=getattr(oracle, "name", None if oracle is None else "custom"),
    )
    if reference is not None and not in_sigma_t(reference, target):
        raise ValueError("reference word must lie over Sigma_T")
    member = reference is not None or word_in_t
    if member:
        report.in_subgroup = True
        ref = tuple(reference) if reference is not None else word
        report.theta_preserved = theta(graph, projected) == theta_w
        report.abelian_preserved = abelianized_image(graph, projected) == abelianized_image(graph, word)
        if oracle is not None:
            report.projection_equal = oracle(projected, ref)
            if reference is not None:
                report.reference_equal = oracle(word, ref)
    elif not report.theta_in_wt:
        report.in_subgroup = False
    elif oracle is not None:
        report.in_subgroup = oracle(projected, word)
    return report


def decide_membership(
    graph: CoxeterGraph, word: Sequence[Letter], target: Iterable[int], oracle: EqualityOracle
) -> bool:
    """Whether ``word`` represents an element of ``A_T``, given an exact oracle.

    If it does, its projection represents the same element; the projection
    always lies in ``A_T``.
    """
    target = frozenset(target)
    if not in_parabolic(theta(graph, word), target):
        return False
    projected, _ = project_word(graph, word, target)
    return oracle(projected, tuple(word))
