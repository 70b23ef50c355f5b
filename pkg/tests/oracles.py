"""Reference implementations used only by the tests.

None of these share code with the library's word-problem engine:

* ``tits_reduce`` solves the Coxeter word problem by exploring braid-move
  orbits and deleting ``ss`` (Tits' solution), with no memoization.
* ``perm_rep`` realizes types A, B and I2(m) as explicit permutation groups.
* ``artin_action`` realizes the braid group faithfully as automorphisms of
  a free group.
"""

from __future__ import annotations

from collections import deque
from itertools import product

from artinconvex.coxeter import INF, CoxeterGraph


def _braid_moves(graph: CoxeterGraph, word: tuple[int, ...]):
    n = len(word)
    for i in range(n):
        for j in range(i + 2, n + 1):
            seg = word[i:j]
            a, b = seg[0], seg[1]
            m = graph.m(a, b)
            if a == b or m == INF or j - i != m:
                continue
            if all(seg[k] == (a if k % 2 == 0 else b) for k in range(m)):
                other = tuple(b if k % 2 == 0 else a for k in range(m))
                yield word[:i] + other + word[j:]


def braid_orbit(graph: CoxeterGraph, word: tuple[int, ...]) -> set[tuple[int, ...]]:
    seen = {word}
    queue = deque([word])
    while queue:
        w = queue.popleft()
        for v in _braid_moves(graph, w):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def tits_reduce(graph: CoxeterGraph, word) -> tuple[tuple[int, ...], set[tuple[int, ...]]]:
    """ShortLex normal form and the set of all reduced words of the element."""
    w = tuple(word)
    while True:
        orbit = braid_orbit(graph, w)
        for v in sorted(orbit):
            k = next((k for k in range(len(v) - 1) if v[k] == v[k + 1]), None)
            if k is not None:
                w = v[:k] + v[k + 2 :]
                break
        else:
            return min(orbit), orbit


# -- permutation representations -------------------------------------------


def perm_rep(kind: str, n: int) -> list[tuple[int, ...]]:
    """Generator permutations for ``A_n``, ``B_n`` or ``I2(n)``.

    Generators are listed in the order used by ``coxeter_type``.
    """
    if kind == "A":
        gens = []
        for i in range(n):
            p = list(range(n + 1))
            p[i], p[i + 1] = p[i + 1], p[i]
            gens.append(tuple(p))
        return gens
    if kind == "B":
        # signed permutations of 1..n acting on {+-1, ..., +-n}, encoded 0..2n-1
        def enc(x):
            return (abs(x) - 1) * 2 + (0 if x > 0 else 1)

        pts = [x for k in range(1, n + 1) for x in (k, -k)]
        gens = []
        flip = {x: (-x if abs(x) == 1 else x) for x in pts}
        gens.append(flip)
        for i in range(1, n):
            swap = {}
            for x in pts:
                a = abs(x)
                b = i + 1 if a == i else i if a == i + 1 else a
                swap[x] = b if x > 0 else -b
            gens.append(swap)
        out = []
        for g in gens:
            p = [0] * (2 * n)
            for x in pts:
                p[enc(x)] = enc(g[x])
            out.append(tuple(p))
        return out
    if kind == "I":
        m = n
        # affine maps x -> a x + b on Z/m, acting on 2m points (x, orientation)
        s = tuple(((-x) % m) * 2 + (1 - o) for x in range(m) for o in (0, 1))
        t = tuple(((1 - x) % m) * 2 + (1 - o) for x in range(m) for o in (0, 1))
        return [s, t]
    raise ValueError(kind)


def perm_group(gens: list[tuple[int, ...]]) -> dict[tuple[int, ...], int]:
    """All group elements with their word length (BFS in the Cayley graph)."""
    ident = tuple(range(len(gens[0])))
    dist = {ident: 0}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = tuple(g[x] for x in s)  # g * s: apply s first
            if h not in dist:
                dist[h] = dist[g] + 1
                queue.append(h)
    return dist


def perm_eval(gens: list[tuple[int, ...]], word) -> tuple[int, ...]:
    g = tuple(range(len(gens[0])))
    for s in word:
        g = tuple(g[x] for x in gens[s])
    return g


# -- braid group acting on a free group ------------------------------------


def _free_mul(a, b):
    out = list(a)
    for x in b:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _free_inv(a):
    return tuple(-x for x in reversed(a))


def artin_action(n: int, letters) -> tuple[tuple[int, ...], ...]:
    """Images of the free generators ``x_1..x_n`` under the braid (faithful)."""
    images = [(k,) for k in range(1, n + 1)]

    def subst(word, imgs):
        out = ()
        for x in word:
            out = _free_mul(out, imgs[x - 1] if x > 0 else _free_inv(imgs[-x - 1]))
        return out

    for i, e in letters:
        xi, xj = (i,), (i + 1,)
        if e == 1:
            rule = {i: _free_mul(_free_mul(xi, xj), _free_inv(xi)), i + 1: xi}
        else:
            rule = {i: xj, i + 1: _free_mul(_free_mul(_free_inv(xj), xi), xj)}
        basic = [rule.get(k, (k,)) for k in range(1, n + 1)]
        images = [subst(b, images) for b in basic]
    return tuple(images)


def all_signed_words(rank: int, length: int):
    alphabet = [(s, e) for s in range(rank) for e in (1, -1)]
    return product(alphabet, repeat=length)
