"""Braid groups: permutation images, Garside normal form, strand deletion.

A braid word on ``n`` strands is a tuple of ``(i, sign)`` letters with
``1 <= i <= n - 1``; ``(i, +1)`` is the crossing of the strands in positions
``i`` and ``i + 1``.

Permutations are 0-based tuples: ``perm[p]`` is the final position of the
strand that starts in position ``p``.  A simple braid (permutation braid) is
stored as that permutation, and the product of braids ``a`` then ``b`` has
permutation ``b o a``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .errors import PreconditionError, WordParseError

Letter = tuple[int, int]
Permutation = tuple[int, ...]

_TOKEN_RE = re.compile(r"^s(\d+)(\^-1|\^\+?1)?$")


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a braid needs at least one strand")
        letters = tuple((int(i), int(e)) for i, e in self.letters)
        for i, e in letters:
            if not 1 <= i <= self.n - 1:
                raise ValueError(f"generator s{i} out of range for {self.n} strands")
            if e not in (1, -1):
                raise ValueError(f"bad exponent {e}")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: BraidWord) -> BraidWord:
        if other.n != self.n:
            raise ValueError("strand counts differ")
        return BraidWord(self.n, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.n, tuple((i, -e) for i, e in reversed(self.letters)))

    def __str__(self) -> str:
        return format_braid(self.letters)


def parse_braid(text: str, n: int) -> BraidWord:
    """Parse tokens ``s1``, ``s2^-1``, ... into a word on ``n`` strands."""
    letters = []
    for tok in text.split():
        match = _TOKEN_RE.match(tok)
        if not match:
            raise WordParseError(f"bad braid token {tok!r}")
        i = int(match.group(1))
        if not 1 <= i <= n - 1:
            raise WordParseError(f"generator {tok!r} out of range for {n} strands")
        letters.append((i, -1 if match.group(2) == "^-1" else 1))
    return BraidWord(n, tuple(letters))


def format_braid(letters: Iterable[Letter]) -> str:
    return " ".join(f"s{i}" if e == 1 else f"s{i}^-1" for i, e in letters)


# -- permutations -----------------------------------------------------------


def identity_perm(n: int) -> Permutation:
    return tuple(range(n))


def transposition(n: int, i: int) -> Permutation:
    """Permutation of the crossing ``s_i`` (1-based ``i``)."""
    p = list(range(n))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def then(a: Permutation, b: Permutation) -> Permutation:
    """Permutation of the braid ``a`` followed by ``b``."""
    return tuple(b[x] for x in a)


def perm_inverse(a: Permutation) -> Permutation:
    inv = [0] * len(a)
    for p, q in enumerate(a):
        inv[q] = p
    return tuple(inv)


def inversions(a: Permutation) -> int:
    n = len(a)
    return sum(1 for p in range(n) for q in range(p + 1, n) if a[p] > a[q])


def perm_of(w: BraidWord) -> Permutation:
    occupant = list(range(w.n))
    for i, _ in w.letters:
        occupant[i - 1], occupant[i] = occupant[i], occupant[i - 1]
    return perm_inverse(tuple(occupant))


# -- Garside normal form ----------------------------------------------------


def _left_descents(a: Permutation) -> set[int]:
    # s_i a is shorter iff strands starting at i-1, i already crossed in a
    return {i for i in range(1, len(a)) if a[i - 1] > a[i]}


def _right_descents(a: Permutation) -> set[int]:
    inv = perm_inverse(a)
    return {i for i in range(1, len(a)) if inv[i - 1] > inv[i]}


def _half_twist(n: int) -> Permutation:
    return tuple(range(n - 1, -1, -1))


def _flip(a: Permutation) -> Permutation:
    """Conjugation by the half twist: ``s_i -> s_{n-i}``."""
    n = len(a)
    return tuple(n - 1 - a[n - 1 - p] for p in range(n))


@dataclass(frozen=True)
class GarsideNormalForm:
    """``Delta^power`` followed by a left-weighted sequence of proper simples."""

    n: int
    power: int
    factors: tuple[Permutation, ...]

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    def to_word(self) -> BraidWord:
        """A word for the braid (``Delta`` powers written out)."""
        delta = simple_word(_half_twist(self.n))
        letters: list[Letter] = []
        if self.power >= 0:
            letters.extend(delta * self.power)
        else:
            letters.extend([(i, -1) for i, _ in reversed(delta)] * (-self.power))
        for f in self.factors:
            letters.extend(simple_word(f))
        return BraidWord(self.n, tuple(letters))


def simple_word(a: Permutation) -> list[Letter]:
    """A positive word for the simple braid ``a``."""
    letters = []
    a = tuple(a)
    while True:
        desc = _left_descents(a)
        if not desc:
            return letters
        i = min(desc)
        letters.append((i, 1))
        a = then(transposition(len(a), i), a)  # strip s_i from the left


def _weight_pair(a: Permutation, b: Permutation) -> tuple[Permutation, Permutation]:
    n = len(a)
    while True:
        movable = _left_descents(b) - _right_descents(a)
        if not movable:
            return a, b
        i = min(movable)
        s = transposition(n, i)
        a = then(a, s)
        b = then(s, b)


def garside_nf(w: BraidWord) -> GarsideNormalForm:
    n = w.n
    ident = identity_perm(n)
    delta = _half_twist(n)
    power = 0
    factors: list[Permutation] = []
    for i, e in w.letters:
        if e == 1:
            factors.append(transposition(n, i))
        else:
            # s_i^-1 = Delta^-1 (Delta s_i^-1); move Delta^-1 past earlier factors
            factors = [_flip(f) for f in factors]
            power -= 1
            factors.append(then(delta, transposition(n, i)))
    changed = True
    while changed:
        changed = False
        for j in range(len(factors) - 1):
            a, b = _weight_pair(factors[j], factors[j + 1])
            if (a, b) != (factors[j], factors[j + 1]):
                factors[j], factors[j + 1] = a, b
                changed = True
        trimmed = [f for f in factors if f != ident]
        if len(trimmed) != len(factors):
            factors = trimmed
            changed = True
    lead = 0
    while lead < len(factors) and factors[lead] == delta:
        lead += 1
    assert delta not in factors[lead:], "left-weighted form must put Delta first"
    return GarsideNormalForm(n, power + lead, tuple(factors[lead:]))


def words_equal(w1: BraidWord, w2: BraidWord) -> bool:
    if w1.n != w2.n:
        raise ValueError("strand counts differ")
    return garside_nf(w1) == garside_nf(w2)


# -- strand deletion and embedding ------------------------------------------


def delete_strands(w: BraidWord, keep: Iterable[int]) -> BraidWord:
    """Remove every strand not starting in a position of ``keep`` (1-based).

    Crossings between two kept strands are renumbered by the rank of the
    left strand among kept strands; all other crossings disappear.  The kept
    strands must end in the kept positions.
    """
    keep = sorted(set(keep))
    if not keep or keep[0] < 1 or keep[-1] > w.n:
        raise PreconditionError(f"keep set {keep} not inside 1..{w.n}")
    kept = {p - 1 for p in keep}
    perm = perm_of(w)
    if {perm[p] for p in kept} != kept:
        raise PreconditionError("kept strands do not end in the kept positions")
    occupant = list(range(w.n))
    out: list[Letter] = []
    for i, e in w.letters:
        left, right = occupant[i - 1], occupant[i]
        if left in kept and right in kept:
            rank = sum(1 for q in occupant[: i - 1] if q in kept) + 1
            out.append((rank, e))
        occupant[i - 1], occupant[i] = right, left
    return BraidWord(len(keep), tuple(out))


def embed(w: BraidWord, n: int) -> BraidWord:
    """``B_m -> B_n`` on the first ``m - 1`` generators."""
    if n < w.n:
        raise PreconditionError(f"cannot embed {w.n} strands into {n}")
    return BraidWord(n, w.letters)


def all_words(n: int, length: int) -> Iterable[BraidWord]:
    """Every word of the given length on ``n`` strands."""
    alphabet = [(i, e) for i in range(1, n) for e in (1, -1)]

    def rec(prefix: list[Letter]):
        if len(prefix) == length:
            yield BraidWord(n, tuple(prefix))
            return
        for letter in alphabet:
            prefix.append(letter)
            yield from rec(prefix)
            prefix.pop()

    return rec([])


def geodesics(target: BraidWord, max_length: int | None = None) -> tuple[int, list[BraidWord]]:
    """Brute-force geodesic length of ``target`` and all its geodesic words.

    Searches lengths ``0, 1, ...`` up to ``max_length`` (default ``len(target)``).
    """
    bound = len(target) if max_length is None else max_length
    nf = garside_nf(target)
    for ell in range(bound + 1):
        hits = [c for c in all_words(target.n, ell) if garside_nf(c) == nf]
        if hits:
            return ell, hits
    raise PreconditionError(f"no word of length <= {bound} represents the target")
