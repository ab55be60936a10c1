"""Freely reduced words over named generators.

The two-letter alphabet {a, b} carries the relator grammar used by the CLI;
presentation-side words use the same type with generator names like ``x1``.

Sign convention (load-bearing, used by every order formula downstream):
``alpha`` is the exponent sum of ``a`` and ``beta`` is the NEGATIVE of the
exponent sum of ``b``.  A single point of truth here prevents global sign
bugs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

Syllable = tuple[str, int]


def _free_reduce(syllables: Iterable[Syllable]) -> tuple[Syllable, ...]:
    out: list[Syllable] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((gen, merged))
        else:
            out.append((gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word stored as (generator, nonzero exponent) syllables.

    Construction always reduces, so adjacent syllables never share a
    generator and no exponent is zero.  The empty tuple is the identity.

    >>> Word((("a", 1), ("a", -1)))
    Word(syllables=())
    >>> str(Word((("a", 2), ("b", -3))))
    'a^2 b^-3'
    """

    syllables: tuple[Syllable, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "syllables", _free_reduce(self.syllables))

    # -- queries ---------------------------------------------------------

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    def __len__(self) -> int:
        """Letter length (total of absolute exponents)."""
        return sum(abs(e) for _, e in self.syllables)

    def __iter__(self) -> Iterator[Syllable]:
        return iter(self.syllables)

    def generators(self) -> frozenset[str]:
        return frozenset(g for g, _ in self.syllables)

    def involves(self, gen: str) -> bool:
        return any(g == gen for g, _ in self.syllables)

    def exp_sum(self, gen: str) -> int:
        return sum(e for g, e in self.syllables if g == gen)

    def is_cyclically_reduced(self) -> bool:
        if len(self.syllables) < 2:
            return True
        return self.syllables[0][0] != self.syllables[-1][0]

    # -- arithmetic ------------------------------------------------------

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.syllables + other.syllables)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return Word()
        if len(self.syllables) == 1:
            g, e = self.syllables[0]
            return Word(((g, e * n),))
        base = self if n > 0 else self.inverse()
        out = Word()
        for _ in range(abs(n)):
            out = out * base
        return out

    # -- display ---------------------------------------------------------

    def __str__(self) -> str:
        if self.is_identity:
            return "1"
        parts = []
        for g, e in self.syllables:
            parts.append(g if e == 1 else f"{g}^{e}")
        return " ".join(parts)

    def to_json(self) -> list[list]:
        return [[g, e] for g, e in self.syllables]

    @classmethod
    def from_json(cls, data: Iterable) -> "Word":
        return cls(tuple((str(g), int(e)) for g, e in data))


def word(*syllables: Syllable) -> Word:
    """Shorthand constructor: ``word(("a", 2), ("b", -3))``."""
    return Word(tuple(syllables))


def gen(name: str, exp: int = 1) -> Word:
    return Word(((name, exp),))


IDENTITY = Word()


@dataclass(frozen=True)
class ExponentProfile:
    """Exponent-sum data of a cyclically reduced two-letter word.

    ``alpha`` is the exponent sum of ``a``; ``beta`` is the negative of the
    exponent sum of ``b``.  ``alpha_list``/``beta_list`` are the per-syllable
    exponents read off the normalized rotation a^{a1} b^{b1} ... a^{at} b^{bt},
    so ``alpha == sum(alpha_list)`` and ``beta == -sum(beta_list)``.
    ``delta_a``/``delta_b`` are the gcds of the respective lists.
    """

    alpha: int
    beta: int
    t: int
    alpha_list: tuple[int, ...]
    beta_list: tuple[int, ...]
    delta_a: int
    delta_b: int
    involves_a: bool = True
    involves_b: bool = True

    def canonical_word(self) -> Word:
        """Rebuild the normalized relator a^{a1} b^{b1} ... a^{at} b^{bt}."""
        sylls: list[Syllable] = []
        for ai, bi in zip(self.alpha_list, self.beta_list):
            sylls.append(("a", ai))
            sylls.append(("b", bi))
        return Word(tuple(sylls))


class WordSyntaxError(ValueError):
    """Raised on malformed word text (bad token, zero exponent, unknown letter)."""


_LETTERS = {"a": ("a", 1), "A": ("a", -1), "b": ("b", 1), "B": ("b", -1)}


def parse_word(text: str) -> Word:
    """Parse relator text over the letters a b A B.

    Grammar: a letter or a parenthesized group, optionally followed by
    ``^`` and a signed decimal exponent; whitespace and ``*`` are
    separators.  Uppercase letters are inverse shorthand.

    >>> parse_word("a^-1 b a b^-2").syllables
    (('a', -1), ('b', 1), ('a', 1), ('b', -2))
    >>> parse_word("(ab)^2b").syllables
    (('a', 1), ('b', 1), ('a', 1), ('b', 2))
    >>> parse_word("a A").is_identity
    True
    """
    pos = 0
    n = len(text)

    def skip_sep() -> None:
        nonlocal pos
        while pos < n and (text[pos].isspace() or text[pos] == "*"):
            pos += 1

    def parse_exponent() -> int:
        nonlocal pos
        if pos >= n or text[pos] != "^":
            return 1
        pos += 1
        start = pos
        if pos < n and text[pos] in "+-":
            pos += 1
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start or not text[start:pos].lstrip("+-"):
            raise WordSyntaxError(f"expected integer exponent at position {start}")
        k = int(text[start:pos])
        if k == 0:
            raise WordSyntaxError("zero exponent literal")
        return k

    def parse_sequence(stop_at_paren: bool) -> Word:
        nonlocal pos
        acc = Word()
        while True:
            skip_sep()
            if pos >= n:
                if stop_at_paren:
                    raise WordSyntaxError("unclosed parenthesis")
                return acc
            ch = text[pos]
            if ch == ")":
                if not stop_at_paren:
                    raise WordSyntaxError(f"unmatched ')' at position {pos}")
                return acc
            if ch == "(":
                pos += 1
                inner = parse_sequence(stop_at_paren=True)
                pos += 1  # consume ')'
                k = parse_exponent()
                acc = acc * inner**k
            elif ch in _LETTERS:
                g, e = _LETTERS[ch]
                pos += 1
                k = parse_exponent()
                acc = acc * Word(((g, e * k),))
            else:
                raise WordSyntaxError(f"unknown letter {ch!r} at position {pos}")

    return parse_sequence(stop_at_paren=False)


def _syllable_key(s: Syllable) -> tuple:
    g, e = s
    return (g, e < 0, abs(e))


def _cyclic_rotations(sylls: tuple[Syllable, ...]) -> list[tuple[Syllable, ...]]:
    return [sylls[i:] + sylls[:i] for i in range(len(sylls))]


def cyclic_reduce(w: Word) -> Word:
    """Cyclically reduce and normalize the rotation.

    The result is a cyclically reduced conjugate of ``w``.  When more than
    one generator occurs, the rotation starts with a syllable of the least
    generator name, ties broken by the lexicographically least syllable
    sequence (positive exponents before negative, small magnitudes first).
    """
    sylls = list(w.syllables)
    while len(sylls) > 1 and sylls[0][0] == sylls[-1][0]:
        merged = sylls[0][1] + sylls[-1][1]
        if merged == 0:
            sylls = sylls[1:-1]
        else:
            sylls = [(sylls[0][0], merged)] + sylls[1:-1]
    if len(sylls) <= 1:
        return Word(tuple(sylls))
    least_gen = min(g for g, _ in sylls)
    candidates = [
        rot
        for rot in _cyclic_rotations(tuple(sylls))
        if rot[0][0] == least_gen
    ]
    best = min(candidates, key=lambda rot: tuple(_syllable_key(s) for s in rot))
    return Word(best)


def exponent_profile(w: Word) -> ExponentProfile:
    """Extract the exponent profile of a cyclically reduced {a, b} word.

    Raises ValueError when the word is empty, involves only one letter,
    or is not cyclically reduced.
    """
    if not w.is_cyclically_reduced():
        raise ValueError("word is not cyclically reduced")
    gens = w.generators()
    if gens != {"a", "b"}:
        raise ValueError("exponent profile requires a word involving both a and b")
    norm = cyclic_reduce(w)
    sylls = norm.syllables
    # A cyclically reduced word over two letters alternates; normalization
    # makes it start with a and end with b.
    assert len(sylls) % 2 == 0
    alpha_list = tuple(e for g, e in sylls if g == "a")
    beta_list = tuple(e for g, e in sylls if g == "b")
    alpha = sum(alpha_list)
    beta = -sum(beta_list)
    return ExponentProfile(
        alpha=alpha,
        beta=beta,
        t=len(sylls) // 2,
        alpha_list=alpha_list,
        beta_list=beta_list,
        delta_a=math.gcd(*alpha_list),
        delta_b=math.gcd(*beta_list),
    )


def reflect_word(w: Word) -> Word:
    """Interchange a and b and invert every letter.

    Swaps the two exponent sums without a sign change: the reflected word
    has alpha' = beta and beta' = alpha.
    """
    if not w.generators() <= {"a", "b"}:
        raise ValueError("reflection is defined for {a, b} words only")
    swap = {"a": "b", "b": "a"}
    return Word(tuple((swap[g], -e) for g, e in w.syllables))


def substitute(w: Word, assignment: Mapping[str, Word]) -> Word:
    """Freely reduced image of ``w`` under generator -> word substitution.

    Every generator occurring in ``w`` must have an assignment.
    """
    missing = w.generators() - set(assignment)
    if missing:
        raise KeyError(f"no assignment for generator(s) {sorted(missing)}")
    out: list[Syllable] = []
    for g, e in w.syllables:
        out.extend((assignment[g] ** e).syllables)
    return Word(tuple(out))
