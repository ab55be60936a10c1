"""Todd-Coxeter coset enumeration over the trivial subgroup.

The independent order oracle: a finite presentation closes with N live
cosets exactly when the group has order N.  The strategy is Felsch-style
(deduction-driven): define the lowest missing table entry, then chase all
consequences through the relators before defining again.  Coincidences
are handled by a union-find with full queue replay.  Everything is
deterministic, so identical inputs yield identical tables, and a run that
closes at allocation limit L closes identically at any limit >= L.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .presentations import Presentation

MAX_RELATOR_LETTERS = 200_000


@dataclass(frozen=True)
class Order:
    order: int


@dataclass(frozen=True)
class Exceeded:
    limit: int


EnumResult = Union[Order, Exceeded]


@dataclass
class CosetTable:
    """Completed coset table: rows indexed 1..n, one column per letter.

    Letters alternate generator, inverse: column 2i is generator i and
    column 2i+1 its inverse.
    """

    generators: tuple[str, ...]
    table: list[list[int]]  # table[coset-1][letter] -> coset (1-based)

    @property
    def num_cosets(self) -> int:
        return len(self.table)

    def letter_count(self) -> int:
        return 2 * len(self.generators)

    def dump_tsv(self) -> str:
        names = []
        for g in self.generators:
            names += [g, g + "^-1"]
        lines = []
        for row_idx, row in enumerate(self.table, start=1):
            for letter, target in enumerate(row):
                lines.append(f"{row_idx}\t{names[letter]}\t{target}")
        return "\n".join(lines)


def _relator_letters(P: Presentation) -> list[list[int]]:
    """Relators as flat letter sequences (letter = 2*gen or 2*gen+1 for inverse)."""
    index = {g: i for i, g in enumerate(P.generators)}
    out = []
    for rel in P.relators:
        if rel.is_identity:
            continue
        letters: list[int] = []
        for g, e in rel.syllables:
            letter = 2 * index[g] + (0 if e > 0 else 1)
            if len(letters) + abs(e) > MAX_RELATOR_LETTERS:
                raise ValueError("relator too long to enumerate")
            letters.extend([letter] * abs(e))
        out.append(letters)
    return out


class _Enumerator:
    def __init__(self, P: Presentation, max_cosets: int):
        self.P = P
        self.max_cosets = max_cosets
        self.nletters = 2 * len(P.generators)
        self.relators = _relator_letters(P)
        # distinct rotations of each relator grouped by first letter
        self.by_first: dict[int, list[list[int]]] = {x: [] for x in range(self.nletters)}
        seen: set[tuple[int, ...]] = set()
        for rel in self.relators:
            for k in range(len(rel)):
                rot = rel[k:] + rel[:k]
                key = tuple(rot)
                if key not in seen:
                    seen.add(key)
                    self.by_first[rot[0]].append(rot)
        self.table: list[list[int]] = [[], [0] * self.nletters]  # index 0 unused
        self.parent = [0, 1]
        self.alive = 1
        self.deductions: list[tuple[int, int]] = []
        self.coincidence_queue: list[int] = []
        self.scan_from = 1

    @staticmethod
    def _inv(letter: int) -> int:
        return letter ^ 1

    def rep(self, c: int) -> int:
        while self.parent[c] != c:
            self.parent[c] = self.parent[self.parent[c]]
            c = self.parent[c]
        return c

    def define(self, c: int, letter: int) -> bool:
        if len(self.table) - 1 >= self.max_cosets:
            return False
        new = len(self.table)
        self.table.append([0] * self.nletters)
        self.parent.append(new)
        self.alive += 1
        self.table[c][letter] = new
        self.table[new][self._inv(letter)] = c
        self.deductions.append((c, letter))
        self.deductions.append((new, self._inv(letter)))
        return True

    def _merge(self, a: int, b: int) -> None:
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.parent[b] = a
        self.alive -= 1
        self.coincidence_queue.append(b)

    def _process_coincidences(self) -> None:
        while self.coincidence_queue:
            dead = self.coincidence_queue.pop()
            row = self.table[dead]
            for letter in range(self.nletters):
                target = row[letter]
                if not target:
                    continue
                row[letter] = 0
                # the mirrored entry points into the dead coset's class;
                # zeroing it may reopen a hole in a live row behind the
                # definition cursor
                self.table[target][self._inv(letter)] = 0
                if target < self.scan_from:
                    self.scan_from = target
                mu = self.rep(dead)
                nu = self.rep(target)
                mu_entry = self.table[mu][letter]
                if mu_entry:
                    self._merge(nu, mu_entry)
                else:
                    nu_entry = self.table[nu][self._inv(letter)]
                    if nu_entry:
                        self._merge(mu, nu_entry)
                    else:
                        self.table[mu][letter] = nu
                        self.table[nu][self._inv(letter)] = mu
                        self.deductions.append((mu, letter))
                        self.deductions.append((nu, self._inv(letter)))

    def scan(self, coset: int, rel: list[int]) -> None:
        """Trace a relator from a coset, filling one missing entry if possible."""
        f = self.rep(coset)
        start = f
        i = 0
        n = len(rel)
        while i < n:
            nxt = self.table[f][rel[i]]
            if not nxt:
                break
            f = self.rep(nxt)
            i += 1
        if i == n:
            self._merge(f, start)
            return
        b = start
        j = n - 1
        while j >= i:
            nxt = self.table[b][self._inv(rel[j])]
            if not nxt:
                break
            b = self.rep(nxt)
            j -= 1
        if j < i:
            self._merge(f, b)
        elif j == i:
            existing = self.table[f][rel[i]]
            if existing:
                self._merge(existing, b)
            else:
                back = self.table[b][self._inv(rel[i])]
                if back:
                    self._merge(back, f)
                else:
                    self.table[f][rel[i]] = b
                    self.table[b][self._inv(rel[i])] = f
                    self.deductions.append((f, rel[i]))
                    self.deductions.append((b, self._inv(rel[i])))

    def _drain(self) -> None:
        while True:
            self._process_coincidences()
            if not self.deductions:
                return
            c, letter = self.deductions.pop()
            c = self.rep(c)
            for rot in self.by_first[letter]:
                self.scan(c, rot)
                self._process_coincidences()

    def run(self) -> tuple[EnumResult, Optional[CosetTable]]:
        for rel in self.relators:
            self.scan(1, rel)
        self._drain()
        while True:
            hole = None
            c = self.scan_from
            while c < len(self.table):
                if self.rep(c) == c:
                    row = self.table[c]
                    for letter in range(self.nletters):
                        if not row[letter]:
                            hole = (c, letter)
                            break
                    if hole:
                        break
                c += 1
            if hole is None:
                return Order(self.alive), self._compact()
            self.scan_from = hole[0]
            if not self.define(*hole):
                return Exceeded(self.max_cosets), None
            self._drain()

    def _compact(self) -> CosetTable:
        live = [c for c in range(1, len(self.table)) if self.rep(c) == c]
        renum = {c: i + 1 for i, c in enumerate(live)}
        rows = []
        for c in live:
            rows.append([renum[self.rep(t)] for t in self.table[c]])
        return CosetTable(self.P.generators, rows)


def enumerate_cosets(
    P: Presentation, max_cosets: int = 1_000_000
) -> tuple[EnumResult, Optional[CosetTable]]:
    """Enumerate cosets of the trivial subgroup.

    Returns (Order(N), table) when the table closes with N live cosets,
    or (Exceeded(limit), None) when the allocation limit is hit.  Limit
    exhaustion is a result, not an error.
    """
    if not P.generators:
        return Order(1), CosetTable((), [[]])
    enum = _Enumerator(P, max_cosets)
    return enum.run()


def coset_order(P: Presentation, max_cosets: int = 1_000_000) -> EnumResult:
    result, _ = enumerate_cosets(P, max_cosets)
    return result


def validate_table(t: CosetTable, P: Presentation) -> bool:
    """Re-check a completed table against the presentation.

    Verifies the action is total with mutually inverse generator and
    inverse columns, that every coset is reachable from coset 1, and
    that every relator traces back to its start at every coset.
    """
    if tuple(t.generators) != tuple(P.generators):
        return False
    n = t.num_cosets
    nlet = t.letter_count()
    for row in t.table:
        if len(row) != nlet:
            return False
        for target in row:
            if not 1 <= target <= n:
                return False
    for c in range(1, n + 1):
        for letter in range(nlet):
            image = t.table[c - 1][letter]
            if t.table[image - 1][letter ^ 1] != c:
                return False
    if n:
        seen = {1}
        frontier = [1]
        while frontier:
            c = frontier.pop()
            for letter in range(nlet):
                image = t.table[c - 1][letter]
                if image not in seen:
                    seen.add(image)
                    frontier.append(image)
        if len(seen) != n:
            return False
    for rel in _relator_letters(P):
        for c in range(1, n + 1):
            cur = c
            for letter in rel:
                cur = t.table[cur - 1][letter]
            if cur != c:
                return False
    return True
