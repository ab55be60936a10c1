"""Bounded string rewriting over {a, b} with machine-checkable proofs.

Words are strings over the letters a, b, A, B (capitals are inverses).
Every rewrite rule carries a consequence proof: a list of (conjugator,
sign) pairs certifying that lhs * rhs^-1 equals a product of conjugates
of the defining relator in the free group.  Reductions compose these
proofs, so any word this engine reduces to the empty string comes with a
free-group-verifiable certificate that it lies in the relator's normal
closure.  Dropping rules (length caps, rule caps, proof caps) can only
lose completeness, never soundness.

The rewriting order is shortlex with the fixed letter order a, b, A, B.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .words import Word

LETTERS = "abAB"
_ORDER = {"a": 0, "b": 1, "A": 2, "B": 3}
_INV = {"a": "A", "A": "a", "b": "B", "B": "b"}

ProofStep = tuple[str, int]
Proof = tuple[ProofStep, ...]


def invert_string(s: str) -> str:
    return "".join(_INV[c] for c in reversed(s))


def free_reduce_string(s: str) -> str:
    out: list[str] = []
    for c in s:
        if out and out[-1] == _INV[c]:
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def word_to_string(w: Word) -> str:
    parts = []
    for g, e in w.syllables:
        if g not in ("a", "b"):
            raise ValueError("only {a, b} words have a letter string")
        letter = g if e > 0 else _INV[g]
        parts.append(letter * abs(e))
    return "".join(parts)


def string_to_word(s: str) -> Word:
    sylls = []
    for c in s:
        if c in ("a", "b"):
            sylls.append((c, 1))
        elif c in ("A", "B"):
            sylls.append((c.lower(), -1))
        else:
            raise ValueError(f"bad letter {c!r}")
    return Word(tuple(sylls))


def shortlex_key(s: str) -> tuple:
    return (len(s), tuple(_ORDER[c] for c in s))


def shortlex_less(s: str, t: str) -> bool:
    return shortlex_key(s) < shortlex_key(t)


def verify_consequence(relator: str, target: str, proof: Proof) -> bool:
    """Check target =_F product of conjugates c_i * relator^{e_i} * c_i^-1."""
    parts = []
    for conj, sign in proof:
        base = relator if sign == 1 else invert_string(relator)
        parts.append(conj + base + invert_string(conj))
    product = free_reduce_string("".join(parts))
    return product == free_reduce_string(target)


def _conjugate_proof(proof: Proof, prefix: str) -> Proof:
    return tuple((free_reduce_string(prefix + c), e) for c, e in proof)


def _invert_proof(proof: Proof) -> Proof:
    return tuple((c, -e) for c, e in reversed(proof))


@dataclass(frozen=True)
class Rule:
    lhs: str
    rhs: str
    proof: Proof  # certifies lhs * rhs^-1 in the normal closure


@dataclass
class RewriteOutcome:
    normal_form: str
    proof: Proof  # certifies word * normal_form^-1 in the normal closure
    complete: bool  # False when a step/proof budget was hit


@dataclass
class RuleSystem:
    """A bounded, possibly incomplete rewriting system for one relator.

    Rules are indexed by exact left-hand side; a reduction step applies
    the shortest matching lhs at the leftmost position, which keeps runs
    deterministic.
    """

    relator: str
    rules: list[Rule]
    saturated: bool  # True when completion found no more critical pairs

    def __post_init__(self) -> None:
        self._index: dict[str, Rule] = {}
        self._lengths: list[int] = []
        for rule in self.rules:
            self._add_to_index(rule)

    def _add_to_index(self, rule: Rule) -> None:
        if rule.lhs not in self._index:
            self._index[rule.lhs] = rule
            if len(rule.lhs) not in self._lengths:
                self._lengths.append(len(rule.lhs))
                self._lengths.sort()

    def add_rule(self, rule: Rule) -> None:
        self.rules.append(rule)
        self._add_to_index(rule)

    def reduce(self, s: str, max_steps: int = 10_000, proof_cap: int = 20_000) -> RewriteOutcome:
        cur = free_reduce_string(s)
        proof: list[ProofStep] = []
        index = self._index
        for _ in range(max_steps):
            applied = False
            n = len(cur)
            for i in range(n):
                for L in self._lengths:
                    if i + L > n:
                        break
                    rule = index.get(cur[i : i + L])
                    if rule is None:
                        continue
                    prefix = cur[:i]
                    suffix = cur[i + L :]
                    step_proof = _conjugate_proof(rule.proof, prefix)
                    if len(proof) + len(step_proof) > proof_cap:
                        return RewriteOutcome(cur, tuple(proof), False)
                    proof.extend(step_proof)
                    cur = free_reduce_string(prefix + rule.rhs + suffix)
                    applied = True
                    break
                if applied:
                    break
            if not applied:
                return RewriteOutcome(cur, tuple(proof), True)
        return RewriteOutcome(cur, tuple(proof), False)

    def prove_trivial(self, s: str, max_steps: int = 10_000) -> Optional[Proof]:
        outcome = self.reduce(s, max_steps=max_steps)
        if outcome.normal_form == "":
            return outcome.proof
        return None


_CANCEL_RULES = [Rule(x + _INV[x], "", ()) for x in LETTERS]


def seed_rules(relator: str) -> list[Rule]:
    """Orientation of every cyclic rotation of the relator and its inverse.

    A rotation rot = base[k:] + base[:k] equals c * base * c^-1 with
    c = (base[:k])^-1, so each seed carries a one-conjugate proof.  The
    split point makes lhs strictly longer than rhs, hence every seed is
    shortlex-decreasing.
    """
    rules: dict[tuple[str, str], Rule] = {}
    for base, sign in ((relator, 1), (invert_string(relator), -1)):
        n = len(base)
        h = n // 2 + 1
        for k in range(n):
            rot = base[k:] + base[:k]
            conj = invert_string(base[:k])
            lhs, rhs = rot[:h], invert_string(rot[h:])
            rules.setdefault((lhs, rhs), Rule(lhs, rhs, ((conj, sign),)))
    ordered = sorted(rules.values(), key=lambda r: (shortlex_key(r.lhs), shortlex_key(r.rhs)))
    return list(_CANCEL_RULES) + ordered


@dataclass(frozen=True)
class RewriteConfig:
    max_rules: int = 5000
    max_word_len: int = 64
    pair_budget: int = 20_000
    proof_cap: int = 2000  # per-rule proof size


def complete(relator: str, config: RewriteConfig = RewriteConfig()) -> RuleSystem:
    """Bounded Knuth-Bendix completion seeded from the relator's rotations.

    Deterministic: rules are processed in insertion order and critical
    pairs in positional order.  Returns a sound system; ``saturated`` is
    True only if every overlap was resolved within the budgets.
    """
    relator = free_reduce_string(relator)
    system = RuleSystem(relator, seed_rules(relator), saturated=False)
    rules = system.rules
    budget = config.pair_budget
    saturated = True
    seen_pairs: set[tuple[str, str]] = set()

    def add_relation(w1: str, w2: str, proof: Proof) -> bool:
        """Record w1 = w2 (proof certifies w1 * w2^-1) as an oriented rule."""
        nonlocal saturated
        if w1 == w2:
            return False
        if shortlex_less(w1, w2):
            w1, w2 = w2, w1
            proof = _invert_proof(proof)
        if len(w1) > config.max_word_len or len(proof) > config.proof_cap:
            saturated = False
            return False
        if w1 in system._index:
            return False
        if len(rules) >= config.max_rules:
            saturated = False
            return False
        system.add_rule(Rule(w1, w2, proof))
        return True

    changed = True
    while changed and budget > 0:
        changed = False
        snapshot = list(rules)
        for r1 in snapshot:
            for r2 in snapshot:
                if (r1.lhs, r2.lhs) in seen_pairs:
                    continue
                seen_pairs.add((r1.lhs, r2.lhs))
                budget -= 1
                if budget <= 0:
                    saturated = False
                    break
                for k in range(1, min(len(r1.lhs), len(r2.lhs))):
                    if not r1.lhs.endswith(r2.lhs[:k]):
                        continue
                    # overlap word: r1.lhs followed by the rest of r2.lhs
                    rest = r2.lhs[k:]
                    red1 = free_reduce_string(r1.rhs + rest)
                    pf1 = tuple(r1.proof)
                    prefix = r1.lhs[: len(r1.lhs) - k]
                    red2 = free_reduce_string(prefix + r2.rhs)
                    pf2 = _conjugate_proof(r2.proof, prefix)
                    out1 = system.reduce(red1)
                    out2 = system.reduce(red2)
                    if not (out1.complete and out2.complete):
                        saturated = False
                        continue
                    if out1.normal_form == out2.normal_form:
                        continue
                    left = _invert_proof(pf1 + out1.proof)
                    right = pf2 + out2.proof
                    if add_relation(out1.normal_form, out2.normal_form, left + right):
                        changed = True
            if budget <= 0:
                break

    system.saturated = saturated
    return system
