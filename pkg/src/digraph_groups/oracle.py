"""Three-valued decision of "a^alpha = b^beta in K = <a, b | R>".

The question is the failure condition of Pride's Property W1: a
two-generator one-relator group fails W1 exactly when alpha != 0,
beta != 0 and a^alpha = b^beta hold (equivalently, the Magnus subgroups
<a> and <b> have exceptional intersection -- the oracle's Yes is exactly
that condition, no separate computation).  A full one-relator word
problem solver is out of scope; instead a layered stack of sound,
bounded strategies answers Yes, No or Unknown:

  0. alpha = 0 or beta = 0 .............. No (b resp. a has infinite order)
  1. single syllable pair ............... Yes (the relator states a^a1 = b^-b1)
  2. K proved infinite cyclic ........... Yes (the equation maps to s*alpha
                                          = u*beta, forced by the relator)
  3. bounded rewriting .................. Yes when a^alpha b^-beta reduces
                                          to the empty word
  4. bounded conjugate-product search ... Yes with an explicit product of
                                          conjugates of R
  5. finite permutation quotients ....... No when some image kills R but
                                          not a^alpha b^-beta
  6. Unknown with the exhausted bounds.

Every definitive answer carries evidence that re-verifies by free-group
or permutation arithmetic alone; Unknown is honest incompleteness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Optional

from .rewriting import (
    Proof,
    RewriteConfig,
    RuleSystem,
    complete,
    free_reduce_string,
    invert_string,
    verify_consequence,
    word_to_string,
)
from .words import Word, cyclic_reduce, exponent_profile, reflect_word

Perm = tuple[int, ...]


def canonical_relator_form(R: Word) -> Word:
    """The smaller of the relator and its reflection, in normalized rotation.

    Reflection (swap the letters, invert every letter) carries the power
    equality a^alpha = b^beta across the defining isomorphism, so the
    oracle's question has the same answer for both forms.  Feeding the
    canonical form to the bounded strategies makes their verdicts -- not
    just the true answers -- reflection-invariant.
    """
    direct = cyclic_reduce(R)
    mirrored = cyclic_reduce(reflect_word(R))
    return min(direct, mirrored, key=lambda w: tuple(w.syllables))


@dataclass(frozen=True)
class OracleConfig:
    max_rules: int = 5000
    max_word_len: int = 64
    pair_budget: int = 20_000
    reduce_steps: int = 10_000
    conj_factors: int = 3
    conj_len: int = 6
    conj_node_budget: int = 20_000
    max_degree: int = 5
    probe_witness_len: int = 5

    def rewrite_config(self) -> RewriteConfig:
        return RewriteConfig(
            max_rules=self.max_rules,
            max_word_len=self.max_word_len,
            pair_budget=self.pair_budget,
        )

    def to_json(self) -> dict:
        return {
            "max_rules": self.max_rules,
            "max_word_len": self.max_word_len,
            "conj_factors": self.conj_factors,
            "conj_len": self.conj_len,
            "max_degree": self.max_degree,
            "probe_witness_len": self.probe_witness_len,
        }


DEFAULT_ORACLE_CONFIG = OracleConfig()


# ---------------------------------------------------------------------------
# evidence

@dataclass(frozen=True)
class Witness:
    """Evidence for a Yes (or the degenerate No) that re-verifies offline.

    kinds: 'exponent-degenerate' (alpha or beta vanishes),
    'single-syllable-pair', 'cyclic-K' (a generator word w with proofs
    that a = w^s and b = w^u in K), 'rewrite-trace' and
    'conjugate-product' (a consequence proof for a^alpha b^-beta).
    """

    kind: str
    payload: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"kind": self.kind, **_jsonify(self.payload)}


@dataclass(frozen=True)
class QuotientCertificate:
    """A permutation quotient where the power equality fails."""

    degree: int
    image_a: Perm
    image_b: Perm

    def to_json(self) -> dict:
        return {
            "kind": "quotient",
            "degree": self.degree,
            "image_a": list(self.image_a),
            "image_b": list(self.image_b),
        }


@dataclass(frozen=True)
class BoundReport:
    bounds: dict

    def to_json(self) -> dict:
        return {"kind": "bound-report", "bounds": self.bounds}


@dataclass(frozen=True)
class OracleVerdict:
    answer: str  # Yes | No | Unknown
    evidence: object  # Witness | QuotientCertificate | BoundReport

    def to_json(self) -> dict:
        return {"answer": self.answer, "evidence": self.evidence.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "OracleVerdict":
        ev = data["evidence"]
        kind = ev.get("kind")
        if kind == "quotient":
            evidence: object = QuotientCertificate(
                ev["degree"], tuple(ev["image_a"]), tuple(ev["image_b"])
            )
        elif kind == "bound-report":
            evidence = BoundReport(ev["bounds"])
        else:
            payload = {k: v for k, v in ev.items() if k != "kind"}
            evidence = Witness(kind, _unjsonify(payload))
        return cls(data["answer"], evidence)


def _jsonify(payload: dict) -> dict:
    out = {}
    for k, v in payload.items():
        if isinstance(v, tuple) and all(
            isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], str) for x in v
        ):
            out[k] = [[c, e] for c, e in v]  # a consequence proof
        else:
            out[k] = v
    return out


def _unjsonify(payload: dict) -> dict:
    out = {}
    for k, v in payload.items():
        if k.startswith("proof") and isinstance(v, list):
            out[k] = tuple((str(c), int(e)) for c, e in v)
        else:
            out[k] = v
    return out


@dataclass(frozen=True)
class KProbeResult:
    """Outcome of the cyclic-structure probe for K.

    status 'InfiniteCyclic' means a word w was found with verified
    rewriting proofs that a = w^s and b = w^u in K, so K = <w> is
    infinite cyclic (it maps onto Z because (s, u) is primitive and the
    relator's image vanishes).  The probe never claims non-cyclic.
    """

    status: str  # InfiniteCyclic | Inconclusive
    s: Optional[int] = None
    u: Optional[int] = None
    witness_word: Optional[str] = None
    proof_a: Optional[Proof] = None
    proof_b: Optional[Proof] = None

    @property
    def is_cyclic(self) -> bool:
        return self.status == "InfiniteCyclic"


# ---------------------------------------------------------------------------
# permutation helpers

def _perm_mul(p: Perm, q: Perm) -> Perm:
    """Composition: apply q first, then p."""
    return tuple(p[q[i]] for i in range(len(p)))


def _perm_inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def _perm_pow(p: Perm, e: int) -> Perm:
    n = len(p)
    if e < 0:
        p = _perm_inv(p)
        e = -e
    result = tuple(range(n))
    base = p
    while e:
        if e & 1:
            result = _perm_mul(base, result)
        base = _perm_mul(base, base)
        e >>= 1
    return result


def _eval_word(w: Word, image_a: Perm, image_b: Perm) -> Perm:
    n = len(image_a)
    acc = tuple(range(n))
    for g, e in w.syllables:
        p = image_a if g == "a" else image_b
        acc = _perm_mul(acc, _perm_pow(p, e))
    return acc


# ---------------------------------------------------------------------------
# probe

def _primitive_pair(alpha: int, beta: int) -> Optional[tuple[int, int]]:
    """Primitive (s, u) with s*alpha = u*beta, oriented s > 0 (or u > 0)."""
    if alpha == 0 and beta == 0:
        return None
    g = math.gcd(alpha, beta)
    s, u = beta // g, alpha // g
    if s < 0 or (s == 0 and u < 0):
        s, u = -s, -u
    return s, u


def _reduced_strings(max_len: int):
    """All freely reduced letter strings of length 1..max_len, shortlex order."""
    frontier = [""]
    for _ in range(max_len):
        nxt = []
        for s in frontier:
            for c in "abAB":
                if s and s[-1] == invert_string(c):
                    continue
                nxt.append(s + c)
        yield from nxt
        frontier = nxt


def probe_k_structure(
    R: Word,
    config: OracleConfig = DEFAULT_ORACLE_CONFIG,
    _system: Optional[RuleSystem] = None,
) -> KProbeResult:
    """Try to prove K = <a, b | R> infinite cyclic.

    Searches short witness words w and asks the bounded rewriting system
    to prove a = w^s and b = w^u, where (s, u) is the primitive solution
    of s*alpha = u*beta.  Both facts together put a and b in <w>, and
    the abelianized relator forces the Z-images, so K is infinite cyclic
    with a -> x^s, b -> x^u.  Returns Inconclusive when nothing is found
    within bounds; never claims non-cyclic.
    """
    if _system is not None:
        return _probe_impl(cyclic_reduce(R), config, _system)
    return _probe_cached(cyclic_reduce(R), config)


@lru_cache(maxsize=4096)
def _probe_cached(R: Word, config: OracleConfig) -> KProbeResult:
    return _probe_impl(R, config, None)


def _probe_impl(
    R: Word, config: OracleConfig, _system: Optional[RuleSystem]
) -> KProbeResult:
    prof = exponent_profile(R)
    alpha, beta = prof.alpha, prof.beta
    if math.gcd(alpha, beta) != 1:
        # the abelianization has a torsion summand (or is Z^2); K is not Z
        return KProbeResult("Inconclusive")
    pair = _primitive_pair(alpha, beta)
    if pair is None:
        return KProbeResult("Inconclusive")
    s, u = pair
    R_str = word_to_string(R)
    system = _system if _system is not None else complete(R_str, config.rewrite_config())

    def abelian_ok(w: str) -> bool:
        wa = w.count("a") - w.count("A")
        wb = w.count("b") - w.count("B")
        # need (1, 0) = s*(wa, wb) and (0, 1) = u*(wa, wb) modulo the
        # relator line (alpha, -beta) in Z^2
        for target, mult in (((1, 0), s), ((0, 1), u)):
            dx = target[0] - mult * wa
            dy = target[1] - mult * wb
            if alpha == 0 and beta == 0:
                if (dx, dy) != (0, 0):
                    return False
            elif alpha == 0:
                if dx != 0 or dy % beta:
                    return False
            elif beta == 0:
                if dy != 0 or dx % alpha:
                    return False
            else:
                if (dx * (-beta) - dy * alpha) != 0 or dx % alpha:
                    return False
        return True

    for w in _reduced_strings(config.probe_witness_len):
        if not abelian_ok(w):
            continue
        target_a = free_reduce_string("a" + (invert_string(w) * s if s >= 0 else w * (-s)))
        proof_a = system.prove_trivial(target_a, max_steps=config.reduce_steps)
        if proof_a is None:
            continue
        target_b = free_reduce_string("b" + (invert_string(w) * u if u >= 0 else w * (-u)))
        proof_b = system.prove_trivial(target_b, max_steps=config.reduce_steps)
        if proof_b is None:
            continue
        return KProbeResult("InfiniteCyclic", s, u, w, proof_a, proof_b)
    return KProbeResult("Inconclusive")


# ---------------------------------------------------------------------------
# conjugate-product search

def _cyclic_decompose(target: str, relator: str) -> Optional[tuple[str, int]]:
    """Write target as c * relator^e * c^-1 in the free group, if possible."""
    t = free_reduce_string(target)
    # strip conjugating prefix: t = pre * core * pre^-1 with core cyclically reduced
    pre = ""
    while len(t) >= 2 and t[0] == invert_string(t[-1]):
        pre += t[0]
        t = t[1:-1]
    for base, sign in ((relator, 1), (invert_string(relator), -1)):
        if len(t) != len(base):
            continue
        for k in range(len(base)):
            if base[k:] + base[:k] == t:
                conj = free_reduce_string(pre + invert_string(base[:k]))
                return conj, sign
    return None


def _conjugate_product_search(
    target: str, relator: str, config: OracleConfig
) -> Optional[Proof]:
    """Bounded search for target = product of <= conj_factors conjugates."""
    budget = [config.conj_node_budget]
    conjugators = [""] + list(_reduced_strings(config.conj_len))
    max_len = len(relator) + 2 * config.conj_len

    def search(t: str, k: int) -> Optional[list[tuple[str, int]]]:
        if budget[0] <= 0:
            return None
        budget[0] -= 1
        if t == "" and k >= 0:
            return []
        one = _cyclic_decompose(t, relator)
        if one is not None:
            return [one]
        if k <= 1:
            return None
        for conj in conjugators:
            for sign in (1, -1):
                base = relator if sign == 1 else invert_string(relator)
                factor = free_reduce_string(conj + base + invert_string(conj))
                rest = free_reduce_string(invert_string(factor) + t)
                if len(rest) > (k - 1) * max_len:
                    continue
                found = search(rest, k - 1)
                if found is not None:
                    return [(conj, sign)] + found
        return None

    result = search(free_reduce_string(target), config.conj_factors)
    return tuple(result) if result is not None else None


# ---------------------------------------------------------------------------
# finite quotients

def _quotient_search(
    R: Word, target: Word, config: OracleConfig
) -> Optional[QuotientCertificate]:
    for degree in range(2, config.max_degree + 1):
        identity = tuple(range(degree))
        perms = list(permutations(range(degree)))
        for image_a in perms:
            for image_b in perms:
                if _eval_word(R, image_a, image_b) != identity:
                    continue
                if _eval_word(target, image_a, image_b) != identity:
                    return QuotientCertificate(degree, image_a, image_b)
    return None


# ---------------------------------------------------------------------------
# the oracle

def check_power_equality(
    R: Word, config: OracleConfig = DEFAULT_ORACLE_CONFIG
) -> OracleVerdict:
    """Decide whether alpha != 0, beta != 0 and a^alpha = b^beta in K.

    Layered sound strategies, first definitive answer wins; Unknown only
    when every bounded strategy is exhausted.  Results are memoized per
    (relator, bounds); the oracle is a pure function so this is safe.
    """
    return _check_power_equality_cached(cyclic_reduce(R), config)


@lru_cache(maxsize=4096)
def _check_power_equality_cached(R: Word, config: OracleConfig) -> OracleVerdict:
    prof = exponent_profile(R)
    alpha, beta = prof.alpha, prof.beta

    if alpha == 0 or beta == 0:
        return OracleVerdict(
            "No", Witness("exponent-degenerate", {"alpha": alpha, "beta": beta})
        )

    if prof.t == 1:
        return OracleVerdict(
            "Yes",
            Witness(
                "single-syllable-pair",
                {"alpha1": prof.alpha_list[0], "beta1": prof.beta_list[0]},
            ),
        )

    system = complete(word_to_string(R), config.rewrite_config())
    probe = probe_k_structure(R, config, _system=system)
    if probe.is_cyclic:
        # the relator's Z-image already forces s*alpha = u*beta
        assert probe.s * alpha == probe.u * beta
        return OracleVerdict(
            "Yes",
            Witness(
                "cyclic-K",
                {
                    "s": probe.s,
                    "u": probe.u,
                    "witness_word": probe.witness_word,
                    "proof_a": probe.proof_a,
                    "proof_b": probe.proof_b,
                },
            ),
        )

    target = Word((("a", alpha), ("b", -beta)))
    target_str = word_to_string(target)
    proof = system.prove_trivial(target_str, max_steps=config.reduce_steps)
    if proof is not None:
        return OracleVerdict("Yes", Witness("rewrite-trace", {"proof": proof}))

    proof = _conjugate_product_search(target_str, word_to_string(R), config)
    if proof is not None:
        return OracleVerdict("Yes", Witness("conjugate-product", {"proof": proof}))

    cert = _quotient_search(R, target, config)
    if cert is not None:
        return OracleVerdict("No", cert)

    return OracleVerdict("Unknown", BoundReport(config.to_json()))


def verify_evidence(R: Word, verdict: OracleVerdict) -> bool:
    """Re-check a verdict's evidence by independent arithmetic.

    Witnesses re-verify by free-group reduction, quotient certificates
    by permutation arithmetic; Unknown verifies vacuously as False.
    """
    R = cyclic_reduce(R)
    try:
        prof = exponent_profile(R)
    except ValueError:
        return False
    alpha, beta = prof.alpha, prof.beta
    R_str = word_to_string(R)
    ev = verdict.evidence

    if verdict.answer == "Unknown":
        return False

    if isinstance(ev, QuotientCertificate):
        if verdict.answer != "No":
            return False
        n = ev.degree
        if sorted(ev.image_a) != list(range(n)) or sorted(ev.image_b) != list(range(n)):
            return False
        identity = tuple(range(n))
        if _eval_word(R, ev.image_a, ev.image_b) != identity:
            return False
        target = Word((("a", alpha), ("b", -beta)))
        return _eval_word(target, ev.image_a, ev.image_b) != identity

    if not isinstance(ev, Witness):
        return False

    if ev.kind == "exponent-degenerate":
        return verdict.answer == "No" and (alpha == 0 or beta == 0)

    if verdict.answer != "Yes":
        return False

    if ev.kind == "single-syllable-pair":
        return prof.t == 1

    if ev.kind == "cyclic-K":
        s, u = ev.payload["s"], ev.payload["u"]
        w = ev.payload["witness_word"]
        if s * alpha != u * beta or math.gcd(s, u) != 1:
            return False
        target_a = free_reduce_string("a" + (invert_string(w) * s if s >= 0 else w * (-s)))
        target_b = free_reduce_string("b" + (invert_string(w) * u if u >= 0 else w * (-u)))
        return verify_consequence(R_str, target_a, ev.payload["proof_a"]) and verify_consequence(
            R_str, target_b, ev.payload["proof_b"]
        )

    if ev.kind in ("rewrite-trace", "conjugate-product"):
        target = word_to_string(Word((("a", alpha), ("b", -beta))))
        return verify_consequence(R_str, target, ev.payload["proof"])

    return False
