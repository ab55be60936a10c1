"""Group presentations and the targeted Tietze moves used by the classifier.

A presentation holds an ordered generator list and freely reduced relator
words.  Beyond construction from a digraph and a relator pattern, the
module provides:

* power-relator elimination: given a two-generator relator W(x, y) whose
  one-relator group satisfies x^alpha = y^beta, and a power relator
  x^gamma with gcd(alpha, gamma) = 1, the generator x can be removed,
  replacing it by y^{p*beta} (p an inverse of alpha mod gamma) and
  adjoining y^{beta*gamma};
* unit-form rewriting: when |alpha| = 1 a pattern relator R(x, y) is
  interchangeable with x * y^{-alpha*beta}, after which x occurs exactly
  once and ordinary free-group Tietze elimination applies;
* derivation of power relators by walking equation chains around a cycle;
* killing generators (adjoining x as a relator) for surjection
  certificates;
* exact integer Smith Normal Form and abelian invariants.

Every transformation emits a serializable trace step so a pipeline can be
replayed and re-verified independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .digraphs import Arc, Digraph, vertex_key
from .words import Word, cyclic_reduce, gen, substitute


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        gens = set(self.generators)
        if len(gens) != len(self.generators):
            raise PresentationError("duplicate generator")
        for r in self.relators:
            extra = r.generators() - gens
            if extra:
                raise PresentationError(f"relator uses undeclared generator(s) {sorted(extra)}")

    def __str__(self) -> str:
        gens = ", ".join(self.generators)
        rels = ", ".join(str(r) for r in self.relators)
        return f"< {gens} | {rels} >"

    def exponent_matrix(self) -> list[list[int]]:
        """Exponent-sum relation matrix: rows = relators, columns = generators."""
        return [[r.exp_sum(g) for g in self.generators] for r in self.relators]

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "relators": [r.to_json() for r in self.relators],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        return cls(
            tuple(data["generators"]),
            tuple(Word.from_json(r) for r in data["relators"]),
        )


def generator_name(vertex: str) -> str:
    return f"x{vertex}"


def instantiate(g: Digraph, relator: Word) -> Presentation:
    """One generator per vertex, one instantiated relator per arc.

    The relator pattern is cyclically normalized first; generators and
    relators come out in natural vertex order so the result is
    deterministic.
    """
    r = cyclic_reduce(relator)
    if r.generators() != {"a", "b"}:
        raise PresentationError("relator must involve both a and b")
    gens = tuple(generator_name(v) for v in g.sorted_vertices())
    rels = []
    for u, v in g.sorted_arcs():
        rels.append(substitute(r, {"a": gen(generator_name(u)), "b": gen(generator_name(v))}))
    return Presentation(gens, tuple(rels))


# ---------------------------------------------------------------------------
# trace steps

@dataclass(frozen=True)
class EliminationStep:
    """One replayable Tietze move.

    kind 'eliminate' is the power-relator elimination: it records the
    removed generator, the power exponent gamma, the congruence solution
    p with p*alpha + q*gamma = 1 (side a; beta takes alpha's place on
    side b), the adjoined power size r = |beta*gamma| (side a) or
    |alpha*gamma| (side b), and the substitution word.  kind
    'rewrite-unit' swaps a pattern relator for its x * y^{-alpha*beta}
    form (valid when |alpha| = 1 and the pattern's one-relator group
    satisfies x^alpha = y^beta); kind 'unit' removes a generator that
    occurs literally once with exponent +-1; kind 'adjoin-power'
    introduces a derived power relator; kind 'subsume-powers' replaces
    same-generator powers by their gcd.
    """

    kind: str
    removed: Optional[str] = None
    side: Optional[str] = None
    gamma: Optional[int] = None
    p: Optional[int] = None
    q: Optional[int] = None
    r: Optional[int] = None
    substitution: Optional[dict[str, Word]] = field(default=None, compare=False)
    relator_index: Optional[int] = None
    power_index: Optional[int] = None
    adjoined: Optional[Word] = None
    pattern: Optional[Word] = None

    def to_json(self) -> dict:
        data: dict = {"kind": self.kind}
        for key in ("removed", "side", "gamma", "p", "q", "r", "relator_index", "power_index"):
            value = getattr(self, key)
            if value is not None:
                data[key] = value
        if self.substitution is not None:
            data["substitution"] = {g: w.to_json() for g, w in self.substitution.items()}
        if self.adjoined is not None:
            data["adjoined"] = self.adjoined.to_json()
        if self.pattern is not None:
            data["pattern"] = self.pattern.to_json()
        return data

    @classmethod
    def from_json(cls, data: dict) -> "EliminationStep":
        sub = data.get("substitution")
        return cls(
            kind=data["kind"],
            removed=data.get("removed"),
            side=data.get("side"),
            gamma=data.get("gamma"),
            p=data.get("p"),
            q=data.get("q"),
            r=data.get("r"),
            substitution={g: Word.from_json(w) for g, w in sub.items()} if sub else None,
            relator_index=data.get("relator_index"),
            power_index=data.get("power_index"),
            adjoined=Word.from_json(data["adjoined"]) if data.get("adjoined") else None,
            pattern=Word.from_json(data["pattern"]) if data.get("pattern") else None,
        )


def _power_relator_data(w: Word) -> Optional[tuple[str, int]]:
    if len(w.syllables) == 1:
        return w.syllables[0]
    return None


def _least_positive_inverse(a: int, modulus: int) -> int:
    m = abs(modulus)
    if m <= 1:
        return 1
    if math.gcd(a, m) != 1:
        raise PresentationError(f"{a} is not invertible modulo {m}")
    return pow(a % m, -1, m)


# ---------------------------------------------------------------------------
# Tietze moves

def eliminate_generator(
    P: Presentation,
    relator_index: int,
    power_index: int,
    side: str,
    p: Optional[int] = None,
) -> tuple[Presentation, EliminationStep]:
    """Remove a generator using a two-generator relator and a power relator.

    ``side`` says which role the power relator's generator plays in the
    two-generator relator W: 'a' means it is the one whose exponent sum
    alpha must satisfy gcd(alpha, gamma) = 1 (and then p*alpha = 1 mod
    gamma); 'b' is the mirror with beta = -(exponent sum).  The move
    preserves the group whenever x^alpha = y^beta holds in the
    one-relator group on W, which the caller must have established.

    ``p`` defaults to the least positive solution of the congruence;
    pipelines may pass a solution modulo a larger modulus so one inverse
    serves several steps.
    """
    if side not in ("a", "b"):
        raise PresentationError("side must be 'a' or 'b'")
    try:
        relator = P.relators[relator_index]
        power = P.relators[power_index]
    except IndexError as exc:
        raise PresentationError("relator index out of range") from exc
    if relator_index == power_index:
        raise PresentationError("relator and power indices must differ")
    pw = _power_relator_data(power)
    if pw is None:
        raise PresentationError(f"relator {power} is not a power relator")
    victim, gamma = pw
    rel_gens = sorted(relator.generators())
    if len(rel_gens) != 2 or victim not in rel_gens:
        raise PresentationError(
            f"relator {relator} is not a two-generator relator on {victim}"
        )
    other = rel_gens[0] if rel_gens[1] == victim else rel_gens[1]
    if gamma == 0:
        raise PresentationError("power relator must have nonzero exponent")

    if side == "a":
        alpha = relator.exp_sum(victim)
        beta = -relator.exp_sum(other)
        if math.gcd(alpha, gamma) != 1:
            raise PresentationError(f"gcd(alpha={alpha}, gamma={gamma}) != 1")
        if p is None:
            p = _least_positive_inverse(alpha, gamma)
        if (p * alpha - 1) % gamma != 0:
            raise PresentationError("p does not solve the congruence")
        replacement = gen(other, p * beta)
        adjoined = gen(other, beta * gamma)
        r = abs(beta * gamma)
        q = (1 - p * alpha) // gamma
    else:
        beta = -relator.exp_sum(victim)
        alpha = relator.exp_sum(other)
        if math.gcd(beta, gamma) != 1:
            raise PresentationError(f"gcd(beta={beta}, gamma={gamma}) != 1")
        if p is None:
            p = _least_positive_inverse(beta, gamma)
        if (p * beta - 1) % gamma != 0:
            raise PresentationError("p does not solve the congruence")
        replacement = gen(other, p * alpha)
        adjoined = gen(other, alpha * gamma)
        r = abs(alpha * gamma)
        q = (1 - p * beta) // gamma

    assignment = {g: gen(g) for g in P.generators}
    assignment[victim] = replacement
    new_rels = [adjoined]
    for i, rel in enumerate(P.relators):
        if i in (relator_index, power_index):
            continue
        new_rels.append(substitute(rel, assignment))
    new_gens = tuple(g for g in P.generators if g != victim)
    step = EliminationStep(
        kind="eliminate",
        removed=victim,
        side=side,
        gamma=gamma,
        p=p,
        q=q,
        r=r,
        substitution={victim: replacement},
        relator_index=relator_index,
        power_index=power_index,
        adjoined=adjoined,
    )
    return Presentation(new_gens, tuple(new_rels)), step


def rewrite_unit(
    P: Presentation,
    relator_index: int,
    pattern: Word,
    u_gen: str,
    v_gen: str,
) -> tuple[Presentation, EliminationStep]:
    """Swap an instantiated pattern relator for its unit form u * v^{-alpha*beta}.

    Demands |alpha| = 1 and that the relator equals the pattern instance
    on (u_gen, v_gen); soundness additionally needs a^alpha = b^beta in
    the pattern's one-relator group, which the caller has established.
    """
    relator = P.relators[relator_index]
    expected = substitute(pattern, {"a": gen(u_gen), "b": gen(v_gen)})
    if relator != expected:
        raise PresentationError("relator is not the stated pattern instance")
    alpha = pattern.exp_sum("a")
    beta = -pattern.exp_sum("b")
    if abs(alpha) != 1:
        raise PresentationError("unit rewriting needs |alpha| = 1")
    new_word = gen(u_gen) * gen(v_gen, -alpha * beta)
    rels = list(P.relators)
    rels[relator_index] = new_word
    step = EliminationStep(
        kind="rewrite-unit",
        relator_index=relator_index,
        adjoined=new_word,
        pattern=pattern,
        substitution={u_gen: gen(v_gen, alpha * beta)},
    )
    return Presentation(P.generators, tuple(rels)), step


def free_unit_eliminate(
    P: Presentation,
    relator_index: int,
    victim: str,
) -> tuple[Presentation, EliminationStep]:
    """Pure Tietze elimination of a generator occurring once with exponent +-1.

    The relator w = u * victim^e * v (e = +-1) is solved for the victim
    and removed; all other relators get the substitution.
    """
    relator = P.relators[relator_index]
    positions = [i for i, (g, _) in enumerate(relator.syllables) if g == victim]
    if len(positions) != 1 or abs(relator.syllables[positions[0]][1]) != 1:
        raise PresentationError(f"{victim} does not occur as a single unit syllable")
    k = positions[0]
    e = relator.syllables[k][1]
    u = Word(relator.syllables[:k])
    v = Word(relator.syllables[k + 1 :])
    solved = (u.inverse() * v.inverse()) ** e
    assignment = {g: gen(g) for g in P.generators}
    assignment[victim] = solved
    new_rels = []
    for i, rel in enumerate(P.relators):
        if i == relator_index:
            continue
        new_rels.append(substitute(rel, assignment))
    new_gens = tuple(g for g in P.generators if g != victim)
    step = EliminationStep(
        kind="unit",
        removed=victim,
        relator_index=relator_index,
        substitution={victim: solved},
    )
    return Presentation(new_gens, tuple(new_rels)), step


def adjoin_power(P: Presentation, power: Word) -> tuple[Presentation, EliminationStep]:
    """Adjoin a derived power relator at the front of the relator list."""
    if _power_relator_data(power) is None and not power.is_identity:
        raise PresentationError("adjoined relator must be a power of one generator")
    step = EliminationStep(kind="adjoin-power", adjoined=power)
    return Presentation(P.generators, (power,) + P.relators), step


def subsume_powers(P: Presentation, generator: str) -> tuple[Presentation, EliminationStep]:
    """Replace all power relators on ``generator`` by a single gcd power."""
    exps = []
    keep = []
    for rel in P.relators:
        pw = _power_relator_data(rel)
        if pw is not None and pw[0] == generator:
            exps.append(pw[1])
        elif rel.is_identity:
            continue
        else:
            keep.append(rel)
    if not exps:
        raise PresentationError(f"no power relators on {generator}")
    r = math.gcd(*exps)
    merged = gen(generator, r)
    step = EliminationStep(kind="subsume-powers", removed=generator, r=r, adjoined=merged)
    rels = ((merged,) if r else ()) + tuple(keep)
    return Presentation(P.generators, rels), step


def kill_generators(P: Presentation, victims: Iterable[str]) -> Presentation:
    """Quotient by setting every victim generator to the identity.

    Victims disappear from the generator list and from the relators;
    relators that become trivial are dropped.  The original group maps
    onto the result.
    """
    victims = set(victims)
    missing = victims - set(P.generators)
    if missing:
        raise PresentationError(f"cannot kill undeclared generator(s) {sorted(missing)}")
    assignment = {g: (Word() if g in victims else gen(g)) for g in P.generators}
    rels = []
    for rel in P.relators:
        image = substitute(rel, assignment)
        if not image.is_identity:
            rels.append(image)
    gens = tuple(g for g in P.generators if g not in victims)
    return Presentation(gens, tuple(rels))


# ---------------------------------------------------------------------------
# Smith Normal Form

@dataclass(frozen=True)
class SNFResult:
    """Invariant factors d1 | d2 | ... of an integer matrix (0 = infinite)."""

    invariant_factors: tuple[int, ...]


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SNFResult:
    """Exact integer SNF via elementary row/column reduction.

    Pivots on the least nonzero absolute value; arbitrary precision
    throughout (entries grow like beta^m * gamma in the intended use).
    """
    A = [list(map(int, row)) for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A):
        raise ValueError("ragged matrix")
    size = min(m, n)
    diag: list[int] = []
    top = 0
    while top < size:
        pivot = None
        for i in range(top, m):
            for j in range(top, n):
                if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i0, j0 = pivot
        A[top], A[i0] = A[i0], A[top]
        for row in A:
            row[top], row[j0] = row[j0], row[top]
        dirty = False
        for i in range(top + 1, m):
            if A[i][top]:
                q = A[i][top] // A[top][top]
                for j in range(top, n):
                    A[i][j] -= q * A[top][j]
                if A[i][top]:
                    dirty = True
        for j in range(top + 1, n):
            if A[top][j]:
                q = A[top][j] // A[top][top]
                for i in range(top, m):
                    A[i][j] -= q * A[i][top]
                if A[top][j]:
                    dirty = True
        if dirty:
            continue
        # the pivot must divide the whole trailing block in true SNF
        witness = None
        for i in range(top + 1, m):
            if any(A[i][j] % A[top][top] for j in range(top + 1, n)):
                witness = i
                break
        if witness is not None:
            for j in range(top, n):
                A[top][j] += A[witness][j]
            continue
        diag.append(abs(A[top][top]))
        top += 1
    diag += [0] * (size - len(diag))
    return SNFResult(tuple(diag))


def abelian_invariants(P: Presentation) -> tuple[int, ...]:
    """Invariant factors of the abelianization, factors of 1 dropped.

    Trailing zeros denote free summands; a free abelian group of rank k
    presented with no relators yields k zeros.
    """
    matrix = P.exponent_matrix()
    num_gens = len(P.generators)
    if not matrix:
        return tuple([0] * num_gens)
    snf = smith_normal_form(matrix)
    factors = [d for d in snf.invariant_factors if d != 1]
    free_rank = num_gens - len(snf.invariant_factors)
    return tuple(factors) + tuple([0] * free_rank)


# ---------------------------------------------------------------------------
# derived power relators

def derive_power_relator(
    P: Presentation,
    chain: Sequence[Arc],
    alpha: int,
    beta: int,
) -> Word:
    """Walk a closed arc chain, composing x^alpha = y^beta along the way.

    Each arc (u, v) contributes the equation x_u^alpha = x_v^beta; the
    minimal composition around the chain yields x_c^A = x_c^B at the
    start vertex c, hence the relator x_c^{A-B}.  For a directed n-cycle
    this is alpha^n - beta^n.
    """
    if not chain:
        raise PresentationError("empty chain")
    first, last = chain[0], chain[-1]
    shared = set(first) & set(last) if len(chain) > 1 else {first[0]}
    if not shared:
        raise PresentationError("chain does not close")
    start = sorted(shared, key=vertex_key)[0]
    gens = set(P.generators)
    for u, v in chain:
        if generator_name(u) not in gens or generator_name(v) not in gens:
            raise PresentationError(f"arc ({u}, {v}) has no generators in the presentation")
        if not any(r.generators() == {generator_name(u), generator_name(v)} for r in P.relators):
            raise PresentationError(f"arc ({u}, {v}) has no matching relator")
    cur = start
    A, B = 1, 1
    for u, v in chain:
        if cur == u:
            g = math.gcd(B, alpha)
            k, j = alpha // g, B // g
            if k < 0:
                k, j = -k, -j
            A, B = A * k, beta * j
            cur = v
        elif cur == v:
            g = math.gcd(B, beta)
            k, j = beta // g, B // g
            if k < 0:
                k, j = -k, -j
            A, B = A * k, alpha * j
            cur = u
        else:
            raise PresentationError(f"chain breaks at arc ({u}, {v})")
    if cur != start:
        raise PresentationError("chain does not return to its start")
    return gen(generator_name(start), A - B)


# ---------------------------------------------------------------------------
# simplification pipelines

@dataclass(frozen=True)
class SimplifyResult:
    trace: tuple[EliminationStep, ...]
    final: Presentation

    @property
    def final_order(self) -> int:
        """|exponent| of the single power relator of the final presentation."""
        assert len(self.final.generators) == 1 and len(self.final.relators) == 1
        pw = _power_relator_data(self.final.relators[0])
        assert pw is not None
        return abs(pw[1])


def _find_relator(P: Presentation, g1: str, g2: str) -> int:
    for i, rel in enumerate(P.relators):
        if rel.generators() == {g1, g2}:
            return i
    raise PresentationError(f"no relator on {{{g1}, {g2}}}")


def _find_pattern_relator(P: Presentation, pattern: Word, u: str, v: str) -> int:
    """Index of the pristine pattern instance on (u, v).

    Morphed relators can share the generator set with an arc relator, so
    pipelines locate arc relators by their exact word.
    """
    expected = substitute(pattern, {"a": gen(u), "b": gen(v)})
    for i, rel in enumerate(P.relators):
        if rel == expected:
            return i
    raise PresentationError(f"no pattern relator on ({u}, {v})")


def _find_power(P: Presentation, g: str) -> int:
    for i, rel in enumerate(P.relators):
        pw = _power_relator_data(rel)
        if pw is not None and pw[0] == g:
            return i
    raise PresentationError(f"no power relator on {g}")


def _find_unit_relator(P: Presentation, victim: str, other: str) -> int:
    """Index of a relator on {victim, other} with a single unit victim syllable."""
    for i, rel in enumerate(P.relators):
        if rel.generators() != {victim, other}:
            continue
        positions = [k for k, (g, _) in enumerate(rel.syllables) if g == victim]
        if len(positions) == 1 and abs(rel.syllables[positions[0]][1]) == 1:
            return i
    raise PresentationError(f"no unit relator for {victim} against {other}")


def simplify_to_cyclic(P: Presentation, shape, profile) -> SimplifyResult:
    """Collapse a shape-matched presentation to < x | x^N >.

    ``shape`` is the ShapeMatch of the instantiating digraph (with
    witness) and ``profile`` the relator's exponent profile; the caller
    must have established a^alpha = b^beta in the pattern's one-relator
    group and gcd(alpha, beta) = 1.  K-quotient shapes (L(n,1) and the
    one-arc-tailed junction shapes with |alpha|, |beta| >= 2) are
    rejected: there the reduction stops at a two-generator presentation.
    """
    alpha, beta = profile.alpha, profile.beta
    if math.gcd(alpha, beta) != 1:
        raise PresentationError("pipelines require gcd(alpha, beta) = 1")
    if not shape.matched or shape.witness is None:
        raise PresentationError("simplify_to_cyclic needs a matched shape with witness")
    cls = shape.cls
    if cls in ("L(n)", "L(n;out m)", "L(n;in m)"):
        return _pipeline_cycle(P, shape, profile)
    if cls in ("L(n,d)", "L(n,d;out m)", "L(n;in m,out l)"):
        if abs(alpha) != 1:
            if cls == "L(n,d)" and shape.d == 1:
                raise PresentationError("K-quotient shape: reduction stops at two generators")
            raise PresentationError(f"shape {cls} needs |alpha| = 1")
        return _pipeline_unit(P, shape, profile, alpha, beta)
    if cls in ("L(n,d;in m)", "L(n;out m,in l)"):
        raise PresentationError(
            "mirrored shape: reflect the instance first"
            if abs(alpha) == 1
            else "K-quotient shape: reduction stops at two generators"
        )
    raise PresentationError(f"no pipeline for shape {cls}")


def _pipeline_cycle(P: Presentation, shape, profile) -> SimplifyResult:
    """L(n) / L(n;out m) / L(n;in m): adjoin the cycle power, then eliminate."""
    alpha, beta = profile.alpha, profile.beta
    pattern = profile.canonical_word()
    n = shape.n
    wit = shape.witness
    cyc = [wit[str(i)] for i in range(1, n + 1)]
    chain = [(cyc[i], cyc[(i + 1) % n]) for i in range(n)]
    trace: list[EliminationStep] = []

    power = derive_power_relator(P, chain, alpha, beta)
    gamma = power.syllables[0][1] if power.syllables else 0
    if gamma == 0:
        raise PresentationError("cycle power vanishes; the group is infinite")
    cur, step = adjoin_power(P, power)
    trace.append(step)

    p = _least_positive_inverse(alpha, beta ** max(n - 2, 0) * gamma)
    for i in range(n - 1):
        u, v = generator_name(cyc[i]), generator_name(cyc[i + 1])
        rel_idx = _find_pattern_relator(cur, pattern, u, v)
        pow_idx = _find_power(cur, u)
        cur, step = eliminate_generator(cur, rel_idx, pow_idx, side="a", p=p)
        trace.append(step)
    last = generator_name(cyc[-1])
    cur, step = subsume_powers(cur, last)
    trace.append(step)
    assert step.r == abs(gamma), "cycle collapse must reproduce the derived power"

    if shape.cls == "L(n;out m)":
        m = shape.m
        heads = [cyc[-1]] + [wit[str(n + i)] for i in range(1, m + 1)]
        p2 = _least_positive_inverse(alpha, beta ** max(m - 1, 0) * gamma)
        for i in range(m):
            u, v = generator_name(heads[i]), generator_name(heads[i + 1])
            rel_idx = _find_pattern_relator(cur, pattern, u, v)
            pow_idx = _find_power(cur, u)
            cur, step = eliminate_generator(cur, rel_idx, pow_idx, side="a", p=p2)
            trace.append(step)
    elif shape.cls == "L(n;in m)":
        m = shape.m
        heads = [cyc[-1]] + [wit[str(n + i)] for i in range(1, m + 1)]
        p2 = _least_positive_inverse(beta, alpha ** max(m - 1, 0) * gamma)
        for i in range(m):
            u, v = generator_name(heads[i]), generator_name(heads[i + 1])
            rel_idx = _find_pattern_relator(cur, pattern, v, u)
            pow_idx = _find_power(cur, u)
            cur, step = eliminate_generator(cur, rel_idx, pow_idx, side="b", p=p2)
            trace.append(step)

    cur, step = subsume_powers(cur, cur.generators[0])
    trace.append(step)
    assert len(cur.generators) == 1 and len(cur.relators) == 1
    return SimplifyResult(tuple(trace), cur)


def _pipeline_unit(
    P: Presentation, shape, profile, alpha: int, beta: int
) -> SimplifyResult:
    """|alpha| = 1 shapes: rewrite relators to unit form, then collapse."""
    from .digraphs import build_template

    n, d = shape.n, shape.d
    wit = shape.witness
    pattern = profile.canonical_word()
    trace: list[EliminationStep] = []
    cur = P

    # phase 0: every relator becomes x_u * x_v^{-alpha*beta}
    template = build_template(shape)
    for U, V in sorted(template.arcs, key=lambda a: (vertex_key(a[0]), vertex_key(a[1]))):
        u, v = generator_name(wit[U]), generator_name(wit[V])
        idx = _find_pattern_relator(cur, pattern, u, v)
        cur, step = rewrite_unit(cur, idx, pattern, u, v)
        trace.append(step)

    def unit_step(victim_vertex: str, other_vertex: str) -> None:
        nonlocal cur
        victim = generator_name(victim_vertex)
        other = generator_name(other_vertex)
        idx = _find_unit_relator(cur, victim, other)
        cur, step = free_unit_eliminate(cur, idx, victim)
        trace.append(step)

    if shape.cls in ("L(n,d)", "L(n,d;out m)"):
        src, snk = wit[str(n)], wit[str(n - d)]
        long_path = [src] + [wit[str(i)] for i in range(1, n - d + 1)]
        short_path = [src] + [wit[str(i)] for i in range(n - 1, n - d, -1)] + [snk]
        for path in (long_path, short_path):
            for i in range(1, len(path) - 1):
                unit_step(path[i], path[i + 1])
        unit_step(src, snk)
        anchor = snk
        if shape.cls == "L(n,d;out m)":
            tail = [snk] + [wit[str(n + i)] for i in range(1, shape.m + 1)]
            for i in range(shape.m):
                unit_step(tail[i], tail[i + 1])
            anchor = tail[-1]
        cur, step = subsume_powers(cur, generator_name(anchor))
        trace.append(step)
    elif shape.cls == "L(n;in m,out l)":
        m, l = shape.m, shape.l
        cyc = [wit[str(i)] for i in range(1, n + 1)]
        for i in range(n - 1):
            unit_step(cyc[i], cyc[i + 1])
        anchor = cyc[-1]
        # the closing relator has collapsed to a power on the anchor;
        # each in-tail vertex ends up expressed in the anchor
        in_tail = [wit[str(n + i)] for i in range(1, m + 1)]
        for i in range(m):
            unit_step(in_tail[i], anchor)
        # junction relator now reads x_anchor^{(ab)^m} * z1^{-ab};
        # eliminate the anchor against its cycle power
        z_tail = [wit[str(n + m + j)] for j in range(1, l + 1)]
        anchor_gen = generator_name(anchor)
        z1 = generator_name(z_tail[0])
        rel_idx = _find_relator(cur, anchor_gen, z1)
        pow_idx = _find_power(cur, anchor_gen)
        cur, step = eliminate_generator(cur, rel_idx, pow_idx, side="a")
        trace.append(step)
        for j in range(l - 1):
            unit_step(z_tail[j], z_tail[j + 1])
        cur, step = subsume_powers(cur, generator_name(z_tail[-1]))
        trace.append(step)
    else:
        raise PresentationError(f"no unit pipeline for {shape.cls}")

    assert len(cur.generators) == 1 and len(cur.relators) == 1
    return SimplifyResult(tuple(trace), cur)


def replay_trace(P: Presentation, trace: Sequence[EliminationStep]) -> Presentation:
    """Re-apply a trace, re-validating each step; returns the final presentation."""
    cur = P
    for step in trace:
        if step.kind == "adjoin-power":
            cur, check = adjoin_power(cur, step.adjoined)
        elif step.kind == "subsume-powers":
            cur, check = subsume_powers(cur, step.removed)
            if step.r is not None and check.r != step.r:
                raise PresentationError("subsumed power disagrees with the trace")
        elif step.kind == "eliminate":
            cur, check = eliminate_generator(
                cur, step.relator_index, step.power_index, step.side, p=step.p
            )
            if check.gamma != step.gamma or check.r != step.r:
                raise PresentationError("elimination disagrees with the trace")
        elif step.kind == "rewrite-unit":
            rel = cur.relators[step.relator_index]
            gens = sorted(rel.generators())
            u = step.adjoined.syllables[0][0]
            if u not in gens:
                raise PresentationError("rewrite-unit step malformed")
            v = gens[0] if gens[1] == u else gens[1]
            cur, check = rewrite_unit(cur, step.relator_index, step.pattern, u, v)
            if check.adjoined != step.adjoined:
                raise PresentationError("unit rewrite disagrees with the trace")
        elif step.kind == "unit":
            cur, check = free_unit_eliminate(cur, step.relator_index, step.removed)
            if check.substitution != step.substitution:
                raise PresentationError("unit substitution disagrees with the trace")
        else:
            raise PresentationError(f"unknown trace step {step.kind!r}")
    return cur
