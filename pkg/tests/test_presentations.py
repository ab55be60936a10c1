import itertools
import json
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from digraph_groups.cosets import Order, coset_order
from digraph_groups.digraphs import Digraph, build_template, recognize_shape
from digraph_groups.presentations import (
    EliminationStep,
    Presentation,
    PresentationError,
    abelian_invariants,
    adjoin_power,
    derive_power_relator,
    eliminate_generator,
    free_unit_eliminate,
    instantiate,
    kill_generators,
    replay_trace,
    simplify_to_cyclic,
    smith_normal_form,
    subsume_powers,
)
from digraph_groups.words import Word, cyclic_reduce, exponent_profile, gen, parse_word, substitute


def relator_on(R_text, u, v):
    return substitute(cyclic_reduce(parse_word(R_text)), {"a": gen(u), "b": gen(v)})


class TestInstantiate:
    def test_cycle(self):
        P = instantiate(build_template("L(4)"), parse_word("a b^-2"))
        assert P.generators == ("x1", "x2", "x3", "x4")
        assert [str(r) for r in P.relators] == [
            "x1 x2^-2",
            "x2 x3^-2",
            "x3 x4^-2",
            "x4 x1^-2",
        ]

    def test_mennicke_pattern(self):
        P = instantiate(build_template("L(3)"), parse_word("a^-1 b a b^-2"))
        # the pattern is stored in its normalized rotation
        assert str(P.relators[0]) == "x1 x2^-2 x1^-1 x2"

    def test_single_arc(self):
        P = instantiate(Digraph.of([("1", "2")]), parse_word("a^2 b^-3"))
        assert str(P) == "< x1, x2 | x1^2 x2^-3 >"

    def test_degenerate_relator(self):
        with pytest.raises(PresentationError):
            instantiate(build_template("L(4)"), parse_word("a^2"))


class TestEliminate:
    def test_side_a_z6(self):
        # independent oracle: coset enumeration of the two-generator input
        P = Presentation(("x1", "x2"), (gen("x1", 3), relator_on("a b^-2", "x1", "x2")))
        assert coset_order(P, 1000) == Order(6)
        result, step = eliminate_generator(P, 1, 0, "a")
        assert result == Presentation(("x2",), (gen("x2", 6),))
        assert (step.gamma, step.p, step.q, step.r) == (3, 1, 0, 6)
        assert coset_order(result, 1000) == Order(6)

    def test_gamma_one_kills_outright(self):
        P = Presentation(("x1", "x2"), (gen("x1", 1), relator_on("a b^-2", "x1", "x2")))
        result, _ = eliminate_generator(P, 1, 0, "a")
        assert result == Presentation(("x2",), (gen("x2", 2),))

    def test_side_b_z10(self):
        P = Presentation(("x1", "x2"), (gen("x2", 5), relator_on("a^2 b^-3", "x1", "x2")))
        assert coset_order(P, 1000) == Order(10)
        result, step = eliminate_generator(P, 1, 0, "b")
        assert result == Presentation(("x1",), (gen("x1", 10),))
        assert step.p == 2
        assert coset_order(result, 1000) == Order(10)

    def test_gcd_violation(self):
        P = Presentation(("x1", "x2"), (gen("x1", 4), relator_on("a^2 b^-3", "x1", "x2")))
        with pytest.raises(PresentationError):
            eliminate_generator(P, 1, 0, "a")

    def test_bad_indices(self):
        P = Presentation(("x1", "x2"), (gen("x1", 3), relator_on("a b^-2", "x1", "x2")))
        with pytest.raises(PresentationError):
            eliminate_generator(P, 0, 0, "a")
        with pytest.raises(PresentationError):
            eliminate_generator(P, 1, 1, "a")


class TestKill:
    def test_alternating_kill(self):
        P = instantiate(build_template("L(4)"), parse_word("a^2 b^-3"))
        killed = kill_generators(P, {"x2", "x4"})
        assert killed.generators == ("x1", "x3")
        assert sorted(str(r) for r in killed.relators) == sorted(
            ["x1^2", "x3^-3", "x3^2", "x1^-3"]
        )

    def test_power_image(self):
        P = Presentation(("a", "b"), (parse_word("a b^-2"), gen("a", 6)))
        killed = kill_generators(P, {"b"})
        assert killed == Presentation(("a",), (gen("a", 1), gen("a", 6)))

    def test_kill_all(self):
        P = instantiate(build_template("L(4)"), parse_word("a b^-2"))
        assert kill_generators(P, set(P.generators)) == Presentation((), ())


class TestSNF:
    def test_displayed_matrix(self):
        assert smith_normal_form([[2, -3], [-10, 0]]).invariant_factors == (1, 30)

    def test_identity(self):
        assert smith_normal_form([[1, 0], [0, 1]]).invariant_factors == (1, 1)

    def test_torsion_and_free(self):
        assert smith_normal_form([[2, 0], [0, 0]]).invariant_factors == (2, 0)

    def test_abelian_invariants_cycle(self):
        P = instantiate(build_template("L(4)"), parse_word("a b^-2"))
        assert abelian_invariants(P) == (15,)

    def test_abelian_invariants_k_quotient_form(self):
        # <a, b | R(a,b), b^{beta^m gamma}> abelianizes to |alpha beta^m gamma|
        R = parse_word("(ab)^2 b")  # alpha = 2, beta = -3
        gamma = 2**4 - (-3) ** 4
        P = Presentation(
            ("a", "b"),
            (cyclic_reduce(R), gen("b", (-3) * gamma)),
        )
        assert abelian_invariants(P) == (abs(2 * (-3) * gamma),)

    def test_free_abelian(self):
        assert abelian_invariants(Presentation(("a", "b"), ())) == (0, 0)

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(
            st.lists(st.integers(-6, 6), min_size=3, max_size=3),
            min_size=1,
            max_size=4,
        )
    )
    def test_divisibility_chain(self, rows):
        factors = smith_normal_form(rows).invariant_factors
        for d1, d2 in zip(factors, factors[1:]):
            if d1 == 0:
                assert d2 == 0
            else:
                assert d2 % d1 == 0

    @settings(max_examples=40, deadline=None)
    @given(
        st.integers(2, 4).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(-5, 5), min_size=n, max_size=n),
                min_size=n,
                max_size=n,
            )
        )
    )
    def test_determinant_product(self, rows):
        # brute-force determinant oracle via permutation expansion
        n = len(rows)
        det = 0
        for perm in itertools.permutations(range(n)):
            sign = 1
            for i in range(n):
                for j in range(i + 1, n):
                    if perm[i] > perm[j]:
                        sign = -sign
            term = sign
            for i in range(n):
                term *= rows[i][perm[i]]
            det += term
        factors = smith_normal_form(rows).invariant_factors
        product = 1
        for d in factors:
            product *= d
        if det != 0:
            assert product == abs(det)
        else:
            assert product == 0


class TestDerivePower:
    def test_directed_cycle(self):
        P = instantiate(build_template("L(4)"), parse_word("a b^-2"))
        chain = [("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")]
        assert derive_power_relator(P, chain, 1, 2) == gen("x1", 1 - 16)

    def test_five_cycle(self):
        P = instantiate(build_template("L(5)"), parse_word("a^2 b^-3"))
        chain = [("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "1")]
        assert derive_power_relator(P, chain, 2, 3) == gen("x1", 32 - 243)

    def test_two_path_chain(self):
        P = instantiate(build_template("L(4,1)"), parse_word("(ab)^2 b"))
        chain = [("1", "2"), ("2", "3"), ("4", "3"), ("4", "1")]
        assert derive_power_relator(P, chain, 2, -3) == gen("x1", 4 - 9)

    def test_broken_chain(self):
        P = instantiate(build_template("L(4)"), parse_word("a b^-2"))
        with pytest.raises(PresentationError):
            derive_power_relator(P, [("1", "2"), ("3", "4")], 1, 2)


PIPELINE_CASES = [
    ("L(4)", "a b^-2", 15),
    ("L(5)", "a^2 b^-3", 211),
    ("L(4;out=1)", "a b^-2", 30),
    ("L(4;out=1)", "a^2 b^-3", 195),
    ("L(4;in=1)", "a^2 b^-3", 130),
    ("L(5,2)", "a b^-2", 4),
    ("L(4,1;out=1)", "a b^-2", 12),
    ("L(4,1;out=2)", "a b^-2", 24),
    ("L(4;in=1,out=1)", "a b^-2", 30),
    ("L(4;in=2,out=1)", "a b^-2", 30),
    ("L(5)", "a b", 2),
]


class TestSimplify:
    @pytest.mark.parametrize("desc,relator,expected", PIPELINE_CASES)
    def test_final_exponent(self, desc, relator, expected):
        g = build_template(desc)
        R = parse_word(relator)
        result = simplify_to_cyclic(
            instantiate(g, R), recognize_shape(g), exponent_profile(cyclic_reduce(R))
        )
        assert result.final_order == expected
        assert len(result.final.generators) == 1

    @pytest.mark.parametrize("desc,relator,expected", PIPELINE_CASES)
    def test_replay(self, desc, relator, expected):
        g = build_template(desc)
        R = parse_word(relator)
        P = instantiate(g, R)
        result = simplify_to_cyclic(P, recognize_shape(g), exponent_profile(cyclic_reduce(R)))
        assert replay_trace(P, result.trace) == result.final

    @pytest.mark.parametrize("desc,relator,expected", PIPELINE_CASES)
    def test_trace_json_round_trip(self, desc, relator, expected):
        g = build_template(desc)
        R = parse_word(relator)
        P = instantiate(g, R)
        result = simplify_to_cyclic(P, recognize_shape(g), exponent_profile(cyclic_reduce(R)))
        blob = json.dumps([s.to_json() for s in result.trace])
        steps = [EliminationStep.from_json(d) for d in json.loads(blob)]
        assert replay_trace(P, steps) == result.final

    def test_k_quotient_rejected(self):
        g = build_template("L(4,1)")
        R = parse_word("(ab)^2 b")
        with pytest.raises(PresentationError, match="K-quotient"):
            simplify_to_cyclic(
                instantiate(g, R), recognize_shape(g), exponent_profile(cyclic_reduce(R))
            )

    def test_coset_cross_check(self):
        for desc, relator, expected in PIPELINE_CASES:
            if expected > 700:
                continue
            g = build_template(desc)
            R = parse_word(relator)
            assert coset_order(instantiate(g, R), 100_000) == Order(expected), (desc, relator)


def random_two_letter_word(rng, t_max=2, exp_max=3):
    t = rng.randint(1, t_max)
    sylls = []
    for _ in range(t):
        sylls.append(("a", rng.choice([e for e in range(-exp_max, exp_max + 1) if e])))
        sylls.append(("b", rng.choice([e for e in range(-exp_max, exp_max + 1) if e])))
    return cyclic_reduce(Word(tuple(sylls)))


def test_elimination_preserves_abelianization_and_order():
    """Randomized Lemma-style eliminations keep the group's invariants.

    A quick smoke version; the acceptance suite runs the full 200-instance
    sweep with coset-order comparisons.
    """
    rng = random.Random(101)
    done = 0
    while done < 40:
        R = random_two_letter_word(rng)
        if R.generators() != {"a", "b"}:
            continue
        prof = exponent_profile(R)
        side = rng.choice(["a", "b"])
        key = prof.alpha if side == "a" else prof.beta
        if key == 0:
            continue
        gamma = rng.choice([e for e in range(-6, 7) if e and math.gcd(key, e) == 1])
        power_gen = "x1" if side == "a" else "x2"
        P = Presentation(
            ("x1", "x2", "x3"),
            (
                gen(power_gen, gamma),
                relator_on(str(R), "x1", "x2"),
                relator_on(str(R), "x2", "x3"),
            ),
        )
        result, _ = eliminate_generator(P, 1, 0, side)
        assert abelian_invariants(result) == abelian_invariants(P)
        # the elimination preserves the group when a^alpha = b^beta holds in
        # K; single-syllable-pair relators state that outright
        if prof.t == 1:
            before = coset_order(P, 800)
            if isinstance(before, Order):
                assert coset_order(result, 20_000) == before
        done += 1


def test_free_unit_eliminate_roundtrip():
    P = Presentation(
        ("x", "y"),
        (parse_word("a b^-2").__class__((("x", 1), ("y", -3))), gen("y", 12)),
    )
    result, step = free_unit_eliminate(P, 0, "x")
    assert result == Presentation(("y",), (gen("y", 12),))
    assert step.substitution == {"x": gen("y", 3)}


def test_adjoin_and_subsume():
    P = Presentation(("x",), (gen("x", 9),))
    P2, _ = adjoin_power(P, gen("x", 6))
    P3, step = subsume_powers(P2, "x")
    assert P3 == Presentation(("x",), (gen("x", 3),))
    assert step.r == 3
