import random

import pytest
from hypothesis import given, settings, strategies as st

from digraph_groups.digraphs import (
    DegreeCensus,
    Digraph,
    DigraphError,
    analyze,
    build_template,
    census,
    parse_digraph,
    parse_template,
    prune,
    recognize_shape,
    reflect_digraph,
)

ALL_DESCRIPTORS = [
    "L(3)",
    "L(4)",
    "L(7)",
    "L(4,1)",
    "L(4,2)",
    "L(5,2)",
    "L(7,3)",
    "L(4;out=1)",
    "L(5;out=3)",
    "L(4;in=2)",
    "L(4;out=1,in=1)",
    "L(4;out=2,in=3)",
    "L(4;in=1,out=2)",
    "L(5;in=2,out=1)",
    "L(4,1;out=1)",
    "L(5,2;out=2)",
    "L(4,1;in=1)",
    "L(6,3;in=2)",
]


class TestParse:
    def test_three_cycle(self):
        g = parse_digraph("1 2\n2 3\n3 1")
        assert g.arcs == frozenset({("1", "2"), ("2", "3"), ("3", "1")})

    def test_loop_rejected(self):
        with pytest.raises(DigraphError):
            parse_digraph("1 1")

    def test_duplicate_arc_rejected(self):
        with pytest.raises(DigraphError):
            parse_digraph("1 2\n1 2")

    def test_isolated_vertex_and_comments(self):
        g = parse_digraph("# demo\n1 2\nvertex 9\n")
        assert "9" in g.vertices and g.in_degree("9") + g.out_degree("9") == 0


class TestTemplates:
    def test_directed_cycle(self):
        g = build_template("L(4)")
        assert g.arcs == frozenset({("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")})

    def test_source_sink_adjacent(self):
        g = build_template("L(4,1)")
        assert g.arcs == frozenset({("1", "2"), ("2", "3"), ("4", "3"), ("4", "1")})
        assert g.is_source("4") and g.is_sink("3")

    def test_junction_source(self):
        g = build_template("L(4;in=1,out=2)")
        assert g.arcs == frozenset(
            {("1", "2"), ("2", "3"), ("3", "4"), ("4", "1"), ("5", "4"), ("5", "6"), ("6", "7")}
        )

    @pytest.mark.parametrize("bad", ["L(2)", "L(4,3)", "L(4;out=0)", "L(x)", "L(4,1;out=1,in=1)"])
    def test_bad_descriptors(self, bad):
        with pytest.raises(DigraphError):
            build_template(bad)


class TestAnalyze:
    def test_cycle5(self):
        report = analyze(build_template("L(5)"))
        assert report.girth == 5
        assert len(report.components) == 1
        assert report.census == DegreeCensus(0, 0, 0, 0)
        assert report.balanced

    def test_out_tail(self):
        report = analyze(build_template("L(4;out=2)"))
        assert report.girth == 4 and report.balanced
        assert report.census.tau == report.census.tau1 == 1
        assert report.census.sigma == 0

    def test_two_components(self):
        g = parse_digraph("1 2\n2 3\n3 4\n4 1\n5 6\n6 7\n7 8\n8 5")
        report = analyze(g)
        assert report.girth == 4
        assert len(report.components) == 2
        assert all(report.component_balanced)

    def test_antiparallel_pair_is_girth_two(self):
        g = parse_digraph("1 2\n2 1")
        assert analyze(g).girth == 2

    def test_forest_has_no_girth(self):
        assert analyze(parse_digraph("1 2\n2 3")).girth is None


class TestPrune:
    def test_source_chain_collapses(self):
        result = prune(build_template("L(4;in=2)"), "source-leaves")
        assert result.result == build_template("L(4)")
        assert len(result.removed) == 2

    def test_fixed_point(self):
        result = prune(build_template("L(4)"), "source-leaves")
        assert result.result == build_template("L(4)") and result.removed == ()

    def test_sink_leaf_untouched_by_source_prune(self):
        g = build_template("L(4;out=3)")
        assert prune(g, "source-leaves").result == g

    def test_replay_and_count(self):
        g = build_template("L(5;in=2,out=1)")
        result = prune(g, "both")
        cur = g
        for vtx, arc in result.removed:
            assert arc in cur.arcs and vtx in cur.vertices
            cur = Digraph(cur.vertices - {vtx}, cur.arcs - {arc})
        assert cur == result.result

    def test_confluence_random_orders(self):
        # removing admissible leaves in any order reaches the same fixed point
        rng = random.Random(7)
        g = build_template("L(5;in=2,out=1)")
        expected = prune(g, "both").result

        def is_leaf(h, v):
            return (h.in_degree(v) == 0 and h.out_degree(v) == 1) or (
                h.out_degree(v) == 0 and h.in_degree(v) == 1
            )

        for _ in range(20):
            cur = g
            while True:
                leaves = [v for v in cur.sorted_vertices() if is_leaf(cur, v)]
                if not leaves:
                    break
                v = rng.choice(leaves)
                arc = next(a for a in cur.arcs if v in a)
                cur = Digraph(cur.vertices - {v}, cur.arcs - {arc})
            assert cur == expected

    def test_each_step_preserves_balance_difference(self):
        g = build_template("L(6,3;in=2)")
        result = prune(g, "source-leaves")
        assert len(g.vertices) - len(g.arcs) == len(result.result.vertices) - len(
            result.result.arcs
        )


class TestRecognize:
    @pytest.mark.parametrize("desc", ALL_DESCRIPTORS)
    def test_round_trip(self, desc):
        g = build_template(desc)
        shape = recognize_shape(g)
        assert shape.matched
        assert shape.descriptor() == desc
        # the witness is an isomorphism
        template = build_template(shape)
        mapped = {(shape.witness[u], shape.witness[v]) for u, v in template.arcs}
        assert mapped == set(g.arcs)

    @pytest.mark.parametrize("desc", ALL_DESCRIPTORS)
    def test_reflection_swaps_arrows(self, desc):
        g = build_template(desc)
        shape = recognize_shape(g)
        reflected = recognize_shape(reflect_digraph(g))
        assert reflected.cls == shape.arrow_swapped().cls
        assert (reflected.n, reflected.d, reflected.m, reflected.l) == (
            shape.n,
            shape.d,
            shape.m,
            shape.l,
        )

    def test_relabeled_instance(self):
        g = parse_digraph("x y\ny z\nz w\nw x\nw t\nt s")
        shape = recognize_shape(g)
        assert shape.cls == "L(n;out m)" and (shape.n, shape.m) == (4, 2)

    def test_no_match_two_tails(self):
        g = parse_digraph("1 2\n2 3\n3 4\n4 1\n1 5\n3 6")
        assert not recognize_shape(g).matched

    def test_precondition_errors(self):
        with pytest.raises(DigraphError):
            recognize_shape(parse_digraph("1 2\n2 3\n3 4\n4 1\n5 6\n6 7\n7 8\n8 5"))
        with pytest.raises(DigraphError):
            recognize_shape(parse_digraph("1 2\n2 3"))

    def test_reflect_involution(self):
        g = build_template("L(4;out=2,in=1)")
        assert reflect_digraph(reflect_digraph(g)) == g


# -- randomized structure properties ---------------------------------------

def random_unicyclic(rng, n_cycle, extra, flip_prob):
    """Random weakly connected balanced digraph: a cycle plus tree arcs."""
    arcs = []
    for i in range(1, n_cycle + 1):
        u, v = str(i), str(i % n_cycle + 1)
        arcs.append((v, u) if rng.random() < flip_prob else (u, v))
    next_label = n_cycle + 1
    attached = [str(i) for i in range(1, n_cycle + 1)]
    for _ in range(extra):
        host = rng.choice(attached)
        new = str(next_label)
        next_label += 1
        attached.append(new)
        arcs.append((new, host) if rng.random() < 0.5 else (host, new))
    return Digraph.of(arcs)


def test_unicyclic_girth_equals_cycle_length():
    # brute-force oracle: the girth of a connected digraph with |V| = |A|
    # equals the length of the one cycle that leaf-stripping exposes
    rng = random.Random(11)
    for _ in range(60):
        g = random_unicyclic(rng, rng.randint(3, 7), rng.randint(0, 5), 0.4)
        if analyze(g).girth == 2:
            continue  # antiparallel pair; not unicyclic in the simple sense
        core = set(g.vertices)
        changed = True
        while changed:
            changed = False
            for v in list(core):
                deg = sum(1 for a in g.arcs if v in a and all(x in core for x in a))
                if deg <= 1:
                    core.discard(v)
                    changed = True
        assert analyze(g).girth == len(core)


def test_exhaustive_recognition_under_m2_census():
    """Balanced connected digraphs with at most one source, one sink, and an
    arc between every source and sink always match a template class."""
    rng = random.Random(23)
    accepted = 0
    attempts = 0
    while accepted < 500 and attempts < 60_000:
        attempts += 1
        g = random_unicyclic(rng, rng.randint(3, 7), rng.randint(0, 4), 0.25)
        report = analyze(g)
        if report.girth == 2:
            continue
        cen = report.census
        if cen.sigma > 1 or cen.tau > 1:
            continue
        sources = [v for v in g.vertices if g.is_source(v)]
        sinks = [v for v in g.vertices if g.is_sink(v)]
        if sources and sinks:
            u, w = sources[0], sinks[0]
            if (u, w) not in g.arcs and (w, u) not in g.arcs:
                continue
        accepted += 1
        assert recognize_shape(g).matched, g
    assert accepted == 500, f"only generated {accepted} instances"


def test_exhaustive_recognition_no_source_leaves_one_sink():
    """No source leaves and at most one sink always matches one of the
    source-pruned classes."""
    rng = random.Random(29)
    allowed = {"L(n)", "L(n;out m)", "L(n,d)", "L(n,d;out m)", "L(n;in m,out l)"}
    accepted = 0
    attempts = 0
    while accepted < 500 and attempts < 120_000:
        attempts += 1
        g = random_unicyclic(rng, rng.randint(3, 7), rng.randint(0, 4), 0.2)
        report = analyze(g)
        if report.girth == 2:
            continue
        cen = report.census
        if cen.sigma1 > 0 or cen.tau > 1:
            continue
        accepted += 1
        shape = recognize_shape(g)
        assert shape.matched and shape.cls in allowed, (g, shape)
    assert accepted == 500, f"only generated {accepted} instances"
