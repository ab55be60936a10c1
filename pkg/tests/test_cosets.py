import pytest

from digraph_groups.cosets import (
    CosetTable,
    Exceeded,
    Order,
    coset_order,
    enumerate_cosets,
    validate_table,
)
from digraph_groups.digraphs import build_template
from digraph_groups.presentations import Presentation, instantiate
from digraph_groups.words import Word, gen, parse_word


def P_of(desc, relator):
    return instantiate(build_template(desc), parse_word(relator))


KNOWN_ORDERS = [
    (Presentation(("a",), (gen("a", 5),)), 5),
    # S3 = <a, b | a^3, b^2, (ab)^2>
    (
        Presentation(
            ("a", "b"),
            (gen("a", 3), gen("b", 2), Word((("a", 1), ("b", 1), ("a", 1), ("b", 1)))),
        ),
        6,
    ),
    # Q8 = <a, b | a^4, a^2 b^-2, b^-1 a b a>
    (
        Presentation(
            ("a", "b"),
            (
                gen("a", 4),
                Word((("a", 2), ("b", -2))),
                Word((("b", -1), ("a", 1), ("b", 1), ("a", 1))),
            ),
        ),
        8,
    ),
    (Presentation((), ()), 1),
]


class TestKnownGroups:
    @pytest.mark.parametrize("P,expected", KNOWN_ORDERS)
    def test_order(self, P, expected):
        result, table = enumerate_cosets(P, 10_000)
        assert result == Order(expected)
        assert table is not None and table.num_cosets == expected
        assert validate_table(table, P)

    def test_free_group_never_closes(self):
        result, table = enumerate_cosets(Presentation(("a",), ()), 100)
        assert result == Exceeded(100) and table is None

    def test_trivialized_cycle(self):
        # x_i = x_{i+1}^{-1} around an odd cycle forces x^2 = 1
        assert coset_order(P_of("L(5)", "a b"), 100) == Order(2)


class TestCorpusOrders:
    @pytest.mark.parametrize(
        "desc,relator,expected",
        [
            ("L(4)", "a b^-2", 15),
            ("L(5)", "a b^-2", 31),
            ("L(4)", "a^2 b^-3", 65),
            ("L(5)", "a^2 b^-3", 211),
            ("L(4;out=1)", "a b^-2", 30),
            ("L(5,2)", "a b^-2", 4),
            ("L(4,1;out=1)", "a b^-2", 12),
            ("L(4;in=1,out=1)", "a b^-2", 30),
            ("L(4,1)", "(ab)^2 b", 30),
            ("L(4;out=1,in=1)", "(ab)^2 b", 390),
        ],
    )
    def test_order_and_table(self, desc, relator, expected):
        P = P_of(desc, relator)
        result, table = enumerate_cosets(P, 100_000)
        assert result == Order(expected)
        assert validate_table(table, P)


class TestDeterminismAndMonotonicity:
    def test_identical_runs(self):
        P = P_of("L(4)", "a^2 b^-3")
        r1, t1 = enumerate_cosets(P, 50_000)
        r2, t2 = enumerate_cosets(P, 50_000)
        assert r1 == r2 and t1.table == t2.table

    def test_monotone_limits(self):
        P = P_of("L(4)", "a^2 b^-3")
        r_small, t_small = enumerate_cosets(P, 1000)
        assert isinstance(r_small, Order)
        for limit in (2000, 10_000, 1_000_000):
            r, t = enumerate_cosets(P, limit)
            assert r == r_small and t.table == t_small.table

    def test_exceeded_below_requirement(self):
        P = P_of("L(5)", "a^2 b^-3")
        result, _ = enumerate_cosets(P, 50)
        assert result == Exceeded(50)


class TestValidate:
    def test_corrupted_entry(self):
        P = Presentation(("a",), (gen("a", 5),))
        _, table = enumerate_cosets(P, 100)
        rows = [row[:] for row in table.table]
        rows[0][0] = 3 if rows[0][0] != 3 else 2
        assert not validate_table(CosetTable(table.generators, rows), P)

    def test_wrong_presentation(self):
        P5 = Presentation(("a",), (gen("a", 5),))
        P6 = Presentation(("a",), (gen("a", 6),))
        _, table = enumerate_cosets(P5, 100)
        assert validate_table(table, P5)
        assert not validate_table(table, P6)

    def test_disconnected_table_rejected(self):
        # two fixed points of a trivial action are not a coset table
        P = Presentation(("a",), (gen("a", 1),))
        bogus = CosetTable(("a",), [[1, 1], [2, 2]])
        assert not validate_table(bogus, P)
