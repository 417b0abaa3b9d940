import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omflow.algebra import Poly
from omflow.coflows import (
    a_even_poly,
    a_eval,
    a_poly,
    b_poly,
    char_pair,
    coflow_histogram,
    digraph_a_eval,
    even_char_pair,
    lattice_count,
)
from omflow.errors import BudgetExceeded
from omflow.matroid import Digraph, OrientedMatroid

Q = Fraction
QYZ = ("q", "y", "z")
YZ = ("y", "z")


def coloop():
    return OrientedMatroid.from_digraph(Digraph.make(2, [(0, 1)], ["a"]))


def digon():
    return OrientedMatroid.from_digraph(Digraph.make(2, [(0, 1), (1, 0)], ["a", "b"]))


def triangle():
    return OrientedMatroid.from_digraph(
        Digraph.make(3, [(0, 1), (1, 2), (2, 0)], ["a", "b", "c"])
    )


def fig_four_arcs():
    return Digraph.make(3, [(0, 1), (1, 2), (0, 2), (2, 0)], ["a", "b", "c", "d"])


def u24():
    return OrientedMatroid.from_matrix(
        [[1, 0, 1, 1], [0, 1, 1, -1]], ["a", "b", "c", "d"], tu_mode="assume"
    )


def qyz(s_terms):
    return Poly(QYZ, {e: Q(c) for e, c in s_terms.items()})


class TestHistograms:
    def test_coloop_q5(self):
        h = coflow_histogram(coloop(), 5)
        assert h.as_dict() == {(0, 0, 0): 1, (1, 0, 0): 2, (0, 1, 0): 2}
        assert h.total == 5

    def test_digon_q5(self):
        h = coflow_histogram(digon(), 5)
        assert h.as_dict() == {(0, 0, 0): 1, (1, 1, 0): 4}

    def test_triangle_q3(self):
        p = a_eval(triangle(), 3)
        y, z = Poly.variable(YZ, "y"), Poly.variable(YZ, "z")
        assert p == 1 + 6 * y * z + y**3 + z**3

    def test_even_histogram_digon(self):
        h = coflow_histogram(digon(), 4)
        assert h.as_dict() == {(0, 0, 0): 1, (1, 1, 0): 2, (0, 0, 2): 1}

    def test_u24_only_zero_coflow(self):
        for q in (1, 3, 5, 7):
            h = coflow_histogram(u24(), q)
            assert h.as_dict() == {(0, 0, 0): 1}
            assert h.total == 1

    def test_q1_single_coflow(self):
        h = coflow_histogram(triangle(), 1)
        assert h.as_dict() == {(0, 0, 0): 1}

    def test_total_is_power_for_regular(self):
        for om in (coloop(), digon(), triangle()):
            for q in (1, 3, 4, 5):
                assert coflow_histogram(om, q).total == q**om.rank

    def test_jobs_agree(self):
        h1 = coflow_histogram(triangle(), 5, jobs=1)
        h2 = coflow_histogram(triangle(), 5, jobs=2)
        assert h1 == h2

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            coflow_histogram(triangle(), 5, budget=10)

    def test_json_shape(self):
        obj = coflow_histogram(digon(), 5).to_json_obj()
        assert obj == {"q": 5, "counts": [[0, 0, 1], [1, 1, 4]]}


class TestAPoly:
    def test_coloop(self):
        q, y, z = (Poly.variable(QYZ, v) for v in QYZ)
        assert a_poly(coloop()) == 1 + (q - 1) * Q(1, 2) * (y + z)

    def test_digon(self):
        q, y, z = (Poly.variable(QYZ, v) for v in QYZ)
        assert a_poly(digon()) == 1 + (q - 1) * y * z

    def test_empty(self):
        m = OrientedMatroid.from_matrix([[]], [])
        assert a_poly(m) == Poly.const(QYZ, 1)

    def test_loop(self):
        m = OrientedMatroid.from_digraph(Digraph.make(1, [(0, 0)], ["l"]))
        assert a_poly(m) == Poly.const(QYZ, 1)

    def test_golden_four_arc_fixture(self):
        om = OrientedMatroid.from_digraph(fig_four_arcs())
        q, y, z = (Poly.variable(QYZ, v) for v in QYZ)
        half = (q - 1) * Q(1, 2)
        golden = y * z * (1 + half * (y + z)) ** 2 + (1 - y * z) * (
            1 + (q - 1) * y * z
        )
        assert a_poly(om) == golden

    def test_golden_fixture_q3(self):
        om = OrientedMatroid.from_digraph(fig_four_arcs())
        y, z = Poly.variable(YZ, "y"), Poly.variable(YZ, "z")
        want = (
            1
            + 2 * y * z
            + 2 * y * z**2
            + 2 * y**2 * z
            + y * z**3
            + y**3 * z
        )
        assert a_eval(om, 3) == want
        assert a_poly(om).subs_scalar("q", 3) == want

    def test_degree_bounds(self):
        for om in (coloop(), digon(), triangle()):
            p = a_poly(om)
            assert p.degree("q") <= om.rank
            for (k, i, j) in p.terms:
                assert i + j <= om.n

    def test_symmetry_in_y_z(self):
        for om in (triangle(), digon()):
            p = a_poly(om)
            swapped = Poly(QYZ, {(k, j, i): c for (k, i, j), c in p.terms.items()})
            assert p == swapped


class TestCharPolys:
    def test_coloop(self):
        pair = char_pair(coloop())
        q = Poly.variable(("q",), "q")
        assert pair.strict == (q - 1) * Q(1, 2)
        assert pair.weak == (q + 1) * Q(1, 2)

    def test_independent_elements_multiply(self):
        path = OrientedMatroid.from_digraph(
            Digraph.make(4, [(0, 1), (1, 2), (2, 3)])
        )
        q = Poly.variable(("q",), "q")
        assert char_pair(path).strict == ((q - 1) * Q(1, 2)) ** 3

    def test_triangle_strict_value(self):
        pair = char_pair(triangle())
        assert pair.strict.eval_frac({"q": 5}) == 3

    def test_loop_kills_strict(self):
        m = OrientedMatroid.from_digraph(Digraph.make(1, [(0, 0)], ["l"]))
        pair = char_pair(m)
        assert pair.strict.is_zero()
        assert pair.weak == Poly.const(("q",), 1)

    def test_opposite_pair_kills_strict(self):
        pair = char_pair(digon())
        assert pair.strict.is_zero()

    def test_u24(self):
        pair = char_pair(u24())
        assert pair.strict.is_zero()
        assert pair.weak == Poly.const(("q",), 1)

    def test_strict_weak_vs_a_eval(self):
        for om in (triangle(), digon(), coloop()):
            pair = char_pair(om)
            for q in (3, 5, 7):
                stats = a_eval(om, q)
                assert pair.strict.eval_frac({"q": q}) == stats.terms.get(
                    (om.n, 0), Q(0)
                )
                weak_direct = sum(
                    (c for (g, l), c in stats.terms.items() if g == 0), Q(0)
                )
                assert pair.weak.eval_frac({"q": q}) == weak_direct


class TestEvenChar:
    def test_coloop(self):
        pair = even_char_pair(coloop())
        q = Poly.variable(("q",), "q")
        assert pair.strict == (q - 2) * Q(1, 2)
        assert pair.weak == (q + 2) * Q(1, 2)

    def test_triangle_weak_at_2(self):
        pair = even_char_pair(triangle())
        # q=2: closed box {0,1}: coflows with values in {0,1}: f=(i,j,-i-j)
        # candidates (0,0,0),(0,1,1),(1,0,1),(1,1,0) -> all valid mod 2
        assert pair.weak.eval_frac({"q": 2}) == 4


class TestLatticeCount:
    def test_single_coloop_q2_closed(self):
        # box {0, 1}, no circuits to satisfy
        assert lattice_count(coloop(), 2) == 2

    def test_open_box_q1(self):
        assert lattice_count(coloop(), 1, open_box=True) == 0
        empty = OrientedMatroid.from_matrix([], labels=[])
        assert lattice_count(empty, 1, open_box=True) == 1

    def test_odd_q_matches_one_sided_counts(self):
        for om in (triangle(), digon(), coloop()):
            pair = char_pair(om)
            for q in (1, 3, 5, 7):
                assert lattice_count(om, q) == pair.weak.eval_frac({"q": q})
                assert lattice_count(om, q, open_box=True) == pair.strict.eval_frac(
                    {"q": q}
                )

    def test_even_q_matches_even_boxes(self):
        for om in (triangle(), digon()):
            pair = even_char_pair(om)
            for q in (2, 4, 6):
                assert lattice_count(om, q) == pair.weak.eval_frac({"q": q})
                assert lattice_count(om, q, open_box=True) == pair.strict.eval_frac(
                    {"q": q}
                )

    def test_budget_guards_full_box(self):
        # enumeration is over the whole ground set, 5^3 > 100
        with pytest.raises(BudgetExceeded):
            lattice_count(triangle(), 9, budget=100)


class TestEvenAPoly:
    def test_coloop_even_constituent(self):
        pair = a_even_poly(coloop())
        vs = ("q", "y", "z", "w")
        q, y, z, w = (Poly.variable(vs, v) for v in vs)
        assert pair.even == 1 + (q - 2) * Q(1, 2) * (y + z) + w
        assert pair.even.subs_scalar("q", 2) == (1 + w).subs_scalar("q", 2)

    def test_digon_even_constituent(self):
        pair = a_even_poly(digon())
        vs = ("q", "y", "z", "w")
        q, y, z, w = (Poly.variable(vs, v) for v in vs)
        assert pair.even == 1 + (q - 2) * y * z + w**2

    def test_odd_part_matches_a_poly(self):
        assert a_even_poly(triangle()).odd == a_poly(triangle())


class TestDigraphRoutes:
    def test_single_arc(self):
        d = Digraph.make(2, [(0, 1)], ["a"])
        y, z = Poly.variable(YZ, "y"), Poly.variable(YZ, "z")
        assert digraph_a_eval(d, 3) == 1 + y + z

    def test_matches_coflow_route(self):
        rng = random.Random(7)
        for _ in range(8):
            nv = rng.randint(1, 4)
            arcs = [
                (rng.randrange(nv), rng.randrange(nv))
                for _ in range(rng.randint(0, 5))
            ]
            d = Digraph.make(nv, arcs)
            om = OrientedMatroid.from_digraph(d)
            for q in (1, 3, 5):
                assert digraph_a_eval(d, q) == a_eval(om, q)

    def test_b_poly_vertex(self):
        d = Digraph.make(1, [], [])
        assert b_poly(d) == Poly.variable(QYZ, "q")

    def test_b_poly_single_arc(self):
        d = Digraph.make(2, [(0, 1)], ["a"])
        q, y, z = (Poly.variable(QYZ, v) for v in QYZ)
        assert b_poly(d) == q + q * (q - 1) * Q(1, 2) * (y + z)

    def test_b_poly_self_loop_never_counts(self):
        d = Digraph.make(1, [(0, 0)], ["l"])
        assert b_poly(d) == Poly.variable(QYZ, "q")

    @given(st.integers(0, 300))
    @settings(max_examples=15, deadline=None)
    def test_b_poly_counts_all_colorings(self, seed):
        rng = random.Random(seed)
        nv = rng.randint(1, 3)
        arcs = [
            (rng.randrange(nv), rng.randrange(nv)) for _ in range(rng.randint(0, 4))
        ]
        p = b_poly(Digraph.make(nv, arcs))
        at_one = p.subs_scalar("y", 1).subs_scalar("z", 1)
        q = Poly.variable(("q",), "q")
        assert at_one == q**nv

    def test_b_poly_degree(self):
        d = Digraph.make(3, [(0, 1), (1, 2), (2, 0)])
        assert b_poly(d).degree("q") <= 3
