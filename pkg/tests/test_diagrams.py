import random

import pytest

from towerlab.diagrams import (
    BrauerDiagram,
    all_diagrams,
    catalan,
    compose,
    double_factorial,
    generator_diagram,
    identity_diagram,
    include_diagram,
    permutation_diagram,
    planar_diagrams,
)
from towerlab.errors import IndexOutOfRange, RankMismatch


def e(j, n):
    return generator_diagram("e", j, n)


def s(j, n):
    return generator_diagram("s", j, n)


class TestCompose:
    def test_e1_squared_gives_loop(self):
        d, r = compose(e(1, 2), e(1, 2))
        assert d == e(1, 2)
        assert r == 1

    def test_transposition_is_involution(self):
        d, r = compose(s(1, 2), s(1, 2))
        assert d == identity_diagram(2)
        assert r == 0

    def test_e1_e2_manual_stacking(self):
        # stack e2 over e1 at n=3: top pair {t2,t3}, through {t1,b3}, bottom {b1,b2}
        d, r = compose(e(1, 3), e(2, 3))
        assert d == BrauerDiagram.from_pairs(3, [(1, 2), (0, 5), (3, 4)])
        assert r == 0

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatch):
            compose(e(1, 2), e(1, 3))

    def test_associative_with_additive_loops_exhaustive(self):
        for n in (2, 3):
            diags = all_diagrams(n)
            for a in diags:
                for b in diags:
                    ab, r_ab = compose(a, b)
                    for c in diags:
                        abc1, r1 = compose(ab, c)
                        bc, r_bc = compose(b, c)
                        abc2, r2 = compose(a, bc)
                        assert abc1 == abc2
                        assert r_ab + r1 == r_bc + r2

    def test_associative_randomized(self):
        rng = random.Random(5)
        for n in (4, 5):
            diags = all_diagrams(n)
            for _ in range(200):
                a, b, c = (rng.choice(diags) for _ in range(3))
                ab, r_ab = compose(a, b)
                abc1, r1 = compose(ab, c)
                bc, r_bc = compose(b, c)
                abc2, r2 = compose(a, bc)
                assert abc1 == abc2 and r_ab + r1 == r_bc + r2

    def test_permutation_diagrams_compose_as_permutations(self):
        rng = random.Random(9)
        n = 4
        for _ in range(50):
            u = tuple(rng.sample(range(n), n))
            v = tuple(rng.sample(range(n), n))
            d, r = compose(permutation_diagram(u), permutation_diagram(v))
            assert r == 0
            # bottom i -> u(i) through first factor, then v on top of that
            assert d == permutation_diagram(tuple(v[u[i]] for i in range(n)))


class TestPlanarity:
    def test_generators(self):
        assert e(1, 2).is_planar()
        assert not s(1, 2).is_planar()

    def test_composite(self):
        d, _ = compose(e(1, 3), e(2, 3))
        assert d.is_planar()

    def test_planar_closed_under_composition(self):
        for n in (2, 3, 4):
            for a in planar_diagrams(n):
                for b in planar_diagrams(n):
                    d, _ = compose(a, b)
                    assert d.is_planar()

    def test_catalan_count(self):
        for n in range(1, 7):
            assert len(planar_diagrams(n)) == catalan(n)


class TestFlip:
    def test_fixes_e_and_id(self):
        assert e(1, 2).flip() == e(1, 2)
        assert identity_diagram(3).flip() == identity_diagram(3)
        assert s(1, 3).flip() == s(1, 3)

    def test_involution_and_antihomomorphism(self):
        rng = random.Random(3)
        diags = all_diagrams(3)
        for _ in range(100):
            a, b = rng.choice(diags), rng.choice(diags)
            assert a.flip().flip() == a
            ab, r1 = compose(a, b)
            ba_flip, r2 = compose(b.flip(), a.flip())
            assert ab.flip() == ba_flip
            assert r1 == r2


class TestGenerators:
    def test_pictures(self):
        assert e(1, 2) == BrauerDiagram.from_pairs(2, [(0, 1), (2, 3)])
        assert identity_diagram(3).pairs == ((0, 3), (1, 4), (2, 5))
        assert s(2, 3) == BrauerDiagram.from_pairs(3, [(0, 3), (1, 5), (2, 4)])

    def test_index_range(self):
        with pytest.raises(IndexOutOfRange):
            generator_diagram("e", 3, 3)
        with pytest.raises(IndexOutOfRange):
            generator_diagram("s", 0, 3)


class TestCounts:
    def test_double_factorial_dimension(self):
        for n in range(1, 6):
            assert len(all_diagrams(n)) == double_factorial(2 * n - 1)

    def test_include_preserves_multiplication(self):
        rng = random.Random(1)
        diags = all_diagrams(3)
        for _ in range(50):
            a, b = rng.choice(diags), rng.choice(diags)
            ab, r = compose(a, b)
            big, r2 = compose(include_diagram(a, 5), include_diagram(b, 5))
            assert big == include_diagram(ab, 5) and r == r2


class TestText:
    def test_text_form(self):
        assert e(1, 2).text() == "[(t1,t2),(b1,b2)]"
