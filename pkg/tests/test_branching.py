from fractions import Fraction
from math import factorial

import pytest

from towerlab.branching import (
    TLVertex,
    Vertex,
    beta_scalar,
    compare,
    content_sum,
    edges,
    kappa_values_at,
    lattice,
    lattice_kind_for,
    is_multiplicative,
    partitions_of,
    path_to_tableau,
    paths,
    scalars,
    step_scalar,
    superstandard_tableau,
)
from towerlab.diagrams import catalan, double_factorial
from towerlab.errors import InvalidVertex
from towerlab.ratfunc import brauer_context, hecke_context, sym_context, bmw_context, tl_context


class TestEdges:
    def test_reflection_edges_add_or_remove_one_box(self):
        got = edges("reflection", Vertex((1,), 1))
        assert set(got) == {Vertex((2,), 2), Vertex((1, 1), 2), Vertex((), 2)}

    def test_young_origin(self):
        assert edges("young", Vertex((), 0)) == [Vertex((1,), 1)]

    def test_reflection_nothing_to_remove(self):
        assert edges("reflection", Vertex((), 2)) == [Vertex((1,), 3)]

    def test_invalid_vertex(self):
        with pytest.raises(InvalidVertex):
            edges("young", Vertex((1,), 2))
        with pytest.raises(InvalidVertex):
            edges("reflection", Vertex((1,), 2))


class TestPaths:
    def test_three_updown_tableaux_to_single_box_at_level_3(self):
        assert len(paths("reflection", Vertex((1,), 3))) == 3

    def test_three_paths_to_empty_at_level_4(self):
        assert len(paths("reflection", Vertex((), 4))) == 3

    def test_two_standard_tableaux_of_shape_21(self):
        assert len(paths("young", Vertex((2, 1), 3))) == 2

    def test_path_count_squares_match_dimensions(self):
        # sum of squared path counts = dim A_n for every tower
        for kind, dim_at, nmax in (
            ("reflection", lambda n: double_factorial(2 * n - 1), 5),
            ("young", factorial, 5),
            ("tl", catalan, 5),
        ):
            lat = lattice(kind)
            for n in range(nmax + 1):
                total = sum(len(paths(kind, v)) ** 2 for v in lat.vertices_at(n))
                assert total == dim_at(n) if n else total == 1

    def test_paths_sorted_ascending_revlex(self):
        for kind, v in (
            ("reflection", Vertex((1,), 5)),
            ("young", Vertex((3, 2), 5)),
            ("tl", TLVertex(1, 5)),
        ):
            ps = paths(kind, v)
            for i in range(len(ps) - 1):
                assert compare(ps[i], ps[i + 1], "revlex", kind) == "less"


class TestCompare:
    def test_equal(self):
        p = paths("young", Vertex((2, 1), 3))[0]
        assert compare(p, p, "revlex", "young") == "equal"
        assert compare(p, p, "dominance", "young") == "equal"

    def test_row_reading_beats_column_reading_in_revlex(self):
        ps = paths("young", Vertex((2, 1), 3))
        tabs = {path_to_tableau(p): p for p in ps}
        row = tabs[((1, 2), (3,))]
        col = tabs[((1, 3), (2,))]
        assert compare(row, col, "revlex", "young") == "greater"

    def test_revlex_total_on_same_endpoint_sets(self):
        for kind, nmax in (("reflection", 5), ("young", 5), ("tl", 5)):
            lat = lattice(kind)
            for v in lat.vertices_at(nmax):
                ps = paths(kind, v)
                for i, s in enumerate(ps):
                    for t in ps[i + 1 :]:
                        assert compare(s, t, "revlex", kind) in ("less", "greater")

    def test_dominance_implies_revlex_same_direction(self):
        for kind in ("reflection", "young", "tl"):
            lat = lattice(kind)
            for n in range(1, 5):
                for v in lat.vertices_at(n):
                    ps = paths(kind, v)
                    for s in ps:
                        for t in ps:
                            dom = compare(s, t, "dominance", kind)
                            if dom in ("less", "greater"):
                                assert compare(s, t, "revlex", kind) == dom


class TestScalars:
    def test_sym_contents_of_21(self):
        ctx = sym_context()
        sc = scalars("sym", ctx, Vertex((2, 1), 3))
        assert content_sum((2, 1)) == 0
        assert sc["d"] == ctx.rational(0)
        assert sc["beta"] == ctx.rational(0)

    def test_hecke_row_of_two(self):
        ctx = hecke_context()
        assert scalars("hecke", ctx, Vertex((2,), 2))["alpha"] == ctx.var("q")

    def test_brauer_empty_at_level_two(self):
        ctx = brauer_context()
        beta = scalars("brauer", ctx, Vertex((), 2))["beta"]
        assert beta == ctx.one - ctx.var("delta")

    def test_bmw_single_box_at_level_three(self):
        ctx = bmw_context()
        beta = beta_scalar("bmw", ctx, Vertex((1,), 3))
        assert beta == ctx.var("rho", -2)

    def test_tl_alpha_ratio_is_q_to_minus_n_plus_3(self):
        # alpha(lambda(k,n))/alpha(lambda(k,n-2)) = q^(3-n), independent of k
        ctx = tl_context()
        for n in range(2, 6):
            for k in range(n % 2, n - 1, 2):
                num = beta_scalar("tl", ctx, TLVertex(k, n))
                den = beta_scalar("tl", ctx, TLVertex(k, n - 2))
                assert num / den == ctx.var("qhalf", 2 * (3 - n))

    def test_beta_telescoping_all_towers(self):
        ctxs = {
            "sym": sym_context(),
            "hecke": hecke_context(),
            "brauer": brauer_context(),
            "bmw": bmw_context(),
            "tl": tl_context(),
        }
        for tower, ctx in ctxs.items():
            lat = lattice(lattice_kind_for(tower))
            for n in range(4):
                for v in lat.vertices_at(n):
                    for w in lat.up_edges(v):
                        step = step_scalar(tower, ctx, v, w)
                        bv = beta_scalar(tower, ctx, v)
                        bw = beta_scalar(tower, ctx, w)
                        if is_multiplicative(tower):
                            assert bw == bv * step
                        else:
                            assert bw == bv + step

    def test_kappa_values_at_level(self):
        ctx = sym_context()
        assert set(kappa_values_at("sym", ctx, 1)) == {Fraction(0)}
        assert set(kappa_values_at("sym", ctx, 2)) == {Fraction(1), Fraction(-1)}


class TestTableaux:
    def test_partitions_of(self):
        assert partitions_of(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))

    def test_superstandard(self):
        assert superstandard_tableau((3, 2)) == ((1, 2, 3), (4, 5))

    def test_path_tableau_roundtrip(self):
        ps = paths("young", Vertex((2, 2), 4))
        tabs = [path_to_tableau(p) for p in ps]
        assert ((1, 2), (3, 4)) in tabs and ((1, 3), (2, 4)) in tabs
        assert len(set(tabs)) == len(tabs)
