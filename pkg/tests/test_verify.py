from fractions import Fraction

import pytest

from towerlab.branching import Vertex, lattice, paths
from towerlab.cellmod import get_cell_module
from towerlab.jm import jm_elements
from towerlab.ratfunc import bmw_context, brauer_context, hecke_context, tl_context
from towerlab.towers import make_tower
from towerlab.verify import (
    verify_branching_multiplicities,
    verify_center_scalar,
    verify_dimensions,
    verify_framework_axioms,
    verify_jm_family,
    verify_relations,
    verify_separation_and_gz,
    verify_tl_hecke_bridge,
    verify_triangularity_and_spectrum,
)


def assert_clean(report):
    bad = [c for c in report.checks if not c.passed]
    assert not bad, [(c.name, c.vertex, c.witness) for c in bad[:5]]


@pytest.fixture(scope="module")
def towers():
    return {k: make_tower(k) for k in ("brauer", "tl", "sym", "hecke", "bmw")}


class TestJMElements:
    def test_brauer_l2_is_s1_minus_e1(self, towers):
        brauer = towers["brauer"]
        fam = jm_elements(brauer, 2)
        assert fam.elements[1] == brauer.generator("s", 1, 2) - brauer.generator("e", 1, 2)

    def test_hecke_l2_expansion(self, towers):
        # L2 = q^-1 T1^2 = (1 - q^-1) T1 + 1
        hecke = towers["hecke"]
        fam = jm_elements(hecke, 2)
        qinv = hecke.ctx.var("q", -1)
        expected = hecke.generator("T", 1, 2).scale(hecke.ctx.one - qinv) + hecke.one(2)
        assert fam.elements[1] == expected

    def test_bmw_l2_is_g1_squared(self, towers):
        bmw = towers["bmw"]
        fam = jm_elements(bmw, 2)
        g1 = bmw.generator("g", 1, 2)
        assert fam.elements[1] == g1 * g1

    def test_brauer_gamma_relation_rank_two(self, towers):
        # (L1 + L2) e1 = (1 - delta) e1 since (s1 - e1) e1 = e1 - delta e1
        brauer = towers["brauer"]
        fam = jm_elements(brauer, 2)
        e1 = brauer.generator("e", 1, 2)
        lhs = (fam.elements[0] + fam.elements[1]) * e1
        assert lhs == e1.scale(brauer.ctx.one - brauer.ctx.var("delta"))

    def test_bmw_gamma_is_rho_minus_two(self, towers):
        bmw = towers["bmw"]
        fam = jm_elements(bmw, 2)
        e1 = bmw.generator("e", 1, 2)
        lhs = fam.elements[0] * fam.elements[1] * e1
        assert lhs == e1.scale(bmw.ctx.var("rho", -2))


class TestFamilyReports:
    @pytest.mark.parametrize("kind,n", [("brauer", 3), ("tl", 3), ("sym", 3), ("hecke", 3), ("bmw", 3)])
    def test_jm_family(self, towers, kind, n):
        assert_clean(verify_jm_family(towers[kind], n))

    @pytest.mark.parametrize("kind,n", [("brauer", 3), ("tl", 3), ("hecke", 3), ("sym", 3)])
    def test_center_scalar(self, towers, kind, n):
        assert_clean(verify_center_scalar(towers[kind], n))

    def test_center_scalar_bmw(self, towers):
        assert_clean(verify_center_scalar(towers["bmw"], 2))

    def test_brauer_empty_level_two_scalar(self, towers):
        # the sum acts by 1 - delta on the (empty, 2) module
        brauer = towers["brauer"]
        fam = jm_elements(brauer, 2)
        m = get_cell_module(brauer, Vertex((), 2))
        c = fam.central_element()
        got = m.action_matrix(c)
        assert got == [[brauer.ctx.one - brauer.ctx.var("delta")]]


class TestSpectra:
    def test_brauer_empty_level_two(self, towers):
        assert_clean(verify_triangularity_and_spectrum(towers["brauer"], 2))

    def test_hecke_level_three(self, towers):
        assert_clean(verify_triangularity_and_spectrum(towers["hecke"], 3))

    def test_bmw_level_three_spectrum_values(self, towers):
        # L3 on the ((1),3) module: the three up-down tableaux pass through
        # (2), (1,1) and the empty shape, so the step values are
        # rho^-2 q^-2 (remove content 1), rho^-2 q^2 (remove content -1),
        # and q^0 = 1 (add content 0)
        bmw = towers["bmw"]
        ctx = bmw.ctx
        from towerlab.branching import kappa_of_path

        ps = paths("reflection", Vertex((1,), 3))
        got = sorted(ctx.text(kappa_of_path("bmw", ctx, t, 3)) for t in ps)
        want = sorted(
            [
                ctx.text(ctx.var("rho", -2) * ctx.var("q", -2)),
                ctx.text(ctx.var("rho", -2) * ctx.var("q", 2)),
                ctx.text(ctx.one),
            ]
        )
        assert got == want
        assert_clean(verify_triangularity_and_spectrum(bmw, 3))


class TestFramework:
    @pytest.mark.parametrize("kind", ["brauer", "tl", "bmw"])
    def test_axioms_level_two_three(self, towers, kind):
        for n in (2, 3):
            assert_clean(verify_framework_axioms(towers[kind], n))


class TestSeparationGZ:
    @pytest.mark.parametrize("kind", ["sym", "hecke", "tl"])
    def test_small(self, towers, kind):
        assert_clean(verify_separation_and_gz(towers[kind], 3))

    def test_brauer(self, towers):
        assert_clean(verify_separation_and_gz(towers["brauer"], 3))


class TestBranching:
    @pytest.mark.parametrize("kind", ["brauer", "tl", "sym", "hecke", "bmw"])
    def test_level_three(self, towers, kind):
        assert_clean(verify_branching_multiplicities(towers[kind], 3))


class TestBridge:
    def test_bridge_level_three(self, towers):
        assert_clean(verify_tl_hecke_bridge(towers["tl"], 3))

    def test_dimensions(self, towers):
        for kind in ("brauer", "tl", "hecke", "sym"):
            for n in (2, 3):
                assert_clean(verify_dimensions(towers[kind], n))
        assert_clean(verify_dimensions(towers["bmw"], 2))

    def test_relations_reports(self, towers):
        for kind in ("brauer", "tl", "hecke", "sym", "bmw"):
            assert_clean(verify_relations(towers[kind], 3))


class TestSpecializedMode:
    def test_brauer_specialized_run(self):
        tower = make_tower("brauer", brauer_context(Fraction(7, 3)))
        assert_clean(verify_jm_family(tower, 3))
        assert_clean(verify_center_scalar(tower, 3))
        assert_clean(verify_triangularity_and_spectrum(tower, 3))

    def test_report_shape(self, towers):
        rep = verify_jm_family(towers["sym"], 2)
        data = rep.to_json()
        assert data["meta"]["tower"] == "sym"
        assert data["summary"]["failed"] == 0
        rows = rep.to_csv_rows()
        assert all(len(r) == 6 for r in rows)
