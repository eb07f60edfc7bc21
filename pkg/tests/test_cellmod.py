import random
from fractions import Fraction

import pytest

from towerlab.branching import TLVertex, Vertex, lattice, lattice_kind_for, paths
from towerlab.cellmod import (
    all_cell_modules,
    brauer_dangles,
    build_cell_module,
    central_idempotent,
    get_cell_module,
    gz_idempotents,
    murphy_cell_module,
    path_basis,
    restriction_filtration,
    tl_dangles,
)
from towerlab.errors import SingularSystem
from towerlab.jm import jm_elements
from towerlab.linalg import identity_matrix, mat_eq, mat_mul, mat_scale
from towerlab.ratfunc import brauer_context
from towerlab.towers import make_tower
from towerlab import perms


@pytest.fixture(scope="module")
def brauer():
    return make_tower("brauer")


@pytest.fixture(scope="module")
def tl():
    return make_tower("tl")


@pytest.fixture(scope="module")
def hecke():
    return make_tower("hecke")


@pytest.fixture(scope="module")
def sym():
    return make_tower("sym")


class TestMurphyModules:
    def test_trivial_module_acts_by_q(self, hecke):
        for n in (2, 3):
            m = murphy_cell_module(hecke, (n,))
            assert m.dim == 1
            q = hecke.ctx.var("q")
            for j in range(1, n):
                assert m.action_matrix(hecke.generator("T", j, n)) == [[q]]

    def test_sign_module_acts_by_minus_one(self, hecke):
        for n in (2, 3):
            m = murphy_cell_module(hecke, (1,) * n)
            assert m.dim == 1
            minus = -hecke.ctx.one
            for j in range(1, n):
                assert m.action_matrix(hecke.generator("T", j, n)) == [[minus]]

    def test_two_one_has_dimension_two(self, hecke):
        assert murphy_cell_module(hecke, (2, 1)).dim == 2

    def test_defining_relations_hold_on_modules(self, hecke, sym):
        for tower in (hecke, sym):
            for n in (2, 3, 4):
                mods = all_cell_modules(tower, n)
                for name, lhs, rhs in tower.relations(n):
                    for m in mods:
                        assert mat_eq(m.action_matrix(lhs), m.action_matrix(rhs)), (
                            tower.kind,
                            n,
                            m.vertex,
                            name,
                        )

    def test_action_is_homomorphism(self, sym):
        rng = random.Random(3)
        m = murphy_cell_module(sym, (2, 1))
        basis = sym.basis(3)
        for _ in range(20):
            a = sym.from_label(3, rng.choice(basis))
            b = sym.from_label(3, rng.choice(basis))
            assert mat_eq(
                m.action_matrix(a * b),
                mat_mul(m.action_matrix(a), m.action_matrix(b), sym.ctx),
            )


class TestDangles:
    def test_counts(self):
        assert len(brauer_dangles(3, 1)) == 3
        assert len(brauer_dangles(4, 2)) == 6
        assert len(tl_dangles(4, 0)) == 2
        assert len(tl_dangles(5, 1)) == 5

    def test_brauer_single_box_level_three(self, brauer):
        m = build_cell_module(brauer, Vertex((1,), 3))
        assert m.dim == 3

    def test_tl_empty_at_level_two(self, tl):
        m = build_cell_module(tl, TLVertex(0, 2))
        assert m.dim == 1
        assert m.action_matrix(tl.generator("e", 1, 2)) == [[tl.delta]]

    def test_inflated_k_equals_n_matches_murphy(self, brauer):
        # at k = n the dangle module is the Murphy module on the nose
        quotient = brauer.quotient_tower()
        for lam in ((2,), (1, 1), (2, 1)):
            n = sum(lam)
            m_inf = build_cell_module(brauer, Vertex(lam, n))
            m_mur = murphy_cell_module(quotient, lam)
            assert m_inf.dim == m_mur.dim
            for j in range(1, n):
                got = m_inf.action_matrix(brauer.generator("s", j, n))
                want = m_mur.action_matrix(quotient.generator("s", j, n))
                assert got == want

    def test_module_relations_all_towers(self, brauer, tl):
        for tower in (brauer, tl):
            for n in (2, 3):
                mods = all_cell_modules(tower, n)
                for name, lhs, rhs in tower.relations(n):
                    for m in mods:
                        assert mat_eq(m.action_matrix(lhs), m.action_matrix(rhs)), name

    def test_dimensions_match_path_counts(self, brauer, tl):
        for tower, nmax in ((brauer, 4), (tl, 5)):
            lat = lattice(lattice_kind_for(tower.kind))
            for n in range(1, nmax + 1):
                for v in lat.vertices_at(n):
                    m = get_cell_module(tower, v)
                    assert m.dim == len(paths(lattice_kind_for(tower.kind), v))

    def test_matches_literal_cyclic_construction(self, brauer):
        # cross-check the normal-form realization against the mechanical
        # (A g + Ideal)/Ideal computed in the regular representation
        from towerlab.linalg import Echelon
        from towerlab.diagrams import permutation_diagram, include_diagram

        tower = brauer
        n = 3
        lat = lattice("reflection")
        basis = tower.basis(n)
        index = {l: i for i, l in enumerate(basis)}

        def vec(el):
            return {index[l]: c for l, c in el.coeffs}

        def cyclic_gen(v):
            el = tower.one(n)
            for j in range(n - 1, v.size(), -2):
                el = el * tower.generator("e", j, n)
            terms = {}
            for w in perms.young_subgroup(v.lam):
                terms[include_diagram(permutation_diagram(w), n)] = tower.ctx.one
            return el * tower.element(n, terms)

        verts = lat.vertices_at(n)
        ech = Echelon()
        for v in verts:
            # dimension of (A g + ideal)/ideal must match the dangle module
            before = ech.rank
            mod_ech = Echelon()
            for row in [dict(r) for r, _ in (ech.rows[p] for p in sorted(ech.rows))]:
                mod_ech.insert(row)
            count = 0
            g = cyclic_gen(v)
            for label in basis:
                if mod_ech.insert(vec(tower.from_label(n, label) * g)):
                    count += 1
            assert count == get_cell_module(tower, v).dim
            # grow the ideal by the two-sided closure of g
            frontier = [g] if ech.insert(vec(g)) else []
            gens = [tower.generator(k, j, n) for k, j in tower.generator_keys(n)]
            while frontier:
                nxt = []
                for el in frontier:
                    for gen in gens:
                        for prod in (gen * el, el * gen):
                            if ech.insert(vec(prod)):
                                nxt.append(prod)
                frontier = nxt


class TestBMWModules:
    def test_dimensions_level_three(self):
        bmw = make_tower("bmw")
        lat = lattice("reflection")
        for v in lat.vertices_at(3):
            m = get_cell_module(bmw, v)
            assert m.dim == len(paths("reflection", v))

    def test_relations_on_modules(self):
        bmw = make_tower("bmw")
        mods = all_cell_modules(bmw, 3)
        for name, lhs, rhs in bmw.relations(3):
            for m in mods:
                assert mat_eq(m.action_matrix(lhs), m.action_matrix(rhs)), name


class TestCentralIdempotents:
    def test_rank_one_identity(self, sym):
        z = central_idempotent(sym, 1, Vertex((1,), 1))
        assert z == sym.one(1)

    def test_sym_n2_known_idempotent(self, sym):
        # z_(2) = (1 + s1)/2, by solving the 2x2 representation system
        z = central_idempotent(sym, 2, Vertex((2,), 2))
        half = sym.ctx.rational(Fraction(1, 2))
        expected = (sym.one(2) + sym.generator("s", 1, 2)).scale(half)
        assert z == expected

    def test_completeness_and_centrality(self, brauer):
        n = 3
        lat = lattice("reflection")
        zs = [central_idempotent(brauer, n, v) for v in lat.vertices_at(n)]
        total = zs[0]
        for z in zs[1:]:
            total = total + z
        assert total == brauer.one(n)
        for z in zs:
            assert z * z == z
            for kind, j in brauer.generator_keys(n):
                g = brauer.generator(kind, j, n)
                assert z * g == g * z


class TestRestriction:
    def test_brauer_1_1_restricts_to_single_box(self, brauer):
        m = get_cell_module(brauer, Vertex((1, 1), 2))
        layers = restriction_filtration(m)
        assert [mu for mu, _ in layers] == [Vertex((1,), 1)]

    def test_brauer_single_box_level3_sees_three_layers(self, brauer):
        m = get_cell_module(brauer, Vertex((1,), 3))
        layers = restriction_filtration(m)
        got = {mu for mu, _ in layers}
        assert got == {Vertex((2,), 2), Vertex((1, 1), 2), Vertex((), 2)}
        assert all(len(cols) == 1 for _, cols in layers)

    def test_hecke_two_one_restriction(self, hecke):
        m = get_cell_module(hecke, Vertex((2, 1), 3))
        layers = restriction_filtration(m)
        assert {mu for mu, _ in layers} == {Vertex((2,), 2), Vertex((1, 1), 2)}


class TestPathBasis:
    def test_one_dimensional_is_trivial(self, hecke):
        m = path_basis(hecke, Vertex((3,), 3))
        assert m.dim == 1

    def test_brauer_single_box_level3_lower_triangular(self, brauer):
        m = path_basis(brauer, Vertex((1,), 3))
        fam = jm_elements(brauer, 3)
        for el in fam.elements:
            mat = m.action_matrix(el)
            for i in range(m.dim):
                for j in range(i + 1, m.dim):
                    assert not mat[i][j], "JM action must be lower-triangular"

    def test_layer_blocks_reproduce_lower_modules(self, brauer):
        # the A_{n-1}-action on each layer equals the lower path module
        v = Vertex((1,), 3)
        m = path_basis(brauer, v)
        lat = lattice("reflection")
        offset = 0
        by_mu = {}
        for t in m.basis_paths:
            by_mu.setdefault(t[-2], []).append(t)
        for mu in sorted(by_mu, key=lat.sort_key_descending, reverse=True):
            block = by_mu[mu]
            idx = [m.basis_paths.index(t) for t in block]
            lower = path_basis(brauer, mu)
            for kind, j in [("s", 1), ("e", 1)]:
                big = m.gen_mats[(kind, j)]
                sub = [[big[a][b] for b in idx] for a in idx]
                want = lower.gen_mats[(kind, j)]
                assert sub == want


class TestGZ:
    def test_sym_rank_two_interpolation(self, sym):
        fam = gz_idempotents(sym, 2)
        row_path = paths("young", Vertex((2,), 2))[0]
        # F = (L2 + 1)/2 from K(2) = {1, -1}
        L2 = jm_elements(sym, 2).elements[1]
        expected = (L2 + sym.one(2)).scale(sym.ctx.rational(Fraction(1, 2)))
        assert fam.idempotents[row_path] == expected

    def test_completeness_orthogonality_level(self, sym):
        n = 3
        fam = gz_idempotents(sym, n)
        lat = lattice("young")
        level = [t for t in fam.idempotents if len(t) == n + 1]
        total = None
        for t in level:
            f = fam.idempotents[t]
            assert f * f == f
            total = f if total is None else total + f
        assert total == sym.one(n)
        for s in level:
            for t in level:
                if s != t:
                    assert (fam.idempotents[s] * fam.idempotents[t]).is_zero()

    def test_prefix_property(self, sym):
        # F_s F_t = delta_{s, t[0..k]} F_t for shorter s
        fam = gz_idempotents(sym, 3)
        shorter = [t for t in fam.idempotents if len(t) == 3]
        longer = [t for t in fam.idempotents if len(t) == 4]
        for s in shorter:
            for t in longer:
                prod = fam.idempotents[s] * fam.idempotents[t]
                if t[: len(s)] == s:
                    assert prod == fam.idempotents[t]
                else:
                    assert prod.is_zero()

    def test_sums_give_central_idempotents(self, sym):
        n = 3
        fam = gz_idempotents(sym, n)
        lat = lattice("young")
        for v in lat.vertices_at(n):
            total = None
            for t in paths("young", v):
                f = fam.idempotents[t]
                total = f if total is None else total + f
            assert total == central_idempotent(sym, n, v)
