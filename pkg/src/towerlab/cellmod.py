"""Concrete cell modules for every tower, action matrices, restriction
filtrations, the inductive path-basis construction, central primitive
idempotents, and Gelfand-Zeitlin idempotents.

Realizations:

* Hecke / symmetric group: the Murphy construction inside the algebra
  (cyclic module on the row-stabilizer sum, modulo the span of the more
  dominant two-sided ideals), basis indexed by standard tableaux.
* Brauer / TL: the same quotient computed in its normal form: a basis
  vector is a half-diagram ("dangle") carrying a cell-module vector of the
  level-k quotient algebra; a diagram acts by composing with the dangle,
  killing it when through-strands collapse.
* BMW: the cyclic module (A_n g + Ideal)/Ideal computed literally, with
  the higher ideal accumulated as a two-sided closure in the normal-form
  basis.

All linear algebra runs over the fraction field; matrices follow the
column convention, so action_matrix(a*b) = action_matrix(a)*action_matrix(b).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import perms
from .branching import (
    Vertex,
    beta_scalar,
    kappa_of_path,
    kappa_values_at,
    lattice,
    lattice_kind_for,
    path_to_tableau,
    paths,
    tableau_word,
)
from .diagrams import BrauerDiagram, generator_diagram, include_diagram, permutation_diagram
from .errors import InvalidVertex, RankMismatch, SeparationFailure, SingularSystem
from .jm import jm_elements
from .linalg import (
    Echelon,
    dense_to_sparse,
    identity_matrix,
    lagrange_projectors,
    mat_eq,
    mat_inverse,
    mat_mul,
    mat_vec,
)
from .towers import AlgebraElement, Tower


@dataclass
class CellModule:
    tower: Tower
    vertex: object
    basis_paths: tuple
    gen_mats: dict  # (kind, j) -> matrix, column convention
    provenance: str  # murphy | inflated | induced | path
    _label_action: object = field(repr=False, default=None)
    basis_change: list | None = field(repr=False, default=None)
    _label_cache: dict = field(repr=False, default_factory=dict)

    @property
    def n(self) -> int:
        return self.vertex.n

    @property
    def dim(self) -> int:
        return len(self.basis_paths)

    def label_matrix(self, label):
        if label not in self._label_cache:
            self._label_cache[label] = self._label_action(label)
        return self._label_cache[label]

    def action_matrix(self, a: AlgebraElement):
        """Matrix of a acting on the module (exact, column convention)."""
        if a.n != self.n:
            raise RankMismatch(f"element rank {a.n} vs module rank {self.n}")
        ctx = self.tower.ctx
        d = self.dim
        out = [[ctx.zero] * d for _ in range(d)]
        for label, c in a.coeffs:
            m = self.label_matrix(label)
            for i in range(d):
                row, mrow = out[i], m[i]
                for j in range(d):
                    if mrow[j]:
                        row[j] = row[j] + c * mrow[j]
        return out

    def jm_matrices(self) -> list:
        """Action matrices of L_1..L_n on this module."""
        fam = jm_elements(self.tower, self.n)
        return [self.action_matrix(el) for el in fam.elements]

    def to_json(self) -> dict:
        ctx = self.tower.ctx
        return {
            "tower": self.tower.kind,
            "vertex": self.vertex.to_json(),
            "dim": self.dim,
            "provenance": self.provenance,
            "basis": [[v.to_json() for v in p] for p in self.basis_paths],
            "matrices": {
                f"{kind}{j}": [[ctx.text(x) for x in row] for row in m]
                for (kind, j), m in sorted(self.gen_mats.items())
            },
        }


# -- Murphy modules for Hecke and the symmetric group ----------------------


def _murphy_data(tower: Tower, n: int):
    """Full Murphy family data at rank n: for each shape, the cell-module
    echelon bookkeeping needed to build Δ^lam and reduce products."""
    ctx = tower.ctx
    genkind = "T" if tower.kind == "hecke" else "s"
    basis = tower.basis(n)
    index = {w: i for i, w in enumerate(basis)}

    def vec(el: AlgebraElement) -> dict:
        return {index[l]: c for l, c in el.coeffs}

    lat = lattice("young")
    verts = lat.vertices_at(n)  # descending: most dominant first

    def m_lambda(lam):
        terms = {}
        for w in perms.young_subgroup(lam):
            terms[w] = ctx.one
        return tower.element(n, terms)

    def word_elem(w):
        return tower.from_label(n, w)

    murphy: dict = {}
    for v in verts:
        ps = paths("young", v)
        mlam = m_lambda(v.lam)
        dts = [tableau_word(path_to_tableau(p)) for p in ps]
        murphy[v] = (ps, dts, mlam)
    return genkind, index, vec, verts, murphy


@lru_cache(maxsize=None)
def _murphy_modules(tower: Tower, n: int) -> dict:
    """All Murphy cell modules of a Hecke/Sym tower at rank n."""
    genkind, index, vec, verts, murphy = _murphy_data(tower, n)
    out: dict = {}
    ideal = Echelon(track=True, one=tower.ctx.one)
    counter = 0
    identity_word = perms.identity(n)
    # walk shapes from most dominant down; the echelon accumulates the
    # two-sided ideal spans as we go
    for v in verts:
        ps, dts, mlam = murphy[v]
        # the t^lam column m_{s, t^lam} = involve(T_d(s)) * m_lam carries
        # the left cell module
        reps = []
        tags = []
        for dt in dts:
            ms = tower.from_label(n, dt).involve() * mlam
            residual = ideal.insert(vec(ms))
            assert residual, "Murphy vectors must be independent"
            tags.append(counter)
            counter += 1
            reps.append(ms)
        out[v] = (ps, reps, tags)
        # the remaining columns m_{s,t} = m_{s, t^lam} * T_d(t)
        for dsi in range(len(dts)):
            for dt in dts:
                if dt == identity_word:
                    continue  # that column was inserted above
                el = reps[dsi] * tower.from_label(n, dt)
                residual = ideal.insert(vec(el))
                assert residual, "Murphy vectors must be independent"
                counter += 1
    assert ideal.rank == len(index), "Murphy family must span the algebra"

    modules: dict = {}
    for v, (ps, reps, tags) in out.items():
        modules[v] = _finish_murphy_module(tower, v, ps, reps, tags, genkind, ideal, vec)
    return modules


def _finish_murphy_module(tower, v, ps, reps, tags, genkind, ideal, vec):
    ctx = tower.ctx
    d = len(ps)
    tag_pos = {tag: i for i, tag in enumerate(tags)}

    def express(el: AlgebraElement):
        residual, combo = ideal.reduce_with_combo(vec(el))
        assert not residual, "product left the Murphy span"
        col = [ctx.zero] * d
        for tag, c in combo.items():
            if tag in tag_pos:
                col[tag_pos[tag]] = c
        return col

    def label_action(label):
        cols = [express(tower.from_label(v.n, label) * rep) for rep in reps]
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    gen_mats = {}
    for kind, j in tower.generator_keys(v.n):
        gen = tower.generator(kind, j, v.n)
        cols = [express(gen * rep) for rep in reps]
        gen_mats[(kind, j)] = [[cols[j2][i] for j2 in range(d)] for i in range(d)]

    def label_action_cached(label):
        # permutation labels act through their reduced word
        word = perms.reduced_word(label)
        m = identity_matrix(d, ctx)
        for i in word:
            m = mat_mul(m, gen_mats[(genkind, i)], ctx)
        return m

    return CellModule(
        tower=tower,
        vertex=v,
        basis_paths=ps,
        gen_mats=gen_mats,
        provenance="murphy",
        _label_action=label_action_cached,
    )


def murphy_cell_module(tower: Tower, lam: tuple) -> CellModule:
    """The Murphy cell module Δ^lam of a Hecke or Sym tower."""
    assert tower.kind in ("hecke", "sym")
    n = sum(lam)
    v = Vertex(lam, n)
    modules = _murphy_modules(tower, n)
    if v not in modules:
        raise InvalidVertex(f"{v} is not a shape at rank {n}")
    return modules[v]


# -- dangle modules for Brauer and TL ---------------------------------------


@lru_cache(maxsize=None)
def brauer_dangles(n: int, k: int) -> tuple:
    """(n,k)-half-diagrams: (n-k)/2 disjoint arcs on positions 1..n; the k
    free positions are the through slots, in increasing order."""
    assert 0 <= k <= n and (n - k) % 2 == 0
    from itertools import combinations

    def matchings(points):
        if not points:
            yield ()
            return
        first, rest = points[0], points[1:]
        for i, second in enumerate(rest):
            for sub in matchings(rest[:i] + rest[i + 1 :]):
                yield ((first, second),) + sub

    pts = tuple(range(1, n + 1))
    out = []
    for through in combinations(pts, k):
        remaining = tuple(p for p in pts if p not in through)
        for m in matchings(remaining):
            out.append((tuple(sorted(m)), through))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def tl_dangles(n: int, k: int) -> tuple:
    """Planar dangles: non-crossing arcs with no through point under an arc."""
    out = []
    for arcs, through in brauer_dangles(n, k):
        ok = True
        for (a, b) in arcs:
            if any(a < p < b for p in through):
                ok = False
                break
            for (c, d) in arcs:
                if a < c < b < d:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append((arcs, through))
    return tuple(sorted(out))


def _dangle_module(tower: Tower, v) -> CellModule:
    """Brauer/TL cell module: dangles tensor the level-k quotient module."""
    ctx = tower.ctx
    n = v.n
    if tower.kind == "brauer":
        k = v.size()
        dangles = brauer_dangles(n, k)
        mid = murphy_cell_module(tower.quotient_tower(), v.lam) if k else None
        f = mid.dim if mid else 1
    else:
        k = v.k
        dangles = tl_dangles(n, k)
        mid = None
        f = 1
    dindex = {dg: i for i, dg in enumerate(dangles)}
    dim = len(dangles) * f
    kind = lattice_kind_for(tower.kind)
    ps = paths(kind, v)
    if len(ps) != dim:
        raise SingularSystem(
            f"{tower.kind} module at {v}: dangle dimension {dim} != paths {len(ps)}"
        )

    perm_mats: dict = {}

    def perm_matrix(sigma):
        if mid is None:
            return None
        if sigma not in perm_mats:
            perm_mats[sigma] = mid.label_matrix(sigma)
        return perm_mats[sigma]

    delta_pow = tower.delta_power

    def label_action(label):
        out = [[ctx.zero] * dim for _ in range(dim)]
        for di, dg in enumerate(dangles):
            res = _act_dangle(label, dg, n, k)
            if res is None:
                continue
            loops, newdg, sigma = res
            dj = dindex[newdg]
            c = delta_pow(loops)
            if mid is None:
                out[dj][di] = c
            else:
                msig = perm_matrix(sigma)
                for a in range(f):
                    row = out[dj * f + a]
                    for b in range(f):
                        if msig[a][b]:
                            row[di * f + b] = c * msig[a][b]
        return out

    gen_mats = {
        (gk, j): label_action(generator_diagram("e" if gk == "e" else "s", j, n))
        for gk, j in tower.generator_keys(n)
    }
    return CellModule(
        tower=tower,
        vertex=v,
        basis_paths=ps,
        gen_mats=gen_mats,
        provenance="inflated",
        _label_action=label_action,
    )


def _act_dangle(y: BrauerDiagram, dangle, n: int, k: int):
    """Loop-counting variant of the dangle action used by _dangle_module."""
    arcs, through = dangle
    py = y.partner()
    arc_map = {}
    for a, b in arcs:
        arc_map[a] = b
        arc_map[b] = a
    slot_of = {p: i for i, p in enumerate(through)}

    visited = set()
    new_arcs = []
    new_through = []

    for i in range(1, n + 1):
        if any(i == a or i == b for a, b in new_arcs):
            continue
        cur = py[n + i - 1]
        while True:
            if cur >= n:
                new_arcs.append((i, cur - n + 1))
                break
            pos = cur + 1
            visited.add(cur)
            if pos in slot_of:
                new_through.append((i, slot_of[pos]))
                break
            pos2 = arc_map[pos]
            visited.add(pos2 - 1)
            cur = py[pos2 - 1]

    if len(new_through) != k:
        return None

    loops = 0
    seen = set(visited)
    for t in range(n):
        if t in seen or (t + 1) in slot_of:
            continue
        loops += 1
        cur = t
        while cur not in seen:
            seen.add(cur)
            mate_pos = arc_map[cur + 1]
            seen.add(mate_pos - 1)
            cur = py[mate_pos - 1]
            assert cur < n or cur in seen, "loop left the interface"
    sigma = tuple(s for _, s in sorted(new_through))
    new_dangle = (
        tuple(sorted((min(a, b), max(a, b)) for a, b in new_arcs)),
        tuple(sorted(p for p, _ in new_through)),
    )
    return loops, new_dangle, sigma


# -- BMW cell modules via the cyclic construction ---------------------------


@lru_cache(maxsize=None)
def _bmw_ideal_chain(tower: Tower, n: int):
    """Echelon snapshots of the accumulated two-sided ideals, aligned with
    vertices_at(n) in descending order: snapshot[i] spans the ideals of all
    vertices strictly before vertex i in the linear extension."""
    lat = lattice("reflection")
    verts = lat.vertices_at(n)
    basis = tower.basis(n)
    index = {l: i for i, l in enumerate(basis)}

    def vec(el):
        return {index[l]: c for l, c in el.coeffs}

    gens = [tower.generator(kind, j, n) for kind, j in tower.generator_keys(n) if kind != "ginv"]
    ech = Echelon()
    snapshots = []
    for v in verts:
        snapshots.append([dict(row) for row, _ in (ech.rows[p] for p in sorted(ech.rows))])
        seed = _bmw_cyclic_generator(tower, v)
        frontier = []
        if ech.insert(vec(seed)):
            frontier.append(seed)
        while frontier:
            nxt = []
            for el in frontier:
                for g in gens:
                    for prod in (g * el, el * g):
                        if ech.insert(vec(prod)):
                            nxt.append(prod)
            frontier = nxt
    return verts, snapshots, index


def _bmw_cyclic_generator(tower: Tower, v) -> AlgebraElement:
    """e_{n-1} e_{n-3} ... e_{k+1} times the lift of the Murphy generator
    m_lambda (T_w lifts to q^l(w) g_w, the positive permutation braid)."""
    n, k = v.n, v.size()
    ctx = tower.ctx
    el = tower.one(n)
    for j in range(n - 1, k, -2):
        el = el * tower.generator("e", j, n)
    terms = {}
    for w in perms.young_subgroup(v.lam):
        label = include_diagram(permutation_diagram(w), n)
        terms[label] = ctx.var("q", perms.length(w))
    return el * tower.element(n, terms)


def _bmw_module(tower: Tower, v) -> CellModule:
    n = v.n
    ctx = tower.ctx
    verts, snapshots, index = _bmw_ideal_chain(tower, n)
    vi = verts.index(v)
    ech = Echelon(track=True, one=ctx.one)
    for row in snapshots[vi]:
        ech.insert(dict(row))
    ideal_rank = ech.rank

    def vec(el):
        return {index[l]: c for l, c in el.coeffs}

    g_elem = _bmw_cyclic_generator(tower, v)
    ps = paths("reflection", v)
    reps = []
    tags = []
    counter = ideal_rank
    for label in tower.basis(n):
        prod = tower.from_label(n, label) * g_elem
        if ech.insert(vec(prod)):
            reps.append(prod)
            tags.append(counter)
        counter += 1
        if len(reps) == len(ps):
            break
    if len(reps) != len(ps):
        raise SingularSystem(
            f"bmw module at {v}: found rank {len(reps)}, expected {len(ps)}"
        )
    tag_pos = {t: i for i, t in enumerate(tags)}
    d = len(reps)

    def express(el):
        residual, combo = ech.reduce_with_combo(vec(el))
        if residual:
            raise SingularSystem("bmw action left the cyclic module span")
        col = [ctx.zero] * d
        for tag, c in combo.items():
            if tag >= ideal_rank:
                col[tag_pos[tag]] = c
        return col

    def label_action(label):
        cols = [express(tower.from_label(n, label) * rep) for rep in reps]
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    gen_mats = {}
    for kind, j in tower.generator_keys(n):
        gen = tower.generator(kind, j, n)
        cols = [express(gen * rep) for rep in reps]
        gen_mats[(kind, j)] = [[cols[j2][i] for j2 in range(d)] for i in range(d)]

    return CellModule(
        tower=tower,
        vertex=v,
        basis_paths=ps,
        gen_mats=gen_mats,
        provenance="induced",
        _label_action=label_action,
    )


# -- dispatch ----------------------------------------------------------------

_MODULE_CACHE: dict = {}


def get_cell_module(tower: Tower, v) -> CellModule:
    """The cell module of the tower at vertex v (cached)."""
    key = (tower.kind, tower.ctx, v)
    if key not in _MODULE_CACHE:
        lattice(lattice_kind_for(tower.kind)).validate(v)
        if tower.kind in ("hecke", "sym"):
            _MODULE_CACHE[key] = murphy_cell_module(tower, v.lam)
        elif tower.kind in ("brauer", "tl"):
            _MODULE_CACHE[key] = _dangle_module(tower, v)
        elif tower.kind == "bmw":
            _MODULE_CACHE[key] = _bmw_module(tower, v)
        else:
            raise InvalidVertex(f"no cell modules for tower {tower.kind!r}")
    return _MODULE_CACHE[key]


def build_cell_module(tower: Tower, v) -> CellModule:
    assert tower.kind in ("tl", "brauer", "bmw")
    return get_cell_module(tower, v)


def all_cell_modules(tower: Tower, n: int) -> list[CellModule]:
    lat = lattice(lattice_kind_for(tower.kind))
    return [get_cell_module(tower, v) for v in lat.vertices_at(n)]


def action_matrix(m: CellModule, a: AlgebraElement):
    return m.action_matrix(a)


# -- central idempotents ------------------------------------------------------


def central_idempotent(tower: Tower, n: int, v) -> AlgebraElement:
    """The minimal central idempotent acting as 1 on Δ^v and 0 on the other
    level-n cell modules, via Lagrange interpolation of the central JM
    element; verified against every module before being returned."""
    lat = lattice(lattice_kind_for(tower.kind))
    lat.validate(v)
    if v.n != n:
        raise InvalidVertex(f"{v} is not at level {n}")
    ctx = tower.ctx
    verts = lat.vertices_at(n)
    betas = [beta_scalar(tower.kind, ctx, w) for w in verts]
    for i in range(len(betas)):
        for j in range(i + 1, len(betas)):
            if betas[i] == betas[j]:
                raise SingularSystem(
                    f"central scalars collide at level {n}: {verts[i]} vs {verts[j]}"
                )
    fam = jm_elements(tower, n)
    c_el = fam.central_element()
    beta_v = beta_scalar(tower.kind, ctx, v)
    z = tower.one(n)
    for w, beta_w in zip(verts, betas):
        if w == v:
            continue
        z = (z * (c_el - tower.one(n).scale(beta_w))).scale(
            ctx.one / (beta_v - beta_w)
        )
    _verify_central_idempotent(tower, n, v, z)
    return z


def _verify_central_idempotent(tower, n, v, z):
    lat = lattice(lattice_kind_for(tower.kind))
    for w in lat.vertices_at(n):
        m = get_cell_module(tower, w)
        got = m.action_matrix(z)
        want = (
            identity_matrix(m.dim, tower.ctx)
            if w == v
            else [[tower.ctx.zero] * m.dim for _ in range(m.dim)]
        )
        if not mat_eq(got, want):
            raise SingularSystem(f"central idempotent check failed at {w}")


# -- restriction filtrations --------------------------------------------------


def _restriction_generator_keys(tower: Tower, n: int):
    """Generator keys of A_{n-1} viewed inside rank-n elements."""
    return [(kind, j) for kind, j in tower.generator_keys(n) if j <= n - 2]


def restriction_projectors(m: CellModule):
    """Spectral projectors of the level-(n-1) center acting on Δ^v, one per
    branching predecessor, in descending vertex order; each is verified to
    commute with A_{n-1} and they must resolve the identity."""
    tower, v, n = m.tower, m.vertex, m.n
    ctx = tower.ctx
    lat = lattice(lattice_kind_for(tower.kind))
    preds = sorted(lat.down_edges(v), key=lat.sort_key_descending)
    if n == 1:
        # A_0 = R: the restriction is the module itself, one layer
        return [(preds[0], identity_matrix(m.dim, ctx))]
    fam = jm_elements(tower, n)
    mats = [m.action_matrix(el) for el in fam.elements[: n - 1]]
    c = mats[0]
    for x in mats[1:]:
        c = mat_mul(c, x, ctx) if fam.kind == "multiplicative" else [
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(c, x)
        ]
    betas = [beta_scalar(tower.kind, ctx, mu) for mu in preds]
    projs = lagrange_projectors(c, betas, ctx)
    total = projs[0]
    for p in projs[1:]:
        total = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(total, p)]
    if not mat_eq(total, identity_matrix(m.dim, ctx)):
        raise SingularSystem("spectral projectors do not resolve the identity")
    for key in _restriction_generator_keys(tower, n):
        gm = m.gen_mats[key]
        for p in projs:
            if not mat_eq(mat_mul(p, gm, ctx), mat_mul(gm, p, ctx)):
                raise SingularSystem("projector fails to commute with A_{n-1}")
    return list(zip(preds, projs))


def restriction_filtration(m: CellModule):
    """Cell filtration of Res Δ^v: ordered (vertex, layer basis columns)
    pairs, descending in the level-(n-1) order; the bases are those of the
    canonical complements z_mu * Δ."""
    out = []
    for mu, p in restriction_projectors(m):
        ech = Echelon()
        cols = []
        d = m.dim
        for j in range(d):
            col = [p[i][j] for i in range(d)]
            if ech.insert(dense_to_sparse(col)):
                cols.append(col)
        want = len(paths(lattice_kind_for(m.tower.kind), mu))
        if len(cols) != want:
            raise SingularSystem(
                f"restriction layer {mu} has rank {len(cols)}, expected {want}"
            )
        out.append((mu, cols))
    return out


# -- path bases ----------------------------------------------------------------

_PATH_CACHE: dict = {}


def path_basis(tower: Tower, v) -> CellModule:
    """Δ^v rebuilt on a genuine path-indexed basis: at each level the layer
    bases are the images of the lower path bases inside the canonical
    complements, so subalgebras act triangularly in revlex order."""
    key = (tower.kind, tower.ctx, v)
    if key not in _PATH_CACHE:
        _PATH_CACHE[key] = _build_path_basis(tower, v)
    return _PATH_CACHE[key]


def _build_path_basis(tower: Tower, v) -> CellModule:
    raw = get_cell_module(tower, v)
    n = v.n
    ctx = tower.ctx
    if n <= 1:
        return CellModule(
            tower=tower,
            vertex=v,
            basis_paths=raw.basis_paths,
            gen_mats=dict(raw.gen_mats),
            provenance="path",
            _label_action=raw.label_matrix,
            basis_change=identity_matrix(raw.dim, ctx),
        )
    lat = lattice(lattice_kind_for(tower.kind))
    layers = restriction_projectors(raw)
    blocks: dict = {}
    for mu, p in layers:
        cols = []
        ech = Echelon()
        for j in range(raw.dim):
            col = [p[i][j] for i in range(raw.dim)]
            if ech.insert(dense_to_sparse(col)):
                cols.append(col)
        blocks[mu] = _transport_path_block(tower, raw, mu, cols)

    kind = lattice_kind_for(tower.kind)
    full_paths = paths(kind, v)
    cols_by_path = {}
    for mu, (source_paths, bcols) in blocks.items():
        for t, col in zip(source_paths, bcols):
            cols_by_path[t + (v,)] = col
    b = [[cols_by_path[t][i] for t in full_paths] for i in range(raw.dim)]
    binv = mat_inverse(b, ctx)
    gen_mats = {
        key: mat_mul(binv, mat_mul(gm, b, ctx), ctx)
        for key, gm in raw.gen_mats.items()
    }

    def label_action(label):
        return mat_mul(binv, mat_mul(raw.label_matrix(label), b, ctx), ctx)

    return CellModule(
        tower=tower,
        vertex=v,
        basis_paths=full_paths,
        gen_mats=gen_mats,
        provenance="path",
        _label_action=label_action,
        basis_change=b,
    )


def _transport_path_block(tower: Tower, raw: CellModule, mu, cols):
    """Map the path basis of Δ^mu through the canonical intertwiner into the
    layer z_mu*Δ spanned by cols; returns (source paths, image columns)."""
    ctx = tower.ctx
    n = raw.n
    source = path_basis(tower, mu)
    d = source.dim

    coords = Echelon(track=True, one=ctx.one)
    for col in cols:
        residual = coords.insert(dense_to_sparse(col))
        assert residual, "layer columns must be independent"

    def to_layer(vec_dense):
        residual, combo = coords.reduce_with_combo(dense_to_sparse(vec_dense))
        if residual:
            raise SingularSystem("vector escaped the filtration layer")
        out = [ctx.zero] * d
        for tag, c in combo.items():
            out[tag] = c
        return out

    fam_low = jm_elements(tower, n - 1)
    src_l = [source.action_matrix(el) for el in fam_low.elements]
    raw_l = [raw.action_matrix(el.include(n)) for el in fam_low.elements]
    tgt_l = []
    for lm in raw_l:
        mapped = [mat_vec(lm, col, ctx) for col in cols]
        tgt_l.append([[to_layer(mapped[j])[i] for j in range(d)] for i in range(d)])

    t_star = source.basis_paths[0]
    w_star = _seminormal_vector(tower, source.basis_paths, src_l, t_star, ctx)
    v_star = _seminormal_vector(tower, source.basis_paths, tgt_l, t_star, ctx)

    keys = _restriction_generator_keys(tower, n)
    src_g = [source.gen_mats[k] for k in keys]
    tgt_g = []
    for k in keys:
        gm = raw.gen_mats[k]
        mapped = [mat_vec(gm, col, ctx) for col in cols]
        tgt_g.append([[to_layer(mapped[j])[i] for j in range(d)] for i in range(d)])

    w_mat, v_mat = [w_star], [v_star]
    ech = Echelon()
    ech.insert(dense_to_sparse(w_star))
    frontier = [(w_star, v_star)]
    while frontier and len(w_mat) < d:
        nxt = []
        for wv, vv in frontier:
            for gs, gt in zip(src_g, tgt_g):
                w2 = mat_vec(gs, wv, ctx)
                if ech.insert(dense_to_sparse(w2)):
                    v2 = mat_vec(gt, vv, ctx)
                    w_mat.append(w2)
                    v_mat.append(v2)
                    nxt.append((w2, v2))
                    if len(w_mat) == d:
                        break
            if len(w_mat) == d:
                break
        frontier = nxt
    if len(w_mat) < d:
        raise SingularSystem("anchor vector failed to generate the layer")

    w_cols = [[w_mat[j][i] for j in range(d)] for i in range(d)]
    v_cols = [[v_mat[j][i] for j in range(d)] for i in range(d)]
    phi = mat_mul(v_cols, mat_inverse(w_cols, ctx), ctx)
    for gs, gt in zip(src_g, tgt_g):
        if not mat_eq(mat_mul(gt, phi, ctx), mat_mul(phi, gs, ctx)):
            raise SingularSystem("transport map is not an intertwiner")
    mat_inverse(phi, ctx)  # must be invertible

    image_cols = []
    for j in range(d):
        layer_coords = [phi[i][j] for i in range(d)]
        dense = [ctx.zero] * raw.dim
        for pos, c in enumerate(layer_coords):
            if c:
                col = cols[pos]
                dense = [x + c * y for x, y in zip(dense, col)]
        image_cols.append(dense)
    return source.basis_paths, image_cols


def _seminormal_vector(tower, source_paths, l_mats, t_star, ctx):
    """First nonzero column of the rank-one joint spectral projector onto
    the kappa-eigenvector line of the anchor path."""
    d = len(source_paths)
    proj = identity_matrix(d, ctx)
    for j in range(1, len(t_star)):
        values = []
        for t in source_paths:
            kap = kappa_of_path(tower.kind, ctx, t, j)
            if kap not in values:
                values.append(kap)
        target = kappa_of_path(tower.kind, ctx, t_star, j)
        lm = l_mats[j - 1]
        for c in values:
            if c == target:
                continue
            shifted = [row[:] for row in lm]
            for i in range(d):
                shifted[i][i] = shifted[i][i] - c
            proj = mat_mul(proj, shifted, ctx)
            proj = [[x / (target - c) for x in row] for row in proj]
    for j in range(d):
        col = [proj[i][j] for i in range(d)]
        if any(col):
            return col
    raise SingularSystem("seminormal projector vanished")


# -- Gelfand-Zeitlin idempotents ----------------------------------------------


@dataclass(frozen=True)
class GZFamily:
    tower: Tower
    n: int
    idempotents: dict  # path -> AlgebraElement


def gz_idempotents(tower: Tower, n: int) -> GZFamily:
    """Mathas interpolation idempotents F_t for all paths of length <= n,
    built level by level from the JM elements."""
    ctx = tower.ctx
    kind = lattice_kind_for(tower.kind)
    lat = lattice(kind)
    fam = jm_elements(tower, n)

    all_paths: list = []
    for j in range(1, n + 1):
        for v in lat.vertices_at(j):
            all_paths.extend(paths(kind, v))
    vectors = {}
    for t in all_paths:
        vec = tuple(kappa_of_path(tower.kind, ctx, t, j) for j in range(1, len(t)))
        key = (len(t), vec)
        if key in vectors and vectors[key] != t:
            raise SeparationFailure(
                f"paths {vectors[key]} and {t} share a JM eigenvalue vector"
            )
        vectors[key] = t

    kappa_sets = {j: kappa_values_at(tower.kind, ctx, j) for j in range(1, n + 1)}
    idems: dict = {}

    def build(t):
        if t in idems:
            return idems[t]
        j = len(t) - 1
        if j == 0:
            out = tower.one(n)
        else:
            prefix = build(t[:-1])
            target = kappa_of_path(tower.kind, ctx, t, j)
            out = prefix
            lj = fam.elements[j - 1]
            for c in kappa_sets[j]:
                if c == target:
                    continue
                out = (out * (lj - tower.one(n).scale(c))).scale(
                    ctx.one / (target - c)
                )
        idems[t] = out
        return out

    for t in all_paths:
        build(t)
    return GZFamily(tower, n, {t: idems[t] for t in all_paths})
