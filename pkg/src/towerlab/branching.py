"""Branching diagrams (Young's lattice and its reflection lattice), paths /
up-down tableaux, the two path orders, and the content scalar formulas.

Vertices are (partition, level) pairs; the Temperley-Lieb lattice keeps its
own (k, n) labels with the two-column shape materialized on demand.  Path
lists are returned in ascending reverse-lexicographic order (least path
first), which makes the action matrices built later literally
block-lower-triangular.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidVertex, LengthMismatch

Partition = tuple[int, ...]


def is_partition(lam) -> bool:
    return all(isinstance(p, int) and p > 0 for p in lam) and all(
        lam[i] >= lam[i + 1] for i in range(len(lam) - 1)
    )


def partitions_of(k: int) -> tuple[Partition, ...]:
    def gen(k, maxpart):
        if k == 0:
            yield ()
            return
        for first in range(min(k, maxpart), 0, -1):
            for rest in gen(k - first, first):
                yield (first,) + rest

    return tuple(gen(k, k))


def add_corners(lam: Partition) -> list[Partition]:
    out = []
    for i in range(len(lam) + 1):
        cur = lam[i] if i < len(lam) else 0
        above = lam[i - 1] if i > 0 else None
        if above is None or cur < above:
            new = list(lam)
            if i < len(lam):
                new[i] += 1
            else:
                new.append(1)
            out.append(tuple(new))
    return out


def remove_corners(lam: Partition) -> list[Partition]:
    out = []
    for i in range(len(lam)):
        below = lam[i + 1] if i + 1 < len(lam) else 0
        if lam[i] > below:
            new = list(lam)
            new[i] -= 1
            if new[i] == 0:
                new.pop()
            out.append(tuple(new))
    return out


def added_box(small: Partition, big: Partition) -> tuple[int, int]:
    """(row, col) 0-based of the box big \\ small."""
    for r in range(len(big)):
        s = small[r] if r < len(small) else 0
        if big[r] > s:
            return (r, big[r] - 1)
    raise ValueError(f"{big} does not extend {small}")


def content_sum(lam: Partition) -> int:
    return sum(r_len * (r_len - 1) // 2 - r * r_len for r, r_len in enumerate(lam))


def dominance_cmp(lam: Partition, mu: Partition) -> str:
    """Dominance comparison of partitions of equal size:
    'less' | 'greater' | 'equal' | 'incomparable'."""
    assert sum(lam) == sum(mu)
    if lam == mu:
        return "equal"
    ge = le = True
    sa = sb = 0
    for i in range(max(len(lam), len(mu))):
        sa += lam[i] if i < len(lam) else 0
        sb += mu[i] if i < len(mu) else 0
        if sa > sb:
            le = False
        elif sa < sb:
            ge = False
    if ge and not le:
        return "greater"
    if le and not ge:
        return "less"
    return "incomparable"


@dataclass(frozen=True)
class Vertex:
    lam: Partition
    n: int

    def size(self) -> int:
        return sum(self.lam)

    def to_json(self):
        return {"lambda": list(self.lam), "n": self.n}

    def __repr__(self):
        return f"({self.lam}, {self.n})"


@dataclass(frozen=True)
class TLVertex:
    k: int
    n: int

    @property
    def lam(self) -> Partition:
        # lambda(k, n) = (2^((n-k)/2), 1^k)
        return (2,) * ((self.n - self.k) // 2) + (1,) * self.k

    def size(self) -> int:
        return self.k

    def to_json(self):
        return {"lambda": list(self.lam), "n": self.n, "k": self.k}

    def __repr__(self):
        return f"(k={self.k}, {self.n})"


class Lattice:
    """One of the three branching diagrams: Young's lattice ('young'), the
    reflection lattice of up-down tableaux ('reflection'), or the TL column
    lattice ('tl')."""

    def __init__(self, kind: str):
        assert kind in ("young", "reflection", "tl")
        self.kind = kind

    def origin(self):
        return TLVertex(0, 0) if self.kind == "tl" else Vertex((), 0)

    def validate(self, v) -> None:
        if self.kind == "tl":
            if not (
                isinstance(v, TLVertex)
                and 0 <= v.k <= v.n
                and (v.n - v.k) % 2 == 0
            ):
                raise InvalidVertex(f"{v} not on the TL lattice")
            return
        if not (isinstance(v, Vertex) and is_partition(v.lam)):
            raise InvalidVertex(f"{v} is not a partition vertex")
        if self.kind == "young" and v.size() != v.n:
            raise InvalidVertex(f"{v} not on Young's lattice")
        if self.kind == "reflection" and (
            v.n - v.size() < 0 or (v.n - v.size()) % 2 != 0
        ):
            raise InvalidVertex(f"{v} not on the reflection lattice")

    def up_edges(self, v) -> list:
        """Vertices at level n+1 joined to v, in canonical order."""
        self.validate(v)
        if self.kind == "tl":
            out = [TLVertex(v.k + 1, v.n + 1)]
            if v.k > 0:
                out.append(TLVertex(v.k - 1, v.n + 1))
            return sorted(out, key=lambda w: w.k)
        ups = [Vertex(lam, v.n + 1) for lam in add_corners(v.lam)]
        if self.kind == "reflection":
            ups += [Vertex(lam, v.n + 1) for lam in remove_corners(v.lam)]
        return sorted(ups, key=lambda w: (w.size(), w.lam))

    def down_edges(self, v) -> list:
        self.validate(v)
        if v.n == 0:
            return []
        if self.kind == "tl":
            out = []
            if v.k + 1 <= v.n - 1:
                out.append(TLVertex(v.k + 1, v.n - 1))
            if v.k > 0:
                out.append(TLVertex(v.k - 1, v.n - 1))
            return sorted(out, key=lambda w: w.k)
        downs = [Vertex(lam, v.n - 1) for lam in remove_corners(v.lam)]
        if self.kind == "reflection":
            # adding a box is only allowed while staying on the lattice
            downs += [
                Vertex(lam, v.n - 1)
                for lam in add_corners(v.lam)
                if sum(lam) <= v.n - 1
            ]
        return sorted(downs, key=lambda w: (w.size(), w.lam))

    def vertices_at(self, n: int) -> list:
        """Level-n vertex set sorted by the fixed descending linear extension
        (poset-greatest first: fewer boxes first, then dominance-descending
        with lexicographic tie-break)."""
        if self.kind == "tl":
            return [TLVertex(k, n) for k in range(n % 2, n + 1, 2)]
        if self.kind == "young":
            lams = partitions_of(n)
        else:
            lams = [
                lam
                for k in range(n % 2, n + 1, 2)
                for lam in partitions_of(k)
            ]
        vs = [Vertex(lam, n) for lam in lams]
        return sorted(vs, key=self.sort_key_descending)

    def sort_key_descending(self, v):
        if self.kind == "tl":
            return (v.k,)
        return (v.size(), tuple(-p for p in v.lam))

    def vertex_cmp(self, v, w) -> str:
        """Order of the cell-datum poset at a fixed level."""
        assert v.n == w.n
        if v == w:
            return "equal"
        if self.kind == "tl":
            return "greater" if v.k < w.k else "less"
        if self.kind == "young":
            return dominance_cmp(v.lam, w.lam)
        if v.size() != w.size():
            return "greater" if v.size() < w.size() else "less"
        return dominance_cmp(v.lam, w.lam)


@lru_cache(maxsize=None)
def _lattice(kind: str) -> Lattice:
    return Lattice(kind)


def lattice(kind: str) -> Lattice:
    return _lattice(kind)


def edges(kind: str, v) -> list:
    return lattice(kind).up_edges(v)


UpDownPath = tuple  # tuple of vertices from the origin to the target


@lru_cache(maxsize=None)
def paths(kind: str, target) -> tuple[UpDownPath, ...]:
    """All paths from the origin to target, ascending reverse-lexicographic
    (revlex-least first)."""
    lat = lattice(kind)
    lat.validate(target)

    def back(v):
        if v.n == 0:
            yield (v,)
            return
        for u in lat.down_edges(v):
            for p in back(u):
                yield p + (v,)

    all_paths = list(back(target))
    cmp = functools.cmp_to_key(lambda s, t: _revlex_int(lat, s, t))
    return tuple(sorted(all_paths, key=cmp))


def _revlex_int(lat: Lattice, s: UpDownPath, t: UpDownPath) -> int:
    for j in range(len(s) - 1, -1, -1):
        if s[j] != t[j]:
            c = lat.vertex_cmp(s[j], t[j])
            if c == "less":
                return -1
            if c == "greater":
                return 1
            raise LengthMismatch(f"revlex incomparable at index {j}: {s[j]} vs {t[j]}")
    return 0


def compare(s: UpDownPath, t: UpDownPath, order: str, kind: str) -> str:
    """Compare two same-length paths in 'dominance' or 'revlex' order."""
    if len(s) != len(t):
        raise LengthMismatch("paths of different length")
    lat = lattice(kind)
    if s == t:
        return "equal"
    if order == "revlex":
        for j in range(len(s) - 1, -1, -1):
            if s[j] != t[j]:
                return lat.vertex_cmp(s[j], t[j])
        return "equal"
    if order == "dominance":
        le = ge = True
        for a, b in zip(s, t):
            c = lat.vertex_cmp(a, b)
            if c == "incomparable":
                return "incomparable"
            if c == "less":
                ge = False
            elif c == "greater":
                le = False
        if ge and not le:
            return "greater"
        if le and not ge:
            return "less"
        return "incomparable"
    raise ValueError(f"unknown order {order!r}")


# -- scalar formulas -----------------------------------------------------
#
# beta is the scalar by which the running product (multiplicative towers)
# or sum (additive towers) of the JM elements acts on the cell module at
# a vertex; kappa is the per-edge step value beta(next)/beta(prev) or
# beta(next) - beta(prev).

def lattice_kind_for(tower_kind: str) -> str:
    return {
        "sym": "young",
        "hecke": "young",
        "brauer": "reflection",
        "bmw": "reflection",
        "tl": "tl",
    }[tower_kind]


def is_multiplicative(tower_kind: str) -> bool:
    return tower_kind in ("hecke", "bmw", "tl")


def beta_scalar(tower_kind: str, ctx, v):
    """Central-element scalar on the cell module at v."""
    lat = lattice(lattice_kind_for(tower_kind))
    lat.validate(v)
    if tower_kind == "sym":
        return ctx.rational(content_sum(v.lam))
    if tower_kind == "hecke":
        return ctx.var("q", content_sum(v.lam))
    if tower_kind == "brauer":
        one = ctx.one
        gap = (v.n - v.size()) // 2
        return ctx.rational(gap) * (one - ctx.var("delta")) + ctx.rational(
            content_sum(v.lam)
        )
    if tower_kind == "bmw":
        return ctx.var("rho", -(v.n - v.size())) * ctx.var("q", 2 * content_sum(v.lam))
    if tower_kind == "tl":
        return ctx.var("qhalf", 2 * content_sum(v.lam))
    raise ValueError(tower_kind)


def alpha_or_d(tower_kind: str, ctx, v):
    """The quotient-tower scalar: alpha(lambda) for multiplicative towers,
    d(lambda) for additive ones (exposed alongside beta)."""
    if tower_kind == "sym":
        return ctx.rational(content_sum(v.lam))
    if tower_kind == "hecke":
        return ctx.var("q", content_sum(v.lam))
    if tower_kind == "brauer":
        return ctx.rational(content_sum(v.lam))
    if tower_kind == "bmw":
        return ctx.var("q", 2 * content_sum(v.lam))
    if tower_kind == "tl":
        return ctx.var("qhalf", 2 * content_sum(v.lam))
    raise ValueError(tower_kind)


def step_scalar(tower_kind: str, ctx, prev, nxt):
    """kappa for the edge prev -> nxt, via the closed per-box forms."""
    if tower_kind == "tl":
        diff = content_sum(nxt.lam) - content_sum(prev.lam)
        return ctx.var("qhalf", 2 * diff)
    if tower_kind in ("sym", "hecke"):
        r, c = added_box(prev.lam, nxt.lam)
        kap = c - r
        return ctx.rational(kap) if tower_kind == "sym" else ctx.var("q", kap)
    if tower_kind == "brauer":
        if nxt.size() == prev.size() + 1:
            r, c = added_box(prev.lam, nxt.lam)
            return ctx.rational(c - r)
        r, c = added_box(nxt.lam, prev.lam)
        return (ctx.one - ctx.var("delta")) - ctx.rational(c - r)
    if tower_kind == "bmw":
        if nxt.size() == prev.size() + 1:
            r, c = added_box(prev.lam, nxt.lam)
            return ctx.var("q", 2 * (c - r))
        r, c = added_box(nxt.lam, prev.lam)
        return ctx.var("rho", -2) * ctx.var("q", -2 * (c - r))
    raise ValueError(tower_kind)


def scalars(tower_kind: str, ctx, v) -> dict:
    """beta plus the quotient-level alpha/d for the vertex."""
    key = "alpha" if is_multiplicative(tower_kind) else "d"
    return {"beta": beta_scalar(tower_kind, ctx, v), key: alpha_or_d(tower_kind, ctx, v)}


def kappa_of_path(tower_kind: str, ctx, path: UpDownPath, j: int):
    """kappa(j, t): the step scalar of the j-th edge of the path (1-based)."""
    assert 1 <= j < len(path)
    return step_scalar(tower_kind, ctx, path[j - 1], path[j])


def kappa_values_at(tower_kind: str, ctx, j: int) -> list:
    """K(j): all step scalars over edges from level j-1 to level j."""
    lat = lattice(lattice_kind_for(tower_kind))
    out = []
    for v in lat.vertices_at(j - 1):
        for w in lat.up_edges(v):
            kap = step_scalar(tower_kind, ctx, v, w)
            if kap not in out:
                out.append(kap)
    return out


# -- tableau helpers (Young lattice only) ---------------------------------

def path_to_tableau(path: UpDownPath) -> tuple[tuple[int, ...], ...]:
    """Rows of the standard tableau recorded by a Young-lattice path."""
    lam = path[-1].lam
    rows = [[0] * r for r in lam]
    for j in range(1, len(path)):
        r, c = added_box(path[j - 1].lam, path[j].lam)
        rows[r][c] = j
    return tuple(tuple(r) for r in rows)


def superstandard_tableau(lam: Partition) -> tuple[tuple[int, ...], ...]:
    """Row-reading filling: 1..lam_1 in the first row, and so on."""
    rows = []
    nxt = 1
    for r in lam:
        rows.append(tuple(range(nxt, nxt + r)))
        nxt += r
    return tuple(rows)


def tableau_word(t: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    """d(t): 0-based one-line permutation carrying the row-reading
    superstandard filling to t (entry k of t^lam is replaced by w[k-1]+1)."""
    flat = [entry for row in t for entry in row]
    return tuple(e - 1 for e in flat)
