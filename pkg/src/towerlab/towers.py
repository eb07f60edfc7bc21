"""The concrete towers (TL, Brauer, symmetric group, Hecke, BMW) as algebras
with distinguished bases: multiplication, involution, inclusions, quotient
maps, and dimensions.

An AlgebraElement is a sparse linear combination of basis labels tagged by
tower and rank.  Basis labels are BrauerDiagrams for the three diagram
towers (planar ones for TL, skein normal forms for BMW) and one-line
permutations for Sym and Hecke.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from . import perms
from .diagrams import (
    BrauerDiagram,
    all_diagrams,
    catalan,
    compose,
    double_factorial,
    generator_diagram,
    identity_diagram,
    include_diagram,
    planar_diagrams,
)
from .errors import IndexOutOfRange, RankMismatch, TowerMismatch
from .ratfunc import (
    RingContext,
    bmw_context,
    bmw_delta,
    brauer_context,
    hecke_context,
    sym_context,
    tl_context,
    tl_delta,
)


@dataclass(frozen=True)
class AlgebraElement:
    tower: "Tower"
    n: int
    coeffs: tuple  # tuple of (label, scalar), kept sorted by label key

    @property
    def terms(self) -> dict:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self.coeffs)
        for label, c in other.coeffs:
            s = out.get(label, None)
            s = c if s is None else s + c
            if s:
                out[label] = s
            else:
                out.pop(label, None)
        return self.tower.element(self.n, out)

    def __neg__(self) -> "AlgebraElement":
        return self.tower.element(self.n, {l: -c for l, c in self.coeffs})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, scalar) -> "AlgebraElement":
        if not scalar:
            return self.tower.zero(self.n)
        return self.tower.element(self.n, {l: c * scalar for l, c in self.coeffs})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out: dict = {}
        for l1, c1 in self.coeffs:
            for l2, c2 in other.coeffs:
                c12 = c1 * c2
                for label, c in self.tower.mul_labels(l1, l2):
                    s = out.get(label, None)
                    s = c12 * c if s is None else s + c12 * c
                    if s:
                        out[label] = s
                    else:
                        out.pop(label, None)
        return self.tower.element(self.n, out)

    def __pow__(self, k: int) -> "AlgebraElement":
        assert k >= 0
        out = self.tower.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def involve(self) -> "AlgebraElement":
        out: dict = {}
        for l, c in self.coeffs:
            for label, factor in self.tower.involve_label(l):
                s = out.get(label, None)
                add = c * factor
                s = add if s is None else s + add
                if s:
                    out[label] = s
                else:
                    out.pop(label, None)
        return self.tower.element(self.n, out)

    def include(self, m: int) -> "AlgebraElement":
        assert m >= self.n
        return self.tower.element(
            m, {self.tower.include_label(l, self.n, m): c for l, c in self.coeffs}
        )

    def quotient(self) -> "AlgebraElement":
        return self.tower.quotient_elem(self)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraElement)
            and self.tower is other.tower
            and self.n == other.n
            and dict(self.coeffs) == dict(other.coeffs)
        )

    def __hash__(self):
        return hash((id(self.tower), self.n, self.coeffs))

    def _check(self, other):
        if not isinstance(other, AlgebraElement) or other.tower is not self.tower:
            raise TowerMismatch("elements from different towers")
        if other.n != self.n:
            raise RankMismatch(f"ranks {self.n} and {other.n} differ")

    def to_json(self) -> dict:
        return {
            "tower": self.tower.kind,
            "n": self.n,
            "terms": [
                {"label": self.tower.label_text(l), "coeff": self.tower.ctx.text(c)}
                for l, c in self.coeffs
            ],
        }

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(
            f"({self.tower.ctx.text(c)})*{self.tower.label_text(l)}"
            for l, c in self.coeffs
        )


class Tower:
    """Common behaviour of a tower of algebras with a distinguished basis."""

    kind: str
    ctx: RingContext

    # -- element plumbing ------------------------------------------------
    def element(self, n: int, coeffs: dict) -> AlgebraElement:
        items = tuple(sorted(coeffs.items(), key=lambda kv: self.label_key(kv[0])))
        return AlgebraElement(self, n, items)

    def zero(self, n: int) -> AlgebraElement:
        return AlgebraElement(self, n, ())

    def one(self, n: int) -> AlgebraElement:
        return self.element(n, {self.unit_label(n): self.ctx.one})

    def from_label(self, n: int, label, scalar=None) -> AlgebraElement:
        return self.element(n, {label: scalar if scalar is not None else self.ctx.one})

    # -- hooks per tower ---------------------------------------------------
    def label_key(self, label):
        return label.pairs if isinstance(label, BrauerDiagram) else label

    def label_text(self, label) -> str:
        raise NotImplementedError

    def unit_label(self, n: int):
        raise NotImplementedError

    def basis(self, n: int) -> tuple:
        raise NotImplementedError

    def dimension(self, n: int) -> int:
        return len(self.basis(n))

    def mul_labels(self, l1, l2):
        raise NotImplementedError

    def involve_label(self, label):
        raise NotImplementedError

    def include_label(self, label, n: int, m: int):
        raise NotImplementedError

    def generator_keys(self, n: int) -> list[tuple[str, int]]:
        raise NotImplementedError

    def generator(self, kind: str, j: int, n: int) -> AlgebraElement:
        raise NotImplementedError

    def quotient_tower(self) -> "Tower":
        raise NotImplementedError

    def quotient_elem(self, elem: AlgebraElement) -> AlgebraElement:
        raise NotImplementedError

    def relations(self, n: int) -> list[tuple[str, AlgebraElement, AlgebraElement]]:
        raise NotImplementedError


class _DiagramTower(Tower):
    """Shared code for Brauer and TL (diagram bases, delta^r products)."""

    def __init__(self, ctx: RingContext, delta):
        self.ctx = ctx
        self._delta = delta
        self._delta_powers = {0: ctx.one}

    def delta_power(self, r: int):
        if r not in self._delta_powers:
            self._delta_powers[r] = self._delta_powers[r - 1] * self._delta
        return self._delta_powers[r]

    @property
    def delta(self):
        return self._delta

    def label_text(self, label) -> str:
        return label.text()

    def unit_label(self, n: int):
        return identity_diagram(n)

    def mul_labels(self, l1, l2):
        d, r = compose(l1, l2)
        return ((d, self.delta_power(r)),)

    def involve_label(self, label):
        return ((label.flip(), self.ctx.one),)

    def include_label(self, label, n: int, m: int):
        return include_diagram(label, m)

    def generator(self, kind: str, j: int, n: int) -> AlgebraElement:
        return self.from_label(n, generator_diagram(kind, j, n))


class BrauerTower(_DiagramTower):
    kind = "brauer"

    def __init__(self, ctx: RingContext):
        super().__init__(ctx, ctx.var("delta"))
        self._sym = SymTower(ctx)

    def basis(self, n: int):
        return all_diagrams(n)

    def dimension(self, n: int) -> int:
        return double_factorial(2 * n - 1) if n else 1

    def generator_keys(self, n: int):
        return [("s", j) for j in range(1, n)] + [("e", j) for j in range(1, n)]

    def quotient_tower(self):
        return self._sym

    def quotient_elem(self, elem):
        out = {}
        for d, c in elem.coeffs:
            if d.through_count() == elem.n:
                out[d.permutation()] = c
        return self._sym.element(elem.n, out)

    def relations(self, n: int):
        rel = []
        s = lambda i: self.generator("s", i, n)
        e = lambda i: self.generator("e", i, n)
        one = self.one(n)
        for i in range(1, n):
            rel.append((f"s{i}^2 = 1", s(i) * s(i), one))
            rel.append((f"e{i}^2 = delta*e{i}", e(i) * e(i), e(i).scale(self.delta)))
            rel.append((f"s{i}e{i} = e{i}", s(i) * e(i), e(i)))
            rel.append((f"e{i}s{i} = e{i}", e(i) * s(i), e(i)))
        for i in range(1, n - 1):
            rel.append(
                (f"s{i}s{i+1}s{i} = s{i+1}s{i}s{i+1}", s(i) * s(i + 1) * s(i), s(i + 1) * s(i) * s(i + 1))
            )
            for a, b in ((i, i + 1), (i + 1, i)):
                rel.append((f"e{a}e{b}e{a} = e{a}", e(a) * e(b) * e(a), e(a)))
            rel.append((f"s{i}e{i+1}e{i} = s{i+1}e{i}", s(i) * e(i + 1) * e(i), s(i + 1) * e(i)))
            rel.append((f"e{i}e{i+1}s{i} = e{i}s{i+1}", e(i) * e(i + 1) * s(i), e(i) * s(i + 1)))
        for i in range(1, n):
            for j in range(i + 2, n):
                rel.append((f"s{i}s{j} commute", s(i) * s(j), s(j) * s(i)))
                rel.append((f"e{i}e{j} commute", e(i) * e(j), e(j) * e(i)))
                rel.append((f"s{i}e{j} commute", s(i) * e(j), e(j) * s(i)))
        return rel


class TLTower(_DiagramTower):
    kind = "tl"

    def __init__(self, ctx: RingContext):
        super().__init__(ctx, tl_delta(ctx))
        self._trivial = TrivialTower(ctx, self)

    def basis(self, n: int):
        return planar_diagrams(n)

    def dimension(self, n: int) -> int:
        return catalan(n)

    def generator_keys(self, n: int):
        return [("e", j) for j in range(1, n)]

    def quotient_tower(self):
        return self._trivial

    def quotient_elem(self, elem):
        unit = identity_diagram(elem.n)
        out = {}
        for d, c in elem.coeffs:
            if d == unit:
                out["1"] = c
        return self._trivial.element(elem.n, out)

    def relations(self, n: int):
        rel = []
        e = lambda i: self.generator("e", i, n)
        for i in range(1, n):
            rel.append((f"e{i}^2 = delta*e{i}", e(i) * e(i), e(i).scale(self.delta)))
        for i in range(1, n - 1):
            for a, b in ((i, i + 1), (i + 1, i)):
                rel.append((f"e{a}e{b}e{a} = e{a}", e(a) * e(b) * e(a), e(a)))
        for i in range(1, n):
            for j in range(i + 2, n):
                rel.append((f"e{i}e{j} commute", e(i) * e(j), e(j) * e(i)))
        return rel


class TrivialTower(Tower):
    """Q_n = R for the TL tower: one basis label per rank."""

    kind = "trivial"

    def __init__(self, ctx: RingContext, parent=None):
        self.ctx = ctx
        self._parent = parent

    def label_text(self, label):
        return "1"

    def unit_label(self, n: int):
        return "1"

    def basis(self, n: int):
        return ("1",)

    def mul_labels(self, l1, l2):
        return (("1", self.ctx.one),)

    def involve_label(self, label):
        return (("1", self.ctx.one),)

    def include_label(self, label, n, m):
        return "1"

    def generator_keys(self, n: int):
        return []

    def quotient_tower(self):
        return self

    def quotient_elem(self, elem):
        return elem

    def relations(self, n: int):
        return []


class SymTower(Tower):
    kind = "sym"

    def __init__(self, ctx: RingContext | None = None):
        self.ctx = ctx if ctx is not None else sym_context()

    def label_text(self, label):
        return "[" + ",".join(str(i + 1) for i in label) + "]"

    def unit_label(self, n: int):
        return perms.identity(n)

    def basis(self, n: int):
        return perms.all_perms(n)

    def dimension(self, n: int) -> int:
        return factorial(n)

    def mul_labels(self, l1, l2):
        return ((perms.mul(l1, l2), self.ctx.one),)

    def involve_label(self, label):
        return ((perms.inverse(label), self.ctx.one),)

    def include_label(self, label, n, m):
        return label + tuple(range(n, m))

    def generator_keys(self, n: int):
        return [("s", j) for j in range(1, n)]

    def generator(self, kind: str, j: int, n: int) -> AlgebraElement:
        if kind != "s" or not 1 <= j <= n - 1:
            raise IndexOutOfRange(f"no generator {kind}_{j} at rank {n}")
        return self.from_label(n, perms.transposition(j, n))

    def quotient_tower(self):
        return self

    def quotient_elem(self, elem):
        return elem

    def relations(self, n: int):
        rel = []
        s = lambda i: self.generator("s", i, n)
        one = self.one(n)
        for i in range(1, n):
            rel.append((f"s{i}^2 = 1", s(i) * s(i), one))
        for i in range(1, n - 1):
            rel.append(
                (f"braid {i},{i+1}", s(i) * s(i + 1) * s(i), s(i + 1) * s(i) * s(i + 1))
            )
        for i in range(1, n):
            for j in range(i + 2, n):
                rel.append((f"s{i}s{j} commute", s(i) * s(j), s(j) * s(i)))
        return rel


class HeckeTower(Tower):
    """Iwahori-Hecke algebra on the T_w basis.  The quadratic relation is
    (T_j - q)(T_j + 1) = 0; `param` is the scalar playing the role of q
    (q^2 for the BMW quotient, qhalf^2 for the TL bridge)."""

    kind = "hecke"

    def __init__(self, ctx: RingContext | None = None, param=None):
        self.ctx = ctx if ctx is not None else hecke_context()
        self.param = param if param is not None else self.ctx.var("q")

    def label_text(self, label):
        return "T[" + ",".join(str(i + 1) for i in label) + "]"

    def unit_label(self, n: int):
        return perms.identity(n)

    def basis(self, n: int):
        return perms.all_perms(n)

    def dimension(self, n: int) -> int:
        return factorial(n)

    def mul_labels(self, l1, l2):
        q = self.param
        state = {l1: self.ctx.one}
        for i in perms.reduced_word(l2):
            new: dict = {}
            for w, c in state.items():
                ws = perms.mul(w, perms.transposition(i, len(w)))
                if perms.right_descent_increases(w, i):
                    new[ws] = new.get(ws, self.ctx.zero) + c
                else:
                    new[ws] = new.get(ws, self.ctx.zero) + c * q
                    new[w] = new.get(w, self.ctx.zero) + c * (q - self.ctx.one)
            state = {w: c for w, c in new.items() if c}
        return tuple(state.items())

    def involve_label(self, label):
        return ((perms.inverse(label), self.ctx.one),)

    def include_label(self, label, n, m):
        return label + tuple(range(n, m))

    def generator_keys(self, n: int):
        return [("T", j) for j in range(1, n)]

    def generator(self, kind: str, j: int, n: int) -> AlgebraElement:
        if kind != "T" or not 1 <= j <= n - 1:
            raise IndexOutOfRange(f"no generator {kind}_{j} at rank {n}")
        return self.from_label(n, perms.transposition(j, n))

    def quotient_tower(self):
        return self

    def quotient_elem(self, elem):
        return elem

    def relations(self, n: int):
        rel = []
        T = lambda i: self.generator("T", i, n)
        one = self.one(n)
        q = self.param
        for i in range(1, n):
            quad = T(i) * T(i) - T(i).scale(q - self.ctx.one) - one.scale(q)
            rel.append(((f"(T{i}-q)(T{i}+1) = 0"), quad, self.zero(n)))
        for i in range(1, n - 1):
            rel.append(
                (f"braid {i},{i+1}", T(i) * T(i + 1) * T(i), T(i + 1) * T(i) * T(i + 1))
            )
        for i in range(1, n):
            for j in range(i + 2, n):
                rel.append((f"T{i}T{j} commute", T(i) * T(j), T(j) * T(i)))
        return rel


def left_mult_matrix(a: AlgebraElement) -> list[list]:
    """Matrix of x -> a*x in the distinguished basis (column j = image of
    basis label j)."""
    tower, n = a.tower, a.n
    basis = tower.basis(n)
    index = {label: i for i, label in enumerate(basis)}
    ctx = tower.ctx
    cols = []
    for label in basis:
        col = [ctx.zero] * len(basis)
        prod = a * tower.from_label(n, label)
        for l, c in prod.coeffs:
            col[index[l]] = c
        cols.append(col)
    return [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]


@lru_cache(maxsize=None)
def _tower_cache(kind: str, ctx: RingContext):
    if kind == "brauer":
        return BrauerTower(ctx)
    if kind == "tl":
        return TLTower(ctx)
    if kind == "sym":
        return SymTower(ctx)
    if kind == "hecke":
        return HeckeTower(ctx)
    if kind == "bmw":
        from .skein import BMWTower

        return BMWTower(ctx)
    raise ValueError(f"unknown tower kind {kind!r}")


def make_tower(kind: str, ctx: RingContext | None = None) -> Tower:
    """Tower factory with the standard context defaults."""
    if ctx is None:
        ctx = {
            "brauer": brauer_context,
            "tl": tl_context,
            "sym": sym_context,
            "hecke": hecke_context,
            "bmw": bmw_context,
        }[kind]()
    return _tower_cache(kind, ctx)
