"""Jucys-Murphy families for the five towers, built by their defining
recursions, together with the per-index gamma scalars and the quotient-tower
family they must project onto."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .towers import AlgebraElement, Tower


@dataclass(frozen=True)
class JMFamily:
    tower: Tower
    n: int
    kind: str  # "multiplicative" | "additive"
    elements: tuple[AlgebraElement, ...]  # L_1 .. L_n at rank n
    gammas: tuple  # gamma_1 .. gamma_{n-1}
    quotient_elements: tuple[AlgebraElement, ...]  # L^(0)_1 .. L^(0)_n

    def central_element(self) -> AlgebraElement:
        """L_1 * ... * L_n (multiplicative) or L_1 + ... + L_n (additive)."""
        out = self.elements[0]
        for el in self.elements[1:]:
            out = out * el if self.kind == "multiplicative" else out + el
        return out

    def partial_central(self, m: int) -> AlgebraElement:
        out = self.elements[0]
        for el in self.elements[1 : m]:
            out = out * el if self.kind == "multiplicative" else out + el
        return out


def jm_kind(tower_kind: str) -> str:
    return (
        "multiplicative" if tower_kind in ("hecke", "bmw", "tl") else "additive"
    )


@lru_cache(maxsize=None)
def _jm_cached(tower: Tower, n: int) -> JMFamily:
    ctx = tower.ctx
    kind = jm_kind(tower.kind)
    els: list[AlgebraElement] = []
    gammas: list = []

    if tower.kind == "sym":
        els.append(tower.zero(n))
        for j in range(1, n):
            s = tower.generator("s", j, n)
            els.append(s * els[-1] * s + s)
    elif tower.kind == "brauer":
        els.append(tower.zero(n))
        for j in range(1, n):
            s = tower.generator("s", j, n)
            e = tower.generator("e", j, n)
            els.append(s * els[-1] * s + s - e)
        gammas = [ctx.one - ctx.var("delta")] * (n - 1)
    elif tower.kind == "hecke":
        els.append(tower.one(n))
        qinv = ctx.one / tower.param
        for j in range(1, n):
            t = tower.generator("T", j, n)
            els.append((t * els[-1] * t).scale(qinv))
    elif tower.kind == "bmw":
        els.append(tower.one(n))
        for j in range(1, n):
            g = tower.generator("g", j, n)
            els.append(g * els[-1] * g)
        gammas = [ctx.var("rho", -2)] * (n - 1)
    elif tower.kind == "tl":
        # images of the Hecke JM elements under T_j -> q^(1/2) e_j - 1,
        # with the Hecke parameter q = qhalf^2
        els.append(tower.one(n))
        qinv = ctx.var("qhalf", -2)
        for j in range(1, n):
            phi_t = tower.generator("e", j, n).scale(ctx.var("qhalf")) - tower.one(n)
            els.append((phi_t * els[-1] * phi_t).scale(qinv))
        gammas = [ctx.var("qhalf", 2 * (2 - j)) for j in range(1, n)]
    else:
        raise ValueError(f"no JM family for tower {tower.kind!r}")

    quotient = tuple(el.quotient() for el in els)
    return JMFamily(tower, n, kind, tuple(els), tuple(gammas), quotient)


def jm_elements(tower: Tower, n: int) -> JMFamily:
    """The JM family L_1..L_n of the tower at rank n, with gamma values and
    the quotient-tower images."""
    assert n >= 1
    return _jm_cached(tower, n)
