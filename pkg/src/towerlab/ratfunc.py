"""Exact arithmetic over the generic ground rings and their fraction fields.

Scalars come in two flavours, chosen by the ring context:

* symbolic mode: `RationalFunction` over Q(x1, ..., xk) with a unique
  normal form (coprime numerator/denominator, primitive denominator with
  positive leading coefficient), so equality is structural;
* specialized mode: plain `fractions.Fraction`, with every specialization
  guarded so that a vanishing denominator raises `GenericityViolation`
  instead of silently producing garbage.

Both flavours support +, -, *, /, ** and truth-testing, and all algebra,
module and verification code is written against that common surface.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DivisionByZero, GenericityViolation

Monomial = tuple[int, ...]


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    # gcd on Q: gcd of numerators over lcm of denominators (positive).
    num = math.gcd(a.numerator, b.numerator)
    den = abs(a.denominator * b.denominator) // math.gcd(a.denominator, b.denominator)
    return Fraction(num, den)


def _grlex_key(mono: Monomial) -> tuple:
    return (sum(mono), mono)


class MultiPoly:
    """Sparse multivariate polynomial with Fraction coefficients.

    Exponents are nonnegative; Laurent behaviour lives in RationalFunction
    denominators.  No zero coefficients are stored.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[Monomial, Fraction] | None = None):
        self.nvars = nvars
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    assert len(mono) == nvars and all(e >= 0 for e in mono)
                    self.terms[mono] = c

    @classmethod
    def const(cls, nvars: int, c) -> "MultiPoly":
        c = Fraction(c)
        if not c:
            return cls(nvars)
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, index: int, power: int = 1) -> "MultiPoly":
        assert 0 <= index < nvars and power >= 0
        mono = tuple(power if i == index else 0 for i in range(nvars))
        return cls(nvars, {mono: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_value(self) -> Fraction:
        assert self.is_constant()
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, Fraction(0)) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return MultiPoly(self.nvars, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        if not self.terms or not other.terms:
            return MultiPoly(self.nvars)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(mono, Fraction(0)) + c1 * c2
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        return MultiPoly(self.nvars, out)

    def scale(self, c: Fraction) -> "MultiPoly":
        if not c:
            return MultiPoly(self.nvars)
        return MultiPoly(self.nvars, {m: cc * c for m, cc in self.terms.items()})

    def __pow__(self, k: int) -> "MultiPoly":
        assert k >= 0
        out = MultiPoly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def leading(self) -> tuple[Monomial, Fraction]:
        mono = max(self.terms, key=_grlex_key)
        return mono, self.terms[mono]

    def degree_in(self, v: int) -> int:
        if not self.terms:
            return -1
        return max(m[v] for m in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def content(self) -> Fraction:
        """Positive rational c with self/c integer, coprime coefficients."""
        c = Fraction(0)
        for coeff in self.terms.values():
            c = _frac_gcd(c, coeff)
        return c if c else Fraction(1)

    def signed_content(self) -> Fraction:
        """Content carrying the sign of the grlex-leading coefficient."""
        if not self.terms:
            return Fraction(1)
        c = self.content()
        return c if self.leading()[1] > 0 else -c

    def primitive(self) -> "MultiPoly":
        return self.scale(1 / self.signed_content())

    def coeffs_in(self, v: int) -> list["MultiPoly"]:
        """Coefficients [c_0, ..., c_d] of self viewed in the variable v."""
        d = self.degree_in(v)
        out = [MultiPoly(self.nvars) for _ in range(d + 1)]
        for m, c in self.terms.items():
            rest = tuple(0 if i == v else e for i, e in enumerate(m))
            out[m[v]] = out[m[v]] + MultiPoly(self.nvars, {rest: c})
        return out

    @staticmethod
    def from_coeffs_in(v: int, coeffs: list["MultiPoly"], nvars: int) -> "MultiPoly":
        out = MultiPoly(nvars)
        for e, c in enumerate(coeffs):
            out = out + c * MultiPoly.variable(nvars, v, e)
        return out

    def evaluate(self, values: list[Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for e, val in zip(m, values):
                if e:
                    term *= val**e
            total += term
        return total

    def text(self, names: tuple[str, ...]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[mono]
            factors = []
            for name, e in zip(names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.terms!r})"


def _exact_div(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Exact multivariate division; raises if the division is not exact."""
    if b.is_zero():
        raise DivisionByZero("polynomial division by zero")
    q = MultiPoly(a.nvars)
    r = a
    bl_mono, bl_coeff = b.leading()
    while not r.is_zero():
        rl_mono, rl_coeff = r.leading()
        diff = tuple(x - y for x, y in zip(rl_mono, bl_mono))
        if any(d < 0 for d in diff):
            raise ArithmeticError("inexact polynomial division")
        t = MultiPoly(a.nvars, {diff: rl_coeff / bl_coeff})
        q = q + t
        r = r - t * b
    return q


def _prem(a: list[MultiPoly], b: list[MultiPoly], nvars: int) -> list[MultiPoly]:
    """Standardized pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b,
    for dense univariate polys with MultiPoly coefficients."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    e = (len(a) - 1) - db + 1
    while a and a[-1].is_zero():
        a.pop()
    while a and len(a) - 1 >= db:
        da, la = len(a) - 1, a[-1]
        a = [c * lb for c in a]
        shift = da - db
        for i, c in enumerate(b):
            a[i + shift] = a[i + shift] - c * la
        while a and a[-1].is_zero():
            a.pop()
        e -= 1
    scale = lb**e if e > 0 else None
    if scale is not None and a:
        a = [c * scale for c in a]
    return a if a else [MultiPoly(nvars)]


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """A gcd of a and b, normalized like a RationalFunction denominator.

    Subresultant PRS with content extraction; constants follow the
    fraction-field convention gcd(c, c') = 1.
    """
    assert a.nvars == b.nvars
    nvars = a.nvars
    if a.is_zero() and b.is_zero():
        return MultiPoly(nvars)
    if a.is_zero():
        p = b.primitive()
        return MultiPoly.const(nvars, 1) if p.is_constant() else p
    if b.is_zero():
        p = a.primitive()
        return MultiPoly.const(nvars, 1) if p.is_constant() else p
    if a.is_constant() or b.is_constant():
        return MultiPoly.const(nvars, 1)
    if len(a.terms) == 1 or len(b.terms) == 1:
        # the gcd with a monomial is the common monomial factor
        def min_exps(p):
            out = None
            for m in p.terms:
                out = m if out is None else tuple(min(x, y) for x, y in zip(out, m))
            return out

        mono = tuple(min(x, y) for x, y in zip(min_exps(a), min_exps(b)))
        return MultiPoly(nvars, {mono: Fraction(1)})

    # Main variable: the last one appearing in either operand.
    v = max(
        i
        for i in range(nvars)
        if a.degree_in(i) > 0 or b.degree_in(i) > 0
    )
    ca, cb = a.coeffs_in(v), b.coeffs_in(v)
    cont_a = _list_gcd(ca)
    cont_b = _list_gcd(cb)
    cont = poly_gcd(cont_a, cont_b)
    pa = [_exact_div(c, cont_a) for c in ca]
    pb = [_exact_div(c, cont_b) for c in cb]
    pp = _subresultant_pp_gcd(pa, pb, v, nvars)
    out = (cont * pp).primitive()
    return MultiPoly.const(nvars, 1) if out.is_constant() else out


def _list_gcd(polys: list[MultiPoly]) -> MultiPoly:
    out = MultiPoly(polys[0].nvars)
    for p in polys:
        if p.is_zero():
            continue
        out = poly_gcd(out, p) if not out.is_zero() else p.primitive()
        if out.is_constant():
            return MultiPoly.const(polys[0].nvars, 1)
    return out if not out.is_zero() else MultiPoly.const(polys[0].nvars, 1)


def _subresultant_pp_gcd(
    r0: list[MultiPoly], r1: list[MultiPoly], v: int, nvars: int
) -> MultiPoly:
    """Primitive gcd of primitive univariate(-in-v) polynomials."""
    if len(r0) < len(r1):
        r0, r1 = r1, r0
    one = MultiPoly.const(nvars, 1)
    g, h = one, one
    while True:
        d = len(r0) - len(r1)
        rem = _prem(r0, r1, nvars)
        if all(c.is_zero() for c in rem):
            prim = _list_gcd(r1)
            r1 = [_exact_div(c, prim) for c in r1]
            return MultiPoly.from_coeffs_in(v, r1, nvars)
        if len(rem) == 1:
            return one
        denom = g * (h**d)
        r0, r1 = r1, [_exact_div(c, denom) for c in rem]
        g = r0[-1]
        if d >= 1:
            h = _exact_div(g**d, h ** (d - 1)) if d > 1 else g
        # d == 0 keeps h unchanged


class RationalFunction:
    """Quotient of MultiPolys in normal form: structural equality is
    mathematical equality."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly, _normalized: bool = False):
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if _normalized:
            self.num, self.den = num, den
            return
        if num.is_zero():
            self.num = MultiPoly(num.nvars)
            self.den = MultiPoly.const(num.nvars, 1)
            return
        g = poly_gcd(num, den)
        if not (g.is_constant() and g.constant_value() == 1):
            num = _exact_div(num, g)
            den = _exact_div(den, g)
        c = den.signed_content()
        if c != 1:
            den = den.scale(1 / c)
            num = num.scale(1 / c)
        self.num, self.den = num, den

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, nvars: int, c) -> "RationalFunction":
        return cls(MultiPoly.const(nvars, c), MultiPoly.const(nvars, 1), _normalized=True)

    @classmethod
    def variable(cls, nvars: int, index: int, power: int = 1) -> "RationalFunction":
        one = MultiPoly.const(nvars, 1)
        if power >= 0:
            return cls(MultiPoly.variable(nvars, index, power), one, _normalized=True)
        return cls(one, MultiPoly.variable(nvars, index, -power), _normalized=True)

    # -- predicates ----------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = RationalFunction.const(self.num.nvars, other)
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def _den_is_one(self) -> bool:
        return self.den.is_constant()  # normalized constant denominators are 1

    def _is_rational_const(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        if self._den_is_one() and other._den_is_one():
            return RationalFunction(
                self.num + other.num, self.den, _normalized=True
            )
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, _normalized=True)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        if self._den_is_one() and other._den_is_one():
            return RationalFunction(
                self.num - other.num, self.den, _normalized=True
            )
        if self.den == other.den:
            return RationalFunction(self.num - other.num, self.den)
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        # scaling by a rational constant keeps the normal form
        if other._is_rational_const():
            if other.is_zero():
                return RationalFunction.const(self.num.nvars, 0)
            return RationalFunction(
                self.num.scale(other.num.constant_value()), self.den, _normalized=True
            )
        if self._is_rational_const():
            if self.is_zero():
                return RationalFunction.const(self.num.nvars, 0)
            return RationalFunction(
                other.num.scale(self.num.constant_value()), other.den, _normalized=True
            )
        if self._den_is_one() and other._den_is_one():
            return RationalFunction(self.num * other.num, self.den, _normalized=True)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero():
            raise DivisionByZero("division of rational functions by zero")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return RationalFunction.const(self.num.nvars, 1) / (self ** (-k))
        out = RationalFunction.const(self.num.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def evaluate(self, values: list[Fraction]) -> Fraction:
        den = self.den.evaluate(values)
        if den == 0:
            raise GenericityViolation(
                f"denominator {self.den.text(('x',) * self.num.nvars)} vanishes"
            )
        return self.num.evaluate(values) / den

    def text(self, names: tuple[str, ...]) -> str:
        if self.den.is_constant() and self.den.constant_value() == 1:
            return self.num.text(names)
        num, den = self.num.text(names), self.den.text(names)
        return f"({num})/({den})"

    def __repr__(self):
        return f"RF[{self.num!r}/{self.den!r}]"


@dataclass(frozen=True)
class RingContext:
    """Ground-ring context: ordered parameter names plus an optional
    rational specialization (one nonzero value per parameter).

    An empty variable tuple is allowed and means plain Q (the symmetric
    group tower needs no parameter).
    """

    variables: tuple[str, ...]
    assignments: dict[str, Fraction] | None = field(default=None)

    def __post_init__(self):
        assert len(set(self.variables)) == len(self.variables)
        if self.assignments is not None:
            missing = set(self.variables) - set(self.assignments)
            assert not missing, f"missing assignments: {missing}"
            for name in self.variables:
                if self.assignments[name] == 0:
                    raise GenericityViolation(
                        f"specialized value for {name} must be nonzero", parameter=name
                    )

    @property
    def mode(self) -> str:
        return "specialized" if self.assignments is not None else "symbolic"

    @property
    def nvars(self) -> int:
        return len(self.variables)

    # -- scalar constructors -------------------------------------------
    @property
    def zero(self):
        if self.assignments is not None or not self.variables:
            return Fraction(0)
        return RationalFunction.const(self.nvars, 0)

    @property
    def one(self):
        return self.rational(1)

    def rational(self, c):
        c = Fraction(c)
        if self.assignments is not None or not self.variables:
            return c
        return RationalFunction.const(self.nvars, c)

    def var(self, name: str, power: int = 1):
        i = self.variables.index(name)
        if self.assignments is not None:
            return self.assignments[self.variables[i]] ** power
        return RationalFunction.variable(self.nvars, i, power)

    def scalar_from_symbolic(self, s: RationalFunction):
        """Coerce a symbolic scalar over the same variables into this context."""
        if self.assignments is None:
            return s
        return specialize(s, self)

    def is_scalar_zero(self, s) -> bool:
        return not s

    def text(self, s) -> str:
        if isinstance(s, RationalFunction):
            return s.text(self.variables)
        return str(s)

    def __hash__(self):
        items = tuple(sorted(self.assignments.items())) if self.assignments else None
        return hash((self.variables, items))

    def __eq__(self, other):
        return (
            isinstance(other, RingContext)
            and self.variables == other.variables
            and self.assignments == other.assignments
        )


def rf_arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    """Field arithmetic entry point; op is one of add|sub|mul|div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def specialize(x: RationalFunction, ctx: RingContext) -> Fraction:
    """Evaluate x at the context's assignments.

    Raises GenericityViolation when the denominator vanishes: the caller
    picked a non-generic parameter and must abort, not guess.
    """
    assert ctx.assignments is not None, "specialize needs a specialized context"
    values = [ctx.assignments[v] for v in ctx.variables]
    den = x.den.evaluate(values)
    if den == 0:
        raise GenericityViolation(
            f"denominator {x.den.text(ctx.variables)} vanishes at "
            + ", ".join(f"{v}={ctx.assignments[v]}" for v in ctx.variables),
            parameter=", ".join(ctx.variables),
        )
    return x.num.evaluate(values) / den


# Ready-made contexts for the five towers. The BMW ground ring stores
# delta as the derived expression (rho^-1 - rho)/(q^-1 - q) + 1 over
# {rho, q}; the TL ring uses the single variable q^(1/2) with
# delta = q^(1/2) + q^(-1/2).

def brauer_context(delta: Fraction | None = None) -> RingContext:
    if delta is None:
        return RingContext(("delta",))
    return RingContext(("delta",), {"delta": Fraction(delta)})


def sym_context() -> RingContext:
    return RingContext(())


def hecke_context(q: Fraction | None = None) -> RingContext:
    if q is None:
        return RingContext(("q",))
    return RingContext(("q",), {"q": Fraction(q)})


def tl_context(qhalf: Fraction | None = None) -> RingContext:
    if qhalf is None:
        return RingContext(("qhalf",))
    return RingContext(("qhalf",), {"qhalf": Fraction(qhalf)})


def bmw_context(rho: Fraction | None = None, q: Fraction | None = None) -> RingContext:
    if rho is None and q is None:
        return RingContext(("rho", "q"))
    assert rho is not None and q is not None
    ctx = RingContext(("rho", "q"), {"rho": Fraction(rho), "q": Fraction(q)})
    qv = ctx.var("q")
    if qv == qv ** (-1):
        raise GenericityViolation("q - q^-1 = 0 is non-generic for BMW", parameter="q")
    return ctx


def bmw_delta(ctx: RingContext):
    """delta = (rho^-1 - rho)/(q^-1 - q) + 1 in a BMW context."""
    rho, q = ctx.var("rho"), ctx.var("q")
    num = rho ** (-1) - rho
    den = q ** (-1) - q
    if not den:
        raise GenericityViolation("q - q^-1 = 0 is non-generic for BMW", parameter="q")
    return num / den + ctx.one


def tl_delta(ctx: RingContext):
    """delta = q^(1/2) + q^(-1/2) in a TL context."""
    return ctx.var("qhalf") + ctx.var("qhalf", -1)
