"""(n,n)-Brauer diagram combinatorics: composition with loop counting,
planarity, the flip involution, and generator diagrams.

Vertices are encoded as integers under the fixed order
top1 < ... < topn < bot1 < ... < botn, i.e. top i -> i-1 and
bot i -> n+i-1 (0-based).  A diagram is the sorted tuple of its matched
pairs, each pair stored (min, max), so equal diagrams have identical
encodings.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce

from .errors import IndexOutOfRange, RankMismatch


@dataclass(frozen=True)
class BrauerDiagram:
    n: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for a, b in self.pairs:
            assert 0 <= a < b < 2 * self.n
            seen.update((a, b))
        assert len(seen) == 2 * self.n, "not a perfect matching"
        assert self.pairs == tuple(sorted(self.pairs))

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "BrauerDiagram":
        canon = tuple(sorted((min(a, b), max(a, b)) for a, b in pairs))
        return cls(n, canon)

    def partner(self) -> dict[int, int]:
        out = {}
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out

    def through_count(self) -> int:
        n = self.n
        return sum(1 for a, b in self.pairs if a < n <= b)

    def is_permutation(self) -> bool:
        return self.through_count() == self.n

    def permutation(self) -> tuple[int, ...]:
        """One-line permutation w with strand bot i -> top w(i) (0-based)."""
        assert self.is_permutation()
        n = self.n
        w = [0] * n
        for a, b in self.pairs:
            w[b - n] = a
        return tuple(w)

    def flip(self) -> "BrauerDiagram":
        n = self.n
        return BrauerDiagram.from_pairs(
            n, ((v + n if v < n else v - n, w + n if w < n else w - n) for v, w in self.pairs)
        )

    def is_planar(self) -> bool:
        """No two strands interleave in the boundary circle order
        (top left-to-right, then bottom right-to-left)."""
        n = self.n

        def pos(v: int) -> int:
            return v if v < n else 3 * n - 1 - v

        chords = [tuple(sorted((pos(a), pos(b)))) for a, b in self.pairs]
        for i in range(len(chords)):
            for j in range(i + 1, len(chords)):
                (a1, a2), (b1, b2) = chords[i], chords[j]
                if a1 < b1 < a2 < b2 or b1 < a1 < b2 < a2:
                    return False
        return True

    def text(self) -> str:
        def name(v: int) -> str:
            return f"t{v + 1}" if v < self.n else f"b{v - self.n + 1}"

        return "[" + ",".join(f"({name(a)},{name(b)})" for a, b in self.pairs) + "]"

    def __repr__(self):
        return f"BrauerDiagram({self.n}, {self.text()})"


def identity_diagram(n: int) -> BrauerDiagram:
    return BrauerDiagram.from_pairs(n, ((i, n + i) for i in range(n)))


def generator_diagram(kind: str, j: int, n: int) -> BrauerDiagram:
    """e_j joins top/bottom j,j+1; s_j crosses strands j,j+1; id is vertical."""
    if kind == "id":
        return identity_diagram(n)
    if not 1 <= j <= n - 1:
        raise IndexOutOfRange(f"{kind}_{j} needs 1 <= j <= {n - 1}")
    pairs = [(i, n + i) for i in range(n) if i not in (j - 1, j)]
    if kind == "e":
        pairs += [(j - 1, j), (n + j - 1, n + j)]
    elif kind == "s":
        pairs += [(j - 1, n + j), (j, n + j - 1)]
    else:
        raise ValueError(f"unknown generator kind {kind!r}")
    return BrauerDiagram.from_pairs(n, pairs)


def permutation_diagram(w: tuple[int, ...]) -> BrauerDiagram:
    n = len(w)
    return BrauerDiagram.from_pairs(n, ((w[i], n + i) for i in range(n)))


def compose(a: BrauerDiagram, b: BrauerDiagram) -> tuple[BrauerDiagram, int]:
    """Trace-through product ab (b stacked over a) and the number of
    closed loops removed.  The result's top boundary is b's, bottom is a's."""
    if a.n != b.n:
        raise RankMismatch(f"compose needs equal ranks, got {a.n} and {b.n}")
    n = a.n
    pa, pb = a.partner(), b.partner()

    def across(side: str, v: int):
        # a's top i is glued to b's bottom i
        if side == "a" and v < n:
            return ("b", n + v)
        if side == "b" and v >= n:
            return ("a", v - n)
        return None

    visited: set[tuple[str, int]] = set()
    pairs = []
    boundary = [("b", i) for i in range(n)] + [("a", n + i) for i in range(n)]

    def result_vertex(node):
        side, v = node
        return v if side == "b" else v  # b-top keeps v<n; a-bottom keeps v>=n

    for start in boundary:
        if start in visited:
            continue
        visited.add(start)
        cur = start
        while True:
            side, v = cur
            mate = (side, (pa if side == "a" else pb)[v])
            visited.add(mate)
            nxt = across(*mate)
            if nxt is None:
                pairs.append((result_vertex(start), result_vertex(mate)))
                break
            visited.add(nxt)
            cur = nxt

    loops = 0
    for i in range(n):
        node = ("a", i)  # interface nodes on a's side
        if node in visited:
            continue
        loops += 1
        cur = node
        while cur not in visited:
            visited.add(cur)
            side, v = cur
            mate = (side, (pa if side == "a" else pb)[v])
            visited.add(mate)
            cur = across(*mate)

    return BrauerDiagram.from_pairs(n, pairs), loops


@lru_cache(maxsize=None)
def all_diagrams(n: int) -> tuple[BrauerDiagram, ...]:
    """All (2n-1)!! diagrams at rank n, in canonical sorted order."""

    def matchings(points: tuple[int, ...]):
        if not points:
            yield ()
            return
        first, rest = points[0], points[1:]
        for i, second in enumerate(rest):
            for sub in matchings(rest[:i] + rest[i + 1 :]):
                yield ((first, second),) + sub

    diags = [BrauerDiagram.from_pairs(n, m) for m in matchings(tuple(range(2 * n)))]
    return tuple(sorted(diags, key=lambda d: d.pairs))


@lru_cache(maxsize=None)
def planar_diagrams(n: int) -> tuple[BrauerDiagram, ...]:
    return tuple(d for d in all_diagrams(n) if d.is_planar())


def include_diagram(d: BrauerDiagram, m: int) -> BrauerDiagram:
    """Append vertical strands to reach rank m >= d.n."""
    assert m >= d.n
    n = d.n
    shifted = [(a if a < n else a + (m - n), b if b < n else b + (m - n)) for a, b in d.pairs]
    shifted += [(i, m + i) for i in range(n, m)]
    return BrauerDiagram.from_pairs(m, shifted)


def double_factorial(n: int) -> int:
    return reduce(lambda x, y: x * y, range(1, n + 1, 2), 1)


def catalan(n: int) -> int:
    from math import comb

    return comb(2 * n, n) // (n + 1)
