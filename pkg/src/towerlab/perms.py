"""Permutations in one-line form (0-based tuples), with the reduced-word
machinery the Hecke tower needs.  mul(u, v) applies u first, then v, which
matches the stacking convention for diagram products."""

from __future__ import annotations

from functools import lru_cache


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def transposition(i: int, n: int) -> tuple[int, ...]:
    """Adjacent transposition s_i (1-based i), swapping i-1 and i."""
    w = list(range(n))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def mul(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(v[u[i]] for i in range(len(u)))


def inverse(w: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(w)
    for i, wi in enumerate(w):
        out[wi] = i
    return tuple(out)


def length(w: tuple[int, ...]) -> int:
    return sum(
        1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j]
    )


@lru_cache(maxsize=None)
def reduced_word(w: tuple[int, ...]) -> tuple[int, ...]:
    """1-based letters (i1, ..., il) with w = s_i1 * s_i2 * ... * s_il."""
    word: list[int] = []
    pos = list(inverse(w))
    w = list(w)
    while True:
        for i in range(1, len(w)):
            # right-multiplying by s_i drops the length iff value i comes
            # before value i-1 in one-line order
            if pos[i] < pos[i - 1]:
                word.append(i)
                pos[i], pos[i - 1] = pos[i - 1], pos[i]
                w[pos[i]], w[pos[i - 1]] = i, i - 1
                break
        else:
            word.reverse()
            return tuple(word)


def right_descent_increases(w: tuple[int, ...], i: int) -> bool:
    """True iff l(w * s_i) = l(w) + 1 (1-based i)."""
    inv = inverse(w)
    return inv[i - 1] < inv[i]


def all_perms(n: int) -> tuple[tuple[int, ...], ...]:
    from itertools import permutations

    return tuple(sorted(permutations(range(n))))


def young_subgroup(row_sizes: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Row stabilizer of the row-reading tableau with the given row sizes."""
    from itertools import permutations as iperm, product

    n = sum(row_sizes)
    blocks = []
    start = 0
    for size in row_sizes:
        blocks.append(tuple(range(start, start + size)))
        start += size
    out = []
    for combo in product(*(tuple(iperm(b)) for b in blocks)):
        w = list(range(n))
        for block, sigma in zip(blocks, combo):
            for src, img in zip(block, sigma):
                w[src] = img
        out.append(tuple(w))
    return tuple(sorted(out))
