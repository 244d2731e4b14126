"""Hilbert series numerators of monomial ideals by pivot recursion.

For a monomial ideal M in n variables, HS(R/M) = N(T) / (1-T)^n.  N is
computed with the splitting

    N(M) = N(M + (x^e)) + T^e * N(M : x^e)

where x is the variable occurring in most non-pure-power generators and e is
the median of its exponents there.  Integer polynomials are coefficient lists,
lowest degree first.
"""

from __future__ import annotations

from functools import lru_cache


def poly_trim(a: list[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_add(a, b):
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_sub(a, b):
    return poly_add(a, [-x for x in b])


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_shift(a, e):
    return poly_trim([0] * e + list(a)) if a else []


def divide_one_minus_t(a: list[int]) -> tuple[list[int], int]:
    """Return (q, k) with a = (1-T)^k q and q(1) != 0 (a nonzero)."""
    a = poly_trim(a)
    k = 0
    while a and sum(a) == 0:
        # synthetic division by (1 - T): q_i = sum_{j<=i} a_j
        q, s = [], 0
        for x in a[:-1]:
            s += x
            q.append(s)
        a = poly_trim(q)
        k += 1
    return a, k


def minimalize(gens) -> list[tuple]:
    gens = sorted(set(gens), key=lambda g: (sum(g), g))
    out: list[tuple] = []
    for g in gens:
        if not any(all(x <= y for x, y in zip(h, g)) for h in out):
            out.append(g)
    return out


def hilbert_numerator(gens, n: int) -> list[int]:
    """Numerator of HS(R/M) for M generated by the exponent vectors ``gens``."""
    gens = [tuple(g[:n]) for g in gens]
    if any(sum(g) == 0 for g in gens):
        return []
    return list(_num(tuple(minimalize(gens))))


@lru_cache(maxsize=200_000)
def _num(gens: tuple) -> tuple:
    if not gens:
        return (1,)
    supports = [frozenset(i for i, x in enumerate(g) if x) for g in gens]
    seen: set = set()
    coprime = True
    for s in supports:
        if seen & s:
            coprime = False
            break
        seen |= s
    if coprime:
        out = [1]
        for g in gens:
            out = poly_mul(out, [1] + [0] * (sum(g) - 1) + [-1])
        return tuple(out)
    n = len(gens[0])
    counts = [0] * n
    for g, s in zip(gens, supports):
        if len(s) > 1:
            for i in s:
                counts[i] += 1
    x = max(range(n), key=lambda i: (counts[i], -i))
    exps = sorted(g[x] for g, s in zip(gens, supports) if len(s) > 1 and g[x])
    e = exps[len(exps) // 2]
    pivot = tuple(e if i == x else 0 for i in range(n))
    plus = [g for g in gens if g[x] < e] + [pivot]
    quot = [tuple(max(0, a - e) if i == x else a for i, a in enumerate(g)) for g in gens]
    left = _num(tuple(minimalize(plus)))
    right = _num(tuple(minimalize(quot)))
    return tuple(poly_add(list(left), poly_shift(list(right), e)))
