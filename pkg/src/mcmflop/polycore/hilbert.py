"""Hilbert series numerators of monomial ideals.

For a monomial ideal J in n variables, HS(S/J) = N(t) / (1 - t)^n with N an
integer polynomial; dimension and degree come from the order of vanishing of
N at t = 1.
"""

from __future__ import annotations

from functools import lru_cache


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for m in gens:
        if not any(all(a <= b for a, b in zip(o, m)) for o in out):
            out.append(m)
    return tuple(sorted(out))


def _sub(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)]


def _shift(p, d):
    return [0] * d + list(p)


def _mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


@lru_cache(maxsize=4096)
def _numerator(gens: tuple) -> tuple:
    if not gens:
        return (1,)
    # pairwise coprime generators give a product of (1 - t^deg)
    supports = [frozenset(i for i, a in enumerate(m) if a) for m in gens]
    if all(not (supports[i] & supports[j]) for i in range(len(gens)) for j in range(i)):
        out = [1]
        for m in gens:
            out = _mul(out, [1] + [0] * (sum(m) - 1) + [-1])
        return tuple(out)
    # pivot on the last generator: N(J) = N(J') - t^deg(m) N(J' : m)
    m = gens[-1]
    rest = gens[:-1]
    colon = _minimalize(tuple(tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest))
    return tuple(_sub(_numerator(rest), _shift(_numerator(colon), sum(m))))


def hilbert_numerator(lead, n: int) -> list[int]:
    gens = _minimalize([tuple(m) for m in lead])
    if any(sum(m) == 0 for m in gens):
        return [0]
    return list(_numerator(gens))


def hilbert_dimension_degree(lead, n: int) -> tuple[int, int]:
    N = hilbert_numerator(lead, n)
    while N and N[-1] == 0:
        N.pop()
    if not N:
        return -1, 0
    k = 0
    while sum(N) == 0:
        # divide by (1 - t)
        q = []
        acc = 0
        for c in N[:-1]:
            acc += c
            q.append(acc)
        N = q
        k += 1
    return n - k, sum(N)
