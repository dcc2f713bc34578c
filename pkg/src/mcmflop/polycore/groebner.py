"""Buchberger's algorithm on raw term dictionaries.

Pairs are selected by the normal strategy (smallest lcm first) and pruned
with the Gebauer-Moeller installation of Buchberger's two criteria.
"""

from __future__ import annotations

import logging

from .orders import MonomialOrder

log = logging.getLogger(__name__)

Terms = dict  # exponent tuple -> coefficient


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _coprime(a, b):
    return all(not (x and y) for x, y in zip(a, b))


class _Basis:
    """Growing basis with cached leading monomials."""

    def __init__(self, key):
        self.key = key
        self.polys: list[Terms] = []
        self.lms: list[tuple] = []
        self.active: list[bool] = []

    def add(self, p: Terms) -> int:
        lm = max(p, key=self.key)
        lc = p[lm]
        if lc != 1:
            inv = 1 / lc
            p = {e: c * inv for e, c in p.items()}
        self.polys.append(p)
        self.lms.append(lm)
        self.active.append(True)
        return len(self.polys) - 1


def reduce_terms(p: Terms, polys: list[Terms], lms: list[tuple], key, full: bool = True) -> Terms:
    """Remainder of ``p`` on division by monic ``polys``.

    With ``full=False`` only the leading term is reduced repeatedly.
    """
    p = dict(p)
    rem: Terms = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for g, lm in zip(polys, lms):
            if _divides(lm, m):
                shift = tuple(a - b for a, b in zip(m, lm))
                for ge, gc in g.items():
                    t = tuple(a + b for a, b in zip(ge, shift))
                    s = p.get(t, 0) - c * gc
                    if s:
                        p[t] = s
                    else:
                        p.pop(t, None)
                break
        else:
            if not full:
                rem.update(p)
                return rem
            rem[m] = c
            del p[m]
    return rem


def _spoly(f: Terms, lf, g: Terms, lg) -> Terms:
    l = _lcm(lf, lg)
    sf = tuple(a - b for a, b in zip(l, lf))
    sg = tuple(a - b for a, b in zip(l, lg))
    out: Terms = {}
    for e, c in f.items():
        out[tuple(a + b for a, b in zip(e, sf))] = c
    for e, c in g.items():
        t = tuple(a + b for a, b in zip(e, sg))
        s = out.get(t, 0) - c
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out


def _update(B: _Basis, pairs: set, h: int) -> set:
    """Gebauer-Moeller update after appending basis element ``h``."""
    lh = B.lms[h]
    candidates = [i for i in range(h) if B.active[i]]
    lcms = {i: _lcm(lh, B.lms[i]) for i in candidates}

    # chain criterion among the new pairs
    C = list(candidates)
    D: list[int] = []
    while C:
        i = C.pop(0)
        if _coprime(lh, B.lms[i]):
            D.append(i)
            continue
        li = lcms[i]
        if any(_divides(lcms[j], li) for j in C + D):
            continue
        D.append(i)
    # product criterion
    E = [i for i in D if not _coprime(lh, B.lms[i])]

    # chain criterion on old pairs
    kept = set()
    for (i, j) in pairs:
        lij = _lcm(B.lms[i], B.lms[j])
        if _divides(lh, lij) and _lcm(B.lms[i], lh) != lij and _lcm(B.lms[j], lh) != lij:
            continue
        kept.add((i, j))
    for i in E:
        kept.add((i, h))

    # elements whose leading monomial is divisible by the new one are redundant
    for i in candidates:
        if _divides(lh, B.lms[i]):
            B.active[i] = False
    return kept


def buchberger(polys: list[Terms], order: MonomialOrder) -> list[Terms]:
    """Reduced Groebner basis (monic, sorted by decreasing leading monomial)."""
    key = order.key
    B = _Basis(key)
    pairs: set = set()
    for p in polys:
        if not p:
            continue
        act = [i for i in range(len(B.polys)) if B.active[i]]
        r = reduce_terms(p, [B.polys[i] for i in act], [B.lms[i] for i in act], key)
        if not r:
            continue
        if all(not any(e) for e in r):
            return [{tuple(0 for _ in next(iter(r))): 1}]
        h = B.add(r)
        pairs = _update(B, pairs, h)

    steps = 0
    while pairs:
        pair = min(pairs, key=lambda ij: key(_lcm(B.lms[ij[0]], B.lms[ij[1]])))
        pairs.discard(pair)
        i, j = pair
        s = _spoly(B.polys[i], B.lms[i], B.polys[j], B.lms[j])
        act = [k for k in range(len(B.polys)) if B.active[k] or k in (i, j)]
        r = reduce_terms(s, [B.polys[k] for k in act], [B.lms[k] for k in act], key)
        steps += 1
        if not r:
            continue
        if all(not any(e) for e in r):
            return [{next(iter(r)): 1}]
        h = B.add(r)
        pairs = _update(B, pairs, h)
    log.debug("buchberger: %d s-polynomials, %d basis elements", steps, len(B.polys))
    return _interreduce([B.polys[k] for k in range(len(B.polys))], key)


def _interreduce(polys: list[Terms], key) -> list[Terms]:
    items = [(max(p, key=key), p) for p in polys]
    # minimal basis: drop elements whose leading monomial is divisible by another's
    items.sort(key=lambda t: key(t[0]))
    minimal: list[tuple] = []
    for lm, p in items:
        if any(_divides(ol, lm) for ol, _ in minimal):
            continue
        minimal.append((lm, p))
    out = []
    lms = [lm for lm, _ in minimal]
    polys_m = [p for _, p in minimal]
    for idx, (lm, p) in enumerate(minimal):
        others = polys_m[:idx] + polys_m[idx + 1:]
        others_lm = lms[:idx] + lms[idx + 1:]
        tail = dict(p)
        lc = tail.pop(lm)
        red = reduce_terms(tail, others, others_lm, key)
        red[lm] = lc
        if lc != 1:
            red = {e: c / lc for e, c in red.items()}
        out.append(red)
    out.sort(key=lambda p: key(max(p, key=key)), reverse=True)
    return out
