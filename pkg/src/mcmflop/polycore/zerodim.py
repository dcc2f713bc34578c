"""Zero-dimensional ideals: eliminants, radicals, rational points, local lengths."""

from __future__ import annotations

from itertools import product
from math import gcd, isqrt
from typing import Mapping, Sequence

from .ideal import Ideal, dimension_and_degree, eliminate, normal_form
from .poly import QQ, Poly

# ---------------------------------------------------------------- univariate


def _to_coeffs(p: Poly) -> list:
    """Coefficient list (low degree first) of a polynomial in one variable."""
    used = p.variables()
    if len(used) > 1:
        raise ValueError(f"{p} is not univariate")
    if not used:
        return [p.constant_term()]
    i = p.ring.index(next(iter(used)))
    deg = max(e[i] for e in p.terms)
    out = [QQ(0)] * (deg + 1)
    for e, c in p.terms.items():
        out[e[i]] = c
    return out


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _divmod(a, b):
    a, b = _trim(a), _trim(b)
    q = [QQ(0)] * max(len(a) - len(b) + 1, 1)
    a = list(a)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = c
        for i, v in enumerate(b):
            a[i + k] -= c * v
        a = _trim(a)
    return _trim(q), a


def _ugcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    if a:
        a = [c / a[-1] for c in a]
    return a


def squarefree_part(p: Poly) -> Poly:
    coeffs = _to_coeffs(p)
    deriv = [c * i for i, c in enumerate(coeffs)][1:]
    g = _ugcd(coeffs, deriv)
    q, r = _divmod(coeffs, g)
    assert not r
    var = next(iter(p.variables())) if p.variables() else p.ring[0]
    i = p.ring.index(var)
    terms = {}
    for k, c in enumerate(q):
        if c:
            e = [0] * p.nvars
            e[i] = k
            terms[tuple(e)] = c
    return Poly(p.ring, terms)


def _divisors(n: int, limit: int = 10**12) -> list[int] | None:
    n = abs(n)
    if n > limit:
        return None
    out = set()
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out.add(d)
            out.add(n // d)
    return sorted(out)


def rational_roots(p: Poly) -> tuple[list, bool]:
    """Rational roots of a univariate polynomial, and whether the search was complete."""
    coeffs = _trim(_to_coeffs(p))
    if not coeffs:
        raise ValueError("zero polynomial")
    roots = []
    # strip the factor x^k
    k = 0
    while coeffs[k] == 0:
        k += 1
    if k:
        roots.append(QQ(0))
    coeffs = coeffs[k:]
    if len(coeffs) == 1:
        return roots, True
    den = 1
    for c in coeffs:
        den = den * int(c.denominator) // gcd(den, int(c.denominator))
    ints = [int(c * den) for c in coeffs]
    a0, an = ints[0], ints[-1]
    ps, qs = _divisors(a0), _divisors(an)
    if ps is None or qs is None:
        return roots, False
    seen = set()
    for num in ps:
        for d in qs:
            for s in (1, -1):
                r = QQ(s * num, d)
                if r in seen:
                    continue
                seen.add(r)
                val = QQ(0)
                for c in reversed(coeffs):
                    val = val * r + c
                if val == 0:
                    roots.append(r)
    return roots, True


# ---------------------------------------------------------------- ideals


def eliminant(I: Ideal, var: str) -> Poly:
    """Monic generator of ``I`` intersected with Q[var] (zero if the intersection is zero)."""
    J = eliminate(I, [v for v in I.ring if v != var])
    gens = J.with_gb().gb
    if not gens:
        return Poly.zero(I.ring)
    (g,) = gens
    return g.to_ring(I.ring)


def radical_zero_dim(I: Ideal) -> Ideal:
    """Radical of a zero-dimensional ideal (Seidenberg's lemma)."""
    extra = []
    for v in I.ring:
        e = eliminant(I, v)
        if e.is_zero():
            raise ValueError("ideal is not zero-dimensional")
        extra.append(squarefree_part(e))
    return I + extra


def rational_points(I: Ideal) -> tuple[list[dict], int]:
    """Rational points of a zero-dimensional ideal plus the total point count.

    The count is the number of geometric points (length of the radical), so a
    shortfall against ``len(points)`` means irrational points exist.
    """
    d, _ = dimension_and_degree(I)
    if d == -1:
        return [], 0
    if d != 0:
        raise ValueError("ideal is not zero-dimensional")
    rad = radical_zero_dim(I).with_gb()
    _, npoints = dimension_and_degree(rad)
    candidates = []
    for v in I.ring:
        roots, _ = rational_roots(eliminant(I, v))
        candidates.append(roots)
    pts = []
    for combo in product(*candidates):
        pt = dict(zip(I.ring, combo))
        if all(g.evaluate(pt) == 0 for g in rad.gb):
            pts.append(pt)
    return pts, npoints


def translate(p: Poly, point: Mapping[str, object]) -> Poly:
    """Move ``point`` to the origin: substitute v -> v + point[v]."""
    vals = {v: Poly.var(p.ring, v) + QQ(point[v]) for v in p.ring if point.get(v, 0)}
    return p.subs(vals) if vals else p


def _power_of_max(ring: Sequence[str], N: int) -> list[Poly]:
    n = len(ring)
    out = []

    def rec(i, left, prefix):
        if i == n - 1:
            out.append(Poly.monomial(ring, tuple(prefix + [left])))
            return
        for k in range(left + 1):
            rec(i + 1, left - k, prefix + [k])

    rec(0, N, [])
    return out


def local_length(I: Ideal, max_power: int = 30) -> int | None:
    """Length of the local ring of V(I) at the origin, or None if infinite.

    Uses that dim Q[x]/(I + m^N) is nondecreasing in N and equals the local
    length from the first N where two consecutive values agree (Nakayama).
    """
    prev = None
    for N in range(1, max_power + 1):
        J = I + _power_of_max(I.ring, N)
        _, deg = dimension_and_degree(J)
        if prev is not None and deg == prev:
            return deg
        prev = deg
    return None


def contains_point(I: Ideal, point: Mapping[str, object]) -> bool:
    return all(g.evaluate(point) == 0 for g in I.nonzero_gens())


def reduce_mod(p: Poly, I: Ideal) -> Poly:
    return normal_form(p, I.with_gb())
