"""Bounded witness search for a I = b J in the coordinate ring of V(f).

Globally the test is mutual inclusion modulo f. For a germ the test is made
in the local ring at the origin: a I is contained in b J there exactly when
the colon ((b J, f) : a g) has an element that is a unit at the origin, for
every generator g of I. A truncation modulo a power of the maximal ideal
screens candidates before the colon computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from ..polycore import Ideal, Poly, ideal_equal, normal_form, quotient
from .types import BlowupIdeal, HypersurfaceSingularity

DEFAULT_SEARCH_DEGREE = 4
SCREEN_POWER = 6


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    witness: tuple[Poly, Poly] | None
    confidence: str  # "witness" | "no witness up to degree d"
    searched: int = 0
    local: bool = False  # witness holds in the local ring at the origin only

    def __bool__(self) -> bool:
        return self.equivalent


def _monomials(ring, max_deg: int) -> list[Poly]:
    out = []
    n = len(ring)
    for d in range(max_deg + 1):
        for combo in combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(Poly.monomial(ring, tuple(e)))
    return out


def _candidates(gens: list[Poly], ring, max_deg: int) -> list[Poly]:
    """Multipliers: products of generators first, then monomials, by degree."""
    pool = [Poly.const(ring, 1)]
    pool += [g for g in gens if g.total_degree() <= max_deg]
    pool += [a * b for a, b in combinations_with_replacement(gens, 2) if a.total_degree() + b.total_degree() <= max_deg]
    pool += _monomials(ring, max_deg)
    seen, out = set(), []
    for p in pool:
        p = p.primitive()
        if p not in seen:
            seen.add(p)
            out.append(p)
    out.sort(key=lambda p: p.total_degree())
    return out


def _scaled(I: Ideal, a: Poly, f: Poly) -> Ideal:
    return Ideal.of([a * g for g in I.nonzero_gens()] + [f], I.ring)


def _max_power(ring, N: int) -> list[Poly]:
    return [m for m in _monomials(ring, N) if m.total_degree() == N]


def _locally_contained(gens: list[Poly], target: Ideal) -> bool:
    """Every g lies in target localized at the origin."""
    ring = target.ring
    m = [Poly.var(ring, v) for v in ring]
    for g in gens:
        if normal_form(g, target).is_zero():
            continue
        if not (quotient(target, g) + m).is_unit():
            return False
    return True


def fractional_equivalent(
    I: BlowupIdeal | Ideal,
    J: BlowupIdeal | Ideal,
    X: HypersurfaceSingularity | Poly,
    search_degree: int = DEFAULT_SEARCH_DEGREE,
    local: bool | None = None,
) -> Equivalence:
    """Search a, b of degree <= search_degree with a I = b J modulo f.

    ``local`` defaults to the germ flag of ``X`` (False for a bare
    polynomial). Global witnesses are preferred; a witness valid only at
    the origin sets ``local`` on the result. Finding no witness is reported
    as such; it is not a proof of inequivalence.
    """
    I = I.gens if isinstance(I, BlowupIdeal) else I
    J = J.gens if isinstance(J, BlowupIdeal) else J
    f = X.f if isinstance(X, HypersurfaceSingularity) else X
    if local is None:
        local = isinstance(X, HypersurfaceSingularity) and X.local
    ring = f.ring
    one = Poly.const(ring, 1)
    if ideal_equal(I + [f], J + [f]):
        return Equivalence(True, (one, one), "witness", 1)
    witness, searched = _search(I, J, f, search_degree, local=False)
    if witness is None and local:
        witness, more = _search(I, J, f, search_degree, local=True)
        searched += more
        if witness is not None:
            return Equivalence(True, witness, "witness", searched, local=True)
    if witness is None:
        return Equivalence(False, None, f"no witness up to degree {search_degree}", searched)
    return Equivalence(True, witness, "witness", searched)


def _search(I: Ideal, J: Ideal, f: Poly, search_degree: int, local: bool):
    ring = f.ring
    one = Poly.const(ring, 1)
    As = _candidates(J.nonzero_gens(), ring, search_degree)
    Bs = _candidates(I.nonzero_gens(), ring, search_degree)
    pairs = sorted(((a, b) for a in As for b in Bs), key=lambda ab: ab[0].total_degree() + ab[1].total_degree())
    mN = _max_power(ring, SCREEN_POWER) if local else []
    bJ_cache: dict[Poly, Ideal] = {}
    aI_cache: dict[Poly, Ideal] = {}
    Ig, Jg = I.nonzero_gens(), J.nonzero_gens()
    searched = 0
    for a, b in pairs:
        if a == b and a != one:
            continue
        searched += 1
        if b not in bJ_cache:
            bJ_cache[b] = Ideal.of(_scaled(J, b, f).gens + tuple(mN), ring).with_gb()
        if not all(normal_form(a * g, bJ_cache[b]).is_zero() for g in Ig):
            continue
        if a not in aI_cache:
            aI_cache[a] = Ideal.of(_scaled(I, a, f).gens + tuple(mN), ring).with_gb()
        if not all(normal_form(b * g, aI_cache[a]).is_zero() for g in Jg):
            continue
        if not local:
            return (a, b), searched
        # the truncated test is only necessary; confirm with colons
        if _locally_contained([a * g for g in Ig], _scaled(J, b, f).with_gb()) and _locally_contained(
            [b * g for g in Jg], _scaled(I, a, f).with_gb()
        ):
            return (a, b), searched
    return None, searched
