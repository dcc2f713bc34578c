"""Ideals with cached reduced Groebner bases and the operations built on them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .groebner import buchberger, reduce_terms
from .hilbert import hilbert_dimension_degree
from .orders import DEGREVLEX, MonomialOrder, block_order
from .poly import Poly, RingMismatch


class MissingGroebnerBasis(ValueError):
    """Raised when an operation needs a cached Groebner basis that is absent."""


@dataclass(frozen=True, eq=False)
class Ideal:
    ring: tuple[str, ...]
    gens: tuple[Poly, ...]
    gb: tuple[Poly, ...] | None = None
    order: MonomialOrder | None = None

    def __post_init__(self):
        for g in self.gens:
            if g.ring != self.ring:
                raise RingMismatch(f"generator {g} not in ring {self.ring}")

    @classmethod
    def of(cls, gens: Iterable[Poly], ring: Sequence[str] | None = None) -> "Ideal":
        gens = tuple(gens)
        if ring is None:
            if not gens:
                raise ValueError("empty generator list needs an explicit ring")
            ring = gens[0].ring
        ring = tuple(ring)
        if not gens:
            gens = (Poly.zero(ring),)
        return cls(ring, gens)

    def __repr__(self) -> str:
        return "Ideal(" + ", ".join(str(g) for g in self.gens) + ")"

    def nonzero_gens(self) -> list[Poly]:
        return [g for g in self.gens if not g.is_zero()]

    def with_gb(self, order: MonomialOrder = DEGREVLEX) -> "Ideal":
        if self.gb is not None and self.order == order:
            return self
        return groebner_basis(self, order)

    def is_unit(self) -> bool:
        I = self.with_gb()
        return len(I.gb) == 1 and I.gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.nonzero_gens()

    def contains(self, p: Poly) -> bool:
        return normal_form(p, self.with_gb()).is_zero()

    def __add__(self, other: "Ideal | Iterable[Poly]") -> "Ideal":
        extra = other.gens if isinstance(other, Ideal) else tuple(other)
        return Ideal.of(self.gens + tuple(extra), self.ring)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal.of([a * b for a in self.nonzero_gens() for b in other.nonzero_gens()], self.ring)

    def to_ring(self, ring: Sequence[str]) -> "Ideal":
        return Ideal.of([g.to_ring(ring) for g in self.gens], ring)


def groebner_basis(I: Ideal, order: MonomialOrder = DEGREVLEX) -> Ideal:
    """Return ``I`` carrying its reduced Groebner basis under ``order``."""
    raw = buchberger([dict(g.terms) for g in I.nonzero_gens()], order)
    gb = tuple(Poly(I.ring, t) for t in raw)
    return Ideal(I.ring, I.gens, gb, order)


def normal_form(p: Poly, I: Ideal) -> Poly:
    if I.gb is None:
        raise MissingGroebnerBasis("normal_form needs an ideal with a cached Groebner basis")
    if p.ring != I.ring:
        raise RingMismatch(f"{p} not in ring {I.ring}")
    key = I.order.key
    lms = [max(g.terms, key=key) for g in I.gb]
    return Poly(I.ring, reduce_terms(p.terms, [g.terms for g in I.gb], lms, key))


def eliminate(I: Ideal, drop_vars: Iterable[str]) -> Ideal:
    """``I`` intersected with the polynomial ring on the remaining variables.

    The result lives in the smaller ring (variable order preserved).
    """
    drop = [v for v in I.ring if v in set(drop_vars)]
    missing = set(drop_vars) - set(I.ring)
    if missing:
        raise ValueError(f"cannot drop variables {sorted(missing)} not in ring {I.ring}")
    keep = [v for v in I.ring if v not in drop]
    if not drop:
        return Ideal.of(I.gens, I.ring)
    big = tuple(drop + keep)
    order = block_order((len(drop), len(keep)))
    J = groebner_basis(I.to_ring(big), order)
    out = [g.to_ring(keep) for g in J.gb if not (g.variables() & set(drop))]
    return Ideal.of(out, keep)


def _fresh(ring: Sequence[str], stem: str) -> str:
    name = stem
    k = 0
    while name in ring:
        k += 1
        name = f"{stem}{k}"
    return name


def saturate(I: Ideal, g: Poly) -> Ideal:
    """``I : g^infinity`` via elimination of an auxiliary variable."""
    if g.is_zero():
        raise ValueError("cannot saturate by zero")
    if g.is_constant():
        return Ideal.of(I.gens, I.ring)
    w = _fresh(I.ring, "_w")
    big = (w,) + I.ring
    gens = [p.to_ring(big) for p in I.nonzero_gens()]
    gens.append(Poly.const(big, 1) - Poly.var(big, w) * g.to_ring(big))
    return eliminate(Ideal.of(gens, big), [w])


def quotient(I: Ideal, g: Poly) -> Ideal:
    """Colon ideal ``I : g`` from the intersection ``I ∩ (g)``."""
    t = _fresh(I.ring, "_t")
    big = (t,) + I.ring
    T = Poly.var(big, t)
    gens = [T * p.to_ring(big) for p in I.nonzero_gens()]
    gens.append((1 - T) * g.to_ring(big))
    inter = eliminate(Ideal.of(gens, big), [t])
    return Ideal.of([p.exact_div(g) for p in inter.nonzero_gens()], I.ring)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    if I.ring != J.ring:
        raise RingMismatch(f"rings differ: {I.ring} vs {J.ring}")
    a = I.with_gb(DEGREVLEX)
    b = J.with_gb(DEGREVLEX)
    return list(a.gb) == list(b.gb)


def is_subset(I: Ideal, J: Ideal) -> bool:
    """Whether every generator of ``I`` lies in ``J``."""
    Jg = J.with_gb()
    return all(normal_form(g, Jg).is_zero() for g in I.nonzero_gens())


def dimension_and_degree(I: Ideal) -> tuple[int, int]:
    """Affine Krull dimension of V(I) and its degree.

    Read off the Hilbert series of the degrevlex leading-term ideal, so the
    degree is that of the projective closure; for zero-dimensional ideals it
    is the vector-space length of the quotient. The unit ideal gives (-1, 0).
    """
    G = I.with_gb(DEGREVLEX)
    lead = [g.leading_monomial(DEGREVLEX) for g in G.gb]
    return hilbert_dimension_degree(lead, len(I.ring))


def standard_monomials(I: Ideal) -> list[tuple[int, ...]]:
    """Monomials outside the leading ideal of a zero-dimensional ideal."""
    G = I.with_gb(DEGREVLEX)
    lead = [g.leading_monomial(DEGREVLEX) for g in G.gb]
    n = len(I.ring)
    if not lead:
        raise ValueError("zero ideal has infinitely many standard monomials")
    bounds = []
    for i in range(n):
        pure = [m[i] for m in lead if all(m[j] == 0 for j in range(n) if j != i) and m[i] > 0]
        if not pure:
            raise ValueError("ideal is not zero-dimensional")
        bounds.append(min(pure))
    out = []

    def rec(i, prefix):
        if i == n:
            e = tuple(prefix)
            if not any(all(a >= b for a, b in zip(e, m)) for m in lead):
                out.append(e)
            return
        for k in range(bounds[i]):
            rec(i + 1, prefix + [k])

    rec(0, [])
    return out
