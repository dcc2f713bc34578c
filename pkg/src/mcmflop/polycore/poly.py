"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping, Union

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 ships with the sandbox
    QQ = Fraction

from .orders import DEGREVLEX, MonomialOrder

Exponent = tuple[int, ...]
Number = Union[int, Fraction, "QQ"]


class RingMismatch(ValueError):
    pass


def to_qq(c) -> "QQ":
    if isinstance(c, Fraction):
        return QQ(c.numerator, c.denominator)
    return QQ(c)


class Poly:
    """A polynomial over Q in an ordered list of variables.

    ``terms`` maps exponent vectors to nonzero coefficients. Instances are
    treated as immutable: every operation returns a new polynomial.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Iterable[str], terms: Mapping[Exponent, Number] | None = None):
        self.ring = tuple(ring)
        n = len(self.ring)
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match ring {self.ring}")
            if c:
                clean[tuple(e)] = to_qq(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: tuple[str, ...], terms: dict) -> "Poly":
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, ring) -> "Poly":
        return cls(ring)

    @classmethod
    def const(cls, ring, c: Number) -> "Poly":
        ring = tuple(ring)
        return cls(ring, {(0,) * len(ring): c})

    @classmethod
    def var(cls, ring, name: str) -> "Poly":
        ring = tuple(ring)
        e = [0] * len(ring)
        e[ring.index(name)] = 1
        return cls(ring, {tuple(e): 1})

    @classmethod
    def monomial(cls, ring, exp: Exponent, c: Number = 1) -> "Poly":
        return cls(ring, {tuple(exp): c})

    # -- basic queries ------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.ring)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, QQ(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def order(self) -> int:
        """Lowest total degree of a term (the multiplicity at the origin)."""
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(self.ring[i])
        return used

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly._raw(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, d: int) -> "Poly":
        """Drop every term of total degree above ``d``."""
        return Poly._raw(self.ring, {e: c for e, c in self.terms.items() if sum(e) <= d})

    def leading_term(self, order: MonomialOrder = DEGREVLEX) -> tuple[Exponent, "QQ"]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> Exponent:
        return self.leading_term(order)[0]

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"rings differ: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)) or type(other) is type(QQ(0)):
            return Poly.const(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        elif other.ring != self.ring:
            raise RingMismatch(f"rings differ: {self.ring} vs {other.ring}")
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Poly._raw(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c: Number) -> "Poly":
        c = to_qq(c)
        if not c:
            return Poly.zero(self.ring)
        return Poly._raw(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_term(self, exp: Exponent, c) -> "Poly":
        return Poly._raw(
            self.ring, {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self.terms.items()}
        )

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = Poly.const(self.ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient of an exact division; raises if ``other`` does not divide."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lm, lc = other.leading_term()
        rem = dict(self.terms)
        quot: dict = {}
        from .orders import DEGREVLEX as o

        while rem:
            e = max(rem, key=o.key)
            if any(a < b for a, b in zip(e, lm)):
                raise ValueError("division is not exact")
            q_e = tuple(a - b for a, b in zip(e, lm))
            q_c = rem[e] / lc
            quot[q_e] = q_c
            for oe, oc in other.terms.items():
                t = tuple(a + b for a, b in zip(oe, q_e))
                s = rem.get(t, 0) - oc * q_c
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        return Poly._raw(self.ring, quot)

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)) or type(other) is type(QQ(0)):
            return self.terms == Poly.const(self.ring, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- substitution and ring changes --------------------------------
    def derivative(self, name: str) -> "Poly":
        i = self.ring.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Poly._raw(self.ring, out)

    def subs(self, values: Mapping[str, "Poly | Number"], ring=None) -> "Poly":
        """Substitute polynomials (or numbers) for variables.

        The result lives in ``ring`` (default: this ring). Variables that are
        not substituted must exist in the target ring.
        """
        target = tuple(ring) if ring is not None else self.ring
        images = []
        for name in self.ring:
            if name in values:
                v = values[name]
                if not isinstance(v, Poly):
                    v = Poly.const(target, v)
                elif v.ring != target:
                    raise RingMismatch(f"substitution for {name} lives in {v.ring}, expected {target}")
                images.append(v)
            else:
                images.append(Poly.var(target, name))
        # cache powers per variable
        powers: list[dict[int, Poly]] = [dict() for _ in images]

        def power(i: int, k: int) -> Poly:
            cache = powers[i]
            if k not in cache:
                cache[k] = images[i] ** k
            return cache[k]

        result: dict = {}
        one = (0,) * len(target)
        for e, c in self.terms.items():
            term = {one: c}
            term_p = Poly._raw(target, term)
            for i, k in enumerate(e):
                if k:
                    term_p = term_p * power(i, k)
            for te, tc in term_p.terms.items():
                s = result.get(te, 0) + tc
                if s:
                    result[te] = s
                else:
                    result.pop(te, None)
        return Poly._raw(target, result)

    def evaluate(self, point: Mapping[str, Number]):
        """Evaluate at a point given for every variable that occurs."""
        total = QQ(0)
        idx = [point[name] if name in point else None for name in self.ring]
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    if idx[i] is None:
                        raise KeyError(self.ring[i])
                    v = v * to_qq(idx[i]) ** k
            total += v
        return total

    def to_ring(self, ring: Iterable[str]) -> "Poly":
        """Re-express in another ring containing every variable that occurs."""
        ring = tuple(ring)
        if ring == self.ring:
            return self
        pos = []
        for i, name in enumerate(self.ring):
            pos.append(ring.index(name) if name in ring else None)
        out = {}
        n = len(ring)
        for e, c in self.terms.items():
            ne = [0] * n
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise RingMismatch(f"variable {self.ring[i]} missing from {ring}")
                    ne[pos[i]] = k
            out[tuple(ne)] = c
        return Poly._raw(ring, out)

    # -- normalisation ------------------------------------------------
    def primitive(self, order: MonomialOrder = DEGREVLEX) -> "Poly":
        """Scale to coprime integer coefficients with positive leading coefficient."""
        if not self.terms:
            return self
        den = reduce(lambda a, b: a * b // gcd(a, b), (int(c.denominator) for c in self.terms.values()))
        nums = [int(c * den) for c in self.terms.values()]
        g = reduce(gcd, (abs(v) for v in nums))
        factor = QQ(den, g)
        if self.leading_term(order)[1] < 0:
            factor = -factor
        return self.scale(factor)

    def monic(self, order: MonomialOrder = DEGREVLEX) -> "Poly":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_term(order)[1])

    # -- printing -----------------------------------------------------
    def sorted_terms(self, order: MonomialOrder = DEGREVLEX) -> list[tuple[Exponent, "QQ"]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(self.ring, e) if k
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append(("-" if neg else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, ring={self.ring})"


def poly_ring_union(*rings: Iterable[str]) -> tuple[str, ...]:
    out: list[str] = []
    for r in rings:
        for v in r:
            if v not in out:
                out.append(v)
    return tuple(out)
