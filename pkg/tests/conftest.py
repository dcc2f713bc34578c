from fractions import Fraction
from itertools import combinations_with_replacement

import random

import pytest
import sympy

from mcmflop.polycore import Ideal, Poly, PolyMatrix, parse_poly


def P(text: str, ring) -> Poly:
    return parse_poly(text, tuple(ring))


def Mat(rows, ring) -> PolyMatrix:
    return PolyMatrix.from_rows([[P(e, ring) for e in r] for r in rows])


def to_sympy(p: Poly):
    syms = sympy.symbols(p.ring)
    return sympy.sympify(str(p).replace("^", "**"), locals=dict(zip(p.ring, syms)))


def from_sympy(expr, ring) -> Poly:
    return P(str(sympy.expand(expr)).replace("**", "^"), ring)


def monic_set(polys) -> set:
    return {p.monic() for p in polys if not p.is_zero()}


def monomials_upto(ring, d: int) -> list[Poly]:
    out = []
    n = len(ring)
    for k in range(d + 1):
        for combo in combinations_with_replacement(range(n), k):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(Poly.monomial(ring, tuple(e)))
    return out


def in_span(target: Poly, spanning: list[Poly]) -> bool:
    """Rational Gaussian elimination: is target a Q-combination of spanning?"""
    rows = []
    for s in spanning + [target]:
        rows.append({e: Fraction(int(c.numerator), int(c.denominator)) for e, c in s.terms.items()})
    pivots: dict = {}
    for r in rows[:-1]:
        r = dict(r)
        for piv, pr in pivots.items():
            if piv in r:
                c = r[piv]
                for e, v in pr.items():
                    r[e] = r.get(e, 0) - c * v
                    if r[e] == 0:
                        del r[e]
        if r:
            piv = max(r)
            inv = 1 / r[piv]
            r = {e: v * inv for e, v in r.items()}
            for q, qr in pivots.items():
                if piv in qr:
                    c = qr[piv]
                    for e, v in r.items():
                        qr[e] = qr.get(e, 0) - c * v
                        if qr[e] == 0:
                            del qr[e]
            pivots[piv] = r
    t = dict(rows[-1])
    for piv, pr in pivots.items():
        if piv in t:
            c = t[piv]
            for e, v in pr.items():
                t[e] = t.get(e, 0) - c * v
                if t[e] == 0:
                    del t[e]
    return not t


def brute_member(p: Poly, gens: list[Poly], D: int) -> bool:
    """p in the Q-span of m*g with deg(m*g) <= D."""
    span = []
    for g in gens:
        dg = g.total_degree()
        span += [m * g for m in monomials_upto(p.ring, D - dg)] if D >= dg else []
    return in_span(p, span)


def random_poly(rng: random.Random, ring, max_deg=3, terms=3) -> Poly:
    d = {}
    for _ in range(terms):
        e = [0] * len(ring)
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(len(ring))] += 1
        d[tuple(e)] = rng.randint(-3, 3) or 1
    return Poly(ring, d)


def random_ideal(rng: random.Random):
    """One to three random generators in two or three variables, degree <= 3."""
    ring = ("x", "y", "z")[: rng.randint(2, 3)]
    gens = [random_poly(rng, ring) for _ in range(rng.randint(1, 3))]
    gens = [g for g in gens if not g.is_constant()] or [Poly.var(ring, ring[0])]
    return Ideal.of(gens, ring)


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, line = ACCEPTANCE[k]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {k}. {line}")


@pytest.fixture
def xyz():
    return ("x", "y", "z")
