"""Two constructions of the fractional ideal attached to an MCM module."""

from __future__ import annotations

import random
from itertools import combinations

from ..mf import MatrixFactorisation, independent_columns, reducer
from ..polycore import DEGREVLEX, Ideal, Poly, PolyMatrix, dimension_and_degree
from .types import BlowupError, BlowupIdeal, HypersurfaceSingularity


def normalize_gens(gens, f: Poly) -> list[Poly]:
    """Reduce mod f, clear content, fix signs, drop zeros and duplicates."""
    red = reducer(f)
    out: list[Poly] = []
    seen = set()
    for g in gens:
        h = red(g)
        if h.is_zero():
            continue
        h = h.primitive()
        if h not in seen:
            seen.add(h)
            out.append(h)
    out.sort(key=lambda p: DEGREVLEX.key(p.leading_monomial(DEGREVLEX)))
    if any(p.is_constant() for p in out):
        return [Poly.const(f.ring, 1)]
    return out


def monomial_content(gens: list[Poly]) -> tuple[int, ...]:
    """Exponent of the largest monomial dividing every generator."""
    n = gens[0].nvars
    return tuple(min(min(e[i] for e in g.terms) for g in gens) for i in range(n))


def prune_generators(gens: list[Poly], f: Poly) -> list[Poly]:
    """Drop generators lying in the ideal of f and the remaining ones."""
    keep = list(gens)
    for g in sorted(gens, key=lambda p: (-p.total_degree(), -len(p.terms))):
        others = [h for h in keep if h is not g]
        if others and Ideal.of(others + [f], f.ring).contains(g):
            keep = others
    return keep


def chart_ready(I: BlowupIdeal, f: Poly) -> BlowupIdeal:
    """Divide out the common monomial factor and prune redundant generators.

    Both steps leave the blowup unchanged (the first multiplies the ideal by
    a nonzerodivisor, the second keeps the ideal).
    """
    gens = I.generators()
    if any(g.is_constant() for g in gens):
        return I
    e = monomial_content(gens)
    if any(e):
        gens = [g.exact_div(Poly.monomial(f.ring, e)) for g in gens]
    gens = prune_generators(normalize_gens(gens, f), f)
    wit = dict(I.witness, divided_by=str(Poly.monomial(f.ring, e)), pruned_from=len(I.generators()))
    return BlowupIdeal(Ideal.of(gens, f.ring), I.source, wit)


def _maximal_minors(sub: PolyMatrix) -> list[Poly]:
    k = sub.cols
    return [sub.submatrix(rows, range(k)).det() for rows in combinations(range(sub.rows), k)]


def _check_inputs(M: MatrixFactorisation, X: HypersurfaceSingularity) -> None:
    if M.f != X.f:
        raise BlowupError("the factorisation is not over X.f")
    if M.rank < 1:
        raise BlowupError(f"module rank must be >= 1, got {M.rank}")


def minors_ideal(phi: PolyMatrix, f: Poly, k: int, first=None) -> tuple[list[Poly], list[int]]:
    """Normalized maximal minors of ``k`` generically independent columns of phi."""
    if k == 0:
        return [Poly.const(f.ring, 1)], []
    cols = independent_columns(phi, f, k, first)
    if cols is None:
        raise BlowupError(f"cannot find {k} columns independent modulo f; is the declared rank right?")
    gens = normalize_gens(_maximal_minors(phi.submatrix(range(phi.rows), cols)), f)
    if not gens:
        raise BlowupError("all selected minors vanish modulo f")
    return gens, cols


def villamayor_ideal(
    M: MatrixFactorisation, X: HypersurfaceSingularity, columns: list[int] | None = None
) -> BlowupIdeal:
    """Maximal minors of n - r generically independent columns of phi.

    ``columns`` forces a particular selection; it must be independent.
    """
    _check_inputs(M, X)
    k = M.size - M.rank
    if columns is not None:
        if len(columns) != k:
            raise BlowupError(f"need exactly {k} columns, got {len(columns)}")
        sub = M.phi.submatrix(range(M.size), columns)
        gens = normalize_gens(_maximal_minors(sub), X.f) if k else [Poly.const(X.f.ring, 1)]
        if not gens:
            raise BlowupError(f"columns {columns} are dependent modulo f")
        cols = list(columns)
    else:
        gens, cols = minors_ideal(M.phi, X.f, k)
    return BlowupIdeal(Ideal.of(gens, X.f.ring), "villamayor-minors", {"columns": cols})


def section_ideal(
    M: MatrixFactorisation, X: HypersurfaceSingularity, tries: int = 20, seed: int = 0, sections=None
) -> BlowupIdeal:
    """Quotient of M by r - 1 constant sections, presented as an ideal.

    The sections are appended to phi as extra columns; the quotient has rank
    one, and the minors of n - 1 independent columns (sections first) give
    it as an ideal. Genericity is certified afterwards: the sections must be
    independent of the image of phi and the ideal must cut out a divisor on
    V(f). ``sections`` (a list of coefficient vectors) bypasses the draw.
    """
    _check_inputs(M, X)
    n, r = M.size, M.rank
    ring = X.f.ring
    rng = random.Random(seed)
    dimX = X.dim
    failures = []
    attempts = [sections] if sections is not None else [None] * tries
    for attempt, forced in enumerate(attempts):
        if forced is None:
            S = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(r - 1)]
        else:
            S = [list(s) for s in forced]
        if len(S) != r - 1:
            raise BlowupError(f"need {r - 1} sections, got {len(S)}")
        rows = []
        for i in range(n):
            rows.append([Poly.const(ring, S[k][i]) for k in range(r - 1)] + M.phi.row(i))
        P = PolyMatrix.from_rows(rows) if r > 1 else M.phi
        try:
            gens, cols = minors_ideal(P, X.f, n - 1, first=list(range(r - 1)))
        except BlowupError as exc:
            failures.append((S, str(exc)))
            continue
        if sum(1 for c in cols if c < r - 1) != r - 1:
            failures.append((S, "a section lies in the image of phi generically"))
            continue
        I = Ideal.of(gens, ring)
        d, _ = dimension_and_degree(I + [X.f])
        if not (d == dimX - 1 or (len(gens) == 1 and gens[0].is_constant())):
            failures.append((S, f"degeneracy certificate failed: dim V(I, f) = {d}, want {dimX - 1}"))
            continue
        return BlowupIdeal(I, "generic-sections", {"sections": S, "seed": seed, "attempt": attempt, "columns": cols})
    detail = "; ".join(f"{s}: {msg}" for s, msg in failures[:5])
    raise BlowupError(f"no generic sections after {len(attempts)} tries ({detail})")


def base_change_fibre(I_family: BlowupIdeal, t_value, t_var: str = "t", f: Poly | None = None) -> BlowupIdeal:
    """Specialize a family ideal at ``t = t_value``; the result drops ``t``."""
    ring = I_family.ring
    if t_var not in ring:
        raise BlowupError(f"{t_var} is not a ring variable")
    small = tuple(v for v in ring if v != t_var)
    gens = [g.subs({t_var: Poly.const(ring, t_value)}).to_ring(small) for g in I_family.generators()]
    if f is not None:
        f0 = f.subs({t_var: Poly.const(ring, t_value)}).to_ring(small)
        gens = normalize_gens(gens, f0)
    else:
        gens = [g.primitive() for g in gens if not g.is_zero()]
    if not gens:
        raise BlowupError(f"ideal vanishes identically at {t_var} = {t_value}")
    return BlowupIdeal(Ideal.of(gens, small), "base-change", {"t": t_value, "from": I_family.source})
