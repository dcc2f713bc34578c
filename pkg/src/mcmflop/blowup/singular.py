"""Jacobian criterion on charts and recognition of rational double points."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..polycore import Ideal, Poly, PolyMatrix, all_minors, dimension_and_degree, ideal_equal, normal_form
from ..polycore.poly import QQ
from ..polycore.zerodim import local_length, rational_points, translate
from .charts import chart_point_key
from .types import BlowupChart, BlowupError, SingularityReport, SingularPoint


class NonIsolatedSingularity(BlowupError):
    pass


# ---------------------------------------------------------------- linear algebra over Q


def _rank_and_pivots(rows: list[list]) -> tuple[int, list[int], list[int]]:
    """Row-reduce a copy; return rank, pivot rows (original indices) and pivot columns."""
    A = [[QQ(c) for c in r] for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    perm = list(range(m))
    piv_cols = []
    r = 0
    for c in range(n):
        k = next((i for i in range(r, m) if A[i][c] != 0), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        perm[r], perm[k] = perm[k], perm[r]
        for i in range(r + 1, m):
            if A[i][c] != 0:
                t = A[i][c] / A[r][c]
                A[i] = [a - t * b for a, b in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    return r, perm[:r], piv_cols


def _null_space(rows: list[list], n: int) -> list[list]:
    """Basis of {v : rows v = 0} in Q^n."""
    A = [[QQ(c) for c in r] for r in rows]
    piv = []
    r = 0
    for c in range(n):
        k = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        A[r] = [a / A[r][c] for a in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                t = A[i][c]
                A[i] = [a - t * b for a, b in zip(A[i], A[r])]
        piv.append(c)
        r += 1
    free = [c for c in range(n) if c not in piv]
    basis = []
    for fc in free:
        v = [QQ(0)] * n
        v[fc] = QQ(1)
        for i, pc in enumerate(piv):
            v[pc] = -A[i][fc]
        basis.append(v)
    return basis


def _linear_coeffs(p: Poly) -> list:
    out = []
    for i in range(p.nvars):
        e = tuple(1 if k == i else 0 for k in range(p.nvars))
        out.append(p.terms.get(e, QQ(0)))
    return out


# ---------------------------------------------------------------- classification


@dataclass(frozen=True)
class RDPClass:
    label: str  # "A3", "D4", "E6", ..., "smooth" or "not an RDP"
    tau: int
    mu: int | None = None
    corank: int | None = None

    @property
    def is_rdp(self) -> bool:
        return self.label not in ("not an RDP", "smooth")

    def __str__(self) -> str:
        return self.label


def _binary_cubic_type(c: Poly, a: str, b: str) -> str:
    """'zero', 'triple' (cube of a linear form) or 'distinct' (at least two distinct roots)."""
    if c.is_zero():
        return "zero"
    coeff = [c.terms.get(tuple(3 - k if v == a else k for v in c.ring), QQ(0)) for k in range(4)]
    # c = sum coeff[k] a^(3-k) b^k ; it is a cube iff its Hessian covariant vanishes
    c0, c1, c2, c3 = coeff
    h0 = c1 * c1 - 3 * c0 * c2
    h1 = c1 * c2 - 9 * c0 * c3
    h2 = c2 * c2 - 3 * c1 * c3
    return "triple" if h0 == 0 and h1 == 0 and h2 == 0 else "distinct"


def classify_rdp(g: Poly, max_power: int = 30) -> RDPClass:
    """ADE type of the hypersurface germ g = 0 at the origin.

    Milnor and Tjurina numbers are computed as local lengths; an ADE germ is
    quasi-homogeneous, so the two must agree. The Hessian corank and, for
    corank 2, the shape of the cubic term on the Hessian kernel then separate
    the A, D and E series.
    """
    if g.constant_term() != 0:
        raise BlowupError("the germ must pass through the origin")
    if g.is_zero():
        raise NonIsolatedSingularity("zero polynomial")
    ring = g.ring
    n = len(ring)
    if g.order() == 1:
        return RDPClass("smooth", 0, 0, 0)
    partials = [g.derivative(v) for v in ring]
    tau = local_length(Ideal.of([g] + partials, ring), max_power)
    if tau is None:
        raise NonIsolatedSingularity(f"Tjurina algebra of {g} is infinite dimensional")
    mu = local_length(Ideal.of(partials, ring), max_power)
    if mu is None:
        raise NonIsolatedSingularity(f"Milnor algebra of {g} is infinite dimensional")
    hess = [[g.homogeneous_part(2).derivative(a).derivative(b).constant_term() for b in ring] for a in ring]
    rank = _rank_and_pivots(hess)[0] if any(any(r) for r in hess) else 0
    corank = n - rank
    if mu != tau:
        return RDPClass("not an RDP", tau, mu, corank)
    if corank <= 1:
        return RDPClass(f"A{mu}", tau, mu, corank)
    if corank == 2 and n >= 2:
        k1, k2 = _null_space(hess, n)
        ab = ("_a", "_b")
        A, B = Poly.var(ab, "_a"), Poly.var(ab, "_b")
        sub = {v: A.scale(k1[i]) + B.scale(k2[i]) for i, v in enumerate(ring)}
        cubic = g.homogeneous_part(3).subs(sub, ab)
        kind = _binary_cubic_type(cubic, "_a", "_b")
        if kind == "distinct" and mu >= 4:
            return RDPClass(f"D{mu}", tau, mu, corank)
        if kind == "triple" and 6 <= mu <= 8:
            return RDPClass(f"E{mu}", tau, mu, corank)
    return RDPClass("not an RDP", tau, mu, corank)


# ---------------------------------------------------------------- local equations


def _series_solve(eqs: list[Poly], pivots: list[str], D: int) -> dict[str, Poly]:
    """Power series P(Q) with eqs(P(Q), Q) = 0 up to degree D.

    The linear part of ``eqs`` in ``pivots`` must be invertible.
    """
    ring = eqs[0].ring
    rest = tuple(v for v in ring if v not in pivots)
    L = [[_linear_coeffs(e)[ring.index(p)] for p in pivots] for e in eqs]
    k = len(pivots)
    # invert L by Gauss-Jordan
    aug = [list(map(QQ, row)) + [QQ(1 if i == j else 0) for j in range(k)] for i, row in enumerate(L)]
    for c in range(k):
        piv = next(i for i in range(c, k) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        aug[c] = [a / aug[c][c] for a in aug[c]]
        for i in range(k):
            if i != c and aug[i][c] != 0:
                t = aug[i][c]
                aug[i] = [a - t * b for a, b in zip(aug[i], aug[c])]
    Linv = [row[k:] for row in aug]
    # eqs = L P + N(P, Q); fixed point P = -Linv N(P, Q)
    N = []
    for e in eqs:
        lin = sum((Poly.var(ring, p).scale(_linear_coeffs(e)[ring.index(p)]) for p in pivots), Poly.zero(ring))
        N.append(e - lin)
    sol = {p: Poly.zero(rest) for p in pivots}
    for _ in range(D + 1):
        vals = [q.subs(sol, rest).truncate(D) for q in N]
        new = {}
        for i, p in enumerate(pivots):
            acc = Poly.zero(rest)
            for j in range(k):
                if Linv[i][j] != 0:
                    acc = acc - vals[j].scale(Linv[i][j])
            new[p] = acc.truncate(D)
        if new == sol:
            break
        sol = new
    return sol


def local_equation(I: Ideal, point: dict, D: int = 12) -> Poly | None:
    """A hypersurface equation for V(I) at ``point``, truncated at degree D.

    Returns None when the embedding dimension exceeds dim + 1 (then the
    point is not a hypersurface singularity and so not an RDP).
    """
    ring = I.ring
    gens = [translate(g, point) for g in I.with_gb().gb]
    d, _ = dimension_and_degree(I)
    c = len(ring) - d
    jac = [_linear_coeffs(g) for g in gens]
    rank, prow, pcol = _rank_and_pivots(jac)
    if rank < c - 1:
        return None
    if rank >= c:
        return Poly.var(ring, ring[0])  # smooth point: any order-one germ
    pivots = [ring[j] for j in pcol]
    sol = _series_solve([gens[i] for i in prow], pivots, D) if pivots else {}
    rest = tuple(v for v in ring if v not in pivots)
    others = [gens[i].subs(sol, rest).truncate(D) for i in range(len(gens)) if i not in prow]
    others = [h for h in others if not h.is_zero()]
    if not others:
        raise NonIsolatedSingularity("local equation vanishes to the truncation order")
    return min(others, key=lambda h: (h.order(), len(h.terms)))


def classify_point(I: Ideal, point: dict) -> RDPClass:
    """Classify V(I) at a rational point, enlarging the truncation until determinacy holds."""
    D = 8
    while True:
        h = local_equation(I, point, D)
        if h is None:
            return RDPClass("not an RDP", -1)
        cls = classify_rdp(h)
        if cls.mu is None or cls.mu + 1 <= D or D >= 40:
            return cls
        D = cls.mu + 2


# ---------------------------------------------------------------- charts


def _is_complete_intersection(I: Ideal, c: int, limit: int = 200) -> bool:
    G = I.with_gb()
    gens = list(G.gb)
    if c == 0:
        return not gens
    if len(gens) == c:
        return True
    pool = list(dict.fromkeys(gens + I.nonzero_gens()))
    for k, sub in enumerate(combinations(pool, c)):
        if k >= limit:
            break
        if ideal_equal(Ideal.of(list(sub), I.ring), G):
            return True
    return False


def jacobian_ideal(I: Ideal, batch: int = 24) -> tuple[Ideal, int]:
    """I plus the c x c minors of the Jacobian of its Groebner basis; also returns c.

    Minors are reduced against the running basis and added in batches of
    increasing degree, so the many redundant ones never enter Buchberger.
    """
    G = I.with_gb()
    d, _ = dimension_and_degree(G)
    c = len(I.ring) - d
    if c == 0 or d < 0:
        return G, c
    J = PolyMatrix.from_rows([[g.derivative(v) for v in I.ring] for g in G.gb])
    pending = sorted(
        {m for m in all_minors(J, c).values() if not m.is_zero()},
        key=lambda p: (p.total_degree(), len(p.terms)),
    )
    cur = G
    while pending:
        fresh = []
        rest = []
        for m in pending:
            r = normal_form(m, cur)
            if r.is_zero():
                continue
            (fresh if len(fresh) < batch else rest).append(r)
        if not fresh:
            break
        cur = Ideal.of(list(cur.gb) + fresh, I.ring).with_gb()
        if cur.is_unit():
            break
        pending = rest
    return cur, c


def singular_locus(chart: BlowupChart) -> SingularityReport:
    """Jacobian criterion on the chart model, with ADE labels at rational points."""
    model = chart.model
    I = model.ideal
    if chart.empty or I.is_unit():
        return SingularityReport(-1, (), True, "normal", True)
    d, _ = dimension_and_degree(I)
    S, c = jacobian_ideal(I)
    ci = _is_complete_intersection(I, c)
    if c == 0:
        return SingularityReport(-1, (), True, "normal", True)
    sdim, _ = dimension_and_degree(S)
    if sdim < 0:
        return SingularityReport(-1, (), True, "normal", ci)
    entries = []
    points = []
    irrational = 0
    hypersurface_everywhere = False
    if sdim == 0:
        pts, total = rational_points(S)
        irrational = total - len(pts)
        hypersurface_everywhere = irrational == 0
        for pt in pts:
            cls = classify_point(I, pt)
            if cls.tau == -1:
                hypersurface_everywhere = False
            amb = {k: q.evaluate(pt) for k, q in model.coords.items()}
            pid = Ideal.of([Poly.var(I.ring, v) - pt[v] for v in I.ring], I.ring)
            entries.append((pid, cls.label))
            points.append(SingularPoint(chart.chart_index, amb, cls.label, cls.tau))
        if irrational:
            entries.append((S, "unknown"))
    else:
        entries.append((S, "unknown"))
    normal = "normal" if sdim <= d - 2 and (ci or hypersurface_everywhere) else "undetermined"
    return SingularityReport(sdim, tuple(entries), False, normal, ci, tuple(points), irrational)


def blowup_singularities(charts: list[BlowupChart]) -> list[SingularPoint]:
    """Rational singular points over all charts, each point listed once."""
    seen = {}
    for ch in charts:
        rep = singular_locus(ch)
        for p in rep.points:
            key = chart_point_key(ch, p.coordinates)
            seen.setdefault(key, p)
    return list(seen.values())


def singularity_labels(charts: list[BlowupChart]) -> list[str]:
    return sorted(p.label for p in blowup_singularities(charts))

