"""Affine charts of the blowup Proj of the Rees algebra."""

from __future__ import annotations

from ..polycore import Ideal, Poly, eliminate, saturate
from .ideals import chart_ready
from .types import BlowupChart, BlowupIdeal, ChartModel, HypersurfaceSingularity


def _fresh_names(taken, stem: str, count: int) -> list[str]:
    out = []
    k = 1
    used = set(taken)
    while len(out) < count:
        name = f"{stem}{k}"
        if name not in used:
            out.append(name)
            used.add(name)
        k += 1
    return out


def rees_kernel(I: BlowupIdeal, X: HypersurfaceSingularity, stem: str = "y") -> Ideal:
    """Homogeneous kernel of A[y_1..y_m] -> A[T], y_i -> g_i T.

    Returned in the ring (original vars, y_1, ..., y_m). Only practical for a
    handful of generators; charts are computed directly in :func:`rees_charts`.
    """
    gens = I.generators()
    ys = _fresh_names(X.ambient_vars + ("T",), stem, len(gens))
    T = "T" if "T" not in X.ambient_vars else _fresh_names(X.ambient_vars, "T", 1)[0]
    ring = (T,) + tuple(X.ambient_vars) + tuple(ys)
    Tv = Poly.var(ring, T)
    rel = [Poly.var(ring, y) - Tv * g.to_ring(ring) for y, g in zip(ys, gens)]
    rel.append(X.f.to_ring(ring))
    return eliminate(Ideal.of(rel, ring), [T])


def dehomogenize(K: Ideal, y_vars: list[str], i: int, ratio_names: dict[int, str]) -> Ideal:
    """Set y_i = 1 and rename the other y_j to the chart ratio names."""
    target = tuple(v for v in K.ring if v not in y_vars) + tuple(ratio_names[j] for j in sorted(ratio_names))
    values = {}
    for j, y in enumerate(y_vars):
        values[y] = Poly.const(target, 1) if j == i else Poly.var(target, ratio_names[j])
    return Ideal.of([g.subs(values, target) for g in K.nonzero_gens()], target)


def _linear_pivot(p: Poly, candidates) -> str | None:
    """A variable occurring in p only as a constant multiple of itself."""
    for v in candidates:
        if p.degree_in(v) != 1:
            continue
        i = p.ring.index(v)
        lin = [(e, c) for e, c in p.terms.items() if e[i]]
        if len(lin) == 1 and sum(lin[0][0]) == 1:
            return v
    return None


def simplify_chart(J: Ideal, prefer: tuple[str, ...]) -> ChartModel:
    """Eliminate variables that some generator expresses linearly.

    Variables in ``prefer`` are tried first. Returns the smaller embedding
    together with coordinates for every original chart variable.
    """
    ring = J.ring
    coords = {v: Poly.var(ring, v) for v in ring}
    cur = J.with_gb()
    while True:
        order = [v for v in prefer if v in cur.ring] + [v for v in cur.ring if v not in prefer]
        hit = None
        for p in cur.gb:
            v = _linear_pivot(p, order)
            if v is not None and (hit is None or order.index(v) < order.index(hit[1])):
                hit = (p, v)
        if hit is None:
            break
        p, v = hit
        i = p.ring.index(v)
        c = next(c for e, c in p.terms.items() if e[i])
        rest = p - Poly.var(p.ring, v).scale(c)
        small = tuple(w for w in cur.ring if w != v)
        image = (-rest).scale(1 / c).to_ring(small)
        sub = {v: image}
        coords = {k: q.subs(sub, small) for k, q in coords.items()}
        gens = [g.subs(sub, small) for g in cur.gb if g != p]
        cur = Ideal.of(gens, small).with_gb()
    return ChartModel(cur.ring, cur, coords)


def rees_charts(
    I: BlowupIdeal, X: HypersurfaceSingularity, stem: str = "r", reduce: bool = True
) -> list[BlowupChart]:
    """One chart per generator g_i: A[g_j/g_i] as (f, g_i r_j - g_j) : g_i^oo.

    A is a domain here, so this saturation is exactly the dehomogenized Rees
    kernel (cross-checked against :func:`rees_kernel` in the tests). With
    ``reduce`` the ideal first loses its monomial content and redundant
    generators, which leaves the blowup unchanged but can drop charts.
    """
    if reduce:
        I = chart_ready(I, X.f)
    gens = I.generators()
    ring0 = tuple(X.ambient_vars)
    if I.ring != ring0:
        raise ValueError(f"ideal ring {I.ring} differs from {ring0}")
    unit = any(g.is_constant() for g in gens) or Ideal.of(gens + [X.f], ring0).is_unit()
    if unit:
        J = Ideal.of([X.f], ring0).with_gb()
        model = simplify_chart(J, ())
        return [BlowupChart(0, ring0, J, Ideal.of([Poly.const(ring0, 1)]), ring0, {}, model)]
    names = _fresh_names(ring0, stem, len(gens))
    charts = []
    for i, gi in enumerate(gens):
        ratio = {j: names[j] for j in range(len(gens)) if j != i}
        ring = ring0 + tuple(ratio[j] for j in sorted(ratio))
        g_i = gi.to_ring(ring)
        rel = [X.f.to_ring(ring)] + [g_i * Poly.var(ring, ratio[j]) - gens[j].to_ring(ring) for j in sorted(ratio)]
        J = saturate(Ideal.of(rel, ring), g_i).with_gb()
        empty = J.is_unit()
        model = simplify_chart(J, ring0)
        charts.append(BlowupChart(i, ring, J, Ideal.of([g_i], ring), ring0, ratio, model, empty))
    return charts


def chart_point_key(chart: BlowupChart, coords: dict) -> tuple:
    """Chart-independent key: original coordinates plus the normalized ratio vector."""
    base = tuple(coords[v] for v in chart.original_vars)
    m = len(chart.ratio_vars) + 1
    vec = [None] * m
    vec[chart.chart_index] = 1
    for j, name in chart.ratio_vars.items():
        vec[j] = coords[name]
    lead = next(c for c in vec if c != 0)
    return base + tuple(c / lead for c in vec)
