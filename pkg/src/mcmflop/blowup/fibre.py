"""Exceptional fibre over the origin: components and generic multiplicity."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..polycore import Ideal, Poly, dimension_and_degree
from ..polycore.zerodim import local_length, radical_zero_dim, rational_points, translate
from .types import BlowupChart, BlowupError


@dataclass(frozen=True, eq=False)
class FibreComponent:
    chart_index: int
    ideal: Ideal  # the unreduced fibre in the chart model
    multiplicities: tuple[int, ...]  # one per component met by a generic hyperplane
    section_length: int  # length of the fibre cut by that hyperplane
    section_points: int  # number of geometric points of the cut


@dataclass(frozen=True, eq=False)
class ExceptionalFibre:
    components: list[FibreComponent]
    generic_multiplicity: int
    dimension: int
    divisor_multiplicity: int | None = None
    notes: tuple[str, ...] = field(default=())

    def __iter__(self):
        # unpacks as (components, generic_multiplicity)
        yield self.components
        yield self.generic_multiplicity


def fibre_ideal(chart: BlowupChart, point: dict | None = None) -> Ideal:
    """Chart model ideal plus the pulled-back maximal ideal of a base point (default 0)."""
    m = chart.model
    point = point or {}
    extra = [m.coords[v] - point.get(v, 0) for v in chart.original_vars]
    return m.ideal + extra


def divisor_ideal(chart: BlowupChart) -> Ideal:
    """Chart model ideal plus the exceptional generator, i.e. the divisor I O_Y."""
    m = chart.model
    g = chart.exceptional_ideal.nonzero_gens()[0]
    return m.ideal + [g.subs(m.coords, m.vars)]


def fibre_dimension(charts: list[BlowupChart], point: dict | None = None) -> int:
    return max((dimension_and_degree(fibre_ideal(c, point))[0] for c in charts if not c.empty), default=-1)


def _generic_cut(F: Ideal, rng: random.Random) -> tuple[Ideal, list[tuple[dict, int]], int, int]:
    """Cut a 1-dimensional ideal with a random affine hyperplane.

    Returns the cut, (point, local length) for its rational points, total
    length and number of geometric points.
    """
    ring = F.ring
    for _ in range(8):
        coeffs = [rng.randint(1, 7) for _ in ring]
        ell = sum((Poly.var(ring, v).scale(a) for v, a in zip(ring, coeffs)), Poly.zero(ring))
        c = rng.randint(2, 29)
        cut = F + [ell - c]
        d, length = dimension_and_degree(cut)
        if d != 0:
            continue
        _, npts = dimension_and_degree(radical_zero_dim(cut.with_gb()))
        pts, _ = rational_points(cut)
        local = []
        for p in pts:
            shifted = Ideal.of([translate(g, p) for g in cut.with_gb().gb], ring)
            local.append((p, local_length(shifted)))
        return cut, local, length, npts
    raise BlowupError("no hyperplane cut the fibre in finitely many points")


def _multiplicities(F: Ideal, rng) -> tuple[tuple[int, ...], int, int]:
    _, local, length, npts = _generic_cut(F, rng)
    mults = tuple(sorted((l for _, l in local), reverse=True))
    if len(local) < npts:
        # irrational points: fall back to the average, exact when all components agree
        rest = length - sum(mults)
        k = npts - len(local)
        mults = mults + (rest // k,) * k if rest % k == 0 else mults + (-1,)
    return mults, length, npts


def exceptional_fibre(charts: list[BlowupChart], seed: int = 0, point: dict | None = None) -> ExceptionalFibre:
    """Components of the fibre over the origin and their generic multiplicity.

    In each chart the fibre is cut by a random hyperplane; the local length
    at each point of the cut is the multiplicity of the component through it.
    The divisor I O_Y is measured the same way and reported alongside.
    """
    rng = random.Random(seed)
    comps: list[FibreComponent] = []
    dim = -1
    div_mult = None
    for ch in charts:
        if ch.empty:
            continue
        F = fibre_ideal(ch, point)
        d, _ = dimension_and_degree(F)
        dim = max(dim, d)
        if d >= 2:
            raise BlowupError(f"fibre has dimension {d} in chart {ch.chart_index}; not an isolated-surface blowup")
        if d == 1:
            mults, length, npts = _multiplicities(F, rng)
            comps.append(FibreComponent(ch.chart_index, F, mults, length, npts))
            if not ch.exceptional_ideal.is_unit():
                E = divisor_ideal(ch)
                if dimension_and_degree(E)[0] == 1:
                    dm, _, _ = _multiplicities(E, rng)
                    div_mult = max(div_mult or 0, max(dm))
    gm = max((max(c.multiplicities) for c in comps), default=0)
    notes = ()
    if any(-1 in c.multiplicities for c in comps):
        notes = ("irrational components with unequal multiplicities",)
    return ExceptionalFibre(comps, gm, dim, div_mult, notes)
