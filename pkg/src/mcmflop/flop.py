"""One-parameter cDV families z^2 + G(x, y, t) and the flop between N and its syzygy.

Blowing up the 3-fold in N and in N+ = syzygy(N) gives the two small partial
resolutions. The checks here are the computable shadows of the flop: both
sides small, the involution z -> -z exchanging the two blowup ideals, the
blowups commuting with restriction to t = const, and the generic length of
the exceptional fibre over the origin.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .blowup import (
    BlowupChart,
    BlowupError,
    BlowupIdeal,
    ExceptionalFibre,
    HypersurfaceSingularity,
    base_change_fibre,
    classify_rdp,
    exceptional_fibre,
    fibre_dimension,
    fractional_equivalent,
    rees_charts,
    singular_locus,
    singularity_labels,
    villamayor_ideal,
)
from .blowup.singular import NonIsolatedSingularity, RDPClass
from .mf import KnorrerDatum, MatrixFactorisation, is_minimal, knorrer_lift, specialize, syzygy
from .polycore import Ideal, Poly, dimension_and_degree


class FlopError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FlopDatum:
    family: HypersurfaceSingularity
    K: KnorrerDatum | None
    N: MatrixFactorisation
    Nplus: MatrixFactorisation
    I_N: BlowupIdeal
    I_Nplus: BlowupIdeal
    W_charts: list[BlowupChart]
    Wplus_charts: list[BlowupChart]
    z_var: str
    t_var: str
    central_type: RDPClass
    notes: tuple[str, ...] = ()


@dataclass
class SurfaceReport:
    ideal: BlowupIdeal
    charts: list[BlowupChart]
    fibre: ExceptionalFibre
    residual: list[str]
    smooth: bool


@dataclass
class FlopReport:
    rdp_type: str
    length: int | None
    rank: int
    small: dict[str, bool]
    smooth: dict[str, str]
    swap_certified: bool
    base_change_ok: dict
    simple: bool
    swap_witness: tuple[str, str] | None = None
    sides_distinct: str = ""
    exceptional_dimension: dict[str, int] = field(default_factory=dict)
    surface_multiplicity: int | None = None
    singular_points: dict[str, list[str]] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.small.values()) and self.swap_certified and all(self.base_change_ok.values())


def _sigma(p: Poly, z_var: str) -> Poly:
    return p.subs({z_var: -Poly.var(p.ring, z_var)})


def involution_ideal(I: BlowupIdeal, z_var: str) -> BlowupIdeal:
    gens = [_sigma(g, z_var) for g in I.generators()]
    return BlowupIdeal(Ideal.of(gens, I.ring), I.source, dict(I.witness, involution=z_var))


def _central_type(f: Poly, t_var: str) -> RDPClass:
    small = tuple(v for v in f.ring if v != t_var)
    f0 = f.subs({t_var: Poly.const(f.ring, 0)}).to_ring(small)
    try:
        cls = classify_rdp(f0)
    except NonIsolatedSingularity as exc:
        raise FlopError(f"central fibre {f0} is not an isolated singularity: {exc}") from None
    if not cls.is_rdp:
        raise FlopError(f"central fibre {f0} is not an RDP")
    return cls


def assemble(N: MatrixFactorisation, z_var: str, t_var: str, K: KnorrerDatum | None = None) -> FlopDatum:
    """Blow up a 3-fold hypersurface in N and in its syzygy."""
    f = N.f
    if t_var not in f.ring:
        raise FlopError(f"{t_var} is not a ring variable of {f.ring}")
    notes = []
    if t_var not in f.variables():
        notes.append("f does not involve t: the family is a product")
    central = _central_type(f, t_var)
    X = HypersurfaceSingularity.of(f)
    Nplus = syzygy(N)
    I_N = villamayor_ideal(N, X)
    I_Np = villamayor_ideal(Nplus, X)
    W = rees_charts(I_N, X)
    Wp = rees_charts(I_Np, X)
    return FlopDatum(X, K, N, Nplus, I_N, I_Np, W, Wp, z_var, t_var, central, tuple(notes))


def build_family(K: KnorrerDatum, z_var: str, t_var: str) -> FlopDatum:
    """Knoerrer lift of K, then blowups of the 3-fold in N and N+."""
    N, _ = knorrer_lift(K, z_var)
    if t_var not in N.ring:
        raise FlopError(f"{t_var} is not a variable of the family ring {N.ring}")
    return assemble(N, z_var, t_var, K)


def _singular_locus_ideal(f: Poly) -> Ideal:
    return Ideal.of([f] + [f.derivative(v) for v in f.ring], f.ring)


def _exceptional_dimension(charts: list[BlowupChart], f: Poly) -> int:
    """Dimension of the preimage of Sing V(f): the exceptional locus lies inside it."""
    sing = _singular_locus_ideal(f)
    worst = -1
    for ch in charts:
        if ch.empty:
            continue
        m = ch.model
        pulled = [g.subs({v: m.coords[v] for v in f.ring}, m.vars) for g in sing.nonzero_gens()]
        d, _ = dimension_and_degree(m.ideal + pulled)
        worst = max(worst, d)
    return worst


def _side_verdict(charts: list[BlowupChart]) -> tuple[str, list[str]]:
    labels = []
    undetermined = False
    for ch in charts:
        rep = singular_locus(ch)
        if rep.smooth:
            continue
        if rep.singular_locus_dimension > 0:
            undetermined = True
        labels += [p.label for p in rep.points]
        if rep.irrational_points:
            labels.append("unknown")
    if not labels and not undetermined:
        return "smooth", []
    if undetermined:
        return "singular (positive-dimensional singular locus)", labels
    return "singular", sorted(set(labels))


def specialize_ideal_check(D: FlopDatum, t_value, search_degree: int = 3) -> bool:
    """Blowup ideal then restriction versus restriction then blowup ideal, both sides."""
    f = D.family.f
    small = tuple(v for v in f.ring if v != D.t_var)
    f_t = f.subs({D.t_var: Poly.const(f.ring, t_value)}).to_ring(small)
    X_t = HypersurfaceSingularity.of(f_t, local=False)
    for M, I in ((D.N, D.I_N), (D.Nplus, D.I_Nplus)):
        restricted = base_change_fibre(I, t_value, D.t_var, f)
        M_t = specialize(M, D.t_var, t_value)
        if M_t.rank != M.rank:
            return False
        direct = villamayor_ideal(M_t, X_t)
        if not fractional_equivalent(restricted, direct, f_t, search_degree):
            return False
    return True


def verify_flop(D: FlopDatum, search_degree: int = 3, t_values=(0, 1), seed: int = 0) -> FlopReport:
    """Run every flop certificate; failures are report fields, not exceptions.

    Non-minimal factorisations are refused, since a free or zero summand
    changes the module the flop is attached to.
    """
    if not is_minimal(D.N):
        raise FlopError("N is not minimal (a unit entry splits off a trivial summand)")
    f = D.family.f
    notes = list(D.notes)
    small, exc_dim, smooth, points = {}, {}, {}, {}
    for side, charts in (("W", D.W_charts), ("W+", D.Wplus_charts)):
        exc_dim[side] = _exceptional_dimension(charts, f)
        small[side] = exc_dim[side] <= 1 and fibre_dimension(charts) <= 1
        smooth[side], points[side] = _side_verdict(charts)

    swapped = involution_ideal(D.I_N, D.z_var)
    eq = fractional_equivalent(swapped, D.I_Nplus, D.family, search_degree)
    witness = (str(eq.witness[0]), str(eq.witness[1])) if eq.witness else None
    same = fractional_equivalent(D.I_N, D.I_Nplus, D.family, search_degree)
    distinct = "equivalent (no flop)" if same else same.confidence

    base = {}
    for tv in t_values:
        try:
            base[tv] = specialize_ideal_check(D, tv, search_degree)
        except (BlowupError, ValueError) as exc:
            notes.append(f"base change at t={tv}: {exc}")
            base[tv] = False

    length = None
    simple = False
    try:
        fib = exceptional_fibre(D.W_charts, seed=seed)
        simple = bool(fib.components) and max(c.section_points for c in fib.components) == 1
        length = fib.generic_multiplicity if simple else None
    except BlowupError as exc:
        notes.append(f"exceptional fibre: {exc}")
    surf_mult = None
    try:
        _, _, rep = central_fibre(D, seed=seed)
        surf_mult = rep.fibre.generic_multiplicity
    except (BlowupError, FlopError) as exc:
        notes.append(f"central fibre: {exc}")
    if not simple:
        notes.append("exceptional fibre is not a single curve: no length reported")
    return FlopReport(
        rdp_type=D.central_type.label,
        length=length,
        rank=D.N.rank,
        small=small,
        smooth=smooth,
        swap_certified=bool(eq),
        base_change_ok=base,
        simple=simple,
        swap_witness=witness,
        sides_distinct=distinct,
        exceptional_dimension=exc_dim,
        surface_multiplicity=surf_mult,
        singular_points=points,
        notes=notes,
    )


def central_fibre(D: FlopDatum, seed: int = 0) -> tuple[HypersurfaceSingularity, MatrixFactorisation, SurfaceReport]:
    """Restrict to t = 0 and blow up the RDP surface in the restricted module."""
    M0 = specialize(D.N, D.t_var, 0)
    if M0.rank != D.N.rank:
        raise FlopError(f"restriction to t=0 changes the rank from {D.N.rank} to {M0.rank}")
    X0 = HypersurfaceSingularity.of(M0.f)
    I0 = villamayor_ideal(M0, X0)
    charts = rees_charts(I0, X0)
    fib = exceptional_fibre(charts, seed=seed)
    smooth = all(singular_locus(ch).smooth for ch in charts)
    return X0, M0, SurfaceReport(I0, charts, fib, singularity_labels(charts), smooth)
