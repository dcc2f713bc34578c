import pytest

from conftest import Mat, P
from mcmflop.blowup import (
    BlowupError,
    BlowupIdeal,
    HypersurfaceSingularity,
    NonIsolatedSingularity,
    base_change_fibre,
    classify_rdp,
    dehomogenize,
    exceptional_fibre,
    fibre_dimension,
    fractional_equivalent,
    local_equation,
    normalize_gens,
    rees_charts,
    rees_kernel,
    section_ideal,
    singular_locus,
    singularity_labels,
    villamayor_ideal,
)
from mcmflop.blowup.ideals import chart_ready
from mcmflop.mf import FactorisationError, direct_sum, trivial_factorisation, verify_mf
from mcmflop.polycore import Ideal, dimension_and_degree, ideal_equal

R = ("u", "v", "w")
XYZ = ("x", "y", "z")


def a_module(n, j):
    f = P(f"u*v - w^{n + 1}", R)
    phi = Mat([["u", f"w^{j}"], [f"w^{n + 1 - j}", "v"]], R)
    return verify_mf(phi, phi.adjugate(), f)


def surface(n):
    return HypersurfaceSingularity.of(P(f"u*v - w^{n + 1}", R))


# ------------------------------------------------------------ inputs


def test_hypersurface_validation():
    with pytest.raises(BlowupError):
        HypersurfaceSingularity.of(P("1", R))
    with pytest.raises(BlowupError):
        HypersurfaceSingularity.of(P("u*v - 1", R))
    X = HypersurfaceSingularity.of(P("u*v - 1", R), local=False)
    assert X.dim == 2


def test_normalize_gens():
    f = P("u*v - w^2", R)
    gens = normalize_gens([P("2*u", R), P("u", R), P("u*v", R) - f, P("0", R)], f)
    assert gens == sorted(set(gens), key=gens.index)
    assert P("u", R) in gens and len(gens) == 2
    assert normalize_gens([P("3", R), P("u", R)], f) == [P("1", R)]


# ------------------------------------------------------------ ideals


@pytest.mark.parametrize("n,j", [(1, 1), (2, 1), (2, 2), (3, 2), (4, 3)])
def test_villamayor_ideal_of_a_modules(n, j):
    M = a_module(n, j)
    I = villamayor_ideal(M, surface(n))
    want = Ideal.of([P("u", R), P(f"w^{n + 1 - j}", R)])
    assert ideal_equal(I.gens + [M.f], want + [M.f])


def test_villamayor_rejects_wrong_surface():
    with pytest.raises(BlowupError):
        villamayor_ideal(a_module(2, 1), surface(3))


def test_villamayor_forced_columns():
    M = a_module(2, 1)
    I = villamayor_ideal(M, surface(2), columns=[1])
    assert I.witness["columns"] == [1]
    with pytest.raises(BlowupError):
        villamayor_ideal(M, surface(2), columns=[0, 1])


def test_free_module_gives_unit_ideal():
    f = P("u*v - w^2", R)
    free = trivial_factorisation(f, free=True)
    I = villamayor_ideal(free, surface(1))
    assert I.generators() == [P("1", R)]
    (ch,) = rees_charts(I, surface(1))
    assert ch.exceptional_ideal.is_unit()


def test_section_ideal_rank_one_is_villamayor():
    M = a_module(3, 2)
    S = section_ideal(M, surface(3))
    assert S.witness["sections"] == []
    assert fractional_equivalent(S, villamayor_ideal(M, surface(3)), surface(3))


def test_section_ideal_of_direct_sum_agrees_locally():
    # A constant section can drop rank away from the origin; here the section
    # ideal also vanishes at the smooth point u = v = -8, w = 4, so the two
    # routes agree in the local ring at the origin but not globally.
    M = direct_sum(a_module(2, 1), a_module(2, 2))
    X = surface(2)
    S = section_ideal(M, X, seed=3)
    V = villamayor_ideal(M, X)
    assert len(S.witness["sections"]) == 1
    assert not fractional_equivalent(V, S, X, search_degree=2, local=False)
    eq = fractional_equivalent(V, S, X, search_degree=2)
    assert eq.equivalent and eq.local and eq.confidence == "witness"


def test_section_ideal_reports_bad_sections():
    M = direct_sum(a_module(2, 1), a_module(2, 2))
    with pytest.raises(BlowupError, match="sections"):
        section_ideal(M, surface(2), sections=[[0, 0, 0, 0]])


def test_fractional_equivalence_scaled_and_not():
    X = surface(1)
    I = BlowupIdeal(Ideal.of([P("u", R), P("w", R)]), "test", {})
    J = BlowupIdeal(Ideal.of([P("u*w", R), P("w^2", R)]), "test", {})
    eq = fractional_equivalent(I, J, X)
    assert eq and eq.witness is not None
    principal = BlowupIdeal(Ideal.of([P("u", R)]), "test", {})
    no = fractional_equivalent(I, principal, X, search_degree=2)
    assert not no and no.confidence == "no witness up to degree 2"


def test_base_change_fibre():
    ring = ("x", "y", "t")
    I = BlowupIdeal(Ideal.of([P("x + t", ring), P("y", ring)]), "test", {})
    J = base_change_fibre(I, 0)
    assert J.ring == ("x", "y")
    assert ideal_equal(J.gens, Ideal.of([P("x", J.ring), P("y", J.ring)]))
    with pytest.raises(BlowupError):
        base_change_fibre(BlowupIdeal(Ideal.of([P("t", ring)]), "test", {}), 0)
    with pytest.raises(BlowupError):
        base_change_fibre(I, 0, t_var="s")


# ------------------------------------------------------------ charts


@pytest.mark.parametrize("n,j", [(1, 1), (2, 1), (3, 2)])
def test_charts_match_dehomogenized_rees_kernel(n, j):
    X = surface(n)
    I = chart_ready(villamayor_ideal(a_module(n, j), X), X.f)
    K = rees_kernel(I, X)
    ys = [v for v in K.ring if v not in X.ambient_vars]
    for ch in rees_charts(I, X, reduce=False):
        D = dehomogenize(K, ys, ch.chart_index, ch.ratio_vars)
        assert D.ring == ch.defining_ideal.ring
        assert ideal_equal(D, ch.defining_ideal)


def test_chart_models_are_isomorphic_embeddings():
    X = surface(2)
    charts = rees_charts(villamayor_ideal(a_module(2, 1), X), X)
    for ch in charts:
        m = ch.model
        pulled = [g.subs({v: m.coords[v] for v in ch.vars}, m.vars) for g in ch.defining_ideal.nonzero_gens()]
        assert all(m.ideal.with_gb().contains(p) for p in pulled)
        assert dimension_and_degree(m.ideal)[0] == 2


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_single_module_residuals(n):
    X = surface(n)
    for j in range(1, n + 1):
        charts = rees_charts(villamayor_ideal(a_module(n, j), X), X)
        want = sorted(f"A{k}" for k in (j - 1, n - j) if k > 0)
        assert singularity_labels(charts) == want
        assert fibre_dimension(charts) == 1


def test_singular_locus_report_fields():
    X = surface(2)
    charts = rees_charts(villamayor_ideal(a_module(2, 1), X), X)
    reports = [singular_locus(ch) for ch in charts]
    assert any(r.smooth for r in reports)
    sing = [r for r in reports if not r.smooth]
    assert len(sing) == 1
    (rep,) = sing
    assert rep.singular_locus_dimension == 0 and rep.normal == "normal"
    assert rep.labels() == ["A1"]


# ------------------------------------------------------------ classification


@pytest.mark.parametrize(
    "g,label",
    [
        ("x^2 + y^2 + z^2", "A1"),
        ("x*y + z^2", "A1"),
        ("x*y - z^5", "A4"),
        ("x^2 + y^2*z + z^3", "D4"),
        ("x^2*y - y^3 + z^2", "D4"),
        ("x^2 + y^2*z + z^5", "D6"),
        ("x^2 + y^3 + z^4", "E6"),
        ("x^2 + y^3 + y*z^3", "E7"),
        ("x^2 + y^3 + z^5", "E8"),
        ("x^2 + y^3 + z^3 + z^4", "D4"),
        ("(x + y)^2 + y^3 + z^2", "A2"),
    ],
)
def test_classify_rdp(g, label):
    assert classify_rdp(P(g, XYZ)).label == label


def test_classify_smooth_and_non_rdp():
    smooth = classify_rdp(P("x + y^2", XYZ))
    assert smooth.label == "smooth" and not smooth.is_rdp
    assert not classify_rdp(P("x^3 + y^3 + z^3", XYZ)).is_rdp
    with pytest.raises(NonIsolatedSingularity):
        classify_rdp(P("x^2 + y^2", XYZ))


def test_local_equation_of_graph_embedding():
    ring = ("x", "y", "z", "s")
    I = Ideal.of([P("x*y - z^3", ring), P("s - x - y^2", ring)])
    g = local_equation(I, {v: 0 for v in ring})
    assert g is not None and len(g.ring) == 3
    assert classify_rdp(g).label == "A2"
    assert local_equation(Ideal.of([P("x*y", ring), P("z*s", ring)]), {v: 0 for v in ring}) is None


# ------------------------------------------------------------ fibres


def test_exceptional_fibre_a_modules():
    for n, j in ((1, 1), (3, 2)):
        X = surface(n)
        fib = exceptional_fibre(rees_charts(villamayor_ideal(a_module(n, j), X), X))
        comps, mult = fib
        assert mult == 1 and fib.dimension == 1 and comps


def test_direct_sum_of_a_module_with_itself():
    # The fibre scheme over the origin is reduced; the pulled-back maximal
    # ideal picks up multiplicity 2 along the exceptional curve.
    M = a_module(1, 1)
    X = surface(1)
    fib = exceptional_fibre(rees_charts(villamayor_ideal(direct_sum(M, M), X), X))
    assert fib.generic_multiplicity == 1
    assert fib.divisor_multiplicity == 2


def test_villamayor_refuses_mismatched_ring():
    M = a_module(1, 1)
    X = HypersurfaceSingularity.of(P("x^2 + y*z", XYZ))
    with pytest.raises((BlowupError, FactorisationError)):
        villamayor_ideal(M, X)
