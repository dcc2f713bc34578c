from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcmflop.graph import (
    A,
    ChernVector,
    Cycle,
    D,
    DualGraph,
    E,
    GraphError,
    ade_type,
    builtin,
    contraction_set,
    enumerate_partial_resolutions,
    fundamental_cycle,
    katz_morrison,
    wunram_table,
)

ADE = [A(n) for n in range(1, 7)] + [D(n) for n in range(4, 8)] + [E(6), E(7), E(8)]


def _dot(G, Z, i):
    return sum(Z[j] * G.intersection(j, i) for j in G.nodes)


def _exhaustive_minimal(G: DualGraph, bound: int):
    """Coefficient-wise minimum over all cycles >= 1 with Z.E_i <= 0, coefficients <= bound."""
    best = None
    for coeffs in product(range(1, bound + 1), repeat=len(G.nodes)):
        Z = dict(zip(G.nodes, coeffs))
        if all(_dot(G, Z, i) <= 0 for i in G.nodes):
            if best is None:
                best = Z
            else:
                best = {i: min(best[i], Z[i]) for i in G.nodes}
    return best


@pytest.mark.parametrize("G", [A(3), A(8), D(4), D(5), D(8), E(6), E(7)], ids=lambda G: G.label)
def test_fundamental_cycle_is_minimal_by_exhaustive_search(G):
    Z = fundamental_cycle(G)
    bound = Z.max() + 1
    best = _exhaustive_minimal(G, bound)
    assert best == Z.coefficients
    assert all(Z.dot(G, i) <= 0 for i in G.nodes)


def test_non_ade_fundamental_cycle_by_exhaustive_search():
    G = DualGraph.build([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4)], [-2, -3, -2, -2])
    Z = fundamental_cycle(G)
    assert _exhaustive_minimal(G, 3) == Z.coefficients
    assert ade_type(G) is None
    with pytest.raises(GraphError):
        wunram_table(G)


@pytest.mark.parametrize(
    "G,want",
    [
        (A(4), (1, 1, 1, 1)),
        (D(4), (1, 2, 1, 1)),
        (D(6), (1, 2, 2, 2, 1, 1)),
        (E(6), (1, 2, 2, 3, 2, 1)),
        (E(7), (2, 2, 3, 4, 3, 2, 1)),
        (E(8), (2, 3, 4, 6, 5, 4, 3, 2)),
    ],
    ids=lambda v: getattr(v, "label", None) or str(v),
)
def test_known_fundamental_cycles(G, want):
    # Bourbaki numbering; for E_n the branch node is 4 and node 2 is the short arm
    assert fundamental_cycle(G).as_tuple(G) == want


def test_e8_fundamental_cycle_exact():
    assert fundamental_cycle(E(8)).as_tuple(E(8)) == (2, 3, 4, 6, 5, 4, 3, 2)


def test_single_node():
    G = DualGraph.build([1], [])
    assert fundamental_cycle(G).as_tuple(G) == (1,)


@pytest.mark.parametrize("G", ADE, ids=lambda G: G.label)
def test_ade_type_recognises_builtins(G):
    assert ade_type(G) == G.label
    assert G.is_negative_definite()


def test_not_negative_definite_rejected():
    affine_a = DualGraph.build([1, 2, 3], [(1, 2), (2, 3), (3, 1)])
    assert not affine_a.is_negative_definite()
    with pytest.raises(GraphError):
        fundamental_cycle(affine_a)
    d4_affine = DualGraph.build([0, 1, 2, 3, 4], [(0, 1), (0, 2), (0, 3), (0, 4)])
    with pytest.raises(GraphError):
        fundamental_cycle(d4_affine)


def test_katz_morrison_table():
    assert [katz_morrison(l) for l in range(1, 7)] == ["A1", "D4", "E6", "E7", "E8", "E8"]
    for bad in (0, 7):
        with pytest.raises(GraphError):
            katz_morrison(bad)


@pytest.mark.parametrize("l", range(1, 7))
def test_katz_morrison_consistent_with_fundamental_cycle(l):
    G = builtin(katz_morrison(l))
    Z = fundamental_cycle(G)
    assert Z.max() >= l
    assert l in Z.coefficients.values()


def test_wunram_ranks():
    assert dict(wunram_table(D(4))) == {1: 1, 2: 2, 3: 1, 4: 1}
    assert {r for _, r in wunram_table(A(5))} == {1}
    assert max(r for _, r in wunram_table(E(8))) == 6


@pytest.mark.parametrize("G", ADE, ids=lambda G: G.label)
def test_indecomposable_contracts_all_but_one(G):
    for j in G.nodes:
        kept = set(G.nodes) - contraction_set(G, ChernVector.indicator(G, [j]))
        assert kept == {j}


def test_contraction_extremes():
    G = A(3)
    assert contraction_set(G, ChernVector({1: 1, 2: 2, 3: 1})) == frozenset()
    assert contraction_set(G, ChernVector({1: 0, 2: 0, 3: 0})) == frozenset(G.nodes)
    with pytest.raises(GraphError):
        ChernVector({1: -1})


def test_partial_resolutions_of_a2():
    prs = {pr.kept: pr.residual for pr in enumerate_partial_resolutions(A(2))}
    assert len(prs) == 4
    assert prs[frozenset({1})] == ("A1",)
    assert prs[frozenset({1, 2})] == ()
    assert prs[frozenset()] == ("A2",)


def test_partial_resolutions_of_e6_count():
    prs = enumerate_partial_resolutions(E(6))
    assert len(prs) == 2 ** 6
    assert all(lab != "unknown" for pr in prs for lab in pr.residual)


@given(st.integers(1, 8), st.integers(0, 255))
@settings(max_examples=50, deadline=None)
def test_an_residuals_are_path_pieces(n, mask):
    G = A(n)
    kept = [i for i in G.nodes if mask >> (i - 1) & 1]
    pr = next(p for p in enumerate_partial_resolutions(G) if p.kept == frozenset(kept))
    sizes = sorted(int(lab[1:]) for lab in pr.residual)
    assert sum(sizes) == n - len(kept)


def test_cycle_rejects_negative():
    with pytest.raises(GraphError):
        Cycle({1: -1})


def test_text_round_trip():
    from mcmflop.graph import from_spec
    from mcmflop.textformat import parse_document

    doc = parse_document(E(7).to_text())
    G = from_spec(doc.top.graph)
    assert ade_type(G) == "E7"
    assert fundamental_cycle(G).as_tuple(G) == fundamental_cycle(E(7)).as_tuple(E(7))
