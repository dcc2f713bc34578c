import pytest

from conftest import Mat, P
from mcmflop.mf import (
    FactorisationError,
    KnorrerDatum,
    apply_involution,
    direct_sum,
    is_minimal,
    knorrer_lift,
    specialize,
    syzygy,
    trivial_factorisation,
    verify_mf,
)
from mcmflop.polycore import PolyMatrix
from mcmflop.textformat import format_scope, parse_document

R3 = ("u", "v", "w")


def a_module(n: int, j: int):
    f = P(f"u*v - w^{n + 1}", R3)
    phi = Mat([["u", f"w^{j}"], [f"w^{n + 1 - j}", "v"]], R3)
    return verify_mf(phi, phi.adjugate(), f)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_a_modules_have_rank_one(n):
    for j in range(1, n + 1):
        M = a_module(n, j)
        assert M.rank == 1
        assert is_minimal(M)
        assert syzygy(M).rank == 1


def test_products_are_checked():
    f = P("u*v - w^2", R3)
    phi = Mat([["u", "w"], ["w", "v"]], R3)
    psi = Mat([["v", "w"], ["w", "u"]], R3)
    with pytest.raises(FactorisationError, match="entry"):
        verify_mf(phi, psi, f)


def test_nonsquare_rejected():
    f = P("u*v - w^2", R3)
    phi = Mat([["u", "w", "v"], ["w", "v", "u"]], R3)
    with pytest.raises(FactorisationError, match="square"):
        verify_mf(phi, phi, f)


def test_trivial_factorisations():
    f = P("u*v - w^2", R3)
    zero = trivial_factorisation(f)
    free = trivial_factorisation(f, free=True)
    assert zero.rank == 0 and free.rank == 1
    assert not is_minimal(zero) and not is_minimal(free)
    assert zero.notes and free.notes


def test_direct_sum_rank_adds():
    S = direct_sum(a_module(3, 1), a_module(3, 2))
    assert S.rank == 2 and S.size == 4


def test_knorrer_lift_and_involution():
    ring = ("y", "z", "t")
    K = KnorrerDatum(P("y*z - t^2", ring), Mat([["t", "y"], ["-z", "-t"]], ring))
    N, Np = knorrer_lift(K, "x")
    assert N.f == P("x^2 + y*z - t^2", N.ring)
    assert N.rank == 1
    assert Np.same_pair(syzygy(N))
    # z -> -z sends (xI + theta) to (-(xI - theta)): the syzygy up to sign
    s = apply_involution(N, "x")
    assert s.phi == -Np.phi


def test_knorrer_rejects_bad_theta():
    ring = ("y", "z", "t")
    with pytest.raises(FactorisationError, match="theta"):
        KnorrerDatum(P("y*z - t^2", ring), Mat([["t", "y"], ["z", "-t"]], ring))


def test_specialize_keeps_rank():
    ring = ("y", "z", "t")
    K = KnorrerDatum(P("y*z - t^2", ring), Mat([["t", "y"], ["-z", "-t"]], ring))
    N, _ = knorrer_lift(K, "x")
    M0 = specialize(N, "t", 0)
    assert M0.ring == ("x", "y", "z")
    assert M0.rank == 1


def test_text_format_round_trip():
    M = a_module(2, 1)
    text = format_scope(M.ring, {"f": M.f}, {"phi": M.phi, "psi": M.psi})
    doc = parse_document(text)
    assert doc.top.poly("f") == M.f
    assert doc.top.matrix("phi") == M.phi
    assert doc.top.matrix("psi") == M.psi


def test_text_format_errors_carry_positions():
    from mcmflop.polycore import ParseError

    bad = "ring x y\nmatrix m 2 2 = [x, y;\n  y, ]\n"
    with pytest.raises(ParseError) as exc:
        parse_document(bad)
    assert exc.value.line == 3
    with pytest.raises(ParseError) as exc:
        parse_document("poly f = x\n")
    assert exc.value.line == 1


def test_multiline_matrix_and_entries():
    text = """
    entry A1 1 rank 1
      ring u v w
      poly f = u*v - w^2
      matrix phi 2 2 = [u, w;
                        w, v]
    end
    """
    doc = parse_document(text)
    (sc,) = doc.entries
    assert sc.header == {"label": "A1", "index": 1, "rank": 1}
    assert sc.matrix("phi") == PolyMatrix.from_rows([[P("u", R3), P("w", R3)], [P("w", R3), P("v", R3)]])
