"""Write the shipped catalogue and family fixtures into src/mcmflop/data.

The A_n entries use uv = w^(n+1) with phi_j = [u, w^j; w^(n+1-j), v]. The D4
entries are Knoerrer lifts over z^2 + x^2 y - y^3 of the curve factorisations
through the three branches y, x - y, x + y (the leaves) and of the 2 x 2
factorisation with det = x^2 y - y^3 (the central node, rank 2).
"""

from pathlib import Path

from mcmflop.mf import KnorrerDatum, knorrer_lift, verify_mf
from mcmflop.polycore import PolyMatrix, parse_poly
from mcmflop.textformat import format_matrix

DATA = Path(__file__).resolve().parents[1] / "src" / "mcmflop" / "data"


def _entry(label: str, node: int, ring: str, M) -> str:
    return "\n".join([
        f"entry {label} {node} rank {M.rank}",
        f"  ring {ring}",
        f"  poly f = {M.f}",
        "  " + format_matrix("phi", M.phi),
        "  " + format_matrix("psi", M.psi),
        "end",
    ])


def a_entries(n: int) -> list[str]:
    R = ("u", "v", "w")
    f = parse_poly(f"u*v - w^{n + 1}", R)
    out = []
    for j in range(1, n + 1):
        rows = (["u", f"w^{j}"], [f"w^{n + 1 - j}", "v"])
        phi = PolyMatrix.from_rows([[parse_poly(s, R) for s in r] for r in rows])
        out.append(_entry(f"A{n}", j, "u v w", verify_mf(phi, phi.adjugate(), f)))
    return out


def d4_entries() -> list[str]:
    C = ("x", "y")
    G = parse_poly("x^2*y - y^3", C)
    facs = []
    for node, a in ((1, "y"), (3, "x - y"), (4, "x + y")):
        al = parse_poly(a, C)
        facs.append((node, PolyMatrix.from_rows([[al]]), PolyMatrix.from_rows([[-G.exact_div(al)]])))
    al = PolyMatrix.from_rows([[parse_poly(s, C) for s in r] for r in (["y", "x*y"], ["-x", "-y^2"])])
    facs.append((2, al, -al.adjugate()))
    out = []
    R = ("x", "y", "z")
    for node, al, be in sorted(facs, key=lambda t: t[0]):
        N, _ = knorrer_lift(KnorrerDatum.from_curve_factorisation(al, be), "z")
        M = verify_mf(N.phi.to_ring(R), N.psi.to_ring(R), N.f.to_ring(R))
        out.append(_entry("D4", node, "x y z", M))
    return out


FAMILIES = """\
# One-parameter families z^2 + G(x, y, t) given by Knoerrer data.
# 'knorrer G theta z=<square variable> t=<parameter>'.

# Atiyah flop: x^2 + yz - t^2 with x as the square variable,
# phi = [x + t, y; -z, x - t].
entry atiyah 1 rank 1
  ring y z t
  poly G = y*z - t^2
  matrix theta 2 2 = [t, y; -z, -t]
  knorrer G theta z=x t=t
end

# (z - x)(z + x) = (y - t)(y + t)(y - 2t); central fibre A2, one curve kept.
entry a2family 1 rank 1
  ring x y t
  poly G = -x^2 - (y - t)*(y + t)*(y - 2*t)
  matrix theta 2 2 = [x, y - t; (y + t)*(y - 2*t), -x]
  knorrer G theta z=z t=t
end

# Product of the A1 surface with a line; G does not involve t.
entry cylinder 1 rank 1
  ring y z t
  poly G = y*z
  matrix theta 2 2 = [0, y; -z, 0]
  knorrer G theta z=x t=t
end
"""


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    blocks = ["# Indecomposable MCM modules on A1-A4 and D4 (Bourbaki node numbering)."]
    for n in range(1, 5):
        blocks += a_entries(n)
    blocks += d4_entries()
    (DATA / "catalogue.txt").write_text("\n\n".join(blocks) + "\n")
    (DATA / "families.txt").write_text(FAMILIES)
    print(f"wrote {DATA / 'catalogue.txt'} and {DATA / 'families.txt'}")


if __name__ == "__main__":
    main()
