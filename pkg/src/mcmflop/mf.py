"""Matrix factorisations as the representation of MCM modules on hypersurfaces.

A pair (phi, psi) of n x n polynomial matrices with phi psi = psi phi = f I
stands for the module coker(phi) on V(f). Modules are compared only through
their stored matrices; isomorphism of factorisations is never decided here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .polycore import Ideal, Poly, PolyMatrix, block_diag, groebner_basis, normal_form
from .polycore.matrix import all_minors


class FactorisationError(ValueError):
    """A pair of matrices fails to factor the hypersurface equation."""


def reducer(f: Poly):
    """Return ``p -> normal form of p modulo (f)``."""
    I = groebner_basis(Ideal.of([f]))
    return lambda p: normal_form(p, I)


def generic_rank_mod(M: PolyMatrix, f: Poly) -> int:
    """Rank of ``M`` over the function field of V(f), by minors modulo f.

    If every k-minor vanishes modulo f, so does every larger minor (Laplace),
    hence the scan stops at the first size with no surviving minor.
    """
    red = reducer(f)
    rho = 0
    for k in range(1, min(M.rows, M.cols) + 1):
        vals = all_minors(M, k)
        if any(not red(p).is_zero() for p in vals.values()):
            rho = k
        else:
            break
    return rho


@dataclass(frozen=True, eq=False)
class MatrixFactorisation:
    f: Poly
    phi: PolyMatrix
    psi: PolyMatrix
    rank: int
    notes: tuple[str, ...] = field(default=())

    @property
    def size(self) -> int:
        return self.phi.rows

    @property
    def ring(self) -> tuple[str, ...]:
        return self.f.ring

    def same_pair(self, other: "MatrixFactorisation") -> bool:
        return self.f == other.f and self.phi == other.phi and self.psi == other.psi

    def check(self) -> None:
        _check_products(self.phi, self.psi, self.f)


def _check_products(phi: PolyMatrix, psi: PolyMatrix, f: Poly) -> None:
    if not (phi.is_square and psi.is_square) or phi.rows != psi.rows:
        raise FactorisationError(
            f"phi ({phi.rows}x{phi.cols}) and psi ({psi.rows}x{psi.cols}) must be square of equal size"
        )
    if phi.ring != f.ring or psi.ring != f.ring:
        raise FactorisationError("phi, psi and f must share a ring")
    n = phi.rows
    for name, prod in (("phi*psi", phi @ psi), ("psi*phi", psi @ phi)):
        for i in range(n):
            for j in range(n):
                want = f if i == j else Poly.zero(f.ring)
                if prod[i, j] != want:
                    raise FactorisationError(
                        f"{name} entry ({i + 1},{j + 1}) is {prod[i, j]}, expected {want}"
                    )


def verify_mf(phi: PolyMatrix, psi: PolyMatrix, f: Poly) -> MatrixFactorisation:
    """Validate (phi, psi) as a matrix factorisation of ``f`` and compute its rank."""
    if f.is_zero() or f.is_constant():
        raise FactorisationError("f must be a non-constant polynomial")
    _check_products(phi, psi, f)
    rank = phi.rows - generic_rank_mod(phi, f)
    notes = []
    if not _entries_in_max_ideal(phi) or not _entries_in_max_ideal(psi):
        notes.append("non-minimal: a unit entry splits off a trivial summand")
    return MatrixFactorisation(f, phi, psi, rank, tuple(notes))


def _entries_in_max_ideal(M: PolyMatrix) -> bool:
    return all(e.constant_term() == 0 for e in M.entries)


def is_minimal(M: MatrixFactorisation) -> bool:
    """True iff no entry of phi or psi is a unit at the origin.

    A unit entry in phi splits off (1, f) (a zero summand of the module); a
    unit in psi splits off (f, 1), a free summand of coker phi.
    """
    return _entries_in_max_ideal(M.phi) and _entries_in_max_ideal(M.psi)


def syzygy(M: MatrixFactorisation) -> MatrixFactorisation:
    """The swapped pair (psi, phi): coker psi is the first syzygy of coker phi."""
    return verify_mf(M.psi, M.phi, M.f)


def apply_involution(M: MatrixFactorisation, z_var: str) -> MatrixFactorisation:
    """Pull back along z -> -z; requires f to be invariant."""
    sub = {z_var: -Poly.var(M.ring, z_var)}
    if M.f.subs(sub) != M.f:
        raise FactorisationError(f"f = {M.f} is not fixed by {z_var} -> -{z_var}")
    return MatrixFactorisation(M.f, M.phi.subs(sub), M.psi.subs(sub), M.rank, M.notes)


@dataclass(frozen=True, eq=False)
class KnorrerDatum:
    """Theta with theta^2 = -G I over a ring not involving the square variable."""

    G: Poly
    theta: PolyMatrix

    def __post_init__(self):
        n = self.theta.rows
        if not self.theta.is_square or n % 2:
            raise FactorisationError("theta must be square of even size 2l")
        if self.theta.ring != self.G.ring:
            raise FactorisationError("theta and G must share a ring")
        sq = self.theta @ self.theta
        target = PolyMatrix.identity(self.G.ring, n, -self.G)
        if sq != target:
            bad = next((i, j) for i in range(n) for j in range(n) if sq[i, j] != target[i, j])
            raise FactorisationError(
                f"theta^2 != -G*I: entry ({bad[0] + 1},{bad[1] + 1}) is {sq[bad]}, expected {target[bad]}"
            )

    @property
    def l(self) -> int:
        return self.theta.rows // 2

    @classmethod
    def from_curve_factorisation(cls, alpha: PolyMatrix, beta: PolyMatrix) -> "KnorrerDatum":
        """Theta = [[0, alpha], [beta, 0]] from a factorisation alpha beta = -G."""
        k = alpha.rows
        G = -(alpha @ beta)[0, 0]
        z = PolyMatrix.zeros(alpha.ring, k, k)
        top = z.hstack(alpha)
        bottom = beta.hstack(z)
        theta = PolyMatrix.from_rows(top.tolist() + bottom.tolist())
        return cls(G, theta)


def knorrer_lift(K: KnorrerDatum, z_var: str) -> tuple[MatrixFactorisation, MatrixFactorisation]:
    """(z I + theta, z I - theta) over f = z^2 + G, and its syzygy."""
    ring = K.G.ring
    if z_var in ring and (K.G.variables() & {z_var} or any(z_var in e.variables() for e in K.theta.entries)):
        raise FactorisationError(f"G and theta must not involve {z_var}")
    big = ring if z_var in ring else (z_var,) + ring
    z = Poly.var(big, z_var)
    theta = K.theta.to_ring(big)
    n = theta.rows
    zI = PolyMatrix.identity(big, n, z)
    f = z * z + K.G.to_ring(big)
    N = verify_mf(zI + theta, zI - theta, f)
    if K.G.is_zero():
        N = MatrixFactorisation(N.f, N.phi, N.psi, N.rank, N.notes + ("f = z^2 is not reduced",))
    return N, syzygy(N)


def specialize(M: MatrixFactorisation, var: str, value) -> MatrixFactorisation:
    """Substitute ``var = value`` everywhere and drop ``var`` from the ring."""
    if var not in M.ring:
        raise FactorisationError(f"{var} is not a ring variable")
    small = tuple(v for v in M.ring if v != var)
    sub = {var: Poly.const(M.ring, value)}
    f = M.f.subs(sub).to_ring(small)
    return verify_mf(M.phi.subs(sub).to_ring(small), M.psi.subs(sub).to_ring(small), f)


def trivial_factorisation(f: Poly, free: bool = False) -> MatrixFactorisation:
    """(1, f), whose cokernel is zero; with ``free`` the pair (f, 1), cokernel O."""
    one = PolyMatrix(1, 1, (Poly.const(f.ring, 1),))
    ff = PolyMatrix(1, 1, (f,))
    return verify_mf(ff, one, f) if free else verify_mf(one, ff, f)


def direct_sum(M1: MatrixFactorisation, M2: MatrixFactorisation) -> MatrixFactorisation:
    if M1.f != M2.f:
        raise FactorisationError("direct sum needs factorisations of the same f")
    phi = block_diag(M1.phi, M2.phi)
    psi = block_diag(M1.psi, M2.psi)
    _check_products(phi, psi, M1.f)
    notes = tuple(dict.fromkeys(M1.notes + M2.notes))
    return MatrixFactorisation(M1.f, phi, psi, M1.rank + M2.rank, notes)


def direct_sum_all(mfs) -> MatrixFactorisation:
    mfs = list(mfs)
    out = mfs[0]
    for m in mfs[1:]:
        out = direct_sum(out, m)
    return out


def independent_columns(phi: PolyMatrix, f: Poly, target: int, first: list[int] | None = None) -> list[int] | None:
    """Greedy column choice whose span has generic rank ``target`` modulo f."""
    red = reducer(f)
    chosen: list[int] = []
    order = list(first or []) + [j for j in range(phi.cols) if j not in (first or [])]
    for j in order:
        if len(chosen) == target:
            break
        trial = chosen + [j]
        sub = phi.submatrix(range(phi.rows), trial)
        k = len(trial)
        if any(not red(sub.submatrix(rows, range(k)).det()).is_zero() for rows in combinations(range(phi.rows), k)):
            chosen = trial
    return chosen if len(chosen) == target else None
