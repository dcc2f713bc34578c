"""Dual graphs of exceptional curves, fundamental cycles and contraction data.

Dynkin diagrams use Bourbaki numbering:

* A_n: the path 1 - 2 - ... - n.
* D_n: the path 1 - ... - (n-2), with n-1 and n both attached to n-2.
* E_n: the path 1 - 3 - 4 - ... - n, with 2 attached to 4.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class DualGraph:
    nodes: tuple[int, ...]
    self_intersections: tuple[int, ...]
    edges: frozenset  # of frozenset({i, j})
    label: str | None = None

    def __post_init__(self):
        if len(set(self.nodes)) != len(self.nodes):
            raise GraphError("repeated node id")
        if len(self.self_intersections) != len(self.nodes):
            raise GraphError("one self-intersection per node")
        ids = set(self.nodes)
        for e in self.edges:
            if len(e) != 2 or not set(e) <= ids:
                raise GraphError(f"bad edge {sorted(e)}")

    @classmethod
    def build(cls, nodes, edges, self_int=-2, label=None) -> "DualGraph":
        nodes = tuple(nodes)
        si = tuple(self_int for _ in nodes) if isinstance(self_int, int) else tuple(self_int)
        return cls(nodes, si, frozenset(frozenset(e) for e in edges), label)

    def neighbours(self, i) -> list[int]:
        return sorted(j for e in self.edges if i in e for j in e if j != i)

    def degree(self, i) -> int:
        return len(self.neighbours(i))

    def intersection(self, i, j) -> int:
        if i == j:
            return self.self_intersections[self.nodes.index(i)]
        return 1 if frozenset((i, j)) in self.edges else 0

    def matrix(self) -> list[list[int]]:
        return [[self.intersection(i, j) for j in self.nodes] for i in self.nodes]

    def induced(self, keep) -> "DualGraph":
        keep = [i for i in self.nodes if i in set(keep)]
        si = tuple(self.self_intersections[self.nodes.index(i)] for i in keep)
        edges = frozenset(e for e in self.edges if e <= set(keep))
        return DualGraph(tuple(keep), si, edges)

    def components(self) -> list[tuple[int, ...]]:
        seen: set = set()
        out = []
        for i in self.nodes:
            if i in seen:
                continue
            stack, comp = [i], []
            seen.add(i)
            while stack:
                k = stack.pop()
                comp.append(k)
                for j in self.neighbours(k):
                    if j not in seen:
                        seen.add(j)
                        stack.append(j)
            out.append(tuple(sorted(comp)))
        return out

    def is_negative_definite(self) -> bool:
        """Sylvester: leading principal minors alternate in sign, starting negative."""
        M = self.matrix()
        for k in range(1, len(M) + 1):
            d = _det([row[:k] for row in M[:k]])
            if (d < 0) != (k % 2 == 1) or d == 0:
                return False
        return True

    def to_text(self) -> str:
        lines = ["graph"]
        lines += [f"  node {i} {s}" for i, s in zip(self.nodes, self.self_intersections)]
        lines += [f"  edge {a} {b}" for a, b in sorted(tuple(sorted(e)) for e in self.edges)]
        lines.append("end")
        return "\n".join(lines)


def _det(M) -> Fraction:
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            t = A[r][c] / A[c][c]
            A[r] = [a - t * b for a, b in zip(A[r], A[c])]
    return det


# ---------------------------------------------------------------- built-ins


def A(n: int) -> DualGraph:
    if n < 1:
        raise GraphError("A_n needs n >= 1")
    return DualGraph.build(range(1, n + 1), [(i, i + 1) for i in range(1, n)], label=f"A{n}")


def D(n: int) -> DualGraph:
    if n < 4:
        raise GraphError("D_n needs n >= 4")
    edges = [(i, i + 1) for i in range(1, n - 2)] + [(n - 2, n - 1), (n - 2, n)]
    return DualGraph.build(range(1, n + 1), edges, label=f"D{n}")


def E(n: int) -> DualGraph:
    if n not in (6, 7, 8):
        raise GraphError("E_n needs n in 6..8")
    edges = [(1, 3), (2, 4)] + [(i, i + 1) for i in range(3, n)]
    return DualGraph.build(range(1, n + 1), edges, label=f"E{n}")


def builtin(name: str) -> DualGraph:
    name = name.strip().upper()
    try:
        kind, n = name[0], int(name[1:])
    except (IndexError, ValueError):
        raise GraphError(f"unknown graph {name!r}") from None
    if kind == "A":
        return A(n)
    if kind == "D":
        return D(n)
    if kind == "E":
        return E(n)
    raise GraphError(f"unknown graph {name!r}")


def from_spec(spec: dict) -> DualGraph:
    """Graph from a parsed ``graph`` block (see :mod:`mcmflop.textformat`)."""
    if "builtin" in spec:
        return builtin(spec["builtin"])
    ids = {}
    for name, _ in spec["nodes"]:
        ids[name] = int(name) if name.isdigit() else len(ids) + 1
    nodes = [ids[n] for n, _ in spec["nodes"]]
    si = [s for _, s in spec["nodes"]]
    for a, b in spec["edges"]:
        if a not in ids or b not in ids:
            raise GraphError(f"edge {a} {b} names an unknown node")
    return DualGraph.build(nodes, [(ids[a], ids[b]) for a, b in spec["edges"]], si)


# ---------------------------------------------------------------- cycles


@dataclass(frozen=True)
class Cycle:
    coefficients: dict

    def __post_init__(self):
        if any(c < 0 for c in self.coefficients.values()):
            raise GraphError("cycle coefficients must be non-negative")

    def dot(self, G: DualGraph, i) -> int:
        return sum(c * G.intersection(j, i) for j, c in self.coefficients.items())

    def max(self) -> int:
        return max(self.coefficients.values(), default=0)

    def as_tuple(self, G: DualGraph) -> tuple[int, ...]:
        return tuple(self.coefficients[i] for i in G.nodes)


@dataclass(frozen=True)
class ChernVector:
    values: dict

    def __post_init__(self):
        if any(v < 0 for v in self.values.values()):
            raise GraphError("chern vector entries must be non-negative")

    @classmethod
    def indicator(cls, G: DualGraph, keep) -> "ChernVector":
        return cls({i: int(i in set(keep)) for i in G.nodes})


def fundamental_cycle(G: DualGraph) -> Cycle:
    """Laufer's sequence: start at sum E_i, add E_i while Z.E_i > 0."""
    if not G.is_negative_definite():
        raise GraphError("intersection matrix is not negative definite")
    Z = {i: 1 for i in G.nodes}
    while True:
        cyc = Cycle(Z)
        bad = next((i for i in G.nodes if cyc.dot(G, i) > 0), None)
        if bad is None:
            return cyc
        Z = dict(Z)
        Z[bad] += 1


def contraction_set(G: DualGraph, c: ChernVector) -> frozenset:
    """Curves with c_i = 0; these are contracted on the blowup."""
    missing = set(G.nodes) - set(c.values)
    if missing:
        raise GraphError(f"chern vector lacks nodes {sorted(missing)}")
    return frozenset(i for i in G.nodes if c.values[i] == 0)


def ade_type(G: DualGraph) -> str | None:
    """ADE label of a connected all-(-2) tree, or None."""
    if any(s != -2 for s in G.self_intersections) or len(G.components()) != 1:
        return None
    n = len(G.nodes)
    if len(G.edges) != n - 1:
        return None
    branch = [i for i in G.nodes if G.degree(i) >= 3]
    if not branch:
        return f"A{n}"
    if len(branch) > 1 or G.degree(branch[0]) != 3:
        return None
    b = branch[0]
    arms = []
    for start in G.neighbours(b):
        length, prev, cur = 1, b, start
        while True:
            nxt = [j for j in G.neighbours(cur) if j != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return f"D{arms[2] + 3}"
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return f"E{arms[2] + 4}"
    return None


def wunram_table(G: DualGraph) -> list[tuple[int, int]]:
    """(node, rank of the indecomposable module attached to it) for ADE graphs."""
    if ade_type(G) is None:
        raise GraphError("Wunram tables are provided for ADE graphs only")
    Z = fundamental_cycle(G)
    return [(i, Z.coefficients[i]) for i in G.nodes]


_KM = {1: "A1", 2: "D4", 3: "E6", 4: "E7", 5: "E8", 6: "E8"}


def katz_morrison(l: int) -> str:
    """RDP type of the generic hyperplane section through a simple flop of length l."""
    if l not in _KM:
        raise GraphError(f"length must be in 1..6, got {l}")
    return _KM[l]


@dataclass(frozen=True)
class PartialResolution:
    kept: frozenset
    chern: ChernVector
    residual: tuple[str, ...]  # ADE labels of the contracted components, sorted
    components: tuple[tuple[int, ...], ...] = field(default=())


def residual_singularities(G: DualGraph, kept) -> PartialResolution:
    contracted = [i for i in G.nodes if i not in set(kept)]
    sub = G.induced(contracted)
    comps = tuple(sub.components()) if contracted else ()
    labels = []
    for comp in comps:
        lab = ade_type(G.induced(comp))
        labels.append(lab if lab is not None else "unknown")
    return PartialResolution(frozenset(kept), ChernVector.indicator(G, kept), tuple(sorted(labels)), comps)


def enumerate_partial_resolutions(G: DualGraph) -> list[PartialResolution]:
    """All 2^n choices of kept curves with the RDPs left by contracting the rest."""
    out = []
    for k in range(len(G.nodes) + 1):
        for kept in combinations(G.nodes, k):
            out.append(residual_singularities(G, kept))
    return out
