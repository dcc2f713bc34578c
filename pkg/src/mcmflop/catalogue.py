"""Shipped catalogue of indecomposable modules and Knoerrer family fixtures.

Every record is re-verified on load: the products must equal f I and the
computed rank must match the declared one. ``MCMFLOP_CATALOGUE`` and
``MCMFLOP_FAMILIES`` override the bundled files.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .graph import DualGraph, builtin
from .mf import FactorisationError, KnorrerDatum, MatrixFactorisation, verify_mf
from .textformat import Scope, parse_document

CATALOGUE_ENV = "MCMFLOP_CATALOGUE"
FAMILIES_ENV = "MCMFLOP_FAMILIES"


class CatalogueError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CatalogueEntry:
    label: str  # singularity type, e.g. "A3"
    node: int  # Bourbaki index of the exceptional curve
    rank: int
    M: MatrixFactorisation

    @property
    def graph(self) -> DualGraph:
        return builtin(self.label)

    @property
    def name(self) -> str:
        return f"{self.label}/{self.node}"


@dataclass(frozen=True, eq=False)
class FamilyFixture:
    name: str
    rank: int
    K: KnorrerDatum
    z_var: str
    t_var: str


def _read(path: str | Path | None, env: str, default: str) -> str:
    path = path or os.environ.get(env)
    if path:
        return Path(path).read_text()
    return resources.files("mcmflop.data").joinpath(default).read_text()


def entry_from_scope(sc: Scope) -> CatalogueEntry:
    hdr = sc.header
    try:
        M = verify_mf(sc.matrix("phi"), sc.matrix("psi"), sc.poly("f"))
    except FactorisationError as exc:
        raise CatalogueError(f"entry {hdr['label']} {hdr['index']} (line {sc.line}): {exc}") from None
    if M.rank != hdr["rank"]:
        raise CatalogueError(
            f"entry {hdr['label']} {hdr['index']} (line {sc.line}): declared rank {hdr['rank']}, computed {M.rank}"
        )
    return CatalogueEntry(hdr["label"], hdr["index"], M.rank, M)


def load_catalogue(path: str | Path | None = None) -> list[CatalogueEntry]:
    doc = parse_document(_read(path, CATALOGUE_ENV, "catalogue.txt"))
    return [entry_from_scope(sc) for sc in doc.entries]


def knorrer_from_scope(sc: Scope) -> tuple[KnorrerDatum, str, str]:
    k = sc.knorrer
    if k is None:
        raise CatalogueError(f"block at line {sc.line} has no 'knorrer' statement")
    try:
        K = KnorrerDatum(sc.poly(k["G"]), sc.matrix(k["theta"]))
    except FactorisationError as exc:
        raise CatalogueError(f"knorrer datum at line {k['line']}: {exc}") from None
    return K, k["z"], k["t"] or "t"


def load_families(path: str | Path | None = None) -> list[FamilyFixture]:
    doc = parse_document(_read(path, FAMILIES_ENV, "families.txt"))
    out = []
    for sc in doc.entries:
        K, z, t = knorrer_from_scope(sc)
        out.append(FamilyFixture(sc.header["label"], sc.header["rank"], K, z, t))
    return out


def family(name: str) -> FamilyFixture:
    for fx in load_families():
        if fx.name == name:
            return fx
    raise KeyError(name)


def entries_for(label: str, path=None) -> list[CatalogueEntry]:
    return [e for e in load_catalogue(path) if e.label == label]
