"""Batch front end: ``python -m mcmflop <command> [input] [options]``.

Exit status is 0 on success, 1 when a computation or verification fails,
and 2 when the input cannot be parsed. With ``--format json`` every run
prints exactly one JSON document, including failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .blowup import (
    BlowupError,
    HypersurfaceSingularity,
    classify_rdp,
    exceptional_fibre,
    fibre_dimension,
    rees_charts,
    singular_locus,
    singularity_labels,
    villamayor_ideal,
)
from .catalogue import CatalogueError, family, knorrer_from_scope, load_catalogue, load_families
from .flop import FlopError, build_family, central_fibre, verify_flop
from .graph import GraphError, ade_type, from_spec, fundamental_cycle, katz_morrison, wunram_table
from .mf import FactorisationError, is_minimal, verify_mf
from .polycore import ParseError, order_by_name
from .textformat import Document, Scope, parse_document

COMMANDS = ("verify-mf", "blowup", "classify", "graph", "flop", "catalogue")


class VerificationFailed(Exception):
    """The computation ran but a certificate did not hold."""

    def __init__(self, message: str, report: dict):
        super().__init__(message)
        self.report = report


@dataclass
class JobSpec:
    command: str
    input_path: str | None = None
    order: str = "degrevlex"
    seed: int = 0
    search_degree: int = 3
    format: str = "text"
    t_values: list = field(default_factory=list)
    fixture: str | None = None
    length: int | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        order_by_name(self.order)
        if self.search_degree < 0:
            raise ValueError("--search-degree must be non-negative")
        if self.format not in ("text", "json"):
            raise ValueError("--format must be text or json")


# ---------------------------------------------------------------- helpers


def _read_doc(path: str | None) -> Document:
    if path is None:
        raise ParseError("this command needs an input file")
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text)


def _scopes(doc: Document) -> list[Scope]:
    return doc.entries if doc.entries else [doc.top]


def _mf_from_scope(sc: Scope):
    f = sc.poly("f")
    phi = sc.matrix("phi")
    if not phi.is_square:
        raise FactorisationError(f"phi is {phi.rows} x {phi.cols}; a matrix factorisation needs square matrices")
    psi = sc.matrix("psi") if "psi" in sc.matrices else phi.adjugate()
    return verify_mf(phi, psi, f)


def _name(sc: Scope) -> str:
    h = sc.header
    return f"{h['label']}/{h['index']}" if h else "input"


def _gb_strings(I, order_name: str) -> list[str]:
    G = I.with_gb(order_by_name(order_name))
    return [str(g) for g in G.gb]


# ---------------------------------------------------------------- commands


def cmd_verify_mf(job: JobSpec) -> dict:
    out = []
    for sc in _scopes(_read_doc(job.input_path)):
        M = _mf_from_scope(sc)
        if sc.header and M.rank != sc.header["rank"]:
            raise FactorisationError(f"{_name(sc)}: declared rank {sc.header['rank']}, computed {M.rank}")
        out.append({"name": _name(sc), "f": str(M.f), "size": M.size, "rank": M.rank,
                    "minimal": is_minimal(M), "notes": list(M.notes)})
    return {"modules": out}


def _chart_report(ch, order: str) -> dict:
    rep = singular_locus(ch)
    return {
        "chart": ch.chart_index,
        "vars": list(ch.vars),
        "defining_ideal_gb": _gb_strings(ch.defining_ideal, order),
        "exceptional_ideal": [str(g) for g in ch.exceptional_ideal.nonzero_gens()],
        "model_vars": list(ch.model.vars),
        "model_ideal": [str(g) for g in ch.model.ideal.with_gb().gb],
        "empty": ch.empty,
        "smooth": rep.smooth,
        "singular_locus_dimension": rep.singular_locus_dimension,
        "normal": rep.normal,
        "singularities": [p.label for p in rep.points] + (["unknown"] * bool(rep.irrational_points)),
    }


def cmd_blowup(job: JobSpec) -> dict:
    out = []
    for sc in _scopes(_read_doc(job.input_path)):
        M = _mf_from_scope(sc)
        X = HypersurfaceSingularity.of(M.f)
        I = villamayor_ideal(M, X)
        charts = rees_charts(I, X)
        item = {
            "name": _name(sc),
            "f": str(M.f),
            "rank": M.rank,
            "ideal": [str(g) for g in I.generators()],
            "columns": I.witness.get("columns"),
            "charts": [_chart_report(c, job.order) for c in charts],
            "singularities": singularity_labels(charts),
        }
        if X.dim == 2:
            fib = exceptional_fibre(charts, seed=job.seed)
            item["exceptional_multiplicity"] = fib.generic_multiplicity
            item["fibre_dimension"] = fib.dimension
        else:
            item["fibre_dimension"] = fibre_dimension(charts)
        out.append(item)
    return {"blowups": out}


def cmd_classify(job: JobSpec) -> dict:
    out = []
    for sc in _scopes(_read_doc(job.input_path)):
        if not sc.polys:
            raise ParseError("no polynomial to classify", sc.line)
        name = "g" if "g" in sc.polys else ("f" if "f" in sc.polys else next(iter(sc.polys)))
        g = sc.polys[name]
        cls = classify_rdp(g)
        out.append({"name": _name(sc), "poly": str(g), "label": cls.label, "tau": cls.tau,
                    "mu": cls.mu, "corank": cls.corank})
    return {"classifications": out}


def cmd_graph(job: JobSpec) -> dict:
    rep: dict = {}
    if job.input_path is not None:
        doc = _read_doc(job.input_path)
        spec = doc.top.graph
        if spec is None:
            raise ParseError("input has no graph block")
        G = from_spec(spec)
        Z = fundamental_cycle(G)
        rep["nodes"] = list(G.nodes)
        rep["type"] = ade_type(G)
        rep["fundamental_cycle"] = list(Z.as_tuple(G))
        if rep["type"] is not None:
            rep["wunram_table"] = [list(p) for p in wunram_table(G)]
    if job.length is not None:
        rep["katz_morrison"] = {"length": job.length, "type": katz_morrison(job.length)}
    if not rep:
        raise ParseError("graph needs an input file or --length")
    return rep


def _families_for(job: JobSpec):
    if job.input_path is None:
        fx = family(job.fixture or "atiyah")
        return [(fx.name, fx.K, fx.z_var, fx.t_var)]
    doc = _read_doc(job.input_path)
    out = []
    for sc in _scopes(doc):
        K, z, t = knorrer_from_scope(sc)
        name = sc.header["label"] if sc.header else "input"
        if job.fixture is None or job.fixture == name:
            out.append((name, K, z, t))
    if not out:
        raise ParseError(f"no family named {job.fixture!r} in {job.input_path}")
    return out


def cmd_flop(job: JobSpec) -> dict:
    reports = []
    failed = []
    t_values = tuple(dict.fromkeys([0, 1] + list(job.t_values)))
    for name, K, z, t in _families_for(job):
        D = build_family(K, z, t)
        R = verify_flop(D, search_degree=job.search_degree, t_values=t_values, seed=job.seed)
        X0, M0, surf = central_fibre(D, seed=job.seed)
        rec = {
            "name": name,
            "f": str(D.family.f),
            "I_N": [str(g) for g in D.I_N.generators()],
            "I_Nplus": [str(g) for g in D.I_Nplus.generators()],
            "rdp_type": R.rdp_type,
            "length": R.length,
            "rank": R.rank,
            "simple": R.simple,
            "small": R.small,
            "smooth": R.smooth,
            "singular_points": R.singular_points,
            "exceptional_dimension": R.exceptional_dimension,
            "swap_certified": R.swap_certified,
            "swap_witness": list(R.swap_witness) if R.swap_witness else None,
            "sides_distinct": R.sides_distinct,
            "base_change_ok": {str(k): v for k, v in R.base_change_ok.items()},
            "central_fibre": {
                "f": str(X0.f),
                "phi": str(M0.phi),
                "multiplicity": surf.fibre.generic_multiplicity,
                "residual": surf.residual,
                "smooth": surf.smooth,
            },
            "notes": R.notes,
        }
        reports.append(rec)
        if not (R.swap_certified and all(R.base_change_ok.values())):
            failed.append(name)
    result = {"families": reports}
    if failed:
        raise VerificationFailed(f"flop certificates failed for {', '.join(failed)}", result)
    return result


def cmd_catalogue(job: JobSpec) -> dict:
    entries = load_catalogue(job.input_path)
    fams = load_families()
    return {
        "entries": [{"name": e.name, "f": str(e.M.f), "size": e.M.size, "rank": e.rank,
                     "minimal": is_minimal(e.M)} for e in entries],
        "families": [{"name": fx.name, "G": str(fx.K.G), "z": fx.z_var, "t": fx.t_var} for fx in fams],
    }


HANDLERS = {
    "verify-mf": cmd_verify_mf,
    "blowup": cmd_blowup,
    "classify": cmd_classify,
    "graph": cmd_graph,
    "flop": cmd_flop,
    "catalogue": cmd_catalogue,
}

CONTRACT_ERRORS = (FactorisationError, BlowupError, FlopError, GraphError, CatalogueError, ValueError)


def run(job: JobSpec) -> tuple[int, dict]:
    base = {"command": job.command, "seed": job.seed, "version": __version__}
    try:
        body = HANDLERS[job.command](job)
        return 0, {**base, "status": "ok", **body}
    except ParseError as exc:
        return 2, {**base, "status": "error", "kind": "parse", "message": exc.message,
                   "line": exc.line, "col": exc.col}
    except VerificationFailed as exc:
        return 1, {**base, "status": "failed", "kind": "verification", "message": str(exc), **exc.report}
    except CONTRACT_ERRORS as exc:
        return 1, {**base, "status": "error", "kind": type(exc).__name__, "message": str(exc)}


# ---------------------------------------------------------------- text output


def _text(report: dict, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for k, v in report.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(_text(item, indent + 1))
                lines.append("")
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(line for line in lines if line is not None)


def _parse_t(s: str):
    try:
        return Fraction(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mcmflop", description="Blowups in MCM modules and flops of cDV families.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", help="input file in the line-oriented text format")
    p.add_argument("--order", default="degrevlex", choices=("lex", "degrevlex"), help="order for reported bases")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--search-degree", type=int, default=3, help="bound for fractional-ideal witnesses")
    p.add_argument("--format", default="text", choices=("text", "json"))
    p.add_argument("--t", dest="t_values", type=_parse_t, action="append", default=[],
                   help="extra t value for the base-change check (repeatable)")
    p.add_argument("--fixture", help="family name inside the input (default: all; shipped atiyah without input)")
    p.add_argument("--length", type=int, help="graph: also look up the Katz-Morrison type for this length")
    return p


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    raise TypeError(type(x).__name__)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    job = JobSpec(args.command, args.input, args.order, args.seed, args.search_degree, args.format,
                  args.t_values, args.fixture, args.length)
    code, report = run(job)
    if job.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True, default=_jsonable))
    else:
        stream = sys.stdout if code == 0 else sys.stderr
        print(_text(report), file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
