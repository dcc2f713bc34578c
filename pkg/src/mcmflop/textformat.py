"""Line-oriented text records for rings, polynomials, matrices, graphs and Knoerrer data.

Grammar (one statement per line, ``#`` starts a comment)::

    ring <var> <var> ...
    poly <name> = <polynomial>
    matrix <name> <rows> <cols> = [a, b; c, d]     # may continue over lines until ']'
    knorrer <G-name> <theta-name> z=<var> t=<var>
    graph builtin <A|D|E><n>
    graph
      node <id> <self-intersection>
      edge <id> <id>
    end
    entry <label> <index> rank <r>
      ...statements...
    end

Statements inside ``entry ... end`` form their own scope. Polynomials follow
the grammar in :mod:`mcmflop.polycore.parse`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .polycore import ParseError, Poly, PolyMatrix, parse_poly


@dataclass
class Scope:
    ring: tuple[str, ...] | None = None
    polys: dict[str, Poly] = field(default_factory=dict)
    matrices: dict[str, PolyMatrix] = field(default_factory=dict)
    knorrer: dict | None = None
    graph: dict | None = None
    header: dict | None = None
    line: int = 0

    def poly(self, name: str) -> Poly:
        if name not in self.polys:
            raise ParseError(f"no polynomial named {name!r}", self.line)
        return self.polys[name]

    def matrix(self, name: str) -> PolyMatrix:
        if name not in self.matrices:
            raise ParseError(f"no matrix named {name!r}", self.line)
        return self.matrices[name]


@dataclass
class Document:
    top: Scope
    entries: list[Scope]


_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse_document(text: str) -> Document:
    lines = text.splitlines()
    top = Scope()
    entries: list[Scope] = []
    cur = top
    i = 0
    in_graph = False
    while i < len(lines):
        lineno = i + 1
        raw = _strip_comment(lines[i])
        stripped = raw.strip()
        i += 1
        if not stripped:
            continue
        words = stripped.split()
        head = words[0]
        col0 = len(raw) - len(raw.lstrip())

        if in_graph:
            if head == "end":
                in_graph = False
            elif head == "node":
                if len(words) != 3:
                    raise ParseError("expected: node <id> <self-intersection>", lineno, col0 + 1)
                try:
                    cur.graph["nodes"].append((words[1], int(words[2])))
                except ValueError:
                    raise ParseError("self-intersection must be an integer", lineno, col0 + 1) from None
            elif head == "edge":
                if len(words) != 3:
                    raise ParseError("expected: edge <id> <id>", lineno, col0 + 1)
                cur.graph["edges"].append((words[1], words[2]))
            else:
                raise ParseError(f"unexpected {head!r} inside graph block", lineno, col0 + 1)
            continue

        if head == "ring":
            names = words[1:]
            if not names:
                raise ParseError("ring needs at least one variable", lineno, col0 + 1)
            for nm in names:
                if not _IDENT.match(nm):
                    raise ParseError(f"bad variable name {nm!r}", lineno, raw.find(nm) + 1)
            if len(set(names)) != len(names):
                raise ParseError("repeated variable in ring", lineno, col0 + 1)
            cur.ring = tuple(names)
        elif head == "poly":
            m = re.match(r"\s*poly\s+([A-Za-z_][A-Za-z_0-9]*)\s*=(.*)$", raw)
            if not m:
                raise ParseError("expected: poly <name> = <polynomial>", lineno, col0 + 1)
            _need_ring(cur, lineno)
            cur.line = lineno
            cur.polys[m.group(1)] = parse_poly(m.group(2), cur.ring, lineno, m.start(2))
        elif head == "matrix":
            m = re.match(r"\s*matrix\s+([A-Za-z_][A-Za-z_0-9]*)\s+(\d+)\s+(\d+)\s*=\s*(.*)$", raw)
            if not m:
                raise ParseError("expected: matrix <name> <rows> <cols> = [...]", lineno, col0 + 1)
            _need_ring(cur, lineno)
            body = m.group(4)
            start_line, start_col = lineno, m.start(4)
            chunks = [(body, lineno, start_col)]
            while body.count("[") > body.count("]"):
                if i >= len(lines):
                    raise ParseError("unterminated matrix", start_line, start_col + 1)
                nxt = _strip_comment(lines[i])
                chunks.append((nxt, i + 1, 0))
                body += "\n" + nxt
                i += 1
            cur.matrices[m.group(1)] = _parse_matrix(
                chunks, int(m.group(2)), int(m.group(3)), cur.ring, start_line, start_col
            )
        elif head == "knorrer":
            opts = {}
            pos = []
            for w in words[1:]:
                if "=" in w:
                    k, v = w.split("=", 1)
                    opts[k] = v
                else:
                    pos.append(w)
            if len(pos) != 2 or "z" not in opts:
                raise ParseError("expected: knorrer <G> <theta> z=<var> [t=<var>]", lineno, col0 + 1)
            cur.knorrer = {"G": pos[0], "theta": pos[1], "z": opts["z"], "t": opts.get("t"), "line": lineno}
        elif head == "graph":
            if len(words) == 3 and words[1] == "builtin":
                cur.graph = {"builtin": words[2]}
            elif len(words) == 1:
                cur.graph = {"nodes": [], "edges": []}
                in_graph = True
            else:
                raise ParseError("expected: graph builtin <type> | graph", lineno, col0 + 1)
        elif head == "entry":
            if cur is not top:
                raise ParseError("nested entry", lineno, col0 + 1)
            if len(words) != 5 or words[3] != "rank":
                raise ParseError("expected: entry <label> <index> rank <r>", lineno, col0 + 1)
            try:
                hdr = {"label": words[1], "index": int(words[2]), "rank": int(words[4])}
            except ValueError:
                raise ParseError("entry index and rank must be integers", lineno, col0 + 1) from None
            cur = Scope(header=hdr, line=lineno)
        elif head == "end":
            if cur is top:
                raise ParseError("'end' without an open block", lineno, col0 + 1)
            entries.append(cur)
            cur = top
        else:
            raise ParseError(f"unknown statement {head!r}", lineno, col0 + 1)
    if in_graph:
        raise ParseError("unterminated graph block", len(lines))
    if cur is not top:
        raise ParseError("unterminated entry block", cur.line)
    return Document(top, entries)


def _need_ring(scope: Scope, lineno: int) -> None:
    if scope.ring is None:
        raise ParseError("declare 'ring ...' before polynomials", lineno, 1)


def _parse_matrix(chunks, rows: int, cols: int, ring, line: int, col: int) -> PolyMatrix:
    # walk characters keeping (line, col) for each, so errors point into the source
    chars = []
    for text, ln, c0 in chunks:
        for k, ch in enumerate(text):
            chars.append((ch, ln, c0 + k))
        chars.append(("\n", ln, c0 + len(text)))
    s = "".join(ch for ch, _, _ in chars)
    a = s.find("[")
    b = s.rfind("]")
    if a < 0 or b < a or s[:a].strip() or s[b + 1:].strip():
        raise ParseError("matrix body must be enclosed in [ ]", line, col + 1)
    grid = []
    row_start = a + 1
    body_rows = []
    for k in range(a + 1, b + 1):
        if s[k] in ";]":
            body_rows.append((row_start, k))
            row_start = k + 1
    for r0, r1 in body_rows:
        cells = []
        c_start = r0
        for k in range(r0, r1 + 1):
            if k == r1 or s[k] == ",":
                txt = s[c_start:k]
                _, ln, cc = chars[c_start] if c_start < len(chars) else chars[-1]
                cells.append(parse_poly(txt.replace("\n", " "), ring, ln, cc))
                c_start = k + 1
        grid.append(cells)
    if len(grid) != rows or any(len(r) != cols for r in grid):
        shape = f"{len(grid)}x{'/'.join(sorted({str(len(r)) for r in grid}))}"
        raise ParseError(f"matrix declared {rows}x{cols} but body is {shape}", line, col + 1)
    return PolyMatrix.from_rows(grid)


def load_document(path: str | Path) -> Document:
    return parse_document(Path(path).read_text())


# ---------------------------------------------------------------- writers


def format_matrix(name: str, M: PolyMatrix) -> str:
    return f"matrix {name} {M.rows} {M.cols} = {M}"


def format_scope(ring, polys: dict[str, Poly], matrices: dict[str, PolyMatrix]) -> str:
    out = [f"ring {' '.join(ring)}"]
    out += [f"poly {k} = {v}" for k, v in polys.items()]
    out += [format_matrix(k, v) for k, v in matrices.items()]
    return "\n".join(out)
