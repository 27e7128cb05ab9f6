"""Plain-text graph files and formula files.

Graph files hold optional ``#`` comment lines, a header ``graph <n>``, then one
``u v`` edge per line with 0-based ids. Emission writes ``u < v`` and sorts
the edges, so printing a parsed file reproduces it byte for byte.
"""

from __future__ import annotations

from collections.abc import Iterable
from pathlib import Path

from .errors import InvalidVertexError, ParseError
from .graph import Graph
from .logic.ast import Formula
from .logic.parser import parse_formula
from .logic.printer import print_formula


def parse_graph(text: str) -> Graph:
    n = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 2 or fields[0] != "graph" or not fields[1].isdigit():
                raise ParseError("expected header 'graph <n>'", lineno, 1)
            n = int(fields[1])
            continue
        if len(fields) != 2 or not all(f.isdigit() for f in fields):
            raise ParseError(f"expected an edge '<u> <v>', got {line!r}", lineno, 1)
        u, v = int(fields[0]), int(fields[1])
        if u >= n or v >= n:
            raise InvalidVertexError(f"line {lineno}: edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise ParseError(f"self-loop at {u}", lineno, 1)
        e = (min(u, v), max(u, v))
        if e in seen:
            raise ParseError(f"duplicate edge {e[0]} {e[1]}", lineno, 1)
        seen.add(e)
        edges.append(e)
    if n is None:
        raise ParseError("missing header 'graph <n>'", 1, 1)
    return Graph(n, edges)


def format_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"graph {g.n}")
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph(path: str | Path, g: Graph, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(format_graph(g, comments), encoding="utf-8")


def read_formula(path: str | Path) -> Formula:
    return parse_formula(Path(path).read_text(encoding="utf-8"))


def format_formula(f: Formula, comments: Iterable[str] = ()) -> str:
    return "".join(f"# {c}\n" for c in comments) + print_formula(f) + "\n"


def write_formula(path: str | Path, f: Formula, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(format_formula(f, comments), encoding="utf-8")
