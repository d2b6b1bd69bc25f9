"""Plain edge-list format: '#' comments, a header "n m", then m lines "u v"."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .graph import Graph


class GraphFormatError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _ints(text: str, lineno: int, count: int) -> list[int]:
    parts = text.split()
    if len(parts) != count:
        raise GraphFormatError(lineno, f"expected {count} integers, got {len(parts)}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise GraphFormatError(lineno, "not an integer") from None


def parse_graph_text(text: str) -> Graph:
    header = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        last = lineno
        if header is None:
            n, m = _ints(line, lineno, 2)
            if n < 0 or m < 0:
                raise GraphFormatError(lineno, "negative count")
            header = (n, m)
            continue
        u, v = _ints(line, lineno, 2)
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(lineno, f"vertex id out of range 0..{n - 1}")
        if u == v:
            raise GraphFormatError(lineno, f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(lineno, f"duplicate edge {key[0]} {key[1]}")
        seen.add(key)
        edges.append(key)
        if len(edges) > header[1]:
            raise GraphFormatError(lineno, f"more than {header[1]} edges")
    if header is None:
        raise GraphFormatError(max(last, 1), "missing header line")
    if len(edges) != header[1]:
        raise GraphFormatError(last, f"expected {header[1]} edges, found {len(edges)}")
    return Graph(range(header[0]), edges)


def parse_graph(path: str | Path) -> Graph:
    return parse_graph_text(Path(path).read_text())


def relabel(g: Graph) -> tuple[Graph, list[int]]:
    """Same graph on ids 0..n-1 in sorted order, plus the old id of each new id."""
    old = list(g.vertices)
    new = {v: i for i, v in enumerate(old)}
    return Graph(range(len(old)), [(new[u], new[v]) for u, v in g.edges()]), old


def format_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    if list(g.vertices) != list(range(g.n)):
        g, _ = relabel(g)
    lines = [f"# {c}" for c in comments]
    lines.append(f"{g.n} {g.m}")
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def write_graph(g: Graph, path: str | Path, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(format_graph(g, comments))


def parse_id_list(text: str) -> list[int]:
    """'0,3,7' or '@file' (ids separated by commas or whitespace)."""
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    parts = text.replace(",", " ").split()
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"bad vertex id list: {text!r}") from None
