"""Graph I/O: the edge-list text format and graph6 decoding.

Edge-list format: first meaningful line holds the vertex count n, every
following line one ``u v`` pair (0-based, whitespace separated).  Anything
after a ``#`` is a comment; blank lines are skipped.
"""

from __future__ import annotations

from .graphs import Graph, GraphError, build_graph


def parse_edgelist(text: str) -> Graph:
    """Parse the edge-list text format into a Graph."""
    n: int | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1:
                raise GraphError(f"line {lineno}: expected vertex count, got {raw!r}")
            try:
                n = int(fields[0])
            except ValueError:
                raise GraphError(f"line {lineno}: bad vertex count {fields[0]!r}") from None
            continue
        if len(fields) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphError(f"line {lineno}: bad edge {raw!r}") from None
        edges.append((u, v))
    if n is None:
        raise GraphError("empty edge-list input")
    return build_graph(n, edges)


def format_edgelist(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string (standard printable-ASCII encoding)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphError("empty graph6 input")
    data = [ord(c) - 63 for c in s]
    if any(b < 0 or b > 63 for b in data):
        raise GraphError("graph6: byte out of printable range")

    if data[0] < 63:
        n = data[0]
        body = data[1:]
    elif len(data) >= 4 and data[1] < 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        raise GraphError("graph6: unsupported long-form order encoding")

    need_bits = n * (n - 1) // 2
    if len(body) != (need_bits + 5) // 6:
        raise GraphError(
            f"graph6: expected {(need_bits + 5) // 6} data bytes for n={n}, got {len(body)}"
        )
    bits = []
    for b in body:
        for shift in range(5, -1, -1):
            bits.append(b >> shift & 1)
    edges = []
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if bits[idx]:
                edges.append((u, v))
            idx += 1
    return build_graph(n, edges)


def load_graph(path: str, graph6: bool = False) -> Graph:
    """Read a graph file in either supported format."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if graph6:
        return parse_graph6(text)
    return parse_edgelist(text)
