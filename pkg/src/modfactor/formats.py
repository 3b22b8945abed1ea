"""Plain-text graph format.

::

    n m [k]
    u v          (m lines, 0-based, u == v is a loop, repeats allowed)
    f: r0 ... r(n-1)   (optional, needs k)

``#`` starts a comment.  ``emit_graph`` sorts edges so its output depends
only on the multiset of edges.
"""

from __future__ import annotations

from .errors import InputError
from .graph import Multigraph, ResidueMap


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InputError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def parse_graph(text: str) -> tuple[Multigraph, ResidueMap | None, int | None]:
    """Returns ``(G, f, k)``; ``f`` is None without an ``f:`` line and ``k``
    is None when the header omits it."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise InputError("empty graph file")
    lineno, header = rows[0]
    head = _ints(header.split(), lineno)
    if len(head) not in (2, 3):
        raise InputError(f"line {lineno}: header must be 'n m' or 'n m k'")
    n, m = head[0], head[1]
    k = head[2] if len(head) == 3 else None
    if n < 0 or m < 0 or (k is not None and k < 1):
        raise InputError(f"line {lineno}: bad header values")
    edges = []
    f_values = None
    for lineno, line in rows[1:]:
        if line.startswith("f:"):
            if f_values is not None:
                raise InputError(f"line {lineno}: second f line")
            f_values = _ints(line[2:].split(), lineno)
            continue
        if f_values is not None:
            raise InputError(f"line {lineno}: edge after the f line")
        uv = _ints(line.split(), lineno)
        if len(uv) != 2:
            raise InputError(f"line {lineno}: an edge line needs two vertices")
        if not all(0 <= x < n for x in uv):
            raise InputError(f"line {lineno}: vertex out of range 0..{n - 1}")
        edges.append((uv[0], uv[1]))
    if len(edges) != m:
        raise InputError(f"header promises {m} edges, found {len(edges)}")
    f = None
    if f_values is not None:
        if k is None:
            raise InputError("an f line needs k in the header")
        if len(f_values) != n:
            raise InputError(f"f line has {len(f_values)} values for {n} vertices")
        f = ResidueMap(k, f_values)
    return Multigraph(n, edges), f, k


def emit_graph(G: Multigraph, f: ResidueMap | None = None, k: int | None = None) -> str:
    if f is not None:
        k = f.modulus
    head = f"{G.n} {G.m}" + (f" {k}" if k is not None else "")
    lines = [head]
    for u, v in sorted((min(e), max(e)) for e in G.edges):
        lines.append(f"{u} {v}")
    if f is not None:
        lines.append("f: " + " ".join(str(x) for x in f.values))
    return "\n".join(lines) + "\n"


def read_graph(path: str) -> tuple[Multigraph, ResidueMap | None, int | None]:
    import sys

    if path == "-":
        return parse_graph(sys.stdin.read())
    try:
        with open(path) as fh:
            return parse_graph(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
