"""Dense simple graphs stored as bit rows, plus the constructions used by the
counterexample: tensor product, lexicographic product with a clique, and the
generalized Mycielski graph.

Vertices are ``0..n-1``.  Row ``rows[v]`` is a Python int whose bit ``u`` is
set iff ``uv`` is an edge.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Sequence
from pathlib import Path

UNREACHABLE = math.inf


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable undirected graph with packed adjacency rows.

    ``labels`` optionally records where each vertex came from (pairs for
    products, ``(s, j)`` for ``F[K_q]``, ``(x, layer)`` / ``"apex"`` for
    Mycielski graphs).
    """

    __slots__ = ("_n", "_rows", "_allow_loops", "_labels")

    def __init__(self, n: int, rows: Sequence[int], allow_loops: bool = False,
                 labels: Sequence | None = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(rows) != n:
            raise ValueError(f"expected {n} rows, got {len(rows)}")
        full = (1 << n) - 1
        rows = tuple(int(r) for r in rows)
        for v, r in enumerate(rows):
            if r & ~full:
                raise ValueError(f"row {v} references a vertex >= {n}")
            if not allow_loops and (r >> v) & 1:
                raise ValueError(f"loop at vertex {v} but allow_loops is not set")
            for u in bits(r):
                if not (rows[u] >> v) & 1:
                    raise ValueError(f"adjacency is not symmetric at ({v}, {u})")
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("labels must have one entry per vertex")
        self._n = n
        self._rows = rows
        self._allow_loops = allow_loops
        self._labels = labels

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   allow_loops: bool = False, labels: Sequence | None = None) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, allow_loops=allow_loops, labels=labels)

    @property
    def n(self) -> int:
        return self._n

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def allow_loops(self) -> bool:
        return self._allow_loops

    @property
    def labels(self) -> tuple | None:
        return self._labels

    def __len__(self) -> int:
        return self._n

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._n, self._rows))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.num_edges()})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._rows[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self._rows[v]))

    def degree(self, v: int) -> int:
        # a loop counts once
        return self._rows[v].bit_count()

    def has_loops(self) -> bool:
        return any((r >> v) & 1 for v, r in enumerate(self._rows))

    def loops(self) -> list[int]:
        return [v for v, r in enumerate(self._rows) if (r >> v) & 1]

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u <= v``, in lexicographic order (loops included)."""
        out = []
        for u, r in enumerate(self._rows):
            out.extend((u, v) for v in bits(r >> u << u))
        return out

    def ordered_edges(self) -> list[tuple[int, int]]:
        """Both orientations of every non-loop edge, lexicographically."""
        return [(u, v) for u, r in enumerate(self._rows) for v in bits(r) if u != v]

    def num_edges(self) -> int:
        loops = sum((r >> v) & 1 for v, r in enumerate(self._rows))
        return (sum(r.bit_count() for r in self._rows) - loops) // 2 + loops

    def complement(self) -> Graph:
        full = (1 << self._n) - 1
        rows = [full & ~r & ~(1 << v) for v, r in enumerate(self._rows)]
        return Graph(self._n, rows)

    def induced(self, vertices: Iterable[int]) -> Graph:
        vs = sorted(set(vertices))
        index = {v: k for k, v in enumerate(vs)}
        rows = []
        for v in vs:
            rows.append(sum(1 << index[u] for u in bits(self._rows[v]) if u in index))
        labels = None if self._labels is None else [self._labels[v] for v in vs]
        return Graph(len(vs), rows, allow_loops=self._allow_loops, labels=labels)

    def relabel(self, labels: Sequence | None) -> Graph:
        return Graph(self._n, self._rows, allow_loops=self._allow_loops, labels=labels)


# --------------------------------------------------------------------- generators

def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("size must be positive")
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << v) for v in range(n)])


def path_with_loop(r: int) -> Graph:
    """P_r: the path v_0 ... v_r with a loop at v_0."""
    if r < 1:
        raise ValueError("size must be positive")
    edges = [(0, 0)] + [(k, k + 1) for k in range(r)]
    return Graph.from_edges(r + 1, edges, allow_loops=True)


def petersen() -> Graph:
    outer = [(k, (k + 1) % 5) for k in range(5)]
    spokes = [(k, k + 5) for k in range(5)]
    inner = [(5 + k, 5 + (k + 2) % 5) for k in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def empty(n: int) -> Graph:
    return Graph(n, [0] * n)


def generate(kind: str, size: int = 0) -> Graph:
    """Build a named graph: ``cycle``, ``complete``, ``path-with-loop`` or ``petersen``."""
    if kind == "cycle":
        return cycle(size)
    if kind == "complete":
        return complete(size)
    if kind == "path-with-loop":
        return path_with_loop(size)
    if kind == "petersen":
        return petersen()
    raise ValueError(f"unknown graph kind {kind!r}")


# ------------------------------------------------------------------ constructions

def tensor_product(G: Graph, H: Graph) -> Graph:
    """G x H; vertex ``x * |H| + y`` is labelled ``(x, y)``."""
    nG, nH = G.n, H.n
    rows = []
    for x in range(nG):
        gx = G.rows[x]
        for y in range(nH):
            hy = H.rows[y]
            row = 0
            for x2 in bits(gx):
                row |= hy << (x2 * nH)
            rows.append(row)
    labels = [(x, y) for x in range(nG) for y in range(nH)]
    return Graph(nG * nH, rows, allow_loops=G.allow_loops and H.allow_loops, labels=labels)


def lex_complete(F: Graph, q: int) -> Graph:
    """F[K_q]; vertex ``s * q + j`` is labelled ``(s, j)`` (both 0-based)."""
    if q < 1:
        raise ValueError("q must be positive")
    if F.has_loops():
        raise ValueError("lex_complete needs a loop-free graph")
    blob = (1 << q) - 1
    blobs = [blob << (s * q) for s in range(F.n)]
    rows = []
    for s in range(F.n):
        cross = 0
        for s2 in bits(F.rows[s]):
            cross |= blobs[s2]
        for j in range(q):
            rows.append(cross | (blobs[s] & ~(1 << (s * q + j))))
    labels = [(s, j) for s in range(F.n) for j in range(q)]
    return Graph(F.n * q, rows, labels=labels)


def mycielski(G: Graph, r: int) -> Graph:
    """Generalized Mycielski graph M_r(G).

    The quotient of G x P_r obtained by collapsing the top layer to a single
    apex.  Vertex ``k * n + x`` is ``(x, k)`` for layers ``k < r``; the apex is
    vertex ``r * n``.
    """
    if r < 1:
        raise ValueError("r must be positive")
    if G.has_loops():
        raise ValueError("mycielski needs a loop-free graph")
    n = G.n
    apex = r * n
    edges = []
    for x, x2 in G.edges():
        edges.append((x, x2))  # loop at v_0 keeps layer 0 a copy of G
        for k in range(r - 1):
            edges.append((k * n + x, (k + 1) * n + x2))
            edges.append((k * n + x2, (k + 1) * n + x))
        edges.append(((r - 1) * n + x, apex))
        edges.append(((r - 1) * n + x2, apex))
    labels = [(x, k) for k in range(r) for x in range(n)] + ["apex"]
    return Graph.from_edges(r * n + 1, edges, labels=labels)


def mycielski_chain(G: Graph, rvec: Sequence[int]) -> Graph:
    """M_{r_1}(M_{r_2}(... M_{r_d}(G))): the last entry is applied first."""
    for r in reversed(list(rvec)):
        G = mycielski(G, r)
    return G


# ------------------------------------------------------------------------ metrics

def bfs_distances(G: Graph, source: int) -> list:
    """Hop distances from ``source``; unreachable vertices get ``UNREACHABLE``."""
    if not 0 <= source < G.n:
        raise ValueError(f"source {source} out of range")
    dist: list = [UNREACHABLE] * G.n
    dist[source] = 0
    seen = 1 << source
    frontier = 1 << source
    d = 0
    rows = G.rows
    while frontier:
        d += 1
        nxt = 0
        for v in bits(frontier):
            nxt |= rows[v]
        nxt &= ~seen
        seen |= nxt
        for v in bits(nxt):
            dist[v] = d
        frontier = nxt
    return dist


def distance_matrix(G: Graph) -> list[list]:
    return [bfs_distances(G, s) for s in range(G.n)]


def is_connected(G: Graph) -> bool:
    return G.n == 0 or UNREACHABLE not in bfs_distances(G, 0)


def odd_girth(G: Graph) -> int | None:
    """Length of a shortest odd cycle, or None if G is bipartite."""
    if G.has_loops():
        raise ValueError("odd_girth needs a loop-free graph")
    rows = G.rows
    best = None
    for s in range(G.n):
        # level sets; an edge inside level d closes an odd walk of length 2d+1,
        # and the bound is attained when s lies on a shortest odd cycle
        seen = 1 << s
        level = 1 << s
        d = 0
        while level:
            if best is not None and 2 * d + 1 >= best:
                break
            if any(rows[v] & level for v in bits(level)):
                best = 2 * d + 1
                break
            nxt = 0
            for v in bits(level):
                nxt |= rows[v]
            nxt &= ~seen
            seen |= nxt
            level = nxt
            d += 1
    return best


# ------------------------------------------------------------------------- DIMACS

class DimacsError(ValueError):
    pass


def parse_dimacs(text: str) -> Graph:
    n = None
    allow_loops = False
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        tokens = line.split()
        tag = tokens[0]
        if tag == "c":
            if n is None and tokens[1:] == ["allow_loops"]:
                allow_loops = True
        elif tag == "p":
            if n is not None:
                raise DimacsError(f"line {lineno}: duplicate problem line")
            if len(tokens) != 4 or tokens[1] not in ("edge", "col"):
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                n, _m = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from None
            if n < 0:
                raise DimacsError(f"line {lineno}: negative vertex count")
        elif tag == "e":
            if n is None:
                raise DimacsError(f"line {lineno}: edge before header")
            if len(tokens) != 3:
                raise DimacsError(f"line {lineno}: malformed edge {line!r}")
            try:
                u, v = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed edge {line!r}") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise DimacsError(f"line {lineno}: vertex index out of range 1..{n}")
            if u == v and not allow_loops:
                raise DimacsError(f"line {lineno}: loop at {u} without 'c allow_loops'")
            edges.append((u - 1, v - 1))
        else:
            raise DimacsError(f"line {lineno}: unknown line type {tag!r}")
    if n is None:
        raise DimacsError("missing 'p edge' header")
    return Graph.from_edges(n, edges, allow_loops=allow_loops)


def format_dimacs(G: Graph, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    if G.allow_loops:
        lines.append("c allow_loops")
    edges = G.edges()
    lines.append(f"p edge {G.n} {len(edges)}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in edges)
    return "\n".join(lines) + "\n"


def read_dimacs(path) -> Graph:
    return parse_dimacs(Path(path).read_text())


def write_dimacs(G: Graph, path, comments: Sequence[str] = ()) -> None:
    Path(path).write_text(format_dimacs(G, comments))
