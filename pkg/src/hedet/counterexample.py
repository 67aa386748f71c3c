"""The four-layer graph H, the blown-up graph G = F[K_q], and the maps that
place every vertex of H inside K_c^G.

Indices in this module are 1-based, as in the construction: colours lie in
[1, c], F-vertices are v_1..v_p, copies are j in [1, q].  Graph vertices
(from ``hedet.graph``) stay 0-based; ``g_vertex`` converts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil

from .exponential import ColorFunction
from .graph import UNREACHABLE, Graph, distance_matrix, is_connected, lex_complete, odd_girth


class InvalidParams(ValueError):
    def __init__(self, errors: list[str]):
        self.errors = errors
        super().__init__("; ".join(errors))


@dataclass(frozen=True)
class Params:
    """A validated instance (F, q, c).  Build with ``validate``."""

    F: Graph
    q: int
    c: int
    experimental: bool = False
    warnings: tuple[str, ...] = ()
    odd_girth: int | None = None
    connected: bool = True
    dist: tuple[tuple, ...] = field(default=(), repr=False, compare=False)

    @property
    def p(self) -> int:
        return self.F.n

    def d(self, s: int, i: int):
        """d_F(v_s, v_i), 1-based; ``UNREACHABLE`` across components."""
        return self.dist[s - 1][i - 1]

    def echo(self) -> dict:
        return {"p": self.p, "q": self.q, "c": self.c, "experimental": self.experimental,
                "f_edges": self.F.num_edges(), "odd_girth": self.odd_girth,
                "connected": self.connected}


def validate(F: Graph, q: int, c: int | None = None, experimental: bool = False) -> Params:
    """Check an instance.  Hard constraints raise InvalidParams; odd girth
    below 7 and disconnected seeds are only recorded as warnings so negative
    controls can run."""
    errors = []
    p = F.n
    if F.has_loops():
        errors.append("F has loops")
    if p < 1:
        errors.append("F must have at least one vertex")
    if q < 1:
        errors.append(f"q must be positive, got {q}")
    elif p > 2 * q + 1:
        errors.append(f"p={p} > 2q+1={2 * q + 1}")
    if c is None:
        c = 3 * q + 2
    allowed = {3 * q + 2} | ({3 * q + 3, 3 * q + 4} if experimental else set())
    if c not in allowed:
        errors.append(f"c={c} not allowed; expected {sorted(allowed)}"
                      + ("" if experimental else " (3q+3 and 3q+4 need experimental mode)"))
    if errors:
        raise InvalidParams(errors)
    warnings = []
    og = odd_girth(F)
    if og is not None and og < 7:
        warnings.append(f"odd girth {og} < 7")
    connected = is_connected(F)
    if not connected:
        warnings.append("F is disconnected; unreachable distances are treated as >= 3")
    if c != 3 * q + 2:
        warnings.append(f"experimental colour count c={c} (t-ranges stay anchored at 3q+2)")
    dist = tuple(tuple(row) for row in distance_matrix(F))
    return Params(F, q, c, experimental, tuple(warnings), og, connected, dist)


# --------------------------------------------------------------------- vertices

@dataclass(frozen=True, order=True)
class HVertex:
    kind: str  # "g", "phi", "mu", "theta"
    i: int = 0
    t: int = 0

    def tag(self) -> str:
        if self.kind == "phi":
            return "phi"
        if self.kind == "g":
            return f"g:{self.i}"
        return f"{self.kind}:{self.i}:{self.t}"

    @classmethod
    def parse(cls, tag: str) -> HVertex:
        parts = tag.split(":")
        try:
            if parts == ["phi"]:
                return PHI
            if parts[0] == "g" and len(parts) == 2:
                return G_(int(parts[1]))
            if parts[0] in ("mu", "theta") and len(parts) == 3:
                return cls(parts[0], int(parts[1]), int(parts[2]))
        except ValueError:
            pass
        raise ValueError(f"bad H-vertex tag {tag!r}")

    def __str__(self) -> str:
        return self.tag()


def G_(i: int) -> HVertex:
    return HVertex("g", i)


def Mu(i: int, t: int) -> HVertex:
    return HVertex("mu", i, t)


def Theta(i: int, t: int) -> HVertex:
    return HVertex("theta", i, t)


PHI = HVertex("phi")


def mu_range(q: int) -> range:
    return range(q + 2, 3 * q + 3)


def theta_range(q: int) -> range:
    return range(2 * q + 2, 3 * q + 3)


def h_vertices(params: Params) -> list[HVertex]:
    """All vertices of H in index order: g_1..g_c, phi, mu_{i,t}, theta_{i,t}."""
    p, q, c = params.p, params.q, params.c
    out = [G_(i) for i in range(1, c + 1)] + [PHI]
    out += [Mu(i, t) for i in range(1, p + 1) for t in mu_range(q)]
    out += [Theta(i, t) for i in range(1, p + 1) for t in theta_range(q)]
    return out


def h_vertex_count(p: int, q: int, c: int | None = None) -> int:
    if c is None:
        c = 3 * q + 2
    return c + 1 + p * (2 * q + 1) + p * (q + 1)


def h_vertex_count_closed(p: int) -> int:
    """Count for c = 3q+2 with the smallest q = ceil((p-1)/2)."""
    return 3 * ceil((p + 1) / 2) * (p + 1) - p


def smallest_q(p: int) -> int:
    return max(1, ceil((p - 1) / 2))


# ----------------------------------------------------------------------- graphs

def build_G(params: Params) -> Graph:
    """F[K_q]; vertex ``(s-1)*q + (j-1)`` is (v_s, j)."""
    return lex_complete(params.F, params.q)


def g_vertex(s: int, j: int, q: int) -> int:
    return (s - 1) * q + (j - 1)


def g_label(x: int, q: int) -> tuple[int, int]:
    return x // q + 1, x % q + 1


def _h_rules(params: Params):
    """The edge clauses, one generator per construction step."""
    p, q, c = params.p, params.q, params.c

    def clique_g():
        for a in range(1, c + 1):
            for b in range(a + 1, c + 1):
                yield G_(a), G_(b)

    def phi_to_g():
        for i in range(p + 1, c + 1):
            yield PHI, G_(i)

    def mu_cliques():
        for i in range(1, p + 1):
            group = [G_(i)] + [Mu(i, t) for t in mu_range(q)]
            for a in range(len(group)):
                for b in range(a + 1, len(group)):
                    yield group[a], group[b]

    def mu_to_g():
        for i in range(1, p + 1):
            for t in mu_range(q):
                for j in range(2 * q + 2, c + 1):
                    if j != t:
                        yield Mu(i, t), G_(j)

    def theta_edges():
        for i in range(1, p + 1):
            for t in theta_range(q):
                th = Theta(i, t)
                yield th, PHI
                yield th, Mu(i, t)
                for j in range(1, c + 1):
                    if j not in (i, t):
                        yield th, G_(j)

    return [("g-clique", clique_g), ("phi-g", phi_to_g), ("mu-clique", mu_cliques),
            ("mu-g", mu_to_g), ("theta", theta_edges)]


def build_H(params: Params) -> tuple[Graph, list[HVertex]]:
    verts = h_vertices(params)
    index = {y: k for k, y in enumerate(verts)}
    edges = []
    for _name, rule in _h_rules(params):
        edges.extend((index[a], index[b]) for a, b in rule())
    return Graph.from_edges(len(verts), edges, labels=verts), verts


def h_adjacent_by_clause(a: HVertex, b: HVertex, params: Params) -> bool:
    """Pairwise adjacency in H, read clause by clause.

    An encoding independent of the generators in ``build_H``; the two are
    compared edge set against edge set in the tests.
    """
    p, q, c = params.p, params.q, params.c
    if a == b:
        return False
    order = {"g": 0, "phi": 1, "mu": 2, "theta": 3}
    if order[a.kind] > order[b.kind]:
        a, b = b, a
    ka, kb = a.kind, b.kind
    if ka == "g" and kb == "g":
        return True
    if ka == "g" and kb == "phi":
        return a.i > p
    if ka == "g" and kb == "mu":
        return a.i == b.i or (a.i > 2 * q + 1 and a.i != b.t)
    if ka == "g" and kb == "theta":
        return a.i not in (b.i, b.t)
    if ka == "phi" and kb == "theta":
        return True
    if ka == "mu" and kb == "mu":
        return a.i == b.i
    if ka == "mu" and kb == "theta":
        return a.i == b.i and a.t == b.t
    # phi-mu and theta-theta pairs are never joined
    return False


def h_edges_by_clause(params: Params) -> set[frozenset]:
    verts = h_vertices(params)
    out = set()
    for x in range(len(verts)):
        for y in range(x + 1, len(verts)):
            if h_adjacent_by_clause(verts[x], verts[y], params):
                out.add(frozenset((verts[x], verts[y])))
    return out


# ------------------------------------------------------------------ vertex maps

def delta(a: int, b: int) -> int:
    """1 if a >= b else 0."""
    return 1 if a >= b else 0


def vertex_map(y: HVertex, s: int, j: int, params: Params) -> int:
    """The colour y(v_s, j) of G-vertex (v_s, j) under H-vertex y."""
    p, q = params.p, params.q
    if not (1 <= s <= p and 1 <= j <= q):
        raise ValueError(f"G-vertex ({s}, {j}) outside [1,{p}] x [1,{q}]")
    kind = y.kind
    if kind == "g":
        return y.i
    if kind == "phi":
        return s
    i, t = y.i, y.t
    d = params.d(s, i)
    if kind == "mu":
        if d == 0 or d == 2:
            return j + delta(j, i)
        if d == 1:
            return q + j + delta(q + j, i)
        return t - delta(i, t)  # d >= 3, including unreachable
    if kind == "theta":
        return i if d >= 2 else t
    raise ValueError(f"unknown H-vertex kind {kind!r}")


def color_function(y: HVertex, params: Params) -> ColorFunction:
    """y as a vertex of K_c^G, over G-vertices in ``build_G`` order."""
    p, q = params.p, params.q
    return ColorFunction(tuple(vertex_map(y, s, j, params)
                               for s in range(1, p + 1) for j in range(1, q + 1)), params.c)


def image_bruteforce(y: HVertex, params: Params) -> frozenset[int]:
    return frozenset(vertex_map(y, s, j, params)
                     for s in range(1, params.p + 1) for j in range(1, params.q + 1))


def _classes(params: Params, i: int) -> set:
    out = set()
    for s in range(1, params.p + 1):
        d = params.d(s, i)
        out.add(d if d < 3 else 3)
    return out


def image(y: HVertex, params: Params) -> frozenset[int] | None:
    """Closed-form image of y, or None when some distance class it relies
    on is empty for this F (then only ``image_bruteforce`` is valid)."""
    p, q = params.p, params.q
    if y.kind == "g":
        return frozenset({y.i})
    if y.kind == "phi":
        return frozenset(range(1, p + 1))
    cls = _classes(params, y.i)
    if y.kind == "mu":
        if 1 not in cls or 3 not in cls:
            return None
        return frozenset(set(range(1, 2 * q + 2)) | {y.t}) - {y.i}
    if y.kind == "theta":
        if not cls & {2, 3}:
            return None
        return frozenset({y.i, y.t})
    raise ValueError(f"unknown H-vertex kind {y.kind!r}")


def product_coloring(params: Params, verts: list[HVertex] | None = None) -> list[int]:
    """Phi(x, y) = y(x), indexed like ``tensor_product(G, H)``."""
    if verts is None:
        verts = h_vertices(params)
    p, q = params.p, params.q
    cols = [color_function(y, params).values for y in verts]
    return [cols[b][x] for x in range(p * q) for b in range(len(verts))]


def distance_class(params: Params, s: int, i: int) -> int:
    """d_F(v_s, v_i) capped at 3 (unreachable counts as 3)."""
    d = params.d(s, i)
    return 3 if d == UNREACHABLE or d >= 3 else int(d)
