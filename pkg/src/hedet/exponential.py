"""The exponential graph K_c^G, accessed through an adjacency oracle.

A vertex of K_c^G is a map V(G) -> [c]; ``f ~ g`` iff no edge ``xy`` of G has
``f(x) == g(y)``.  Edges of G are read in both orientations.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from itertools import product

from .graph import Graph, tensor_product
from .solvers import conflict_edge


@dataclass(frozen=True)
class ColorFunction:
    """Colours ``values[x] in [1, c]`` for every vertex ``x`` of some graph."""

    values: tuple[int, ...]
    c: int
    image_mask: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        mask = 0
        for x, k in enumerate(self.values):
            if not 1 <= k <= self.c:
                raise ValueError(f"value {k} at vertex {x} outside [1, {self.c}]")
            mask |= 1 << (k - 1)
        object.__setattr__(self, "image_mask", mask)

    def __getitem__(self, x: int) -> int:
        return self.values[x]

    def __len__(self) -> int:
        return len(self.values)

    def image(self) -> frozenset[int]:
        return frozenset(self.values)

    def to_line(self) -> str:
        return " ".join(map(str, self.values))

    @classmethod
    def from_line(cls, line: str, c: int) -> ColorFunction:
        return cls(tuple(int(tok) for tok in line.split()), c)


def _check_domain(f: ColorFunction, g: ColorFunction, G: Graph):
    if len(f) != G.n or len(g) != G.n:
        raise ValueError(f"colour functions must have {G.n} values")
    if f.c != g.c:
        raise ValueError("colour functions use different colour counts")


def exp_conflict(f: ColorFunction, g: ColorFunction, G: Graph):
    """``(x, y, colour)`` with ``xy`` an edge and ``f(x) == g(y) == colour``,
    or None when ``f ~ g`` in K_c^G."""
    _check_domain(f, g, G)
    if not f.image_mask & g.image_mask:
        return None
    fv, gv = f.values, g.values
    for x, y in G.ordered_edges():
        if fv[x] == gv[y]:
            return (x, y, fv[x])
    for x in G.loops():
        if fv[x] == gv[x]:
            return (x, x, fv[x])
    return None


def exp_adjacent(f: ColorFunction, g: ColorFunction, G: Graph) -> bool:
    return exp_conflict(f, g, G) is None


def has_loop(f: ColorFunction, G: Graph) -> bool:
    """f ~ f in K_c^G, which holds exactly when f properly colours G."""
    return exp_adjacent(f, f, G)


def all_functions(G: Graph, c: int):
    for values in product(range(1, c + 1), repeat=G.n):
        yield ColorFunction(values, c)


def exp_explicit(G: Graph, c: int, guard: int = 1 << 12) -> tuple[Graph, list[ColorFunction]]:
    """Materialize K_c^G.  Vertex ``k`` is the k-th function in
    lexicographic order of value tuples."""
    size = c ** G.n
    if size > guard:
        raise ValueError(f"K_{c}^G has {size} vertices, over the guard of {guard}")
    funcs = list(all_functions(G, c))
    rows = [0] * size
    for a, f in enumerate(funcs):
        for b in range(a, size):
            if exp_adjacent(f, funcs[b], G):
                rows[a] |= 1 << b
                rows[b] |= 1 << a
    return Graph(size, rows, allow_loops=True, labels=[f.values for f in funcs]), funcs


# ------------------------------------------------------------ colourings <-> maps

class NotAHomomorphism(ValueError):
    def __init__(self, h_edge, conflict):
        self.h_edge = h_edge
        self.conflict = conflict
        super().__init__(f"H-edge {h_edge} is not an edge of K_c^G: {conflict}")


class ImproperColoring(ValueError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"product edge {edge} is monochromatic")


def coloring_to_hom(psi: Sequence[int], G: Graph, H: Graph, c: int,
                    check: bool = True) -> dict[int, ColorFunction]:
    """Turn a colouring of G x H (indexed like ``tensor_product(G, H)``) into
    the map ``u -> (v -> psi(v, u))`` from V(H) to V(K_c^G)."""
    if len(psi) != G.n * H.n:
        raise ValueError("colouring does not cover the product")
    if check:
        bad = conflict_edge(tensor_product(G, H), psi, c)
        if bad is not None:
            raise ImproperColoring(bad)
    return {u: ColorFunction(tuple(psi[v * H.n + u] for v in range(G.n)), c)
            for u in range(H.n)}


def hom_conflict(hom: Mapping[int, ColorFunction], G: Graph, H: Graph):
    """First H-edge whose image is not an edge of K_c^G, with the witness."""
    for u, w in H.edges():
        bad = exp_conflict(hom[u], hom[w], G)
        if bad is not None:
            return (u, w), bad
    return None


def is_homomorphism(hom: Mapping[int, ColorFunction], G: Graph, H: Graph) -> bool:
    return hom_conflict(hom, G, H) is None


def hom_to_coloring(hom: Mapping[int, ColorFunction], G: Graph, H: Graph,
                    check: bool = True) -> list[int]:
    """Inverse of coloring_to_hom: ``psi(v, u) = hom[u](v)``."""
    if set(hom) != set(range(H.n)):
        raise ValueError("map must be defined on every vertex of H")
    if check:
        bad = hom_conflict(hom, G, H)
        if bad is not None:
            raise NotAHomomorphism(*bad)
    return [hom[u][v] for v in range(G.n) for u in range(H.n)]


def format_functions(named: Sequence[tuple[str, ColorFunction]]) -> str:
    """One ``# name`` header plus one colour line per function."""
    out = []
    for name, f in named:
        out.append(f"# {name}")
        out.append(f.to_line())
    return "\n".join(out) + "\n"


def parse_functions(text: str, c: int) -> list[tuple[str, ColorFunction]]:
    out = []
    name = None
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            name = line[1:].strip()
        else:
            out.append((name, ColorFunction.from_line(line, c)))
            name = None
    return out
