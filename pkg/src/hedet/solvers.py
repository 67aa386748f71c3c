"""Exact colouring and independent-set solvers.

Colours are 1-based everywhere in this module's interface.  Internally the
colour ``k`` is bit ``k - 1`` of a domain mask.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .graph import Graph, bits

DEFAULT_BUDGET = 10**8


class BudgetExhausted(Exception):
    """A search ran out of nodes before reaching an answer.

    ``lo`` and ``hi`` carry whatever valid bounds were known at the time.
    """

    def __init__(self, what: str, lo=None, hi=None):
        self.what = what
        self.lo = lo
        self.hi = hi
        bounds = "" if lo is None and hi is None else f", bounds [{lo}, {hi}]"
        super().__init__(f"{what}: budget exhausted{bounds}")


class _Budget:
    __slots__ = ("left", "what")

    def __init__(self, nodes: int | None, what: str):
        self.left = DEFAULT_BUDGET if nodes is None else nodes
        self.what = what

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise BudgetExhausted(self.what)


@dataclass(frozen=True)
class Coloring:
    """A colouring ``assignment[v] in [1, c]`` for every vertex ``v``."""

    assignment: tuple[int, ...]
    c: int

    def __post_init__(self):
        for v, k in enumerate(self.assignment):
            if not 1 <= k <= self.c:
                raise ValueError(f"colour {k} of vertex {v} outside [1, {self.c}]")

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]

    def __len__(self) -> int:
        return len(self.assignment)


def _require_loop_free(G: Graph, what: str):
    if G.has_loops():
        raise ValueError(f"{what} needs a loop-free graph")


def conflict_edge(G: Graph, colors: Sequence[int] | Coloring, c: int | None = None):
    """First monochromatic edge ``(u, v)`` with ``u <= v``, or None if proper.

    A loop is monochromatic under every colouring.
    """
    if isinstance(colors, Coloring):
        c = colors.c if c is None else c
        colors = colors.assignment
    if len(colors) != G.n:
        raise ValueError(f"colouring covers {len(colors)} of {G.n} vertices")
    if c is not None:
        for v, k in enumerate(colors):
            if not 1 <= k <= c:
                raise ValueError(f"colour {k} of vertex {v} outside [1, {c}]")
    # one pass per colour class using the bit rows
    classes: dict[int, int] = {}
    for v, k in enumerate(colors):
        classes[k] = classes.get(k, 0) | (1 << v)
    best = None
    for members in classes.values():
        for u in bits(members):
            hit = G.rows[u] & members & ~((1 << u) - 1)
            if hit:
                cand = (u, (hit & -hit).bit_length() - 1)
                if best is None or cand < best:
                    best = cand
                break
    return best


def is_proper(G: Graph, colors: Sequence[int] | Coloring, c: int | None = None) -> bool:
    return conflict_edge(G, colors, c) is None


# ------------------------------------------------------------------ colouring search

class _Extender:
    """Backtracking with forward checking, unit propagation, clique pigeonhole
    pruning, and independent solving of connected components.

    Colours not used by any assigned vertex are interchangeable, so only the
    smallest of them is tried at each branch.
    """

    def __init__(self, G: Graph, c: int, budget: _Budget):
        self.rows = G.rows
        self.n = G.n
        self.c = c
        self.full = (1 << c) - 1
        self.budget = budget

    def solve(self, partial: Mapping[int, int]):
        colour = [0] * self.n
        dom = [self.full] * self.n
        for v, k in partial.items():
            if not 0 <= v < self.n:
                raise ValueError(f"vertex {v} out of range")
            if not 1 <= k <= self.c:
                return None
            colour[v] = k
        for v, k in partial.items():
            for u in bits(self.rows[v]):
                if colour[u] == k:
                    return None
                dom[u] &= ~(1 << (k - 1))
        unassigned = ((1 << self.n) - 1) & ~sum(1 << v for v in partial)
        for v in bits(unassigned):
            if not dom[v]:
                return None
        used = 0
        for k in partial.values():
            used |= 1 << (k - 1)
        state = self._propagate(colour, dom, unassigned, used)
        if state is None:
            return None
        result = self._search(*state)
        if result is None:
            return None
        return result

    def _assign(self, colour, dom, unassigned, v, k):
        """Assign in place; return False on a wiped-out domain."""
        colour[v] = k
        bit = 1 << (k - 1)
        ok = True
        for u in bits(self.rows[v] & unassigned):
            d = dom[u] & ~bit
            dom[u] = d
            if not d:
                ok = False
        return ok

    def _propagate(self, colour, dom, unassigned, used):
        changed = True
        while changed:
            changed = False
            for v in bits(unassigned):
                d = dom[v]
                if d & (d - 1) == 0:
                    unassigned &= ~(1 << v)
                    used |= d
                    if not self._assign(colour, dom, unassigned, v, d.bit_length()):
                        return None
                    changed = True
        return colour, dom, unassigned, used

    def _components(self, mask):
        comps = []
        rows = self.rows
        while mask:
            seed = mask & -mask
            comp = seed
            frontier = seed
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= rows[v]
                nxt &= mask & ~comp
                comp |= nxt
                frontier = nxt
            comps.append(comp)
            mask &= ~comp
        return comps

    def _hall_fails(self, dom, comp):
        # greedy clique through each vertex of smallest domain; a clique whose
        # members see fewer colours than there are members cannot be coloured
        rows = self.rows
        tried = 0
        for v in sorted(bits(comp), key=lambda w: (dom[w].bit_count(), w))[:4]:
            if (tried >> v) & 1:
                continue
            clique = 1 << v
            union = dom[v]
            cand = rows[v] & comp
            while cand:
                u = max(bits(cand), key=lambda w: (rows[w] & cand).bit_count())
                clique |= 1 << u
                union |= dom[u]
                cand &= rows[u]
            tried |= clique
            if union.bit_count() < clique.bit_count():
                return True
        return False

    def _search(self, colour, dom, unassigned, used):
        self.budget.tick()
        if not unassigned:
            return colour
        comps = self._components(unassigned)
        for comp in comps:
            if self._hall_fails(dom, comp):
                return None
        if len(comps) > 1:
            comps.sort(key=lambda m: (m.bit_count(), m))
            merged = list(colour)
            for comp in comps:
                sub = self._search_component(list(colour), list(dom), comp, used)
                if sub is None:
                    return None
                for v in bits(comp):
                    merged[v] = sub[v]
            return merged
        return self._search_component(colour, dom, unassigned, used)

    def _search_component(self, colour, dom, comp, used):
        rows = self.rows
        # smallest domain relative to uncoloured degree, ties by index
        v = min(bits(comp), key=lambda w: (dom[w].bit_count() * self.n
                                           // ((rows[w] & comp).bit_count() + 1), w))
        d = dom[v]
        fresh = d & ~used
        if fresh:
            d = (d & used) | (fresh & -fresh)
        for k in bits(d):
            k += 1
            c2 = list(colour)
            d2 = list(dom)
            rest = comp & ~(1 << v)
            if not self._assign(c2, d2, rest, v, k):
                continue
            state = self._propagate(c2, d2, rest, used | (1 << (k - 1)))
            if state is None:
                continue
            found = self._search(*state)
            if found is not None:
                return found
        return None


def find_extension(G: Graph, partial: Mapping[int, int], c: int,
                   budget: int | None = None) -> Coloring | None:
    """Extend ``partial`` (vertex -> colour) to a proper c-colouring of G.

    Returns the colouring, or None if no extension exists.  Raises
    BudgetExhausted when the node budget runs out first.
    """
    _require_loop_free(G, "find_extension")
    if c < 0:
        raise ValueError("colour count must be non-negative")
    if G.n == 0:
        return Coloring((), c)
    if c == 0:
        return None
    found = _Extender(G, c, _Budget(budget, "extendable")).solve(dict(partial))
    if found is None:
        return None
    col = Coloring(tuple(found), c)
    assert is_proper(G, col), "extension search produced an improper colouring"
    return col


def extendable(G: Graph, partial: Mapping[int, int], c: int, budget: int | None = None) -> bool:
    return find_extension(G, partial, c, budget) is not None


def greedy_coloring(G: Graph) -> Coloring:
    """DSATUR colouring; ties by degree then index."""
    _require_loop_free(G, "greedy_coloring")
    n = G.n
    colour = [0] * n
    seen = [0] * n
    left = (1 << n) - 1
    deg = [G.degree(v) for v in range(n)]
    while left:
        v = max(bits(left), key=lambda w: (seen[w].bit_count(), deg[w], -w))
        free = ~seen[v]
        k = (free & -free).bit_length()
        colour[v] = k
        left &= ~(1 << v)
        for u in bits(G.rows[v]):
            seen[u] |= 1 << (k - 1)
    return Coloring(tuple(colour), max(colour, default=0))


def chromatic_number(G: Graph, budget: int | None = None) -> int:
    """Exact chromatic number.

    Lower bound from a maximum clique, upper bound from DSATUR, then an exact
    feasibility test for each intermediate colour count.
    """
    _require_loop_free(G, "chromatic_number")
    if G.n == 0:
        return 0
    hi = greedy_coloring(G).c
    try:
        clique = max_clique(G, budget)
    except BudgetExhausted:
        clique = [0]
    lo = len(clique)
    pin = {v: k + 1 for k, v in enumerate(sorted(clique))}
    for k in range(lo, hi):
        try:
            if extendable(G, pin, k, budget):
                return k
        except BudgetExhausted as exc:
            raise BudgetExhausted("chromatic_number", k, hi) from exc
        lo = k + 1
    return hi


# ------------------------------------------------------------- independent sets

def _clique_cover_order(rows, P, weight):
    """Greedy partition of P into cliques of G.

    Returns ``(order, bounds)``: vertices in increasing class order and for
    each the summed maximum class weight up to and including its class.
    """
    order, bounds = [], []
    total = 0
    left = P
    while left:
        v = max(bits(left), key=lambda w: (weight[w], -w))
        clique = 1 << v
        cand = rows[v] & left
        while cand:
            u = max(bits(cand), key=lambda w: (weight[w], -w))
            clique |= 1 << u
            cand &= rows[u]
        total += weight[v]
        for u in bits(clique):
            order.append(u)
            bounds.append(total)
        left &= ~clique
    return order, bounds


def _max_weight_independent(G: Graph, weight: Sequence[int], floor: int, budget: _Budget):
    """Heaviest independent set of weight strictly above ``floor``, or None.

    Weights are non-negative integers.
    """
    rows = G.rows
    best_w = floor
    best_set = None

    def expand(P, cur_w, cur):
        nonlocal best_w, best_set
        budget.tick()
        if not P:
            if cur_w > best_w:
                best_w, best_set = cur_w, cur
            return
        order, bounds = _clique_cover_order(rows, P, weight)
        for idx in range(len(order) - 1, -1, -1):
            if cur_w + bounds[idx] <= best_w:
                return
            v = order[idx]
            expand(P & ~rows[v] & ~(1 << v), cur_w + weight[v], cur | (1 << v))
            P &= ~(1 << v)
        if cur_w > best_w:
            best_w, best_set = cur_w, cur

    positive = sum(1 << v for v in range(G.n) if weight[v] > 0)
    expand(positive, 0, 0)
    return best_set


def max_independent_set(G: Graph, budget: int | None = None) -> list[int]:
    _require_loop_free(G, "max_independent_set")
    if G.n == 0:
        return []
    found = _max_weight_independent(G, [1] * G.n, 0, _Budget(budget, "independence_number"))
    return list(bits(found))


def independence_number(G: Graph, budget: int | None = None) -> int:
    return len(max_independent_set(G, budget))


def has_independent_set(G: Graph, k: int, budget: int | None = None) -> list[int] | None:
    """An independent set of size ``k`` if one exists, else None."""
    _require_loop_free(G, "has_independent_set")
    if k <= 0:
        return []
    found = _max_weight_independent(G, [1] * G.n, k - 1, _Budget(budget, "independent set"))
    return None if found is None else list(bits(found))[:k]


def max_clique(G: Graph, budget: int | None = None) -> list[int]:
    _require_loop_free(G, "max_clique")
    return max_independent_set(G.complement(), budget)


def max_weight_independent_set(G: Graph, weights: Sequence[Fraction],
                               budget: int | None = None) -> tuple[Fraction, list[int]]:
    """Exact maximum-weight independent set for non-negative rational weights."""
    _require_loop_free(G, "max_weight_independent_set")
    weights = [Fraction(w) for w in weights]
    if any(w < 0 for w in weights):
        raise ValueError("weights must be non-negative")
    scale = lcm(1, *(w.denominator for w in weights))
    ints = [int(w * scale) for w in weights]
    found = _max_weight_independent(G, ints, 0, _Budget(budget, "weighted independent set"))
    if found is None:
        return Fraction(0), []
    chosen = list(bits(found))
    return sum((weights[v] for v in chosen), Fraction(0)), chosen


def maximal_independent_sets(G: Graph, limit: int | None = None) -> list[int]:
    """All maximal independent sets as bitmasks (Bron-Kerbosch with pivoting
    on the complement).  Raises BudgetExhausted past ``limit`` sets."""
    _require_loop_free(G, "maximal_independent_sets")
    full = (1 << G.n) - 1
    non = [full & ~r & ~(1 << v) for v, r in enumerate(G.rows)]
    out = []

    def bk(R, P, X):
        if not P and not X:
            out.append(R)
            if limit is not None and len(out) > limit:
                raise BudgetExhausted("maximal independent set enumeration")
            return
        pivot = max(bits(P | X), key=lambda u: (non[u] & P).bit_count())
        for v in bits(P & ~non[pivot]):
            bk(R | (1 << v), P & non[v], X & non[v])
            P &= ~(1 << v)
            X |= 1 << v

    if G.n:
        bk(0, full, 0)
    return sorted(out)


def coloring_cnf(G: Graph, c: int, partial: Mapping[int, int] | None = None) -> str:
    """DIMACS CNF for "G has a proper c-colouring extending ``partial``".

    Variable ``v * c + k`` (1-based ``k``) means vertex ``v`` gets colour ``k``.
    """
    _require_loop_free(G, "coloring_cnf")

    def var(v, k):
        return v * c + k

    clauses = []
    for v in range(G.n):
        clauses.append([var(v, k) for k in range(1, c + 1)])
        for k in range(1, c + 1):
            for k2 in range(k + 1, c + 1):
                clauses.append([-var(v, k), -var(v, k2)])
    for u, v in G.edges():
        for k in range(1, c + 1):
            clauses.append([-var(u, k), -var(v, k)])
    for v, k in sorted((partial or {}).items()):
        clauses.append([var(v, k)])
    lines = [f"c {G.n} vertices, {c} colours; var v*c+k = vertex v (0-based) has colour k",
             f"p cnf {G.n * c} {len(clauses)}"]
    lines.extend(" ".join(map(str, cl)) + " 0" for cl in clauses)
    return "\n".join(lines) + "\n"
