"""Mechanical checks of the three claims about an instance (F, q, c):

* chi(G) > c      -- certified by q * (lower bound on chi_f(F)) > c
* chi(H) > c      -- no proper c-colouring of H with g_i pinned to colour i
* chi(G x H) <= c -- every edge of H is an edge of K_c^G under the vertex maps
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .counterexample import (
    HVertex,
    Params,
    build_G,
    build_H,
    color_function,
    distance_class,
    g_label,
    g_vertex,
    product_coloring,
    vertex_map,
)
from .fractional import chi_f_certificate
from .graph import Graph, tensor_product
from .solvers import BudgetExhausted, conflict_edge, find_extension, has_independent_set, independence_number

PRODUCT_GUARD = 10_000
CHI_F_LIMIT = 40

PASS, FAIL, UNKNOWN = "pass", "fail", "unknown"


def frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class EmbeddingViolation:
    """H-edge ``y y'`` and ordered G-edge ``x x'`` with y(x) = y'(x') = alpha.

    G-vertices are ``(s, j)`` pairs, 1-based.
    """

    h_edge: tuple[HVertex, HVertex]
    g_edge: tuple[tuple[int, int], tuple[int, int]]
    alpha: int

    def to_json(self) -> dict:
        return {"h_edge": [y.tag() for y in self.h_edge],
                "g_edge": [f"{s}:{j}" for s, j in self.g_edge],
                "alpha": self.alpha}

    def replay(self, params: Params, G: Graph, H: Graph, verts: list[HVertex]) -> bool:
        """Re-derive the violation from the maps and both adjacency relations."""
        y, y2 = self.h_edge
        (s, j), (s2, j2) = self.g_edge
        index = {v: k for k, v in enumerate(verts)}
        q = params.q
        return (H.has_edge(index[y], index[y2])
                and G.has_edge(g_vertex(s, j, q), g_vertex(s2, j2, q))
                and vertex_map(y, s, j, params) == self.alpha
                and vertex_map(y2, s2, j2, params) == self.alpha)


@dataclass
class CheckResult:
    name: str
    status: str
    witness: object = None
    millis: int | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "witness": self.witness,
                "millis": self.millis, "detail": self.detail}


# -------------------------------------------------------------------- embedding

class _EmbeddingContext:
    """Everything the embedding scan needs, rebuilt per worker process."""

    def __init__(self, params: Params):
        self.params = params
        self.G = build_G(params)
        self.H, self.verts = build_H(params)
        self.h_edges = self.H.edges()
        self.g_edges = self.G.ordered_edges()
        self._cf = {}
        self._profile = {}
        self._pairs = {}
        self._rows: list[tuple[int, ...]] = []
        self._row_id: dict[tuple[int, ...], int] = {}
        self._row_mask: list[int] = []
        self._row_pos: list[dict[int, frozenset]] = []
        self._same = {}

    def values(self, b: int) -> tuple[int, ...]:
        cf = self._cf.get(b)
        if cf is None:
            cf = self._cf[b] = color_function(self.verts[b], self.params).values
        return cf

    def scan_edge(self, y: HVertex, y2: HVertex, a: tuple, b: tuple):
        """Brute force over ordered G-edges; the first collision or None."""
        for x, x2 in self.g_edges:
            if a[x] == b[x2]:
                q = self.params.q
                return EmbeddingViolation((y, y2), (g_label(x, q), g_label(x2, q)), a[x])
        return None

    def bruteforce(self, lo: int, hi: int):
        for k in range(lo, hi):
            u, w = self.h_edges[k]
            found = self.scan_edge(self.verts[u], self.verts[w], self.values(u), self.values(w))
            if found is not None:
                return k, found
        return None

    # a vertex map depends on s only through a key: nothing for g_i, s itself
    # for phi, and the capped distance from v_i for mu/theta; the map is then
    # a table (key, j) -> colour

    def _intern(self, row: tuple[int, ...]) -> int:
        rid = self._row_id.get(row)
        if rid is None:
            rid = self._row_id[row] = len(self._rows)
            self._rows.append(row)
            mask = 0
            pos: dict[int, set] = {}
            for j, col in enumerate(row):
                mask |= 1 << col
                pos.setdefault(col, set()).add(j)
            self._row_mask.append(mask)
            self._row_pos.append({col: frozenset(js) for col, js in pos.items()})
        return rid

    def profile(self, b: int):
        prof = self._profile.get(b)
        if prof is not None:
            return prof
        y = self.verts[b]
        params = self.params
        p, q = params.p, params.q
        if y.kind == "g":
            keytype, keys = ("const",), [0] * p
        elif y.kind == "phi":
            keytype, keys = ("phi",), list(range(p))
        else:
            keytype = ("dist", y.i)
            keys = [distance_class(params, s, y.i) for s in range(1, p + 1)]
        rows = {}
        for s in range(1, p + 1):
            key = keys[s - 1]
            if key not in rows:
                rows[key] = self._intern(tuple(vertex_map(y, s, j, params)
                                               for j in range(1, q + 1)))
        mask = 0
        for rid in rows.values():
            mask |= self._row_mask[rid]
        prof = self._profile[b] = (keytype, keys, rows, mask)
        return prof

    def pairs(self, kt1, keys1, kt2, keys2):
        """Key pairs met by ordered F-edges, and by equal F-vertices."""
        got = self._pairs.get((kt1, kt2))
        if got is None:
            F = self.params.F
            cross = sorted({(keys1[s], keys2[s2]) for s, s2 in F.ordered_edges()})
            same = sorted({(keys1[s], keys2[s]) for s in range(F.n)}) if self.params.q > 1 else []
            got = self._pairs[(kt1, kt2)] = (cross, same)
        return got

    def _same_collides(self, ra: int, rb: int) -> bool:
        # some j != j' with row_a[j] == row_b[j']
        key = (ra, rb)
        hit = self._same.get(key)
        if hit is None:
            hit = False
            common = self._row_mask[ra] & self._row_mask[rb]
            if common:
                pa, pb = self._row_pos[ra], self._row_pos[rb]
                for col, js in pa.items():
                    js2 = pb.get(col)
                    if js2 is not None and (len(js | js2) > 1):
                        hit = True
                        break
            self._same[key] = hit
        return hit

    def edge_clear(self, u: int, w: int) -> bool:
        kt1, keys1, rows1, mask1 = self.profile(u)
        kt2, keys2, rows2, mask2 = self.profile(w)
        if not mask1 & mask2:
            return True
        cross, same = self.pairs(kt1, keys1, kt2, keys2)
        rm = self._row_mask
        for a, b in cross:
            if rm[rows1[a]] & rm[rows2[b]]:
                return False
        for a, b in same:
            if self._same_collides(rows1[a], rows2[b]):
                return False
        return True

    def structured(self, lo: int, hi: int):
        for k in range(lo, hi):
            u, w = self.h_edges[k]
            if not self.edge_clear(u, w):
                # pin down the exact first witness for this H-edge
                found = self.scan_edge(self.verts[u], self.verts[w], self.values(u), self.values(w))
                assert found is not None, "structured scan flagged a clean H-edge"
                return k, found
        return None


_WORKER_CTX: _EmbeddingContext | None = None


def _worker_init(params: Params):
    global _WORKER_CTX
    _WORKER_CTX = _EmbeddingContext(params)


def _worker_scan(args):
    mode, lo, hi = args
    ctx = _WORKER_CTX
    return ctx.structured(lo, hi) if mode == "structured" else ctx.bruteforce(lo, hi)


def check_embedding(params: Params, mode: str = "structured", workers: int = 1,
                    context: _EmbeddingContext | None = None) -> EmbeddingViolation | None:
    """None if every H-edge is an edge of K_c^G, else the first violation in
    (H-edge, ordered G-edge) lexicographic order."""
    if mode not in ("structured", "bruteforce"):
        raise ValueError(f"unknown mode {mode!r}")
    ctx = context or _EmbeddingContext(params)
    total = len(ctx.h_edges)
    if workers <= 1 or total < 2 * workers:
        found = ctx.structured(0, total) if mode == "structured" else ctx.bruteforce(0, total)
        return None if found is None else found[1]
    step = -(-total // (4 * workers))
    chunks = [(mode, lo, min(total, lo + step)) for lo in range(0, total, step)]
    with ProcessPoolExecutor(workers, initializer=_worker_init, initargs=(params,)) as pool:
        results = [r for r in pool.map(_worker_scan, chunks) if r is not None]
    if not results:
        return None
    return min(results, key=lambda r: r[0])[1]


def check_product_coloring(params: Params, guard: int = PRODUCT_GUARD) -> EmbeddingViolation | None:
    """Build G x H and test the colouring (x, y) -> y(x) for properness."""
    G = build_G(params)
    H, verts = build_H(params)
    size = G.n * H.n
    if size > guard:
        raise ValueError(f"G x H has {size} vertices, over the guard of {guard}")
    P = tensor_product(G, H)
    colors = product_coloring(params, verts)
    bad = conflict_edge(P, colors, params.c)
    if bad is None:
        return None
    (x, y), (x2, y2) = P.labels[bad[0]], P.labels[bad[1]]
    q = params.q
    return EmbeddingViolation((verts[y], verts[y2]), (g_label(x, q), g_label(x2, q)), colors[bad[0]])


# --------------------------------------------------------------- lower bounds

def pin_g_clique(verts: list[HVertex], c: int) -> dict[int, int]:
    return {k: y.i for k, y in enumerate(verts) if y.kind == "g" and y.i <= c}


def h_coloring(H: Graph, verts: list[HVertex], c: int, budget: int | None = None):
    """A proper c-colouring of H with g_i -> i, or None if there is none."""
    return find_extension(H, pin_g_clique(verts, c), c, budget)


def check_h_lower(params: Params, budget: int | None = None) -> CheckResult:
    H, verts = build_H(params)
    try:
        col = h_coloring(H, verts, params.c, budget)
    except BudgetExhausted as exc:
        return CheckResult("h_lower", UNKNOWN, None, detail=str(exc))
    if col is None:
        return CheckResult("h_lower", PASS, None,
                           detail=f"no proper {params.c}-colouring of H extends g_i -> i")
    witness = {y.tag(): col[k] for k, y in enumerate(verts)}
    return CheckResult("h_lower", FAIL, witness, detail=f"H has a proper {params.c}-colouring")


def check_g_lower(params: Params, alpha_bound: int | None = None, budget: int | None = None,
                  route: str = "auto") -> CheckResult:
    """q * (lower bound on chi_f(F)) > c, as an exact rational inequality."""
    F, q, c = params.F, params.q, params.c
    if route == "auto":
        if alpha_bound is not None:
            route = "alpha_bound"
        elif F.n <= CHI_F_LIMIT:
            route = "chi_f"
        else:
            route = "alpha"
    try:
        if route == "chi_f":
            cert = chi_f_certificate(F, budget=budget)
            cert.check(F)
            bound = cert.value
            extra = {"cover_sets": len(cert.cover)}
        elif route == "alpha":
            alpha = independence_number(F, budget)
            bound = Fraction(F.n, alpha)
            extra = {"alpha": alpha}
        elif route == "alpha_bound":
            if alpha_bound is None or alpha_bound < 1:
                raise ValueError("alpha_bound route needs a positive bound")
            bigger = has_independent_set(F, alpha_bound + 1, budget)
            if bigger is not None:
                return CheckResult("g_lower", FAIL,
                                   {"route": "alpha_bound", "claimed_alpha_max": alpha_bound,
                                    "independent_set": [v + 1 for v in bigger]},
                                   detail=f"F has an independent set of size {alpha_bound + 1}")
            bound = Fraction(F.n, alpha_bound)
            extra = {"alpha_max": alpha_bound}
        else:
            raise ValueError(f"unknown route {route!r}")
    except BudgetExhausted as exc:
        return CheckResult("g_lower", UNKNOWN, {"route": route}, detail=str(exc))
    product = q * bound
    witness = {"route": route, "chi_f_lower": frac_str(bound), "q": q,
               "q_times_bound": frac_str(product), "c": c, **extra}
    ok = product > c
    rel = ">" if ok else "<="
    detail = f"q*chi_f(F) >= {q}*{frac_str(bound)} = {frac_str(product)} {rel} {c}"
    return CheckResult("g_lower", PASS if ok else FAIL, witness, detail=detail)


# ----------------------------------------------------------------------- report

@dataclass
class VerificationReport:
    params: dict
    checks: list[CheckResult] = field(default_factory=list)
    verdict: str = ""

    def check(self, name: str) -> CheckResult | None:
        return next((c for c in self.checks if c.name == name), None)

    def to_json(self) -> dict:
        return {"params": self.params, "checks": [c.to_json() for c in self.checks],
                "verdict": self.verdict}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False) + "\n"

    @property
    def status(self) -> str:
        if self.verdict.startswith("counterexample verified"):
            return PASS
        if self.verdict.startswith("incomplete"):
            return UNKNOWN
        return FAIL


def _timed(fn, timings):
    start = time.perf_counter()
    result = fn()
    millis = int((time.perf_counter() - start) * 1000) if timings else None
    return result, millis


def full_verify(params: Params, mode: str = "structured", workers: int = 1,
                budget: int | None = None, alpha_bound: int | None = None,
                product_guard: int = PRODUCT_GUARD, timings: bool = True,
                g_route: str = "auto") -> VerificationReport:
    report = VerificationReport(params={**params.echo(), "warnings": list(params.warnings),
                                        "mode": mode})

    og = params.odd_girth
    og_ok = og is None or og >= 7
    report.checks.append(CheckResult(
        "odd_girth", PASS if og_ok else FAIL,
        None if og_ok else {"odd_girth": og},
        0 if timings else None,
        f"odd girth of F is {'infinite' if og is None else og}"))

    g_res, ms = _timed(lambda: check_g_lower(params, alpha_bound, budget, g_route), timings)
    g_res.millis = ms
    report.checks.append(g_res)

    h_res, ms = _timed(lambda: check_h_lower(params, budget), timings)
    h_res.millis = ms
    report.checks.append(h_res)

    found, ms = _timed(lambda: check_embedding(params, mode, workers), timings)
    emb = CheckResult("embedding", PASS if found is None else FAIL,
                      None if found is None else found.to_json(), ms,
                      "every H-edge is an edge of K_c^G" if found is None
                      else "an H-edge is not an edge of K_c^G")
    report.checks.append(emb)

    n_prod = params.p * params.q * (params.c + 1 + params.p * (3 * params.q + 2))
    if n_prod <= product_guard:
        pfound, ms = _timed(lambda: check_product_coloring(params, product_guard), timings)
        report.checks.append(CheckResult(
            "product_coloring", PASS if pfound is None else FAIL,
            None if pfound is None else pfound.to_json(), ms,
            f"(x, y) -> y(x) on G x H ({n_prod} vertices)"))

    report.verdict = _verdict(report, params)
    return report


def _verdict(report: VerificationReport, params: Params) -> str:
    reasons = []
    unknown = []
    g = report.check("g_lower")
    h = report.check("h_lower")
    e = report.check("embedding")
    pc = report.check("product_coloring")
    if g.status == FAIL:
        reasons.append(f"chi(G) > c not certified: {g.detail}")
    if h.status == FAIL:
        reasons.append(f"chi(H) <= c: {h.detail}")
    if e.status == FAIL:
        reasons.append("chi(G x H) <= c not shown: H does not embed in K_c^G")
    if pc is not None and pc.status != e.status:
        reasons.append("product colouring disagrees with the embedding check")
    for res in (g, h, e):
        if res.status == UNKNOWN:
            unknown.append(f"{res.name}: {res.detail}")
    suffix = " [experimental colour count]" if params.c != 3 * params.q + 2 else ""
    if reasons:
        return "not a counterexample (" + "; ".join(reasons) + ")" + suffix
    if unknown:
        return "incomplete (" + "; ".join(unknown) + ")" + suffix
    return "counterexample verified" + suffix
