"""Fractional chromatic number in exact rational arithmetic.

chi_f(G) is the optimum of

    min sum_I x_I   s.t.  sum_{I containing v} x_I >= 1 for every v,  x >= 0

over independent sets I.  We solve its dual, the fractional clique LP
``max sum_v y_v`` with every independent set of weight at most 1, either over
all maximal independent sets or by column generation with an exact
maximum-weight independent set as pricing oracle.  Every answer comes with
both a cover and a fractional clique of equal value.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph, bits
from .lp import solve_packing
from .solvers import (
    BudgetExhausted,
    independence_number,
    max_weight_independent_set,
    maximal_independent_sets,
)

ENUMERATION_LIMIT = 30


@dataclass(frozen=True)
class FractionalCertificate:
    value: Fraction
    cover: dict[int, Fraction]    # independent-set bitmask -> weight
    clique: tuple[Fraction, ...]  # weight per vertex
    method: str

    def check(self, G: Graph) -> None:
        """Re-verify both halves of the certificate from scratch."""
        rows = G.rows
        for I, w in self.cover.items():
            if w < 0:
                raise AssertionError("negative cover weight")
            for v in bits(I):
                if rows[v] & I:
                    raise AssertionError(f"cover set {I:#x} is not independent")
        for v in range(G.n):
            got = sum((w for I, w in self.cover.items() if (I >> v) & 1), Fraction(0))
            if got < 1:
                raise AssertionError(f"vertex {v} covered only {got}")
        if any(y < 0 for y in self.clique):
            raise AssertionError("negative clique weight")
        heaviest, _ = max_weight_independent_set(G, self.clique)
        if heaviest > 1:
            raise AssertionError(f"fractional clique has an independent set of weight {heaviest}")
        if sum(self.cover.values(), Fraction(0)) != self.value:
            raise AssertionError("cover weight differs from the value")
        if sum(self.clique, Fraction(0)) != self.value:
            raise AssertionError("clique weight differs from the value")


def _extend_to_maximal(G: Graph, I: int) -> int:
    rows = G.rows
    blocked = I
    for v in bits(I):
        blocked |= rows[v]
    for v in range(G.n):
        if not (blocked >> v) & 1:
            I |= 1 << v
            blocked |= rows[v] | (1 << v)
    return I


def _solve_restricted(G: Graph, sets: list[int]):
    A = [[1 if (I >> v) & 1 else 0 for v in range(G.n)] for I in sets]
    return solve_packing(A, [1] * len(sets), [1] * G.n)


def _certificate(G, sets, sol, method) -> FractionalCertificate:
    cover = {I: x for I, x in zip(sets, sol.dual) if x}
    if sum(cover.values(), Fraction(0)) != sol.value or sum(sol.primal, Fraction(0)) != sol.value:
        raise AssertionError("LP primal and dual optima differ")
    return FractionalCertificate(sol.value, cover, sol.primal, method)


def chi_f_certificate(G: Graph, method: str = "auto", max_rounds: int = 10_000,
                      budget: int | None = None) -> FractionalCertificate:
    """Exact chi_f(G) with a matching cover and fractional clique.

    ``method`` is ``"enumerate"`` (all maximal independent sets),
    ``"columns"`` (column generation) or ``"auto"``.
    """
    if G.has_loops():
        raise ValueError("chi_f needs a loop-free graph")
    if G.n == 0:
        return FractionalCertificate(Fraction(0), {}, (), "trivial")
    if method == "auto":
        method = "enumerate" if G.n <= 16 else "columns"
    if method == "enumerate":
        if G.n > ENUMERATION_LIMIT:
            raise ValueError(f"enumeration is limited to {ENUMERATION_LIMIT} vertices")
        sets = maximal_independent_sets(G, limit=budget)
        cert = _certificate(G, sets, _solve_restricted(G, sets), "enumerate")
    elif method == "columns":
        cert = _column_generation(G, max_rounds, budget)
    else:
        raise ValueError(f"unknown method {method!r}")
    return cert


def _column_generation(G: Graph, max_rounds: int, budget: int | None) -> FractionalCertificate:
    sets: list[int] = []
    seen = set()
    for v in range(G.n):
        I = _extend_to_maximal(G, 1 << v)
        if I not in seen:
            seen.add(I)
            sets.append(I)
    for _ in range(max_rounds):
        sol = _solve_restricted(G, sets)
        weight, chosen = max_weight_independent_set(G, sol.primal, budget)
        if weight <= 1:
            return _certificate(G, sets, sol, "columns")
        I = _extend_to_maximal(G, sum(1 << v for v in chosen))
        if I in seen:
            raise AssertionError("pricing returned an existing column")
        seen.add(I)
        sets.append(I)
    # the scaled clique is feasible, the restricted cover is feasible
    raise BudgetExhausted("chi_f column generation", sol.value / weight, sol.value)


def chi_f_exact(G: Graph, method: str = "auto", budget: int | None = None) -> Fraction:
    return chi_f_certificate(G, method, budget=budget).value


def chi_f_lower_n_over_alpha(G: Graph, budget: int | None = None) -> Fraction:
    if G.n == 0:
        return Fraction(0)
    return Fraction(G.n, independence_number(G, budget))


def tardif_value(base, r: int) -> Fraction:
    """chi_f of M_r(G) from chi_f(G) = ``base``:
    base + 1 / sum_{i<r} (base - 1)^i."""
    base = Fraction(base)
    if base <= 1:
        raise ValueError("base must exceed 1")
    if r < 1:
        raise ValueError("r must be positive")
    step = base - 1
    return base + 1 / sum((step ** i for i in range(r)), Fraction(0))


def tardif_chain_value(base, rvec: Sequence[int]) -> Fraction:
    """Fold tardif_value over ``rvec``, innermost (last) entry first."""
    value = Fraction(base)
    for r in reversed(list(rvec)):
        value = tardif_value(value, r)
    return value
