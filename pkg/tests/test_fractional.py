from fractions import Fraction

import pytest
from hypothesis import given, settings

from hedet.fractional import (
    chi_f_certificate,
    chi_f_exact,
    chi_f_lower_n_over_alpha,
    tardif_chain_value,
    tardif_value,
)
from hedet.graph import complete, cycle, lex_complete, mycielski, petersen
from hedet.lp import Unbounded, solve_packing

from test_graph import graphs

# exact arithmetic done by hand: 7/3 + 1/(1 + 4/3 + 16/9) = 7/3 + 9/37
M3_C7 = Fraction(286, 111)
# the four-fold chain from 7/3, frozen after the first exact run
CHAIN_3333 = Fraction(
    157595796002522886296630723133840822996892689815616514402338654631,
    50971490812438489304371634294673554212628540013398100751313735331)


def test_packing_lp_textbook():
    # max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3  ->  x=3, y=1, value 11
    sol = solve_packing([[1, 1], [1, 3], [1, 0]], [4, 6, 3], [3, 2])
    assert sol.value == 11 and sol.primal == (3, 1)
    # duals certify the bound: 4*2 + 3*1 = 11
    assert sum(b * x for b, x in zip([4, 6, 3], sol.dual)) == 11


def test_packing_lp_degenerate_and_unbounded():
    sol = solve_packing([[1, 1], [1, 1], [1, 0]], [0, 0, 0], [1, 1])
    assert sol.value == 0
    with pytest.raises(Unbounded):
        solve_packing([[1, -1]], [1], [0, 1])


@pytest.mark.parametrize("G,expected", [
    (cycle(5), Fraction(5, 2)),
    (cycle(7), Fraction(7, 3)),
    (cycle(9), Fraction(9, 4)),
    (complete(6), Fraction(6)),
    (petersen(), Fraction(5, 2)),
    (mycielski(cycle(5), 2), Fraction(29, 10)),
])
@pytest.mark.parametrize("method", ["enumerate", "columns"])
def test_chi_f_values(G, expected, method):
    cert = chi_f_certificate(G, method)
    assert cert.value == expected
    cert.check(G)


def test_chi_f_m3_c7():
    G = mycielski(cycle(7), 3)
    assert G.n == 22
    cert = chi_f_certificate(G)
    cert.check(G)
    assert cert.value == M3_C7 == tardif_value(Fraction(7, 3), 3)


@pytest.mark.parametrize("G,r", [(cycle(5), 1), (cycle(5), 2), (cycle(5), 3), (cycle(7), 2),
                                 (cycle(7), 3), (mycielski(cycle(5), 2), 1)])
def test_tardif_matches_lp(G, r):
    assert chi_f_exact(mycielski(G, r)) == tardif_value(chi_f_exact(G), r)


@pytest.mark.parametrize("F,q", [(cycle(5), 2), (cycle(5), 3), (cycle(7), 2), (petersen(), 2)])
def test_chi_f_of_blowup(F, q):
    assert chi_f_exact(lex_complete(F, q)) == q * chi_f_exact(F)


@settings(max_examples=30, deadline=None)
@given(graphs(8))
def test_methods_agree_and_bound(G):
    a = chi_f_certificate(G, "enumerate")
    b = chi_f_certificate(G, "columns")
    a.check(G)
    b.check(G)
    assert a.value == b.value
    assert chi_f_lower_n_over_alpha(G) <= a.value


def test_n_over_alpha():
    assert chi_f_lower_n_over_alpha(cycle(7)) == Fraction(7, 3)
    assert chi_f_lower_n_over_alpha(petersen()) == Fraction(5, 2)
    # an 83-vertex seed with alpha = 27 clears the 3 + 4/(p-1) threshold
    assert Fraction(83, 27) > 3 + Fraction(4, 82)


def test_tardif_values():
    assert tardif_value(Fraction(5, 2), 2) == Fraction(29, 10)
    assert tardif_value(Fraction(7, 3), 3) == M3_C7
    assert tardif_value(Fraction(13, 4), 1) == Fraction(17, 4)
    assert tardif_chain_value(Fraction(5, 2), [2]) == Fraction(29, 10)
    assert tardif_chain_value(Fraction(7, 3), []) == Fraction(7, 3)
    with pytest.raises(ValueError):
        tardif_value(Fraction(1), 2)


def test_tardif_chain_607():
    value = tardif_chain_value(Fraction(7, 3), (3, 3, 3, 3))
    assert value == CHAIN_3333
    assert value > Fraction(309, 100)


def test_tardif_chain_order():
    # (2, 3) means M_2(M_3(G)): the last entry acts first
    assert tardif_chain_value(Fraction(5, 2), (2, 3)) == tardif_value(tardif_value(Fraction(5, 2), 3), 2)
    assert chi_f_exact(mycielski(mycielski(cycle(5), 1), 2)) == tardif_chain_value(Fraction(5, 2), (2, 1))
