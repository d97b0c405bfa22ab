import random
from fractions import Fraction
from math import gcd

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from cofibred import (
    TruncatedSeries,
    boettcher_solve,
    commute_check,
    parse_ratfun,
    series_compose,
    series_invert,
    transition_group,
)
from cofibred.algebra import cyclotomic_field, field_make
from cofibred.boettcher import embed_series
from cofibred.errors import FieldTooSmall, NotAUnit, NotSuperattracting, TruncationMismatch
from cofibred.families import random_poly

P = parse_ratfun
K3 = cyclotomic_field(3)
zs = sympy.Symbol("z")


def S(coeffs, N, field=None):
    return TruncatedSeries(coeffs, N, field) if field else TruncatedSeries(coeffs, N)


unit_series = st.lists(st.fractions(-3, 3, max_denominator=3), min_size=5, max_size=5).filter(lambda c: c[0] != 0)


# -- series arithmetic ----------------------------------------------------------------
def test_compose_examples():
    f = S([1, 1], 6)
    assert series_compose(f, TruncatedSeries.z(6)) == f
    m = S([-1], 6)
    assert series_compose(m, m) == TruncatedSeries.z(6)


def test_invert_example():
    inv = series_invert(S([1, 1], 4))
    assert inv == S([1, -1, 2, -5], 4)
    assert series_compose(S([1, 1], 4), inv) == TruncatedSeries.z(4)


@given(unit_series)
def test_invert_is_two_sided(c):
    f = S(c, 5)
    g = series_invert(f)
    z = TruncatedSeries.z(5)
    assert f.compose(g) == z == g.compose(f)


@given(unit_series, unit_series, unit_series)
def test_compose_associative(a, b, c):
    f, g, h = S(a, 5), S(b, 5), S(c, 5)
    assert f.compose(g).compose(h) == f.compose(g.compose(h))


def test_compose_matches_sympy():
    f, g = S([1, 2, 0, -1], 6), S([2, 0, 1], 6)
    fs = zs + 2 * zs**2 - zs**4
    gs = 2 * zs + zs**3
    expected = sympy.Poly(sympy.expand(fs.subs(zs, gs)), zs)
    fg = f.compose(g)
    for k in range(1, 7):
        assert fg[k] == Fraction(str(expected.coeff_monomial(zs**k)))


def test_series_errors():
    with pytest.raises(NotAUnit):
        series_invert(S([0, 1], 4))
    with pytest.raises(TruncationMismatch):
        S([1], 4).compose(S([1], 5))
    with pytest.raises(TruncationMismatch):
        commute_check(S([1], 4), S([1], 5))


def test_commute_examples():
    w = K3.gen
    assert commute_check(S([-1], 8, K3), S([w], 8, K3))
    assert not commute_check(S([-1, -1], 8, K3), S([w], 8, K3))
    f = S([1, 3, -2], 8)
    assert commute_check(f, f)


# -- Böttcher coordinates ------------------------------------------------------------
def test_boettcher_examples():
    assert boettcher_solve(P("z^2"), 10) == TruncatedSeries.z(10)
    beta = boettcher_solve(P("z^2 + z^3"), 8)
    assert beta[1] == 1 and beta[2] == Fraction(-1, 2)
    K = field_make("Q[w]/(w^2 - 2)")
    beta = boettcher_solve(P("2*z^3", K), 6)
    assert beta[1] * beta[1] == K(Fraction(1, 2))
    assert all(K.is_zero(beta[k]) for k in range(2, 7))


def test_boettcher_errors():
    with pytest.raises(NotSuperattracting):
        boettcher_solve(P("z + z^2"), 6)
    with pytest.raises(NotSuperattracting):
        boettcher_solve(P("1 + z^2"), 6)
    with pytest.raises(NotSuperattracting):
        boettcher_solve(P("1/z"), 6)
    with pytest.raises(FieldTooSmall):
        boettcher_solve(P("2*z^3"), 6)


@pytest.mark.parametrize("text", ["z^2", "z^2 + z^3", "z^3 + z^4", "z^3/(1 + z)", "z^2*(1 - z)/(1 + 2*z)"])
def test_boettcher_residual(text):
    H = P(text)
    N = 32
    beta = boettcher_solve(H, N)
    n = next(k for k, c in enumerate(TruncatedSeries.from_ratfun(H, N).coeffs, start=1) if c)
    Hs = TruncatedSeries.from_ratfun(H, N)
    zn = S([0] * (n - 1) + [1], N)
    assert Hs.compose(beta) == beta.compose(zn)


def test_boettcher_uniqueness_up_to_rotation():
    # β ∘ (ν z) with ν^(n-1) = 1 is again a solution
    H = P("z^4 + z^5", K3)
    N = 16
    beta = boettcher_solve(H, N)
    Hs = TruncatedSeries.from_ratfun(H, N)
    z4 = S([0, 0, 0, 1], N, K3)
    for nu in (K3.one, K3.gen, K3.gen**2):
        b2 = beta.compose(S([nu], N, K3))
        assert Hs.compose(b2) == b2.compose(z4)
        assert boettcher_solve(H, N, gamma=nu) == b2


# -- transition groups -------------------------------------------------------------
def test_transition_examples():
    G = transition_group(P("z^2"), 8)
    assert G.elements == (TruncatedSeries.z(8), S([-1], 8))
    G = transition_group(P("z^2 + z^3"), 3)
    assert G.elements[1] == S([-1, -1, G.elements[1][3]], 3)
    G = transition_group(P("z^3", K3), 6)
    w = K3.gen
    assert set(G.elements) == {S([1], 6, K3), S([w], 6, K3), S([w**2], 6, K3)}


@pytest.mark.parametrize("text, n", [("z^2 + z^3", 2), ("z^3 + z^4", 3), ("z^4 - 2*z^6", 4), ("z^3/(1 + z)", 3)])
def test_transition_group_law(text, n):
    G = transition_group(P(text), 16)
    assert G.order_n == n and len(G.elements) == n
    assert G.is_closed() and G.is_abelian()
    for k, phi in enumerate(G.elements):
        assert G.element_order(phi) == n // gcd(k, n)


def core_pair(rng, n, s):
    """``z^n`` and ``z^s R(z^n)`` with ``R(0) = 1``, so both vanish to orders n and s."""
    R = random_poly(rng, rng.randint(0, 2), constant=1)
    z = P("z")
    return z**n, (z**s) * P(str(R)).compose(z**n)


def test_transition_groups_of_coprime_pairs_meet_trivially():
    rng = random.Random(7)
    N = 16
    for n, s in [(2, 3), (3, 2), (3, 4)]:
        X, Y = core_pair(rng, n, s)
        GX, GY = transition_group(X, N, verify=False), transition_group(Y, N, verify=False)
        L = cyclotomic_field(n * s // gcd(n, s))
        ex = [embed_series(f, L) for f in GX.elements]
        ey = [embed_series(f, L) for f in GY.elements]
        assert [f for f in ex if f in ey] == [TruncatedSeries.z(N, L)]
