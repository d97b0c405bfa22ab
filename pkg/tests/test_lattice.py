from math import gcd

import pytest
import sympy

from cofibred import (
    RatFun,
    compositum,
    good_solution_certify,
    intersection_via_groups,
    left_membership,
    minimal_intersection_decide,
    parse_ratfun,
    right_factor_test,
    solve_AX_eq_BY,
)
from cofibred.algebra import QQ
from cofibred.errors import CompositumNotFull, IdentityFails, InfiniteGroup
from cofibred.families import involution_B, involution_X, involution_Y, random_poly
from cofibred.ratfun import fiber_polynomial, normalize_left

P = parse_ratfun
t_s, z_s = sympy.symbols("t z")


def same_up_to_left_moebius(F, G):
    return normalize_left(F)[1] == normalize_left(G)[1]


def random_ratfun(rng, max_deg=4):
    while True:
        num = random_poly(rng, rng.randint(0, max_deg))
        den = random_poly(rng, rng.randint(0, max_deg))
        F = RatFun(num, den)
        if not F.is_constant():
            return F


# -- compositum ---------------------------------------------------------------------
def test_compositum_examples():
    r = compositum(P("z^2"), P("z^3"))
    assert r.degree_d == 1 and r.generator_W.degree == 1
    r = compositum(P("z^4"), P("z^6"))
    assert r.degree_d == 2
    assert same_up_to_left_moebius(r.generator_W, P("z^2"))
    assert r.X_factor.compose(r.generator_W) == P("z^4")
    assert r.Y_factor.compose(r.generator_W) == P("z^6")


@pytest.mark.parametrize("a", range(1, 6))
@pytest.mark.parametrize("b", range(1, 6))
def test_compositum_monomial_oracle(a, b):
    # oracle: gcd of the fiber polynomials computed by sympy over Q(z)
    g = sympy.gcd(t_s**a - z_s**a, t_s**b - z_s**b)
    d = sympy.degree(g, t_s)
    r = compositum(P(f"z^{a}"), P(f"z^{b}"))
    assert r.degree_d == d == gcd(a, b)
    assert same_up_to_left_moebius(r.generator_W, P(f"z^{d}"))


def test_compositum_gcd_divides_fiber_polynomials(rng):
    for _ in range(10):
        W = random_ratfun(rng, 2)
        X = random_ratfun(rng, 2).compose(W)
        Y = random_ratfun(rng, 2).compose(W)
        r = compositum(X, Y)
        g = r.gcd_poly.poly
        for F in (X, Y):
            N = fiber_polynomial(F).poly
            assert (N % g).is_zero()
        assert r.gcd_poly.t_degree == r.generator_W.degree
        assert r.degree_d % W.degree == 0  # K(X, Y) lies inside K(W)
        assert r.X_factor.compose(r.generator_W) == X


# -- membership and right factors ----------------------------------------------------
def test_left_membership_examples():
    assert left_membership(P("z^6"), P("z^2")) == P("z^3")
    assert left_membership(P("z^2 + 1/z^2"), P("z + 1/z")) == P("z^2 - 2")
    assert left_membership(P("z^3"), P("z^2")) is None


def test_left_membership_round_trip(rng):
    for _ in range(25):
        A, X = random_ratfun(rng), random_ratfun(rng)
        H = A.compose(X)
        assert left_membership(H, X) == A


def test_right_factor_examples():
    assert right_factor_test(P("z^6"), P("z^2")) == P("z^3")
    assert right_factor_test(P("z^3 + z"), P("z^2")) is None
    assert right_factor_test(P("(z^12 + 1)/(2*z^6)"), P("z^3")) == P("(z^4 + 1)/(2*z^2)")


def test_right_factor_round_trip(rng):
    for _ in range(25):
        U, V = random_ratfun(rng), random_ratfun(rng)
        assert right_factor_test(U.compose(V), V) == U


# -- solver ------------------------------------------------------------------------
def test_solver_examples():
    (s,) = solve_AX_eq_BY(P("z^2"), P("z^3"), 3, 2)
    assert s.A.compose(P("z^2")) == s.B.compose(P("z^3"))
    assert same_up_to_left_moebius(s.A, P("z^3")) and same_up_to_left_moebius(s.B, P("z^2"))
    (s,) = solve_AX_eq_BY(P("z + 1/z"), P("z^2"), 2, 2)
    assert same_up_to_left_moebius(s.A, P("z^2 - 2"))
    assert same_up_to_left_moebius(s.H, P("z^2 + 1/z^2"))
    assert solve_AX_eq_BY(P("z + 1/z"), P("(1 - z)/(z^4 - 1)"), 4, 2) == []


def monomial_oracle(a, b):
    """Smallest ``i`` with ``z^i ∘ z^a = z^j ∘ z^b`` for ``i <= b``, ``j <= a``."""
    for i in range(1, b + 1):
        if (i * a) % b == 0 and i * a // b <= a:
            return i, i * a // b
    return None


@pytest.mark.parametrize("a", range(1, 6))
@pytest.mark.parametrize("b", range(1, 6))
def test_solver_monomial_oracle(a, b):
    expected = monomial_oracle(a, b)
    sols = solve_AX_eq_BY(P(f"z^{a}"), P(f"z^{b}"), b, a)
    assert expected is not None  # z^(b/g), z^(a/g) always works
    (s,) = sols
    i, j = expected
    assert (s.A.degree, s.B.degree) == (i, j)
    assert same_up_to_left_moebius(s.A, P(f"z^{i}"))
    assert same_up_to_left_moebius(s.B, P(f"z^{j}"))


def test_solver_rejects_bad_bounds():
    with pytest.raises(ValueError):
        solve_AX_eq_BY(P("z^2"), P("z^3"), 0, 2)


# -- certification and decision --------------------------------------------------------
def test_certify_examples():
    assert good_solution_certify(P("z^2"), P("z^3"), P("z^3"), P("z^2")).good
    assert good_solution_certify(P("z + 1/z"), P("z^2"), P("z^2 - 2"), P("z + 1/z")).good
    X, Y, B = involution_X(), involution_Y(1, 3), involution_B(1, 3)
    A = left_membership(B.compose(Y), X)
    c = good_solution_certify(X, Y, A, B)
    assert not c.good and "degB 4 != degX 2" in c.reason
    with pytest.raises(IdentityFails):
        good_solution_certify(P("z^2"), P("z^3"), P("z^2"), P("z^2"))


def test_decide_examples():
    d = minimal_intersection_decide(P("z^2"), P("z^3"))
    assert d.verdict == "yes" and same_up_to_left_moebius(d.H, P("z^6"))
    d = minimal_intersection_decide(P("z + 1/z"), P("z^2"))
    assert d and same_up_to_left_moebius(d.H, P("z^2 + 1/z^2"))
    assert d.certificate.good
    assert minimal_intersection_decide(P("z + 1/z"), P("(1 - z)/(z^4 - 1)")).verdict == "no"
    with pytest.raises(CompositumNotFull):
        minimal_intersection_decide(P("z^4"), P("z^6"))


def test_decide_yes_is_good_and_has_full_degree(rng):
    for _ in range(10):
        X = RatFun(random_poly(rng, 2), random_poly(rng, 1))
        Y = RatFun(random_poly(rng, 3))
        if X.degree < 2 or compositum(X, Y).degree_d != 1:
            continue
        d = minimal_intersection_decide(X, Y)
        if d:
            assert d.certificate.good
            assert d.H.degree == X.degree * Y.degree


# -- group route ---------------------------------------------------------------------
def test_intersection_via_groups_klein_four():
    r = intersection_via_groups(P("z + 1/z"), P("z^2"))
    assert r.group.order == 4 and r.group.classification == "D2"
    assert same_up_to_left_moebius(r.H, P("z^2 + 1/z^2"))
    assert r.conditions_hold
    assert r.A.compose(P("z + 1/z")) == r.H == r.B.compose(P("z^2"))


def test_intersection_via_groups_dihedral_12():
    from cofibred.algebra import cyclotomic_field

    K = cyclotomic_field(3)
    X = P("z^2").change_field(K)
    Y = P("z^3 + 1/z^3").change_field(K)
    r = intersection_via_groups(X, Y)
    assert r.group.order == 12
    assert r.conditions_hold
    assert same_up_to_left_moebius(r.H, P("z^6 + 1/z^6").change_field(K))


def test_intersection_via_groups_infinite():
    with pytest.raises(InfiniteGroup):
        intersection_via_groups(P("z + 1/z"), P("((z + 2)/(z - 1))^2"))


def test_field_of_results_is_base_field():
    assert compositum(P("z^2"), P("z^3")).generator_W.field is QQ
