from math import gcd

import pytest
import sympy

from cofibred import RatFun, parse_ratfun
from cofibred.families import (
    chebyshev,
    chebyshev_pair,
    involution_B,
    involution_X,
    involution_Y,
    linear,
    linear_inverse,
    prime_Y,
    random_ritt_pair,
    ritt_pair,
)

zs = sympy.Symbol("z")


@pytest.mark.parametrize("n", range(0, 9))
def test_chebyshev_matches_sympy(n):
    expected = sympy.Poly(sympy.chebyshevt(n, zs), zs).all_coeffs()[::-1]
    assert list(chebyshev(n).num.coeffs) == [int(c) for c in expected]


def test_chebyshev_semigroup():
    for m in range(1, 8):
        for n in range(1, 8):
            assert chebyshev(m).compose(chebyshev(n)) == chebyshev(m * n)


def test_chebyshev_rejects_negative():
    with pytest.raises(ValueError):
        chebyshev(-1)


def test_linear_inverse():
    L = linear(3, -2)
    assert L.compose(linear_inverse(L)) == RatFun.z()


def test_ritt_pair_identity():
    R = parse_ratfun("1 + z").num
    q = ritt_pair(3, 2, R, linear(2, 1), linear(1, -3), linear(1, 1), linear(3, 0))
    assert q.holds()
    assert q.X.degree == 3 and q.Y.degree == 2 + 3
    with pytest.raises(ValueError):
        ritt_pair(4, 2, R)


def test_random_ritt_pairs_hold(rng):
    for n in range(2, 6):
        for s in range(1, n):
            if gcd(s, n) == 1:
                assert random_ritt_pair(rng, n, s).holds()


def test_chebyshev_pair():
    q = chebyshev_pair(2, 3, mu=linear(1, 1))
    assert q.holds()
    with pytest.raises(ValueError):
        chebyshev_pair(2, 4)


def test_involution_family():
    X = involution_X()
    for l in range(1, 5):
        for m in range(1, 5):
            Y, B = involution_Y(l, m), involution_B(l, m)
            H = B.compose(Y)
            assert H.compose(parse_ratfun("1/z")) == H
            # 1 - z^l and z^(l+m) - 1 share the factor z^gcd(l, m) - 1
            assert Y.degree == l + m - gcd(l, m)
    assert X == parse_ratfun("z + 1/z")
    assert prime_Y(3) == parse_ratfun("(1 - z)/(z^4 - 1)")
