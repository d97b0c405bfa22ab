from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from cofibred.algebra import (
    QQ,
    Poly,
    cyclotomic_embedding,
    cyclotomic_field,
    determinant,
    extension_field,
    factor,
    field_make,
    multiplicative_order,
    nullspace,
    poly_gcd,
    poly_xgcd,
    resultant,
    root_of_unity,
    roots_in_field,
    squarefree_factor,
    squarefree_part,
)
from cofibred.errors import FieldTooSmall, InvalidSpec, ReducibleModulus

X = sympy.Symbol("x")

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.lists(small, min_size=0, max_size=6).map(lambda c: Poly(c, QQ))
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def to_sympy(p):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)] or [0], X)


def sylvester_det(p, q):
    """Resultant as the determinant of the Sylvester matrix (sympy oracle)."""
    m, n = p.degree, q.degree
    size = m + n
    a = [sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)]
    b = [sympy.Rational(c.numerator, c.denominator) for c in reversed(q.coeffs)]
    rows = []
    for i in range(n):
        rows.append([0] * i + a + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + b + [0] * (size - n - 1 - i))
    return sympy.Matrix(rows).det()


# -- ring axioms ---------------------------------------------------------------------
@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Poly.zero()


@given(polys, nonzero_polys)
def test_division_identity(p, q):
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.degree < q.degree


def test_zero_polynomial_degree():
    assert Poly.zero().degree == -1
    assert Poly([0, 0]).is_zero()


@given(nonzero_polys, nonzero_polys)
def test_gcd_matches_sympy(p, q):
    g = poly_gcd(p, q)
    expected = sympy.gcd(to_sympy(p), to_sympy(q)).monic()
    assert to_sympy(g).all_coeffs() == expected.all_coeffs()
    g2, s, t = poly_xgcd(p, q)
    assert s * p + t * q == g2 == g


@given(nonzero_polys, nonzero_polys)
def test_resultant_equals_sylvester_determinant(p, q):
    if p.degree < 1 or q.degree < 1:
        return
    assert resultant(p, q) == sylvester_det(p, q)


def test_squarefree_reconstruction(rng):
    for _ in range(200):
        parts = []
        p = Poly.one()
        for _ in range(rng.randint(1, 3)):
            f = Poly([Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(rng.randint(1, 3))] + [1])
            e = rng.randint(1, 3)
            p = p * f**e
            parts.append(f)
        sqf = squarefree_factor(p)
        rebuilt = Poly.one()
        for part, mult in sqf:
            assert poly_gcd(part, part.derivative()).degree == 0
            rebuilt = rebuilt * part**mult
        assert rebuilt == p.monic()
        assert poly_gcd(squarefree_part(p), squarefree_part(p).derivative()).degree == 0


def test_factor_over_q_matches_sympy():
    p = Poly([-4, 0, 0, 0, 1]) * Poly([1, 1]) ** 2  # (x^2 - 2)(x^2 + 2)(x + 1)^2
    got = sorted((f.degree, m) for f, m in factor(p))
    assert got == [(1, 2), (2, 1), (2, 1)]
    assert sorted(roots_in_field(Poly([-6, 11, -6, 1]))) == [(Fraction(k), 1) for k in (1, 2, 3)]


def test_factor_over_cyclotomic_field():
    K = cyclotomic_field(3)
    p = Poly([1, 1, 1], K)  # splits over Q(zeta_3)
    roots = roots_in_field(p)
    assert len(roots) == 2
    for r, _ in roots:
        assert r * r + r + 1 == 0


# -- fields ------------------------------------------------------------------------
def test_field_axioms_cyclotomic():
    K = cyclotomic_field(5)
    w = K.gen
    assert w**5 == K.one
    x = 1 + 2 * w - w**3
    assert x * x.inverse() == K.one
    assert (x / 3) * 3 == x


def test_multiplicative_order():
    K = cyclotomic_field(12)
    w = K.gen
    assert multiplicative_order(w, 20) == 12
    assert multiplicative_order(w**4, 20) == 3
    assert multiplicative_order(K(2), 20) is None
    assert multiplicative_order(Fraction(-1), 5) == 2
    with pytest.raises(ValueError):
        multiplicative_order(Fraction(0), 5)


def test_root_of_unity_and_field_too_small():
    K = cyclotomic_field(6)
    z3 = root_of_unity(K, 3)
    assert z3**3 == K.one and z3 != K.one
    with pytest.raises(FieldTooSmall):
        root_of_unity(QQ, 3)


def test_field_make_variants():
    assert field_make("Q") is QQ
    assert field_make(None) is QQ
    K = field_make(("cyclotomic", 4))
    assert K.gen**2 == -K.one
    assert field_make("Q(zeta_4)") == K
    S = field_make("Q[s]/(s^2 - 2)")
    assert S.gen**2 == S(2)
    assert cyclotomic_field(2) is QQ
    with pytest.raises(ReducibleModulus):
        extension_field(Poly([-1, 0, 1]))
    with pytest.raises(InvalidSpec):
        field_make(("bogus", 1))
    with pytest.raises(InvalidSpec):
        cyclotomic_field(0)


def test_cyclotomic_embedding_is_a_ring_map():
    K3, K6, K12 = cyclotomic_field(3), cyclotomic_field(6), cyclotomic_field(12)
    e = cyclotomic_embedding(K3, K12)
    w = K3.gen
    for a, b in [(w, 1 + w), (2 * w - 1, w**2)]:
        assert e(a * b) == e(a) * e(b)
        assert e(a + b) == e(a) + e(b)
    assert e(w) ** 3 == K12.one
    assert cyclotomic_embedding(QQ, K6)(Fraction(1, 2)) == K6(Fraction(1, 2))
    with pytest.raises(InvalidSpec):
        cyclotomic_embedding(K12, K6)


def test_linear_algebra():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    rows = [[Fraction(x) for x in r] for r in rows]
    ns = nullspace(rows, 3, QQ)
    assert len(ns) == 1
    v = ns[0]
    for r in rows:
        assert sum(a * b for a, b in zip(r, v)) == 0
    assert determinant([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]], QQ) == 5
