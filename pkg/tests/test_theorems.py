from fractions import Fraction

import pytest

from cofibred import (
    MoebiusMap,
    abhyankar_check,
    critical_data,
    deck_group,
    equivariance_solve,
    equivariant_normal_form,
    galois_pair_check,
    group_closure,
    is_galois,
    multiplicity_obstruction,
    parse_ratfun,
    semiconjugacy_check,
    so2_verify,
    subgroup_factorization,
)
from cofibred.algebra import cyclotomic_field
from cofibred.errors import DecompositionMismatch, NoSuitableBasePoints, NotGoodSolution, PreconditionZeroOrder
from cofibred.families import prime_Y
from cofibred.ratfun import normalize_left

P = parse_ratfun
K3 = cyclotomic_field(3)
K4 = cyclotomic_field(4)


def M(a, b, c, d, K=None):
    return MoebiusMap(a, b, c, d, K) if K else MoebiusMap(a, b, c, d)


# -- deck groups -----------------------------------------------------------------
def test_deck_group_examples():
    d = deck_group(P("z^4", K4))
    i = K4.gen
    assert set(d.group.elements) == {M(1, 0, 0, 1, K4), M(i, 0, 0, 1, K4), M(-1, 0, 0, 1, K4), M(-i, 0, 0, 1, K4)}
    assert d.complete
    d = deck_group(P("z + 1/z"))
    assert set(d.group.elements) == {M(1, 0, 0, 1), M(0, 1, 1, 0)} and d.complete
    d = deck_group(P("(1 - z)/(z^4 - 1)"))
    assert d.group.is_trivial() and d.complete


def test_deck_group_over_small_field_is_a_lower_bound():
    d = deck_group(P("z^4"))
    assert d.group.order == 2
    assert d.true_order == 4
    assert not d.complete


def test_deck_group_budget():
    with pytest.raises(NoSuitableBasePoints):
        deck_group(P("z^3 + z"), sample_budget=0)


@pytest.mark.parametrize(
    "text, field",
    [("z^2", None), ("z^3", K3), ("z + 1/z", None), ("z^3 + 1/z^3", K3), ("z^3 + z", None), ("(z^2 + 1)/(z - 2)", None)],
)
def test_deck_group_soundness(text, field):
    X = P(text, field) if field else P(text)
    d = deck_group(X)
    for mu in d.group.elements:
        assert X.compose(mu.as_ratfun()) == X
    assert d.group.order <= X.degree
    assert d.group.is_closed()
    g = is_galois(X)
    assert bool(g) == (d.true_order == X.degree) == critical_data(X).is_uniform()


def test_is_galois_examples():
    assert is_galois(P("z^5"))
    g = is_galois(P("z^3 + 1/z^3"))
    assert g and g.deck_order == 6
    assert not is_galois(P("(1 - z)/(z^4 - 1)"))


@pytest.mark.parametrize("text", ["z^2", "z^5", "z + 1/z", "z^3 + 1/z^3", "z^2 + 1/z^2"])
def test_riemann_hurwitz_for_galois_maps(text):
    X = P(text)
    assert is_galois(X)
    n = X.degree
    total = Fraction(2)
    for e in critical_data(X).entries:
        d = e.multiplicities[0]
        total += e.conjugates * (Fraction(1, d) - 1)
    assert total == Fraction(2, n)


# -- equivariance and subgroup quotients ----------------------------------------------
def test_equivariance_examples():
    G = group_closure([M(-1, 0, 0, 1)])
    w = equivariance_solve(P("z^3 + z"), G)
    assert w.injective and w(M(-1, 0, 0, 1)) == M(-1, 0, 0, 1)
    assert equivariance_solve(P("(1 - z)/(z^4 - 1)"), deck_group(P("z + 1/z")).group) is None
    D = deck_group(P("z + 1/z")).group
    w = equivariance_solve(P("z"), D)
    assert all(w(mu) == mu for mu in D.elements)


def test_equivariance_is_a_homomorphism():
    G = deck_group(P("z^4", K4)).group
    V = P("z*(z^4 + 3)", K4)
    w = equivariance_solve(V, G)
    for a in G.elements:
        assert V.compose(a.as_ratfun()) == w(a).as_ratfun().compose(V)
        for b in G.elements:
            assert w(a.compose(b)) == w(a).compose(w(b))


def test_subgroup_factorization_examples():
    C3 = group_closure([M(K3.gen, 0, 0, 1, K3)])
    assert subgroup_factorization(P("z^6", K3), C3) == (P("z^3", K3), P("z^2", K3))
    assert subgroup_factorization(P("z^4"), group_closure([M(-1, 0, 0, 1)])) == (P("z^2"), P("z^2"))
    T, Xhat = subgroup_factorization(P("z^3 + 1/z^3", K3), C3)
    assert T == P("z^3", K3) and Xhat == P("z + 1/z", K3)
    with pytest.raises(ValueError):
        subgroup_factorization(P("z^3"), group_closure([M(-1, 0, 0, 1)]))


# -- Galois X with Y = U ∘ V -------------------------------------------------------
def test_galois_pair_klein_four_case():
    V, U = P("z^3 + z"), P("z + 1/z")
    v = galois_pair_check(P("z^2"), U.compose(V), V, U)
    assert v.all_pass
    assert v.constructed["H"].degree == 12
    assert v.constructed["certificate"].good


def test_galois_pair_cyclic_case():
    X, Y = P("z^2", K3), P("z^3 + 1", K3)
    v = galois_pair_check(X, Y, P("z", K3), Y)
    assert v.all_pass
    H = v.constructed["H"]
    assert normalize_left(H)[1] == normalize_left(P("z^6", K3))[1]


def test_galois_pair_equivariance_failure_and_mismatch():
    Y = P("z^2*(z - 1)")
    v = galois_pair_check(P("z^2"), Y, Y, P("z"))
    assert not v.all_pass and not v.condition2_equivariance[0]
    with pytest.raises(DecompositionMismatch):
        galois_pair_check(P("z^2"), Y, P("z"), P("z^3"))


# -- normal form z^s R(z^n) ---------------------------------------------------------
def test_normal_form_examples():
    f = equivariant_normal_form(P("z^2*(z^3 + 2)", K3), 3)
    assert f.sigma.is_identity() and f.s == 2 and f.R == P("z + 2", K3)
    f = equivariant_normal_form(P("z*(z^2 + 1)^2"), 2, strict=False)
    assert f.sigma.is_identity() and f.s == 1 and f.R == P("(z + 1)^2")
    assert equivariant_normal_form(P("z^2*(z - 1)"), 2) is None


def test_normal_form_preconditions():
    with pytest.raises(PreconditionZeroOrder):
        equivariant_normal_form(P("z + 1"), 2)
    with pytest.raises(PreconditionZeroOrder):
        equivariant_normal_form(P("z*(z^2 + 1)"), 2)
    with pytest.raises(ValueError):
        equivariant_normal_form(P("z^2"), 1)


# -- multiplicity obstruction --------------------------------------------------------
def test_obstruction_examples():
    r = multiplicity_obstruction(P("z^2"), P("z^2*(z - 1)"))
    assert r.points == [(0, 2, 2)]
    assert r.compositum_full and r.intersection_trivial_certified
    assert multiplicity_obstruction(P("z^2"), P("z^3")).points == []
    r = multiplicity_obstruction(P("z^2"), P("z^4 + z^2"))
    assert (0, 2, 2) in r.points and not r.compositum_full
    assert not r.intersection_trivial_certified


# -- semiconjugacy reduction ----------------------------------------------------------
def test_semiconjugacy_example():
    X, Y, A, B = P("z^2"), P("2*(z^3 + z)"), P("4*(z^3 + 2*z^2 + z)"), P("z^2")
    r = semiconjugacy_check(X, Y, A, B)
    assert r.ok
    # η is only determined up to the normalizer of G_X; the identity works here
    assert B.compose(r.eta.as_ratfun()) == r.nu.as_ratfun().compose(X)
    assert r.V == r.eta.inverse().as_ratfun().compose(Y)
    assert r.nu.as_ratfun().compose(r.C) == A
    assert r.witness.injective


def test_semiconjugacy_failures():
    assert semiconjugacy_check(P("z^3"), P("z^3"), P("z^2"), P("z^2")).reason == "degree_mismatch"
    X = P("z^3 + z")
    assert semiconjugacy_check(X, X, X, X).reason == "B_not_galois"


# -- Abhyankar and involution symmetry --------------------------------------------------
def test_abhyankar_examples():
    X, Y, A, B = P("z + 1/z"), P("z^2"), P("z^2 - 2"), P("z + 1/z")
    H = A.compose(X)
    r = abhyankar_check(H, A, B, X, Y, points=[Fraction(1)])
    assert r.holds and r.rows == [(1, 2, 1, 2)]
    X, Y, A, B = P("z^2"), P("z^3"), P("z^3"), P("z^2")
    H = P("z^6")
    r = abhyankar_check(H, A, B, X, Y, points=[Fraction(0), Fraction(1)])
    assert r.rows == [(0, 6, 3, 2), (1, 1, 1, 1)]
    assert abhyankar_check(H, A, B, X, Y).holds
    with pytest.raises(NotGoodSolution):
        abhyankar_check(P("z^4"), P("z^2"), P("z^2"), P("z^2"), P("z^2"))


def test_so2_examples():
    r = so2_verify(P("z^2"), P("z + 1"), M(-1, -2, 0, 1))
    assert r.holds and r.involution
    assert so2_verify(P("z^2"), P("z"), M(-1, 0, 0, 1))
    assert not so2_verify(P("z^3"), P("z"), M(-1, 0, 0, 1))


def test_prime_family_sign():
    # (1 - z)/(z^(p+1) - 1) is minus 1/(1 + z + ... + z^p)
    for p in (3, 5):
        Y = prime_Y(p)
        geometric = sum((P(f"z^{k}") for k in range(1, p + 1)), P("1"))
        assert Y == -1 / geometric
        assert Y.degree == p
