"""Subfields of K(z) generated by rational maps.

Compositum ``K(X, Y)`` with a Lüroth generator, membership ``H ∈ K(X)``,
the solver for ``A ∘ X = B ∘ Y`` and the minimal-degree intersection test.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import gcd

from .algebra import Poly, nullspace, poly_gcd, solve
from .errors import CompositumNotFull, ExceedsBound, IdentityFails, InfiniteGroup
from .ratfun import FiberPoly, FunctionField, RatFun, fiber_polynomial, normalize_left, unify


@dataclass(frozen=True)
class CompositumResult:
    degree_d: int
    generator_W: RatFun
    gcd_poly: FiberPoly
    X_factor: RatFun  # S with S ∘ W = X
    Y_factor: RatFun  # T with T ∘ W = Y


def _sample_points(K, count):
    out = []
    k = 0
    while len(out) < count:
        out.append(K((k + 1) // 2 * (1 if k % 2 else -1)))
        k += 1
    return out


def _t_minus_z(K):
    Kz = FunctionField(K)
    return Poly._raw([-RatFun.z(K), Kz.one], Kz)


def _specialized_gcd_degree(NX: FiberPoly, NY: FiberPoly, K):
    """deg_t gcd(N_X(t, z0), N_Y(t, z0)) at a point where neither leading
    coefficient vanishes; an upper bound for ``[K(z) : K(X, Y)]``."""
    lx = NX.poly.lc.num
    ly = NY.poly.lc.num
    for z0 in _sample_points(K, 40):
        if K.is_zero(lx(z0)) or K.is_zero(ly(z0)):
            continue
        return poly_gcd(NX.specialize(z0), NY.specialize(z0)).degree
    return None


def compositum(X: RatFun, Y: RatFun) -> CompositumResult:
    """``K(X, Y) = K(W)``.

    The monic gcd of the fiber polynomials in ``K(z)[t]`` is the minimal
    polynomial of ``z`` over ``K(X, Y)``; any non-constant coefficient of it
    generates that field.
    """
    X, Y = unify(X, Y)
    K = X.field
    z = RatFun.z(K)
    NX, NY = fiber_polynomial(X), fiber_polynomial(Y)
    if gcd(X.degree, Y.degree) == 1 or _specialized_gcd_degree(NX, NY, K) == 1:
        return CompositumResult(1, z, FiberPoly(_t_minus_z(K), False, K), X, Y)
    G = poly_gcd(NX.poly, NY.poly)
    d = G.degree
    W = next((c for c in G.coeffs if not c.is_constant()), z)
    _, W = normalize_left(W)
    if d == 1:
        W = z
    S = left_membership(X, W)
    T = left_membership(Y, W)
    assert S is not None and T is not None and W.degree == d, "compositum generator failed verification"
    return CompositumResult(d, W, FiberPoly(G, False, K), S, T)


def _hom_basis(Xn: Poly, Xd: Poly, k: int):
    """``[Xn^i Xd^(k-i) for i in 0..k]``."""
    K = Xn.field
    npow = [Poly.one(K)]
    dpow = [Poly.one(K)]
    for _ in range(k):
        npow.append(npow[-1] * Xn)
        dpow.append(dpow[-1] * Xd)
    return [npow[i] * dpow[k - i] for i in range(k + 1)]


def _coeff_columns(polys, length, K):
    return [[p[r] for p in polys] for r in range(length)]


def left_membership(H: RatFun, X: RatFun):
    """``A`` with ``A ∘ X = H`` or ``None``.

    With ``k = deg H / deg X`` the homogenized numerator and denominator of
    ``A ∘ X`` are coprime of degree ``deg H``, so they equal ``num H`` and
    ``den H`` up to one common scalar; both are found by linear algebra on
    the basis ``X_num^i X_den^(k-i)``.
    """
    H, X = unify(H, X)
    K = H.field
    if X.is_constant():
        raise ValueError("left_membership needs a non-constant X")
    if H.is_constant():
        return RatFun.const(H.constant_value(), K)
    if H.degree % X.degree:
        return None
    k = H.degree // X.degree
    basis = _hom_basis(X.num, X.den, k)
    length = H.degree + 1
    rows = _coeff_columns(basis, length, K)
    p = solve(rows, [H.num[r] for r in range(length)], K)
    if p is None:
        return None
    q = solve(rows, [H.den[r] for r in range(length)], K)
    if q is None:
        return None
    A = RatFun(Poly(p, K), Poly(q, K), K)
    if A.degree != k or A.compose(X) != H:
        return None
    return A


def right_factor_test(Y: RatFun, V: RatFun):
    """``U`` with ``U ∘ V = Y`` or ``None``.

    ``N_V(t, z)`` divides ``N_Y(t, z)`` whenever ``V`` is a right factor, so
    divisibility of a few specializations screens out most negatives before
    the linear solve.
    """
    Y, V = unify(Y, V)
    K = Y.field
    if V.is_constant():
        raise ValueError("right_factor_test needs a non-constant V")
    if Y.degree % V.degree:
        return None
    NV, NY = fiber_polynomial(V), fiber_polynomial(Y)
    for z0 in _sample_points(K, 3):
        a, b = NV.specialize(z0), NY.specialize(z0)
        if a.is_zero() or not a.divides(b):
            return None
    return left_membership(Y, V)


@dataclass(frozen=True)
class SolutionPair:
    """A solution of ``A ∘ X = B ∘ Y`` with ``A`` in left-normal form.

    Every solution is ``(C ∘ A, C ∘ B)`` for a rational ``C``; within the
    requested degree bounds ``deg C <= max_left_degree``.
    """

    A: RatFun
    B: RatFun
    H: RatFun
    canonical: bool = True
    max_left_degree: int = 1


def _intersection_basis(X, Y, a, b):
    """Basis of ``span{X_hom^i} ∩ span{Y_hom^j}`` as coefficient pairs."""
    K = X.field
    U = _hom_basis(X.num, X.den, a)
    V = _hom_basis(Y.num, Y.den, b)
    length = a * X.degree + 1
    rows = _coeff_columns(U + [-v for v in V], length, K)
    return nullspace(rows, len(U) + len(V), K), len(U)


def minimal_solution(X: RatFun, Y: RatFun, max_a: int, max_b: int):
    """Minimal-degree solution ``(A0, B0)`` with ``deg A0 <= max_a`` or None.

    For ``deg A = a`` and ``deg B = b`` (``a deg X = b deg Y``) the products
    ``A ∘ X`` are quotients of two elements of
    ``W = span{X_hom^i} ∩ span{Y_hom^j}``.  A solution exists iff
    ``dim W >= 2``; at the smallest such ``a`` the space is a pencil and any
    basis gives ``(A0, B0)``, unique up to a Moebius map on the left.
    """
    X, Y = unify(X, Y)
    K = X.field
    dX, dY = X.degree, Y.degree
    for a in range(1, max_a + 1):
        if (a * dX) % dY:
            continue
        b = a * dX // dY
        if b > max_b:
            break
        basis, nu = _intersection_basis(X, Y, a, b)
        if len(basis) < 2:
            continue
        v1, v2 = basis[0], basis[1]
        A = RatFun(Poly(v1[:nu], K), Poly(v2[:nu], K), K)
        B = RatFun(Poly(v1[nu:], K), Poly(v2[nu:], K), K)
        if A.degree != a or B.degree != b:
            continue  # pragma: no cover - excluded by minimality
        return A, B
    return None


def solve_AX_eq_BY(X: RatFun, Y: RatFun, degA: int, degB: int):
    """Solutions of ``A ∘ X = B ∘ Y`` with ``deg A <= degA``, ``deg B <= degB``.

    Returns ``[]`` or a single :class:`SolutionPair` holding the minimal
    solution; all others are obtained by composing it on the left with a map
    of degree at most ``max_left_degree``.
    """
    X, Y = unify(X, Y)
    if degA < 1 or degB < 1:
        raise ValueError("degree bounds must be positive")
    sol = minimal_solution(X, Y, degA, degB)
    if sol is None:
        return []
    A, B = sol
    nu, A = normalize_left(A)
    B = nu.as_ratfun().compose(B)
    H = A.compose(X)
    if H != B.compose(Y):
        raise AssertionError("solver produced an unverified solution")  # pragma: no cover
    k = min(degA // A.degree, degB // B.degree)
    return [SolutionPair(A, B, H, True, k)]


@dataclass(frozen=True)
class GoodSolutionCertificate:
    X: RatFun
    Y: RatFun
    A: RatFun
    B: RatFun
    checks: dict
    verdict: str
    reason: str = ""

    @property
    def good(self):
        return self.verdict == "good"


def good_solution_certify(X, Y, A, B) -> GoodSolutionCertificate:
    """Certify goodness from the degree equalities plus the absence of a
    common right factor (two of the three sufficient conditions; the
    irreducibility of the fiber product is not examined)."""
    X, Y, A, B = unify(X, Y, A, B)
    if A.compose(X) != B.compose(Y):
        raise IdentityFails(f"A∘X != B∘Y for A={A}, B={B}")
    checks = {
        "identity_holds": True,
        "degA_eq_degY": A.degree == Y.degree,
        "degB_eq_degX": B.degree == X.degree,
        "no_common_right_factor": compositum(X, Y).degree_d == 1,
    }
    reasons = []
    if not checks["degB_eq_degX"]:
        reasons.append(f"degB {B.degree} != degX {X.degree}")
    if not checks["degA_eq_degY"]:
        reasons.append(f"degA {A.degree} != degY {Y.degree}")
    if not checks["no_common_right_factor"]:
        reasons.append("X and Y have a common right factor")
    if reasons:
        return GoodSolutionCertificate(X, Y, A, B, checks, "not_good", "; ".join(reasons))
    return GoodSolutionCertificate(X, Y, A, B, checks, "good")


@dataclass(frozen=True)
class IntersectionDecision:
    verdict: str  # "yes", "no" or "undecided"
    H: RatFun | None = None
    A: RatFun | None = None
    B: RatFun | None = None
    certificate: GoodSolutionCertificate | None = None

    def __bool__(self):
        return self.verdict == "yes"


def minimal_intersection_decide(X: RatFun, Y: RatFun) -> IntersectionDecision:
    """Is ``[K(z) : K(X) ∩ K(Y)] = deg X · deg Y``?

    Requires ``K(X, Y) = K(z)``.  Then the index equals ``deg X deg Y``
    exactly when ``A ∘ X = B ∘ Y`` has a solution with ``deg A = deg Y`` and
    ``deg B = deg X``; the solver is complete, so the answer is never
    undecided.
    """
    X, Y = unify(X, Y)
    if X.is_constant() or Y.is_constant():
        raise ValueError("constant maps generate no subfield of finite index")
    comp = compositum(X, Y)
    if comp.degree_d > 1:
        raise CompositumNotFull(comp.degree_d)
    sols = solve_AX_eq_BY(X, Y, Y.degree, X.degree)
    if not sols or sols[0].A.degree != Y.degree:
        return IntersectionDecision("no")
    s = sols[0]
    cert = good_solution_certify(X, Y, s.A, s.B)
    return IntersectionDecision("yes", s.H, s.A, s.B, cert)


@dataclass(frozen=True)
class GroupIntersection:
    H: RatFun
    A: RatFun
    B: RatFun
    group: object
    conditions: dict = dc_field(default_factory=dict)

    @property
    def conditions_hold(self):
        return all(self.conditions.values())


def intersection_via_groups(X: RatFun, Y: RatFun, invariant: RatFun | None = None, bound=None) -> GroupIntersection:
    """For Galois ``X`` and ``Y``: ``H`` generating ``K(X) ∩ K(Y)``.

    ``H`` is the quotient map of ``<G_X, G_Y>``.  The returned conditions
    record whether ``G_X ∩ G_Y`` is trivial and whether the joined group
    has order ``deg X · deg Y``.
    """
    from .moebius import DEFAULT_CLOSURE_BOUND, group_closure, quotient_for_group
    from .theorems import deck_group

    X, Y = unify(X, Y)
    GX = deck_group(X)
    GY = deck_group(Y)
    for F, G in ((X, GX), (Y, GY)):
        if G.group.order != F.degree or not G.complete:
            raise ValueError(f"{F} is not a Galois covering over {F.field.spec}")
    gens = list(GX.group.generators) + list(GY.group.generators)
    try:
        G = group_closure(gens or list(GX.group.elements), bound or DEFAULT_CLOSURE_BOUND, X.field)
    except ExceedsBound as exc:
        if exc.reason == "infinite_element":
            raise InfiniteGroup(exc.witness) from exc
        raise
    H = quotient_for_group(G, invariant)
    A = left_membership(H, X)
    B = left_membership(H, Y)
    assert A is not None and B is not None, "quotient map is not in K(X) ∩ K(Y)"
    common = set(GX.group.elements) & set(GY.group.elements)
    conditions = {
        "trivial_intersection": len(common) == 1,
        "order_is_product": G.order == X.degree * Y.degree,
    }
    return GroupIntersection(H, A, B, G, conditions)
