"""Deck groups, Galois detection, equivariance and the structure theorems
for solutions of ``A ∘ X = B ∘ Y`` when one of the maps is Galois."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import gcd

from .algebra import ExtensionField, Poly, factor, nullspace, poly_gcd, root_of_unity, roots_in_field
from .errors import (
    DecompositionMismatch,
    ExceedsBound,
    FieldTooSmall,
    IdentityFails,
    NoSuitableBasePoints,
    NotGoodSolution,
    PreconditionZeroOrder,
    UnsupportedGroup,
)
from .lattice import compositum, good_solution_certify, intersection_via_groups, left_membership
from .moebius import (
    MoebiusGroup,
    MoebiusMap,
    _fixed_points,
    _is_flip,
    _is_rotation,
    _sigma_from_fixed_points,
    classify_group,
    conjugate_group,
    element_order,
    group_closure,
    quotient_for_group,
)
from .ratfun import INF, RatFun, critical_data, multiplicity_at, taylor, unify, wronskian

DEFAULT_SAMPLE_BUDGET = 25


# -- deck groups ------------------------------------------------------------------
@dataclass(frozen=True)
class DeckGroupResult:
    """Deck transformations of ``X``.

    ``group`` holds the maps defined over the working field.  ``true_order``
    is the order of the full deck group over the algebraic closure; when it
    exceeds ``group.order`` some deck maps need a larger field and the
    result is a lower bound.
    """

    group: MoebiusGroup
    true_order: int
    base_point: object
    completeness: str

    @property
    def complete(self):
        return self.completeness == "complete"


def _sample(k):
    return (k + 1) // 2 * (1 if k % 2 else -1)


def _base_point(X: RatFun, budget: int):
    K = X.field
    n = X.degree
    W = wronskian(X)
    for k in range(budget):
        z0 = K(_sample(k))
        if K.is_zero(X.den(z0)) or K.is_zero(W(z0)):
            continue
        c = X(z0)
        fib = X.num - X.den * c
        if fib.degree != n or poly_gcd(fib, fib.derivative()).degree > 0:
            continue
        return z0, fib
    raise NoSuitableBasePoints(f"no regular base point among {budget} samples")


def _branch_moebius(X: RatFun, z0, w, jet0):
    """The Moebius map sending ``z0`` to ``w`` that agrees to second order
    with the local branch of ``X^-1 ∘ X`` through ``w``."""
    a1, a2 = jet0[1], jet0[2]
    _, b1, b2 = taylor(X, w, 2)
    t1 = a1 / b1
    t2 = (a2 - b2 * t1 * t1) / b1
    k = t2 / t1
    return MoebiusMap(t1 - w * k, w + w * k * z0 - t1 * z0, -k, 1 + k * z0, X.field)


def _minimal_generators(elements):
    gens = []
    span = {elements[0]} if elements else set()
    for g in elements:
        if g in span:
            continue
        gens.append(g)
        span = set(group_closure(gens, field=g.field).elements)
    return gens


def deck_group(X: RatFun, sample_budget: int = DEFAULT_SAMPLE_BUDGET) -> DeckGroupResult:
    """Deck transformations ``μ`` with ``X ∘ μ = X``.

    A deck map is determined by the image ``w`` of one regular point ``z0``,
    and it is the Moebius map matching the second-order jet of the branch of
    ``X^-1 ∘ X`` at ``z0`` through ``w``.  For each irreducible factor of
    the fiber polynomial over ``X(z0)`` one candidate is built over the
    residue field and checked exactly; a verified candidate accounts for all
    conjugate fiber points at once.
    """
    if X.degree < 2:
        raise ValueError("deck_group needs degree at least two")
    K = X.field
    z0, fib = _base_point(X, sample_budget)
    jet0 = taylor(X, z0, 2)
    rational = []
    true_order = 0
    for h, _ in factor(fib):
        if h.degree == 1:
            w = -h[0]
            XL = X
        else:
            L = ExtensionField(K, h.coeffs, name="v")
            w = L.gen
            XL = X.change_field(L)
        mu = _branch_moebius(XL, z0, w, jet0)
        if XL.compose(mu.as_ratfun()) == XL:
            true_order += h.degree
            if h.degree == 1:
                rational.append(mu)
    rational.sort(key=lambda m: (not m.is_identity(), [K.key(x) for x in m.matrix()]))
    gens = _minimal_generators(rational)
    G0 = MoebiusGroup(tuple(rational), tuple(gens), "", K)
    group = MoebiusGroup(G0.elements, G0.generators, classify_group(G0), K)
    completeness = "complete" if true_order == len(rational) else "lower_bound(nonrational_deck_maps)"
    return DeckGroupResult(group, true_order, z0, completeness)


@dataclass(frozen=True)
class GaloisVerdict:
    is_galois: bool
    deck_order: int
    degree: int
    uniform_multiplicities: bool
    deck: DeckGroupResult | None = None

    def __bool__(self):
        return self.is_galois


def is_galois(X: RatFun) -> GaloisVerdict:
    """``|G_X| = deg X``, cross-checked against the criterion that over every
    critical value all multiplicities coincide."""
    if X.degree == 1:
        return GaloisVerdict(True, 1, 1, True, None)
    deck = deck_group(X)
    uniform = critical_data(X).is_uniform()
    by_group = deck.true_order == X.degree
    if by_group != uniform:
        raise AssertionError(f"deck order and ramification disagree for {X}")  # pragma: no cover
    return GaloisVerdict(by_group, deck.true_order, X.degree, uniform, deck)


# -- equivariance -----------------------------------------------------------------
def moebius_relating(F: RatFun, V: RatFun):
    """Moebius ``ν`` with ``F = ν ∘ V`` or ``None``."""
    F, V = unify(F, V)
    K = F.field
    if F.degree != V.degree:
        return None
    # F_n (c V_n + d V_d) - F_d (a V_n + b V_d) = 0 in the unknowns (a, b, c, d)
    cols = [-F.den * V.num, -F.den * V.den, F.num * V.num, F.num * V.den]
    length = max(p.degree for p in cols) + 1
    rows = [[p[r] for p in cols] for r in range(length)]
    ns = nullspace(rows, 4, K)
    for v in ns if len(ns) == 1 else []:
        a, b, c, d = v
        if K.is_zero(a * d - b * c):
            return None
        nu = MoebiusMap(a, b, c, d, K)
        if nu.as_ratfun().compose(V) == F:
            return nu
    return None


@dataclass(frozen=True)
class EquivarianceWitness:
    phi: dict
    injective: bool
    image_group: MoebiusGroup

    def __call__(self, mu):
        return self.phi[mu]


def equivariance_solve(V: RatFun, G: MoebiusGroup):
    """``φ`` with ``V ∘ μ = φ(μ) ∘ V`` for every ``μ`` in ``G``, or None."""
    phi = {}
    for mu in G.elements:
        nu = moebius_relating(V.compose(mu.as_ratfun()), V)
        if nu is None:
            return None
        phi[mu] = nu
    for m1 in G.elements:
        for m2 in G.elements:
            if phi[m1.compose(m2)] != phi[m1].compose(phi[m2]):
                raise AssertionError("equivariance map is not a homomorphism")  # pragma: no cover
    image = []
    for nu in phi.values():
        if nu not in image:
            image.append(nu)
    img = MoebiusGroup(tuple(image), tuple(image), "", G.field)
    img = MoebiusGroup(img.elements, img.generators, classify_group(img), G.field)
    return EquivarianceWitness(phi, len(image) == G.order, img)


def subgroup_factorization(X: RatFun, G_sub: MoebiusGroup, invariant: RatFun | None = None):
    """``(T, Xhat)`` with ``X = Xhat ∘ T`` and ``T`` the quotient by ``G_sub``."""
    for mu in G_sub.elements:
        if X.compose(mu.as_ratfun()) != X:
            raise ValueError(f"{mu} is not a deck transformation of {X}")
    T = quotient_for_group(G_sub, invariant)
    Xhat = left_membership(X, T)
    if Xhat is None or Xhat.compose(T) != X:
        raise AssertionError("subgroup quotient is not a right factor")  # pragma: no cover
    return T, Xhat


# -- Galois X: conditions on Y = U ∘ V ---------------------------------------------
@dataclass(frozen=True)
class GaloisPairVerdict:
    condition1_U_galois: tuple
    condition2_equivariance: tuple
    condition3_group_order: tuple
    constructed: dict | None = None

    @property
    def all_pass(self):
        return all(c[0] for c in (self.condition1_U_galois, self.condition2_equivariance, self.condition3_group_order))


def _deck_of(F: RatFun):
    if F.degree == 1:
        return MoebiusGroup((MoebiusMap.identity(F.field),), (), "C1", F.field)
    return deck_group(F).group


def galois_pair_check(X: RatFun, Y: RatFun, V: RatFun, U: RatFun) -> GaloisPairVerdict:
    """Check the three conditions for ``Y = U ∘ V`` against a Galois ``X``
    and, if they hold, build the good solution ``A ∘ X = B ∘ Y``."""
    X, Y, V, U = unify(X, Y, V, U)
    if U.compose(V) != Y:
        raise DecompositionMismatch(f"U∘V != Y for U={U}, V={V}")
    gx = is_galois(X)
    if not gx or not gx.deck.complete:
        raise ValueError(f"{X} is not a Galois covering over {X.field.spec}")
    GX = gx.deck.group

    gu = is_galois(U)
    if not gu:
        c1 = (False, f"U has {gu.deck_order} deck maps but degree {U.degree}")
    elif gu.deck is not None and not gu.deck.complete:
        c1 = (False, "deck maps of U are not defined over the field")
    else:
        c1 = (True, "U is Galois")

    w = equivariance_solve(V, GX)
    if w is None:
        c2 = (False, "no Moebius relation V∘μ = ν∘V for some μ in G_X")
    elif not all(nu in GX for nu in w.phi.values()):
        c2 = (False, "image of φ is not contained in G_X")
    elif not w.injective:
        c2 = (False, "φ is not injective")
    else:
        c2 = (True, "φ is an automorphism of G_X")

    GU = _deck_of(U)
    if not c1[0]:
        c3 = (False, "not checked: U is not Galois")
    else:
        try:
            J = group_closure(list(GX.generators) + list(GU.generators), field=X.field)
            common = set(GX.elements) & set(GU.elements)
            ok = len(common) == 1 and J.order == X.degree * U.degree
            c3 = (ok, f"|<G_X, G_U>| = {J.order}, |G_X ∩ G_U| = {len(common)}")
        except ExceedsBound as exc:
            c3 = (False, f"<G_X, G_U> is not finite ({exc.reason})")

    constructed = None
    if c1[0] and c2[0] and c3[0]:
        C = left_membership(X.compose(V), X)
        gi = intersection_via_groups(X, U)
        D, B = gi.A, gi.B
        A = D.compose(C)
        H = A.compose(X)
        cert = good_solution_certify(X, Y, A, B)
        constructed = {"C": C, "D": D, "A": A, "B": B, "H": H, "certificate": cert}
    return GaloisPairVerdict(c1, c2, c3, constructed)


@dataclass(frozen=True)
class NormalForm:
    """``Y = σ ∘ z^s R(z^n)``."""

    sigma: MoebiusMap
    s: int
    R: RatFun
    n: int
    indecomposable: str = "asserted by caller"

    def rebuild(self) -> RatFun:
        K = self.R.field
        z = RatFun.z(K)
        inner = (z**self.s) * self.R.compose(z**self.n)
        return self.sigma.as_ratfun().compose(inner)


def equivariant_normal_form(Y: RatFun, n: int, strict: bool = True):
    """Recognize ``Y = σ ∘ z^s R(z^n)`` with ``gcd(s, n) = 1``.

    Solves ``Y ∘ (ζ z) = μ ∘ Y``, moves the second fixed point of ``μ`` to
    ∞ and reads ``s`` and ``R`` off the exponents.  With ``strict`` the
    hypothesis ``mult_0 Y >= 2`` is enforced.
    """
    K = Y.field
    if n < 2:
        raise ValueError("n must be at least 2")
    if Y(K.zero) != 0:
        raise PreconditionZeroOrder(f"{Y} does not vanish at 0")
    if strict and multiplicity_at(Y, K.zero) < 2:
        raise PreconditionZeroOrder(f"{Y} has a simple zero at 0")
    zeta = root_of_unity(K, n)
    rot = MoebiusMap(zeta, 0, 0, 1, K)
    mu = moebius_relating(Y.compose(rot.as_ratfun()), Y)
    if mu is None:
        return None
    lam = mu.a / mu.d
    s = next((j for j in range(n) if zeta**j == lam), None)
    if s is None or gcd(s, n) != 1:
        return None
    if K.is_zero(mu.c):
        sigma = MoebiusMap.identity(K)
    else:
        q = (mu.a - mu.d) / mu.c
        sigma = MoebiusMap(1, 0, K.one / q, 1, K)
    Yhat = sigma.inverse().as_ratfun().compose(Y)
    z = RatFun.z(K)
    R = left_membership(Yhat * z**-s, z**n)
    if R is None:
        return None  # pragma: no cover - excluded by the rotation relation
    form = NormalForm(sigma, s, R, n)
    assert form.rebuild() == Y
    return form


@dataclass(frozen=True)
class ObstructionReport:
    points: list
    compositum_full: bool
    intersection_trivial_certified: bool


def multiplicity_obstruction(X: RatFun, Y: RatFun) -> ObstructionReport:
    """Common critical points where the multiplicities share a factor.

    Finite critical points are roots of the Wronskian ``num' den - num den'``
    with root order ``mult - 1``, so the multiplicity at every root of an
    irreducible factor ``h`` is read off the ``h``-adic valuation.
    """
    X, Y = unify(X, Y)
    WX, WY = wronskian(X), wronskian(Y)
    pts = []
    g = poly_gcd(WX, WY) if not (WX.is_zero() and WY.is_zero()) else Poly.one(X.field)
    if g.degree > 0:
        for h, _ in factor(g):
            mx = _valuation(WX, h) + 1
            my = _valuation(WY, h) + 1
            if gcd(mx, my) > 1:
                desc = -h[0] if h.degree == 1 else "root of " + h.to_str("z")
                pts.append((desc, mx, my))
    mx, my = multiplicity_at(X, INF), multiplicity_at(Y, INF)
    if gcd(mx, my) > 1:
        pts.append((INF, mx, my))
    full = compositum(X, Y).degree_d == 1
    return ObstructionReport(pts, full, bool(pts) and full)


def _valuation(p: Poly, h: Poly):
    v = 0
    while True:
        q, r = divmod(p, h)
        if not r.is_zero():
            return v
        p = q
        v += 1


# -- Galois B ------------------------------------------------------------------
def _standardizations(G: MoebiusGroup):
    """Every ``σ`` putting ``G`` in standard position (one per rotation
    subgroup whose fixed points are rational)."""
    out = []
    if G.order == 1:
        return [MoebiusMap.identity(G.field)]
    n = G.order if G.classification.startswith("C") else G.order // 2
    seen = set()
    for g in G.elements:
        if element_order(g) != n:
            continue
        try:
            p0, pinf = _fixed_points(g)
        except FieldTooSmall:
            continue
        if (p0, pinf) in seen:
            continue
        seen.add((p0, pinf))
        for a, b in ((p0, pinf), (pinf, p0)):
            if a is INF:
                sigma = MoebiusMap(b, 1, 1, 0, G.field)
            else:
                sigma = _sigma_from_fixed_points(a, b, G.field)
            conj = [h.conjugate_by(sigma) for h in G.elements]
            if all(_is_rotation(h) or _is_flip(h) for h in conj):
                out.append(sigma)
    return out


def _flip_constant(G):
    flips = [g for g in G.elements if _is_flip(g)]
    return flips[0].b / flips[0].c if flips else None


def _is_square(x, K):
    z2 = Poly((-x, 0, 1), K)
    roots = roots_in_field(z2)
    return roots[0][0] if roots else None


def _align_standard(SX: MoebiusGroup, SB: MoebiusGroup):
    """A map ``τ = λ z`` with ``τ^-1 SB τ = SX`` for standard groups."""
    K = SX.field
    kx, kb = _flip_constant(SX), _flip_constant(SB)
    if kx is None or kx == kb:
        return MoebiusMap.identity(K)
    # conjugating by λ z turns κ/z into (κ/λ^2)/z
    n = SX.order // 2
    zeta = root_of_unity(K, n) if n > 2 else -K.one
    for j in range(n):
        lam = _is_square(kb * zeta**j / kx, K)
        if lam is not None:
            tau = MoebiusMap(lam, 0, 0, 1, K)
            if set(conjugate_group(SB, tau).elements) == set(SX.elements):
                return tau
    return None


@dataclass(frozen=True)
class SemiconjugacyResult:
    ok: bool
    reason: str = ""
    eta: MoebiusMap | None = None
    nu: MoebiusMap | None = None
    V: RatFun | None = None
    C: RatFun | None = None
    witness: EquivarianceWitness | None = None

    def __bool__(self):
        return self.ok


def semiconjugacy_check(X: RatFun, Y: RatFun, A: RatFun, B: RatFun) -> SemiconjugacyResult:
    """Reduce a solution with Galois ``B`` to a semiconjugacy.

    Finds Moebius ``η, ν`` with ``B ∘ η = ν ∘ X``, sets ``V = η^-1 ∘ Y`` and
    ``C`` with ``C ∘ X = X ∘ V`` and checks that ``V`` is ``G_X``-equivariant.
    """
    X, Y, A, B = unify(X, Y, A, B)
    if A.compose(X) != B.compose(Y):
        raise IdentityFails(f"A∘X != B∘Y for A={A}, B={B}")
    if B.degree != X.degree:
        return SemiconjugacyResult(False, "degree_mismatch")
    gb = is_galois(B)
    if not gb or not gb.deck.complete:
        return SemiconjugacyResult(False, "B_not_galois")
    gx = is_galois(X)
    if not gx or not gx.deck.complete:
        return SemiconjugacyResult(False, "X_not_galois")
    GX, GB = gx.deck.group, gb.deck.group
    if GX.classification != GB.classification:
        return SemiconjugacyResult(False, "no_eta")
    try:
        sx_list = _standardizations(GX)
        sb_list = _standardizations(GB)
    except UnsupportedGroup:
        return SemiconjugacyResult(False, "no_eta")
    eta = None
    for sb in sb_list[:1]:
        SB = conjugate_group(GB, sb)
        for sx in sx_list:
            tau = _align_standard(conjugate_group(GX, sx), SB)
            if tau is not None:
                eta = sb.compose(tau).compose(sx.inverse())
                break
        if eta is not None:
            break
    if eta is None:
        return SemiconjugacyResult(False, "no_eta")
    nu_f = left_membership(B.compose(eta.as_ratfun()), X)
    if nu_f is None or nu_f.degree != 1:
        return SemiconjugacyResult(False, "no_eta")  # pragma: no cover
    nu = MoebiusMap.from_ratfun(nu_f)
    V = eta.inverse().as_ratfun().compose(Y)
    C = left_membership(X.compose(V), X)
    w = equivariance_solve(V, GX)
    if w is None or C is None:
        return SemiconjugacyResult(False, "V_not_equivariant", eta, nu, V)
    assert nu.as_ratfun().compose(C) == A
    return SemiconjugacyResult(True, "", eta, nu, V, C, w)


@dataclass(frozen=True)
class AbhyankarResult:
    holds: bool
    rows: list = dc_field(default_factory=list)


def abhyankar_check(H, A, B, X, Y, points=None, certificate=None) -> AbhyankarResult:
    """``mult_p H = lcm(mult_{X(p)} A, mult_{Y(p)} B)`` at the given points
    (default: rational critical points of ``H`` and ∞)."""
    H, A, B, X, Y = unify(H, A, B, X, Y)
    if certificate is None:
        certificate = good_solution_certify(X, Y, A, B)
    if not certificate.good:
        raise NotGoodSolution(certificate.reason)
    if A.compose(X) != H:
        raise IdentityFails("H != A∘X")
    if points is None:
        points = [r for r, _ in roots_in_field(wronskian(H))] + [INF]
    rows = []
    ok = True
    for p in points:
        mh = multiplicity_at(H, p)
        ma = multiplicity_at(A, X(p))
        mb = multiplicity_at(B, Y(p))
        l = ma * mb // gcd(ma, mb)
        rows.append((p, mh, ma, mb))
        ok = ok and mh == l
    return AbhyankarResult(ok, rows)


@dataclass(frozen=True)
class So2Result:
    holds: bool
    involution: bool

    def __bool__(self):
        return self.holds


def so2_verify(B: RatFun, Y: RatFun, mu: MoebiusMap) -> So2Result:
    """``B ∘ Y = B ∘ (Y ∘ μ)``, and whether ``μ`` is an involution."""
    B, Y = unify(B, Y)
    lhs = B.compose(Y)
    rhs = B.compose(Y.compose(mu.as_ratfun()))
    inv = not mu.is_identity() and mu.compose(mu).is_identity()
    return So2Result(lhs == rhs, inv)


# Names used by the operation catalogue of the command-line workbench.
theorem1_check = galois_pair_check
theorem2_recognize = equivariant_normal_form
theorem5_obstruction = multiplicity_obstruction
theorem8_check = semiconjugacy_check
