"""Projective 2x2 matrices over an exact field and finite groups of them."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field as dc_field

from .algebra import QQ, Poly, roots_in_field
from .errors import ExceedsBound, FieldTooSmall, UnclassifiableGroup, UnsupportedGroup
from .ratfun import INF, RatFun

DEFAULT_CLOSURE_BOUND = 2000


class MoebiusMap:
    """``z -> (a z + b) / (c z + d)`` with the first nonzero entry equal to 1."""

    __slots__ = ("a", "b", "c", "d", "field")

    def __init__(self, a, b, c, d, field=QQ):
        a, b, c, d = field(a), field(b), field(c), field(d)
        if field.is_zero(a * d - b * c):
            raise ValueError("singular Moebius matrix")
        lead = next(x for x in (a, b, c, d) if not field.is_zero(x))
        inv = field.one / lead
        self.a, self.b, self.c, self.d = a * inv, b * inv, c * inv, d * inv
        self.field = field

    @classmethod
    def identity(cls, field=QQ):
        return cls(1, 0, 0, 1, field)

    @classmethod
    def from_ratfun(cls, F: RatFun):
        if F.degree != 1:
            raise ValueError(f"{F} is not a Moebius map")
        return cls(F.num[1], F.num[0], F.den[1], F.den[0], F.field)

    def as_ratfun(self) -> RatFun:
        return RatFun.from_moebius(self.a, self.b, self.c, self.d, self.field)

    def matrix(self):
        return (self.a, self.b, self.c, self.d)

    def change_field(self, field):
        return MoebiusMap(self.a, self.b, self.c, self.d, field)

    # -- group structure ----------------------------------------------------
    def compose(self, other: "MoebiusMap") -> "MoebiusMap":
        """``self ∘ other``."""
        a, b, c, d = self.matrix()
        e, f, g, h = other.matrix()
        return MoebiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, self.field)

    def __matmul__(self, other):
        return self.compose(other)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a, self.field)

    def conjugate_by(self, sigma: "MoebiusMap") -> "MoebiusMap":
        """``sigma^-1 ∘ self ∘ sigma``."""
        return sigma.inverse().compose(self).compose(sigma)

    def is_identity(self):
        z = self.field.is_zero
        return z(self.b) and z(self.c) and self.a == self.d

    def __call__(self, p):
        a, b, c, d = self.matrix()
        zero = self.field.is_zero
        if p is INF:
            return INF if zero(c) else a / c
        den = c * p + d
        if zero(den):
            return INF
        return (a * p + b) / den

    def fixed_point_polynomial(self) -> Poly:
        """``c z^2 + (d - a) z - b``; a degree drop means ``∞`` is fixed."""
        return Poly((-self.b, self.d - self.a, self.c), self.field)

    def __eq__(self, other):
        return isinstance(other, MoebiusMap) and self.matrix() == other.matrix()

    def __hash__(self):
        return hash(self.matrix())

    def to_str(self):
        return self.as_ratfun().to_str("z")

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MoebiusMap({self.to_str()})"


def moebius_compose(mu, nu):
    return mu.compose(nu)


def moebius_inverse(mu):
    return mu.inverse()


def moebius_apply(mu, p):
    return mu(p)


def _phi(m):
    out = m
    p = 2
    n = m
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            out -= out // p
        p += 1
    if n > 1:
        out -= out // n
    return out


def order_ceiling(field) -> int:
    """Largest ``m`` such that a primitive m-th root of unity can lie in a
    quadratic extension of ``field``, i.e. ``phi(m) <= 2 [K:Q]``."""
    D = 2 * field.absolute_degree
    return max(m for m in range(1, 2 * D * D + 3) if _phi(m) <= D)


def element_order(mu: MoebiusMap, bound=None):
    """Exact order of ``mu`` (``math.inf`` for infinite order).

    A finite-order map has an eigenvalue ratio that is a root of unity in at
    most a quadratic extension of the field, which caps the order by
    :func:`order_ceiling`.  Powers up to that cap decide the question.
    ``bound`` is accepted for interface compatibility; the answer does not
    depend on it.
    """
    field = mu.field
    is_zero = field.is_zero
    a, b, c, d = mu.matrix()
    pa, pb, pc, pd = a, b, c, d
    for k in range(1, order_ceiling(field) + 1):
        if is_zero(pb) and is_zero(pc) and pa == pd:
            return k
        pa, pb, pc, pd = pa * a + pb * c, pa * b + pb * d, pc * a + pd * c, pc * b + pd * d
    return math.inf


@dataclass(frozen=True)
class MoebiusGroup:
    elements: tuple
    generators: tuple
    classification: str = ""
    field: object = dc_field(default=QQ, compare=False)

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, mu):
        return mu in set(self.elements)

    def is_trivial(self):
        return len(self.elements) == 1

    def order_statistics(self):
        return Counter(element_order(g) for g in self.elements)

    def is_closed(self):
        s = set(self.elements)
        return all(g.compose(h.inverse()) in s for g in self.elements for h in self.elements)


def group_closure(gens, bound: int = DEFAULT_CLOSURE_BOUND, field=None) -> MoebiusGroup:
    """Finite group generated by ``gens``.

    Raises :class:`ExceedsBound` with ``reason="infinite_element"`` when a
    generator or a product of two generators has infinite order, and with
    ``reason="bound"`` when more than ``bound`` elements were produced.
    """
    gens = list(gens)
    if field is None:
        field = gens[0].field if gens else QQ
    gens = [g.change_field(field) if g.field != field else g for g in gens]
    for g in gens:
        if element_order(g) == math.inf:
            raise ExceedsBound("infinite_element", witness=g, bound=bound)
    for g in gens:
        for h in gens:
            p = g.compose(h)
            if element_order(p) == math.inf:
                raise ExceedsBound("infinite_element", witness=p, bound=bound)
    ident = MoebiusMap.identity(field)
    elements = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x.compose(g)
                if y in seen:
                    continue
                seen.add(y)
                elements.append(y)
                nxt.append(y)
                if len(elements) > bound:
                    if element_order(y) == math.inf:
                        raise ExceedsBound("infinite_element", witness=y, bound=bound)
                    raise ExceedsBound("bound", bound=bound)
        frontier = nxt
    G = MoebiusGroup(tuple(elements), tuple(gens), "", field)
    return MoebiusGroup(G.elements, G.generators, classify_group(G), field)


def classify_group(G: MoebiusGroup) -> str:
    """``Cn``, ``Dn``, ``A4``, ``S4`` or ``A5`` from order and element orders."""
    N = G.order
    stats = G.order_statistics()
    if stats.get(N):
        return f"C{N}"
    if N % 2 == 0:
        n = N // 2
        for g in G.elements:
            if element_order(g) == n:
                cyc = _powers(g)
                if all(element_order(h) == 2 for h in G.elements if h not in cyc):
                    return f"D{n}"
    profiles = {
        12: ("A4", {1: 1, 2: 3, 3: 8}),
        24: ("S4", {1: 1, 2: 9, 3: 8, 4: 6}),
        60: ("A5", {1: 1, 2: 15, 3: 20, 5: 24}),
    }
    if N in profiles and dict(stats) == profiles[N][1]:
        return profiles[N][0]
    raise UnclassifiableGroup(f"order {N} with element orders {dict(stats)}")


def _powers(g):
    out = {MoebiusMap.identity(g.field)}
    p = g
    while p not in out:
        out.add(p)
        p = p.compose(g)
    return out


def _generator_of_order(G, n):
    return [g for g in G.elements if element_order(g) == n]


def _fixed_points(mu: MoebiusMap):
    """The two fixed points of a nontrivial finite-order map, ``(p0, p_inf)``.

    The finite one (or the smaller by key) goes to 0, the other to ∞.
    Raises :class:`FieldTooSmall` when they are not in the field.
    """
    field = mu.field
    fp = mu.fixed_point_polynomial()
    if fp.degree == 1:
        return -fp[0] / fp[1], INF
    roots = [r for r, _ in roots_in_field(fp)]
    if not roots:
        raise FieldTooSmall(fp.monic().to_str("z"), "fixed points of a group generator")
    roots.sort(key=field.key)
    return roots[0], roots[-1]


def _sigma_from_fixed_points(p0, pinf, field):
    """Moebius map sending 0 to ``p0`` and ∞ to ``pinf``."""
    if pinf is INF:
        return MoebiusMap(1, p0, 0, 1, field)
    return MoebiusMap(pinf, p0, 1, 1, field)


def standardize_cyclic(G: MoebiusGroup) -> MoebiusMap:
    """``sigma`` with ``sigma^-1 G sigma`` consisting of maps ``ζ z``."""
    n = G.order
    if n < 2 or G.classification != f"C{n}":
        raise ValueError("standardize_cyclic needs a nontrivial cyclic group")
    gen = _generator_of_order(G, n)[0]
    p0, pinf = _fixed_points(gen)
    sigma = _sigma_from_fixed_points(p0, pinf, G.field)
    for g in G.elements:
        h = g.conjugate_by(sigma)
        assert G.field.is_zero(h.b) and G.field.is_zero(h.c), "conjugation failed"
    return sigma


def standardize(G: MoebiusGroup) -> MoebiusMap:
    """Put a cyclic or dihedral group in standard position.

    Afterwards rotations are ``ζ z`` and (for dihedral groups) the remaining
    involutions are ``κ / z``.
    """
    cls = G.classification
    if cls.startswith("C"):
        if G.order == 1:
            return MoebiusMap.identity(G.field)
        return standardize_cyclic(G)
    if cls.startswith("D"):
        n = G.order // 2
        last = None
        for g in _generator_of_order(G, n):
            try:
                p0, pinf = _fixed_points(g)
            except FieldTooSmall as exc:
                last = exc
                continue
            sigma = _sigma_from_fixed_points(p0, pinf, G.field)
            conj = [h.conjugate_by(sigma) for h in G.elements]
            if all(_is_rotation(h) or _is_flip(h) for h in conj):
                return sigma
        if last is not None:
            raise last
        raise UnclassifiableGroup("dihedral group has no standard form")  # pragma: no cover
    raise UnsupportedGroup(f"{cls} groups have no built-in standard form")


def _is_rotation(h):
    z = h.field.is_zero
    return z(h.b) and z(h.c)


def _is_flip(h):
    z = h.field.is_zero
    return z(h.a) and z(h.d)


def conjugate_group(G: MoebiusGroup, sigma: MoebiusMap) -> MoebiusGroup:
    els = tuple(g.conjugate_by(sigma) for g in G.elements)
    gens = tuple(g.conjugate_by(sigma) for g in G.generators)
    return MoebiusGroup(els, gens, G.classification, G.field)


def quotient_map(G: MoebiusGroup, invariant: RatFun | None = None) -> RatFun:
    """Invariant map of degree ``|G|`` for a group in standard position.

    Cyclic ``<ζ z>`` gives ``z^n``; dihedral ``<ζ z, κ/z>`` gives
    ``z^n + κ^n z^-n``.  Other groups need a candidate ``invariant`` which
    is verified here.
    """
    field = G.field
    N = G.order
    z = RatFun.z(field)
    if invariant is not None:
        F = invariant
    elif all(_is_rotation(g) for g in G.elements):
        F = z**N
    elif all(_is_rotation(g) or _is_flip(g) for g in G.elements):
        flip = next(g for g in G.elements if _is_flip(g))
        kappa = flip.b / flip.c
        n = N // 2
        F = z**n + (z**-n) * kappa**n
    else:
        raise UnsupportedGroup(f"no built-in invariant map for {G.classification or 'this group'}")
    if F.degree != N or any(F.compose(g.as_ratfun()) != F for g in G.elements):
        raise UnsupportedGroup("supplied map is not a quotient map for the group")
    return F


def quotient_for_group(G: MoebiusGroup, invariant: RatFun | None = None) -> RatFun:
    """Galois map with deck group ``G`` (in the original coordinates)."""
    if G.order == 1:
        return RatFun.z(G.field)
    if invariant is not None:
        return quotient_map(G, invariant)
    sigma = standardize(G)
    F = quotient_map(conjugate_group(G, sigma))
    return F.compose(sigma.inverse().as_ratfun())
