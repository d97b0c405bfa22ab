"""Rational maps of the Riemann sphere over an exact field.

A :class:`RatFun` is kept in lowest terms with a monic denominator.  The same
objects serve as elements of the function field ``K(z)`` (see
:class:`FunctionField`) and as maps that can be composed and evaluated at
points of the sphere (field elements or :data:`INF`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import QQ, ExtElement, ExtensionField, Poly, factor, poly_gcd, resultant, squarefree_factor
from .algebra.fields import _in_tower
from .errors import ZeroDenominator


class _Infinity:
    """The point at infinity of the Riemann sphere."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "oo"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


class RatFun:
    __slots__ = ("num", "den", "field")

    def __init__(self, num, den=None, field=None):
        if not isinstance(num, Poly):
            field = field or QQ
            num = Poly((num,), field)
        field = field or num.field
        if den is None:
            den = Poly.one(field)
        elif not isinstance(den, Poly):
            den = Poly((den,), field)
        if num.field != field:
            num = num.change_field(field)
        if den.field != field:
            den = den.change_field(field)
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        if num.is_zero():
            den = Poly.one(field)
        elif den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        inv = field.one / den.lc
        self.num = num * inv
        self.den = den * inv
        self.field = field

    @classmethod
    def _make(cls, num, den, field):
        """Trusted constructor: ``num``, ``den`` already coprime."""
        r = object.__new__(cls)
        inv = field.one / den.lc
        r.num = num * inv if inv != 1 else num
        r.den = den * inv if inv != 1 else den
        r.field = field
        return r

    @classmethod
    def z(cls, field=QQ):
        return cls._make(Poly.x(field), Poly.one(field), field)

    @classmethod
    def const(cls, c, field=QQ):
        return cls._make(Poly((c,), field), Poly.one(field), field)

    @classmethod
    def from_moebius(cls, a, b, c, d, field=QQ):
        return cls(Poly((b, a), field), Poly((d, c), field), field)

    # -- structure ------------------------------------------------------
    @property
    def degree(self):
        return max(self.num.degree, self.den.degree, 0)

    def is_constant(self):
        return self.num.degree < 1 and self.den.degree < 1

    def is_polynomial(self):
        return self.den.degree == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num[0] / self.den[0]

    def change_field(self, field):
        return RatFun._make(self.num.change_field(field), self.den.change_field(field), field)

    def __eq__(self, other):
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        if self.is_constant():
            try:
                return self.constant_value() == other
            except TypeError:
                return NotImplemented
        return False

    def __hash__(self):
        return hash((self.num, self.den))

    # -- field arithmetic -------------------------------------------------
    def _lift(self, other):
        if isinstance(other, RatFun):
            return other
        if isinstance(other, Poly):
            return RatFun(other, None, self.field)
        return RatFun.const(other, self.field)

    def __add__(self, other):
        o = self._lift(other)
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den, self.field)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den, self.field)

    __radd__ = __add__

    def __neg__(self):
        return RatFun._make(-self.num, self.den, self.field)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, (RatFun, Poly)):
            s = self.field(other)
            if self.field.is_zero(s):
                return RatFun.const(0, self.field)
            return RatFun._make(self.num * s, self.den, self.field)
        o = self._lift(other)
        return RatFun(self.num * o.num, self.den * o.den, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RatFun(self.num * o.den, self.den * o.num, self.field)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k):
        if k < 0:
            return RatFun.const(1, self.field) / (self ** (-k))
        return RatFun._make(self.num**k, self.den**k, self.field)

    def inverse(self):
        return RatFun.const(1, self.field) / self

    # -- maps -------------------------------------------------------------
    def compose(self, other: "RatFun") -> "RatFun":
        """``self ∘ other``, i.e. ``z -> self(other(z))``."""
        if not isinstance(other, RatFun):
            other = RatFun(other, None, self.field)
        field = self.field
        if other.is_constant():
            v = self(other.constant_value())
            if v is INF:
                raise ZeroDenominator("composition with a constant hits a pole")
            return RatFun.const(v, field)
        m = self.degree
        a, b = other.num, other.den
        # homogeneous evaluation: sum p_i a^i b^(m-i)
        apow = [Poly.one(field)]
        bpow = [Poly.one(field)]
        for _ in range(m):
            apow.append(apow[-1] * a)
            bpow.append(bpow[-1] * b)
        num = Poly.zero(field)
        den = Poly.zero(field)
        for i in range(m + 1):
            t = apow[i] * bpow[m - i]
            if not field.is_zero(self.num[i]):
                num = num + t * self.num[i]
            if not field.is_zero(self.den[i]):
                den = den + t * self.den[i]
        if self.is_constant():
            return RatFun(num, den, field)
        # lowest terms in, non-constant inner map: the result is in lowest terms
        return RatFun._make(num, den, field)

    def __call__(self, p):
        """Value at a point of the sphere (a field element or :data:`INF`)."""
        if p is INF:
            dn, dd = self.num.degree, self.den.degree
            if dn > dd:
                return INF
            if dn < dd:
                return self.field.zero
            return self.num.lc / self.den.lc
        d = self.den(p)
        if _is_zero(d):
            return INF
        return self.num(p) / d

    # -- printing -----------------------------------------------------------
    def to_str(self, var="z"):
        n = self.num.to_str(var)
        if self.den.degree == 0:
            return n
        d = self.den.to_str(var)
        if " + " in n or " - " in n or "/" in n:
            n = f"({n})"
        if sum(1 for c in self.den.coeffs if not self.field.is_zero(c)) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self):
        return self.to_str("z")

    def __repr__(self):
        return f"RatFun({self.to_str('z')})"


def _is_zero(x):
    if isinstance(x, ExtElement):
        return x.is_zero()
    return x == 0


class FunctionField:
    """The field ``K(z)`` whose elements are :class:`RatFun` objects."""

    def __init__(self, base):
        self.base = base
        self.zero = RatFun.const(0, base)
        self.one = RatFun.const(1, base)
        self.absolute_degree = None

    def __call__(self, x):
        if isinstance(x, RatFun):
            return x
        if isinstance(x, Poly):
            return RatFun(x, None, self.base)
        return RatFun.const(x, self.base)

    @staticmethod
    def is_zero(x):
        return x.num.is_zero() if isinstance(x, RatFun) else x == 0

    def __eq__(self, other):
        return isinstance(other, FunctionField) and other.base == self.base

    def __hash__(self):
        return hash(("K(z)", self.base))

    def key(self, x):
        return (x.num.coeffs, x.den.coeffs)


def z_of(field=QQ):
    return RatFun.z(field)


def moebius_ratfun(a, b, c, d, field=QQ):
    return RatFun.from_moebius(a, b, c, d, field)


def ratfun_normalize(num: Poly, den: Poly) -> RatFun:
    return RatFun(num, den, num.field)


def compose(F: RatFun, G: RatFun) -> RatFun:
    return F.compose(G)


def _ensure_field(F: RatFun, p):
    """Lift ``F`` to the field of ``p`` when ``p`` lives in an extension."""
    if isinstance(p, ExtElement) and p.field != F.field:
        if F.field is QQ or _in_tower(F.field, p.field.base):
            return F.change_field(p.field)
    return F


def multiplicity_at(F: RatFun, p) -> int:
    """Local valency of ``F`` at ``p``.

    Points are moved to 0 by ``1/z`` and values to 0 by translation or
    ``1/w``, so there is one code path for poles and for infinity.
    """
    if F.is_constant():
        raise ValueError("multiplicity of a constant map")
    if p is INF:
        F = F.compose(RatFun(Poly.one(F.field), Poly.x(F.field), F.field))
        p = F.field.zero
    F = _ensure_field(F, p)
    v = F(p)
    if v is INF:
        return F.den.root_multiplicity(p)
    return (F.num - F.den * v).root_multiplicity(p)


def wronskian(F: RatFun) -> Poly:
    """``num' den - num den'``; its roots are the finite critical points."""
    return F.num.derivative() * F.den - F.num * F.den.derivative()


# -- ramification data ------------------------------------------------------------
@dataclass(frozen=True)
class CriticalEntry:
    """Critical value with the multiplicities of ``F`` over it.

    ``value`` is a field element, :data:`INF`, or ``None`` when the value is
    algebraic of degree > 1; ``minpoly`` is then its minimal polynomial over
    the working field (in the variable ``c``) and the entry stands for all
    ``minpoly.degree`` conjugate values.
    """

    value: object
    minpoly: Poly | None
    multiplicities: tuple

    @property
    def conjugates(self):
        return 1 if self.minpoly is None else self.minpoly.degree

    def is_uniform(self):
        return len(set(self.multiplicities)) == 1


@dataclass(frozen=True)
class RamificationProfile:
    degree: int
    entries: tuple

    def riemann_hurwitz_total(self):
        return sum(e.conjugates * sum(m - 1 for m in e.multiplicities) for e in self.entries)

    def satisfies_riemann_hurwitz(self):
        return self.riemann_hurwitz_total() == 2 * self.degree - 2

    def is_uniform(self):
        return all(e.is_uniform() for e in self.entries)


def _fiber_multiset(num: Poly, den: Poly, v, n):
    """Multiplicities of the map over the finite value ``v``."""
    g = num - den * v
    out = []
    for part, m in squarefree_factor(g):
        out.extend([m] * part.degree)
    if g.degree < n:
        out.append(n - g.degree)
    return tuple(sorted(out, reverse=True))


def _interpolate(xs, ys, field):
    """Newton interpolation through ``(xs[i], ys[i])``."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    p = Poly((coef[-1],), field)
    for i in range(n - 2, -1, -1):
        p = p * Poly((-xs[i], 1), field) + coef[i]
    return p


def critical_value_polynomial(F: RatFun) -> Poly:
    """Polynomial in ``c`` vanishing exactly at the finite critical values
    coming from finite critical points: ``Res_z(W, num - c den)``.

    Computed by interpolation at points where the formal degree of
    ``num - c den`` is attained.
    """
    field = F.field
    W = wronskian(F)
    n = F.degree
    bad = set()
    if F.num.degree == F.den.degree:
        bad.add(F.num.lc / F.den.lc)
    if F.num.degree < F.den.degree:
        bad.add(field.zero)
    need = max(W.degree, 0) + 1
    xs, ys = [], []
    k = 0
    while len(xs) < need:
        c = field(Fraction((k + 1) // 2 * (1 if k % 2 else -1)))
        k += 1
        if c in bad:
            continue
        g = F.num - F.den * c
        assert g.degree == n
        xs.append(c)
        ys.append(resultant(W, g))
    return _interpolate(xs, ys, field)


def critical_data(F: RatFun) -> RamificationProfile:
    """Ramification profile grouped by critical value."""
    if F.is_constant():
        raise ValueError("constant map")
    field = F.field
    n = F.degree
    entries = []
    rational_values = []
    if n >= 2:
        R = critical_value_polynomial(F)
        for g, _ in factor(R):
            if g.degree == 1:
                v = -g[0]
                rational_values.append(v)
                entries.append(CriticalEntry(v, None, _fiber_multiset(F.num, F.den, v, n)))
            else:
                L = ExtensionField(field, g.coeffs, name="c")
                ms = _fiber_multiset(F.num.change_field(L), F.den.change_field(L), L.gen, n)
                entries.append(CriticalEntry(None, g, ms))
        # fiber over infinity
        over_inf = []
        for part, m in squarefree_factor(F.den) if F.den.degree > 0 else []:
            over_inf.extend([m] * part.degree)
        if F.num.degree > F.den.degree:
            over_inf.append(F.num.degree - F.den.degree)
        over_inf = tuple(sorted(over_inf, reverse=True))
        if any(m > 1 for m in over_inf):
            entries.append(CriticalEntry(INF, None, over_inf))
        # finite value at a ramified infinity
        v_inf = F(INF)
        if v_inf is not INF and v_inf not in rational_values and multiplicity_at(F, INF) > 1:
            entries.append(CriticalEntry(v_inf, None, _fiber_multiset(F.num, F.den, v_inf, n)))
    entries = [e for e in entries if any(m > 1 for m in e.multiplicities)]
    entries.sort(key=_entry_key(field))
    return RamificationProfile(n, tuple(entries))


def _entry_key(field):
    def key(e):
        if e.minpoly is not None:
            return (2, e.minpoly.degree, [field.key(c) for c in e.minpoly.coeffs])
        if e.value is INF:
            return (1, 0, [])
        return (0, 0, [field.key(e.value)])

    return key


# -- fiber polynomials -----------------------------------------------------------
@dataclass(frozen=True)
class FiberPoly:
    """``N_F(t, z) = num(t) den(z) - num(z) den(t)`` as a polynomial in ``t``
    over ``K(z)`` (coefficients are polynomials in ``z``).

    With ``reduced`` set, the factor ``t - z`` has been divided out.
    """

    poly: Poly
    reduced: bool
    base: object

    @property
    def t_degree(self):
        return self.poly.degree

    @property
    def z_degree(self):
        return max(c.num.degree for c in self.poly.coeffs)

    def coefficient_polys(self):
        return [c.num for c in self.poly.coeffs]

    def terms(self):
        """``{(i, j): c}`` for the monomials ``c t^i z^j``."""
        out = {}
        for i, c in enumerate(self.poly.coeffs):
            for j, a in enumerate(c.num.coeffs):
                if not self.base.is_zero(a):
                    out[(i, j)] = a
        return out

    def at_diagonal(self) -> RatFun:
        """Substitute ``t = z``."""
        z = RatFun.z(self.base)
        acc = RatFun.const(0, self.base)
        for c in reversed(self.poly.coeffs):
            acc = acc * z + c
        return acc

    def specialize(self, z0) -> Poly:
        """The polynomial in ``t`` obtained by ``z = z0``."""
        base = self.base
        return Poly([c.num(z0) for c in self.poly.coeffs], base)


def fiber_polynomial(F: RatFun, reduced: bool = False) -> FiberPoly:
    if F.is_constant():
        raise ValueError("constant map")
    K = F.field
    Kz = FunctionField(K)
    n = F.degree
    coeffs = []
    for k in range(n + 1):
        c = F.den * F.num[k] - F.num * F.den[k]
        coeffs.append(RatFun._make(c, Poly.one(K), K))
    N = Poly._raw(coeffs, Kz)
    if reduced:
        lin = Poly._raw([RatFun._make(-Poly.x(K), Poly.one(K), K), Kz.one], Kz)
        N = N.exact_div(lin)
    return FiberPoly(N, reduced, K)


def common_field(*funs):
    """Smallest field of the given maps containing all the others."""
    best = QQ
    for F in funs:
        f = F.field
        if _in_tower(best, f):
            best = f
        elif not _in_tower(f, best):
            raise ValueError(f"incompatible fields {best.spec} and {f.spec}")
    return best


def unify(*funs):
    """Lift all maps to their :func:`common_field`."""
    K = common_field(*funs)
    return [F if F.field == K else F.change_field(K) for F in funs]


def normalize_left(F: RatFun):
    """Moebius ``nu`` and ``nu ∘ F`` in a canonical form.

    The value at ∞ is sent to ∞, the value at 0 (or at 1, 2, -1, ... when it
    coincides) to 0, and the numerator is made monic.  Two maps that differ
    by a Moebius map on the left get the same normal form.
    """
    from .moebius import MoebiusMap

    K = F.field
    u = F(INF)
    v = None
    for k in range(2 * F.degree + 3):
        v = F(K((k + 1) // 2 * (1 if k % 2 else -1)))
        if v != u and not (v is INF and u is INF):
            break
    if u is INF:
        nu = MoebiusMap(1, -v, 0, 1, K)
    elif v is INF:
        nu = MoebiusMap(0, 1, 1, -u, K)
    else:
        nu = MoebiusMap(1, -v, 1, -u, K)
    G = nu.as_ratfun().compose(F)
    lam = K.one / G.num.lc
    nu = MoebiusMap(lam, 0, 0, 1, K).compose(nu)
    return nu, nu.as_ratfun().compose(F)


def series_divide(num, den, order, field):
    """Coefficients ``c_0..c_order`` of ``num/den`` as a power series;
    ``num`` and ``den`` are coefficient sequences with ``den[0] != 0``."""
    inv = field.one / den[0]
    out = []
    for k in range(order + 1):
        acc = num[k] if k < len(num) else field.zero
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc * inv)
    return out


def taylor(F: RatFun, p=None, order: int = 8):
    """Taylor coefficients of ``F(p + e)`` in ``e`` up to ``e^order``."""
    if p is not None:
        F = _ensure_field(F, p)
    K = F.field
    num, den = F.num, F.den
    if p is not None and not _is_zero(p):
        shift = Poly((p, K.one), K)
        num, den = num.compose(shift), den.compose(shift)
    if K.is_zero(den[0]):
        raise ZeroDenominator("pole at the expansion point")
    return series_divide(num.coeffs, den.coeffs, order, K)
