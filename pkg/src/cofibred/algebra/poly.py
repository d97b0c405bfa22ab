"""Dense univariate polynomials over an exact field.

A :class:`Poly` is immutable.  Coefficients are stored low to high with no
trailing zeros; the zero polynomial has an empty coefficient tuple and
``degree == -1``.  The coefficient field is any object exposing ``zero``,
``one``, ``is_zero`` and a coercing ``__call__`` (``QQ``, an
``ExtensionField`` or a rational function field).
"""

from __future__ import annotations

from fractions import Fraction

from .fields import QQ


class Poly:
    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs=(), field=QQ):
        c = [field(x) for x in coeffs]
        while c and field.is_zero(c[-1]):
            c.pop()
        self.coeffs = tuple(c)
        self.field = field

    @classmethod
    def _raw(cls, coeffs, field):
        p = object.__new__(cls)
        c = list(coeffs)
        while c and field.is_zero(c[-1]):
            c.pop()
        p.coeffs = tuple(c)
        p.field = field
        return p

    @classmethod
    def zero(cls, field=QQ):
        return cls._raw((), field)

    @classmethod
    def one(cls, field=QQ):
        return cls._raw((field.one,), field)

    @classmethod
    def const(cls, c, field=QQ):
        return cls((c,), field)

    @classmethod
    def x(cls, field=QQ):
        return cls._raw((field.zero, field.one), field)

    @classmethod
    def monomial(cls, k, c=1, field=QQ):
        return cls((0,) * k + (c,), field)

    @classmethod
    def from_roots(cls, roots, field=QQ):
        p = cls.one(field)
        for r in roots:
            p = p * cls((-field(r), 1), field)
        return p

    # -- basic structure ------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if self.is_constant():
            try:
                return self[0] == self.field(other)
            except (TypeError, ValueError):
                return NotImplemented
        return False

    def __hash__(self):
        return hash(self.coeffs)

    def change_field(self, field):
        return Poly(self.coeffs, field)

    def map_coeffs(self, fn, field=None):
        field = field or self.field
        return Poly._raw([fn(c) for c in self.coeffs], field)

    # -- arithmetic -----------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Poly):
            return other
        return Poly((other,), self.field)

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = out[i] + y
        return Poly._raw(out, self.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs], self.field)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            s = self.field(other)
            return Poly._raw([c * s for c in self.coeffs], self.field)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw((), self.field)
        is_zero = self.field.is_zero
        zero = self.field.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly._raw(out, self.field)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        a = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        field = self.field
        inv = field.one / b[-1]
        if len(a) <= db:
            return Poly._raw((), field), self
        q = [field.zero] * (len(a) - db)
        for k in range(len(a) - 1 - db, -1, -1):
            f = a[k + db] * inv
            q[k] = f
            if not field.is_zero(f):
                for i in range(db):
                    a[k + i] = a[k + i] - f * b[i]
            a[k + db] = field.zero
        return Poly._raw(q, field), Poly._raw(a[:db], field)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other):
        """True iff ``self`` divides ``other``."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def scale(self, c):
        return self * c

    def monic(self):
        if self.is_zero():
            return self
        inv = self.field.one / self.coeffs[-1]
        return Poly._raw([c * inv for c in self.coeffs], self.field)

    # -- evaluation and calculus ----------------------------------------
    def __call__(self, x):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other):
        """The polynomial ``self(other(x))``."""
        acc = Poly.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def derivative(self):
        return Poly._raw([c * i for i, c in enumerate(self.coeffs)][1:], self.field)

    def reverse(self, n=None):
        """``x^n * self(1/x)``; ``n`` defaults to the degree."""
        n = self.degree if n is None else n
        c = list(self.coeffs) + [self.field.zero] * (n + 1 - len(self.coeffs))
        return Poly._raw(reversed(c[: n + 1]), self.field)

    def shift_var(self, k):
        """Multiply by ``x^k``."""
        if self.is_zero():
            return self
        return Poly._raw((self.field.zero,) * k + self.coeffs, self.field)

    def valuation(self):
        """Order of vanishing at 0 (``-1`` for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if not self.field.is_zero(c):
                return i
        return -1

    def root_multiplicity(self, r):
        """Multiplicity of ``r`` as a root."""
        lin = Poly._raw((-self.field(r), self.field.one), self.field)
        m = 0
        p = self
        while not p.is_zero():
            q, rem = divmod(p, lin)
            if not rem.is_zero():
                break
            p = q
            m += 1
        return m

    # -- printing ---------------------------------------------------------
    def to_str(self, var="z"):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if self.field.is_zero(c):
                continue
            cs = _coeff_str(c)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                term = cs
            elif cs == "1":
                term = mono
            elif cs == "-1":
                term = "-" + mono
            else:
                if _needs_parens(cs):
                    cs = f"({cs})"
                term = f"{cs}*{mono}"
            terms.append(term)
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __str__(self):
        return self.to_str("z")

    def __repr__(self):
        return f"Poly({self.to_str('z')})"


def _coeff_str(c):
    if isinstance(c, Fraction):
        return str(c)
    return str(c)


def _needs_parens(s):
    body = s[1:] if s.startswith("-") else s
    return any(ch in body for ch in "+-*") or "/" in body and not _is_plain_fraction(body)


def _is_plain_fraction(s):
    parts = s.split("/")
    return len(parts) == 2 and all(p.isdigit() for p in parts)


# -- Euclidean algorithms ---------------------------------------------------
def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
        if not b.is_zero():
            b = b.monic()
    return a.monic()


def poly_xgcd(p: Poly, q: Poly):
    """Return ``(g, s, t)`` with ``s*p + t*q == g`` and ``g`` monic."""
    field = p.field
    r0, r1 = p, q
    s0, s1 = Poly.one(field), Poly.zero(field)
    t0, t1 = Poly.zero(field), Poly.one(field)
    while not r1.is_zero():
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    inv = field.one / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def poly_lcm(p: Poly, q: Poly) -> Poly:
    return (p * q).exact_div(poly_gcd(p, q)).monic()


def resultant(p: Poly, q: Poly):
    """Resultant via the Euclidean remainder sequence.

    Uses ``Res(a, b) = (-1)^(deg a deg b) lc(b)^(deg a - deg r) Res(b, r)``
    with ``r = a mod b``.
    """
    field = p.field
    if p.is_zero() or q.is_zero():
        return field.zero
    a, b = p, q
    result = field.one
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return result * b.lc ** da
        r = a % b
        if r.is_zero():
            return field.zero
        if (da * db) % 2:
            result = -result
        result = result * b.lc ** (da - r.degree)
        a, b = b, r


def squarefree_factor(p: Poly):
    """Yun's algorithm (characteristic zero).

    Returns ``[(part, multiplicity), ...]`` with monic, pairwise coprime,
    squarefree parts; the product of ``part**multiplicity`` is ``p.monic()``.
    """
    if p.is_zero():
        raise ValueError("squarefree factorization of zero")
    f = p.monic()
    if f.degree < 1:
        return []
    out = []
    d = f.derivative()
    a = poly_gcd(f, d)
    b = f.exact_div(a)
    c = d.exact_div(a)
    i = 1
    while True:
        c = c - b.derivative()
        if c.is_zero():
            if b.degree > 0:
                out.append((b.monic(), i))
            break
        g = poly_gcd(b, c)
        if g.degree > 0:
            out.append((g, i))
        b = b.exact_div(g)
        c = c.exact_div(g)
        i += 1
        if b.degree < 1:
            break
    return out


def squarefree_part(p: Poly) -> Poly:
    if p.degree < 1:
        return Poly.one(p.field)
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def multiplicative_order(x, bound: int):
    """Least ``k <= bound`` with ``x**k == 1``, or ``None``."""
    if x == 0:
        raise ValueError("zero has no multiplicative order")
    y = x
    for k in range(1, bound + 1):
        if y == 1:
            return k
        y = y * x
    return None
