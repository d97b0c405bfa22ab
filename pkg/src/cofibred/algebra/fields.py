"""Exact coefficient fields: the rationals and simple algebraic extensions.

Rationals are represented by :class:`fractions.Fraction`.  An extension
``base[w]/(m)`` stores elements as coordinate tuples on the power basis
``1, w, ..., w^(deg m - 1)``; over Q the coordinates are ``gmpy2.mpq``
values, which compare and hash like fractions but multiply much faster.  User-facing fields are one layer deep (``Q`` or
``Q[w]/(m)``); deeper towers are only built internally, e.g. to test a
candidate that lives over a residue field of a fiber polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from gmpy2 import mpq


class RationalField:
    """The field Q.  There is a single instance, :data:`QQ`."""

    name = "Q"
    base = None
    modulus = None
    degree = 1  # relative degree
    absolute_degree = 1
    cyclotomic_order = None
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, Rational):
            return Fraction(int(x.numerator), int(x.denominator))
        if isinstance(x, str):
            return Fraction(x)
        if isinstance(x, ExtElement):
            if any(x.coords[1:]):
                raise ValueError(f"{x} is not rational")
            return self(x.coords[0])
        raise TypeError(f"cannot coerce {x!r} into Q")

    @staticmethod
    def is_zero(x):
        return x == 0

    def contains(self, x):
        return isinstance(x, (int, Fraction, type(mpq())))

    @property
    def spec(self):
        return "Q"

    def key(self, x):
        """Total-order key used for deterministic tie-breaking."""
        return (x,)

    def coords(self, x):
        return (self(x),)

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return (_get_qq, ())


def _get_qq():
    return QQ


QQ = RationalField()


def _strip(c, base):
    c = list(c)
    while c and base.is_zero(c[-1]):
        c.pop()
    return c


def _ldivmod(a, b, base):
    """Division with remainder on coefficient lists (low to high)."""
    a = list(a)
    db = len(b) - 1
    inv = base.one / b[-1]
    q = [base.zero] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        f = a[k + db] * inv
        q[k] = f
        if not base.is_zero(f):
            for i in range(db + 1):
                a[k + i] = a[k + i] - f * b[i]
    return q, _strip(a[:db], base)


def _lmul(a, b, base):
    if not a or not b:
        return []
    out = [base.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if base.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _strip(out, base)


def _lsub(a, b, base):
    n = max(len(a), len(b))
    a = list(a) + [base.zero] * (n - len(a))
    b = list(b) + [base.zero] * (n - len(b))
    return _strip([x - y for x, y in zip(a, b)], base)


class ExtensionField:
    """``base[w]/(modulus)`` with ``modulus`` monic and irreducible over ``base``.

    Irreducibility is the caller's responsibility here; :func:`make_field`
    verifies it for user-supplied moduli.
    """

    def __init__(self, base, modulus, name="w", cyclotomic_order=None):
        mod = [base(c) for c in modulus]
        mod = _strip(mod, base)
        if len(mod) < 2:
            raise ValueError("modulus must have degree >= 1")
        lc = mod[-1]
        mod = [c / lc for c in mod]
        self.base = base
        self.modulus = tuple(mod)
        self.name = name
        self.degree = len(mod) - 1
        self.absolute_degree = self.degree * base.absolute_degree
        self.cyclotomic_order = cyclotomic_order
        self._c = _to_mpq if base is QQ else _same
        self.zero = ExtElement(self, (self._c(base.zero),) * self.degree)
        self.one = ExtElement(self, (self._c(base.one),) + (self._c(base.zero),) * (self.degree - 1))
        self.gen = self.from_list([base.zero, base.one]) if self.degree > 1 else self(-mod[0])
        self._key = (base, self.modulus, name)
        # w^j for deg <= j <= 2 deg - 2 on the power basis, for fast products
        d = self.degree
        red = []
        cur = [base.zero] * d
        if d > 1:
            cur = [-c for c in mod[:d]]
        for _ in range(max(d - 1, 0)):
            red.append(tuple(self._c(c) for c in cur))
            # multiply by w and reduce
            top = cur[-1]
            cur = [base.zero] + cur[:-1]
            if not base.is_zero(top):
                cur = [c - top * m for c, m in zip(cur, mod[:d])]
        self._red = red

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"ExtensionField({self.spec})"

    @property
    def spec(self):
        if self.cyclotomic_order is not None and self.base is QQ:
            return f"Q(zeta_{self.cyclotomic_order})"
        from .poly import Poly

        m = Poly(self.modulus, self.base)
        inner = m.to_str(self.name)
        base = self.base.spec
        return f"{base}[{self.name}]/({inner})"

    def from_list(self, coeffs):
        """Element represented by the polynomial ``sum coeffs[i] w^i`` (reduced)."""
        c = _strip([self.base(x) for x in coeffs], self.base)
        if len(c) > self.degree:
            _, c = _ldivmod(c, list(self.modulus), self.base)
        c = c + [self.base.zero] * (self.degree - len(c))
        return ExtElement(self, tuple(self._c(x) for x in c))

    def __call__(self, x):
        if isinstance(x, ExtElement):
            if x.field == self:
                return x
            # embed an element of a subfield in the tower
            if self.base.contains(x) or isinstance(self.base, ExtensionField) and _in_tower(x.field, self.base):
                return ExtElement(self, (self._c(self.base(x)),) + self.zero.coords[1:])
            raise TypeError(f"cannot coerce element of {x.field} into {self}")
        return ExtElement(self, (self._c(self.base(x)),) + self.zero.coords[1:])

    def contains(self, x):
        if isinstance(x, ExtElement):
            return x.field == self or _in_tower(x.field, self.base)
        return isinstance(x, (int, Fraction, type(mpq())))

    @staticmethod
    def is_zero(x):
        if isinstance(x, ExtElement):
            return x.is_zero()
        return x == 0

    def key(self, x):
        x = self(x)
        out = []
        for c in x.coords:
            out.extend(self.base.key(c))
        return tuple(out)

    def coords(self, x):
        """Flattened rational coordinates of ``x``."""
        x = self(x)
        out = []
        for c in x.coords:
            out.extend(self.base.coords(c))
        return tuple(out)


def _same(x):
    return x


def _to_mpq(x):
    return mpq(int(x.numerator), int(x.denominator))


def _in_tower(field, top):
    f = top
    while f is not None:
        if f == field:
            return True
        f = f.base
    return False


class ExtElement:
    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords

    def is_zero(self):
        base = self.field.base
        return all(base.is_zero(c) for c in self.coords)

    def _coerce(self, other):
        if isinstance(other, ExtElement):
            if other.field == self.field:
                return other
            if _in_tower(other.field, self.field.base):
                return self.field(other)
            return None
        if isinstance(other, (int, Fraction, type(mpq()))):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(self.field, tuple(-a for a in self.coords))

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElement(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        base = self.field.base
        if all(base.is_zero(c) for c in o.coords[1:]):
            s = o.coords[0]
            return ExtElement(self.field, tuple(a * s for a in self.coords))
        if all(base.is_zero(c) for c in self.coords[1:]):
            s = self.coords[0]
            return ExtElement(self.field, tuple(s * b for b in o.coords))
        a, b = self.coords, o.coords
        d = len(a)
        zero = base.zero
        conv = [zero] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = conv[:d]
        for j, r in enumerate(self.field._red):
            c = conv[d + j]
            if c:
                for i, m in enumerate(r):
                    if m:
                        out[i] += c * m
        return ExtElement(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self):
        base = self.field.base
        a = _strip(self.coords, base)
        if not a:
            raise ZeroDivisionError("inverse of zero")
        m = list(self.field.modulus)
        # extended Euclid: track s with s*a == r (mod m)
        r0, r1 = m, a
        s0, s1 = [], [base.one]
        while len(r1) > 1:
            q, r = _ldivmod(r0, r1, base)
            r0, r1 = r1, r
            s0, s1 = s1, _lsub(s0, _lmul(q, s1, base), base)
        if not r1:
            raise ZeroDivisionError(f"{self} is a zero divisor (modulus is reducible)")
        c = base.one / r1[0]
        return self.field.from_list([x * c for x in s1])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        b = self
        while k:
            if k & 1:
                result = result * b
            b = b * b
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        base = self.field.base
        if all(base.is_zero(c) for c in self.coords[1:]):
            return hash(self.coords[0])
        return hash((self.field, self.coords))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return str(self)

    def __str__(self):
        from .poly import Poly

        return Poly(self.coords, self.field.base).to_str(self.field.name)


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int):
    """Coefficients (low to high) of the n-th cyclotomic polynomial over Z."""
    if n < 1:
        raise ValueError("n must be >= 1")
    # x^n - 1 divided by Phi_d for all proper divisors d
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            num, r = _ldivmod(num, cyclotomic_poly(d), QQ)
            assert not r
    return tuple(num)
