"""Truncated power series at a superattracting fixed point.

Böttcher coordinates ``β`` with ``H ∘ β = β ∘ z^n`` and the group of local
transition functions ``β ∘ (ζ z) ∘ β^-1`` of ``H``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra.fields import _to_mpq
from .algebra import QQ, Poly, cyclotomic_embedding, cyclotomic_field, root_of_unity, roots_in_field
from .errors import FieldTooSmall, NotAUnit, NotSuperattracting, TruncationMismatch
from .ratfun import RatFun, taylor

DEFAULT_TRUNCATION = 32


def _fast(K):
    """Conversion into the working representation of ``K``: gmpy2 ``mpq``
    for the rationals (much faster than Fraction in inner loops)."""
    return _to_mpq if K is QQ else (lambda x: x)


class TruncatedSeries:
    """``c_1 z + ... + c_N z^N`` modulo ``z^(N+1)``."""

    __slots__ = ("coeffs", "N", "field")

    def __init__(self, coeffs, N=None, field=QQ):
        coeffs = [field(c) for c in coeffs]
        N = len(coeffs) if N is None else N
        coeffs = (coeffs + [field.zero] * N)[:N]
        self.coeffs = tuple(coeffs)
        self.N = N
        self.field = field

    @classmethod
    def z(cls, N, field=QQ):
        return cls([1], N, field)

    @classmethod
    def from_ratfun(cls, F: RatFun, N: int):
        c = taylor(F, None, N)
        if not F.field.is_zero(c[0]):
            raise ValueError("series must vanish at 0")
        return cls(c[1:], N, F.field)

    def __getitem__(self, k):
        """Coefficient of ``z^k`` (``k >= 1``)."""
        return self.coeffs[k - 1] if 1 <= k <= self.N else self.field.zero

    @property
    def truncation_order(self):
        return self.N

    def is_unit(self):
        return not self.field.is_zero(self.coeffs[0]) if self.N else False

    def is_linear(self):
        return all(self.field.is_zero(c) for c in self.coeffs[1:])

    def valuation(self):
        for k, c in enumerate(self.coeffs, start=1):
            if not self.field.is_zero(c):
                return k
        return None

    def _check(self, other):
        if self.N != other.N:
            raise TruncationMismatch(f"truncation orders {self.N} and {other.N} differ")
        if self.field != other.field:
            raise TruncationMismatch("series over different fields")

    def __eq__(self, other):
        return isinstance(other, TruncatedSeries) and self.N == other.N and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.N, self.coeffs))

    def compose(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """``self ∘ other`` mod ``z^(N+1)``."""
        self._check(other)
        N, K = self.N, self.field
        if other.is_linear():
            return self.scale_argument(other.coeffs[0]) if N else self
        if self.is_linear():
            c = self.coeffs[0]
            return TruncatedSeries([c * x for x in other.coeffs], N, K)
        g = [K.zero] + list(other.coeffs)  # index = exponent
        acc = [K.zero] * (N + 1)
        for c in reversed(self.coeffs):
            acc = _mul_trunc(acc, g, N, K)
            acc[0] = acc[0] + c
        acc = _mul_trunc(acc, g, N, K)
        return TruncatedSeries(acc[1:], N, K)

    def __matmul__(self, other):
        return self.compose(other)

    def scale_argument(self, lam):
        """``self(λ z)``."""
        return TruncatedSeries([c * lam**k for k, c in enumerate(self.coeffs, start=1)], self.N, self.field)

    def to_str(self, var="z"):
        terms = []
        for k, c in enumerate(self.coeffs, start=1):
            if self.field.is_zero(c):
                continue
            mono = var if k == 1 else f"{var}^{k}"
            t = Poly((c,), self.field).to_str(var)
            if t == "1":
                terms.append(mono)
            elif t == "-1":
                terms.append("-" + mono)
            else:
                if any(ch in t[1:] for ch in "+-"):
                    t = f"({t})"
                terms.append(f"{t}*{mono}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"{body} + O({var}^{self.N + 1})"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"TruncatedSeries({self.to_str()})"


def _mul_trunc(a, b, N, K):
    zero = a[0] - a[0] if a else K.zero  # keep the coefficient representation of a
    out = [zero] * (N + 1)
    for i, x in enumerate(a):
        if K.is_zero(x):
            continue
        for j in range(0, N + 1 - i):
            y = b[j] if j < len(b) else zero
            if not K.is_zero(y):
                out[i + j] = out[i + j] + x * y
    return out


def series_compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f.compose(g)


def series_invert(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse by Lagrange inversion:
    ``[z^k] f^-1 = (1/k) [w^(k-1)] (w / f(w))^k``."""
    if not f.is_unit():
        raise NotAUnit("series with zero linear term has no compositional inverse")
    N, K = f.N, f.field
    cv = _fast(K)
    one, zero = cv(K.one), cv(K.zero)
    # h = w / f(w) = 1 / (c_1 + c_2 w + ...)
    q = [cv(c) for c in f.coeffs]
    inv0 = one / q[0]
    h = []
    for k in range(N):
        acc = one if k == 0 else zero
        for j in range(1, k + 1):
            if j < len(q):
                acc = acc - q[j] * h[k - j]
        h.append(acc * inv0)
    out = []
    power = [one] + [zero] * (N - 1)
    for k in range(1, N + 1):
        power = _mul_trunc(power, h, N - 1, K)[:N]
        out.append(power[k - 1] / k)
    return TruncatedSeries(out, N, K)


def _canonical_root(a, n, K):
    """``γ`` with ``γ^(n-1) = 1/a``; ``1`` when ``a = 1``, otherwise the root
    with the largest coordinate key."""
    if a == 1:
        return K.one
    target = K.one / a
    p = Poly([-target] + [K.zero] * (n - 2) + [K.one], K)
    roots = [r for r, _ in roots_in_field(p)]
    if not roots:
        raise FieldTooSmall(p.to_str("x"), "Böttcher normalization constant")
    return max(roots, key=K.key)


def boettcher_solve(H: RatFun, N: int = DEFAULT_TRUNCATION, gamma=None) -> TruncatedSeries:
    """``β`` with ``H ∘ β ≡ β ∘ z^n`` mod ``z^(N+1)`` and ``β'(0) = γ``.

    Writing ``β = γ z (1 + u)``, the coefficient of ``z^(n+r)`` is linear in
    ``u_r`` with coefficient ``n γ``; powers ``(1 + u)^j`` are extended one
    coefficient at a time with the J.C.P. Miller recurrence.
    """
    K = H.field
    try:
        a = taylor(H, None, N + H.degree + 1)
    except Exception as exc:
        raise NotSuperattracting(f"{H} has a pole at 0") from exc
    if not K.is_zero(a[0]):
        raise NotSuperattracting(f"{H} does not fix 0")
    n = next((k for k, c in enumerate(a) if not K.is_zero(c)), None)
    if n is None or n < 2:
        raise NotSuperattracting(f"{H} is not superattracting at 0")
    a = taylor(H, None, n + N)
    g = gamma if gamma is not None else _canonical_root(a[n], n, K)
    if g ** (n - 1) * a[n] != 1:
        raise ValueError("gamma^(n-1) must equal 1/a_n")
    cv = _fast(K)
    one, zero = cv(K.one), cv(K.zero)
    coeffs_H = a
    a = [cv(c) for c in a]
    g = cv(g)
    gpow = [one]
    for _ in range(n + N):
        gpow.append(gpow[-1] * g)
    u = [one] + [zero] * (N - 1)  # u[0] = 1 stands for the constant term
    js = list(range(n, n + N))
    P = {j: [one] for j in js}  # P[j][s] = [z^s] (1 + u)^j

    def miller_partial(j, s, upto):
        acc = zero
        for i in range(1, upto + 1):
            acc = acc + ((j + 1) * i - s) * u[i] * P[j][s - i]
        return acc / s

    for r in range(1, N):
        rest = g * miller_partial(n, r, r - 1)
        for j in js[1:]:
            s = n + r - j
            if s < 0:
                break
            if K.is_zero(a[j]):
                continue
            rest = rest + a[j] * gpow[j] * P[j][s]
        rhs = g * u[r // n] if r % n == 0 else zero
        u[r] = (rhs - rest) / (g * n)
        for j in js:
            P[j].append(miller_partial(j, r, r))
    beta = TruncatedSeries([g * c for c in u], N, K)
    Hs = TruncatedSeries(coeffs_H[1 : N + 1], N, K)
    zn = TruncatedSeries([K.zero] * (n - 1) + [K.one], N, K)
    assert Hs.compose(beta) == beta.compose(zn), "Böttcher residual is not zero"
    return beta


@dataclass(frozen=True)
class TransitionGroup:
    order_n: int
    elements: tuple
    boettcher: TruncatedSeries

    @property
    def N(self):
        return self.boettcher.N

    def is_closed(self):
        """True when left composition with ``φ_1`` permutes the elements
        cyclically, so that they are exactly the powers of ``φ_1``."""
        n = self.order_n
        if n == 1:
            return self.elements[0] == TruncatedSeries.z(self.N, self.boettcher.field)
        g = self.elements[1]
        return all(g.compose(self.elements[k]) == self.elements[(k + 1) % n] for k in range(n))

    def is_abelian(self):
        """Every element commutes with the generator ``φ_1`` (and the group
        consists of its powers, see :meth:`is_closed`)."""
        if self.order_n == 1:
            return True
        g = self.elements[1]
        return self.is_closed() and all(commute_check(g, f) for f in self.elements)

    def element_order(self, f):
        ident = TruncatedSeries.z(self.N, f.field)
        p, k = f, 1
        while p != ident:
            p = p.compose(f)
            k += 1
            if k > self.order_n:
                return None
        return k


def _leading(H: RatFun, limit: int):
    """``(n, a_n)``: order and leading coefficient of ``H`` at 0."""
    K = H.field
    try:
        a = taylor(H, None, limit)
    except Exception as exc:
        raise NotSuperattracting(f"{H} has a pole at 0") from exc
    if not K.is_zero(a[0]):
        raise NotSuperattracting(f"{H} does not fix 0")
    n = next((k for k, c in enumerate(a) if not K.is_zero(c)), None)
    if n is None or n < 2:
        raise NotSuperattracting(f"{H} is not superattracting at 0")
    return n, a[n]


def _rotation_field(K, n):
    """``K`` when it contains a primitive n-th root of unity; ``Q(zeta_n)``
    when ``K = Q``."""
    try:
        return K, root_of_unity(K, n)
    except FieldTooSmall:
        if K is not QQ:
            raise
    L = cyclotomic_field(n)
    return L, root_of_unity(L, n)


def transition_group(H: RatFun, N: int = DEFAULT_TRUNCATION, verify: bool = True) -> TransitionGroup:
    """``{β ∘ (ζ^k z) ∘ β^-1 : 0 <= k < n}`` for a superattracting ``H``.

    The group only depends on the fibers of ``H``, so ``β`` is taken for
    ``H / a_n``; it is then normalized with ``β'(0) = 1`` and has
    coefficients in the field of ``H``.  With ``P_j = (β^-1)^j`` and the
    partial sums ``S_r = sum_{j = r mod n} b_j P_j`` over that field,
    ``φ_k = sum_r ζ^(k r) S_r``.  Over Q the roots of unity are taken from
    ``Q(zeta_n)``.  With ``verify`` every element is checked against
    ``H ∘ φ = H``.
    """
    K = H.field
    n, an = _leading(H, min(N, 2 * H.degree + 2) + 1)
    Hn = H * RatFun.const(K.one / an, K) if an != 1 else H
    beta = boettcher_solve(Hn, N)
    L, zeta = _rotation_field(K, n)
    binv = series_invert(beta)
    cv = _fast(K)
    g = [cv(K.zero)] + [cv(c) for c in binv.coeffs]
    S = [[cv(K.zero)] * (N + 1) for _ in range(n)]
    P = g
    for j in range(1, N + 1):
        b = cv(beta[j])
        if not K.is_zero(b):
            row = S[j % n]
            for i in range(j, N + 1):
                row[i] = row[i] + b * P[i]
        if j < N:
            P = _mul_trunc(P, g, N, K)
    Sl = [[L(c) for c in row] for row in S]
    elements = []
    for k in range(n):
        zk = [zeta ** (k * r % n) for r in range(n)]
        coeffs = []
        for i in range(1, N + 1):
            acc = L.zero
            for r in range(n):
                if not L.is_zero(Sl[r][i]):
                    acc = acc + zk[r] * Sl[r][i]
            coeffs.append(acc)
        elements.append(TruncatedSeries(coeffs, N, L))
    if verify:
        Hs = TruncatedSeries.from_ratfun(Hn.change_field(L) if L != K else Hn, N)
        for phi in elements:
            if Hs.compose(phi) != Hs:
                raise AssertionError("transition function fails H∘φ = H")  # pragma: no cover
    return TransitionGroup(n, tuple(elements), beta)


def embed_series(f: TruncatedSeries, field) -> TruncatedSeries:
    """``f`` with coefficients mapped into a larger cyclotomic field."""
    e = cyclotomic_embedding(f.field, field)
    return TruncatedSeries([e(c) for c in f.coeffs], f.N, field)


def commute_check(f: TruncatedSeries, g: TruncatedSeries) -> bool:
    f._check(g)
    return f.compose(g) == g.compose(f)
