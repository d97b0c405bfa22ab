"""Standard families of solutions of ``A ∘ X = B ∘ Y``.

* polynomial Ritt pairs ``X = σ1 ∘ z^n ∘ μ``, ``Y = σ2 ∘ z^s R(z^n) ∘ μ``
  with ``A = ν ∘ z^s R(z)^n ∘ σ1^-1``, ``B = ν ∘ z^n ∘ σ2^-1``;
* Chebyshev pairs ``σ1 ∘ T_n ∘ μ``, ``σ2 ∘ T_m ∘ μ``;
* the involution family ``X = z + 1/z``, ``Y = (1 - z^l)/(z^(l+m) - 1)``,
  ``B = z^l (z + 1)^m``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .algebra import QQ, Poly
from .ratfun import RatFun


def chebyshev(n: int, field=QQ) -> RatFun:
    """``T_n`` from ``T_0 = 1``, ``T_1 = z``, ``T_(k+1) = 2 z T_k - T_(k-1)``."""
    if not isinstance(n, int) or n < 0:
        raise ValueError("n must be a non-negative integer")
    z = Poly.x(field)
    prev, cur = Poly.one(field), z
    if n == 0:
        return RatFun(prev, None, field)
    for _ in range(n - 1):
        prev, cur = cur, z * cur * 2 - prev
    return RatFun(cur, None, field)


def monomial(n: int, field=QQ) -> RatFun:
    return RatFun(Poly.x(field) ** n, None, field)


def linear(a, b, field=QQ) -> RatFun:
    """``a z + b``."""
    return RatFun(Poly([b, a], field), None, field)


def linear_inverse(L: RatFun) -> RatFun:
    a, b = L.num[1] / L.den[0], L.num[0] / L.den[0]
    return linear(1 / a, -b / a, L.field)


@dataclass(frozen=True)
class Quadruple:
    """A solution ``A ∘ X = B ∘ Y`` with its construction parameters."""

    X: RatFun
    Y: RatFun
    A: RatFun
    B: RatFun
    params: dict

    @property
    def H(self):
        return self.A.compose(self.X)

    def holds(self):
        return self.A.compose(self.X) == self.B.compose(self.Y)


def ritt_pair(n, s, R, sigma1=None, sigma2=None, mu=None, nu=None, field=QQ) -> Quadruple:
    """The polynomial family with ``gcd(s, n) = 1``; ``R`` is a polynomial."""
    if gcd(s, n) != 1:
        raise ValueError("s and n must be coprime")
    ident = RatFun.z(field)
    sigma1, sigma2, mu, nu = (m if m is not None else ident for m in (sigma1, sigma2, mu, nu))
    R = R if isinstance(R, RatFun) else RatFun(R, None, field)
    zn = monomial(n, field)
    zs = monomial(s, field)
    core_Y = zs * R.compose(zn)
    core_A = zs * R**n
    X = sigma1.compose(zn).compose(mu)
    Y = sigma2.compose(core_Y).compose(mu)
    A = nu.compose(core_A).compose(linear_inverse(sigma1))
    B = nu.compose(zn).compose(linear_inverse(sigma2))
    return Quadruple(X, Y, A, B, {"family": "ritt", "n": n, "s": s, "R": str(R)})


def chebyshev_pair(n, m, sigma1=None, sigma2=None, mu=None, nu=None, field=QQ) -> Quadruple:
    if gcd(n, m) != 1:
        raise ValueError("n and m must be coprime")
    ident = RatFun.z(field)
    sigma1, sigma2, mu, nu = (x if x is not None else ident for x in (sigma1, sigma2, mu, nu))
    Tn, Tm = chebyshev(n, field), chebyshev(m, field)
    X = sigma1.compose(Tn).compose(mu)
    Y = sigma2.compose(Tm).compose(mu)
    A = nu.compose(Tm).compose(linear_inverse(sigma1))
    B = nu.compose(Tn).compose(linear_inverse(sigma2))
    return Quadruple(X, Y, A, B, {"family": "chebyshev", "n": n, "m": m})


def involution_Y(l: int, m: int, field=QQ) -> RatFun:
    """``(1 - z^l)/(z^(l+m) - 1)``."""
    z = Poly.x(field)
    one = Poly.one(field)
    return RatFun(one - z**l, z ** (l + m) - one, field)


def involution_B(l: int, m: int, field=QQ) -> RatFun:
    """``z^l (z + 1)^m``."""
    z = Poly.x(field)
    return RatFun(z**l * (z + Poly.one(field)) ** m, None, field)


def involution_X(field=QQ) -> RatFun:
    return RatFun.z(field) + 1 / RatFun.z(field)


def prime_Y(p: int, field=QQ) -> RatFun:
    """``(1 - z)/(z^(p+1) - 1)``, equal to ``-1/(1 + z + ... + z^p)``."""
    return involution_Y(1, p, field)


# -- seeded random members ---------------------------------------------------------
def _nonzero(rng, lo=-3, hi=3):
    while True:
        v = rng.randint(lo, hi)
        if v:
            return v


def random_rational(rng: random.Random, lo=-3, hi=3, nonzero=False):
    num = _nonzero(rng, lo, hi) if nonzero else rng.randint(lo, hi)
    return Fraction(num, rng.randint(1, 3))


def random_linear(rng: random.Random, field=QQ) -> RatFun:
    return linear(random_rational(rng, nonzero=True), random_rational(rng), field)


def random_poly(rng: random.Random, degree: int, field=QQ, monic=False, constant=None) -> Poly:
    coeffs = [random_rational(rng) for _ in range(degree)]
    coeffs.append(Fraction(1) if monic else random_rational(rng, nonzero=True))
    if constant is not None:
        coeffs[0] = Fraction(constant)
    return Poly(coeffs, field)


def random_ritt_pair(rng: random.Random, n: int, s: int, max_R_degree: int = 2, field=QQ) -> Quadruple:
    """Random member of the polynomial family with random degree-one maps."""
    R = random_poly(rng, rng.randint(0, max_R_degree), field)
    return ritt_pair(
        n,
        s,
        R,
        random_linear(rng, field),
        random_linear(rng, field),
        random_linear(rng, field),
        random_linear(rng, field),
        field,
    )
