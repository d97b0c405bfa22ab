"""Irreducible factorization over Q and over a simple extension of Q.

Factoring over Q is delegated to sympy.  Over ``K = Q[w]/(m)`` we use
Trager's norm method: shift ``g(x) -> g(x - s w)`` until the norm
``Res_y(m(y), g(x - s y))`` is squarefree, factor the norm over Q and take
gcds in ``K[x]``.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from ..errors import FieldTooSmall, InvalidSpec, ReducibleModulus
from .fields import QQ, ExtensionField, cyclotomic_poly
from .poly import Poly, poly_gcd, squarefree_factor

_x, _y = sympy.symbols("x y")


def _to_fraction(r):
    r = sympy.Rational(r)
    return Fraction(int(r.p), int(r.q))


def _q_to_sympy(p: Poly):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], _x, domain="QQ")


def _sympy_to_q(sp) -> Poly:
    return Poly([_to_fraction(c) for c in reversed(sp.all_coeffs())], QQ)


def _factor_squarefree_q(p: Poly):
    _, facs = _q_to_sympy(p).factor_list()
    return [_sympy_to_q(f).monic() for f, _ in facs]


def is_irreducible_q(p: Poly) -> bool:
    if p.degree < 1:
        return False
    return _q_to_sympy(p).is_irreducible


def _norm(g: Poly, field: ExtensionField) -> Poly:
    """``Res_y(m(y), G(x, y))`` where ``G`` lifts ``g`` by ``w -> y``."""
    m_expr = sum(sympy.Rational(c.numerator, c.denominator) * _y**i for i, c in enumerate(field.modulus))
    g_expr = 0
    for k, c in enumerate(g.coeffs):
        cy = sum(sympy.Rational(a.numerator, a.denominator) * _y**i for i, a in enumerate(c.coords))
        g_expr += cy * _x**k
    res = sympy.resultant(m_expr, g_expr, _y)
    return _sympy_to_q(sympy.Poly(res, _x, domain="QQ"))


def _factor_squarefree_ext(g: Poly):
    field = g.field
    if field.base is not QQ:
        raise NotImplementedError("factorization over nested extensions is not supported")
    w = field.gen
    for s in (0, 1, -1, 2, -2, 3, -3, 4, 5, 6, 7, 8):
        shift = Poly((-s * w, field.one), field)  # x - s*w
        gs = g.compose(shift)
        n = _norm(gs, field)
        if poly_gcd(n, n.derivative()).degree > 0:
            continue
        out = []
        back = Poly((s * w, field.one), field)  # x + s*w
        for h in _factor_squarefree_q(n):
            f = poly_gcd(gs, h.change_field(field))
            if f.degree > 0:
                out.append(f.compose(back).monic())
        return out
    raise RuntimeError("no squarefree norm found")  # pragma: no cover


def factor(p: Poly):
    """Irreducible factorization ``[(monic factor, multiplicity), ...]``.

    Factors are sorted by (degree, coefficients) so the output is
    deterministic.
    """
    out = []
    for part, mult in squarefree_factor(p):
        if part.degree == 1:
            out.append((part, mult))
            continue
        if p.field is QQ:
            facs = _factor_squarefree_q(part)
        else:
            facs = _factor_squarefree_ext(part)
        out.extend((f, mult) for f in facs)
    out.sort(key=lambda fm: (fm[0].degree, [p.field.key(c) for c in fm[0].coeffs], fm[1]))
    return out


def roots_in_field(p: Poly):
    """Roots of ``p`` lying in its coefficient field, with multiplicities."""
    return [(-f[0], m) for f, m in factor(p) if f.degree == 1]


def field_make(spec) -> object:
    """Build a coefficient field.

    ``spec`` is ``"Q"``, ``("cyclotomic", n)`` or a :class:`Poly` over Q used
    as modulus.  Strings such as ``"Q(zeta_5)"`` and ``"Q[w]/(w^2-2)"`` are
    accepted through :func:`cofibred.parse.parse_field`.
    """
    if isinstance(spec, str):
        from ..parse import parse_field

        return parse_field(spec)
    if spec is None or spec is QQ:
        return QQ
    if isinstance(spec, tuple) and spec[0] == "cyclotomic":
        return cyclotomic_field(spec[1])
    if isinstance(spec, Poly):
        return extension_field(spec)
    raise InvalidSpec(f"unknown field spec {spec!r}")


def cyclotomic_field(n: int, name: str = "w"):
    if not isinstance(n, int) or n < 1:
        raise InvalidSpec(f"cyclotomic order must be a positive integer, got {n!r}")
    phi = cyclotomic_poly(n)
    if len(phi) == 2:
        return QQ
    return ExtensionField(QQ, phi, name=name, cyclotomic_order=n)


def extension_field(modulus: Poly, name: str = "w"):
    if modulus.field is not QQ:
        raise InvalidSpec("modulus must have rational coefficients")
    if modulus.degree < 1:
        raise InvalidSpec("modulus must have positive degree")
    m = modulus.monic()
    if not is_irreducible_q(m):
        raise ReducibleModulus(m, factor(m))
    if m.degree == 1:
        return QQ
    return ExtensionField(QQ, m.coeffs, name=name)


def root_of_unity(field, n: int):
    """A primitive n-th root of unity in ``field``.

    For ``Q(zeta_m)`` with ``n | m`` this is ``w^(m/n)``; otherwise the
    root of the n-th cyclotomic polynomial with the largest coordinate key.
    """
    if n == 1:
        return field.one
    if n == 2:
        return -field.one
    m = getattr(field, "cyclotomic_order", None)
    if m is not None and m % n == 0:
        return field.gen ** (m // n)
    phi = Poly(cyclotomic_poly(n), QQ).change_field(field)
    roots = [r for r, _ in roots_in_field(phi)] if field is QQ or field.base is QQ else []
    if not roots:
        raise FieldTooSmall(Poly(cyclotomic_poly(n), QQ).to_str("w"), f"primitive {n}-th root of unity")
    return max(roots, key=field.key)


def cyclotomic_embedding(src, dst):
    """The embedding ``Q(zeta_m) -> Q(zeta_L)`` sending ``w`` to ``w^(L/m)``.

    ``src`` may also be Q; ``m`` must divide ``L``.
    """
    if src == dst:
        return lambda x: x
    if src is QQ:
        return dst
    m = getattr(src, "cyclotomic_order", None)
    L = getattr(dst, "cyclotomic_order", None)
    if m is None or L is None or L % m:
        raise InvalidSpec(f"no cyclotomic embedding of {src.spec} into {dst.spec}")
    step = L // m

    def embed(x):
        coeffs = [dst.base.zero] * (step * (len(x.coords) - 1) + 1)
        for i, c in enumerate(x.coords):
            coeffs[i * step] = c
        return dst.from_list(coeffs)

    return embed
