"""Regenerate the YAML corpora shipped in ``src/cofibred/corpora``.

Expected values tagged ``derived(...)`` are computed here with sympy, not
with the package: rational interpolation for ``A`` in ``A ∘ X = H``,
sympy's ``chebyshevt`` for Chebyshev polynomials, and undetermined
coefficients for Böttcher series.  Run from the repository root::

    python3 tools/make_corpora.py
"""

from __future__ import annotations

import sys
from pathlib import Path

import sympy as sp
import yaml
from sympy.polys.polyfuncs import rational_interpolate

OUT = Path(__file__).resolve().parent.parent / "src" / "cofibred" / "corpora"
z, x = sp.symbols("z x")


def text(e):
    """sympy expression in the corpus expression syntax."""
    e = sp.cancel(sp.together(e))
    num, den = sp.fraction(e)
    s = str(sp.Poly(num, z).as_expr()) if den == 1 else f"({sp.expand(num)})/({sp.expand(den)})"
    return s.replace("**", "^")


def left_factor(H, X):
    """``A`` with ``A(X) = H`` by rational interpolation through ``(X(p), H(p))``."""
    dH = max(sp.degree(p, z) for p in sp.fraction(sp.cancel(H)))
    dX = max(sp.degree(p, z) for p in sp.fraction(sp.cancel(X)))
    k = dH // dX
    pts = []
    p = 2
    while len(pts) < 2 * k + 3:
        xv, hv = X.subs(z, p), H.subs(z, p)
        if xv.is_finite and hv.is_finite and xv not in [q[0] for q in pts]:
            pts.append((xv, hv))
        p += 1
    for degnum in range(k, -1, -1):
        A = rational_interpolate(pts[: 2 * k + 1], degnum, X=x)
        if sp.simplify(A.subs(x, X) - H) == 0:
            return A.subs(x, z)
    raise RuntimeError("no left factor found")


def boettcher_series(H, n, N):
    """``β = z + ...`` with ``H(β) = β(z^n)`` mod ``z^(N+1)``, leading coefficient 1."""
    cs = sp.symbols(f"c2:{N + 1}")
    beta = z + sum(c * z**k for k, c in zip(range(2, N + 1), cs))
    # c_j first enters the coefficient of z^(j+n-1), so degrees n..N+n-1 fix c_2..c_N
    diff = sp.expand(sp.series(H.subs(z, beta), z, 0, N + n).removeO() - beta.subs(z, z**n))
    eqs = [diff.coeff(z, k) for k in range(n, N + n)]
    sol = sp.solve(eqs, cs, dict=True)
    assert len(sol) == 1
    return sp.expand(beta.subs(sol[0]))


def series_text(s, N):
    terms = []
    for k in range(1, N + 1):
        c = s.coeff(z, k)
        if c == 0:
            continue
        mono = "z" if k == 1 else f"z^{k}"
        if c == 1:
            terms.append(mono)
        elif c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c}*{mono}")
    body = terms[0]
    for t in terms[1:]:
        body += " - " + t[1:] if t.startswith("-") else " + " + t
    return f"{body} + O(z^{N + 1})"


def assertion(op, args, expected, provenance):
    return {"op": op, "args": args, "expected": expected, "provenance": provenance}


def ritt_families():
    cases = [
        # n, s, R, sigma1, sigma1^-1, sigma2, sigma2^-1, mu, nu
        (2, 1, "1 + z", "z", "z", "z", "z", "z", "z"),
        (3, 1, "z + 2", "z", "z", "z", "z", "z", "z"),
        (3, 2, "1 - z", "2*z + 1", "(z - 1)/2", "z - 3", "z + 3", "z + 1", "3*z"),
        (4, 1, "1 + z^2", "z", "z", "-z", "-z", "z - 1", "z + 5"),
        (4, 3, "2 - z + z^2", "z/2", "2*z", "z + 1", "z - 1", "3*z", "z"),
        (5, 2, "3 + z", "z - 1", "z + 1", "2*z", "z/2", "z + 2", "-z"),
    ]
    entries = []
    for n, s, R, s1, s1i, s2, s2i, mu, nu in cases:
        entries.append(
            {
                "id": f"ritt-n{n}-s{s}",
                "field": "Q",
                "define": {
                    "zn": f"z^{n}",
                    "coreY": f"z^{s}*({R.replace('z', f'(z^{n})')})",
                    "coreA": f"z^{s}*({R})^{n}",
                    "s1": s1,
                    "s1i": s1i,
                    "s2": s2,
                    "s2i": s2i,
                    "mu": mu,
                    "nu": nu,
                    "X": {"compose": ["s1", "zn", "mu"]},
                    "Y": {"compose": ["s2", "coreY", "mu"]},
                    "A": {"compose": ["nu", "coreA", "s1i"]},
                    "B": {"compose": ["nu", "zn", "s2i"]},
                },
                "assert": [
                    assertion("identity", ["A", "X", "B", "Y"], "true", "paper"),
                    assertion("compositum_degree", ["X", "Y"], "1", "paper"),
                    assertion("decide", ["X", "Y"], "yes", "paper"),
                    assertion("certify", ["X", "Y", "A", "B"], "good", "paper"),
                ],
            }
        )
    return entries


def chebyshev_corpus():
    entries = [
        {
            "id": "chebyshev-polynomials",
            "field": "Q",
            "assert": [
                assertion("chebyshev", [k], text(sp.chebyshevt(k, z)), "derived(sympy chebyshevt)")
                for k in range(1, 8)
            ],
        }
    ]
    for m, n in [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5), (2, 7)]:
        Tm, Tn, Tmn = (text(sp.chebyshevt(k, z)) for k in (m, n, m * n))
        entries.append(
            {
                "id": f"chebyshev-{m}-{n}",
                "field": "Q",
                "define": {"Tm": Tm, "Tn": Tn, "Tmn": Tmn, "L": {"compose": ["Tm", "Tn"]}, "R": {"compose": ["Tn", "Tm"]}},
                "assert": [
                    assertion("equal", ["L", "Tmn"], "true", "paper"),
                    assertion("equal", ["R", "Tmn"], "true", "paper"),
                    assertion("decide", ["Tm", "Tn"], "yes", "paper"),
                ],
            }
        )
    return entries


def involution_family():
    X = z + 1 / z
    entries = []
    for l in range(1, 5):
        for m in range(1, 5):
            Y = (1 - z**l) / (z ** (l + m) - 1)
            B = z**l * (z + 1) ** m
            H = B.subs(z, Y)
            A = left_factor(H, X)
            checks = [
                assertion("invariant", ["H", "1/z"], "true", "paper"),
                assertion("member", ["H", "X"], text(A), "derived(rational interpolation)"),
            ]
            dA = max(sp.degree(p, z) for p in sp.fraction(sp.cancel(A)))
            dY = max(sp.degree(p, z) for p in sp.fraction(sp.cancel(Y)))
            if l + m != 2:
                reason = f"degB {l + m} != degX 2"
                if dA != dY:
                    reason += f"; degA {dA} != degY {dY}"
                checks.append(assertion("certify", ["X", "Y", "A", "B"], f"not_good: {reason}", "paper"))
            entries.append(
                {
                    "id": f"involution-l{l}-m{m}",
                    "field": "Q",
                    "define": {"X": "z + 1/z", "Y": text(Y), "B": text(B), "A": text(A), "H": {"compose": ["B", "Y"]}},
                    "assert": checks,
                }
            )
    for m in (3, 5):
        entries.append(
            {
                "id": f"involution-decide-l1-m{m}",
                "field": "Q",
                "define": {"X": "z + 1/z", "Y": text((1 - z) / (z ** (m + 1) - 1))},
                "assert": [assertion("decide", ["X", "Y"], "no", "paper")],
            }
        )
    return entries


def groups_corpus():
    entries = [
        {
            "id": "klein-four",
            "field": "Q",
            "define": {"X": "z + 1/z", "Y": "z^2", "H": "z^2 + 1/z^2"},
            "assert": [
                assertion("deck_order", ["X"], "2", "trivial"),
                assertion("deck_order", ["Y"], "2", "trivial"),
                assertion("closure_order", ["1/z", "-z"], "4", "paper"),
                assertion("closure_type", ["1/z", "-z"], "D2", "trivial"),
                assertion("member", ["H", "X"], "z^2 - 2", "trivial"),
                assertion("member", ["H", "Y"], "(z^2 + 1)/z", "trivial"),
                assertion("decide", ["X", "Y"], "yes", "paper"),
            ],
        },
        {
            "id": "dihedral-6",
            "field": "Q(zeta_6)",
            "assert": [
                assertion("closure_order", ["1/z", "w*z"], "12", "paper"),
                assertion("closure_type", ["1/z", "w*z"], "D6", "trivial"),
            ],
        },
    ]
    for p in (3, 5):
        entries.append(
            {
                "id": f"trivial-deck-p{p}",
                "field": "Q",
                "define": {"Y": text((1 - z) / (z ** (p + 1) - 1))},
                "assert": [
                    assertion("deck_order", ["Y"], "1", "paper"),
                    assertion("is_galois", ["Y"], "false", "paper"),
                    assertion("equivariant_under", ["Y", "1/z"], "none", "paper"),
                ],
            }
        )
    entries.append(
        {
            "id": "equivariant-normal-form",
            "field": "Q",
            "assert": [
                assertion("normal_form", ["z*(1 + z^2)", 2], "s=1; R=z + 1", "paper"),
                assertion("normal_form", ["z^3 - 2*z^5", 2], "s=1; R=-2*z^2 + z", "trivial"),
                assertion("normal_form", ["z^2*(z - 1)", 2], "none", "paper"),
            ],
        }
    )
    return entries


def boettcher_corpus():
    N = 6
    entries = []
    for name, H, n in [("quadratic-cubic", z**2 + z**3, 2), ("cubic-quartic", z**3 + z**4, 3)]:
        beta = boettcher_series(H, n, N)
        entries.append(
            {
                "id": f"boettcher-{name}",
                "field": "Q",
                "assert": [assertion("boettcher", [text(H), N], series_text(beta, N), "derived(undetermined coefficients)")],
            }
        )
    entries.append(
        {
            "id": "transition-orders",
            "field": "Q(zeta_3)",
            "assert": [
                assertion("transition_order", ["z^2", 8], "2", "trivial"),
                assertion("transition_order", ["z^2 + z^3", 8], "2", "paper"),
                assertion("transition_order", ["z^3 + z^4", 8], "3", "paper"),
                assertion("transition_order", ["z^3/(1 + z)", 8], "3", "paper"),
            ],
        }
    )
    return entries


def write(name, entries):
    OUT.mkdir(parents=True, exist_ok=True)
    doc = {"schema": 1, "entries": entries}
    with open(OUT / name, "w", encoding="utf-8") as fh:
        yaml.safe_dump(doc, fh, sort_keys=False, width=1000, allow_unicode=True)
    print(f"wrote {OUT / name} ({len(entries)} entries)")


def main():
    write("ritt_families.yaml", ritt_families())
    write("chebyshev.yaml", chebyshev_corpus())
    write("involution_family.yaml", involution_family())
    write("groups.yaml", groups_corpus())
    write("boettcher.yaml", boettcher_corpus())
    return 0


if __name__ == "__main__":
    sys.exit(main())
