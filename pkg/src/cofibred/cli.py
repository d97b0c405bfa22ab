"""Command-line workbench.

Exit codes: 0 success or positive verdict, 1 negative verdict, 2 undecided
(bound exhausted, field too small, incomplete deck group), 3 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import (
    CofibredError,
    CompositumNotFull,
    ExceedsBound,
    FieldTooSmall,
    Inconclusive,
    InfiniteGroup,
    InvalidSpec,
    ParseError,
    SchemaError,
)
from .parse import format_ratfun, parse_field, parse_ratfun

OK, NEGATIVE, UNDECIDED, USAGE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _s(x):
    if x is None:
        return None
    if hasattr(x, "to_str"):
        return x.to_str()
    return str(x)


class Outcome:
    def __init__(self, code, verdict, result, lines=None):
        self.code = code
        self.verdict = verdict
        self.result = result
        self.lines = lines if lines is not None else [f"{k}: {v}" for k, v in result.items()]


def _verdict(flag, yes="yes", no="no"):
    return (OK, yes) if flag else (NEGATIVE, no)


# -- subcommand handlers -------------------------------------------------------------
def cmd_compositum(a, K):
    from .lattice import compositum

    r = compositum(a.parse(a.X), a.parse(a.Y))
    res = {"degree": r.degree_d, "generator": _s(r.generator_W), "X_factor": _s(r.X_factor), "Y_factor": _s(r.Y_factor)}
    return Outcome(OK, "full" if r.degree_d == 1 else "proper", res)


def cmd_member(a, K):
    from .lattice import left_membership

    A = left_membership(a.parse(a.H), a.parse(a.X))
    code, v = _verdict(A is not None, "member", "not_member")
    return Outcome(code, v, {"A": _s(A)})


def cmd_solve(a, K):
    from .lattice import solve_AX_eq_BY

    X, Y = a.parse(a.X), a.parse(a.Y)
    dA = a.degA if a.degA is not None else Y.degree
    dB = a.degB if a.degB is not None else X.degree
    sols = solve_AX_eq_BY(X, Y, dA, dB)
    if not sols:
        return Outcome(NEGATIVE, "no_solution", {"degA_bound": dA, "degB_bound": dB})
    s = sols[0]
    res = {"A": _s(s.A), "B": _s(s.B), "H": _s(s.H), "max_left_degree": s.max_left_degree}
    return Outcome(OK, "solution", res)


def cmd_deck(a, K):
    from .theorems import deck_group

    d = deck_group(a.parse(a.X), a.budget)
    res = {
        "order": d.group.order,
        "true_order": d.true_order,
        "classification": d.group.classification,
        "elements": [_s(m) for m in d.group.elements],
        "completeness": d.completeness,
        "base_point": _s(d.base_point),
    }
    return Outcome(OK if d.complete else UNDECIDED, d.completeness, res)


def cmd_galois(a, K):
    from .theorems import is_galois

    g = is_galois(a.parse(a.X))
    code, v = _verdict(g.is_galois, "galois", "not_galois")
    res = {"deck_order": g.deck_order, "degree": g.degree, "uniform_multiplicities": g.uniform_multiplicities}
    return Outcome(code, v, res)


def _group(a, gens, K):
    from .moebius import MoebiusMap, group_closure

    maps = [MoebiusMap.from_ratfun(a.parse(g)) for g in gens]
    return group_closure(maps, a.bound, K)


def cmd_equivariant(a, K):
    from .theorems import equivariance_solve

    G = _group(a, a.gens, K)
    w = equivariance_solve(a.parse(a.V), G)
    if w is None:
        return Outcome(NEGATIVE, "not_equivariant", {"group_order": G.order})
    res = {
        "group_order": G.order,
        "phi": {_s(m): _s(n) for m, n in w.phi.items()},
        "injective": w.injective,
        "image": w.image_group.classification,
    }
    return Outcome(OK, "equivariant", res)


def cmd_closure(a, K):
    G = _group(a, a.gens, K)
    res = {"order": G.order, "classification": G.classification, "elements": [_s(m) for m in G.elements]}
    return Outcome(OK, "finite", res)


def cmd_minimal(a, K):
    from .lattice import minimal_intersection_decide

    try:
        d = minimal_intersection_decide(a.parse(a.X), a.parse(a.Y))
    except CompositumNotFull as exc:
        return Outcome(NEGATIVE, "compositum_not_full", {"compositum_degree": exc.degree})
    res = {"H": _s(d.H), "A": _s(d.A), "B": _s(d.B)}
    if d.certificate is not None:
        res["certificate"] = d.certificate.verdict
    code = {"yes": OK, "no": NEGATIVE}.get(d.verdict, UNDECIDED)
    return Outcome(code, d.verdict, res)


def cmd_galois_pair(a, K):
    from .theorems import galois_pair_check

    v = galois_pair_check(a.parse(a.X), a.parse(a.Y), a.parse(a.V), a.parse(a.U))
    res = {
        "U_galois": list(v.condition1_U_galois),
        "V_equivariant": list(v.condition2_equivariance),
        "group_order": list(v.condition3_group_order),
    }
    if v.constructed:
        c = v.constructed
        res.update({k: _s(c[k]) for k in ("A", "B", "H", "C", "D")})
        res["certificate"] = c["certificate"].verdict
    code, verdict = _verdict(v.all_pass, "all_conditions_hold", "condition_fails")
    return Outcome(code, verdict, res)


def cmd_normal_form(a, K):
    from .theorems import equivariant_normal_form

    f = equivariant_normal_form(a.parse(a.Y), a.n, strict=not a.lenient)
    if f is None:
        return Outcome(NEGATIVE, "not_equivariant", {})
    return Outcome(OK, "normal_form", {"sigma": _s(f.sigma), "s": f.s, "R": _s(f.R), "n": f.n})


def cmd_obstruction(a, K):
    from .theorems import multiplicity_obstruction

    r = multiplicity_obstruction(a.parse(a.X), a.parse(a.Y))
    res = {
        "points": [{"point": _s(p), "mult_X": mx, "mult_Y": my} for p, mx, my in r.points],
        "compositum_full": r.compositum_full,
    }
    code, v = _verdict(r.intersection_trivial_certified, "obstructed", "no_obstruction")
    return Outcome(code, v, res)


def cmd_semiconjugacy(a, K):
    from .theorems import semiconjugacy_check

    r = semiconjugacy_check(*(a.parse(e) for e in (a.X, a.Y, a.A, a.B)))
    if not r.ok:
        return Outcome(NEGATIVE, "fail", {"reason": r.reason})
    res = {"eta": _s(r.eta), "nu": _s(r.nu), "V": _s(r.V), "C": _s(r.C)}
    return Outcome(OK, "semiconjugate", res)


def cmd_boettcher(a, K):
    from .boettcher import boettcher_solve

    beta = boettcher_solve(a.parse(a.H), a.truncation)
    return Outcome(OK, "solved", {"beta": beta.to_str(), "truncation": a.truncation})


def cmd_transition(a, K):
    from .boettcher import transition_group

    G = transition_group(a.parse(a.H), a.truncation)
    closed, abelian = G.is_closed(), G.is_abelian()
    res = {
        "order": G.order_n,
        "closed": closed,
        "abelian": abelian,
        "elements": [e.to_str() for e in G.elements],
        "truncation": a.truncation,
    }
    code, v = _verdict(closed and abelian, "cyclic", "not_closed")
    return Outcome(code, v, res)


def cmd_corpus(a, K):
    from .corpus import builtin_corpora, builtin_corpus_path, report_text, run_corpus

    paths = a.paths or [builtin_corpus_path(n) for n in builtin_corpora()]
    reports = [run_corpus(_locate(p), a.jobs) for p in paths]
    ok = all(r["ok"] for r in reports)
    lines = []
    for r in reports:
        lines.append(f"# {r['source']}")
        lines.append(report_text(r))
    return Outcome(OK if ok else NEGATIVE, "pass" if ok else "fail", {"reports": reports}, lines)


def _locate(name):
    import os

    from .corpus import builtin_corpora, builtin_corpus_path

    if os.path.exists(name):
        return name
    for candidate in (name, name + ".yaml"):
        if candidate in builtin_corpora():
            return builtin_corpus_path(candidate)
    return name


# -- argument parsing ----------------------------------------------------------------
def _common(p):
    p.add_argument("--field", default="Q", help='coefficient field: "Q", "Q(zeta_N)" or "Q[w]/(poly)"')
    p.add_argument("--bound", type=int, default=2000, help="group closure bound")
    p.add_argument("--truncation", type=int, default=32, help="power series truncation order N")
    p.add_argument("--format", choices=("text", "structured"), default="text")


# name, handler, help, positional arguments, extra options, aliases
COMMANDS = [
    ("compositum", cmd_compositum, "generator of K(X, Y)", ["X", "Y"], [], []),
    ("member", cmd_member, "A with A∘X = H", ["H", "X"], [], []),
    ("solve", cmd_solve, "minimal solution of A∘X = B∘Y", ["X", "Y"], ["degs"], []),
    ("deck", cmd_deck, "deck transformation group", ["X"], ["budget"], []),
    ("galois", cmd_galois, "is X a Galois covering", ["X"], [], []),
    ("equivariant", cmd_equivariant, "V∘μ = φ(μ)∘V for the group generated by GENS", ["V"], ["gens"], []),
    ("closure", cmd_closure, "finite group generated by Moebius maps", [], ["gens_pos"], []),
    ("minimal", cmd_minimal, "is [K(z) : K(X) ∩ K(Y)] = deg X deg Y", ["X", "Y"], [], []),
    ("galois-pair", cmd_galois_pair, "conditions for Y = U∘V against a Galois X", ["X", "Y", "V", "U"], [], ["thm1"]),
    ("normal-form", cmd_normal_form, "normal form Y = σ∘z^s R(z^n)", ["Y"], ["n"], ["thm2"]),
    ("obstruction", cmd_obstruction, "common critical points with non-coprime multiplicities", ["X", "Y"], [], ["thm5"]),
    ("semiconjugacy", cmd_semiconjugacy, "semiconjugacy reduction for Galois B", ["X", "Y", "A", "B"], [], ["thm8"]),
    ("boettcher", cmd_boettcher, "Böttcher coordinate at 0", ["H"], [], []),
    ("transition", cmd_transition, "group of transition functions at 0", ["H"], [], []),
    ("corpus", cmd_corpus, "run corpus files (default: the built-in ones)", [], ["paths"], []),
]


def build_parser():
    parser = _Parser(prog="cofibred", description="Composition algebra of rational functions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    for name, fn, help_text, positional, extras, aliases in COMMANDS:
        p = sub.add_parser(name, help=help_text, aliases=aliases)
        _common(p)
        for pos in positional:
            p.add_argument(pos, help="rational function expression")
        if "degs" in extras:
            p.add_argument("--degA", type=int, default=None, help="bound on deg A (default deg Y)")
            p.add_argument("--degB", type=int, default=None, help="bound on deg B (default deg X)")
        if "budget" in extras:
            p.add_argument("--budget", type=int, default=25, help="base points to try")
        if "gens" in extras:
            p.add_argument("--gens", nargs="+", required=True, help="Moebius generators")
        if "gens_pos" in extras:
            p.add_argument("gens", nargs="+", help="Moebius generators")
        if "n" in extras:
            p.add_argument("n", type=int, help="order of the rotation")
            p.add_argument("--lenient", action="store_true", help="allow a simple zero at 0")
        if "paths" in extras:
            p.add_argument("paths", nargs="*", help="corpus files or built-in corpus names")
            p.add_argument("--jobs", type=int, default=1, help="entries run concurrently")
        p.set_defaults(handler=fn, command=name)
    return parser


def _emit(args, outcome, K):
    if args.format == "structured":
        doc = {
            "version": 1,
            "tool_version": __version__,
            "command": args.command,
            "field": K.spec if K is not None else args.field,
            "verdict": outcome.verdict,
            "exit_code": outcome.code,
            "result": outcome.result,
        }
        print(json.dumps(doc, indent=2, sort_keys=True, default=str))
    else:
        print(f"verdict: {outcome.verdict}")
        for line in outcome.lines:
            print(line)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help exits 0, usage errors exit USAGE
        return exc.code if isinstance(exc.code, int) else USAGE
    K = None
    try:
        K = parse_field(args.field)
        args.parse = lambda text: parse_ratfun(text, K)
        outcome = args.handler(args, K)
    except (ParseError, InvalidSpec, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except InfiniteGroup as exc:
        outcome = Outcome(NEGATIVE, "infinite_group", {"witness": _s(exc.witness)})
    except ExceedsBound as exc:
        if exc.reason == "infinite_element":
            outcome = Outcome(NEGATIVE, "infinite_group", {"witness": _s(exc.witness)})
        else:
            outcome = Outcome(UNDECIDED, "undecided", {"reason": f"closure exceeded {exc.bound} elements"})
    except (FieldTooSmall, Inconclusive) as exc:
        outcome = Outcome(UNDECIDED, "undecided", {"reason": str(exc)})
    except (CofibredError, ValueError) as exc:
        outcome = Outcome(NEGATIVE, "error", {"error": type(exc).__name__, "message": str(exc)})
    _emit(args, outcome, K)
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
