"""Corpus files of worked examples and the runner producing reports.

A corpus is a YAML document::

    schema: 1
    entries:
      - id: chebyshev-2-3
        field: Q
        define: {X: "2*z^2 - 1", Y: "4*z^3 - 3*z", H: {compose: [X, Y]}}
        assert:
          - op: decide
            args: [X, Y]
            expected: "yes"
            provenance: paper

A definition is an expression string or ``{compose: [F, G, ...]}`` naming
earlier definitions.  Arguments are defined names, expression strings or integers.  Expected
values are strings compared after canonicalization: rational functions are
parsed and compared as values, everything else is compared as text.
Provenance is ``paper``, ``trivial`` or ``derived(<oracle>)``.
"""

from __future__ import annotations

import re
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources

import yaml

from . import __version__
from .errors import CofibredError, ExceedsBound, Inconclusive, ParseError, SchemaError
from .parse import parse_field, parse_ratfun
from .ratfun import RatFun

SCHEMA_VERSION = 1
REPORT_VERSION = 1
_PROVENANCE = re.compile(r"^(paper|trivial|derived\([^()]+\))$")


@dataclass(frozen=True)
class Assertion:
    op: str
    args: tuple
    expected: str
    provenance: str
    kind: str = "auto"  # how ``expected`` is compared: auto, ratfun or text


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    field_spec: str
    definitions: dict
    assertions: tuple


# -- operations ----------------------------------------------------------------------
def _series_text(s):
    return s.to_str()


def _op_compose(F, G):
    return F.compose(G)


def _op_equal(F, G):
    return F == G


def _op_invariant(F, mu):
    """``F ∘ mu == F``."""
    return F.compose(mu) == F


def _op_degree(F):
    return F.degree


def _op_chebyshev(n):
    from .families import chebyshev

    return chebyshev(n)


def _op_compositum_degree(X, Y):
    from .lattice import compositum

    return compositum(X, Y).degree_d


def _op_member(H, X):
    from .lattice import left_membership

    A = left_membership(H, X)
    return "none" if A is None else A


def _op_solve_degrees(X, Y, a, b):
    """``deg A, deg B`` of the minimal solution or ``none``."""
    from .lattice import solve_AX_eq_BY

    sols = solve_AX_eq_BY(X, Y, a, b)
    if not sols:
        return "none"
    return f"{sols[0].A.degree},{sols[0].B.degree}"


def _op_identity(A, X, B, Y):
    return A.compose(X) == B.compose(Y)


def _op_certify(X, Y, A, B):
    from .lattice import good_solution_certify

    c = good_solution_certify(X, Y, A, B)
    return c.verdict if c.good else f"{c.verdict}: {c.reason}"


def _op_decide(X, Y):
    from .lattice import minimal_intersection_decide

    return minimal_intersection_decide(X, Y).verdict


def _op_deck_order(X):
    from .theorems import deck_group

    d = deck_group(X)
    if not d.complete:
        raise Inconclusive(f"only {d.group.order} of {d.true_order} deck maps are defined over {X.field.spec}")
    return d.group.order


def _op_is_galois(X):
    from .theorems import is_galois

    return is_galois(X).is_galois


def _op_equivariant_under(V, *gens):
    from .moebius import MoebiusMap, group_closure
    from .theorems import equivariance_solve

    G = group_closure([MoebiusMap.from_ratfun(g) for g in gens], field=V.field)
    w = equivariance_solve(V, G)
    return "none" if w is None else ("injective" if w.injective else "non_injective")


def _op_closure_order(*gens):
    from .moebius import MoebiusMap, group_closure

    return group_closure([MoebiusMap.from_ratfun(g) for g in gens], field=gens[0].field).order


def _op_closure_type(*gens):
    from .moebius import MoebiusMap, group_closure

    return group_closure([MoebiusMap.from_ratfun(g) for g in gens], field=gens[0].field).classification


def _op_normal_form(Y, n):
    from .theorems import equivariant_normal_form

    f = equivariant_normal_form(Y, n, strict=False)
    return "none" if f is None else f"s={f.s}; R={f.R}"


def _op_boettcher(H, N):
    from .boettcher import boettcher_solve

    return _series_text(boettcher_solve(H, N))


def _op_transition_order(H, N):
    from .boettcher import transition_group

    G = transition_group(H, N)
    if not (G.is_closed() and G.is_abelian()):
        return "not_closed"
    return G.order_n


OPERATIONS = {
    "compose": (_op_compose, "ff"),
    "equal": (_op_equal, "ff"),
    "invariant": (_op_invariant, "ff"),
    "degree": (_op_degree, "f"),
    "chebyshev": (_op_chebyshev, "i"),
    "compositum_degree": (_op_compositum_degree, "ff"),
    "member": (_op_member, "ff"),
    "solve_degrees": (_op_solve_degrees, "ffii"),
    "identity": (_op_identity, "ffff"),
    "certify": (_op_certify, "ffff"),
    "decide": (_op_decide, "ff"),
    "deck_order": (_op_deck_order, "f"),
    "is_galois": (_op_is_galois, "f"),
    "equivariant_under": (_op_equivariant_under, "f+"),
    "closure_order": (_op_closure_order, "+"),
    "closure_type": (_op_closure_type, "+"),
    "normal_form": (_op_normal_form, "fi"),
    "boettcher": (_op_boettcher, "fi"),
    "transition_order": (_op_transition_order, "fi"),
}


# -- loading -----------------------------------------------------------------------
def _require(cond, msg):
    if not cond:
        raise SchemaError(msg)


def _load_entry(raw, where):
    _require(isinstance(raw, dict), f"{where}: entry must be a mapping")
    unknown = set(raw) - {"id", "field", "define", "assert", "note"}
    _require(not unknown, f"{where}: unknown keys {sorted(unknown)}")
    _require(isinstance(raw.get("id"), str) and raw["id"], f"{where}: missing id")
    eid = raw["id"]
    field = raw.get("field", "Q")
    _require(isinstance(field, str), f"{eid}: field must be a string")
    define = raw.get("define", {}) or {}
    _require(isinstance(define, dict), f"{eid}: define must be a mapping")
    seen = set()
    for k, v in define.items():
        _require(isinstance(k, str) and k not in ("z", "w"), f"{eid}: bad name {k!r}")
        if isinstance(v, dict):
            parts = v.get("compose")
            _require(
                set(v) == {"compose"} and isinstance(parts, list) and len(parts) >= 2,
                f"{eid}: definition of {k} must be a string or {{compose: [names]}}",
            )
            _require(all(p in seen for p in parts), f"{eid}: {k} composes names not defined before it")
        else:
            _require(isinstance(v, str), f"{eid}: definition of {k} must be a string")
        seen.add(k)
    asserts = raw.get("assert")
    _require(isinstance(asserts, list) and asserts, f"{eid}: assert must be a non-empty list")
    out = []
    for i, a in enumerate(asserts):
        _require(isinstance(a, dict), f"{eid}[{i}]: assertion must be a mapping")
        unknown = set(a) - {"op", "args", "expected", "provenance", "compare"}
        _require(not unknown, f"{eid}[{i}]: unknown keys {sorted(unknown)}")
        op = a.get("op")
        _require(op in OPERATIONS, f"{eid}[{i}]: unknown operation {op!r}")
        args = a.get("args", [])
        _require(isinstance(args, list), f"{eid}[{i}]: args must be a list")
        _require("expected" in a, f"{eid}[{i}]: missing expected value")
        prov = a.get("provenance")
        _require(isinstance(prov, str) and _PROVENANCE.match(prov), f"{eid}[{i}]: bad provenance {prov!r}")
        kind = a.get("compare", "auto")
        _require(kind in ("auto", "ratfun", "text"), f"{eid}[{i}]: bad compare mode {kind!r}")
        out.append(Assertion(op, tuple(args), _text(a["expected"]), prov, kind))
    return CorpusEntry(eid, field, dict(define), tuple(out))


def _text(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def load_corpus(source):
    """Entries from a path, a YAML string or an already parsed document."""
    if isinstance(source, (dict, list)):
        doc = source
    else:
        text = source
        if "\n" not in str(source):
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        try:
            doc = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise SchemaError(f"invalid YAML: {exc}") from exc
    _require(isinstance(doc, dict), "corpus must be a mapping with 'schema' and 'entries'")
    _require(doc.get("schema") == SCHEMA_VERSION, f"unsupported schema version {doc.get('schema')!r}")
    raw = doc.get("entries")
    _require(isinstance(raw, list), "'entries' must be a list")
    entries = [_load_entry(r, f"entry {i}") for i, r in enumerate(raw)]
    ids = [e.id for e in entries]
    dup = sorted({i for i in ids if ids.count(i) > 1})
    _require(not dup, f"duplicate ids {dup}")
    return entries


def builtin_corpora():
    """Names of the corpus files shipped with the package."""
    root = resources.files("cofibred") / "corpora"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".yaml"))


def builtin_corpus_path(name):
    return str(resources.files("cofibred") / "corpora" / name)


# -- running -----------------------------------------------------------------------
def _canonical(value):
    if isinstance(value, RatFun):
        return value.to_str()
    return _text(value)


def _matches(computed, expected, kind, field):
    if kind == "text":
        return _canonical(computed) == expected
    if isinstance(computed, RatFun) or kind == "ratfun":
        try:
            return isinstance(computed, RatFun) and parse_ratfun(expected, field) == computed
        except ParseError:
            return False
    return _canonical(computed) == expected


def _resolve(arg, spec, env, field):
    if spec == "i":
        if not isinstance(arg, int):
            raise SchemaError(f"expected an integer argument, got {arg!r}")
        return arg
    if isinstance(arg, str) and arg in env:
        return env[arg]
    if isinstance(arg, int):
        return RatFun.const(arg, field)
    return parse_ratfun(str(arg), field)


def _arg_specs(pattern, count):
    if pattern.endswith("+"):
        head = pattern[:-1]
        return list(head) + ["f"] * (count - len(head))
    if len(pattern) != count:
        raise SchemaError(f"expected {len(pattern)} arguments, got {count}")
    return list(pattern)


def run_entry(entry: CorpusEntry):
    t0 = time.perf_counter()
    field = parse_field(entry.field_spec)
    env = {}
    for name, expr in entry.definitions.items():
        if isinstance(expr, dict):
            value = env[expr["compose"][-1]]
            for part in reversed(expr["compose"][:-1]):
                value = env[part].compose(value)
            env[name] = value
        else:
            env[name] = parse_ratfun(expr, field)
    results = []
    for idx, a in enumerate(entry.assertions):
        fn, pattern = OPERATIONS[a.op]
        rec = {
            "index": idx,
            "op": a.op,
            "args": [_text(x) for x in a.args],
            "expected": a.expected,
            "provenance": a.provenance,
        }
        try:
            specs = _arg_specs(pattern, len(a.args))
            args = [_resolve(x, s, env, field) for x, s in zip(a.args, specs)]
            computed = fn(*args)
        except (Inconclusive, ExceedsBound) as exc:
            rec.update(verdict="undecided", reason=str(exc))
            results.append(rec)
            continue
        except CofibredError as exc:
            computed = f"error: {type(exc).__name__}"
            rec["detail"] = str(exc)
        rec["computed"] = _canonical(computed)
        rec["verdict"] = "pass" if _matches(computed, a.expected, a.kind, field) else "fail"
        if rec["verdict"] == "fail":
            rec["diff"] = {"expected": a.expected, "computed": rec["computed"]}
        results.append(rec)
    elapsed = time.perf_counter() - t0
    return {"id": entry.id, "field": field.spec, "assertions": results}, elapsed


def run_corpus(source, jobs: int = 1) -> dict:
    """Run every assertion of a corpus and assemble the report.

    Entries are independent; with ``jobs > 1`` they run on a thread pool and
    the report keeps the file order.  Apart from the ``timing`` mappings the
    report depends only on the corpus and the tool version.
    """
    entries = load_corpus(source)
    t0 = time.perf_counter()
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(run_entry, entries))
    else:
        outcomes = [run_entry(e) for e in entries]
    summary = {"pass": 0, "fail": 0, "undecided": 0}
    out_entries = []
    entry_times = {}
    for rec, elapsed in outcomes:
        for a in rec["assertions"]:
            summary[a["verdict"]] += 1
        out_entries.append(rec)
        entry_times[rec["id"]] = round(elapsed, 6)
    return {
        "report_version": REPORT_VERSION,
        "tool": "cofibred",
        "tool_version": __version__,
        "schema": SCHEMA_VERSION,
        "source": source if isinstance(source, str) and "\n" not in source else "<inline>",
        "entries": out_entries,
        "summary": summary,
        "undecided": [
            {"id": r["id"], "index": a["index"], "reason": a["reason"]}
            for r in out_entries
            for a in r["assertions"]
            if a["verdict"] == "undecided"
        ],
        "ok": summary["fail"] == 0,
        "timing": {"total_s": round(time.perf_counter() - t0, 6), "entries_s": entry_times},
    }


def strip_timing(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timing"}


def report_text(report: dict) -> str:
    lines = []
    for e in report["entries"]:
        for a in e["assertions"]:
            tag = a["verdict"].upper()
            line = f"{tag:9} {e['id']}[{a['index']}] {a['op']}({', '.join(a['args'])})"
            if a["verdict"] == "fail":
                line += f"\n          expected: {a['expected']}\n          computed: {a['computed']}"
            elif a["verdict"] == "undecided":
                line += f"  ({a['reason']})"
            lines.append(line)
    s = report["summary"]
    lines.append(f"summary: {s['pass']} pass, {s['fail']} fail, {s['undecided']} undecided")
    return "\n".join(lines)
