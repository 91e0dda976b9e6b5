"""Command-line front end; run with ``python -m cqbag VERB ...``.

Exit codes: 0 pass or hold, 1 counterexample or violation, 2 usage error, 3 cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .bageval import apply, check_scaled_containment_at
from .polyrep import parse_polynomial, poly_to_ucq
from .reductions import (
    ALL_STRUCTURES, NON_TRIVIAL, ReductionInstance, build_thm1, build_thm2, build_thm3,
    cor5_compose, pleasantize,
)
from .relcore import (
    CQBagError, Const, Node, ParseError, Signature, format_query, format_structure, parse_cq, parse_query,
    parse_structure,
)
from .xform import count_by_trips, cqize, enumerate_trips, marsify, relativize
from .lab.gen import CapExceeded, GenConfig
from .lab.lemmas import REGISTRY, check_lemma
from .lab.search import search_counterexample

EXIT_OK, EXIT_FOUND, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _query(path: str):
    # reduction outputs mention aliens, so reading them back must allow x1, x2, ...
    return parse_query(_read(path), allow_aliens=True)


def _structure(path: str):
    return parse_structure(_read(path))


def parse_signature(text: str) -> Signature:
    """``E/2, P/1 ; const a, b`` (the leading ``sig`` is optional)."""
    text = text.strip()
    if text.startswith("sig"):
        text = text[3:]
    rel_part, _, const_part = text.partition(";")
    rels = []
    for item in filter(str.strip, rel_part.split(",")):
        name, slash, arity = item.partition("/")
        if not slash or not arity.strip().isdigit():
            raise ParseError(f"bad signature item {item.strip()!r}")
        rels.append((name.strip(), int(arity)))
    consts = const_part.strip()
    if consts.startswith("const"):
        consts = consts[5:]
    return Signature(rels, [c.strip() for c in consts.split(",") if c.strip()])


class Out:
    """Plain text by default; ``--format tsv`` prints key<TAB>value rows."""

    def __init__(self, fmt: str):
        self.tsv = fmt == "tsv"

    def kv(self, key: str, value) -> None:
        print(f"{key}\t{value}" if self.tsv else f"{key}: {value}")

    def text(self, body: str) -> None:
        print(body.rstrip("\n"))


def _print_cfg(out: Out, cfg: GenConfig) -> None:
    out.kv("cfg", cfg.describe())


# ---------------------------------------------------------------------------
# verbs


def cmd_eval(a, out: Out) -> int:
    q, d = _query(a.query), _structure(a.structure)
    out.kv("count", apply(q, d, naive=a.naive))
    return EXIT_OK


def cmd_contain(a, out: Out) -> int:
    r = Fraction(a.r)
    res = check_scaled_containment_at(r, _query(a.qs), _query(a.qb), _structure(a.structure))
    out.kv("result", "HOLDS" if res.holds else "VIOLATED")
    out.kv("lhs", res.lhs)
    out.kv("rhs", res.rhs)
    out.kv("scale", res.scale)
    return EXIT_OK if res.holds else EXIT_FOUND


def cmd_cqize(a, out: Out) -> int:
    out.text(format_query(cqize(parse_query(_read(a.query)))))
    return EXIT_OK


def cmd_marsify(a, out: Out) -> int:
    out.text(format_structure(marsify(_structure(a.structure))))
    return EXIT_OK


def cmd_relativize(a, out: Out) -> int:
    at = a.at
    if at.startswith("@"):
        term = Const(at[1:])
    elif at.startswith("#"):
        term = Node(at[1:])
    else:
        term = at
    out.text(format_query(relativize(term, parse_cq(_read(a.query)))))
    return EXIT_OK


def cmd_trips(a, out: Out) -> int:
    d = _structure(a.structure)
    if a.query:
        q = parse_query(_read(a.query))
        if len(q) != a.arity:
            raise UsageError(f"--arity {a.arity} but the query has {len(q)} disjuncts")
        tc = count_by_trips(q, d)
        for trip, cls, value in tc.table:
            dest = ",".join(sorted(cls.destinations)) or "-"
            out.text(f"{trip}\t{cls.tag}\t{dest}\t{value}")
        out.kv("total", tc.total)
        return EXIT_OK
    trips = enumerate_trips(a.arity, d, cap=a.cap)
    for trip, cls in trips:
        dest = ",".join(sorted(cls.destinations)) or "-"
        out.text(f"{trip}\t{cls.tag}\t{dest}")
    out.kv("trips", len(trips))
    return EXIT_OK


def cmd_poly2ucq(a, out: Out) -> int:
    out.text(format_query(poly_to_ucq(parse_polynomial(_read(a.poly)))))
    return EXIT_OK


def _need_inputs(a, k: int) -> list[str]:
    if len(a.inputs) != k:
        raise UsageError(f"reduce {a.construction} takes {k} input file(s), got {len(a.inputs)}")
    return [_read(p) for p in a.inputs]


def _build(a) -> ReductionInstance | None:
    th = a.construction
    if th == "thm1":
        s, b = _need_inputs(a, 2)
        return build_thm1(parse_cq(s), parse_query(b))
    if th == "thm2":
        s, b = _need_inputs(a, 2)
        return build_thm2(parse_polynomial(s), parse_polynomial(b))
    if th == "thm3":
        s, b = _need_inputs(a, 2)
        return build_thm3(parse_polynomial(s), parse_polynomial(b), Fraction(a.eps))
    if th == "cor5":
        s, b = _need_inputs(a, 2)
        return cor5_compose(parse_cq(s, allow_aliens=True), parse_cq(b, allow_aliens=True))
    return None


def _manifest_text(m: dict) -> str:
    return json.dumps(m, indent=2) + "\n"


def cmd_reduce(a, out: Out) -> int:
    if a.construction == "pleasantize":
        (text,) = _need_inputs(a, 1)
        result = format_query(pleasantize(parse_query(text))) + "\n"
        if a.out:
            Path(a.out).mkdir(parents=True, exist_ok=True)
            Path(a.out, "pleasant.ucq").write_text(result, encoding="utf-8")
            out.kv("wrote", Path(a.out, "pleasant.ucq"))
        else:
            out.text(result)
        return EXIT_OK
    inst = _build(a)
    files = {"qs.ucq": format_query(inst.qs) + "\n", "qb.ucq": format_query(inst.qb) + "\n",
             "manifest.txt": _manifest_text(inst.manifest())}
    if a.out:
        Path(a.out).mkdir(parents=True, exist_ok=True)
        for name, body in files.items():
            Path(a.out, name).write_text(body, encoding="utf-8")
            out.kv("wrote", Path(a.out, name))
    else:
        for name, body in files.items():
            out.text(f"== {name}")
            out.text(body)
    return EXIT_OK


def cmd_check_lemma(a, out: Out) -> int:
    names = list(REGISTRY) if a.name == "all" else [a.name]
    if any(n not in REGISTRY for n in names):
        raise UsageError(f"unknown lemma id {a.name!r}; known: {', '.join(REGISTRY)}")
    cfg = GenConfig(parse_signature(a.sig), max_vertices=a.max_size, seed=a.seed, samples=a.samples)
    _print_cfg(out, cfg)
    status = EXIT_OK
    for n in names:
        rep = check_lemma(n, cfg)
        if out.tsv:
            print("\t".join(map(str, (rep.lemma, "PASS" if rep.ok else "FAIL", rep.run, rep.passed,
                                      rep.skipped, f"{rep.elapsed:.3f}"))))
        else:
            out.text(rep.summary())
        if not rep.ok:
            status = EXIT_FOUND
            for k, v in rep.counterexample.items():
                out.kv(f"  {k}", v.strip().replace("\n", " | "))
    return status


def cmd_search(a, out: Out) -> int:
    qs, qb = _query(a.qs), _query(a.qb)
    mode = NON_TRIVIAL if a.nontrivial else ALL_STRUCTURES
    inst = ReductionInstance(qs, qb, Fraction(a.r), mode, "cli")
    sig = qs.signature().union(qb.signature())
    if a.sig:
        sig = sig.union(parse_signature(a.sig))
    exhaustive = a.samples == 0
    cfg = GenConfig(sig, max_vertices=a.max_size, seed=a.seed, samples=max(a.samples, 1), cap=a.cap)
    _print_cfg(out, cfg)
    hit = search_counterexample(inst, cfg, exhaustive=exhaustive)
    if hit is None:
        out.kv("result", "NONE FOUND")
        return EXIT_OK
    out.kv("result", "COUNTEREXAMPLE")
    out.kv("lhs", hit.lhs)
    out.kv("rhs", hit.rhs)
    out.kv("scale", hit.scale)
    out.text(format_structure(hit.structure))
    return EXIT_FOUND


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cqbag", description="Bag-semantics query toolkit.")
    p.add_argument("--format", choices=("text", "tsv"), default="text")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("eval", help="count answers of a (U)CQ in a structure")
    s.add_argument("--query", required=True)
    s.add_argument("--structure", required=True)
    s.add_argument("--naive", action="store_true")
    s.set_defaults(fn=cmd_eval)

    s = sub.add_parser("contain", help="check r * (qs -> D) <= (qb -> D) on one structure")
    s.add_argument("--r", default="1")
    s.add_argument("--qs", required=True)
    s.add_argument("--qb", required=True)
    s.add_argument("--structure", required=True)
    s.set_defaults(fn=cmd_contain)

    s = sub.add_parser("cqize", help="turn a pleasant UCQ into one CQ")
    s.add_argument("--query", required=True)
    s.set_defaults(fn=cmd_cqize)

    s = sub.add_parser("marsify", help="add venus and mars to a base structure")
    s.add_argument("--structure", required=True)
    s.set_defaults(fn=cmd_marsify)

    s = sub.add_parser("relativize", help="relativize a CQ at a term")
    s.add_argument("--at", required=True, help="variable name, @constant, or #vertex")
    s.add_argument("--query", required=True)
    s.set_defaults(fn=cmd_relativize)

    s = sub.add_parser("trips", help="list the trips of a good structure")
    s.add_argument("--arity", type=int, required=True)
    s.add_argument("--structure", required=True)
    s.add_argument("--query", help="also count this UCQ trip by trip")
    s.add_argument("--cap", type=int, default=100_000)
    s.set_defaults(fn=cmd_trips)

    s = sub.add_parser("poly2ucq", help="encode a polynomial as a UCQ")
    s.add_argument("--poly", required=True)
    s.set_defaults(fn=cmd_poly2ucq)

    s = sub.add_parser("reduce", help="build a reduction instance")
    s.add_argument("construction", choices=("thm1", "thm2", "thm3", "cor5", "pleasantize"))
    s.add_argument("--eps", default="1")
    s.add_argument("--in", dest="inputs", nargs="+", required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_reduce)

    s = sub.add_parser("check-lemma", help="run one registered identity (or 'all')")
    s.add_argument("--name", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-size", type=int, default=4)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--sig", default="E/2, A/1")
    s.set_defaults(fn=cmd_check_lemma)

    s = sub.add_parser("search", help="look for a structure violating containment")
    s.add_argument("--qs", required=True)
    s.add_argument("--qb", required=True)
    s.add_argument("--r", default="1")
    s.add_argument("--max-size", type=int, default=3)
    s.add_argument("--nontrivial", action="store_true")
    s.add_argument("--samples", type=int, default=0, help="0 = exhaustive")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--sig", help="extra relations/constants to range over")
    s.add_argument("--cap", type=int, default=2_000_000)
    s.set_defaults(fn=cmd_search)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    out = Out(a.format)
    try:
        return a.fn(a, out)
    except CapExceeded as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, CQBagError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
