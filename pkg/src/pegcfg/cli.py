"""Command-line frontend.

Exit codes: 0 when the query succeeded or the checked property holds,
1 when a checked property fails or two languages differ, 2 for usage,
parse, or precondition errors.  Every report is available as plain text
or as a JSON document (``--format json-like``); sets are always sorted by
length then lexicographically, so identical invocations produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analysis import (
    RegularPartition,
    compute_tables,
    is_ll1,
    is_ll_regular,
    is_right_linear,
    is_strong_llk,
    prefix_property,
)
from .cfg import cfg_match
from .equivalence import compare_languages
from .exprs import END_MARKER
from .grammar import Grammar, GrammarError
from .peg import peg_match, require_complete
from .textfmt import load_grammar_text, parse_partition_blocks, render_grammar
from .transforms import (
    TransformedGrammar,
    erase_predicates,
    phi_after,
    phi_before,
    pi_prefix,
    reorder_ll1,
    rho_ll_regular,
)

_SORT = lambda s: (len(s), s)


def _load_grammar(path: str) -> Grammar:
    return load_grammar_text(Path(path).read_text(encoding="utf-8"))

def _load_partition(path: str) -> RegularPartition:
    return RegularPartition(tuple(parse_partition_blocks(Path(path).read_text(encoding="utf-8"))))


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "text":
        for line in payload["text"]:
            print(line)
    else:
        doc = {key: value for key, value in payload.items() if key != "text"}
        print(json.dumps(doc, indent=2, sort_keys=True))


def _membership_sets(g: Grammar, max_len: int, markers: int, sem: str) -> list[str]:
    import itertools

    alphabet = sorted(set(g.matching_alphabet) - ({END_MARKER} if markers else set()))
    out = []
    if sem == "peg":
        require_complete(g)
    for n in range(max_len + 1):
        for tup in itertools.product(alphabet, repeat=n):
            x = "".join(tup)
            text = x + END_MARKER * markers
            accepted = {len(x), len(text)}
            if sem == "cfg":
                hit = bool(accepted & cfg_match(g, text).lengths)
            else:
                hit = peg_match(g, text, memo=True).consumed in accepted
            if hit:
                out.append(x)
    return sorted(out, key=_SORT)


def _cmd_validate(args) -> tuple[int, dict]:
    g = _load_grammar(args.grammar)
    text = [
        f"ok: {len(g.nonterminals)} non-terminals, {len(g.terminals)} terminals"
        + (" (uses the end marker)" if g.uses_marker else "")
    ]
    return 0, {
        "command": "validate",
        "nonterminals": list(g.nonterminals),
        "terminals": sorted(g.terminals),
        "uses_marker": g.uses_marker,
        "text": text,
    }


def _cmd_match(args) -> tuple[int, dict]:
    g = _load_grammar(args.grammar)
    if END_MARKER in args.input:
        raise GrammarError("the end marker may not appear in inputs; use --markers")
    text = args.input + END_MARKER * args.markers
    if args.sem == "cfg":
        lengths = sorted(cfg_match(g, text).lengths)
        shown = "matches: {" + ", ".join(map(str, lengths)) + "}" if lengths else "no match"
        return 0, {"command": "match", "semantics": "cfg", "input": text, "lengths": lengths, "text": [shown]}
    outcome = peg_match(g, text, memo=args.memo)
    return 0, {
        "command": "match",
        "semantics": "peg",
        "input": text,
        "consumed": outcome.consumed,
        "text": [str(outcome)],
    }


def _cmd_enumerate(args) -> tuple[int, dict]:
    g = _load_grammar(args.grammar)
    strings = _membership_sets(g, args.max_len, args.markers, args.sem)
    header = f"{args.sem} language, max-len {args.max_len}, markers {args.markers}:"
    return 0, {
        "command": "enumerate",
        "semantics": args.sem,
        "max_len": args.max_len,
        "markers": args.markers,
        "strings": strings,
        "text": [header, *(f"  {s if s else '(empty string)'}" for s in strings)],
    }


def _cmd_analyze(args) -> tuple[int, dict]:
    g = _load_grammar(args.grammar)
    tables = compute_tables(g, args.k)
    g = tables.grammar
    lines = [f"k = {args.k}"]
    nullable = {name: tables.nullable[name] for name in g.nonterminals}
    first = {name: sorted(tables.first[name], key=_SORT) for name in g.nonterminals}
    follow = {name: sorted(tables.follow[name], key=_SORT) for name in g.nonterminals}
    lines.append("nullable: " + ", ".join(f"{n}={'yes' if nullable[n] else 'no'}" for n in g.nonterminals))
    for name in g.nonterminals:
        firsts = ", ".join(s if s else "eps" for s in first[name])
        follows = ", ".join(follow[name])
        lines.append(f"{name}: first {{{firsts}}} follow {{{follows}}}")
    return 0, {
        "command": "analyze",
        "k": args.k,
        "nullable": nullable,
        "first": first,
        "follow": follow,
        "text": lines,
    }


def _cmd_check(args) -> tuple[int, dict]:
    g = _load_grammar(args.grammar)
    kind = args.cls
    if kind == "ll1":
        report = is_ll1(g)
    elif kind == "sllk":
        report = is_strong_llk(g, args.k)
    elif kind == "right-linear":
        holds = is_right_linear(g)
        text = ["holds" if holds else "fails"]
        return (0 if holds else 1), {"command": "check", "class": kind, "holds": holds, "text": text}
    elif kind == "prefix":
        holds = prefix_property(g)
        text = ["holds" if holds else "fails"]
        return (0 if holds else 1), {"command": "check", "class": kind, "holds": holds, "text": text}
    else:  # ll-regular
        if not args.partition:
            raise GrammarError("--partition is required for the LL-regular check")
        report = is_ll_regular(g, _load_partition(args.partition))
    lines = ["holds" if report.holds else "fails"]
    violations = []
    for v in report.violations:
        violations.append({"nonterminal": v.nonterminal, "location": v.location, "witnesses": list(v.witnesses)})
        lines.append(f"  {v.nonterminal}: {v.location}  [{', '.join(v.witnesses)}]")
    return (0 if report.holds else 1), {
        "command": "check",
        "class": kind,
        "holds": report.holds,
        "violations": violations,
        "text": lines,
    }


def _cmd_transform(args) -> tuple[int, dict]:
    g = _load_grammar(args.grammar)
    kind = args.kind
    if kind == "reorder-ll1":
        result = TransformedGrammar(reorder_ll1(g), "reorder-ll1", 0)
    elif kind == "erase":
        result = TransformedGrammar(erase_predicates(g), "erase", 0)
    elif kind == "phi-before":
        result = phi_before(g, args.k)
    elif kind == "phi-after":
        result = phi_after(g, args.k)
    elif kind == "pi":
        result = pi_prefix(g)
    else:  # rho
        if not args.partition:
            raise GrammarError("--partition is required for the LL-regular transform")
        result = rho_ll_regular(g, _load_partition(args.partition))
    rendered = render_grammar(result.grammar, result.provenance)
    Path(args.output).write_text(rendered, encoding="utf-8")
    note = f"wrote {args.output}; append {result.marker_arity} end marker(s) to inputs"
    return 0, {
        "command": "transform",
        "kind": kind,
        "output": args.output,
        "marker_arity": result.marker_arity,
        "text": [note],
    }


def _cmd_compare(args) -> tuple[int, dict]:
    g = _load_grammar(args.grammar)
    against = _load_grammar(args.against) if args.against else None
    report = compare_languages(g, args.max_len, args.markers, against=against)
    lines = [f"verdict: {report.verdict}"]
    if report.only_cfg:
        lines.append("only-cfg: " + ", ".join(s if s else "(empty string)" for s in report.only_cfg))
    if report.only_peg:
        lines.append("only-peg: " + ", ".join(s if s else "(empty string)" for s in report.only_peg))
    lines.append(f"common: {report.common}")
    code = 0 if report.verdict == "equal" else 1
    return code, {
        "command": "compare",
        "verdict": report.verdict,
        "only_cfg": list(report.only_cfg),
        "only_peg": list(report.only_peg),
        "common": report.common,
        "max_len": report.max_len,
        "markers": report.markers,
        "text": lines,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pegcfg", description=__doc__)
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--format", choices=("text", "json-like"), default="text")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=argparse.ArgumentParser)

    def add_parser(name: str, help: str):
        return sub.add_parser(name, help=help, parents=[shared])

    p = add_parser("validate", "parse a grammar file and report its shape")
    p.add_argument("grammar")
    p.set_defaults(handler=_cmd_validate)

    p = add_parser("match", "match one input under either semantics")
    p.add_argument("grammar")
    p.add_argument("--sem", choices=("cfg", "peg"), required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--markers", type=int, default=0)
    p.add_argument("--memo", action="store_true", help="packrat table for the peg side")
    p.set_defaults(handler=_cmd_match)

    p = add_parser("enumerate", "bounded exhaustive language listing")
    p.add_argument("grammar")
    p.add_argument("--sem", choices=("cfg", "peg"), required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--markers", type=int, default=0)
    p.set_defaults(handler=_cmd_enumerate)

    p = add_parser("analyze", "nullable / first_k / follow_k tables")
    p.add_argument("grammar")
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(handler=_cmd_analyze)

    p = add_parser("check", "grammar-class membership")
    p.add_argument("grammar")
    p.add_argument("--class", dest="cls", required=True,
                   choices=("ll1", "sllk", "right-linear", "prefix", "ll-regular"))
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--partition")
    p.set_defaults(handler=_cmd_check)

    p = add_parser("transform", "apply a language-preserving rewrite")
    p.add_argument("grammar")
    p.add_argument("--kind", required=True,
                   choices=("reorder-ll1", "phi-before", "phi-after", "pi", "rho", "erase"))
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--partition")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(handler=_cmd_transform)

    p = add_parser("compare", "diff the two semantics by enumeration")
    p.add_argument("grammar")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--markers", type=int, default=0)
    p.add_argument("--against", help="grammar for the non-deterministic side")
    p.set_defaults(handler=_cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, payload = args.handler(args)
    except GrammarError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    payload["exit"] = code
    _emit(payload, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
