"""Command-line front end.

Commands: classify, verify (coset enumeration only), abelianize, shape,
prune, simplify (emit the Tietze trace), reflect, corpus.

The graph argument accepts a template descriptor (``L(4)``,
``L(5,2;out=1)``, ...) or a path to an edge-list file.  Exit codes:
0 = verdict produced, 2 = input error, 3 = resource limit reached
(Unknown due to bounds, or coset enumeration exceeding its limit).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional

from .classify import (
    ClassifyConfig,
    Verdict,
    classify,
    cross_verify,
    verdict_to_json,
)
from .corpus import CORPUS, CORPUS_VERIFY_CAP, run_entry
from .cosets import Exceeded, Order, enumerate_cosets
from .digraphs import (
    Digraph,
    DigraphError,
    analyze,
    build_template,
    parse_digraph,
    prune,
    recognize_shape,
    reflect_digraph,
)
from .oracle import OracleConfig
from .presentations import (
    PresentationError,
    abelian_invariants,
    instantiate,
    simplify_to_cyclic,
)
from .words import (
    Word,
    WordSyntaxError,
    cyclic_reduce,
    exponent_profile,
    parse_word,
    reflect_word,
)


class InputError(Exception):
    pass


def _load_graph(spec: str) -> Digraph:
    text = spec.strip()
    if text.startswith("L("):
        try:
            return build_template(text)
        except DigraphError as exc:
            raise InputError(f"bad template: {exc}") from exc
    try:
        with open(spec, "r", encoding="utf-8") as handle:
            content = handle.read()
    except OSError as exc:
        raise InputError(f"cannot read graph file {spec!r}: {exc}") from exc
    try:
        return parse_digraph(content)
    except DigraphError as exc:
        raise InputError(f"bad edge list: {exc}") from exc


def _load_word(text: str) -> Word:
    try:
        return parse_word(text)
    except WordSyntaxError as exc:
        raise InputError(f"bad word: {exc}") from exc


def _config(args) -> ClassifyConfig:
    default_max = int(os.environ.get("DIGRAPH_GROUPS_MAX_COSETS", 1_000_000))
    oracle = OracleConfig(
        max_rules=args.oracle_rule_cap,
        max_word_len=args.oracle_word_len,
        conj_factors=args.oracle_conj_factors,
        conj_len=args.oracle_conj_len,
        max_degree=args.oracle_max_degree,
        probe_witness_len=args.oracle_probe_len,
    )
    return ClassifyConfig(
        oracle=oracle,
        verify_cap=args.verify_cap,
        max_cosets=args.max_cosets if args.max_cosets is not None else default_max,
    )


def _print_verdict_text(v: Verdict, out) -> None:
    print(f"status: {v.status}", file=out)
    if v.case != "none":
        print(f"case: {v.case}", file=out)
    if v.order is not None:
        print(f"order: {v.order}", file=out)
    if v.ab_order is not None:
        print(f"abelianization order: {v.ab_order}", file=out)
    if v.power_word is not None:
        print(f"quotient power word: {v.power_word}", file=out)
    if v.rank_bound:
        print(f"rank bound: {set(v.rank_bound)}", file=out)
    if v.shape is not None:
        print(f"shape: {v.shape.descriptor()}", file=out)
    if v.pruned is not None and v.pruned.removed:
        removed = ", ".join(f"{vtx} via ({a[0]},{a[1]})" for vtx, a in v.pruned.removed)
        print(f"pruned: {removed}", file=out)
    if v.oracle is not None:
        kind = v.oracle.evidence.to_json().get("kind")
        print(f"oracle: {v.oracle.answer} ({kind})", file=out)
    for cert in v.certificates:
        print(f"certificate: {json.dumps(cert.to_json())}", file=out)
    if v.reason:
        print(f"reason: {v.reason}", file=out)
    if v.hypothetical:
        print(f"hypothetical (if the power equality held): {json.dumps(v.hypothetical)}", file=out)


def cmd_classify(args, out) -> int:
    g = _load_graph(args.graph)
    R = _load_word(args.word)
    config = _config(args)
    verdict = classify(g, R, config)
    payload = verdict_to_json(verdict, stable=args.stable)
    if args.verify:
        report = cross_verify(g, R, verdict, config)
        payload["verification"] = report.to_json()
    if args.json:
        print(json.dumps(payload, indent=2), file=out)
    else:
        _print_verdict_text(verdict, out)
        if args.verify:
            report = cross_verify(g, R, verdict, config)
            for name, ok, detail in report.checks:
                mark = "pass" if ok else "FAIL"
                print(f"verify {name}: {mark}" + (f" ({detail})" if detail else ""), file=out)
            if not report.passed:
                return 1
    if verdict.status == "Unknown":
        return 3
    return 0


def cmd_verify(args, out) -> int:
    g = _load_graph(args.graph)
    R = _load_word(args.word)
    config = _config(args)
    P = instantiate(g, R)
    result, table = enumerate_cosets(P, config.max_cosets)
    if isinstance(result, Order):
        print(f"Order({result.order})", file=out)
        if args.dump_table and table is not None:
            print(table.dump_tsv(), file=out)
        return 0
    print(f"Exceeded({result.limit})", file=out)
    return 3


def cmd_abelianize(args, out) -> int:
    g = _load_graph(args.graph)
    R = _load_word(args.word)
    invariants = abelian_invariants(instantiate(g, R))
    if args.json:
        print(json.dumps([str(d) for d in invariants]), file=out)
    else:
        pretty = ", ".join(str(d) for d in invariants) if invariants else "trivial"
        print(f"invariant factors: ({pretty})", file=out)
    return 0


def cmd_shape(args, out) -> int:
    g = _load_graph(args.graph)
    try:
        shape = recognize_shape(g)
    except DigraphError as exc:
        raise InputError(str(exc)) from exc
    if args.json:
        data = shape.to_json()
        data["witness"] = shape.witness
        print(json.dumps(data, indent=2), file=out)
    else:
        print(shape.descriptor(), file=out)
        if shape.witness:
            mapping = ", ".join(
                f"{k}->{v}" for k, v in sorted(shape.witness.items(), key=lambda kv: kv[0])
            )
            print(f"witness: {mapping}", file=out)
    return 0


def cmd_prune(args, out) -> int:
    g = _load_graph(args.graph)
    kind = {"source": "source-leaves", "sink": "sink-leaves", "both": "both"}[args.kind]
    result = prune(g, kind)
    if args.json:
        print(
            json.dumps(
                {
                    "removed": [[vtx, list(arc)] for vtx, arc in result.removed],
                    "arcs": [list(a) for a in result.result.sorted_arcs()],
                    "vertices": result.result.sorted_vertices(),
                },
                indent=2,
            ),
            file=out,
        )
    else:
        for vtx, arc in result.removed:
            print(f"removed {vtx} via ({arc[0]},{arc[1]})", file=out)
        for u, v in result.result.sorted_arcs():
            print(f"{u} {v}", file=out)
    return 0


def cmd_simplify(args, out) -> int:
    g = _load_graph(args.graph)
    R = cyclic_reduce(_load_word(args.word))
    if R.generators() != {"a", "b"}:
        raise InputError("relator must involve both letters")
    prof = exponent_profile(R)
    notes = []
    if abs(prof.alpha) >= 2 and abs(prof.beta) == 1:
        g = reflect_digraph(g)
        R = cyclic_reduce(reflect_word(R))
        prof = exponent_profile(R)
        notes.append("reflected the instance (|beta| = 1)")
    if abs(prof.alpha) == 1 and abs(prof.beta) >= 2:
        pruned = prune(g, "source-leaves")
        if pruned.removed:
            notes.append(f"pruned {len(pruned.removed)} source leaves")
        g = pruned.result
    elif abs(prof.alpha) == 1 and abs(prof.beta) == 1:
        pruned = prune(g, "both")
        if pruned.removed:
            notes.append(f"pruned {len(pruned.removed)} leaves")
        g = pruned.result
    try:
        shape = recognize_shape(g)
    except DigraphError as exc:
        raise InputError(str(exc)) from exc
    try:
        result = simplify_to_cyclic(instantiate(g, R), shape, prof)
    except PresentationError as exc:
        print(f"no cyclic reduction: {exc}", file=out)
        return 0
    if args.json:
        print(
            json.dumps(
                {
                    "notes": notes,
                    "trace": [step.to_json() for step in result.trace],
                    "final": result.final.to_json(),
                },
                indent=2,
            ),
            file=out,
        )
    else:
        for note in notes:
            print(f"note: {note}", file=out)
        for step in result.trace:
            print(json.dumps(step.to_json()), file=out)
        print(f"final: {result.final}", file=out)
    return 0


def cmd_reflect(args, out) -> int:
    if not args.graph and not args.word:
        raise InputError("reflect needs --graph and/or --word")
    if args.graph:
        g = reflect_digraph(_load_graph(args.graph))
        for u, v in g.sorted_arcs():
            print(f"{u} {v}", file=out)
        for v in g.sorted_vertices():
            if not g.undirected_neighbors(v):
                print(f"vertex {v}", file=out)
    if args.word:
        print(reflect_word(_load_word(args.word)), file=out)
    return 0


def cmd_corpus(args, out) -> int:
    config = _config(args)
    if not args.run:
        for entry in CORPUS:
            graph_disp = entry.graph if entry.graph.startswith("L(") else "<edge list>"
            expected = ", ".join(f"{k}={v}" for k, v in entry.expected.items())
            print(
                f"{entry.name:24s} {graph_disp:20s} {entry.relator:14s} {expected}",
                file=out,
            )
        return 0
    failures = 0
    for entry in sorted(CORPUS, key=lambda e: e.name):
        ok, verdict, problems = run_entry(entry, config)
        mark = "PASS" if ok else "FAIL"
        print(f"{mark} {entry.name}: {verdict.status}"
              + (f" case {verdict.case}" if verdict.case != "none" else "")
              + (f" order {verdict.order}" if verdict.order is not None else ""),
              file=out)
        for problem in problems:
            print(f"     {problem}", file=out)
        failures += 0 if ok else 1
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="digraph-groups",
        description="classify balanced digraph groups with verified certificates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, graph=True, word=True):
        if graph:
            p.add_argument("--graph", required=True, help="template descriptor or edge-list file")
        if word:
            p.add_argument("--word", required=True, help="relator over a b A B")
        p.add_argument("--json", action="store_true", help="JSON output")
        p.add_argument("--stable", action="store_true", help="omit timings from JSON")
        p.add_argument("--max-cosets", type=int, default=None)
        p.add_argument("--verify-cap", type=int, default=10_000)
        p.add_argument("--oracle-max-degree", type=int, default=5)
        p.add_argument("--oracle-rule-cap", type=int, default=5000)
        p.add_argument("--oracle-word-len", type=int, default=64)
        p.add_argument("--oracle-conj-factors", type=int, default=3)
        p.add_argument("--oracle-conj-len", type=int, default=6)
        p.add_argument("--oracle-probe-len", type=int, default=5)

    p = sub.add_parser("classify", help="run the full decision procedure")
    add_common(p)
    p.add_argument("--verify", action="store_true", help="cross-verify the verdict")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="coset enumeration only")
    add_common(p)
    p.add_argument("--dump-table", action="store_true", help="dump the coset table as TSV")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("abelianize", help="Smith-Normal-Form invariant factors")
    add_common(p)
    p.set_defaults(func=cmd_abelianize)

    p = sub.add_parser("shape", help="recognize the template class")
    add_common(p, word=False)
    p.set_defaults(func=cmd_shape)

    p = sub.add_parser("prune", help="recursively remove leaves")
    add_common(p, word=False)
    p.add_argument("--kind", choices=["source", "sink", "both"], default="source")
    p.set_defaults(func=cmd_prune)

    p = sub.add_parser("simplify", help="emit the Tietze trace down to < x | x^N >")
    add_common(p)
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("reflect", help="reverse arcs / swap-and-invert letters")
    p.add_argument("--graph", required=False)
    p.add_argument("--word", required=False)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reflect)

    p = sub.add_parser("corpus", help="list or run the built-in corpus")
    add_common(p, graph=False, word=False)
    p.add_argument("--run", action="store_true")
    p.set_defaults(func=cmd_corpus, verify_cap=CORPUS_VERIFY_CAP)

    return parser


def run_command(argv, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DigraphError, PresentationError, WordSyntaxError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
