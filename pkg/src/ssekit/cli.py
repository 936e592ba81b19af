"""Command-line front end.

Exit codes: 0 verified or computed, 1 refuted, 2 input error, 3 resource cap.
With ``--machine`` every line is a ``KEY value`` pair; a refutation always
prints a line starting with ``REFUTED `` followed by its locus.
"""

import argparse
import sys

import numpy as np

from . import _arith, io
from .bowen_franks import bowen_franks_group, check_diagram, check_edge_identities, unit_class
from .errors import (
    ExplosionGuard,
    IntegerOverflow,
    SearchSpaceTooLarge,
    SSEError,
)
from .graph_core import TransitionMatrix, edge_graph, from_matrix, trace_sequence
from .shift_space import DEFAULT_MAX_WORDS, check_transfer_law, from_text, phi_map, psi_map, to_text, word_cap
from .splitting import find_out_amalgamations, in_split, out_amalgamate, out_split
from .sse import (
    DEFAULT_MAX_CANDIDATES,
    ElementaryEquivalence,
    dhat,
    search_elementary,
    verify_chain,
    verify_elementary,
)
from .transpose_free import verify_tf_chain


class Report:
    def __init__(self, machine):
        self.machine = machine
        self.lines = []

    def value(self, key, label, value):
        if self.machine:
            self.lines.append(f"{key} {value}")
        else:
            self.lines.append(f"{label}: {value}")

    def matrix(self, key, label, M):
        rows = _arith.to_lists(np.asarray(M))
        if self.machine:
            self.lines.append(f"{key} {_compact(rows)}")
        else:
            self.lines.append(f"{label}:")
            self.lines.extend("  " + " ".join(str(v) for v in row) for row in rows)

    def verdict(self, v):
        for w in v.warnings:
            self.value("WARNING", "warning", w)
        if v.ok:
            self.value("VERDICT", "verdict", "VERIFIED" + (f" {v.detail}" if v.detail else ""))
            return 0
        self.lines.append(f"REFUTED {v.locus}")
        if v.detail:
            self.value("DETAIL", "detail", v.detail)
        return 1


def _compact(rows):
    return "[" + ",".join("[" + ",".join(str(v) for v in row) + "]" for row in rows) + "]"


def _square(path):
    return TransitionMatrix(io.read_matrix(path))


def cmd_bf(args, out):
    A = _square(args.matrix)
    group = bowen_franks_group(A)
    out.value("GROUP", "group", str(group))
    out.value("FREE_RANK", "free rank", group.free_rank)
    out.value("TORSION", "torsion", " ".join(map(str, group.torsion)) or "-")
    out.value("UNIT", "unit class", str(unit_class(A)))
    return 0


def cmd_edge_graph(args, out):
    fac = edge_graph(_square(args.matrix))
    out.matrix("AG", "edge graph", fac.AG)
    out.matrix("R", "R", fac.R)
    out.matrix("S", "S", fac.S)
    return 0


def _split_report(out, sr):
    out.matrix("SPLIT", "split matrix", sr.split_matrix)
    out.matrix("C", "C", sr.C)
    out.matrix("D", "D", sr.D)
    out.value("VERTICES", "vertices", " ".join(sr.graph.vertices))
    return 0


def cmd_out_split(args, out):
    G = from_matrix(_square(args.matrix))
    P = io.parse_out_partition(G, open(args.partition).read())
    return _split_report(out, out_split(G, P))


def cmd_in_split(args, out):
    G = from_matrix(_square(args.matrix))
    P = io.parse_in_partition(G, open(args.partition).read())
    return _split_report(out, in_split(G, P))


def cmd_amalgamate(args, out):
    A = _square(args.matrix)
    if not args.merge:
        candidates = find_out_amalgamations(A)
        out.value("CANDIDATES", "candidates", len(candidates))
        for c in candidates:
            out.value("CANDIDATE", "candidate", ",".join(str(v + 1) for v in c))
        return 0
    sets = [[int(v) - 1 for v in spec.split(",")] for spec in args.merge]
    am = out_amalgamate(from_matrix(A), sets)
    out.matrix("AMALGAMATED", "amalgamated matrix", am.matrix)
    for line in io.format_partition(am.graph, am.partition).splitlines():
        out.value("PARTITION", "partition", line)
    return 0


def _ee_from_files(args):
    C = io.read_matrix(args.C)
    D = io.read_matrix(args.D)
    return ElementaryEquivalence.from_witness(C, D)


def cmd_verify_ee(args, out):
    ee = ElementaryEquivalence(_square(args.A), _square(args.B), io.read_matrix(args.C), io.read_matrix(args.D))
    return out.verdict(verify_elementary(ee))


def cmd_verify_chain(args, out):
    return out.verdict(verify_chain(io.read_chain_manifest(args.manifest)))


def cmd_dhat(args, out):
    out.matrix("DHAT", "D-hat", dhat(_ee_from_files(args)))
    return 0


def cmd_diagram(args, out):
    chain = io.read_chain_manifest(args.manifest)
    v = verify_chain(chain)
    if not v:
        return out.verdict(v)
    return out.verdict(check_diagram(chain, require_units=not args.no_units))


def cmd_edge_identities(args, out):
    ee = _ee_from_files(args)
    return out.verdict(check_edge_identities(ee))


def cmd_search_ee(args, out):
    found = search_elementary(_square(args.A), _square(args.B), args.bound, args.max_candidates)
    out.value("FOUND", "witnesses found", len(found))
    for ee in found:
        out.value("WITNESS", "witness", f"C={_compact(_arith.to_lists(ee.C))} D={_compact(_arith.to_lists(ee.D))}")
    return 0


def cmd_traces(args, out):
    out.value("TRACES", "traces", " ".join(map(str, trace_sequence(_square(args.matrix), args.n))))
    return 0


def cmd_phi_psi_check(args, out):
    ee = _ee_from_files(args)
    if args.function:
        text = open(args.function).read()
        f = from_text(ee.A, text) if args.on == "A" else from_text(ee.B, text)
        image = phi_map(ee, f) if args.on == "A" else psi_map(ee, f)
        for line in to_text(image).splitlines():
            out.value("IMAGE", "image", line)
    return out.verdict(check_transfer_law(ee, max_depth=args.depth))


def cmd_tf_verify(args, out):
    report = verify_tf_chain(io.read_tf_manifest(args.manifest))
    code = out.verdict(report.verdict)
    if report.sse_chain is not None:
        out.value("IMPLIED_STEPS", "implied elementary equivalences", len(report.sse_chain))
    return code


def build_parser():
    parser = argparse.ArgumentParser(prog="ssekit", description=__doc__.splitlines()[0])
    parser.add_argument("--machine", action="store_true", help="line-oriented KEY value output")
    parser.add_argument("--bigint", action="store_true", help="allow results beyond 64 bits")
    parser.add_argument("--max-candidates", type=int, default=DEFAULT_MAX_CANDIDATES)
    parser.add_argument("--max-words", type=int, default=DEFAULT_MAX_WORDS)
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, fn, *positional, help=None):
        p = sub.add_parser(name, help=help)
        for arg in positional:
            p.add_argument(arg)
        p.set_defaults(fn=fn)
        return p

    add("bf", cmd_bf, "matrix", help="Bowen-Franks group and unit class")
    add("edge-graph", cmd_edge_graph, "matrix", help="edge-transition matrix and its factorization")
    add("out-split", cmd_out_split, "matrix", "partition")
    add("in-split", cmd_in_split, "matrix", "partition")
    p = add("amalgamate", cmd_amalgamate, "matrix", help="list or apply out-amalgamations")
    p.add_argument("--merge", action="append", help="comma-separated 1-based vertices; repeatable")
    add("verify-ee", cmd_verify_ee, "A", "B", "C", "D")
    add("verify-chain", cmd_verify_chain, "manifest")
    add("dhat", cmd_dhat, "C", "D")
    p = add("diagram", cmd_diagram, "manifest", help="cokernel diagram check along a chain")
    p.add_argument("--no-units", action="store_true", help="skip the unit-class item")
    add("matui", cmd_edge_identities, "C", "D", help="edge-graph cokernel identities for one equivalence")
    p = add("search-ee", cmd_search_ee, "A", "B")
    p.add_argument("--bound", type=int, default=1)
    p = add("traces", cmd_traces, "matrix")
    p.add_argument("--n", type=int, default=12)
    p = add("phi-psi-check", cmd_phi_psi_check, "C", "D")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--function", help="cylinder function file to push forward")
    p.add_argument("--on", choices=("A", "B"), default="A", help="shift the function lives on")
    add("tf-verify", cmd_tf_verify, "manifest")
    return parser


def run(argv=None):
    """Run one command; returns ``(exit_code, output_text)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code == 0 else 2), ""
    out = Report(args.machine)
    try:
        with _arith.bigint_mode(args.bigint), word_cap(args.max_words):
            code = args.fn(args, out)
    except (SearchSpaceTooLarge, ExplosionGuard, IntegerOverflow) as exc:
        out.value("ERROR", "resource cap", str(exc))
        code = 3
    except (SSEError, OSError, ValueError) as exc:
        out.value("ERROR", "input error", str(exc))
        code = 2
    return code, "\n".join(out.lines) + ("\n" if out.lines else "")


def main(argv=None):
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
