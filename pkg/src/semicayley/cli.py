"""Command-line interface: ``semicayley <command> [options]``.

Exit status: 0 success, 2 invalid input, 3 undetermined square-class verdict,
4 oracle mismatch.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .catalog import CATALOG_NAMES
from .census import CensusCapError, CensusConfig, census
from .chartable import check_orthogonality, character_table
from .digraph import QuasiAbelianError
from .groups import GMultiset, GroupError, class_unions
from .jobs import (
    InputError,
    JobSpec,
    chartable_doc,
    group_doc,
    oracle_doc,
    parse_input,
    render,
    resolve_group,
    run_report,
)
from .splitting import SquareOptions, UndeterminedError

EXIT_OK, EXIT_INPUT, EXIT_UNDETERMINED, EXIT_MISMATCH = 0, 2, 3, 4

_FAMILY_PARAMS = {"cyclic": "n", "dihedral": "n", "dicyclic": "n", "symmetric": "n", "alternating": "n"}


def group_from_arg(text: str) -> dict:
    """``S3`` (catalog name), ``dihedral:5`` or ``abelian:2,4``."""
    if ":" not in text:
        return {"kind": "catalog", "params": {"name": text}}
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind == "abelian":
        return {"kind": kind, "params": {"invariants": [int(x) for x in rest.split(",")]}}
    if kind in _FAMILY_PARAMS:
        return {"kind": kind, "params": {_FAMILY_PARAMS[kind]: int(rest)}}
    raise InputError(f"cannot parse group argument {text!r}")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--input", metavar="PATH", help="job document (YAML or JSON); '-' reads stdin")
    p.add_argument("--group", help=f"group instead of an input document: a catalog name "
                                   f"({', '.join(CATALOG_NAMES[:6])}, ...) or kind:param, e.g. dihedral:5")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--verify", action="store_true", help="run the brute-force oracle as well")
    p.add_argument("--max-classes", type=int, default=2, metavar="N",
                   help="census: at most N conjugacy classes per connection set")
    p.add_argument("--undirected-only", action="store_true")
    p.add_argument("--integral-only", action="store_true")
    p.add_argument("--probabilistic-primes", type=int, default=64, metavar="K")
    p.add_argument("--height-cap", type=int, default=4096, metavar="BITS")
    p.add_argument("--seed", type=int, default=0, metavar="N")
    p.add_argument("--workers", type=int, default=1, help="census worker processes")
    p.add_argument("--cap", type=int, default=200_000, help="census enumeration cap")
    p.add_argument("--random", type=int, default=0, metavar="COUNT",
                   help="verify: check COUNT random quasi-abelian digraphs over --group")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semicayley",
                                     description="Spectra, splitting fields and integrality of "
                                                 "quasi-abelian semi-Cayley digraphs.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "spectrum": "exact eigenvalues per irreducible character",
        "degree": "splitting field and algebraic degree",
        "integral": "integrality verdict",
        "chartable": "character table of the group",
        "census": "enumerate digraphs built from class unions",
        "verify": "cross-check the pipeline against the brute-force oracle",
    }
    for name, h in helps.items():
        _common(sub.add_parser(name, help=h, description=h))
    return parser


def _load_spec(args) -> JobSpec:
    if args.input:
        text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
        spec = parse_input(text)
    elif args.group:
        spec = JobSpec(group_from_arg(args.group))
    else:
        raise InputError("provide --input PATH or --group")
    return spec


def _emit(doc, args, out):
    out.write(render(doc, args.format))


def _cmd_report(args, out) -> int:
    spec = _load_spec(args)
    options = SquareOptions(args.probabilistic_primes, args.height_cap)
    verify = True if args.verify else None
    cmd = args.command
    doc = run_report(spec, "degree" if cmd == "integral" else cmd, options, verify=verify)
    if cmd == "integral":
        doc = {k: doc[k] for k in ("command", "input", "group", "sets", "splitting", "oracle") if k in doc}
        doc["command"] = "integral"
        doc["integral"] = doc["splitting"]["integral"]
    _emit(doc, args, out)
    if "oracle" in doc and not doc["oracle"]["ok"]:
        return EXIT_MISMATCH
    return EXIT_OK


def _cmd_chartable(args, out) -> int:
    spec = _load_spec(args)
    G = resolve_group(spec.group)
    tbl = character_table(G)
    problems = check_orthogonality(tbl)
    doc = {"command": "chartable", "group": group_doc(G), "character_table": chartable_doc(tbl),
           "orthogonality": "exact" if not problems else problems}
    _emit(doc, args, out)
    return EXIT_OK if not problems else EXIT_MISMATCH


def _cmd_census(args, out) -> int:
    spec = _load_spec(args)
    G = resolve_group(spec.group)
    config = CensusConfig(max_classes=args.max_classes, undirected_only=args.undirected_only,
                          integral_only=args.integral_only, verify=args.verify, cap=args.cap,
                          workers=max(1, args.workers),
                          options=SquareOptions(args.probabilistic_primes, args.height_cap))
    doc = census(G, config)
    doc = {"command": "census", **doc}
    _emit(doc, args, out)
    if args.verify and (doc["totals"]["oracle_disagreements"] or doc["totals"]["charpoly_failures"]):
        return EXIT_MISMATCH
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    options = SquareOptions(args.probabilistic_primes, args.height_cap)
    if args.random:
        spec = _load_spec(args)
        G = resolve_group(spec.group)
        from .census import digraph_from_classes
        from .splitting import algebraic_degree

        rng = np.random.default_rng(args.seed)
        unions = class_unions(G, args.max_classes)
        tbl = character_table(G)
        rows, failures = [], 0
        for _ in range(args.random):
            choice = [unions[int(i)] for i in rng.integers(0, len(unions), size=4)]
            graph = digraph_from_classes(G, choice)
            rep = algebraic_degree(graph, tbl, options)
            od = oracle_doc(graph, tbl, rep)
            reps = G.conjugacy.representatives
            rows.append({"sets": [[G.labels[reps[k]] for k in c] for c in choice],
                         "degree": rep.deg, "ok": od["ok"]})
            failures += not od["ok"]
        doc = {"command": "verify", "group": G.name, "seed": args.seed, "instances": args.random,
               "failures": failures, "rows": rows}
        _emit(doc, args, out)
        return EXIT_MISMATCH if failures else EXIT_OK
    spec = _load_spec(args)
    if not spec.sets:
        raise InputError("verify needs connection sets (an --input document) or --random COUNT")
    doc = run_report(spec, "verify", options, verify=True)
    _emit(doc, args, out)
    return EXIT_OK if doc["oracle"]["ok"] else EXIT_MISMATCH


_COMMANDS = {"spectrum": _cmd_report, "degree": _cmd_report, "integral": _cmd_report,
             "chartable": _cmd_chartable, "census": _cmd_census, "verify": _cmd_verify}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args, out)
    except UndeterminedError as exc:
        print(f"undetermined: {exc}", file=sys.stderr)
        return EXIT_UNDETERMINED
    except CensusCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, GroupError, QuasiAbelianError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
