"""Command-line front end.

Exit codes: 0 success, 1 an identity failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import chromatic as chrom
from .enumeration import (
    EnumerationTooLarge,
    enumerate_heaps,
    enumerate_lyndon_heaps,
    enumerate_pyramids,
    enumerate_pyramids_with_basis,
    pyramid_count_via_lyndon,
)
from .graph import DimensionError, Graph, WeightVector, check_weight, parse_weight, seed_graphs
from .heaps import heap_from_word, lyndon_factorization, standard_word
from .orientations import (
    count_lambda_compatible,
    count_m_lambda_labelled,
    count_unique_source,
    enumerate_acyclic,
    lyndon_factorization_orientation,
    lyndon_length_polynomial,
)
from .polynomial import Polynomial, format_polynomial, fraction_str
from .series import (
    heap_generating_series,
    pyramid_weighted_series,
    series_log,
    trivial_alternating_series,
    verify_fundamental_lemmas,
)
from .verify import run_verify

SUBCOMMANDS = ("chromatic", "heaps", "pyramids", "lyndon", "bond-lattice", "series", "orientations", "verify")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    graph: Graph | None
    weight: WeightVector | None
    bound: WeightVector | None
    fmt: str
    verbose: bool
    args: argparse.Namespace


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


_NAMED = re.compile(r"^([KPE])(\d+)$")


def _inline_graph(text: str) -> Graph:
    m = _NAMED.match(text.strip())
    if m:
        n = int(m.group(2))
        return {"K": Graph.complete, "P": Graph.path, "E": Graph.empty}[m.group(1)](n)
    try:
        return Graph.from_json(json.loads(text))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot parse inline graph {text!r}: {exc}") from None


def _add_common(p: argparse.ArgumentParser, weight: bool = True) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--graph", help="graph file (text: 'n' then 'i j' lines; or JSON)")
    src.add_argument("--inline", help="inline graph: JSON object or K<n>, P<n>, E<n>")
    if weight:
        p.add_argument("--weight", help="comma-separated weight vector, e.g. 2,1,1")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="heapchrome", description="Heaps of pieces and generalized chromatic polynomials.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("chromatic", help="k-chromatic polynomial")
    _add_common(p)
    p.add_argument("--positive", action="store_true", help="print (-1)^ht pi(-q)")
    p.add_argument("--derivative", type=int, default=0, metavar="M")

    for name in ("heaps", "pyramids", "lyndon"):
        p = sub.add_parser(name, help=f"enumerate {name} of a given weight")
        _add_common(p)
        p.add_argument("--list", action="store_true", help="emit the heaps as JSON")
        if name == "pyramids":
            p.add_argument("--basis", type=int, help="only pyramids with this basis vertex")
        if name == "heaps":
            p.add_argument("--word", help="space-separated letters: show that word's heap instead")

    p = sub.add_parser("bond-lattice", help="bond lattice with chromatic multiplicities")
    _add_common(p)
    p.add_argument("--list", action="store_true")

    p = sub.add_parser("series", help="truncated generating series and the fundamental lemmas")
    _add_common(p, weight=False)
    p.add_argument("--bound", required=True, help="componentwise truncation bound, e.g. 2,2")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--dump", choices=("heaps", "trivial", "pyramids", "log"))

    p = sub.add_parser("orientations", help="acyclic orientations and reciprocity counts")
    _add_common(p, weight=False)
    p.add_argument("--count", action="store_true")
    p.add_argument("--list", action="store_true")
    p.add_argument("--lyndon-lengths", action="store_true")
    p.add_argument("--unique-source", type=int, metavar="I")
    p.add_argument("--compatible", type=int, metavar="LAMBDA")
    p.add_argument("--labelled", metavar="M,LAMBDA")

    p = sub.add_parser("verify", help="run every identity on a graph")
    _add_common(p, weight=False)
    p.add_argument("--max-weight", type=int, help="use the bound (w, ..., w)")
    p.add_argument("--bound", help="explicit componentwise bound")
    p.add_argument("--seed-graphs", type=int, metavar="N", help="verify every graph on <= N vertices")
    p.add_argument("--perturb-chrmult", action="store_true", help=argparse.SUPPRESS)
    return parser


def _parse_weight_arg(text: str, what: str) -> WeightVector:
    try:
        return parse_weight(text)
    except ValueError as exc:
        raise UsageError(f"{what}: {exc}") from None


def parse_args(argv: Sequence[str]) -> RunConfig:
    parser = build_parser()
    args = parser.parse_args(list(argv))
    if args.command is None:
        raise UsageError(f"missing subcommand; choose one of {', '.join(SUBCOMMANDS)}")

    graph = None
    if getattr(args, "graph", None):
        path = Path(args.graph)
        if not path.exists():
            raise UsageError(f"graph file not found: {args.graph}")
        try:
            graph = Graph.load(path)
        except (ValueError, KeyError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read graph file {args.graph}: {exc}") from None
    elif getattr(args, "inline", None):
        graph = _inline_graph(args.inline)

    needs_graph = not (args.command == "verify" and args.seed_graphs)
    if graph is None and needs_graph:
        raise UsageError("a graph is required: pass --graph FILE or --inline GRAPH")

    weight = None
    if getattr(args, "weight", None) is not None:
        weight = _parse_weight_arg(args.weight, "--weight")
    elif args.command in ("chromatic", "heaps", "pyramids", "lyndon", "bond-lattice") and not getattr(args, "word", None):
        raise UsageError("--weight is required")

    bound = None
    if getattr(args, "bound", None):
        bound = _parse_weight_arg(args.bound, "--bound")

    for vec, what in ((weight, "--weight"), (bound, "--bound")):
        if vec is not None and graph is not None and len(vec) != graph.n:
            raise UsageError(f"{what} has {len(vec)} entries but the graph has {graph.n} vertices")

    return RunConfig(args.command, graph, weight, bound, args.format, args.verbose, args)


# -- output helpers -------------------------------------------------------------


def _emit(cfg: RunConfig, text: str, data) -> None:
    if cfg.fmt == "json":
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _heap_word(h) -> str:
    return " ".join(map(str, standard_word(h)))


# -- subcommands ------------------------------------------------------------------


def cmd_chromatic(cfg: RunConfig) -> int:
    g, k = cfg.graph, cfg.weight
    p = chrom.k_chromatic_polynomial(g, k)
    ht = sum(k)
    if cfg.args.derivative:
        p = chrom.derivative(p, cfg.args.derivative)
        ht -= cfg.args.derivative
    if cfg.args.positive:
        p = chrom.positive_variant(p, ht)
    _emit(cfg, format_polynomial(p), p.to_json())
    return 0


def cmd_heaps(cfg: RunConfig) -> int:
    g = cfg.graph
    if cfg.args.word:
        try:
            letters = [int(t) for t in cfg.args.word.split()]
        except ValueError:
            raise UsageError(f"malformed word {cfg.args.word!r}") from None
        h = heap_from_word(g, letters)
        factors = lyndon_factorization(h)
        data = {
            "heap": h.to_json(),
            "standard_word": list(standard_word(h)),
            "lyndon_factorization": [f.to_json() for f in factors],
        }
        text = f"standard word: {_heap_word(h)}\nLyndon factors: {' | '.join(_heap_word(f) for f in factors)}"
        _emit(cfg, text, data)
        return 0
    heaps = enumerate_heaps(g, cfg.weight)
    return _emit_heaps(cfg, heaps)


def _emit_heaps(cfg: RunConfig, heaps, extra: dict | None = None) -> int:
    if cfg.args.list:
        print(json.dumps([h.to_json() for h in heaps]))
        return 0
    data = {"count": len(heaps), **(extra or {})}
    text = "\n".join(f"{k}: {v}" for k, v in data.items())
    _emit(cfg, text, data)
    return 0


def cmd_pyramids(cfg: RunConfig) -> int:
    g, k = cfg.graph, cfg.weight
    if cfg.args.basis is not None:
        heaps = enumerate_pyramids_with_basis(g, k, cfg.args.basis)
        extra = {"via_lyndon": pyramid_count_via_lyndon(g, k, cfg.args.basis)} if k[cfg.args.basis] else {}
    else:
        heaps = enumerate_pyramids(g, k)
        extra = {"via_lyndon": pyramid_count_via_lyndon(g, k)} if any(k) else {}
    return _emit_heaps(cfg, heaps, extra)


def cmd_lyndon(cfg: RunConfig) -> int:
    g, k = cfg.graph, cfg.weight
    heaps = enumerate_lyndon_heaps(g, k)
    extra = {"dim_via_mobius": chrom.lie_dim_via_mobius(g, k)} if any(k) else {}
    return _emit_heaps(cfg, heaps, extra)


def cmd_bond_lattice(cfg: RunConfig) -> int:
    g, k = cfg.graph, cfg.weight
    parts = chrom.enumerate_bond_lattice(g, k)
    poly = chrom.bond_lattice_polynomial(g, k)
    rows = [{"parts": J.to_json(), "chrmult": fraction_str(chrom.chr_mult_partition(g, J))} for J in parts]
    data = {"count": len(parts), "polynomial": poly.to_json()}
    if cfg.args.list:
        data["partitions"] = rows
    lines = [f"count: {len(parts)}", f"polynomial: {format_polynomial(poly)}"]
    if cfg.args.list:
        lines += [f"{r['parts']}  chrmult={r['chrmult']}" for r in rows]
    _emit(cfg, "\n".join(lines), data)
    return 0


def cmd_series(cfg: RunConfig) -> int:
    g, bound = cfg.graph, cfg.bound
    status = 0
    if cfg.args.verify:
        results = []
        for rep in verify_fundamental_lemmas(g, bound):
            results.append({"lemma": rep.name, "bound": list(bound), "status": "PASS" if rep.passed else "FAIL",
                            "counterexample": rep.failures[0] if rep.failures else None})
            if not rep.passed:
                status = 1
        _emit(cfg, "\n".join(f"{r['status']} {r['lemma']} bound={tuple(bound)}" +
                             (f": {r['counterexample']}" if r["counterexample"] else "") for r in results), results)
    if cfg.args.dump:
        s = {
            "heaps": lambda: heap_generating_series(g, bound),
            "trivial": lambda: trivial_alternating_series(g, bound),
            "pyramids": lambda: pyramid_weighted_series(g, bound),
            "log": lambda: series_log(heap_generating_series(g, bound)),
        }[cfg.args.dump]()
        print(json.dumps(s.to_rows()))
    if not cfg.args.verify and not cfg.args.dump:
        raise UsageError("series needs --verify and/or --dump")
    return status


def cmd_orientations(cfg: RunConfig) -> int:
    g, a = cfg.graph, cfg.args
    acyclic = enumerate_acyclic(g)
    data: dict = {}
    if a.count or not (a.list or a.lyndon_lengths or a.unique_source is not None or a.compatible or a.labelled):
        data["count"] = len(acyclic)
    if a.list:
        data["orientations"] = []
        for o in acyclic:
            entry = o.to_json()
            entry["lyndon_factors"] = [sorted(vs) for vs, _ in lyndon_factorization_orientation(o)]
            data["orientations"].append(entry)
    if a.lyndon_lengths:
        data["lyndon_lengths"] = lyndon_length_polynomial(g)
    if a.unique_source is not None:
        data["unique_source"] = count_unique_source(g, a.unique_source)
    if a.compatible:
        data["compatible_pairs"] = count_lambda_compatible(g, a.compatible)
    if a.labelled:
        try:
            m, lam = (int(t) for t in a.labelled.split(","))
        except ValueError:
            raise UsageError(f"--labelled expects M,LAMBDA, got {a.labelled!r}") from None
        data["labelled"] = count_m_lambda_labelled(g, m, lam)
    if cfg.fmt == "json" or a.list:
        print(json.dumps(data, indent=2))
    else:
        for key, value in data.items():
            print(f"{key}: {value}")
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    a = cfg.args
    graphs = seed_graphs(a.seed_graphs) if a.seed_graphs else [cfg.graph]
    status = 0
    payload = []
    for g in graphs:
        if cfg.bound is not None and not a.seed_graphs:
            bound = cfg.bound
        else:
            w = a.max_weight if a.max_weight is not None else 1
            bound = (w,) * g.n
        code, outcomes = run_verify(g, bound, perturb_chrmult=a.perturb_chrmult)
        status = max(status, code)
        if cfg.fmt == "json":
            payload.append({"graph": g.to_json(), "bound": list(bound), "exit": code,
                            "results": [o.to_json() for o in outcomes]})
        else:
            print(f"# graph n={g.n} edges={g.sorted_edges()} bound={bound}")
            for o in outcomes:
                print(o.line())
    if cfg.fmt == "json":
        print(json.dumps(payload, indent=2))
    return status


COMMANDS = {
    "chromatic": cmd_chromatic,
    "heaps": cmd_heaps,
    "pyramids": cmd_pyramids,
    "lyndon": cmd_lyndon,
    "bond-lattice": cmd_bond_lattice,
    "series": cmd_series,
    "orientations": cmd_orientations,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
        if cfg.weight is not None:
            check_weight(cfg.graph, cfg.weight)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"heapchrome: error: {exc}", file=sys.stderr)
        return 2
    except (EnumerationTooLarge, DimensionError) as exc:
        print(f"heapchrome: error: {exc}", file=sys.stderr)
        return 2
    except chrom.InvariantViolation as exc:
        print(f"heapchrome: identity failure: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"heapchrome: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
