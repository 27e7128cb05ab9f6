"""Command-line entry point.

Every command prints one JSON report on stdout. Exit status 0 means the
command ran (a false verdict is still a successful run), 2 means bad input and
3 means a capacity limit was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .construct import build_h, census, phi_adj, phi_clique, phi_three_col
from .errors import CapacityError, NotASentenceError, VimcError
from .eval import DEFAULT_SET_CAP, check_sentence
from .graph import Graph, _check_ids, max_component_size
from .integrity import DEFAULT_LIMIT, vertex_integrity_exact
from .io import read_formula, read_graph, write_formula, write_graph
from .kernel import kernelize
from .logic.ast import free_variables
from .logic.transform import QuantifierProfile, quantifier_profile
from .testkit import (
    GeneratorParams,
    brute_clique,
    brute_three_color,
    brute_vertex_cover,
    random_formula,
    random_graph_with_separator,
)

EXIT_OK, EXIT_INPUT, EXIT_CAPACITY = 0, 2, 3


@dataclass
class RunReport:
    command: str
    inputs: dict = field(default_factory=dict)
    verdict: bool | None = None
    integrity: int | None = None
    separator: list[int] | None = None
    kernel: dict | None = None
    value: object = None
    elapsed_ms: dict[str, float] = field(default_factory=dict)

    @contextmanager
    def phase(self, name: str):
        t = time.perf_counter()
        try:
            yield
        finally:
            self.elapsed_ms[name] = round((time.perf_counter() - t) * 1000, 3)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "verdict": self.verdict,
            "integrity": self.integrity,
            "separator": self.separator,
            "kernel": self.kernel,
            "value": self.value,
            "elapsed_ms": self.elapsed_ms,
        }


def parse_separator(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return sorted({int(t) for t in text.split(",")})
    except ValueError:
        raise argparse.ArgumentTypeError(f"separator must be comma-separated vertex ids, got {text!r}") from None


def _separator_for(g: Graph, given: list[int] | None, report: RunReport, limit: int) -> list[int]:
    with report.phase("separator"):
        if given is not None:
            s = sorted(_check_ids(g, given))
        else:
            sep = vertex_integrity_exact(g, limit=limit)
            report.integrity = sep.k
            s = list(sep.s)
    report.separator = s
    return s


def cmd_vi(args) -> RunReport:
    report = RunReport("vi", {"graph": args.graph})
    with report.phase("parse"):
        g = read_graph(args.graph)
    with report.phase("integrity"):
        sep = vertex_integrity_exact(g, limit=args.limit)
    report.integrity = sep.k
    report.separator = list(sep.s)
    report.value = {"max_component_size": sep.max_component_size}
    return report


def cmd_check(args) -> RunReport:
    report = RunReport("check", {"graph": args.graph, "formula": args.formula, "mode": args.mode})
    with report.phase("parse"):
        g = read_graph(args.graph)
        f = read_formula(args.formula)
    fv, fs = free_variables(f)
    if fv or fs:
        raise NotASentenceError("the formula has free variables; check needs a sentence")
    mode = args.mode
    target = g
    if mode == "auto" and args.separator is None and g.n > args.limit:
        mode = "naive"
    if mode in ("kernel", "auto"):
        s = _separator_for(g, args.separator, report, args.limit)
        with report.phase("kernel"):
            target, krep = kernelize(g, s, quantifier_profile(f))
        report.kernel = krep.to_json()
    report.inputs["resolved_mode"] = mode
    with report.phase("evaluate"):
        try:
            report.verdict = check_sentence(target, f, set_cap=args.set_quantifier_cap)
        except CapacityError as e:
            if mode == "naive":
                raise CapacityError(f"{e}; rerun with --mode kernel") from None
            raise
    return report


def cmd_kernel(args) -> RunReport:
    report = RunReport("kernel", {"graph": args.graph, "formula": args.formula})
    with report.phase("parse"):
        g = read_graph(args.graph)
        if args.formula:
            profile = quantifier_profile(read_formula(args.formula))
        elif args.q1 is not None:
            profile = QuantifierProfile(args.q1, args.q2 or 0)
        else:
            raise VimcError("kernel needs a formula file or --q1/--q2")
    report.inputs["profile"] = [profile.q1, profile.q2]
    s = _separator_for(g, args.separator, report, args.limit)
    with report.phase("kernel"):
        k, krep = kernelize(g, s, profile)
    report.kernel = krep.to_json()
    report.value = {"kernel_vertices": k.n, "kernel_separator": list(krep.separator)}
    if args.output:
        write_graph(args.output, k, [f"kernel of {Path(args.graph).name}, separator {list(krep.separator)}"])
        report.inputs["output"] = args.output
    return report


def cmd_construct(args) -> RunReport:
    report = RunReport("construct", {"graph": args.graph, "emit_dir": args.emit_dir})
    with report.phase("parse"):
        g = read_graph(args.graph)
    with report.phase("build"):
        h = build_h(g)
        info = census(h)
    out = Path(args.emit_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {"graph": str(out / "h.graph"), "meta": str(out / "h.meta.json")}
    with report.phase("emit"):
        write_graph(files["graph"], h.graph, [f"H(G) for {Path(args.graph).name}, k={h.meta.k}"])
        meta = h.meta.to_json()
        meta["census"] = {**info, "component_sizes": [[s, c] for s, c in info["component_sizes"].items()]}
        meta["formula_free_variables"] = {"phi_adj": ["x1", "x2"]}
        Path(files["meta"]).write_text(json.dumps(meta, sort_keys=True) + "\n", encoding="utf-8")
        files["phi_adj"] = str(out / "phi_adj.formula")
        write_formula(files["phi_adj"], phi_adj(), ["free variables: x1 x2"])
        if args.q is not None:
            files["phi_clique"] = str(out / f"phi_clique_{args.q}.formula")
            write_formula(files["phi_clique"], phi_clique(args.q), [f"sentence; true on H iff G has a {args.q}-clique"])
        if args.three_col:
            files["phi_col"] = str(out / "phi_col.formula")
            write_formula(files["phi_col"], phi_three_col(), ["sentence; true on H iff G is 3-colourable"])
    report.separator = list(h.meta.s_vertices)
    report.value = {"k": h.meta.k, "vertices": h.graph.n, "files": files,
                    "max_component_size": info["max_component_size"]}
    report.integrity = None
    return report


def cmd_oracle(args) -> RunReport:
    report = RunReport("oracle", {"graph": args.graph, "kind": args.kind, "q": args.q})
    with report.phase("parse"):
        g = read_graph(args.graph)
    with report.phase("oracle"):
        if args.kind == "clique":
            if args.q is None:
                raise VimcError("the clique oracle needs --q")
            report.verdict = brute_clique(g, args.q)
        elif args.kind == "3col":
            col = brute_three_color(g)
            report.verdict = col is not None
            report.value = None if col is None else [col[v] for v in range(g.n)]
        else:
            report.value = brute_vertex_cover(g)
    return report


def cmd_generate(args) -> RunReport:
    report = RunReport("generate", {"seed": args.seed, "emit_dir": args.emit_dir})
    p = GeneratorParams(args.seed, args.n, args.separator_size, args.component_size, args.pool,
                        (args.q1, args.q2, args.depth))
    g, sep = random_graph_with_separator(p)
    f = random_formula(p)
    out = Path(args.emit_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_graph(out / "graph.graph", g, [f"seed {args.seed}, planted separator {','.join(map(str, sep.s))}"])
    write_formula(out / "formula.formula", f, [f"seed {args.seed}"])
    report.separator = list(sep.s)
    report.value = {"max_component_size": max_component_size(g, sep.s), "vertices": g.n}
    return report


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vimc", description="Model checking on graphs of bounded vertex integrity.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_limit(p):
        p.add_argument("--limit", type=int, default=DEFAULT_LIMIT,
                       help="largest graph for the exhaustive separator search")

    p = sub.add_parser("vi", help="exact vertex integrity and an optimal separator")
    p.add_argument("graph")
    with_limit(p)
    p.set_defaults(func=cmd_vi)

    p = sub.add_parser("check", help="decide whether a graph satisfies a sentence")
    p.add_argument("graph")
    p.add_argument("formula")
    p.add_argument("--mode", choices=("naive", "kernel", "auto"), default="auto")
    p.add_argument("--separator", type=parse_separator, help='comma-separated ids, e.g. "0,3,7"')
    p.add_argument("--set-quantifier-cap", type=int, default=DEFAULT_SET_CAP)
    with_limit(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("kernel", help="shrink a graph by dropping surplus same-type components")
    p.add_argument("graph")
    p.add_argument("formula", nargs="?")
    p.add_argument("--q1", type=int, help="vertex quantifiers, when no formula file is given")
    p.add_argument("--q2", type=int, help="set quantifiers, when no formula file is given")
    p.add_argument("--separator", type=parse_separator)
    p.add_argument("--output", "-o", help="where to write the kernel graph")
    with_limit(p)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("construct", help="build H(G) with its metadata and formulas")
    p.add_argument("graph")
    p.add_argument("--emit-dir", required=True)
    p.add_argument("--q", type=int, help="also emit the q-clique sentence")
    p.add_argument("--three-col", action="store_true", help="also emit the 3-colouring sentence")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("oracle", help="brute-force clique, 3-colouring or vertex cover")
    p.add_argument("kind", choices=("clique", "3col", "vc"))
    p.add_argument("graph")
    p.add_argument("--q", type=int)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("generate", help="random graph with a planted separator plus a random sentence")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--emit-dir", required=True)
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--separator-size", type=int, default=2)
    p.add_argument("--component-size", type=int, default=2)
    p.add_argument("--pool", type=int, default=2)
    p.add_argument("--q1", type=int, default=2)
    p.add_argument("--q2", type=int, default=0)
    p.add_argument("--depth", type=int, default=4)
    p.set_defaults(func=cmd_generate)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except CapacityError as e:
        print(f"capacity error: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except (VimcError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    print(json.dumps(report.to_json(), sort_keys=True))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
