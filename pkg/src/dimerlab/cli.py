"""``dimerlab`` command line."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from .errors import ConfigError, DimerlabError
from .mahler import DEFAULT_TOL

FORMATS = ("text", "json", "csv")


@dataclass(frozen=True)
class CommandConfig:
    subcommand: str
    graph: str | None = None
    poly: str | None = None
    ns: tuple[int, ...] = ()
    tol: float = DEFAULT_TOL
    fmt: str = "text"
    exact_cap: int = 400
    seed: int = 0
    brute: bool = False
    patch_file: str | None = None


def _parse_ns(text: str) -> tuple[int, ...]:
    try:
        ns = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ConfigError(f"--n expects a comma-separated list of integers, got {text!r}") from None
    if not ns or min(ns) < 1:
        raise ConfigError("--n values must be positive integers")
    return ns


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("source", nargs="?", help="graph: builtin:NAME, JSON file or JSON text")
    common.add_argument("--graph", help="graph source (alternative to the positional argument)")
    common.add_argument("--format", dest="fmt", choices=FORMATS, default=None)

    parser = argparse.ArgumentParser(prog="dimerlab", description="Toroidal dimers, Mahler measures and determinant densities.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sub.add_parser("charpoly", parents=[common], help="characteristic polynomial p(z, w) of the overlay")

    p = sub.add_parser("mahler", parents=[common], help="Mahler measure of a polynomial or of a graph's p(z, w)")
    p.add_argument("--poly", help='polynomial text, e.g. "1 + z + w"')
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)

    p = sub.add_parser("density", parents=[common], help="spanning-tree density of patches H_n")
    p.add_argument("--n", required=True, help="comma-separated increasing patch sizes")
    p.add_argument("--exact-cap", type=int, default=400)

    p = sub.add_parser("dimers", parents=[common], help="dimer count Z(G_n) of the n-th quotient")
    p.add_argument("--n", default="1")
    p.add_argument("--brute", action="store_true", help="count by exhaustive enumeration")

    p = sub.add_parser("treecount", parents=[common], help="spanning trees of a patch or a finite graph")
    p.add_argument("--n", help="patch sizes (with a torus graph)")
    p.add_argument("--patch-file", help='finite graph as JSON {"n_vertices": k, "edges": [[u, v], ...]}')
    p.add_argument("--exact-cap", type=int, default=400)

    p = sub.add_parser("check", parents=[common], help="run the invariant suite")
    p.add_argument("--seed", type=int, default=0)
    return parser


def config_from_args(args: argparse.Namespace) -> CommandConfig:
    if args.source and args.graph:
        raise ConfigError("give the graph either positionally or with --graph, not both")
    graph = args.source or args.graph
    poly = getattr(args, "poly", None)
    cmd = args.subcommand
    fmt = args.fmt or ("csv" if cmd == "density" else "text")
    tol = getattr(args, "tol", DEFAULT_TOL)
    if not tol > 0:
        raise ConfigError("--tol must be positive")
    patch_file = getattr(args, "patch_file", None)
    if cmd == "mahler" and (graph is None) == (poly is None):
        raise ConfigError("mahler needs exactly one of --graph and --poly")
    if cmd in ("charpoly", "density", "dimers") and graph is None:
        raise ConfigError(f"{cmd} needs a graph")
    if cmd == "treecount":
        if (graph is None) == (patch_file is None):
            raise ConfigError("treecount needs exactly one of a torus graph and --patch-file")
        if graph is not None and not args.n:
            raise ConfigError("treecount on a torus graph needs --n")
    ns = _parse_ns(args.n) if getattr(args, "n", None) else ()
    if cmd == "density" and any(b <= a for a, b in zip(ns, ns[1:])):
        raise ConfigError("--n must be increasing for density")
    exact_cap = getattr(args, "exact_cap", 400)
    if exact_cap < 1:
        raise ConfigError("--exact-cap must be positive")
    return CommandConfig(cmd, graph, poly, ns, tol, fmt, exact_cap,
                         getattr(args, "seed", 0), getattr(args, "brute", False), patch_file)


# -- output helpers ---------------------------------------------------------------


def _table(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if not rows:
        return ""
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    keys = list(rows[0])
    return "".join(" ".join(f"{k}={r[k]}" for k in keys) + "\n" for r in rows)


def _record(fields: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(fields, indent=2) + "\n"
    if fmt == "csv":
        return _table([fields], "csv")
    return "".join(f"{k} = {v}\n" for k, v in fields.items())


# -- subcommands --------------------------------------------------------------------


def _charpoly(cfg: CommandConfig) -> str:
    from .kasteleyn import char_poly, kasteleyn_signs
    from .laurent import format_poly, poly_to_json
    from .torus import load_graph, overlay

    K = kasteleyn_signs(overlay(load_graph(cfg.graph)))
    cp = char_poly(K)
    if cfg.fmt == "json":
        return json.dumps({"poly": format_poly(cp.poly), "terms": poly_to_json(cp.poly),
                           "normalized": format_poly(cp.normalized),
                           "normalized_terms": poly_to_json(cp.normalized)}, indent=2) + "\n"
    return _record({"p": format_poly(cp.poly), "normalized": format_poly(cp.normalized)}, cfg.fmt)


def _mahler(cfg: CommandConfig) -> str:
    from .errors import ConvergenceError
    from .laurent import format_poly, parse_poly
    from .mahler import mahler_2d

    c_L = None
    if cfg.poly is not None:
        p = parse_poly(cfg.poly)
    else:
        from .kasteleyn import char_poly, kasteleyn_signs
        from .torus import load_graph, overlay

        G = load_graph(cfg.graph)
        c_L = G.n_edges
        p = char_poly(kasteleyn_signs(overlay(G))).poly
    try:
        res = mahler_2d(p, cfg.tol)
    except ConvergenceError as exc:
        if exc.best is not None:
            sys.stderr.write(json.dumps({"best": asdict(exc.best)}) + "\n")
        raise
    fields = {"poly": format_poly(p), "m": f"{res.value:.12f}", "error_estimate": f"{res.error_estimate:.3e}",
              "grid_points": res.grid_points, "refinements": res.refinements,
              "2pi_m": f"{2 * math.pi * res.value:.12f}"}
    if c_L is not None:
        fields["crossings"] = c_L
        fields["density"] = f"{res.value / c_L:.12f}"
        fields["2pi_density"] = f"{2 * math.pi * res.value / c_L:.12f}"
    return _record(fields, cfg.fmt)


def _density(cfg: CommandConfig) -> str:
    from .torus import load_graph
    from .treecount import density_sweep, rows_to_csv, rows_to_json

    rows = density_sweep(load_graph(cfg.graph), cfg.ns, cfg.exact_cap)
    if cfg.fmt == "csv":
        return rows_to_csv(rows)
    if cfg.fmt == "json":
        return rows_to_json(rows) + "\n"
    return _table([asdict(r) for r in rows], "text")


def _dimers(cfg: CommandConfig) -> str:
    from .kasteleyn import kasteleyn_signs, partition_toroidal
    from .oracle import enum_dimers
    from .torus import load_graph, overlay

    K = kasteleyn_signs(overlay(load_graph(cfg.graph)))
    rows = []
    for n in cfg.ns:
        if cfg.brute:
            rows.append({"n": n, "Z": enum_dimers(K.lift(n).graph).count, "method": "brute"})
        else:
            rows.append({"n": n, "Z": partition_toroidal(K, n), "method": "kasteleyn"})
    return _table(rows, cfg.fmt)


def _load_finite(path: str):
    try:
        data = json.loads(Path(path).read_text())
        n = int(data["n_vertices"])
        edges = [(int(u), int(v)) for u, v in data["edges"]]
    except FileNotFoundError:
        raise ConfigError(f"no such patch file: {path}") from None
    except (ValueError, KeyError, TypeError) as exc:
        from .errors import GraphFormatError

        raise GraphFormatError(f"bad patch file: {exc}") from None
    if any(not (0 <= u < n and 0 <= v < n) for u, v in edges):
        from .errors import GraphFormatError

        raise GraphFormatError("patch file edge refers to a missing vertex")
    return n, edges


def _treecount(cfg: CommandConfig) -> str:
    from .torus import load_graph, patch
    from .treecount import log_tree_count, tree_count_exact

    def row(label, graph):
        n_vertices = graph[0]
        exact = tree_count_exact(graph, cap=cfg.exact_cap) if n_vertices <= cfg.exact_cap else None
        log_tau = math.log(exact) if exact is not None else log_tree_count(graph)
        return {**label, "vertices": n_vertices, "edges": len(graph[1]),
                "tau": "" if exact is None else str(exact), "log_tau": repr(log_tau)}

    if cfg.patch_file is not None:
        rows = [row({}, _load_finite(cfg.patch_file))]
    else:
        G = load_graph(cfg.graph)
        rows = []
        for n in cfg.ns:
            H = patch(G, n)
            rows.append(row({"n": n}, (H.n_vertices, list(H.edges))))
    return _table(rows, cfg.fmt)


def _check(cfg: CommandConfig) -> tuple[str, bool]:
    from .checks import run_checks
    from .corpus import load_corpus
    from .torus import builtin, load_graph

    if cfg.graph is not None:
        targets = [(cfg.graph, load_graph(cfg.graph))]
    else:
        targets = [("builtin:weave", builtin("weave")), ("builtin:triaxial", builtin("triaxial"))]
        targets += [(f"corpus:{k}", G) for k, G in enumerate(load_corpus())]
    rows = []
    for label, G in targets:
        for r in run_checks(G, cfg.seed):
            rows.append({"graph": label, "check": r.name, "status": r.status, "detail": r.detail})
    ok = all(r["status"] != "FAIL" for r in rows)
    if cfg.fmt == "text":
        text = "".join(f"{r['status']:4} {r['graph']:18} {r['check']:26} {r['detail']}\n" for r in rows)
        failed = sum(r["status"] == "FAIL" for r in rows)
        return text + f"{len(rows) - failed}/{len(rows)} checks passed\n", ok
    return _table(rows, cfg.fmt), ok


HANDLERS = {"charpoly": _charpoly, "mahler": _mahler, "density": _density,
            "dimers": _dimers, "treecount": _treecount}


def run(cfg: CommandConfig, out=None) -> int:
    """Execute ``cfg``, writing results to ``out``; returns the exit status."""
    out = out or sys.stdout
    if cfg.subcommand == "check":
        text, ok = _check(cfg)
        out.write(text)
        return 0 if ok else 1
    out.write(HANDLERS[cfg.subcommand](cfg))
    return 0


def _error_record(exc: BaseException, code: int) -> str:
    return json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return run(config_from_args(args))
    except DimerlabError as exc:
        sys.stderr.write(_error_record(exc, exc.exit_code))
        return exc.exit_code
    except ValueError as exc:
        sys.stderr.write(_error_record(exc, 2))
        return 2


if __name__ == "__main__":
    sys.exit(main())
