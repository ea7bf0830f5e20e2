"""Command line entry point: ``kmp-spectra {spectrum|verify|sweep|wg}``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import verify as suites
from .base import InvariantBreach, Operator, ResourceGuardError, eye, zeros
from .codim1 import Codim1Instance, m_k_spectrum
from .hypergraph import HypergraphParseError, Hypergraph, load, popcount
from .kmp import kmp_laplacian, pure_operator
from .spectrum import spectrum
from .sweep import SweepConfig, sweep, to_csv, to_json
from .symgroup import laplacian_zk
from .weingarten import laplacian_rkm, projection_torinv_skk, wg_table

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_BREACH = 0, 1, 2, 3
REPS = ("kmp", "pure", "codim1-M", "sym-z", "unitary-R", "torinv-S")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _fraction_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"cannot parse {text!r} as comma-separated numbers") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--exact", action="store_true", help="rational arithmetic throughout")
    common.add_argument("--tol", type=float, default=None, help="float comparison tolerance")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="write output to FILE instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    parser = _Parser(prog="kmp-spectra", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("spectrum", parents=[common], help="spectrum of one operator built from a hypergraph file")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--rep", required=True, help="kmp:K | pure:K | codim1-M:K | sym-z:K | unitary-R:K,M | torinv-S:K")

    vp = sub.add_parser("verify", parents=[common], help="run a verification suite")
    vp.add_argument("suite", choices=suites.SUITES)
    vp.add_argument("--n", type=int)
    vp.add_argument("--k", type=int)
    vp.add_argument("--d", type=int)
    vp.add_argument("--k-max", type=int, default=None)
    vp.add_argument("--coeffs", type=_fraction_list)
    vp.add_argument("--weights", type=_fraction_list)
    vp.add_argument("--graph")

    wp = sub.add_parser("sweep", parents=[common], help="random conjecture sweep")
    wp.add_argument("--n", type=int, required=True)
    wp.add_argument("--k-max", type=int, required=True)
    wp.add_argument("--trials", type=int, required=True)
    wp.add_argument("--p", type=float, default=0.5, help="edge probability")
    wp.add_argument("--law", default="uniform01", choices=("uniform01", "unit", "exponential"))
    wp.add_argument("--family", default="random", choices=("random", "codim1"))
    wp.add_argument("--workers", type=int, default=1)

    gp = sub.add_parser("wg", parents=[common], help="print a Weingarten table")
    gp.add_argument("--k", type=int, required=True)
    gp.add_argument("--d", type=int, required=True)
    return parser


def parse_rep(text: str) -> tuple[str, tuple[int, ...]]:
    name, _, args = text.partition(":")
    if name not in REPS or not args:
        raise UsageError(f"unknown representation {text!r}; expected one of {', '.join(REPS)} with ':K'")
    try:
        nums = tuple(int(x) for x in args.split(","))
    except ValueError as exc:
        raise UsageError(f"bad parameters in {text!r}") from exc
    want = 2 if name == "unitary-R" else 1
    if len(nums) != want or any(x < 0 for x in nums):
        raise UsageError(f"{name} takes {want} non-negative integer parameter(s)")
    if name != "unitary-R" and nums[0] < 1:
        raise UsageError(f"{name} needs K >= 1")
    return name, nums


def _codim1_weights(graph: Hypergraph) -> list:
    full = (1 << graph.n) - 1
    c = [0] * graph.n
    for mask, w in graph.items():
        if popcount(mask) != graph.n - 1:
            raise UsageError("codim1-M needs a hypergraph supported on (n-1)-subsets")
        c[(full ^ mask).bit_length() - 1] = w
    return c


def torinv_laplacian(graph: Hypergraph, k: int, exact: bool) -> Operator:
    from .combinatorics import multichoose

    dim = multichoose(graph.n, k)
    total = zeros((dim, dim), True)
    ident = eye(dim, True)
    for mask, w in graph.as_exact().items():
        total = total + (ident - projection_torinv_skk(mask, graph.n, k).matrix) * w
    op = Operator(total, f"L TorInv S_{{{k},{k}}}(n={graph.n})")
    return op if exact else op.to_float()


def build_operator(graph: Hypergraph, rep: str, nums: tuple, exact: bool):
    if rep == "kmp":
        return spectrum(kmp_laplacian(graph, nums[0], exact))
    if rep == "pure":
        return spectrum(pure_operator(graph, nums[0], exact), block=f"pure:{nums[0]}")
    if rep == "codim1-M":
        inst = Codim1Instance.of(_codim1_weights(graph), exact)
        return m_k_spectrum(inst, nums[0], exact)
    if rep == "sym-z":
        return spectrum(laplacian_zk(graph, nums[0], exact))
    if rep == "unitary-R":
        return spectrum(laplacian_rkm(graph, nums[0], nums[1], exact))
    return spectrum(torinv_laplacian(graph, nums[0], exact))


def _load_graph(path: str | None, exact: bool) -> Hypergraph:
    if path is None:
        raise UsageError("--graph is required for this command")
    try:
        return load(path, True if exact else None)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _require(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"verify {args.suite} needs {' '.join(missing)}")


def run_verify(args) -> dict:
    exact = args.exact
    tol = args.tol
    s = args.suite
    if s == "path-example":
        return suites.verify_path_example(exact, tol or 1e-9)
    if s == "mean-field":
        _require(args, "n", "coeffs")
        if len(args.coeffs) != args.n + 1:
            raise UsageError(f"--coeffs needs {args.n + 1} values c_0..c_n")
        return suites.verify_mean_field(args.n, args.coeffs, exact, args.k_max or 4, tol or 1e-9)
    if s == "codim1":
        _require(args, "n", "weights")
        if len(args.weights) != args.n:
            raise UsageError(f"--weights needs {args.n} values")
        return suites.verify_codim1(args.n, args.weights, exact, args.k_max or 6, tol or 1e-9)
    if s == "kmp-equiv":
        _require(args, "n", "k")
        graph = _load_graph(args.graph, True) if args.graph else None
        return suites.verify_kmp_equiv(args.n, args.k, graph, exact, tol or 1e-12)
    if s == "sn-containment":
        _require(args, "k")
        return suites.verify_sn_containment(_load_graph(args.graph, exact), args.k, exact, tol or 1e-7)
    if s == "weingarten":
        _require(args, "k", "d")
        return suites.verify_weingarten(args.k, args.d)
    _require(args, "k_max")
    return suites.verify_conjectures(_load_graph(args.graph, exact), args.k_max, exact, tol or 1e-8)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _spectrum_csv(spec) -> str:
    lines = ["value,multiplicity"]
    for v, m in spec.eigenvalues:
        lines.append(f"{float(v):.15g},{m}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "spectrum":
            rep, nums = parse_rep(args.rep)
            graph = _load_graph(args.graph, args.exact)
            spec = build_operator(graph, rep, nums, args.exact)
            _emit(_spectrum_csv(spec) if args.format == "csv" else json.dumps(spec.to_json(), indent=2), args.out)
            return EXIT_OK
        if args.command == "verify":
            report = run_verify(args)
            _emit(json.dumps(report, indent=2), args.out)
            return EXIT_OK if report["pass"] else EXIT_BREACH
        if args.command == "sweep":
            config = SweepConfig(
                n=args.n,
                k_max=args.k_max,
                trials=args.trials,
                seed=args.seed,
                edge_probability=args.p,
                weight_law=args.law,
                mode="exact" if args.exact else "float",
                tolerance=args.tol if args.tol is not None else 1e-8,
                family=args.family,
                workers=args.workers,
            )
            try:
                config.validate()
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
            records, summary = sweep(config)
            text = to_csv(records, config.k_max) if args.format == "csv" else to_json(records, summary, config)
            _emit(text, args.out)
            print(
                f"trials={summary.trials} connected={summary.connected} "
                f"violations={summary.total_violations} {summary.violations}",
                file=sys.stderr,
            )
            return EXIT_OK
        table = wg_table(args.k, args.d)
        _emit(json.dumps(table.to_json()["values"], indent=2), args.out)
        return EXIT_OK
    except UsageError as exc:
        print(f"kmp-spectra: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceGuardError as exc:
        print(f"kmp-spectra: resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InvariantBreach as exc:
        print(f"kmp-spectra: invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH
    except HypergraphParseError as exc:
        print(f"kmp-spectra: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"kmp-spectra: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
