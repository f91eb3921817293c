"""Command-line entry point.

Exit codes: 0 success, 1 precondition error, 2 violated identity
(solver or construction bug), 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import bridge, formulas, search
from .dist import DiscreteDistribution, iid_tail, round_probs, round_values
from .hypergraph import Hypergraph, clique, cov, matching_number, random_hypergraph
from .lp import fractional_cover, fractional_matching, verify_duality
from .numeric import ConsistencyError, PreconditionError, format_rational, parse_rational, to_decimal

EXIT_OK = 0
EXIT_PRECONDITION = 1
EXIT_CONSISTENCY = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _load_dist(args: argparse.Namespace) -> DiscreteDistribution:
    text = args.dist
    path = Path(text)
    if not text.lstrip().startswith("[") and path.exists():
        text = path.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"distribution is not valid JSON: {exc}") from exc
    return DiscreteDistribution.from_list(data)


def _load_hypergraph(args: argparse.Namespace) -> Hypergraph:
    try:
        return Hypergraph.read(args.file)
    except OSError as exc:
        raise PreconditionError(f"cannot read hypergraph file: {exc}") from exc


def _with_decimals(d: dict[str, Any], *keys: str) -> dict[str, Any]:
    for key in keys:
        if d.get(key) is not None:
            d[key + "_decimal"] = to_decimal(parse_rational(d[key]))
    return d


# -- subcommand handlers: each returns a dict (single record) or list of dicts (table)


def cmd_mk(args):
    rep = formulas.conjectured_m(args.k, args.x)
    out = {"k": args.k, "x": format_rational(args.x), **rep.to_dict()}
    return _with_decimals(out, "value")


def cmd_m2(args):
    return _with_decimals({"x": format_rational(args.x), "value": format_rational(formulas.hoeffding_shrikhande_m2(args.x))}, "value")


def cmd_samuels(args):
    value, t = formulas.samuels_s(args.k, args.x)
    out = {"k": args.k, "x": format_rational(args.x), "value": format_rational(value), "argmin_t": t}
    return _with_decimals(out, "value")


def cmd_roots(args):
    fn = formulas.x0 if args.which == "x0" else formulas.x1
    iv = fn(args.k, args.eps)
    return {"which": args.which, "k": args.k, "eps": format_rational(args.eps), **iv.to_dict()}


def cmd_erdos_bound(args):
    return {"n": args.n, "k": args.k, "s": args.s, "bound": formulas.erdos_bound(args.n, args.k, args.s)}


def cmd_nu(args):
    h = _load_hypergraph(args)
    return {"n": h.n, "k": h.k, "edges": len(h), "nu": matching_number(h)}


def cmd_nu_star(args):
    h = _load_hypergraph(args)
    nu, w = fractional_matching(h)
    tau, c = fractional_cover(h)
    out = {"nu_star": format_rational(nu), "tau_star": format_rational(tau), "matching": w.to_dict(), "cover": c.to_dict()}
    if nu != tau:
        raise ConsistencyError(f"nu*={nu} differs from tau*={tau}")
    return _with_decimals(out, "nu_star")


def cmd_duality(args):
    rep = verify_duality(_load_hypergraph(args))
    return rep.to_dict()


def cmd_tail(args):
    d = _load_dist(args)
    value = iid_tail(d, args.k, args.threshold)
    out = {"k": args.k, "threshold": format_rational(args.threshold), "mean": format_rational(d.mean()), "tail": format_rational(value)}
    return _with_decimals(out, "tail")


def cmd_round(args):
    d = _load_dist(args)
    out = d
    if args.values is not None:
        out = round_values(out, args.values)
    if args.probs is not None:
        out = round_probs(out, args.probs)
    return {"input": d.to_list(), "output": out.to_list(), "mean_in": format_rational(d.mean()), "mean_out": format_rational(out.mean())}


def cmd_bridge_check(args):
    d = _load_dist(args)
    inst = bridge.dist_to_hypergraph(d, args.k, args.n)
    ident = bridge.tail_identity_check(inst, args.k)
    if args.write_prefix:
        inst.write(args.write_prefix + ".hg", args.write_prefix + ".json")
    out = {"r": inst.r, "n": inst.n, "cover_size": format_rational(inst.cover_size()), **ident.to_dict()}
    return _with_decimals(out, "lhs")


def cmd_forward(args):
    return bridge.hypergraph_to_tail_bound(_load_hypergraph(args)).to_dict()


def cmd_density_probe(args):
    rows = bridge.density_convergence_probe(args.family, args.k, args.x, args.n_list)
    return [_with_decimals(r.to_dict(), "density", "limit", "gap") for r in rows]


def cmd_search_mk(args):
    rep = search.grid_search_mk(args.k, args.x, args.m, args.n_den, args.max_support)
    return _with_decimals(rep.to_dict(), "best_tail", "ceiling")


def cmd_hunt(args):
    return search.counterexample_hunt(args.k, args.s, args.n, args.trials, args.seed).to_dict()


def cmd_witness_probe(args):
    return search.witness_optimality_probe(args.k, args.x, args.d, args.witness).to_dict()


def cmd_gen(args):
    if args.family == "cov":
        h = cov(args.n, args.k, args.param)
    elif args.family == "clique":
        h = clique(args.n, args.k, args.param)
    else:
        h = random_hypergraph(args.n, args.k, args.param, args.seed)
    return h.to_text()


def sweep_rows(k: int, points: int) -> list[dict[str, Any]]:
    rows = []
    for j in range(points + 1):
        x = Fraction(j, points * k)
        rep = formulas.conjectured_m(k, x)
        s_value, t = formulas.samuels_s(k, x)
        rows.append(
            {
                "x_num": x.numerator,
                "x_den": x.denominator,
                "m_value_num": rep.value.numerator,
                "m_value_den": rep.value.denominator,
                "regime": rep.regime,
                "s_value_num": s_value.numerator,
                "s_value_den": s_value.denominator,
                "argmin_t": "" if t is None else t,
            }
        )
    return rows


def cmd_sweep(args):
    return sweep_rows(args.k, args.points)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tailmatch", description="Exact tail-probability and hypergraph-matching workbench.")
    p.add_argument("--format", choices=("json", "csv", "plain"), default=None,
                   help="output format (default json; csv for sweep)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed, echoed in every output (default 0)")
    # the same options after the subcommand; SUPPRESS keeps them from clobbering the top-level values
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "plain"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text, parents=[common])
        sp.set_defaults(func=func)
        return sp

    sp = add("mk", cmd_mk, "conjectured maximal tail m_k(x)")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--x", type=rational, required=True)

    sp = add("m2", cmd_m2, "two-variable maximal tail (three-branch formula)")
    sp.add_argument("--x", type=rational, required=True)

    sp = add("samuels", cmd_samuels, "Samuels bound s_k(x) and its minimising t")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--x", type=rational, required=True)

    sp = add("roots", cmd_roots, "isolate the x0 or x1 breakpoint")
    sp.add_argument("--which", choices=("x0", "x1"), required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--eps", type=rational, default=Fraction(1, 10**9))

    sp = add("erdos-bound", cmd_erdos_bound, "Erdős matching bound for (n, k, s)")
    for name in ("--n", "--k", "--s"):
        sp.add_argument(name, type=int, required=True)

    for name, func, text in (
        ("nu", cmd_nu, "integral matching number"),
        ("nu-star", cmd_nu_star, "fractional matching and cover with witnesses"),
        ("duality", cmd_duality, "solve both LPs and compare"),
        ("forward", cmd_forward, "edge density versus tail of optimal cover weights"),
    ):
        sp = add(name, func, text)
        sp.add_argument("--file", required=True, help="hypergraph text file")

    sp = add("tail", cmd_tail, "exact i.i.d. tail P(X_1+...+X_k >= threshold)")
    sp.add_argument("--dist", required=True, help="JSON list of [value, prob] pairs, or a file holding one")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--threshold", type=rational, default=Fraction(1))

    sp = add("round", cmd_round, "value and/or probability rounding of a distribution")
    sp.add_argument("--dist", required=True)
    sp.add_argument("--values", type=int, help="round values up to multiples of 1/m")
    sp.add_argument("--probs", type=int, help="round probabilities to multiples of 1/n")

    sp = add("bridge-check", cmd_bridge_check, "build the weighted hypergraph and check the tail identity")
    sp.add_argument("--dist", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--write-prefix", help="write PREFIX.hg and PREFIX.json")

    sp = add("density-probe", cmd_density_probe, "edge densities of Cov/Cl sequences against their limits")
    sp.add_argument("--family", choices=("cov", "clique"), required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--x", type=rational, required=True)
    sp.add_argument("--n-list", type=int_list, required=True)

    sp = add("search-mk", cmd_search_mk, "exhaustive grid search for the largest tail")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--x", type=rational, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n-den", type=int, required=True)
    sp.add_argument("--max-support", type=int, required=True)

    sp = add("hunt", cmd_hunt, "random greedy search for hypergraphs beating the Erdős bound")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--trials", type=int, default=100)

    sp = add("witness-probe", cmd_witness_probe, "local perturbations of an extremal witness")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--x", type=rational, required=True)
    sp.add_argument("--d", type=int, default=100)
    sp.add_argument("--witness", choices=("one", "inv_k"), default="one")

    sp = add("gen", cmd_gen, "write a cov/clique/random hypergraph in text format")
    sp.add_argument("--family", choices=("cov", "clique", "random"), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--param", type=int, required=True, help="s for cov, t for clique, edge count for random")

    sp = add("sweep", cmd_sweep, "CSV of m_k and s_k over x = j/(points*k)")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--points", type=int, default=200)

    return p


def _scalar(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def render(result: Any, fmt: str, seed: int, command: str) -> str:
    if isinstance(result, str):  # already a file format (gen)
        return result
    if fmt == "json":
        if isinstance(result, list):
            payload = {"command": command, "seed": seed, "rows": result}
        else:
            payload = {"command": command, "seed": seed, **result}
        return json.dumps(payload) + "\n"
    rows = result if isinstance(result, list) else [result]
    if fmt == "csv":
        buf = io.StringIO()
        fields = list(rows[0]) if rows else []
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields + ["seed"])
        for row in rows:
            writer.writerow([_scalar(row.get(f)) for f in fields] + [seed])
        return buf.getvalue()
    lines = [f"# command={command} seed={seed}"]
    for i, row in enumerate(rows):
        if i:
            lines.append("")
        lines.extend(f"{key}: {_scalar(val)}" for key, val in row.items())
    return "\n".join(lines) + "\n"


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=stderr)
        print(parser.format_usage().rstrip(), file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        result = args.func(args)
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=stderr)
        return EXIT_CONSISTENCY
    except (PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PRECONDITION
    fmt = args.format or ("csv" if args.command == "sweep" else "json")
    stdout.write(render(result, fmt, args.seed, args.command))
    return EXIT_OK


def main() -> None:
    sys.exit(run())
