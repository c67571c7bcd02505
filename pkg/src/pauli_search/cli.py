"""Command-line entry point.

Exit status is 0 on success, 1 on validation errors and 2 on I/O errors.
"""

from __future__ import annotations

import argparse
import sys

from . import bell, densefile, experiments
from .oracle import bell_distribution_dense, node_value_exact
from .pauli_core import MAX_DENSE_QUBITS, DenseState, coefficient, SizeGuardError
from .samplers import random_stabilizer, sample_dense, sample_pauli_singleton, sample_stabilizer
from .search import DEFAULT_BUDGET, find_above_threshold, find_top_t


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _parse_state_spec(spec: str) -> tuple[str, list[str]]:
    kind, _, rest = spec.partition(":")
    args = rest.split(":") if rest else []
    expected = {"singleton": 1, "stabilizer": 2, "dense": 1}
    if kind not in expected or len(args) != expected[kind]:
        raise UsageError(
            f"bad state spec {spec!r}; use singleton:N, stabilizer:N:SEED or dense:FILE"
        )
    return kind, args


def _positive_int(text: str, what: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise UsageError(f"{what} must be an integer, got {text!r}") from None
    if value < 1:
        raise UsageError(f"{what} must be at least 1, got {value}")
    return value


def _dense_state(spec: str) -> DenseState:
    kind, args = _parse_state_spec(spec)
    if kind == "singleton":
        return DenseState.pauli_singleton(_positive_int(args[0], "n"))
    if kind == "stabilizer":
        n = _positive_int(args[0], "n")
        if n > MAX_DENSE_QUBITS:
            raise SizeGuardError(f"dense computation limited to n <= {MAX_DENSE_QUBITS}, got n = {n}")
        return DenseState(random_stabilizer(n, int(args[1])).to_dense())
    return densefile.read_dense(args[0])


def _clean(value: float) -> float:
    return round(value, 12) + 0.0


def cmd_sample(args) -> int:
    kind, spec_args = _parse_state_spec(args.state)
    if args.shots < 0:
        raise UsageError("--shots must be non-negative")
    if kind == "singleton":
        samples = sample_pauli_singleton(_positive_int(spec_args[0], "n"), args.shots, args.seed)
    elif kind == "stabilizer":
        tab = random_stabilizer(_positive_int(spec_args[0], "n"), int(spec_args[1]))
        samples = sample_stabilizer(tab, args.shots, args.seed)
    else:
        samples = sample_dense(densefile.read_dense(spec_args[0]), args.shots, args.seed)
    summary = f"n={samples.n} M={samples.M} source={args.state}"
    if args.out == "-":
        sys.stdout.write(bell.format_samples(samples))
        print(summary, file=sys.stderr)
    else:
        bell.write_samples(samples, args.out)
        print(summary)
    return 0


def _parse_mode(mode: str) -> tuple[str, float]:
    kind, _, value = mode.partition(":")
    try:
        if kind == "p1":
            eps = float(value)
            if not eps > 0:
                raise ValueError
            return kind, eps
        if kind == "p2":
            return kind, _positive_int(value, "t")
    except ValueError:
        pass
    raise UsageError(f"bad search mode {mode!r}; use p1:EPSILON or p2:T")


def cmd_search(args) -> int:
    kind, value = _parse_mode(args.mode)
    samples = bell.read_samples(args.samples)
    if kind == "p1":
        result = find_above_threshold(samples, value, budget=args.budget)
    else:
        result = find_top_t(samples, int(value), budget=args.budget)
    out = ["pauli,weight_estimate"]
    out += [f"{p},{w!r}" for p, w in result.found]
    sys.stdout.write("\n".join(out) + "\n")
    st = result.stats
    print(
        f"nodes_expanded={st.nodes_expanded} leaves_emitted={st.leaves_emitted} "
        f"frontier_peak={st.frontier_peak} termination={st.termination}",
        file=sys.stderr,
    )
    return 0


def cmd_experiment(args) -> int:
    cfg = experiments.ExperimentConfig(
        kind=args.kind,
        n_values=args.n or experiments.DEFAULT_N.get(args.kind, ()),
        m_values=args.shots or experiments.DEFAULT_M,
        repetitions=args.reps if args.reps is not None else experiments.DEFAULT_REPS.get(args.kind, 1),
        epsilon=args.epsilon,
        t=args.t,
        seed=args.seed,
        budget=args.budget,
        timing=args.timing,
    )
    rows = experiments.run_experiment(cfg, jobs=args.jobs)
    text = experiments.format_csv(rows)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    if args.svg:
        svg = experiments.render_svg(experiments.read_csv(text), title=cfg.kind)
        with open(args.svg, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    return 0


def cmd_oracle(args) -> int:
    rho = _dense_state(args.state)
    kind, _, value = args.query.partition(":")
    if kind == "coeff":
        print(repr(_clean(coefficient(rho, value))))
    elif kind == "node":
        print(repr(_clean(node_value_exact(rho, value))))
    elif kind == "dist" and not value:
        for outcome, p in bell_distribution_dense(rho).as_dict().items():
            print(f"{outcome} {_clean(p)!r}")
    else:
        raise UsageError(f"bad query {args.query!r}; use coeff:NU, node:MU or dist")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pauli-search", description="Find the largest Pauli coefficients of a state.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sample", help="simulate Bell sampling and write a sample file")
    p.add_argument("--state", required=True, help="singleton:N | stabilizer:N:SEED | dense:FILE")
    p.add_argument("--shots", type=int, required=True, help="number of runs M")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-", help="output path ('-' for stdout)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("search", help="run the tree search over a sample file")
    p.add_argument("samples", help="sample file")
    p.add_argument("--mode", required=True, help="p1:EPSILON or p2:T")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum node expansions")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("experiment", help="run a simulation campaign and write CSV")
    p.add_argument("--kind", required=True, choices=experiments.KINDS)
    p.add_argument("--n", type=_int_list, help="comma-separated qubit counts")
    p.add_argument("--shots", type=_int_list, help="comma-separated sample sizes M")
    p.add_argument("--reps", type=int, help="repetitions per (n, M) cell")
    p.add_argument("--epsilon", type=float, default=0.5, help="threshold for singleton-p1")
    p.add_argument("--t", type=int, help="number of strings for stabilizer-p2 (default 2^n)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--out", default="-", help="CSV path ('-' for stdout)")
    p.add_argument("--svg", help="optional SVG plot path")
    p.add_argument("--timing", action="store_true", help="record wall time (makes output non-reproducible)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("oracle", help="print exact values for a small state")
    p.add_argument("--state", required=True, help="singleton:N | stabilizer:N:SEED | dense:FILE")
    p.add_argument("--query", required=True, help="coeff:NU | node:MU | dist")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
