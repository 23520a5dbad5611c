"""Command-line entry point: ``onebitcs <subcommand> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .analysis import BudgetQuery, adversarial_pair, budget_csv, measurement_budget
from .designs import (
    LIST_DISJUNCT,
    LIST_UNION_FREE,
    DesignParams,
    construct_list_disjunct,
    construct_list_union_free,
    find_disjunct_violation,
    find_union_free_violation,
)
from .errors import OneBitCSError
from .formats import (
    parse_fraction,
    read_design,
    read_matrix,
    read_measurement,
    read_signal,
    write_design,
    write_matrix,
    write_measurement,
    write_signal,
)
from .harness import load_config, run_experiment
from .recovery import (
    decode_approximate,
    decode_l0_bruteforce,
    decode_superset,
    decode_superset_bounded_range,
    decode_superset_same_sign,
)
from .sensing import (
    GAUSSIAN,
    STRICT,
    TERNARY,
    THM1,
    THM3,
    THM4,
    THM5,
    build_gaussian_matrix,
    build_thm1_matrix,
    build_thm3_matrix,
    build_thm4_matrix,
    build_thm5_matrix,
    measure,
)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _fmt_set(s) -> str:
    return "{" + ", ".join(str(j + 1) for j in sorted(s)) + "}"


def cmd_construct(a: argparse.Namespace) -> int:
    if a.what in (LIST_DISJUNCT, LIST_UNION_FREE):
        if a.l is None:
            raise OneBitCSError(f"{a.what} needs --l")
        params = DesignParams(a.n, a.k, a.l, alpha=a.alpha, target_m=a.m, seed=a.seed)
        if a.what == LIST_DISJUNCT:
            D = construct_list_disjunct(params)
        else:
            D = construct_list_union_free(params)
        _emit(write_design(D), a.output)
        return 0
    need = {THM1: ("eps",), THM3: ("eps",), THM4: ("eps", "eta"), THM5: ("eps", "R"), GAUSSIAN: ("m",)}
    missing = [f"--{p}" for p in need[a.what] if getattr(a, p) is None]
    if missing:
        raise OneBitCSError(f"{a.what} needs {' '.join(missing)}")
    if a.what == THM1:
        A = build_thm1_matrix(a.n, a.k, a.eps, a.seed)
    elif a.what == THM3:
        A = build_thm3_matrix(a.n, a.k, a.eps, a.seed)
    elif a.what == THM4:
        A = build_thm4_matrix(a.n, a.k, a.eps, a.eta, a.seed)
    elif a.what == THM5:
        A = build_thm5_matrix(a.n, a.k, a.eps, a.R, a.seed)
    else:
        A = build_gaussian_matrix(a.n, a.m, a.seed)
    _emit(write_matrix(A), a.output)
    return 0


def cmd_verify(a: argparse.Namespace) -> int:
    D = read_design(Path(a.design).read_text())
    if D.kind == LIST_UNION_FREE:
        hit = find_union_free_violation(D, D.k, D.l, D.alpha)
    else:
        hit = find_disjunct_violation(D, D.k, D.l)
    if hit is not None:
        S, T = hit
        print(f"violation: {D.kind} fails at S={_fmt_set(S)} T={_fmt_set(T)}", file=sys.stderr)
        return 1
    print(f"certified: {D.kind} k={D.k} l={D.l} m={D.m} n={D.n}")
    return 0


def cmd_measure(a: argparse.Namespace) -> int:
    A = read_matrix(Path(a.matrix).read_text())
    x = read_signal(Path(a.signal).read_text())
    _emit(write_measurement(measure(A, x, a.mode, a.tau)), a.output)
    return 0


def cmd_decode(a: argparse.Namespace) -> int:
    A = read_matrix(Path(a.matrix).read_text())
    mode = STRICT if A.regime == GAUSSIAN else TERNARY
    y = read_measurement(Path(a.measurement).read_text(), mode)
    if A.regime == THM1:
        rep = decode_approximate(A, y, a.k, a.eps)
    elif A.regime == THM3:
        rep = decode_superset(A, y, a.k, a.eps)
    elif A.regime == THM4:
        rep = decode_superset_bounded_range(A, y, a.k, a.eps, a.eta if a.eta is not None else A.param("eta"))
    elif A.regime == THM5:
        rep = decode_superset_same_sign(A, y, a.k, a.eps, a.R if a.R is not None else A.param("R"))
    else:
        if a.eta is None:
            raise OneBitCSError("decoding gaussian measurements needs --eta")
        xh = decode_l0_bruteforce(A, y, a.k, a.eta)
        print(write_signal(xh), end="")
        return 0
    print(f"support {_fmt_set(rep.returned)}")
    if a.signal:
        x = read_signal(Path(a.signal).read_text())
        rep = rep.against(x.entries.keys())
        print(f"fp={rep.false_positives} fn={rep.false_negatives} "
              f"approximate_ok={int(rep.is_approximate())} superset_ok={int(rep.is_superset())}")
    return 0


def cmd_adversary(a: argparse.Namespace) -> int:
    A = read_matrix(Path(a.matrix).read_text())
    pair = adversarial_pair(A, a.k, a.eps, a.seed)
    if pair is None:
        print("none")
        return 0
    x1, x2 = pair
    if a.output:
        Path(f"{a.output}.1").write_text(write_signal(x1))
        Path(f"{a.output}.2").write_text(write_signal(x2))
    else:
        sys.stdout.write(write_signal(x1) + write_signal(x2))
    return 0


def cmd_budget(a: argparse.Namespace) -> int:
    problem, _, signal_class = a.regime.partition("/")
    queries = [BudgetQuery(problem, signal_class, a.n, k, a.eps, a.eta, a.R) for k in a.k]
    if len(queries) == 1 and not a.csv:
        print(measurement_budget(queries[0]))
    else:
        _emit(budget_csv(queries), a.output)
    return 0


def cmd_experiment(a: argparse.Namespace) -> int:
    cfg = load_config(a.config)
    table = run_experiment(cfg)
    out = a.output
    if out:
        Path(out).write_text(table.to_csv())
    elif not cfg.output:
        sys.stdout.write(table.to_csv())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="onebitcs", description="Support recovery from one-bit measurements.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    c = sub.add_parser("construct", help="emit a design or sensing-matrix file")
    c.add_argument("what", choices=[LIST_DISJUNCT, LIST_UNION_FREE, THM1, THM3, THM4, THM5, GAUSSIAN])
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--l", type=int)
    c.add_argument("--alpha", type=parse_fraction)
    c.add_argument("--eps", type=parse_fraction)
    c.add_argument("--eta", type=parse_fraction)
    c.add_argument("--R", type=int)
    c.add_argument("--m", type=int, help="row count (gaussian) or row target (designs)")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check a design file exhaustively")
    v.add_argument("design")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("measure", help="measure a signal file with a matrix file")
    m.add_argument("matrix")
    m.add_argument("signal")
    m.add_argument("--mode", choices=[TERNARY, STRICT], default=TERNARY)
    m.add_argument("--tau", type=float, default=0.0)
    m.add_argument("-o", "--output")
    m.set_defaults(func=cmd_measure)

    d = sub.add_parser("decode", help="recover a support from a measurement file")
    d.add_argument("matrix")
    d.add_argument("measurement")
    d.add_argument("--k", type=int, required=True)
    d.add_argument("--eps", type=parse_fraction, required=True)
    d.add_argument("--eta", type=parse_fraction)
    d.add_argument("--R", type=int)
    d.add_argument("--signal", help="true signal file, to report errors against")
    d.set_defaults(func=cmd_decode)

    ad = sub.add_parser("adversary", help="build two confusable sparse signals")
    ad.add_argument("matrix")
    ad.add_argument("--k", type=int, required=True)
    ad.add_argument("--eps", type=parse_fraction, required=True)
    ad.add_argument("--seed", type=int, default=0)
    ad.add_argument("-o", "--output", help="write PREFIX.1 and PREFIX.2")
    ad.set_defaults(func=cmd_adversary)

    b = sub.add_parser("budget", help="row count of the construction for a regime")
    b.add_argument("regime", help="problem/class, e.g. superset/general")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--k", type=int, nargs="+", required=True)
    b.add_argument("--eps", type=parse_fraction)
    b.add_argument("--eta", type=parse_fraction)
    b.add_argument("--R", type=int)
    b.add_argument("--csv", action="store_true", help="print a CSV table even for one query")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_budget)

    e = sub.add_parser("experiment", help="run a config file and print the results CSV")
    e.add_argument("config")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_experiment)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OneBitCSError, OSError, ValueError) as exc:
        print(f"onebitcs {args.command}: error: {exc}", file=sys.stderr)
        return 2
