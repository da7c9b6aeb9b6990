"""Command-line interface.

Exit codes: 0 success, 1 usage or configuration error, 2 data error
(unparseable input, too few observations, degenerate data).
"""

from __future__ import annotations

import argparse
import contextlib
import secrets
import sys
from dataclasses import asdict, dataclass, field

from .dataio import Dataset, dump_json, load_csv, write_rows
from .errors import DegenerateInputError, KemenyError, SizeError, UsageError
from .estimators import BOUNDED_METHODS, ESTIMATORS, Method, estimate
from .inference import test_correlation
from .simulate import GeneratorSpec, qq_pairs, run_null_simulation

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    x: str | None = None
    y: str | None = None
    method: str = "kemeny"
    alpha: float = 0.05
    format: str = "json"
    out: str | None = None
    generator: GeneratorSpec | None = None
    reps: int = 2000
    stats_out: str | None = None
    df: int | None = None
    column: str | None = None
    seed_was_generated: bool = field(default=False, repr=False)

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise UsageError(f"--alpha must lie in (0, 1), got {self.alpha}")
        if self.format not in ("json", "csv"):
            raise UsageError(f"--format must be json or csv, got {self.format!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kemeny", description="Kemeny rank correlation and null-distribution tools.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def pair_args(p):
        p.add_argument("--input", required=True, help="CSV file with a header row, or - for stdin")
        p.add_argument("--x", required=True, help="first column name")
        p.add_argument("--y", required=True, help="second column name")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("correlate", help="estimate a correlation and test independence")
    pair_args(p)
    p.add_argument("--method", choices=[m.value for m in Method if m in BOUNDED_METHODS], default="kemeny")
    p.add_argument("--alpha", type=float, default=0.05)

    p = sub.add_parser("compare", help="all estimators side by side")
    pair_args(p)

    p = sub.add_parser("simulate", help="null-distribution Monte-Carlo run")
    p.add_argument("--dist", choices=("gaussian", "ordinal", "zero-inflated"), default="gaussian")
    p.add_argument("--n", type=int, default=30)
    p.add_argument("--reps", type=int, default=2000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--levels", type=int, default=5, help="ordinal level count")
    p.add_argument("--zero-mass", type=float, default=0.3, help="zero-inflation probability")
    p.add_argument("--out", required=True, help="JSON report path")
    p.add_argument("--stats-out", help="also write the t statistics as a one-column CSV")

    p = sub.add_parser("qq", help="QQ pairs of a statistics file against t_df")
    p.add_argument("--input", required=True)
    p.add_argument("--df", type=int, required=True)
    p.add_argument("--column", help="column to use (default: first)")
    p.add_argument("--out", required=True)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        command=ns.command,
        input=getattr(ns, "input", None),
        x=getattr(ns, "x", None),
        y=getattr(ns, "y", None),
        method=getattr(ns, "method", "kemeny"),
        alpha=getattr(ns, "alpha", 0.05),
        format=getattr(ns, "format", "json"),
        out=getattr(ns, "out", None),
        stats_out=getattr(ns, "stats_out", None),
        df=getattr(ns, "df", None),
        column=getattr(ns, "column", None),
    )
    if ns.command == "simulate":
        seed = ns.seed
        if seed is None:
            seed = secrets.randbits(64)
            cfg.seed_was_generated = True
        cfg.generator = GeneratorSpec(
            kind=ns.dist, n=ns.n, seed=seed, levels=ns.levels, zero_mass=ns.zero_mass
        )
        cfg.reps = ns.reps
    if ns.command == "qq" and (ns.df is None or ns.df < 1):
        raise UsageError(f"--df must be a positive integer, got {ns.df}")
    return cfg


@contextlib.contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def _select(config: RunConfig, dataset: Dataset):
    for name in (config.x, config.y):
        if name not in dataset.columns:
            raise UsageError(f"no column {name!r} in {dataset.source}; have {list(dataset.columns)}")
    return dataset.column(config.x), dataset.column(config.y)


def cmd_correlate(config: RunConfig, dataset: Dataset) -> int:
    x, y = _select(config, dataset)
    est = estimate(config.method, x, y)
    res = test_correlation(est.value, est.n, config.alpha)
    with _output(config.out) as fh:
        if config.format == "json":
            dump_json(
                {
                    "command": "correlate",
                    "input": dataset.source,
                    "x": config.x,
                    "y": config.y,
                    "estimate": {"method": est.method.value, "value": est.value, "n": est.n},
                    "test": asdict(res),
                },
                fh,
            )
        else:
            header = ["method", "value", "n", *asdict(res).keys()]
            write_rows(fh, header, [[est.method.value, est.value, est.n, *asdict(res).values()]])
    return EXIT_OK


def cmd_compare(config: RunConfig, dataset: Dataset) -> int:
    x, y = _select(config, dataset)
    rows = []
    status = EXIT_OK
    for method, fn in ESTIMATORS.items():
        try:
            est = fn(x, y)
            rows.append({"method": method.value, "value": est.value, "n": est.n, "status": "ok"})
        except (DegenerateInputError, SizeError) as exc:
            rows.append({"method": method.value, "value": None, "n": len(x), "status": f"degenerate: {exc}"})
            status = EXIT_DATA
    with _output(config.out) as fh:
        if config.format == "json":
            dump_json({"command": "compare", "input": dataset.source, "x": config.x, "y": config.y, "rows": rows}, fh)
        else:
            write_rows(fh, ["method", "value", "n", "status"], [list(r.values()) for r in rows])
    if status != EXIT_OK:
        print("error: DegenerateInput: at least one estimator is undefined on this data", file=sys.stderr)
    return status


def cmd_simulate(config: RunConfig) -> int:
    spec = config.generator
    if config.seed_was_generated:
        print(f"seed={spec.seed}")
    report = run_null_simulation(spec, config.reps)
    with _output(config.out) as fh:
        dump_json({"command": "simulate", **report.to_dict()}, fh)
    if config.stats_out:
        with _output(config.stats_out) as fh:
            write_rows(fh, ["t"], ([float(t)] for t in report.statistics))
    print(f"KS D={report.ks.d!r} p={report.ks.p!r} n={report.ks.n} excluded={len(report.excluded)}")
    return EXIT_OK


def cmd_qq(config: RunConfig) -> int:
    data = load_csv(config.input)
    if not data.columns:
        raise SizeError("statistics file has no columns")
    name = config.column or next(iter(data.columns))
    if name not in data.columns:
        raise UsageError(f"no column {name!r} in {data.source}")
    stats = data.column(name)
    if stats.shape[0] == 0:
        raise SizeError("statistics file has no rows")
    pairs = qq_pairs(stats, config.df)
    with _output(config.out) as fh:
        write_rows(fh, ["theoretical", "empirical"], ([float(a), float(b)] for a, b in pairs))
    return EXIT_OK


def run(config: RunConfig) -> int:
    if config.command == "simulate":
        return cmd_simulate(config)
    if config.command == "qq":
        return cmd_qq(config)
    dataset = load_csv(config.input)
    if config.command == "correlate":
        return cmd_correlate(config, dataset)
    return cmd_compare(config, dataset)


def _error_name(exc: KemenyError) -> str:
    name = type(exc).__name__
    return "DegenerateInput" if isinstance(exc, DegenerateInputError) else name


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return run(config_from_args(ns))
    except UsageError as exc:
        print(f"error: {_error_name(exc)}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KemenyError as exc:
        print(f"error: {_error_name(exc)}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
