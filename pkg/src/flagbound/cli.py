"""Command-line front end: reproducible verification and reporting runs.

Every numeric result is serialized exactly (decimal or a/b strings);
floats appear only in the Monte-Carlo standard error, which is labeled
approximate by nature.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Callable, TextIO

from . import arrangement, flags, homology, threshold
from .arrangement import FlatTable, VectorSet, ensure_table, generate_sign_vectors
from .errors import GuardError
from .flags import OrderPermutation, WeightVector

__all__ = ["RunConfig", "run", "main"]

THREADS_ENV_VAR = "FLAGBOUND_THREADS"

FAST_SWEEP_MAX_N = 3
FULL_SWEEP_MAX_N = 5
HOMOLOGY_CHECK_MAX_N = 4
FLAT_CHECK_MAX_N = 3
SAMPLING_CHECK_MAX_N = 3
SAMPLING_CHECK_COUNT = 200


@dataclass(frozen=True)
class RunConfig:
    """One resolved invocation; exactly one vector-set source is set."""

    subcommand: str
    n: int | None = None
    input: str | None = None
    weights: str = "uniform"
    field: str = "2"
    degree: int | None = None
    samples: int = 10000
    seed: int = 0
    order_seed: int = 0
    order_trials: int = 0
    oracle: bool = False
    level: str = "fast"
    fmt: str = "text"
    out: str | None = None
    threads: int | None = None

    def __post_init__(self):
        if self.fmt not in ("text", "json"):
            raise ValueError(f"format must be text or json, got {self.fmt!r}")
        if self.subcommand in ("chambers", "lambda", "homology"):
            if (self.n is None) == (self.input is None):
                raise ValueError("exactly one of --n and --input is required")
        elif self.subcommand != "verify" and self.n is None:
            raise ValueError("--n is required")


def _resolve_threads(config: RunConfig) -> int:
    if config.threads is not None:
        return config.threads
    env = os.environ.get(THREADS_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ValueError(f"bad {THREADS_ENV_VAR} value {env!r}") from exc
    return os.cpu_count() or 1


def _load_set(config: RunConfig) -> tuple[VectorSet, dict]:
    if config.input is not None:
        vs = arrangement.read_vector_set(config.input)
        return vs, {"input": config.input}
    vs = generate_sign_vectors(config.n)
    return vs, {"n": config.n}


def _weight_vectors(spec: str, count: int) -> list[WeightVector]:
    if spec == "uniform":
        return [WeightVector.uniform(count)]
    if spec.startswith("random:"):
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"expected random:<seed>:<count>, got {spec!r}")
        try:
            seed, k = int(parts[1]), int(parts[2])
        except ValueError as exc:
            raise ValueError(f"expected random:<seed>:<count>, got {spec!r}") from exc
        if k < 1:
            raise ValueError("weight vector count must be >= 1")
        return [WeightVector.random(count, seed + i) for i in range(k)]
    return [flags.read_weight_vector(spec)]


def _run_gen_e(config: RunConfig) -> tuple[bool, dict]:
    vs = generate_sign_vectors(config.n)
    if config.out is None:
        arrangement.write_vector_set(sys.stdout, vs)
    else:
        arrangement.write_vector_set(config.out, vs)
    return True, {
        "n": config.n,
        "count": len(vs),
        "dim": vs.ambient_dim,
        "path": config.out or "-",
    }


def _run_chambers(config: RunConfig) -> tuple[bool, dict]:
    vs, source = _load_set(config)
    payload = dict(source)
    payload["chambers"] = str(arrangement.chamber_count(vs))
    ok = True
    if config.oracle:
        oracle = arrangement.chamber_count_dr(vs)
        payload["oracle"] = str(oracle)
        ok = payload["chambers"] == payload["oracle"]
        payload["agree"] = ok
    return ok, payload


def _run_lambda(config: RunConfig) -> tuple[bool, dict]:
    vs, source = _load_set(config)
    table = FlatTable(vs)
    base = flags.minimal_tuple_count(vs, table=table)
    values = [
        flags.minimal_tuple_count(
            vs, OrderPermutation.random(len(vs), config.order_seed + i), table
        )
        for i in range(config.order_trials)
    ]
    payload = dict(source)
    payload["identity"] = str(base)
    if config.order_trials:
        payload["orders"] = [str(v) for v in values]
    ok = all(v == base for v in values)
    payload["order_independent"] = ok
    return ok, payload


def _run_bound(config: RunConfig) -> tuple[bool, dict]:
    vs = generate_sign_vectors(config.n)
    table = FlatTable(vs)
    vectors = _weight_vectors(config.weights, len(vs))
    values = [flags.flag_lower_bound(config.n, p, table) for p in vectors]
    ok = len(set(values)) == 1
    return ok, {
        "n": config.n,
        "values": [str(v) for v in values],
        "p_independent": ok,
    }


def _run_homology(config: RunConfig) -> tuple[bool, dict]:
    vs, source = _load_set(config)
    degree = config.degree if config.degree is not None else vs.ambient_dim - 2
    rank = homology.homology_rank(vs, degree, config.field)
    payload = dict(source)
    payload["degree"] = degree
    payload["field"] = config.field
    payload["rank"] = str(rank)
    return True, payload


def _run_count_threshold(config: RunConfig) -> tuple[bool, dict]:
    count = threshold.count_threshold_functions(config.n, _resolve_threads(config))
    return True, {"n": config.n, "count": str(count)}


def _run_report(config: RunConfig) -> tuple[bool, dict]:
    vectors = _weight_vectors(config.weights, 1 << config.n)
    rep = threshold.bounds_report(
        config.n, vectors[0], threads=_resolve_threads(config)
    )
    payload: dict = {"n": rep.n}
    payload["lower_bound"] = str(rep.lower_bound)
    payload["two_lambda"] = str(rep.two_lambda)
    payload["chambers"] = str(rep.chambers)
    if rep.brute_force is not None:
        payload["brute_force"] = str(rep.brute_force)
    payload["schlafli"] = str(rep.schlafli)
    return True, payload


def _verify_one(n: int, level: str, threads: int) -> list[dict]:
    full = level == "full"
    weight_trials = 10 if full else 5
    order_trials = 20 if full else 5
    vs = generate_sign_vectors(n)
    table = FlatTable(vs)
    checks: list[dict] = []

    def add(name: str, fn: Callable[[], tuple[bool, str]]) -> None:
        ok, detail = fn()
        checks.append({"name": name, "n": n, "ok": ok, "detail": detail})

    def chambers_oracle():
        a = arrangement.chamber_count(vs, table)
        b = arrangement.chamber_count_dr(vs)
        return a == b, f"lattice {a}, oracle {b}"

    def flag_sum_constant():
        lam = flags.minimal_tuple_count(vs, table=table)
        sums = {
            flags.flag_weighted_sum(vs, WeightVector.random(len(vs), s), table)
            for s in range(weight_trials)
        }
        ok = sums == {lam}
        return ok, f"{weight_trials} weight vectors -> {sorted(map(str, sums))}, tuples {lam}"

    def order_invariance():
        lam = flags.minimal_tuple_count(vs, table=table)
        vals = {
            flags.minimal_tuple_count(vs, OrderPermutation.random(len(vs), s), table)
            for s in range(order_trials)
        }
        return vals == {lam}, f"{order_trials} orders -> {sorted(vals)}"

    def homology_match():
        lam = flags.minimal_tuple_count(vs, table=table)
        fields = ["2", "3", "Q"] if full else ["2"]
        ranks = {f: homology.homology_rank(vs, n - 1, f, table) for f in fields}
        ok = all(r == lam for r in ranks.values())
        return ok, f"ranks {ranks}, tuples {lam}"

    def mobius_flats():
        lattice = arrangement.build_lattice(vs, table)
        bad = 0
        total = 0
        for u in lattice.flats:
            if u.dim < 1:
                continue
            total += 1
            if homology.mobius_via_homology(vs, u, "2") != abs(lattice.mobius[u]):
                bad += 1
        return bad == 0, f"{total} flats, {bad} mismatches"

    def sampled_constancy():
        lam = flags.minimal_tuple_count(vs, table=table)
        mean, err = flags.monte_carlo_expectation(
            vs, WeightVector.uniform(len(vs)), SAMPLING_CHECK_COUNT, 0, table
        )
        ok = mean == lam and err == 0.0
        return ok, f"mean {mean}, stderr {err}"

    def bound_chain():
        rep = threshold.bounds_report(n, "uniform", table, threads)
        parts = [str(rep.lower_bound), str(rep.chambers), str(rep.schlafli)]
        return True, " <= ".join(parts)

    add("chambers-vs-oracle", chambers_oracle)
    add("flag-sum-constant", flag_sum_constant)
    add("order-invariance", order_invariance)
    if n <= HOMOLOGY_CHECK_MAX_N:
        add("homology-rank", homology_match)
    if full and n <= FLAT_CHECK_MAX_N:
        add("mobius-by-flat", mobius_flats)
    if full and n <= SAMPLING_CHECK_MAX_N:
        add("sampled-constancy", sampled_constancy)
    add("bound-chain", bound_chain)
    return checks


def _run_verify(config: RunConfig) -> tuple[bool, dict]:
    threads = _resolve_threads(config)
    if config.n is not None:
        targets = [config.n]
    elif config.level == "full":
        targets = list(range(1, FULL_SWEEP_MAX_N + 1))
    else:
        targets = list(range(1, FAST_SWEEP_MAX_N + 1))
    checks: list[dict] = []
    for n in targets:
        checks.extend(_verify_one(n, config.level, threads))
    ok = all(c["ok"] for c in checks)
    return ok, {"level": config.level, "checks": checks, "ok": ok}


_HANDLERS = {
    "gen-e": _run_gen_e,
    "chambers": _run_chambers,
    "lambda": _run_lambda,
    "bound": _run_bound,
    "homology": _run_homology,
    "count-threshold": _run_count_threshold,
    "verify": _run_verify,
    "report": _run_report,
}


def run(config: RunConfig) -> tuple[int, dict]:
    """Dispatch one subcommand; exit status 0 iff every check passed."""
    ok, payload = _HANDLERS[config.subcommand](config)
    return (0 if ok else 1), payload


def _render_text(subcommand: str, payload: dict, fh: TextIO) -> None:
    if subcommand == "verify":
        for c in payload["checks"]:
            mark = "PASS" if c["ok"] else "FAIL"
            fh.write(f"{mark} n={c['n']} {c['name']}: {c['detail']}\n")
        fh.write("all checks passed\n" if payload["ok"] else "failures above\n")
        return
    for key, value in payload.items():
        if isinstance(value, list):
            value = " ".join(str(v) for v in value)
        fh.write(f"{key}: {value}\n")


def _emit(config: RunConfig, payload: dict) -> None:
    if config.subcommand == "gen-e" and config.out is None:
        return
    out: TextIO
    if config.out is not None and config.subcommand != "gen-e":
        out = open(config.out, "w", encoding="ascii")
    else:
        out = sys.stdout
    try:
        if config.fmt == "json":
            out.write(json.dumps(payload, separators=(",", ":")) + "\n")
        else:
            _render_text(config.subcommand, payload, out)
    finally:
        if out is not sys.stdout:
            out.close()


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flagbound",
        description="Exact bounds on the number of threshold functions.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser, n_only: bool = False) -> None:
        p.add_argument("--n", type=int, default=None, help="build the sign-vector set")
        if not n_only:
            p.add_argument("--input", default=None, help="vector-set file")
        p.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
        p.add_argument("--out", default=None, help="write output here instead of stdout")
        p.add_argument("--threads", type=int, default=None)

    p = sub.add_parser("gen-e", help="write the sign-vector set")
    common(p, n_only=True)

    p = sub.add_parser("chambers", help="chamber count from the flat lattice")
    common(p)
    p.add_argument("--oracle", action="store_true", help="cross-check by deletion-restriction")

    p = sub.add_parser("lambda", help="order-minimal tuple count")
    common(p)
    p.add_argument("--order-seed", type=int, default=0)
    p.add_argument("--order-trials", type=int, default=0)

    p = sub.add_parser("bound", help="doubled weighted flag sum (lower bound)")
    common(p, n_only=True)
    p.add_argument("--weights", default="uniform", help="file, 'uniform', or random:<seed>:<count>")

    p = sub.add_parser("homology", help="reduced homology rank")
    common(p)
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--field", default="2", help="prime or Q")

    p = sub.add_parser("count-threshold", help="brute-force census")
    common(p, n_only=True)

    p = sub.add_parser("verify", help="identity suite with pass/fail per check")
    common(p, n_only=True)
    p.add_argument("--level", choices=("fast", "full"), default="fast")

    p = sub.add_parser("report", help="bounds table")
    common(p, n_only=True)
    p.add_argument("--weights", default="uniform")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {
        "subcommand": args.subcommand,
        "n": args.n,
        "fmt": args.fmt,
        "out": args.out,
        "threads": args.threads,
    }
    for name in ("input", "weights", "degree", "order_seed", "order_trials",
                 "oracle", "level"):
        if hasattr(args, name):
            fields[name] = getattr(args, name)
    if hasattr(args, "field"):
        fields["field"] = args.field
    return RunConfig(**fields)


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
        code, payload = run(config)
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(config, payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
