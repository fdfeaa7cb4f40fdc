"""Benchmark command line: suite generation, task runs, timing records.

Each task run emits one RunRecord as JSONL (or a flattened CSV row).
Records are deterministic for a fixed seed once timings are excluded
via --no-timings, which is what makes seeded reruns byte-comparable.

Exit codes: 0 success, 2 usage error, 1 runtime error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, adjoint, circuit, costpoly, kernels, optimizer, problems, sampling
from .errors import ContractViolation, ParseError, ResourceError

SCHEMA_VERSION = 1
TASKS = ("expectation", "sample", "gradient", "optimize")

_OPT_CONFIG_KEYS = {
    "max_iterations": int,
    "memory": int,
    "grad_tol": float,
    "c1": float,
    "c2": float,
    "initial_step": float,
}


@dataclass
class RunRecord:
    task: str
    n: int
    p: int
    shots: int
    seed: int
    family: str
    backend: str
    timings: dict[str, int] = field(default_factory=dict)
    result: dict = field(default_factory=dict)

    def to_dict(self, include_timings: bool = True) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "version": __version__,
            "task": self.task,
            "n": self.n,
            "p": self.p,
            "shots": self.shots,
            "seed": self.seed,
            "family": self.family,
            "backend": self.backend,
        }
        if include_timings:
            out["timings"] = self.timings
        out["result"] = self.result
        return out


class _PhaseTimer:
    def __init__(self, timings: dict[str, int], phase: str):
        self.timings = timings
        self.phase = phase

    def __enter__(self):
        self._start = time.perf_counter_ns()
        return self

    def __exit__(self, *exc):
        self.timings[self.phase] = time.perf_counter_ns() - self._start
        return False


def parse_params_file(path, default_depth: int | None = None) -> circuit.QaoaParams:
    """Params file: line 1 depth, line 2 betas, line 3 gammas.

    The token `ramp` anywhere selects the linear-ramp schedule (at the
    file's leading depth if present, otherwise the caller's depth).
    """
    lines: list[tuple[int, list[str]]] = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            tokens = raw.split("#", 1)[0].split()
            if tokens:
                lines.append((lineno, tokens))
    flat = [t for _, tokens in lines for t in tokens]
    if "ramp" in flat:
        depth = default_depth
        if flat[0] != "ramp":
            try:
                depth = int(flat[0])
            except ValueError:
                raise ParseError(f"bad depth token {flat[0]!r}", lines[0][0])
        if depth is None:
            raise ParseError("ramp selected but no depth available")
        return circuit.linear_ramp_params(depth)
    if len(lines) != 3:
        raise ParseError(f"expected 3 content lines, found {len(lines)}")
    lineno, tokens = lines[0]
    if len(tokens) != 1:
        raise ParseError("depth line must hold a single integer", lineno)
    try:
        depth = int(tokens[0])
    except ValueError:
        raise ParseError(f"bad depth {tokens[0]!r}", lineno)

    def floats(entry, what):
        lineno, tokens = entry
        if len(tokens) != depth:
            raise ParseError(
                f"expected {depth} {what} values, found {len(tokens)}", lineno
            )
        try:
            return [float(t) for t in tokens]
        except ValueError as exc:
            raise ParseError(f"bad {what} value: {exc}", lineno)

    betas = floats(lines[1], "beta")
    gammas = floats(lines[2], "gamma")
    return circuit.QaoaParams(betas=betas, gammas=gammas)


def read_opt_config(path) -> optimizer.OptimizeConfig:
    """Key-value config file: `key value` or `key=value`, # comments."""
    values = {}
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.replace("=", " ").split()
            if len(parts) != 2:
                raise ParseError(f"expected `key value`, got {line!r}", lineno)
            key, val = parts
            if key not in _OPT_CONFIG_KEYS:
                raise ParseError(f"unknown option {key!r}", lineno)
            try:
                values[key] = _OPT_CONFIG_KEYS[key](val)
            except ValueError as exc:
                raise ParseError(f"bad value for {key}: {exc}", lineno)
    return optimizer.OptimizeConfig(**values)


def _load_problem(args) -> tuple[costpoly.Polynomial, str]:
    if args.graph:
        family = "graph"
        for raw in Path(args.graph).read_text(encoding="ascii").splitlines():
            stripped = raw.strip()
            if stripped.startswith("# family:"):
                family = stripped.split(":", 1)[1].strip()
                break
        g = problems.read_graph(args.graph)
        return problems.maxcut_polynomial(g), family
    return costpoly.read_terms(args.terms), "terms"


def _resolve_params(args, depth: int) -> circuit.QaoaParams:
    if args.params == "ramp":
        # depth 0 is a legal baseline: no layers, plus state
        if depth == 0:
            return circuit.QaoaParams(betas=(), gammas=())
        return circuit.linear_ramp_params(depth)
    return parse_params_file(args.params, default_depth=depth)


def run_task(task: str, poly: costpoly.Polynomial, family: str, args) -> RunRecord:
    timings: dict[str, int] = {}
    with _PhaseTimer(timings, "precompute"):
        handle = circuit.create_handle(poly, backend_name=args.backend)
    params = _resolve_params(args, args.depth)
    record = RunRecord(
        task=task,
        n=poly.n,
        p=params.p,
        shots=args.shots,
        seed=args.seed,
        family=family,
        backend=handle.ctx.backend,
        timings=timings,
    )

    if task == "expectation":
        with _PhaseTimer(timings, "simulate"):
            circuit.simulate(handle, params)
        with _PhaseTimer(timings, "expectation"):
            value = circuit.expectation_of_state(handle)
        record.result = {"value": value}
    elif task == "sample":
        with _PhaseTimer(timings, "simulate"):
            circuit.simulate(handle, params)
        with _PhaseTimer(timings, "sample"):
            samples = sampling.draw(handle, args.shots, args.seed)
        best_bit, best_cost = sampling.best_of(samples)
        costs = [cost for _, cost in samples.records]
        record.result = {
            "records": [[b, c] for b, c in samples.records],
            "best_bitstring": best_bit,
            "best_cost": best_cost,
            "mean_cost": float(np.mean(costs)),
            "unique_bitstrings": len(set(b for b, _ in samples.records)),
        }
    elif task == "gradient":
        with _PhaseTimer(timings, "gradient"):
            grad = adjoint.gradient(handle, params)
        flat = list(grad.d_gammas) + list(grad.d_betas)
        record.result = {
            "d_betas": list(grad.d_betas),
            "d_gammas": list(grad.d_gammas),
            "grad_norm_inf": max(abs(v) for v in flat),
            "layer_applications": grad.layer_applications,
        }
    elif task == "optimize":
        cfg = args.opt_cfg
        with _PhaseTimer(timings, "optimize"):
            result = optimizer.minimize(handle, params, cfg)
        record.result = {
            "value": result.value,
            "iterations": result.iterations,
            "converged": result.converged,
            "gradient_norm": result.gradient_norm,
            "betas": list(result.params.betas),
            "gammas": list(result.params.gammas),
            "failure_reason": result.failure_reason,
        }
    else:  # pragma: no cover - guarded by argparse choices
        raise ContractViolation(f"unknown task {task!r}")
    return record


def _flatten(prefix: str, value, out: dict) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, list):
        out[prefix] = json.dumps(value)
    else:
        out[prefix] = value


def write_records(records, fmt: str, out_path, include_timings: bool) -> None:
    rows = [r.to_dict(include_timings) for r in records]
    if fmt == "jsonl":
        text = "".join(json.dumps(row) + "\n" for row in rows)
    else:
        import csv
        import io

        flat_rows = []
        for row in rows:
            flat: dict = {}
            _flatten("", row, flat)
            flat_rows.append(flat)
        fieldnames: list[str] = []
        for flat in flat_rows:
            for key in flat:
                if key not in fieldnames:
                    fieldnames.append(key)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fieldnames)
        writer.writeheader()
        writer.writerows(flat_rows)
        text = buf.getvalue()
    if out_path:
        Path(out_path).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)


def cmd_gen_graphs(args) -> int:
    lo_hi = args.range.split("..")
    if len(lo_hi) != 2:
        raise ParseError(f"bad range {args.range!r}, expected LO..HI")
    try:
        vertex_range = (int(lo_hi[0]), int(lo_hi[1]))
    except ValueError:
        raise ParseError(f"bad range {args.range!r}, expected LO..HI")
    families = tuple(f.strip() for f in args.families.split(",") if f.strip())
    suite = problems.generate_suite(
        vertex_range=vertex_range,
        instances=args.instances,
        seed=args.seed,
        families=families,
    )
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    counters: dict[tuple[str, int], int] = {}
    for family, g in suite:
        key = (family, g.num_vertices)
        k = counters.get(key, 0)
        counters[key] = k + 1
        path = out_dir / f"{family}_n{g.num_vertices:02d}_i{k}.txt"
        with open(path, "w", encoding="ascii") as fh:
            fh.write(f"# family: {family}\n")
            fh.write(f"{g.num_vertices} {g.num_edges}\n")
            for u, v, w in g.edges:
                fh.write(f"{u} {v} {w:.17g}\n")
    print(f"wrote {len(suite)} graph files to {out_dir}")
    return 0


def cmd_task(args) -> int:
    poly, family = _load_problem(args)
    record = run_task(args.command, poly, family, args)
    write_records([record], args.format, args.out, not args.no_timings)
    return 0


def cmd_bench(args) -> int:
    suite_dir = Path(args.suite)
    paths = sorted(suite_dir.glob("*.txt"))
    if not paths:
        raise FileNotFoundError(f"no graph files (*.txt) in {suite_dir}")

    def run_one(path):
        ns = argparse.Namespace(**vars(args))
        ns.graph = str(path)
        ns.terms = None
        poly, family = _load_problem(ns)
        return run_task(args.task, poly, family, ns)

    if args.jobs > 1:
        pool = ThreadPoolExecutor(max_workers=args.jobs)
        record_iter = pool.map(run_one, paths)
    else:
        pool = None
        record_iter = map(run_one, paths)
    try:
        if args.format == "jsonl":
            # stream one record per instance as it finishes
            out = open(args.out, "w", encoding="ascii") if args.out else sys.stdout
            try:
                for record in record_iter:
                    out.write(
                        json.dumps(record.to_dict(not args.no_timings)) + "\n"
                    )
                    out.flush()
            finally:
                if args.out:
                    out.close()
        else:
            # csv needs the full key set up front for its header
            write_records(
                list(record_iter), args.format, args.out, not args.no_timings
            )
    finally:
        if pool is not None:
            pool.shutdown()
    return 0


def cmd_kernel_bench(args) -> int:
    available = ["reference"]
    try:
        kernels.get("accelerated")
        available.append("accelerated")
    except RuntimeError as exc:
        print(f"accelerated kernels unavailable: {exc}", file=sys.stderr)

    g = problems.erdos_renyi(args.n, 0.5, seed=args.seed)
    poly = problems.maxcut_polynomial(g)
    params = circuit.linear_ramp_params(args.depth)
    results: dict[str, dict[str, float]] = {}
    for backend_name in available:
        handle = circuit.create_handle(poly, backend_name=backend_name)
        circuit.expectation(handle, params)  # warm-up (jit compile)
        phases: dict[str, float] = {}

        def best_of_repeats(fn):
            best = float("inf")
            for _ in range(args.repeats):
                t0 = time.perf_counter_ns()
                fn()
                best = min(best, time.perf_counter_ns() - t0)
            return best / 1e6

        phases["precompute"] = best_of_repeats(
            lambda: costpoly.precompute(poly, handle.ctx)
        )
        phases["simulate"] = best_of_repeats(lambda: circuit.simulate(handle, params))
        phases["expectation"] = best_of_repeats(
            lambda: circuit.expectation_of_state(handle)
        )
        phases["gradient"] = best_of_repeats(lambda: adjoint.gradient(handle, params))
        results[backend_name] = phases

    print(f"kernel benchmark: n={args.n}, p={args.depth}, repeats={args.repeats}")
    header = f"{'phase':<12}" + "".join(f"{b:>14}" for b in available)
    if len(available) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for phase in ("precompute", "simulate", "expectation", "gradient"):
        row = f"{phase:<12}"
        for b in available:
            row += f"{results[b][phase]:>12.2f}ms"
        if len(available) == 2:
            ref = results["reference"][phase]
            acc = results["accelerated"][phase]
            row += f"{ref / acc:>9.2f}x"
        print(row)
    return 0


def _add_task_flags(sub):
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--graph", help="graph file (MaxCut encoding)")
    group.add_argument("--terms", help="term file (boolean polynomial)")
    sub.add_argument("-p", "--depth", type=int, default=6)
    sub.add_argument("--shots", type=int, default=1024)
    sub.add_argument("--seed", type=int, default=1)
    sub.add_argument("--params", default="ramp", help="`ramp` or a params file")
    sub.add_argument(
        "--backend", choices=["reference", "accelerated"], default=None
    )
    sub.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    sub.add_argument("--out", default=None, help="output file (default stdout)")
    sub.add_argument("--no-timings", action="store_true")
    sub.add_argument("--opt-config", default=None, help="optimizer config file")
    sub.add_argument("--max-iterations", type=int, default=None)
    sub.add_argument("--grad-tol", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qaoa-bench",
        description="QAOA simulator benchmark harness",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen-graphs", help="write a benchmark graph suite")
    gen.add_argument("--range", default="6..29", help="vertex range LO..HI")
    gen.add_argument("--instances", type=int, default=5)
    gen.add_argument(
        "--families", default=",".join(problems.SUITE_FAMILIES)
    )
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)

    for task in TASKS:
        sub = subs.add_parser(task, help=f"run the {task} task")
        _add_task_flags(sub)

    bench = subs.add_parser("bench", help="run a task over a suite directory")
    bench.add_argument("--suite", required=True)
    bench.add_argument("--task", choices=TASKS, default="expectation")
    bench.add_argument("--jobs", type=int, default=1)
    _add_task_flags_bench(bench)

    kb = subs.add_parser(
        "kernel-bench", help="compare reference and accelerated kernels"
    )
    kb.add_argument("-n", type=int, default=16)
    kb.add_argument("-p", "--depth", type=int, default=6)
    kb.add_argument("--seed", type=int, default=1)
    kb.add_argument("--repeats", type=int, default=3)
    return parser


def _add_task_flags_bench(sub):
    sub.add_argument("-p", "--depth", type=int, default=6)
    sub.add_argument("--shots", type=int, default=1024)
    sub.add_argument("--seed", type=int, default=1)
    sub.add_argument("--params", default="ramp")
    sub.add_argument(
        "--backend", choices=["reference", "accelerated"], default=None
    )
    sub.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    sub.add_argument("--out", default=None)
    sub.add_argument("--no-timings", action="store_true")
    sub.add_argument("--opt-config", default=None)
    sub.add_argument("--max-iterations", type=int, default=None)
    sub.add_argument("--grad-tol", type=float, default=None)


def _build_opt_cfg(args) -> None:
    if getattr(args, "opt_config", None):
        cfg = read_opt_config(args.opt_config)
    else:
        cfg = optimizer.OptimizeConfig()
    overrides = {}
    if getattr(args, "max_iterations", None) is not None:
        overrides["max_iterations"] = args.max_iterations
    if getattr(args, "grad_tol", None) is not None:
        overrides["grad_tol"] = args.grad_tol
    if overrides:
        cfg = dataclasses.replace(cfg, **overrides)
    args.opt_cfg = cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen-graphs":
            return cmd_gen_graphs(args)
        if args.command == "bench":
            _build_opt_cfg(args)
            return cmd_bench(args)
        if args.command == "kernel-bench":
            return cmd_kernel_bench(args)
        _build_opt_cfg(args)
        return cmd_task(args)
    except (ContractViolation, ParseError, ResourceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
