"""Command-line interface: ``surfmbqc build|evolve|analyze|verify``.

Exit status is 0 on success, 2 for usage or configuration errors and 3 when
an internal invariant check fails.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from importlib import resources

from . import __version__
from .codes import (
    LogicalPair,
    NoLogicalSpaceError,
    check_logical_pairs,
    centralizer_table,
    code_parameters,
    logical_operators,
    perfect_code_check,
)
from .homology import from_json as complex_from_json
from .homology import h1_rank
from .lattice import (
    ascii_lattice,
    cluster_stabilizers,
    cnot_baseline,
    cnot_circuit,
    cz_entangler,
    square_lattice,
    to_dot,
    PLUS,
)
from .measurement import MeasurementArray, run_pipeline, trace_to_jsonl
from .oracle import CapacityError, ZeroNormError, measure_pattern, oracle_capacity, pauli_expectation, prepare
from .pauli import InvariantError, PauliOperator, StabilizerSet

BUILTINS = {"three-qubit": "three_qubit.json", "five-qubit": "five_qubit.json"}
EXPECTATION_TOL = 1e-9


class UsageError(Exception):
    pass


def load_builtin(name: str) -> tuple[StabilizerSet, list[LogicalPair]]:
    """Generators and reference logical pairs of a shipped code."""
    obj = json.loads(resources.files("surfmbqc.data").joinpath(BUILTINS[name]).read_text())
    code = StabilizerSet.from_json(obj["generators"])
    pairs = [
        LogicalPair(PauliOperator.from_json(p["x"]), PauliOperator.from_json(p["z"]))
        for p in obj.get("logicals", [])
    ]
    return code, pairs


def _header(command: str, config: dict) -> dict:
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return {
        "tool": "surfmbqc",
        "version": __version__,
        "command": command,
        "config": config,
        "config_hash": hashlib.sha256(blob.encode()).hexdigest()[:16],
    }


def _emit(obj: dict, out) -> None:
    out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _check_size(n: int) -> None:
    if n < 3 or n % 2 == 0:
        raise UsageError(f"--n must be an odd integer >= 3, got {n}")


# ---------------------------------------------------------------------------
# build
# ---------------------------------------------------------------------------


def cmd_build(args, out) -> int:
    _check_size(args.n)
    g, roles = square_lattice(args.n)
    if args.entangler == "cz":
        stabs = cluster_stabilizers(g)
        bases = [PLUS] * g.vertex_count
    else:
        stabs = cnot_baseline(args.n)
        bases, _ = cnot_circuit(args.n)
    if args.format == "dot":
        out.write(to_dot(g, roles))
        return 0
    if args.format == "text":
        out.write(ascii_lattice(args.n, roles))
        out.write(f"\n{len(stabs)} generators ({args.entangler})\n")
        for a, k in enumerate(stabs):
            out.write(f"K({a}) = {k.sparse():<24} {k}\n")
        return 0
    report = _header("build", {"n": args.n, "entangler": args.entangler})
    report["graph"] = g.to_json(roles)
    report["initial_bases"] = bases
    report["stabilizers"] = stabs.to_json()
    _emit(report, out)
    return 0


# ---------------------------------------------------------------------------
# evolve
# ---------------------------------------------------------------------------


def _unwrap(obj, key: str):
    # files may hold the bare array or an object wrapping it under ``key``
    return obj[key] if isinstance(obj, dict) else obj


def _load_pattern(path):
    if path is None:
        return None
    try:
        with open(path) as fh:
            return MeasurementArray.from_json(_unwrap(json.load(fh), "instructions"))
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot read pattern {path}: {exc}") from exc


def oracle_verdict(result) -> dict:
    """Check every evolved generator on the forced-outcome statevector."""
    n = result.graph.vertex_count
    if n > oracle_capacity():
        return {"checked": False, "reason": f"{n} qubits exceeds oracle capacity {oracle_capacity()}"}
    if result.entangler == "cz":
        psi = prepare([PLUS] * n, cz_entangler(result.graph))
    else:
        bases, circuit = cnot_circuit(result.size)
        psi = prepare(bases, circuit)
    psi = measure_pattern(psi, result.pattern)
    values = [pauli_expectation(psi, p) for p in result.evolved]
    worst = max((abs(v - 1.0) for v in values), default=0.0)
    return {
        "checked": True,
        "generators": len(values),
        "max_deviation": worst,
        "passed": worst <= EXPECTATION_TOL,
    }


def cmd_evolve(args, out) -> int:
    _check_size(args.n)
    pattern = _load_pattern(args.pattern)
    trace: list = []
    try:
        res = run_pipeline(args.n, args.entangler, pattern=pattern, frame=not args.no_frame, trace=trace)
    except (ValueError, IndexError) as exc:
        if isinstance(exc, InvariantError):
            raise
        raise UsageError(f"pattern does not fit the lattice: {exc}") from exc
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(trace_to_jsonl(trace))
    verdict = oracle_verdict(res) if args.oracle else None
    config = {
        "n": args.n,
        "entangler": args.entangler,
        "pattern": res.pattern.to_json() if args.pattern else "auto",
        "frame": not args.no_frame,
        "oracle": bool(args.oracle),
    }
    if args.format == "json":
        report = _header("evolve", config)
        report.update(
            data_qubits=res.index_map,
            evolved=res.restricted.to_json(),
            output=res.output.to_json(),
            code=res.code.to_json(),
            logical_state=[p.to_json() for p in res.logical_state],
            trace=trace,
        )
        if verdict is not None:
            report["oracle"] = verdict
        _emit(report, out)
    else:
        out.write(f"{args.n}x{args.n} lattice, {args.entangler} entangler\n")
        out.write(f"data qubits ({len(res.index_map)}): {res.index_map}\n")
        label = "Hadamard-framed generators" if res.output is not res.restricted else "generators"
        out.write(f"{label} on {res.output.n} data qubits:\n")
        for p in res.output:
            out.write(f"  {p}\n")
        out.write(f"code checks: {len(res.code)}, logical state: {[str(p) for p in res.logical_state]}\n")
        if verdict is not None:
            if not verdict["checked"]:
                out.write(f"oracle: skipped ({verdict['reason']})\n")
            elif verdict["passed"]:
                out.write("oracle: all expectations +1\n")
            else:
                out.write(f"oracle: FAILED (max deviation {verdict['max_deviation']:.3g})\n")
    if verdict is not None and verdict["checked"] and not verdict["passed"]:
        return 3
    return 0


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def analysis_report(
    code: StabilizerSet, distance_cap: int | None, pairs: list[LogicalPair] | None = None
) -> dict:
    params = code_parameters(code, distance_cap)
    report = {
        "n": params.n,
        "k": params.k,
        "d": params.d,
        "corrects": params.correctable,
        "generators": [str(g) for g in code],
        "perfect": perfect_code_check(code) if params.k >= 1 else False,
        "logicals": [],
        "centralizer_min_weight": None,
    }
    if params.k >= 1:
        if pairs:
            check_logical_pairs(code, pairs)
        else:
            pairs = logical_operators(code)
        table = centralizer_table(code, pairs)
        report["logicals"] = [
            {"x": str(p.x_logical), "z": str(p.z_logical), "y": str(p.y_logical)} for p in pairs
        ]
        report["centralizer_min_weight"] = min(w for _, w in table)
        report["centralizer_table"] = [[str(p), w] for p, w in table]
    return report


def table_text(code: StabilizerSet, report: dict) -> str:
    lines = []
    width = len(f"M{len(code)}")
    for i, g in enumerate(code, 1):
        lines.append(f"{'M' + str(i):>{width + 1}} | {' '.join(g.letters)}")
    if report["logicals"]:
        lines.append("-" * (width + 4 + 2 * code.n))
        for pair in report["logicals"]:
            for name in ("x", "z"):
                lines.append(f"{name.upper() + '_L':>{width + 1}} | {' '.join(pair[name].lstrip('+-i'))}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args, out) -> int:
    sources = [args.n is not None, args.builtin is not None, args.stabilizers is not None]
    if sum(sources) != 1:
        raise UsageError("give exactly one of --n, --builtin, --stabilizers")
    if args.distance_cap is not None and args.distance_cap < 1:
        raise UsageError("--distance-cap must be >= 1")
    config: dict = {"distance_cap": args.distance_cap}
    pairs = None
    if args.n is not None:
        _check_size(args.n)
        code = run_pipeline(args.n, args.entangler).code
        config.update(n=args.n, entangler=args.entangler)
    elif args.builtin is not None:
        code, pairs = load_builtin(args.builtin)
        config["builtin"] = args.builtin
    else:
        try:
            with open(args.stabilizers) as fh:
                code = StabilizerSet.from_json(_unwrap(json.load(fh), "generators"))
        except (OSError, KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"cannot read stabilizers {args.stabilizers}: {exc}") from exc
        config["stabilizers"] = code.strings()
    try:
        code.validate()
    except InvariantError as exc:
        raise UsageError(f"invalid stabilizer set: {exc}") from exc
    report = analysis_report(code, args.distance_cap, pairs)
    if args.complex:
        try:
            with open(args.complex) as fh:
                cx = complex_from_json(json.load(fh))
        except (OSError, KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"cannot read complex {args.complex}: {exc}") from exc
        report["h1_rank"] = h1_rank(cx)
        config["complex"] = cx.to_json()
    if args.format == "json":
        full = _header("analyze", config)
        full.update(report)
        _emit(full, out)
        return 0
    d = "n/a" if report["d"] is None else report["d"]
    params = f"[[{report['n']},{report['k']},{d}]]"
    out.write(f"{params} perfect={str(report['perfect']).lower()}\n")
    if report["corrects"] is not None:
        out.write(f"{params} corrects {report['corrects']} errors\n")
    if "h1_rank" in report:
        out.write(f"h1_rank={report['h1_rank']}\n")
    out.write(table_text(code, report))
    if report["centralizer_min_weight"] is not None:
        out.write(f"centralizer min weight: {report['centralizer_min_weight']}\n")
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args, out) -> int:
    _check_size(args.n)
    n2 = args.n * args.n
    if n2 > oracle_capacity():
        raise UsageError(f"{n2} qubits exceeds oracle capacity {oracle_capacity()}")
    g, _ = square_lattice(args.n)
    psi = prepare([PLUS] * n2, cz_entangler(g))
    cluster_dev = max(abs(pauli_expectation(psi, k) - 1.0) for k in cluster_stabilizers(g))
    res = run_pipeline(args.n, args.entangler)
    verdict = oracle_verdict(res)
    ok = cluster_dev <= EXPECTATION_TOL and verdict["passed"]
    out.write(f"cluster generators: max deviation {cluster_dev:.3g}\n")
    out.write(f"evolved generators ({args.entangler}): max deviation {verdict['max_deviation']:.3g}\n")
    out.write("all expectations +1\n" if ok else "oracle: FAILED\n")
    return 0 if ok else 3


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="surfmbqc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"surfmbqc {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build the resource state and its stabilizers")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--entangler", choices=["cz", "cnot"], default="cz")
    b.add_argument("--format", choices=["json", "text", "dot"], default="text")
    b.set_defaults(func=cmd_build)

    e = sub.add_parser("evolve", help="measure the resource state into a surface code")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--entangler", choices=["cz", "cnot"], default="cz")
    e.add_argument("--pattern", help="measurement pattern JSON file (default: auto)")
    e.add_argument("--no-frame", action="store_true", help="skip the Hadamard output frame")
    e.add_argument("--oracle", action="store_true", help="check results on the statevector oracle")
    e.add_argument("--trace", help="write the per-measurement trace as JSON lines")
    e.add_argument("--format", choices=["json", "text"], default="text")
    e.set_defaults(func=cmd_evolve)

    a = sub.add_parser("analyze", help="code parameters, logicals and centralizers")
    a.add_argument("--n", type=int)
    a.add_argument("--entangler", choices=["cz", "cnot"], default="cz")
    a.add_argument("--builtin", choices=sorted(BUILTINS))
    a.add_argument("--stabilizers", help="stabilizer JSON file")
    a.add_argument("--complex", help="chain complex JSON file for the H1 rank")
    a.add_argument("--distance-cap", type=int, default=None)
    a.add_argument("--format", choices=["json", "text"], default="text")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="cross-check the pipeline against the statevector oracle")
    v.add_argument("--n", type=int, default=3)
    v.add_argument("--entangler", choices=["cz", "cnot"], default="cz")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"surfmbqc: error: {exc}", file=sys.stderr)
        return 2
    except (CapacityError, ZeroNormError) as exc:
        print(f"surfmbqc: error: {exc}", file=sys.stderr)
        return 2
    except (InvariantError, NoLogicalSpaceError, RuntimeError) as exc:
        print(f"surfmbqc: invariant violated: {exc}", file=sys.stderr)
        return 3


def main_entry() -> None:
    sys.exit(main())
