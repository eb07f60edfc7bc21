"""Command-line front end: runs verifications and emits dimensions,
spectra, idempotent checks, and reports.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage
errors or genericity violations (a non-generic parameter choice aborts the
whole run and names the offending value).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .errors import GenericityViolation, SeparationFailure, SingularSystem
from .ratfunc import (
    RingContext,
    bmw_context,
    brauer_context,
    hecke_context,
    sym_context,
    tl_context,
)
from .towers import make_tower
from . import verify

TOWERS = ("brauer", "tl", "sym", "hecke", "bmw")
SUBCOMMANDS = ("dims", "axioms", "jm", "spectrum", "gz", "branching", "bridge", "all")
TOWER_VARIABLES = {
    "brauer": ("delta",),
    "tl": ("qhalf",),
    "hecke": ("q",),
    "sym": (),
    "bmw": ("rho", "q"),
}


class UsageError(Exception):
    pass


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse rational value {text!r}: {exc}")


def build_context(tower: str, mode: str, params: dict[str, Fraction]) -> RingContext:
    variables = TOWER_VARIABLES[tower]
    if mode == "symbolic":
        if params:
            raise UsageError("--set values are only meaningful with --mode specialized")
        return {
            "brauer": brauer_context,
            "tl": tl_context,
            "hecke": hecke_context,
            "sym": sym_context,
            "bmw": bmw_context,
        }[tower]()
    missing = [v for v in variables if v not in params]
    if missing:
        raise UsageError(
            f"specialized mode for {tower} needs --set for: {', '.join(missing)}"
        )
    unknown = [k for k in params if k not in variables]
    if unknown:
        raise UsageError(f"unknown parameters for {tower}: {', '.join(unknown)}")
    if tower == "bmw":
        return bmw_context(params["rho"], params["q"])
    if tower == "sym":
        return sym_context()
    return RingContext(variables, dict(params))


def _tasks_for(command: str, tower, n: int):
    tasks = []
    if command in ("jm", "all"):
        tasks.append(("jm", lambda: verify.verify_jm_family(tower, n)))
    if command in ("axioms", "all") and tower.kind in ("brauer", "tl", "bmw"):
        if n >= 2:
            tasks.append(("axioms", lambda: verify.verify_framework_axioms(tower, n)))
        elif command == "axioms":
            raise UsageError("axioms need --n >= 2")
    if command in ("spectrum", "all"):
        tasks.append(("center", lambda: verify.verify_center_scalar(tower, n)))
        tasks.append(
            ("spectrum", lambda: verify.verify_triangularity_and_spectrum(tower, n))
        )
    if command in ("gz", "all"):
        tasks.append(("gz", lambda: verify.verify_separation_and_gz(tower, n)))
    if command in ("branching", "all"):
        tasks.append(
            ("branching", lambda: verify.verify_branching_multiplicities(tower, n))
        )
    if command in ("bridge", "all"):
        if tower.kind == "tl":
            tasks.append(("bridge", lambda: verify.verify_tl_hecke_bridge(tower, n)))
        elif command == "bridge":
            raise UsageError("bridge only applies to --tower tl")
    if command == "all":
        tasks.append(("dims", lambda: verify.verify_dimensions(tower, n)))
        tasks.append(("relations", lambda: verify.verify_relations(tower, n)))
    return tasks


def _thread_cap(args_threads: int | None) -> int:
    env = os.environ.get("TOWERLAB_THREADS")
    cap = int(env) if env else None
    if args_threads:
        cap = min(cap, args_threads) if cap else args_threads
    return max(1, cap or 1)


def run(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(
        prog="towerlab",
        description="exact structural verification for towers of diagram algebras",
    )
    parser.add_argument("command", choices=SUBCOMMANDS)
    parser.add_argument("--tower", choices=TOWERS)
    parser.add_argument("--n", type=int)
    parser.add_argument("--mode", choices=("symbolic", "specialized"), default=None)
    parser.add_argument(
        "--set",
        dest="assignments",
        action="append",
        default=[],
        metavar="VAR=VALUE",
        help="parameter value for specialized mode, e.g. --set delta=7/3",
    )
    parser.add_argument("--format", choices=("json", "csv", "text"), default="text")
    parser.add_argument("--output", default=None)
    parser.add_argument("--config", default=None, help="key=value file with the same keys")
    parser.add_argument("--threads", type=int, default=None)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0

    try:
        settings = _apply_config(args)
        return _run_checked(settings)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except GenericityViolation as exc:
        name = exc.parameter or "parameter"
        print(f"genericity violation ({name}): {exc}", file=sys.stderr)
        return 2
    except (SeparationFailure, SingularSystem) as exc:
        print(f"non-generic parameters: {exc}", file=sys.stderr)
        return 2


def _apply_config(args) -> dict:
    settings = {
        "command": args.command,
        "tower": args.tower,
        "n": args.n,
        "mode": args.mode,
        "params": {},
        "format": args.format,
        "output": args.output,
        "threads": args.threads,
    }
    if args.config:
        try:
            with open(args.config) as fh:
                for line in fh:
                    line = line.strip()
                    if not line or line.startswith("#"):
                        continue
                    if "=" not in line:
                        raise UsageError(f"bad config line: {line!r}")
                    key, value = (part.strip() for part in line.split("=", 1))
                    if key == "tower" and settings["tower"] is None:
                        settings["tower"] = value
                    elif key == "n" and settings["n"] is None:
                        settings["n"] = int(value)
                    elif key == "mode" and settings["mode"] is None:
                        settings["mode"] = value
                    elif key == "format":
                        settings["format"] = value
                    elif key == "output" and settings["output"] is None:
                        settings["output"] = value
                    elif key == "threads" and settings["threads"] is None:
                        settings["threads"] = int(value)
                    elif key in ("tower", "n", "mode", "output"):
                        pass  # flag already given; flags win
                    else:
                        settings["params"][key] = _parse_fraction(value)
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}")
    for item in args.assignments:
        if "=" not in item:
            raise UsageError(f"--set expects VAR=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        settings["params"][key.strip()] = _parse_fraction(value.strip())
    if settings["mode"] is None:
        settings["mode"] = "specialized" if settings["params"] else "symbolic"
    if settings["tower"] is None:
        raise UsageError("--tower is required")
    if settings["n"] is None:
        raise UsageError("--n is required")
    if settings["n"] < 0 or (settings["command"] != "dims" and settings["n"] < 1):
        raise UsageError(f"--n {settings['n']} is out of range")
    return settings


def _run_checked(settings: dict) -> int:
    tower = make_tower(
        settings["tower"],
        build_context(settings["tower"], settings["mode"], settings["params"]),
    )
    n = settings["n"]
    params_text = {k: str(v) for k, v in sorted(settings["params"].items())}

    if settings["command"] == "dims":
        dim = tower.dimension(n)
        report = verify.verify_dimensions(tower, n)
        payload = {"tower": tower.kind, "n": n, "dim": dim}
        if settings["format"] == "json":
            out = json.dumps(payload, separators=(",", ":"))
        elif settings["format"] == "csv":
            out = "tower,n,dim\n" + f"{tower.kind},{n},{dim}"
        else:
            out = f"{tower.kind} n={n}: dim {dim}"
        _write(settings["output"], out + "\n")
        return 0 if report.all_passed() else 1

    tasks = _tasks_for(settings["command"], tower, n)
    cap = _thread_cap(settings["threads"])
    if cap > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=cap) as pool:
            futures = [(name, pool.submit(fn)) for name, fn in tasks]
            reports = [(name, f.result()) for name, f in futures]
    else:
        reports = [(name, fn()) for name, fn in tasks]

    merged = verify.VerificationReport(tower.kind, n, tower.ctx.mode)
    for _, rep in sorted(reports, key=lambda kv: kv[0]):
        merged.checks.extend(rep.checks)

    if settings["format"] == "json":
        out = json.dumps(merged.to_json(params_text), indent=2, sort_keys=True)
    elif settings["format"] == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["tower", "n", "vertex", "check", "pass", "witness"])
        writer.writerows(merged.to_csv_rows())
        out = buf.getvalue().rstrip("\n")
    else:
        lines = []
        for c in merged.sorted_checks():
            status = "PASS" if c.passed else "FAIL"
            loc = f" @ {c.vertex}" if c.vertex else ""
            extra = f" [{c.witness}]" if (c.witness and not c.passed) else ""
            lines.append(f"{status} {c.name}{loc}{extra}")
        lines.append(f"summary: {merged.passed} passed, {merged.failed} failed")
        out = "\n".join(lines)
    _write(settings["output"], out + "\n")
    return 0 if merged.failed == 0 else 1


def _write(path: str | None, text: str) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
