"""Command-line interface.

Exit status: 0 on success, 1 when an experiment check fails, 2 on usage or
guard errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import experiments as ex
from .circuits import (
    CircuitStructureError,
    CircuitSyntaxError,
    dnf_circuit,
    evaluate_circuit,
    format_circuit,
    parse_circuit,
)
from .classify import classify
from .core import MAX_VARS, from_hex
from .generate import MMSpec, RandomModel, mm_bent, random_function, random_ltf, random_ptf
from .report import analyze


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _guarded(flag: str, fn, *args, **kw):
    try:
        return fn(*args, **kw)
    except (ex.GuardError, ValueError) as e:
        raise UsageError(flag, str(e)) from e


def _table(args):
    if not 1 <= args.n <= MAX_VARS:
        raise UsageError("-n", f"must lie in [1, {MAX_VARS}], got {args.n}")
    return _guarded("--tt", from_hex, args.tt, args.n)


# -- table commands ---------------------------------------------------------------

def _print_report(rep: dict) -> None:
    inf = rep["influence"]
    print(f"n = {rep['n']}  tt = {rep['tt']}")
    print(f"spectrum W(S) = {rep['spectrum']}")
    print(f"total influence I = {inf['total']['value']}")
    print("Inf_i = " + ", ".join(str(p["value"]) for p in inf["per_variable"]))
    print(f"Fourier entropy H = {rep['entropy']!r}")
    if "classes" in rep:
        _print_classes(rep["classes"])


def _print_classes(cls: dict) -> None:
    for key in ("bent", "plateaued_order", "sac", "sac_order", "pc_degree", "monotone"):
        print(f"{key}: {'none' if cls[key] is None else cls[key]}")
    ltf = cls["ltf"]
    if ltf is None:
        print("ltf: not decided")
    else:
        print(f"ltf: {ltf['verdict']}")
    print(f"chow: {cls['chow']}")


def cmd_analyze(args) -> int:
    tt = _table(args)
    rep = analyze(tt, with_ltf=False if args.no_ltf else None)
    if args.json:
        print(json.dumps(rep, indent=2))
    else:
        _print_report(rep)
    return 0


def cmd_classify(args) -> int:
    tt = _table(args)
    cls = classify(tt, with_ltf=False if args.no_ltf else None).to_json()
    if args.json:
        print(json.dumps({"schema": 1, "n": tt.n, "tt": tt.to_hex(), "classes": cls}, indent=2))
    else:
        _print_classes(cls)
    return 0


# -- generate -----------------------------------------------------------------------

def cmd_generate(args) -> int:
    kind = args.construction
    if kind == "mm-bent":
        spec = MMSpec.identity(args.m) if args.identity else _guarded("-m", MMSpec.random, args.m, args.seed, args.index)
        tt = mm_bent(spec)
        params = f"m={args.m} identity={args.identity} index={args.index}"
    elif kind == "plateaued":
        tt = _guarded("-k", ex.plateaued_witness, args.n, args.k, args.seed)
        params = f"n={args.n} k={args.k}"
    elif kind == "ltf":
        if not 1 <= args.n <= 16:
            raise UsageError("-n", f"ltf generation supports 1 <= n <= 16, got {args.n}")
        tt, w = random_ltf(args.n, RandomModel(args.model, args.seed), index=args.index)
        params = f"n={args.n} model={args.model} index={args.index} weights=" + ",".join(map(str, w))
    elif kind == "ptf":
        tt = _guarded("-d", random_ptf, args.n, args.d, RandomModel(args.model, args.seed, degree=args.d),
                      index=args.index)
        params = f"n={args.n} d={args.d} model={args.model} index={args.index}"
    else:
        if not 1 <= args.n <= MAX_VARS:
            raise UsageError("-n", f"must lie in [1, {MAX_VARS}], got {args.n}")
        tt = random_function(args.n, args.seed)
        params = f"n={args.n}"
    print(tt.to_hex())
    print(f"# construction={kind} {params} seed={args.seed}")
    return 0


# -- circuits -----------------------------------------------------------------------

def cmd_circuit(args) -> int:
    path = Path(args.file)
    try:
        text = path.read_text()
    except OSError as e:
        raise UsageError("file", f"cannot read {path}: {e.strerror}") from e
    try:
        c = parse_circuit(text)
    except (CircuitSyntaxError, CircuitStructureError) as e:
        raise UsageError("file", f"{path}: {e}") from e
    if args.action == "parse":
        sys.stdout.write(format_circuit(c))
        print(f"# n={c.n} depth={c.depth} size={c.size}")
        return 0
    tt = _guarded("file", evaluate_circuit, c)
    print(tt.to_hex())
    if args.dnf:
        sys.stdout.write(format_circuit(dnf_circuit(tt)))
    return 0


# -- experiments ----------------------------------------------------------------------

def _emit(rows, csv_path: str | None) -> int:
    text = ex.rows_to_csv(rows)
    if csv_path:
        Path(csv_path).write_text(text)
        failed = [r for r in rows if r.status == "fail"]
        print(f"wrote {len(rows)} rows to {csv_path}; {len(failed)} failed")
    else:
        sys.stdout.write(text)
    return 1 if any(r.status == "fail" for r in rows) else 0


def cmd_experiment(args) -> int:
    name = args.experiment
    if name == "census":
        res = _guarded("-n", ex.census, args.n, long_run=args.long_run)
        if args.json:
            print(json.dumps(res.to_json(), indent=2, default=str))
        for key, ok in res.checks.items():
            print(f"check {key}: {'pass' if ok else 'FAIL'}", file=sys.stderr if args.json else sys.stdout)
        c = res.intersections.get("monotone&special")
        if not args.json:
            if c == 0:
                print(f"monotone & (bent | SAC | PC>=1) is empty at n={res.n}")
            else:
                wit = " ".join(res.witnesses.get("monotone&special", []))
                print(f"monotone & (bent | SAC | PC>=1) has {c} members at n={res.n}: {wit}")
        rows = res.rows()
        if args.csv:
            Path(args.csv).write_text(ex.rows_to_csv(rows))
        return 0 if res.ok else 1
    if name == "fact2":
        rows = _guarded("-n", ex.fact2_experiment, args.n, allow_n6=args.long_run)
    elif name == "fact3":
        bad = [m for m in args.models if m not in ("uniform", "normal")]
        if bad:
            raise UsageError("--models", f"unknown model {bad[0]!r}; choose from uniform, normal")
        rows = _guarded("-n", ex.fact3_experiment, args.n, args.samples, args.seed, models=args.models)
    elif name == "fact4":
        rows = _guarded("--n-list", ex.fact4_experiment, args.k, args.n_list, args.seed)
    elif name == "probe":
        rows = _guarded("-n/-d", ex.conjecture_probe, args.n, args.d, args.samples, args.seed, model=args.model)
    elif name == "lhe":
        if any(not 0 < c < 0.5 for c in args.c_list):
            raise UsageError("--c-list", "every c must lie in (0, 1/2)")
        if any(not 1 <= n <= 14 for n in args.n_list):
            raise UsageError("--n-list", "every n must lie in [1, 14]")
        rows = ex.lhe_experiment(args.n_list, args.c_list, args.samples, args.seed)
    else:
        if not 2 <= args.max_n <= 16:
            raise UsageError("--max-n", f"must lie in [2, 16], got {args.max_n}")
        rows = ex.fact1_trend(args.max_n)
    return _emit(rows, args.csv)


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="boolsep", description="Boolean function class separation toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, helptext in (("analyze", cmd_analyze, "spectrum, influences, entropy and classes"),
                               ("classify", cmd_classify, "class memberships only")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--tt", required=True, help="hex truth table, least significant input first")
        s.add_argument("-n", type=int, required=True, help="number of variables")
        s.add_argument("--json", action="store_true", help="emit the JSON report")
        s.add_argument("--no-ltf", action="store_true", help="skip the threshold-function LP")
        s.set_defaults(func=fn)

    g = sub.add_parser("generate", help="emit a constructed or random truth table")
    g.add_argument("construction", choices=["mm-bent", "plateaued", "ltf", "ptf", "random"])
    g.add_argument("-n", type=int, default=4, help="number of variables")
    g.add_argument("-m", type=int, default=2, help="half the variable count for mm-bent")
    g.add_argument("-k", type=int, default=1, help="plateau order")
    g.add_argument("-d", type=int, default=2, help="ptf degree")
    g.add_argument("--model", choices=["normal", "uniform"], default="normal")
    g.add_argument("--identity", action="store_true", help="mm-bent with identity permutation and g = 0")
    g.add_argument("--index", type=int, default=0, help="sample index within the seeded stream")
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("circuit", help="parse or evaluate a leveled circuit file")
    c.add_argument("action", choices=["parse", "eval"])
    c.add_argument("file")
    c.add_argument("--dnf", action="store_true", help="with eval, also print the canonical DNF")
    c.set_defaults(func=cmd_circuit)

    e = sub.add_parser("experiment", help="run a separation experiment")
    e.add_argument("experiment", choices=["census", "fact2", "fact3", "fact4", "probe", "lhe", "fact1"])
    e.add_argument("-n", type=int, default=4)
    e.add_argument("-k", type=int, default=1)
    e.add_argument("-d", type=int, default=1)
    e.add_argument("--n-list", type=_int_list, default=[3, 5, 7, 9, 11])
    e.add_argument("--c-list", type=_float_list, default=[0.1, 0.25, 0.4])
    e.add_argument("--samples", type=int, default=1000)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--model", choices=["normal", "uniform"], default="normal")
    e.add_argument("--models", type=lambda s: s.split(","), default=["uniform", "normal"])
    e.add_argument("--max-n", type=int, default=12)
    e.add_argument("--long-run", action="store_true", help="allow census n=5 and fact2 n=6")
    e.add_argument("--json", action="store_true", help="census: print the JSON result")
    e.add_argument("--csv", metavar="PATH", help="write experiment rows as CSV")
    e.set_defaults(func=cmd_experiment)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"boolsep: error: {e}", file=sys.stderr)
        return 2
    except AssertionError as e:
        print(f"boolsep: check failed: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
