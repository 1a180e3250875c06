"""Command-line entry point: build-table, kernelize, audit, solve, gen."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .audit import AuditParams, audit_report
from .config import Config, load_config
from .errors import CapabilityError, InputError, PreconditionError
from .fii import cached_table
from .generators import FAMILIES, GeneratorSpec, generate
from .io import dump_instance, load_instance, read_graph
from .kernelizer import Instance, exact_solve, find_modulator, kernelize, load_tables


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _config(args) -> Config:
    over = {k: v for k, v in vars(args).items() if k in Config.__dataclass_fields__}
    return load_config(args.config, over)


def _instance(args, cfg: Config) -> Instance:
    if args.instance:
        inst, _ = load_instance(args.instance)
        if args.k is not None:
            inst = Instance(inst.graph, args.k, inst.problem)
        return inst
    if not args.graph:
        raise InputError("give --instance or --graph")
    g = read_graph(args.graph, args.format)
    return Instance(g, args.k if args.k is not None else 0, cfg.problem)


def _out_dir(cfg: Config) -> Path:
    d = Path(cfg.out_dir)
    d.mkdir(parents=True, exist_ok=True)
    return d


def cmd_build_table(args) -> int:
    cfg = _config(args)
    slots = [args.t] if args.t is not None else range(cfg.b_max + 1)
    for t in slots:
        table, path, hit = cached_table(cfg.problem, t, max(cfg.n_max, t), cfg.cache_dir)
        _emit({"path": str(path), "problem": table.problem, "t": table.t, "n_max": table.n_max,
               "classes": len(table), "varpi": table.varpi, "cache_hit": hit})
    return 0


def cmd_kernelize(args) -> int:
    cfg = _config(args)
    inst = _instance(args, cfg)
    tables = load_tables(inst.problem.id, cfg.b_max, cfg.n_max, cfg.cache_dir, build=args.build_missing)
    ker, trace = kernelize(inst, tables, cfg.b_max, cfg.width_budget, cfg.modulator_cap)
    out = _out_dir(cfg)
    dump_instance(ker, out / "kernel.json")
    (out / "trace.jsonl").write_text(trace.dumps(), encoding="utf-8")
    _emit({"n": inst.graph.n, "k": inst.k, "kernel_n": ker.graph.n, "kernel_k": ker.k,
           "steps": len(trace.steps), "trivial_no": trace.trivial_no, "out_dir": str(out)})
    return 0


def cmd_audit(args) -> int:
    cfg = _config(args)
    inst = _instance(args, cfg)
    tables = load_tables(inst.problem.id, cfg.b_max, cfg.n_max, cfg.cache_dir, build=args.build_missing)
    if args.kernelize:
        inst, _ = kernelize(inst, tables, cfg.b_max, cfg.width_budget, cfg.modulator_cap)
    t = cfg.t if cfg.t is not None else inst.problem.t
    x = find_modulator(inst, cfg.modulator_cap)
    params = AuditParams.from_tables(cfg.r, t, tables)
    rep = audit_report(inst.graph, x, params, exact_cap=cfg.tw_exact_cap)
    out = _out_dir(cfg)
    (out / "report.csv").write_text(rep.csv(), encoding="utf-8")
    (out / "report.json").write_text(rep.json(), encoding="utf-8")
    failed = [c.check_id for c in rep.checks if not c.holds]
    _emit({"checks": len(rep.checks), "failed": failed, "required_hold": rep.all_required_hold,
           "out_dir": str(out)})
    return 0 if rep.all_required_hold else 1


def cmd_solve(args) -> int:
    cfg = _config(args)
    inst = _instance(args, cfg)
    value, sol = exact_solve(inst.problem, inst.graph, cfg.solve_cap)
    _emit({"problem": inst.problem.id, "n": inst.graph.n, "value": value, "solution": sol,
           "k": inst.k, "yes": value <= inst.k})
    return 0


def cmd_gen(args) -> int:
    cfg = _config(args)
    spec = GeneratorSpec(args.family, cfg.problem, args.n, args.k if args.k is not None else 3,
                         args.d, args.attach, cfg.seed)
    gen = generate(spec)
    path = Path(args.out) if args.out else _out_dir(cfg) / f"{spec.family}-{spec.problem}-s{spec.seed}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    dump_instance(gen.instance, path, gen.planted)
    _emit({"path": str(path), "n": gen.instance.graph.n, "m": gen.instance.graph.m, "k": gen.instance.k})
    return 0


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file; flags override it")
    p.add_argument("--problem", type=str.upper, choices=["FVS", "VC"])
    p.add_argument("--cache-dir", dest="cache_dir")
    p.add_argument("--out-dir", dest="out_dir")
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--b-max", dest="b_max", type=int)


def _input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--instance", help="instance JSON written by gen or kernelize")
    p.add_argument("--graph", help="edge-list or DIMACS file")
    p.add_argument("--format", default="auto", choices=["auto", "edges", "dimacs"])
    p.add_argument("--k", type=int)
    p.add_argument("--build-missing", action="store_true", help="build absent tables instead of failing")
    p.add_argument("--width-budget", dest="width_budget", type=int)
    p.add_argument("--modulator-cap", dest="modulator_cap", type=int)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="protrusion-kernel", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-table", help="build or load a representative table")
    _common(p)
    p.add_argument("--t", type=int, help="boundary size (default: every size up to b_max)")
    p.set_defaults(func=cmd_build_table)

    p = sub.add_parser("kernelize", help="reduce an instance to exhaustion")
    _common(p)
    _input(p)
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("audit", help="check the counting bounds on an instance")
    _common(p)
    _input(p)
    p.add_argument("--r", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--kernelize", action="store_true", help="kernelize before auditing")
    p.add_argument("--tw-exact-cap", dest="tw_exact_cap", type=int)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("solve", help="exact optimum with a witness")
    _common(p)
    _input(p)
    p.add_argument("--solve-cap", dest="solve_cap", type=int)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="write a generated instance")
    _common(p)
    p.add_argument("--family", default="planted-modulator", choices=FAMILIES)
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int, default=4)
    p.add_argument("--attach", type=int, default=2)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, CapabilityError, PreconditionError, FileNotFoundError) as e:
        err = {"error": type(e).__name__, "message": str(e)}
        if getattr(e, "command", None):
            err["command"] = e.command
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
