"""Command line entry point: ``modk0 <command> [args] [flags]``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import AlgebraError
from .backends import get_backend
from .checks import SUITES, run_suite
from .ppcalc import (PPError, Workspace, cell_decompose, evaluate, lambda_invariant, tower_chain)
from .simplicial import ComplexError, homology, parse_complex

COMMANDS = ("k0", "ev", "decompose", "lambda", "homology", "check")


class CliError(Exception):
    pass


def parse_workspace(path: str, backend: str | None = None) -> Workspace:
    p = Path(path)
    if not p.exists():
        raise CliError(f"workspace file {path} does not exist")
    try:
        data = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise CliError(f"{path}: a workspace is a JSON object")
    declared = data.get("backend")
    if backend and declared and backend != declared:
        raise CliError(f"backend mismatch: the workspace declares {declared} but --backend is {backend}")
    data.setdefault("backend", backend or "affine-q")
    try:
        return Workspace.from_json(data)
    except (PPError, AlgebraError, KeyError, TypeError, ValueError) as exc:
        raise CliError(f"{path}: {exc}") from None


def _need_name(args) -> str:
    if not args.args:
        raise CliError(f"{args.command} needs a name from the workspace")
    return args.args[0]


def _workspace(args) -> Workspace:
    if not args.workspace:
        raise CliError(f"{args.command} needs --workspace")
    return parse_workspace(args.workspace, args.backend)


def run(args) -> tuple[list[str], dict, bool]:
    """Execute one command; returns text lines, a JSON payload and the success flag."""
    cmd = args.command
    if cmd == "k0":
        if args.workspace:
            be = parse_workspace(args.workspace, args.backend).backend
        else:
            be = get_backend(args.backend or "affine-q")
        pres = be.k0()
        lines = [pres.render()]
        if pres.note:
            lines.append(f"note: {pres.note}")
        return lines, pres.to_json(), True

    if cmd == "ev":
        name = _need_name(args)
        d = _workspace(args).resolve(name)
        img = evaluate(d)
        return [str(img)], {"name": name, **img.to_json()}, True

    if cmd == "decompose":
        name = _need_name(args)
        ws = _workspace(args)
        d = ws.resolve(name)
        be = ws.backend
        tower = cell_decompose(d)
        chain = tower_chain(tower)
        lines = []
        for i, c in enumerate(tower.cells, 1):
            pos = "; ".join(be.render(p) for p in c.positive)
            neg = "; ".join(be.render(p) for p in c.negative)
            lines.append(f"cell {i}: [{pos}] minus [{neg}]" if neg else f"cell {i}: [{pos}]")
        lines.append(f"height: {tower.height}")
        lines.append(f"chain length: {chain.length}")
        payload = {"name": name, "cells": tower.describe(be), "height": tower.height,
                   "chain": [[be.describe(p) for p in a] for a in chain.antichains]}
        return lines, payload, True

    if cmd == "lambda":
        name = _need_name(args)
        d = _workspace(args).resolve(name)
        res = lambda_invariant(d, budget=1 if args.budget is None else args.budget)
        return [str(res)], {"name": name, "value": res.value, "exact": res.exact,
                            "lower": res.lower, "upper": res.upper}, True

    if cmd == "homology":
        if not args.args:
            raise CliError("homology needs a complex file")
        path = Path(args.args[0])
        if not path.exists():
            raise CliError(f"complex file {path} does not exist")
        h = homology(parse_complex(path.read_text()))
        return [str(h)], h.to_json(), True

    if cmd == "check":
        if not args.args:
            raise CliError("check needs a suite name: " + ", ".join(sorted(SUITES)) + " or all")
        cfg = parse_workspace(args.workspace, args.backend).config if args.workspace else {}
        seed = args.seed if args.seed is not None else int(cfg.get("seed", 0))
        cases = args.cases if args.cases is not None else cfg.get("cases")
        budget = args.budget if args.budget is not None else cfg.get("budget")
        names = list(SUITES) if args.args[0] == "all" else args.args
        lines = [f"seed: {seed}"]
        results = []
        for name in names:
            if name not in SUITES:
                raise CliError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))} or all")
            r = run_suite(name, seed=seed, cases=cases, budget=budget)
            results.append(r)
            lines.append(r.line())
            for f in r.failures:
                lines.append(f"  failing instance: {f['instance']}")
                lines.append(f"  reason: {f['reason']}")
        ok = all(r.ok for r in results)
        return lines, {"seed": seed, "ok": ok, "suites": [r.to_json() for r in results]}, ok

    raise CliError(f"unknown command {cmd!r}; choose from {', '.join(COMMANDS)}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="modk0", description="Grothendieck rings of modules and exact checks.")
    ap.add_argument("command", help="one of: " + ", ".join(COMMANDS))
    ap.add_argument("args", nargs="*", help="set name, complex file or suite name")
    ap.add_argument("--backend", help="affine-q, integer-z, zp:<p> or zp-sum:<p>,<k>")
    ap.add_argument("--workspace", "-w", help="workspace JSON file")
    ap.add_argument("--seed", type=int, help="seed for randomized suites")
    ap.add_argument("--cases", type=int, help="cases per randomized suite")
    ap.add_argument("--budget", type=int, help="refinement rounds for lambda; size cap for product suites")
    ap.add_argument("--json", dest="json_path", help="also write the result as JSON to this path")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        lines, payload, ok = run(args)
    except (CliError, PPError, AlgebraError, ComplexError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2
    for line in lines:
        print(line)
    if args.json_path:
        Path(args.json_path).write_text(json.dumps({"command": args.command, "args": args.args, "result": payload},
                                                   indent=2, sort_keys=True) + "\n")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
