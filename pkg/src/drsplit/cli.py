"""Command-line entry point ``drsplit``.

Exit codes: 0 success/pass, 2 invalid input, 3 failed pairing or fixture mismatch.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .bananas import (PROPOSITION, THEOREM, InvalidInput, RamificationInput, b_bound, b_range,
                      enumerate_bananas)
from .graphs import UnstableError
from .pixton import check_r_independence, dr_cycle
from .serialize import banana_to_json, dumps, input_to_json, report_to_json, taut_to_json
from .splitting import verify_relation, verify_splitting
from .tropical import delta, format_linear, length_order, load_curve

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH = 0, 2, 3
FIXTURE_ENV = "DRSPLIT_FIXTURES"
FIXTURE_VERSION = "v1"


class Mismatch(Exception):
    pass


def _parse_A(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise InvalidInput(f"--A must be a comma-separated list of integers, got {text!r}") from exc


def _input(args) -> RamificationInput:
    for name in ("g", "n"):
        if getattr(args, name) is None:
            raise InvalidInput(f"--{name} is required")
    return RamificationInput(args.g, args.n, _parse_A(args.A), args.k)


def _fixture_root(args) -> Path | None:
    root = args.fixtures or os.environ.get(FIXTURE_ENV)
    return Path(root) / FIXTURE_VERSION if root else None


def _fixture_name(kind: str, inp: RamificationInput) -> str:
    a = "_".join(str(x) for x in inp.A) or "none"
    return f"{kind}__g{inp.g}_n{inp.n}_A{a}_k{inp.k}.json"


def _check_fixture(args, kind: str, inp: RamificationInput, payload: dict) -> str | None:
    """Compare against a stored fixture, or record one if absent.  Returns a note."""
    root = _fixture_root(args)
    if root is None:
        return None
    path = root / "reports" / _fixture_name(kind, inp)
    body = {k: v for k, v in payload.items() if k not in ("version", "runtime_seconds")}
    if path.exists():
        stored = json.loads(path.read_text())
        stored.pop("version", None)
        if stored != json.loads(json.dumps(body)):
            raise Mismatch(f"result differs from fixture {path}")
        return f"matches fixture {path.name}"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(body))
    return f"recorded fixture {path.name}"


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else dumps(payload)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_bananas(args) -> int:
    inp = _input(args)
    mode = args.mode or THEOREM
    if mode == THEOREM:
        small = inp if inp.is_small else inp.small()
        bs = [args.b] if args.b is not None else b_range(small)
        data = [d for b in bs for d in enumerate_bananas(small, b, THEOREM)]
        payload = {"input": input_to_json(small), "mode": mode, "b_bound": b_bound(small),
                   "b_values": bs, "bananas": [banana_to_json(d) for d in data]}
    else:
        data = enumerate_bananas(inp, mode=PROPOSITION)
        payload = {"input": input_to_json(inp), "mode": mode, "bananas": [banana_to_json(d) for d in data]}
    payload.update(tool="drsplit", version=__version__)
    _emit(args, payload)
    return EXIT_OK


def cmd_dr(args) -> int:
    inp = _input(args)
    if inp.is_small:
        inp = inp.glued()
    payload = {"tool": "drsplit", "version": __version__, "input": input_to_json(inp),
               "r_independent": check_r_independence(inp), "class": taut_to_json(dr_cycle(inp))}
    note = _check_fixture(args, "dr", inp, payload)
    if note:
        payload["fixture"] = note
    _emit(args, payload)
    return EXIT_OK if payload["r_independent"] else EXIT_MISMATCH


def _report_command(args, kind: str, run) -> int:
    inp = _input(args)
    report = run(inp, jobs=args.jobs)
    payload = report_to_json(report, timings=args.timings)
    note = _check_fixture(args, kind, report.input, payload)
    if note:
        payload["fixture"] = note
    _emit(args, payload)
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_verify_splitting(args) -> int:
    return _report_command(args, "splitting", verify_splitting)


def cmd_verify_relation(args) -> int:
    inp = _input(args)
    if inp.is_small:
        raise InvalidInput("verify-relation needs A of length n")
    return _report_command(args, "relation", verify_relation)


def _resolve_curve(args) -> Path:
    path = Path(args.curve)
    if path.exists():
        return path
    root = _fixture_root(args)
    if root is not None and (root / "curves" / path.name).exists():
        return root / "curves" / path.name
    raise InvalidInput(f"curve file {args.curve} not found")


def cmd_delta(args) -> int:
    if not args.curve:
        raise InvalidInput("--curve is required")
    try:
        curve, B, k = load_curve(_resolve_curve(args))
    except (KeyError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"malformed curve file: {exc}") from exc
    text = format_linear(delta(curve, B, k), length_order(curve))
    sys.stdout.write(text + "\n")
    if args.out:
        Path(args.out).write_text(dumps({"tool": "drsplit", "version": __version__, "delta": text}))
    return EXIT_OK


COMMANDS = {
    "bananas": cmd_bananas,
    "dr": cmd_dr,
    "verify-splitting": cmd_verify_splitting,
    "verify-relation": cmd_verify_relation,
    "delta": cmd_delta,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="drsplit", description="Loop-gluing splitting of double ramification cycles.")
    parser.add_argument("--version", action="version", version=f"drsplit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--g", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--A", default="", help="comma-separated ramification vector")
        p.add_argument("--k", type=int, default=0)
        p.add_argument("--b", type=int)
        p.add_argument("--mode", choices=[THEOREM, PROPOSITION])
        p.add_argument("--out")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--fixtures", help=f"fixture root (default: ${FIXTURE_ENV})")
        p.add_argument("--timings", action="store_true", help="include runtime in the report")
        if name == "delta":
            p.add_argument("--curve", help="tropical curve JSON")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (InvalidInput, UnstableError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Mismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
