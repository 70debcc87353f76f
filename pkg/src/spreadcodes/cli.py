"""Command line interface: ``spreadcodes <command> ...``.

Exit codes: 0 success, 1 usage or input error, 2 decode failure,
3 spread verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import kernels
from .decoder import MODES, decode
from .errors import DecodeFailure, SpreadCodeError
from .harness import ChannelConfig, bench, coverage_report, run_experiment
from .spreadcode import SpreadCode, Subspace, build_code, encode, enumerate_codewords, verify_spread

EXIT_USAGE = 1
EXIT_DECODE_FAILURE = 2
EXIT_VERIFY_FAILED = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(s: str) -> list[int]:
    try:
        return [int(v) for v in s.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def _load(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _dump(obj, path: str | None):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path in (None, "-"):
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _code(args) -> SpreadCode:
    return SpreadCode.from_json(_load(args.code))


def cmd_gen(args):
    code = build_code(args.q, args.k, args.r, args.p)
    _dump(code.to_json(), args.output)


def cmd_encode(args):
    code = _code(args)
    C = encode(code, args.msg)
    _dump(C.to_json(), args.output)


def cmd_decode(args):
    code = _code(args)
    R = Subspace.from_json(_load(args.input), code.base)
    try:
        out = decode(code, R, mode=args.mode)
    except DecodeFailure as exc:
        _dump({"error": "DecodeFailure", "message": str(exc), "diagnostics": exc.diagnostics}, args.output)
        return EXIT_DECODE_FAILURE
    res = out.to_json()
    res["message_index"] = code.message_to_int(out.message)
    _dump(res, args.output)


def cmd_enumerate(args):
    code = _code(args)
    for C in enumerate_codewords(code, args.bound):
        print(json.dumps(C.to_json(), sort_keys=True))


def cmd_verify(args):
    code = _code(args)
    rep = verify_spread(code)
    _dump(rep, args.output)
    return 0 if rep["ok"] else EXIT_VERIFY_FAILED


def cmd_simulate(args):
    code = _code(args)
    cfg = ChannelConfig(args.t_eras, args.t_err, args.seed)
    rep = run_experiment(code, cfg, args.trials, mode=args.mode, oracle_trials=args.oracle_trials,
                         timing=args.timing, jobs=args.jobs)
    _dump(rep.to_json(), args.output)


def cmd_bench(args):
    backends = [args.backend] if args.backend else None
    _dump(bench(args.q, args.k_list, args.trials, t=args.t, seed=args.seed, backends=backends), args.output)


def cmd_coverage(args):
    _dump(coverage_report(_code(args)), args.output)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="spreadcodes", description="Spread codes over finite fields: encode, decode, simulate.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        return sp

    def out(sp):
        sp.add_argument("-o", "--output", default=None, help="output file (default stdout)")

    sp = add("gen", cmd_gen, "emit a code description")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--r", type=int, default=2)
    sp.add_argument("--p", type=_int_list, default=None, help="monic irreducible p, constant term first")
    out(sp)

    sp = add("encode", cmd_encode, "message index -> codeword basis")
    sp.add_argument("--code", required=True)
    sp.add_argument("--msg", type=int, required=True)
    out(sp)

    sp = add("decode", cmd_decode, "decode a received subspace")
    sp.add_argument("--code", required=True)
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--mode", choices=MODES, default="auto")
    out(sp)

    sp = add("enumerate", cmd_enumerate, "stream every codeword as JSON lines")
    sp.add_argument("--code", required=True)
    sp.add_argument("--bound", type=int, default=None)

    sp = add("verify", cmd_verify, "check the spread partition and distances")
    sp.add_argument("--code", required=True)
    out(sp)

    sp = add("simulate", cmd_simulate, "run a seeded channel experiment")
    sp.add_argument("--code", required=True)
    sp.add_argument("--t-eras", type=int, default=1)
    sp.add_argument("--t-err", type=int, default=1)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mode", choices=MODES, default="auto")
    sp.add_argument("--oracle-trials", type=int, default=None)
    sp.add_argument("--timing", action="store_true", help="record decode times (makes output nondeterministic)")
    sp.add_argument("--jobs", type=int, default=1)
    out(sp)

    sp = add("bench", cmd_bench, "median decode time per k")
    sp.add_argument("--q", type=int, default=2)
    sp.add_argument("--k-list", type=_int_list, default=[3, 5, 7, 9, 11])
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--backend", choices=kernels.available_backends(), default=None)
    out(sp)

    sp = add("coverage", cmd_coverage, "count subspaces within the decoding radius")
    sp.add_argument("--code", required=True)
    out(sp)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rc = args.func(args)
    except (SpreadCodeError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"spreadcodes {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
