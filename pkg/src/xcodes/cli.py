"""Command-line entry point.

Exit codes: 0 success or valid, 1 verification failed or property violated,
2 usage or format error, 3 resource guard tripped.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import codefile
from .bounds import bound_report
from .catalog import enumerate_witnesses
from .columns import support
from .compaction import TernaryVector, compact, detect_discrepancy, simulate_detection
from .derandomized import construct_derandomized
from .errors import ResourceLimitError
from .oracle import MAX_SEARCH_M, max_code_exhaustive
from .randomized import construct_random
from .report import format_report, plot_bounds, plot_trace
from .verify import find_violation, is_xcode

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

log = logging.getLogger("xcodes")


class UsageError(Exception):
    pass


def _write(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _fmt_block(mask_points) -> str:
    return "{" + ",".join(str(p + 1) for p in mask_points) + "}"


def cmd_construct(args) -> int:
    if args.method == "random":
        seed = 0 if args.seed is None else args.seed
        code, run = construct_random(args.m, args.d, seed, args.p, optimize_p=args.optimize_p)
        record = run.record()
        trace = None
    else:
        if args.seed is not None:
            log.warning("--seed is ignored by the derandomized method")
        code, cert = construct_derandomized(args.m, args.d, args.p, optimize_p=args.optimize_p,
                                            trace=args.plot is not None)
        record = cert.record()
        trace = cert.e_trace
    if not is_xcode(code):
        print("error: constructed code failed self-verification", file=sys.stderr)
        return EXIT_FAIL
    cf = codefile.CodeFile(code, record)
    if args.format == "matrix":
        _write(codefile.to_matrix(cf.code), args.out)
        if args.record:
            Path(args.record).write_text(json.dumps(record, indent=2) + "\n")
    else:
        _write(codefile.serialize(cf), args.out)
    if args.plot and trace is not None:
        plot_trace(trace, args.plot, title=f"m={args.m}, d={args.d}, p={record['p']:.3g}")
    print(f"constructed ({code.m}, {code.n}, {code.d}, 2) X-code of constant weight 3", file=sys.stderr)
    return EXIT_OK


def _load_code(path: str, d, x):
    text = Path(path).read_text()
    if codefile.looks_like_json(text):
        code = codefile.parse(text).code
        return code.with_params(d if d is not None else code.d, x if x is not None else code.x)
    if d is None or x is None:
        raise UsageError("matrix files need explicit --d and --x")
    return codefile.from_matrix(text, d, x)


def cmd_verify(args) -> int:
    code = _load_code(args.inp, args.d, args.x)
    witness = find_violation(code)
    label = f"({code.m}, {code.n}, {code.d}, {code.x})"
    if witness is None:
        print(f"valid {label} X-code")
        return EXIT_OK
    masks = code.masks()
    cover = " ".join(_fmt_block(support(masks[i])) for i in witness.x_part)
    summed = " ".join(_fmt_block(support(masks[j])) for j in witness.s_part)
    print(f"not a {label} X-code")
    print(f"witness: columns {[i + 1 for i in witness.x_part]} cover the sum of columns "
          f"{[j + 1 for j in witness.s_part]}")
    print(f"  cover: {cover}")
    print(f"  summed: {summed}")
    return EXIT_FAIL


def cmd_enumerate(args) -> int:
    counts: dict[int, int] = {}
    for w in enumerate_witnesses(args.m, args.d):
        counts[w.size] = counts.get(w.size, 0) + 1
        if not args.count_only:
            sys.stdout.write(" ".join(_fmt_block(t) for t in w.key) + "\n")
    if args.count_only:
        for size in range(3, args.d + 3):
            print(f"size {size}: {counts.get(size, 0)}")
        print(f"total: {sum(counts.values())}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    report = bound_report(args.m, args.d, args.p, optimize=args.optimize_p)
    sys.stdout.write(format_report(report, args.format))
    if args.plot:
        plot_bounds(report, args.plot)
    return EXIT_OK


def cmd_search(args) -> int:
    limit = args.max_m_override if args.max_m_override is not None else MAX_SEARCH_M
    result = max_code_exhaustive(args.m, args.d, args.x, max_m=limit)
    print(json.dumps(result.record(), indent=2))
    return EXIT_OK


def cmd_simulate(args) -> int:
    code = _load_code(args.code, args.d, args.x)
    expected = TernaryVector(args.expected)
    if args.observed is not None:
        observed = TernaryVector(args.observed)
        if observed.unknown_positions:
            raise UsageError("observed responses must be definite")
        hu, hw = compact(code, observed), compact(code, expected)
        found = detect_discrepancy(hu, hw)
        print(f"compacted observed: {hu}")
        print(f"compacted expected: {hw}")
        print(f"discrepancy: {'yes' if found else 'no'}")
        return EXIT_OK
    faults = [int(tok) - 1 for tok in args.faults.split(",") if tok.strip()]
    detected = simulate_detection(code, expected, faults)
    print(f"faults at {[f + 1 for f in faults]}: {'detected' if detected else 'MISSED'}")
    return EXIT_OK if detected else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xcodes", description="Constant-weight-3 X-codes for two unknowable bits.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build an (m, n, d, 2) X-code")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--optimize-p", action="store_true", help="maximize the finite-m expectation over p")
    p.add_argument("--method", choices=("derand", "random"), default="derand")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "matrix"), default="json")
    p.add_argument("--record", help="run record path when writing a matrix")
    p.add_argument("--plot", help="figure of the conditional expectation trace (derand only)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check the X-code property of a code file")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--x", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="list forbidden configurations")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("bounds", help="evaluate the closed-form bounds")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--optimize-p", action="store_true")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--plot", help="write a figure of the bounds to this path")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("search", help="exact maximum code size by exhaustive search")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--max-m-override", type=int)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("simulate", help="compact responses and check detection")
    p.add_argument("--code", required=True)
    p.add_argument("--expected", required=True, help="e.g. X11100")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--observed")
    group.add_argument("--faults", help="comma-separated 1-indexed positions")
    p.add_argument("--d", type=int)
    p.add_argument("--x", type=int)
    p.set_defaults(func=cmd_simulate)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
