"""Command-line front end.

Exit status: 0 when the command ran and its verdict holds (or a pure
computation succeeded), 1 when the verdict is FAILS or INCONCLUSIVE, 2 for
usage or input errors, 3 when a resource cap or the timeout was hit.
"""
from __future__ import annotations

import argparse
import signal
import sys
from contextlib import contextmanager
from typing import Optional, Sequence

from . import ball as ballmod
from .ball import BallFormatError, BallOverflowError, get_ball, inside_distance, save_ball_cache
from .convexity import (
    COMPUTED,
    FAILS,
    HOLDS,
    CheckReport,
    check_mac_radius,
    check_mprimeac_radius,
    convexity_profile,
    fftp_scan,
    lsp_scan,
    verify_thm2,
    verify_thm3,
    _Timer,
)
from .group import IDENTITY, GenSet, WordError, canonical_key, eval_word, genset_from_name
from .search import Loop, loop_shorten_search

EXIT_OK, EXIT_FAILS, EXIT_USAGE, EXIT_OVERFLOW = 0, 1, 2, 3


class ResourceTimeout(RuntimeError):
    pass


@contextmanager
def _deadline(seconds: Optional[float]):
    if not seconds or not hasattr(signal, "SIGALRM"):
        yield
        return

    def _alarm(signum, frame):
        raise ResourceTimeout(f"timed out after {seconds} s")

    old = signal.signal(signal.SIGALRM, _alarm)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--cache", metavar="DIR", help="ball cache directory")
    common.add_argument("--max-elements", type=_positive, default=ballmod.DEFAULT_MAX_ELEMENTS)
    common.add_argument("--timeout", type=float, default=None, help="seconds before giving up")

    def genset(p):
        p.add_argument("--genset", default="s2", help="s1, s2 or custom:w1,w2,w3,w4")

    parser = argparse.ArgumentParser(prog="f2xf2", description="Exact Cayley graph experiments in F2 x F2.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ball", parents=[common], help="enumerate a ball")
    genset(p)
    p.add_argument("--radius", type=_nonneg, required=True)
    p.add_argument("--out", metavar="FILE")

    p = sub.add_parser("distance", parents=[common], help="graph distance between two words")
    genset(p)
    p.add_argument("--word1", required=True)
    p.add_argument("--word2", required=True)
    p.add_argument("--cap", type=_nonneg, default=64)

    p = sub.add_parser("inside-distance", parents=[common], help="distance inside a ball")
    genset(p)
    p.add_argument("--radius", type=_nonneg, required=True)
    p.add_argument("--word1", required=True)
    p.add_argument("--word2", required=True)

    for name in ("check-mac", "check-mprimeac"):
        p = sub.add_parser(name, parents=[common], help="per-radius convexity check")
        genset(p)
        p.add_argument("--radius", type=_positive, required=True)

    p = sub.add_parser("profile", parents=[common], help="max inside distance per radius")
    genset(p)
    p.add_argument("--rmax", type=_positive, required=True)

    p = sub.add_parser("verify-thm2", parents=[common], help="MAC witness pair for s2")
    p.add_argument("--n", type=_positive, required=True)

    p = sub.add_parser("verify-thm3", parents=[common], help="unshortenable loop for s2")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--basepoint", action="store_true")

    p = sub.add_parser("fftp-scan", parents=[common], help="falsify all short non-geodesics")
    genset(p)
    p.add_argument("--maxlen", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)

    p = sub.add_parser("lsp-scan", parents=[common], help="shorten a corpus of short loops")
    genset(p)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--basepoint", action="store_true")
    p.add_argument("--strict", action=argparse.BooleanOptionalAction, default=True)

    p = sub.add_parser("shorten-loop", parents=[common], help="shorten one loop at the identity")
    genset(p)
    p.add_argument("--word", required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--strict", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--basepoint", action="store_true")

    p = sub.add_parser("export-dot", parents=[common], help="DOT drawing of a ball")
    genset(p)
    p.add_argument("--radius", type=_nonneg, required=True)
    p.add_argument("--highlight", default="", help="comma-separated words")
    p.add_argument("--out", metavar="FILE")
    return parser


def _ball(args, gs: GenSet, radius: int):
    return get_ball(gs, radius, args.max_elements, args.cache)


def _computed(command: str, gs: GenSet, params: dict, stats: dict, verdict: str = COMPUTED) -> CheckReport:
    return CheckReport(command=command, genset=gs.name, params=params, verdict=verdict, stats=stats)


def _human(report: CheckReport) -> str:
    lines = [f"{report.command} [{report.genset}] {report.params}: {report.verdict}"]
    for key, val in report.stats.items():
        if key in ("outcomes", "dot"):
            continue
        lines.append(f"  {key}: {val}")
    for w in report.witnesses:
        lines.append("  witness: " + ", ".join(f"{k}={v}" for k, v in w.items()))
    return "\n".join(lines)


def _dispatch(args) -> CheckReport:
    cmd = args.command
    if cmd == "verify-thm2":
        return verify_thm2(args.n, ball=_ball(args, genset_from_name("s2"), 2 * args.n), max_elements=args.max_elements)
    if cmd == "verify-thm3":
        return verify_thm3(args.k, basepoint=args.basepoint)

    gs = genset_from_name(args.genset)
    if cmd == "ball":
        with _Timer() as t:
            b = _ball(args, gs, args.radius)
            if args.out:
                save_ball_cache(b, args.out)
        return _computed(cmd, gs, {"radius": args.radius}, {"ball_size": len(b), "runtime_ms": t.ms, "sphere_sizes": b.sphere_sizes()})
    if cmd == "distance":
        with _Timer() as t:
            x, y = eval_word(gs, args.word1), eval_word(gs, args.word2)
            d = ballmod.distance(gs, x, y, args.cap)
        return _computed(
            cmd, gs, {"word1": args.word1, "word2": args.word2, "cap": args.cap},
            {"distance": d, "runtime_ms": t.ms},
            verdict=COMPUTED if d is not None else "BEYOND_CAP",
        )
    if cmd == "inside-distance":
        with _Timer() as t:
            b = _ball(args, gs, args.radius)
            x, y = eval_word(gs, args.word1), eval_word(gs, args.word2)
            d = inside_distance(b, x, y)
        return _computed(
            cmd, gs, {"radius": args.radius, "word1": args.word1, "word2": args.word2},
            {"ball_size": len(b), "inside_distance": d, "runtime_ms": t.ms},
            verdict=COMPUTED if d is not None else "UNREACHABLE",
        )
    if cmd in ("check-mac", "check-mprimeac"):
        fn = check_mac_radius if cmd == "check-mac" else check_mprimeac_radius
        return fn(gs, args.radius, ball=_ball(args, gs, args.radius + 1), max_elements=args.max_elements)
    if cmd == "profile":
        with _Timer() as t:
            b = _ball(args, gs, args.rmax + 1)
            prof = convexity_profile(gs, args.rmax, ball=b)
        return _computed(
            cmd, gs, {"rmax": args.rmax},
            {"ball_size": len(b), "max_inside_distance": max(v for _, v in prof), "runtime_ms": t.ms,
             "profile": [list(p) for p in prof]},
        )
    if cmd == "fftp-scan":
        return fftp_scan(gs, args.maxlen, args.k, max_elements=args.max_elements)
    if cmd == "lsp-scan":
        return lsp_scan(gs, None, args.k, basepoint=args.basepoint, strict=args.strict)
    if cmd == "shorten-loop":
        with _Timer() as t:
            loop = Loop(gs, IDENTITY, args.word)
            if len(loop) < 1:
                raise WordError("loop word must be non-empty")
            shorter = loop_shorten_search(gs, loop, args.k, strict=args.strict, basepoint_fixed=args.basepoint)
        params = {"word": args.word, "k": args.k, "strict": args.strict, "basepoint": args.basepoint}
        if shorter is None:
            witness = {"kind": "unshortenable_loop", "genset": gs.name, "base": canonical_key(IDENTITY),
                       "word": args.word, "k": args.k, "strict": args.strict, "basepoint": args.basepoint}
            return CheckReport(cmd, gs.name, params, FAILS, [witness], {"runtime_ms": t.ms})
        return CheckReport(cmd, gs.name, params, HOLDS, [], {
            "runtime_ms": t.ms, "shorter_base": canonical_key(shorter.base), "shorter_word": shorter.word,
        })
    if cmd == "export-dot":
        with _Timer() as t:
            b = _ball(args, gs, args.radius)
            marks = [eval_word(gs, w) for w in args.highlight.split(",") if w]
            text = ballmod.export_dot(b, args.radius, marks)
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text)
        return _computed(cmd, gs, {"radius": args.radius, "highlight": args.highlight},
                         {"ball_size": len(b), "runtime_ms": t.ms, "dot": text})
    raise WordError(f"unknown command {cmd!r}")


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        with _deadline(args.timeout):
            report = _dispatch(args)
    except (WordError, BallFormatError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except (BallOverflowError, ResourceTimeout, MemoryError) as exc:
        print(f"resource limit: {exc}", file=stderr)
        return EXIT_OVERFLOW
    if args.json:
        print(report.to_json(), file=stdout)
    elif args.command == "export-dot" and not args.out:
        print(report.stats["dot"], end="", file=stdout)
    else:
        print(_human(report), file=stdout)
    return EXIT_OK if report.confirmed else EXIT_FAILS


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
