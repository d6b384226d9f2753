"""Command-line driver: ``matgroup-interp <command> ...``.

Exit codes: 0 when every check passes, 1 on a check failure or a library
error (its code is printed), 2 on usage or input parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import cohom, deform, interp, serialize, wordcalc
from .errors import AlgebraError, ParseError
from .matgroup import DEFAULT_CAP, det
from .report import Report
from .ring import RingSpec
from .suites import SUITES, SuiteOptions, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FORMATS = ("json", "csv", "md")
DEFAULT_SEED = 20240601


class UsageError(Exception):
    pass


def _ring(text: str) -> RingSpec:
    try:
        return RingSpec.parse(text)
    except AlgebraError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _carrier(text: str) -> tuple[int, int]:
    try:
        i, k = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"carrier must look like 'i,k', got {text!r}") from None
    return i, k


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _out_target(value: str | None, fmt: str | None) -> tuple[str, str | None]:
    """``--out`` names a format or a file; a file's extension picks the format."""
    if value is None or value in FORMATS:
        return fmt or value or "json", None
    ext = value.rsplit(".", 1)[-1].lower() if "." in value else ""
    return fmt or {"csv": "csv", "md": "md"}.get(ext, "json"), value


def _render(rep: Report, fmt: str, timing: bool) -> str:
    if fmt == "csv":
        return rep.to_csv()
    if fmt == "md":
        return rep.to_markdown()
    return rep.to_json(timing=timing)


def _emit_text(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e.strerror}") from None


def _emit_report(rep: Report, args) -> int:
    fmt, path = _out_target(args.out, args.format)
    _emit_text(_render(rep, fmt, args.timing), path)
    print(f"{rep.summary_line()} ({rep.wall_time:.1f} s)", file=sys.stderr)
    for rec in rep.failures[:20]:
        print(f"FAIL {rec.check}: expected {rec.expected!r}, observed {rec.observed!r}", file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _emit_json(obj, args) -> None:
    _emit_text(json.dumps(obj, indent=2) + "\n", getattr(args, "out", None))


# -- commands ------------------------------------------------------------------


def _suite_worker(payload):
    name, opts = payload
    try:
        return run_suite(name, opts)
    except AlgebraError as e:
        rep = Report(name)
        rep.add("suite", "precondition", "runs", f"{e.code}: {e}", passed=False)
        return rep


def cmd_verify(args) -> int:
    suite = args.suite_flag or args.suite
    if suite is None:
        raise UsageError("verify needs a suite name")
    if suite not in SUITES + ("all",):
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    opts = SuiteOptions(args.ring, args.n, seed=args.seed, cap=args.cap, pairs=args.pairs, samples=args.samples)
    if suite == "all" and args.jobs > 1:
        t0 = time.perf_counter()
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            parts = list(pool.map(_suite_worker, [(s, opts) for s in SUITES]))
        rep = Report("all", {"ring": str(opts.spec), "n": opts.n, "seed": opts.seed, "cap": opts.cap})
        for name, part in zip(SUITES, parts):
            rep.extend(part, prefix=name)
        rep.wall_time = time.perf_counter() - t0
    else:
        rep = run_suite(suite, opts)
    return _emit_report(rep, args)


def cmd_decompose(args) -> int:
    a = serialize.matrix_from_json(serialize.load_file(args.matrix), args.matrix)
    if args.sl or det(a) == a.spec.one:
        w = wordcalc.decompose_sl(a)
    else:
        w = wordcalc.decompose_gl(a)
    if args.pad:
        core = wordcalc.TransvectionWord(w.spec, w.n, w.letters)
        padded = wordcalc.sigma_pad(core, wordcalc.elimination_schedule(a.n))
        w = wordcalc.TransvectionWord(w.spec, w.n, padded.letters, w.diag,
                                      None if w.diag is None else len(padded.letters))
    _emit_json(serialize.word_to_json(w), args)
    return EXIT_OK


def cmd_interpret(args) -> int:
    spec = args.ring
    r = interp.InterpretedRing(spec, args.n, args.host, args.carrier)
    try:
        a, b = spec.elem(args.x), spec.elem(args.y)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad ring element: {e}") from None
    x, y = r.encode(a), r.encode(b)
    z = interp.interp_add(r, x, y) if args.op == "add" else interp.interp_mul(r, x, y)
    out = {
        "ring": str(spec),
        "n": args.n,
        "carrier": list(args.carrier),
        "op": args.op,
        "x": spec.fmt(a),
        "y": spec.fmt(b),
        "matrix": serialize.matrix_to_json(z),
        "value": spec.fmt(r.decode(z)),
    }
    _emit_json(out, args)
    return EXIT_OK


def _build_deformation(args):
    if args.file:
        return serialize.deformation_from_json(serialize.load_file(args.file), args.file)
    if args.ring is None or args.n is None:
        raise UsageError("deform build needs a JSON file or --ring and --n")
    Z = cohom.FinAbGroup(tuple(args.Z))
    d0 = deform.TnDeformation.trivial(args.ring, args.n, Z)
    if args.carry:
        lg = d0.units
        f = cohom.carry_cocycle(lg.m, Z, factor=0, domain=d0.B)
        return deform.TnDeformation(args.ring, args.n, Z, f)
    return d0


def cmd_deform(args) -> int:
    checks = set(args.check.split(",")) if args.check != "all" else {"axioms", "collapse"}
    unknown = checks - {"axioms", "collapse"}
    if unknown:
        raise UsageError(f"unknown checks: {', '.join(sorted(unknown))}")
    d = _build_deformation(args)
    rep = Report("deform_build", {"ring": str(d.spec), "n": d.n, "Z": list(d.Z.orders), "order": d.order,
                                  "f_trivial": d.f.is_trivial()})
    if "axioms" in checks:
        rep.extend(deform.group_axiom_report(d, d.group(cap=args.cap)))
    if "collapse" in checks and d.f.is_trivial() and d.Z.orders == (d.units.m,):
        rep.extend(deform.collapse_report(d), prefix="collapse")
    rep.finish()
    if args.emit:
        _emit_text(json.dumps(serialize.deformation_to_json(d), indent=2) + "\n", args.emit)
    return _emit_report(rep, args)


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="matgroup-interp", description="Exact verification of matrix-group identities.")
    sub = p.add_subparsers(dest="command", required=True)

    def report_flags(sp):
        sp.add_argument("--out", help="json, csv, md, or a file path (format from its extension)")
        sp.add_argument("--format", choices=FORMATS, help="force the report format")
        sp.add_argument("--timing", action="store_true", help="include wall time in JSON reports")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", nargs="?", help=f"one of {', '.join(SUITES)}, all")
    v.add_argument("--suite", dest="suite_flag", help="same as the positional suite")
    v.add_argument("--ring", type=_ring, default=RingSpec.parse("gf:3"))
    v.add_argument("--n", type=_positive, default=3)
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--cap", type=_positive, default=DEFAULT_CAP, help="enumeration cap")
    v.add_argument("--pairs", type=_positive, default=1000, help="sampled pairs for randomized checks")
    v.add_argument("--samples", type=_positive, default=100, help="random matrices for decomposition checks")
    v.add_argument("--jobs", type=_positive, default=1, help="worker processes for 'verify all'")
    report_flags(v)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("decompose", help="write a matrix as a transvection word")
    d.add_argument("matrix", help="matrix JSON file")
    d.add_argument("--sl", action="store_true", help="require det = 1")
    d.add_argument("--pad", action="store_true", help="pad into the fixed elimination schedule")
    d.add_argument("--out", help="output file (default stdout)")
    d.set_defaults(func=cmd_decompose)

    i = sub.add_parser("interpret", help="evaluate the interpreted ring operations")
    i.add_argument("--ring", type=_ring, required=True)
    i.add_argument("--n", type=_positive, default=3)
    i.add_argument("--carrier", type=_carrier, default=None, help="i,k (default 1,n)")
    i.add_argument("--host", choices=("SL", "GL", "T", "UT"), default="SL")
    i.add_argument("--op", choices=("add", "mul"), required=True)
    i.add_argument("--x", required=True)
    i.add_argument("--y", required=True)
    i.add_argument("--out", help="output file (default stdout)")
    i.set_defaults(func=cmd_interpret)

    df = sub.add_parser("deform", help="abelian deformations of T_n")
    dsub = df.add_subparsers(dest="deform_command", required=True)
    b = dsub.add_parser("build", help="build a deformation and verify it")
    b.add_argument("file", nargs="?", help="deformation JSON file")
    b.add_argument("--ring", type=_ring)
    b.add_argument("--n", type=_positive)
    b.add_argument("--Z", type=_positive, nargs="+", default=[2], help="cyclic orders of Z")
    b.add_argument("--carry", action="store_true", help="use the carry cocycle on the first torus factor")
    b.add_argument("--check", default="all", help="all or a comma list of: axioms, collapse")
    b.add_argument("--cap", type=_positive, default=4096)
    b.add_argument("--emit", help="also write the deformation JSON to this file")
    report_flags(b)
    b.set_defaults(func=cmd_deform)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "interpret" and args.carrier is None:
        args.carrier = (1, args.n)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e.code}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except AlgebraError as e:
        print(f"error: {e.code}: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
