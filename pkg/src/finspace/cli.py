"""Command line entry point: finspace <command> ..."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures
from .homology import poset_homology
from .poset import InvariantError, ParseError, Poset, interval_poset, nh_suspension, parse_hasse_preorder, to_hasse
from .reduction import core
from .simplicial import order_complex
from .splitter import DEFAULT_FUEL, certificate_to_json, split, validate_certificate
from .sweep import run_sweep
from .wedge import to_str

EXIT_PARSE = 1
EXIT_INVARIANT = 2
EXIT_SPLIT = 3


class CliError(Exception):
    def __init__(self, code, msg):
        super().__init__(msg)
        self.code = code


def _load(path: str) -> tuple[Poset, bool]:
    """Read a Hasse file; a relation with cycles is replaced by its T0 quotient."""
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as e:
        raise CliError(EXIT_PARSE, str(e))
    try:
        pre = parse_hasse_preorder(text)
    except ParseError as e:
        raise CliError(EXIT_PARSE, str(e))
    if pre.n == 0:
        raise CliError(EXIT_PARSE, "empty space")
    if pre.is_antisymmetric():
        return Poset(pre.labels, pre.down), False
    return pre.t0_quotient()[0], True


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        sys.stdout.write(text if text.endswith("\n") or not text else text + "\n")


def cmd_core(args):
    p, quotient = _load(args.file)
    c, trace = core(p)
    lines = trace.to_json_lines()
    payload = {"core": to_hasse(c), "points": c.n, "trace": lines, "t0_quotient": quotient}
    text = to_hasse(c)
    if args.trace:
        text = "\n".join(json.dumps(x) for x in lines) + ("\n" if lines else "") + text
    _emit(args, payload, text)


def cmd_homology(args):
    p, quotient = _load(args.file)
    h = poset_homology(p)
    payload = h.to_json()
    _emit(args, payload, h.describe())


def cmd_split(args):
    p, quotient = _load(args.file)
    if not p.is_connected():
        raise CliError(EXIT_INVARIANT, "space is not connected")
    cert = split(p, fuel=args.fuel)
    verdict = validate_certificate(cert, deep=args.deep)
    payload = certificate_to_json(cert)
    payload["t0_quotient"] = quotient
    payload["valid"] = bool(verdict)
    if not verdict:
        payload["rejection"] = verdict.reason
    lines = [to_str(cert.wedge)]
    _tree(cert, 0, lines)
    _emit(args, payload, "\n".join(lines))
    if not verdict:
        raise CliError(EXIT_INVARIANT, f"certificate rejected: {verdict.reason}")
    if not cert.complete:
        raise CliError(EXIT_SPLIT, "no complete splitting found")


def _tree(cert, depth, lines):
    note = "" if cert.rule != "unresolved" else f" [{cert.status}]"
    lines.append(f"{'  ' * depth}{cert.rule} on {cert.space.n} points{note}")
    for k in cert.children:
        _tree(k, depth + 1, lines)


def cmd_interval(args):
    p, _ = _load(args.file)
    try:
        a, b = p.index(args.a), p.index(args.b)
    except KeyError as e:
        raise CliError(EXIT_PARSE, f"unknown element {e}")
    iv = interval_poset(p, p.down[a], p.up[b])
    payload = {"space": to_hasse(iv.poset), "points": iv.poset.n,
               "pairs": [[p.labels[x], p.labels[y]] for x, y in iv.pairs]}
    _emit(args, payload, to_hasse(iv.poset))


def cmd_suspend(args):
    p, _ = _load(args.file)
    if args.k < 0:
        raise CliError(EXIT_PARSE, "k must be nonnegative")
    q = nh_suspension(p, args.k)
    _emit(args, {"space": to_hasse(q), "points": q.n}, to_hasse(q))


def cmd_export_complex(args):
    p, _ = _load(args.file)
    try:
        k = order_complex(p, cap=args.cap)
    except InvariantError as e:
        raise CliError(EXIT_INVARIANT, str(e))
    lines = k.export_lines()
    _emit(args, {"simplices": [ln.split() for ln in lines], "f_vector": k.f_vector()}, "\n".join(lines))


LONG_RUN_FROM = 11


def cmd_verify(args):
    checkpoint = args.checkpoint
    if args.max_n >= LONG_RUN_FROM:
        if not args.long_run:
            raise CliError(EXIT_PARSE, f"--max-n {args.max_n} needs --long-run")
        # long runs always checkpoint
        checkpoint = checkpoint or f"verify-n{args.max_n}.ckpt.json"
    report = run_sweep(args.max_n, fuel=args.fuel, jobs=args.jobs, dump_failures=args.dump_failures,
                       checkpoint=checkpoint, log=lambda s: print(s, file=sys.stderr))
    if args.out:
        Path(args.out).write_text(json.dumps(report, indent=1, sort_keys=True))
    lines = []
    for n, row in report["per_n"].items():
        lines.append(f"n={n} classes={row['classes']} split={row['split_ok']} "
                     f"validated={row['validated']} failures={row['failures']}")
    _emit(args, report, "\n".join(lines))
    if report["failures"]:
        raise CliError(EXIT_SPLIT, f"{len(report['failures'])} spaces without a validated splitting")


def cmd_fixtures(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    names = []
    for name, p in fixtures.named_spaces().items():
        (out / f"{name}.hasse").write_text(to_hasse(p))
        names.append(name)
    _emit(args, {"written": names, "dir": str(out)}, "\n".join(f"{n}.hasse" for n in names))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="finspace", description="Finite T0 spaces as posets.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, helptext, file=True):
        sp = sub.add_parser(name, help=helptext)
        if file:
            sp.add_argument("file", help="Hasse file ('-' for stdin)")
        sp.add_argument("--format", choices=("json", "text"), default="text")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("core", cmd_core, "core by beat point removal")
    sp.add_argument("--trace", action="store_true", help="print removals as JSON lines")
    add("homology", cmd_homology, "reduced integral homology")
    sp = add("split", cmd_split, "certified wedge splitting")
    sp.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    sp.add_argument("--deep", action="store_true", help="compare homology at every node")
    sp = add("interval", cmd_interval, "the poset I(U_a, F_b)")
    sp.add_argument("a")
    sp.add_argument("b")
    sp = add("suspend", cmd_suspend, "non-Hausdorff suspension")
    sp.add_argument("-k", type=int, default=1)
    sp = add("export-complex", cmd_export_complex, "order complex, one simplex per line")
    sp.add_argument("--cap", type=int, default=1 << 18)
    sp = add("verify", cmd_verify, "split and validate all small connected spaces", file=False)
    sp.add_argument("--max-n", type=int, default=10)
    sp.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out")
    sp.add_argument("--dump-failures")
    sp.add_argument("--checkpoint")
    sp.add_argument("--long-run", action="store_true", help="allow --max-n 11 and above")
    sp = add("fixtures", cmd_fixtures, "write the named spaces as .hasse files", file=False)
    sp.add_argument("--out", default="fixtures")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.fn(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    return 0


if __name__ == "__main__":
    sys.exit(main())
