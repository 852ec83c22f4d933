"""``dat`` command-line frontend.

Exit codes: 0 success with no validation errors, 1 validation errors present,
2 parse or schema failure, 3 usage or I/O error. Diagnostics go to stderr,
artifacts to stdout or ``-o``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .abstraction import derive_hla
from .formatter import format_model
from .model import Level
from .parser import parse
from .render import from_json, summarize, to_dot, to_json
from .validator import validate

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dat", description="Data architecture modeling toolkit.")
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("check", help="parse and validate a model")
    c.add_argument("file", help="model file (.daml or .json), or - for stdin")
    c.add_argument("--format", choices=("text", "json"), default="text")

    f = sub.add_parser("fmt", help="print the canonical formatting of a model")
    f.add_argument("file")
    f.add_argument("--write", action="store_true", help="rewrite the file in place")

    r = sub.add_parser("render", help="export a model as DOT or JSON")
    r.add_argument("file")
    r.add_argument("--to", choices=("dot", "json"), required=True)
    r.add_argument("--collapse", action="store_true", help="DOT: draw nodes without their behavior")
    r.add_argument("-o", "--output")

    h = sub.add_parser("hla", help="derive the high-level view of an LLA model")
    h.add_argument("file")
    h.add_argument("-o", "--output")

    s = sub.add_parser("stats", help="summarize data representation attributes")
    s.add_argument("file")
    s.add_argument("--format", choices=("text", "json"), default="text")
    return p


def _read(path: str, stdin_ok: bool) -> str:
    if path == "-":
        if not stdin_ok:
            raise UsageError("reading from standard input is only supported by check and fmt")
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror if isinstance(exc, OSError) else exc}") from None


def _write(text: str, output: str | None, out) -> None:
    if output is None:
        out.write(text)
        return
    try:
        Path(output).write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise UsageError(f"cannot write {output}: {exc.strerror}") from None


def _load(path: str, err, stdin_ok: bool = False):
    text = _read(path, stdin_ok)
    label = "<stdin>" if path == "-" else path
    result = from_json(text, label) if path.endswith(".json") else parse(text, label)
    for d in result.diagnostics:
        print(d.render(), file=err)
    return result.model


def _report(model, err) -> int:
    report = validate(model)
    for d in report.diagnostics:
        print(d.render(), file=err)
    return EXIT_INVALID if report.error_count else EXIT_OK


def _check(args, out, err) -> int:
    model = _load(args.file, err, stdin_ok=True)
    if model is None:
        return EXIT_PARSE
    report = validate(model)
    if args.format == "json":
        for d in report.diagnostics:
            out.write(json.dumps(d.to_dict()) + "\n")
    else:
        for d in report.diagnostics:
            print(d.render(), file=err)
        print(f"{report.error_count} error(s), {report.warning_count} warning(s)", file=out)
    return EXIT_INVALID if report.error_count else EXIT_OK


def _fmt(args, out, err) -> int:
    model = _load(args.file, err, stdin_ok=True)
    if model is None:
        return EXIT_PARSE
    text = format_model(model)
    if args.write:
        if args.file == "-":
            raise UsageError("--write needs a file, not standard input")
        _write(text, args.file, out)
    else:
        out.write(text)
    return _report(model, err)


def _render(args, out, err) -> int:
    model = _load(args.file, err)
    if model is None:
        return EXIT_PARSE
    status = _report(model, err)
    if status != EXIT_OK:
        return status
    text = to_dot(model, collapse=args.collapse) if args.to == "dot" else to_json(model)
    _write(text, args.output, out)
    return EXIT_OK


def _hla(args, out, err) -> int:
    model = _load(args.file, err)
    if model is None:
        return EXIT_PARSE
    if model.level is not Level.LLA:
        raise UsageError(f"{args.file} is already an HLA model")
    status = _report(model, err)
    if status != EXIT_OK:
        return status
    _write(format_model(derive_hla(model)), args.output, out)
    return EXIT_OK


def _stats(args, out, err) -> int:
    model = _load(args.file, err)
    if model is None:
        return EXIT_PARSE
    summary = summarize(model)
    if args.format == "json":
        out.write(json.dumps(summary.to_dict(), indent=2) + "\n")
    else:
        out.write(summary.to_text())
    return _report(model, err)


_COMMANDS = {"check": _check, "fmt": _fmt, "render": _render, "hla": _hla, "stats": _stats}


def run(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out, err)
    except UsageError as exc:
        print(str(exc).rstrip("\n"), file=err)
        return EXIT_USAGE


def main(argv=None) -> int:
    try:
        return run(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
