"""Batch driver over action logs: replay, check, export, stats.

Exit codes: 0 success, 1 domain failure (failed action, type error,
render error), 2 usage or parse errors.  Diagnostics go to stderr; the
data stream carries only the requested artifact.
"""

import argparse
import sys

from .diagram import KernelError, diagram_dimension
from .geometry import mesh
from .interner import current_interner
from .layout import layout
from .render import emit_stl, emit_svg, emit_tikz
from .typecheck import typecheck
from .workspace import (
    ParseError,
    ViewPath,
    WorkspaceError,
    load_workspace,
    parse_view_path,
    resolve_view,
)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


def _build_parser():
    p = argparse.ArgumentParser(
        prog="zigzag",
        description="Replay, check and export diagram action logs.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, help_text):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("file", help="action log to replay")
        return cmd

    with_file("replay", "replay a log and describe the resulting state")
    with_file("check", "replay a log and typecheck the current diagram")
    ex = with_file("export", "replay a log and emit a picture of the viewed diagram")
    ex.add_argument("--format", required=True, choices=("svg", "tikz", "stl"))
    ex.add_argument("--view", default=None,
                    help="view path over {*, S, T, R<i>, s<i>}; default: the saved view")
    ex.add_argument("--dims", type=int, default=None,
                    help="number of drawn axes; default: saved or min(n-k, 2)")
    ex.add_argument("--out", default=None, help="write here instead of stdout")
    with_file("stats", "replay a log and print intern/memo counters")
    return p


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise _Usage(f"cannot read {path}: {e}") from e
    try:
        return load_workspace(text)
    except ParseError as e:
        raise _Usage(f"{path}: {e}") from e


class _Usage(Exception):
    pass


def _resolve_export_view(ws, view_arg, dims_arg):
    if view_arg is None:
        selectors = ws.view.selectors
        default_dims = ws.view.dims
    else:
        selectors = parse_view_path(view_arg)
        probe = resolve_view(ws.current, ViewPath(selectors, 0))
        default_dims = min(diagram_dimension(probe), 2)
    dims = default_dims if dims_arg is None else dims_arg
    view = ViewPath(selectors, dims)
    resolve_view(ws.current, view)
    return view


def _cmd_replay(args, out):
    ws = _load(args.file)
    print("signature:", file=out)
    for e in ws.signature:
        print(f"  {e.generator.id}  {e.name}  ({e.generator.dimension}-cell)", file=out)
    if ws.current is None:
        print("current: none", file=out)
    else:
        n = diagram_dimension(ws.current)
        heights = 0 if n == 0 else len(ws.current.cospans)
        print(f"current: {n}-diagram, singular height {heights}", file=out)
    print(f"view: {ws.view} dims {ws.view.dims}", file=out)
    return EXIT_OK


def _cmd_check(args, out):
    ws = _load(args.file)
    if ws.current is not None:
        typecheck(ws.current, ws.signature)
    print("ok", file=out)
    return EXIT_OK


def _cmd_export(args, out_bytes):
    ws = _load(args.file)
    view = _resolve_export_view(ws, args.view, args.dims)
    d = resolve_view(ws.current, view)
    if args.format == "stl":
        if view.dims != 3:
            raise WorkspaceError("stl export needs a 3-axis view (--dims 3)")
        data = emit_stl(mesh(d, 3, layout(d, 3)))
    else:
        l = layout(d, view.dims)
        emit = emit_svg if args.format == "svg" else emit_tikz
        data = emit(d, l, ws.signature).encode()
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        out_bytes.write(data)
        out_bytes.flush()
    return EXIT_OK


def _cmd_stats(args, out):
    _load(args.file)
    stats = current_interner().stats()
    for key in ("live", "dead", "memo", "memo_hits", "memo_misses", "interned_total"):
        print(f"{key}: {stats[key]}", file=out)
    return EXIT_OK


def run(argv, stdout=None, stderr=None):
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if e.code is not None else EXIT_USAGE
    try:
        if args.command == "replay":
            return _cmd_replay(args, out)
        if args.command == "check":
            return _cmd_check(args, out)
        if args.command == "export":
            buffer = getattr(out, "buffer", out)
            return _cmd_export(args, buffer)
        return _cmd_stats(args, out)
    except _Usage as e:
        print(f"zigzag: {e}", file=err)
        return EXIT_USAGE
    except KernelError as e:
        print(f"zigzag: {e}", file=err)
        return EXIT_DOMAIN


def main():
    return run(None)


if __name__ == "__main__":
    sys.exit(main())
