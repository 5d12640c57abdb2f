"""``ordprox`` command line interface.

Exit codes: 0 success, 1 a check ran and failed, 2 invalid input,
3 I/O error. Errors go to stderr as one JSON object; output files are
written atomically and only on success.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import tempfile
import warnings

from . import __version__
from .errors import MalformedRow, ValidationError
from .frames import (
    chain_graph,
    chain_to_csv,
    frame_subgraph,
    frames_to_csv,
    generate_frames,
    ingest_frames,
    order_frames,
)
from .geometry import EPSILON, delaunay
from .graph import check_equivalence, export, hasse, proximity_graph
from .nerve import find_mncs, maximal_cycle, mnc_area, spoke_levels
from .order import load_order
from .proximity import check_properties

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_IO = 0, 1, 2, 3


class CommandFailed(Exception):
    """A check completed with a negative verdict; carries the output to print."""

    def __init__(self, text):
        super().__init__("check failed")
        self.text = text


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ordprox-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_point_sets(path):
    """Read ``frame_id,x,y`` or ``x,y`` CSV into ``[(frame_id or None, points)]``."""
    with open(path, newline="", encoding="utf-8") as fh:
        text = fh.read()
    first = next(csv.reader(text.splitlines()), None)
    if first is not None and [h.strip() for h in first] == ["x", "y"]:
        rows = []
        for line, row in enumerate(csv.reader(text.splitlines()[1:]), start=2):
            if not row:
                continue
            try:
                x, y = (float(v) for v in row)
            except ValueError:
                raise MalformedRow(line, "expected two numeric fields") from None
            rows.append((x, y))
        return [(None, rows)]
    return [(fid, list(pts)) for fid, pts in ingest_frames(text).frames]


# -- handlers --------------------------------------------------------------------

def _cmd_check(args):
    report = check_properties(load_order(args.order))
    if args.format == "json":
        text = _dumps(report.to_dict())
    else:
        lines = [f"kind: {report.kind}"]
        for r in report.results:
            status = "holds" if r.holds else f"FAILS at {list(r.counterexample)}"
            lines.append(f"{r.name}: {status}")
        text = "\n".join(lines) + "\n"
    if not report.ok:
        raise CommandFailed(text)
    return text


def _cmd_hasse(args):
    return export(hasse(load_order(args.order)), args.format)


def _cmd_prox(args):
    return export(proximity_graph(load_order(args.order)), args.format)


def _cmd_equiv(args):
    report = check_equivalence(load_order(args.order))
    text = _dumps(report.to_dict())
    if not report.equal:
        raise CommandFailed(text)
    return text


def _cmd_triangulate(args):
    out = []
    for fid, pts in load_point_sets(args.points):
        tri = delaunay(pts, eps=args.epsilon)
        out.append({"frame_id": fid, "triangles": [list(t) for t in tri.triangles]})
    return _dumps({"frames": out})


def _cmd_mnc(args):
    out = []
    for fid, pts in load_point_sets(args.points):
        tri = delaunay(pts, eps=args.epsilon)
        mncs = []
        for j, mnc in enumerate(find_mncs(tri), start=1):
            levels = spoke_levels(tri, mnc, args.max_k)
            mncs.append({
                "feature_id": j,
                "nucleus": mnc.nucleus,
                "triangles": list(mnc.triangles),
                "area": mnc_area(tri, mnc),
                "spokes": {str(s.k): list(s.triangles) for s in levels},
            })
        out.append({"frame_id": fid, "mncs": mncs})
    return _dumps({"frames": out})


def _cmd_mcyc(args):
    out = []
    for fid, pts in load_point_sets(args.points):
        tri = delaunay(pts, eps=args.epsilon)
        cycles = []
        for j, mnc in enumerate(find_mncs(tri), start=1):
            level = spoke_levels(tri, mnc, args.k)[-1]
            entry = {"feature_id": j, "nucleus": mnc.nucleus, "k": args.k}
            if len(level.triangles) < 3:
                entry["skipped"] = f"level {args.k} has {len(level.triangles)} triangles"
            else:
                entry.update(maximal_cycle(tri, level, eps=args.epsilon).to_dict())
            cycles.append(entry)
        out.append({"frame_id": fid, "cycles": cycles})
    return _dumps({"frames": out})


def _chain(args):
    fs = ingest_frames(args.frames)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return order_frames(fs, args.by, args.epsilon)


def _cmd_frames(args):
    chain = _chain(args)
    if args.graph:
        args.extra_outputs.append((args.graph, export(chain_graph(chain), args.format)))
    for fid, j, reason in chain.skipped:
        print(json.dumps({"warning": "skipped", "frame_id": fid, "feature_id": j,
                          "reason": reason}), file=sys.stderr)
    return chain_to_csv(chain)


def _cmd_frame_subgraph(args):
    return export(frame_subgraph(_chain(args), args.frame), args.format)


def _cmd_gen_frames(args):
    return frames_to_csv(generate_frames(args.frames, args.points, args.seed))


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordprox",
        description="Order-induced proximities, Hasse diagrams and frame ordering.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write to this file instead of stdout")
    common.add_argument("--epsilon", type=float, default=EPSILON,
                        help="tolerance for geometric predicates (default %(default)g)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    fmt = dict(choices=("dot", "json"), default="dot")

    p = add("check", _cmd_check, "validate an order and check its proximity properties")
    p.add_argument("order")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = add("hasse", _cmd_hasse, "emit the Hasse diagram of an order")
    p.add_argument("order")
    p.add_argument("--format", **fmt)

    p = add("prox", _cmd_prox, "emit the proximity graph of an order")
    p.add_argument("order")
    p.add_argument("--format", **fmt)

    p = add("equiv", _cmd_equiv, "exit 0 iff the proximity graph equals the Hasse diagram")
    p.add_argument("order")

    p = add("triangulate", _cmd_triangulate, "Delaunay triangles as JSON")
    p.add_argument("points")

    p = add("mnc", _cmd_mnc, "maximal nuclear clusters with their areas and spokes")
    p.add_argument("points")
    p.add_argument("--max-k", type=int, default=1)

    p = add("mcyc", _cmd_mcyc, "centroidal maximal cycle at level k")
    p.add_argument("points")
    p.add_argument("--k", type=int, default=1)

    p = add("frames", _cmd_frames, "ordered chain CSV of frame features")
    p.add_argument("frames")
    p.add_argument("--by", choices=("area", "length"), default="area")
    p.add_argument("--graph", help="also write the chain graph to this file")
    p.add_argument("--format", **fmt, help="format of --graph output")

    p = add("frame-subgraph", _cmd_frame_subgraph, "chain neighbourhood of one frame")
    p.add_argument("frames")
    p.add_argument("--by", choices=("area", "length"), default="area")
    p.add_argument("--frame", type=int, required=True)
    p.add_argument("--format", **fmt)

    p = add("gen-frames", _cmd_gen_frames, "synthetic random frames CSV")
    p.add_argument("--frames", type=int, default=10)
    p.add_argument("--points", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _emit(args, text):
    for path, extra in args.extra_outputs:
        write_atomic(path, extra)
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)


def _fail(code, exc):
    if isinstance(exc, ValidationError):
        payload = exc.to_dict()
    else:
        payload = {"error": type(exc).__name__, "message": str(exc)}
    print(json.dumps(payload), file=sys.stderr)
    return code


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.extra_outputs = []
    try:
        if getattr(args, "max_k", 1) < 1 or getattr(args, "k", 1) < 1:
            raise ValidationError("spoke level must be >= 1")
        text = args.func(args)
    except CommandFailed as exc:
        sys.stdout.write(exc.text)
        return EXIT_FAILED
    except ValidationError as exc:
        return _fail(EXIT_INVALID, exc)
    except OSError as exc:
        return _fail(EXIT_IO, exc)
    try:
        _emit(args, text)
    except OSError as exc:
        return _fail(EXIT_IO, exc)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
