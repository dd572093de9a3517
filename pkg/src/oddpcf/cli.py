"""Command line client over the service handlers.

Subcommands mirror the HTTP endpoints: faces, analyze, detect, discharge,
solve, color, gen.  Exit codes: 0 success, 1 validation error, 2 critical
audit finding.  ``--jobs N`` fans a command out over several input files.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from .errors import OddPcfError
from .service import handlers, schemas

EXIT_OK, EXIT_ERROR, EXIT_CRITICAL = 0, 1, 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _graph_input(path: str, fmt: str) -> schemas.GraphInput:
    return schemas.GraphInput(data=_read(path), format=fmt)


def _emit(payload: dict, fmt: str, text_renderer=None, out=None):
    out = out or sys.stdout
    if fmt == "json" or text_renderer is None:
        json.dump(payload, out, indent=2, default=str)
        out.write("\n")
    else:
        out.write(text_renderer(payload))


# --- per-command text renderers ------------------------------------------------

def _faces_text(payload: dict) -> str:
    lines = []
    for f in payload["faces"]:
        reps = " ".join(f["representations"]) or "(none)"
        cls = f["face_class"] or "unrepresentable"
        lines.append(f"face {f['face']} len {f['length']} [{cls}] {reps}")
    return "\n".join(lines) + "\n"


def _analyze_text(payload: dict) -> str:
    lines = [f"vertex {v['vertex']}: forb={v['forb']} flex={v['flex']}"
             for v in payload["vertices"]]
    if payload["untypeable"]:
        lines.append("untypeable: " + " ".join(map(str, payload["untypeable"])))
    return "\n".join(lines) + "\n"


def _detect_text(payload: dict) -> str:
    if not payload["hits"]:
        return "no hits\n"
    return "\n".join(f"{h['kind']}: {h['witness']}" for h in payload["hits"]) + "\n"


def _discharge_text(payload: dict) -> str:
    lines = [f"theorem {payload['theorem']} applicable={payload['applicable']}"]
    for stage, total in payload["totals"].items():
        lines.append(f"  {stage}: {total}")
    lines.append(f"  negatives: {len(payload['negatives'])}"
                 f"  critical: {len(payload['critical'])}  hits: {payload['hits']}")
    return "\n".join(lines) + "\n"


def _solve_text(payload: dict) -> str:
    return (f"chromatic[{payload['mode']}] = {payload['chromatic']} "
            f"(nodes={payload['nodes']})\n")


def _color_text(payload: dict) -> str:
    pairs = " ".join(f"{v}={c}" for v, c in sorted(payload["coloring"].items(),
                                                   key=lambda x: int(x[0])))
    return f"{pairs}\nfallback={payload['used_fallback']}\n"


# --- command implementations ----------------------------------------------------

def _run_one(args, path: str) -> int:
    fmt = args.format
    if args.command == "faces":
        resp = handlers.faces(_graph_input(path, args.input_format))
        _emit(resp.model_dump(by_alias=True), fmt, _faces_text)
    elif args.command == "analyze":
        resp = handlers.analyze(_graph_input(path, args.input_format))
        _emit(resp.model_dump(by_alias=True), fmt, _analyze_text)
    elif args.command == "detect":
        resp = handlers.detect(schemas.DetectRequest(
            graph=_graph_input(path, args.input_format), theorem=args.theorem))
        _emit(resp.model_dump(by_alias=True), fmt, _detect_text)
        if args.fail_on_critical:
            audit = handlers.discharge(schemas.DischargeRequest(
                graph=_graph_input(path, args.input_format), theorem=args.theorem))
            if audit.critical:
                return EXIT_CRITICAL
    elif args.command == "discharge":
        resp = handlers.discharge(schemas.DischargeRequest(
            graph=_graph_input(path, args.input_format), theorem=args.theorem))
        _emit(resp.model_dump(by_alias=True), fmt, _discharge_text)
        if resp.critical:
            return EXIT_CRITICAL
    elif args.command == "solve":
        resp = handlers.solve(schemas.SolveRequest(
            graph=_graph_input(path, args.input_format), mode=args.mode,
            max_k=args.max_k))
        _emit(resp.model_dump(by_alias=True), fmt, _solve_text)
    elif args.command == "color":
        resp = handlers.color(schemas.ColorRequest(
            graph=_graph_input(path, args.input_format), theorem=args.theorem,
            allow_fallback=not args.no_fallback))
        _emit(resp.model_dump(by_alias=True), fmt, _color_text)
    else:
        raise AssertionError(args.command)
    return EXIT_OK


def cli(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="oddpcf",
        description="Odd / proper conflict-free coloring laboratory for plane graphs")
    parser.add_argument("--format", choices=["json", "text"], default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_graph_command(name, **extra):
        p = sub.add_parser(name, **extra)
        p.add_argument("inputs", nargs="+", metavar="FILE",
                       help="rotation-system file, or - for stdin")
        p.add_argument("--input-format", choices=["rot", "graph6"], default="rot")
        p.add_argument("--jobs", type=int, default=1)
        return p

    add_graph_command("faces", help="array representations and poor/rich classes")
    add_graph_command("analyze", help="per-vertex forb/flex report")
    p = add_graph_command("detect", help="reducible-configuration hits")
    p.add_argument("--theorem", choices=["odd10", "pcf11"], default="odd10")
    p.add_argument("--fail-on-critical", action="store_true")
    p = add_graph_command("discharge", help="exact-rational discharging audit")
    p.add_argument("--theorem", choices=["odd10", "pcf11"], default="odd10")
    p = add_graph_command("solve", help="exact chromatic number")
    p.add_argument("--mode", choices=["odd", "pcf"], default="odd")
    p.add_argument("--max-k", type=int, default=8)
    p = add_graph_command("color", help="constructive 4-coloring")
    p.add_argument("--theorem", choices=["odd10", "pcf11"], default="odd10")
    p.add_argument("--no-fallback", action="store_true")

    p = sub.add_parser("gen", help="seeded random plane graph with a girth floor")
    p.add_argument("--skeleton", type=int, required=True)
    p.add_argument("--girth", type=int, required=True)
    p.add_argument("--policy", choices=["mixed", "uniform", "long", "even"],
                   default="mixed")
    p.add_argument("--seed", type=int, default=0)

    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            resp = handlers.gen(schemas.GenRequest(
                skeleton=args.skeleton, girth=args.girth,
                policy=args.policy, seed=args.seed))
            if args.format == "json":
                _emit(resp.model_dump(by_alias=True), "json")
            else:
                sys.stdout.write(resp.rotation)
            return EXIT_OK
        codes = []
        if args.jobs > 1 and len(args.inputs) > 1:
            with ThreadPoolExecutor(max_workers=args.jobs) as pool:
                codes = list(pool.map(lambda pth: _run_one(args, pth), args.inputs))
        else:
            codes = [_run_one(args, pth) for pth in args.inputs]
        return max(codes)
    except OddPcfError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry():
    raise SystemExit(cli())


if __name__ == "__main__":
    entry()
