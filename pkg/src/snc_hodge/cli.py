"""Command line: snc-hodge analyze | bundle | condition-star | reproduce | export."""

from __future__ import annotations

import argparse
import sys

from . import report
from .errors import DimensionCapExceeded, InvalidParams, SchemaError
from .geometries import SCENARIOS
from .geometries import scenario as build_scenario
from .linalg import Mat, fmt_short
from .schema import dumps, scenario_out, to_jsonable

EXIT_OK, EXIT_SCHEMA, EXIT_BLOCKING, EXIT_GOLDEN = 0, 2, 3, 4


def _param(text: str) -> tuple[str, object]:
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    k, v = text.split("=", 1)
    try:
        return k.strip(), int(v)
    except ValueError:
        return k.strip(), v.strip()


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--param", action="append", type=_param, default=[], metavar="KEY=VALUE",
                   help="scenario parameter, repeatable")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="snc-hodge", description="Exact weight spectral sequence and Hodge checks "
                                                                "for SNC degenerations without triple points.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="weight pieces, Betti/Hodge numbers and N^[1] per degree")
    p.add_argument("source", help="input file or scenario:<id>")
    p.add_argument("--degree", type=int)
    _common(p)

    p = sub.add_parser("bundle", help="Lefschetz and Hodge-Riemann checks for a named bundle")
    p.add_argument("name")
    p.add_argument("--input", required=True, dest="source", help="input file or scenario:<id>")
    p.add_argument("--fiber", action="store_true", help="also run the checks on the smooth fiber")
    _common(p)

    p = sub.add_parser("condition-star", help="positivity of the pairings on Gr^W_3 and Ker gamma_4")
    p.add_argument("--input", required=True, dest="source", help="input file or scenario:<id>")
    p.add_argument("--mode", choices=("exact", "sufficient"), default="sufficient")
    _common(p)

    p = sub.add_parser("reproduce", help="compare a shipped scenario against stored reference values")
    p.add_argument("scenario", choices=sorted(SCENARIOS))
    _common(p)

    p = sub.add_parser("export", help="write a shipped scenario as an input document")
    p.add_argument("scenario", choices=sorted(SCENARIOS))
    p.add_argument("--param", action="append", type=_param, default=[], metavar="KEY=VALUE")
    p.add_argument("--out", metavar="PATH")
    return ap


# ---------------------------------------------------------------------------
# text rendering


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            key = k if isinstance(k, str) else str(k)
            if isinstance(v, (dict, list, tuple)) and v and not _inline(v):
                lines.append(f"{pad}{key}:")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}{key}: {_atom(v)}")
        return lines
    if isinstance(obj, (list, tuple)):
        lines = []
        for v in obj:
            if isinstance(v, (dict, list, tuple)) and v and not _inline(v):
                sub = _text(v, indent + 1)
                lines.append(f"{pad}- {sub[0].strip()}")
                lines += sub[1:]
            else:
                lines.append(f"{pad}- {_atom(v)}")
        return lines
    return [f"{pad}{_atom(obj)}"]


def _inline(v) -> bool:
    if isinstance(v, Mat):
        return True
    if isinstance(v, (list, tuple)):
        return len(v) <= 12 and all(
            (not isinstance(x, (dict, list, tuple)) or isinstance(x, Mat)) and not (isinstance(x, str) and len(x) > 40)
            for x in v)
    return False


def _atom(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, Mat):
        if v.rows * v.cols == 0:
            return f"<{v.rows}x{v.cols} empty>"
        if v.rows * v.cols > 64:
            return f"<{v.rows}x{v.cols} matrix>"
        return "[" + "; ".join(" ".join(fmt_short(x) for x in r) for r in v.tolist()) + "]"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_atom(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    if isinstance(v, str):
        return v
    if hasattr(v, "__dataclass_fields__"):
        return str(to_jsonable(v))
    try:
        return fmt_short(v)
    except (TypeError, ValueError):
        return str(v)


def render_text(rep: dict) -> str:
    if rep.get("command") == "reproduce":
        head = [f"reproduce {rep['input']['scenario_id']} {to_jsonable(rep['input']['params'])}"]
        for r in rep.get("results", []):
            line = f"{r['status']:<15} {r['key']}: expected {r['expected']}, computed {r['computed']}  [{r['tag']}: {r['anchor']}]"
            if "deviation" in r:
                line += f"\n                ({r['deviation']})"
            head.append(line)
        head.append(rep["status"])
        return "\n".join(head) + "\n"
    body = {k: v for k, v in rep.items() if k not in ("schema", "conventions")}
    lines = [f"# {rep['schema']}"] + _text(body) + ["conventions:"] + _text(rep["conventions"], 1)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    params = dict(args.param)
    try:
        if args.command == "export":
            _emit(dumps(scenario_out(build_scenario(args.scenario, **params))), args.out)
            return EXIT_OK
        if args.command == "reproduce":
            rep, code = report.reproduce(args.scenario, params)
        else:
            sc = report.resolve(args.source, params)
            if params and not args.source.startswith("scenario:"):
                raise InvalidParams("--param applies to scenario:<id> sources only")
            if args.command == "analyze":
                rep, code = report.analyze(sc, args.source, args.degree)
            elif args.command == "bundle":
                rep, code = report.bundle(sc, args.source, args.name, args.fiber)
            else:
                rep, code = report.star(sc, args.source, args.mode)
    except (SchemaError, InvalidParams) as exc:
        print(f"snc-hodge: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except DimensionCapExceeded as exc:
        print(f"snc-hodge: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_BLOCKING
    except FileNotFoundError as exc:
        print(f"snc-hodge: parse-error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    text = dumps(to_jsonable(rep)) if args.format == "json" else render_text(rep)
    _emit(text, args.out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
