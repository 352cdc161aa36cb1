"""Command-line front end: ``oddcover <command> --input FILE [options]``.

Exit status is 0 on success, 1 when a verification fails, and 2 for usage,
parse, or validation errors.  Errors are also written to stderr as one
JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .cover import (
    OddCover,
    analyze,
    build_cover,
    compression_check,
    verify_cover,
)
from .formats import (
    ParseError,
    cover_to_dict,
    dumps,
    is_cover_file,
    jsonable,
    parse_points,
    point_json,
    read_cover,
    read_polygon,
    report,
    text_lines,
)
from .geometry import ValidationError, format_rational, normalize_polygon, polygon_area
from .parity import odd_area
from .sweep import Window
from .svg import render_cover, render_markers, render_xor
from .stripes import StripeXor
from .weighting import LevelTooLarge

COMMANDS = ("normalize", "analyze", "cover", "verify", "odd-area", "render")
FIGURES = ("stripes", "sss", "markers", "cover")
EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: Path
    output: Path | None = None
    samples: int = 10_000
    seed: int = 0
    window: int = 64
    format: str = "text"
    offsets: Path | None = None
    figure: str = "cover"

    def __post_init__(self):
        if self.samples <= 0:
            raise UsageError("--samples must be positive")
        if self.window <= 0:
            raise UsageError("--window must be positive")
        if not 0 <= self.seed < 2**64:
            raise UsageError("--seed must be a 64-bit unsigned integer")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="oddcover", description="Odd covers of the plane by translates of a rational polygon.")
    p.add_argument("--version", action="version", version=f"oddcover {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", required=True, type=Path, help="polygon file (or a cover file for verify)")
    p.add_argument("--output", type=Path, help="write the result here instead of stdout")
    p.add_argument("--samples", type=int, default=10_000, help="random points for sampled checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--window", type=int, default=64, help="window size n for densities and figures")
    p.add_argument("--format", choices=("text", "structured", "svg"), default="text")
    p.add_argument("--offsets", type=Path, help="odd-area: file with the translation set K")
    p.add_argument("--figure", choices=FIGURES, default="cover", help="render: which figure to draw")
    return p


def parse_config(argv: list[str] | None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(
        command=ns.command,
        input=ns.input,
        output=ns.output,
        samples=ns.samples,
        seed=ns.seed,
        window=ns.window,
        format=ns.format,
        offsets=ns.offsets,
        figure=ns.figure,
    )


# ---------------------------------------------------------------------------
# commands; each returns (ok, report body)


def cmd_normalize(cfg: RunConfig) -> tuple[bool, dict]:
    P = read_polygon(cfg.input)
    Q, affine = normalize_polygon(P)
    return True, {
        "input": [point_json(v) for v in P.vertices],
        "polygon": [point_json(v) for v in Q.vertices],
        "affine": affine.as_strings(),
        "area": format_rational(polygon_area(Q.polygon)),
    }


def cmd_analyze(cfg: RunConfig) -> tuple[bool, dict]:
    a = analyze(read_polygon(cfg.input))
    w = a.weighting
    return True, {
        "polygon": [point_json(v) for v in a.polygon.vertices],
        "affine": a.affine.as_strings(),
        "k": w.k,
        "L": list(w.L.coefficients),
        "residues": sorted(w.residues),
        "classes": [
            {
                "d": list(m.direction.d),
                "normal": list(m.direction.normal),
                "edges": list(m.direction.edges),
                "markers": [list(p) for p in m.points],
                "active": act,
            }
            for m, act in zip(a.markers, a.active)
        ],
    }


def _cover_summary(c: OddCover) -> dict:
    return {
        "k": c.k,
        "radix": c.radix,
        "residues": len(c.weighting.residues),
        "U_size": len(c.U),
        "density": format_rational(c.density),
        "bound": format_rational(c.bound),
        "area": format_rational(c.area),
        "area_label": c.area_label,
        "max_degree": c.max_degree,
        "degrees": list(c.degrees),
    }


def cmd_cover(cfg: RunConfig) -> tuple[bool, dict]:
    c = build_cover(read_polygon(cfg.input), seed=cfg.seed)
    return True, {"summary": _cover_summary(c), "cover": cover_to_dict(c)}


def _load_cover(path: Path, seed: int) -> OddCover:
    if is_cover_file(path):
        return read_cover(path)
    return build_cover(read_polygon(path), seed=seed)


def cmd_verify(cfg: RunConfig) -> tuple[bool, dict]:
    c = _load_cover(cfg.input, cfg.seed)
    rep = verify_cover(c, cfg.samples, cfg.seed, cfg.window)
    layers = [
        {
            "name": layer.name,
            "ok": layer.ok,
            "detail": jsonable(layer.detail),
            "counterexample": None if layer.counterexample is None else point_json(layer.counterexample),
        }
        for layer in rep.layers
    ]
    return rep.ok, {"summary": _cover_summary(c), "layers": layers}


def cmd_odd_area(cfg: RunConfig) -> tuple[bool, dict]:
    if cfg.offsets is None:
        raise UsageError("odd-area needs --offsets FILE with the translation set K")
    P = read_polygon(cfg.input)
    K = parse_points(cfg.offsets.read_text(), str(cfg.offsets))
    if len(K) % 2 == 0:
        raise UsageError(f"K must have odd cardinality (an odd number of translates), got {len(K)}")
    result = compression_check(P, K)
    return result.passed, {
        "K_size": len(K),
        "odd_area": format_rational(odd_area(P, K)),
        "area": format_rational(polygon_area(P)),
        "ratio": format_rational(result.ratio),
        "bound": format_rational(result.bound),
        "passed": result.passed,
    }


def cmd_render(cfg: RunConfig) -> tuple[bool, str]:
    n = cfg.window
    window = Window(0, 0, n, n)
    c = _load_cover(cfg.input, cfg.seed)
    if cfg.figure == "stripes":
        # one stripe pattern of the cover: the first active direction
        return True, render_xor(StripeXor(c.stripes.stripes[:1], c.stripes.complemented), window)
    if cfg.figure == "sss":
        return True, render_xor(c.stripes, window)
    if cfg.figure == "markers":
        return True, render_markers(c)
    return True, render_cover(c, window)


HANDLERS = {
    "normalize": cmd_normalize,
    "analyze": cmd_analyze,
    "cover": cmd_cover,
    "verify": cmd_verify,
    "odd-area": cmd_odd_area,
}


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output is not None:
        cfg.output.write_text(text)
    else:
        sys.stdout.write(text)


def _diagnose(kind: str, message: str, command: str | None = None) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message, "command": command}, sort_keys=True) + "\n")


def run(cfg: RunConfig) -> int:
    if cfg.command == "render":
        if cfg.format not in ("svg", "text"):
            raise UsageError("render produces SVG only")
        _, svg = cmd_render(cfg)
        _emit(svg, cfg)
        return EXIT_OK
    if cfg.format == "svg":
        raise UsageError(f"{cfg.command} has no SVG output; use render")
    ok, body = HANDLERS[cfg.command](cfg)
    data = report(cfg.command, ok, body)
    if cfg.command == "cover" and cfg.output is not None:
        # the cover file itself; the summary still goes to stdout
        cfg.output.write_text(dumps(body["cover"]))
        summary = report("cover", ok, {"summary": body["summary"]})
        sys.stdout.write(dumps(summary) if cfg.format == "structured" else "\n".join(text_lines(summary)) + "\n")
    else:
        _emit(dumps(data) if cfg.format == "structured" else "\n".join(text_lines(data)) + "\n", cfg)
    if not ok:
        failed = [layer["name"] for layer in body.get("layers", []) if not layer["ok"]]
        _diagnose("verification-failed", f"failed checks: {', '.join(failed) or cfg.command}", cfg.command)
        return EXIT_FAILED
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    command = None
    try:
        cfg = parse_config(argv)
        command = cfg.command
        return run(cfg)
    except UsageError as exc:
        _diagnose("usage", str(exc), command)
    except (ParseError, ValidationError, LevelTooLarge) as exc:
        _diagnose(type(exc).__name__, str(exc), command)
    except FileNotFoundError as exc:
        _diagnose("file-not-found", str(exc), command)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
