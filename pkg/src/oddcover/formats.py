"""Polygon and K-set text files, cover files, and structured reports.

Every rational is written as a "p/q" (or "p") string so files round-trip
exactly.  JSON output uses sorted keys and a fixed indent, which makes it
byte-identical across runs.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .cover import DirectionClass, OddCover
from .geometry import AffineMap, IntegerPolygon, RationalPolygon, ValidationError, Vec2, as_rational, format_rational
from .stripes import StripePattern, StripeXor
from .weighting import LinearFunctionalZd, StableWeighting

COVER_FORMAT = "oddcover-cover"
REPORT_FORMAT = "oddcover-report"
VERSION = 1
RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")


class ParseError(ValidationError):
    pass


def parse_points(text: str, source: str = "<input>") -> list[Vec2]:
    """One point per line as two rationals ("1/2 3", "1/2,3"); '#' starts a comment."""
    pts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].replace(",", " ").strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(f"{source}:{lineno}: expected two coordinates, got {len(fields)}")
        bad = [f for f in fields if not RATIONAL.fullmatch(f)]
        if bad:
            raise ParseError(f"{source}:{lineno}: not a rational p/q: {bad[0]!r}")
        try:
            pts.append(Vec2(as_rational(fields[0]), as_rational(fields[1])))
        except (ValidationError, ZeroDivisionError) as exc:
            raise ParseError(f"{source}:{lineno}: {exc}") from exc
    return pts


def read_polygon(path: str | Path) -> RationalPolygon:
    path = Path(path)
    pts = parse_points(path.read_text(), str(path))
    if len(pts) < 3:
        raise ParseError(f"{path}: a polygon needs at least 3 vertices, got {len(pts)}")
    return RationalPolygon(pts)


def format_points(pts) -> str:
    return "".join(f"{format_rational(p.x)} {format_rational(p.y)}\n" for p in pts)


def point_json(p: Vec2) -> list[str]:
    return [format_rational(p.x), format_rational(p.y)]


def _point(item) -> Vec2:
    if not isinstance(item, list) or len(item) != 2:
        raise ParseError(f"expected a coordinate pair, got {item!r}")
    return Vec2(as_rational(str(item[0])), as_rational(str(item[1])))


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# cover files


def cover_to_dict(c: OddCover) -> dict:
    w = c.weighting
    return {
        "format": COVER_FORMAT,
        "version": VERSION,
        "polygon": [point_json(v) for v in c.polygon.vertices],
        "normalized": c.polygon.normalized,
        "affine": c.affine.as_strings(),
        "weighting": {"k": w.k, "L": list(w.L.coefficients), "residues": sorted(w.residues)},
        "U": [point_json(u) for u in c.U],
        "stripes": {
            "complemented": c.stripes.complemented,
            "stripes": [{"normal": point_json(s.normal), "offset": format_rational(s.offset)} for s in c.stripes.stripes],
        },
        "period": [list(c.period.g1), list(c.period.g2)],
        "classes": [{"d": list(d.d), "normal": list(d.normal), "edges": list(d.edges)} for d in c.classes],
        "active": list(c.active),
        "density": format_rational(c.density),
        "bound": format_rational(c.bound),
        "area": format_rational(c.area),
        "area_label": c.area_label,
        "max_degree": c.max_degree,
        "degrees": list(c.degrees),
    }


def cover_from_dict(data: dict) -> OddCover:
    """Rebuild a cover exactly as written; nothing is re-derived."""
    from .geometry import Lattice2

    try:
        if data.get("format") != COVER_FORMAT:
            raise ParseError(f"not a cover file (format {data.get('format')!r})")
        if data.get("version") != VERSION:
            raise ParseError(f"unsupported cover file version {data.get('version')!r}")
        poly = RationalPolygon(_point(p) for p in data["polygon"])
        wd = data["weighting"]
        L = LinearFunctionalZd(tuple(int(x) for x in wd["L"]))
        w = StableWeighting(int(wd["k"]), L, frozenset(int(x) for x in wd["residues"]))
        if w != StableWeighting.build(w.k, L):
            raise ParseError("residue set does not match f_k")
        sd = data["stripes"]
        stripes = StripeXor(
            [StripePattern(_point(s["normal"]), as_rational(s["offset"])) for s in sd["stripes"]],
            bool(sd["complemented"]),
        )
        g1, g2 = (tuple(int(x) for x in g) for g in data["period"])
        classes = tuple(
            DirectionClass(tuple(c["d"]), tuple(c["normal"]), tuple(c["edges"])) for c in data["classes"]
        )
        cover = OddCover(
            polygon=IntegerPolygon(poly, bool(data["normalized"])),
            affine=AffineMap(*(as_rational(q) for q in data["affine"])),
            weighting=w,
            U=tuple(_point(u) for u in data["U"]),
            stripes=stripes,
            period=Lattice2(g1, g2),
            density=as_rational(data["density"]),
            max_degree=int(data["max_degree"]),
            degrees=tuple(int(d) for d in data["degrees"]),
            classes=classes,
            active=tuple(bool(a) for a in data["active"]),
            area_label=str(data["area_label"]),
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed cover file: {exc!r}") from exc
    return cover


def write_cover(c: OddCover, path: str | Path) -> None:
    Path(path).write_text(dumps(cover_to_dict(c)))


def read_cover(path: str | Path) -> OddCover:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    return cover_from_dict(data)


def is_cover_file(path: str | Path) -> bool:
    text = Path(path).read_text().lstrip()
    return text.startswith("{")


# ---------------------------------------------------------------------------
# reports


def report(command: str, ok: bool, body: dict) -> dict:
    return {"format": REPORT_FORMAT, "version": VERSION, "command": command, "ok": ok, **body}


def jsonable(value: Any) -> Any:
    """Convert report values: Fractions and vectors become "p/q" strings."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Vec2):
        return point_json(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [jsonable(v) for v in items]
    if hasattr(value, "item"):  # numpy scalar
        return value.item()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def text_lines(data: dict, indent: str = "") -> list[str]:
    """Human-readable rendering of a report dictionary."""
    out = []
    for key in data:
        if key in ("format", "version"):
            continue
        value = data[key]
        if isinstance(value, dict):
            out.append(f"{indent}{key}:")
            out.extend(text_lines(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            out.append(f"{indent}{key}:")
            for item in value:
                sub = text_lines(item, indent + "    ")
                if sub:
                    sub[0] = indent + "  - " + sub[0].lstrip()
                out.extend(sub)
        else:
            out.append(f"{indent}{key}: {_plain(value)}")
    return out


def _plain(value: Any) -> str:
    if isinstance(value, list):
        if value and isinstance(value[0], str) and len(value) == 2 and all(isinstance(v, str) for v in value):
            return f"({value[0]}, {value[1]})"
        return "[" + ", ".join(_plain(v) for v in value) + "]"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)
