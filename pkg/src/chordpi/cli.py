"""Command line front end: ranked search reports as text, JSON, or CSV,
plus SVG diagrams of a chosen construction.

Exit codes: 0 on success, 2 on a usage error (the message names the
offending flag), 1 on an internal error (the message names the module the
failure came from).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field as dataclass_field, asdict
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .catalog import (
    Catalog,
    CatalogConfig,
    CatalogPoint,
    ChordSelector,
    LineRecord,
    build_catalog,
    is_constructible,
)
from .geometry import Frame, Line, Point, ngon_vertices
from .numberfield import FieldElement, IntPolynomial, QuadraticSurd, field_for_ngon
from .search import (
    Hit,
    SearchParams,
    TargetConstant,
    compare_across_n,
    scan_distances,
    target_from_spec,
)

CACHE_FORMAT_VERSION = 1


class UsageError(ValueError):
    """Bad flag value; the message starts with the flag name."""


# ---------------------------------------------------------------------------
# run configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    n: int = 0
    selector: str = "all"
    unit: str = "side"
    target: str = "pi"
    top_k: int = 10
    format: str = "text"
    svg_path: Optional[str] = None
    precision_bits: int = 128
    jobs: int = 1
    catalog_cache_path: Optional[str] = None
    compare: Optional[Tuple[int, ...]] = None
    include_vertices: bool = True
    prune_window: float = 0.05

    def validate(self) -> None:
        if self.compare is None and self.n < 3:
            raise UsageError("--n: need an integer >= 3")
        if self.compare is not None and any(n < 3 for n in self.compare):
            raise UsageError("--compare: every n must be >= 3")
        if self.unit not in ("side", "circumradius", "diameter"):
            raise UsageError("--unit: choose side, circumradius, or diameter")
        if self.format not in ("text", "json", "csv"):
            raise UsageError("--format: choose text, json, or csv")
        if self.top_k < 1:
            raise UsageError("--top: need a positive integer")
        if self.precision_bits < 8:
            raise UsageError("--bits: need at least 8")
        if self.jobs < 1:
            raise UsageError("--jobs: need a positive integer")
        if not self.prune_window > 0:
            raise UsageError("--window: need a positive number")
        self.parsed_selector()
        try:
            target_from_spec(self.target)
        except ValueError as exc:
            raise UsageError(f"--target: {exc}") from exc

    def parsed_selector(self) -> ChordSelector:
        spec = self.selector
        if spec == "all":
            return ChordSelector.all_chords()
        if spec.startswith("steps="):
            try:
                steps = [int(part) for part in spec[len("steps="):].split(",") if part]
            except ValueError as exc:
                raise UsageError(f"--selector: bad step list in {spec!r}") from exc
            if not steps:
                raise UsageError("--selector: empty step list")
            return ChordSelector.of_steps(steps)
        raise UsageError(f"--selector: expected 'all' or 'steps=...', got {spec!r}")

    def frame(self) -> Frame:
        return Frame(self.unit)

    def search_params(self) -> SearchParams:
        return SearchParams(top_k=self.top_k, prune_window=self.prune_window,
                            unit=self.frame(), min_bits=self.precision_bits)


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

@dataclass
class Report:
    """JSON-able run summary: everything is a plain dict/list/str/number, so
    serialization is lossless by construction."""

    config: Dict[str, Any]
    field: Optional[Dict[str, Any]] = None
    catalog: Optional[Dict[str, Any]] = None
    hits: Optional[List[Dict[str, Any]]] = None
    compare: Optional[List[Dict[str, Any]]] = None
    timing: Dict[str, float] = dataclass_field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2) + "\n"

    @staticmethod
    def from_json(text: str) -> "Report":
        return Report(**json.loads(text))


def _rat_str(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def surd_string(hit: Hit) -> str:
    """sqrt(p/q), sqrt(p/q +- p/q*sqrt(d)), or for values of higher degree
    root(<integer coefficient list, ascending>, approx=<decimal>)."""
    surd = hit.surd
    if surd is None:
        coeffs = list(hit.minpoly.coeffs)
        return f"root({coeffs}, approx={hit.decimal})"
    if surd.b == 0:
        return f"sqrt({_rat_str(surd.a)})"
    sign = "+" if surd.b > 0 else "-"
    return f"sqrt({_rat_str(surd.a)} {sign} {_rat_str(abs(surd.b))}*sqrt({surd.d}))"


def _element_dict(value: FieldElement) -> Dict[str, Any]:
    return {"conductor": value.field.conductor,
            "coeffs": [_rat_str(c) for c in value.coeffs]}


def _hit_dict(rank: int, hit: Hit) -> Dict[str, Any]:
    return {
        "rank": rank,
        "p_id": hit.p_id,
        "q_id": hit.q_id,
        "sq_value": _element_dict(hit.sq_value),
        "surd": surd_string(hit),
        "minpoly": list(hit.minpoly.coeffs),
        "decimal": hit.decimal,
        "abs_error": {"lo": _rat_str(hit.abs_error.lo), "hi": _rat_str(hit.abs_error.hi)},
        "abs_error_hi_float": float(hit.abs_error.hi),
        "digits": hit.digits,
        "complexity": hit.complexity,
    }


def _catalog_dict(catalog: Catalog) -> Dict[str, Any]:
    return {"lines": len(catalog.lines), "points": len(catalog.points),
            "vertices": catalog.n_vertices, "crossings": catalog.n_crossings}


def _field_dict(n: int) -> Dict[str, Any]:
    descriptor = field_for_ngon(n)
    return {"conductor": descriptor.conductor, "degree": descriptor.degree,
            "minpoly": str(descriptor.minpoly)}


def build_report(config: RunConfig, catalog: Catalog, hits: List[Hit],
                 timing: Dict[str, float]) -> Report:
    return Report(
        config=asdict(config),
        field=_field_dict(config.n),
        catalog=_catalog_dict(catalog),
        hits=[_hit_dict(i + 1, h) for i, h in enumerate(hits)],
        timing=timing,
    )


def _point_cell(catalog: Catalog, point_id: int) -> str:
    return ";".join(str(i) for i in catalog.point_by_id(point_id).provenance)


def report_csv(report: Report, catalog: Catalog) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n", "unit", "p_id", "q_id", "decimal", "abs_error_hi",
                     "digits", "complexity", "surd", "minpoly",
                     "p_provenance", "q_provenance"])
    n = report.config["n"]
    unit = report.config["unit"]
    for hd in report.hits or []:
        poly = IntPolynomial(hd["minpoly"])
        writer.writerow([n, unit, hd["p_id"], hd["q_id"], hd["decimal"],
                         repr(hd["abs_error_hi_float"]), hd["digits"], hd["complexity"],
                         hd["surd"], str(poly),
                         _point_cell(catalog, hd["p_id"]),
                         _point_cell(catalog, hd["q_id"])])
    return out.getvalue()


def report_text(report: Report) -> str:
    lines = []
    cfg = report.config
    if report.compare is not None:
        lines.append(f"comparison across n={','.join(str(n) for n in cfg['compare'])} "
                     f"selector={cfg['selector']} unit={cfg['unit']} target={cfg['target']}")
        lines.append(f"{'n':>4}  {'constructible':>13}  {'lines':>6}  {'points':>7}  "
                     f"{'best distance':>14}  {'|error| <=':>12}  {'digits':>6}")
        for row in report.compare:
            best = row["best"]
            if best is None:
                lines.append(f"{row['n']:>4}  {str(row['constructible']):>13}  "
                             f"{row['lines']:>6}  {row['points']:>7}  {'-':>14}  {'-':>12}  {'-':>6}")
            else:
                lines.append(f"{row['n']:>4}  {str(row['constructible']):>13}  "
                             f"{row['lines']:>6}  {row['points']:>7}  {best['decimal']:>14}  "
                             f"{best['abs_error_hi_float']:>12.6e}  {best['digits']:>6}")
    else:
        lines.append(f"n={cfg['n']} selector={cfg['selector']} unit={cfg['unit']} "
                     f"target={cfg['target']} top={cfg['top_k']}")
        fld = report.field
        lines.append(f"field: conductor {fld['conductor']}, degree {fld['degree']}, "
                     f"minpoly {fld['minpoly']}")
        cat = report.catalog
        lines.append(f"catalog: {cat['lines']} lines, {cat['points']} points "
                     f"({cat['vertices']} vertices, {cat['crossings']} crossings)")
        lines.append(f"{'rank':>4}  {'pair':>11}  {'distance':>14}  {'|error| <=':>12}  "
                     f"{'digits':>6}  {'lines':>5}  value")
        for hd in report.hits or []:
            pair = f"{hd['p_id']}-{hd['q_id']}"
            lines.append(f"{hd['rank']:>4}  {pair:>11}  {hd['decimal']:>14}  "
                         f"{hd['abs_error_hi_float']:>12.6e}  {hd['digits']:>6}  "
                         f"{hd['complexity']:>5}  {hd['surd']}")
    timing = ", ".join(f"{k} {v:.2f}s" for k, v in report.timing.items())
    if timing:
        lines.append(f"timing: {timing}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# SVG diagrams
# ---------------------------------------------------------------------------

def _float_xy(point: Point) -> Tuple[float, float]:
    return (point.x.eval_interval(64).to_float(), point.y.eval_interval(64).to_float())


def _clip_line(line: Line, box: Tuple[float, float, float, float]) -> Optional[Tuple[float, float, float, float]]:
    """Clip a*x + b*y + c = 0 to a rectangle; endpoints of the visible
    portion, or None when the line misses the box."""
    a = line.a.eval_interval(64).to_float()
    b = line.b.eval_interval(64).to_float()
    c = line.c.eval_interval(64).to_float()
    x0, y0, x1, y1 = box
    eps = 1e-9 * max(x1 - x0, y1 - y0, 1.0)
    candidates = []
    if abs(b) > 1e-15:
        for x in (x0, x1):
            y = -(c + a * x) / b
            if y0 - eps <= y <= y1 + eps:
                candidates.append((x, y))
    if abs(a) > 1e-15:
        for y in (y0, y1):
            x = -(c + b * y) / a
            if x0 - eps <= x <= x1 + eps:
                candidates.append((x, y))
    unique: List[Tuple[float, float]] = []
    for pt in sorted(candidates):
        if not unique or abs(pt[0] - unique[-1][0]) > eps or abs(pt[1] - unique[-1][1]) > eps:
            unique.append(pt)
    if len(unique) < 2:
        return None
    (ax, ay), (bx, by) = unique[0], unique[-1]
    return (ax, ay, bx, by)


def emit_svg(report: Report, catalog: Catalog, hit: Optional[Hit]) -> str:
    """Deterministic SVG 1.1 diagram: polygon outline, the chord lines that
    define each non-vertex endpoint, labeled endpoint markers, and the
    highlighted distance segment.  Without a hit only the polygon is drawn.
    Coordinates come from 64-bit certified midpoints."""
    # the outline depends only on n and the frame, so a vertex-free catalog
    # still gets its polygon
    outline = ngon_vertices(catalog.config.n, catalog.config.frame)
    verts_xy = [_float_xy(p) for p in outline]
    drawn_points: List[Tuple[float, float]] = list(verts_xy)

    endpoints: List[CatalogPoint] = []
    if hit is not None:
        endpoints = [catalog.point_by_id(hit.p_id), catalog.point_by_id(hit.q_id)]
        drawn_points.extend(_float_xy(p.point) for p in endpoints)

    xs = [p[0] for p in drawn_points]
    ys = [p[1] for p in drawn_points]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-6)
    margin = 0.05 * span
    x0, x1 = min(xs) - margin, max(xs) + margin
    y0, y1 = min(ys) - margin, max(ys) + margin

    scale = 640.0 / max(x1 - x0, y1 - y0)

    def tx(x: float) -> float:
        return (x - x0) * scale

    def ty(y: float) -> float:
        return (y1 - y) * scale  # SVG y axis points down

    width = (x1 - x0) * scale
    height = (y1 - y0) * scale

    def fmt(v: float) -> str:
        return f"{v:.3f}"

    body: List[str] = []
    poly_pts = " ".join(f"{fmt(tx(x))},{fmt(ty(y))}" for x, y in verts_xy)
    body.append(f'<polygon points="{poly_pts}" fill="none" stroke="#333" stroke-width="1.5"/>')

    if hit is not None:
        line_ids = sorted({i for p in endpoints if not p.is_vertex for i in p.provenance})
        for line_id in line_ids:
            seg = _clip_line(catalog.lines[line_id].line, (x0, y0, x1, y1))
            if seg is None:
                continue
            ax, ay, bx, by = seg
            body.append(f'<line x1="{fmt(tx(ax))}" y1="{fmt(ty(ay))}" '
                        f'x2="{fmt(tx(bx))}" y2="{fmt(ty(by))}" '
                        f'stroke="#7a9cc6" stroke-width="0.8"/>')
        (px, py), (qx, qy) = (_float_xy(p.point) for p in endpoints)
        body.append(f'<line x1="{fmt(tx(px))}" y1="{fmt(ty(py))}" '
                    f'x2="{fmt(tx(qx))}" y2="{fmt(ty(qy))}" '
                    f'stroke="#c0392b" stroke-width="2.5"/>')
        for point, (x, y) in zip(endpoints, ((px, py), (qx, qy))):
            body.append(f'<circle cx="{fmt(tx(x))}" cy="{fmt(ty(y))}" r="4" fill="#c0392b"/>')
            body.append(f'<text x="{fmt(tx(x) + 7)}" y="{fmt(ty(y) - 7)}" '
                        f'font-family="sans-serif" font-size="14">{point.label()}</text>')

    head = (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{fmt(width)}" height="{fmt(height)}" '
            f'viewBox="0 0 {fmt(width)} {fmt(height)}">')
    return "\n".join([head] + body + ["</svg>"]) + "\n"


# ---------------------------------------------------------------------------
# catalog cache
# ---------------------------------------------------------------------------

def _config_dict(config: CatalogConfig) -> Dict[str, Any]:
    return {"n": config.n, "selector": config.selector.spec(),
            "frame": config.frame.value, "include_vertices": config.include_vertices}


def save_catalog(catalog: Catalog, path: str) -> None:
    data = {
        "format_version": CACHE_FORMAT_VERSION,
        "config": _config_dict(catalog.config),
        "conductor": catalog.descriptor.conductor,
        "lines": [{"id": rec.id, "i": rec.i, "j": rec.j, "step": rec.step,
                   "line": [_element_dict(rec.line.a)["coeffs"],
                            _element_dict(rec.line.b)["coeffs"],
                            _element_dict(rec.line.c)["coeffs"]]}
                  for rec in catalog.lines],
        "points": [{"id": p.id,
                    "x": _element_dict(p.point.x)["coeffs"],
                    "y": _element_dict(p.point.y)["coeffs"],
                    "vertex": p.vertex,
                    "provenance": list(p.provenance)}
                   for p in catalog.points],
    }
    with open(path, "w") as handle:
        json.dump(data, handle)
        handle.write("\n")


def load_catalog(path: str, config: CatalogConfig) -> Optional[Catalog]:
    """Catalog from a cache file, or None when the file is missing, has a
    different format version, or was built for a different configuration."""
    try:
        with open(path) as handle:
            data = json.load(handle)
    except FileNotFoundError:
        return None
    except (OSError, json.JSONDecodeError):
        return None
    if data.get("format_version") != CACHE_FORMAT_VERSION:
        return None
    if data.get("config") != _config_dict(config):
        return None
    descriptor = field_for_ngon(config.n)

    def element(coeffs: List[str]) -> FieldElement:
        return descriptor.element([Fraction(c) for c in coeffs])

    lines = tuple(
        LineRecord(rec["id"], rec["i"], rec["j"], rec["step"],
                   Line(element(rec["line"][0]), element(rec["line"][1]), element(rec["line"][2])))
        for rec in data["lines"])
    points = tuple(
        CatalogPoint(rec["id"], Point(element(rec["x"]), element(rec["y"])),
                     rec["vertex"], tuple(rec["provenance"]))
        for rec in data["points"])
    return Catalog(config=config, descriptor=descriptor, lines=lines, points=points)


def _catalog_with_cache(config: CatalogConfig, cache_path: Optional[str], jobs: int) -> Catalog:
    if cache_path:
        cached = load_catalog(cache_path, config)
        if cached is not None:
            return cached
    catalog = build_catalog(config, jobs)
    if cache_path:
        try:
            save_catalog(catalog, cache_path)
        except OSError as exc:
            print(f"warning: could not write catalog cache {cache_path}: {exc}", file=sys.stderr)
    return catalog


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chordpi",
        description="Exact search over chord-intersection distances of a "
                    "regular n-gon for the best approximations to a target "
                    "constant.")
    parser.add_argument("--n", type=int, default=0, help="number of polygon vertices")
    parser.add_argument("--selector", default="all",
                        help="chord lines to include: 'all' or 'steps=1,5'")
    parser.add_argument("--unit", default="side",
                        choices=["side", "circumradius", "diameter"],
                        help="length unit (coordinate frame)")
    parser.add_argument("--target", default="pi",
                        help="'pi' or an exact rational such as 3.14 or 355/113")
    parser.add_argument("--top", type=int, default=10, dest="top_k",
                        help="number of ranked hits to report")
    parser.add_argument("--format", default="text", choices=["text", "json", "csv"])
    parser.add_argument("--svg", default=None, dest="svg_path", metavar="PATH",
                        help="write an SVG diagram of the best hit")
    parser.add_argument("--bits", type=int, default=128, dest="precision_bits",
                        help="starting precision for certified evaluation")
    parser.add_argument("--jobs", type=int, default=1, help="worker threads")
    parser.add_argument("--compare", default=None, metavar="N1,N2,...",
                        help="run the pipeline for several n and tabulate the best hit of each")
    parser.add_argument("--cache", default=None, dest="catalog_cache_path", metavar="PATH",
                        help="JSON catalog cache file (reused when the configuration matches)")
    parser.add_argument("--no-vertices", action="store_false", dest="include_vertices",
                        help="exclude polygon vertices from the point set")
    parser.add_argument("--window", type=float, default=0.05, dest="prune_window",
                        help="prefilter half-width around the target")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    compare: Optional[Tuple[int, ...]] = None
    if args.compare is not None:
        try:
            compare = tuple(int(part) for part in args.compare.split(",") if part)
        except ValueError as exc:
            raise UsageError(f"--compare: bad n list {args.compare!r}") from exc
        if not compare:
            raise UsageError("--compare: empty n list")
    return RunConfig(
        n=args.n, selector=args.selector, unit=args.unit, target=args.target,
        top_k=args.top_k, format=args.format, svg_path=args.svg_path,
        precision_bits=args.precision_bits, jobs=args.jobs,
        catalog_cache_path=args.catalog_cache_path, compare=compare,
        include_vertices=args.include_vertices, prune_window=args.prune_window)


def execute(config: RunConfig) -> Tuple[Report, Optional[Catalog], List[Hit]]:
    """Validated pipeline run; the catalog and hits back the report for
    CSV/SVG emission (absent in comparison mode)."""
    config.validate()
    selector = config.parsed_selector()
    for n in (config.compare if config.compare is not None else (config.n,)):
        try:
            selector.validate(n)
        except ValueError as exc:
            raise UsageError(f"--selector: {exc}") from exc
    target = target_from_spec(config.target)
    params = config.search_params()
    if config.compare is not None:
        t0 = time.perf_counter()
        rows = compare_across_n(list(config.compare), selector, target, params,
                                config.include_vertices, config.jobs)
        elapsed = time.perf_counter() - t0
        row_dicts = []
        for row in rows:
            best = None
            if row.best is not None:
                best = _hit_dict(1, row.best)
            row_dicts.append({"n": row.n, "constructible": row.constructible,
                              "lines": row.lines, "points": row.points, "best": best})
        report = Report(config=asdict(config), compare=row_dicts,
                        timing={"total": elapsed})
        return report, None, []
    cat_config = CatalogConfig(config.n, selector, config.frame(), config.include_vertices)
    t0 = time.perf_counter()
    catalog = _catalog_with_cache(cat_config, config.catalog_cache_path, config.jobs)
    t1 = time.perf_counter()
    hits = scan_distances(catalog, target, params, config.jobs)
    t2 = time.perf_counter()
    report = build_report(config, catalog, hits,
                          {"catalog": t1 - t0, "scan": t2 - t1})
    return report, catalog, hits


def run(argv: Sequence[str]) -> int:
    """Parse argv, run, and print the report to standard output."""
    parser = _parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = _config_from_args(args)
        report, catalog, hits = execute(config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - surfaced via exit code
        origin = type(exc).__module__
        print(f"internal error [{origin}]: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1

    if config.format == "json":
        sys.stdout.write(report.to_json())
    elif config.format == "csv":
        if catalog is None:
            print("error: --format: csv is not available in comparison mode", file=sys.stderr)
            return 2
        sys.stdout.write(report_csv(report, catalog))
    else:
        sys.stdout.write(report_text(report))

    if config.svg_path is not None:
        if catalog is None:
            print("error: --svg: not available in comparison mode", file=sys.stderr)
            return 2
        best = hits[0] if hits else None
        try:
            with open(config.svg_path, "w") as handle:
                handle.write(emit_svg(report, catalog, best))
        except OSError as exc:
            print(f"internal error [{__name__}]: {exc}", file=sys.stderr)
            return 1
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
