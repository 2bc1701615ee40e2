"""Chord-line enumeration and exact intersection catalogs for regular n-gons.

A catalog is the deduplicated set of points where selected chord lines cross
(side lines count as step-1 chords), optionally together with the polygon
vertices.  Crossings outside the polygon are kept: lines are infinite.  Every
point carries provenance, the ids of all selected lines through it, which is
what the construction-complexity metric is built from.

Deduplication is exact: elements are canonical rational vectors, so hashing
the coordinate coefficients buckets equal points together and nothing else.
Point ids come from a sort by exact numeric (x, y), making catalogs
reproducible across runs and worker counts.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .geometry import (
    Degenerate,
    Frame,
    Line,
    Point,
    intersect,
    line_through,
    ngon_vertices,
    point_sort_key,
)
from .numberfield import FieldDescriptor, field_for_ngon


def is_constructible(n: int) -> bool:
    """Gauss-Wantzel test: the regular n-gon is straightedge-and-compass
    constructible iff n = 2^a times a product of distinct Fermat primes."""
    if n < 3:
        raise ValueError("n must be >= 3")
    while n % 2 == 0:
        n //= 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return False
            if (p - 1) & (p - 2) != 0:  # p - 1 must be a power of two
                return False
        p += 2
    if n > 1:
        return (n - 1) & (n - 2) == 0
    return True


@dataclass(frozen=True)
class ChordSelector:
    """Which chord lines to enumerate: every vertex pair, or only pairs at
    the given circular steps (step s connects k and k+s; the step-s lines are
    the edge lines of the {n/s} star polygon)."""

    steps: Optional[FrozenSet[int]] = None  # None means all steps

    @staticmethod
    def all_chords() -> "ChordSelector":
        return ChordSelector(None)

    @staticmethod
    def of_steps(steps) -> "ChordSelector":
        steps = frozenset(int(s) for s in steps)
        if not steps:
            raise ValueError("steps set must be nonempty")
        return ChordSelector(steps)

    def validate(self, n: int) -> None:
        if self.steps is None:
            return
        for s in self.steps:
            if not 1 <= s <= n // 2:
                raise ValueError(f"step {s} out of range 1..{n // 2} for n={n}")

    def matches(self, step: int) -> bool:
        return self.steps is None or step in self.steps

    def spec(self) -> str:
        if self.steps is None:
            return "all"
        return "steps=" + ",".join(str(s) for s in sorted(self.steps))


@dataclass(frozen=True)
class LineRecord:
    id: int
    i: int
    j: int
    step: int
    line: Line


@dataclass(frozen=True)
class CatalogPoint:
    id: int
    point: Point
    vertex: Optional[int]  # vertex index, or None for a crossing
    provenance: Tuple[int, ...]  # sorted ids of all selected lines through it

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None

    def label(self) -> str:
        return f"A{self.vertex}" if self.is_vertex else f"P{self.id}"


@dataclass(frozen=True)
class CatalogConfig:
    n: int
    selector: ChordSelector = dataclass_field(default_factory=ChordSelector.all_chords)
    frame: Frame = Frame.SIDE
    include_vertices: bool = True

    def validate(self) -> None:
        if self.n < 3:
            raise ValueError("n must be >= 3")
        self.selector.validate(self.n)


@dataclass(frozen=True)
class Catalog:
    config: CatalogConfig
    descriptor: FieldDescriptor
    lines: Tuple[LineRecord, ...]
    points: Tuple[CatalogPoint, ...]

    @property
    def n_vertices(self) -> int:
        return sum(1 for p in self.points if p.is_vertex)

    @property
    def n_crossings(self) -> int:
        return sum(1 for p in self.points if not p.is_vertex)

    def point_by_id(self, pid: int) -> CatalogPoint:
        return self.points[pid]


def enumerate_lines(config: CatalogConfig) -> List[LineRecord]:
    """One LineRecord per unordered vertex pair matching the selector,
    ordered by (i, j).  Chord lines of distinct vertex pairs are distinct
    because no three points of a circle are collinear."""
    config.validate()
    n = config.n
    vertices = ngon_vertices(n, config.frame)
    records = []
    for i in range(n):
        for j in range(i + 1, n):
            step = min(j - i, n - (j - i))
            if config.selector.matches(step):
                records.append(LineRecord(len(records), i, j, step,
                                          line_through(vertices[i], vertices[j])))
    return records


def _intersect_range(lines: Sequence[LineRecord], start: int, stop: int):
    """Crossings for line-pair first indices in [start, stop)."""
    out = []
    for a in range(start, stop):
        la = lines[a].line
        for b in range(a + 1, len(lines)):
            p = intersect(la, lines[b].line)
            if not isinstance(p, Degenerate):
                out.append((p, a, b))
    return out


def build_catalog(config: CatalogConfig, jobs: int = 1) -> Catalog:
    """All pairwise intersections of the selected chord lines, exactly
    deduplicated, with complete provenance and deterministic ids.

    Output is identical for any worker count: crossings are merged in
    chunk-index order and point ids come from an exact coordinate sort.
    """
    config.validate()
    lines = enumerate_lines(config)
    n = config.n
    vertices = ngon_vertices(n, config.frame)
    vertex_index: Dict[Point, int] = {p: k for k, p in enumerate(vertices)}

    if jobs > 1 and len(lines) > 8:
        bounds = [round(i * len(lines) / (2 * jobs)) for i in range(2 * jobs + 1)]
        chunks = [(lo, hi) for lo, hi in zip(bounds, bounds[1:]) if lo < hi]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda c: _intersect_range(lines, *c), chunks))
        crossings = [item for chunk in results for item in chunk]
    else:
        crossings = _intersect_range(lines, 0, len(lines))

    provenance: Dict[Point, set] = {}
    for point, a, b in crossings:
        ids = provenance.setdefault(point, set())
        ids.add(a)
        ids.add(b)

    if config.include_vertices:
        # vertices missed by the crossing sweep (fewer than two selected
        # lines through them) still belong to the catalog
        for k, p in enumerate(vertices):
            if p not in provenance:
                provenance[p] = {rec.id for rec in lines if k in (rec.i, rec.j)}
    else:
        for p in vertices:
            provenance.pop(p, None)

    ordered = sorted(provenance.keys(), key=point_sort_key)
    points = tuple(
        CatalogPoint(pid, p, vertex_index.get(p), tuple(sorted(provenance[p])))
        for pid, p in enumerate(ordered)
    )
    return Catalog(config, field_for_ngon(n), tuple(lines), points)
