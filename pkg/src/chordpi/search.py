"""Distance scan over a catalog, ranked by closeness to a target constant.

The scan walks every unordered point pair, discards pairs far from the
target with a double-precision prefilter, and evaluates the survivors
exactly: squared distances are field elements, equal values are merged, and
the ranking is certified with interval enclosures that are refined until the
published order is provable.  A post-hoc check widens the prefilter window
and rescans whenever the k-th best error gets close to the window, so
pruning can never silently drop a genuine hit.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .catalog import Catalog, CatalogConfig, ChordSelector, build_catalog, is_constructible
from .geometry import Frame, squared_distance
from .numberfield import (
    CertifiedInterval,
    FieldElement,
    IntPolynomial,
    as_quadratic_surd,
    element_minpoly,
    ladder_rung,
    pi_interval,
    QuadraticSurd,
)

#: Fractional digits used when rendering certified decimals of distances.
DECIMAL_PLACES = 10

#: Ceiling for matching_digits when the two expansions are provably equal.
DIGITS_CAP = 64

_MAX_BITS = 1 << 22  # refinement sanity cap; unreachable for honest targets


class EmptyCatalog(ValueError):
    """Scan requested on a catalog with no points."""


class SearchError(RuntimeError):
    """Pipeline failure; the message names the offending n."""


# ---------------------------------------------------------------------------
# target constants
# ---------------------------------------------------------------------------

class TargetConstant:
    """A named generator of certified enclosures of the target value.

    `enclosure(bits)` has width <= 2^(1-bits) and is nested across
    increasing bits.  `exact` is the value as a Fraction when one exists
    (used to settle decimal-boundary and exact-tie questions)."""

    name: str = "?"
    exact: Optional[Fraction] = None

    def enclosure(self, bits: int) -> CertifiedInterval:
        raise NotImplementedError

    def to_float(self) -> float:
        return self.enclosure(64).to_float()


class PiConstant(TargetConstant):
    name = "pi"

    def enclosure(self, bits: int) -> CertifiedInterval:
        return pi_interval(bits)


class RationalConstant(TargetConstant):
    def __init__(self, name: str, value: Fraction):
        self.name = name
        self.exact = Fraction(value)

    def enclosure(self, bits: int) -> CertifiedInterval:
        return CertifiedInterval.exactly(self.exact).round_outward(ladder_rung(bits))


class ScaledTarget(TargetConstant):
    """Base target multiplied by the square root of an exact field element
    (used to re-express the target after a change of length unit)."""

    def __init__(self, base: TargetConstant, factor_sq: FieldElement):
        if factor_sq.sign() <= 0:
            raise ValueError("scale factor must be positive")
        self.base = base
        self.factor_sq = factor_sq
        self.name = f"{base.name}*sqrt({factor_sq.coeffs})"

    def enclosure(self, bits: int) -> CertifiedInterval:
        rung = ladder_rung(bits)
        while True:
            scale = self.factor_sq.eval_interval(rung).sqrt(rung)
            iv = (self.base.enclosure(rung) * scale).round_outward(rung)
            if iv.width <= Fraction(2, 1 << bits):
                return iv
            rung *= 2


def target_from_spec(spec: str) -> TargetConstant:
    """"pi", or an exact rational literal such as "3.14" or "355/113"."""
    if spec == "pi":
        return PiConstant()
    try:
        value = Fraction(spec)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"unrecognized target {spec!r}: expected 'pi' or a rational literal") from exc
    if value <= 0:
        raise ValueError("target must be positive")
    return RationalConstant(spec, value)


# ---------------------------------------------------------------------------
# hits and parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Hit:
    """One ranked candidate distance (representative pair of a class of
    exactly-equal squared distances)."""

    p_id: int
    q_id: int
    sq_value: FieldElement
    surd: Optional[QuadraticSurd]
    minpoly: IntPolynomial
    decimal: str
    abs_error: CertifiedInterval
    digits: int
    complexity: int


@dataclass(frozen=True)
class SearchParams:
    top_k: int = 10
    prune_window: float = 0.05
    unit: Frame = Frame.SIDE
    min_bits: int = 128

    def validate(self) -> None:
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")
        if not self.prune_window > 0:
            raise ValueError("prune_window must be positive")
        if self.min_bits < 8:
            raise ValueError("min_bits must be >= 8")


# ---------------------------------------------------------------------------
# construction complexity
# ---------------------------------------------------------------------------

def complexity(hit: Hit, catalog: Catalog) -> int:
    """Distinct chord lines needed to define both endpoints: a vertex is
    free, a crossing needs two of its lines, and a line shared between two
    crossings is counted once."""
    return _pair_complexity(_point_meta(catalog), hit.p_id, hit.q_id)


def _point_meta(catalog: Catalog):
    costs = [0 if p.is_vertex else 2 for p in catalog.points]
    provs = [frozenset(p.provenance) for p in catalog.points]
    return costs, provs


def _pair_complexity(meta, i: int, j: int) -> int:
    costs, provs = meta
    total = costs[i] + costs[j]
    if total == 4 and not provs[i].isdisjoint(provs[j]):
        total -= 1
    return total


# ---------------------------------------------------------------------------
# digit agreement and decimal rendering
# ---------------------------------------------------------------------------

def _exact_sqrt(value: FieldElement) -> Optional[Fraction]:
    if not value.is_rational():
        return None
    q = value.as_rational()
    nr = math.isqrt(q.numerator)
    dr = math.isqrt(q.denominator)
    if nr * nr == q.numerator and dr * dr == q.denominator:
        return Fraction(nr, dr)
    return None


def _floor_of_sqrt_scaled(value_sq: FieldElement, exact_root: Optional[Fraction], scale: int) -> int:
    """floor(sqrt(value_sq) * scale), by exact arithmetic when the root is
    rational and by interval refinement otherwise (an irrational root never
    sits on the grid, so refinement terminates)."""
    if exact_root is not None:
        return (exact_root.numerator * scale) // exact_root.denominator
    bits = 64
    while bits <= _MAX_BITS:
        iv = value_sq.eval_interval(bits).sqrt(ladder_rung(bits))
        lo = (iv.lo.numerator * scale) // iv.lo.denominator
        hi = (iv.hi.numerator * scale) // iv.hi.denominator
        if lo == hi:
            return lo
        bits *= 2
    raise RuntimeError("digit determination exceeded the precision cap")


def _floor_of_target_scaled(target: TargetConstant, scale: int) -> int:
    if target.exact is not None:
        return (target.exact.numerator * scale) // target.exact.denominator
    bits = 64
    while bits <= _MAX_BITS:
        iv = target.enclosure(bits)
        lo = (iv.lo.numerator * scale) // iv.lo.denominator
        hi = (iv.hi.numerator * scale) // iv.hi.denominator
        if lo == hi:
            return lo
        bits *= 2
    raise RuntimeError("digit determination exceeded the precision cap")


def matching_digits(value_sq: FieldElement, target: TargetConstant, cap: int = DIGITS_CAP) -> int:
    """Largest d >= 0 such that the decimal expansions of sqrt(value_sq) and
    the target, truncated to d fractional digits, agree (0 when even the
    integer parts differ).  Capped at `cap` when the expansions are provably
    identical, i.e. the value hits an exact rational target."""
    if value_sq.sign() < 0:
        raise ValueError("value must be nonnegative")
    exact_root = _exact_sqrt(value_sq)
    if exact_root is not None and target.exact is not None and exact_root == target.exact:
        return cap
    best = 0
    for d in range(cap + 1):
        scale = 10 ** d
        if _floor_of_sqrt_scaled(value_sq, exact_root, scale) != _floor_of_target_scaled(target, scale):
            break
        best = d
    return best


def decimal_of_sqrt(value_sq: FieldElement, places: int = DECIMAL_PLACES) -> str:
    """Certified decimal of sqrt(value_sq), round-half-even at `places`
    fractional digits.  The rounding is derived from an enclosure narrower
    than half an ulp of the last printed place."""
    scale = 10 ** places
    exact_root = _exact_sqrt(value_sq)
    if exact_root is not None:
        rounded = round(exact_root * scale)  # Fraction.__round__ is half-even
    else:
        bits = 64
        while True:
            if bits > _MAX_BITS:
                raise RuntimeError("decimal rendering exceeded the precision cap")
            iv = value_sq.eval_interval(bits).sqrt(ladder_rung(bits))
            lo = round(iv.lo * scale)
            hi = round(iv.hi * scale)
            if lo == hi and iv.width * scale < Fraction(1, 2):
                rounded = lo
                break
            bits *= 2
    whole, frac = divmod(rounded, scale)
    return f"{whole}.{frac:0{places}d}"


# ---------------------------------------------------------------------------
# the scan
# ---------------------------------------------------------------------------

def _float_coordinates(catalog: Catalog) -> Tuple[np.ndarray, np.ndarray]:
    xs = np.array([p.point.x.eval_interval(64).to_float() for p in catalog.points])
    ys = np.array([p.point.y.eval_interval(64).to_float() for p in catalog.points])
    return xs, ys


def _prefilter_pairs(xs: np.ndarray, ys: np.ndarray, target: float, window: float) -> List[Tuple[int, int]]:
    """Index pairs (i < j) whose double-precision distance is within
    `window` of the target, in (i, j) order."""
    n = len(xs)
    pairs: List[Tuple[int, int]] = []
    block = 1024
    cols = np.arange(n)
    for start in range(0, n, block):
        stop = min(start + block, n)
        dx = xs[start:stop, None] - xs[None, :]
        dy = ys[start:stop, None] - ys[None, :]
        dist = np.sqrt(dx * dx + dy * dy)
        mask = np.abs(dist - target) < window
        mask &= cols[None, :] > np.arange(start, stop)[:, None]
        rows, colidx = np.nonzero(mask)
        pairs.extend(zip((rows + start).tolist(), colidx.tolist()))
    return pairs


@dataclass
class _Candidate:
    sq: FieldElement
    complexity: int
    p_id: int
    q_id: int
    err: CertifiedInterval = dataclass_field(default=None)  # type: ignore[assignment]
    rung: int = 0

    def rep_key(self):
        return (self.complexity, self.p_id, self.q_id)

    def refine(self, target: TargetConstant, rung: int) -> None:
        dist = self.sq.eval_interval(rung).sqrt(rung)
        self.err = abs(dist - target.enclosure(rung)).round_outward(rung)
        self.rung = rung

    def sort_key(self):
        return (self.err.hi, self.complexity, self.p_id, self.q_id)


def _collect_candidates(catalog: Catalog, pairs: Sequence[Tuple[int, int]], jobs: int) -> List[_Candidate]:
    """Exact squared distances of surviving pairs, merged by exact value;
    each class keeps its minimal-(complexity, p, q) representative."""
    meta = _point_meta(catalog)
    points = catalog.points

    def process(chunk):
        local: Dict[FieldElement, Tuple[int, int, int]] = {}
        for i, j in chunk:
            sq = squared_distance(points[i].point, points[j].point)
            rep = (_pair_complexity(meta, i, j), i, j)
            old = local.get(sq)
            if old is None or rep < old:
                local[sq] = rep
        return local

    if jobs > 1 and len(pairs) > 4 * jobs:
        size = -(-len(pairs) // (4 * jobs))
        chunks = [pairs[k:k + size] for k in range(0, len(pairs), size)]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            locals_ = list(pool.map(process, chunks))
    else:
        locals_ = [process(pairs)]

    merged: Dict[FieldElement, Tuple[int, int, int]] = {}
    for local in locals_:
        for sq, rep in local.items():
            old = merged.get(sq)
            if old is None or rep < old:
                merged[sq] = rep
    return [_Candidate(sq, *rep) for sq, rep in merged.items()]


def _exact_error_tie(a: FieldElement, b: FieldElement, target: TargetConstant) -> bool:
    """Whether |sqrt(a) - t| == |sqrt(b) - t| exactly for distinct a, b.
    Only possible when sqrt(a) + sqrt(b) = 2t, which requires a rational
    target; transcendental targets can never tie."""
    if target.exact is None:
        return False
    t = target.exact
    field = a.field
    residual = field.rational(4 * t * t) - a - b  # should equal 2*sqrt(a*b)
    if residual.sign() < 0:
        return False
    return (residual * residual) == (a * b) * 4


def _certified_ranking(candidates: List[_Candidate], target: TargetConstant,
                       top_k: int, min_bits: int) -> List[_Candidate]:
    """Sort by upper error bound (ties by complexity then pair ids) and
    refine enclosures until every adjacent pair inside the published prefix,
    including the cut to the first excluded candidate, is either strictly
    separated or a certified exact tie.  Exactly tied candidates share one
    enclosure so the complexity/id tie-break decides their order."""
    rung = ladder_rung(min_bits)
    for cand in candidates:
        cand.refine(target, rung)
    ties: set = set()
    while True:
        candidates.sort(key=_Candidate.sort_key)
        stale = False
        pending: List[Tuple[_Candidate, _Candidate]] = []
        for i in range(min(top_k, len(candidates) - 1)):
            a, b = candidates[i], candidates[i + 1]
            if a.err.strictly_below(b.err):
                continue
            key = frozenset((a.sq, b.sq))
            if key in ties or _exact_error_tie(a.sq, b.sq, target):
                ties.add(key)
                shared = a.err.intersect(b.err)
                if a.err != shared or b.err != shared:
                    a.err = shared
                    b.err = shared
                    stale = True
                continue
            pending.append((a, b))
        if not pending:
            if stale:
                continue
            return candidates
        for a, b in pending:
            for cand in (a, b):
                if cand.rung * 2 > _MAX_BITS:
                    raise RuntimeError("ranking certification exceeded the precision cap")
                cand.refine(target, cand.rung * 2)


def scan_distances(catalog: Catalog, target: TargetConstant, params: SearchParams,
                   jobs: int = 1) -> List[Hit]:
    """Ranked hits for every unordered pair of catalog points.

    Raises EmptyCatalog for a pointless catalog; a single point yields an
    empty ranking.
    """
    params.validate()
    if not catalog.points:
        raise EmptyCatalog("catalog has no points")
    if len(catalog.points) < 2:
        return []
    xs, ys = _float_coordinates(catalog)
    t_float = target.to_float()
    span = math.hypot(xs.max() - xs.min(), ys.max() - ys.min())
    window = float(params.prune_window)
    while True:
        saturated = window >= t_float + span + 1.0
        pairs = _prefilter_pairs(xs, ys, t_float, window)
        candidates = _collect_candidates(catalog, pairs, jobs)
        if len(candidates) < params.top_k and not saturated:
            window *= 2
            continue
        ranked = _certified_ranking(candidates, target, params.top_k, params.min_bits)
        top = ranked[:params.top_k]
        if top and not saturated and float(top[-1].err.hi) > window / 2:
            window *= 2
            continue
        return [_finalize(cand, target) for cand in top]


def _finalize(cand: _Candidate, target: TargetConstant) -> Hit:
    # decimal and error bound are derived from one shared enclosure rung
    rung = cand.rung
    scale = 10 ** DECIMAL_PLACES
    exact_root = _exact_sqrt(cand.sq)
    while True:
        dist = cand.sq.eval_interval(rung).sqrt(rung)
        if exact_root is not None:
            rounded = round(exact_root * scale)
            break
        lo = round(dist.lo * scale)
        hi = round(dist.hi * scale)
        if lo == hi and dist.width * scale < Fraction(1, 2):
            rounded = lo
            break
        rung *= 2
        if rung > _MAX_BITS:
            raise RuntimeError("decimal rendering exceeded the precision cap")
    err = abs(dist - target.enclosure(rung)).round_outward(rung)
    whole, frac = divmod(rounded, scale)
    decimal = f"{whole}.{frac:0{DECIMAL_PLACES}d}"
    return Hit(
        p_id=cand.p_id,
        q_id=cand.q_id,
        sq_value=cand.sq,
        surd=as_quadratic_surd(cand.sq),
        minpoly=element_minpoly(cand.sq),
        decimal=decimal,
        abs_error=err,
        digits=matching_digits(cand.sq, target),
        complexity=cand.complexity,
    )


# ---------------------------------------------------------------------------
# pipelines
# ---------------------------------------------------------------------------

def run_search(n: int, selector: ChordSelector, target: TargetConstant,
               params: SearchParams, include_vertices: bool = True,
               jobs: int = 1) -> Tuple[Catalog, List[Hit]]:
    """Catalog construction plus distance scan in the params' unit frame."""
    config = CatalogConfig(n, selector, params.unit, include_vertices)
    catalog = build_catalog(config, jobs)
    hits = scan_distances(catalog, target, params, jobs)
    return catalog, hits


@dataclass(frozen=True)
class CompareRow:
    n: int
    constructible: bool
    lines: int
    points: int
    best: Optional[Hit]


def compare_across_n(n_list: Sequence[int], selector: ChordSelector,
                     target: TargetConstant, params: SearchParams,
                     include_vertices: bool = True, jobs: int = 1) -> List[CompareRow]:
    """Best hit per n; failures are re-raised with the offending n named."""
    rows = []
    for n in n_list:
        try:
            catalog, hits = run_search(n, selector, target, params, include_vertices, jobs)
        except Exception as exc:
            raise SearchError(f"n={n}: {type(exc).__name__}: {exc}") from exc
        rows.append(CompareRow(n, is_constructible(n), len(catalog.lines),
                               len(catalog.points), hits[0] if hits else None))
    return rows
