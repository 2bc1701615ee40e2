"""Distance scan, certified ranking, digit agreement, complexity metric."""

import math
import random
from fractions import Fraction

import mpmath
import pytest

from chordpi import (
    CatalogConfig,
    CertifiedInterval,
    ChordSelector,
    EmptyCatalog,
    Frame,
    Hit,
    IntPolynomial,
    PiConstant,
    RationalConstant,
    ScaledTarget,
    SearchError,
    SearchParams,
    build_catalog,
    compare_across_n,
    complexity,
    decimal_of_sqrt,
    field_for_ngon,
    matching_digits,
    ngon_vertices,
    run_search,
    scan_distances,
    squared_distance,
    target_from_spec,
)

import props
from conftest import cached_catalog


GOLDEN_DIST_50 = "3.1415333387050946186363982219646240711991241792134"


@pytest.fixture(scope="module")
def hits12(catalog12):
    return scan_distances(catalog12, PiConstant(), SearchParams())


def golden_sq_value():
    field = field_for_ngon(12)
    return field.rational(Fraction(40, 3)) - field.generator() * 2


def test_best_hit_is_the_golden_value(hits12):
    best = hits12[0]
    assert best.sq_value == golden_sq_value()
    assert best.decimal.startswith("3.14153333")
    assert best.decimal == "3.1415333387"
    assert best.digits == 4
    assert best.complexity == 4
    assert Fraction(58, 10 ** 6) < best.abs_error.lo
    assert best.abs_error.hi < Fraction(60, 10 ** 6)
    assert list(best.minpoly.coeffs) == [1492, -240, 9]
    assert best.surd.a == Fraction(40, 3)
    assert best.surd.b == Fraction(-2)
    assert best.surd.d == 3


def test_hits_sorted_and_error_enclosures_sound(hits12):
    mpmath.mp.prec = 300
    pi_ref = +mpmath.pi
    previous = None
    for hit in hits12:
        assert hit.abs_error.lo >= 0
        g = 2 * mpmath.cos(2 * mpmath.pi / 12)
        sq = mpmath.mpf(0)
        for k, co in enumerate(hit.sq_value.coeffs):
            sq += mpmath.mpf(co.numerator) / co.denominator * g ** k
        err = abs(mpmath.sqrt(sq) - pi_ref)
        lo = mpmath.mpf(hit.abs_error.lo.numerator) / hit.abs_error.lo.denominator
        hi = mpmath.mpf(hit.abs_error.hi.numerator) / hit.abs_error.hi.denominator
        assert lo <= err <= hi
        if previous is not None:
            assert previous <= hit.abs_error.hi
        previous = hit.abs_error.hi


def test_merge_soundness(hits12, catalog12):
    values = [h.sq_value for h in hits12]
    assert len(values) == len(set(values))
    # one congruent copy of the best-hit pair sits at known coordinates:
    # (-2/sqrt(3), 0) and ((sqrt(3)-3)/2, (3*sqrt(3)+1)/2) realize the same
    # squared distance, so they were merged and the representative pair ids
    # cannot come later than theirs
    best = hits12[0]
    field = field_for_ngon(12)
    g = field.generator()
    r = next(p for p in catalog12.points
             if p.point.x == g * Fraction(-2, 3) and p.point.y.is_zero())
    s = next(p for p in catalog12.points
             if p.point.x == (g - field.rational(3)) * Fraction(1, 2)
             and p.point.y == (g * 3 + field.one()) * Fraction(1, 2))
    assert squared_distance(r.point, s.point) == best.sq_value
    assert (best.p_id, best.q_id) <= tuple(sorted((r.id, s.id)))


def test_decimal_of_sqrt():
    field = field_for_ngon(12)
    assert decimal_of_sqrt(field.rational(4)) == "2.0000000000"
    assert decimal_of_sqrt(field.rational(2), places=4) == "1.4142"
    assert decimal_of_sqrt(golden_sq_value(), places=10) == "3.1415333387"
    assert decimal_of_sqrt(field.rational(Fraction(1, 4)), places=2) == "0.50"


def test_matching_digits_examples():
    field = field_for_ngon(12)
    pi = PiConstant()
    assert matching_digits(golden_sq_value(), pi) == 4
    assert matching_digits(field.one(), pi) == 0
    truncated = field.rational(Fraction(157, 50) ** 2)  # 3.14 exactly
    assert matching_digits(truncated, pi) == 2
    close = field.rational(Fraction(31415, 10000) ** 2)
    assert matching_digits(close, pi) == 4
    # hitting an exact rational target caps at the documented limit
    assert matching_digits(field.rational(Fraction(22, 7) ** 2),
                           RationalConstant("22/7", Fraction(22, 7))) == 64
    with pytest.raises(ValueError):
        matching_digits(field.rational(-1), pi)


def test_complexity_metric(catalog12, hits12):
    def synthetic(p_id, q_id):
        field = field_for_ngon(12)
        return Hit(p_id=p_id, q_id=q_id, sq_value=field.one(), surd=None,
                   minpoly=IntPolynomial([0, 1]), decimal="1.0",
                   abs_error=CertifiedInterval.exactly(Fraction(0)),
                   digits=0, complexity=0)

    vertex_ids = [p.id for p in catalog12.points if p.is_vertex]
    assert complexity(synthetic(vertex_ids[0], vertex_ids[1]), catalog12) == 0
    crossings = [p for p in catalog12.points if not p.is_vertex]
    vertex_crossing = synthetic(vertex_ids[0], crossings[0].id)
    assert complexity(vertex_crossing, catalog12) == 2
    # find two crossings sharing a provenance line: cost 2 + 2 - 1
    first = crossings[0]
    sharing = next(c for c in crossings[1:]
                   if set(c.provenance) & set(first.provenance))
    disjoint = next(c for c in crossings[1:]
                    if not set(c.provenance) & set(first.provenance))
    assert complexity(synthetic(first.id, sharing.id), catalog12) == 3
    assert complexity(synthetic(first.id, disjoint.id), catalog12) == 4
    assert hits12[0].complexity == 4


def test_scan_edge_cases():
    empty = cached_catalog(3, include_vertices=False)
    with pytest.raises(EmptyCatalog):
        scan_distances(empty, PiConstant(), SearchParams())
    single = cached_catalog(4, include_vertices=False)
    assert scan_distances(single, PiConstant(), SearchParams()) == []
    # triangle: one merged hit, the unit side
    hits = scan_distances(cached_catalog(3), PiConstant(), SearchParams())
    assert len(hits) == 1
    assert hits[0].sq_value == field_for_ngon(3).one()
    assert hits[0].complexity == 0
    assert float(hits[0].abs_error.hi) == pytest.approx(math.pi - 1, rel=1e-12)


def test_window_rerun_reaches_far_targets():
    # every distance is far from 10, so the initial window keeps nothing and
    # the scan must widen until saturation
    hits = scan_distances(cached_catalog(4), target_from_spec("10"),
                          SearchParams(top_k=3, prune_window=0.05))
    assert hits
    assert hits[0].sq_value == field_for_ngon(4).rational(2)  # the diagonal


def test_exact_rational_hit_has_zero_error():
    hits = scan_distances(cached_catalog(4), target_from_spec("1"), SearchParams())
    best = hits[0]
    assert best.sq_value == field_for_ngon(4).one()
    assert best.abs_error.lo == 0 and best.abs_error.hi == 0
    assert best.digits == 64


def test_target_parsing():
    assert isinstance(target_from_spec("pi"), PiConstant)
    t = target_from_spec("355/113")
    assert t.exact == Fraction(355, 113)
    assert target_from_spec("3.14").exact == Fraction(157, 50)
    for bad in ("tau", "0", "-3", "1/0", ""):
        with pytest.raises(ValueError):
            target_from_spec(bad)


def test_scaled_target_and_covariance(catalog12):
    # switching the unit multiplies every squared distance by the exact
    # factor s^2 (s = side length in the new unit); scaling the target by
    # the certified sqrt of the same factor must preserve the ranking, so
    # hit k of one frame carries exactly s^2 times the value of hit k of the
    # other, and in particular the argmin value class corresponds
    params = SearchParams(top_k=3)
    side_hits = scan_distances(catalog12, PiConstant(), params)
    circ_catalog = cached_catalog(12, frame=Frame.CIRCUMRADIUS)
    v = ngon_vertices(12, Frame.CIRCUMRADIUS)
    s2 = squared_distance(v[0], v[1])  # side^2 in circumradius units
    scaled = ScaledTarget(PiConstant(), s2)
    circ_params = SearchParams(top_k=3, unit=Frame.CIRCUMRADIUS)
    circ_hits = scan_distances(circ_catalog, scaled, circ_params)
    assert [h.sq_value * s2 for h in side_hits] == [h.sq_value for h in circ_hits]
    assert [h.complexity for h in side_hits] == [h.complexity for h in circ_hits]
    with pytest.raises(ValueError):
        ScaledTarget(PiConstant(), -s2)


def test_run_search_and_compare():
    catalog, hits = run_search(12, ChordSelector.of_steps([5, 6]), PiConstant(),
                               SearchParams(top_k=4))
    assert len(catalog.lines) == 18
    assert hits
    rows = compare_across_n([3, 4], ChordSelector.all_chords(), PiConstant(),
                            SearchParams(top_k=2))
    assert [r.n for r in rows] == [3, 4]
    assert all(r.constructible for r in rows)
    assert rows[0].best.sq_value.is_rational()
    with pytest.raises(SearchError, match="n=3"):
        compare_across_n([3], ChordSelector.all_chords(), PiConstant(),
                         SearchParams(), include_vertices=False)


def test_float_oracle_distance_agreement(catalog12):
    rng = random.Random(4242)
    pts = catalog12.points
    coords = {}
    for _ in range(200):
        i, j = rng.sample(range(len(pts)), 2)
        for k in (i, j):
            if k not in coords:
                coords[k] = (pts[k].point.x.eval_interval(64).to_float(),
                             pts[k].point.y.eval_interval(64).to_float())
        exact = scan_exact_distance(pts[i].point, pts[j].point)
        approx = math.hypot(coords[i][0] - coords[j][0], coords[i][1] - coords[j][1])
        assert abs(exact - approx) <= 1e-9 * max(exact, 1e-30)


def scan_exact_distance(p, q):
    iv = squared_distance(p, q).eval_interval(64).sqrt(64)
    return iv.to_float()


def test_property_pruning_completeness():
    assert props.suite_pruning_completeness(cases=30) == 30


def test_property_worker_determinism():
    assert props.suite_worker_determinism(cases=25) == 25
