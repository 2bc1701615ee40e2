"""Randomized property suites, shared between the focused unit-test modules
(small case counts, quick failure localization) and the acceptance gate
(full-size runs).  Every suite takes a case count and a seed, raises
AssertionError on the first violation, and returns the number of cases it
ran."""

import json
import math
import random
from dataclasses import replace
from fractions import Fraction

import mpmath

from chordpi import (
    CatalogConfig,
    ChordSelector,
    Degenerate,
    Frame,
    Line,
    Point,
    RunConfig,
    SearchParams,
    field_descriptor,
    generator_cos,
    intersect,
    line_through,
    pi_interval,
    scan_distances,
    squared_distance,
    target_from_spec,
)
from chordpi.cli import execute
from chordpi.numberfield import element_minpoly

from conftest import cached_catalog

# conductors with field degrees 1, 1, 2, 2, 4, 4, 6
CONDUCTORS = [1, 4, 8, 12, 16, 20, 28]


def random_rational(rng, num=24, den=9) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_element(rng, field):
    return field.element([random_rational(rng) for _ in range(field.degree)])


def suite_field_axioms(cases=200, seed=9001) -> int:
    rng = random.Random(seed)
    for _ in range(cases):
        field = field_descriptor(rng.choice(CONDUCTORS))
        a = random_element(rng, field)
        b = random_element(rng, field)
        c = random_element(rng, field)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + field.zero() == a
        assert a * field.one() == a
        diff = a - a
        assert diff.is_zero() and diff == field.zero()
        assert all(co == 0 for co in diff.coeffs)  # canonical zero form
        assert (-a) + a == field.zero()
        if not a.is_zero():
            assert a * a.inverse() == field.one()
        k = rng.randint(0, 4)
        power = field.one()
        for _ in range(k):
            power = power * a
        assert a ** k == power
    return cases


def suite_enclosures(cases=200, seed=9002) -> int:
    rng = random.Random(seed)
    mpmath.mp.prec = 320
    for _ in range(cases):
        field = field_descriptor(rng.choice(CONDUCTORS))
        a = random_element(rng, field)
        bits_lo = rng.choice([16, 24, 48, 64])
        bits_hi = bits_lo * rng.choice([2, 4])
        lo_iv = a.eval_interval(bits_lo)
        hi_iv = a.eval_interval(bits_hi)
        assert lo_iv.contains_interval(hi_iv)  # nesting
        g = 2 * mpmath.cos(2 * mpmath.pi / field.conductor)
        value = mpmath.mpf(0)
        for k, co in enumerate(a.coeffs):
            value += mpmath.mpf(co.numerator) / co.denominator * g ** k
        # the enclosures can be far tighter than the 320-bit oracle itself,
        # so allow the oracle's own resolution as slack
        slack = mpmath.mpf(2) ** -280 * (1 + abs(value))
        for iv in (lo_iv, hi_iv):
            flo = mpmath.mpf(iv.lo.numerator) / iv.lo.denominator
            fhi = mpmath.mpf(iv.hi.numerator) / iv.hi.denominator
            assert flo <= value + slack and value - slack <= fhi  # soundness
    # the shared pi ladder has the same two properties; the oracle needs to
    # out-resolve the tightest rung under test
    with mpmath.workprec(1400):
        pi_ref = +mpmath.pi
        for bits in (16, 64, 256, 1024):
            iv = pi_interval(bits)
            assert iv.width <= Fraction(2, 2 ** bits)
            assert mpmath.mpf(iv.lo.numerator) / iv.lo.denominator < pi_ref
            assert mpmath.mpf(iv.hi.numerator) / iv.hi.denominator > pi_ref
            assert pi_interval(bits).contains_interval(pi_interval(4 * bits))
    return cases


def suite_minpoly_annihilation(cases=200, seed=9003) -> int:
    rng = random.Random(seed)
    for _ in range(cases):
        field = field_descriptor(rng.choice(CONDUCTORS))
        a = random_element(rng, field)
        poly = element_minpoly(a)
        acc = field.zero()
        for k in reversed(range(len(poly.coeffs))):
            acc = acc * a + field.rational(poly.coeffs[k])
        assert acc.is_zero()
        assert poly.coeffs[-1] > 0
        assert math.gcd(*[abs(co) for co in poly.coeffs]) == 1
        assert field.degree % poly.degree == 0  # subfield degrees divide
    return cases


def suite_incidence(cases=200, seed=9004) -> int:
    rng = random.Random(seed)
    for _ in range(cases):
        field = field_descriptor(rng.choice(CONDUCTORS))
        p = Point(random_element(rng, field), random_element(rng, field))
        q = p
        while q == p:
            q = Point(random_element(rng, field), random_element(rng, field))
        line = line_through(p, q)
        assert line.contains(p) and line.contains(q)
        t = random_rational(rng)
        r = Point(p.x + (q.x - p.x) * t, p.y + (q.y - p.y) * t)
        assert line.contains(r)
        # a second line through r: intersect must return exactly r
        s = r
        while s == r:
            s = Point(r.x + random_element(rng, field), r.y + random_element(rng, field))
        other = line_through(r, s)
        hit = intersect(line, other)
        if isinstance(hit, Degenerate):
            assert hit is Degenerate.COINCIDENT and line == other
        else:
            assert hit == r
        assert intersect(line, line) is Degenerate.COINCIDENT
        # translate along a non-direction vector: parallel, never coincident
        shift = field.rational(rng.randint(1, 5))
        shifted = Line(line.a, line.b, line.c + shift)
        assert intersect(line, shifted) is Degenerate.PARALLEL
    return cases


def suite_dedup_dihedral(cases=200, seed=9005) -> int:
    rng = random.Random(seed)
    ns = [5, 6, 8, 10, 12]
    catalogs = {n: cached_catalog(n, frame=Frame.CIRCUMRADIUS) for n in ns}
    point_sets = {n: {p.point for p in catalogs[n].points} for n in ns}
    rotations = {}
    for n in ns:
        field = catalogs[n].descriptor
        m = field.conductor
        cos1 = generator_cos(field, m // n) * Fraction(1, 2)
        sin1 = generator_cos(field, m // 4 - m // n) * Fraction(1, 2)
        rotations[n] = (cos1, sin1)
    for _ in range(cases):
        n = rng.choice(ns)
        catalog = catalogs[n]
        i = rng.randrange(len(catalog.points))
        j = rng.randrange(len(catalog.points))
        pi_, pj = catalog.points[i].point, catalog.points[j].point
        if i != j:
            assert pi_ != pj
            assert squared_distance(pi_, pj).sign() > 0  # dedup soundness
        # dihedral invariance: mirror and one-step rotation stay in the set
        assert Point(pi_.x, -pi_.y) in point_sets[n]
        cos1, sin1 = rotations[n]
        rotated = Point(pi_.x * cos1 - pi_.y * sin1, pi_.x * sin1 + pi_.y * cos1)
        assert rotated in point_sets[n]
    return cases


def _random_scan_setup(rng):
    n = rng.choice([3, 3, 4, 4, 5, 5, 5, 6, 6, 6, 7, 8])
    if rng.random() < 0.7:
        steps = None
    else:
        k = rng.randint(1, n // 2)
        steps = tuple(sorted(rng.sample(range(1, n // 2 + 1), k)))
    frame = rng.choice([Frame.SIDE, Frame.CIRCUMRADIUS])
    target = rng.choice(["pi", "3.14", "2", "355/113", "1/2"])
    top_k = rng.randint(2, 8)
    window = rng.choice([0.02, 0.05, 0.2, 1.0])
    return n, steps, frame, target, top_k, window


def suite_pruning_completeness(cases=200, seed=9006) -> int:
    rng = random.Random(seed)
    for _ in range(cases):
        n, steps, frame, target_spec, top_k, window = _random_scan_setup(rng)
        catalog = cached_catalog(n, steps, frame)
        target = target_from_spec(target_spec)
        pruned = scan_distances(catalog, target,
                                SearchParams(top_k=top_k, prune_window=window, unit=frame))
        full = scan_distances(catalog, target,
                              SearchParams(top_k=top_k, prune_window=math.inf, unit=frame))
        assert pruned == full
    return cases


def suite_worker_determinism(cases=200, seed=9007) -> int:
    rng = random.Random(seed)
    for _ in range(cases):
        n, steps, frame, target_spec, top_k, window = _random_scan_setup(rng)
        selector = "all" if steps is None else "steps=" + ",".join(str(s) for s in steps)
        outputs = []
        for jobs in (1, 4):
            config = RunConfig(n=n, selector=selector, unit=frame.value,
                               target=target_spec, top_k=top_k,
                               prune_window=window, jobs=jobs)
            report, _, _ = execute(config)
            outputs.append(json.dumps({"field": report.field,
                                       "catalog": report.catalog,
                                       "hits": report.hits}))
        assert outputs[0] == outputs[1]  # byte-identical ranking JSON
    return cases


ALL_SUITES = [
    ("field axioms and canonical zero", suite_field_axioms),
    ("enclosure soundness and nesting", suite_enclosures),
    ("element minpoly annihilation", suite_minpoly_annihilation),
    ("incidence and intersection exactness", suite_incidence),
    ("catalog dedup soundness and dihedral invariance", suite_dedup_dihedral),
    ("pruning completeness vs unpruned scan", suite_pruning_completeness),
    ("ranking determinism across 1 vs 4 workers", suite_worker_determinism),
]
