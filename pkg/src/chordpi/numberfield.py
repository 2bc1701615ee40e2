"""Exact arithmetic in the real cyclotomic field K_M = Q(2*cos(2*pi/M)).

Every coordinate of a regular n-gon (and every chord intersection derived
from it) lives in K_M with M = lcm(n, 4); the quarter turn is needed so that
sines are cosines of shifted angles.  Elements are dense vectors of rationals
over the power basis 1, g, g^2, ..., g^(d-1) where g = 2*cos(2*pi/M) and d is
the degree of g's minimal polynomial (phi(M)/2 for M >= 3).

Numeric claims are made only through `CertifiedInterval` enclosures whose
endpoints are exact dyadic rationals.  Enclosures are computed on a shared
precision ladder (64, 128, 256, ... bits) so that repeated evaluations of the
same value at growing precision are genuinely nested, independent of call
order or thread scheduling.
"""

from __future__ import annotations

import functools
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

Rat = Union[int, Fraction]

#: Coarsest rung of the shared precision ladder, in bits.
LADDER_BASE = 64


class DivisionByZero(ZeroDivisionError):
    """Inversion of the zero field element."""


def ladder_rung(bits: int) -> int:
    """Smallest ladder precision >= bits (rungs are LADDER_BASE * 2^j)."""
    rung = LADDER_BASE
    while rung < bits:
        rung *= 2
    return rung


# ---------------------------------------------------------------------------
# dyadic rounding helpers
# ---------------------------------------------------------------------------

def dyadic_floor(value: Fraction, bits: int) -> Fraction:
    """Largest multiple of 2^-bits that is <= value."""
    return Fraction((value.numerator << bits) // value.denominator, 1 << bits)


def dyadic_ceil(value: Fraction, bits: int) -> Fraction:
    return -dyadic_floor(-value, bits)


def _sqrt_lower(value: Fraction, bits: int) -> Fraction:
    # floor(sqrt(value) * 2^bits) / 2^bits, value >= 0
    scaled = (value.numerator << (2 * bits)) // value.denominator
    return Fraction(math.isqrt(scaled), 1 << bits)


def _sqrt_upper(value: Fraction, bits: int) -> Fraction:
    scaled = -((-value.numerator << (2 * bits)) // value.denominator)
    root = math.isqrt(scaled)
    if root * root < scaled:
        root += 1
    return Fraction(root, 1 << bits)


# ---------------------------------------------------------------------------
# certified intervals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertifiedInterval:
    """Closed interval [lo, hi] guaranteed to contain an exact real value.

    All operations return enclosures of the exact result; none of them ever
    round inward.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")

    @staticmethod
    def exactly(value: Rat) -> "CertifiedInterval":
        value = Fraction(value)
        return CertifiedInterval(value, value)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value: Rat) -> bool:
        return self.lo <= value <= self.hi

    def contains_interval(self, other: "CertifiedInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def __add__(self, other) -> "CertifiedInterval":
        if isinstance(other, CertifiedInterval):
            return CertifiedInterval(self.lo + other.lo, self.hi + other.hi)
        other = Fraction(other)
        return CertifiedInterval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __neg__(self) -> "CertifiedInterval":
        return CertifiedInterval(-self.hi, -self.lo)

    def __sub__(self, other) -> "CertifiedInterval":
        return self + (-other if isinstance(other, CertifiedInterval) else -Fraction(other))

    def __rsub__(self, other) -> "CertifiedInterval":
        return (-self) + other

    def __mul__(self, other) -> "CertifiedInterval":
        if isinstance(other, CertifiedInterval):
            products = (self.lo * other.lo, self.lo * other.hi,
                        self.hi * other.lo, self.hi * other.hi)
            return CertifiedInterval(min(products), max(products))
        other = Fraction(other)
        if other >= 0:
            return CertifiedInterval(self.lo * other, self.hi * other)
        return CertifiedInterval(self.hi * other, self.lo * other)

    __rmul__ = __mul__

    def __abs__(self) -> "CertifiedInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return CertifiedInterval(Fraction(0), max(-self.lo, self.hi))

    def intersect(self, other: "CertifiedInterval") -> "CertifiedInterval":
        return CertifiedInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def round_outward(self, bits: int) -> "CertifiedInterval":
        return CertifiedInterval(dyadic_floor(self.lo, bits), dyadic_ceil(self.hi, bits))

    def sqrt(self, bits: int) -> "CertifiedInterval":
        """Enclosure of the square root, outward-rounded to 2^-bits.

        The true value is assumed nonnegative; a slightly negative lo (from
        enclosing an exact zero) is clamped.
        """
        lo = max(Fraction(0), self.lo)
        if self.hi < 0:
            raise ValueError(f"sqrt of negative interval {self}")
        return CertifiedInterval(_sqrt_lower(lo, bits), _sqrt_upper(self.hi, bits))

    def strictly_below(self, other: "CertifiedInterval") -> bool:
        return self.hi < other.lo

    def to_float(self) -> float:
        return float(self.midpoint)

    def __repr__(self):
        return f"CertifiedInterval({float(self.lo)!r}, {float(self.hi)!r})"


# ---------------------------------------------------------------------------
# integer polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True, init=False)
class IntPolynomial:
    """Dense integer polynomial, ascending coefficients, no trailing zeros."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable[int]):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        """Horner evaluation; works for ints, Fractions, FieldElements and
        CertifiedIntervals alike."""
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial([c + (b[i] if i < len(b) else 0) for i, c in enumerate(a)])

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + IntPolynomial([-c for c in other.coeffs])

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coeffs])
        out = [0] * (len(self.coeffs) + len(other.coeffs))
        for i, c in enumerate(self.coeffs):
            for j, d in enumerate(other.coeffs):
                out[i + j] += c * d
        return IntPolynomial(out)

    __rmul__ = __mul__

    def shifted(self, k: int) -> "IntPolynomial":
        """Multiplication by x^k."""
        return IntPolynomial((0,) * k + self.coeffs)

    def __divmod__(self, other: "IntPolynomial"):
        """Exact integer polynomial division; raises if a leading-coefficient
        division is not exact."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [0] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.coeffs
        while len(rem) >= len(d) and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) < len(d):
                break
            q, r = divmod(rem[-1], d[-1])
            if r != 0:
                raise ValueError(f"{rem[-1]} not divisible by {d[-1]}")
            shift = len(rem) - len(d)
            quot[shift] = q
            for i, c in enumerate(d):
                rem[shift + i] -= q * c
        return IntPolynomial(quot), IntPolynomial(rem)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = " - " if c < 0 else (" + " if parts else "")
            mag = abs(c)
            if i == 0:
                term = str(mag)
            else:
                var = "x" if i == 1 else f"x^{i}"
                term = var if mag == 1 else f"{mag}*{var}"
            parts.append(sign + term)
        return "".join(parts)


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> IntPolynomial:
    """m-th cyclotomic polynomial by exact recursive division of z^m - 1."""
    if m < 1:
        raise ValueError("m must be positive")
    poly = IntPolynomial([-1] + [0] * (m - 1) + [1])
    for d in range(1, m):
        if m % d == 0:
            poly, rem = divmod(poly, cyclotomic_polynomial(d))
            assert rem.is_zero()
    return poly


@functools.lru_cache(maxsize=None)
def real_cyclotomic_minpoly(m: int) -> IntPolynomial:
    """Monic integer minimal polynomial of 2*cos(2*pi/M).

    For M >= 3 the cyclotomic polynomial Phi_M is palindromic of even degree
    2D, so Phi_M(z)/z^D can be rewritten in the basis z^k + z^-k; substituting
    z^k + z^-k = V_k(z + 1/z), where V_0 = 2, V_1 = x, V_{k+1} = x*V_k -
    V_{k-1}, yields the degree-D minimal polynomial of 2*cos(2*pi/M).
    """
    if m < 1:
        raise ValueError("M must be positive")
    if m == 1:
        return IntPolynomial([-2, 1])
    if m == 2:
        return IntPolynomial([2, 1])
    phi = cyclotomic_polynomial(m)
    b = phi.coeffs
    half = (len(b) - 1) // 2
    assert b == b[::-1], "cyclotomic polynomial must be palindromic"
    v_prev = IntPolynomial([2])
    v_cur = IntPolynomial([0, 1])
    psi = IntPolynomial([b[half]])
    for k in range(1, half + 1):
        psi = psi + b[half + k] * v_cur
        v_prev, v_cur = v_cur, v_cur.shifted(1) - v_prev
    assert psi.coeffs[-1] == 1
    return psi


def _euler_phi(m: int) -> int:
    result = m
    p = 2
    n = m
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


# ---------------------------------------------------------------------------
# certified pi (Machin's formula, alternating-series bracketing)
# ---------------------------------------------------------------------------

def _arctan_inv_bounds(x: int, tail: Fraction):
    """Bracket of arctan(1/x) from consecutive partial sums of the
    alternating series, stopped once the next term is below `tail`."""
    total = Fraction(0)
    k = 0
    power = Fraction(1, x)
    x2 = x * x
    while True:
        term = power / (2 * k + 1)
        if term < tail:
            break
        total += term if k % 2 == 0 else -term
        k += 1
        power /= x2
    # after an added positive term the sum overshoots, after a negative one
    # it undershoots; either way the true value is within `term` of `total`
    return total - term, total + term


_PI_LADDER: list = []
_PI_LOCK = threading.Lock()


def pi_interval(bits: int) -> CertifiedInterval:
    """Certified enclosure of pi with width <= 2^(1-bits).

    Enclosures are nested along the shared precision ladder.
    """
    rung = ladder_rung(bits)
    j = 0
    while LADDER_BASE << j < rung:
        j += 1
    if len(_PI_LADDER) <= j:
        with _PI_LOCK:
            while len(_PI_LADDER) <= j:
                s = LADDER_BASE << len(_PI_LADDER)
                tail = Fraction(1, 1 << (s + 8))
                lo5, hi5 = _arctan_inv_bounds(5, tail)
                lo239, hi239 = _arctan_inv_bounds(239, tail)
                iv = CertifiedInterval(16 * lo5 - 4 * hi239, 16 * hi5 - 4 * lo239)
                iv = iv.round_outward(s + 4)
                if _PI_LADDER:
                    iv = iv.intersect(_PI_LADDER[-1])
                assert iv.width <= Fraction(1, 1 << (s - 1))
                _PI_LADDER.append(iv)
    return _PI_LADDER[j]


def _cos_interval(theta: CertifiedInterval, bits: int) -> CertifiedInterval:
    """Enclosure of cos over the interval theta (|theta| <= 4), via the Taylor
    series with an explicit alternating-tail bound."""
    bound_seed = max(abs(theta.lo), abs(theta.hi))
    assert bound_seed <= 4
    x2 = theta * theta
    term = CertifiedInterval.exactly(1)
    term_bound = Fraction(1)
    total = term
    eps = Fraction(1, 1 << (bits + 4))
    j = 0
    while True:
        j += 1
        term = term * x2 * Fraction(-1, (2 * j - 1) * (2 * j))
        term_bound = term_bound * bound_seed * bound_seed / ((2 * j - 1) * (2 * j))
        total = total + term
        next_bound = term_bound * bound_seed * bound_seed / ((2 * j + 1) * (2 * j + 2))
        # once the term ratio drops below 1/2 the tail is at most twice the
        # next term bound
        if j >= 4 and next_bound * 2 < eps:
            tail = next_bound * 2
            return CertifiedInterval(total.lo - tail, total.hi + tail)


# ---------------------------------------------------------------------------
# field descriptor and elements
# ---------------------------------------------------------------------------

class FieldDescriptor:
    """Immutable description of K_M = Q(g), g = 2*cos(2*pi/M).

    Carries the minimal polynomial of g, a reduction table for products in
    the power basis, and a nested ladder of certified enclosures of g.
    """

    __slots__ = ("conductor", "minpoly", "degree", "_reduction", "_g_ladder", "_lock")

    def __init__(self, conductor: int):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        self.conductor = conductor
        self.minpoly = real_cyclotomic_minpoly(conductor)
        self.degree = self.minpoly.degree
        if conductor >= 3:
            assert self.degree == _euler_phi(conductor) // 2
        # reduction[k] = coefficient vector of g^(degree+k), k = 0..degree-2
        d = self.degree
        top = [Fraction(-c) for c in self.minpoly.coeffs[:d]]
        table = [tuple(top)]
        for _ in range(d - 2):
            prev = table[-1]
            shifted = [Fraction(0)] + list(prev[:-1])
            lead = prev[-1]
            table.append(tuple(shifted[i] + lead * top[i] for i in range(d)))
        self._reduction = table
        self._g_ladder: list = []
        self._lock = threading.Lock()

    def zero(self) -> "FieldElement":
        return FieldElement(self, (Fraction(0),) * self.degree)

    def one(self) -> "FieldElement":
        return self.rational(1)

    def rational(self, value: Rat) -> "FieldElement":
        coeffs = [Fraction(value)] + [Fraction(0)] * (self.degree - 1)
        return FieldElement(self, tuple(coeffs))

    def generator(self) -> "FieldElement":
        if self.degree == 1:
            # g is rational: M in {1, 2, 3, 4, 6}
            return self.rational(Fraction(-self.minpoly.coeffs[0], self.minpoly.coeffs[1]))
        coeffs = [Fraction(0)] * self.degree
        coeffs[1] = Fraction(1)
        return FieldElement(self, tuple(coeffs))

    def element(self, coeffs: Iterable[Rat]) -> "FieldElement":
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > self.degree:
            raise ValueError(f"expected at most {self.degree} coefficients")
        cs += [Fraction(0)] * (self.degree - len(cs))
        return FieldElement(self, tuple(cs))

    def generator_interval(self, bits: int) -> CertifiedInterval:
        """Nested certified enclosure of g = 2*cos(2*pi/M) at a ladder rung
        >= bits.  The ladder is always filled coarse-to-fine, so results are
        identical whatever the call order."""
        if self.degree == 1:
            g = Fraction(-self.minpoly.coeffs[0], self.minpoly.coeffs[1])
            return CertifiedInterval.exactly(g)
        rung = ladder_rung(bits)
        j = 0
        while LADDER_BASE << j < rung:
            j += 1
        if len(self._g_ladder) <= j:
            with self._lock:
                while len(self._g_ladder) <= j:
                    s = LADDER_BASE << len(self._g_ladder)
                    work = s + 8
                    theta = (pi_interval(work) * Fraction(2, self.conductor)).round_outward(work)
                    iv = (_cos_interval(theta, work) * 2).round_outward(s)
                    if self._g_ladder:
                        iv = iv.intersect(self._g_ladder[-1])
                    self._g_ladder.append(iv)
        return self._g_ladder[j]

    def __eq__(self, other):
        return isinstance(other, FieldDescriptor) and other.conductor == self.conductor

    def __hash__(self):
        return hash(("FieldDescriptor", self.conductor))

    def __repr__(self):
        return f"FieldDescriptor(M={self.conductor}, minpoly={self.minpoly})"


_DESCRIPTORS: dict = {}


def field_descriptor(conductor: int) -> FieldDescriptor:
    """Shared descriptor for K_M (one instance per conductor)."""
    if conductor not in _DESCRIPTORS:
        _DESCRIPTORS[conductor] = FieldDescriptor(conductor)
    return _DESCRIPTORS[conductor]


def field_for_ngon(n: int) -> FieldDescriptor:
    """Smallest real cyclotomic field holding all vertex coordinates of the
    regular n-gon: conductor lcm(n, 4)."""
    if n < 3:
        raise ValueError("n must be >= 3")
    return field_descriptor(math.lcm(n, 4))


class FieldElement:
    """Element of K_M as an exact rational vector over the power basis.

    Immutable value; the canonical representation makes the zero test (and
    equality) a plain coefficient comparison.
    """

    __slots__ = ("field", "coeffs", "_iv_cache")

    def __init__(self, field: FieldDescriptor, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs
        self._iv_cache: dict = {}

    # -- basic predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field.conductor == other.field.conductor and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field.conductor, self.coeffs))

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Optional["FieldElement"]:
        if isinstance(other, FieldElement):
            if other.field.conductor != self.field.conductor:
                raise ValueError("elements from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = self.field.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    prod[i + j] += a * b
        out = prod[:d]
        table = self.field._reduction
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c != 0:
                red = table[k - d]
                for i in range(d):
                    out[i] += c * red[i]
        return FieldElement(self.field, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FieldElement":
        """Multiplicative inverse via the extended gcd of the representative
        polynomial with the (irreducible) minimal polynomial over Q."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero field element")
        if self.is_rational():
            return self.field.rational(1 / self.coeffs[0])
        modulus = [Fraction(c) for c in self.field.minpoly.coeffs]
        inv = _poly_modular_inverse(list(self.coeffs), modulus)
        inv += [Fraction(0)] * (self.field.degree - len(inv))
        return FieldElement(self.field, tuple(inv[:self.field.degree]))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    # -- numeric evaluation -------------------------------------------------

    def eval_interval(self, bits: int) -> CertifiedInterval:
        """Certified enclosure with width <= 2^(1-bits) * max(1, |self|).

        Deterministic for a given (value, bits); growing bits yields nested
        enclosures because the generator ladder is nested, interval Horner
        evaluation is inclusion-monotone, and the dyadic rounding grids
        refine each other.
        """
        if bits < 8:
            raise ValueError("bits must be >= 8")
        rung = ladder_rung(bits + 16)
        if self.is_rational():
            c = self.coeffs[0]
            return CertifiedInterval(dyadic_floor(c, rung), dyadic_ceil(c, rung))
        while True:
            cached = self._iv_cache.get(rung)
            if cached is None:
                g = self.field.generator_interval(rung)
                acc = CertifiedInterval.exactly(0)
                for c in reversed(self.coeffs):
                    acc = acc * g + c
                cached = acc.round_outward(rung)
                self._iv_cache[rung] = cached
            mig = cached.lo if cached.lo > 0 else (-cached.hi if cached.hi < 0 else Fraction(0))
            if cached.width <= Fraction(2, 1 << bits) * max(Fraction(1), mig):
                return cached
            rung *= 2

    def sign(self) -> int:
        """Exact sign: canonical-zero test first, then interval refinement
        (terminates because a nonzero value is eventually separated from 0)."""
        if self.is_zero():
            return 0
        bits = LADDER_BASE
        while True:
            iv = self.eval_interval(bits)
            if iv.lo > 0:
                return 1
            if iv.hi < 0:
                return -1
            bits *= 2

    def __lt__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() < 0

    def __le__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() <= 0

    def __float__(self):
        return self.eval_interval(64).to_float()

    def __repr__(self):
        return f"FieldElement(M={self.field.conductor}, {list(self.coeffs)})"


# ---------------------------------------------------------------------------
# rational polynomial helpers (for inverses and minimal polynomials)
# ---------------------------------------------------------------------------

def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(num, den):
    num = list(num)
    q = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    while len(num) >= len(den):
        factor = num[-1] / den[-1]
        shift = len(num) - len(den)
        q[shift] = factor
        for i, c in enumerate(den):
            num[shift + i] -= factor * c
        _poly_trim(num)
        if not num:
            break
    return q, num


def _poly_modular_inverse(a, modulus):
    """Inverse of a modulo an irreducible rational polynomial, by the
    extended Euclidean algorithm."""
    r0, r1 = list(modulus), _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while True:
        q, r = _poly_divmod(r0, r1)
        if not r:
            break
        s = _poly_sub(s0, _poly_mul(q, s1))
        r0, r1, s0, s1 = r1, r, s1, s
    # r1 is a nonzero constant times the gcd (= 1, modulus irreducible)
    if len(r1) != 1:
        raise ArithmeticError("element not invertible; modulus not irreducible?")
    scale = 1 / r1[0]
    return [c * scale for c in s1]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, c in enumerate(a):
        for j, d in enumerate(b):
            out[i + j] += c * d
    return _poly_trim(out)


def _poly_sub(a, b):
    out = list(a) + [Fraction(0)] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _poly_trim(out)


# ---------------------------------------------------------------------------
# minimal polynomials of elements, quadratic surd recognition
# ---------------------------------------------------------------------------

def element_minpoly(x: FieldElement) -> IntPolynomial:
    """Primitive integer minimal polynomial of x over Q (positive leading
    coefficient), by exact linear algebra on powers of x in the coefficient
    basis.  Its degree divides the field degree."""
    d = x.field.degree
    # reduced echelon rows: pivot column -> (vector, combination over powers)
    rows = []
    power = x.field.one()
    for k in range(d + 1):
        vec = list(power.coeffs)
        combo = [Fraction(0)] * k + [Fraction(1)]
        for pivot, (rvec, rcombo) in rows:
            c = vec[pivot]
            if c != 0:
                for i in range(d):
                    vec[i] -= c * rvec[i]
                for i in range(len(rcombo)):
                    combo[i] -= c * rcombo[i]
        if all(v == 0 for v in vec):
            return _primitive_integer(combo)
        pivot = next(i for i, v in enumerate(vec) if v != 0)
        inv = 1 / vec[pivot]
        vec = [v * inv for v in vec]
        combo = [c * inv for c in combo]
        rows.append((pivot, (vec, combo)))
        power = power * x
    raise AssertionError("no dependency found up to the field degree")


def _primitive_integer(rational_coeffs) -> IntPolynomial:
    denom = math.lcm(*(c.denominator for c in rational_coeffs))
    ints = [int(c * denom) for c in rational_coeffs]
    content = 0
    for c in ints:
        content = math.gcd(content, c)
    ints = [c // content for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return IntPolynomial(ints)


@dataclass(frozen=True)
class QuadraticSurd:
    """Value a + b*sqrt(d) with rational a, b and squarefree d >= 1.

    Canonical: d == 1 exactly when b == 0.
    """

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        if self.d < 1 or squarefree_part(self.d) != self.d:
            raise ValueError(f"d={self.d} is not a squarefree positive integer")
        if (self.b == 0) != (self.d == 1):
            raise ValueError("d must be 1 exactly when b is 0")


def squarefree_part(n: int) -> int:
    """Squarefree part of a positive integer, by trial division."""
    if n < 1:
        raise ValueError("n must be positive")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e % 2:
                result *= p
        p += 1 if p == 2 else 2
    return result * n


def as_quadratic_surd(x: FieldElement) -> Optional[QuadraticSurd]:
    """Closed form a + b*sqrt(d) when x has degree <= 2 over Q; None
    otherwise."""
    poly = element_minpoly(x)
    if poly.degree == 1:
        c0, c1 = poly.coeffs
        return QuadraticSurd(Fraction(-c0, c1), Fraction(0), 1)
    if poly.degree != 2:
        return None
    c0, c1, c2 = poly.coeffs
    a = Fraction(-c1, 2 * c2)
    r = a * a - Fraction(c0, c2)  # = b^2 * d > 0 for a real quadratic irrational
    assert r > 0
    d = squarefree_part(r.numerator * r.denominator)
    b_sq = r / d
    num_root = math.isqrt(b_sq.numerator)
    den_root = math.isqrt(b_sq.denominator)
    assert num_root * num_root == b_sq.numerator and den_root * den_root == b_sq.denominator
    b = Fraction(num_root, den_root)
    if (x - x.field.rational(a)).sign() < 0:
        b = -b
    return QuadraticSurd(a, b, d)


# ---------------------------------------------------------------------------
# generator cosines
# ---------------------------------------------------------------------------

def generator_cos(field: FieldDescriptor, j: int) -> FieldElement:
    """Exact element 2*cos(2*pi*j/M), via E_0 = 2, E_1 = g,
    E_{k+1} = g*E_k - E_{k-1} (index reduced mod M, cosine evenness applied)."""
    m = field.conductor
    j %= m
    j = min(j, m - j)
    prev = field.rational(2)
    if j == 0:
        return prev
    cur = field.generator()
    for _ in range(j - 1):
        prev, cur = cur, cur * field.generator() - prev
    return cur
