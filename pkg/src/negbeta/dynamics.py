"""Certified iteration of the negative-base transformation.

The transformation sends x to floor(beta*x) + 1 - beta*x on (0,1]; iterating
from 1 produces the expansion digits that govern the whole shift.  Orbit
points are held exactly: as rationals when the base is rational, as
polynomial expressions in the base (reduced modulo its defining polynomial)
when it is algebraic.  Floors and equalities of orbit points are certified by
interval refinement combined with an exact vanishing test against the
defining polynomial, so digit output never rests on floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd as int_gcd

from . import words
from .algebraic import (
    AlgebraicNumber,
    _poly_gcd,
    _sign_at,
    _strip,
    b_of,
    count_real_roots,
)
from .errors import (
    NegBetaError,
    SupNotFixedError,
    UndecidableAtPrecisionError,
)
from .words import EventuallyPeriodicWord, canonicalize


@dataclass(frozen=True)
class PrecisionConfig:
    """Interval refinement schedule: start at start_bits fractional bits and
    double up to max_bits before giving up."""

    start_bits: int = 128
    max_bits: int = 4096

    def tolerances(self):
        bits = self.start_bits
        while True:
            yield Fraction(1, 2**bits)
            if bits >= self.max_bits:
                return
            bits *= 2


DEFAULT_PRECISION = PrecisionConfig()


@dataclass(frozen=True)
class BetaValue:
    """A base beta > 1: exact rational or algebraic with refinable interval."""

    rational: Fraction | None = None
    algebraic: AlgebraicNumber | None = None

    @classmethod
    def from_rational(cls, value) -> "BetaValue":
        value = Fraction(value)
        if value <= 1:
            raise NegBetaError(f"base must exceed 1, got {value}")
        return cls(rational=value)

    @classmethod
    def from_algebraic(cls, num: AlgebraicNumber) -> "BetaValue":
        if num.is_rational():
            return cls.from_rational(num.exact)
        if num.compare(1) <= 0:
            raise NegBetaError("base must exceed 1")
        return cls(algebraic=num)

    @classmethod
    def of(cls, value) -> "BetaValue":
        if isinstance(value, BetaValue):
            return value
        if isinstance(value, AlgebraicNumber):
            return cls.from_algebraic(value)
        if value == 1:
            raise NegBetaError("base must exceed 1")
        return cls.from_rational(value)

    def is_rational(self) -> bool:
        return self.rational is not None

    def floor(self) -> int:
        if self.rational is not None:
            return self.rational.numerator // self.rational.denominator
        return self.algebraic.floor()

    def interval(self, tol: Fraction) -> tuple[Fraction, Fraction]:
        if self.rational is not None:
            return (self.rational, self.rational)
        return self.algebraic.refine(tol)

    def __float__(self):
        if self.rational is not None:
            return float(self.rational)
        return float(self.algebraic)

    def __str__(self):
        if self.rational is not None:
            return str(self.rational)
        return str(self.algebraic)


class _RationalArith:
    """Exact orbit arithmetic for a rational base."""

    def __init__(self, beta: Fraction):
        self.beta = beta

    def one(self):
        return Fraction(1)

    def from_rational(self, x: Fraction):
        return Fraction(x)

    def step(self, x: Fraction) -> tuple[int, Fraction]:
        v = self.beta * x
        d = v.numerator // v.denominator
        return d, d + 1 - v

    def equal(self, x, y) -> bool:
        return x == y

    def compare(self, x, y) -> int:
        return (x > y) - (x < y)

    def enclosure(self, x, tol) -> tuple[Fraction, Fraction]:
        return (x, x)

    def key(self, x):
        return x


class _AlgebraicArith:
    """Exact orbit arithmetic in Q(beta) for an algebraic base.

    Points are coefficient tuples of polynomials in beta of degree below the
    squarefree defining polynomial; values (not representations) are compared,
    so a reducible defining polynomial cannot corrupt equality decisions.
    """

    def __init__(self, num: AlgebraicNumber, precision: PrecisionConfig = DEFAULT_PRECISION):
        self.num = num
        self.sf = num._sf
        self.deg = len(self.sf) - 1
        self.precision = precision

    def one(self):
        return (Fraction(1),)

    def from_rational(self, x: Fraction):
        return (Fraction(x),)

    def _reduce(self, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
        lead = Fraction(self.sf[-1])
        while len(coeffs) > self.deg:
            c = coeffs.pop()
            if c:
                k = len(coeffs) - self.deg
                for i, s in enumerate(self.sf[:-1]):
                    coeffs[k + i] -= c * s / lead
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return tuple(coeffs)

    def _mul_beta(self, x) -> tuple[Fraction, ...]:
        return self._reduce([Fraction(0), *x])

    def is_zero(self, x) -> bool:
        if not x:
            return True
        den = 1
        for c in x:
            den = den * c.denominator // int_gcd(den, c.denominator)
        ints = _strip([int(c * den) for c in x])
        if not ints:
            return True
        g = _poly_gcd(self.sf, ints)
        if len(g) <= 1:
            return False
        lo, hi = self.num.refine(Fraction(1, 2**24))
        return count_real_roots(g, lo, hi) > 0 or _sign_at(g, lo) == 0

    def enclosure(self, x, tol: Fraction) -> tuple[Fraction, Fraction]:
        lo, hi = self.num.refine(tol)
        acc_lo = acc_hi = Fraction(0)
        plo, phi = Fraction(1), Fraction(1)
        for c in x:
            a, b = c * plo, c * phi
            if a > b:
                a, b = b, a
            acc_lo += a
            acc_hi += b
            plo *= lo
            phi *= hi
        return acc_lo, acc_hi

    def sign(self, x) -> int:
        if self.is_zero(x):
            return 0
        for tol in self.precision.tolerances():
            lo, hi = self.enclosure(x, tol)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
        raise UndecidableAtPrecisionError("sign of orbit expression undecided at max precision")

    def equal(self, x, y) -> bool:
        if x == y:
            return True
        diff = [a - b for a, b in itertools.zip_longest(x, y, fillvalue=Fraction(0))]
        return self.is_zero(tuple(diff))

    def compare(self, x, y) -> int:
        diff = tuple(a - b for a, b in itertools.zip_longest(x, y, fillvalue=Fraction(0)))
        return self.sign(diff)

    def _certified_floor(self, x) -> int:
        for tol in self.precision.tolerances():
            lo, hi = self.enclosure(x, tol)
            flo = lo.numerator // lo.denominator
            fhi = hi.numerator // hi.denominator
            if flo == fhi:
                return flo
            if fhi - flo == 1:
                # x might be exactly the integer fhi
                probe = list(x)
                if not probe:
                    probe = [Fraction(0)]
                probe[0] -= fhi
                if self.is_zero(tuple(probe)):
                    return fhi
        raise UndecidableAtPrecisionError(
            "floor undecided at max precision", straddled=fhi)

    def step(self, x) -> tuple[int, tuple[Fraction, ...]]:
        v = self._mul_beta(x)
        d = self._certified_floor(v)
        probe = list(v) or [Fraction(0)]
        probe[0] -= d
        if self.is_zero(tuple(probe)):
            # beta*x is exactly the integer d, so the image is exactly 1
            return d, (Fraction(1),)
        nxt = [-c for c in v]
        if nxt:
            nxt[0] += d + 1
        else:
            nxt = [Fraction(d + 1)]
        while nxt and nxt[-1] == 0:
            nxt.pop()
        return d, tuple(nxt)

    def key(self, x):
        lo, hi = self.enclosure(x, Fraction(1, 2**64))
        mid = (lo + hi) / 2
        return int(mid * 2**48)


def _arith_for(beta: BetaValue, precision: PrecisionConfig):
    if beta.is_rational():
        return _RationalArith(beta.rational)
    return _AlgebraicArith(beta.algebraic, precision)


@dataclass(frozen=True)
class ExpansionState:
    """Orbit state: exact current point, its certified interval, the digits
    emitted so far, and the remaining precision budget."""

    current: tuple[Fraction, Fraction]
    digits_so_far: tuple[int, ...]
    precision_budget: PrecisionConfig
    point: object = field(repr=False, default=None)


def initial_state(beta, x=1, precision: PrecisionConfig = DEFAULT_PRECISION) -> ExpansionState:
    beta = BetaValue.of(beta)
    arith = _arith_for(beta, precision)
    x = Fraction(x)
    if not 0 < x <= 1:
        raise NegBetaError(f"start point must lie in (0,1], got {x}")
    pt = arith.from_rational(x)
    return ExpansionState(current=(x, x), digits_so_far=(), precision_budget=precision, point=pt)


def step(beta, state: ExpansionState) -> ExpansionState:
    """Advance the orbit one step, appending one expansion digit."""
    beta = BetaValue.of(beta)
    arith = _arith_for(beta, state.precision_budget)
    d, nxt = arith.step(state.point)
    assert 0 <= d <= beta.floor(), "digit outside 0..floor(beta)"
    lo, hi = arith.enclosure(nxt, Fraction(1, 2**state.precision_budget.start_bits))
    return replace(state, current=(lo, hi), digits_so_far=state.digits_so_far + (d,), point=nxt)


class DigitStream:
    """Lazily extended expansion of a point, with exact period detection.

    Near-coincidences of orbit points (bucketed by certified midpoints) are
    resolved by the exact equality test, so a detected repeat is a proof and
    a missed repeat cannot produce wrong digits, only a longer prefix.
    """

    def __init__(self, beta, x=1, precision: PrecisionConfig = DEFAULT_PRECISION,
                 max_digits: int = 20000):
        self.beta = BetaValue.of(beta)
        self.arith = _arith_for(self.beta, precision)
        self.max_digits = max_digits
        self.digits: list[int] = []
        self.word: EventuallyPeriodicWord | None = None
        x = Fraction(x)
        if not 0 < x <= 1:
            raise NegBetaError(f"start point must lie in (0,1], got {x}")
        self._points = [self.arith.from_rational(x)]
        self._buckets: dict[object, list[int]] = {}
        self._bucket_add(0)

    def _bucket_add(self, index: int):
        key = self.arith.key(self._points[index])
        self._buckets.setdefault(key, []).append(index)

    def _find_repeat(self, index: int) -> int | None:
        key = self.arith.key(self._points[index])
        candidates = []
        if isinstance(key, Fraction):
            candidates = self._buckets.get(key, [])
        else:
            for k in (key - 1, key, key + 1):
                candidates.extend(self._buckets.get(k, []))
        for i in sorted(set(candidates)):
            if i < index and self.arith.equal(self._points[i], self._points[index]):
                return i
        return None

    def _advance(self):
        if self.word is not None:
            return
        if len(self.digits) >= self.max_digits:
            raise UndecidableAtPrecisionError(
                f"no certified period within {self.max_digits} digits")
        d, nxt = self.arith.step(self._points[-1])
        self.digits.append(d)
        self._points.append(nxt)
        idx = len(self._points) - 1
        rep = self._find_repeat(idx)
        if rep is not None:
            self.word = canonicalize(self.digits[:rep], self.digits[rep:idx])
        else:
            self._bucket_add(idx)

    def digit(self, k: int) -> int:
        """k-th expansion digit, 1-based."""
        if self.word is not None:
            return self.word.digit(k)
        while len(self.digits) < k and self.word is None:
            self._advance()
        if self.word is not None:
            return self.word.digit(k)
        return self.digits[k - 1]

    def detect_period(self, budget: int) -> EventuallyPeriodicWord | None:
        while self.word is None and len(self.digits) < budget:
            self._advance()
        return self.word


@dataclass(frozen=True)
class ExpansionResult:
    """Expansion of 1: the eventually periodic word when a repeat was
    certified, otherwise the computed digit prefix with a flag."""

    digits: tuple[int, ...]
    word: EventuallyPeriodicWord | None

    @property
    def is_periodic(self) -> bool:
        return self.word is not None


def expansion_of_one(beta, max_digits: int = 1000, detect_period: bool = True,
                     precision: PrecisionConfig = DEFAULT_PRECISION) -> ExpansionResult:
    """Digits of the expansion of 1 in base beta.

    With detect_period, stops as soon as an exact orbit repeat is certified
    and returns the eventually periodic word; a base is Yrrap exactly when
    this happens for some finite budget.
    """
    stream = DigitStream(beta, 1, precision, max_digits=max_digits + 1)
    w = None
    if detect_period:
        w = stream.detect_period(max_digits)
    if w is not None:
        return ExpansionResult(digits=tuple(stream.digits), word=w)
    while len(stream.digits) < max_digits and stream.word is None:
        stream._advance()
    return ExpansionResult(digits=tuple(stream.digits[:max_digits]), word=stream.word)


def expansion_digits(beta, x, count: int,
                     precision: PrecisionConfig = DEFAULT_PRECISION) -> tuple[int, ...]:
    """First digits of the expansion of an arbitrary point x in (0,1]."""
    state = initial_state(beta, x, precision)
    for _ in range(count):
        state = step(beta, state)
    return state.digits_so_far


def orbit_points(beta, x, count: int,
                 precision: PrecisionConfig = DEFAULT_PRECISION):
    """The exact orbit x, T(x), ..., T^(count-1)(x) with the backend arith."""
    beta = BetaValue.of(beta)
    arith = _arith_for(beta, precision)
    pts = [arith.from_rational(Fraction(x))]
    for _ in range(count - 1):
        _, nxt = arith.step(pts[-1])
        pts.append(nxt)
    return arith, pts


def lower_bound_word(d1: EventuallyPeriodicWord) -> EventuallyPeriodicWord:
    """Strict lower bound of the shift: the decremented odd-period form when
    the expansion of 1 is purely periodic with odd minimal period, otherwise
    0 followed by the expansion of 1."""
    if d1.is_purely_periodic() and d1.period_length % 2 == 1:
        per = d1.per
        assert per[-1] >= 1, "expansion of 1 cannot end its period with 0"
        return canonicalize((), (0,) + per[:-1] + (per[-1] - 1,))
    return canonicalize((0,) + d1.pre, d1.per)


def shift_membership(w: EventuallyPeriodicWord, d1: EventuallyPeriodicWord) -> bool:
    """Does w belong to the shift whose expansion of 1 is d1?

    Every tail of w must be at most d1 and strictly above the lower bound
    word; only the finitely many distinct tails are checked.
    """
    lower = lower_bound_word(d1)
    for t in w.distinct_tails():
        if words.alt_lex_compare(t, d1) > 0:
            return False
        if words.alt_lex_compare(t, lower) <= 0:
            return False
    return True


class MembershipOracle:
    """Membership test against a base given only lazily (digit stream).

    When the stream certifies a period the test is exact; otherwise tail
    comparisons are decided against the growing digit prefix, which is sound
    whenever each comparison resolves within the computed digits (the two
    candidate lower-bound forms agree on any prefix shorter than the period).
    """

    def __init__(self, beta, precision: PrecisionConfig = DEFAULT_PRECISION,
                 period_budget: int = 600, compare_cap: int = 20000):
        beta = BetaValue.of(beta)
        self.stream = DigitStream(beta, 1, precision, max_digits=compare_cap)
        self.compare_cap = compare_cap
        if beta.is_rational() and beta.rational.denominator > 1:
            # A non-integer rational base is not an algebraic integer, hence
            # never Yrrap: its expansion of 1 cannot be eventually periodic,
            # so the plain lower-bound form is correct at every depth and
            # period detection would only burn huge exact denominators.
            self.period_budget = compare_cap
            self.word = None
        else:
            self.period_budget = period_budget
            self.word = self.stream.detect_period(period_budget)

    def _compare_tail_with_d1(self, t: EventuallyPeriodicWord) -> int:
        for k in range(1, self.compare_cap + 1):
            a, b = t.digit(k), self.stream.digit(k)
            if a != b:
                if k % 2 == 1:
                    return -1 if a < b else 1
                return 1 if a < b else -1
        raise UndecidableAtPrecisionError("tail comparison with expansion of 1 unresolved")

    def _compare_tail_with_lower(self, t: EventuallyPeriodicWord) -> int:
        # Lower bound read as 0 d1.  With no repeat certified within the
        # period budget, any purely periodic d1 has period beyond the budget,
        # and the two candidate lower-bound forms agree on a prefix that long;
        # so decisions inside the budget are form-independent, deeper ones are
        # refused rather than risked.
        for k in range(1, self.period_budget + 1):
            a = t.digit(k)
            b = 0 if k == 1 else self.stream.digit(k - 1)
            if a != b:
                if k % 2 == 1:
                    return -1 if a < b else 1
                return 1 if a < b else -1
        raise UndecidableAtPrecisionError("tail comparison with lower bound unresolved")

    def contains(self, w: EventuallyPeriodicWord) -> bool:
        if self.word is not None:
            return shift_membership(w, self.word)
        for t in w.distinct_tails():
            if self._compare_tail_with_d1(t) > 0:
                return False
            if self._compare_tail_with_lower(t) <= 0:
                return False
        return True


def validate_expansion(w: EventuallyPeriodicWord,
                       precision: PrecisionConfig = DEFAULT_PRECISION) -> bool:
    """Is w literally the expansion of 1 in its own base b(w)?

    Certified round trip: iterate the transformation at b(w) for preperiod
    plus period steps, require every digit to match and the orbit to close up
    exactly.
    """
    if not words.is_sup_fixed(w):
        raise SupNotFixedError(f"{w} is not the sup of its shifts")
    if words.compare_with_u(w) <= 0:
        raise NegBetaError(f"{w} lies below the substitution fixed point; its base is 1")
    beta = BetaValue.of(b_of(w))
    arith = _arith_for(beta, precision)
    q, p = w.preperiod_length, w.period_length
    pts = [arith.one()]
    for k in range(1, q + p + 1):
        d, nxt = arith.step(pts[-1])
        if d != w.digit(k):
            return False
        pts.append(nxt)
    return arith.equal(pts[q + p], pts[q])


# --- order-reversing conjugacy with the original negative-base map ----------

def t_step_rational(beta: Fraction, x: Fraction) -> Fraction:
    """One step of the map used here: floor(beta x) + 1 - beta x on (0,1]."""
    v = beta * x
    return v.numerator // v.denominator + 1 - v


def interval_map_step(beta: Fraction, y: Fraction) -> Fraction:
    """One step of the order-reversed interval version on [-beta/(beta+1), 1/(beta+1))."""
    v = beta / (beta + 1) - beta * y
    return -beta * y - (v.numerator // v.denominator)


def conjugacy_map(beta: Fraction, x: Fraction) -> Fraction:
    """The order-reversing change of coordinates between the two versions."""
    return Fraction(1, beta + 1) - x
