"""Integer polynomials, exact real root isolation, and the algebraic numbers
attached to eventually periodic digit words.

Root isolation is exact: Sturm chains over the integers locate roots in
half-open rational intervals, rational roots are detected by the rational
root test, and irrational roots are refined by sign bisection on the
squarefree part (so every isolating interval carries a sign change).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd as int_gcd

import mpmath

from . import words
from .errors import SupNotFixedError
from .words import EventuallyPeriodicWord

Coeffs = tuple[int, ...]  # ascending degree


# --- raw coefficient-tuple arithmetic ---------------------------------------

def _strip(c: list[int]) -> Coeffs:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _add(a: Coeffs, b: Coeffs) -> Coeffs:
    out = list(itertools.zip_longest(a, b, fillvalue=0))
    return _strip([x + y for x, y in out])


def _neg(a: Coeffs) -> Coeffs:
    return tuple(-x for x in a)


def _sub(a: Coeffs, b: Coeffs) -> Coeffs:
    return _add(a, _neg(b))


def _mul(a: Coeffs, b: Coeffs) -> Coeffs:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _strip(out)


def _scale(a: Coeffs, k: int) -> Coeffs:
    return () if k == 0 else tuple(x * k for x in a)


def _deriv(a: Coeffs) -> Coeffs:
    return tuple(i * x for i, x in enumerate(a) if i >= 1)


def _content(a: Coeffs) -> int:
    g = 0
    for x in a:
        g = int_gcd(g, abs(x))
    return g or 1


def _primitive(a: Coeffs) -> Coeffs:
    g = _content(a)
    return tuple(x // g for x in a)


def _eval_fraction(a: Coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _sign_at(a: Coeffs, x: Fraction) -> int:
    """Sign of a(x) for rational x = p/q, via the integer q^deg * a(p/q)."""
    if not a:
        return 0
    p, q = x.numerator, x.denominator
    acc = 0
    qpow = 1
    ppow = [1] * len(a)
    for i in range(1, len(a)):
        ppow[i] = ppow[i - 1] * p
    for i in range(len(a) - 1, -1, -1):
        acc += a[i] * ppow[i] * qpow
        qpow *= q
    return (acc > 0) - (acc < 0)


def _rem_sign_preserving(f: Coeffs, g: Coeffs) -> Coeffs:
    """Euclidean remainder of f by g up to a positive rational factor."""
    f = list(f)
    dg = len(g) - 1
    lg = g[-1]
    steps = 0
    while True:
        f = list(_strip(f))
        if not f or len(f) - 1 < dg:
            break
        df = len(f) - 1
        lead = f[-1]
        f = [c * lg for c in f]
        for i, gc in enumerate(g):
            f[df - dg + i] -= lead * gc
        steps += 1
    rem = _strip(f)
    if steps % 2 == 1 and lg < 0:
        rem = tuple(-c for c in rem)
    return _primitive(rem) if rem else ()


def sturm_chain(a: Coeffs) -> list[Coeffs]:
    chain = [_primitive(a), _primitive(_deriv(a))]
    while chain[-1]:
        nxt = _rem_sign_preserving(chain[-2], chain[-1])
        chain.append(tuple(-c for c in nxt))
    chain.pop()
    return chain


def _sign_variations(signs: list[int]) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x * y < 0)


def _variations_at(chain: list[Coeffs], x: Fraction) -> int:
    return _sign_variations([_sign_at(c, x) for c in chain])


def count_real_roots(a: Coeffs, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots of a in the half-open interval (lo, hi]."""
    chain = sturm_chain(a)
    return _variations_at(chain, lo) - _variations_at(chain, hi)


def _poly_gcd(a: Coeffs, b: Coeffs) -> Coeffs:
    """Primitive gcd over the integers (sign-normalized to positive lead)."""
    f, g = _primitive(a), _primitive(b)
    while g:
        r = _rem_sign_preserving(f, g)
        f, g = g, r
    return f if f[-1] > 0 else tuple(-c for c in f)


def _squarefree_part(a: Coeffs) -> Coeffs:
    d = _deriv(a)
    if not d:
        return _primitive(a)
    g = _poly_gcd(a, d)
    if len(g) == 1:
        out = _primitive(a)
    else:
        out = _exact_div(a, g)
    return out if out[-1] > 0 else tuple(-c for c in out)


def _exact_div(a: Coeffs, b: Coeffs) -> Coeffs:
    """Exact polynomial division over the rationals, result cleared to a
    primitive integer polynomial."""
    rem = [Fraction(c) for c in a]
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    db = len(b) - 1
    lb = Fraction(b[-1])
    for i in range(len(a) - len(b), -1, -1):
        coef = rem[i + db] / lb
        out[i] = coef
        if coef:
            for j, bc in enumerate(b):
                rem[i + j] -= coef * bc
    assert all(r == 0 for r in rem), "division was not exact"
    den = 1
    for c in out:
        den = den * c.denominator // int_gcd(den, c.denominator)
    ints = [int(c * den) for c in out]
    return _primitive(_strip(ints))


# --- public polynomial wrapper ----------------------------------------------

@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients ascending in degree."""

    coefficients: Coeffs

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _strip(list(self.coefficients)))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_monic(self) -> bool:
        return bool(self.coefficients) and self.coefficients[-1] == 1

    def __call__(self, x):
        if isinstance(x, Fraction):
            return _eval_fraction(self.coefficients, x)
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def sign_normalized(self) -> "IntPolynomial":
        c = self.coefficients
        if c and c[-1] < 0:
            return IntPolynomial(tuple(-x for x in c))
        return self

    def squarefree_part(self) -> "IntPolynomial":
        if self.is_zero():
            return self
        return IntPolynomial(_squarefree_part(self.coefficients))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"IntPolynomial({format_polynomial(self)!r})"


def poly_from_descending(*coeffs: int) -> IntPolynomial:
    return IntPolynomial(tuple(reversed(coeffs)))


def format_polynomial(p: IntPolynomial) -> str:
    """Human form, descending degree: "x^3 - 2x^2 - x + 1"."""
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coefficients[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        elif i == 1:
            body = "x" if mag == 1 else f"{mag}x"
        else:
            body = f"x^{i}" if mag == 1 else f"{mag}x^{i}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def p_polynomial(v) -> IntPolynomial:
    """The evaluation polynomial of a finite digit word v_1 .. v_j:
    (-x)^j + sum_k (v_k + 1) (-x)^(j-k).

    Its value at a base beta is the point reached after j steps of the
    negative-base transformation whose first j digits are v.
    """
    v = words._as_digits(v)
    if not v:
        raise ValueError("empty digit word")
    j = len(v)
    coeffs = [0] * (j + 1)
    coeffs[j] = (-1) ** j
    for k, d in enumerate(v, start=1):
        e = j - k
        coeffs[e] += (d + 1) * (-1) ** e
    return IntPolynomial(tuple(coeffs))


def char_polynomial(w: EventuallyPeriodicWord) -> IntPolynomial:
    """Characteristic polynomial whose largest root above 1 is b(w).

    Built from the canonical (minimal) preperiod length q and period length
    p: the degree p+q evaluation polynomial minus the degree q one (minus the
    constant 1 when q = 0), sign-normalized to a positive leading coefficient.
    """
    q, p = w.preperiod_length, w.period_length
    head = p_polynomial(w.prefix(p + q)).coefficients
    if q == 0:
        tail: Coeffs = (1,)
    else:
        tail = p_polynomial(w.prefix(q)).coefficients
    return IntPolynomial(_sub(head, tail)).sign_normalized()


# --- algebraic numbers -------------------------------------------------------

@dataclass
class AlgebraicNumber:
    """A real root of an integer polynomial, given by an isolating interval.

    ``interval`` is a pair of rationals enclosing exactly one root of the
    squarefree part, with a sign change across it; ``refine`` shrinks it
    monotonically (nested intervals), which is safe to repeat concurrently.
    Exact rationals are carried with a degenerate interval.
    """

    polynomial: IntPolynomial
    interval: tuple[Fraction, Fraction]
    exact: Fraction | None = None
    _sf: Coeffs = field(default=(), repr=False)

    def __post_init__(self):
        if not self._sf:
            self._sf = _squarefree_part(self.polynomial.coefficients)

    @classmethod
    def from_rational(cls, value: Fraction) -> "AlgebraicNumber":
        value = Fraction(value)
        poly = IntPolynomial((-value.numerator, value.denominator)).sign_normalized()
        return cls(poly, (value, value), exact=value)

    def is_rational(self) -> bool:
        return self.exact is not None

    def refine(self, tol: Fraction | float = Fraction(1, 10**12)) -> tuple[Fraction, Fraction]:
        if self.exact is not None:
            return (self.exact, self.exact)
        tol = Fraction(tol)
        lo, hi = self.interval
        sf = self._sf
        s_lo = _sign_at(sf, lo)
        while hi - lo > tol:
            mid = (lo + hi) / 2
            s_mid = _sign_at(sf, mid)
            if s_mid == 0:
                # the root is exactly the rational midpoint
                self.exact = mid
                self.interval = (mid, mid)
                return (mid, mid)
            if s_mid == s_lo:
                lo = mid
            else:
                hi = mid
        self.interval = (lo, hi)
        return (lo, hi)

    def floor(self) -> int:
        """Exact floor; terminates because irrational roots never sit on an
        integer and rational roots are stored exactly."""
        if self.exact is not None:
            num, den = self.exact.numerator, self.exact.denominator
            return num // den
        lo, hi = self.refine(Fraction(1, 4))
        while lo.__floor__() != hi.__floor__():
            n = hi.__floor__()
            s_n = _sign_at(self._sf, Fraction(n))
            assert s_n != 0, "irrational root equal to an integer"
            if s_n == _sign_at(self._sf, lo):
                lo = Fraction(n)
            else:
                hi = Fraction(n)
            mid = (lo + hi) / 2
            if _sign_at(self._sf, mid) == _sign_at(self._sf, lo):
                lo = mid
            else:
                hi = mid
            self.interval = (lo, hi)
        return lo.__floor__()

    def __float__(self):
        lo, hi = self.refine(Fraction(1, 10**17))
        return float((lo + hi) / 2)

    def decimal(self, places: int = 3) -> str:
        """Correctly rounded (half-up) decimal string with the given places."""
        scale = 10**places

        def half_up(x: Fraction) -> int:
            return (x * scale + Fraction(1, 2)).__floor__()

        if self.exact is not None:
            n = half_up(self.exact)
        else:
            tol = Fraction(1, 10 * scale)
            while True:
                lo, hi = self.refine(tol)
                n, n_hi = half_up(lo), half_up(hi)
                if n == n_hi:
                    break
                # an irrational root never sits exactly on the rounding grid,
                # so the interval eventually clears the boundary
                tol /= 2**8
        sign = "-" if n < 0 else ""
        n = abs(n)
        return f"{sign}{n // scale}.{n % scale:0{places}d}"

    def compare(self, other) -> int:
        if isinstance(other, (int, Fraction)):
            other = AlgebraicNumber.from_rational(Fraction(other))
        if self.equals(other):
            return 0
        lo1, hi1 = self.interval
        lo2, hi2 = other.interval
        tol = Fraction(1, 2)
        while not (hi1 < lo2 or hi2 < lo1):
            tol /= 2**8
            lo1, hi1 = self.refine(tol)
            lo2, hi2 = other.refine(tol)
        return -1 if hi1 < lo2 else 1

    def equals(self, other) -> bool:
        """Exact equality: the gcd of the defining polynomials must have a
        root in the overlap of the isolating intervals."""
        if isinstance(other, (int, Fraction)):
            other = AlgebraicNumber.from_rational(Fraction(other))
        if self.exact is not None and other.exact is not None:
            return self.exact == other.exact
        g = _poly_gcd(self._sf, other._sf)
        if len(g) <= 1:
            return False
        lo1, hi1 = self.refine(Fraction(1, 2**24))
        lo2, hi2 = other.refine(Fraction(1, 2**24))
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo > hi:
            return False
        return count_real_roots(g, lo, hi) > 0 or _sign_at(g, lo) == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, AlgebraicNumber)):
            return self.equals(other)
        return NotImplemented

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __hash__(self):
        raise TypeError("AlgebraicNumber is not hashable; group through equals()")

    def __str__(self):
        if self.exact is not None:
            return str(self.exact)
        return self.decimal(6)


def _rational_roots(a: Coeffs) -> list[Fraction]:
    """All rational roots, by the rational root test on the primitive part."""
    a = _primitive(a)
    k = 0
    while a[k] == 0:
        k += 1
    a = a[k:]
    roots = [Fraction(0)] if k else []
    a0, an = abs(a[0]), abs(a[-1])

    def divisors(n: int) -> list[int]:
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.extend((d, n // d))
            d += 1
        return sorted(set(out))

    for p in divisors(a0):
        for q in divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if _eval_fraction(a, cand) == 0 and cand not in roots:
                    roots.append(cand)
    return sorted(roots)


def isolate_real_roots(poly: IntPolynomial, lo: Fraction, hi: Fraction) -> list[AlgebraicNumber]:
    """Disjoint isolating intervals for every real root in (lo, hi],
    in increasing order.  Rational roots come back exact."""
    sf = _squarefree_part(poly.coefficients)
    if len(sf) <= 1:
        return []
    all_rats = _rational_roots(sf)
    rats = [r for r in all_rats if lo < r <= hi]
    # Deflate every rational root so bisection only ever sees irrational ones.
    deflated = sf
    for r in all_rats:
        deflated = _exact_div(deflated, (-r.numerator, r.denominator))
    out = [AlgebraicNumber(poly, (r, r), exact=r, _sf=sf) for r in rats]
    if len(deflated) > 1:
        chain = sturm_chain(deflated)

        def var(x: Fraction) -> int:
            return _variations_at(chain, x)

        stack = [(lo, hi, var(lo) - var(hi))]
        while stack:
            a, b, count = stack.pop()
            if count == 0:
                continue
            if count == 1:
                # shrink until the endpoints see a strict sign change
                aa, bb = a, b
                while _sign_at(deflated, aa) == 0 or _sign_at(deflated, bb) == 0 or \
                        _sign_at(deflated, aa) == _sign_at(deflated, bb):
                    mid = (aa + bb) / 2
                    if var(aa) - var(mid) == 1:
                        bb = mid
                    else:
                        aa = mid
                out.append(AlgebraicNumber(poly, (aa, bb), _sf=deflated))
                continue
            mid = (a + b) / 2
            vm = var(mid)
            stack.append((a, mid, var(a) - vm))
            stack.append((mid, b, vm - var(b)))
    # Exact rational points may fall inside an irrational root's interval;
    # shrink those intervals until the ordering by midpoint is faithful.
    for root in out:
        if root.exact is None:
            for r in rats:
                while root.interval[0] <= r <= root.interval[1]:
                    root.refine((root.interval[1] - root.interval[0]) / 4)
    out.sort(key=lambda r: (r.interval[0] + r.interval[1]) / 2)
    return out


def root_upper_bound(poly: IntPolynomial) -> Fraction:
    """Cauchy bound: every real root has absolute value below this."""
    c = poly.coefficients
    lead = abs(c[-1])
    return 1 + max(Fraction(abs(x), lead) for x in c)


def largest_root_gt1(poly: IntPolynomial) -> AlgebraicNumber | None:
    """Greatest real root strictly above 1, or None when there is none."""
    if poly.is_zero():
        raise ValueError("zero polynomial")
    if poly.degree < 1:
        return None
    hi = root_upper_bound(poly)
    roots = isolate_real_roots(poly, Fraction(1), hi)
    return roots[-1] if roots else None


def b_of(w: EventuallyPeriodicWord):
    """The base attached to a shift-sup-fixed word: literal 1 when w lies at
    or below the substitution fixed point u, otherwise the largest root above
    1 of the characteristic polynomial (which then always exists).
    """
    if not words.is_sup_fixed(w):
        raise SupNotFixedError(f"{w} is not the sup of its shifts")
    if words.compare_with_u(w) <= 0:
        return 1
    root = largest_root_gt1(char_polynomial(w))
    assert root is not None, f"no root above 1 for {w}"
    assert root.compare(Fraction(w.max_digit() + 1)) <= 0
    return root


def shift_root(num: AlgebraicNumber, c) -> AlgebraicNumber:
    """The number num + c for rational c, as a root of the shifted polynomial."""
    c = Fraction(c)
    if num.is_rational():
        return AlgebraicNumber.from_rational(num.exact + c)
    from math import comb

    lo, hi = num.refine(Fraction(1, 2**24))
    p = num.polynomial.coefficients
    # Taylor shift: coefficients of P(x - c), cleared to primitive integers.
    shifted = [Fraction(0)] * len(p)
    for j, pj in enumerate(p):
        for k in range(j + 1):
            shifted[k] += pj * comb(j, k) * (-c) ** (j - k)
    den = 1
    for x in shifted:
        den = den * x.denominator // int_gcd(den, x.denominator)
    ints = _strip([int(x * den) for x in shifted])
    return AlgebraicNumber(IntPolynomial(ints).sign_normalized(), (lo + c, hi + c))


PISOT = "pisot"
PERRON_NOT_PISOT = "perron_not_pisot"
NEITHER = "neither"


def _certified_roots(sf: Coeffs, dps: int = 60):
    """Approximate all complex roots of a squarefree integer polynomial with
    certified enclosure radii (distance to the nearest true root is at most
    deg * |P(r)/P'(r)| for each approximation r)."""
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(c) for c in reversed(sf)]
        roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
        deg = len(sf) - 1
        der = _deriv(sf)
        out = []
        for r in roots:
            pr = mpmath.polyval(coeffs, r)
            dpr = mpmath.polyval([mpmath.mpf(c) for c in reversed(der)], r)
            rad = deg * abs(pr) / abs(dpr)
            out.append((mpmath.mpc(r), mpmath.mpf(rad)))
        return out


def classify_perron_pisot(num: AlgebraicNumber) -> str:
    """Pisot: algebraic integer above 1 with every other root of the
    squarefree defining part strictly inside the unit circle.  Perron: those
    other roots merely strictly smaller in modulus.  Everything else
    (including non-integer rationals): neither.
    """
    if num.is_rational():
        if num.exact.denominator != 1:
            return NEITHER
        return PISOT if num.exact > 1 else NEITHER
    sf = num._sf
    if abs(sf[-1]) != 1:
        return NEITHER
    lo, hi = num.refine(Fraction(1, 10**12))
    if hi <= 1:
        return NEITHER
    enclosures = _certified_roots(sf)
    conjugates = []
    self_seen = False
    for z, rad in enclosures:
        if not self_seen and abs(z.imag) < rad + 1e-30 and float(lo) - float(rad) <= z.real <= float(hi) + float(rad):
            self_seen = True
            continue
        conjugates.append((z, rad))
    assert self_seen, "the root itself was not matched among the enclosures"
    margin = Fraction(1, 10**6)
    if all(abs(z) + rad < 1 - float(margin) for z, rad in conjugates):
        return PISOT
    if all(abs(z) + rad < float(lo) for z, rad in conjugates):
        return PERRON_NOT_PISOT
    return NEITHER


def conjugate_modulus_margin(num: AlgebraicNumber) -> float:
    """1 minus the largest conjugate modulus (for Pisot margin reporting)."""
    if num.is_rational():
        return 1.0
    enclosures = _certified_roots(num._sf)
    lo, hi = num.refine(Fraction(1, 10**12))
    best = 1.0
    self_seen = False
    for z, rad in enclosures:
        if not self_seen and abs(z.imag) < rad + 1e-30 and float(lo) - float(rad) <= z.real <= float(hi) + float(rad):
            self_seen = True
            continue
        best = min(best, 1 - (abs(z) + rad))
    return float(best)
