"""Polynomial models of the mod-2 form algebras and the adapted-basis codes.

Level-1 forms are GF(2) polynomials in the generator delta; level-9 forms
are polynomials in F.  A ``GenPoly`` stores the exponent set.  The Hecke
action is computed by expanding to a q-series at just enough precision,
applying the operator, and greedily re-expressing in generator powers
(the generator power g^e has leading term q^e, so the lowest surviving
exponent of the residual identifies the next monomial).

The adapted basis m(a,b) dual to monomials in (T_3, T_5) is never
materialized as q-series: duality makes a form's coordinates directly
computable as code entries c(a,b) = a_1(T_3^a T_5^b f), with a_1 of a
generator polynomial read off as membership of exponent 1.  Dihedral
basis forms m(a,0), m(0,a) have density 2^-(u(a)+v(a)+1) in the primes,
from the binary digit statistics of a.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from . import cheby
from .f2series import F2Series, _mask_tail, _nwords, power
from .genforms import delta_series, f_series
from .hecke import is_prime, t_op, u_op

LEVELS = (1, 9)


@dataclass(frozen=True)
class GenPoly:
    """A form written in the generator of its level: sum of g^e over `exponents`."""

    level: int
    exponents: frozenset[int]

    def __post_init__(self):
        if self.level not in LEVELS:
            raise ValueError(f"level must be one of {LEVELS}")
        if any(e < 0 for e in self.exponents):
            raise ValueError("exponents must be nonnegative")
        if not isinstance(self.exponents, frozenset):
            object.__setattr__(self, "exponents", frozenset(self.exponents))

    @property
    def degree(self) -> int:
        """Largest exponent, or -1 for the zero polynomial."""
        return max(self.exponents, default=-1)

    def is_zero(self) -> bool:
        return not self.exponents

    def mask(self) -> int:
        """The exponent set packed as an integer (bit e = coefficient of g^e)."""
        m = 0
        for e in self.exponents:
            m |= 1 << e
        return m

    @classmethod
    def from_mask(cls, level: int, mask: int) -> "GenPoly":
        exps = []
        e = 0
        while mask:
            if mask & 1:
                exps.append(e)
            mask >>= 1
            e += 1
        return cls(level, frozenset(exps))

    def __repr__(self) -> str:
        gen = "delta" if self.level == 1 else "F"
        return f"GenPoly({gen}: {sorted(self.exponents)})"


def clmul(a: int, b: int) -> int:
    """Carryless product of GF(2) polynomials packed in integers."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def genpoly_mul(p: GenPoly, q: GenPoly) -> GenPoly:
    if p.level != q.level:
        raise ValueError("mixed levels")
    return GenPoly.from_mask(p.level, clmul(p.mask(), q.mask()))


def genpoly_pow(p: GenPoly, e: int) -> GenPoly:
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    acc = 1
    m = p.mask()
    for bit in bin(e)[2:]:
        acc = clmul(acc, acc)
        if bit == "1":
            acc = clmul(acc, m)
    return GenPoly.from_mask(p.level, acc)


class _PowerCache:
    """Generator powers g^e per level, recomputed lazily as precision grows."""

    def __init__(self):
        self._lock = threading.Lock()
        self._state: dict[int, tuple[int, dict[int, F2Series]]] = {}

    def get(self, level: int, e: int, n: int) -> F2Series:
        base_fn = delta_series if level == 1 else f_series
        with self._lock:
            prec, cache = self._state.get(level, (0, {}))
            if prec < n:
                prec, cache = max(n, 2 * prec), {}
                self._state[level] = (prec, cache)
            got = cache.get(e)
            if got is None:
                if e == 0:
                    got = F2Series.one(prec)
                else:
                    got = power(base_fn(prec), e, prec)
                cache[e] = got
        return got.truncate(n) if got.valid_len > n else got


_powers = _PowerCache()


def generator_power(level: int, e: int, n: int) -> F2Series:
    """g^e to n coefficients, g the level's generator; cached across calls."""
    if e < 0 or n < 1:
        raise ValueError("need e >= 0 and n >= 1")
    return _powers.get(level, e, n)


def genpoly_series(p: GenPoly, n: int) -> F2Series:
    """Expand a generator polynomial to its first n coefficients."""
    acc = np.zeros(_nwords(n), dtype=np.uint64)
    for e in p.exponents:
        acc ^= generator_power(p.level, e, n).words
    _mask_tail(acc, n)
    return F2Series(acc, n)


def to_genpoly(f: F2Series, level: int, max_degree: int) -> GenPoly:
    """Re-express a series as a generator polynomial of degree <= max_degree.

    Greedy elimination by lowest-order term: g^e starts at q^e, so the
    lowest nonzero index of the residual is the next exponent.  Fails with
    a diagnostic when the residual is nonzero below valid_len but its
    lowest index exceeds max_degree (the input is not in the algebra at
    this degree and precision).
    """
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    if f.valid_len <= max_degree:
        raise ValueError("series too short to re-express to this degree")
    residual = f.words.copy()
    n = f.valid_len
    exponents = []
    while True:
        nz = np.nonzero(residual)[0]
        if not len(nz):
            return GenPoly(level, frozenset(exponents))
        w = int(nz[0])
        low = int(residual[w])
        e = (w << 6) + (low & -low).bit_length() - 1
        if e > max_degree:
            raise ValueError(
                f"not a generator polynomial of degree <= {max_degree} at this "
                f"precision: residual starts at q^{e}")
        exponents.append(e)
        residual ^= generator_power(level, e, n).words


def hecke_on_genpoly(p: GenPoly, ell: int) -> GenPoly:
    """Apply T_ell (or U_2 at level 9) to a generator polynomial.

    Expands to ell*(bound+1) coefficients, applies the series operator,
    and re-expresses.  T_ell never raises the generator degree; a
    violation of that bound is a hard error from to_genpoly.  U_2 at
    level 9 can raise low degrees (U_2 F = F^2), bounded by (deg+3)/2.
    """
    if p.is_zero():
        return p
    deg = p.degree
    if ell == 2:
        if p.level != 9:
            raise ValueError("U_2 on polynomials is a level-9 operation")
        bound = max(deg, (deg + 3) // 2)
        series = genpoly_series(p, 2 * (bound + 1))
        image = u_op(series, 2)
    else:
        if p.level == 9 and ell == 3:
            raise ValueError("T_3 is not in the level-9 Hecke algebra")
        if not is_prime(ell) or ell == 2:
            raise ValueError(f"invalid Hecke index {ell}")
        bound = deg
        series = genpoly_series(p, ell * (bound + 1))
        image = t_op(series, ell)
    return to_genpoly(image, p.level, bound)


@dataclass(frozen=True)
class CodeMatrix:
    """Window of dual coordinates c(a,b) = a_1(T_3^a T_5^b f) of a level-1 form."""

    entries: np.ndarray
    origin: str

    def __eq__(self, other):
        if not isinstance(other, CodeMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    __hash__ = None


def code_matrix(p: GenPoly, a_max: int = 8, b_max: int = 8) -> CodeMatrix:
    """Coordinates of f in the basis adapted to (T_3, T_5), on an a_max x b_max window.

    Requires all exponents odd (the form must avoid the square subalgebra;
    only there is the duality pairing with the shallow Hecke algebra
    perfect).
    """
    if p.level != 1:
        raise ValueError("code matrices are a level-1 construction")
    if any(e % 2 == 0 for e in p.exponents):
        raise ValueError("form has an even generator exponent")
    if a_max < 1 or b_max < 1:
        raise ValueError("window must be at least 1x1")
    entries = np.zeros((a_max, b_max), dtype=np.uint8)
    row = p
    for a in range(a_max):
        col = row
        for b in range(b_max):
            entries[a, b] = 1 in col.exponents
            if b + 1 < b_max:
                col = hecke_on_genpoly(col, 5)
        if a + 1 < a_max:
            row = hecke_on_genpoly(row, 3)
    return CodeMatrix(entries, origin=repr(p))


def is_dihedral_window(c: CodeMatrix) -> bool:
    """True when the window is supported on the two axes (advisory, not a proof)."""
    return not c.entries[1:, 1:].any()


@dataclass(frozen=True)
class DyadicRational:
    """Exact a/2^k in lowest terms (numerator odd or zero)."""

    numerator: int
    log_denominator: int

    def __post_init__(self):
        if self.numerator < 0 or self.log_denominator < 0:
            raise ValueError("dyadic rationals here are nonnegative")
        num, log = self.numerator, self.log_denominator
        while num and num % 2 == 0 and log > 0:
            num //= 2
            log -= 1
        if num == 0:
            log = 0
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "log_denominator", log)

    @property
    def value(self) -> float:
        return self.numerator / (1 << self.log_denominator)

    @classmethod
    def nearest(cls, x: float, max_log_denominator: int = 6) -> "DyadicRational":
        """Closest a/2^k with k <= max_log_denominator (ties round up)."""
        scale = 1 << max_log_denominator
        k = int(np.floor(x * scale + 0.5))
        k = min(max(k, 0), scale)
        return cls(k, max_log_denominator)

    def __str__(self) -> str:
        if self.log_denominator == 0:
            return str(self.numerator)
        return f"{self.numerator}/{1 << self.log_denominator}"


def dihedral_density(a: int) -> DyadicRational:
    """Density of odd prime coefficients for the axis basis forms m(a,0), m(0,a).

    Value 2^-(u(a)+v(a)+1); a = 0 gives the generator itself, whose prime
    coefficients have density zero (v(0) infinite).
    """
    if a < 0:
        raise ValueError("a must be nonnegative")
    if a == 0:
        return DyadicRational(0, 0)
    stats = cheby.digit_stats(a)
    return DyadicRational(1, stats.u + stats.v + 1)
