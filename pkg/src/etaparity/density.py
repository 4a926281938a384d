"""Density experiments: prime scans, coefficient densities, and eta-power parity.

Two empirical routes to the eta-power parity density, one exact route
where a closed form is proven:

* direct: build P_r to b_r + m_r * prime_bound coefficients and read, for
  each prime ell, the bit at exponent ell * mu(ell, r) — the leading formal
  coefficient of the ell-shifted series;
* by parts: decompose the density as a sum of coefficient densities of Hecke
  shifts of the generator power (the shift indices depend only on m_r),
  each estimated by reading bits at u * ell;
* exact: the vanishing classification (divisors/multiples of 32 or 48),
  the two dihedral families, and the handful of abelian eta powers.

Primes 2 and 3 are excluded from every scan (congruence obstructions).
Estimates carry binomial statistics; acceptance tolerance is
max(0.02, 4 sigma) throughout.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

from .f2series import F2Series
from .genforms import EtaPowerParams, p_r_series
from .hecke import HeckeOpSpec, is_prime
from .level1 import DyadicRational

TOLERANCE_FLOOR = 0.02
SIGMA_FACTOR = 4.0
MAX_LOG_DENOMINATOR = 6


class PrecisionError(ValueError):
    """A scan asked for coefficients beyond a series' valid length."""


class PrimeSieve:
    """Packed primality bits for 0..bound with residue-class iteration."""

    def __init__(self, bound: int):
        if bound < 2:
            bound = 2
        flags = np.ones(bound + 1, dtype=bool)
        flags[:2] = False
        for p in range(2, math.isqrt(bound) + 1):
            if flags[p]:
                flags[p * p::p] = False
        self.bound = bound
        self._packed = np.packbits(flags, bitorder="little")
        self._primes = np.nonzero(flags)[0].astype(np.int64)

    def is_prime(self, n: int) -> bool:
        if not 0 <= n <= self.bound:
            raise ValueError("outside sieve range")
        return bool((self._packed[n >> 3] >> (n & 7)) & 1)

    def primes(self, lo: int = 2, hi: int | None = None) -> np.ndarray:
        hi = self.bound if hi is None else hi
        if hi > self.bound:
            raise ValueError("beyond sieve bound")
        arr = self._primes
        return arr[(arr >= lo) & (arr <= hi)]

    def primes_in_class(self, modulus: int, residue: int,
                        lo: int = 2, hi: int | None = None) -> np.ndarray:
        ps = self.primes(lo, hi)
        return ps[ps % modulus == residue % modulus]


_sieve_lock = threading.Lock()
_sieve: PrimeSieve | None = None


def shared_sieve(bound: int) -> PrimeSieve:
    """Process-wide sieve, regrown geometrically on demand."""
    global _sieve
    with _sieve_lock:
        if _sieve is None or _sieve.bound < bound:
            _sieve = PrimeSieve(max(bound, 2 * (_sieve.bound if _sieve else 0)))
        return _sieve


def prime_array(lo: int, hi: int) -> np.ndarray:
    return shared_sieve(hi).primes(lo, hi)


@dataclass(frozen=True)
class SubseqIndex:
    """The shift data for one prime: ell*mu ≡ b_r (mod m_r) with
    b_r/ell <= mu < b_r/ell + m_r, and delta = (ell*mu - b_r)/m_r."""

    ell: int
    r: int
    mu: int
    delta: int


def mu_delta(ell: int, r: int) -> SubseqIndex:
    """Order at infinity mu and coefficient index delta of the ell-shift of P_r."""
    params = EtaPowerParams.for_power(r)
    if ell in (2, 3) or not is_prime(ell):
        raise ValueError("shift prime must be a prime >= 5")
    if params.m_r % ell == 0:
        raise ValueError("shift prime may not divide the progression modulus")
    m, b = params.m_r, params.b_r
    mu0 = 0 if m == 1 else (b * pow(ell % m, -1, m)) % m
    k = -((mu0 * ell - b) // (ell * m))
    mu = mu0 + m * k
    delta, rem = divmod(ell * mu - b, m)
    assert rem == 0 and delta >= 0 and b <= mu * ell < b + ell * m
    return SubseqIndex(ell, r, mu, delta)


def _mu_array(primes: np.ndarray, m: int, b: int) -> np.ndarray:
    """Vectorized mu over an array of primes not dividing m."""
    if m == 1:
        return -((-b) // primes)  # ceil(b/ell), the lone value in the window
    inv = np.zeros(m, dtype=np.int64)
    for c in range(1, m):
        if math.gcd(c, m) == 1:
            inv[c] = pow(c, -1, m)
    mu0 = (b % m) * inv[primes % m] % m
    k = -((mu0 * primes - b) // (primes * m))
    return mu0 + m * k


@dataclass(frozen=True)
class DensityEstimate:
    """An empirical density with its binomial statistics and dyadic rounding."""

    hits: int
    samples: int
    prime_bound: int
    value: float
    nearest_dyadic: DyadicRational
    residual: float

    @classmethod
    def from_counts(cls, hits: int, samples: int, prime_bound: int) -> "DensityEstimate":
        value = hits / samples if samples else 0.0
        near = DyadicRational.nearest(value, MAX_LOG_DENOMINATOR)
        return cls(hits, samples, prime_bound, value, near, abs(value - near.value))

    @property
    def sigma(self) -> float:
        if self.samples == 0:
            return 0.0
        return math.sqrt(self.value * (1.0 - self.value) / self.samples)

    @property
    def tolerance(self) -> float:
        return max(TOLERANCE_FLOOR, SIGMA_FACTOR * self.sigma)


def _scan_primes(prime_bound: int, progression=None) -> np.ndarray:
    primes = prime_array(5, prime_bound)
    if progression is not None:
        modulus, residue = progression
        primes = primes[primes % modulus == residue % modulus]
    return primes


def odd_coeff_density(f: F2Series, prime_bound: int,
                      progression: tuple[int, int] | None = None) -> DensityEstimate:
    """Proportion of primes 5 <= ell <= prime_bound with a_ell(f) = 1.

    With `progression` = (modulus, residue) the scan is restricted to that
    class; the proportion is then relative to the class.
    """
    if f.valid_len <= prime_bound:
        raise PrecisionError(
            f"series valid to {f.valid_len} cannot be scanned to {prime_bound}")
    primes = _scan_primes(prime_bound, progression)
    hits = int(f.coeffs_at(primes).sum())
    return DensityEstimate.from_counts(hits, len(primes), prime_bound)


def odd_coeff_density_shifted(f: F2Series, p: int, prime_bound: int,
                              progression: tuple[int, int] | None = None) -> DensityEstimate:
    """Density of primes ell with a_{p*ell}(f) = 1.

    For p an odd prime this estimates the coefficient density of T_p f
    without applying the operator (the a_{ell/p} half of T_p vanishes for
    prime ell != p); p = 2 gives the U_2 route.
    """
    if f.valid_len <= p * prime_bound:
        raise PrecisionError(
            f"series valid to {f.valid_len} cannot be scanned to {p}*{prime_bound}")
    primes = _scan_primes(prime_bound, progression)
    hits = int(f.coeffs_at(p * primes).sum())
    return DensityEstimate.from_counts(hits, len(primes), prime_bound)


_pr_lock = threading.Lock()
_pr_cache: dict[int, F2Series] = {}


def eta_power_series(r: int, n: int) -> F2Series:
    """P_r to >= n coefficients, cached at the largest precision seen."""
    with _pr_lock:
        got = _pr_cache.get(r)
    if got is None or got.valid_len < n:
        got = p_r_series(r, n)
        with _pr_lock:
            prev = _pr_cache.get(r)
            if prev is None or prev.valid_len < got.valid_len:
                _pr_cache[r] = got
            else:
                got = prev
    return got


def _direct_precision(r: int, prime_bound: int) -> int:
    params = EtaPowerParams.for_power(r)
    return params.b_r + params.m_r * prime_bound + 1


def eta_density_direct(r: int, prime_bound: int) -> DensityEstimate:
    """The parity density read straight off the eta power: the bit at
    exponent ell*mu for each prime ell."""
    params = EtaPowerParams.for_power(r)
    series = eta_power_series(r, _direct_precision(r, prime_bound))
    primes = _scan_primes(prime_bound)
    nu = primes * _mu_array(primes, params.m_r, params.b_r)
    hits = int(series.coeffs_at(nu).sum())
    return DensityEstimate.from_counts(hits, len(primes), prime_bound)


# Shift indices per progression modulus m_r: as c runs over the units mod
# m_r, the least positive u with u*c ≡ b_r spans exactly these values
# (every unit mod 24 is its own inverse, so the set does not depend on b_r).
_SHIFTS_BY_MODULUS: dict[int, tuple[int, ...]] = {
    1: (1,),
    2: (1,),
    3: (1, 2),
    4: (1, 3),
    6: (1, 5),
    8: (1, 3, 5, 7),
    12: (1, 5, 7, 11),
    24: (1, 5, 7, 11, 13, 17, 19, 23),
}


@dataclass(frozen=True)
class EtaDecomposition:
    """The parity density as a sum of coefficient densities of operator shifts."""

    r: int
    m_r: int
    b_r: int
    generator: str  # "delta" or "C"
    terms: tuple[tuple[HeckeOpSpec | None, str], ...]


def eta_density_decomposition(r: int) -> EtaDecomposition:
    """The operator/form pairs whose coefficient densities sum to the parity density.

    The identity slot is None; odd shifts are T operators, the shift by 2
    (progression modulus 3) is U_2.
    """
    params = EtaPowerParams.for_power(r)
    gen = "delta" if r % 3 == 0 else "C"
    form = f"{gen}^{params.b_r}"
    terms = []
    for u in _SHIFTS_BY_MODULUS[params.m_r]:
        if u == 1:
            terms.append((None, form))
        elif u == 2:
            terms.append((HeckeOpSpec("U", 2), form))
        else:
            terms.append((HeckeOpSpec("T", u), form))
    return EtaDecomposition(r, params.m_r, params.b_r, gen, tuple(terms))


def eta_density_formula(r: int, prime_bound: int) -> DensityEstimate:
    """The parity density summed over its decomposition into shifted scans."""
    decomp = eta_density_decomposition(r)
    series = eta_power_series(r, _direct_precision(r, prime_bound))
    hits = 0
    samples = None
    for op, _ in decomp.terms:
        if op is None:
            est = odd_coeff_density(series, prime_bound)
        else:
            est = odd_coeff_density_shifted(series, op.index, prime_bound)
        hits += est.hits
        samples = est.samples
    return DensityEstimate.from_counts(hits, samples, prime_bound)


def _zn(n: int) -> int:
    return (2 * 4**n + 1) // 3


def _wn(n: int) -> int:
    return 4**n + 1


def _dihedral_exact(r: int) -> DyadicRational | None:
    n = 1
    while True:
        z, w = _zn(n), _wn(n)
        if 3 * z > r:
            return None
        for a in (3, 6, 12, 24):
            if r == a * z:
                if a in (3, 6):
                    return DyadicRational(1, 2) if n == 1 else DyadicRational(1, n)
                return DyadicRational(1, n + 1)
            if r == a * 3 * z:
                if a in (3, 6):
                    return DyadicRational(3, n + 2)
                return DyadicRational(1, n + 2)
            if r == a * w:
                if a == 3:
                    return DyadicRational(1, 2) if n == 1 else DyadicRational(3, n + 1)
                return DyadicRational(1, n + 1)
        n += 1


# Eta powers congruent to abelian forms: r = a*s for a | 8, s in {5, 7, 13}
# all have density 1/8; the multiples of the abelian delta powers
# delta^7, delta^19, delta^21 carry the values below.
_ABELIAN_EXACT: dict[int, DyadicRational] = {
    **{a * s: DyadicRational(1, 3) for a in (1, 2, 4, 8) for s in (5, 7, 13)},
    3 * 7: DyadicRational(5, 3),
    3 * 19: DyadicRational(5, 3),
    3 * 21: DyadicRational(5, 3),
    6 * 7: DyadicRational(3, 3),
    6 * 19: DyadicRational(1, 2),
    6 * 21: DyadicRational(1, 2),
    12 * 7: DyadicRational(1, 3),
    12 * 19: DyadicRational(1, 3),
    12 * 21: DyadicRational(1, 3),
    24 * 7: DyadicRational(1, 3),
    24 * 19: DyadicRational(1, 3),
    24 * 21: DyadicRational(1, 3),
}


def eta_density_exact(r: int) -> DyadicRational | None:
    """Proven value of the parity density at r, or None with no closed form.

    Covers the vanishing classification (r dividing or divisible by 32 or
    48), the two dihedral families, and the abelian eta powers.
    """
    if r < 1:
        raise ValueError("r must be a positive integer")
    if 32 % r == 0 or r % 32 == 0 or 48 % r == 0 or r % 48 == 0:
        return DyadicRational(0, 0)
    dihedral = _dihedral_exact(r)
    if dihedral is not None:
        return dihedral
    return _ABELIAN_EXACT.get(r)


# the only multiples of 4 whose density may reach 1/4 (= 4*{9, 15, 18, 30})
BOUND_EXCEPTIONS = frozenset({36, 60, 72, 120})


@dataclass(frozen=True)
class BoundCheck:
    r: int
    value: float
    sigma: float
    limit: float
    exception: bool
    ok: bool


def verify_bounds(r_max: int, prime_bound: int) -> list[BoundCheck]:
    """Check the density upper bounds empirically for all r <= r_max.

    The density is below 1 always, below 1/2 for even r, and below 1/4
    for r divisible by 4, except the four listed r
    where 1/4 may be attained.  Returns one row per r; a row with
    ok=False is a violation.
    """
    rows = []
    for r in range(1, r_max + 1):
        est = eta_density_direct(r, prime_bound)
        margin = 3.0 * est.sigma
        if r % 4 == 0:
            limit, exception = 0.25, r in BOUND_EXCEPTIONS
        elif r % 2 == 0:
            limit, exception = 0.5, False
        else:
            limit, exception = 1.0, False
        if exception:
            ok = est.value <= limit + margin
        else:
            ok = est.value + margin < limit
        rows.append(BoundCheck(r, est.value, est.sigma, limit, exception, ok))
    return rows


def density_report_row(r: int, prime_bound: int, route: str,
                       est: DensityEstimate) -> dict:
    """One CSV row of the density report (schema fixed; see README)."""
    params = EtaPowerParams.for_power(r)
    exact = eta_density_exact(r)
    return {
        "r": r,
        "m_r": params.m_r,
        "b_r": params.b_r,
        "prime_bound": prime_bound,
        "samples": est.samples,
        "hits": est.hits,
        "value": f"{est.value:.6f}",
        "nearest_dyadic": str(est.nearest_dyadic),
        "residual": f"{est.residual:.6f}",
        "exact": str(exact) if exact is not None else "",
        "route": route,
    }


REPORT_COLUMNS = ("r", "m_r", "b_r", "prime_bound", "samples", "hits",
                  "value", "nearest_dyadic", "residual", "exact", "route")
