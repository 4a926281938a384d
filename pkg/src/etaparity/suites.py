"""Named verification suites behind `etaparity verify` and the acceptance tests.

Each suite re-derives expected values by an independent route where one
exists (digit-statistics formulas against brute-force enumeration, theta
oracles against polynomial expansions, exact dyadic values against prime
scans) and reports one named check per claim.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import density, level9
from .f2series import F2Series, add, mul, power, substitute_qk
from .genforms import c_series, delta_series, eta_product_pnt, f_series
from .hecke import t_op
from .level1 import (GenPoly, code_matrix, dihedral_density, genpoly_pow,
                     genpoly_series, hecke_on_genpoly, is_dihedral_window)

IDENTITY_PRECISION = 1_000_000
PRIME_BOUND = 100_000

THM_B_ZERO_SET = (1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64, 96)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                       for c in self.checks],
        }


def zn(n: int) -> int:
    """The Q(sqrt(-2))-dihedral exponent sequence 3, 11, 43, 171, ..."""
    return (2 * 4**n + 1) // 3


def wn(n: int) -> int:
    """The Q(i)-dihedral exponent sequence 5, 17, 65, 257, ..."""
    return 4**n + 1


def suite_identities(n: int = IDENTITY_PRECISION) -> SuiteResult:
    """Bitwise generator identities at full precision."""
    res = SuiteResult("identities")
    delta = delta_series(n)
    c = c_series(n)
    f = f_series(n)
    res.add("C = delta(q) + delta(q^9)",
            c == add(delta, substitute_qk(delta_series(n // 9 + 1), 9, n)))
    res.add("C^3 = delta(q^3)",
            power(c, 3, n) == substitute_qk(delta_series(n // 3 + 1), 3, n))
    res.add("C = F + F^4", c == add(f, power(f, 4, n)))
    res.add("delta = F + F^4 + F^9 + F^12",
            delta == add(add(f, power(f, 4, n)),
                         add(power(f, 9, n), power(f, 12, n))))
    pnt24 = power(eta_product_pnt(n), 24, n)
    res.add("q * pentagonal_product^24 = delta",
            mul(F2Series.from_support([1], n), pnt24, n) == delta)
    return res


def suite_hecke_grading(n: int = 30_000) -> SuiteResult:
    """T_ell moves graded pieces by multiplication on the index, both levels."""
    res = SuiteResult("hecke-grading")
    for i in (1, 3, 5, 7):
        form = genpoly_series(GenPoly(1, frozenset({i, i + 8})), n)
        for ell in (3, 5, 7):
            image = t_op(form, ell)
            supp = image.support()
            ok = not len(supp) or bool(np.all(supp % 8 == (ell * i) % 8))
            res.add(f"level1 T_{ell} K^{i} -> K^{ell * i % 8}", ok)
    for i in (5, 7, 13):
        form = genpoly_series(genpoly_pow(GenPoly(9, frozenset({1, 4})), i), n)
        for ell in (5, 7, 13):
            image = t_op(form, ell)
            supp = image.support()
            ok = not len(supp) or bool(np.all(supp % 24 == (ell * i) % 24))
            res.add(f"level9 T_{ell} K(9)^{i} -> K(9)^{ell * i % 24}", ok)
    delta7 = genpoly_series(GenPoly(1, frozenset({7})), n)
    for ell in (3, 5, 7, 11, 13):
        res.add(f"a_1(T_{ell} f) = a_{ell}(f) on delta^7",
                t_op(delta7, ell).coeff(1) == delta7.coeff(ell))
    res.add("T_3 T_5 = T_5 T_3 on delta^7",
            t_op(t_op(delta7, 3), 5) == t_op(t_op(delta7, 5), 3))
    return res


def suite_combinatorial(a_max: int = 256) -> SuiteResult:
    """Brute-force hitting-class counts against the digit-statistics closed form."""
    from .cheby import combinatorial_count, digit_stats
    res = SuiteResult("combinatorial")
    bad = []
    for a in range(1, a_max + 1):
        count, _, _ = combinatorial_count(a)
        st = digit_stats(a)
        if count != 1 << (st.z - st.v + 1):
            bad.append(a)
    res.add(f"residue-class count = 2^(z-v+1) for a <= {a_max}",
            not bad, detail=f"failures: {bad}" if bad else "")
    return res


def _indicator_matrix_ok(cm, a: int, b: int) -> bool:
    want = np.zeros_like(cm.entries)
    want[a, b] = 1
    return np.array_equal(cm.entries, want)


def suite_dihedral_code(prime_bound: int = PRIME_BOUND) -> SuiteResult:
    """Adapted-basis codes of the dihedral generator powers, plus the density law."""
    res = SuiteResult("dihedral-code")
    for n in range(1, 5):
        cm = code_matrix(GenPoly(1, frozenset({zn(n)})), 2**n + 1, 3)
        res.add(f"code(delta^{zn(n)}) = indicator({2**n - 1},0)",
                _indicator_matrix_ok(cm, 2**n - 1, 0) and is_dihedral_window(cm))
    for n in range(1, 4):
        cm = code_matrix(GenPoly(1, frozenset({3 * zn(n)})), 2**n + 2, 3)
        res.add(f"code(delta^{3 * zn(n)}) = indicator({2**n},0)",
                _indicator_matrix_ok(cm, 2**n, 0) and is_dihedral_window(cm))
    for n in range(1, 4):
        cm = code_matrix(GenPoly(1, frozenset({wn(n)})), 3, 2**(n - 1) + 2)
        res.add(f"code(delta^{wn(n)}) = indicator(0,{2**(n - 1)})",
                _indicator_matrix_ok(cm, 0, 2**(n - 1)) and is_dihedral_window(cm))
    cm7 = code_matrix(GenPoly(1, frozenset({7})), 4, 4)
    res.add("code(delta^7) is the abelian pattern, not axis-supported",
            _indicator_matrix_ok(cm7, 1, 1) and not is_dihedral_window(cm7))
    # density law against prime scans of the dihedral powers:
    # delta^(z_n) = m(2^n - 1, 0), delta^(3 z_n) = m(2^n, 0),
    # delta^(w_n) = m(0, 2^(n-1)), for n <= 3
    for exponent, a in ((3, 1), (11, 3), (43, 7), (9, 2), (33, 4), (129, 8),
                        (5, 1), (17, 2), (65, 4)):
        series = genpoly_series(GenPoly(1, frozenset({exponent})), prime_bound + 1)
        est = density.odd_coeff_density(series, prime_bound)
        want = dihedral_density(a).value
        res.add(f"empirical density(delta^{exponent}) = {want}",
                abs(est.value - want) <= est.tolerance,
                detail=f"value={est.value:.4f}")
    return res


def suite_level9(n_max: int = 25, kernel_coeffs: int = 30_000,
                 prime_bound: int = PRIME_BOUND) -> SuiteResult:
    res = SuiteResult("level9")
    violations = level9.verify_u2_u3_kernel(n_max, kernel_coeffs)
    res.add(f"U_2, U_3 kill the K(9) basis to n <= {n_max}",
            not violations, detail="; ".join(violations))
    for i in level9.ABELIAN_CLASSES:
        form = level9.abelian_form(i)  # raises if theta and polynomial disagree
        res.add(f"alpha_{i} theta oracle agrees", True)
        bad = level9.verify_abelian_law(i, prime_bound)
        res.add(f"a_ell(alpha_{i}) = [ell = {i} mod 24] to {prime_bound}",
                not bad, detail=f"counterexamples: {bad[:5]}" if bad else "")
        series = genpoly_series(form.genpoly(), prime_bound + 1)
        est = density.odd_coeff_density(series, prime_bound)
        res.add(f"empirical density(alpha_{i}) = 1/8",
                abs(est.value - 0.125) <= 0.02, detail=f"value={est.value:.4f}")
    c_poly = GenPoly(9, frozenset({1, 4}))
    for s in (5, 7, 13):
        cs = genpoly_pow(c_poly, s)
        for ell in (5, 7, 13):
            got = hecke_on_genpoly(cs, ell)
            want = c_poly if ell == s else GenPoly(9, frozenset())
            res.add(f"T_{ell} C^{s} = {'C' if ell == s else '0'}", got == want)
        res.add(f"U_2 C^{s} = 0",
                hecke_on_genpoly(cs, 2) == GenPoly(9, frozenset()))
    return res


def suite_bounds(r_max: int = 48, prime_bound: int = PRIME_BOUND) -> SuiteResult:
    res = SuiteResult("bounds")
    rows = density.verify_bounds(r_max, prime_bound)
    bad = [row for row in rows if not row.ok]
    res.add(f"density respects the 1, 1/2, 1/4 bounds for r <= {r_max}",
            not bad,
            detail="; ".join(f"r={b.r} value={b.value:.4f} limit={b.limit}"
                             for b in bad))
    return res


def suite_thmB(prime_bound: int = PRIME_BOUND) -> SuiteResult:
    """Vanishing classification: zero classes die, everything else is bounded away."""
    res = SuiteResult("thmB")
    for r in THM_B_ZERO_SET:
        low = density.eta_density_direct(r, prime_bound)
        high = density.eta_density_direct(r, 2 * prime_bound)
        res.add(f"D({r}) tail: proportion < 0.01",
                low.value < 0.01, detail=f"{low.value:.5f}")
        res.add(f"D({r}) tail: non-increasing as the bound doubles",
                high.value <= low.value,
                detail=f"{low.value:.5f} -> {high.value:.5f}")
    for r in range(1, 65):
        covered = 32 % r == 0 or r % 32 == 0 or 48 % r == 0 or r % 48 == 0
        if covered:
            continue
        est = density.eta_density_direct(r, prime_bound)
        res.add(f"D({r}) > 0.05 (not a zero class)", est.value > 0.05,
                detail=f"{est.value:.4f}")
    return res


def _thmD_cases() -> list[tuple[int, float]]:
    """(r, expected) pairs with expectations re-derived from digit statistics."""
    dd = lambda a: dihedral_density(a).value
    cases = []
    for n in range(1, 5):
        for a in (3, 6):
            cases.append((a * zn(n), dd(2**n - 1) + dd(2**n - 2)))
        for a in (12, 24):
            cases.append((a * zn(n), dd(2**n - 1)))
    for n in range(1, 4):
        for a in (3, 6):
            cases.append((a * 3 * zn(n), dd(2**n) + dd(2**n - 1)))
        for a in (12, 24):
            cases.append((a * 3 * zn(n), dd(2**n)))
        cases.append((3 * wn(n), dd(2**(n - 1)) + dd(2**(n - 1) - 1)))
        cases.append((6 * wn(n), dd(2**(n - 1))))
    return cases


def suite_thmD(prime_bound: int = PRIME_BOUND) -> SuiteResult:
    res = SuiteResult("thmD")
    for r, expected in _thmD_cases():
        exact = density.eta_density_exact(r)
        res.add(f"exact D({r}) = {expected}",
                exact is not None and exact.value == expected,
                detail=f"exact={exact}")
        est = density.eta_density_direct(r, prime_bound)
        res.add(f"empirical D({r}) matches",
                abs(est.value - expected) <= est.tolerance,
                detail=f"value={est.value:.4f}")
    return res


ABELIAN_EIGHTHS = (5, 7, 10, 13, 14, 20, 26, 28, 40, 52, 56, 104)
ABELIAN_MULTIPLES = tuple(a * s for a in (3, 6, 12, 24) for s in (7, 19, 21))


def suite_abelian(prime_bound: int = PRIME_BOUND) -> SuiteResult:
    res = SuiteResult("abelian")
    for r in ABELIAN_EIGHTHS:
        exact = density.eta_density_exact(r)
        res.add(f"exact D({r}) = 1/8",
                exact is not None and exact.value == 0.125)
        est = density.eta_density_direct(r, prime_bound)
        res.add(f"empirical D({r}) matches",
                abs(est.value - 0.125) <= est.tolerance,
                detail=f"value={est.value:.4f}")
    for r in ABELIAN_MULTIPLES:
        exact = density.eta_density_exact(r)
        res.add(f"exact D({r}) known", exact is not None, detail=str(exact))
        est = density.eta_density_direct(r, prime_bound)
        res.add(f"empirical D({r}) matches exact",
                exact is not None and abs(est.value - exact.value) <= est.tolerance,
                detail=f"value={est.value:.4f} exact={exact}")
    return res


SUITES = {
    "identities": suite_identities,
    "hecke-grading": suite_hecke_grading,
    "combinatorial": suite_combinatorial,
    "dihedral-code": suite_dihedral_code,
    "level9": suite_level9,
    "bounds": suite_bounds,
    "thmB": suite_thmB,
    "thmD": suite_thmD,
    "abelian": suite_abelian,
}


def run_suite(name: str, **kwargs) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](**kwargs)
