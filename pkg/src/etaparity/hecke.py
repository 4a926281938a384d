"""Hecke operators U_ell, V_ell, T_ell on truncated GF(2) q-expansions.

Mod 2 with ell odd, ell^(k-1) = 1, so T_ell = U_ell + V_ell independent of
the weight; no weight parameter appears anywhere.  Precision is the
caller's burden: U and T divide the valid length by ell and never fetch
more coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

from .f2series import F2Series, add, substitute_qk


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class HeckeOpSpec:
    """One of the operators T, U, V at a given index (index >= 2)."""

    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in ("T", "U", "V"):
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.index < 2:
            raise ValueError("operator index must be >= 2")


def u_op(f: F2Series, ell: int) -> F2Series:
    """Coefficient extraction: a_n(result) = a_{ell*n}(f); valid_len = floor(valid/ell)."""
    if ell < 2:
        raise ValueError("U index must be >= 2")
    n = f.valid_len // ell
    return F2Series.from_bits(f.bits()[::ell][:n], n)


def v_op(f: F2Series, ell: int, n_out: int | None = None) -> F2Series:
    """Exponent dilation f(q) -> f(q^ell); valid_len grows by ell, capped at n_out."""
    return substitute_qk(f, ell, n_out)


def t_op(f: F2Series, ell: int) -> F2Series:
    """T_ell = U_ell + V_ell for odd prime ell; valid_len = floor(valid/ell).

    T_2 is not in the shallow Hecke algebra: callers wanting the 2-adic
    shift must use u_op.
    """
    if ell == 2:
        raise ValueError("T_2 is not available; use u_op for the U_2 shift")
    if not is_prime(ell):
        raise ValueError(f"T index must be an odd prime, got {ell}")
    if f.valid_len < ell:
        raise ValueError("series too short for this Hecke index")
    n = f.valid_len // ell
    return add(u_op(f, ell), v_op(f, ell, n))
