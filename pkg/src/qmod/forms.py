"""Constructors for theta series, eta quotients and the named-form catalog.

Eta products expand through Euler's pentagonal number theorem, so each
factor prod (1 - q^(delta n)) lands directly as a sparse integer series;
denominator factors are combined first and inverted once.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .coeff import QuadRat
from .hecke import HeckeContext, hecke_T
from .ntheory import CHI_M1, DirichletChar, divisors
from .series import QSeries


class NonIntegralPrefactor(ValueError):
    """The aggregated q^(sum delta*r / 24) prefactor is not an integer power."""


class NegativePrefactor(ValueError):
    """The aggregated prefactor exponent is negative (a Laurent series)."""


def theta_classical(a: int, P: int) -> QSeries:
    """Theta(a z) = sum_{n in Z} q^(a n^2), truncated at precision P."""
    if a < 1:
        raise ValueError("scale must be positive")
    terms = [(0, 1)]
    n = 1
    while a * n * n < P:
        terms.append((a * n * n, 2))
        n += 1
    return QSeries.from_terms(terms, P)


def theta_shimura(a: int, i: int, r: int, t: int, P: int) -> QSeries:
    """sum over all integers n = r (mod t) of n^i q^(a n^2), truncated at P.

    The sum runs over the full congruence class in Z, so for i = 1 the
    classes r and t - r do not cancel each other.
    """
    if a < 1:
        raise ValueError("scale must be positive")
    if i not in (0, 1):
        raise ValueError("i must be 0 or 1")
    if not 0 <= r < t:
        raise ValueError(f"residue {r} out of range mod {t}")
    terms = []
    n = r
    while a * n * n < P:
        terms.append((a * n * n, n**i))
        n += t
    n = r - t
    while a * n * n < P:
        terms.append((a * n * n, n**i))
        n -= t
    return QSeries.from_terms(terms, P)


def _euler_product(delta: int, P: int) -> QSeries:
    """prod_{n>=1} (1 - q^(delta n)) via the pentagonal number theorem."""
    terms = [(0, 1)]
    k = 1
    while True:
        e1 = delta * k * (3 * k - 1) // 2
        e2 = delta * k * (3 * k + 1) // 2
        if e1 >= P and e2 >= P:
            break
        sign = -1 if k % 2 else 1
        terms.append((e1, sign))
        terms.append((e2, sign))
        k += 1
    return QSeries.from_terms(terms, P)


@dataclass(frozen=True)
class EtaQuotientSpec:
    """Exponent list of an eta quotient prod eta(delta z)^r."""

    factors: tuple[tuple[int, int], ...]

    def __init__(self, factors):
        merged: dict[int, int] = {}
        for delta, r in factors:
            if delta < 1:
                raise ValueError(f"eta scale must be positive, got {delta}")
            merged[delta] = merged.get(delta, 0) + r
        normalized = tuple(sorted((d, r) for d, r in merged.items() if r != 0))
        object.__setattr__(self, "factors", normalized)

    def prefactor_numerator(self) -> int:
        """24 times the q-power prefactor, i.e. sum delta * r."""
        return sum(d * r for d, r in self.factors)


def eta_quotient(spec: EtaQuotientSpec, P: int) -> QSeries:
    if P < 1:
        raise ValueError("precision must be positive")
    s24 = spec.prefactor_numerator()
    if s24 % 24:
        raise NonIntegralPrefactor(f"prefactor exponent {s24}/24 is not an integer")
    s = s24 // 24
    if s < 0:
        raise NegativePrefactor(f"prefactor exponent {s} is negative")
    if s >= P:
        return QSeries.zero(P)
    body_prec = P - s
    num = QSeries.one(body_prec)
    den = None
    for delta, r in spec.factors:
        part = _euler_product(delta, body_prec) ** abs(r)
        if r > 0:
            num = num * part
        else:
            den = part if den is None else den * part
    body = num if den is None else num * den.inverse()
    return body.shift(s)


def eisenstein_divisor_series(
    k: int,
    chi1: DirichletChar,
    chi2: DirichletChar,
    P: int,
    omit_multiples_of: int | None = None,
) -> QSeries:
    """sum_{N>=1} (sum_{d|N} chi1(N/d) chi2(d) d^k) q^N, constant term 0.

    `omit_multiples_of = 4` drops divisors divisible by 4, which turns the
    weight-1 trivial/trivial case into the Theta^4 divisor sum.
    """
    if P < 1:
        raise ValueError("precision must be positive")
    cs = [0] * P
    for n in range(1, P):
        total = 0
        for d in divisors(n):
            if omit_multiples_of and d % omit_multiples_of == 0:
                continue
            total += chi1(n // d) * chi2(d) * d**k
        cs[n] = total
    return QSeries.from_ints(cs, P)


class FormName(Enum):
    """Stable public names for the catalog of explicitly constructed forms."""

    THETA = "THETA"
    G1 = "G1"
    G2 = "G2"
    F_EX1 = "F_EX1"
    FSTAR_EX1 = "FSTAR_EX1"
    DELTA = "DELTA"
    G_13_2 = "G_13_2"
    F_EX2 = "F_EX2"
    B1_EX2 = "B1_EX2"
    B2_EX2 = "B2_EX2"
    F_EX3 = "F_EX3"
    B1_EX3 = "B1_EX3"
    B2_EX3 = "B2_EX3"
    ETA4_32_OVER_8 = "ETA4_32_OVER_8"
    THETA4_EIS = "THETA4_EIS"


def _eta(P: int, *factors: tuple[int, int]) -> QSeries:
    return eta_quotient(EtaQuotientSpec(factors), P)


def _weight_13_half(P: int) -> QSeries:
    th = theta_classical(1, P)
    t1 = th**9 * _eta(P, (4, 8), (2, -4))
    t2 = th**5 * _eta(P, (4, 16), (2, -8))
    t3 = th * _eta(P, (4, 24), (2, -12))
    return t1 - t2.scale(18) + t3.scale(32)


@lru_cache(maxsize=None)
def named_form(name: FormName, P: int) -> QSeries:
    """The q-expansion of a catalog form, exact to precision P."""
    if P < 1:
        raise ValueError("precision must be positive")
    if name is FormName.THETA:
        return theta_classical(1, P)
    if name is FormName.G1:
        return _eta(P, (8, 1), (16, 1)) * theta_classical(2, P)
    if name is FormName.G2:
        return _eta(P, (8, 1), (16, 1)) * theta_classical(4, P)
    if name is FormName.F_EX1:
        return named_form(FormName.G1, P) * theta_classical(4, P)
    if name is FormName.FSTAR_EX1:
        f = named_form(FormName.F_EX1, P)
        return f - f.sieve(7, 8).scale(2)
    if name is FormName.DELTA:
        return _eta(P, (1, 24))
    if name is FormName.G_13_2:
        return _weight_13_half(P)
    if name is FormName.F_EX2:
        return named_form(FormName.G_13_2, P) * theta_classical(1, P)
    if name is FormName.B1_EX2:
        f = named_form(FormName.F_EX2, 2 * P)
        s1 = QuadRat(15, -1, 15, -15)  # 1 - sqrt(-15)/15
        s2 = QuadRat(0, 1, 30, -15)  # sqrt(-15)/30
        return f.truncate(P).scale(s1) + f.pick(2).scale(s2)
    if name is FormName.B2_EX2:
        return named_form(FormName.B1_EX2, P).conj()
    if name is FormName.F_EX3:
        return _eta(P, (16, 4), (4, 2))
    if name is FormName.B1_EX3:
        f = named_form(FormName.F_EX3, 3 * P)
        tf = hecke_T(f, 3, HeckeContext(k=3, chi=CHI_M1))
        return tf + f.truncate(P).scale(QuadRat(0, -4, 1, -1))
    if name is FormName.B2_EX3:
        return named_form(FormName.B1_EX3, P).conj()
    if name is FormName.ETA4_32_OVER_8:
        return _eta(P, (32, 4), (8, -1))
    if name is FormName.THETA4_EIS:
        triv = DirichletChar.trivial(1)
        e = eisenstein_divisor_series(1, triv, triv, P, omit_multiples_of=4)
        return e.scale(8) + QSeries.one(P)
    raise ValueError(f"unknown form {name!r}")
