"""Hecke operators T_p, U_p, V_d on q-expansions and eigenform checks.

The weight and Nebentypus enter T_p through the p^(k-1) chi(p) term and
cannot be read off a bare q-expansion, so they travel in an explicit
context object.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeff import ONE, QuadRat, is_prime
from .ntheory import DirichletChar
from .series import QSeries


class NotNormalized(ValueError):
    """Eigenform check requires leading coefficient a(1) = 1."""


class NotEigen(ValueError):
    """The series is not an eigenvector of the requested Hecke operator."""

    def __init__(self, exponent: int, expected: QuadRat, actual: QuadRat):
        self.exponent = exponent
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"T_p eigenvalue fails at exponent {exponent}: expected {expected}, got {actual}"
        )


@dataclass(frozen=True)
class HeckeContext:
    """Weight and Nebentypus of the space the operator acts on."""

    k: int
    chi: DirichletChar

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("weight must be at least 1")


def hecke_T(f: QSeries, p: int, ctx: HeckeContext) -> QSeries:
    """(f | T_p)(n) = a(pn) + chi(p) p^(k-1) a(n/p); precision ceil(prec / p)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    out_prec = -(-f.prec // p)
    factor = ctx.chi(p) * p ** (ctx.k - 1)
    cs = []
    for n in range(out_prec):
        c = f.coeffs[p * n]
        if factor and n % p == 0:
            c = c + f.coeffs[n // p] * factor
        cs.append(c)
    return QSeries(tuple(cs), prec=out_prec, d=f.d)


def hecke_U(f: QSeries, p: int) -> QSeries:
    """U_p, alias of coefficient extraction at multiples of p."""
    return f.pick(p)


def hecke_V(f: QSeries, d: int) -> QSeries:
    """V_d, alias of the substitution q -> q^d."""
    return f.expand_scale(d)


def eigen_check(f: QSeries, p: int, ctx: HeckeContext) -> QuadRat:
    """Verify f | T_p = a(p) f up to precision ceil(prec/p); return a(p)."""
    if f.coeff(1) != ONE:
        raise NotNormalized("eigen_check needs a(1) = 1")
    if 2 * p > f.prec:
        raise ValueError(f"precision {f.prec} too small to see a({p})")
    lam = f.coeff(p)
    tf = hecke_T(f, p, ctx)
    for n in range(tf.prec):
        want = lam * f.coeffs[n]
        if tf.coeffs[n] != want:
            raise NotEigen(n, want, tf.coeffs[n])
    return lam
