"""Truncated q-expansions with exact QuadRat coefficients.

A QSeries stores the coefficients of q^0 .. q^(prec-1); every operation
states its output precision and never reads past what it knows.  Products
and unit-inversions route through the integer kernel in qmod.backend:
denominators are cleared to a common lcm, the big-int convolution runs in
the compiled (or pure) kernel, and the lcm is divided back out.
"""

from __future__ import annotations

from math import lcm
from typing import Callable, Iterable, Sequence

from . import backend
from .coeff import (
    ONE,
    ZERO,
    FieldMismatch,
    QuadRat,
    Residue,
)


class PrecisionExceeded(ValueError):
    """A coefficient or comparison beyond the known precision was requested."""


class NonUnitConstantTerm(ValueError):
    """Inversion (or a negative power) of a series with zero constant term."""


def _as_quadrat(x) -> QuadRat:
    if isinstance(x, QuadRat):
        return x
    if isinstance(x, int):
        return QuadRat(x)
    raise TypeError(f"not a coefficient: {x!r}")


class QSeries:
    """A truncated formal power series sum_{n<prec} a(n) q^n over Q(sqrt(d))."""

    __slots__ = ("coeffs", "prec", "d")

    def __init__(self, coeffs: Sequence, prec: int | None = None, d: int | None = None):
        cs = tuple(_as_quadrat(x) for x in coeffs)
        if prec is None:
            prec = len(cs)
        if prec < 1:
            raise ValueError("precision must be positive")
        if len(cs) < prec:
            cs = cs + (ZERO,) * (prec - len(cs))
        elif len(cs) > prec:
            cs = cs[:prec]
        tags = {c.d for c in cs if c.d != 1}
        if len(tags) > 1:
            raise FieldMismatch(f"coefficients from several fields: {sorted(tags)}")
        inferred = tags.pop() if tags else 1
        if d is None:
            d = inferred
        elif inferred != 1 and d != inferred:
            raise FieldMismatch(f"series tagged d={d} has coefficients in sqrt({inferred})")
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, prec: int, d: int = 1) -> QSeries:
        return cls((), prec=prec, d=d)

    @classmethod
    def one(cls, prec: int, d: int = 1) -> QSeries:
        return cls((ONE,), prec=prec, d=d)

    @classmethod
    def from_ints(cls, ints: Iterable[int], prec: int | None = None) -> QSeries:
        return cls(tuple(QuadRat(v) for v in ints), prec=prec)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int]], prec: int) -> QSeries:
        """Sparse construction from (exponent, integer coefficient) pairs."""
        cs = [0] * prec
        for n, v in terms:
            if 0 <= n < prec:
                cs[n] += v
        return cls.from_ints(cs, prec)

    # -- access -------------------------------------------------------------

    def coeff(self, n: int) -> QuadRat:
        if not 0 <= n < self.prec:
            raise PrecisionExceeded(f"coefficient {n} of a series known up to O(q^{self.prec})")
        return self.coeffs[n]

    def eq_upto(self, other: QSeries, p: int) -> bool:
        if p > self.prec or p > other.prec:
            raise PrecisionExceeded(
                f"comparison up to {p} exceeds precision min({self.prec}, {other.prec})"
            )
        return self.coeffs[:p] == other.coeffs[:p]

    def truncate(self, p: int) -> QSeries:
        if p > self.prec:
            raise PrecisionExceeded(f"cannot extend precision {self.prec} to {p}")
        return QSeries(self.coeffs[:p], prec=p, d=self.d)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def _join(self, other: QSeries) -> int:
        if self.d == other.d:
            return self.d
        if self.d == 1:
            return other.d
        if other.d == 1:
            return self.d
        raise FieldMismatch(f"cannot mix series over sqrt({self.d}) and sqrt({other.d})")

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> QSeries:
        if isinstance(other, (int, QuadRat)):
            other = QSeries((_as_quadrat(other),), prec=self.prec)
        d = self._join(other)
        p = min(self.prec, other.prec)
        return QSeries(
            tuple(self.coeffs[n] + other.coeffs[n] for n in range(p)), prec=p, d=d
        )

    __radd__ = __add__

    def __neg__(self) -> QSeries:
        return QSeries(tuple(-c for c in self.coeffs), prec=self.prec, d=self.d)

    def __sub__(self, other) -> QSeries:
        if isinstance(other, (int, QuadRat)):
            other = QSeries((_as_quadrat(other),), prec=self.prec)
        return self + (-other)

    def __rsub__(self, other) -> QSeries:
        return (-self) + other

    def scale(self, s) -> QSeries:
        """Multiply every coefficient by a scalar."""
        s = _as_quadrat(s)
        d = self.d if s.d == 1 else QSeries((s,))._join(self)
        return QSeries(tuple(s * c for c in self.coeffs), prec=self.prec, d=d)

    def _int_profile(self, p: int) -> tuple[list[int], list[int] | None, int]:
        """Clear denominators: returns (A, B, L) with coeff n = (A[n] + B[n] sqrt(d)) / L."""
        den = 1
        for c in self.coeffs[:p]:
            den = lcm(den, c.c)
        a = [c.a * (den // c.c) for c in self.coeffs[:p]]
        if self.d == 1:
            return a, None, den
        b = [c.b * (den // c.c) for c in self.coeffs[:p]]
        return a, b, den

    def __mul__(self, other) -> QSeries:
        if isinstance(other, (int, QuadRat)):
            return self.scale(other)
        d = self._join(other)
        p = min(self.prec, other.prec)
        a1, b1, l1 = self._int_profile(p)
        a2, b2, l2 = other._int_profile(p)
        ca = backend.convolve(a1, a2, p)
        if b1 is None and b2 is None:
            den = l1 * l2
            return QSeries(tuple(QuadRat(ca[n], 0, den, 1) for n in range(p)), prec=p, d=d)
        if b1 is None:
            b1 = [0] * p
        if b2 is None:
            b2 = [0] * p
        bb = backend.convolve(b1, b2, p)
        cb1 = backend.convolve(a1, b2, p)
        cb2 = backend.convolve(b1, a2, p)
        den = l1 * l2
        return QSeries(
            tuple(
                QuadRat(ca[n] + d * bb[n], cb1[n] + cb2[n], den, d) for n in range(p)
            ),
            prec=p,
            d=d,
        )

    __rmul__ = __mul__

    def inverse(self) -> QSeries:
        """Multiplicative inverse up to the same precision."""
        f0 = self.coeffs[0]
        if f0.is_zero():
            raise NonUnitConstantTerm("constant term is zero")
        p = self.prec
        if self.d == 1:
            a, _, den = self._int_profile(p)
            if den == 1 and a[0] in (1, -1):
                g = backend.invert_unit(a, p)
                return QSeries(tuple(QuadRat(v) for v in g), prec=p, d=1)
        inv0 = f0.inverse()
        nz = [(k, self.coeffs[k]) for k in range(1, p) if not self.coeffs[k].is_zero()]
        g: list[QuadRat] = [inv0]
        for n in range(1, p):
            s = ZERO
            for k, fk in nz:
                if k > n:
                    break
                s = s + fk * g[n - k]
            g.append(-(inv0 * s) if not s.is_zero() else ZERO)
        return QSeries(tuple(g), prec=p, d=self.d)

    def __pow__(self, e: int) -> QSeries:
        if not isinstance(e, int):
            raise TypeError("exponent must be an integer")
        if e == 0:
            return QSeries.one(self.prec, self.d)
        base = self if e > 0 else self.inverse()
        e = abs(e)
        result = None
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result  # type: ignore[return-value]

    def __truediv__(self, other) -> QSeries:
        if isinstance(other, (int, QuadRat)):
            return self.scale(_as_quadrat(other).inverse())
        return self * other.inverse()

    # -- index manipulation -------------------------------------------------

    def shift(self, s: int) -> QSeries:
        """Multiply by q^s; precision grows to prec + s."""
        if s < 0:
            raise ValueError("shift must be nonnegative")
        return QSeries((ZERO,) * s + self.coeffs, prec=self.prec + s, d=self.d)

    def expand_scale(self, t: int) -> QSeries:
        """The V_t substitution q -> q^t; precision becomes t * prec."""
        if t < 1:
            raise ValueError("scale must be positive")
        cs = [ZERO] * (t * self.prec)
        for n, c in enumerate(self.coeffs):
            cs[t * n] = c
        return QSeries(tuple(cs), prec=t * self.prec, d=self.d)

    def pick(self, t: int) -> QSeries:
        """The U_t operator: coefficient n of the result is a(t*n)."""
        if t < 1:
            raise ValueError("scale must be positive")
        p = -(-self.prec // t)
        return QSeries(tuple(self.coeffs[t * n] for n in range(p)), prec=p, d=self.d)

    def sieve(self, r: int, t: int) -> QSeries:
        """Keep coefficients with exponent congruent to r mod t."""
        if not 0 <= r < t:
            raise ValueError(f"residue {r} out of range mod {t}")
        return QSeries(
            tuple(c if n % t == r else ZERO for n, c in enumerate(self.coeffs)),
            prec=self.prec,
            d=self.d,
        )

    def twist(self, chi: Callable[[int], int]) -> QSeries:
        """Coefficient-wise twist a(n) -> chi(n) a(n) by a character."""
        return QSeries(
            tuple(c * chi(n) for n, c in enumerate(self.coeffs)), prec=self.prec, d=self.d
        )

    def conj(self) -> QSeries:
        """Apply the quadratic conjugation to every coefficient."""
        return QSeries(tuple(c.conj() for c in self.coeffs), prec=self.prec, d=self.d)

    def reduce_mod(self, ell: int) -> list[Residue]:
        """Element-wise reduction mod ell; reports the offending exponent on failure."""
        out = []
        for n, c in enumerate(self.coeffs):
            try:
                out.append(c.reduce_mod(ell))
            except (ValueError, ZeroDivisionError) as exc:
                raise type(exc)(f"at exponent {n}: {exc}") from None
        return out

    # -- comparison / rendering --------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.prec == other.prec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.prec))

    def __str__(self) -> str:
        terms = []
        for n, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = str(c)
            if ("+" in cs[1:]) or ("-" in cs[1:]) or "/" in cs:
                cs = f"({cs})"
            if n == 0:
                terms.append(cs)
            else:
                qpart = "q" if n == 1 else f"q^{n}"
                if cs == "1":
                    terms.append(qpart)
                elif cs == "-1":
                    terms.append(f"-{qpart}")
                else:
                    terms.append(f"{cs}*{qpart}")
        if not terms:
            return f"0 + O(q^{self.prec})"
        body = terms[0]
        for t in terms[1:]:
            body += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return f"{body} + O(q^{self.prec})"

    def __repr__(self) -> str:
        return f"<QSeries d={self.d} {self}>"

    def to_json(self) -> dict:
        return {
            "prec": self.prec,
            "d": self.d,
            "coeffs": [str(c) for c in self.coeffs],
        }
