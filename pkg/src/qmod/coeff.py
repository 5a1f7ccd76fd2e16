"""Exact coefficient arithmetic: rationals and quadratic irrationals.

A value is (a + b*sqrt(d))/c with big-integer a, b, positive denominator c
and a square-free field tag d.  Rational values normalize to d = 1 and
embed into any quadratic field, so scalars like 18 or 1/30 mix freely with
entries of Q(sqrt(-15)); two *distinct* irrational tags never mix.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt


class FieldMismatch(ValueError):
    """Arithmetic between values of two distinct quadratic fields."""


class DivisionByZero(ZeroDivisionError):
    pass


class IrrationalValue(ValueError):
    """A mod-ell reduction was requested for a value with b != 0."""


class NonInvertibleDenominator(ValueError):
    """The denominator is divisible by the reduction prime."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 1
    return True


class QuadRat:
    """An exact element (a + b*sqrt(d))/c of Q or a quadratic field Q(sqrt(d))."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int = 0, c: int = 1, d: int = 1):
        if c == 0:
            raise DivisionByZero("zero denominator")
        if d == 0 or not _is_squarefree(d):
            raise ValueError(f"field tag must be a nonzero square-free integer, got {d}")
        if d == 1:
            a, b = a + b, 0
        if b == 0:
            d = 1
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(gcd(a, b), c)
        if g > 1:
            a //= g
            b //= g
            c //= g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadRat is immutable")

    @classmethod
    def rational(cls, num: int, den: int = 1) -> QuadRat:
        return cls(num, 0, den)

    @classmethod
    def sqrt(cls, d: int) -> QuadRat:
        """The element sqrt(d); use d = -1 for i."""
        return cls(0, 1, 1, d)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integer(self) -> bool:
        return self.b == 0 and self.c == 1

    def _join(self, other: QuadRat) -> int:
        """Unified field tag; rationals embed, distinct irrationals clash."""
        if self.d == other.d:
            return self.d
        if self.d == 1:
            return other.d
        if other.d == 1:
            return self.d
        raise FieldMismatch(f"cannot mix sqrt({self.d}) with sqrt({other.d})")

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> QuadRat:
        if isinstance(other, QuadRat):
            return other
        if isinstance(other, int):
            return QuadRat(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> QuadRat:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._join(other)
        return QuadRat(
            self.a * other.c + other.a * self.c,
            self.b * other.c + other.b * self.c,
            self.c * other.c,
            d,
        )

    __radd__ = __add__

    def __neg__(self) -> QuadRat:
        return QuadRat(-self.a, -self.b, self.c, self.d)

    def __sub__(self, other) -> QuadRat:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> QuadRat:
        return (-self) + other

    def __mul__(self, other) -> QuadRat:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._join(other)
        return QuadRat(
            self.a * other.a + d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.c * other.c,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadRat:
        if self.is_zero():
            raise DivisionByZero("division by zero")
        # 1 / ((a + b sqrt(d))/c) = c (a - b sqrt(d)) / (a^2 - d b^2)
        norm = self.a * self.a - self.d * self.b * self.b
        if norm == 0:
            raise DivisionByZero("division by zero")
        return QuadRat(self.c * self.a, -self.c * self.b, norm, self.d)

    def __truediv__(self, other) -> QuadRat:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._join(other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> QuadRat:
        return self._coerce(other) / self

    def __pow__(self, e: int) -> QuadRat:
        if not isinstance(e, int):
            raise TypeError("exponent must be an integer")
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = ONE
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> QuadRat:
        """Quadratic conjugate a + b*sqrt(d) -> a - b*sqrt(d); fixes rationals."""
        return QuadRat(self.a, -self.b, self.c, self.d)

    def reduce_mod(self, ell: int) -> Residue:
        """Reduce a rational value to a*c^-1 mod ell (ell an odd prime)."""
        if not is_prime(ell):
            raise ValueError(f"modulus {ell} is not prime")
        if self.b != 0:
            raise IrrationalValue(f"cannot reduce {self} mod {ell}: irrational value")
        if self.c % ell == 0:
            raise NonInvertibleDenominator(f"denominator {self.c} not invertible mod {ell}")
        return Residue(self.a * pow(self.c, -1, ell) % ell, ell)

    # -- comparison / rendering --------------------------------------------

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _sqrt_text(self) -> str:
        return "i" if self.d == -1 else f"sqrt({self.d})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a) if self.c == 1 else f"{self.a}/{self.c}"
        root = self._sqrt_text()
        if self.b == 1:
            irr = root
        elif self.b == -1:
            irr = f"-{root}"
        else:
            irr = f"{self.b}*{root}"
        if self.a == 0:
            num = irr
        elif irr.startswith("-"):
            num = f"{self.a}{irr}"
        else:
            num = f"{self.a}+{irr}"
        if self.c == 1:
            return num
        return f"({num})/{self.c}"

    def __repr__(self) -> str:
        return f"QuadRat({self.a}, {self.b}, {self.c}, {self.d})"


ZERO = QuadRat(0)
ONE = QuadRat(1)


@dataclass(frozen=True)
class Residue:
    """An element of Z/ell for a prime ell."""

    v: int
    ell: int

    def __post_init__(self):
        if not is_prime(self.ell):
            raise ValueError(f"modulus {self.ell} is not prime")
        object.__setattr__(self, "v", self.v % self.ell)

    def _check(self, other: Residue):
        if self.ell != other.ell:
            raise ValueError(f"modulus mismatch: {self.ell} vs {other.ell}")

    def __add__(self, other: Residue) -> Residue:
        self._check(other)
        return Residue(self.v + other.v, self.ell)

    def __sub__(self, other: Residue) -> Residue:
        self._check(other)
        return Residue(self.v - other.v, self.ell)

    def __mul__(self, other: Residue) -> Residue:
        self._check(other)
        return Residue(self.v * other.v, self.ell)

    def __int__(self) -> int:
        return self.v

    def __str__(self) -> str:
        return f"{self.v} (mod {self.ell})"


def sqrt_exact(n: int) -> int | None:
    """Integer square root if n is a perfect square, else None."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None
