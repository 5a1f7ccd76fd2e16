"""Number-theoretic utilities and deliberately naive verification oracles.

The oracles (r3, class numbers, 4-core partitions, point counts) are
exhaustive loops on purpose: they are the independent side of every
dual-route check against the series engine, so they must not share code
with it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .coeff import QuadRat


class NotFundamental(ValueError):
    pass


class InputTooLarge(ValueError):
    pass


class BadReduction(ValueError):
    """The prime divides the curve discriminant."""


# -- Kronecker symbol and characters ----------------------------------------

def kronecker_symbol(D: int, n: int) -> int:
    """The Kronecker symbol (D/n), totally extended (n <= 0 and even n included)."""
    if n == 0:
        return 1 if D in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if D < 0:
            result = -result
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            result = -result
    # n odd and positive: Jacobi symbol via quadratic reciprocity
    a = D % n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@dataclass(frozen=True)
class DirichletChar:
    """A Kronecker character chi_D or a trivial character mod M.

    The trivial character mod M vanishes at arguments sharing a factor
    with M, except for M = 1 where it is identically 1.
    """

    kind: str  # "kronecker" or "trivial"
    param: int  # D for kronecker, modulus M for trivial

    @classmethod
    def kronecker(cls, D: int) -> DirichletChar:
        if D == 0:
            raise ValueError("Kronecker character needs a nonzero D")
        return cls("kronecker", D)

    @classmethod
    def trivial(cls, modulus: int = 1) -> DirichletChar:
        if modulus < 1:
            raise ValueError("modulus must be positive")
        return cls("trivial", modulus)

    def __call__(self, n: int) -> int:
        if self.kind == "kronecker":
            return kronecker_symbol(self.param, n)
        if self.param == 1:
            return 1
        return 1 if gcd(n, self.param) == 1 else 0

    def __str__(self) -> str:
        if self.kind == "kronecker":
            return f"chi_D({self.param})"
        return f"chi_0(mod {self.param})"


CHI_M1 = DirichletChar.kronecker(-4)  # the odd character chi_{-1}
CHI_0 = DirichletChar.trivial(1)


# -- discriminants, divisors -------------------------------------------------

def _factor(n: int) -> dict[int, int]:
    fac: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            fac[f] = fac.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        fac[n] = fac.get(n, 0) + 1
    return fac


def is_squarefree(n: int) -> bool:
    if n < 1:
        raise ValueError("n must be positive")
    return all(e == 1 for e in _factor(n).values())


def omega(n: int) -> int:
    """Number of distinct prime factors."""
    if n < 1:
        raise ValueError("n must be positive")
    return len(_factor(n))


def is_fundamental(D: int) -> bool:
    """Whether D is the discriminant of a quadratic field (or D = 1)."""
    if D == 0:
        return False
    if D % 4 == 1:
        return is_squarefree(abs(D))
    if D % 4 == 0:
        m = D // 4
        if m % 4 in (2, 3):
            return is_squarefree(abs(m))
    return False


def d_zero(D: int) -> int:
    """|D| for odd fundamental D, |D|/4 for even."""
    if not is_fundamental(D):
        raise NotFundamental(f"{D} is not a fundamental discriminant")
    return abs(D) if D % 2 else abs(D) // 4


def divisors(n: int) -> list[int]:
    small, large = [], []
    f = 1
    while f * f <= n:
        if n % f == 0:
            small.append(f)
            if f != n // f:
                large.append(n // f)
        f += 1
    return small + large[::-1]


def divisor_sum_char(N: int, k: int, chi1: DirichletChar, chi2: DirichletChar) -> QuadRat:
    """sum_{d|N} chi1(N/d) chi2(d) d^k as an exact integer."""
    if N < 1:
        raise ValueError("N must be positive")
    total = 0
    for d in divisors(N):
        total += chi1(N // d) * chi2(d) * d**k
    return QuadRat(total)


# -- brute-force oracles -----------------------------------------------------

def r3(n: int) -> int:
    """Number of (x, y, z) in Z^3 with x^2 + y^2 + z^2 = n, by enumeration."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    s = isqrt(n)
    count = 0
    for x in range(-s, s + 1):
        rx = n - x * x
        sy = isqrt(rx)
        for y in range(-sy, sy + 1):
            rem = rx - y * y
            z = isqrt(rem)
            if z * z == rem:
                count += 1 if z == 0 else 2
    return count


def class_number(D: int) -> int:
    """h(D) for fundamental D < 0, counting reduced binary quadratic forms.

    A form a x^2 + b xy + c y^2 with b^2 - 4ac = D is reduced when
    |b| <= a <= c, with b >= 0 whenever |b| = a or a = c.
    """
    if D >= 0:
        raise NotFundamental("D must be negative")
    if not is_fundamental(D):
        raise NotFundamental(f"{D} is not a fundamental discriminant")
    h = 0
    a = 1
    while 3 * a * a <= -D:  # reduced forms have 4ac = b^2 - D <= a^2 - D, so 3a^2 <= -D
        for b in range(-a, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and (-b == a or a == c):
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            h += 1
        a += 1
    return h


def _partitions(m: int):
    """All partitions of m in weakly decreasing order."""
    if m == 0:
        yield ()
        return
    stack = [((), m, m)]
    while stack:
        head, rem, maxpart = stack.pop()
        for first in range(min(rem, maxpart), 0, -1):
            if rem - first == 0:
                yield head + (first,)
            else:
                stack.append((head + (first,), rem - first, first))


def fourcore_count(m: int) -> int:
    """Number of partitions of m with no hook length divisible by 4."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m > 60:
        raise InputTooLarge("brute-force 4-core counting is guarded at m <= 60")
    count = 0
    for lam in _partitions(m):
        conj = [sum(1 for part in lam if part > j) for j in range(lam[0] if lam else 0)]
        ok = True
        for i, part in enumerate(lam):
            for j in range(part):
                hook = (part - j) + (conj[j] - i) - 1
                if hook % 4 == 0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


@dataclass(frozen=True)
class CurveSpec:
    """An integral curve y^2 = x^3 + a2 x^2 + a4 x + a6."""

    a2: int
    a4: int
    a6: int

    def cubic_discriminant(self) -> int:
        b, c, d = self.a2, self.a4, self.a6
        return 18 * b * c * d - 4 * b**3 * d + b * b * c * c - 4 * c**3 - 27 * d * d

    def __post_init__(self):
        if self.cubic_discriminant() == 0:
            raise ValueError("singular curve: cubic discriminant is zero")


def ec_ap(curve: CurveSpec, p: int) -> int:
    """a_p = p + 1 - #E(F_p) by counting affine points, for odd p of good reduction."""
    from .coeff import is_prime

    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} must be an odd prime")
    if curve.cubic_discriminant() % p == 0:
        raise BadReduction(f"p = {p} divides the curve discriminant")
    squares = {(y * y) % p for y in range(p)}
    count = 1  # point at infinity
    for x in range(p):
        rhs = (x * x * x + curve.a2 * x * x + curve.a4 * x + curve.a6) % p
        if rhs == 0:
            count += 1
        elif rhs in squares:
            count += 2
    return p + 1 - count
