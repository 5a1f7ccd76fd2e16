"""Machine checks for every finite identity, congruence and table.

Each check pits the series engine against an independent brute-force
oracle (or a frozen displayed expansion) and returns a structured report
with counterexamples instead of raising, so a systematic failure pattern
is data, not a crash.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

from .coeff import IrrationalValue, QuadRat, sqrt_exact
from .forms import FormName, named_form, theta_classical
from .hecke import HeckeContext, hecke_T
from .ntheory import (
    CHI_M1,
    CurveSpec,
    class_number,
    divisor_sum_char,
    ec_ap,
    fourcore_count,
    is_squarefree,
    omega,
    r3,
)
from .coeff import is_prime
from .series import QSeries


@dataclass
class CheckReport:
    name: str
    range: str
    counterexamples: list[dict] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def status(self) -> str:
        return "pass" if not self.counterexamples else "fail"

    def add(self, inp, expected, actual):
        self.counterexamples.append(
            {"input": str(inp), "expected": str(expected), "actual": str(actual)}
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "range": self.range,
            "counterexamples": self.counterexamples,
            "elapsed_ms": round(self.elapsed * 1000, 3),
        }


class _Timer:
    def __init__(self, report: CheckReport):
        self.report = report
        self.t0 = time.perf_counter()

    def done(self) -> CheckReport:
        self.report.elapsed = time.perf_counter() - self.t0
        return self.report


def render_reports(reports: list[CheckReport]) -> str:
    """Fixed-width text table for a list of reports."""
    lines = [f"{'check':<16} {'status':<6} {'range':<34} {'ms':>9}  counterexamples"]
    for r in reports:
        lines.append(
            f"{r.name:<16} {r.status:<6} {r.range:<34} {r.elapsed * 1000:>9.1f}  {len(r.counterexamples)}"
        )
    return "\n".join(lines)


# -- section 1 checks --------------------------------------------------------

def check_kronecker_relation(bound: int) -> CheckReport:
    """sum_k r3(n - k^2) = 8 sum_{d|n, 4 not| d} d for 1 <= n <= bound."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    rep = CheckReport("kronecker", f"1 <= n <= {bound}")
    t = _Timer(rep)
    table = [r3(m) for m in range(bound + 1)]
    for n in range(1, bound + 1):
        lhs = table[n]  # k = 0
        k = 1
        while k * k <= n:
            lhs += 2 * table[n - k * k]
            k += 1
        rhs = 8 * sum(d for d in range(1, n + 1) if n % d == 0 and d % 4 != 0)
        if lhs != rhs:
            rep.add(n, rhs, lhs)
    return t.done()


def check_gauss_dictionary(bound: int) -> CheckReport:
    """r3(n) = 12 h(-4n) resp. 24 h(-n) for square-free 3 < n <= bound."""
    if bound < 4:
        raise ValueError("bound must be at least 4")
    rep = CheckReport("gauss", f"square-free 3 < n <= {bound}")
    t = _Timer(rep)
    for n in range(4, bound + 1):
        if not is_squarefree(n):
            continue
        m = n % 8
        if m in (1, 2, 5, 6):
            expected = 12 * class_number(-4 * n)
        elif m == 3:
            expected = 24 * class_number(-n)
        else:
            continue
        actual = r3(n)
        if actual != expected:
            rep.add(n, expected, actual)
    return t.done()


def check_theta4_eisenstein(P: int) -> CheckReport:
    """Theta^4 = 1 + 8 sum (sum_{d|n, 4 not| d} d) q^n."""
    rep = CheckReport("theta4eis", f"precision {P}")
    t = _Timer(rep)
    lhs = theta_classical(1, P) ** 4
    rhs = named_form(FormName.THETA4_EIS, P)
    for n in range(P):
        if lhs.coeffs[n] != rhs.coeffs[n]:
            rep.add(n, rhs.coeffs[n], lhs.coeffs[n])
    return t.done()


def check_theta_eta(P: int) -> CheckReport:
    """Theta = eta(2z)^5 / (eta(z)^2 eta(4z)^2), the classical identity."""
    from .forms import EtaQuotientSpec, eta_quotient

    rep = CheckReport("thetaeta", f"precision {P}")
    t = _Timer(rep)
    lhs = eta_quotient(EtaQuotientSpec(((2, 5), (1, -2), (4, -2))), P)
    rhs = theta_classical(1, P)
    for n in range(P):
        if lhs.coeffs[n] != rhs.coeffs[n]:
            rep.add(n, rhs.coeffs[n], lhs.coeffs[n])
    return t.done()


def check_jacobi_identities(P: int) -> CheckReport:
    """eta^2(16z)/eta(8z) and eta^3(8z) against their sparse theta expansions."""
    from .forms import EtaQuotientSpec, eta_quotient

    rep = CheckReport("jacobi", f"precision {P}")
    t = _Timer(rep)
    lhs1 = eta_quotient(EtaQuotientSpec(((16, 2), (8, -1))), P)
    rhs1 = QSeries.from_terms(
        (((2 * n + 1) ** 2, 1) for n in range(isqrt(P) + 1)), P
    )
    if lhs1.coeffs != rhs1.coeffs:
        for n in range(P):
            if lhs1.coeffs[n] != rhs1.coeffs[n]:
                rep.add(("odd-squares", n), rhs1.coeffs[n], lhs1.coeffs[n])
    lhs2 = eta_quotient(EtaQuotientSpec(((8, 3),)), P)
    rhs2 = QSeries.from_terms(
        (((2 * n + 1) ** 2, (-1) ** n * (2 * n + 1)) for n in range(isqrt(P) + 1)), P
    )
    if lhs2.coeffs != rhs2.coeffs:
        for n in range(P):
            if lhs2.coeffs[n] != rhs2.coeffs[n]:
                rep.add(("triple-product", n), rhs2.coeffs[n], lhs2.coeffs[n])
    return t.done()


# -- worked examples ---------------------------------------------------------

_EX1_CURVE = CurveSpec(2, -1, 0)


def check_example1(P: int, pbound: int) -> CheckReport:
    """Weight-3/2 products vs the curve y^2 = x^3 + 2x^2 - x."""
    if P < 2 * pbound:
        raise ValueError("need precision at least twice the prime bound")
    rep = CheckReport("example1", f"precision {P}, odd primes <= {pbound}")
    t = _Timer(rep)
    f = named_form(FormName.F_EX1, P)
    alt1 = named_form(FormName.G1, P) * theta_classical(4, P)
    alt2 = named_form(FormName.G2, P) * theta_classical(2, P)
    for n in range(P):
        if f.coeffs[n] != alt1.coeffs[n]:
            rep.add(("g1*Theta(4z)", n), f.coeffs[n], alt1.coeffs[n])
        if f.coeffs[n] != alt2.coeffs[n]:
            rep.add(("g2*Theta(2z)", n), f.coeffs[n], alt2.coeffs[n])
    fs = named_form(FormName.FSTAR_EX1, P)
    for m in range(2, P):
        for n in range(m + 1, P // m + 1):
            if m * n >= P:
                continue
            if gcd(m, n) != 1:
                continue
            prod = fs.coeffs[m] * fs.coeffs[n]
            if fs.coeffs[m * n] != prod:
                rep.add(("multiplicativity", m, n), prod, fs.coeffs[m * n])
    p = 3
    while p <= pbound:
        if is_prime(p) and _EX1_CURVE.cubic_discriminant() % p != 0:
            ap = ec_ap(_EX1_CURVE, p)
            if fs.coeffs[p] != QuadRat(ap):
                rep.add(("a_p", p), ap, fs.coeffs[p])
        p += 2
    return t.done()


def check_example2(P: int) -> CheckReport:
    """Displayed coefficients of B1 and the relation (B1 + B2)/2 = F = g*Theta."""
    rep = CheckReport("example2", f"precision {P}")
    t = _Timer(rep)
    b1 = named_form(FormName.B1_EX2, max(P, 6))
    s15 = QuadRat.sqrt(-15)
    displayed = {
        1: QuadRat(1),
        2: QuadRat(2) - s15 * 2,
        3: s15 * 8,
        4: QuadRat(-56) - s15 * 8,
        5: QuadRat(10),
    }
    for n, want in displayed.items():
        if b1.coeffs[n] != want:
            rep.add(("B1 display", n), want, b1.coeffs[n])
    b2 = named_form(FormName.B2_EX2, P)
    f = named_form(FormName.F_EX2, P)
    avg = (b1.truncate(P) + b2) / 2
    for n in range(P):
        if avg.coeffs[n] != f.coeffs[n]:
            rep.add(("(B1+B2)/2", n), f.coeffs[n], avg.coeffs[n])
    return t.done()


def check_congruence18(P: int, bound: int) -> CheckReport:
    """The Kronecker-style congruences mod 5 and mod 61 for 1 <= N <= bound."""
    if bound >= P:
        raise ValueError("bound must be below the precision")
    rep = CheckReport("congruence18", f"1 <= N <= {bound}, precision {P}")
    t = _Timer(rep)
    f = named_form(FormName.F_EX2, P)  # F = g*Theta, so coeff N is sum_k c(N - k^2)
    for n in range(1, bound + 1):
        lhs5 = f.coeffs[n].reduce_mod(5)
        lhs61 = f.coeffs[n].reduce_mod(61)
        dsum4 = _chi_m1_divisor_sum(n, 4)
        dsum6 = _chi_m1_divisor_sum(n, 6)
        rhs5 = (QuadRat(n) * dsum4 / 2).reduce_mod(5)
        rhs61 = (dsum6 / 2).reduce_mod(61)
        if lhs5 != rhs5:
            rep.add(("mod 5", n), rhs5, lhs5)
        if lhs61 != rhs61:
            rep.add(("mod 61", n), rhs61, lhs61)
    return t.done()


def _chi_m1_divisor_sum(n: int, k: int) -> QuadRat:
    """sum_{d|n} (chi_{-1}(d) + chi_{-1}(n/d)) d^k."""
    from .ntheory import CHI_0

    return divisor_sum_char(n, k, CHI_0, CHI_M1) + divisor_sum_char(n, k, CHI_M1, CHI_0)


def _ternary_count(m: int) -> int:
    """#{x, y, z odd >= 1 : x^2 + 2y^2 + 2z^2 = m}, by enumeration."""
    count = 0
    x = 1
    while x * x <= m:
        rx = m - x * x
        y = 1
        while 2 * y * y <= rx:
            rem = rx - 2 * y * y
            if rem % 2 == 0:
                z2 = rem // 2
                z = isqrt(z2)
                if z * z == z2 and z % 2 == 1:
                    count += 1
            y += 2
        x += 2
    return count


def check_example3(P: int, bound: int) -> CheckReport:
    """Eigenform relations around eta^4(32z)/eta(8z) and F in S_3(32)."""
    if bound >= P // 2:
        raise ValueError("bound must be below half the precision")
    rep = CheckReport("example3", f"precision {P}, ternary counts m <= {bound}")
    t = _Timer(rep)
    b1 = named_form(FormName.B1_EX3, max(P, 10))
    displayed = {
        1: QuadRat(1),
        3: QuadRat(0, -4, 1, -1),
        5: QuadRat(2),
        7: QuadRat(0, 8, 1, -1),
        9: QuadRat(-7),
    }
    for n, want in displayed.items():
        if b1.coeffs[n] != want:
            rep.add(("B1 display", n), want, b1.coeffs[n])
    f = named_form(FormName.F_EX3, P)
    b2 = named_form(FormName.B2_EX3, P)
    recon = (b2 - b1.truncate(P)) / QuadRat(0, 8, 1, -1)
    for n in range(P):
        if recon.coeffs[n] != f.coeffs[n]:
            rep.add(("(B2-B1)/8i", n), f.coeffs[n], recon.coeffs[n])
    eta4 = named_form(FormName.ETA4_32_OVER_8, 2 * P)
    from .forms import EtaQuotientSpec, eta_quotient

    v2f = f.expand_scale(2)
    prod = eta4 * eta_quotient(EtaQuotientSpec(((8, 3),)), 2 * P)
    for n in range(2 * P):
        if v2f.coeffs[n] != prod.coeffs[n]:
            rep.add(("V2(F) identity", n), prod.coeffs[n], v2f.coeffs[n])
    for m in range(1, bound + 1):
        want = QuadRat(_ternary_count(m))
        if eta4.coeffs[m] != want:
            rep.add(("ternary count", m), want, eta4.coeffs[m])
    return t.done()


def check_class_relation(P: int, bound: int) -> CheckReport:
    """h(-4m) = 2 c(m) for square-free m = 5 (mod 8), m <= bound."""
    if bound >= P:
        raise ValueError("bound must be below the precision")
    rep = CheckReport("classrelation", f"square-free m = 5 (mod 8), m <= {bound}")
    t = _Timer(rep)
    eta4 = named_form(FormName.ETA4_32_OVER_8, P)
    for m in range(5, bound + 1, 8):
        if not is_squarefree(m):
            continue
        h = class_number(-4 * m)
        c = eta4.coeffs[m]
        if QuadRat(h) != c * 2:
            rep.add(m, f"h={h}", f"2c={c * 2}")
    return t.done()


def check_fourcore(P: int, mbound: int = 30) -> CheckReport:
    """coeff(eta^4(32z)/eta(8z), 8m+5) equals the 4-core partition count."""
    if 8 * mbound + 5 >= P:
        raise ValueError("precision too small for the 4-core range")
    rep = CheckReport("fourcore", f"m <= {mbound}")
    t = _Timer(rep)
    eta4 = named_form(FormName.ETA4_32_OVER_8, P)
    for m in range(mbound + 1):
        want = QuadRat(fourcore_count(m))
        if eta4.coeffs[8 * m + 5] != want:
            rep.add(m, want, eta4.coeffs[8 * m + 5])
    return t.done()


# -- Tunnell table and the indivisibility scanner ----------------------------

@dataclass
class TunnellRow:
    """One row of the conjectural-sha table for E(N) or E(2N)."""

    N: int
    i: int
    a: int
    nu: int
    S: Fraction | None  # None marks a zero coefficient (congruent number side)

    @property
    def divisible(self) -> bool:
        """Whether 2^nu divides the coefficient (vacuous for a = 0)."""
        return self.a % (1 << self.nu) == 0

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "i": self.i,
            "a": self.a,
            "nu": self.nu,
            "S": None if self.S is None else str(self.S),
            "divisible": self.divisible,
        }


def tunnell_table(i: int, bound: int, prec: int | None = None) -> list[TunnellRow]:
    """Rows (N, a_i(N), nu(N), S = (a/2^nu)^2) for odd square-free N <= bound.

    S is the order of the relevant Tate-Shafarevich group as predicted by
    the Birch and Swinnerton-Dyer conjecture (conjectural order); a zero
    coefficient is reported as S = None.
    """
    if i not in (1, 2):
        raise ValueError("i must be 1 or 2")
    prec = prec or bound + 1
    if bound >= prec:
        raise ValueError("bound must be below the precision")
    g = named_form(FormName.G1 if i == 1 else FormName.G2, prec)
    rows = []
    for n in range(1, bound + 1, 2):
        if not is_squarefree(n):
            continue
        coeff = g.coeffs[n]
        a = coeff.a  # integer series
        nu = omega(n) if n > 1 else 0
        s = None if a == 0 else Fraction(a, 1 << nu) ** 2
        rows.append(TunnellRow(N=n, i=i, a=a, nu=nu, S=s))
    return rows


@dataclass
class ScanReport:
    """Square-free exponents whose coefficient is an ell-unit."""

    form: str
    ell: int
    bound: int
    hits: list[int]
    squarefree_checked: int

    @property
    def density(self) -> float:
        return len(self.hits) / self.squarefree_checked if self.squarefree_checked else 0.0

    def to_json(self) -> dict:
        return {
            "form": self.form,
            "ell": self.ell,
            "bound": self.bound,
            "hits": self.hits,
            "squarefree_checked": self.squarefree_checked,
            "density": self.density,
        }


def scan_indivisibility(form: FormName, ell: int, X: int) -> ScanReport:
    """Enumerate square-free m <= X with coefficient not divisible by ell.

    The coefficient being an ell-unit (|c(m)|_ell = 1 for rational
    integers) means exactly that its residue mod ell is nonzero.
    """
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    g = named_form(form, X + 1)
    hits = []
    checked = 0
    for m in range(1, X + 1):
        if not is_squarefree(m):
            continue
        checked += 1
        c = g.coeffs[m]
        if not c.is_rational():
            raise IrrationalValue(f"coefficient at {m} is irrational; scan integer forms only")
        if int(c.reduce_mod(ell)) != 0:
            hits.append(m)
    return ScanReport(form=form.value, ell=ell, bound=X, hits=hits, squarefree_checked=checked)
