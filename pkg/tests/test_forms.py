"""Theta series, eta quotients and the named-form catalog."""

from fractions import Fraction

import pytest

from oracles import euler_product_list, naive_inverse, naive_mul
from qmod.coeff import QuadRat
from qmod.forms import (
    EtaQuotientSpec,
    FormName,
    NegativePrefactor,
    NonIntegralPrefactor,
    eisenstein_divisor_series,
    eta_quotient,
    named_form,
    theta_classical,
    theta_shimura,
)
from qmod.ntheory import CHI_0, CHI_M1, r3
from qmod.series import QSeries


def ints(series):
    out = []
    for c in series.coeffs:
        assert c.is_integer(), f"not an integer coefficient: {c}"
        out.append(c.a)
    return out


def test_theta_classical():
    th = theta_classical(1, 20)
    assert ints(th) == [1 if n == 0 else (2 if int(n**0.5) ** 2 == n else 0) for n in range(20)]
    th2 = theta_classical(2, 20)
    assert ints(th2)[:9] == [1, 0, 2, 0, 0, 0, 0, 0, 2]
    with pytest.raises(ValueError):
        theta_classical(0, 10)


def test_theta_cube_matches_r3():
    P = 60
    cube = theta_classical(1, P) ** 3
    assert ints(cube) == [r3(n) for n in range(P)]


def test_theta_shimura_even_case():
    # i=0, residue 1 mod 2: both n and -n contribute, giving Theta of odd squares
    s = theta_shimura(1, 0, 1, 2, 30)
    assert ints(s) == [2 if n in (1, 9, 25) else 0 for n in range(30)]


def test_theta_shimura_odd_case_no_cancellation():
    # i=1, r=1, t=4: n = 1 (mod 4) over all of Z, so 1*q - 3*q^9 + 5*q^25 ...
    s = theta_shimura(1, 1, 1, 4, 30)
    expect = [0] * 30
    expect[1], expect[9], expect[25] = 1, -3, 5
    assert ints(s) == expect


def test_theta_shimura_validates():
    with pytest.raises(ValueError):
        theta_shimura(1, 2, 0, 2, 10)
    with pytest.raises(ValueError):
        theta_shimura(1, 0, 5, 2, 10)


def test_eta_spec_merges_factors():
    spec = EtaQuotientSpec(((8, 1), (8, 2), (4, 1), (4, -1)))
    assert spec.factors == ((8, 3),)
    assert spec.prefactor_numerator() == 24
    with pytest.raises(ValueError):
        EtaQuotientSpec(((0, 1),))


def test_eta_quotient_prefactor_guards():
    with pytest.raises(NonIntegralPrefactor):
        eta_quotient(EtaQuotientSpec(((8, 1),)), 10)
    with pytest.raises(NegativePrefactor):
        eta_quotient(EtaQuotientSpec(((24, -1),)), 10)


def test_eta_cube_is_a_signed_odd_square_series():
    got = eta_quotient(EtaQuotientSpec(((8, 3),)), 128)
    expect = [0] * 128
    n = 0
    while (2 * n + 1) ** 2 < 128:
        expect[(2 * n + 1) ** 2] = (-1) ** n * (2 * n + 1)
        n += 1
    assert ints(got) == expect


def test_eta_quotient_against_naive_polynomials():
    # eta(2z)^5 / (eta(z)^2 eta(4z)^2): prefactor (10 - 2 - 8)/24 = 0
    P = 48
    got = eta_quotient(EtaQuotientSpec(((2, 5), (1, -2), (4, -2))), P)
    e1, e2, e4 = (euler_product_list(d, P) for d in (1, 2, 4))
    num = e2
    for _ in range(4):
        num = naive_mul(num, e2, P)
    den = naive_mul(naive_mul(e1, e1, P), naive_mul(e4, e4, P), P)
    den_inv = naive_inverse(den, P)
    expect = [sum(Fraction(num[k]) * den_inv[n - k] for k in range(n + 1)) for n in range(P)]
    for n in range(P):
        assert expect[n].denominator == 1
        assert got.coeffs[n] == QuadRat(int(expect[n]))


def test_delta_expansion():
    # frozen from the naive 24-fold product of euler_product_list(1, P)
    P = 12
    e = euler_product_list(1, P)
    expect = [1]
    acc = [1] + [0] * (P - 1)
    for _ in range(24):
        acc = naive_mul(acc, e, P)
    expect = [0] + acc[: P - 1]  # shift by the q^1 prefactor
    delta = named_form(FormName.DELTA, P)
    assert ints(delta) == expect
    assert ints(delta)[:8] == [0, 1, -24, 252, -1472, 4830, -6048, -16744]


def test_eisenstein_divisor_series():
    e = eisenstein_divisor_series(1, CHI_0, CHI_0, 10)
    # sigma_1 with constant term zero
    assert ints(e) == [0, 1, 3, 4, 7, 6, 12, 8, 15, 13]
    e4 = eisenstein_divisor_series(1, CHI_0, CHI_0, 10, omit_multiples_of=4)
    assert ints(e4) == [0, 1, 3, 4, 3, 6, 12, 8, 3, 13]
    twisted = eisenstein_divisor_series(1, CHI_0, CHI_M1, 7)
    assert ints(twisted) == [0, 1, 1, -2, 1, 6, -2]


def test_theta4_eisenstein_form():
    lhs = theta_classical(1, 64) ** 4
    rhs = named_form(FormName.THETA4_EIS, 64)
    assert lhs == rhs


def test_g1_g2_against_naive_products():
    P = 64
    e = naive_mul(euler_product_list(8, P), euler_product_list(16, P), P)
    g = [0] + e[: P - 1]  # prefactor (8 + 16)/24 = 1
    for i, a in ((1, 2), (2, 4)):
        theta = [0] * P
        theta[0] = 1
        k = 1
        while a * k * k < P:
            theta[a * k * k] = 2
            k += 1
        expect = naive_mul(g, theta, P)
        got = named_form(FormName.G1 if i == 1 else FormName.G2, P)
        assert ints(got) == expect, i


def test_f_ex1_two_factorizations():
    P = 128
    f = named_form(FormName.F_EX1, P)
    assert named_form(FormName.G1, P) * theta_classical(4, P) == f
    assert named_form(FormName.G2, P) * theta_classical(2, P) == f


def test_fstar_flips_residue_seven():
    P = 64
    f = named_form(FormName.F_EX1, P)
    fs = named_form(FormName.FSTAR_EX1, P)
    for n in range(P):
        want = -f.coeffs[n] if n % 8 == 7 else f.coeffs[n]
        assert fs.coeffs[n] == want


def test_f_ex3_displayed():
    f = named_form(FormName.F_EX3, 16)
    expect = [0] * 16
    expect[3], expect[7], expect[11], expect[15] = 1, -2, -1, 2
    assert ints(f) == expect


def test_b1_ex2_displayed():
    b1 = named_form(FormName.B1_EX2, 6)
    s = QuadRat.sqrt(-15)
    assert b1.coeffs[1] == QuadRat(1)
    assert b1.coeffs[2] == QuadRat(2) - s * 2
    assert b1.coeffs[3] == s * 8
    assert b1.coeffs[4] == QuadRat(-56) - s * 8
    assert b1.coeffs[5] == QuadRat(10)


def test_b1_ex3_displayed():
    b1 = named_form(FormName.B1_EX3, 10)
    i = QuadRat.sqrt(-1)
    assert b1.coeffs[1] == QuadRat(1)
    assert b1.coeffs[3] == i * -4
    assert b1.coeffs[5] == QuadRat(2)
    assert b1.coeffs[7] == i * 8
    assert b1.coeffs[9] == QuadRat(-7)


def test_b2_forms_are_conjugates():
    for name1, name2 in ((FormName.B1_EX2, FormName.B2_EX2), (FormName.B1_EX3, FormName.B2_EX3)):
        b1 = named_form(name1, 24)
        b2 = named_form(name2, 24)
        assert b2 == b1.conj()
        assert b2.conj() == b1


def test_mean_of_conjugate_pair_is_rational():
    b1 = named_form(FormName.B1_EX2, 32)
    b2 = named_form(FormName.B2_EX2, 32)
    f = named_form(FormName.F_EX2, 32)
    assert (b1 + b2) / 2 == QSeries(f.coeffs, prec=32)


def test_eta4_32_over_8_counts_ternary_forms():
    # coefficient of q^m counts odd positive (x, y, z) with x^2 + 2y^2 + 2z^2 = m
    P = 40
    expect = [0] * P
    for x in range(1, P, 2):
        for y in range(1, P, 2):
            for z in range(1, P, 2):
                m = x * x + 2 * y * y + 2 * z * z
                if m < P:
                    expect[m] += 1
    got = named_form(FormName.ETA4_32_OVER_8, P)
    assert ints(got) == expect


def test_named_form_precision_is_exact():
    for name in FormName:
        s = named_form(name, 17)
        assert s.prec == 17, name


def test_named_form_consistent_across_precisions():
    for name in FormName:
        big = named_form(name, 40)
        small = named_form(name, 11)
        assert big.truncate(11) == small, name
