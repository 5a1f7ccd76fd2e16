"""Randomized algebraic laws for scalars, series and the number theory layer."""

from math import gcd

from hypothesis import given, settings
from hypothesis import strategies as st

from qmod.coeff import QuadRat
from qmod.ntheory import kronecker_symbol
from qmod.series import QSeries

SQUAREFREE_TAGS = (-15, -2, -1, 2, 3, 5)

ints_small = st.integers(min_value=-50, max_value=50)
nonzero_den = st.integers(min_value=1, max_value=30)


def quadrat(d):
    return st.builds(QuadRat, ints_small, ints_small, nonzero_den, st.just(d))


@st.composite
def triple_same_field(draw):
    d = draw(st.sampled_from(SQUAREFREE_TAGS))
    return (draw(quadrat(d)), draw(quadrat(d)), draw(quadrat(d)))


@settings(max_examples=200, deadline=None)
@given(triple_same_field())
def test_field_axioms(xyz):
    x, y, z = xyz
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x + y == y + x
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x + 0 == x
    assert x * 1 == x
    assert x + (-x) == QuadRat(0)
    if not x.is_zero() and x.a * x.a != x.d * x.b * x.b:
        assert x * x.inverse() == QuadRat(1)


@settings(max_examples=200, deadline=None)
@given(triple_same_field())
def test_conj_is_a_ring_map(xyz):
    x, y, _ = xyz
    assert (x + y).conj() == x.conj() + y.conj()
    assert (x * y).conj() == x.conj() * y.conj()
    assert x.conj().conj() == x


@settings(max_examples=200, deadline=None)
@given(
    st.integers(min_value=-10**6, max_value=10**6),
    st.integers(min_value=-10**6, max_value=10**6),
    st.sampled_from([3, 5, 7, 11, 13]),
    st.integers(min_value=1, max_value=10**4),
    st.integers(min_value=1, max_value=10**4),
)
def test_reduction_is_a_homomorphism(a1, a2, ell, c1, c2):
    x = QuadRat(a1, 0, c1)
    y = QuadRat(a2, 0, c2)
    if x.c % ell == 0 or y.c % ell == 0 or (x + y).c % ell == 0 or (x * y).c % ell == 0:
        return
    assert (x + y).reduce_mod(ell) == x.reduce_mod(ell) + y.reduce_mod(ell)
    assert (x * y).reduce_mod(ell) == x.reduce_mod(ell) * y.reduce_mod(ell)


int_lists = st.lists(st.integers(min_value=-20, max_value=20), min_size=1, max_size=12)


@settings(max_examples=150, deadline=None)
@given(int_lists, int_lists, int_lists)
def test_series_ring_laws(a, b, c):
    p = min(len(a), len(b), len(c))
    f, g, h = (QSeries.from_ints(x) for x in (a, b, c))
    assert ((f * g) * h).eq_upto((f * (g * h)), p)
    assert (f * g).eq_upto(g * f, p)
    assert (f * (g + h)).eq_upto(f * g + f * h, p)
    assert (f + g).eq_upto(g + f, p)
    one = QSeries.one(p)
    assert (f * one).eq_upto(f.truncate(p), p)


@settings(max_examples=100, deadline=None)
@given(int_lists, st.integers(min_value=1, max_value=5))
def test_u_after_v_identity(a, t):
    f = QSeries.from_ints(a)
    assert f.expand_scale(t).pick(t) == f


@settings(max_examples=100, deadline=None)
@given(int_lists)
def test_inverse_is_two_sided(a):
    if a[0] == 0:
        a = [1] + a
    f = QSeries.from_ints(a)
    inv = f.inverse()
    prod = f * inv
    assert prod.coeffs[0] == QuadRat(1)
    assert all(c.is_zero() for c in prod.coeffs[1:])
    assert (inv * f).eq_upto(prod, f.prec)


@settings(max_examples=100, deadline=None)
@given(int_lists, int_lists)
def test_precision_contracts(a, b):
    f, g = QSeries.from_ints(a), QSeries.from_ints(b)
    p = min(f.prec, g.prec)
    assert (f + g).prec == p
    assert (f * g).prec == p
    assert f.shift(3).prec == f.prec + 3
    assert f.expand_scale(2).prec == 2 * f.prec
    assert f.pick(3).prec == -(-f.prec // 3)


@settings(max_examples=300, deadline=None)
@given(
    st.integers(min_value=-300, max_value=300).filter(lambda d: d != 0),
    st.integers(min_value=1, max_value=300),
    st.integers(min_value=1, max_value=300),
)
def test_kronecker_multiplicative_in_n(D, m, n):
    assert kronecker_symbol(D, m * n) == kronecker_symbol(D, m) * kronecker_symbol(D, n)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=-100, max_value=100).filter(lambda d: d % 4 in (0, 1) and d != 0))
def test_kronecker_periodicity(D):
    # for D = 0, 1 (mod 4) the symbol is periodic in n with period |D|
    period = abs(D)
    for n in range(1, 40):
        assert kronecker_symbol(D, n) == kronecker_symbol(D, n + period)


@settings(max_examples=150, deadline=None)
@given(
    st.integers(min_value=-200, max_value=200).filter(lambda d: d != 0),
    st.integers(min_value=1, max_value=200),
)
def test_kronecker_values_are_unitary(D, n):
    v = kronecker_symbol(D, n)
    assert v in (-1, 0, 1)
    # for positive n the symbol vanishes exactly on common factors
    assert (v == 0) == (gcd(abs(D), n) > 1)
