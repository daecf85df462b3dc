from fractions import Fraction

from hypothesis import given, settings, strategies as st

from liechar.exact_math import Cyclotomic, cyclotomic_polynomial


def test_phi_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_zeta4_squared_is_minus_one():
    i = Cyclotomic.zeta(4)
    assert i * i == Cyclotomic.rational(-1)
    assert i * i == -1


def test_zeta3_sum_vanishes():
    z = Cyclotomic.zeta(3)
    assert (1 + z + z * z).is_zero()


def test_zeta6_equals_one_plus_zeta3():
    # both are primitive 6th roots: zeta_6 = -zeta_3^2 = 1 + zeta_3
    z6 = Cyclotomic.zeta(6)
    z3 = Cyclotomic.zeta(3)
    assert z6 == Cyclotomic.rational(1) + z3
    # and it satisfies Phi_6
    assert (z6 * z6 - z6 + 1).is_zero()


def test_cross_conductor_equality():
    assert Cyclotomic.zeta(4, 2) == Cyclotomic.zeta(2, 1)
    assert Cyclotomic.zeta(8, 4) == -1
    assert Cyclotomic.zeta(5) != Cyclotomic.zeta(7)


def test_conjugate_and_abs2():
    z = Cyclotomic.zeta(5)
    assert z.conjugate() == Cyclotomic.zeta(5, 4)
    # |zeta| = 1
    assert z.abs2() == 1
    # |1 + zeta_4|^2 = 2
    x = 1 + Cyclotomic.zeta(4)
    assert x.abs2() == 2


def test_rational_detection():
    z = Cyclotomic.zeta(3)
    s = z + z.conjugate()  # = -1
    assert s.is_rational() and s.rational_value() == -1
    assert not z.is_rational()
    half = Cyclotomic.rational(Fraction(1, 2))
    assert half.rational_value() == Fraction(1, 2)


def test_as_root_of_unity():
    assert Cyclotomic.zeta(12, 3).as_root_of_unity() == (4, 1)
    assert Cyclotomic.rational(1).as_root_of_unity() == (1, 0)
    assert Cyclotomic.rational(-1).as_root_of_unity() == (2, 1)
    assert (Cyclotomic.zeta(3) + 1).as_root_of_unity() == (6, 1)
    assert Cyclotomic.rational(2).as_root_of_unity() is None


small_cyclo = st.builds(
    lambda n, pairs: Cyclotomic(n, {e: Fraction(c) for e, c in pairs}),
    st.sampled_from([1, 2, 3, 4, 6, 8, 12]),
    st.lists(st.tuples(st.integers(0, 11), st.integers(-3, 3)), max_size=3),
)


@settings(max_examples=80, deadline=None)
@given(small_cyclo, small_cyclo, small_cyclo)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)


@settings(max_examples=60, deadline=None)
@given(small_cyclo, small_cyclo)
def test_norm_multiplicative(a, b):
    assert (a * b).abs2() == a.abs2() * b.abs2()


def test_gauss_sum_square():
    # classical: (sum of legendre(t) zeta_p^t)^2 = (-1)^((p-1)/2) p
    for p in (3, 5, 7, 11):
        g = Cyclotomic.zero()
        for t in range(1, p):
            leg = pow(t, (p - 1) // 2, p)
            sign = 1 if leg == 1 else -1
            g = g + sign * Cyclotomic.zeta(p, t)
        target = p if p % 4 == 1 else -p
        assert g * g == target
