"""Tests for truncated p-adic matrices, the topological Jordan split,
quasi-logarithm bijectivity at finite precision, and Hilbert symbols."""

import random
from fractions import Fraction

import pytest

from liechar.padic import (
    DiagQuadForm,
    TruncatedMatrix,
    hasse_invariant,
    hilbert_symbol,
    quasi_log_bijection_check,
    relevant_places,
    topological_jordan,
)


def rand_invertible(rng, n, p, k):
    mod = p**k
    while True:
        m = TruncatedMatrix(
            n, p, k, [[rng.randrange(mod) for _ in range(n)] for _ in range(n)]
        )
        if m.is_invertible():
            return m


# ---------------------------------------------------------------------------
# ring arithmetic


def test_matrix_ring_basics():
    m = TruncatedMatrix(2, 5, 3, [[126, 1], [0, 1]])
    # entries live mod 125
    assert m.rows == ((1, 1), (0, 1))
    i = TruncatedMatrix.identity(2, 5, 3)
    assert m.mul(i) == m and i.mul(m) == m
    assert m.add(m.neg()) == TruncatedMatrix.zero(2, 5, 3)
    assert m.pow(0) == i
    assert m.pow(3) == m.mul(m).mul(m)
    assert m.trace() == 2


def test_det_and_invertibility():
    m = TruncatedMatrix(3, 3, 2, [[1, 2, 0], [0, 1, 1], [1, 0, 1]])
    # det = 1*(1-0) - 2*(0-1) = 3, zero mod 3
    assert m.det() == 3
    assert not m.is_invertible()
    m2 = TruncatedMatrix(2, 7, 2, [[7, 1], [1, 0]])
    # reduction [[0,1],[1,0]] has det -1, a unit
    assert m2.is_invertible()


def test_hensel_inverse():
    rng = random.Random(3)
    for p, k, n in [(3, 4, 2), (5, 3, 3), (7, 2, 4)]:
        ident = TruncatedMatrix.identity(n, p, k)
        for _ in range(5):
            m = rand_invertible(rng, n, p, k)
            inv = m.inverse()
            assert m.mul(inv) == ident
            assert inv.mul(m) == ident


def test_inverse_rejects_singular():
    with pytest.raises(ZeroDivisionError):
        TruncatedMatrix(2, 3, 3, [[3, 0], [0, 1]]).inverse()


def test_mixed_rings_rejected():
    a = TruncatedMatrix.identity(2, 3, 2)
    b = TruncatedMatrix.identity(2, 3, 3)
    with pytest.raises(ValueError):
        a.mul(b)


def test_reduce_lowers_precision_only():
    m = TruncatedMatrix(2, 3, 3, [[10, 0], [0, 1]])
    assert m.reduce(1).rows == ((1, 0), (0, 1))
    with pytest.raises(ValueError):
        m.reduce(4)


# ---------------------------------------------------------------------------
# topological Jordan decomposition


def test_tjd_identity_trivial():
    i = TruncatedMatrix.identity(2, 3, 4)
    assert topological_jordan(i) == (i, i)


def test_tjd_gl1_mod_25():
    # 2^5 = 32 = 7 mod 25, and 7^5 = 16807 = 7 mod 25, so the iteration
    # stabilizes at delta = 7; u = 7^(-1) * 2 = 18 * 2 = 36 = 11 mod 25
    g = TruncatedMatrix(1, 5, 2, [[2]])
    delta, u = topological_jordan(g)
    assert delta.rows == ((7,),)
    assert u.rows == ((11,),)
    assert pow(7, 4, 25) == 1
    assert pow(11, 5, 25) == 1


def test_tjd_finite_order_prime_to_p():
    refl = TruncatedMatrix(2, 3, 4, [[0, 1], [1, 0]])
    delta, u = topological_jordan(refl)
    assert delta == refl
    assert u == TruncatedMatrix.identity(2, 3, 4)


def test_tjd_rejects_singular_and_deep_precision():
    with pytest.raises(ValueError):
        topological_jordan(TruncatedMatrix(2, 3, 4, [[3, 0], [0, 1]]))
    with pytest.raises(ValueError):
        topological_jordan(TruncatedMatrix.identity(1, 3, 65))


def _mult_order(m, ident, bound):
    acc = m
    for r in range(1, bound + 1):
        if acc == ident:
            return r
        acc = acc.mul(m)
    raise AssertionError("no order found")


@pytest.mark.parametrize("p,k", [(3, 4), (5, 4)])
def test_tjd_random_posts(p, k):
    rng = random.Random(100 * p + k)
    ident = TruncatedMatrix.identity(2, p, k)
    for _ in range(100):
        g = rand_invertible(rng, 2, p, k)
        delta, u = topological_jordan(g)
        assert delta.mul(u) == g
        assert u.mul(delta) == g
        r = _mult_order(delta, ident, p**k * 100)
        assert r % p != 0
        # u is topologically unipotent: repeated p-th powers reach 1
        acc = u
        for _ in range(k + 8):
            if acc == ident:
                break
            acc = acc.pow(p)
        assert acc == ident
        # uniqueness within the cyclic group generated by delta: any other
        # finite-order candidate leaves a non-unipotent cofactor
        cand = ident
        hits = 0
        for _ in range(r):
            u2 = cand.inverse().mul(g)
            red = u2.reduce(1)
            tr = red.trace() % p
            det = red.det() % p
            if tr == 2 % p and det == 1 % p:
                hits += 1
                assert cand == delta
            cand = cand.mul(delta)
        assert hits == 1


@pytest.mark.parametrize("p", [3, 5])
def test_tjd_gl1_uniqueness_exhaustive(p):
    # in (Z/p^4)* every element has a unique split into a part of order
    # prime to p and a part that is 1 mod p; confirm by full enumeration
    k = 4
    mod = p**k
    units = [x for x in range(1, mod) if x % p]
    prime_to_p = []
    for d in units:
        r = 1
        acc = d
        while acc != 1:
            acc = acc * d % mod
            r += 1
        if r % p:
            prime_to_p.append((d, pow(d, -1, mod)))
    for g in units:
        delta, u = topological_jordan(TruncatedMatrix(1, p, k, [[g]]))
        found = [
            (d, dinv * g % mod)
            for d, dinv in prime_to_p
            if dinv * g % p == 1
        ]
        assert found == [(delta.rows[0][0], u.rows[0][0])]


def test_tjd_conjugation_equivariance():
    rng = random.Random(42)
    for p, k in [(3, 4), (5, 3)]:
        for _ in range(20):
            g = rand_invertible(rng, 2, p, k)
            h = rand_invertible(rng, 2, p, k)
            hinv = h.inverse()
            delta, u = topological_jordan(g)
            d2, u2 = topological_jordan(h.mul(g).mul(hinv))
            assert d2 == h.mul(delta).mul(hinv)
            assert u2 == h.mul(u).mul(hinv)


# ---------------------------------------------------------------------------
# quasi-logarithm bijectivity at finite precision


def test_qlog_sl2_p3_k1():
    rep = quasi_log_bijection_check("SL2", 3, 1)
    assert rep["unipotent_count"] == 9
    assert rep["nilpotent_count"] == 9
    assert rep["pass"]


def test_qlog_sl2_p3_k2():
    rep = quasi_log_bijection_check("SL2", 3, 2)
    # 9 unipotents mod 3, each with 3^3 lifts per extra digit
    assert rep["unipotent_count"] == 9 * 27
    assert rep["nilpotent_count"] == 9 * 27
    assert rep["identity_to_zero"]
    assert rep["pass"]


def test_qlog_sl2_p5_k1():
    rep = quasi_log_bijection_check("SL2", 5, 1)
    assert rep["unipotent_count"] == 25
    assert rep["pass"]


def test_qlog_gl2():
    rep = quasi_log_bijection_check("GL2", 3, 1)
    assert rep["unipotent_count"] == 9
    assert rep["pass"]


def test_qlog_guards():
    with pytest.raises(ValueError):
        quasi_log_bijection_check("SL2", 2, 1)
    with pytest.raises(ValueError):
        quasi_log_bijection_check("SL2", 7, 3)
    with pytest.raises(ValueError):
        quasi_log_bijection_check("E8", 3, 1)


# ---------------------------------------------------------------------------
# Hilbert symbol and Hasse invariant


@pytest.mark.parametrize("v", ["inf", 2, 3, 5, 7])
def test_hilbert_one_is_trivial(v):
    for b in [Fraction(2), Fraction(-3), Fraction(5, 7), Fraction(-1, 6)]:
        assert hilbert_symbol(1, b, v) == 1


def test_hilbert_pinned_values():
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(-1, -1, "inf") == -1
    # 3^2 = 2 mod 7, so 2 is a square unit at 7
    assert hilbert_symbol(2, 7, 7) == 1
    assert hilbert_symbol(2, 2, "inf") == 1


def test_hilbert_rejects_zero():
    with pytest.raises(ValueError):
        hilbert_symbol(0, 3, 5)


def test_hilbert_symmetric_and_bimultiplicative():
    rng = random.Random(19)
    for _ in range(60):
        a = Fraction(rng.randrange(1, 50)) * rng.choice([1, -1])
        b = Fraction(rng.randrange(1, 50)) * rng.choice([1, -1])
        c = Fraction(rng.randrange(1, 50)) * rng.choice([1, -1])
        for v in ["inf", 2, 3, 5, 7]:
            assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
            assert hilbert_symbol(a * b, c, v) == hilbert_symbol(
                a, c, v
            ) * hilbert_symbol(b, c, v)


def test_hilbert_reciprocity():
    rng = random.Random(23)
    for _ in range(200):
        a = Fraction(rng.randrange(-60, 61) or 1, rng.randrange(1, 40))
        b = Fraction(rng.randrange(-60, 61) or 1, rng.randrange(1, 40))
        prod = 1
        for v in relevant_places(a, b):
            prod *= hilbert_symbol(a, b, v)
        assert prod == 1, (a, b)


def test_hasse_pinned_values():
    ones = DiagQuadForm([1, 1, 1, 1])
    for v in ["inf", 2, 3, 5]:
        assert hasse_invariant(ones, v) == 1
    assert hasse_invariant(DiagQuadForm([-1, -1]), 2) == -1
    assert hasse_invariant(DiagQuadForm([2, 7]), 7) == 1


def test_hasse_square_scaling_invariance():
    rng = random.Random(29)
    for _ in range(40):
        cs = [Fraction(rng.randrange(1, 30)) * rng.choice([1, -1]) for _ in range(3)]
        scaled = [c * rng.randrange(1, 10) ** 2 for c in cs]
        for v in ["inf", 2, 3, 5, 7, 11]:
            assert hasse_invariant(DiagQuadForm(cs), v) == hasse_invariant(
                DiagQuadForm(scaled), v
            )


def test_diag_form_rejects_zero_coefficient():
    with pytest.raises(ValueError):
        DiagQuadForm([1, 0, 2])
    assert DiagQuadForm([1, 2, 3]).rank == 3
