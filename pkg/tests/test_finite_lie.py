"""Finite matrix groups: builds, quasi-logarithm, orbits, Fourier, tori."""

import random

import pytest

from liechar.exact_math import Cyclotomic
from liechar.finite_lie import (
    LieFunction,
    adjoint_orbit,
    build_finite_group,
    finite_fourier,
    is_a_strongly_regular,
    is_strongly_regular,
    quasi_logarithm,
    tori_and_regularity,
)


# --- build contracts ----------------------------------------------------------


def test_group_orders():
    assert build_finite_group("GL2", 3).order == 48
    assert build_finite_group("SL2", 5).order == 120
    assert build_finite_group("SL2", 3).order == 24
    assert build_finite_group("GL2", 5).order == 480


def test_sl2_even_q_rejected_for_center():
    with pytest.raises(ValueError, match="center"):
        build_finite_group("SL2", 2)


def test_sl3_rejected_at_its_only_odd_q():
    with pytest.raises(ValueError, match="center"):
        build_finite_group("SL3", 3)
    with pytest.raises(ValueError, match="budget"):
        build_finite_group("SL3", 5)


def test_budget_and_bad_q():
    with pytest.raises(ValueError, match="budget"):
        build_finite_group("SL2", 17)
    with pytest.raises(ValueError):
        build_finite_group("GL2", 15)  # not a prime power
    with pytest.raises(ValueError):
        build_finite_group("XX2", 5)


def test_prime_power_field_path():
    g = build_finite_group("GL2", 9)
    assert g.order == (81 - 1) * (81 - 9)
    assert g.field.f == 2


def test_builds_are_cached():
    assert build_finite_group("SL2", 3) is build_finite_group("SL2", 3)


# --- quasi-logarithm ----------------------------------------------------------


def test_qlog_identity_is_zero():
    for kind, q in (("GL2", 3), ("SL2", 5)):
        g = build_finite_group(kind, q)
        z = g.lie_from_coeffs((0,) * g.dim)
        assert quasi_logarithm(g, g.identity) == z


def test_qlog_gl2_is_g_minus_one():
    g = build_finite_group("GL2", 3)
    rng = random.Random(7)
    for _ in range(20):
        x = rng.choice(g.elements)
        m = g.unpack(x)
        expect = [
            [g.field.sub(m[i][j], 1 if i == j else 0) for j in range(2)]
            for i in range(2)
        ]
        assert quasi_logarithm(g, x) == g.pack(expect)


def test_qlog_sl2_worked_example():
    g = build_finite_group("SL2", 5)
    u = g.pack([[1, 1], [0, 1]])
    assert quasi_logarithm(g, u) == g.pack([[0, 1], [0, 0]])


def test_qlog_rejects_non_elements():
    g = build_finite_group("SL2", 3)
    with pytest.raises(ValueError):
        quasi_logarithm(g, g.pack([[1, 0], [0, 2]]))  # det = 2


def test_qlog_ad_equivariant():
    for kind, q in (("GL2", 3), ("SL2", 5)):
        g = build_finite_group(kind, q)
        rng = random.Random(11)
        for _ in range(100):
            h = rng.choice(g.elements)
            x = rng.choice(g.elements)
            assert quasi_logarithm(g, g.conj(h, x)) == g.conj(
                h, quasi_logarithm(g, x)
            )


def test_qlog_derivative_is_identity_on_dual_numbers():
    # Phi(1 + eps X) = eps X over F_q[eps]/(eps^2), checked per basis vector
    for kind, q in (("GL2", 3), ("SL2", 5)):
        g = build_finite_group(kind, q)
        fld = g.field
        for x in g.lie_basis:
            mx = g.unpack(x)
            # constant part of Phi(1 + eps X) is Phi(1) = 0; eps part:
            # GL2: X itself; SL2: X - (Tr X / 2) Id, and X is traceless
            if kind == "GL2":
                eps_part = mx
            else:
                tr = fld.add(mx[0][0], mx[1][1])
                c = fld.mul(tr, fld.inv(2 % fld.p))
                eps_part = [
                    [fld.sub(mx[i][j], c if i == j else 0) for j in range(2)]
                    for i in range(2)
                ]
            assert g.pack(eps_part) == x


def test_qlog_bijects_unipotents_onto_nilpotents():
    for kind, q in (("SL2", 3), ("SL2", 5), ("SL2", 7), ("GL2", 3), ("GL2", 5)):
        g = build_finite_group(kind, q)
        uni = g.unipotents()
        nil = set(g.nilpotents())
        assert len(uni) == q * q
        assert len(nil) == q * q
        image = {quasi_logarithm(g, u) for u in uni}
        assert image == nil


# --- pairing and orbits ---------------------------------------------------------


def test_pairing_ad_invariant():
    g = build_finite_group("SL2", 7)
    rng = random.Random(13)
    pts = [
        g.lie_from_coeffs(tuple(rng.randrange(7) for _ in range(3)))
        for _ in range(100)
    ]
    for t in pts:
        h = rng.choice(g.elements)
        s = rng.choice(pts)
        assert g.pairing_code(g.conj(h, t), g.conj(h, s)) == g.pairing_code(t, s)


def test_adjoint_orbit_of_zero():
    g = build_finite_group("SL2", 5)
    z = g.lie_from_coeffs((0, 0, 0))
    assert adjoint_orbit(g, z) == {z}


def test_adjoint_orbit_sizes_regular():
    for q in (3, 5, 7):
        g = build_finite_group("SL2", q)
        split_t = g.pack([[1, 0], [0, g.field.neg(1)]])
        assert len(adjoint_orbit(g, split_t)) == q * (q + 1)
        eps = g.field.non_residue
        ell_t = g.pack([[0, eps], [1, 0]])
        assert len(adjoint_orbit(g, ell_t)) == q * (q - 1)


def test_unipotent_class_reps_partition():
    for kind, q in (("GL2", 5), ("SL2", 5), ("SL2", 3)):
        g = build_finite_group(kind, q)
        reps = g.unipotent_class_reps()
        orbits = [g.conjugation_orbit_of(r) for r in reps]
        sizes = sorted(len(o) for o in orbits)
        if kind == "GL2":
            assert sizes == [1, q * q - 1]
        else:
            assert sizes == [1, (q * q - 1) // 2, (q * q - 1) // 2]
        union = set()
        for o in orbits:
            assert union.isdisjoint(o)
            union.update(o)
        assert union == set(g.unipotents())


# --- finite Fourier transform ----------------------------------------------------


def test_fourier_delta_and_constant():
    g = build_finite_group("SL2", 3)
    zero = g.lie_from_coeffs((0, 0, 0))
    delta0 = LieFunction.delta(g, zero)
    f1 = finite_fourier(g, delta0)
    assert all(v == Cyclotomic.rational(1) for v in f1.values)
    f2 = finite_fourier(g, LieFunction.constant(g, 1))
    n = g.q**g.dim
    for i, v in enumerate(f2.values):
        assert v == (n if i == g.lie_index(zero) else 0)


def test_fourier_inversion_random():
    g = build_finite_group("SL2", 3)
    rng = random.Random(5)
    n = g.q**g.dim
    f = LieFunction(g, [rng.randrange(-3, 4) for _ in range(n)])
    ff = finite_fourier(g, finite_fourier(g, f))
    for t in g.lie_points():
        neg = g.pack(
            [[g.field.neg(x) for x in row] for row in g.unpack(t)]
        )
        assert ff.value_at(t) == f.value_at(neg) * n


def test_lie_function_budget():
    g = build_finite_group("GL2", 11)
    with pytest.raises(ValueError, match="budget"):
        LieFunction.constant(g, 1)


# --- tori and regularity --------------------------------------------------------


def test_sl2_has_two_torus_classes():
    for q in (3, 5, 7):
        g = build_finite_group("SL2", q)
        tori = tori_and_regularity(g)
        assert len(tori) == 2
        by_tag = {t.tag: t for t in tori}
        assert by_tag["split"].order == q - 1
        assert by_tag["elliptic"].order == q + 1
        assert by_tag["split"].sign == 1
        assert by_tag["elliptic"].sign == -1


def test_gl2_torus_orders_and_signs():
    g = build_finite_group("GL2", 5)
    by_tag = {t.tag: t for t in tori_and_regularity(g)}
    assert by_tag["split"].order == 16
    assert by_tag["elliptic"].order == 24
    assert by_tag["split"].sign == 1
    assert by_tag["elliptic"].sign == -1
    assert by_tag["elliptic"].non_residue == g.field.non_residue
    assert by_tag["elliptic"].serialize()["non_residue"] == g.field.non_residue


def test_weyl_action_is_involution_on_points():
    g = build_finite_group("SL2", 5)
    for torus in tori_and_regularity(g):
        moved = 0
        for p, ip in torus.weyl.items():
            assert torus.weyl[ip] == p
            if ip != p:
                moved += 1
        assert moved > 0


def test_a_strong_regularity_worked_example():
    g = build_finite_group("SL2", 3)
    split = next(t for t in tori_and_regularity(g) if t.tag == "split")
    t = g.pack([[1, 0], [0, g.field.neg(1)]])
    assert is_a_strongly_regular(split, t)
    zero = g.lie_from_coeffs((0, 0, 0))
    assert not is_a_strongly_regular(split, zero)
    with pytest.raises(ValueError):
        is_a_strongly_regular(split, g.pack([[0, 1], [0, 0]]))


def test_a_strong_regularity_elliptic():
    g = build_finite_group("SL2", 5)
    ell = next(t for t in tori_and_regularity(g) if t.tag == "elliptic")
    eps = g.field.non_residue
    t = g.pack([[0, eps], [1, 0]])
    assert is_a_strongly_regular(ell, t)


def test_strong_regularity():
    g = build_finite_group("SL2", 5)
    zero = g.lie_from_coeffs((0, 0, 0))
    assert not is_strongly_regular(g, zero)
    assert not is_strongly_regular(g, g.pack([[0, 1], [0, 0]]))  # nilpotent
    assert is_strongly_regular(g, g.pack([[1, 0], [0, g.field.neg(1)]]))
    eps = g.field.non_residue
    assert is_strongly_regular(g, g.pack([[0, eps], [1, 0]]))


def test_torus_lie_points_counts():
    g = build_finite_group("GL2", 3)
    by_tag = {t.tag: t for t in tori_and_regularity(g)}
    assert len(by_tag["split"].lie_points()) == 9
    assert len(by_tag["elliptic"].lie_points()) == 9
    gs = build_finite_group("SL2", 3)
    for torus in tori_and_regularity(gs):
        assert len(torus.lie_points()) == 3
