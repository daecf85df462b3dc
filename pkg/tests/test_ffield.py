import pytest

from liechar.exact_math import Cyclotomic, finite_field_build


def test_f3_generator():
    k = finite_field_build(3)
    assert k.q == 3 and k.gen == 2


def test_f5_generator():
    k = finite_field_build(5)
    assert k.gen == 2  # ord(2) = 4 mod 5


def test_f9_structure():
    k = finite_field_build(3, 2)
    assert k.q == 9
    assert len(k.exp_table) == 8
    assert len({k.mul(k.gen, x) for x in range(1, 9)}) == 8
    # Frobenius fixes exactly the prime field
    fixed = [x for x in range(9) if k.pow(x, 3) == x if x != 0] + [0]
    assert sorted(fixed) == [0, 1, 2]


def test_field_axioms_f27():
    k = finite_field_build(3, 3)
    xs = list(range(k.q))
    for a in xs[:9]:
        for b in xs[:9]:
            assert k.mul(a, b) == k.mul(b, a)
            assert k.add(a, b) == k.add(b, a)
            assert k.mul(a, k.add(b, 1)) == k.add(k.mul(a, b), a)
    for a in range(1, k.q):
        assert k.mul(a, k.inv(a)) == 1


def test_bad_inputs():
    with pytest.raises(ValueError):
        finite_field_build(4)
    with pytest.raises(ValueError):
        finite_field_build(6)
    with pytest.raises(ValueError):
        finite_field_build(2, 4)
    with pytest.raises(ValueError):
        finite_field_build(127, 3)  # 127^3 > 2^14


def test_additive_character_sums_to_zero():
    for (p, f) in [(3, 1), (5, 1), (7, 1), (3, 2)]:
        k = finite_field_build(p, f)
        s = Cyclotomic.zero()
        for x in range(k.q):
            s = s + k.psi(x)
        assert s.is_zero()
        # psi is additive
        assert k.psi(1) * k.psi(1) == k.psi(k.add(1, 1))
        # and nontrivial
        assert any(not (k.psi(x) - 1).is_zero() for x in range(k.q))


def test_multiplicative_character_sums():
    k = finite_field_build(7)
    for j in range(1, 6):
        s = Cyclotomic.zero()
        for x in range(1, 7):
            s = s + k.mult_char_value(j, x)
        assert s.is_zero(), f"character {j} sum nonzero"
    # trivial character sums to q-1
    s = Cyclotomic.zero()
    for x in range(1, 7):
        s = s + k.mult_char_value(0, x)
    assert s == 6


def test_trace_additive_and_surjective():
    k = finite_field_build(3, 2)
    traces = set()
    for a in range(9):
        for b in range(9):
            assert k.trace(k.add(a, b)) == (k.trace(a) + k.trace(b)) % 3
        traces.add(k.trace(a))
    assert traces == {0, 1, 2}


def test_non_residue():
    assert finite_field_build(3).non_residue == 2
    assert finite_field_build(5).non_residue == 2
    assert finite_field_build(7).non_residue == 3
    assert finite_field_build(11).non_residue == 2
    assert finite_field_build(13).non_residue == 2
