"""Packed matrix kernels: correctness of both backends and their agreement."""

import random

import pytest

from liechar import _kernels_py
from liechar._kernels import BACKEND, USING_COMPILED

try:
    from liechar import _kernels_c
except ImportError:
    _kernels_c = None

BACKENDS = [_kernels_py] + ([_kernels_c] if _kernels_c else [])


def _pack(m, q):
    out, w = 0, 1
    for row in m:
        for x in row:
            out += (x % q) * w
            w *= q
    return out


def _unpack(a, q, n):
    d = []
    for _ in range(n):
        row = []
        for _ in range(n):
            row.append(a % q)
            a //= q
        d.append(row)
    return d


def _ref_mul(a, b, q):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) % q for j in range(n)]
        for i in range(n)
    ]


@pytest.mark.parametrize("kern", BACKENDS)
@pytest.mark.parametrize("q,n", [(5, 2), (3, 3), (13, 2), (2, 3)])
def test_mat_mul_matches_reference(kern, q, n):
    rng = random.Random(q * 100 + n)
    for _ in range(40):
        a = [[rng.randrange(q) for _ in range(n)] for _ in range(n)]
        b = [[rng.randrange(q) for _ in range(n)] for _ in range(n)]
        got = kern.mat_mul(_pack(a, q), _pack(b, q), q, n)
        assert _unpack(got, q, n) == _ref_mul(a, b, q)


@pytest.mark.parametrize("kern", BACKENDS)
@pytest.mark.parametrize("q,n", [(5, 2), (3, 3), (13, 2), (7, 1)])
def test_mat_inv_roundtrip(kern, q, n):
    rng = random.Random(q * 10 + n)
    ident = _pack([[1 if i == j else 0 for j in range(n)] for i in range(n)], q)
    found = 0
    while found < 25:
        m = [[rng.randrange(q) for _ in range(n)] for _ in range(n)]
        p = _pack(m, q)
        try:
            pi = kern.mat_inv(p, q, n)
        except ZeroDivisionError:
            continue
        found += 1
        assert kern.mat_mul(p, pi, q, n) == ident
        assert kern.mat_mul(pi, p, q, n) == ident


@pytest.mark.parametrize("kern", BACKENDS)
def test_mat_inv_singular_raises(kern):
    with pytest.raises(ZeroDivisionError):
        kern.mat_inv(_pack([[1, 1], [1, 1]], 5), 5, 2)


def _sl2_elements(q):
    els = []
    for packed in range(q**4):
        a, r = packed % q, packed // q
        b, r = r % q, r // q
        c, d = r % q, r // q
        if (a * d - b * c) % q == 1:
            els.append(packed)
    return els


def _sl2_gens(q):
    return [_pack([[1, 1], [0, 1]], q), _pack([[1, 0], [1, 1]], q)]


@pytest.mark.parametrize("kern", BACKENDS)
def test_sl2_f3_conjugacy_classes(kern):
    els = _sl2_elements(3)
    assert len(els) == 24
    labels = kern.conjugacy_partition(els, _sl2_gens(3), 3, 2)
    assert len(set(labels)) == 7
    sizes = sorted(labels.count(c) for c in set(labels))
    assert sizes == [1, 1, 4, 4, 4, 4, 6]


@pytest.mark.parametrize("kern", BACKENDS)
def test_partition_labels_deterministic(kern):
    els = _sl2_elements(5)
    labels1 = kern.conjugacy_partition(els, _sl2_gens(5), 5, 2)
    labels2 = kern.conjugacy_partition(els, _sl2_gens(5), 5, 2)
    assert labels1 == labels2
    # first element of class k appears before first element of class k+1
    firsts = {}
    for i, lab in enumerate(labels1):
        firsts.setdefault(lab, i)
    order = [firsts[k] for k in sorted(firsts)]
    assert order == sorted(order)


@pytest.mark.parametrize("kern", BACKENDS)
def test_partition_rejects_unclosed_set(kern):
    els = _sl2_elements(3)
    with pytest.raises(ValueError):
        kern.conjugacy_partition(els[:5], _sl2_gens(3), 3, 2)


@pytest.mark.parametrize("kern", BACKENDS)
def test_orbit_of_identity_is_fixed(kern):
    q = 5
    ident = _pack([[1, 0], [0, 1]], q)
    assert kern.orbit_of(ident, _sl2_gens(q), q, 2) == (ident,)


@pytest.mark.parametrize("kern", BACKENDS)
def test_histogram_total_and_values(kern):
    q = 5
    fixed = _pack([[0, 1], [0, 0]], q)
    hist = kern.pair_histogram(fixed, range(q**4), q, 2)
    assert sum(hist) == q**4
    # trace(fixed*y) = y[1][0]: uniform over the field
    assert hist == [q**3] * q


@pytest.mark.skipif(_kernels_c is None, reason="compiled kernels not built")
def test_backends_agree_on_gl2_f5():
    q = 5
    els = [p for p in range(q**4) if _det2(p, q)]
    gens = [_pack([[1, 1], [0, 1]], q), _pack([[1, 0], [1, 1]], q),
            _pack([[2, 0], [0, 1]], q)]
    lp = _kernels_py.conjugacy_partition(els, gens, q, 2)
    lc = _kernels_c.conjugacy_partition(els, gens, q, 2)
    assert lp == lc
    fixed = _pack([[1, 2], [3, 4]], q)
    assert _kernels_py.pair_histogram(fixed, els, q, 2) == \
        _kernels_c.pair_histogram(fixed, els, q, 2)
    assert USING_COMPILED and BACKEND == "compiled"


def _det2(packed, q):
    a, r = packed % q, packed // q
    b, r = r % q, r // q
    c, d = r % q, r // q
    return (a * d - b * c) % q
