"""Root datum construction, duality, Weyl enumeration, extended diagrams."""

from fractions import Fraction

import pytest

from liechar.root_datum import (
    RootDatum,
    build_root_datum,
    cartan_matrix,
    dual_datum,
    extended_dynkin,
    fundamental_group,
    sub_datum_from_pairs,
    weyl_group_enumerate,
)

ROOT_COUNTS = {
    ("A", 1): 2,
    ("A", 2): 6,
    ("A", 3): 12,
    ("B", 2): 8,
    ("B", 3): 18,
    ("C", 2): 8,
    ("C", 3): 18,
    ("D", 4): 24,
    ("D", 5): 40,
    ("G", 2): 12,
    ("F", 4): 48,
    ("E", 6): 72,
    ("E", 7): 126,
    ("E", 8): 240,
}


def test_root_counts_both_isogenies():
    for (series, rank), count in ROOT_COUNTS.items():
        for isog in ("sc", "ad"):
            d = build_root_datum(series, rank, isog)
            assert len(d.roots) == count, (series, rank, isog)
            assert d.semisimple_rank == rank
            assert d.is_semisimple()


def test_a1_coordinates():
    sc = build_root_datum("A", 1, "sc")
    assert set(sc.roots) == {(2,), (-2,)}
    assert set(sc.coroots) == {(1,), (-1,)}
    ad = build_root_datum("A", 1, "ad")
    assert set(ad.roots) == {(1,), (-1,)}
    assert set(ad.coroots) == {(2,), (-2,)}


def test_gl_special():
    gl3 = build_root_datum("A", 2, "gl-special")
    assert gl3.rank == 3
    assert len(gl3.roots) == 6
    assert (1, -1, 0) in gl3.roots and (0, 1, -1) in gl3.roots and (1, 0, -1) in gl3.roots
    # roots and coroots coincide in these coordinates
    for r, rv in zip(gl3.roots, gl3.coroots):
        assert r == rv
    assert not gl3.is_semisimple()
    with pytest.raises(ValueError):
        fundamental_group(gl3)
    with pytest.raises(ValueError):
        build_root_datum("B", 2, "gl-special")


def test_cartan_entries():
    g2 = cartan_matrix("G", 2)
    assert g2 == [[2, -3], [-1, 2]]
    b3 = cartan_matrix("B", 3)
    assert b3[2][1] == -2 and b3[1][2] == -1
    c3 = cartan_matrix("C", 3)
    assert c3[1][2] == -2 and c3[2][1] == -1
    f4 = cartan_matrix("F", 4)
    assert f4[2][1] == -2 and f4[1][2] == -1


def test_dual_is_involutive():
    for series, rank in [("A", 2), ("B", 3), ("C", 2), ("G", 2), ("D", 4)]:
        d = build_root_datum(series, rank, "sc")
        dd = dual_datum(dual_datum(d))
        assert dd.roots == d.roots
        assert dd.coroots == d.coroots
        assert dd.simple_indices == d.simple_indices
        assert dd.label == d.label


def test_dual_c2sc_is_b2ad():
    c2 = build_root_datum("C", 2, "sc")
    dual = dual_datum(c2)
    b2 = build_root_datum("B", 2, "ad")
    assert dual.label == ("B", 2, "ad")
    assert set(dual.roots) == set(b2.roots)
    assert sorted(zip(dual.roots, dual.coroots)) == sorted(zip(b2.roots, b2.coroots))


FUNDAMENTAL = {
    ("A", 1): (2,),
    ("A", 2): (3,),
    ("A", 3): (4,),
    ("B", 3): (2,),
    ("C", 3): (2,),
    ("D", 4): (2, 2),
    ("D", 5): (4,),
    ("G", 2): (),
    ("F", 4): (),
    ("E", 6): (3,),
    ("E", 7): (2,),
    ("E", 8): (),
}


def test_fundamental_groups():
    for (series, rank), torsion in FUNDAMENTAL.items():
        d = build_root_datum(series, rank, "sc")
        pres = fundamental_group(d)
        assert pres.group.free_rank == 0
        assert pres.group.torsion == torsion, (series, rank)


WEYL_ORDERS = {
    ("A", 2): 6,
    ("A", 3): 24,
    ("B", 2): 8,
    ("B", 3): 48,
    ("C", 3): 48,
    ("D", 4): 192,
    ("G", 2): 12,
    ("F", 4): 1152,
}


def test_weyl_enumeration_matches_formula():
    # the enumerator itself asserts count == formula; also check distinctness
    for (series, rank), order in WEYL_ORDERS.items():
        d = build_root_datum(series, rank, "sc")
        w = weyl_group_enumerate(d)
        assert w.order == order
        assert len(set(w.elements)) == order


def test_weyl_e6_enumerates():
    d = build_root_datum("E", 6, "ad")
    w = weyl_group_enumerate(d)
    assert w.order == 51840
    assert len(w.elements) == 51840


def test_weyl_budget_skips_enumeration():
    d = build_root_datum("E", 8, "sc")
    w = weyl_group_enumerate(d, budget=10**4)
    assert w.order == 696729600
    assert w.elements is None
    assert len(w.generators) == 8


def test_weyl_gl_special_is_symmetric_group():
    gl4 = build_root_datum("A", 3, "gl-special")
    w = weyl_group_enumerate(gl4)
    assert w.order == 24
    # permutation matrices exactly
    for m in w.elements:
        assert sorted(sum(row) for row in m) == [1, 1, 1, 1]
        assert all(x in (0, 1) for row in m for x in row)


def test_extended_marks():
    a1 = extended_dynkin(build_root_datum("A", 1, "sc"))
    assert a1.marks == [1, 1]
    assert a1.edges == [(0, 1, 4, None)]

    b2ad = extended_dynkin(build_root_datum("B", 2, "ad"))
    # highest root alpha_1 + 2 alpha_2, the short simple root carries 2
    assert b2ad.marks == [1, 1, 2]

    g2 = extended_dynkin(build_root_datum("G", 2, "sc"))
    assert g2.marks == [1, 3, 2]
    assert sorted(g2.marks) == [1, 2, 3]

    f4 = extended_dynkin(build_root_datum("F", 4, "sc"))
    assert f4.marks == [1, 2, 3, 4, 2]

    e8 = extended_dynkin(build_root_datum("E", 8, "sc"))
    assert sorted(e8.marks) == [1, 2, 2, 3, 3, 4, 4, 5, 6]

    d4 = extended_dynkin(build_root_datum("D", 4, "sc"))
    assert d4.marks == [1, 1, 2, 1, 1]


def test_extended_arrows():
    # C2 extended: affine node is long, double edges point at the short middle
    c2 = extended_dynkin(build_root_datum("C", 2, "sc"))
    doubles = [(i, j, m, arrow) for (i, j, m, arrow) in c2.edges if m == 2]
    assert len(doubles) == 2
    for i, j, m, arrow in doubles:
        assert arrow == 1  # node 1 = alpha_1, the short root of C2


def test_alcove_vertices():
    for series, rank in [("A", 2), ("B", 2), ("G", 2), ("F", 4), ("D", 4)]:
        d = build_root_datum(series, rank, "sc")
        ext = extended_dynkin(d)
        theta = d.highest_root()
        assert len(ext.vertices) == rank + 1
        assert ext.vertices[0] == tuple(Fraction(0) for _ in range(rank))
        for k, v in enumerate(ext.vertices):
            for a in d.simple_roots:
                assert sum(x * y for x, y in zip(a, v)) >= 0
            t = sum(x * y for x, y in zip(theta, v))
            assert t == (0 if k == 0 else 1)


def test_alcove_vertex_a1():
    ext = extended_dynkin(build_root_datum("A", 1, "sc"))
    assert ext.vertices == [(Fraction(0),), (Fraction(1, 2),)]


def test_classify_from_pairs():
    for series, rank in [("B", 3), ("C", 3), ("A", 2), ("G", 2), ("D", 4), ("F", 4)]:
        d = build_root_datum(series, rank, "sc")
        sub = sub_datum_from_pairs(d.rank, list(zip(d.roots, d.coroots)))
        expect = f"{series}{rank}"
        if series == "C" and rank == 2:
            expect = "B2"
        assert sub.cartan_type() == expect


def _is_long_b2(d, r):
    # long root: no other root pairs with its coroot beyond +-1
    rv = d.coroot_of(r)
    neg = tuple(-x for x in r)
    return all(
        abs(sum(x * y for x, y in zip(s, rv))) <= 1
        for s in d.roots
        if s not in (tuple(r), neg)
    )


def test_classify_long_roots_of_b2():
    b2 = build_root_datum("B", 2, "sc")
    longs = [(r, rv) for r, rv in zip(b2.roots, b2.coroots) if _is_long_b2(b2, r)]
    assert len(longs) == 4
    sub = sub_datum_from_pairs(2, longs)
    assert sub.cartan_type() == "A1+A1"


def test_highest_root_reducible_errors():
    b2 = build_root_datum("B", 2, "sc")
    longs = [(r, d) for r, d in zip(b2.roots, b2.coroots) if _is_long_b2(b2, r)]
    sub = sub_datum_from_pairs(2, longs)
    with pytest.raises(ValueError):
        sub.highest_root()
    with pytest.raises(ValueError):
        extended_dynkin(sub)


def test_rank_cap_and_bad_input():
    with pytest.raises(ValueError):
        build_root_datum("A", 9)
    with pytest.raises(ValueError):
        build_root_datum("E", 5)
    with pytest.raises(ValueError):
        build_root_datum("H", 2)
    with pytest.raises(ValueError):
        build_root_datum("A", 2, "simply")
