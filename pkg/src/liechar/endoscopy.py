"""Split elliptic endoscopy at the diagram level.

Everything runs on the extended Dynkin diagram of the dual root system: the
center of the simply connected dual acts on alcove vertices by translate-and-
fold, orbits of that action classify the split elliptic triples, and deleting
a vertex yields the dual endoscopic root system (Borel-de Siebenthal).

All alcove geometry is exact (Fraction coordinates); folding is plain affine
reflection with a step budget.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .exact_math import FinAbGroup, IntMatrix, abelian_subgroup_type, cokernel_group
from .root_datum import (
    RootDatum,
    dual_datum,
    extended_dynkin,
    sub_datum_from_pairs,
)

FOLD_BUDGET = 10**4


def _dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def _require_simple(g: RootDatum):
    if not g.is_semisimple():
        raise ValueError("semisimple datum required")
    if "+" in g.cartan_type():
        raise ValueError("irreducible (simple) datum required")


# ---------------------------------------------------------------------------
# alcove folding


def fold_to_alcove(d: RootDatum, ext, x, budget=FOLD_BUDGET):
    """Affine-Weyl representative of x in the closed fundamental alcove of d.

    x lives in Y tensor Q of d. Walls: <alpha_i, x> >= 0 for the simple
    roots, <theta, x> <= 1 for the highest root.
    """
    x = tuple(Fraction(v) for v in x)
    simple = list(zip(d.simple_roots, d.simple_coroots))
    theta = ext.node_vectors[0]
    theta = tuple(-t for t in theta)  # node 0 stores -theta
    theta_cov = tuple(-t for t in ext.node_coroots[0])
    for _ in range(budget):
        moved = False
        for a, av in simple:
            t = _dot(a, x)
            if t < 0:
                x = tuple(xi - t * ci for xi, ci in zip(x, av))
                moved = True
        t = _dot(theta, x)
        if t > 1:
            x = tuple(xi - (t - 1) * ci for xi, ci in zip(x, theta_cov))
            moved = True
        if not moved:
            return x
    raise RuntimeError("alcove folding exceeded its step budget")


# ---------------------------------------------------------------------------
# center action on the extended diagram


class CenterDiagramAction:
    """Z(dual sc) acting on the extended-diagram vertex set by translate-fold.

    group: the center as a FinAbGroup; elements are torsion-coordinate tuples.
    permutations: element -> tuple p with p[i] = image node of node i.
    transversal: element -> coweight-lattice representative (vector in the
    alcove space of the dual datum).
    """

    def __init__(self, ambient, dual, ext, group, permutations, transversal):
        self.ambient = ambient
        self.dual = dual
        self.ext = ext
        self.group = group
        self.permutations = permutations
        self.transversal = transversal

    def orbits(self):
        n = self.ext.n_nodes
        seen, out = set(), []
        for start in range(n):
            if start in seen:
                continue
            orb = {start}
            frontier = [start]
            while frontier:
                i = frontier.pop()
                for p in self.permutations.values():
                    j = p[i]
                    if j not in orb:
                        orb.add(j)
                        frontier.append(j)
            seen |= orb
            out.append(frozenset(orb))
        return out

    def stabilizer(self, node) -> FinAbGroup:
        fixed = [z for z, p in self.permutations.items() if p[node] == node]
        return abelian_subgroup_type(fixed, self.group.add, self.group.zero())

    def stabilizer_elements(self, node):
        return [z for z, p in self.permutations.items() if p[node] == node]


def center_alcove_action(g: RootDatum) -> CenterDiagramAction:
    """Action of the center of the simply connected dual group on the
    extended diagram of the dual, by mu: x -> fold(x + mu) over a coweight
    transversal (the origin and the mark-1 alcove vertices)."""
    _require_simple(g)
    d = dual_datum(g)
    ext = extended_dynkin(d)
    pres = cokernel_group(IntMatrix(d.cartan()).transpose())
    group = pres.group

    def coords(v):
        # omega-vee coordinates of a coweight point: pair against simple roots
        out = []
        for a in d.simple_roots:
            t = _dot(a, v)
            if Fraction(t).denominator != 1:
                raise AssertionError("transversal point is not a lattice coweight")
            out.append(int(t))
        return out

    transversal = {}
    for node, v in enumerate(ext.vertices):
        if ext.marks[node] != 1:
            continue
        cls = pres.torsion_coords(coords(v))
        if cls in transversal:
            raise AssertionError("two mark-1 vertices share a center class")
        transversal[cls] = v
    if len(transversal) != group.order:
        raise AssertionError("mark-1 vertices do not exhaust the center")

    vert_index = {v: i for i, v in enumerate(ext.vertices)}
    permutations = {}
    for cls, mu in transversal.items():
        images = []
        for v in ext.vertices:
            w = fold_to_alcove(d, ext, tuple(a + b for a, b in zip(v, mu)))
            if w not in vert_index:
                raise AssertionError("folded vertex is not a vertex")
            images.append(vert_index[w])
        p = tuple(images)
        if sorted(p) != list(range(ext.n_nodes)):
            raise AssertionError("center element does not permute the vertices")
        if any(ext.marks[i] != ext.marks[p[i]] for i in range(ext.n_nodes)):
            raise AssertionError("center action does not preserve marks")
        permutations[cls] = p

    # homomorphism: c_{mu+nu} = c_mu o c_nu
    for z1, p1 in permutations.items():
        for z2, p2 in permutations.items():
            z3 = group.add(z1, z2)
            comp = tuple(p1[p2[i]] for i in range(ext.n_nodes))
            if permutations[z3] != comp:
                raise AssertionError("center action is not a homomorphism")
    ident = permutations[group.zero()]
    if ident != tuple(range(ext.n_nodes)):
        raise AssertionError("identity element acts nontrivially")

    return CenterDiagramAction(g, d, ext, group, permutations, transversal)


# ---------------------------------------------------------------------------
# pseudo-Levi subsystems


def pseudo_levi(g: RootDatum, vertex) -> RootDatum:
    """Full-rank subsystem of the dual generated by the extended-diagram
    nodes other than the given one (delete-a-vertex construction)."""
    _require_simple(g)
    d = dual_datum(g)
    ext = extended_dynkin(d)
    if not 0 <= vertex < ext.n_nodes:
        raise ValueError(f"vertex {vertex} out of range for {ext.n_nodes} nodes")
    gens = [
        (ext.node_vectors[i], ext.node_coroots[i])
        for i in range(ext.n_nodes)
        if i != vertex
    ]
    pairs = _reflection_closure(gens)
    sub = sub_datum_from_pairs(d.rank, pairs)
    if not sub.is_semisimple():
        raise AssertionError("pseudo-Levi is not full rank")
    return sub


def _reflection_closure(gens):
    pairs = {tuple(a): tuple(av) for a, av in gens}
    frontier = list(pairs)
    gen_list = [(tuple(a), tuple(av)) for a, av in gens]
    while frontier:
        nxt = []
        for b in frontier:
            bv = pairs[b]
            for a, av in gen_list:
                rb = tuple(x - _dot(b, av) * y for x, y in zip(b, a))
                if rb not in pairs:
                    pairs[rb] = tuple(x - _dot(a, bv) * y for x, y in zip(bv, av))
                    nxt.append(rb)
        frontier = nxt
    return sorted(pairs.items())


# ---------------------------------------------------------------------------
# endoscopic triples


class EndoscopicTriple:
    """Split endoscopic datum at the diagram level.

    s_point is an alcove point (rational cocharacter of the dual maximal
    torus) and ord_s its order; for the enumerated elliptic triples the point
    is an alcove vertex and ord_s equals the vertex mark. levi_datum is the
    dual-side subsystem (the connected centralizer of s); H_datum is its
    dual, the endoscopic group itself.
    """

    def __init__(self, ambient, levi_datum, h_datum, s_point, ord_s, vertex_orbit, elliptic, lam, z_of_e):
        self.ambient = ambient
        self.levi_datum = levi_datum
        self.H_datum = h_datum
        self.s_point = s_point
        self.ord_s = ord_s
        self.vertex_orbit = vertex_orbit
        self.elliptic = elliptic
        self.lam = lam
        self.z_of_E = z_of_e

    @property
    def h_type(self):
        return self.H_datum.cartan_type()

    def same_triple(self, other):
        # diagram-level identification: orbit, type, order of s
        return (
            self.vertex_orbit == other.vertex_orbit
            and self.h_type == other.h_type
            and self.ord_s == other.ord_s
        )

    def serialize(self):
        return {
            "orbit": sorted(self.vertex_orbit),
            "ord_s": self.ord_s,
            "H_type": self.h_type,
            "lambda": self.lam.serialize(),
            "elliptic": self.elliptic,
        }

    def __repr__(self):
        return (
            f"EndoscopicTriple(H={self.h_type}, ord_s={self.ord_s}, "
            f"orbit={sorted(self.vertex_orbit)}, lambda={self.lam!r})"
        )


def _triple_from_orbit(action, orbit):
    g = action.ambient
    ext = action.ext
    marks = {ext.marks[i] for i in orbit}
    if len(marks) != 1:
        raise AssertionError("mark not constant on a center orbit")
    ord_s = marks.pop()
    rep = min(orbit)
    if 0 in orbit:
        rep = 0  # trivial triple: delete the affine node, H = G
    levi = pseudo_levi(g, rep)
    lam = action.stabilizer(rep)
    if lam.order * len(orbit) != action.group.order:
        raise AssertionError("orbit-stabilizer mismatch")
    return EndoscopicTriple(
        ambient=g,
        levi_datum=levi,
        h_datum=dual_datum(levi),
        s_point=ext.vertices[rep],
        ord_s=ord_s,
        vertex_orbit=frozenset(orbit),
        elliptic=True,
        lam=lam,
        z_of_e=lam,
    )


def enumerate_split_elliptic(g: RootDatum) -> list:
    """One elliptic triple per center orbit of extended-diagram vertices."""
    _require_simple(g)
    if g.label and g.label[2] not in ("sc", "ad"):
        raise ValueError("sc or ad isogeny required")
    action = center_alcove_action(g)
    orbits = action.orbits()
    triples = [_triple_from_orbit(action, orbit) for orbit in orbits]
    triples.sort(key=lambda t: (t.ord_s, min(t.vertex_orbit)))
    if not any(0 in t.vertex_orbit for t in triples):
        raise AssertionError("trivial triple missing")
    if len(triples) != len(orbits):
        raise AssertionError("orbit count mismatch")
    return triples


def endoscopic_from_kappa(g: RootDatum, kappa) -> EndoscopicTriple:
    """Endoscopic datum attached to a rational cocharacter point kappa of the
    dual torus: dual-H roots are exactly the roots pairing integrally with
    kappa. Elliptic when that system has full rank; then the triple is the
    enumerated one whose orbit contains the alcove reduction of kappa."""
    _require_simple(g)
    if any(isinstance(v, float) for v in kappa):
        raise TypeError("kappa needs exact rational coordinates, not floats")
    kappa = tuple(Fraction(v) for v in kappa)
    d = dual_datum(g)
    if len(kappa) != d.rank:
        raise ValueError("kappa has the wrong length")
    pairs = [
        (r, rv)
        for r, rv in zip(d.roots, d.coroots)
        if _dot(r, kappa).denominator == 1
    ]
    sub = sub_datum_from_pairs(d.rank, pairs)
    elliptic = bool(pairs) and sub.is_semisimple()

    # order of exp(2 pi i kappa) in the adjoint dual torus: lcm of the
    # denominators of the root pairings
    ord_s = 1
    for r in d.roots:
        ord_s = ord_s * _dot(r, kappa).denominator // gcd(ord_s, _dot(r, kappa).denominator)

    if not elliptic:
        return EndoscopicTriple(
            ambient=g,
            levi_datum=sub,
            h_datum=dual_datum(sub),
            s_point=kappa,
            ord_s=ord_s,
            vertex_orbit=frozenset(),
            elliptic=False,
            lam=FinAbGroup(),
            z_of_e=FinAbGroup(),
        )

    action = center_alcove_action(g)
    folded = fold_to_alcove(d, action.ext, kappa)
    vert_index = {v: i for i, v in enumerate(action.ext.vertices)}
    if folded not in vert_index:
        raise AssertionError("elliptic kappa did not fold onto an alcove vertex")
    node = vert_index[folded]
    for orbit in action.orbits():
        if node in orbit:
            triple = _triple_from_orbit(action, orbit)
            if triple.levi_datum.cartan_type() != sub.cartan_type():
                raise AssertionError("vertex subsystem disagrees with kappa subsystem")
            return triple
    raise AssertionError("unreachable: vertex not in any orbit")


def triple_symmetries(e: EndoscopicTriple):
    """(Lambda, Z) of an elliptic split triple; the two groups coincide."""
    if not e.elliptic:
        raise ValueError("symmetry groups are defined for elliptic triples")
    return e.lam, e.z_of_E


# ---------------------------------------------------------------------------
# diagram facts behind the case-by-case estimate


def estimate_diagram_check(g: RootDatum) -> dict:
    """Report every non-special center orbit (not the orbit of the affine
    node) of size > 2, with its mark and gcd against the center order. Type A
    is excluded."""
    _require_simple(g)
    if g.label and g.label[0] == "A":
        raise ValueError("type A is excluded from the estimate check")
    if not g.label and g.cartan_type().startswith("A") and "+" not in g.cartan_type():
        raise ValueError("type A is excluded from the estimate check")
    action = center_alcove_action(g)
    orbits = action.orbits()
    special = next(o for o in orbits if 0 in o)
    z_order = action.group.order
    large = []
    for o in orbits:
        if o == special or len(o) <= 2:
            continue
        mark = action.ext.marks[min(o)]
        large.append(
            {
                "orbit": sorted(o),
                "size": len(o),
                "ord_s": mark,
                "gcd_with_center": gcd(mark, z_order),
            }
        )
    large.sort(key=lambda r: r["orbit"])
    return {
        "type": g.cartan_type(),
        "center_order": z_order,
        "special_orbit": sorted(special),
        "large_nonspecial_orbits": large,
    }
