"""Root data for the simple series A-G at chosen isogeny, their duals, Weyl
groups, and extended Dynkin diagrams with alcove vertex data.

Conventions. A root datum here is a lattice X = Z^rank together with aligned
tuples of roots (vectors in X) and coroots (vectors in the dual lattice Y),
pairing = the standard dot product between dual bases. Simple roots follow
Bourbaki numbering. The Cartan matrix is C[i][j] = <alpha_j, alpha_i^vee>,
rows indexed by coroots.

Isogeny choices:
  'sc'          X is spanned by fundamental weights (simply connected form)
  'ad'          X is spanned by the roots (adjoint form)
  'gl-special'  series A only: X = Z^(rank+1) with roots e_i - e_j (GL_n type,
                not semisimple)
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .exact_math import IntMatrix, cokernel_group, smith_normal_form

SERIES = ("A", "B", "C", "D", "E", "F", "G")


# ---------------------------------------------------------------------------
# linear algebra helpers over Q


def solve_rational(rows, b):
    """Solve the square system rows * x = b exactly over Q."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(rows, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(a[r][n] for r in range(n))


def _dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def _rank_of_span(vectors, dim):
    if not vectors:
        return 0
    m = IntMatrix(list(vectors))
    _, d, _ = smith_normal_form(m)
    r, c = m.shape
    return sum(1 for i in range(min(r, c)) if d.at(i, i) != 0)


# ---------------------------------------------------------------------------
# Cartan matrices, Bourbaki numbering


def cartan_matrix(series, rank):
    """C[i][j] = <alpha_j, alpha_i^vee> for the given simple series."""
    n = rank
    if series == "A":
        if n < 1:
            raise ValueError("A_n needs rank >= 1")
        pairs = [(i, i + 1) for i in range(n - 1)]
        special = {}
    elif series == "B":
        if n < 2:
            raise ValueError("B_n needs rank >= 2")
        pairs = [(i, i + 1) for i in range(n - 1)]
        special = {(n - 1, n - 2): -2}  # alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
    elif series == "C":
        if n < 2:
            raise ValueError("C_n needs rank >= 2")
        pairs = [(i, i + 1) for i in range(n - 1)]
        special = {(n - 2, n - 1): -2}  # alpha_n long: <alpha_n, alpha_{n-1}^vee> = -1 ... transpose of B
    elif series == "D":
        if n < 3:
            raise ValueError("D_n needs rank >= 3")
        pairs = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        special = {}
    elif series == "E":
        if n not in (6, 7, 8):
            raise ValueError("E_n needs rank 6, 7 or 8")
        # Bourbaki: node 2 hangs off node 4; chain 1-3-4-5-6(-7)(-8)
        chain = [(0, 2)] + [(i, i + 1) for i in range(2, n - 1)]
        pairs = chain + [(1, 3)]
        special = {}
    elif series == "F":
        if n != 4:
            raise ValueError("F_4 only")
        pairs = [(0, 1), (1, 2), (2, 3)]
        special = {(2, 1): -2}  # alpha_3 short: <alpha_2, alpha_3^vee> = -2
    elif series == "G":
        if n != 2:
            raise ValueError("G_2 only")
        pairs = [(0, 1)]
        special = {(0, 1): -3}  # alpha_1 short: <alpha_2, alpha_1^vee> = -3
    else:
        raise ValueError(f"unknown series {series!r}")

    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in pairs:
        c[i][j] = -1
        c[j][i] = -1
    for (i, j), v in special.items():
        c[i][j] = v
    return c


def _check_series_rank(series, rank):
    if series not in SERIES:
        raise ValueError(f"unknown series {series!r}")
    if rank > 8:
        raise ValueError("rank cap is 8")
    cartan_matrix(series, rank)  # validates the combination


# ---------------------------------------------------------------------------
# the datum


class RootDatum:
    """Lattice Z^rank with aligned root/coroot tuples."""

    def __init__(self, rank, roots, coroots, simple_indices, label=None, validate=True):
        self.rank = int(rank)
        self.roots = tuple(tuple(v) for v in roots)
        self.coroots = tuple(tuple(v) for v in coroots)
        self.simple_indices = tuple(simple_indices)
        self.label = label  # (series, rank, isogeny) for constructed data
        if validate:
            self._validate()

    def _validate(self):
        if len(self.roots) != len(self.coroots):
            raise ValueError("roots and coroots misaligned")
        for b, bv in zip(self.roots, self.coroots):
            if _dot(b, bv) != 2:
                raise ValueError(f"<beta, beta^vee> != 2 for {b}")
        rootset = set(self.roots)
        for i in self.simple_indices:
            if not 0 <= i < len(self.roots):
                raise ValueError("bad simple index")
        # reflections through simple roots must permute the roots
        for i in self.simple_indices:
            a, av = self.roots[i], self.coroots[i]
            for b in self.roots:
                refl = tuple(x - _dot(b, av) * y for x, y in zip(b, a))
                if refl not in rootset:
                    raise ValueError("root set not reflection-closed")

    # -- basic accessors

    @property
    def simple_roots(self):
        return tuple(self.roots[i] for i in self.simple_indices)

    @property
    def simple_coroots(self):
        return tuple(self.coroots[i] for i in self.simple_indices)

    @property
    def semisimple_rank(self):
        return len(self.simple_indices)

    def is_semisimple(self):
        return _rank_of_span(self.roots, self.rank) == self.rank and len(self.roots) > 0

    def pairing(self, x, y):
        return _dot(x, y)

    def coroot_of(self, root):
        return self.coroots[self.roots.index(tuple(root))]

    def cartan(self):
        s, sv = self.simple_roots, self.simple_coroots
        return [[_dot(a, bv) for a in s] for bv in sv]

    # -- expansion in the simple basis

    def simple_coefficients(self, root):
        """Coefficients of a root over the simple roots, as Fractions."""
        n = len(self.simple_indices)
        # solve sum_j c_j <alpha_j, alpha_i^vee> = <root, alpha_i^vee>
        rows = [[_dot(self.simple_roots[j], self.simple_coroots[i]) for j in range(n)] for i in range(n)]
        b = [_dot(root, self.simple_coroots[i]) for i in range(n)]
        return solve_rational(rows, b)

    def positive_roots(self):
        out = []
        for b in self.roots:
            coeffs = self.simple_coefficients(b)
            if sum(coeffs) > 0:
                out.append(b)
        return tuple(out)

    def highest_root(self):
        """Unique root of maximal height; requires an irreducible system."""
        best, best_h = None, None
        for b in self.roots:
            h = sum(self.simple_coefficients(b))
            if best_h is None or h > best_h:
                best, best_h = b, h
        ties = [
            b
            for b in self.roots
            if sum(self.simple_coefficients(b)) == best_h
        ]
        if len(ties) != 1:
            raise ValueError("highest root not unique: system is reducible")
        return best

    # -- classification

    def components(self):
        """Connected components of the simple diagram, as index lists."""
        n = len(self.simple_indices)
        c = self.cartan()
        seen, comps = set(), []
        for start in range(n):
            if start in seen:
                continue
            stack, comp = [start], []
            seen.add(start)
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(n):
                    if j not in seen and c[i][j] != 0 and i != j:
                        seen.add(j)
                        stack.append(j)
            comps.append(sorted(comp))
        return comps

    def cartan_type(self):
        """Canonical type string, e.g. 'B3', 'A1+A1', 'A2+A2+A2', '0'."""
        if not self.simple_indices:
            return "0"
        c = self.cartan()
        names = [
            _classify_component(
                comp, c
            )
            for comp in self.components()
        ]
        names.sort(key=lambda s: (-int(s[1:]), s[0]))
        return "+".join(names)

    def __repr__(self):
        if self.label:
            series, rank, isog = self.label
            return f"RootDatum({series}{rank}, {isog})"
        return f"RootDatum({self.cartan_type()}, rank {self.rank} lattice, derived)"


def _classify_component(comp, c):
    """Type of one connected component of a Cartan matrix."""
    k = len(comp)
    if k == 1:
        return "A1"
    edges = {}
    for a in comp:
        for b in comp:
            if a < b and c[a][b] != 0:
                edges[(a, b)] = c[a][b] * c[b][a]
    mults = sorted(edges.values())
    deg = {a: sum(1 for e in edges if a in e) for a in comp}
    maxdeg = max(deg.values())

    if mults == [1] * (k - 1):
        if maxdeg <= 2:
            return f"A{k}"
        if maxdeg == 3 and sum(1 for d in deg.values() if d == 3) == 1:
            branch = next(a for a, d in deg.items() if d == 3)
            legs = _leg_lengths(comp, edges, branch)
            legs.sort()
            if legs == [1, 1, k - 3]:
                return f"D{k}"
            if legs == [1, 2, 2] and k == 6:
                return "E6"
            if legs == [1, 2, 3] and k == 7:
                return "E7"
            if legs == [1, 2, 4] and k == 8:
                return "E8"
        raise ValueError("unrecognized simply-laced diagram")
    if sorted(mults)[-1] == 3 and k == 2:
        return "G2"
    if mults.count(2) == 1 and all(m in (1, 2) for m in mults) and maxdeg <= 2:
        (a, b), = [e for e, m in edges.items() if m == 2]
        if k == 2:
            return "B2"  # = C2 as an abstract type
        # path: the double edge sits at an end (B/C) or in the middle (F4)
        enda, endb = deg[a] == 1, deg[b] == 1
        if not (enda or endb):
            if k == 4:
                return "F4"
            raise ValueError("double edge strictly inside a long path")
        leaf = a if enda else b
        other = b if enda else a
        # leaf short <=> <alpha_other, alpha_leaf^vee> = -2 <=> longer 'other'
        leaf_is_short = c[leaf][other] == -2
        return f"B{k}" if leaf_is_short else f"C{k}"
    raise ValueError(f"unrecognized diagram with edge multiplicities {mults}")


def _leg_lengths(comp, edges, branch):
    adj = {a: [] for a in comp}
    for (a, b) in edges:
        adj[a].append(b)
        adj[b].append(a)
    legs = []
    for start in adj[branch]:
        length, prev, cur = 1, branch, start
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        legs.append(length)
    return legs


# ---------------------------------------------------------------------------
# construction


def _generate_root_pairs(simple_roots, simple_coroots):
    """Closure of the simple (root, coroot) pairs under simple reflections."""
    simple_roots = [tuple(v) for v in simple_roots]
    simple_coroots = [tuple(v) for v in simple_coroots]
    pairs = dict(zip(simple_roots, simple_coroots))
    frontier = list(simple_roots)
    while frontier:
        nxt = []
        for b in frontier:
            bv = pairs[b]
            for a, av in zip(simple_roots, simple_coroots):
                rb = tuple(x - _dot(b, av) * y for x, y in zip(b, a))
                if rb not in pairs:
                    rbv = tuple(x - _dot(a, bv) * y for x, y in zip(bv, av))
                    pairs[rb] = rbv
                    nxt.append(rb)
        frontier = nxt
    roots = sorted(pairs)
    return roots, [pairs[b] for b in roots]


def build_root_datum(series, rank, isogeny="sc") -> RootDatum:
    """Construct the root datum of the given simple series and isogeny type."""
    _check_series_rank(series, rank)
    if isogeny not in ("sc", "ad", "gl-special"):
        raise ValueError(f"unknown isogeny {isogeny!r}")

    if isogeny == "gl-special":
        if series != "A":
            raise ValueError("gl-special is defined for series A only")
        n = rank + 1
        simple = [tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n)) for i in range(rank)]
        roots, coroots = _generate_root_pairs(simple, simple)
        idx = [roots.index(s) for s in simple]
        return RootDatum(n, roots, coroots, idx, label=(series, rank, isogeny))

    c = cartan_matrix(series, rank)
    n = rank
    if isogeny == "sc":
        # X = weight basis: alpha_j = column j of C; coroots are unit vectors
        simple = [tuple(c[i][j] for i in range(n)) for j in range(n)]
        simple_cov = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    else:
        # X = root basis: alpha_j = e_j; coroot j = row j of C
        simple = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
        simple_cov = [tuple(c[i][k] for k in range(n)) for i in range(n)]
    roots, coroots = _generate_root_pairs(simple, simple_cov)
    idx = [roots.index(s) for s in simple]
    return RootDatum(n, roots, coroots, idx, label=(series, rank, isogeny))


_DUAL_SERIES = {"A": "A", "B": "C", "C": "B", "D": "D", "E": "E", "F": "F", "G": "G"}
_DUAL_ISOGENY = {"sc": "ad", "ad": "sc", "gl-special": "gl-special"}


def dual_datum(d: RootDatum) -> RootDatum:
    """Swap (X, roots) with (Y, coroots)."""
    label = None
    if d.label:
        series, rank, isog = d.label
        label = (_DUAL_SERIES[series], rank, _DUAL_ISOGENY[isog])
    return RootDatum(d.rank, d.coroots, d.roots, d.simple_indices, label=label, validate=False)


def sub_datum_from_pairs(rank, pairs, validate=True) -> RootDatum:
    """Datum on the same lattice spanned by a reflection-closed set of
    (root, coroot) pairs. A simple system is extracted with a generic
    big-base linear functional."""
    pairs = [(tuple(a), tuple(b)) for a, b in pairs]
    if not pairs:
        return RootDatum(rank, (), (), (), validate=False)
    maxc = max(abs(x) for a, _ in pairs for x in a)
    base = maxc + 2
    weights = [base**k for k in range(rank)]

    def phi(v):
        return _dot(v, weights)

    positives = [a for a, _ in pairs if phi(a) > 0]
    posset = set(positives)
    simple = []
    for b in positives:
        if not any(tuple(x - y for x, y in zip(b, g)) in posset for g in positives if g != b):
            simple.append(b)
    roots = sorted(a for a, _ in pairs)
    co = dict(pairs)
    coroots = [co[a] for a in roots]
    idx = [roots.index(s) for s in simple]
    return RootDatum(rank, roots, coroots, idx, validate=validate)


# ---------------------------------------------------------------------------
# fundamental group


def fundamental_group(d: RootDatum):
    """Weight lattice over root lattice of the semisimple type, presented as
    the cokernel of the Cartan matrix. Errors on non-semisimple data."""
    if not d.is_semisimple():
        raise ValueError("fundamental group needs a semisimple datum")
    c = IntMatrix(d.cartan())
    return cokernel_group(c)


# ---------------------------------------------------------------------------
# Weyl group


_WEYL_ORDER_BY_TYPE = {
    "E6": 51840,
    "E7": 2903040,
    "E8": 696729600,
    "F4": 1152,
    "G2": 12,
}


def _component_weyl_order(name):
    if name in _WEYL_ORDER_BY_TYPE:
        return _WEYL_ORDER_BY_TYPE[name]
    letter, rank = name[0], int(name[1:])
    if letter == "A":
        return factorial(rank + 1)
    if letter in ("B", "C"):
        return 2**rank * factorial(rank)
    if letter == "D":
        return 2 ** (rank - 1) * factorial(rank)
    raise ValueError(f"no order formula for {name}")


class WeylGroup:
    def __init__(self, order, generators, elements=None):
        self.order = order
        self.generators = generators  # reflection matrices on X, row-major tuples
        self.elements = elements  # list of matrices, or None if not enumerated

    def __len__(self):
        return self.order


def _reflection_matrix(rank, root, coroot):
    # s(e_j) = e_j - <e_j, coroot> root
    cols = []
    for j in range(rank):
        e = tuple(1 if k == j else 0 for k in range(rank))
        cols.append(tuple(x - coroot[j] * y for x, y in zip(e, root)))
    # row-major
    return tuple(tuple(cols[j][i] for j in range(rank)) for i in range(rank))


def _mat_apply(m, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def _mat_mul(a, b):
    n = len(a)
    bt = tuple(tuple(b[i][j] for i in range(n)) for j in range(len(b[0])))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def weyl_group_enumerate(d: RootDatum, budget=10**6) -> WeylGroup:
    """Enumerate W by the orbit of a regular vector (2 rho) under the simple
    reflections, with a hash-set closure. Above the budget only generators
    and the order are returned."""
    gens = [
        _reflection_matrix(d.rank, r, rv)
        for r, rv in zip(d.simple_roots, d.simple_coroots)
    ]
    ctype = d.cartan_type()
    order = 1
    for comp in ctype.split("+"):
        if comp != "0":
            order *= _component_weyl_order(comp)
    if order > budget:
        return WeylGroup(order, gens, elements=None)

    pos = d.positive_roots()
    v0 = tuple(sum(col) for col in zip(*pos)) if pos else (0,) * d.rank
    ident = tuple(tuple(1 if i == j else 0 for j in range(d.rank)) for i in range(d.rank))
    seen = {v0: ident}
    frontier = [v0]
    elements = [ident]
    while frontier:
        nxt = []
        for v in frontier:
            m = seen[v]
            for g in gens:
                w = _mat_apply(g, v)
                if w not in seen:
                    gm = _mat_mul(g, m)
                    seen[w] = gm
                    elements.append(gm)
                    nxt.append(w)
        frontier = nxt
        if len(seen) > budget:
            raise RuntimeError("Weyl enumeration exceeded budget")
    if len(elements) != order:
        raise AssertionError(f"enumerated {len(elements)} elements, formula says {order}")
    return WeylGroup(order, gens, elements=elements)


# ---------------------------------------------------------------------------
# extended Dynkin diagram and the fundamental alcove


class ExtDynkin:
    """Extended diagram: node 0 is the affine node (lowest root -theta),
    nodes 1..n are the simple roots. marks[i] are the coefficients n_i with
    sum_i marks[i] * node_vector[i] = 0 and marks[0] = 1. vertices[i] is the
    alcove vertex attached to node i (origin for i = 0, else
    omega_i^vee / marks[i]) in Y tensor Q."""

    def __init__(self, datum, node_vectors, node_coroots, marks, edges, vertices):
        self.datum = datum
        self.node_vectors = node_vectors
        self.node_coroots = node_coroots
        self.marks = marks
        self.edges = edges
        self.vertices = vertices

    @property
    def n_nodes(self):
        return len(self.node_vectors)

    def serialize(self):
        return {
            "labels": [str(i) for i in range(self.n_nodes)],
            "marks": list(self.marks),
            "edges": [
                {"from": i, "to": j, "mult": m, "arrow_to": arrow}
                for (i, j, m, arrow) in self.edges
            ],
        }


def extended_dynkin(d: RootDatum) -> ExtDynkin:
    """Extended diagram of an irreducible semisimple datum."""
    if not d.is_semisimple():
        raise ValueError("extended diagram needs a semisimple datum")
    if "+" in d.cartan_type():
        raise ValueError("extended diagram needs an irreducible system")
    theta = d.highest_root()
    theta_cov = d.coroot_of(theta)
    simple = list(d.simple_roots)
    simple_cov = list(d.simple_coroots)

    coeffs = d.simple_coefficients(theta)
    marks = [1] + [int(c) for c in coeffs]
    if any(Fraction(m) != c for m, c in zip(marks[1:], coeffs)):
        raise AssertionError("highest root has non-integer coefficients")

    node_vectors = [tuple(-x for x in theta)] + simple
    node_coroots = [tuple(-x for x in theta_cov)] + simple_cov

    # sum of marks * node vectors vanishes
    total = tuple(
        sum(m * v[k] for m, v in zip(marks, node_vectors)) for k in range(d.rank)
    )
    if any(total):
        raise AssertionError("marked node vectors do not sum to zero")

    edges = []
    for i in range(len(node_vectors)):
        for j in range(i + 1, len(node_vectors)):
            a, av = node_vectors[i], node_coroots[i]
            b, bv = node_vectors[j], node_coroots[j]
            m = _dot(a, bv) * _dot(b, av)
            if m:
                arrow = None
                if m in (2, 3):
                    # arrow points at the shorter root
                    arrow = j if _dot(b, av) == -1 else i
                edges.append((i, j, m, arrow))

    # alcove vertices: 0 and omega_i^vee / n_i, solving <alpha_j, w> = delta_ij
    rows = [list(s) for s in simple]
    vertices = [tuple(Fraction(0) for _ in range(d.rank))]
    for i in range(len(simple)):
        b = [1 if j == i else 0 for j in range(len(simple))]
        w = solve_rational(rows, b)
        vertices.append(tuple(x / marks[i + 1] for x in w))
    return ExtDynkin(d, node_vectors, node_coroots, marks, edges, vertices)
