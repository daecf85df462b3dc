"""Concrete matrix groups over small finite fields: GL2, SL2 (odd q <= 13,
prime powers included) and the SL3 plumbing, with Lie algebras, the trace
pairing, quasi-logarithms, adjoint orbits, maximal tori, regularity tests,
and a dense finite Fourier transform.

Matrices are packed row-major into ints, digit (i, j) = field code of the
entry, base q. Over prime fields the compiled kernels do the hot loops; over
F_9 everything runs through the field tables.
"""

from __future__ import annotations

from functools import lru_cache

from . import _kernels
from .exact_math import Cyclotomic, FiniteField

_KIND_DATA = {
    # kind: (n, lie_dim, absolute rank, f_q-rank, |Z(G^sc)|, q budget)
    "GL2": (2, 4, 2, 2, 2, 13),
    "SL2": (2, 3, 1, 1, 2, 13),
    "SL3": (3, 8, 2, 2, 3, 3),
}

FOURIER_BUDGET = 6561  # largest dense LieFunction domain


def _field_for(q):
    for p in range(2, q + 1):
        if q % p == 0:
            f = 0
            m = q
            while m % p == 0:
                m //= p
                f += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return FiniteField(p, f)
    raise ValueError(f"{q} is not a prime power")


class FiniteLieGroup:
    """One of the supported matrix groups with its Lie algebra data."""

    def __init__(self, kind, field: FiniteField):
        if kind not in _KIND_DATA:
            raise ValueError(f"unknown kind {kind!r}")
        n, dim, rank, fq_rank, zsc, budget = _KIND_DATA[kind]
        q = field.q
        if zsc % field.p == 0:
            raise ValueError(
                f"p = {field.p} divides the order {zsc} of the simply "
                f"connected center for {kind}"
            )
        if q % 2 == 0:
            raise ValueError("q must be odd")
        if q > budget:
            raise ValueError(f"{kind} budget is q <= {budget}")
        self.kind = kind
        self.field = field
        self.q = q
        self.n = n
        self.dim = dim
        self.rank = rank
        self.fq_rank = fq_rank
        self._prime = field.f == 1
        self.identity = self.pack(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )
        self.elements = self._enumerate()
        self.order = len(self.elements)
        self._members = frozenset(self.elements)
        if kind == "GL2":
            expected = (q * q - 1) * (q * q - q)
        elif kind == "SL2":
            expected = q * (q * q - 1)
        else:
            expected = None
        if expected is not None and self.order != expected:
            raise AssertionError("group order does not match the closed form")
        self.gens = self._generators()
        self._check_generation()
        self.lie_basis = self._lie_basis()
        self._check_gram()

    # -- packing and matrix arithmetic over the field codes

    def pack(self, rows):
        q = self.q
        out, w = 0, 1
        for row in rows:
            for x in row:
                out += (x % q) * w
                w *= q
        return out

    def unpack(self, a):
        q, n = self.q, self.n
        rows = []
        for _ in range(n):
            row = []
            for _ in range(n):
                row.append(a % q)
                a //= q
            rows.append(row)
        return rows

    def mul(self, a, b):
        if self._prime:
            return _kernels.mat_mul(a, b, self.q, self.n)
        fa, fb = self.unpack(a), self.unpack(b)
        fld, n = self.field, self.n
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                s = 0
                for k in range(n):
                    s = fld.add(s, fld.mul(fa[i][k], fb[k][j]))
                row.append(s)
            rows.append(row)
        return self.pack(rows)

    def inv(self, a):
        if self._prime:
            return _kernels.mat_inv(a, self.q, self.n)
        if self.n != 2:
            raise ValueError("field-table inverse implemented for n = 2")
        (x, y), (z, w) = self.unpack(a)
        fld = self.field
        det = fld.sub(fld.mul(x, w), fld.mul(y, z))
        if det == 0:
            raise ZeroDivisionError("matrix not invertible")
        di = fld.inv(det)
        return self.pack(
            [
                [fld.mul(w, di), fld.mul(fld.neg(y), di)],
                [fld.mul(fld.neg(z), di), fld.mul(x, di)],
            ]
        )

    def conj(self, g, x):
        return self.mul(self.mul(g, x), self.inv(g))

    def det_code(self, a):
        m = self.unpack(a)
        fld = self.field
        if self.n == 2:
            return fld.sub(fld.mul(m[0][0], m[1][1]), fld.mul(m[0][1], m[1][0]))
        if self.n == 3:
            s = 0
            for j0, j1, j2, sgn in (
                (0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1),
                (2, 1, 0, -1), (1, 0, 2, -1), (0, 2, 1, -1),
            ):
                t = fld.mul(fld.mul(m[0][j0], m[1][j1]), m[2][j2])
                s = fld.add(s, t if sgn > 0 else fld.neg(t))
            return s
        raise ValueError("n must be 2 or 3")

    def trace_code(self, a):
        m = self.unpack(a)
        fld = self.field
        t = 0
        for i in range(self.n):
            t = fld.add(t, m[i][i])
        return t

    def pairing_code(self, a, b):
        """Trace form <a, b> = Tr(ab) as a field code."""
        ma, mb = self.unpack(a), self.unpack(b)
        fld, n = self.field, self.n
        s = 0
        for i in range(n):
            for k in range(n):
                s = fld.add(s, fld.mul(ma[i][k], mb[k][i]))
        return s

    # -- construction helpers

    def _enumerate(self):
        q, n = self.q, self.n
        out = []
        if self.kind == "GL2":
            for a in range(q ** (n * n)):
                if self.det_code(a) != 0:
                    out.append(a)
        else:
            for a in range(q ** (n * n)):
                if self.det_code(a) == 1:
                    out.append(a)
        return tuple(out)

    def _generators(self):
        fld = self.field
        shears = []
        for c in {1, fld.gen}:
            shears.append(self.pack([[1, c], [0, 1]]))
            shears.append(self.pack([[1, 0], [c, 1]]))
        gens = sorted(set(shears))
        if self.kind == "GL2":
            gens.append(self.pack([[fld.gen, 0], [0, 1]]))
        return tuple(gens)

    def _check_generation(self):
        seen = {self.identity}
        stack = [self.identity]
        while stack:
            x = stack.pop()
            for g in self.gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != self.order:
            raise AssertionError("generators do not generate the group")

    def _lie_basis(self):
        if self.kind == "GL2":
            return (
                self.pack([[1, 0], [0, 0]]),
                self.pack([[0, 1], [0, 0]]),
                self.pack([[0, 0], [1, 0]]),
                self.pack([[0, 0], [0, 1]]),
            )
        if self.kind == "SL2":
            return (
                self.pack([[1, 0], [0, self.field.neg(1)]]),
                self.pack([[0, 1], [0, 0]]),
                self.pack([[0, 0], [1, 0]]),
            )
        raise AssertionError("unreachable")

    def _check_gram(self):
        fld = self.field
        d = self.dim
        gram = [
            [self.pairing_code(self.lie_basis[i], self.lie_basis[j]) for j in range(d)]
            for i in range(d)
        ]
        # Gaussian elimination over the field
        rank = 0
        for col in range(d):
            piv = next((r for r in range(rank, d) if gram[r][col] != 0), None)
            if piv is None:
                continue
            gram[rank], gram[piv] = gram[piv], gram[rank]
            inv = fld.inv(gram[rank][col])
            for r in range(d):
                if r != rank and gram[r][col] != 0:
                    f = fld.mul(gram[r][col], inv)
                    gram[r] = [
                        fld.sub(x, fld.mul(f, y)) for x, y in zip(gram[r], gram[rank])
                    ]
            rank += 1
        if rank != d:
            raise AssertionError("trace pairing is degenerate")

    # -- Lie algebra coordinates

    def lie_coeffs(self, t):
        """Coefficients of a packed Lie element over lie_basis.
        Raises ValueError if the matrix is not in the Lie algebra."""
        m = self.unpack(t)
        if self.kind == "GL2":
            return (m[0][0], m[0][1], m[1][0], m[1][1])
        if self.kind == "SL2":
            if m[1][1] != self.field.neg(m[0][0]):
                raise ValueError("matrix is not traceless")
            return (m[0][0], m[0][1], m[1][0])
        raise AssertionError("unreachable")

    def lie_from_coeffs(self, coeffs):
        if len(coeffs) != self.dim:
            raise ValueError("coefficient length mismatch")
        if self.kind == "GL2":
            a, b, c, d = coeffs
            return self.pack([[a, b], [c, d]])
        a, b, c = coeffs
        return self.pack([[a, b], [c, self.field.neg(a)]])

    def lie_points(self):
        """All packed Lie algebra points, in coefficient-lex order: index i
        has coefficients (i mod q, i//q mod q, ...) over lie_basis."""
        q = self.q
        out = []
        for i in range(q**self.dim):
            coeffs = []
            r = i
            for _ in range(self.dim):
                coeffs.append(r % q)
                r //= q
            out.append(self.lie_from_coeffs(coeffs))
        return out

    def lie_index(self, t):
        coeffs = self.lie_coeffs(t)
        i = 0
        for c in reversed(coeffs):
            i = i * self.q + c
        return i

    # -- orbits and classes

    def adjoint_orbit_of(self, t):
        self.lie_coeffs(t)  # membership check
        if self._prime:
            orbit = _kernels.orbit_of(t, list(self.gens), self.q, self.n)
        else:
            seen = {t}
            stack = [t]
            while stack:
                x = stack.pop()
                for g in self.gens:
                    y = self.conj(g, x)
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            orbit = tuple(sorted(seen))
        if self.order % len(orbit):
            raise AssertionError("orbit size does not divide the group order")
        return orbit

    def conjugation_orbit_of(self, g):
        if g not in self._members:
            raise ValueError("not a group element")
        if self._prime:
            return _kernels.orbit_of(g, list(self.gens), self.q, self.n)
        seen = {g}
        stack = [g]
        while stack:
            x = stack.pop()
            for h in self.gens:
                y = self.conj(h, x)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return tuple(sorted(seen))

    def conjugacy_labels(self):
        if self._prime:
            return _kernels.conjugacy_partition(
                list(self.elements), list(self.gens), self.q, self.n
            )
        labels = [-1] * self.order
        index = {e: i for i, e in enumerate(self.elements)}
        nxt = 0
        for i, e in enumerate(self.elements):
            if labels[i] >= 0:
                continue
            for y in self.conjugation_orbit_of(e):
                labels[index[y]] = nxt
            nxt += 1
        return labels

    # -- distinguished subsets

    def unipotents(self):
        """g with (g - 1) nilpotent: for n = 2, det 1 and trace 2."""
        two = self.field.add(1, 1)
        return tuple(
            g
            for g in self.elements
            if self.det_code(g) == 1 and self.trace_code(g) == two
        )

    def nilpotents(self):
        """Lie points with zero trace and determinant (n = 2)."""
        out = []
        for i in range(self.q**self.dim):
            coeffs = []
            r = i
            for _ in range(self.dim):
                coeffs.append(r % self.q)
                r //= self.q
            t = self.lie_from_coeffs(coeffs)
            if self.trace_code(t) == 0 and self.det_code(t) == 0:
                out.append(t)
        return tuple(out)

    def unipotent_class_reps(self):
        """One representative per unipotent conjugacy class: [1, J] for GL2,
        [1, J, J_eps] for SL2 (the two regular classes)."""
        if self.kind == "GL2":
            return (self.identity, self.pack([[1, 1], [0, 1]]))
        eps = self.field.non_residue
        return (
            self.identity,
            self.pack([[1, 1], [0, 1]]),
            self.pack([[1, eps], [0, 1]]),
        )

    def __repr__(self):
        return f"{self.kind}(F_{self.q})"


@lru_cache(maxsize=None)
def build_finite_group(kind, q) -> FiniteLieGroup:
    """Build one of GL2/SL2 (odd q <= 13) or SL3 (odd q <= 3; always rejected
    because p = 3 divides the center order)."""
    return FiniteLieGroup(kind, _field_for(q))


def quasi_logarithm(g_group: FiniteLieGroup, g):
    """The equivariant group-to-algebra map: g - 1 for GL2, the traceless
    projection (g - 1) - (Tr(g - 1)/n) Id for SL2/SL3."""
    if g not in g_group._members:
        raise ValueError("not a group element")
    fld = g_group.field
    m = g_group.unpack(g)
    n = g_group.n
    y = [
        [fld.sub(m[i][j], 1 if i == j else 0) for j in range(n)] for i in range(n)
    ]
    if g_group.kind == "GL2":
        return g_group.pack(y)
    tr = 0
    for i in range(n):
        tr = fld.add(tr, y[i][i])
    c = fld.mul(tr, fld.inv(n % fld.p))
    for i in range(n):
        y[i][i] = fld.sub(y[i][i], c)
    return g_group.pack(y)


def adjoint_orbit(g_group: FiniteLieGroup, t):
    """Full orbit of a Lie algebra point under conjugation by the group."""
    return set(g_group.adjoint_orbit_of(t))


class LieFunction:
    """Dense exact function on the Lie algebra points. values[i] is the value
    at the point with basis coefficients (i mod q, i//q mod q, ...)."""

    def __init__(self, group: FiniteLieGroup, values):
        if group.q**group.dim > FOURIER_BUDGET:
            raise ValueError("dense Lie function domain exceeds the budget")
        vals = []
        for v in values:
            vals.append(v if isinstance(v, Cyclotomic) else Cyclotomic.rational(v))
        if len(vals) != group.q**group.dim:
            raise ValueError("value array length must be q**dim")
        self.group = group
        self.values = tuple(vals)

    @classmethod
    def delta(cls, group, t):
        """Indicator of one packed Lie point."""
        idx = group.lie_index(t)
        vals = [0] * (group.q**group.dim)
        vals[idx] = 1
        return cls(group, vals)

    @classmethod
    def constant(cls, group, value):
        return cls(group, [value] * (group.q**group.dim))

    @classmethod
    def indicator(cls, group, point_set):
        idxs = {group.lie_index(t) for t in point_set}
        return cls(group, [1 if i in idxs else 0 for i in range(group.q**group.dim)])

    def value_at(self, t):
        return self.values[self.group.lie_index(t)]

    def serialize(self):
        return {
            "kind": self.group.kind,
            "q": self.group.q,
            "basis_order": "coefficients over lie_basis, index = sum c_k q^k",
            "values": [repr(v) for v in self.values],
        }

    def __eq__(self, other):
        return (
            isinstance(other, LieFunction)
            and self.group is other.group
            and all(a == b for a, b in zip(self.values, other.values))
        )


def finite_fourier(g_group: FiniteLieGroup, f: LieFunction) -> LieFunction:
    """F(f)(x) = sum_y psibar(<x, y>) f(y), counting measure, exact."""
    if f.group is not g_group:
        raise ValueError("function belongs to a different group")
    fld = g_group.field
    q = g_group.q
    pts = g_group.lie_points()
    psibar = [Cyclotomic.zeta(fld.p, (-fld.trace(c)) % fld.p) for c in range(q)]
    out = []
    for x in pts:
        buckets = [None] * q
        for i, y in enumerate(pts):
            v = f.values[i]
            c = g_group.pairing_code(x, y)
            buckets[c] = v if buckets[c] is None else buckets[c] + v
        acc = Cyclotomic.zero()
        for c in range(q):
            if buckets[c] is not None:
                acc = acc + psibar[c] * buckets[c]
        out.append(acc)
    return LieFunction(g_group, out)


class TorusInG:
    """A maximal torus point group inside the finite group, with its relative
    Weyl group action and sign data."""

    def __init__(self, parent, tag, points, weyl, fq_rank, non_residue, witness):
        self.parent = parent
        self.tag = tag
        self.points = tuple(sorted(points))
        self.order = len(self.points)
        self.weyl = weyl  # the nontrivial involution, as a dict on points
        self.fq_rank = fq_rank
        self.sign = (-1) ** (parent.fq_rank - fq_rank)
        self.non_residue = non_residue
        self.witness = witness

    def lie_points(self):
        """Packed Lie algebra points of the torus."""
        return _torus_lie_points(self.parent, self.tag, self.non_residue)

    def weyl_on_lie(self, t):
        """The nontrivial Weyl involution on Lie(T)."""
        g = self.parent
        fld = g.field
        m = g.unpack(t)
        if self.tag == "split":
            if m[0][1] != 0 or m[1][0] != 0:
                raise ValueError("not in the split torus Lie algebra")
            return g.pack([[m[1][1], 0], [0, m[0][0]]])
        eps = self.non_residue
        x, y = m[0][0], m[1][0]
        if m[1][1] != x or m[0][1] != fld.mul(eps, y):
            raise ValueError("not in the elliptic torus Lie algebra")
        ny = fld.neg(y)
        return g.pack([[x, fld.mul(eps, ny)], [ny, x]])

    def serialize(self):
        return {
            "kind": self.parent.kind,
            "q": self.parent.q,
            "tag": self.tag,
            "order": self.order,
            "fq_rank": self.fq_rank,
            "sign": self.sign,
            "non_residue": self.non_residue,
        }

    def __repr__(self):
        return f"{self.tag} torus of {self.parent!r} (order {self.order})"


def _torus_lie_points(g: FiniteLieGroup, tag, non_residue):
    q = g.q
    fld = g.field
    out = []
    if tag == "split":
        for a in range(q):
            for d in range(q):
                if g.kind == "SL2" and d != fld.neg(a):
                    continue
                out.append(g.pack([[a, 0], [0, d]]))
    else:
        eps = non_residue
        for x in range(q):
            for y in range(q):
                if g.kind == "SL2" and x != 0:
                    continue
                out.append(g.pack([[x, fld.mul(eps, y)], [y, x]]))
    return tuple(sorted(set(out)))


def _find_weyl_witness(g: FiniteLieGroup, points, lie_points):
    """Smallest group element normalizing the torus and acting nontrivially
    on its Lie algebra.

    Nontriviality is detected on Lie points, never on the point group: the
    split torus of SL2(F_3) is {+1, -1}, central, so every candidate fixes
    its points, yet the swap on diag(t, -t) is still there to find.
    """
    pts = frozenset(points)
    lpts = frozenset(lie_points)
    probes = [p for p in lie_points if p != 0][:3]
    for cand in g.elements:
        if any(g.conj(cand, p) not in lpts for p in probes):
            continue
        if (
            all(g.conj(cand, p) in pts for p in points)
            and all(g.conj(cand, t) in lpts for t in lie_points)
            and any(g.conj(cand, t) != t for t in lie_points)
        ):
            return cand
    raise AssertionError("no Weyl witness found")


def tori_and_regularity(g: FiniteLieGroup):
    """One TorusInG per conjugacy class of maximal tori: split and elliptic
    for the rank-1 kinds."""
    fld = g.field
    q = g.q
    split_pts = []
    for a in range(1, q):
        if g.kind == "SL2":
            split_pts.append(g.pack([[a, 0], [0, fld.inv(a)]]))
        else:
            for d in range(1, q):
                split_pts.append(g.pack([[a, 0], [0, d]]))
    eps = fld.non_residue
    ell_pts = []
    for x in range(q):
        for y in range(q):
            if x == 0 and y == 0:
                continue
            m = g.pack([[x, fld.mul(eps, y)], [y, x]])
            d = g.det_code(m)
            if g.kind == "SL2" and d != 1:
                continue
            if d == 0:
                continue
            ell_pts.append(m)

    tori = []
    for tag, pts, nr in (("split", split_pts, None), ("elliptic", ell_pts, eps)):
        lie_pts = _torus_lie_points(g, tag, nr)
        witness = _find_weyl_witness(g, pts, lie_pts)
        weyl = {p: g.conj(witness, p) for p in pts}
        if sorted(weyl.values()) != sorted(pts):
            raise AssertionError("Weyl action is not a permutation")
        if sorted(g.conj(witness, t) for t in lie_pts) != list(lie_pts):
            raise AssertionError("Weyl action does not preserve Lie(T)")
        if all(g.conj(witness, t) == t for t in lie_pts):
            raise AssertionError("Weyl action fixes Lie(T) pointwise")
        if tag == "split":
            fq_rank = g.fq_rank
        else:
            fq_rank = g.fq_rank - 1
        tori.append(TorusInG(g, tag, pts, weyl, fq_rank, nr, witness))
    expected = {"GL2": {(q - 1) ** 2, q * q - 1}, "SL2": {q - 1, q + 1}}[g.kind]
    if {t.order for t in tori} != expected:
        raise AssertionError("torus orders do not match the closed forms")
    return tori


def torus_orders(g: FiniteLieGroup):
    q = g.q
    if g.kind == "GL2":
        return {(q - 1) ** 2, q * q - 1}
    return {q - 1, q + 1}


def is_strongly_regular(g: FiniteLieGroup, t):
    """Centralizer of the Lie point is a maximal torus, detected through the
    orbit-stabilizer count."""
    orbit = g.adjoint_orbit_of(t)
    return g.order // len(orbit) in torus_orders(g)


def is_a_strongly_regular(torus: TorusInG, t):
    """No nontrivial relative Weyl element fixes the torus Lie point."""
    return torus.weyl_on_lie(t) != t
