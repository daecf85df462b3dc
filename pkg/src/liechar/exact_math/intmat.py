"""Arbitrary-precision integer matrices, Smith normal form with transforms,
and finitely generated abelian groups presented by invariant factors.

All matrices are immutable, row-major tuples of tuples of Python ints.
"""

from __future__ import annotations

from math import gcd, lcm


class IntMatrix:
    """Immutable integer matrix."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if rows:
            w = len(rows[0])
            if any(len(r) != w for r in rows):
                raise ValueError("ragged rows")
        self.rows = rows

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, r, c):
        return cls(tuple((0,) * c for _ in range(r)))

    @classmethod
    def diagonal(cls, entries, rows=None, cols=None):
        entries = list(entries)
        r = rows if rows is not None else len(entries)
        c = cols if cols is not None else len(entries)
        return cls(
            tuple(
                tuple(entries[i] if i == j and i < len(entries) else 0 for j in range(c))
                for i in range(r)
            )
        )

    @classmethod
    def from_columns(cls, cols):
        cols = [tuple(c) for c in cols]
        if not cols:
            return cls(())
        return cls(tuple(tuple(col[i] for col in cols) for i in range(len(cols[0]))))

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def at(self, i, j):
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        r, c = self.shape
        return [self.column(j) for j in range(c)]

    def transpose(self):
        r, c = self.shape
        return IntMatrix(tuple(tuple(self.rows[i][j] for i in range(r)) for j in range(c)))

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"IntMatrix({list(map(list, self.rows))})"

    def __neg__(self):
        return IntMatrix(tuple(tuple(-x for x in r) for r in self.rows))

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(
            tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows))
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntMatrix(tuple(tuple(x * other for x in r) for r in self.rows))
        r, k = self.shape
        k2, c = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        ocols = other.columns()
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in ocols) for row in self.rows)
        )

    __rmul__ = __mul__

    def __pow__(self, n):
        r, c = self.shape
        if r != c:
            raise ValueError("square matrix required")
        if n < 0:
            raise ValueError("nonnegative exponents only")
        result = IntMatrix.identity(r)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def apply(self, vec):
        """Matrix times column vector, returned as a tuple."""
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.rows)

    def det(self):
        """Exact determinant by fraction-free (Bareiss) elimination."""
        r, c = self.shape
        if r != c:
            raise ValueError("square matrix required")
        if r == 0:
            return 1
        a = [list(row) for row in self.rows]
        sign = 1
        prev = 1
        for k in range(r - 1):
            if a[k][k] == 0:
                for i in range(k + 1, r):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, r):
                for j in range(k + 1, r):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[r - 1][r - 1]

    def is_unimodular(self):
        return abs(self.det()) == 1


# ---------------------------------------------------------------------------
# Smith normal form


def _swap_rows(a, u, i, j):
    a[i], a[j] = a[j], a[i]
    u[i], u[j] = u[j], u[i]


def _swap_cols(a, v, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]
    for row in v:
        row[i], row[j] = row[j], row[i]


def _add_row(a, u, dst, src, q):
    # row_dst += q * row_src
    a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
    u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]


def _add_col(a, v, dst, src, q):
    for row in a:
        row[dst] += q * row[src]
    for row in v:
        row[dst] += q * row[src]


def smith_normal_form(m: IntMatrix):
    """Return (U, D, V) with U*m*V = D, U and V unimodular, D diagonal with
    nonnegative entries d_1 | d_2 | ... .

    Pivoting always moves a least-magnitude nonzero entry to the pivot seat,
    so coefficient growth stays tame for the small matrices used here.
    """
    r, c = m.shape
    a = [list(row) for row in m.rows]
    u = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    v = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    t = 0
    while t < min(r, c):
        # locate least |entry| != 0 in the trailing block
        pivot = None
        for i in range(t, r):
            for j in range(t, c):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            _swap_rows(a, u, t, pi)
        if pj != t:
            _swap_cols(a, v, t, pj)

        while True:
            # clear column t below the pivot
            dirty = False
            for i in range(t + 1, r):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    _add_row(a, u, i, t, -q)
                    if a[i][t] != 0:
                        _swap_rows(a, u, t, i)
                        dirty = True
            # clear row t right of the pivot
            for j in range(t + 1, c):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    _add_col(a, v, j, t, -q)
                    if a[t][j] != 0:
                        _swap_cols(a, v, t, j)
                        dirty = True
            if dirty:
                continue
            # pivot must divide the whole trailing block, else absorb a bad row
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if a[i][j] % a[t][t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            _add_row(a, u, t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    U, D, V = IntMatrix(u), IntMatrix(a), IntMatrix(v)
    if U * m * V != D:
        raise AssertionError("SNF transform identity failed")
    return U, D, V


def kernel_basis(m: IntMatrix):
    """Basis of the integer kernel {x : m x = 0}, as a list of column tuples.
    The basis spans a saturated sublattice since V is unimodular."""
    r, c = m.shape
    _, d, v = smith_normal_form(m)
    rank = sum(1 for i in range(min(r, c)) if d.at(i, i) != 0)
    return [v.column(j) for j in range(rank, c)]


def solve_integer(m: IntMatrix, b):
    """One integer solution x of m x = b, or None if none exists."""
    r, c = m.shape
    u, d, v = smith_normal_form(m)
    w = u.apply(tuple(b))
    y = [0] * c
    for i in range(min(r, c)):
        di = d.at(i, i)
        if di != 0:
            if w[i] % di != 0:
                return None
            y[i] = w[i] // di
    for i in range(min(r, c), r):
        if w[i] != 0:
            return None
    # also: rows i < min(r,c) with d_i == 0 must have w_i == 0
    for i in range(min(r, c)):
        if d.at(i, i) == 0 and w[i] != 0:
            return None
    return v.apply(tuple(y))


# ---------------------------------------------------------------------------
# Finitely generated abelian groups


class FinAbGroup:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with 2 <= d_1 | d_2 | ... | d_k.

    Elements are coordinate tuples over the torsion factors (free part only
    enters through free_rank bookkeeping; iteration requires free_rank 0).
    """

    __slots__ = ("free_rank", "torsion")

    def __init__(self, free_rank=0, torsion=()):
        torsion = tuple(int(d) for d in torsion)
        if any(d < 2 for d in torsion):
            raise ValueError("invariant factors must be >= 2")
        for a, b in zip(torsion, torsion[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")
        self.free_rank = int(free_rank)
        self.torsion = torsion

    @property
    def order(self):
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def zero(self):
        return (0,) * len(self.torsion)

    def add(self, a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, self.torsion))

    def neg(self, a):
        return tuple((-x) % d for x, d in zip(a, self.torsion))

    def scale(self, k, a):
        return tuple((k * x) % d for x, d in zip(a, self.torsion))

    def element_order(self, a):
        n = 1
        for x, d in zip(a, self.torsion):
            if x:
                n = lcm(n, d // gcd(x, d))
        return n

    def elements(self):
        if self.free_rank:
            raise ValueError("infinite group")
        coords = [range(d) for d in self.torsion]
        out = [()]
        for rng in coords:
            out = [t + (x,) for t in out for x in rng]
        return out

    def is_isomorphic(self, other):
        return self.free_rank == other.free_rank and self.torsion == other.torsion

    def serialize(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __eq__(self, other):
        return (
            isinstance(other, FinAbGroup)
            and self.free_rank == other.free_rank
            and self.torsion == other.torsion
        )

    def __hash__(self):
        return hash((self.free_rank, self.torsion))

    def __repr__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


class CokernelPresentation:
    """Cokernel Z^r / im(m) of an integer matrix m: Z^c -> Z^r, with explicit
    coordinates coming from the Smith transform U."""

    def __init__(self, m: IntMatrix):
        r, c = m.shape
        u, d, v = smith_normal_form(m)
        self.matrix = m
        self.U, self.D, self.V = u, d, v
        diag = [d.at(i, i) for i in range(min(r, c))]
        self.torsion_indices = [i for i, di in enumerate(diag) if di >= 2]
        self.free_indices = [i for i, di in enumerate(diag) if di == 0] + list(range(min(r, c), r))
        self.group = FinAbGroup(
            free_rank=len(self.free_indices),
            torsion=tuple(diag[i] for i in self.torsion_indices),
        )

    def torsion_coords(self, y):
        """Torsion coordinates of the class of y in Z^r."""
        w = self.U.apply(tuple(y))
        return tuple(w[i] % self.D.at(i, i) for i in self.torsion_indices)

    def free_coords(self, y):
        w = self.U.apply(tuple(y))
        return tuple(w[i] for i in self.free_indices)

    def class_of(self, y):
        return self.torsion_coords(y) + self.free_coords(y)


def cokernel_group(m: IntMatrix) -> CokernelPresentation:
    """Cokernel of m as a presented finitely generated abelian group."""
    return CokernelPresentation(m)


def abelian_subgroup_type(elements, add, zero, neg=None):
    """Invariant factors of a finite abelian group given as an explicit set of
    elements with an addition law. Works by matching order statistics: for a
    group of type (d_1, ..., d_k) the count of x with m*x = 0 is the product
    of gcd(d_i, m)."""
    elems = list(elements)
    n = len(elems)
    if n == 1:
        return FinAbGroup()

    def elt_order(x):
        k, y = 1, x
        while y != zero:
            y = add(y, x)
            k += 1
            if k > n:
                raise AssertionError("not closed under addition")
        return k

    orders = [elt_order(x) for x in elems]
    exponent = 1
    for o in orders:
        exponent = lcm(exponent, o)

    def count_killed(m):
        return sum(1 for o in orders if m % o == 0)

    # enumerate divisibility chains with product n, factors largest-first
    results = []

    def rec(remaining, cap, acc):
        if remaining == 1:
            results.append(tuple(reversed(acc)))
            return
        for d in range(2, cap + 1):
            if cap % d == 0 and remaining % d == 0:
                rec(remaining // d, d, acc + [d])

    rec(n, exponent, [])
    matches = []
    for chain in results:
        if not chain or chain[-1] != exponent:
            continue
        ok = True
        for m in range(1, exponent + 1):
            if exponent % m != 0:
                continue
            prod = 1
            for d in chain:
                prod *= gcd(d, m)
            if prod != count_killed(m):
                ok = False
                break
        if ok:
            matches.append(chain)
    if len(matches) != 1:
        raise AssertionError(f"ambiguous or missing abelian type: {matches}")
    return FinAbGroup(torsion=matches[0])
