"""Truncated p-adic arithmetic and local quadratic-form invariants.

Matrices over Z/p^k with Hensel-lifted inversion, the decomposition of an
invertible element into a finite-order part prime to p times a topologically
unipotent part, an exhaustive finite-precision bijectivity check for the
quasi-logarithm, and the Hilbert symbol with its diagonal-form product
invariant.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

__all__ = [
    "TruncatedMatrix",
    "DiagQuadForm",
    "topological_jordan",
    "quasi_log_bijection_check",
    "hilbert_symbol",
    "hasse_invariant",
    "relevant_places",
]


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class TruncatedMatrix:
    """A square matrix with entries in Z/p^k."""

    __slots__ = ("n", "p", "k", "mod", "rows")

    def __init__(self, n, p, k, rows):
        if not _is_prime(p):
            raise ValueError("p must be prime")
        if k < 1:
            raise ValueError("precision must be at least 1")
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("rows must form an n x n matrix")
        self.n = n
        self.p = p
        self.k = k
        self.mod = p**k
        self.rows = tuple(tuple(x % self.mod for x in r) for r in rows)

    @classmethod
    def identity(cls, n, p, k):
        return cls(n, p, k, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n, p, k):
        return cls(n, p, k, [[0] * n for _ in range(n)])

    def _like(self, rows):
        return TruncatedMatrix(self.n, self.p, self.k, rows)

    def _check(self, other):
        if (self.n, self.p, self.k) != (other.n, other.p, other.k):
            raise ValueError("matrices live in different rings")

    def add(self, other):
        self._check(other)
        return self._like(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def sub(self, other):
        self._check(other)
        return self._like(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def neg(self):
        return self._like([[-a for a in r] for r in self.rows])

    def scale(self, c):
        return self._like([[c * a for a in r] for r in self.rows])

    def mul(self, other):
        self._check(other)
        n, mod = self.n, self.mod
        cols = list(zip(*other.rows))
        return self._like(
            [
                [sum(a * b for a, b in zip(row, col)) % mod for col in cols]
                for row in self.rows
            ]
        )

    def pow(self, e):
        if e < 0:
            raise ValueError("nonnegative exponents only; invert first")
        out = TruncatedMatrix.identity(self.n, self.p, self.k)
        base = self
        while e:
            if e & 1:
                out = out.mul(base)
            base = base.mul(base)
            e >>= 1
        return out

    def trace(self):
        return sum(self.rows[i][i] for i in range(self.n)) % self.mod

    def det(self):
        total = 0
        for perm in permutations(range(self.n)):
            sgn = 1
            seen = [False] * self.n
            for i in range(self.n):
                if seen[i]:
                    continue
                j, ln = i, 0
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
                    ln += 1
                if ln % 2 == 0:
                    sgn = -sgn
            term = sgn
            for i in range(self.n):
                term *= self.rows[i][perm[i]]
            total += term
        return total % self.mod

    def is_invertible(self):
        return self.det() % self.p != 0

    def inverse(self):
        """Hensel lifting from the inverse modulo p; precision doubles per
        step, so a handful of iterations reach p^k."""
        if not self.is_invertible():
            raise ZeroDivisionError("matrix is not invertible modulo p")
        inv_p = self._inverse_mod_p()
        x = self._like(inv_p)
        two_id = TruncatedMatrix.identity(self.n, self.p, self.k).scale(2)
        prec = 1
        while prec < self.k:
            x = x.mul(two_id.sub(self.mul(x)))
            prec *= 2
        if self.mul(x) != TruncatedMatrix.identity(self.n, self.p, self.k):
            raise AssertionError("lifted inverse fails to verify")
        return x

    def _inverse_mod_p(self):
        p, n = self.p, self.n
        a = [
            [self.rows[i][j] % p for j in range(n)]
            + [1 if i == j else 0 for j in range(n)]
            for i in range(n)
        ]
        row = 0
        for c in range(n):
            pr = next((r for r in range(row, n) if a[r][c] % p), None)
            if pr is None:
                raise ZeroDivisionError("matrix is not invertible modulo p")
            a[row], a[pr] = a[pr], a[row]
            inv = pow(a[row][c], -1, p)
            a[row] = [x * inv % p for x in a[row]]
            for r in range(n):
                if r != row and a[r][c] % p:
                    f = a[r][c]
                    a[r] = [(x - f * y) % p for x, y in zip(a[r], a[row])]
            row += 1
        return [r[n:] for r in a]

    def reduce(self, k2):
        if k2 > self.k:
            raise ValueError("cannot raise precision")
        return TruncatedMatrix(self.n, self.p, k2, self.rows)

    def reduction_mod_p(self):
        return self.reduce(1)

    def __eq__(self, other):
        if not isinstance(other, TruncatedMatrix):
            return NotImplemented
        return (self.n, self.p, self.k, self.rows) == (
            other.n,
            other.p,
            other.k,
            other.rows,
        )

    def __hash__(self):
        return hash((self.n, self.p, self.k, self.rows))

    def __repr__(self):
        return f"TruncatedMatrix({self.n}, {self.p}, {self.k}, {list(map(list, self.rows))})"


def _reduction_order(gamma: TruncatedMatrix):
    """Multiplicative order of the reduction mod p."""
    red = gamma.reduction_mod_p()
    ident = TruncatedMatrix.identity(gamma.n, gamma.p, 1)
    acc = red
    order = 1
    bound = gamma.p ** (gamma.n * gamma.n)
    while acc != ident:
        acc = acc.mul(red)
        order += 1
        if order > bound:
            raise AssertionError("order search exceeded the group order")
    return order


def topological_jordan(gamma: TruncatedMatrix, k=None):
    """Split an invertible truncated matrix as delta * u where delta has
    finite order prime to p and u is topologically unipotent; the two parts
    commute and are unique at this precision.

    delta is the limit of gamma^(p^(n*t)) with t the order of p modulo the
    prime-to-p part r of the reduction's order; the iteration must
    stabilize within k + 8 steps (a miss is a bug, not an input error).
    Returns (delta, u).
    """
    if k is not None:
        gamma = gamma.reduce(k)
    if gamma.k > 64:
        raise ValueError("precision capped at 64")
    if not gamma.is_invertible():
        raise ValueError("gamma is not invertible modulo p")
    p = gamma.p
    order = _reduction_order(gamma)
    r = order
    while r % p == 0:
        r //= p
    if r == 1:
        t = 1
    else:
        t = 1
        acc = p % r
        while acc != 1:
            acc = acc * p % r
            t += 1
    step = p**t
    cur = gamma
    for _ in range(gamma.k + 8):
        nxt = cur.pow(step)
        if nxt == cur:
            break
        cur = nxt
    else:
        raise AssertionError("power iteration did not stabilize")
    delta = cur
    ident = TruncatedMatrix.identity(gamma.n, p, gamma.k)
    if delta.pow(r) != ident:
        raise AssertionError("finite-order part has the wrong order")
    u = delta.inverse().mul(gamma)
    if delta.mul(u) != gamma or u.mul(delta) != gamma:
        raise AssertionError("parts do not commute back to gamma")
    acc = u
    for _ in range(gamma.k + 8):
        if acc == ident:
            break
        acc = acc.pow(p)
    else:
        raise AssertionError("unipotent part does not converge to 1")
    return delta, u


# ---------------------------------------------------------------------------
# quasi-logarithm bijectivity at finite precision

_QL_DIMS = {"SL2": 3, "GL2": 4}
_QL_BUDGET = 10**7


def _sl2_unipotent_set(p, k):
    """All (a,b,c,d) mod p^k with determinant 1 mod p^k and unipotent
    reduction (trace 2 mod p).  d is solved from the determinant equation,
    splitting on the valuation of a."""
    mod = p**k
    out = []
    for a in range(mod):
        a_unit = a % p != 0
        if a:
            e = 0
            aa = a
            while aa % p == 0:
                aa //= p
                e += 1
        for b in range(mod):
            for c in range(mod):
                rhs = (1 + b * c) % mod
                if a_unit:
                    d = rhs * pow(a, -1, mod) % mod
                    if (a + d - 2) % p == 0:
                        out.append((a, b, c, d))
                elif a == 0:
                    if rhs == 0:
                        start = 2 % p
                        out.extend((a, b, c, d) for d in range(start, mod, p))
                else:
                    pe = p**e
                    if rhs % pe:
                        continue
                    sub = p ** (k - e)
                    d0 = (rhs // pe) * pow(aa, -1, sub) % sub
                    if (d0 - 2) % p:
                        continue
                    out.extend((a, b, c, d0 + j * sub) for j in range(pe))
    return out


def _sl2_nilpotent_set(p, k):
    """Traceless (x, y, z) -> [[x, y], [z, -x]] mod p^k whose reduction is
    nilpotent: x^2 + yz = 0 mod p."""
    mod = p**k
    return [
        (x, y, z)
        for x in range(mod)
        for y in range(mod)
        for z in range(mod)
        if (x * x + y * z) % p == 0
    ]


def _gl2_unipotent_set(p, k):
    mod = p**k
    out = []
    for a in range(mod):
        d0 = (2 - a) % p
        for b in range(mod):
            for c in range(mod):
                if (a * d0 - b * c - 1) % p == 0:
                    out.extend((a, b, c, d) for d in range(d0, mod, p))
    return out


def _gl2_nilpotent_set(p, k):
    mod = p**k
    out = []
    for x in range(mod):
        w0 = (-x) % p
        for y in range(mod):
            for z in range(mod):
                if (x * w0 - y * z) % p == 0:
                    out.extend((x, y, z, w) for w in range(w0, mod, p))
    return out


def quasi_log_bijection_check(kind, p, k):
    """Exhaustively verify that the closed-form quasi-logarithm is a
    bijection from unipotent-reduction group elements mod p^k onto
    nilpotent-reduction Lie algebra elements mod p^k.

    p must be odd; the enumeration budget p^(k*dim) is capped at 10^7.
    Returns a report dict with the two cardinalities and the verdict.
    """
    if kind not in _QL_DIMS:
        raise ValueError(f"unsupported kind {kind!r}")
    if not _is_prime(p):
        raise ValueError("p must be prime")
    if p == 2:
        raise ValueError("p = 2 is excluded")
    if p ** (k * _QL_DIMS[kind]) > _QL_BUDGET:
        raise ValueError("enumeration budget exceeded")
    mod = p**k
    inv2 = pow(2, -1, mod)
    if kind == "SL2":
        uni = _sl2_unipotent_set(p, k)
        nil = _sl2_nilpotent_set(p, k)

        def phi(g):
            a, b, c, d = g
            s = (a - 1 + d - 1) * inv2 % mod
            return ((a - 1 - s) % mod, b, c)

        zero = (0, 0, 0)
        ident = (1, 0, 0, 1)
    else:
        uni = _gl2_unipotent_set(p, k)
        nil = _gl2_nilpotent_set(p, k)

        def phi(g):
            a, b, c, d = g
            return ((a - 1) % mod, b, c, (d - 1) % mod)

        zero = (0, 0, 0, 0)
        ident = (1, 0, 0, 1)
    nil_set = set(nil)
    image = [phi(g) for g in uni]
    image_set = set(image)
    report = {
        "kind": kind,
        "p": p,
        "k": k,
        "unipotent_count": len(uni),
        "nilpotent_count": len(nil),
        "counts_equal": len(uni) == len(nil),
        "injective": len(image_set) == len(image),
        "image_in_nilpotents": image_set <= nil_set,
        "identity_to_zero": phi(ident) == zero,
    }
    report["pass"] = (
        report["counts_equal"]
        and report["injective"]
        and report["image_in_nilpotents"]
        and report["identity_to_zero"]
    )
    return report


# ---------------------------------------------------------------------------
# Hilbert symbol and the diagonal-form invariant


def _split_valuation(x: Fraction, p):
    """x = p^alpha * u with u a p-unit; returns (alpha, u)."""
    alpha = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        alpha += 1
    while den % p == 0:
        den //= p
        alpha -= 1
    return alpha, Fraction(num, den)


def _unit_mod(u: Fraction, m):
    return u.numerator * pow(u.denominator, -1, m) % m


def _legendre(u: Fraction, p):
    s = pow(_unit_mod(u, p), (p - 1) // 2, p)
    return 1 if s == 1 else -1


def hilbert_symbol(a, b, v):
    """The local Hilbert symbol (a, b)_v in {+1, -1}.

    v is an odd prime, 2, or the string "inf".  Computed from the standard
    valuation and residue formulas; bimultiplicative and symmetric.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("arguments must be nonzero")
    if v == "inf":
        return -1 if a < 0 and b < 0 else 1
    v = int(v)
    if not _is_prime(v):
        raise ValueError("place must be a prime or 'inf'")
    if v == 2:
        alpha, u = _split_valuation(a, 2)
        beta, w = _split_valuation(b, 2)
        um, wm = _unit_mod(u, 8), _unit_mod(w, 8)
        eps_u, eps_w = (um - 1) // 2 % 2, (wm - 1) // 2 % 2
        om_u, om_w = (um * um - 1) // 8 % 2, (wm * wm - 1) // 8 % 2
        expo = eps_u * eps_w + alpha * om_w + beta * om_u
        return -1 if expo % 2 else 1
    alpha, u = _split_valuation(a, v)
    beta, w = _split_valuation(b, v)
    eps = (v - 1) // 2
    out = 1
    if alpha * beta * eps % 2:
        out = -out
    if beta % 2 and _legendre(u, v) == -1:
        out = -out
    if alpha % 2 and _legendre(w, v) == -1:
        out = -out
    return out


class DiagQuadForm:
    """A diagonal quadratic form, kept as its nonzero coefficients."""

    def __init__(self, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if any(c == 0 for c in coeffs):
            raise ValueError("coefficients must be nonzero")
        self.coeffs = coeffs

    @property
    def rank(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"DiagQuadForm({[str(c) for c in self.coeffs]})"


def hasse_invariant(form: DiagQuadForm, v):
    """Product of the pairwise Hilbert symbols of the diagonal
    coefficients at the place v."""
    out = 1
    cs = form.coeffs
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            out *= hilbert_symbol(cs[i], cs[j], v)
    return out


def relevant_places(*values):
    """The places where a Hilbert symbol of these rationals can be
    nontrivial: infinity, 2, and the odd primes dividing a numerator or
    denominator."""
    places = {"inf", 2}
    for x in values:
        x = Fraction(x)
        for n in (abs(x.numerator), x.denominator):
            while n % 2 == 0 and n:
                n //= 2
            d = 3
            while d * d <= n:
                if n % d == 0:
                    places.add(d)
                    while n % d == 0:
                        n //= d
                d += 2
            if n > 2:
                places.add(n)
    return places
