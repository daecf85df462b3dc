"""Small finite fields F_q, q = p^f with f <= 3 and q <= 2**14.

Elements are integers 0 .. q-1 encoding polynomial coordinates base p
(constant digit least significant). Multiplication goes through exp/log
tables for a fixed multiplicative generator, chosen as the smallest element
(in this integer encoding) of full order, so the generator is reproducible.
"""

from __future__ import annotations

from .cyclo import Cyclotomic

MAX_Q = 2**14


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FiniteField:
    def __init__(self, p, f=1):
        p, f = int(p), int(f)
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if not 1 <= f <= 3:
            raise ValueError("extension degree must be 1, 2 or 3")
        q = p**f
        if q > MAX_Q:
            raise ValueError(f"field size {q} exceeds {MAX_Q}")
        self.p, self.f, self.q = p, f, q
        self.modulus = self._find_modulus() if f > 1 else None
        self._build_tables()

    # -- element encoding

    def _digits(self, a):
        return [(a // self.p**i) % self.p for i in range(self.f)]

    def _encode(self, digits):
        return sum(d % self.p * self.p**i for i, d in enumerate(digits))

    def _find_modulus(self):
        # monic irreducible of degree f over F_p; degree 2,3 irreducible iff
        # no root in F_p. Coefficients scanned in lexicographic order.
        p, f = self.p, self.f
        for tail in range(p**f):
            coeffs = [(tail // p**i) % p for i in range(f)] + [1]
            if all(
                sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p != 0
                for x in range(p)
            ):
                return tuple(coeffs)
        raise AssertionError("no irreducible polynomial found")

    def _mul_raw(self, a, b):
        if self.f == 1:
            return (a * b) % self.p
        p = self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.f - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        # reduce by the monic modulus
        for i in range(len(prod) - 1, self.f - 1, -1):
            c = prod[i] % p
            prod[i] = 0
            if c:
                for j in range(self.f):
                    prod[i - self.f + j] -= c * self.modulus[j]
        return self._encode([x % p for x in prod[: self.f]])

    def _build_tables(self):
        q = self.q
        # smallest element of multiplicative order q-1
        factors = _prime_factors(q - 1) if q > 2 else []
        gen = None
        for cand in range(2, q):
            if all(self._pow_raw(cand, (q - 1) // ell) != 1 for ell in factors):
                gen = cand
                break
        if gen is None:
            gen = 1  # q = 2
        self.gen = gen
        self.exp_table = [1] * (q - 1)
        for i in range(1, q - 1):
            self.exp_table[i] = self._mul_raw(self.exp_table[i - 1], gen)
        self.log_table = {x: i for i, x in enumerate(self.exp_table)}
        if len(self.log_table) != q - 1:
            raise AssertionError("generator does not have full order")

    def _pow_raw(self, a, n):
        r = 1
        while n:
            if n & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            n >>= 1
        return r

    # -- field operations

    def add(self, a, b):
        if self.f == 1:
            return (a + b) % self.p
        return self._encode([x + y for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a):
        if self.f == 1:
            return (-a) % self.p
        return self._encode([-x for x in self._digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.exp_table[(-self.log_table[a]) % (self.q - 1)]

    def pow(self, a, n):
        if a == 0:
            if n <= 0:
                raise ZeroDivisionError("0**nonpositive")
            return 0
        return self.exp_table[(self.log_table[a] * n) % (self.q - 1)]

    def log(self, a):
        """Discrete log base the fixed generator."""
        if a == 0:
            raise ValueError("log of 0")
        return self.log_table[a]

    def trace(self, a):
        """Absolute trace down to F_p, returned as an int mod p."""
        if self.f == 1:
            return a % self.p
        t = a
        x = a
        for _ in range(self.f - 1):
            x = self.pow(x, self.p) if x else 0
            t = self.add(t, x)
        # t lies in the prime subfield, i.e. its encoding is a single digit
        digits = self._digits(t)
        if any(digits[1:]):
            raise AssertionError("trace left the prime field")
        return digits[0]

    def is_square(self, a):
        if a == 0:
            return True
        return self.log_table[a] % 2 == 0 if self.q % 2 == 1 else True

    @property
    def non_residue(self):
        """Smallest non-square in the integer encoding (odd q only)."""
        if self.q % 2 == 0:
            raise ValueError("every element is a square in characteristic 2")
        for x in range(2, self.q):
            if not self.is_square(x):
                return x
        raise AssertionError("no non-residue found")

    # -- characters

    def psi(self, a):
        """The fixed nontrivial additive character, zeta_p^trace(a).
        Its conductor is p."""
        return Cyclotomic.zeta(self.p, self.trace(a))

    def mult_char_value(self, j, a):
        """Value at a != 0 of the multiplicative character sending the fixed
        generator to zeta_(q-1)^j."""
        if a == 0:
            raise ValueError("multiplicative character at 0")
        return Cyclotomic.zeta(self.q - 1, (j * self.log_table[a]) % (self.q - 1))

    def __repr__(self):
        return f"F_{self.q}" + (f" (p={self.p}, f={self.f})" if self.f > 1 else "")

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.f) == (other.p, other.f)

    def __hash__(self):
        return hash((self.p, self.f))


def finite_field_build(p, f=1) -> FiniteField:
    return FiniteField(p, f)
