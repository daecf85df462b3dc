"""Pure-Python matrix kernels over prime fields.

Matrices are packed row-major into a single int: entry (i, j) of an n x n
matrix over Z/q is digit i*n + j in base q. q must be prime and small
(q <= 13, n <= 3 in practice, so packed values stay well below 2**63).
"""

BACKEND = "python"


def mat_mul(a, b, q, n):
    """Packed product of two packed n x n matrices mod q."""
    da = [0] * (n * n)
    db = [0] * (n * n)
    for k in range(n * n):
        da[k] = a % q
        a //= q
        db[k] = b % q
        b //= q
    out = 0
    w = 1
    for i in range(n):
        for j in range(n):
            s = 0
            for k in range(n):
                s += da[i * n + k] * db[k * n + j]
            out += (s % q) * w
            w *= q
    return out


def mat_inv(a, q, n):
    """Packed inverse via the adjugate. Raises ZeroDivisionError if the
    determinant is 0 mod q."""
    d = [0] * (n * n)
    for k in range(n * n):
        d[k] = a % q
        a //= q
    if n == 1:
        det = d[0] % q
        if det == 0:
            raise ZeroDivisionError("matrix not invertible mod q")
        return pow(det, -1, q)
    if n == 2:
        det = (d[0] * d[3] - d[1] * d[2]) % q
        if det == 0:
            raise ZeroDivisionError("matrix not invertible mod q")
        dinv = pow(det, -1, q)
        e = [d[3], -d[1], -d[2], d[0]]
        out = 0
        w = 1
        for k in range(4):
            out += ((e[k] * dinv) % q) * w
            w *= q
        return out
    if n == 3:
        cof = [
            d[4] * d[8] - d[5] * d[7],
            -(d[1] * d[8] - d[2] * d[7]),
            d[1] * d[5] - d[2] * d[4],
            -(d[3] * d[8] - d[5] * d[6]),
            d[0] * d[8] - d[2] * d[6],
            -(d[0] * d[5] - d[2] * d[3]),
            d[3] * d[7] - d[4] * d[6],
            -(d[0] * d[7] - d[1] * d[6]),
            d[0] * d[4] - d[1] * d[3],
        ]
        det = (d[0] * cof[0] + d[1] * cof[3] + d[2] * cof[6]) % q
        if det == 0:
            raise ZeroDivisionError("matrix not invertible mod q")
        dinv = pow(det, -1, q)
        out = 0
        w = 1
        for k in range(9):
            out += ((cof[k] * dinv) % q) * w
            w *= q
        return out
    raise ValueError("n must be 1, 2 or 3")


def orbit_of(seed, gens, q, n):
    """Sorted tuple of the orbit of a packed matrix under conjugation by the
    group generated by gens (packed, invertible)."""
    pairs = [(g, mat_inv(g, q, n)) for g in gens]
    seen = {seed}
    stack = [seed]
    while stack:
        x = stack.pop()
        for g, gi in pairs:
            y = mat_mul(mat_mul(g, x, q, n), gi, q, n)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return tuple(sorted(seen))


def conjugacy_partition(elements, gens, q, n):
    """Class labels, aligned with elements, for conjugation by <gens>.
    Labels count up in order of the first element of each class. The element
    list must be closed under conjugation."""
    index = {e: i for i, e in enumerate(elements)}
    labels = [-1] * len(elements)
    pairs = [(g, mat_inv(g, q, n)) for g in gens]
    next_label = 0
    for i, e in enumerate(elements):
        if labels[i] >= 0:
            continue
        labels[i] = next_label
        stack = [e]
        while stack:
            x = stack.pop()
            for g, gi in pairs:
                y = mat_mul(mat_mul(g, x, q, n), gi, q, n)
                j = index.get(y)
                if j is None:
                    raise ValueError("element set not closed under conjugation")
                if labels[j] < 0:
                    labels[j] = next_label
                    stack.append(y)
        next_label += 1
    return labels


def pair_histogram(fixed, space, q, n):
    """Counts of trace(fixed * y) mod q over all packed y in space."""
    df = [0] * (n * n)
    a = fixed
    for k in range(n * n):
        df[k] = a % q
        a //= q
    counts = [0] * q
    for y in space:
        dy = [0] * (n * n)
        for k in range(n * n):
            dy[k] = y % q
            y //= q
        s = 0
        for i in range(n):
            for k in range(n):
                s += df[i * n + k] * dy[k * n + i]
        counts[s % q] += 1
    return counts
