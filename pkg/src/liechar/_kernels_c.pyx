# cython: language_level=3
"""Compiled twin of the pure-Python matrix kernels. Same packed-int
conventions: n x n over Z/q, row-major digits in base q, q prime, n <= 3."""

BACKEND = "compiled"

ctypedef long long pk


cdef inline void _unpack(pk a, long q, long nn, long* d) noexcept:
    cdef long k
    for k in range(nn):
        d[k] = a % q
        a //= q


cdef inline pk _pack(long* d, long q, long nn) noexcept:
    cdef pk out = 0
    cdef pk w = 1
    cdef long k
    for k in range(nn):
        out += d[k] * w
        w *= q
    return out


cdef inline pk _mul(pk a, pk b, long q, long n) noexcept:
    cdef long da[9]
    cdef long db[9]
    cdef long dc[9]
    cdef long i, j, k, s
    _unpack(a, q, n * n, da)
    _unpack(b, q, n * n, db)
    for i in range(n):
        for j in range(n):
            s = 0
            for k in range(n):
                s += da[i * n + k] * db[k * n + j]
            dc[i * n + j] = s % q
    return _pack(dc, q, n * n)


cdef long _modinv(long a, long q) except -1:
    cdef long t = 0, newt = 1, r = q, newr = a % q, qt, tmp
    while newr != 0:
        qt = r // newr
        tmp = t - qt * newt
        t = newt
        newt = tmp
        tmp = r - qt * newr
        r = newr
        newr = tmp
    if r != 1:
        raise ZeroDivisionError("matrix not invertible mod q")
    return t % q


cdef pk _inv(pk a, long q, long n) except? -1:
    cdef long d[9]
    cdef long e[9]
    cdef long det, dinv, k
    _unpack(a, q, n * n, d)
    if n == 1:
        return _modinv(d[0], q)
    if n == 2:
        det = (d[0] * d[3] - d[1] * d[2]) % q
        dinv = _modinv(det, q)
        e[0] = d[3]; e[1] = -d[1]; e[2] = -d[2]; e[3] = d[0]
        for k in range(4):
            e[k] = (e[k] * dinv) % q
            if e[k] < 0:
                e[k] += q
        return _pack(e, q, 4)
    if n == 3:
        e[0] = d[4] * d[8] - d[5] * d[7]
        e[1] = -(d[1] * d[8] - d[2] * d[7])
        e[2] = d[1] * d[5] - d[2] * d[4]
        e[3] = -(d[3] * d[8] - d[5] * d[6])
        e[4] = d[0] * d[8] - d[2] * d[6]
        e[5] = -(d[0] * d[5] - d[2] * d[3])
        e[6] = d[3] * d[7] - d[4] * d[6]
        e[7] = -(d[0] * d[7] - d[1] * d[6])
        e[8] = d[0] * d[4] - d[1] * d[3]
        det = (d[0] * e[0] + d[1] * e[3] + d[2] * e[6]) % q
        dinv = _modinv(det, q)
        for k in range(9):
            e[k] = (e[k] * dinv) % q
            if e[k] < 0:
                e[k] += q
        return _pack(e, q, 9)
    raise ValueError("n must be 1, 2 or 3")


def mat_mul(a, b, q, n):
    """Packed product of two packed n x n matrices mod q."""
    return _mul(a, b, q, n)


def mat_inv(a, q, n):
    """Packed inverse via the adjugate. Raises ZeroDivisionError if the
    determinant is 0 mod q."""
    return _inv(a, q, n)


def orbit_of(seed, gens, q, n):
    """Sorted tuple of the orbit of a packed matrix under conjugation by the
    group generated by gens (packed, invertible)."""
    cdef long cq = q, cn = n
    cdef pk x, y
    cdef Py_ssize_t gi
    cdef list gl = [(<pk> g, _inv(<pk> g, cq, cn)) for g in gens]
    cdef Py_ssize_t ng = len(gl)
    cdef pk gmat[32]
    cdef pk ginv[32]
    if ng > 32:
        raise ValueError("too many generators")
    for gi in range(ng):
        gmat[gi] = gl[gi][0]
        ginv[gi] = gl[gi][1]
    seen = {seed}
    cdef list stack = [seed]
    while stack:
        x = stack.pop()
        for gi in range(ng):
            y = _mul(_mul(gmat[gi], x, cq, cn), ginv[gi], cq, cn)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return tuple(sorted(seen))


def conjugacy_partition(elements, gens, q, n):
    """Class labels, aligned with elements, for conjugation by <gens>.
    Labels count up in order of the first element of each class. The element
    list must be closed under conjugation."""
    cdef long cq = q, cn = n
    cdef pk x, y, e
    cdef Py_ssize_t gi, i
    cdef list gl = [(<pk> g, _inv(<pk> g, cq, cn)) for g in gens]
    cdef Py_ssize_t ng = len(gl)
    cdef pk gmat[32]
    cdef pk ginv[32]
    if ng > 32:
        raise ValueError("too many generators")
    for gi in range(ng):
        gmat[gi] = gl[gi][0]
        ginv[gi] = gl[gi][1]
    cdef dict index = {el: i for i, el in enumerate(elements)}
    cdef list labels = [-1] * len(elements)
    cdef long next_label = 0
    cdef list stack
    for i in range(len(elements)):
        if <long> labels[i] >= 0:
            continue
        labels[i] = next_label
        e = elements[i]
        stack = [e]
        while stack:
            x = stack.pop()
            for gi in range(ng):
                y = _mul(_mul(gmat[gi], x, cq, cn), ginv[gi], cq, cn)
                j = index.get(y)
                if j is None:
                    raise ValueError("element set not closed under conjugation")
                if <long> labels[<Py_ssize_t> j] < 0:
                    labels[<Py_ssize_t> j] = next_label
                    stack.append(y)
        next_label += 1
    return labels


def pair_histogram(fixed, space, q, n):
    """Counts of trace(fixed * y) mod q over all packed y in space."""
    cdef long cq = q, cn = n
    cdef long df[9]
    cdef long dy[9]
    cdef long i, k, s
    cdef pk y
    _unpack(fixed, cq, cn * cn, df)
    cdef list counts = [0] * cq
    for yo in space:
        y = yo
        _unpack(y, cq, cn * cn, dy)
        s = 0
        for i in range(cn):
            for k in range(cn):
                s += df[i * cn + k] * dy[k * cn + i]
        counts[s % cq] = counts[s % cq] + 1
    return counts
