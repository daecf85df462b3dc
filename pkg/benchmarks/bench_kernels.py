"""Compare the compiled and pure-Python kernels on GL2(F11).

Usage: python3 benchmarks/bench_kernels.py
"""

import time

from liechar import _kernels_py

try:
    from liechar import _kernels_c
except ImportError:
    _kernels_c = None


def pack(m, q):
    out = 0
    w = 1
    for row in m:
        for x in row:
            out += (x % q) * w
            w *= q
    return out


def gl2_elements(q):
    els = []
    for packed in range(q**4):
        a, r = packed % q, packed // q
        b, r = r % q, r // q
        c, d = r % q, r // q
        if (a * d - b * c) % q:
            els.append(packed)
    return els


def bench(backend, name, q=11):
    els = gl2_elements(q)
    gens = [pack([[1, 1], [0, 1]], q), pack([[1, 0], [1, 1]], q),
            pack([[2, 0], [0, 1]], q)]
    t0 = time.perf_counter()
    labels = backend.conjugacy_partition(els, gens, q, 2)
    t1 = time.perf_counter()
    fixed = pack([[0, 1], [0, 0]], q)
    space = range(q**4)
    hist = backend.pair_histogram(fixed, space, q, 2)
    t2 = time.perf_counter()
    classes = len(set(labels))
    print(f"{name:10s} conjugacy_partition({len(els)} els -> {classes} classes): "
          f"{t1 - t0:8.3f}s   pair_histogram({q**4} pts): {t2 - t1:8.3f}s")
    return labels, hist, t1 - t0, t2 - t1


def main():
    print("GL2(F11) kernel benchmark")
    lp, hp, tp1, tp2 = bench(_kernels_py, "python")
    if _kernels_c is None:
        print("compiled kernels not built; run pip install -e . with Cython")
        return
    lc, hc, tc1, tc2 = bench(_kernels_c, "compiled")
    assert lp == lc, "backends disagree on conjugacy labels"
    assert hp == hc, "backends disagree on histograms"
    print(f"speedup: conjugacy x{tp1 / tc1:.1f}, histogram x{tp2 / tc2:.1f}")


if __name__ == "__main__":
    main()
