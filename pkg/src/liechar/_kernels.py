"""Kernel selector: compiled extension when the build produced one, pure
Python otherwise. Both expose the same functions over packed matrices."""

try:
    from ._kernels_c import (
        BACKEND,
        conjugacy_partition,
        mat_inv,
        mat_mul,
        orbit_of,
        pair_histogram,
    )

    USING_COMPILED = True
except ImportError:
    from ._kernels_py import (
        BACKEND,
        conjugacy_partition,
        mat_inv,
        mat_mul,
        orbit_of,
        pair_histogram,
    )

    USING_COMPILED = False

__all__ = [
    "BACKEND",
    "USING_COMPILED",
    "conjugacy_partition",
    "mat_inv",
    "mat_mul",
    "orbit_of",
    "pair_histogram",
]
