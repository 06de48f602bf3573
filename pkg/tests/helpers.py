"""Shared generators and comparison utilities for the test suite."""

import numpy as np

from cptkit import PTFrame, frame_from_involution, pair_swap_frame

# the three classification landmarks: real symmetric, PT-symmetric
# non-symmetric, and Hermitian non-PT-symmetric
H1 = np.array([[1.0, 2.0], [2.0, 3.0]])
H2 = np.array([[1 + 1j, 2j], [-2j, 1 - 1j]])
H3 = np.array([[1.0, 2j], [-2j, 3.0]])

SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])


def any_dim_frame(n: int) -> PTFrame:
    """A conjugation-T frame in any dimension >= 2: pairwise swaps plus a
    fixed point when n is odd."""
    if n % 2 == 0:
        return pair_swap_frame(n)
    p = np.zeros((n, n))
    for k in range(n // 2):
        p[2 * k, 2 * k + 1] = p[2 * k + 1, 2 * k] = 1.0
    p[n - 1, n - 1] = 1.0
    return frame_from_involution(p)


def random_complex(rng, shape, scale=1.0):
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def random_pt_symmetric(rng, frame: PTFrame, scale=1.0, imag_bias=1.0):
    """A + P conj(A) P is PT-symmetric by construction for real P and
    conjugation T."""
    n = frame.dim
    a = rng.standard_normal((n, n)) + 1j * imag_bias * rng.standard_normal((n, n))
    p = frame.p.matrix.real
    return scale * (a + p @ np.conj(a) @ p)


def random_symmetric_pt_symmetric(rng, frame: PTFrame, imag_bias=0.15):
    b = random_pt_symmetric(rng, frame, imag_bias=imag_bias)
    return (b + b.T) / 2.0


def multiset_gap(a, b) -> float:
    """Largest pair distance under greedy nearest matching of two value sets.

    Lexicographic sorting is unstable when real parts tie up to rounding, so
    values are matched nearest-first instead.
    """
    aa = sorted(np.asarray(a, dtype=complex), key=abs, reverse=True)
    bb = list(np.asarray(b, dtype=complex))
    if len(aa) != len(bb):
        return np.inf
    gap = 0.0
    for z in aa:
        j = int(np.argmin([abs(w - z) for w in bb]))
        gap = max(gap, abs(bb[j] - z))
        del bb[j]
    return gap
