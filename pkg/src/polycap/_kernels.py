"""Compiled matrix-free application of the quadrature-weighted N and M operators.

Same quadrature as :func:`polycap.bie.kernel_blocks`, evaluated on the fly
without storing any matrix. Used by the GMRES path. Node differences are
formed by plain subtraction here; :func:`polycap.bie.near_corrections`
supplies the sparse fix-up for nearby pairs on a shared piece.
"""

import math

import numba
import numpy as np


@numba.njit(parallel=True, fastmath=True, cache=True)
def apply_n_vec(ex, ey, ar, ai, sr, si, n, x):
    """``N_h x`` for one vector, real arithmetic only (the GMRES hot loop)."""
    size = x.shape[0]
    scale = 2.0 / n
    out = np.empty(size)
    for i in numba.prange(size):
        xi = ex[i]
        yi = ey[i]
        pr = ar[i]
        pi_ = ai[i]
        acc = 0.0
        rs = 0.0
        for j in range(size):
            dx = ex[j] - xi
            dy = ey[j] - yi
            den = dx * dx + dy * dy
            if den == 0.0:
                continue
            qr = pr * sr[j] - pi_ * si[j]
            qi = pr * si[j] + pi_ * sr[j]
            v = (qi * dx - qr * dy) / den
            rs += v
            acc += v * x[j]
        out[i] = scale * acc - (1.0 + scale * rs) * x[i]
    return out


@numba.njit(parallel=True, fastmath=True, cache=True)
def apply_m_vec(ex, ey, ar, ai, sr, si, t, comp, n, x):
    """``M_h x`` for one vector: smooth part by subtraction, cotangent part by alternate points."""
    size = x.shape[0]
    scale = 2.0 / n
    out = np.empty(size)
    for i in numba.prange(size):
        xi = ex[i]
        yi = ey[i]
        pr = ar[i]
        pi_ = ai[i]
        acc = 0.0
        rs = 0.0
        for j in range(size):
            if j == i:
                continue
            dx = ex[j] - xi
            dy = ey[j] - yi
            den = dx * dx + dy * dy
            qr = pr * sr[j] - pi_ * si[j]
            qi = pr * si[j] + pi_ * sr[j]
            v = scale * (qr * dx + qi * dy) / den
            alt = 0.0
            if comp[j] == comp[i]:
                cot = 1.0 / math.tan((t[i] - t[j]) / 2.0)
                v += cot / n
                if (i - j) & 1:
                    alt = 2.0 * cot / n
            rs += v
            acc += (v - alt) * x[j]
        out[i] = acc - rs * x[i]
    return out
