"""Legendre moment features for square scalar fields.

The moment of orders (p, q) over an N x N field f is

    L_pq = (2p+1)(2q+1) / N^2 * sum_ij P_p(x_i) P_q(x_j) f[i, j]

where P_n is the Legendre polynomial of degree n and x maps the pixel
index onto [-1, 1] via x_i = 2i/(N-1) - 1. The row index supplies the
first coordinate (order p), the column index the second (order q).
Fields are expected to be rescaled to [0, 1] by the caller; the moment
machinery itself is scale-agnostic.

Summation is organized around the grid's mirror symmetry instead of a
plain running total. The index grid is antisymmetrized so x_i == -x_(N-1-i)
holds bit for bit, polynomial parity is applied as exact sign flips while
opposite quadrants of the field are folded together, and the folded
product is reduced in a transpose-symmetric order. Two properties follow
that plain summation would only approximate:

* moments with odd p or odd q of a constant field are exactly 0.0;
* transposing the field exactly swaps L_pq and L_qp, bit for bit.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


def legendre_poly(n, x):
    """Legendre polynomial P_n evaluated via the three-term recurrence.

    Vectorized over x; scalar input returns a float.
    """
    if n < 0:
        raise ValueError("degree must be >= 0")
    xv = np.asarray(x, dtype=np.float64)
    prev = np.ones_like(xv)
    if n == 0:
        return float(prev) if prev.ndim == 0 else prev
    cur = xv.copy()
    for k in range(2, n + 1):
        cur, prev = ((2 * k - 1) * xv * cur - (k - 1) * prev) / k, cur
    return float(cur) if cur.ndim == 0 else cur


@lru_cache(maxsize=None)
def moment_indices(order):
    """(p, q) pairs with p + q <= order, sorted by total order then p."""
    if order < 0:
        raise ValueError("order must be >= 0")
    return tuple((p, total - p) for total in range(order + 1) for p in range(total + 1))


@dataclass
class MomentSet:
    """Legendre moments of one field, keyed by (p, q)."""

    order: int
    grid_size: int
    values: dict

    def vector(self):
        """Moments as a float64 vector in moment_indices order."""
        return np.array([self.values[pq] for pq in moment_indices(self.order)],
                        dtype=np.float64)


@lru_cache(maxsize=32)
def _grid_tables(n, max_order):
    """Sample grid and P_k table for an n-point axis, cached per (n, order).

    The grid is antisymmetrized, (raw - raw[::-1]) / 2, so mirrored nodes
    are exact negations and the recurrence then keeps every polynomial
    column exactly even or odd across the mirror.
    """
    idx = np.arange(n, dtype=np.float64)
    raw = 2.0 * idx / (n - 1) - 1.0
    xs = (raw - raw[::-1]) / 2.0
    table = np.empty((n, max_order + 1), dtype=np.float64)
    table[:, 0] = 1.0
    if max_order >= 1:
        table[:, 1] = xs
    for k in range(2, max_order + 1):
        table[:, k] = ((2 * k - 1) * xs * table[:, k - 1] - (k - 1) * table[:, k - 2]) / k
    xs.setflags(write=False)
    table.setflags(write=False)
    return xs, table


def moments(field, order=10):
    """All Legendre moments of a square field up to total order p + q <= order.

    The field is converted to float64; rescale integer code or gray values
    into [0, 1] before calling. Raises for non-square or sub-2x2 input.
    """
    f = np.asarray(field, dtype=np.float64)
    if f.ndim != 2 or f.shape[0] != f.shape[1]:
        raise ValueError(f"expected a square 2-D field, got shape {f.shape}")
    n = f.shape[0]
    if n < 2:
        raise ValueError("field must be at least 2x2")
    if order < 0:
        raise ValueError("order must be >= 0")
    _, table = _grid_tables(n, order)
    h = n // 2
    half = table[:h, :]

    # fold opposite quadrants with the four parity sign combinations;
    # each combined entry pairs a sample with its mirror images exactly
    fa = f[:h, :h]
    fb = f[:h, ::-1][:, :h]
    fc = f[::-1, :][:h, :h]
    fd = f[::-1, ::-1][:h, :h]
    folds = {
        (1, 1): (fa + fd) + (fb + fc),
        (1, -1): (fa - fd) + (fc - fb),
        (-1, 1): (fa - fd) + (fb - fc),
        (-1, -1): (fa + fd) - (fb + fc),
    }
    if n % 2:
        mid = h
        rowvec = {1: f[mid, :h] + f[mid, ::-1][:h],
                  -1: f[mid, :h] - f[mid, ::-1][:h]}
        colvec = {1: f[:h, mid] + f[::-1, mid][:h],
                  -1: f[:h, mid] - f[::-1, mid][:h]}
        center = f[mid, mid]
        pmid = table[mid, :]

    iu = np.triu_indices(h, k=1)
    values = {}
    for p, q in moment_indices(order):
        sp = -1 if p % 2 else 1
        sq = -1 if q % 2 else 1
        y = np.outer(half[:, p], half[:, q]) * folds[(sp, sq)]
        # reduce in an order that is invariant under y <-> y.T, which is
        # what makes transposing the field swap L_pq and L_qp exactly
        msym = y + y.T
        s = np.sum(msym[iu]) + np.sum(np.diagonal(y))
        if n % 2:
            rsum = pmid[p] * (half[:, q] @ rowvec[sq])
            csum = pmid[q] * (half[:, p] @ colvec[sp])
            cent = (pmid[p] * pmid[q]) * center
            s = s + ((rsum + csum) + cent)
        lam = ((2 * p + 1) * (2 * q + 1)) / (n * n)
        values[(p, q)] = lam * s
    return MomentSet(order=order, grid_size=n, values=values)
