"""Hot loops for the truncated dominant-coweight series.

Both backends walk the same lattice points in the same (lexicographic)
order and accumulate per (first-coordinate slab, height) bucket in that
order, so their outputs agree bit for bit.  The numba backend is used when
numba imports, unless ``L2STACK_DISABLE_NUMBA=1`` is set.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is optional
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

__all__ = ["HAVE_NUMBA", "default_backend", "slab_sums", "slab_points"]


def default_backend() -> str:
    flag = os.environ.get("L2STACK_DISABLE_NUMBA", "").strip().lower()
    if HAVE_NUMBA and flag not in ("1", "true", "yes", "on"):
        return "numba"
    return "numpy"


@njit(cache=True)
def _slab_sums_numba(pair, n_simple, mults, rho, torus, H, c_lo, c_hi, table, kmin):
    d = pair.shape[1]
    npair = pair.shape[0]
    nw = mults.shape[0]
    nslab = c_hi - c_lo + 1
    sums = np.zeros((nslab, H + 1))
    counts = np.zeros((nslab, H + 1), dtype=np.int64)
    best = np.int64(-(2**62))
    best_pt = np.zeros(d, dtype=np.int64)
    x = np.zeros(d, dtype=np.int64)
    budget = np.zeros(d + 1, dtype=np.int64)
    p = np.zeros(npair, dtype=np.int64)
    for c0 in range(c_lo, c_hi + 1):
        cost0 = abs(c0) if torus[0] else c0
        if cost0 > H or (not torus[0] and c0 < 0):
            continue
        x[0] = c0
        budget[0] = H
        budget[1] = H - cost0
        rh = rho[0] * c0
        for a in range(npair):
            p[a] = pair[a, 0] * c0
        # reset coordinates 1..d-1 to their first admissible value
        for j in range(1, d):
            v = -budget[j] if torus[j] else 0
            x[j] = v
            budget[j + 1] = budget[j] - (abs(v) if torus[j] else v)
            rh += rho[j] * v
            for a in range(npair):
                p[a] += pair[a, j] * v
        while True:
            dom = True
            for a in range(n_simple):
                if p[a] < 0:
                    dom = False
                    break
            if dom:
                s2 = 2 * rh
                for w in range(nw):
                    pw = p[n_simple + w]
                    s2 -= mults[w] * (pw if pw >= 0 else -pw)
                h = H - budget[d]
                sums[c0 - c_lo, h] += table[s2 - kmin]
                counts[c0 - c_lo, h] += 1
                if s2 > best:
                    best = s2
                    for c in range(d):
                        best_pt[c] = x[c]
            # odometer step over coordinates d-1 .. 1
            j = d - 1
            while j >= 1:
                if x[j] < budget[j]:
                    break
                j -= 1
            if j < 1:
                break
            x[j] += 1
            rh += rho[j]
            for a in range(npair):
                p[a] += pair[a, j]
            budget[j + 1] = budget[j] - (abs(x[j]) if torus[j] else x[j])
            for k in range(j + 1, d):
                old = x[k]
                v = -budget[k] if torus[k] else 0
                x[k] = v
                budget[k + 1] = budget[k] - (abs(v) if torus[k] else v)
                if v != old:
                    rh += rho[k] * (v - old)
                    for a in range(npair):
                        p[a] += pair[a, k] * (v - old)
    return sums, counts, best, best_pt


def slab_points(torus: np.ndarray, H: int, c0: int) -> np.ndarray:
    """All integer points of height <= H with first coordinate c0, lexicographic order.

    Semisimple coordinates range over [0, budget], torus ones over
    [-budget, budget]; no dominance filter is applied here.
    """
    d = len(torus)
    cost0 = abs(c0) if torus[0] else c0
    if cost0 > H or (not torus[0] and c0 < 0):
        return np.zeros((0, d), dtype=np.int64)
    pts = np.full((1, 1), c0, dtype=np.int64)
    budget = np.array([H - cost0], dtype=np.int64)
    for j in range(1, d):
        width = 2 * budget + 1 if torus[j] else budget + 1
        total = int(width.sum())
        rep_idx = np.repeat(np.arange(len(pts)), width)
        starts = np.cumsum(width) - width
        offset = np.arange(total, dtype=np.int64) - np.repeat(starts, width)
        b = budget[rep_idx]
        vals = offset - b if torus[j] else offset
        pts = np.concatenate([pts[rep_idx], vals[:, None]], axis=1)
        budget = b - (np.abs(vals) if torus[j] else vals)
    return pts


def _slab_sums_numpy(pair, n_simple, mults, rho, torus, H, c_lo, c_hi, table, kmin):
    d = pair.shape[1]
    nslab = c_hi - c_lo + 1
    sums = np.zeros((nslab, H + 1))
    counts = np.zeros((nslab, H + 1), dtype=np.int64)
    best = -(2**62)
    best_pt = np.zeros(d, dtype=np.int64)
    tor = np.asarray(torus, dtype=bool)
    for c0 in range(c_lo, c_hi + 1):
        pts = slab_points(tor, H, c0)
        if not len(pts):
            continue
        p = pts @ pair.T
        if n_simple:
            keep = (p[:, :n_simple] >= 0).all(axis=1)
            pts, p = pts[keep], p[keep]
            if not len(pts):
                continue
        s2 = 2 * (pts @ rho) - np.abs(p[:, n_simple:]) @ mults
        h = np.where(tor, np.abs(pts), pts).sum(axis=1)
        sums[c0 - c_lo] = np.bincount(h, weights=table[s2 - kmin], minlength=H + 1)
        counts[c0 - c_lo] = np.bincount(h, minlength=H + 1)
        i = int(np.argmax(s2))
        if s2[i] > best:
            best = int(s2[i])
            best_pt = pts[i].copy()
    return sums, counts, best, best_pt


def slab_sums(pair, n_simple, mults, rho, torus, H, c_lo, c_hi, table, kmin, backend=None):
    """Per-slab, per-height sums of table[2E - kmin] over dominant points.

    Returns (sums[nslab, H+1], counts[nslab, H+1], max 2E, first point attaining it).
    """
    backend = backend or default_backend()
    args = (np.ascontiguousarray(pair, dtype=np.int64), int(n_simple),
            np.ascontiguousarray(mults, dtype=np.int64), np.ascontiguousarray(rho, dtype=np.int64),
            np.ascontiguousarray(torus, dtype=np.int64), int(H), int(c_lo), int(c_hi),
            np.ascontiguousarray(table, dtype=np.float64), int(kmin))
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is not importable")
        s, c, b, pt = _slab_sums_numba(*args)
        return s, c, int(b), pt
    if backend == "numpy":
        return _slab_sums_numpy(*args)
    raise ValueError(f"unknown backend {backend!r}")
