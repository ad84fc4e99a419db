"""Truncated dominant-coweight series, as a numerical cross-check of the exact verdict.

Height of a coweight is the sum of its semisimple coroot coordinates plus
the L1 norm of its torus coordinates.  Summation order is fixed: terms are
accumulated per (first-coordinate slab, exact height) bucket in
lexicographic order, slabs are combined in increasing order of the first
coordinate, and heights are then accumulated upward.  Any split of the
first-coordinate range into consecutive blocks reproduces S_h bit for bit.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from . import _kernels
from .decide import max_exponent_lp
from .exponent import ExponentForm
from .ratlp import solve_lp
from .reps import WeightRep
from .rootdata import RootDatum

__all__ = [
    "SeriesReport",
    "SeriesOverflowError",
    "enumerate_dominant",
    "partial_sum",
    "slab_partials",
    "merge_partials",
    "first_coordinate_range",
    "lattice_count_at_height",
    "checkpoints",
    "height_decay_rate",
    "tail_bound",
]


class SeriesOverflowError(OverflowError):
    pass


@dataclass(frozen=True)
class SeriesReport:
    q: int
    H: int
    partial_sums: tuple[tuple[int, float], ...]
    term_count: int
    counts: tuple[int, ...]
    verdict_hint: str
    max_term_exponent: Fraction | None
    backend: str

    @property
    def final(self) -> float:
        return self.partial_sums[-1][1]

    def at(self, h: int) -> float:
        return self.partial_sums[h][1]

    def count_upto(self, h: int) -> int:
        return sum(self.counts[: h + 1])

    def checkpoint_lines(self, heights=None) -> list[str]:
        heights = checkpoints(self.H) if heights is None else heights
        return [f"h={h} count={self.count_upto(h)} S={self.at(h)!r}" for h in heights]


def checkpoints(H: int) -> list[int]:
    return sorted({H // 4, H // 2, (3 * H) // 4, H})


def first_coordinate_range(rd: RootDatum, H: int) -> tuple[int, int]:
    if rd.semisimple_rank:
        return 0, H
    return -H, H


def _arrays(rd: RootDatum, rep: WeightRep):
    ef = ExponentForm(rd, rep)
    w, m = ef.arrays
    simple = np.array(rd.simple_roots, dtype=np.int64).reshape(-1, rd.dim)
    pair = np.concatenate([simple, w], axis=0)
    torus = np.array([0] * rd.semisimple_rank + [1] * rd.torus_rank, dtype=np.int64)
    return pair, len(simple), m, np.array(rd.two_rho, dtype=np.int64), torus


def _term_table(rd: RootDatum, rep: WeightRep, q: int, H: int) -> tuple[np.ndarray, int]:
    """q^(k/2) for every k that 2E can take on dominant points of height <= H."""
    spread = sum(m * max((abs(x) for x in w), default=0) for w, m in rep.entries)
    kmax = 4 * H if rd.semisimple_rank else 0
    kmin = -spread * H
    sq = math.sqrt(q)
    table = np.empty(kmax - kmin + 1)
    # outside this window q^(k/2) is 0.0 or inf in double precision anyway
    lo = -2 * math.ceil(1080 / math.log2(q)) - 2
    hi = 2 * math.ceil(1030 / math.log2(q)) + 2
    for i, k in enumerate(range(kmin, kmax + 1)):
        if k < lo:
            table[i] = 0.0
            continue
        if k > hi:
            table[i] = math.inf
            continue
        try:
            v = float(Fraction(q) ** (k // 2))
        except OverflowError:
            v = math.inf
        table[i] = v * sq if k % 2 else v
    return table, kmin


def slab_partials(rd: RootDatum, rep: WeightRep, q: int, H: int, c_lo: int, c_hi: int,
                  backend: str | None = None):
    """Raw per-slab bucket sums for first coordinate in [c_lo, c_hi]."""
    if rd.dim == 0:
        raise ValueError("the trivial group has no slabs")
    pair, ns, m, rho, torus = _arrays(rd, rep)
    table, kmin = _term_table(rd, rep, q, H)
    return _kernels.slab_sums(pair, ns, m, rho, torus, H, c_lo, c_hi, table, kmin, backend)


def merge_partials(sums: np.ndarray) -> np.ndarray:
    """Combine slabs in canonical order, then accumulate heights; returns S_h for h = 0..H."""
    acc = np.zeros(sums.shape[1])
    for row in sums:
        acc = acc + row
    out = np.empty_like(acc)
    run = 0.0
    for h, v in enumerate(acc):
        run = run + v
        out[h] = run
    return out


def partial_sum(rd: RootDatum, rep: WeightRep, q: int, H: int, backend: str | None = None) -> SeriesReport:
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")
    if H < 0:
        raise ValueError(f"height cap must be nonnegative, got {H}")
    backend = backend or _kernels.default_backend()
    if rd.dim == 0:
        sums, counts, best2 = np.zeros((1, H + 1)), np.zeros((1, H + 1), dtype=np.int64), 0
        sums[0, 0], counts[0, 0] = 1.0, 1
    else:
        lo, hi = first_coordinate_range(rd, H)
        sums, counts, best2, best_pt = slab_partials(rd, rep, q, H, lo, hi, backend)
        if not np.isfinite(sums).all():
            raise SeriesOverflowError(
                f"term q^{Fraction(best2, 2)} at nu={tuple(int(x) for x in best_pt)} overflows double precision")
    s = merge_partials(sums)
    per_h = counts.sum(axis=0)
    back = max(1, -(-H // 4))
    lo_h = max(H - back, 0)
    growing = H > 0 and (s[H] - s[lo_h]) > 0.1 * s[H]
    return SeriesReport(
        q=q,
        H=H,
        partial_sums=tuple((h, float(v)) for h, v in enumerate(s)),
        term_count=int(per_h.sum()),
        counts=tuple(int(c) for c in per_h),
        verdict_hint="growing" if growing else "stabilizing",
        max_term_exponent=Fraction(best2, 2),
        backend=backend,
    )


def enumerate_dominant(rd: RootDatum, H: int) -> Iterator[tuple[int, ...]]:
    """Dominant coweights of height <= H, lexicographic order."""
    if H < 0:
        return
    if rd.dim == 0:
        yield ()
        return
    simple = np.array(rd.simple_roots, dtype=np.int64).reshape(-1, rd.dim)
    torus = np.array([False] * rd.semisimple_rank + [True] * rd.torus_rank)
    lo, hi = first_coordinate_range(rd, H)
    for c0 in range(lo, hi + 1):
        pts = _kernels.slab_points(torus, H, c0)
        if len(simple) and len(pts):
            pts = pts[(pts @ simple.T >= 0).all(axis=1)]
        for row in pts:
            yield tuple(int(x) for x in row)


def lattice_count_at_height(dss: int, r: int, h: int) -> int:
    """Number of (m, y) in Z_{>=0}^dss x Z^r with sum(m) + |y|_1 == h (an upper bound for dominant points)."""
    def simplex(a):
        return math.comb(a + dss - 1, dss - 1) if dss else int(a == 0)

    def sphere(b):
        if b == 0:
            return 1
        return sum(2**k * math.comb(r, k) * math.comb(b - 1, k - 1) for k in range(1, min(r, b) + 1))

    return sum(simplex(a) * sphere(h - a) for a in range(h + 1))


def height_decay_rate(rd: RootDatum, rep: WeightRep) -> Fraction:
    """max E(nu) / height(nu) over nonzero dominant nu (exact).

    Height is linear on each torus orthant of the cone, so this is the
    maximum of one LP per orthant with height-normalized generators.
    """
    if rd.dim == 0:
        raise ValueError("the trivial group has no nonzero coweights")
    ef = ExponentForm(rd, rep)
    dss = rd.semisimple_rank
    ss = [tuple(Fraction(x, sum(g[:dss])) for x in g) for g in rd.semisimple_generators()]
    best = None
    for signs in itertools.product((1, -1), repeat=rd.torus_rank):
        tor = [tuple(s if c == dss + j else 0 for c in range(rd.dim)) for j, s in enumerate(signs)]
        out = solve_lp(max_exponent_lp(ef, ss + tor, free_torus=False))
        best = out.value if best is None else max(best, out.value)
    return best


def tail_bound(rd: RootDatum, rep: WeightRep, q: int, H: int, rate: Fraction | None = None) -> float:
    """Upper bound on sum_{height(nu) > H} q^E(nu), valid when the decay rate is negative."""
    rate = height_decay_rate(rd, rep) if rate is None else rate
    if rate >= 0:
        return math.inf
    total, h = 0.0, H + 1
    while True:
        term = lattice_count_at_height(rd.semisimple_rank, rd.torus_rank, h) * q ** (float(rate) * h)
        total += term
        if term < 1e-18 * max(total, 1e-300) and h > H + 10:
            return total
        h += 1
