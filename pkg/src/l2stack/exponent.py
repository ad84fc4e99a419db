"""The exponent E(nu) of the dominant-coweight series and its pieces.

    E(nu) = <2rho, nu> - 1/2 sum_lambda dim(V_lambda) |<lambda, nu>|
          = <2rho, nu> + det_exponent(nu) + negative_part(nu)

All values are exact ``Fraction`` objects; ``nu`` may be any rational vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .reps import WeightRep
from .rootdata import RootDatum

__all__ = ["ExponentForm", "exponent", "negative_part", "det_exponent"]

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ExponentForm:
    rd: RootDatum
    rep: WeightRep

    def __post_init__(self):
        if self.rep.rd.spec != self.rd.spec:
            raise ValueError(f"representation lives on {self.rep.rd.describe()}, not {self.rd.describe()}")

    def _pairings(self, nu: Sequence) -> list[tuple[Fraction, int]]:
        if len(nu) != self.rd.dim:
            raise ValueError(f"coweight has length {len(nu)}, expected {self.rd.dim}")
        nu = [Fraction(x) for x in nu]
        return [(sum((a * b for a, b in zip(w, nu)), Fraction(0)), m) for w, m in self.rep.entries]

    def rho_part(self, nu: Sequence) -> Fraction:
        if len(nu) != self.rd.dim:
            raise ValueError(f"coweight has length {len(nu)}, expected {self.rd.dim}")
        return sum((Fraction(a) * b for a, b in zip(nu, self.rd.two_rho)), Fraction(0))

    def __call__(self, nu: Sequence) -> Fraction:
        absum = sum((abs(p) * m for p, m in self._pairings(nu)), Fraction(0))
        return self.rho_part(nu) - _HALF * absum

    def negative_part(self, nu: Sequence) -> Fraction:
        return sum((p * m for p, m in self._pairings(nu) if p < 0), Fraction(0))

    def det_exponent(self, nu: Sequence) -> Fraction:
        return -_HALF * sum((p * m for p, m in self._pairings(nu)), Fraction(0))

    @cached_property
    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Nonzero weights and multiplicities as int64 arrays, for the numeric kernels."""
        nz = self.rep.nonzero_entries()
        w = np.array([w for w, _ in nz], dtype=np.int64).reshape(len(nz), self.rd.dim)
        m = np.array([m for _, m in nz], dtype=np.int64)
        return w, m

    def twice_exponent_batch(self, points: np.ndarray) -> np.ndarray:
        """2E on integer points (rows); exact in int64."""
        w, m = self.arrays
        pts = np.asarray(points, dtype=np.int64)
        rho = pts @ np.asarray(self.rd.two_rho, dtype=np.int64)
        return 2 * rho - np.abs(pts @ w.T) @ m


def exponent(ef: ExponentForm, nu: Sequence) -> Fraction:
    return ef(nu)


def negative_part(ef: ExponentForm, nu: Sequence) -> Fraction:
    return ef.negative_part(nu)


def det_exponent(ef: ExponentForm, nu: Sequence) -> Fraction:
    return ef.det_exponent(nu)
