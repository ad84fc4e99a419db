"""Weyl groups, flag-variety point counts and Cartan cell volumes.

Normalizations: vol(G(O)) = 1 and vol(Lambda) = 1 for the split lattice
Lambda = sum of O-lattices in the weight spaces, so that for dominant nu

    vol(G(O) nu(t) G(O)) = |G/P_nu (F_q)| / q^dim(G/P_nu) * q^<2rho, nu>
    T(nu) = vol(...) * q^det_exponent(nu) * q^negative_part(nu)

hold exactly; T(nu) / q^E(nu) = |G/P_nu (F_q)| / q^dim(G/P_nu) lies in [1, |W|].
"""

from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exponent import ExponentForm
from .reps import WeightRep
from .rootdata import RootDatum, is_dominant

__all__ = [
    "WeylGroup",
    "WeylCapError",
    "ParabolicData",
    "CellVolumeReport",
    "HalfPower",
    "SandwichViolation",
    "weyl_cap",
    "weyl_elements",
    "parabolic_data",
    "flag_point_count",
    "cartan_cell_volume",
    "integral_term",
    "sandwich_ratio",
    "cell_volume_report",
]

DEFAULT_WEYL_CAP = 10**6


class WeylCapError(RuntimeError):
    pass


class SandwichViolation(AssertionError):
    pass


def weyl_cap() -> int:
    raw = os.environ.get("L2STACK_WEYL_CAP")
    return int(raw) if raw else DEFAULT_WEYL_CAP


def _reflect(rd: RootDatum, i: int, nu: tuple[int, ...]) -> tuple[int, ...]:
    c = sum(a * b for a, b in zip(rd.simple_roots[i], nu))
    if not c:
        return nu
    out = list(nu)
    out[i] -= c
    return tuple(out)


def _orbit_depths(rd: RootDatum, nu: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    depth = {nu: 0}
    todo = deque([nu])
    while todo:
        x = todo.popleft()
        for i in range(rd.semisimple_rank):
            y = _reflect(rd, i, x)
            if y not in depth:
                depth[y] = depth[x] + 1
                todo.append(y)
    return depth


@dataclass(frozen=True)
class WeylGroup:
    rd: RootDatum
    # each element w is stored as w(nu_reg) for a fixed regular dominant coweight
    elements: tuple[tuple[int, ...], ...]
    lengths: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def poincare(self) -> list[int]:
        """Coefficients of sum_w q^l(w), constant term first."""
        out = [0] * (max(self.lengths) + 1)
        for n in self.lengths:
            out[n] += 1
        return out

    def inversions(self, image: Sequence[int]) -> int:
        """Number of positive roots made negative by w, read off from w(nu_reg)."""
        return sum(1 for a in self.rd.positive_roots if sum(x * y for x, y in zip(a, image)) < 0)


def _check_cap(rd: RootDatum, cap: int | None):
    cap = weyl_cap() if cap is None else cap
    if rd.weyl_order > cap:
        raise WeylCapError(f"Weyl group of {rd.describe()} has order {rd.weyl_order} > cap {cap} "
                           f"(set L2STACK_WEYL_CAP to raise it)")


@lru_cache(maxsize=64)
def _weyl_elements(rd: RootDatum) -> WeylGroup:
    reg = tuple(sum(g[c] for g in rd.semisimple_generators()) for c in range(rd.dim))
    depth = _orbit_depths(rd, reg)
    items = sorted(depth.items(), key=lambda kv: (kv[1], kv[0]))
    return WeylGroup(rd, tuple(k for k, _ in items), tuple(v for _, v in items))


def weyl_elements(rd: RootDatum, cap: int | None = None) -> WeylGroup:
    _check_cap(rd, cap)
    return _weyl_elements(rd)


@dataclass(frozen=True)
class ParabolicData:
    nu: tuple[int, ...]
    stabilized_simples: frozenset[int]
    dim_gp: int
    coset_poincare: tuple[int, ...]

    def count(self, q: int) -> int:
        return sum(c * q**k for k, c in enumerate(self.coset_poincare))


def _require_dominant(rd: RootDatum, nu):
    nu = tuple(int(x) for x in nu)
    if len(nu) != rd.dim:
        raise ValueError(f"coweight has length {len(nu)}, expected {rd.dim}")
    if not is_dominant(rd, nu):
        raise ValueError(f"coweight {nu} is not dominant for {rd.describe()}")
    return nu


@lru_cache(maxsize=4096)
def _parabolic(rd: RootDatum, nu: tuple[int, ...]) -> ParabolicData:
    stab = frozenset(i for i, a in enumerate(rd.simple_roots) if sum(x * y for x, y in zip(a, nu)) == 0)
    dim = sum(1 for a in rd.positive_roots if sum(x * y for x, y in zip(a, nu)) > 0)
    # W-orbit of nu is W / W_P; BFS depth is the length of the minimal coset representative
    depth = _orbit_depths(rd, nu)
    poly = [0] * (max(depth.values()) + 1)
    for n in depth.values():
        poly[n] += 1
    return ParabolicData(nu, stab, dim, tuple(poly))


def parabolic_data(rd: RootDatum, nu: Sequence[int], cap: int | None = None) -> ParabolicData:
    nu = _require_dominant(rd, nu)
    _check_cap(rd, cap)
    return _parabolic(rd, nu)


def flag_point_count(rd: RootDatum, nu: Sequence[int], q: int) -> int:
    """|(G/P_nu)(F_q)|."""
    return parabolic_data(rd, nu).count(q)


def cartan_cell_volume(rd: RootDatum, nu: Sequence[int], q: int) -> Fraction:
    par = parabolic_data(rd, nu)
    rho = sum(a * b for a, b in zip(rd.two_rho, par.nu))
    return Fraction(par.count(q), q**par.dim_gp) * Fraction(q) ** rho


@dataclass(frozen=True)
class HalfPower:
    """coeff * q^(half/2) with half in {0, 1}: exact values in Q(sqrt q)."""
    coeff: Fraction
    half: int
    q: int

    @classmethod
    def qpow(cls, q: int, e) -> "HalfPower":
        e = Fraction(e)
        if e.denominator not in (1, 2):
            raise ValueError(f"exponent {e} is not a half-integer")
        twice = int(2 * e)
        return cls(Fraction(q) ** (twice // 2), twice % 2, q).normalized()

    @classmethod
    def rational(cls, x, q: int) -> "HalfPower":
        return cls(Fraction(x), 0, q)

    def normalized(self) -> "HalfPower":
        if self.half:
            s = math.isqrt(self.q)
            if s * s == self.q:
                return HalfPower(self.coeff * s, 0, self.q)
        return self

    def __mul__(self, other: "HalfPower") -> "HalfPower":
        c = self.coeff * other.coeff
        h = self.half + other.half
        if h == 2:
            c, h = c * self.q, 0
        return HalfPower(c, h, self.q).normalized()

    def inverse(self) -> "HalfPower":
        if self.half:
            return HalfPower(1 / (self.coeff * self.q), 1, self.q)
        return HalfPower(1 / self.coeff, 0, self.q)

    def __truediv__(self, other: "HalfPower") -> "HalfPower":
        return self * other.inverse()

    @property
    def is_rational(self) -> bool:
        return self.half == 0

    def as_fraction(self) -> Fraction:
        if self.half:
            raise ValueError(f"{self} is irrational")
        return self.coeff

    def __float__(self):
        return float(self.coeff) * (math.sqrt(self.q) if self.half else 1.0)

    def __str__(self):
        c = self.coeff
        base = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
        return f"{base}*sqrt({self.q})" if self.half else base


def integral_term(rd: RootDatum, rep: WeightRep, nu: Sequence[int], q: int) -> HalfPower:
    nu = _require_dominant(rd, nu)
    ef = ExponentForm(rd, rep)
    cell = HalfPower.rational(cartan_cell_volume(rd, nu, q), q)
    return cell * HalfPower.qpow(q, ef.det_exponent(nu)) * HalfPower.qpow(q, ef.negative_part(nu))


def sandwich_ratio(rd: RootDatum, rep: WeightRep, nu: Sequence[int], q: int) -> Fraction:
    """T(nu) / q^E(nu), checked to lie in [1, |W|]."""
    nu = _require_dominant(rd, nu)
    ef = ExponentForm(rd, rep)
    ratio = integral_term(rd, rep, nu, q) / HalfPower.qpow(q, ef(nu))
    if not ratio.is_rational:
        raise SandwichViolation(f"ratio {ratio} at nu={nu} is not rational")
    value = ratio.as_fraction()
    if not 1 <= value <= rd.weyl_order:
        raise SandwichViolation(f"ratio {value} at nu={nu} outside [1, {rd.weyl_order}]")
    return value


@dataclass(frozen=True)
class CellVolumeReport:
    nu: tuple[int, ...]
    q: int
    flag_count: int
    cell_volume: Fraction
    integral_term: HalfPower
    sandwich_ratio: Fraction
    exponent: Fraction
    weyl_order: int

    def fields(self) -> dict[str, str]:
        def fr(x):
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return {
            "nu": ",".join(map(str, self.nu)),
            "q": str(self.q),
            "flag_count": str(self.flag_count),
            "cell_volume": fr(self.cell_volume),
            "integral_term": str(self.integral_term),
            "exponent": fr(self.exponent),
            "ratio": fr(self.sandwich_ratio),
            "weyl_order": str(self.weyl_order),
        }


def cell_volume_report(rd: RootDatum, rep: WeightRep, nu: Sequence[int], q: int) -> CellVolumeReport:
    nu = _require_dominant(rd, nu)
    return CellVolumeReport(
        nu=nu,
        q=q,
        flag_count=flag_point_count(rd, nu, q),
        cell_volume=cartan_cell_volume(rd, nu, q),
        integral_term=integral_term(rd, rep, nu, q),
        sandwich_ratio=sandwich_ratio(rd, rep, nu, q),
        exponent=ExponentForm(rd, rep)(nu),
        weyl_order=rd.weyl_order,
    )
