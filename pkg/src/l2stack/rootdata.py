"""Split reductive group data in exact integer coordinates.

Conventions used throughout the package:

* weights are integer vectors in the fundamental-weight basis of each
  simple factor, followed by the standard basis of the torus characters;
* coweights are integer vectors in the simple-coroot basis of each factor,
  followed by the standard basis of the torus cocharacters;
* the pairing between them is the plain dot product.

The semisimple part is always simply connected, so the coweight lattice of
each factor is its coroot lattice.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ._exact import primitive

__all__ = [
    "GroupSpec",
    "RootDatum",
    "GroupSpecError",
    "LATTICE_CONVENTION",
    "cartan_matrix",
    "build_root_datum",
    "parse_group",
    "pairing",
    "is_dominant",
    "height",
    "type_a_to_coroot",
    "coroot_to_type_a",
]

LATTICE_CONVENTION = "simply-connected"

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4, "G": 2, "F": 4, "E": 6}
_EXCEPTIONAL_RANKS = {"G": (2,), "F": (4,), "E": (6, 7, 8)}


class GroupSpecError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    factors: tuple[tuple[str, int], ...] = ()
    torus_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple((str(t).upper(), int(n)) for t, n in self.factors))
        for label, rank in self.factors:
            _check_factor(label, rank)
        if self.torus_rank < 0:
            raise GroupSpecError(f"torus rank must be nonnegative, got T{self.torus_rank}")

    @property
    def semisimple_rank(self) -> int:
        return sum(n for _, n in self.factors)

    @property
    def dim(self) -> int:
        return self.semisimple_rank + self.torus_rank

    def describe(self) -> str:
        parts = [f"{t}{n}" for t, n in self.factors]
        if self.torus_rank or not parts:
            parts.append(f"T{self.torus_rank}")
        return " x ".join(parts)

    def semisimple_part(self) -> "GroupSpec":
        return GroupSpec(self.factors, 0)

    def with_torus(self, r: int) -> "GroupSpec":
        return GroupSpec(self.factors, r)


def _check_factor(label: str, rank: int) -> None:
    if label not in _MIN_RANK:
        raise GroupSpecError(f"unknown Cartan type {label!r} in factor {label}{rank}")
    if label in _EXCEPTIONAL_RANKS:
        if rank not in _EXCEPTIONAL_RANKS[label]:
            raise GroupSpecError(f"illegal factor {label}{rank}: {label} exists only in rank(s) "
                                 f"{', '.join(map(str, _EXCEPTIONAL_RANKS[label]))}")
    elif rank < _MIN_RANK[label]:
        raise GroupSpecError(f"illegal factor {label}{rank}: type {label} needs rank >= {_MIN_RANK[label]}")


_TOKEN = re.compile(r"\s*([A-Za-z])\s*(\d+)\s*")


def parse_group(text: str) -> GroupSpec:
    """Parse a group descriptor such as ``"A1 x T3"`` or ``"b2xg2"``.

    Factor tokens are joined by ``x``; ``T<r>`` is the split torus of rank r
    (at most one torus token).  ``"T0"`` is the trivial group.
    """
    if not text.strip():
        raise GroupSpecError("empty group descriptor")
    factors = []
    torus = None
    pos = 0
    for piece in re.split(r"(?i)x", text):
        m = _TOKEN.fullmatch(piece)
        if m is None:
            raise GroupSpecError(f"bad factor token {piece.strip()!r} at position {pos} in {text!r}")
        label, rank = m.group(1).upper(), int(m.group(2))
        if label == "T":
            if torus is not None:
                raise GroupSpecError(f"more than one torus token at position {pos} in {text!r}")
            torus = rank
        else:
            _check_factor(label, rank)
            factors.append((label, rank))
        pos += len(piece) + 1
    return GroupSpec(tuple(factors), torus or 0)


def cartan_matrix(label: str, n: int) -> list[list[int]]:
    """Cartan matrix with entries a_ij = <alpha_i^vee, alpha_j>, Bourbaki numbering."""
    _check_factor(label, n)
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j], a[j][i] = aij, aji

    if label in "ABCD":
        for i in range(n - 1):
            link(i, i + 1)
        if label == "B":
            link(n - 2, n - 1, -1, -2)
        elif label == "C":
            link(n - 2, n - 1, -2, -1)
        elif label == "D":
            a[n - 2][n - 1] = a[n - 1][n - 2] = 0
            link(n - 3, n - 1)
    elif label == "G":
        link(0, 1, -3, -1)
    elif label == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif label == "E":
        # 1-3-4-5-6-7-8 with 2 attached to 4
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    return a


_WEYL_ORDER = {
    "A": lambda n: math.factorial(n + 1),
    "B": lambda n: 2**n * math.factorial(n),
    "C": lambda n: 2**n * math.factorial(n),
    "D": lambda n: 2 ** (n - 1) * math.factorial(n),
    "G": lambda n: 12,
    "F": lambda n: 1152,
    "E": lambda n: {6: 51840, 7: 2903040, 8: 696729600}[n],
}


def _positive_roots_simple_coords(a: list[list[int]]) -> list[tuple[int, ...]]:
    """Positive roots in simple-root coordinates via root strings."""
    n = len(a)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # p = how far beta - k alpha_i stays a root
                p = 0
                probe = list(beta)
                while True:
                    probe[i] -= 1
                    if tuple(probe) in roots:
                        p += 1
                    else:
                        break
                # <beta, alpha_i^vee> = sum_j c_j a_ij
                q = p - sum(beta[j] * a[i][j] for j in range(n))
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(roots, key=lambda r: (sum(r), r))


def _inverse(a: list[list[int]]) -> list[list[Fraction]]:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


@dataclass(frozen=True)
class RootDatum:
    spec: GroupSpec
    cartan_matrix: tuple[tuple[int, ...], ...]
    simple_roots: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    two_rho: tuple[int, ...]
    cone_generators: tuple[tuple[int, ...], ...]
    weyl_order: int
    # slice of coordinates owned by each semisimple factor
    factor_slices: tuple[tuple[int, int], ...] = field(default=())

    @property
    def dim(self) -> int:
        return self.spec.dim

    @property
    def semisimple_rank(self) -> int:
        return self.spec.semisimple_rank

    @property
    def torus_rank(self) -> int:
        return self.spec.torus_rank

    def describe(self) -> str:
        return self.spec.describe()

    def semisimple_generators(self) -> tuple[tuple[int, ...], ...]:
        return self.cone_generators[: self.semisimple_rank]

    def __repr__(self):
        return f"RootDatum({self.describe()!r})"


def build_root_datum(spec: GroupSpec | str) -> RootDatum:
    if isinstance(spec, str):
        spec = parse_group(spec)
    dss, d = spec.semisimple_rank, spec.dim
    big = [[0] * dss for _ in range(dss)]
    simple, positive, gens, slices = [], [], [], []
    order = 1
    off = 0
    for label, n in spec.factors:
        a = cartan_matrix(label, n)
        for i in range(n):
            for j in range(n):
                big[off + i][off + j] = a[i][j]
        # alpha_j in fundamental-weight coordinates: column j of a
        for j in range(n):
            v = [0] * d
            for k in range(n):
                v[off + k] = a[k][j]
            simple.append(tuple(v))
        for c in _positive_roots_simple_coords(a):
            v = [0] * d
            for k in range(n):
                v[off + k] = sum(c[j] * a[k][j] for j in range(n))
            positive.append(tuple(v))
        inv = _inverse(a)
        for i in range(n):
            v = [0] * d
            v[off: off + n] = primitive(inv[i])
            gens.append(tuple(v))
        order *= _WEYL_ORDER[label](n)
        slices.append((off, off + n))
        off += n
    for j in range(spec.torus_rank):
        for sign in (1, -1):
            v = [0] * d
            v[dss + j] = sign
            gens.append(tuple(v))
    two_rho = tuple(2 if k < dss else 0 for k in range(d))
    return RootDatum(
        spec=spec,
        cartan_matrix=tuple(map(tuple, big)),
        simple_roots=tuple(simple),
        positive_roots=tuple(positive),
        two_rho=two_rho,
        cone_generators=tuple(gens),
        weyl_order=order,
        factor_slices=tuple(slices),
    )


def _check_len(rd: RootDatum, v, what: str) -> None:
    if len(v) != rd.dim:
        raise ValueError(f"{what} has length {len(v)}, expected {rd.dim} for {rd.describe()}")


def pairing(rd: RootDatum, w: Sequence, nu: Sequence):
    _check_len(rd, w, "weight")
    _check_len(rd, nu, "coweight")
    return sum(a * b for a, b in zip(w, nu))


def is_dominant(rd: RootDatum, nu: Sequence) -> bool:
    _check_len(rd, nu, "coweight")
    return all(sum(a * b for a, b in zip(alpha, nu)) >= 0 for alpha in rd.simple_roots)


def height(rd: RootDatum, nu: Sequence):
    """Sum of semisimple coroot coordinates plus L1 norm of the torus part."""
    _check_len(rd, nu, "coweight")
    dss = rd.semisimple_rank
    return sum(nu[:dss]) + sum(abs(x) for x in nu[dss:])


def type_a_to_coroot(nu: Sequence[int]) -> tuple[int, ...]:
    """(nu_1, ..., nu_n) with sum 0 -> simple-coroot coordinates of SL_n (partial sums)."""
    if sum(nu) != 0:
        raise ValueError(f"type A coweight must have coordinate sum 0, got {tuple(nu)}")
    out, acc = [], 0
    for x in nu[:-1]:
        acc += x
        out.append(acc)
    return tuple(out)


def coroot_to_type_a(m: Sequence[int]) -> tuple[int, ...]:
    m = list(m)
    return tuple(b - a for a, b in zip([0] + m, m + [0]))
