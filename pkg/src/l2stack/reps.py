"""Representations as weight multisets, the builtin examples and a descriptor grammar.

Grammar (case-insensitive keywords, whitespace ignored)::

    rep     := "adjoint" | "standard" | "zero" | "sl2(" INT ")"
             | "sum(" rep ("," rep)* ")" | "tensor(" rep "," rep ")"
             | "dual(" rep ")" | "pow(" rep "," INT ")" | "config(" rep "," INT ")"
             | "weights[" [entry ("," entry)*] "]"
    entry   := "(" INT ("," INT)* ")" ":" INT
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .rootdata import GroupSpec, RootDatum, build_root_datum

__all__ = [
    "WeightRep",
    "RepError",
    "rep_from_weights",
    "builtin_rep",
    "combine",
    "direct_sum",
    "tensor",
    "dual",
    "power",
    "configuration_rep",
    "parse_rep",
    "weyl_symmetric",
]


class RepError(ValueError):
    pass


@dataclass(frozen=True)
class WeightRep:
    rd: RootDatum
    entries: tuple[tuple[tuple[int, ...], int], ...]

    @property
    def total_dim(self) -> int:
        return sum(m for _, m in self.entries)

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.entries)

    def nonzero_entries(self):
        return tuple((w, m) for w, m in self.entries if any(w))

    def describe(self) -> str:
        body = ",".join(f"({','.join(map(str, w))}):{m}" for w, m in self.entries)
        return f"weights[{body}]"

    def __len__(self):
        return len(self.entries)


def _canonical(rd: RootDatum, counts: Counter) -> WeightRep:
    return WeightRep(rd, tuple(sorted((w, m) for w, m in counts.items() if m)))


def rep_from_weights(rd: RootDatum, raw: Iterable[tuple[Sequence[int], int]]) -> WeightRep:
    counts: Counter = Counter()
    for vec, mult in raw:
        vec = tuple(int(x) for x in vec)
        if len(vec) != rd.dim:
            raise RepError(f"weight {vec} has length {len(vec)}, expected {rd.dim} for {rd.describe()}")
        if int(mult) < 1:
            raise RepError(f"multiplicity of weight {vec} must be positive, got {mult}")
        counts[vec] += int(mult)
    return _canonical(rd, counts)


def _reflect_orbit(rd: RootDatum, factor: int, hw: tuple[int, ...]) -> set[tuple[int, ...]]:
    lo, hi = rd.factor_slices[factor]
    orbit = {hw}
    todo = [hw]
    while todo:
        lam = todo.pop()
        for i in range(lo, hi):
            c = lam[i]
            if c:
                alpha = rd.simple_roots[i]
                img = tuple(x - c * a for x, a in zip(lam, alpha))
                if img not in orbit:
                    orbit.add(img)
                    todo.append(img)
    return orbit


def _single_factor(rd: RootDatum, kind: str) -> tuple[str, int]:
    if len(rd.spec.factors) != 1:
        raise RepError(f"{kind} representation needs exactly one simple factor, got {rd.describe()}")
    return rd.spec.factors[0]


def builtin_rep(rd: RootDatum, kind: str, n: int | None = None) -> WeightRep:
    """One of ``"standard"``, ``"adjoint"``, ``"sl2_irrep"`` (needs n) or ``"zero"``."""
    d = rd.dim
    zero = tuple([0] * d)
    kind = kind.lower()
    if kind == "zero":
        return WeightRep(rd, ())
    if kind == "adjoint":
        if rd.semisimple_rank == 0:
            raise RepError(f"adjoint representation needs a semisimple factor, got {rd.describe()}")
        counts = Counter({zero: rd.semisimple_rank})
        for a in rd.positive_roots:
            counts[a] += 1
            counts[tuple(-x for x in a)] += 1
        return _canonical(rd, counts)
    if kind in ("sl2_irrep", "sl2"):
        if _single_factor(rd, "sl2 irreducible") != ("A", 1):
            raise RepError(f"sl2 irreducible representation needs the group A1, got {rd.describe()}")
        if n is None or n < 0:
            raise RepError(f"sl2 irreducible representation needs a highest weight n >= 0, got {n}")
        return rep_from_weights(rd, [((k,) + zero[1:], 1) for k in range(n, -n - 1, -2)])
    if kind == "standard":
        label, rank = _single_factor(rd, "standard")
        if label not in "ABCDG":
            raise RepError(f"no standard representation for factor {label}{rank}")
        # highest weight is the first fundamental weight; for G2 that is the short one
        hw = tuple(int(k == 0) for k in range(d))
        counts = Counter(_reflect_orbit(rd, 0, hw))
        if label in "BG":
            counts[zero] += 1
        return _canonical(rd, counts)
    raise RepError(f"unsupported builtin representation {kind!r}")


def _same_rd(args: Sequence[WeightRep]) -> RootDatum:
    if not args:
        raise RepError("combine needs at least one representation")
    rd = args[0].rd
    for a in args[1:]:
        if a.rd.spec != rd.spec:
            raise RepError(f"cannot combine representations of {rd.describe()} and {a.rd.describe()}")
    return rd


def direct_sum(*args: WeightRep) -> WeightRep:
    rd = _same_rd(args)
    counts: Counter = Counter()
    for a in args:
        for w, m in a.entries:
            counts[w] += m
    return _canonical(rd, counts)


def tensor(a: WeightRep, b: WeightRep) -> WeightRep:
    rd = _same_rd([a, b])
    counts: Counter = Counter()
    for w1, m1 in a.entries:
        for w2, m2 in b.entries:
            counts[tuple(x + y for x, y in zip(w1, w2))] += m1 * m2
    return _canonical(rd, counts)


def dual(a: WeightRep) -> WeightRep:
    return _canonical(a.rd, Counter({tuple(-x for x in w): m for w, m in a.entries}))


def power(a: WeightRep, r: int) -> WeightRep:
    if r < 0:
        raise RepError(f"power must be nonnegative, got {r}")
    return _canonical(a.rd, Counter({w: m * r for w, m in a.entries}))


def combine(kind: str, *args: WeightRep, r: int | None = None) -> WeightRep:
    kind = kind.lower()
    if kind == "direct_sum":
        return direct_sum(*args)
    if kind == "tensor":
        if len(args) < 2:
            raise RepError("tensor needs at least two representations")
        out = args[0]
        for b in args[1:]:
            out = tensor(out, b)
        return out
    if kind == "dual":
        (a,) = args
        return dual(a)
    if kind == "power":
        (a,) = args
        return power(a, r)
    raise RepError(f"unknown combination {kind!r}")


def configuration_rep(ss_spec: GroupSpec, base: WeightRep, r: int) -> tuple[RootDatum, WeightRep]:
    """V^r as a representation of (semisimple part) x G_m^r, the j-th torus factor scaling the j-th copy."""
    if r < 1:
        raise RepError(f"configuration needs r >= 1, got {r}")
    if ss_spec.torus_rank:
        raise RepError(f"configuration base group must be semisimple, got {ss_spec.describe()}")
    if base.rd.spec != ss_spec:
        raise RepError(f"base representation lives on {base.rd.describe()}, not {ss_spec.describe()}")
    rd = build_root_datum(ss_spec.with_torus(r))
    raw = []
    for j in range(r):
        e = tuple(int(k == j) for k in range(r))
        raw.extend((w + e, m) for w, m in base.entries)
    return rd, rep_from_weights(rd, raw)


def weyl_symmetric(rep: WeightRep) -> bool:
    """True when every simple reflection maps the multiset to itself."""
    rd = rep.rd
    counts = rep.as_dict()
    for i, alpha in enumerate(rd.simple_roots):
        for w, m in counts.items():
            img = tuple(x - w[i] * a for x, a in zip(w, alpha))
            if counts.get(img) != m:
                return False
    return True


def check_weyl_symmetry(rep: WeightRep) -> bool:
    ok = weyl_symmetric(rep)
    if not ok:
        warnings.warn(f"representation {rep.describe()} is not Weyl-symmetric on the semisimple part",
                      stacklevel=2)
    return ok


# -- descriptor parser -------------------------------------------------------

class _Parser:
    def __init__(self, text: str, rd: RootDatum):
        self.text = text
        self.pos = 0
        self.rd = rd

    def error(self, msg: str) -> RepError:
        return RepError(f"{msg} at position {self.pos} in {self.text!r}")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos: self.pos + 1]

    def expect(self, ch: str):
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def word(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a representation keyword")
        return self.text[start: self.pos].lower()

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.peek() in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        try:
            return int(self.text[start: self.pos])
        except ValueError:
            self.pos = start
            raise self.error("expected an integer") from None

    def rep(self, rd: RootDatum) -> WeightRep:
        start = self.pos
        kw = self.word()
        try:
            if kw in ("adjoint", "standard", "zero"):
                return builtin_rep(rd, kw)
            if kw == "sl2":
                self.expect("(")
                n = self.integer()
                self.expect(")")
                return builtin_rep(rd, "sl2_irrep", n)
            if kw == "weights":
                return self.weights(rd)
        except RepError as exc:
            if "position" in str(exc):
                raise
            self.pos = start
            raise self.error(str(exc)) from None
        if kw in ("sum", "tensor"):
            self.expect("(")
            parts = [self.rep(rd)]
            while self.peek() == ",":
                self.pos += 1
                parts.append(self.rep(rd))
            self.expect(")")
            return direct_sum(*parts) if kw == "sum" else combine("tensor", *parts)
        if kw == "dual":
            self.expect("(")
            a = self.rep(rd)
            self.expect(")")
            return dual(a)
        if kw == "pow":
            self.expect("(")
            a = self.rep(rd)
            self.expect(",")
            r = self.integer()
            self.expect(")")
            return power(a, r)
        if kw == "config":
            self.expect("(")
            ss = rd.spec.semisimple_part()
            a = self.rep(build_root_datum(ss))
            self.expect(",")
            at = self.pos
            r = self.integer()
            self.expect(")")
            if r != rd.torus_rank:
                self.pos = at
                raise self.error(f"config(..., {r}) needs the group {ss.with_torus(r).describe()}, "
                                 f"got {rd.describe()}")
            return configuration_rep(ss, a, r)[1]
        self.pos = start
        raise self.error(f"unknown representation keyword {kw!r}")

    def weights(self, rd: RootDatum) -> WeightRep:
        self.expect("[")
        raw = []
        if self.peek() != "]":
            while True:
                self.peek()
                start = self.pos
                self.expect("(")
                vec = [self.integer()]
                while self.peek() == ",":
                    self.pos += 1
                    vec.append(self.integer())
                self.expect(")")
                self.expect(":")
                m = self.integer()
                if len(vec) != rd.dim:
                    self.pos = start
                    raise self.error(f"weight of length {len(vec)}, expected {rd.dim}")
                if m < 1:
                    raise self.error(f"nonpositive multiplicity {m}")
                raw.append((vec, m))
                if self.peek() != ",":
                    break
                self.pos += 1
        self.expect("]")
        return rep_from_weights(rd, raw)


def parse_rep(text: str, rd: RootDatum) -> WeightRep:
    p = _Parser(text, rd)
    out = p.rep(rd)
    p.skip()
    if p.pos != len(text):
        raise p.error("trailing input")
    return out
