import itertools
from fractions import Fraction

import numpy as np
import pytest

from l2stack.exponent import ExponentForm
from l2stack.reps import builtin_rep, direct_sum, parse_rep
from l2stack.rootdata import build_root_datum, height, is_dominant
from l2stack.series import enumerate_dominant
from l2stack.weylvol import (HalfPower, SandwichViolation, WeylCapError, cartan_cell_volume, cell_volume_report,
                             flag_point_count, integral_term, parabolic_data, sandwich_ratio, weyl_elements)


def test_small_weyl_groups():
    w1 = weyl_elements(build_root_datum("A1"))
    assert w1.order == 2 and sorted(w1.lengths) == [0, 1]
    assert weyl_elements(build_root_datum("A2")).poincare() == [1, 2, 2, 1]
    b2 = weyl_elements(build_root_datum("B2"))
    assert b2.order == 8 and max(b2.lengths) == 4


def test_a2_lengths_are_permutation_inversions():
    # oracle: inversion numbers of S_3
    perms = list(itertools.permutations(range(3)))
    inv = sorted(sum(1 for i, j in itertools.combinations(range(3), 2) if p[i] > p[j]) for p in perms)
    assert sorted(weyl_elements(build_root_datum("A2")).lengths) == inv


@pytest.mark.parametrize("g", ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4", "A1 x B2", "A2 x T1"])
def test_bfs_length_equals_inversion_count(g):
    rd = build_root_datum(g)
    w = weyl_elements(rd)
    assert w.order == rd.weyl_order
    assert w.lengths[0] == 0
    assert all(w.inversions(e) == n for e, n in zip(w.elements, w.lengths))
    assert max(w.lengths) == len(rd.positive_roots)


def test_cap(monkeypatch):
    rd = build_root_datum("B3")
    with pytest.raises(WeylCapError):
        weyl_elements(rd, cap=10)
    monkeypatch.setenv("L2STACK_WEYL_CAP", "40")
    with pytest.raises(WeylCapError, match="L2STACK_WEYL_CAP"):
        weyl_elements(rd)
    monkeypatch.setenv("L2STACK_WEYL_CAP", "48")
    assert weyl_elements(rd).order == 48


def _regular(g):
    rd = build_root_datum(g)
    return tuple(sum(gen[k] for gen in rd.semisimple_generators()) for k in range(rd.dim))


def test_flag_counts():
    a1, a2 = build_root_datum("A1"), build_root_datum("A2")
    assert flag_point_count(a1, (1,), 2) == 3
    assert flag_point_count(a2, (1, 1), 2) == 21
    assert flag_point_count(a2, (0, 0), 5) == 1
    with pytest.raises(ValueError):
        flag_point_count(a2, (2, -1), 2)


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_regular_flag_counts_are_classical(q):
    assert flag_point_count(build_root_datum("A1"), (1,), q) == q + 1
    assert flag_point_count(build_root_datum("A2"), (1, 1), q) == (q + 1) * (q * q + q + 1)
    assert flag_point_count(build_root_datum("A3"), _regular("A3"), q) == \
        (q + 1) * (q**2 + q + 1) * (q**3 + q**2 + q + 1)
    # Sp_4: [2]_q [4]_q
    assert flag_point_count(build_root_datum("B2"), _regular("B2"), q) == (q + 1) * (q**3 + q**2 + q + 1)
    assert flag_point_count(build_root_datum("G2"), _regular("G2"), q) == (q + 1) * (q**5 + q**4 + q**3 + q**2 + q + 1)
    assert flag_point_count(build_root_datum("A1 x A1"), (1, 1), q) == (q + 1) ** 2
    # partial flag: Grassmannian Gr(1,3) = P^2 and Gr(2,4)
    assert flag_point_count(build_root_datum("A2"), (2, 1), q) == q * q + q + 1
    gr24 = (q**4 - 1) * (q**3 - 1) // ((q**2 - 1) * (q - 1))
    assert flag_point_count(build_root_datum("A3"), (1, 2, 1), q) == gr24


def _poly_div(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        out[k] = num[k + len(den) - 1] // den[-1]
        for j, c in enumerate(den):
            num[k + j] -= out[k] * c
    assert not any(num)
    return out


def _parabolic_poincare(rd, stab):
    """Length generating function of W_P, by BFS with the stabilized simple reflections only."""
    start = _regular(rd.describe())
    depth, frontier = {start: 0}, [start]
    while frontier:
        nxt = []
        for x in frontier:
            for i in stab:
                c = sum(a * b for a, b in zip(rd.simple_roots[i], x))
                y = tuple(v - c * (k == i) for k, v in enumerate(x))
                if y not in depth:
                    depth[y] = depth[x] + 1
                    nxt.append(y)
        frontier = nxt
    out = [0] * (max(depth.values()) + 1)
    for n in depth.values():
        out[n] += 1
    return out


@pytest.mark.parametrize("g", ["A2", "A3", "B2", "B3", "C3", "G2"])
def test_coset_poincare_is_quotient_of_poincare_polynomials(g):
    rd = build_root_datum(g)
    full = weyl_elements(rd).poincare()
    for nu in enumerate_dominant(rd, 6):
        par = parabolic_data(rd, nu)
        wp = _parabolic_poincare(rd, sorted(par.stabilized_simples))
        assert list(par.coset_poincare) == _poly_div(full, wp)
        assert sum(par.coset_poincare) * sum(wp) == rd.weyl_order
        assert len(par.coset_poincare) - 1 == par.dim_gp
    assert list(parabolic_data(rd, tuple([0] * rd.dim)).coset_poincare) == [1]
    assert list(parabolic_data(rd, _regular(g)).coset_poincare) == full


def test_cell_volumes():
    a1 = build_root_datum("A1")
    assert cartan_cell_volume(a1, (1,), 2) == 6
    assert cartan_cell_volume(a1, (0,), 7) == 1
    for q in (2, 3, 5):
        for m in range(1, 6):
            assert cartan_cell_volume(a1, (m,), q) == (1 + Fraction(1, q)) * Fraction(q) ** (2 * m)


@pytest.mark.parametrize("g", ["A2", "B2", "G2", "A3"])
def test_normalized_cell_volume_depends_only_on_stabilizer(g):
    rd = build_root_datum(g)
    seen = {}
    for nu in enumerate_dominant(rd, 8):
        par = parabolic_data(rd, nu)
        rho = sum(a * b for a, b in zip(rd.two_rho, nu))
        val = cartan_cell_volume(rd, nu, 3) / Fraction(3) ** rho
        assert seen.setdefault(par.stabilized_simples, val) == val
    assert len(seen) == 2 ** rd.dim


def test_integral_terms():
    a1 = build_root_datum("A1")
    adj = builtin_rep(a1, "adjoint")
    for m in range(1, 8):
        assert integral_term(a1, adj, (m,), 2).as_fraction() == Fraction(3, 2)
    assert integral_term(a1, adj, (0,), 2).as_fraction() == 1
    t1 = build_root_datum("T1")
    term = integral_term(t1, parse_rep("weights[(1):1]", t1), (-3,), 2)
    assert not term.is_rational and str(term) == "1/4*sqrt(2)"
    assert float(term) == pytest.approx(2 ** -1.5)


def test_half_power_arithmetic():
    a = HalfPower.qpow(2, Fraction(3, 2))
    assert (a * a).as_fraction() == 8
    assert (a / a).as_fraction() == 1
    assert HalfPower.qpow(4, Fraction(1, 2)).as_fraction() == 2
    with pytest.raises(ValueError):
        HalfPower.qpow(2, Fraction(1, 3))


def test_sandwich_examples():
    a1 = build_root_datum("A1")
    assert sandwich_ratio(a1, builtin_rep(a1, "adjoint"), (3,), 2) == Fraction(3, 2)
    a2 = build_root_datum("A2")
    assert sandwich_ratio(a2, builtin_rep(a2, "adjoint"), (0, 0), 5) == 1
    r = sandwich_ratio(a2, builtin_rep(a2, "adjoint"), (1, 1), 3)
    assert 1 <= r <= 6 and r == Fraction(52, 27)


def test_sandwich_ratio_is_flag_count_over_q_dim():
    rd = build_root_datum("B2")
    rep = parse_rep("sum(standard,adjoint)", rd)
    for nu in enumerate_dominant(rd, 6):
        par = parabolic_data(rd, nu)
        assert sandwich_ratio(rd, rep, nu, 2) == Fraction(par.count(2), 2 ** par.dim_gp)


def test_report_fields():
    rd = build_root_datum("A1")
    f = cell_volume_report(rd, builtin_rep(rd, "adjoint"), (3,), 2).fields()
    assert f["ratio"] == "3/2" and f["flag_count"] == "3" and f["cell_volume"] == "96"
    assert list(f) == ["nu", "q", "flag_count", "cell_volume", "integral_term", "exponent", "ratio", "weyl_order"]
