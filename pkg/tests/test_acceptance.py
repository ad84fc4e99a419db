"""Acceptance gate: one PASS/FAIL line per criterion (also shown in the pytest terminal summary).

Tolerances are fixed here:
  * timing budgets: 1 s per adjoint verdict, 10 s for the SL2 suite, 5 s per SL_n configuration instance,
    30 s for the sandwich sweep (wall clock, generous for CI noise)
  * adjoint^2 over A1: |S_40 - 4/3| <= 1e-9
  * config r=3 at q=2: closed form equals 586 to 1e-9, direct enumeration at H=120 satisfies
    0 <= 586 - S_120 <= tail_bound(120) + 1e-9 (tail bound ~ 1.35e-2)
  * random LPs: |value - brute force| <= 1e-7 * max(1, |value|)
"""

import contextlib
import itertools
import math
import random
import time

import numpy as np
import pytest

from l2stack.decide import decide_l2, max_exponent_lp, verify_verdict, very_good_config, very_good_sl2
from l2stack.exponent import ExponentForm
from l2stack.ratlp import check_certificate, lp_from_dense, solve_lp
from l2stack.reps import builtin_rep, direct_sum, parse_rep, rep_from_weights
from l2stack.rootdata import build_root_datum, height, is_dominant
from l2stack.series import enumerate_dominant, partial_sum, tail_bound
from l2stack.weylvol import sandwich_ratio

from lp_oracle import brute_force

RESULTS: dict[int, str] = {}


@contextlib.contextmanager
def criterion(n, title):
    info = {}
    try:
        yield info
    except BaseException as exc:
        RESULTS[n] = f"criterion {n:2d} FAIL  {title}: {type(exc).__name__}: {str(exc).splitlines()[0][:160]}"
        print(RESULTS[n])
        raise
    RESULTS[n] = f"criterion {n:2d} PASS  {title}" + (f" ({info['detail']})" if info.get("detail") else "")
    print(RESULTS[n])


def timed_decide(rd, rep):
    start = time.perf_counter()
    v = decide_l2(rd, rep)
    return v, time.perf_counter() - start


# -- instance families reused by the LP duality criterion --------------------

def adjoint_instances():
    for g in ("A1", "A2", "A3", "B2", "G2"):
        rd = build_root_datum(g)
        adj = builtin_rep(rd, "adjoint")
        for r in (1, 2, 3):
            yield g, r, rd, direct_sum(*[adj] * r)


def sl2_suite(seed=20260101, count=200):
    rng = random.Random(seed)
    rd = build_root_datum("A1")
    for _ in range(count):
        raw = []
        for n in rng.sample(range(9), rng.randint(1, 4)):
            m = rng.randint(1, 4)
            raw += [((k,), m) for k in range(n, -n - 1, -2)]
        yield rd, rep_from_weights(rd, raw)


def torus_suite(seed=4242, count=100):
    rng = random.Random(seed)
    for _ in range(count):
        r = rng.randint(1, 4)
        rd = build_root_datum(f"T{r}")
        raw = []
        for _ in range(rng.randint(1, r + 2)):
            if raw and rng.random() < 0.35:
                w = tuple(rng.randint(-1, 1) * a + rng.randint(-1, 1) * b
                          for a, b in zip(raw[0][0], raw[-1][0]))
                if not any(w):
                    w = raw[0][0]
            else:
                w = tuple(rng.randint(-3, 3) for _ in range(r))
            raw.append((w, rng.randint(1, 3)))
        yield rd, rep_from_weights(rd, raw)


def config_instances():
    for r in range(2, 7):
        rd = build_root_datum(f"A1 x T{r}")
        yield r, rd, parse_rep(f"config(standard,{r})", rd)


def sln_config_instances():
    for g, r in (("A2", 5), ("A2", 6), ("A3", 7)):
        rd = build_root_datum(f"{g} x T{r}")
        yield f"{g} x T{r}", rd, parse_rep(f"config(standard,{r})", rd)


def bg_instance():
    rd = build_root_datum("A1")
    return rd, builtin_rep(rd, "zero")


# -- criteria ------------------------------------------------------------------

def test_criterion_01_adjoint_family():
    with criterion(1, "adjoint^r over A1, A2, A3, B2, G2: L2 iff r > 1") as info:
        worst = 0.0
        for g, r, rd, rep in adjoint_instances():
            v, dt = timed_decide(rd, rep)
            worst = max(worst, dt)
            assert v.is_l2 == (r > 1), (g, r, v.line())
            assert verify_verdict(rd, rep, v)
            assert dt < 1.0, (g, r, dt)
        info["detail"] = f"15 verdicts, slowest {worst:.3f}s"


def test_criterion_02_sl2_weight_criterion():
    with criterion(2, "SL2 weight criterion on 200 random reps") as info:
        start = time.perf_counter()
        mismatches, l2 = 0, 0
        for rd, rep in sl2_suite():
            expected = sum(w[0] * m for w, m in rep.entries if w[0] > 0) > 2
            v = decide_l2(rd, rep)
            mismatches += v.is_l2 != expected
            l2 += v.is_l2
        elapsed = time.perf_counter() - start
        assert mismatches == 0
        assert 0 < l2 < 200
        assert elapsed < 10
        info["detail"] = f"0 mismatches, {l2} L2 / {200 - l2} not, {elapsed:.2f}s"


def test_criterion_03_torus_criterion():
    with criterion(3, "torus reps: L2 iff weights span") as info:
        mismatches, spanning = 0, 0
        for rd, rep in torus_suite():
            w = np.array([w for w, _ in rep.entries], dtype=float)
            spans = int(np.linalg.matrix_rank(w)) == rd.dim
            mismatches += decide_l2(rd, rep).is_l2 != spans
            spanning += spans
        assert mismatches == 0
        assert 0 < spanning < 100
        info["detail"] = f"0 mismatches over 100, {spanning} spanning"


def test_criterion_04_configuration_stacks():
    with criterion(4, "ambient A1 x T_r configuration stacks") as info:
        got = {r: decide_l2(rd, rep).is_l2 for r, rd, rep in config_instances()}
        assert got == {2: False, 3: True, 4: True, 5: True, 6: True}
        info["detail"] = "NOT_L2 at r=2, L2 at r=3..6"


def test_criterion_05_sln_configuration_stacks():
    with criterion(5, "ambient SL_n x T_r stacks above the bound") as info:
        times = []
        for name, rd, rep in sln_config_instances():
            v, dt = timed_decide(rd, rep)
            assert v.is_l2, name
            assert verify_verdict(rd, rep, v)
            assert dt < 5.0, (name, dt)
            times.append(f"{name} {dt:.2f}s")
        info["detail"] = ", ".join(times)


def test_criterion_06_bg():
    with criterion(6, "V = 0 over A1 is not L2") as info:
        rd, rep = bg_instance()
        v = decide_l2(rd, rep)
        assert not v.is_l2
        nu = v.witness
        e = ExponentForm(rd, rep)(nu)
        rho = sum(a * b for a, b in zip(rd.two_rho, nu))
        assert is_dominant(rd, nu) and any(nu)
        assert e == rho > 0
        info["detail"] = f"witness {nu}, E = <2rho,nu> = {e}"


def test_criterion_07_very_good():
    with criterion(7, "very-good checkers") as info:
        mismatches = sum(very_good_sl2(rep) != decide_l2(rd, rep).is_l2 for rd, rep in sl2_suite())
        assert mismatches == 0
        rd = build_root_datum("A1 x T3")
        assert very_good_config(3) is False
        assert decide_l2(rd, parse_rep("config(standard,3)", rd)).is_l2 is True
        assert very_good_config(4) is True
        info["detail"] = "SL2 suite agrees; r=3 is L2 but not very good"


def test_criterion_08_series_oracle():
    with criterion(8, "series partial sums") as info:
        a1 = build_root_datum("A1")
        s = partial_sum(a1, parse_rep("pow(adjoint,2)", a1), 2, 40).final
        assert abs(s - 4 / 3) <= 1e-9
        # config r = 3: per-coordinate closed form, then direct lattice enumeration
        closed = math.fsum(2.0 ** (-n) * (2 * n + 3) ** 3 for n in range(400))
        assert abs(closed - 586) <= 1e-9
        rd = build_root_datum("A1 x T3")
        rep = parse_rep("config(standard,3)", rd)
        H = 120
        s_cfg = partial_sum(rd, rep, 2, H).final
        tail = tail_bound(rd, rep, 2, H)
        assert 0 <= 586 - s_cfg <= tail + 1e-9, (s_cfg, tail)
        # divergent cases: at least one term per multiple of the witness
        for group, text in (("A1", "adjoint"), ("A1", "zero"), ("A1 x T2", "config(standard,2)"),
                            ("A2", "standard")):
            g = build_root_datum(group)
            r = parse_rep(text, g)
            v = decide_l2(g, r)
            step = height(g, v.witness)
            for h in (10, 20, 40):
                assert partial_sum(g, r, 2, h).final >= h // step + 1, (group, text, h)
        info["detail"] = f"|S_40 - 4/3| = {abs(s - 4 / 3):.1e}; 586 - S_{H} = {586 - s_cfg:.2e} <= tail {tail:.2e}"


def test_criterion_09_volume_sandwich():
    with criterion(9, "sandwich ratio in [1, |W|]") as info:
        start = time.perf_counter()
        checks = 0
        for g in ("A1", "A2", "B2"):
            rd = build_root_datum(g)
            adj, std = builtin_rep(rd, "adjoint"), builtin_rep(rd, "standard")
            for rep in (adj, std, direct_sum(adj, adj)):
                for nu in enumerate_dominant(rd, 10):
                    for q in (2, 3, 4, 5):
                        r = sandwich_ratio(rd, rep, nu, q)
                        assert 1 <= r <= rd.weyl_order
                        checks += 1
        elapsed = time.perf_counter() - start
        assert checks >= 300
        assert elapsed < 30
        info["detail"] = f"{checks} exact checks, {elapsed:.2f}s"


def _decision_lps(rd, rep):
    ef = ExponentForm(rd, rep)
    dss, r = rd.semisimple_rank, rd.torus_rank
    if dss == 0:
        for signs in itertools.product((1, -1), repeat=r):
            gens = [tuple(s * (c == j) for c in range(r)) for j, s in enumerate(signs)]
            yield max_exponent_lp(ef, gens, free_torus=False)
    else:
        yield max_exponent_lp(ef, rd.semisimple_generators(), free_torus=r > 0)


def test_criterion_10_lp_engine():
    with criterion(10, "exact LP engine") as info:
        instances = [(rd, rep) for _, _, rd, rep in adjoint_instances()]
        instances += list(sl2_suite()) + list(torus_suite())
        instances += [(rd, rep) for _, rd, rep in config_instances()]
        instances += [(rd, rep) for _, rd, rep in sln_config_instances()]
        instances.append(bg_instance())
        optimal = 0
        for rd, rep in instances:
            for lp in _decision_lps(rd, rep):
                out = solve_lp(lp)
                assert out.optimal
                assert check_certificate(lp, out)
                optimal += 1
        rng = random.Random(99)
        for _ in range(200):
            n, m = rng.randint(1, 6), rng.randint(1, 8)
            c = [rng.randint(-5, 5) for _ in range(n)]
            rows = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(m)]
            rels = [rng.choice(["<=", "<=", ">=", "="]) for _ in range(m)]
            rhs = [rng.randint(-5, 5) for _ in range(m)]
            lp = lp_from_dense(c, rows, rels, rhs)
            out = solve_lp(lp)
            status, value = brute_force(c, rows, rels, rhs)
            assert out.status.value.lower() == status
            if status == "optimal":
                assert abs(float(out.value) - value) <= 1e-7 * max(1.0, abs(value))
                assert check_certificate(lp, out)
        info["detail"] = f"{optimal} decision LPs certified exactly; 200 random LPs match brute force"
