from math import isqrt

import pytest
from sympy.solvers.diophantine.diophantine import diop_DN

from models.pell import PairRole, PellInstance, PellSolution
from services.lucas import fibonacci, lucas_number
from services.pell import (InsolvableError, cf_sqrt, fundamental_n1, fundamental_n2, gen_n1, gen_n2,
                           gen_n2_product, gen_ratio, n1_from_n2, ratio_minimal, solve_neg4k)

NON_SQUARES_50 = [d for d in range(2, 51) if isqrt(d) ** 2 != d]
BRUTE_Y_LIMIT = 20_000


def _brute_n1(d, y_limit=BRUTE_Y_LIMIT):
    found = []
    for y in range(1, y_limit + 1):
        x2 = d * y * y + 1
        x = isqrt(x2)
        if x * x == x2:
            found.append((x, y))
    return found


def _n2_solvable(limit):
    return [d for d in range(2, limit + 1) if isqrt(d) ** 2 != d and fundamental_n2(d) is not None]


def test_cf_sqrt():
    assert (cf_sqrt(2).head, cf_sqrt(2).period) == (1, (2,))
    assert (cf_sqrt(7).head, cf_sqrt(7).period) == (2, (1, 1, 1, 4))
    with pytest.raises(ValueError):
        cf_sqrt(4)
    with pytest.raises(ValueError):
        cf_sqrt(1)


def test_fundamental_n1_examples():
    assert fundamental_n1(2).as_tuple() == (3, 2)
    assert fundamental_n1(5).as_tuple() == (9, 4)
    assert fundamental_n1(7).as_tuple() == (8, 3)
    assert fundamental_n1(61).as_tuple() == (1766319049, 226153980)
    assert fundamental_n1(7).role is PairRole.N1
    with pytest.raises(ValueError):
        fundamental_n1(9)


def test_fundamental_n1_matches_sympy():
    for d in range(2, 300):
        if isqrt(d) ** 2 == d:
            continue
        assert fundamental_n1(d).as_tuple() == tuple(diop_DN(d, 1)[0]), d


def test_fundamental_n2_examples():
    assert fundamental_n2(2).as_tuple() == (2, 1)
    assert fundamental_n2(7).as_tuple() == (3, 1)
    assert fundamental_n2(14).as_tuple() == (4, 1)
    assert fundamental_n2(3) is None
    assert fundamental_n2(5) is None


def test_fundamental_n2_matches_scan():
    for d in range(2, 61):
        if isqrt(d) ** 2 == d:
            continue
        _, y1 = fundamental_n1(d).as_tuple()
        expected = None
        for v in range(1, y1 + 1):
            k = isqrt(d * v * v + 2)
            if k * k == d * v * v + 2:
                expected = (k, v)
                break
        pair = fundamental_n2(d)
        assert (pair.as_tuple() if pair else None) == expected, d


def test_n1_from_n2_examples():
    assert n1_from_n2(fundamental_n2(7), 7).as_tuple() == (8, 3)
    assert n1_from_n2(fundamental_n2(2), 2).as_tuple() == (3, 2)
    assert n1_from_n2(fundamental_n2(14), 14).as_tuple() == (15, 4)
    with pytest.raises(ValueError):
        n1_from_n2(fundamental_n1(7), 7)


def test_n1_from_n2_is_fundamental_n1():
    for d in _n2_solvable(200):
        k1, t1 = fundamental_n2(d).as_tuple()
        assert n1_from_n2(fundamental_n2(d), d) == fundamental_n1(d), d
        assert fundamental_n1(d).as_tuple() == (k1 * k1 - 1, k1 * t1), d


def test_gen_n1_examples():
    assert [s.as_tuple() for s in gen_n1(2, 3)] == [(3, 2), (17, 12), (99, 70)]
    assert [s.as_tuple() for s in gen_n1(5, 2)] == [(9, 4), (161, 72)]
    assert gen_n1(2, 0) == []


def test_gen_n1_matches_brute_force():
    for d in NON_SQUARES_50:
        solutions = [s.as_tuple() for s in gen_n1(d, 5)]
        brute = _brute_n1(d)
        assert brute, d
        assert solutions[0] == brute[0], d
        common = min(len(solutions), len(brute))
        assert solutions[:common] == brute[:common], d


def test_gen_n1_is_a_prefix_of_brute_force_when_brute_runs_longer():
    brute = _brute_n1(2)
    assert len(brute) == 6
    assert [s.as_tuple() for s in gen_n1(2, 5)] == brute[:5]
    assert gen_n1(2, 6)[-1].as_tuple() == (19601, 13860)


def test_gen_n1_matches_repeated_multiplication():
    for d in NON_SQUARES_50:
        x1, y1 = fundamental_n1(d).as_tuple()
        x, y = x1, y1
        for s in gen_n1(d, 6):
            assert s.as_tuple() == (x, y)
            x, y = x * x1 + d * y * y1, x * y1 + y * x1


def test_gen_n2_examples():
    assert [s.as_tuple() for s in gen_n2(7, 3)] == [(3, 1), (45, 17), (717, 271)]
    assert [s.as_tuple() for s in gen_n2(2, 3)] == [(2, 1), (10, 7), (58, 41)]
    with pytest.raises(InsolvableError):
        gen_n2(3, 4)


def test_gen_n2_matches_product_form():
    solvable = _n2_solvable(60)
    assert {2, 7, 14, 23, 34, 47} <= set(solvable)
    for d in solvable:
        assert gen_n2(d, 10) == gen_n2_product(d, 10), d


def test_gen_ratio_examples():
    assert [s.as_tuple() for s in gen_ratio(2, 7, 2)] == [(2, 1), (58, 31)]
    assert [s.as_tuple() for s in gen_ratio(3, 2, 1)] == [(1, 1)]
    assert [s.as_tuple() for s in gen_ratio(2, 1, 1)] == [(1, 1)]
    assert ratio_minimal(2, 7).role is PairRole.RATIO


def test_gen_ratio_insolvable():
    with pytest.raises(InsolvableError):
        ratio_minimal(2, 3)
    with pytest.raises(InsolvableError):
        ratio_minimal(2, 8)
    with pytest.raises(ValueError):
        ratio_minimal(4, 3)


def test_ratio_minimal_matches_scan():
    for a in range(2, 16):
        if isqrt(a) ** 2 == a:
            continue
        for b in range(1, 16):
            if isqrt(a * b) ** 2 == a * b:
                continue
            scan = None
            for u in range(1, 3000):
                rest = a * u * u - 1
                if rest % b == 0 and isqrt(rest // b) ** 2 == rest // b and rest > 0:
                    scan = (u, isqrt(rest // b))
                    break
            try:
                minimal = ratio_minimal(a, b).as_tuple()
            except InsolvableError:
                minimal = None
            if scan is not None:
                assert minimal == scan, (a, b)
            elif minimal is not None:
                assert minimal[0] >= 3000, (a, b)


def test_gen_ratio_satisfies_equation():
    for a, b in [(2, 7), (3, 2), (2, 1), (5, 4), (7, 6)]:
        for s in gen_ratio(a, b, 8):
            assert a * s.x * s.x - b * s.y * s.y == 1


def test_solve_neg4k_examples():
    assert [s.as_tuple() for s in solve_neg4k(1, 3)] == [(1, 1), (4, 2), (11, 5)]
    assert [s.as_tuple() for s in solve_neg4k(2, 2)] == [(2, 2), (8, 4)]
    assert [s.as_tuple() for s in solve_neg4k(3, 1)] == [(4, 4)]
    with pytest.raises(ValueError):
        solve_neg4k(0, 3)


def test_solve_neg4k_matches_brute_force():
    for k in range(1, 6):
        solutions = [s.as_tuple() for s in solve_neg4k(k, 6)]
        v_max = solutions[-1][1]
        brute = []
        for v in range(0, v_max + 1):
            u2 = 5 * v * v - 4 ** k
            if u2 >= 0 and isqrt(u2) ** 2 == u2:
                brute.append((isqrt(u2), v))
        assert solutions == brute, k
        scale = 2 ** (k - 1)
        assert solutions == [(scale * lucas_number(2 * m + 1), scale * fibonacci(2 * m + 1)) for m in range(6)]


def test_pell_instance():
    instance = PellInstance(7, 2)
    assert instance.holds(3, 1)
    assert not instance.holds(3, 2)
    assert instance.to_dict() == {'d': '7', 'N': '2'}
    assert PellSolution(3, 1).to_dict() == {'x': '3', 'y': '1'}
    with pytest.raises(ValueError):
        PellInstance(1, 1)
