from math import isqrt

import pytest

from models.sieve import ExclusionVerdict, ResidueClassSet, Rule
from services.arith import jacobi
from services.sieve import (CapExceededError, applicable_rules, classify_exclusion, pair_profiles,
                            qr_excluded_classes, residual_classes)

# (a, b, m, n, x)
KNOWN_SOLUTIONS = [
    (2, 10, 1, 2, 14),
    (2, 10, 1, 6, 7874),
    (2, 58, 1, 2, 82),
    (3, 45, 1, 2, 119),
    (4, 100, 1, 3, 7874),
    (10, 58, 1, 2, 574),
    (2, 5, 2, 3, 22),
]


def _is_square(a, b, m, n):
    product = (a ** n - 2 ** m) * (b ** n - 2 ** m)
    return product >= 0 and isqrt(product) ** 2 == product


def _assert_classifier_sound(limit):
    for a in range(2, limit + 1):
        for b in range(a + 1, limit + 1):
            profiles = pair_profiles(a, b)
            for n in range(2, limit + 1):
                for m in range(1, n):
                    verdict = classify_exclusion(a, b, m, n, profiles)
                    if verdict.excluded:
                        assert not _is_square(a, b, m, n), (a, b, m, n, verdict.rule)


def test_classify_examples():
    verdict = classify_exclusion(2, 5, 1, 3)
    assert verdict.excluded and verdict.rule is Rule.T9_I
    assert classify_exclusion(3, 5, 1, 2).rule is Rule.T7
    assert classify_exclusion(3, 45, 1, 2) == ExclusionVerdict(excluded=False)


def test_classify_detail_names_orientation():
    verdict = classify_exclusion(5, 2, 1, 3)
    assert verdict.rule is Rule.T9_I
    assert verdict.detail == 'a=2 b=5 t=1 r=1 l=0 s=5'


def test_classify_rejects_bad_instances():
    with pytest.raises(ValueError):
        classify_exclusion(3, 3, 1, 2)
    with pytest.raises(ValueError):
        classify_exclusion(2, 5, 3, 3)
    with pytest.raises(ValueError):
        classify_exclusion(2, 5, 0, 3)
    with pytest.raises(ValueError):
        classify_exclusion(1, 5, 1, 3)


def test_each_rule_fires_somewhere():
    cases = {
        Rule.T9_I: (2, 5, 1, 3),
        Rule.T9_II: (2, 5, 2, 4),
        Rule.T9_III: (2, 5, 2, 5),
        Rule.T9_IV: (2, 7, 2, 3),
        Rule.T13_I: (5, 9, 2, 3),
        Rule.T13_II: (2, 6, 2, 4),
        Rule.T11: (2, 4, 1, 2),
        Rule.T12: (2, 8, 1, 3),
        Rule.COR_C14: (2, 8, 1, 3),
        Rule.COR_MOD6: (8, 9, 2, 4),
        Rule.T7: (3, 5, 1, 2),
        Rule.COR_T4: (3, 5, 1, 2),
    }
    for rule, instance in cases.items():
        assert rule in {v.rule for v in applicable_rules(*instance)}, rule


def test_applicable_rules_are_ordered_and_unique():
    rules = [v.rule for v in applicable_rules(3, 5, 1, 2)]
    assert rules[0] is Rule.T7
    assert Rule.T13_I in rules and Rule.COR_T4 in rules
    assert len(rules) == len(set(rules))
    assert applicable_rules(3, 45, 1, 2) == []


def test_classifier_soundness_small_box():
    _assert_classifier_sound(20)


@pytest.mark.slow
def test_classifier_soundness_full_box():
    _assert_classifier_sound(40)


def test_verdict_invariant():
    with pytest.raises(ValueError):
        ExclusionVerdict(excluded=True)
    with pytest.raises(ValueError):
        ExclusionVerdict(excluded=False, rule=Rule.T7)


def test_qr_excluded_classes_examples():
    assert qr_excluded_classes(2, 10, 1, 5) == ResidueClassSet(4, frozenset({0, 3}))
    assert qr_excluded_classes(10, 58, 1, 5) == ResidueClassSet(4, frozenset({0, 1}))
    assert qr_excluded_classes(3, 45, 1, 5) == ResidueClassSet(4, frozenset({0, 1}))


def test_qr_excluded_classes_rejects():
    with pytest.raises(ValueError):
        qr_excluded_classes(2, 10, 1, 2)
    with pytest.raises(ValueError):
        qr_excluded_classes(2, 10, 1, 9)


def test_qr_excluded_classes_sound():
    for p in (3, 5, 7, 11, 13, 31):
        for a in range(2, 16):
            for b in range(a + 1, 16):
                for m in range(1, 4):
                    classes = qr_excluded_classes(a, b, m, p)
                    for n in range(m + 1, 61):
                        value = (pow(a, n, p) - pow(2, m, p)) * (pow(b, n, p) - pow(2, m, p)) % p
                        if n in classes:
                            assert jacobi(value, p) == -1, (a, b, m, n, p)
                            assert not _is_square(a, b, m, n)
                        else:
                            assert jacobi(value, p) != -1, (a, b, m, n, p)


def test_qr_classes_independent_of_representative():
    for p in (5, 7, 13):
        classes = qr_excluded_classes(3, 45, 1, p)
        L = classes.modulus
        for n in range(1, 40):
            value_n = (pow(3, n, p) - 2) * (pow(45, n, p) - 2) % p
            value_shift = (pow(3, n + L, p) - 2) * (pow(45, n + L, p) - 2) % p
            assert jacobi(value_n, p) == jacobi(value_shift, p)


def test_known_solutions_never_sieved():
    for a, b, m, n, x in KNOWN_SOLUTIONS:
        assert (a ** n - 2 ** m) * (b ** n - 2 ** m) == x * x
        assert not classify_exclusion(a, b, m, n).excluded, (a, b, m, n)
        for p in (3, 5, 7, 11, 13, 31):
            assert n not in qr_excluded_classes(a, b, m, p), (a, b, m, n, p)


def test_residual_classes_examples():
    assert residual_classes(3, 45, 1, [5], 60) == ResidueClassSet(4, frozenset({2, 3}))
    combined = residual_classes(3, 45, 1, [5, 13], 60)
    assert combined.modulus == 12
    assert combined.residues and all(c % 4 == 2 for c in combined.residues)
    assert residual_classes(2, 10, 1, [], 100) == ResidueClassSet(1, frozenset({0}))


def test_residual_classes_agree_with_each_prime():
    primes = (5, 7, 13)
    for a, b in ((2, 5), (2, 10), (3, 45), (4, 100), (10, 58), (6, 35)):
        for m in (1, 2, 3):
            tables = [qr_excluded_classes(a, b, m, p) for p in primes]
            residual = residual_classes(a, b, m, primes, 10_000)
            for n in range(2, 3 * residual.modulus):
                assert (n in residual) == (not any(n in t for t in tables)), (a, b, m, n)


def test_residual_classes_cap():
    with pytest.raises(CapExceededError):
        residual_classes(3, 45, 1, [5, 13], 6)


def test_residue_class_set():
    classes = ResidueClassSet(4, frozenset({0, 3}))
    assert 8 in classes and 7 in classes and 5 not in classes
    assert len(classes) == 2
    assert classes.complement() == ResidueClassSet(4, frozenset({1, 2}))
    assert classes.lift(8) == ResidueClassSet(8, frozenset({0, 3, 4, 7}))
    assert classes.to_dict() == {'modulus': '4', 'residues': ['0', '3']}
    with pytest.raises(ValueError):
        classes.lift(6)
    with pytest.raises(ValueError):
        ResidueClassSet(4, frozenset({4}))
