"""Non-existence certificates for (a^n - 2^m)(b^n - 2^m) = x^2.

Two layers:
  classify_exclusion   theorem-level rules on (a, b, m, n) alone
  qr_excluded_classes  classes of n (mod L) where the product is a
                       quadratic non-residue modulo a prime p
"""
import logging
from math import gcd, lcm

from models.sieve import NOT_EXCLUDED, ExclusionVerdict, PairProfile, ResidueClassSet, Rule
from services.arith import is_odd_prime, jacobi, odd_part, power_period, v2

logger = logging.getLogger(__name__)


class CapExceededError(ValueError):
    """The combined modulus of a residue sieve is larger than allowed."""


def pair_profile(a: int, b: int) -> PairProfile:
    return PairProfile(a=a, b=b, t=v2(a), r=odd_part(a), l=v2(b), s=odd_part(b), gcd=gcd(a, b))


def pair_profiles(a: int, b: int) -> tuple[PairProfile, PairProfile]:
    """Both orientations, (a, b) first."""
    return pair_profile(a, b), pair_profile(b, a)


# Rules. Each takes one orientation and answers whether it rules out (m, n).

def _t9_i(p: PairProfile, m: int, n: int) -> bool:
    return m % 2 == 1


def _t9_ii(p: PairProfile, m: int, n: int) -> bool:
    return n % 2 == 0 and m % 2 == 0


def _t9_iii(p: PairProfile, m: int, n: int) -> bool:
    if n % 2 == 0 or m % 2 or p.b % 4 != 1:
        return False
    return n - m > 1 or (n - m == 1 and p.t > 1)


def _t9_iv(p: PairProfile, m: int, n: int) -> bool:
    return n % 2 == 1 and m % 2 == 0 and n * p.t - m == 1 and p.b % 4 == 3


def _t13_i(p: PairProfile, m: int, n: int) -> bool:
    return (m - n) % 2 == 1


def _t13_ii(p: PairProfile, m: int, n: int) -> bool:
    return n % 2 == 0 and m % 2 == 0 and p.t >= 1 and p.l >= 1


def _t11(p: PairProfile, m: int, n: int) -> bool:
    return p.t >= 1 and p.l >= 1 and p.t != p.l and n % 2 == 0


def _t12(p: PairProfile, m: int, n: int) -> bool:
    return (p.t >= 1 and p.l >= 1 and p.r == p.s and p.t != p.l
            and (p.t - p.l) % 2 == 0 and n % 2 == 1)


def _cor_c14(p: PairProfile, m: int, n: int) -> bool:
    # b = 2^k * a with k >= 1; equal parity of valuations means k is even
    if p.t < 1 or p.b % p.a:
        return False
    k = p.l - p.t
    return k >= 1 and p.b == p.a << k and k % 2 == 0


def _cor_mod6(p: PairProfile, m: int, n: int) -> bool:
    return p.a % 6 == 2 and p.b % 6 == 3


def _t7(p: PairProfile, m: int, n: int) -> bool:
    return m == 1 and p.gcd == 1 and n % 2 == 0


def _cor_t4(p: PairProfile, m: int, n: int) -> bool:
    return m == 1 and p.a % 3 == 0 and p.b % 3 and n % 2 == 0


def _t9_applies(p: PairProfile) -> bool:
    return p.t >= 1 and p.b % 2 == 1


def _t13_applies(p: PairProfile) -> bool:
    return p.a % 3 == 2 and p.b % 3 == 0


# (rule, pair-level guard, exponent test) in evaluation order
_RULES = (
    (Rule.T9_I, _t9_applies, _t9_i),
    (Rule.T9_II, _t9_applies, _t9_ii),
    (Rule.T9_III, _t9_applies, _t9_iii),
    (Rule.T9_IV, _t9_applies, _t9_iv),
    (Rule.T13_I, _t13_applies, _t13_i),
    (Rule.T13_II, _t13_applies, _t13_ii),
    (Rule.T11, None, _t11),
    (Rule.T12, None, _t12),
    (Rule.COR_C14, None, _cor_c14),
    (Rule.COR_MOD6, None, _cor_mod6),
    (Rule.T7, None, _t7),
    (Rule.COR_T4, None, _cor_t4),
)


def validate_instance(a: int, b: int, m: int, n: int):
    if a < 2 or b < 2:
        raise ValueError(f'bases must be at least 2, got a={a}, b={b}')
    if a == b:
        raise ValueError(f'bases must differ, got a=b={a}')
    if not 0 < m < n:
        raise ValueError(f'need 0 < m < n, got m={m}, n={n}')


def _firing(profiles, m: int, n: int):
    for p in profiles:
        for rule, guard, test in _RULES:
            if (guard is None or guard(p)) and test(p, m, n):
                yield rule, p


def classify_exclusion(a: int, b: int, m: int, n: int,
                       profiles: tuple[PairProfile, PairProfile] | None = None) -> ExclusionVerdict:
    """First rule that rules out (a, b, m, n), or NOT_EXCLUDED.

    Every rule is tried on (a, b) in table order, then every rule on (b, a).
    `profiles` lets a caller reuse pair_profiles(a, b) across many (m, n).
    """
    validate_instance(a, b, m, n)
    if profiles is None:
        profiles = pair_profiles(a, b)
    for rule, p in _firing(profiles, m, n):
        return ExclusionVerdict(excluded=True, rule=rule, detail=p.detail())
    return NOT_EXCLUDED


def applicable_rules(a: int, b: int, m: int, n: int) -> list[ExclusionVerdict]:
    """Every rule that fires, in evaluation order, without duplicates."""
    validate_instance(a, b, m, n)
    seen = set()
    verdicts = []
    for rule, p in _firing(pair_profiles(a, b), m, n):
        if rule in seen:
            continue
        seen.add(rule)
        verdicts.append(ExclusionVerdict(excluded=True, rule=rule, detail=p.detail()))
    return verdicts


def _product_mod(a: int, b: int, m: int, n: int, p: int) -> int:
    two_m = pow(2, m, p)
    return (pow(a, n, p) - two_m) * (pow(b, n, p) - two_m) % p


def qr_excluded_classes(a: int, b: int, m: int, p: int) -> ResidueClassSet:
    """Classes c (mod L) of n for which the product is a non-residue mod p.

    L is the lcm of the periods of a^n and b^n modulo p. A product that is
    0 mod p is a square residue and keeps its class.
    """
    if not is_odd_prime(p):
        raise ValueError(f'{p} is not an odd prime')
    if m < 1:
        raise ValueError(f'm must be positive, got {m}')
    L = lcm(power_period(a, p), power_period(b, p))
    # c + L keeps the representative >= 1, where the periods are valid
    excluded = frozenset(c for c in range(L) if jacobi(_product_mod(a, b, m, c + L, p), p) == -1)
    return ResidueClassSet(L, excluded)


def residual_classes(a: int, b: int, m: int, primes, cap: int) -> ResidueClassSet:
    """Classes of n modulo the combined modulus that no listed prime excludes."""
    tables = [qr_excluded_classes(a, b, m, p) for p in primes]
    modulus = lcm(*(t.modulus for t in tables)) if tables else 1
    if modulus > cap:
        raise CapExceededError(f'combined modulus {modulus} exceeds cap {cap} for primes {list(primes)}')
    excluded = frozenset().union(*(t.lift(modulus).residues for t in tables))
    surviving = ResidueClassSet(modulus, excluded).complement()
    logger.debug(f'({a},{b}) m={m}: {len(surviving)}/{modulus} classes survive primes {list(primes)}')
    return surviving
