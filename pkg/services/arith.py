"""Arbitrary-precision integer primitives used by every other service."""
from functools import lru_cache
from math import prod

import gmpy2
from sympy import isprime
from sympy.ntheory import n_order

from config import SQUARE_PREFILTER_MODULI


def _square_mask(modulus: int) -> int:
    mask = 0
    for i in range(modulus):
        mask |= 1 << (i * i % modulus)
    return mask


# Bit r of mask[q] is set iff r is a square residue mod q
_SQUARE_MASKS = tuple((q, _square_mask(q)) for q in SQUARE_PREFILTER_MODULI)
_PREFILTER_PRODUCT = prod(SQUARE_PREFILTER_MODULI)


def isqrt(n: int) -> int:
    """floor(sqrt(n)) for n >= 0."""
    if n < 0:
        raise ValueError(f'isqrt of negative number: {n}')
    return int(gmpy2.isqrt(n))


def passes_square_prefilter(n: int) -> bool:
    """False when n is a non-residue modulo one of the prefilter moduli."""
    r = int(n % _PREFILTER_PRODUCT)
    for q, mask in _SQUARE_MASKS:
        if not (mask >> (r % q)) & 1:
            return False
    return True


def is_perfect_square(n: int) -> int | None:
    """Return the root of n when n is a perfect square, else None."""
    if n < 0:
        return None
    if not passes_square_prefilter(n):
        return None
    root, rem = gmpy2.isqrt_rem(n)
    if rem:
        return None
    return int(root)


def v2(n: int) -> int:
    """Exponent of the largest power of 2 dividing n."""
    if n == 0:
        raise ValueError('v2 is undefined for 0')
    return int(gmpy2.bit_scan1(abs(n)))


def odd_part(n: int) -> int:
    return abs(n) >> v2(n)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 3; equals the Legendre symbol for prime n."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f'Jacobi symbol needs an odd modulus >= 3, got {n}')
    return int(gmpy2.jacobi(a % n, n))


def is_odd_prime(p: int) -> bool:
    return p > 2 and bool(isprime(p))


@lru_cache(maxsize=4096)
def _order(a: int, p: int) -> int:
    return int(n_order(a, p))


def mult_order(a: int, p: int) -> int:
    """Least e >= 1 with a^e = 1 (mod p), p prime."""
    if not isprime(p):
        raise ValueError(f'{p} is not prime')
    if a % p == 0:
        raise ValueError(f'{a} is divisible by {p}, it has no multiplicative order')
    return _order(a % p, p)


def power_period(a: int, p: int) -> int:
    """Period of n -> a^n (mod p) over n >= 1; 1 when p divides a."""
    if a % p == 0:
        return 1
    return mult_order(a, p)
