"""Lucas sequences U_n(P,Q), V_n(P,Q) and the divisibility facts built on them.

Recurrence convention: X_{n+1} = P*X_n + Q*X_{n-1}, so the roots satisfy
alpha*beta = -Q and V_{2n} = V_n^2 - 2(-Q)^n.
"""
from models.lucas import LucasParams, LucasPair
from services.arith import v2


def _ladder(P: int, Q: int, n: int, modulus: int | None = None) -> tuple[int, int]:
    """(U_n, V_n) by fast doubling, optionally reduced mod `modulus`.

    Walks the bits of n carrying (U_k, V_k, U_{k+1}, V_{k+1}, R^k) with R = -Q:
      U_2k = U_k V_k               V_2k = V_k^2 - 2 R^k
      U_2k+1 = U_k+1 V_k - R^k     V_2k+1 = V_k+1 V_k - P R^k
    No division, so any modulus works.
    """
    if n < 0:
        raise ValueError(f'negative index {n} is not supported')
    R = -Q
    if modulus is None:
        def red(x):
            return x
    else:
        def red(x):
            return x % modulus
        P, R = P % modulus, R % modulus

    u, v, u1, v1, rk = red(0), red(2), red(1), red(P), red(1)
    for bit in bin(n)[2:] if n else '':
        u_odd = red(u1 * v - rk)
        v_odd = red(v1 * v - P * rk)
        if bit == '1':
            rk1 = red(rk * R)
            u, v = u_odd, v_odd
            u1, v1 = red(u1 * v1), red(v1 * v1 - 2 * rk1)
            rk = red(rk * rk1)
        else:
            u, v = red(u * v), red(v * v - 2 * rk)
            u1, v1 = u_odd, v_odd
            rk = red(rk * rk)
    return u, v


def lucas_pair(params: LucasParams, n: int) -> LucasPair:
    """Exact (U_n, V_n)."""
    u, v = _ladder(params.P, params.Q, n)
    return LucasPair(n=n, U=u, V=v)


def lucas_u(P: int, Q: int, n: int) -> int:
    return lucas_pair(LucasParams(P, Q), n).U


def lucas_v(P: int, Q: int, n: int) -> int:
    return lucas_pair(LucasParams(P, Q), n).V


def lucas_mod(params: LucasParams, n: int, modulus: int) -> tuple[int, int]:
    """(U_n mod modulus, V_n mod modulus) for Q = -1."""
    if params.Q != -1:
        raise ValueError(f'lucas_mod works with Q = -1, got Q={params.Q}')
    if modulus < 2:
        raise ValueError(f'modulus must be at least 2, got {modulus}')
    return _ladder(params.P, params.Q, n, modulus)


# Named specializations

def pell_number(k: int) -> int:
    """P_k = U_k(2, 1)."""
    return _ladder(2, 1, k)[0]


def pell_lucas_number(k: int) -> int:
    """Q_k = V_k(2, 1)."""
    return _ladder(2, 1, k)[1]


def fibonacci(n: int) -> int:
    return _ladder(1, 1, n)[0]


def lucas_number(n: int) -> int:
    return _ladder(1, 1, n)[1]


# Divisibility and valuation facts for Q = -1

def v2_of_v(P: int, n: int) -> int:
    """v2(V_n(P, -1)) for even P: v2(P) when n is odd, 1 when n is even."""
    if P % 2:
        raise ValueError(f'P must be even, got {P}')
    if P == 0:
        raise ValueError('P = 0 gives V_n = 0 for odd n')
    if n < 1:
        raise ValueError(f'n must be positive, got {n}')
    return v2(P) if n % 2 else 1


def divides_criterion(P: int, n: int, q: int) -> bool:
    """Whether q | U_n(P, -1), for q in {3, 5}, from the residue of P alone."""
    if n < 0:
        raise ValueError(f'n must be nonnegative, got {n}')
    if q == 3:
        if P % 3 == 0:
            return n % 2 == 0
        # P = 1 and P = 2 (mod 3) share the rank of apparition 3
        return n % 3 == 0
    if q == 5:
        sq = P * P % 5
        if sq == 0:
            return n % 2 == 0
        if sq == 1:
            return n % 3 == 0
        return n % 5 == 0
    raise ValueError(f'q must be 3 or 5, got {q}')


def diff_divides(a: int, P: int, n: int) -> bool:
    """Whether a | U_n(P,-1) - U_{n-1}(P,-1) when P = 1 (mod a): exactly n = 2, 5 (mod 6)."""
    if a < 2:
        raise ValueError(f'a must be at least 2, got {a}')
    if P % a != 1 % a:
        raise ValueError(f'P={P} is not 1 modulo {a}')
    if n < 1:
        raise ValueError(f'n must be positive, got {n}')
    return n % 6 in (2, 5)


def lucas_terms(params: LucasParams, count: int):
    """Yield LucasPair for n = 0 .. count-1 by the plain recurrence."""
    P, Q = params.P, params.Q
    u0, u1, v0, v1 = 0, 1, 2, P
    for n in range(count):
        yield LucasPair(n=n, U=u0, V=v0)
        u0, u1 = u1, P * u1 + Q * u0
        v0, v1 = v1, P * v1 + Q * v0
