"""Pell-equation machinery: fundamental solutions and the solution families.

Every family is produced from a Lucas sequence with Q = -1:
  x^2 - d*y^2 = 1   (x_n, y_n) = (V_n(2x1,-1)/2, y1*U_n(2x1,-1))            n >= 1
  x^2 - d*y^2 = 2   (X_n, Y_n) = (k1(U_n+1 - U_n), t1(U_n+1 + U_n)),        n >= 0
                    U = U(2x1,-1) and x1 = k1^2 - 1
  a*x^2 - b*y^2 = 1 (x_m, y_m) = (u1(U_m+1 - U_m), v1(U_m+1 + U_m)),        m >= 0
                    U = U(4a*u1^2 - 2, -1)
  u^2 - 5v^2 = -4^k (u, v) = (2^(k-1) L_2m+1, 2^(k-1) F_2m+1),               m >= 0
"""
import logging
from itertools import cycle

from sympy.ntheory.continued_fraction import continued_fraction_periodic

from models.lucas import LucasParams
from models.pell import FundamentalPair, PairRole, PellInstance, PellSolution, SqrtExpansion
from services.arith import is_perfect_square
from services.lucas import fibonacci, lucas_number, lucas_terms
from services.validator import validate_pell, validate_quadratic

logger = logging.getLogger(__name__)


class InsolvableError(ValueError):
    """The requested equation has no solution."""


def _require_non_square(d: int):
    if d < 2:
        raise ValueError(f'd must be at least 2, got {d}')
    if is_perfect_square(d) is not None:
        raise ValueError(f'd={d} is a perfect square')


def cf_sqrt(d: int) -> SqrtExpansion:
    """Periodic continued fraction of sqrt(d)."""
    _require_non_square(d)
    head, period = continued_fraction_periodic(0, 1, d)
    return SqrtExpansion(d=d, head=int(head), period=tuple(int(a) for a in period))


def _convergents(expansion: SqrtExpansion):
    """Yield (index, p, q) for the convergents p/q of sqrt(d), forever."""
    p_prev, p = 1, expansion.head
    q_prev, q = 0, 1
    yield 0, p, q
    for i, a in enumerate(cycle(expansion.period), start=1):
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        yield i, p, q


def _fundamental_index(expansion: SqrtExpansion) -> int:
    r = len(expansion.period)
    return r - 1 if r % 2 == 0 else 2 * r - 1


def fundamental_n1(d: int) -> FundamentalPair:
    """Least positive (x1, y1) with x1^2 - d*y1^2 = 1."""
    expansion = cf_sqrt(d)
    stop = _fundamental_index(expansion)
    for i, p, q in _convergents(expansion):
        if i == stop:
            validate_quadratic([(p, q)], 1, d, 1)
            return FundamentalPair(PairRole.N1, p, q)


def fundamental_n2(d: int) -> FundamentalPair | None:
    """Least positive (k1, t1) with k1^2 - d*t1^2 = 2, or None when there is none.

    t1 <= y1 bounds the search. For d >= 5 every solution is a convergent
    (|2| < sqrt(d)), so the convergents up to (x1, y1) are scanned; the small
    cases scan v = 1 .. y1 directly.
    """
    _require_non_square(d)
    _, y1 = fundamental_n1(d).as_tuple()
    if d < 5:
        for v in range(1, y1 + 1):
            k = is_perfect_square(d * v * v + 2)
            if k is not None:
                return FundamentalPair(PairRole.N2, k, v)
        return None

    expansion = cf_sqrt(d)
    stop = _fundamental_index(expansion)
    for i, p, q in _convergents(expansion):
        if p * p - d * q * q == 2:
            return FundamentalPair(PairRole.N2, p, q)
        if i == stop:
            logger.debug(f'x^2 - {d}y^2 = 2: no convergent up to index {stop}')
            return None


def n1_from_n2(pair: FundamentalPair, d: int) -> FundamentalPair:
    """The N=1 fundamental ((k1^2 + d*t1^2)/2, k1*t1) from the N=2 fundamental."""
    k1, t1 = pair.as_tuple()
    if k1 * k1 - d * t1 * t1 != 2:
        raise ValueError(f'({k1}, {t1}) does not solve x^2 - {d}y^2 = 2')
    return FundamentalPair(PairRole.N1, (k1 * k1 + d * t1 * t1) // 2, k1 * t1)


def gen_n1(d: int, count: int) -> list[PellSolution]:
    """First `count` positive solutions of x^2 - d*y^2 = 1."""
    if count <= 0:
        _require_non_square(d)
        return []
    x1, y1 = fundamental_n1(d).as_tuple()
    terms = lucas_terms(LucasParams(2 * x1, -1), count + 1)
    next(terms)
    solutions = [PellSolution(t.V // 2, y1 * t.U) for t in terms]
    return validate_pell(solutions, PellInstance(d, 1))


def require_n2(d: int) -> FundamentalPair:
    pair = fundamental_n2(d)
    if pair is None:
        raise InsolvableError(f'x^2 - {d}y^2 = 2 has no solution')
    return pair


def gen_n2(d: int, count: int) -> list[PellSolution]:
    """First `count` positive solutions of u^2 - d*v^2 = 2, starting with (k1, t1)."""
    k1, t1 = require_n2(d).as_tuple()
    if count <= 0:
        return []
    x1 = k1 * k1 - 1
    us = [t.U for t in lucas_terms(LucasParams(2 * x1, -1), count + 1)]
    solutions = [PellSolution(k1 * (us[n + 1] - us[n]), t1 * (us[n + 1] + us[n]))
                 for n in range(count)]
    return validate_pell(solutions, PellInstance(d, 2))


def gen_n2_product(d: int, count: int) -> list[PellSolution]:
    """Same family as gen_n2, by repeated multiplication (k1 + t1*sqrt(d))(x1 + y1*sqrt(d))^n."""
    k1, t1 = require_n2(d).as_tuple()
    x1, y1 = fundamental_n1(d).as_tuple()
    solutions = []
    X, Y = k1, t1
    for _ in range(count):
        solutions.append(PellSolution(X, Y))
        X, Y = X * x1 + d * Y * y1, X * y1 + Y * x1
    return solutions


def ratio_minimal(a: int, b: int) -> FundamentalPair:
    """Minimal (u1, v1) with a*u1^2 - b*v1^2 = 1.

    Its square (2a*u1^2 - 1) + 2*u1*v1*sqrt(ab) is the N=1 fundamental of ab,
    which pins u1 down; anything else means the equation has no solution.
    """
    _require_non_square(a)
    if b < 1:
        raise ValueError(f'b must be positive, got {b}')
    if is_perfect_square(a * b) is not None:
        raise InsolvableError(f'{a}x^2 - {b}y^2 = 1 has no solution (ab is a square)')
    x1, y1 = fundamental_n1(a * b).as_tuple()
    u = None
    if (x1 + 1) % (2 * a) == 0:
        u = is_perfect_square((x1 + 1) // (2 * a))
    if u is None or y1 % (2 * u):
        raise InsolvableError(f'{a}x^2 - {b}y^2 = 1 has no solution')
    v = y1 // (2 * u)
    if a * u * u - b * v * v != 1:
        raise InsolvableError(f'{a}x^2 - {b}y^2 = 1 has no solution')
    return FundamentalPair(PairRole.RATIO, u, v)


def gen_ratio(a: int, b: int, count: int) -> list[PellSolution]:
    """First `count` positive solutions of a*x^2 - b*y^2 = 1."""
    u1, v1 = ratio_minimal(a, b).as_tuple()
    if count <= 0:
        return []
    P = 4 * a * u1 * u1 - 2
    us = [t.U for t in lucas_terms(LucasParams(P, -1), count + 1)]
    solutions = [PellSolution(u1 * (us[m + 1] - us[m]), v1 * (us[m + 1] + us[m]))
                 for m in range(count)]
    return validate_quadratic(solutions, a, b, 1)


def solve_neg4k(k: int, count: int) -> list[PellSolution]:
    """First `count` nonnegative solutions of u^2 - 5v^2 = -4^k, increasing."""
    if k < 1:
        raise ValueError(f'k must be positive, got {k}')
    scale = 1 << (k - 1)
    solutions = [PellSolution(scale * lucas_number(2 * m + 1), scale * fibonacci(2 * m + 1))
                 for m in range(max(count, 0))]
    return validate_pell(solutions, PellInstance(5, -(4 ** k)))
