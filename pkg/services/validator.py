"""Big-integer re-verification of everything the services emit."""
import logging

from models.pell import PellInstance
from models.search import SearchHit

logger = logging.getLogger(__name__)


class InconsistencyError(RuntimeError):
    """An emitted value failed its own defining identity."""

    def __init__(self, messages: list[str]):
        self.messages = messages
        super().__init__('; '.join(messages))


def validate_hit(hit: SearchHit) -> tuple[str, list[str]]:
    """Validate a search hit.

    Returns (status, messages) where status is 'valid' or 'error'.
    """
    messages = []
    if not 0 < hit.m < hit.n:
        messages.append(f'Exponents out of range: m={hit.m}, n={hit.n}')
    if hit.a < 2 or hit.b < 2 or hit.a == hit.b:
        messages.append(f'Bad bases: a={hit.a}, b={hit.b}')
    if hit.x < 1:
        messages.append(f'x must be positive, got {hit.x}')

    two_m = 1 << hit.m
    product = (hit.a ** hit.n - two_m) * (hit.b ** hit.n - two_m)
    if product != hit.x * hit.x:
        messages.append(
            f'({hit.a}^{hit.n} - 2^{hit.m})({hit.b}^{hit.n} - 2^{hit.m}) != {hit.x}^2')

    return ('error' if messages else 'valid'), messages


def validate_hits(hits: list[SearchHit]) -> list[SearchHit]:
    """Re-verify every hit; raise InconsistencyError on the first failures."""
    failures = []
    for hit in hits:
        status, messages = validate_hit(hit)
        if status != 'valid':
            failures.extend(messages)
    if failures:
        logger.error(f'{len(failures)} hit check(s) failed')
        raise InconsistencyError(failures)
    return hits


def validate_quadratic(solutions, a: int, b: int, N: int) -> list:
    """Check a*x^2 - b*y^2 = N for every (x, y); raise InconsistencyError otherwise."""
    failures = []
    for sol in solutions:
        x, y = sol.as_tuple() if hasattr(sol, 'as_tuple') else sol
        if a * x * x - b * y * y != N:
            failures.append(f'{a}*{x}^2 - {b}*{y}^2 != {N}')
    if failures:
        logger.error(f'{len(failures)} quadratic check(s) failed')
        raise InconsistencyError(failures)
    return solutions


def validate_pell(solutions, instance: PellInstance) -> list:
    """Check x^2 - d*y^2 = N for every solution of one Pell instance."""
    failures = [f'{s.x}^2 - {instance.d}*{s.y}^2 != {instance.N}'
                for s in solutions if not instance.holds(s.x, s.y)]
    if failures:
        logger.error(f'{len(failures)} solution(s) of x^2 - {instance.d}y^2 = {instance.N} failed')
        raise InconsistencyError(failures)
    return solutions
