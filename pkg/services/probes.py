"""Probes built on the sweep: the two conjectures, the recorded solution
tables, the divisor equation (z+1)(2z-1)^2 = 10^(2m) and two inequalities.
"""
import json
import logging

from sympy import divisors

from config import KNOWN_SOLUTIONS_PATH, TABLE_A_RANGE, TABLE_B_RANGE, TABLE_N_MAX
from models.checkpoint import Checkpoint
from models.search import ConjectureReport, InequalityCheck, MPolicy, ReproductionReport, SearchHit, SearchQuery
from services.lucas import pell_lucas_number, pell_number
from services.search import sweep
from services.validator import InconsistencyError

logger = logging.getLogger(__name__)

_known_solutions = None


def _load_known_solutions() -> dict:
    global _known_solutions
    if _known_solutions is not None:
        return _known_solutions
    with open(KNOWN_SOLUTIONS_PATH, encoding='utf-8') as f:
        _known_solutions = json.load(f)
    return _known_solutions


def _m_policy(value) -> MPolicy:
    return MPolicy.all_below_n() if value == 'all' else MPolicy.fixed_at(int(value))


def conjecture1_probe(k_list, n_max: int, jobs: int = 1, reference: bool = False) -> list[SearchHit]:
    """Hits of (2^n - 2)((2P_k)^n - 2) = x^2 for 2 <= n <= n_max.

    k must be odd and above 3; `reference` also admits k = 3, where b = 10.
    """
    least = 3 if reference else 5
    for k in k_list:
        if k % 2 == 0 or k < least:
            raise ValueError(f'k must be odd and at least {least}, got {k}')

    hits = []
    for k in k_list:
        b = 2 * pell_number(k)
        query = SearchQuery(a_range=(2, 2), b_range=(b, b), n_range=(2, n_max))
        found = sweep(query, jobs=jobs)
        q_k = pell_lucas_number(k)
        if [(h.n, h.x) for h in found] != [(2, q_k)]:
            logger.warning(f'k={k}: hits {[(h.n, h.x) for h in found]} differ from the single (2, {q_k})')
        hits.extend(found)
    return sorted(hits)


def conjecture2_probe(limit_a: int, limit_b: int, n_max: int, jobs: int = 1) -> ConjectureReport:
    """Largest n among the hits with 2 < a < b, m = 1; 0 when there are none."""
    if limit_a < 3 or limit_b < 3:
        raise ValueError(f'limits must be at least 3, got {limit_a}, {limit_b}')
    query = SearchQuery(a_range=(3, limit_a), b_range=(3, limit_b), n_range=(2, n_max))
    hits = sweep(query, jobs=jobs)
    max_n = max((h.n for h in hits), default=0)
    logger.info(f'a <= {limit_a}, b <= {limit_b}, n <= {n_max}: {len(hits)} hit(s), largest n = {max_n}')
    return ConjectureReport(max_n=max_n, hits=tuple(hits))


def solve_c1(m_max: int) -> list[tuple[int, int]]:
    """All (m, z) with (z + 1)(2z - 1)^2 = 10^(2m), 1 <= m <= m_max."""
    if m_max < 1:
        raise ValueError(f'm_max must be positive, got {m_max}')
    solutions = []
    for m in range(1, m_max + 1):
        target = 10 ** (2 * m)
        for d in divisors(target):
            if d % 2 == 0 or target % (d * d):
                continue
            z = (d + 1) // 2
            if (z + 1) * d * d == target:
                solutions.append((m, z))
    return solutions


_INEQUALITIES = {
    'L9': lambda m: 5 ** m > 2 ** (2 * m + 1) - 3,
    'L11': lambda m: 2 * 3 ** (4 * m - 3) > 5 ** m + 1,
}
# Least m from which each inequality must hold
_INEQUALITY_DOMAIN = {'L9': 4, 'L11': 2}


def verify_inequality(which: str, m_range: tuple[int, int]) -> list[InequalityCheck]:
    """Exact truth value per m of 5^m > 2^(2m+1) - 3 (L9) or 2*3^(4m-3) > 5^m + 1 (L11)."""
    which = which.upper()
    if which not in _INEQUALITIES:
        raise ValueError(f'Unknown inequality {which!r}, expected one of {sorted(_INEQUALITIES)}')
    lo, hi = m_range
    if lo < 1:
        raise ValueError(f'm must be positive, got {lo}')
    holds = _INEQUALITIES[which]
    checks = [InequalityCheck(which=which, m=m, holds=holds(m)) for m in range(lo, hi + 1)]
    failures = [f'{which} fails at m={c.m}' for c in checks
                if not c.holds and c.m >= _INEQUALITY_DOMAIN[which]]
    if failures:
        raise InconsistencyError(failures)
    return checks


def _expected(hits: list[dict], n_max: int) -> tuple[SearchHit, ...]:
    return tuple(sorted(h for h in map(SearchHit.from_dict, hits) if h.n <= n_max))


def reproduce_table(n_max: int = TABLE_N_MAX, jobs: int = 1,
                    checkpoint_path: str | None = None) -> ReproductionReport:
    """Sweep 2 <= a < b <= 100 with m = 1 and compare with the recorded table."""
    table = _load_known_solutions()['table']
    query = SearchQuery(a_range=TABLE_A_RANGE, b_range=TABLE_B_RANGE, n_range=(2, n_max))
    checkpoint = Checkpoint(checkpoint_path, query.key()) if checkpoint_path else None
    found = sweep(query, jobs=jobs, checkpoint=checkpoint)
    report = ReproductionReport(table['label'], _expected(table['hits'], n_max), tuple(found))
    if not report.ok:
        logger.warning(f'Table mismatch: missing={report.missing} unexpected={report.unexpected}')
    return report


def reproduce_theorems(n_max: int | None = None, jobs: int = 1) -> list[ReproductionReport]:
    """Re-run every recorded single-pair solution set."""
    reports = []
    for claim in _load_known_solutions()['pairs']:
        limit = claim['n_max'] if n_max is None else n_max
        a, b = claim['a'], claim['b']
        query = SearchQuery(a_range=(a, a), b_range=(b, b), n_range=(2, limit),
                            m_policy=_m_policy(claim['m']))
        found = sweep(query, jobs=jobs)
        report = ReproductionReport(claim['label'], _expected(claim['hits'], limit), tuple(found))
        if not report.ok:
            logger.warning(f'{claim["label"]}: missing={report.missing} unexpected={report.unexpected}')
        reports.append(report)
    return reports
