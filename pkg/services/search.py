"""Exhaustive search for (a^n - 2^m)(b^n - 2^m) = x^2.

Per (a, b) pair the candidates (n, m) go through
  classifier verdict -> per-prime residue classes -> square prefilter -> isqrt
and a^n, b^n are kept as running products.
"""
import logging
import time
from functools import partial
from multiprocessing import Pool

import gmpy2

from config import POOL_CHUNKSIZE
from models.search import PairResult, SearchHit, SearchQuery
from services.arith import is_perfect_square
from services.sieve import classify_exclusion, pair_profiles, qr_excluded_classes, validate_instance
from services.validator import validate_hits

logger = logging.getLogger(__name__)


def check_instance(a: int, b: int, m: int, n: int) -> int | None:
    """x >= 1 with x^2 = (a^n - 2^m)(b^n - 2^m), or None."""
    validate_instance(a, b, m, n)
    two_m = 1 << m
    product = (a ** n - two_m) * (b ** n - two_m)
    if product <= 0:
        return None
    return is_perfect_square(product)


def search_pair(query: SearchQuery, pair: tuple[int, int]) -> PairResult:
    """All hits of one (a, b) pair inside the query box."""
    a, b = pair
    start = time.perf_counter()
    result = PairResult(a, b)
    profiles = pair_profiles(a, b)
    tables = {}

    n_lo, n_hi = query.n_range
    power_a = gmpy2.mpz(a) ** n_lo
    power_b = gmpy2.mpz(b) ** n_lo
    for n in range(n_lo, n_hi + 1):
        for m in query.m_policy.exponents(n):
            result.candidates += 1
            if query.use_classifier and classify_exclusion(a, b, m, n, profiles).excluded:
                result.excluded += 1
                continue
            if query.sieve_primes:
                if m not in tables:
                    tables[m] = [qr_excluded_classes(a, b, m, p) for p in query.sieve_primes]
                if any(n in excluded for excluded in tables[m]):
                    result.sieved += 1
                    continue
            result.tested += 1
            two_m = 1 << m
            x = is_perfect_square((power_a - two_m) * (power_b - two_m))
            if x:
                result.hits.append(SearchHit(a, b, n, m, x))
        power_a *= a
        power_b *= b

    result.elapsed = time.perf_counter() - start
    return result


def _results(query: SearchQuery, pairs: list[tuple[int, int]], jobs: int):
    if jobs <= 1 or len(pairs) <= 1:
        for pair in pairs:
            yield search_pair(query, pair)
        return
    with Pool(processes=jobs) as pool:
        yield from pool.imap_unordered(partial(search_pair, query), pairs, chunksize=POOL_CHUNKSIZE)


def sweep(query: SearchQuery, jobs: int = 1, checkpoint=None) -> list[SearchHit]:
    """Every hit in the query box, sorted by (a, b, n, m).

    With a checkpoint, pairs it already holds are not searched again and each
    newly completed pair is recorded as soon as it finishes.
    """
    if jobs < 1:
        raise ValueError(f'jobs must be at least 1, got {jobs}')
    pairs = query.pairs()
    done = checkpoint.load() if checkpoint is not None else {}
    hits = [h for pair_hits in done.values() for h in pair_hits]
    todo = [pair for pair in pairs if pair not in done]
    logger.info(f'Sweep {query.key()}: {len(todo)} of {len(pairs)} pair(s) to search, jobs={jobs}')

    for result in _results(query, todo, jobs):
        logger.info(result.summary())
        hits.extend(result.hits)
        if checkpoint is not None:
            checkpoint.record(result)

    hits.sort()
    return validate_hits(hits)
