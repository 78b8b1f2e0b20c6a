from dataclasses import dataclass, field, asdict

from config import DEFAULT_SIEVE_PRIMES


@dataclass(frozen=True)
class MPolicy:
    """Which exponents m are tried for a given n: one fixed m, or every 0 < m < n."""
    fixed: int | None = None

    @classmethod
    def fixed_at(cls, m: int) -> 'MPolicy':
        if m < 1:
            raise ValueError(f'm must be positive, got {m}')
        return cls(fixed=m)

    @classmethod
    def all_below_n(cls) -> 'MPolicy':
        return cls(fixed=None)

    def exponents(self, n: int) -> range:
        if self.fixed is None:
            return range(1, n)
        return range(self.fixed, self.fixed + 1)

    def __str__(self):
        return 'all' if self.fixed is None else str(self.fixed)


@dataclass(frozen=True)
class SearchQuery:
    """A box of (a, b, n) plus the m policy and the sieve settings."""
    a_range: tuple[int, int]
    b_range: tuple[int, int]
    n_range: tuple[int, int]
    m_policy: MPolicy = field(default_factory=lambda: MPolicy.fixed_at(1))
    sieve_primes: tuple[int, ...] = DEFAULT_SIEVE_PRIMES
    use_classifier: bool = True

    def __post_init__(self):
        object.__setattr__(self, 'sieve_primes', tuple(self.sieve_primes))
        for name in ('a_range', 'b_range'):
            lo, _ = getattr(self, name)
            if lo < 2:
                raise ValueError(f'{name} must start at 2 or above, got {lo}')
        n_lo, n_hi = self.n_range
        if n_lo < 2:
            raise ValueError(f'n_range must start at 2 or above, got {n_lo}')
        m = self.m_policy.fixed
        if m is not None and n_lo <= n_hi and m >= n_lo:
            raise ValueError(f'm={m} must be smaller than every tested n (n_min={n_lo})')

    def pairs(self) -> list[tuple[int, int]]:
        """All (a, b) in the box with a < b."""
        a_lo, a_hi = self.a_range
        b_lo, b_hi = self.b_range
        return [(a, b)
                for a in range(a_lo, a_hi + 1)
                for b in range(max(b_lo, a + 1), b_hi + 1)]

    def key(self) -> str:
        """Identity of the hit set; sieve settings do not change it."""
        return f'a={self.a_range} b={self.b_range} n={self.n_range} m={self.m_policy}'


@dataclass(frozen=True, order=True)
class SearchHit:
    """(a^n - 2^m)(b^n - 2^m) = x^2. Ordered by (a, b, n, m)."""
    a: int
    b: int
    n: int
    m: int
    x: int

    def to_dict(self):
        # CSV column order a,b,m,n,x
        return {k: str(getattr(self, k)) for k in ('a', 'b', 'm', 'n', 'x')}

    @classmethod
    def from_dict(cls, d: dict) -> 'SearchHit':
        return cls(**{k: int(d[k]) for k in ('a', 'b', 'n', 'm', 'x')})


@dataclass
class PairResult:
    """Hits and pipeline counters for one (a, b) pair."""
    a: int
    b: int
    hits: list[SearchHit] = field(default_factory=list)
    candidates: int = 0
    excluded: int = 0
    sieved: int = 0
    tested: int = 0
    elapsed: float = 0.0

    @property
    def pair(self) -> tuple[int, int]:
        return (self.a, self.b)

    @property
    def stats(self) -> dict:
        return {
            'candidates': self.candidates,
            'excluded': self.excluded,
            'sieved': self.sieved,
            'tested': self.tested,
            'hits': len(self.hits),
            'elapsed': round(self.elapsed, 3),
        }

    def summary(self) -> str:
        """Progress line: pair, elapsed time and every counter of `stats`."""
        stats = self.stats
        elapsed = stats.pop('elapsed')
        counters = ' '.join(f'{k}={v}' for k, v in stats.items())
        return f'pair ({self.a},{self.b}) done in {elapsed:.3f}s: {counters}'


@dataclass(frozen=True)
class ConjectureReport:
    max_n: int
    hits: tuple[SearchHit, ...]

    def to_dict(self):
        return {'max_n': str(self.max_n), 'hits': [h.to_dict() for h in self.hits]}


@dataclass(frozen=True)
class InequalityCheck:
    which: str
    m: int
    holds: bool

    def to_dict(self):
        d = asdict(self)
        d['m'] = str(self.m)
        return d


@dataclass(frozen=True)
class ReproductionReport:
    """A recorded solution set next to what a fresh search found."""
    label: str
    expected: tuple[SearchHit, ...]
    found: tuple[SearchHit, ...]

    @property
    def missing(self) -> list[SearchHit]:
        return sorted(set(self.expected) - set(self.found))

    @property
    def unexpected(self) -> list[SearchHit]:
        return sorted(set(self.found) - set(self.expected))

    @property
    def ok(self) -> bool:
        return not self.missing and not self.unexpected

    def to_dict(self):
        return {
            'label': self.label,
            'ok': self.ok,
            'found': [h.to_dict() for h in self.found],
            'missing': [h.to_dict() for h in self.missing],
            'unexpected': [h.to_dict() for h in self.unexpected],
        }
