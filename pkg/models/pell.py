from dataclasses import dataclass
from enum import Enum


class PairRole(str, Enum):
    N1 = 'N1'          # x^2 - d*y^2 = 1
    N2 = 'N2'          # x^2 - d*y^2 = 2
    RATIO = 'RATIO'    # a*x^2 - b*y^2 = 1


@dataclass(frozen=True)
class PellInstance:
    """The equation x^2 - d*y^2 = N."""
    d: int
    N: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f'd must be at least 2, got {self.d}')

    def holds(self, x: int, y: int) -> bool:
        return x * x - self.d * y * y == self.N

    def to_dict(self):
        return {'d': str(self.d), 'N': str(self.N)}


@dataclass(frozen=True)
class PellSolution:
    x: int
    y: int

    def as_tuple(self) -> tuple[int, int]:
        return (self.x, self.y)

    def to_dict(self):
        return {'x': str(self.x), 'y': str(self.y)}


@dataclass(frozen=True)
class FundamentalPair:
    """Least positive solution of a Pell-type equation.

    (first, second) is (x1, y1) for N1, (k1, t1) for N2 and (u1, v1) for RATIO.
    """
    role: PairRole
    first: int
    second: int

    def as_tuple(self) -> tuple[int, int]:
        return (self.first, self.second)

    def to_dict(self):
        return {'role': self.role.value, 'first': str(self.first), 'second': str(self.second)}


@dataclass(frozen=True)
class SqrtExpansion:
    """sqrt(d) = [head; (period)]"""
    d: int
    head: int
    period: tuple[int, ...]

    def to_dict(self):
        return {
            'd': str(self.d),
            'head': str(self.head),
            'period': [str(p) for p in self.period],
        }
