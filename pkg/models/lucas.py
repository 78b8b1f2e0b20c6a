from dataclasses import dataclass, asdict
from math import gcd


@dataclass(frozen=True)
class LucasParams:
    """Parameters (P, Q) of U_{n+1} = P*U_n + Q*U_{n-1}."""
    P: int
    Q: int

    def __post_init__(self):
        if self.P == 0 and self.Q == 0:
            raise ValueError('P and Q cannot both be zero')
        if gcd(self.P, self.Q) != 1:
            raise ValueError(f'P={self.P} and Q={self.Q} are not relatively prime')
        if self.discriminant <= 0:
            raise ValueError(f'P^2 + 4Q must be positive, got {self.discriminant}')

    @property
    def discriminant(self) -> int:
        return self.P * self.P + 4 * self.Q

    def to_dict(self):
        return {'P': str(self.P), 'Q': str(self.Q)}


@dataclass(frozen=True)
class LucasPair:
    """U_n and V_n of one parameter pair at one index."""
    n: int
    U: int
    V: int

    def to_dict(self):
        return {k: str(v) for k, v in asdict(self).items()}
