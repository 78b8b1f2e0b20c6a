from dataclasses import dataclass, field
from enum import Enum


class Rule(str, Enum):
    """Theorem-level exclusion rules, in evaluation order."""
    T9_I = 'T9_I'
    T9_II = 'T9_II'
    T9_III = 'T9_III'
    T9_IV = 'T9_IV'
    T13_I = 'T13_I'
    T13_II = 'T13_II'
    T11 = 'T11'
    T12 = 'T12'
    COR_C14 = 'COR_C14'
    COR_MOD6 = 'COR_MOD6'
    T7 = 'T7'
    COR_T4 = 'COR_T4'
    NONE = 'NONE'


@dataclass(frozen=True)
class ExclusionVerdict:
    excluded: bool
    rule: Rule = Rule.NONE
    detail: str = ''

    def __post_init__(self):
        if self.excluded == (self.rule is Rule.NONE):
            raise ValueError(f'Inconsistent verdict: excluded={self.excluded} with rule {self.rule.value}')

    def to_dict(self):
        return {'excluded': self.excluded, 'rule': self.rule.value, 'detail': self.detail}


NOT_EXCLUDED = ExclusionVerdict(excluded=False)


@dataclass(frozen=True)
class ResidueClassSet:
    """A set of residue classes n (mod modulus)."""
    modulus: int
    residues: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f'modulus must be positive, got {self.modulus}')
        object.__setattr__(self, 'residues', frozenset(self.residues))
        bad = [r for r in self.residues if not 0 <= r < self.modulus]
        if bad:
            raise ValueError(f'residues {sorted(bad)} outside [0, {self.modulus})')

    def __contains__(self, n: int) -> bool:
        return n % self.modulus in self.residues

    def __len__(self):
        return len(self.residues)

    def lift(self, modulus: int) -> 'ResidueClassSet':
        """Same classes expressed modulo a multiple of the current modulus."""
        if modulus % self.modulus:
            raise ValueError(f'{modulus} is not a multiple of {self.modulus}')
        return ResidueClassSet(modulus, frozenset(c for c in range(modulus) if c % self.modulus in self.residues))

    def complement(self) -> 'ResidueClassSet':
        return ResidueClassSet(self.modulus, frozenset(range(self.modulus)) - self.residues)

    def to_dict(self):
        return {
            'modulus': str(self.modulus),
            'residues': [str(r) for r in sorted(self.residues)],
        }


@dataclass(frozen=True)
class PairProfile:
    """One orientation of a pair: a = 2^t * r, b = 2^l * s with r, s odd."""
    a: int
    b: int
    t: int
    r: int
    l: int
    s: int
    gcd: int

    def detail(self) -> str:
        return f'a={self.a} b={self.b} t={self.t} r={self.r} l={self.l} s={self.s}'
