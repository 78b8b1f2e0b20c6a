from dataclasses import dataclass, field

RECORD_KINDS = {
    'hit', 'verdict', 'pell_solution', 'lucas_value', 'class_set', 'inequality',
    'expansion', 'solution', 'report',
}


@dataclass
class OutputRecord:
    """One emitted line: a kind tag plus the serialized payload."""
    kind: str
    payload: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in RECORD_KINDS:
            raise ValueError(f'Unknown record kind: {self.kind}')

    def to_dict(self):
        return {'kind': self.kind, 'payload': self.payload}
