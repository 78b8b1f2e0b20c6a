"""Serialization of emitted records as JSON lines or CSV.

Integers are written as decimal strings in both formats.
"""
import csv
import io
import json

from config import OUTPUT_FORMATS
from models.lucas import LucasPair
from models.output import OutputRecord
from models.pell import FundamentalPair, PellSolution, SqrtExpansion
from models.search import ConjectureReport, InequalityCheck, ReproductionReport, SearchHit
from models.sieve import ExclusionVerdict, ResidueClassSet

# Model type -> record kind
RECORD_KIND_OF = {
    SearchHit: 'hit',
    ExclusionVerdict: 'verdict',
    PellSolution: 'pell_solution',
    FundamentalPair: 'pell_solution',
    LucasPair: 'lucas_value',
    ResidueClassSet: 'class_set',
    InequalityCheck: 'inequality',
    SqrtExpansion: 'expansion',
    ConjectureReport: 'report',
    ReproductionReport: 'report',
}


def to_record(obj) -> OutputRecord:
    """Wrap a model object, or a plain dict payload tagged 'solution'."""
    if isinstance(obj, OutputRecord):
        return obj
    if isinstance(obj, dict):
        return OutputRecord('solution', {k: str(v) for k, v in obj.items()})
    kind = RECORD_KIND_OF.get(type(obj))
    if kind is None:
        raise ValueError(f'No record kind for {type(obj).__name__}')
    return OutputRecord(kind, obj.to_dict())


def records_to_jsonl(records: list[OutputRecord]) -> str:
    return ''.join(json.dumps(r.to_dict()) + '\n' for r in records)


def _cell(value) -> str:
    if isinstance(value, (list, tuple)):
        return ' '.join(_cell(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value)
    return str(value)


def records_to_csv(records: list[OutputRecord]) -> str:
    """Payload columns of the first record; a hit sweep gives a,b,m,n,x."""
    if not records:
        return ''
    columns = list(records[0].payload)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(columns)
    for r in records:
        if list(r.payload) != columns:
            raise ValueError(f'CSV output needs records of one shape, got {r.kind} after {records[0].kind}')
        writer.writerow([_cell(r.payload[c]) for c in columns])
    return buf.getvalue()


def render(objects, fmt: str) -> str:
    """Serialize model objects in the requested format."""
    if fmt not in OUTPUT_FORMATS:
        raise ValueError(f'Unknown format {fmt!r}, expected one of {OUTPUT_FORMATS}')
    records = [to_record(o) for o in objects]
    if fmt == 'csv':
        return records_to_csv(records)
    return records_to_jsonl(records)
