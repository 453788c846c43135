"""State and report documents.

State files come in two formats, told apart by their ``format`` field:

- ``sparse-rational``: nonzero amplitudes only, as ``{"index", "re", "im"}``
  with rational strings ``"p/q"``; lossless for the exact backend.
- ``dense-float``: all 2^n amplitudes as ``[re, im]`` pairs of doubles.

Reports are pydantic models dumped with a fixed field order, so the same
inputs and seed always produce the same bytes.

Example:
    >>> text = serialize_state(gen_chi(1, 4))
    >>> parse_state(text) == gen_chi(1, 4)
    True
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Annotated, List, Literal, Optional, Tuple, Union
import json
import logging
import os
import sys
import tempfile

from pydantic import BaseModel, ConfigDict, Field, StrictInt, StrictStr, TypeAdapter, ValidationError, field_validator

from slocc import __version__
from slocc.classifiers import IndependenceCertificate, Measure, Signature, Verdict
from slocc.constants import TOOL_NAME
from slocc.determinants import InvariantValue, LogComplex
from slocc.operators import CovarianceReport
from slocc.scalars import Backend, ExactScalar, format_rational, parse_rational
from slocc.states import PureState, check_qubit_count
from slocc.utils.errors import DuplicateIndex, ParseError, SloccError, error_handler

logger = logging.getLogger(__name__)

SPARSE_FORMAT = 'sparse-rational'
DENSE_FORMAT = 'dense-float'


class _Document(BaseModel):
    model_config = ConfigDict(extra='forbid')


class SparseAmplitude(_Document):
    index: StrictInt = Field(ge=0)
    re: StrictStr = '0/1'
    im: StrictStr = '0/1'

    @field_validator('re', 'im')
    @classmethod
    def _rational(cls, value: str) -> str:
        try:
            parse_rational(value)
        except ParseError as e:
            raise ValueError(str(e)) from None
        return value


class SparseStateFile(_Document):
    format: Literal['sparse-rational']
    n: StrictInt
    label: Optional[str] = None
    norm_squared: Optional[StrictStr] = None
    amplitudes: List[SparseAmplitude]

    @field_validator('norm_squared')
    @classmethod
    def _positive_rational(cls, value: Optional[str]) -> Optional[str]:
        if value is None:
            return value
        try:
            parsed = parse_rational(value)
        except ParseError as e:
            raise ValueError(str(e)) from None
        if parsed <= 0:
            raise ValueError("norm_squared must be positive")
        return value


class DenseStateFile(_Document):
    format: Literal['dense-float']
    n: StrictInt
    label: Optional[str] = None
    norm_squared: Optional[float] = Field(default=None, gt=0)
    amplitudes: List[Tuple[float, float]]


StateFile = Annotated[Union[SparseStateFile, DenseStateFile], Field(discriminator='format')]
_STATE_FILE = TypeAdapter(StateFile)


def _field_path(loc) -> str:
    return '.'.join(str(part) for part in loc if part not in (SPARSE_FORMAT, DENSE_FORMAT))


def parse_state(data: Union[bytes, str]) -> PureState:
    """Parse a state document.

    Args:
        data: JSON text in either state file format

    Returns:
        PureState: exact for sparse-rational, float for dense-float

    Raises:
        ParseError: Malformed JSON, schema violation or out-of-range index;
            the message carries the text position or field path
        DuplicateIndex: Sparse list names an index twice
        InvalidQubitCount: Odd or too small n
    """
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, f"line {e.lineno} column {e.colno}") from None
    except UnicodeDecodeError as e:
        raise ParseError(f"not UTF-8 text: {e.reason}") from None

    try:
        document = _STATE_FILE.validate_python(raw)
    except ValidationError as e:
        first = e.errors()[0]
        raise ParseError(first['msg'], _field_path(first['loc']) or None) from None

    check_qubit_count(document.n)
    if isinstance(document, SparseStateFile):
        return _sparse_to_state(document)
    return PureState(document.n, [complex(re, im) for re, im in document.amplitudes],
                     Backend.FLOAT, document.label, document.norm_squared)


def _sparse_to_state(document: SparseStateFile) -> PureState:
    size = 1 << document.n
    amplitudes = [ExactScalar(0)] * size
    previous = -1
    seen = set()
    for position, entry in enumerate(document.amplitudes):
        path = f"amplitudes.{position}.index"
        if entry.index >= size:
            raise ParseError(f"index {entry.index} outside 0..{size - 1}", path)
        if entry.index in seen:
            raise DuplicateIndex(f"index {entry.index} listed twice", path)
        seen.add(entry.index)
        if entry.index < previous:
            raise ParseError(f"index {entry.index} after {previous}; indices must increase", path)
        amplitudes[entry.index] = ExactScalar(parse_rational(entry.re), parse_rational(entry.im))
        previous = entry.index
    norm = None if document.norm_squared is None else parse_rational(document.norm_squared)
    return PureState(document.n, tuple(amplitudes), Backend.EXACT, document.label, norm)


def state_document(state: PureState) -> Union[SparseStateFile, DenseStateFile]:
    if state.backend is Backend.EXACT:
        amplitudes = [SparseAmplitude(index=i, re=format_rational(a.re), im=format_rational(a.im))
                      for i, a in enumerate(state.amplitudes) if not a.is_zero]
        return SparseStateFile(format=SPARSE_FORMAT, n=state.n, label=state.label,
                               norm_squared=format_rational(Fraction(state.norm_squared)),
                               amplitudes=amplitudes)
    amplitudes = [(float(a.real), float(a.imag)) for a in state.amplitudes]
    return DenseStateFile(format=DENSE_FORMAT, n=state.n, label=state.label,
                          norm_squared=float(state.norm_squared), amplitudes=amplitudes)


def serialize_state(state: PureState) -> str:
    """Exact states become sparse-rational documents, float states dense-float."""
    return _dump(state_document(state), exclude_none=True)


class ExactValue(_Document):
    re: str
    im: str


class LogValue(_Document):
    """``log_magnitude`` is null when the value is zero."""
    log_magnitude: Optional[float]
    phase: float


ReportValue = Union[ExactValue, LogValue]


def report_value(value: Union[ExactScalar, LogComplex]) -> ReportValue:
    if isinstance(value, ExactScalar):
        return ExactValue(re=format_rational(value.re), im=format_rational(value.im))
    return LogValue(log_magnitude=None if value.is_zero else value.log_magnitude,
                    phase=value.phase)


class InvariantEntry(_Document):
    kind: str
    symbol: str
    degree: int
    raw: ReportValue
    normalized: ReportValue
    is_zero: Optional[bool] = None
    log_bound: Optional[float] = None


def invariant_entry(value: InvariantValue, is_zero: Optional[bool] = None) -> InvariantEntry:
    return InvariantEntry(kind=value.kind.value, symbol=value.kind.symbol, degree=value.degree,
                          raw=report_value(value.raw), normalized=report_value(value.normalized),
                          is_zero=is_zero, log_bound=value.log_bound)


class Report(_Document):
    tool: str = TOOL_NAME
    version: str = __version__
    command: str
    backend: str


class InvariantsReport(Report):
    n: int
    label: Optional[str] = None
    invariants: List[InvariantEntry]


class SignatureBlock(_Document):
    label: Optional[str] = None
    pattern: str
    invariants: List[InvariantEntry]


def signature_block(sig: Signature, label: Optional[str] = None) -> SignatureBlock:
    return SignatureBlock(label=label, pattern=sig.describe(),
                          invariants=[invariant_entry(e.value, e.is_zero) for e in sig.entries])


class SignatureReport(Report):
    n: int
    zero_factor: Optional[float] = None
    signature: SignatureBlock


class CompareReport(Report):
    n: int
    zero_factor: Optional[float] = None
    verdict: str
    separating_kinds: List[str]
    first: SignatureBlock
    second: SignatureBlock


def compare_report(verdict: Verdict, n: int, labels: Tuple[Optional[str], Optional[str]]) -> CompareReport:
    return CompareReport(command='compare', backend=verdict.first.backend.value, n=n,
                         zero_factor=verdict.first.zero_factor, verdict=verdict.outcome.value,
                         separating_kinds=[k.value for k in verdict.separating_kinds],
                         first=signature_block(verdict.first, labels[0]),
                         second=signature_block(verdict.second, labels[1]))


class CovarianceEntry(_Document):
    """``residual`` is null when exactly one side vanished (an infinite residual)."""
    kind: str
    trial: Optional[int] = None
    qubit: Optional[int] = None
    exponent: int
    passed: bool
    residual: Union[ExactValue, float, None]
    lhs: ReportValue
    rhs: ReportValue


def covariance_entry(report: CovarianceReport, trial: Optional[int] = None) -> CovarianceEntry:
    if isinstance(report.residual, ExactScalar):
        residual = report_value(report.residual)
    elif report.residual == float('inf'):
        residual = None
    else:
        residual = float(report.residual)
    return CovarianceEntry(kind=report.kind.value, trial=trial, qubit=report.qubit,
                           exponent=report.exponent, passed=report.passed, residual=residual,
                           lhs=report_value(report.lhs.raw), rhs=report_value(report.rhs.raw))


class CovarianceFile(Report):
    n: int
    label: Optional[str] = None
    seed: Optional[int] = None
    trials: int
    kinds: List[str]
    checks: int
    failures: int
    passed: bool
    worst: Optional[CovarianceEntry] = None
    results: List[CovarianceEntry]


class MeasureReport(Report):
    n: int
    label: Optional[str] = None
    kind: str
    symbol: str
    value: float
    log_magnitude: Optional[float]
    squared: Optional[str] = None


def measure_report(result: Measure, state: PureState) -> MeasureReport:
    finite = result.log_magnitude != float('-inf')
    return MeasureReport(command='measure', backend=result.backend.value, n=state.n,
                         label=state.label, kind=result.kind.value, symbol=result.kind.symbol,
                         value=result.value, log_magnitude=result.log_magnitude if finite else None,
                         squared=None if result.squared is None else format_rational(result.squared))


class TableRow(_Document):
    label: str
    pattern: str
    zeros: List[bool]


class TableReport(Report):
    n: int
    zero_factor: Optional[float] = None
    rows: List[TableRow]


class IndependenceReport(Report):
    n: int
    samples: int
    seed: Optional[int] = None
    rank: int
    independent: bool
    values: List[List[ExactValue]]


def independence_report(cert: IndependenceCertificate) -> IndependenceReport:
    return IndependenceReport(command='independence', backend=Backend.EXACT.value, n=cert.n,
                              samples=cert.samples, seed=cert.seed, rank=cert.rank,
                              independent=cert.independent,
                              values=[[report_value(v) for v in row] for row in cert.values])


def _dump(model: BaseModel, exclude_none: bool = False) -> str:
    return model.model_dump_json(indent=2, exclude_none=exclude_none) + '\n'


def dump_report(report: Report) -> str:
    """Deterministic JSON text of a report (nulls kept, fields in declaration order)."""
    return _dump(report)


@error_handler
def read_state(path: Union[str, Path]) -> PureState:
    """Read and parse a state file.

    Raises:
        SloccError: If the file cannot be read (plus everything parse_state raises)
    """
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise SloccError(f"cannot read {path}: {e.strerror or e}") from e
    state = parse_state(data)
    logger.info(f"Loaded {path} ({state!r})")
    return state


@error_handler
def write_output(text: str, path: Union[str, Path, None] = None) -> None:
    """Write text to stdout, or atomically to a file (temp file, then rename)."""
    if path is None or str(path) == '-':
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = Path(path)
    directory = target.parent if str(target.parent) else Path('.')
    fd, temp_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix='.tmp', dir=directory)
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='\n') as handle:
            handle.write(text)
        os.replace(temp_name, target)
    except BaseException:
        try:
            os.unlink(temp_name)
        except OSError:
            pass
        raise
    logger.info(f"Wrote {target}")
